"""Finite group towers, orbit sets of the twisted translation action, and
exhaustive automorphism groups of truncated rings over finite coefficients.

The orbit set of the action

    ((alpha_n), (beta_n)) -> (alpha_n * beta_n * rho_{n+1}(alpha_{n+1})^{-1})

on the product of the tower groups is computed exactly at finite depth,
with the map above the top level treated as the trivial map from the
trivial group.  A finite-depth tower always satisfies the Mittag-Leffler
condition, so the enumeration is a verification harness; an infinite-tower
conclusion requires a surjectivity certificate instead.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, InputError, LambdaForgeError
from .series import FilteredMap, RingPresentation

BUDGET_ENV = "LAMBDA_FORGE_BUDGET"
DEFAULT_BUDGET = 500_000


def enumeration_budget(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a multiplication table over element indices 0..n-1."""

    name: str
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverse: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.table)
        for row in self.table:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise InputError("multiplication table is not square over 0..n-1")
        e = self.identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise InputError("identity element fails its defining law")
            if self.table[a][self.inverse[a]] != e or self.table[self.inverse[a]][a] != e:
                raise InputError("inverse table fails its defining law")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise InputError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]


def group_from_table(name: str, table: Sequence[Sequence[int]], labels=()) -> FiniteGroup:
    n = len(table)
    rows = tuple(tuple(row) for row in table)
    identity = None
    for e in range(n):
        if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise InputError("table has no identity element")
    inverse = []
    for a in range(n):
        inv = [b for b in range(n) if rows[a][b] == identity]
        if len(inv) != 1:
            raise InputError(f"element {a} does not have a unique inverse")
        inverse.append(inv[0])
    return FiniteGroup(name, rows, identity, tuple(inverse), tuple(labels))


def cyclic_group(m: int) -> FiniteGroup:
    table = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
    labels = tuple(str(a) for a in range(m))
    return FiniteGroup(f"Z/{m}", table, 0, tuple((-a) % m for a in range(m)), labels)


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
    )
    inverse = []
    for p in perms:
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        inverse.append(index[tuple(inv)])
    labels = tuple("".join(map(str, p)) for p in perms)
    return FiniteGroup(f"S{n}", table, index[tuple(range(n))], tuple(inverse), labels)


def trivial_group() -> FiniteGroup:
    return FiniteGroup("1", ((0,),), 0, (0,), ("e",))


@dataclass(frozen=True)
class Homomorphism:
    """Structure map between tower levels, verified on all pairs."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: Tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise InputError("homomorphism must assign an image to every element")
        for v in self.mapping:
            if not 0 <= v < self.target.order:
                raise InputError("homomorphism image out of range")
        for a in range(self.source.order):
            for b in range(self.source.order):
                lhs = self.mapping[self.source.mul(a, b)]
                rhs = self.target.mul(self.mapping[a], self.mapping[b])
                if lhs != rhs:
                    raise InputError("structure map is not a homomorphism")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order


def identity_homomorphism(group: FiniteGroup) -> Homomorphism:
    return Homomorphism(group, group, tuple(range(group.order)))


def zero_homomorphism(source: FiniteGroup, target: FiniteGroup) -> Homomorphism:
    return Homomorphism(source, target, (target.identity,) * source.order)


@dataclass(frozen=True)
class FiniteGroupTower:
    """Levels G_0, ..., G_{D-1} with maps[i]: G_{i+1} -> G_i."""

    levels: Tuple[FiniteGroup, ...]
    maps: Tuple[Homomorphism, ...]

    def __post_init__(self):
        if len(self.maps) != max(len(self.levels) - 1, 0):
            raise InputError("a tower of depth D needs exactly D-1 structure maps")
        for i, rho in enumerate(self.maps):
            if rho.source is not self.levels[i + 1] and rho.source != self.levels[i + 1]:
                raise InputError(f"map {i} has the wrong source level")
            if rho.target is not self.levels[i] and rho.target != self.levels[i]:
                raise InputError(f"map {i} has the wrong target level")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def state_count(self) -> int:
        count = 1
        for g in self.levels:
            count *= g.order
        return count


@dataclass(frozen=True)
class OrbitReport:
    orbit_count: int
    representatives: Tuple[Tuple[int, ...], ...]
    basepoint_orbit_is_everything: bool

    def summary(self) -> str:
        word = "orbit" if self.orbit_count == 1 else "orbits"
        return f"lim1: {self.orbit_count} {word}"


def lim1_orbits(tower: FiniteGroupTower, budget: Optional[int] = None) -> OrbitReport:
    """Exact orbit decomposition of the twisted translation action.

    Single-slot moves generate the full product action: acting by g in slot n
    translates slot n on the left and twists slot n-1 by rho_n(g)^{-1}.
    """
    limit = enumeration_budget(budget)
    total = tower.state_count()
    if total > limit:
        raise BudgetExceeded(f"state space of size {total} exceeds budget {limit}")
    groups = tower.levels
    depth = tower.depth
    if depth == 0:
        return OrbitReport(1, ((),), True)

    def moves(state: Tuple[int, ...]) -> Iterable[Tuple[int, ...]]:
        for n in range(depth):
            g_n = groups[n]
            for g in range(g_n.order):
                nxt = list(state)
                nxt[n] = g_n.mul(g, state[n])
                if n > 0:
                    rho = tower.maps[n - 1]
                    twist = groups[n - 1].inv(rho(g))
                    nxt[n - 1] = groups[n - 1].mul(state[n - 1], twist)
                yield tuple(nxt)

    all_states = itertools.product(*(range(g.order) for g in groups))
    seen: Dict[Tuple[int, ...], int] = {}
    representatives: List[Tuple[int, ...]] = []
    for start in all_states:
        if start in seen:
            continue
        orbit_id = len(representatives)
        representatives.append(start)
        frontier = [start]
        seen[start] = orbit_id
        while frontier:
            state = frontier.pop()
            for nxt in moves(state):
                if nxt not in seen:
                    seen[nxt] = orbit_id
                    frontier.append(nxt)
    basepoint = tuple(g.identity for g in groups)
    base_id = seen[basepoint]
    base_is_everything = all(v == base_id for v in seen.values())
    reps = tuple(sorted(min(s for s, oid in seen.items() if oid == k) for k in range(len(representatives))))
    return OrbitReport(len(representatives), reps, base_is_everything)


@dataclass(frozen=True)
class SurjectivityVerdict:
    surjective: bool
    failing_index: Optional[int]

    def summary(self) -> str:
        if self.surjective:
            return "tower SURJECTIVE (single orbit)"
        return f"tower NOT surjective: map into level {self.failing_index} fails"


def surjectivity_verdict(tower: FiniteGroupTower) -> SurjectivityVerdict:
    """Levelwise surjectivity; reports the least failing structure map."""
    for i, rho in enumerate(tower.maps):
        if not rho.is_surjective():
            return SurjectivityVerdict(False, i)
    return SurjectivityVerdict(True, None)


# -- automorphism groups of finite truncations -------------------------------------


@dataclass(frozen=True)
class TruncationAutomorphisms:
    """Aut of a truncated ring over a finite coefficient ring, as a concrete group."""

    presentation: RingPresentation
    group: FiniteGroup
    automorphisms: Tuple[FilteredMap, ...]

    def index_of(self, fmap: FilteredMap) -> int:
        key = fmap.images
        for i, a in enumerate(self.automorphisms):
            if a.images == key:
                return i
        raise LambdaForgeError("map is not in the automorphism list")


def _candidate_images(pres: RingPresentation, gen_index: int):
    g = pres.generators[gen_index]
    for x in pres.all_elements():
        if x.filtration() < g.weight:
            continue
        if pres.graded and not x.is_homogeneous(g.degree):
            continue
        yield x


def aut_group_of_truncation(
    pres: RingPresentation, budget: Optional[int] = None
) -> TruncationAutomorphisms:
    """Exhaustive automorphism group of a finite truncated ring.

    Every candidate generator-image tuple is checked for being a ring map
    (relations vanish) and a bijection of the full finite element set.
    """
    ring = pres.coefficients
    size = ring.size()
    if size is None:
        raise InputError("exhaustive enumeration needs a finite coefficient ring")
    limit = enumeration_budget(budget)
    monomials = pres.monomials_below_truncation()
    element_count = size ** len(monomials)
    if element_count > limit:
        raise BudgetExceeded(f"element space of size {element_count} exceeds budget {limit}")

    candidates = [list(_candidate_images(pres, i)) for i in range(len(pres.generators))]
    total = 1
    for c in candidates:
        total *= len(c)
    if total * element_count > limit * 16:
        raise BudgetExceeded("candidate image space exceeds the enumeration budget")

    elements = list(pres.all_elements())
    autos = []
    for images in itertools.product(*candidates):
        try:
            fmap = FilteredMap(pres, pres, list(images))
        except LambdaForgeError:
            continue
        seen = set()
        bijective = True
        for x in elements:
            y = fmap.apply(x)
            if y in seen:
                bijective = False
                break
            seen.add(y)
        if bijective:
            autos.append(fmap)

    autos.sort(key=lambda m: tuple(sorted(im.terms.items()) for im in m.images))
    index = {m.images: i for i, m in enumerate(autos)}
    n = len(autos)
    table = []
    for a in autos:
        row = []
        for b in autos:
            composed = b.then(a)  # apply b first, then a
            row.append(index[composed.images])
        table.append(tuple(row))
    group = group_from_table(
        f"Aut({pres!r})", tuple(table), tuple(str(i) for i in range(n))
    )
    return TruncationAutomorphisms(pres, group, tuple(autos))


def aut_tower(
    presentation: RingPresentation, levels: Sequence[int], budget: Optional[int] = None
) -> Tuple[FiniteGroupTower, Tuple[TruncationAutomorphisms, ...]]:
    """Tower of Aut groups for increasing truncation levels, with verified
    reduction-induced structure maps."""
    levels = sorted(levels)
    datas = [
        aut_group_of_truncation(presentation.with_truncation(j), budget) for j in levels
    ]
    maps = []
    for i in range(len(levels) - 1):
        lower, upper = datas[i], datas[i + 1]
        mapping = []
        for fmap in upper.automorphisms:
            reduced = fmap.reduce_truncation(levels[i])
            mapping.append(lower.index_of(reduced))
        maps.append(Homomorphism(upper.group, lower.group, tuple(mapping)))
    tower = FiniteGroupTower(tuple(d.group for d in datas), tuple(maps))
    return tower, tuple(datas)
