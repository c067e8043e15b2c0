"""Weighted truncated power series rings over exact coefficient rings.

Elements are finite maps from exponent vectors to nonzero coefficients.
A presentation fixes the generators (each with a positive filtration
weight and an integer degree), an optional list of relations, and a
truncation level j: monomials of weighted filtration >= j are zero.
Graded presentations additionally enforce degree homogeneity on maps.

All values are immutable; every operation returns a fresh normal form,
so equality and hashing are exact structural comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .coefficients import CoefficientRing
from .errors import (
    FilteredMapError,
    PresentationMismatch,
    RelationViolation,
    UnsupportedRelation,
)

INFINITY = float("inf")

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int
    degree: int = 0

    def __post_init__(self):
        if not self.name.isidentifier():
            raise ValueError(f"generator name {self.name!r} is not an identifier")
        if self.weight < 1:
            raise ValueError("filtration weight must be a positive integer")


@dataclass(frozen=True)
class Relation:
    """A polynomial relation with a unit leading coefficient.

    The leading monomial is the lexicographically largest exponent vector;
    reduction rewrites any multiple of it into the (lex-smaller) tail, so
    the rewrite terminates.  Monomial relations have an empty tail.
    """

    terms: tuple  # tuple of (exponents, coefficient), sorted on construction

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    @property
    def lead(self) -> ExponentVector:
        return self.terms[-1][0]

    @property
    def lead_coefficient(self):
        return self.terms[-1][1]

    @property
    def tail(self):
        return self.terms[:-1]


def _divides(lead: ExponentVector, exps: ExponentVector) -> bool:
    return all(l <= e for l, e in zip(lead, exps))


class RingPresentation:
    """Generators, weights, relations, and a truncation level."""

    __slots__ = ("coefficients", "generators", "truncation", "relations", "graded", "_hash")

    def __init__(
        self,
        coefficients: CoefficientRing,
        generators: Sequence[Generator],
        truncation: int,
        relations: Sequence[Relation] = (),
        graded: bool = False,
    ):
        if truncation < 1:
            raise ValueError("truncation level must be positive")
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "relations", tuple(relations))
        object.__setattr__(self, "graded", graded)
        object.__setattr__(self, "_hash", None)
        for rel in self.relations:
            self._validate_relation(rel)

    def __setattr__(self, name, value):
        raise AttributeError("RingPresentation is immutable")

    def _key(self):
        return (self.coefficients, self.generators, self.truncation, self.relations, self.graded)

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self._key() == other._key()

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.weight}" for g in self.generators)
        return f"RingPresentation({self.coefficients}, [{gens}], trunc={self.truncation})"

    # -- monomial bookkeeping ------------------------------------------------

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(g.weight for g in self.generators)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def weight_of_monomial(self, exps: ExponentVector) -> int:
        return sum(g.weight * e for g, e in zip(self.generators, exps))

    def degree_of_monomial(self, exps: ExponentVector) -> int:
        return sum(g.degree * e for g, e in zip(self.generators, exps))

    def _validate_relation(self, rel: Relation):
        if not rel.terms:
            raise UnsupportedRelation("empty relation")
        n = len(self.generators)
        for exps, coeff in rel.terms:
            if len(exps) != n:
                raise UnsupportedRelation("relation exponent arity mismatch")
            if self.coefficients.is_zero(coeff):
                raise UnsupportedRelation("relation stores a zero coefficient")
        if not self.coefficients.is_unit(rel.lead_coefficient):
            raise UnsupportedRelation("relation leading coefficient must be a unit")
        degs = {
            self.degree_of_monomial(exps) + (self.coefficients.coefficient_degree(c) or 0)
            for exps, c in rel.terms
        }
        if len(degs) != 1:
            raise UnsupportedRelation("relations must be homogeneous for the degree grading")

    # -- normal form ----------------------------------------------------------

    def _normalize(self, items: Iterable[tuple]) -> dict:
        ring = self.coefficients
        trunc = self.truncation
        rels = self.relations
        out: dict = {}
        stack = list(items)
        while stack:
            exps, coeff = stack.pop()
            if ring.is_zero(coeff):
                continue
            if self.weight_of_monomial(exps) >= trunc:
                continue
            rewritten = False
            for rel in rels:
                lead = rel.lead
                if _divides(lead, exps):
                    q = tuple(e - l for e, l in zip(exps, lead))
                    # lead = -lc^{-1} * tail, so  coeff*exps -> -coeff*lc^{-1}*tail*q
                    scale = ring.neg(ring.mul(coeff, ring.invert_unit(rel.lead_coefficient)))
                    for m, c in rel.tail:
                        stack.append((tuple(a + b for a, b in zip(q, m)), ring.mul(scale, c)))
                    rewritten = True
                    break
            if rewritten:
                continue
            prev = out.get(exps)
            acc = coeff if prev is None else ring.add(prev, coeff)
            if ring.is_zero(acc):
                out.pop(exps, None)
            else:
                out[exps] = acc
        return out

    # -- element factories ----------------------------------------------------

    def series(self, mapping: Mapping[ExponentVector, object]) -> "TruncatedSeries":
        return TruncatedSeries(self, self._normalize(mapping.items()))

    def zero(self) -> "TruncatedSeries":
        return TruncatedSeries(self, {})

    def one(self) -> "TruncatedSeries":
        return self.constant(self.coefficients.one())

    def constant(self, coeff) -> "TruncatedSeries":
        zero_exps = (0,) * len(self.generators)
        return self.series({zero_exps: coeff})

    def from_int(self, n: int) -> "TruncatedSeries":
        return self.constant(self.coefficients.from_int(n))

    def generator(self, name: str) -> "TruncatedSeries":
        i = self.index_of(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return self.series({exps: self.coefficients.one()})

    def generator_series(self) -> Tuple["TruncatedSeries", ...]:
        return tuple(self.generator(g.name) for g in self.generators)

    def monomial(self, exps: ExponentVector, coeff=None) -> "TruncatedSeries":
        if coeff is None:
            coeff = self.coefficients.one()
        return self.series({tuple(exps): coeff})

    def with_truncation(self, truncation: int) -> "RingPresentation":
        return RingPresentation(
            self.coefficients, self.generators, truncation, self.relations, self.graded
        )

    def monomials_below_truncation(self) -> list:
        """All normal-form exponent vectors of filtration < truncation, sorted."""
        n = len(self.generators)
        out = []

        def rec(prefix, pos, weight):
            if pos == n:
                exps = tuple(prefix)
                for rel in self.relations:
                    if _divides(rel.lead, exps):
                        return
                out.append(exps)
                return
            w = self.generators[pos].weight
            e = 0
            while weight + w * e < self.truncation:
                rec(prefix + [e], pos + 1, weight + w * e)
                e += 1

        rec([], 0, 0)
        out.sort(key=lambda exps: (self.weight_of_monomial(exps), exps))
        return out

    def all_elements(self):
        """Iterate every element (finite coefficient rings only), canonically ordered."""
        ring = self.coefficients
        monomials = self.monomials_below_truncation()
        values = list(ring.elements())

        def rec(i, acc):
            if i == len(monomials):
                yield TruncatedSeries(self, dict(acc))
                return
            for v in values:
                if ring.is_zero(v):
                    yield from rec(i + 1, acc)
                else:
                    acc[monomials[i]] = v
                    yield from rec(i + 1, acc)
                    del acc[monomials[i]]

        yield from rec(0, {})


class TruncatedSeries:
    """Immutable normal-form element of a truncated presentation."""

    __slots__ = ("presentation", "terms", "_hash")

    def __init__(self, presentation: RingPresentation, terms: dict):
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- basic protocol --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.presentation == other.presentation
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.presentation, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        from .parsing import format_series

        return format_series(self)

    def __repr__(self):
        return f"<series {self}>"

    def _check_same(self, other: "TruncatedSeries"):
        if self.presentation != other.presentation:
            raise PresentationMismatch(
                "operands live over different presentations"
            )

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.presentation.from_int(other)
        self._check_same(other)
        ring = self.presentation.coefficients
        out = dict(self.terms)
        for exps, c in other.terms.items():
            prev = out.get(exps)
            acc = c if prev is None else ring.add(prev, c)
            if ring.is_zero(acc):
                out.pop(exps, None)
            else:
                out[exps] = acc
        return TruncatedSeries(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        ring = self.presentation.coefficients
        return TruncatedSeries(
            self.presentation, {e: ring.neg(c) for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.presentation.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale_int(other)
        self._check_same(other)
        pres = self.presentation
        trunc = pres.truncation
        ring = pres.coefficients
        a = [(e, pres.weight_of_monomial(e), c) for e, c in self.terms.items()]
        b = [(e, pres.weight_of_monomial(e), c) for e, c in other.terms.items()]
        if len(a) > len(b):
            a, b = b, a
        acc = []
        for e1, w1, c1 in a:
            for e2, w2, c2 in b:
                if w1 + w2 >= trunc:
                    continue
                acc.append((tuple(x + y for x, y in zip(e1, e2)), ring.mul(c1, c2)))
        return TruncatedSeries(pres, pres._normalize(acc))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale_int(other)
        return NotImplemented

    def scale_int(self, n: int):
        ring = self.presentation.coefficients
        nval = ring.from_int(n)
        return self.scale(nval)

    def scale(self, coeff):
        ring = self.presentation.coefficients
        if ring.is_zero(coeff):
            return self.presentation.zero()
        out = {}
        for e, c in self.terms.items():
            v = ring.mul(coeff, c)
            if not ring.is_zero(v):
                out[e] = v
        return TruncatedSeries(self.presentation, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in a truncated ring")
        result = self.presentation.one()
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
                if result.is_zero():
                    return result
            k >>= 1
            if k:
                base = base * base
        return result

    # -- filtration and degree ----------------------------------------------------

    def filtration(self):
        """Minimal weighted filtration of a stored monomial; infinity for zero."""
        if not self.terms:
            return INFINITY
        pres = self.presentation
        return min(pres.weight_of_monomial(e) for e in self.terms)

    def degree(self):
        """Common homogeneous degree, or None when zero or inhomogeneous."""
        pres = self.presentation
        ring = pres.coefficients
        degs = set()
        for e, c in self.terms.items():
            cdeg = ring.coefficient_degree(c)
            if cdeg is None:
                return None
            degs.add(pres.degree_of_monomial(e) + cdeg)
            if len(degs) > 1:
                return None
        if not degs:
            return None
        return degs.pop()

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        if not self.terms:
            return True
        d = self.degree()
        if d is None:
            return False
        return degree is None or d == degree

    def coefficient_of(self, exps: ExponentVector):
        return self.terms.get(tuple(exps), self.presentation.coefficients.zero())

    def reduce_truncation(self, j: int) -> "TruncatedSeries":
        """Image under the tower structure map to the coarser truncation j."""
        pres = self.presentation
        if j > pres.truncation:
            raise ValueError(
                f"cannot reduce truncation {pres.truncation} to finer level {j}"
            )
        target = pres.with_truncation(j)
        return target.series(self.terms)

    def lift_to(self, presentation: RingPresentation) -> "TruncatedSeries":
        """Reinterpret the stored terms in a finer truncation of the same ring."""
        if presentation.truncation < self.presentation.truncation:
            raise ValueError("lift target must not be coarser")
        return presentation.series(self.terms)


def filtration_of(f: TruncatedSeries):
    return f.filtration()


def reduce_truncation(f: TruncatedSeries, j: int) -> TruncatedSeries:
    return f.reduce_truncation(j)


class FilteredMap:
    """Ring map between presentations, given by generator images.

    Carries a lazy cache of monomial images so that repeated substitution
    against the same map costs one series product per newly seen monomial.
    """

    __slots__ = ("source", "target", "images", "_monomial_cache", "_hash")

    def __init__(
        self,
        source: RingPresentation,
        target: RingPresentation,
        images: Sequence[TruncatedSeries],
        check: bool = True,
    ):
        if len(images) != len(source.generators):
            raise FilteredMapError("one image per source generator is required")
        for im in images:
            if im.presentation != target:
                raise PresentationMismatch("image lives over the wrong presentation")
        if source.coefficients != target.coefficients:
            raise PresentationMismatch("source and target coefficient rings differ")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(images))
        object.__setattr__(self, "_monomial_cache", {})
        object.__setattr__(self, "_hash", None)
        if check:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("FilteredMap is immutable")

    def _validate(self):
        for g, im in zip(self.source.generators, self.images):
            if im.filtration() < g.weight:
                raise FilteredMapError(
                    f"image of {g.name} has filtration {im.filtration()} < {g.weight}"
                )
            if self.source.graded and not im.is_homogeneous(g.degree):
                raise FilteredMapError(
                    f"image of {g.name} is not homogeneous of degree {g.degree}"
                )
        for rel in self.source.relations:
            value = self._apply_terms(rel.terms)
            if not value.is_zero():
                raise RelationViolation(
                    f"relation does not map to zero: got {value}"
                )

    def __eq__(self, other):
        return (
            isinstance(other, FilteredMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.source, self.target, self.images))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        parts = ", ".join(
            f"{g.name} -> {im}" for g, im in zip(self.source.generators, self.images)
        )
        return f"<map {parts}>"

    @classmethod
    def identity(cls, presentation: RingPresentation) -> "FilteredMap":
        return cls(presentation, presentation, presentation.generator_series(), check=False)

    def is_identity(self) -> bool:
        return self.source == self.target and self.images == self.source.generator_series()

    # -- application ------------------------------------------------------------

    def _monomial_image(self, exps: ExponentVector) -> TruncatedSeries:
        cache = self._monomial_cache
        hit = cache.get(exps)
        if hit is not None:
            return hit
        if not any(exps):
            value = self.target.one()
        else:
            i = next(k for k, e in enumerate(exps) if e)
            prev = tuple(e - 1 if k == i else e for k, e in enumerate(exps))
            value = self._monomial_image(prev) * self.images[i]
        cache[exps] = value
        return value

    def _apply_terms(self, items) -> TruncatedSeries:
        ring = self.target.coefficients
        acc: dict = {}
        for exps, coeff in items:
            row = self._monomial_image(tuple(exps))
            for m, rc in row.terms.items():
                v = ring.mul(coeff, rc)
                prev = acc.get(m)
                total = v if prev is None else ring.add(prev, v)
                if ring.is_zero(total):
                    acc.pop(m, None)
                else:
                    acc[m] = total
        return TruncatedSeries(self.target, acc)

    def apply(self, f: TruncatedSeries) -> TruncatedSeries:
        if f.presentation != self.source:
            raise PresentationMismatch("series does not live over the map's source")
        return self._apply_terms(f.terms.items())

    def __call__(self, f: TruncatedSeries) -> TruncatedSeries:
        return self.apply(f)

    def then(self, outer: "FilteredMap") -> "FilteredMap":
        """Composite `outer after self` (apply self first)."""
        if self.target != outer.source:
            raise PresentationMismatch("composition endpoints do not match")
        return FilteredMap(
            self.source, outer.target, [outer.apply(im) for im in self.images], check=False
        )

    def reduce_truncation(self, j: int) -> "FilteredMap":
        src = self.source.with_truncation(j)
        tgt = self.target.with_truncation(j)
        return FilteredMap(src, tgt, [im.reduce_truncation(j) for im in self.images], check=False)

    def generator_matrix(self):
        """Matrix of single-generator coefficients: entry [i][l] multiplies gen l in image i."""
        n = len(self.source.generators)
        ring = self.target.coefficients
        rows = []
        for im in self.images:
            row = []
            for l in range(n):
                unit = tuple(1 if k == l else 0 for k in range(n))
                row.append(im.terms.get(unit, ring.zero()))
            rows.append(row)
        return rows


def substitute(f: TruncatedSeries, images: FilteredMap) -> TruncatedSeries:
    """Evaluate f with each generator replaced by its image under the map."""
    return images.apply(f)
