"""Automorphism lifting for free weighted truncated rings.

An automorphism of the level-j truncation lifts to level j+1: reuse the
stored coefficient data verbatim as the lift, then repair the filtration-j
discrepancy on preimages.  If sigma(g_i) = c_i at level j, the lifted map
sends the lifted g_i to c_i + alpha_i with alpha_i spanned by the monomials
of weighted filtration exactly j; subtracting the matching monomials in the
g_l gives an exact preimage, which certifies surjectivity.  Injectivity
follows because the truncation is a finitely generated module over the
coefficients, and is additionally witnessed by a unit determinant of the
generator-coefficient matrix.

The level hypothesis is j > N with N the largest generator weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import List, Sequence, Tuple

from .errors import (
    FilteredMapError,
    LambdaForgeError,
    LevelTooLow,
    UnsupportedRelation,
)
from .series import FilteredMap, RingPresentation, TruncatedSeries


# -- small exact matrix helpers ------------------------------------------------


def matrix_determinant(rows: Sequence[Sequence[object]], ring) -> object:
    """Cofactor-expansion determinant over an arbitrary coefficient ring."""
    n = len(rows)
    if n == 0:
        return ring.one()

    def rec(row_idx: int, cols: Tuple[int, ...]):
        if len(cols) == 1:
            return rows[row_idx][cols[0]]
        acc = ring.zero()
        for pos, c in enumerate(cols):
            minor = rec(row_idx + 1, cols[:pos] + cols[pos + 1 :])
            term = ring.mul(rows[row_idx][c], minor)
            acc = ring.add(acc, term if pos % 2 == 0 else ring.neg(term))
        return acc

    return rec(0, tuple(range(n)))


def matrix_inverse(rows: Sequence[Sequence[object]], ring) -> List[List[object]]:
    """Adjugate inverse; requires the determinant to be a unit."""
    n = len(rows)
    det = matrix_determinant(rows, ring)
    if not ring.is_unit(det):
        raise ValueError(f"matrix determinant {det} is not a unit")
    det_inv = ring.invert_unit(det)
    if n == 0:
        return []
    out = [[None] * n for _ in range(n)]
    indices = tuple(range(n))
    for i in range(n):
        for j in range(n):
            minor_rows = [
                [rows[r][c] for c in indices if c != j] for r in indices if r != i
            ]
            minor = matrix_determinant(minor_rows, ring) if n > 1 else ring.one()
            sign = 1 if (i + j) % 2 == 0 else -1
            cof = minor if sign == 1 else ring.neg(minor)
            out[j][i] = ring.mul(cof, det_inv)  # transpose of cofactors
    return out


# -- inversion of filtered maps ---------------------------------------------------


def invert_map(fmap: FilteredMap) -> FilteredMap:
    """Exact inverse of an automorphism given by generator images.

    Starts from the inverse of the generator-coefficient matrix and corrects
    by successive substitution; each pass pushes the residual error further
    up the (filtration, factor-count) order, so the loop terminates.
    """
    pres = fmap.source
    if pres != fmap.target:
        raise FilteredMapError("only endomorphisms can be inverted")
    ring = pres.coefficients
    matrix = fmap.generator_matrix()
    try:
        inverse_matrix = matrix_inverse(matrix, ring)
    except ValueError as exc:
        raise LambdaForgeError(f"map is not invertible: {exc}") from exc
    gens = pres.generator_series()
    linear_images = []
    for row in inverse_matrix:
        acc = pres.zero()
        for l, coeff in enumerate(row):
            acc = acc + gens[l].scale(coeff)
        linear_images.append(acc)
    linear_inverse = FilteredMap(pres, pres, linear_images, check=False)

    min_weight = min(g.weight for g in pres.generators)
    cap = (pres.truncation // min_weight + 2) ** 2 + 8
    images = list(linear_inverse.images)
    for _ in range(cap):
        errors = [fmap.apply(im) - g for im, g in zip(images, gens)]
        if all(e.is_zero() for e in errors):
            return FilteredMap(pres, pres, images, check=False)
        images = [im - linear_inverse.apply(e) for im, e in zip(images, errors)]
    raise LambdaForgeError("map inversion did not converge; map is likely not bijective")


# -- certificates -------------------------------------------------------------------


INJECTIVITY_TOKEN = "surjective-endomorphism-of-finitely-generated-module"


@dataclass(frozen=True)
class AutomorphismCertificate:
    """A filtered automorphism with an explicit inverse witness."""

    map: FilteredMap
    inverse: FilteredMap
    determinant: object
    injectivity_token: str = INJECTIVITY_TOKEN

    def __post_init__(self):
        gens = self.map.source.generator_series()
        for g, im in zip(gens, self.inverse.then(self.map).images):
            if im != g:
                raise LambdaForgeError("inverse witness fails on composition map(inverse)")
        for g, im in zip(gens, self.map.then(self.inverse).images):
            if im != g:
                raise LambdaForgeError("inverse witness fails on composition inverse(map)")

    @property
    def level(self) -> int:
        return self.map.source.truncation


def certify_automorphism(fmap: FilteredMap) -> AutomorphismCertificate:
    """Build a bijectivity certificate: unit determinant plus explicit inverse."""
    ring = fmap.source.coefficients
    det = matrix_determinant(fmap.generator_matrix(), ring)
    if not ring.is_unit(det):
        raise LambdaForgeError(
            f"generator-coefficient matrix has non-unit determinant {det}"
        )
    return AutomorphismCertificate(fmap, invert_map(fmap), det)


# -- exponent enumeration -----------------------------------------------------------


def exact_filtration_exponents(weights: Sequence[int], j: int) -> List[Tuple[int, ...]]:
    """All exponent tuples with sum(d_l * i_l) = j, in ascending lexicographic order."""
    if any(d < 1 for d in weights):
        raise ValueError("weights must be positive")
    n = len(weights)
    out: List[Tuple[int, ...]] = []

    def rec(prefix: list, pos: int, remaining: int):
        if pos == n - 1:
            q, r = divmod(remaining, weights[pos])
            if r == 0:
                out.append(tuple(prefix + [q]))
            return
        w = weights[pos]
        for e in range(remaining // w + 1):
            rec(prefix + [e], pos + 1, remaining - w * e)

    if n:
        rec([], 0, j)
    return out


@dataclass(frozen=True)
class CorrectionData:
    """Filtration-j repair applied to one rough preimage."""

    generator: str
    level: int
    exponents: Tuple[Tuple[int, ...], ...]
    coefficients: Tuple[object, ...]


@dataclass(frozen=True)
class LiftResult:
    certificate: AutomorphismCertificate
    corrections: Tuple[CorrectionData, ...]


def minimum_level(presentation: RingPresentation) -> int:
    """The bound N: levels must be strictly greater than every generator weight."""
    return max(g.weight for g in presentation.generators)


def correct_lift(
    sigma_hat: FilteredMap, rough_preimages: Sequence[TruncatedSeries]
) -> Tuple[FilteredMap, Tuple[CorrectionData, ...]]:
    """Repair rough level-(j+1) preimages so they map exactly onto the generators.

    ``rough_preimages`` must reduce to actual preimages at level j; the
    discrepancy then sits in filtration exactly j and is removed by
    subtracting the matching monomials in the rough preimages themselves.
    """
    pres = sigma_hat.source
    j = pres.truncation - 1
    gens = pres.generator_series()
    weights = pres.weights
    allowed = set(exact_filtration_exponents(weights, j))

    power_cache = [dict() for _ in rough_preimages]

    def rough_power(l: int, e: int) -> TruncatedSeries:
        cached = power_cache[l].get(e)
        if cached is None:
            cached = rough_preimages[l] ** e
            power_cache[l][e] = cached
        return cached

    corrected = []
    corrections = []
    for i, g in enumerate(rough_preimages):
        alpha = sigma_hat.apply(g) - gens[i]
        exps_list = []
        coeff_list = []
        gbar = g
        for exps in sorted(alpha.terms):
            if exps not in allowed:
                raise LambdaForgeError(
                    "rough preimage does not reduce to a preimage at the lower level"
                )
            a = alpha.terms[exps]
            prod = pres.one()
            for l, e in enumerate(exps):
                if e:
                    prod = prod * rough_power(l, e)
            gbar = gbar - prod.scale(a)
            exps_list.append(exps)
            coeff_list.append(a)
        if sigma_hat.apply(gbar) != gens[i]:
            raise LambdaForgeError("correction step failed to produce an exact preimage")
        corrected.append(gbar)
        corrections.append(
            CorrectionData(
                pres.generators[i].name, j, tuple(exps_list), tuple(coeff_list)
            )
        )
    inverse = FilteredMap(pres, pres, corrected, check=False)
    return inverse, tuple(corrections)


def lift_automorphism(certificate: AutomorphismCertificate) -> LiftResult:
    """Lift a certified automorphism from level j to level j+1.

    The canonical lift reuses the image coefficient data verbatim; nothing
    is added at filtration j, and the correction step repairs exactly the
    filtration-j discrepancy of the preimages.
    """
    sigma = certificate.map
    pres = sigma.source
    if pres.relations:
        raise UnsupportedRelation("lifting requires a free presentation")
    j = pres.truncation
    bound = minimum_level(pres)
    if j <= bound:
        raise LevelTooLow(j, bound)
    pres_next = pres.with_truncation(j + 1)
    lifted_images = [im.lift_to(pres_next) for im in sigma.images]
    sigma_hat = FilteredMap(pres_next, pres_next, lifted_images)
    rough = [im.lift_to(pres_next) for im in certificate.inverse.images]
    inverse_next, corrections = correct_lift(sigma_hat, rough)
    ring = pres.coefficients
    det = matrix_determinant(sigma_hat.generator_matrix(), ring)
    if not ring.is_unit(det):
        raise LambdaForgeError("lifted map lost determinant invertibility")
    lifted_cert = AutomorphismCertificate(sigma_hat, inverse_next, det)
    return LiftResult(lifted_cert, corrections)


# -- randomized surjectivity harness ---------------------------------------------------


def _decomposable_monomials(pres: RingPresentation, min_weight: int) -> List[Tuple[int, ...]]:
    return [
        exps
        for exps in pres.monomials_below_truncation()
        if sum(exps) >= 2 and pres.weight_of_monomial(exps) >= min_weight
    ]


def random_automorphism(
    pres: RingPresentation,
    rng: Random,
    extra_terms: int = 2,
    coefficient_bound: int = 9,
) -> AutomorphismCertificate:
    """Random automorphism: unit diagonal linear part, bounded higher terms."""
    ring = pres.coefficients
    images = []
    for i, g in enumerate(pres.generators):
        unit = rng.choice((1, -1))
        exps_unit = tuple(1 if l == i else 0 for l in range(len(pres.generators)))
        terms = {exps_unit: ring.from_int(unit)}
        pool = _decomposable_monomials(pres, g.weight)
        for _ in range(extra_terms):
            if not pool:
                break
            exps = rng.choice(pool)
            c = ring.from_int(rng.randint(-coefficient_bound, coefficient_bound))
            if not ring.is_zero(c):
                terms[exps] = c
        images.append(pres.series(terms))
    return certify_automorphism(FilteredMap(pres, pres, images))


@dataclass(frozen=True)
class LevelWitness:
    level: int
    trials: int
    lifted: int


@dataclass(frozen=True)
class TowerVerdict:
    surjective: bool
    levels: Tuple[LevelWitness, ...]
    conclusion: str

    def summary(self) -> str:
        head = "SURJECTIVE" if self.surjective else "NOT SURJECTIVE"
        lines = [head]
        for w in self.levels:
            lines.append(f"  level {w.level}: {w.lifted}/{w.trials} lifts verified")
        if self.surjective:
            lines.append(f"  conclusion: {self.conclusion}")
        return "\n".join(lines)


SURJECTIVE_CONCLUSION = "snt-hat-trivial (single class of complete objects)"


def tower_surjectivity(
    presentation: RingPresentation,
    levels: Sequence[int],
    trials: int = 50,
    seed: int = 0,
) -> TowerVerdict:
    """Constructively witness surjectivity of Aut(level j+1) -> Aut(level j).

    For each level, random automorphisms are generated, lifted, and the
    restriction of each lift is checked against the original exactly.
    """
    if presentation.relations:
        raise UnsupportedRelation("the surjectivity harness requires a free presentation")
    bound = minimum_level(presentation)
    rng = Random(seed)
    witnesses = []
    for j in levels:
        if j <= bound:
            raise LevelTooLow(j, bound)
        pres_j = presentation.with_truncation(j)
        lifted = 0
        for _ in range(trials):
            cert = random_automorphism(pres_j, rng)
            result = lift_automorphism(cert)
            if result.certificate.map.reduce_truncation(j) != cert.map:
                raise LambdaForgeError("lift restriction does not equal the input map")
            lifted += 1
        witnesses.append(LevelWitness(j, trials, lifted))
    return TowerVerdict(True, tuple(witnesses), SURJECTIVE_CONCLUSION)
