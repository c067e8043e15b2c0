"""Genus invariants and structure models on one-variable power series rings.

Two kinds of models are handled:

* a KO-side model on KOEven[[x]] where the square Adams operation acts on
  the element xi*x as  4*xi*x + 2a*bR*x^2  modulo filtration 9; the integer
  a, canonicalized modulo 24 up to sign, determines the signs at 2 and 3
  through a fixed four-row table;

* a K-side model on Z[[v]] (v in filtration 4, degree 0) where each prime
  carries an endomorphism psi^p with linear coefficient p^2, Frobenius
  congruence mod p, and, for odd p, a sign read off the coefficient at
  v^((p+1)/2) modulo p^2: it must be 2*sign*p there.

The reference structure is the Chebyshev-like family q_k defined by
q_k(t + 1/t - 2) = t^k + 1/t^k - 2, which realizes sign +1 at every odd
prime.  A degree-by-degree solver constructs families realizing prescribed
sign vectors, and an intertwiner solver decides isomorphism of two models
at a truncation, refuting with the exact degree and prime when the linear
integer constraint on the next coefficient has no solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coefficients import INTEGERS, KO_EVEN, KOElement, is_prime
from .errors import (
    InputError,
    InvalidTransport,
    LambdaForgeError,
    MalformedStructure,
    MissingEntry,
    ShapeError,
    Unsatisfiable,
)
from .newton import AdamsFamily
from .series import FilteredMap, Generator, RingPresentation, TruncatedSeries

V_WEIGHT = 4
KO_TRUNCATION_DEFAULT = 12
K_TRUNCATION_DEFAULT = 28  # stores v-powers up to 6


# -- plain univariate polynomial helpers (dict power -> int) --------------------


def poly_mul(a: Dict[int, int], b: Dict[int, int], top: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, c in a.items():
        for j, d in b.items():
            k = i + j
            if k > top:
                continue
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def poly_compose(f: Dict[int, int], g: Dict[int, int], top: int) -> Dict[int, int]:
    """f(g(v)) truncated above v^top, by Horner's scheme."""
    acc: Dict[int, int] = {}
    for k in range(max(f, default=0), -1, -1):
        acc = poly_mul(acc, g, top)
        c = f.get(k)
        if c:
            acc[0] = acc.get(0, 0) + c
            if not acc[0]:
                del acc[0]
    return acc


def poly_compositional_inverse(s: Dict[int, int], top: int) -> Dict[int, int]:
    """t with s(t(v)) = v modulo v^(top+1); needs unit linear coefficient."""
    eps = s.get(1, 0)
    if eps not in (1, -1):
        raise InputError("compositional inverse needs linear coefficient +-1")
    t = {1: eps}
    for m in range(2, top + 1):
        c = poly_compose(s, t, top).get(m, 0)
        if c:
            t[m] = -c * eps
    check = poly_compose(s, t, top)
    if check != {1: 1}:
        raise LambdaForgeError("compositional inversion failed")
    return t


def chebyshev_image(k: int, top: Optional[int] = None) -> Dict[int, int]:
    """Coefficients of q_k, where q_k(t + 1/t - 2) = t^k + 1/t^k - 2.

    Computed from the three-term recurrence for t^k + t^-k as a polynomial
    in s = t + 1/t, then shifted by s = z + 2.
    """
    if k < 0:
        raise ValueError("q_k is defined for nonnegative k")
    limit = k if top is None else min(k, top)
    p_prev: Dict[int, int] = {0: 2}  # t^0 + t^0
    p_cur: Dict[int, int] = {1: 1}  # s
    if k == 0:
        poly_s = p_prev
    else:
        for _ in range(k - 1):
            nxt = poly_mul({1: 1}, p_cur, k)
            for e, c in p_prev.items():
                nxt[e] = nxt.get(e, 0) - c
                if not nxt[e]:
                    del nxt[e]
            p_prev, p_cur = p_cur, nxt
        poly_s = p_cur
    shifted = poly_compose(poly_s, {0: 2, 1: 1}, k)
    shifted[0] = shifted.get(0, 0) - 2
    if not shifted[0]:
        del shifted[0]
    return {e: c for e, c in shifted.items() if e <= limit}


# -- the K-side model -------------------------------------------------------------


def k_model_presentation(truncation: int = K_TRUNCATION_DEFAULT) -> RingPresentation:
    return RingPresentation(INTEGERS, (Generator("v", V_WEIGHT, 0),), truncation)


def top_power(truncation: int) -> int:
    return (truncation - 1) // V_WEIGHT


def _poly_to_series(poly: Mapping[int, int], pres: RingPresentation) -> TruncatedSeries:
    return pres.series({(e,): c for e, c in poly.items()})


def _series_to_poly(series: TruncatedSeries) -> Dict[int, int]:
    return {e[0]: c for e, c in series.terms.items()}


class KModelStructure:
    """Adams family on Z[[v]] with the linear-coefficient normalization p^2."""

    __slots__ = ("family", "primes", "presentation")

    def __init__(self, family: AdamsFamily, primes: Sequence[int]):
        pres = family.presentation
        if (
            pres.coefficients != INTEGERS
            or len(pres.generators) != 1
            or pres.generators[0].weight != V_WEIGHT
            or pres.relations
        ):
            raise MalformedStructure("expected Z[[v]] with v in filtration 4")
        self.family = family
        self.presentation = pres
        self.primes = tuple(sorted(set(primes)))
        for p in self.primes:
            if not is_prime(p):
                raise MalformedStructure(f"{p} is not prime")
            poly = self.poly(p)
            if poly.get(1, 0) != p * p:
                raise MalformedStructure(
                    f"linear coefficient of psi^{p}(v) must be {p * p}"
                )
            frob = dict(poly)
            if V_WEIGHT * p < pres.truncation:
                frob[p] = frob.get(p, 0) - 1
            for e, c in frob.items():
                if c % p:
                    raise MalformedStructure(
                        f"psi^{p}(v) fails the Frobenius congruence at v^{e}"
                    )

    @property
    def truncation(self) -> int:
        return self.presentation.truncation

    def poly(self, k: int) -> Dict[int, int]:
        return _series_to_poly(self.family.psi(k).images[0])

    @classmethod
    def from_polynomials(
        cls,
        polynomials: Mapping[int, Mapping[int, int]],
        primes: Sequence[int],
        truncation: int = K_TRUNCATION_DEFAULT,
    ) -> "KModelStructure":
        pres = k_model_presentation(truncation)
        entries = {}
        for k, poly in polynomials.items():
            image = _poly_to_series(poly, pres)
            entries[k] = FilteredMap(pres, pres, (image,))
        if 1 not in entries:
            entries[1] = FilteredMap.identity(pres)
        return cls(AdamsFamily(pres, entries), primes)


def _composite_closure(
    prime_polys: Dict[int, Dict[int, int]], primes: Sequence[int], bound: int, top: int
) -> Dict[int, Dict[int, int]]:
    """Extend prime entries multiplicatively to all admissible k <= bound."""
    polys: Dict[int, Dict[int, int]] = {1: {1: 1}}
    polys.update({p: dict(v) for p, v in prime_polys.items()})
    for k in range(2, bound + 1):
        if k in polys:
            continue
        for p in primes:
            if k % p == 0 and (k // p) in polys:
                polys[k] = poly_compose(polys[p], polys[k // p], top)
                break
    return polys


def chebyshev_structure(
    primes: Sequence[int] = (2, 3, 5),
    truncation: int = K_TRUNCATION_DEFAULT,
    exponent_bound: int = 12,
) -> KModelStructure:
    """The reference structure: psi^k(v) = q_k(v), all signs +1."""
    top = top_power(truncation)
    polys = {k: chebyshev_image(k, top) for k in range(1, exponent_bound + 1)}
    return KModelStructure.from_polynomials(polys, primes, truncation)


def odd_sign(structure: KModelStructure, p: int) -> int:
    """Sign at an odd prime: reduce psi^p(v) modulo p^2 and modulo filtration
    2p+3; what survives must be exactly 2*sign*p at the v^((p+1)/2) slot.

    The slots strictly between v and the sign slot carry only p^2-divisible
    junk in a well-formed structure, and that template is what makes the
    extracted sign invariant under orientation-preserving intertwiners
    (every cross term in the transported coefficient is a product of two
    p-divisible coefficients).
    """
    if p % 2 == 0 or not is_prime(p):
        raise InputError(f"odd prime required, got {p}")
    if p not in structure.primes:
        raise MissingEntry(f"psi^{p} is not configured for this structure")
    slot = (p + 1) // 2
    if V_WEIGHT * slot >= structure.truncation:
        raise InputError(
            f"truncation {structure.truncation} is too coarse to see v^{slot}"
        )
    poly = structure.poly(p)
    for m in range(2, slot):
        if poly.get(m, 0) % (p * p):
            raise MalformedStructure(
                f"coefficient at v^{m} must vanish modulo {p * p} below the sign slot"
            )
    coeff = poly.get(slot, 0)
    residue = coeff % (p * p)
    if residue == (2 * p) % (p * p):
        return 1
    if residue == (-2 * p) % (p * p):
        return -1
    raise MalformedStructure(
        f"coefficient {coeff} at v^{slot} is not +-2*{p} modulo {p * p}"
    )


# -- profiles ---------------------------------------------------------------------


CANONICAL_A_CLASSES = (1, 5, 7, 11)

SIGN_TABLE = {1: (1, 1), 5: (1, -1), 7: (-1, 1), 11: (-1, -1)}


def canonicalize_a(a: int) -> int:
    """Residue mod 24 with the orientation sign quotiented away."""
    r = a % 24
    return min(r, (24 - r) % 24)


def signs_from_a(a: int) -> Tuple[int, int]:
    """The table row ((X/2), (X/3)) for a modulo 24; needs a coprime to 24."""
    canonical = canonicalize_a(a)
    if canonical not in SIGN_TABLE:
        raise InputError(f"a = {a} is not coprime to 24")
    return SIGN_TABLE[canonical]


@dataclass(frozen=True)
class RectorProfile:
    """Classification data: a mod 24 (sign-quotiented) plus one sign per prime."""

    a_class: Optional[int]
    signs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.a_class is not None and self.a_class not in CANONICAL_A_CLASSES:
            raise MalformedStructure(f"a-class {self.a_class} is not in {CANONICAL_A_CLASSES}")
        primes = [p for p, _ in self.signs]
        if primes != sorted(set(primes)):
            raise MalformedStructure("signs must be listed once per prime, ascending")
        for p, s in self.signs:
            if s not in (1, -1):
                raise MalformedStructure("signs lie in {+1, -1}")
        if self.a_class is not None:
            two, three = SIGN_TABLE[self.a_class]
            table = {2: two, 3: three}
            for p, s in self.signs:
                if p in table and s != table[p]:
                    raise MalformedStructure(
                        f"sign at {p} contradicts the a-class table"
                    )

    def sign(self, p: int) -> Optional[int]:
        for q, s in self.signs:
            if q == p:
                return s
        return None

    def text(self) -> str:
        parts = []
        if self.a_class is not None:
            parts.append(f"a={self.a_class} (mod 24);")
        for p, s in self.signs:
            parts.append(f"(X/{p})={'+1' if s == 1 else '-1'}")
        return " ".join(parts)


def profile_of_k_model(structure: KModelStructure) -> RectorProfile:
    signs = tuple((p, odd_sign(structure, p)) for p in structure.primes if p % 2)
    return RectorProfile(None, signs)


# -- the KO-side model ---------------------------------------------------------------


def ko_presentation(truncation: int = KO_TRUNCATION_DEFAULT) -> RingPresentation:
    return RingPresentation(KO_EVEN, (Generator("x", 4, 4),), truncation)


def _ko_single(coefficient: int, xi_exp: int, b_exp: int) -> KOElement:
    if coefficient == 0:
        return KOElement(())
    return KOElement((((xi_exp, b_exp), coefficient),))


class KOModelStructure:
    """Action of the square Adams operation on xi*x over KOEven[[x]]."""

    __slots__ = ("image", "presentation", "a_raw")

    def __init__(self, image: TruncatedSeries):
        pres = image.presentation
        if pres.coefficients != KO_EVEN or len(pres.generators) != 1:
            raise MalformedStructure("expected a one-variable series over KOEven")
        g = pres.generators[0]
        if g.weight != 4 or g.degree != 4:
            raise MalformedStructure("the series variable must sit in filtration 4, degree 4")
        self.image = image
        self.presentation = pres
        slot_x = image.terms.get((1,))
        if slot_x != _ko_single(4, 1, 0):
            raise ShapeError("action lacks the 4*xi*x leading term")
        slot_x2 = image.terms.get((2,), KOElement(()))
        if slot_x2.terms and any(key != (0, 1) for key, _ in slot_x2.terms):
            raise ShapeError("the x^2 slot must be a multiple of bR")
        c = dict(slot_x2.terms).get((0, 1), 0)
        if c % 2:
            raise ShapeError("the bR*x^2 coefficient must be even (it reads 2a)")
        for exps, coeff in image.terms.items():
            if pres.weight_of_monomial(exps) < 9 and exps not in ((1,), (2,)):
                raise ShapeError("unexpected low-filtration term in the action")
        self.a_raw = c // 2


def ko_model_from_a(a: int, truncation: int = KO_TRUNCATION_DEFAULT) -> KOModelStructure:
    pres = ko_presentation(truncation)
    series = pres.series({(1,): _ko_single(4, 1, 0), (2,): _ko_single(2 * a, 0, 1)})
    return KOModelStructure(series)


def flip_orientation(structure: KOModelStructure) -> KOModelStructure:
    """Replace the variable with its negative; the invariant flips sign."""
    return ko_model_from_a(-structure.a_raw, structure.presentation.truncation)


def a_invariant(structure: KOModelStructure) -> int:
    """The integer a read from the bR*x^2 slot, canonicalized modulo 24."""
    return canonicalize_a(structure.a_raw)


def profile_of_ko_model(structure: KOModelStructure) -> RectorProfile:
    a = a_invariant(structure)
    two, three = signs_from_a(a)
    return RectorProfile(a, ((2, two), (3, three)))


def combined_profile(
    ko: Optional[KOModelStructure], k_model: Optional[KModelStructure]
) -> RectorProfile:
    if ko is None and k_model is None:
        raise InputError("no model data present")
    if ko is None:
        return profile_of_k_model(k_model)
    base = profile_of_ko_model(ko)
    if k_model is None:
        return base
    signs = dict(base.signs)
    for p, s in profile_of_k_model(k_model).signs:
        if p in signs and signs[p] != s:
            raise MalformedStructure(
                f"KO-side and K-side disagree on the sign at {p}"
            )
        signs[p] = s
    return RectorProfile(base.a_class, tuple(sorted(signs.items())))


def transport_a(eps: int, sigma2: int, a_value: int) -> int:
    """Transport of the a-invariant along an isomorphism with linear sign eps
    and quadratic slot sigma2: the result is 6*sigma2 + eps*a modulo 24.

    The quadratic slot is forced to be divisible by 4, so the transported
    value is congruent to +-a; this consequence is asserted.
    """
    if eps not in (1, -1):
        raise InputError("eps must be +1 or -1")
    if sigma2 % 4:
        raise InvalidTransport(f"quadratic slot {sigma2} is not divisible by 4")
    result = (6 * sigma2 + eps * a_value) % 24
    if result not in (a_value % 24, (-a_value) % 24):
        raise LambdaForgeError("transport failed its sign-invariance consequence")
    return result


# -- construction of prescribed sign vectors -----------------------------------------


def _slot_residue_constraints(p: int, m: int, target_sign: Optional[int]):
    """(modulus, residue) the v^m coefficient of psi^p(v) must satisfy."""
    if p % 2 and target_sign is not None:
        if m == (p + 1) // 2:
            return p * p, (2 * target_sign * p) % (p * p)
        if m < (p + 1) // 2:
            # below the sign slot only p^2-divisible junk may appear
            return p * p, 0
    return p, 1 % p if m == p else 0


def _candidates(modulus: int, residue: int, bound: int, reference: int = 0) -> List[int]:
    """Residue-class members within [-bound, bound], closest to the reference first."""
    base = residue % modulus
    values = []
    k = 0
    while True:
        hit = False
        for v in (base + k * modulus, base - k * modulus) if k else (base,):
            if -bound <= v <= bound:
                values.append(v)
                hit = True
        if not hit and base + k * modulus > bound and base - k * modulus < -bound:
            break
        k += 1
    values.sort(key=lambda v: (abs(v - reference), -v))
    return values


def construct_structure(
    target_signs: Mapping[int, int],
    primes: Sequence[int] = (2, 3, 5),
    truncation: int = K_TRUNCATION_DEFAULT,
    exponent_bound: int = 12,
    box_factor: int = 6,
) -> KModelStructure:
    """Solve for integer psi^p coefficient vectors realizing the target signs.

    Degree-by-degree with backtracking: at each v-power the pairwise
    commutation conditions are linear in the unknown coefficients, with
    per-prime congruence constraints from Frobenius and the sign slots.
    The search box is |coefficient| <= box_factor * p^2 per slot; exhausting
    it raises Unsatisfiable with the obstruction level.  The default factor
    is the smallest that realizes every sign vector on {3, 5} at the default
    truncation (a factor of 3 already fails at degree 3).
    """
    primes = tuple(sorted(set(primes)))
    for p in primes:
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
    for p in target_signs:
        if p not in primes or p == 2:
            raise InputError(f"target signs are indexed by configured odd primes, got {p}")
    top = top_power(truncation)
    signs = {p: target_signs.get(p, 1) for p in primes if p % 2}

    polys: Dict[int, Dict[int, int]] = {p: {1: p * p} for p in primes}
    boxes = {p: box_factor * p * p for p in primes}
    reference = {p: chebyshev_image(p, top) for p in primes}

    def pair_gap(p: int, q: int, m: int) -> int:
        # [v^m] of (psi^q after psi^p) - (psi^p after psi^q) with slot m zeroed
        a = poly_compose(polys[p], polys[q], m)
        b = poly_compose(polys[q], polys[p], m)
        return a.get(m, 0) - b.get(m, 0)

    def slot_assignments(m: int) -> Iterable[Dict[int, int]]:
        p0 = primes[0]
        modulus, residue = _slot_residue_constraints(p0, m, signs.get(p0))
        gaps = {q: pair_gap(p0, q, m) for q in primes[1:]}
        for x0 in _candidates(modulus, residue, boxes[p0], reference[p0].get(m, 0)):
            assignment = {p0: x0}
            ok = True
            for q in primes[1:]:
                # commutation of p0 and q at degree m:
                #   x0*(q^{2m} - q^2) - x_q*(p0^{2m} - p0^2) + gap = 0
                num = x0 * (q ** (2 * m) - q * q) + gaps[q]
                den = p0 ** (2 * m) - p0 * p0
                if num % den:
                    ok = False
                    break
                xq = num // den
                qmod, qres = _slot_residue_constraints(q, m, signs.get(q))
                if abs(xq) > boxes[q] or xq % qmod != qres % qmod:
                    ok = False
                    break
                assignment[q] = xq
            if not ok:
                continue
            trial = {p: dict(polys[p]) for p in primes}
            for p, v in assignment.items():
                if v:
                    trial[p][m] = v
            consistent = True
            for i, p in enumerate(primes):
                for q in primes[i + 1 :]:
                    lhs = poly_compose(trial[p], trial[q], m).get(m, 0)
                    rhs = poly_compose(trial[q], trial[p], m).get(m, 0)
                    if lhs != rhs:
                        consistent = False
                        break
                if not consistent:
                    break
            if consistent:
                yield assignment

    deepest = [1]

    def solve(m: int) -> bool:
        if m > top:
            return True
        deepest[0] = max(deepest[0], m)
        for assignment in slot_assignments(m):
            saved = {p: polys[p].get(m) for p in primes}
            for p, v in assignment.items():
                if v:
                    polys[p][m] = v
                else:
                    polys[p].pop(m, None)
            if solve(m + 1):
                return True
            for p, old in saved.items():
                if old is None:
                    polys[p].pop(m, None)
                else:
                    polys[p][m] = old
        return False

    if not solve(2):
        raise Unsatisfiable(deepest[0])

    full = _composite_closure(polys, primes, exponent_bound, top)
    structure = KModelStructure.from_polynomials(full, primes, truncation)
    for p in signs:
        if odd_sign(structure, p) != signs[p]:
            raise LambdaForgeError("constructed structure fails its own sign extraction")
    return structure


def conjugate_structure(
    structure: KModelStructure, substitution: Mapping[int, int]
) -> Tuple[KModelStructure, Dict[int, int]]:
    """Push the family forward along an automorphism v -> s(v) of Z[[v]].

    Returns the conjugated structure and the witness s, which intertwines
    the original family with the new one.
    """
    s = {e: c for e, c in substitution.items() if c}
    top = top_power(structure.truncation)
    s_inv = poly_compositional_inverse(s, top)
    polys = {}
    for k in structure.family.ks:
        f = structure.poly(k)
        polys[k] = poly_compose(poly_compose(s_inv, f, top), s, top)
    conjugated = KModelStructure.from_polynomials(polys, structure.primes, structure.truncation)
    return conjugated, s


# -- the intertwiner solver ------------------------------------------------------------


@dataclass(frozen=True)
class Refutation:
    eps: int
    degree: int
    prime: int
    detail: str


@dataclass(frozen=True)
class IntertwinerResult:
    kind: str  # "isomorphic" | "distinct" | "inconclusive"
    witness: Optional[Dict[int, int]] = None
    refutations: Tuple[Refutation, ...] = ()
    degree_bound: int = 0

    @property
    def isomorphic(self) -> bool:
        return self.kind == "isomorphic"

    def witness_map(self, presentation: RingPresentation) -> FilteredMap:
        if self.witness is None:
            raise LambdaForgeError("no witness available")
        image = _poly_to_series(self.witness, presentation)
        return FilteredMap(presentation, presentation, (image,))


def find_intertwiner(
    a_structure: KModelStructure,
    b_structure: KModelStructure,
    degree_bound: int = 6,
    oriented: bool = True,
) -> IntertwinerResult:
    """Solve for v -> eps*v + a_2 v^2 + ... + a_D v^D intertwining two models.

    At degree m the unknown enters each prime's commutation condition
    linearly with coefficient p^2 - p^{2m}, so the first prime determines
    the coefficient by exact division and the remaining primes cross-check
    it.  Failure of divisibility or of a cross-check refutes the branch at
    that degree and prime.

    By default only orientation-preserving maps (eps = +1) are searched:
    these transport every sign-slot residue identically, so the extracted
    signs are a complete obstruction.  With ``oriented=False`` the
    orientation-reversing branch is searched too; such maps flip the sign
    slot at primes congruent to 3 mod 4 (the slot transports with
    eps^((p-1)/2)), so they can identify structures whose raw sign vectors
    differ by exactly that flip.
    """
    if a_structure.primes != b_structure.primes:
        raise InputError("structures must share their prime set")
    if a_structure.truncation != b_structure.truncation:
        raise InputError("structures must share their truncation")
    primes = a_structure.primes
    if not primes:
        raise InputError("at least one prime is required")
    top = top_power(a_structure.truncation)
    if degree_bound > top:
        raise InputError(
            f"degree bound {degree_bound} exceeds the truncation window (top power {top})"
        )

    f_polys = {p: a_structure.poly(p) for p in primes}
    g_polys = {p: b_structure.poly(p) for p in primes}

    refutations: List[Refutation] = []
    inconclusive = False
    for eps in (1,) if oriented else (1, -1):
        s: Dict[int, int] = {1: eps}
        refuted = False
        for m in range(2, degree_bound + 1):
            value: Optional[int] = None
            for p in primes:
                base = (
                    poly_compose(f_polys[p], s, m).get(m, 0)
                    - poly_compose(s, g_polys[p], m).get(m, 0)
                )
                den = p * p - p ** (2 * m)
                if value is None:
                    if base % den:
                        refutations.append(
                            Refutation(
                                eps,
                                m,
                                p,
                                f"no integer solves {den}*a = {-base} at degree {m}",
                            )
                        )
                        refuted = True
                        break
                    value = -base // den
                else:
                    if base + value * den != 0:
                        refutations.append(
                            Refutation(
                                eps,
                                m,
                                p,
                                f"coefficient {value} fails the prime-{p} constraint",
                            )
                        )
                        refuted = True
                        break
            if refuted:
                break
            if value:
                s[m] = value
        if refuted:
            continue
        commutes = all(
            poly_compose(f_polys[p], s, top) == poly_compose(s, g_polys[p], top)
            for p in primes
        )
        if commutes:
            return IntertwinerResult("isomorphic", witness=dict(s), degree_bound=degree_bound)
        inconclusive = True
    if inconclusive:
        return IntertwinerResult(
            "inconclusive", refutations=tuple(refutations), degree_bound=degree_bound
        )
    return IntertwinerResult(
        "distinct", refutations=tuple(refutations), degree_bound=degree_bound
    )
