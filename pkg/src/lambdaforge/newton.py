"""Conversion between lambda-operation data and Adams-operation data.

The two directions are tied together by the Newton recursion

    psi^k(a) - l^1(a) psi^{k-1}(a) + ... + (-1)^{k-1} l^{k-1}(a) psi^1(a)
        = (-1)^{k-1} k l^k(a)

where l^i denotes the i-th lambda operation.  Solving forward gives psi^k
from the lambda values; solving backward divides by k exactly, and a
failed division certifies that the psi-family is not the Adams family of
any lambda-ring structure.

Lambda values are stored on generators only; psi entries extend to the
whole ring by substitution, as ring endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import DivisibilityFailure, MissingEntry, TorsionCoefficients
from .series import FilteredMap, RingPresentation, TruncatedSeries


@dataclass(frozen=True)
class LambdaFamily:
    """Per-generator lambda values l^1..l^K; l^1 is the generator itself."""

    presentation: RingPresentation
    bound: int
    entries: Tuple[Tuple[TruncatedSeries, ...], ...]  # entries[g][i-1] = l^i(gen g)

    def __post_init__(self):
        gens = self.presentation.generator_series()
        if len(self.entries) != len(gens):
            raise ValueError("one entry tuple per generator is required")
        for g, row in zip(gens, self.entries):
            if len(row) != self.bound:
                raise ValueError("each generator needs lambda entries up to the bound")
            if row[0] != g:
                raise ValueError("lambda^1 must be the identity on generators")

    def value(self, gen_index: int, i: int) -> TruncatedSeries:
        if not 1 <= i <= self.bound:
            raise MissingEntry(f"lambda^{i} is outside the configured bound {self.bound}")
        return self.entries[gen_index][i - 1]


class AdamsFamily:
    """Candidate Adams operations: a map k -> psi^k for a configured set of k."""

    __slots__ = ("presentation", "_entries")

    def __init__(self, presentation: RingPresentation, entries: Dict[int, FilteredMap]):
        self.presentation = presentation
        for k, fmap in entries.items():
            if k < 1:
                raise ValueError("Adams indices are positive integers")
            if fmap.source != presentation or fmap.target != presentation:
                raise ValueError(f"psi^{k} is not an endomorphism of the presentation")
        self._entries = dict(sorted(entries.items()))

    @property
    def ks(self) -> Tuple[int, ...]:
        return tuple(self._entries)

    def has(self, k: int) -> bool:
        return k in self._entries

    def psi(self, k: int) -> FilteredMap:
        try:
            return self._entries[k]
        except KeyError:
            raise MissingEntry(f"psi^{k} is not present in the family") from None

    def apply(self, k: int, f: TruncatedSeries) -> TruncatedSeries:
        return self.psi(k).apply(f)

    def psi_of_generators(self, k: int) -> Tuple[TruncatedSeries, ...]:
        return self.psi(k).images

    def with_entry(self, k: int, fmap: FilteredMap) -> "AdamsFamily":
        entries = dict(self._entries)
        entries[k] = fmap
        return AdamsFamily(self.presentation, entries)

    def __eq__(self, other):
        return (
            isinstance(other, AdamsFamily)
            and self.presentation == other.presentation
            and self._entries == other._entries
        )

    def __repr__(self):
        return f"<AdamsFamily ks={list(self._entries)}>"


def _newton_left_side(
    lam_row: Sequence[TruncatedSeries], psi_row: Sequence[TruncatedSeries], k: int
) -> TruncatedSeries:
    """psi^k - l^1 psi^{k-1} + ... + (-1)^{k-1} l^{k-1} psi^1, with psi^k omitted.

    Returns  sum_{i=1}^{k-1} (-1)^i l^i psi^{k-i}  so that the full left side
    is psi_row[k] + returned value.
    """
    pres = lam_row[0].presentation
    acc = pres.zero()
    for i in range(1, k):
        term = lam_row[i - 1] * psi_row[k - i]
        acc = acc - term if i % 2 == 1 else acc + term
    return acc


def psi_images_from_lambda(family: LambdaFamily, k: int) -> Tuple[TruncatedSeries, ...]:
    """Generator images of psi^k solved from the Newton recursion."""
    if not 1 <= k <= family.bound:
        raise MissingEntry(f"lambda entries up to {k} are required (bound {family.bound})")
    pres = family.presentation
    images = []
    for gi, gen in enumerate(pres.generator_series()):
        lam_row = family.entries[gi]
        psi_row = [None, gen]  # psi^1 = identity on the generator
        for m in range(2, k + 1):
            sign = 1 if (m - 1) % 2 == 0 else -1
            value = -_newton_left_side(lam_row, psi_row, m) + lam_row[m - 1].scale_int(sign * m)
            psi_row.append(value)
        images.append(psi_row[k])
    return tuple(images)


def psi_from_lambda(family: LambdaFamily, k: int) -> FilteredMap:
    """The endomorphism psi^k determined by the lambda family."""
    pres = family.presentation
    return FilteredMap(pres, pres, psi_images_from_lambda(family, k))


def adams_from_lambda(family: LambdaFamily, ks: Optional[Iterable[int]] = None) -> AdamsFamily:
    if ks is None:
        ks = range(1, family.bound + 1)
    return AdamsFamily(family.presentation, {k: psi_from_lambda(family, k) for k in ks})


def lambda_images_from_adams(
    family: AdamsFamily, k: int, lower: Sequence[Sequence[TruncatedSeries]]
) -> Tuple[TruncatedSeries, ...]:
    """Generator images of lambda^k given lambda^1..lambda^{k-1} rows in `lower`."""
    pres = family.presentation
    ring = pres.coefficients
    if not ring.torsion_free:
        raise TorsionCoefficients(
            "lambda extraction needs a torsion free coefficient ring"
        )
    images = []
    for gi, gen in enumerate(pres.generator_series()):
        lam_row = list(lower[gi])
        psi_row = [None] + [family.psi_of_generators(i)[gi] for i in range(1, k + 1)]
        left = psi_row[k] + _newton_left_side(lam_row, psi_row, k)
        sign = 1 if (k - 1) % 2 == 0 else -1
        try:
            terms = {
                e: ring.divide_exact_int(c, k) for e, c in left.scale_int(sign).terms.items()
            }
        except ValueError as exc:
            raise DivisibilityFailure(k, pres.generators[gi].name, str(exc)) from exc
        images.append(pres.series(terms))
    return tuple(images)


def lambda_from_adams(family: AdamsFamily, bound: int) -> LambdaFamily:
    """Recover lambda^1..lambda^bound from psi entries, with exact division by k."""
    pres = family.presentation
    gens = pres.generator_series()
    rows = [[g] for g in gens]
    for k in range(2, bound + 1):
        new = lambda_images_from_adams(family, k, rows)
        for gi in range(len(gens)):
            rows[gi].append(new[gi])
    return LambdaFamily(pres, bound, tuple(tuple(row) for row in rows))


def line_element_family(presentation: RingPresentation, bound: int) -> LambdaFamily:
    """Lambda family of line elements: lambda^i = 0 for i >= 2 on every generator."""
    zero = presentation.zero()
    entries = tuple(
        tuple([g] + [zero] * (bound - 1)) for g in presentation.generator_series()
    )
    return LambdaFamily(presentation, bound, entries)
