"""Certification of candidate Adams operation families.

A family of ring endomorphisms psi^k is the Adams family of a (unique)
lambda-ring structure over a torsion free ring precisely when psi^1 is the
identity, the operations commute multiplicatively (psi^k psi^l = psi^kl),
and psi^p is a lift of Frobenius for every prime p.  The checks here run
over configured bounds; on success the lambda family is recovered through
the Newton recursion, whose exact divisions double as an independent
consistency check.

Truncations only see finitely many constraints: on a truncation of level j
with minimal generator weight d, any prime p > j/d acts degenerately, so a
bounded prime set loses nothing.  The certificate records its bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .coefficients import is_prime
from .errors import DivisibilityFailure
from .newton import AdamsFamily, LambdaFamily, lambda_from_adams
from .series import substitute


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    detail: str = ""

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class Certificate:
    """Aggregate verdict of identity/commutation/Frobenius checks."""

    passed: bool
    prime_bound: int
    exponent_bound: int
    identity: CheckReport
    commutation: Tuple[CheckReport, ...]
    frobenius: Tuple[CheckReport, ...]
    lambda_family: Optional[LambdaFamily] = None
    notes: Tuple[str, ...] = ()

    def failures(self) -> Tuple[CheckReport, ...]:
        bad = [] if self.identity.passed else [self.identity]
        bad += [r for r in self.commutation if not r.passed]
        bad += [r for r in self.frobenius if not r.passed]
        return tuple(bad)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        lines = [
            f"{verdict} (primes <= {self.prime_bound}, exponents <= {self.exponent_bound})"
        ]
        for report in (self.identity, *self.commutation, *self.frobenius):
            mark = "ok" if report.passed else "FAIL"
            suffix = f": {report.detail}" if report.detail and not report.passed else ""
            lines.append(f"  {mark:4} {report.name}{suffix}")
        for note in self.notes:
            lines.append(f"  note {note}")
        return "\n".join(lines)


def check_identity(family: AdamsFamily) -> CheckReport:
    """psi^1 must fix every generator."""
    psi1 = family.psi(1)
    for g, gen, image in zip(
        family.presentation.generators, family.presentation.generator_series(), psi1.images
    ):
        if image != gen:
            return CheckReport("identity", False, f"psi^1 moves generator {g.name}")
    return CheckReport("identity", True)


def check_commutation(family: AdamsFamily, k: int, l: int) -> CheckReport:
    """psi^l(psi^k(g)) must equal psi^{kl}(g) for every generator g."""
    name = f"commutation({k},{l})"
    psi_l = family.psi(l)
    psi_kl = family.psi(k * l)
    for g, image_k in zip(family.presentation.generators, family.psi_of_generators(k)):
        lhs = substitute(image_k, psi_l)
        rhs = psi_kl.apply(family.presentation.generator(g.name))
        if lhs != rhs:
            return CheckReport(name, False, f"disagreement on generator {g.name}")
    return CheckReport(name, True)


def check_frobenius(family: AdamsFamily, p: int) -> CheckReport:
    """psi^p(g) - g^p must have all coefficients in pR, for every generator g.

    The generator check suffices: the congruence propagates to sums by the
    freshman's-dream congruence and to products by multiplicativity.
    """
    name = f"frobenius({p})"
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ring = family.presentation.coefficients
    for g, image in zip(family.presentation.generators, family.psi_of_generators(p)):
        diff = image - family.presentation.generator(g.name) ** p
        for exps, coeff in diff.terms.items():
            if not ring.divisible_by_int(coeff, p):
                return CheckReport(
                    name, False, f"psi^{p}({g.name}) - {g.name}^{p} has a unit coefficient mod {p}"
                )
    return CheckReport(name, True)


def certify(family: AdamsFamily, prime_bound: int = 7, exponent_bound: int = 12) -> Certificate:
    """Run all three Adams property checks over the configured bounds.

    The ring homomorphism property holds by construction (entries are
    substitution maps), so it is asserted structurally rather than sampled.
    On success over a torsion free ring, the lambda family up to the largest
    contiguously available exponent is attached.
    """
    notes = []
    identity = (
        check_identity(family)
        if family.has(1)
        else CheckReport("identity", False, "psi^1 is absent")
    )

    commutation = []
    available = set(family.ks)
    for k in sorted(available):
        if k < 2 or k > exponent_bound:
            continue
        for l in sorted(available):
            if l < 2 or k * l > exponent_bound:
                continue
            if k * l in available:
                commutation.append(check_commutation(family, k, l))

    frobenius = []
    for p in sorted(available):
        if is_prime(p) and p <= prime_bound:
            frobenius.append(check_frobenius(family, p))

    passed = bool(identity) and all(commutation) and all(frobenius)

    lambda_family = None
    if passed and family.presentation.coefficients.torsion_free:
        contiguous = 0
        for k in range(1, exponent_bound + 1):
            if k in available:
                contiguous = k
            else:
                break
        if contiguous >= 1:
            try:
                lambda_family = lambda_from_adams(family, contiguous)
                notes.append(f"lambda family recovered up to k = {contiguous}")
            except DivisibilityFailure as exc:
                passed = False
                notes.append(f"divisibility failure: {exc}")
    elif passed:
        notes.append("coefficient ring has torsion; lambda recovery skipped")

    return Certificate(
        passed=passed,
        prime_bound=prime_bound,
        exponent_bound=exponent_bound,
        identity=identity,
        commutation=tuple(commutation),
        frobenius=tuple(frobenius),
        lambda_family=lambda_family,
        notes=tuple(notes),
    )
