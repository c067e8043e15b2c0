"""Exact coefficient rings for truncated series arithmetic.

Four rings are supported: the integers, the integers modulo m, prime
fields, and the even part of the real K-theory coefficient ring (written
``KOEven`` here).  A ring object knows how to add, multiply and normalize
opaque coefficient values; integers are used as values everywhere except
``KOEven``, whose values are :class:`KOElement` normal forms.

``KOEven`` is generated by ``xi`` (degree -4) and ``bR`` (degree -8)
subject to the rewrite ``xi^2 -> 4*bR``; normal forms therefore carry an
``xi``-exponent of 0 or 1 only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import LambdaForgeError, TorsionCoefficients


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class KOElement:
    """Normal form sum of integer multiples of xi^a * bR^b with a in {0, 1}.

    ``terms`` is sorted by (a, b) and carries no zero coefficients.
    """

    terms: tuple  # tuple of ((a, b), int)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Common degree of all monomials, or None if inhomogeneous/zero."""
        degs = {-4 * a - 8 * b for (a, b), _ in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def __str__(self) -> str:
        from .parsing import format_ko_element

        return format_ko_element(self)


def _ko_make(mapping: dict) -> KOElement:
    items = tuple(sorted((k, c) for k, c in mapping.items() if c != 0))
    return KOElement(items)


KO_ZERO = KOElement(())
KO_ONE = KOElement((((0, 0), 1),))
KO_XI = KOElement((((1, 0), 1),))
KO_BR = KOElement((((0, 1), 1),))


class CoefficientRing:
    """Descriptor plus arithmetic for one of the supported coefficient rings."""

    torsion_free: bool = False
    is_field: bool = False

    def size(self):
        """Number of elements, or None when infinite."""
        return None

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def invert_unit(self, a):
        raise NotImplementedError

    def divide_exact_int(self, a, k: int):
        """Return the unique b with k*b == a, or raise ValueError."""
        raise NotImplementedError

    def divisible_by_int(self, a, p: int) -> bool:
        """Whether a lies in the ideal generated by p."""
        raise NotImplementedError

    def coefficient_degree(self, a):
        """Internal grading degree carried by the coefficient (0 except KOEven)."""
        return 0

    def elements(self):
        """Iterate all elements (finite rings only)."""
        raise LambdaForgeError(f"{self} is not a finite ring")

    def sub(self, a, b):
        return self.add(a, self.neg(b))


@dataclass(frozen=True)
class Integers(CoefficientRing):
    torsion_free = True

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def invert_unit(self, a):
        if a not in (1, -1):
            raise ValueError(f"{a} is not a unit in Z")
        return a

    def divide_exact_int(self, a, k):
        q, r = divmod(a, k)
        if r:
            raise ValueError(f"{a} is not divisible by {k}")
        return q

    def divisible_by_int(self, a, p):
        return a % p == 0

    def __str__(self):
        return "Integers"


@dataclass(frozen=True)
class IntegersMod(CoefficientRing):
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    def size(self):
        return self.modulus

    def zero(self):
        return 0

    def one(self):
        return 1 % self.modulus

    def from_int(self, n):
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def is_zero(self, a):
        return a % self.modulus == 0

    def is_unit(self, a):
        return gcd(a, self.modulus) == 1

    def invert_unit(self, a):
        return pow(a, -1, self.modulus)

    def divide_exact_int(self, a, k):
        # Unique solutions exist exactly when k is a unit mod m.
        if gcd(k, self.modulus) != 1:
            raise TorsionCoefficients(
                f"division by {k} is not unique modulo {self.modulus}"
            )
        return (a * pow(k, -1, self.modulus)) % self.modulus

    def divisible_by_int(self, a, p):
        # a lies in pR  iff  gcd(p, m) divides a.
        return a % gcd(p, self.modulus) == 0

    def elements(self):
        return range(self.modulus)

    def __str__(self):
        return f"IntegersMod({self.modulus})"


@dataclass(frozen=True)
class PrimeField(IntegersMod):
    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    is_field = True

    def __str__(self):
        return f"PrimeField({self.modulus})"


@dataclass(frozen=True)
class KOEven(CoefficientRing):
    """Integer combinations of xi^a * bR^b reduced by xi^2 -> 4*bR."""

    torsion_free = True

    def zero(self):
        return KO_ZERO

    def one(self):
        return KO_ONE

    def xi(self):
        return KO_XI

    def bR(self):
        return KO_BR

    def from_int(self, n):
        return _ko_make({(0, 0): n})

    def add(self, a: KOElement, b: KOElement):
        acc = dict(a.terms)
        for key, c in b.terms:
            acc[key] = acc.get(key, 0) + c
        return _ko_make(acc)

    def neg(self, a: KOElement):
        return KOElement(tuple((k, -c) for k, c in a.terms))

    def mul(self, a: KOElement, b: KOElement):
        acc: dict = {}
        for (a1, b1), c1 in a.terms:
            for (a2, b2), c2 in b.terms:
                xe, be, c = a1 + a2, b1 + b2, c1 * c2
                if xe >= 2:  # xi^2 -> 4*bR; exponents never exceed 2 here
                    xe -= 2
                    be += 1
                    c *= 4
                acc[(xe, be)] = acc.get((xe, be), 0) + c
        return _ko_make(acc)

    def is_zero(self, a: KOElement):
        return not a.terms

    def is_unit(self, a: KOElement):
        return a.terms in (KO_ONE.terms, self.neg(KO_ONE).terms)

    def invert_unit(self, a: KOElement):
        if not self.is_unit(a):
            raise ValueError(f"{a} is not a unit in KOEven")
        return a

    def divide_exact_int(self, a: KOElement, k: int):
        out = []
        for key, c in a.terms:
            q, r = divmod(c, k)
            if r:
                raise ValueError(f"coefficient {c} is not divisible by {k}")
            out.append((key, q))
        return KOElement(tuple(out))

    def divisible_by_int(self, a: KOElement, p: int):
        return all(c % p == 0 for _, c in a.terms)

    def coefficient_degree(self, a: KOElement):
        return a.degree()

    def __str__(self):
        return "KOEven"


INTEGERS = Integers()
KO_EVEN = KOEven()
