import random

import pytest

from lambdaforge import (
    AdamsFamily,
    FilteredMap,
    INTEGERS,
    RingPresentation,
    substitute,
)
from lambdaforge.axioms import certify, check_commutation, check_frobenius, check_identity
from lambdaforge.genus import chebyshev_structure
from tests.conftest import chebyshev_oracle, laurent_eval_poly, Z_PLUS_INV_MINUS_2


@pytest.fixture(scope="module")
def cheb():
    return chebyshev_structure((2, 3, 5), truncation=29, exponent_bound=12)


def test_chebyshev_images_satisfy_defining_identity(cheb):
    # oracle: q_k(t + 1/t - 2) must equal t^k + 1/t^k - 2 exactly
    from lambdaforge.genus import chebyshev_image

    for k in range(13):
        assert laurent_eval_poly(chebyshev_image(k), Z_PLUS_INV_MINUS_2) == chebyshev_oracle(k)


def test_identity_check(cheb, weight4_trunc12):
    assert check_identity(cheb.family).passed
    p = weight4_trunc12
    u = p.generator("v")
    bad = AdamsFamily(p, {1: FilteredMap(p, p, (-u,))})
    assert not check_identity(bad).passed


def test_identity_vacuous_on_empty_generators():
    p = RingPresentation(INTEGERS, (), 3)
    fam = AdamsFamily(p, {1: FilteredMap.identity(p)})
    assert check_identity(fam).passed


def test_commutation_chebyshev(cheb):
    assert check_commutation(cheb.family, 2, 3).passed
    assert check_commutation(cheb.family, 3, 2).passed


def test_commutation_line_element(zx_trunc10):
    x = zx_trunc10.generator("x")
    entries = {k: FilteredMap(zx_trunc10, zx_trunc10, (x ** k,)) for k in range(1, 7)}
    fam = AdamsFamily(zx_trunc10, entries)
    assert check_commutation(fam, 2, 3).passed


def test_commutation_failure(zx_trunc10):
    p = zx_trunc10
    x = p.generator("x")
    fam = AdamsFamily(
        p,
        {
            1: FilteredMap.identity(p),
            2: FilteredMap(p, p, (x ** 2,)),
            3: FilteredMap(p, p, (x ** 3 + 3 * x ** 2,)),
            6: FilteredMap(p, p, (x ** 6,)),
        },
    )
    report = check_commutation(fam, 2, 3)
    assert not report.passed
    # the composite really does contain an x^4 term
    lhs = substitute(fam.psi_of_generators(2)[0], fam.psi(3))
    assert lhs.terms.get((4,)) == 9


def test_frobenius_examples(cheb, zx_trunc10):
    assert check_frobenius(cheb.family, 2).passed
    assert check_frobenius(cheb.family, 3).passed
    p = zx_trunc10
    x = p.generator("x")
    bad = AdamsFamily(p, {2: FilteredMap(p, p, (x ** 2 + x,))})
    assert not check_frobenius(bad, 2).passed


def test_certify_chebyshev_attaches_lambda(cheb):
    cert = certify(cheb.family, prime_bound=5, exponent_bound=12)
    assert cert.passed
    lam = cert.lambda_family
    assert lam is not None and lam.bound == 12
    v = cheb.presentation.generator("v")
    assert lam.value(0, 2) == -2 * v


def test_certify_line_element(zx_trunc10):
    x = zx_trunc10.generator("x")
    entries = {
        k: FilteredMap(zx_trunc10, zx_trunc10, (x ** k,)) for k in range(1, 13)
    }
    fam = AdamsFamily(zx_trunc10, entries)
    cert = certify(fam)
    assert cert.passed
    # lambda^i = 0 for i >= 2 on a line element
    assert all(cert.lambda_family.value(0, i).is_zero() for i in range(2, 13))


def test_certify_failure_names_frobenius(zx_trunc10):
    p = zx_trunc10
    x = p.generator("x")
    fam = AdamsFamily(
        p, {1: FilteredMap.identity(p), 2: FilteredMap(p, p, (x ** 2 + x,))}
    )
    cert = certify(fam)
    assert not cert.passed
    assert any(r.name == "frobenius(2)" for r in cert.failures())


def test_certify_monotone(zx_trunc10):
    p = zx_trunc10
    x = p.generator("x")
    fam = AdamsFamily(
        p, {1: FilteredMap.identity(p), 2: FilteredMap(p, p, (x ** 2 + x,))}
    )
    small = certify(fam, prime_bound=2, exponent_bound=2)
    big = certify(fam, prime_bound=7, exponent_bound=12)
    assert not small.passed and not big.passed


def test_frobenius_propagates_to_sums_and_products(cheb):
    # generator-level Frobenius propagates: psi^p(f) == f^p mod p for random f
    rng = random.Random(3)
    pres = cheb.presentation
    monomials = pres.monomials_below_truncation()
    psi2 = cheb.family.psi(2)
    for _ in range(20):
        terms = {}
        for exps in monomials:
            if rng.random() < 0.5:
                c = rng.randint(-6, 6)
                if c:
                    terms[exps] = c
        f = pres.series(terms)
        diff = substitute(f, psi2) - f ** 2
        assert all(c % 2 == 0 for c in diff.terms.values())
