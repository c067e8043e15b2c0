import random

import pytest

from lambdaforge import (
    FilteredMap,
    Generator,
    GradedPresentation,
    INTEGERS,
    LevelTooLow,
    Relation,
    RingPresentation,
    graded_tower_verdict,
    lift_graded_automorphism,
    random_graded_automorphism,
    truncate_graded,
)
from lambdaforge.coefficients import IntegersMod, PrimeField
from lambdaforge.errors import InputError
from lambdaforge.graded import certify_graded_automorphism, invert_graded_map
from lambdaforge.towers import aut_tower, surjectivity_verdict


def x_cubed_presentation():
    rel = Relation((((3,), 1),))
    return GradedPresentation(INTEGERS, (Generator("x", 2, 2),), (rel,))


def test_bound_computation():
    gp = x_cubed_presentation()
    # relation monomial degree 6, doubled margin 12, bound 13
    assert gp.bound == 13
    free = GradedPresentation(PrimeField(3), (Generator("x", 2, 2),))
    assert free.bound == 3
    free1 = GradedPresentation(PrimeField(2), (Generator("x", 1, 1),))
    assert free1.bound == 2


def test_bound_override_only_upward():
    gp = GradedPresentation(INTEGERS, (Generator("x", 2, 2),), bound=10)
    assert gp.bound == 10
    with pytest.raises(InputError):
        GradedPresentation(INTEGERS, (Generator("x", 2, 2),), bound=1)


def test_requires_pid():
    with pytest.raises(InputError):
        GradedPresentation(IntegersMod(4), (Generator("x", 2, 2),))


def brute_force_ranks(degrees, relations_leads, level):
    """Count normal monomials per degree by explicit enumeration."""
    import itertools

    counts = {}
    bounds = [level // d + 1 for d in degrees]
    for exps in itertools.product(*(range(b) for b in bounds)):
        if any(all(l <= e for l, e in zip(lead, exps)) for lead in relations_leads):
            continue
        deg = sum(d * e for d, e in zip(degrees, exps))
        if deg <= level:
            counts[deg] = counts.get(deg, 0) + 1
    return dict(sorted(counts.items()))


def test_truncate_graded_rank_tables():
    gp = x_cubed_presentation()
    assert truncate_graded(gp, 5).ranks == {0: 1, 2: 1, 4: 1}
    assert truncate_graded(gp, 0).ranks == {0: 1}
    two = GradedPresentation(INTEGERS, (Generator("a", 2, 2), Generator("b", 4, 4)))
    assert truncate_graded(two, 6).ranks == {0: 1, 2: 1, 4: 2, 6: 2}
    assert truncate_graded(two, 6).ranks == brute_force_ranks((2, 4), [], 6)
    assert truncate_graded(gp, 9).ranks == brute_force_ranks((2,), [(3,)], 9)


def test_associated_graded_is_stable_across_levels():
    # each degree's rank is independent of the truncation level once visible
    gp = x_cubed_presentation()
    low = truncate_graded(gp, 4).ranks
    high = truncate_graded(gp, 20).ranks
    for degree, rank in low.items():
        assert high[degree] == rank


def test_sign_automorphism_lifts():
    gp = x_cubed_presentation()
    pres = gp.presentation_at(14)
    x = pres.generator("x")
    cert = certify_graded_automorphism(FilteredMap(pres, pres, (-x,)))
    result = lift_graded_automorphism(cert, gp)
    assert result.certificate.map.source.truncation == 16  # level 15
    assert result.certificate.map.reduce_truncation(15) == cert.map


def test_scalar_unit_lifts_over_prime_field():
    gp = GradedPresentation(PrimeField(3), (Generator("x", 2, 2),))
    for level in (4, 5, 9):
        pres = gp.presentation_at(level)
        x = pres.generator("x")
        cert = certify_graded_automorphism(FilteredMap(pres, pres, (x.scale_int(2),)))
        result = lift_graded_automorphism(cert, gp)
        assert result.certificate.map.reduce_truncation(level + 1) == cert.map


def test_shear_automorphism_lifts_with_unit_determinant():
    gp = GradedPresentation(INTEGERS, (Generator("a", 2, 2), Generator("b", 2, 2)))
    pres = gp.presentation_at(10)
    a, b = pres.generator_series()
    fmap = FilteredMap(pres, pres, (a + b, a))  # swap with shear
    cert = certify_graded_automorphism(fmap)
    assert cert.determinant == -1
    result = lift_graded_automorphism(cert, gp)
    assert result.certificate.map.reduce_truncation(11) == cert.map


def test_relation_images_vanish_at_every_level():
    gp = x_cubed_presentation()
    rng = random.Random(0)
    for level in range(14, 20):
        cert = random_graded_automorphism(gp, level, rng)
        lifted = lift_graded_automorphism(cert, gp)
        pres = lifted.certificate.map.source
        image = lifted.certificate.map.apply(pres.generator("x"))
        assert (image ** 3).is_zero()


def test_level_too_low_at_bound():
    gp = x_cubed_presentation()
    pres = gp.presentation_at(13)
    x = pres.generator("x")
    cert = certify_graded_automorphism(FilteredMap(pres, pres, (-x,)))
    with pytest.raises(LevelTooLow):
        lift_graded_automorphism(cert, gp)
    with pytest.raises(LevelTooLow):
        graded_tower_verdict(gp, range(13, 20), trials=1)


def test_graded_tower_verdicts():
    gp = x_cubed_presentation()
    verdict = graded_tower_verdict(gp, range(14, 31), trials=6, seed=0)
    assert verdict.surjective
    free1 = GradedPresentation(PrimeField(2), (Generator("x", 1, 1),))
    verdict = graded_tower_verdict(free1, range(3, 9), trials=6, seed=0)
    assert verdict.surjective


def test_cross_validate_against_exhaustive_aut_groups():
    # graded truncations of F2[x] with |x| = 1: Aut is trivial at every level,
    # and the reduction maps are exhaustively surjective
    base = RingPresentation(
        PrimeField(2), (Generator("x", 1, 1),), 4, graded=True
    )
    tower, datas = aut_tower(base, [3, 4, 5])
    assert [g.order for g in tower.levels] == [1, 1, 1]
    assert surjectivity_verdict(tower).surjective

    base3 = RingPresentation(
        PrimeField(3), (Generator("x", 1, 1),), 4, graded=True
    )
    tower3, _ = aut_tower(base3, [3, 4])
    assert [g.order for g in tower3.levels] == [2, 2]
    assert surjectivity_verdict(tower3).surjective


def test_inverse_through_degree_slices():
    gp = GradedPresentation(INTEGERS, (Generator("a", 2, 2), Generator("b", 2, 2)))
    pres = gp.presentation_at(8)
    a, b = pres.generator_series()
    fmap = FilteredMap(pres, pres, (a + b, b))
    tau = invert_graded_map(fmap)
    assert tau.images[0] == a - b and tau.images[1] == b
