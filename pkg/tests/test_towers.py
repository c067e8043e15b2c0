import itertools

import pytest

from lambdaforge import (
    BudgetExceeded,
    FiniteGroupTower,
    Generator,
    Homomorphism,
    RingPresentation,
    aut_group_of_truncation,
    aut_tower,
    cyclic_group,
    lim1_orbits,
    surjectivity_verdict,
    symmetric_group,
)
from lambdaforge.coefficients import PrimeField
from lambdaforge.errors import InputError
from lambdaforge.series import Relation
from lambdaforge.towers import (
    group_from_table,
    identity_homomorphism,
    trivial_group,
    zero_homomorphism,
)


def identity_tower(group, depth):
    return FiniteGroupTower(
        (group,) * depth, tuple(identity_homomorphism(group) for _ in range(depth - 1))
    )


def test_group_constructors():
    z4 = cyclic_group(4)
    assert z4.order == 4 and z4.inv(1) == 3
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert trivial_group().order == 1
    with pytest.raises(InputError):
        group_from_table("bad", [[0, 1], [0, 1]])


def test_homomorphism_validation():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    Homomorphism(z4, z2, (0, 1, 0, 1))  # reduction is fine
    with pytest.raises(InputError):
        Homomorphism(z4, z2, (0, 1, 1, 0))


# -- independent orbit oracle: act by every group element of the full product


def brute_force_orbits(tower):
    groups = tower.levels
    depth = tower.depth
    states = list(itertools.product(*(range(g.order) for g in groups)))

    def act(alpha, beta):
        out = []
        for n in range(depth):
            value = groups[n].mul(alpha[n], beta[n])
            if n + 1 < depth:
                rho = tower.maps[n]
                value = groups[n].mul(value, groups[n].inv(rho(alpha[n + 1])))
            out.append(value)
        return tuple(out)

    orbit_of = {}
    count = 0
    for beta in states:
        if beta in orbit_of:
            continue
        count += 1
        for alpha in states:
            orbit_of[act(alpha, beta)] = count
    return count


def test_lim1_identity_z2_depth5():
    tower = identity_tower(cyclic_group(2), 5)
    report = lim1_orbits(tower)
    assert report.orbit_count == 1
    assert report.basepoint_orbit_is_everything


def test_lim1_zero_maps_exhaustive():
    z2 = cyclic_group(2)
    tower = FiniteGroupTower((z2,) * 5, tuple(zero_homomorphism(z2, z2) for _ in range(4)))
    assert lim1_orbits(tower).orbit_count == 1
    assert brute_force_orbits(tower) == 1


def test_lim1_s3_identity_depth3():
    tower = identity_tower(symmetric_group(3), 3)
    assert lim1_orbits(tower).orbit_count == 1


def test_lim1_matches_brute_force_on_mixed_towers():
    z2, z4 = cyclic_group(2), cyclic_group(4)
    red = Homomorphism(z4, z2, (0, 1, 0, 1))
    tower = FiniteGroupTower((z2, z4, z2), (red, zero_homomorphism(z2, z4)))
    assert lim1_orbits(tower).orbit_count == brute_force_orbits(tower) == 1


def test_lim1_budget():
    tower = identity_tower(symmetric_group(3), 3)
    with pytest.raises(BudgetExceeded):
        lim1_orbits(tower, budget=10)


def test_budget_env_var(monkeypatch):
    monkeypatch.setenv("LAMBDA_FORGE_BUDGET", "10")
    tower = identity_tower(symmetric_group(3), 3)
    with pytest.raises(BudgetExceeded):
        lim1_orbits(tower)
    monkeypatch.setenv("LAMBDA_FORGE_BUDGET", "1000000")
    assert lim1_orbits(tower).orbit_count == 1


def test_lim1_invariant_under_levelwise_conjugation():
    # relabel each level through conjugation by a fixed element
    s3 = symmetric_group(3)
    g = 3
    relabel = [s3.mul(s3.mul(g, a), s3.inv(g)) for a in range(6)]
    table = tuple(
        tuple(relabel.index(s3.mul(relabel[a], relabel[b])) for b in range(6))
        for a in range(6)
    )
    s3_conj = group_from_table("S3'", table)
    tower_a = identity_tower(s3, 2)
    tower_b = identity_tower(s3_conj, 2)
    assert lim1_orbits(tower_a).orbit_count == lim1_orbits(tower_b).orbit_count


def test_lim1_invariant_under_relabeled_structure_maps():
    # relabel the top level by an automorphism and transport the map through it
    z4, z2 = cyclic_group(4), cyclic_group(2)
    red = Homomorphism(z4, z2, (0, 1, 0, 1))
    tower = FiniteGroupTower((z2, z4), (red,))
    phi = [0, 3, 2, 1]  # x -> 3x, an automorphism of Z/4
    phi_inv = [phi.index(a) for a in range(4)]
    transported = Homomorphism(z4, z2, tuple(red(phi_inv[a]) for a in range(4)))
    relabeled = FiniteGroupTower((z2, z4), (transported,))
    assert lim1_orbits(tower).orbit_count == lim1_orbits(relabeled).orbit_count


def test_surjectivity_verdict():
    z2, z4 = cyclic_group(2), cyclic_group(4)
    assert surjectivity_verdict(identity_tower(z2, 5)).surjective
    red = Homomorphism(z4, z2, (0, 1, 0, 1))
    tower = FiniteGroupTower((z2, z4, z2), (red, zero_homomorphism(z2, z4)))
    verdict = surjectivity_verdict(tower)
    assert not verdict.surjective and verdict.failing_index == 1


# -- exhaustive automorphism groups -----------------------------------------------


def mono_pres(p, weight, trunc, relation_power=None):
    rels = []
    if relation_power is not None:
        rels = [Relation((((relation_power,), PrimeField(p).one()),))]
    return RingPresentation(PrimeField(p), (Generator("x", weight),), trunc, rels)


def test_aut_group_orders_small_cases():
    assert aut_group_of_truncation(mono_pres(2, 1, 2, 2)).group.order == 1
    assert aut_group_of_truncation(mono_pres(3, 1, 2, 2)).group.order == 2
    assert aut_group_of_truncation(mono_pres(2, 1, 3, 3)).group.order == 2


def test_aut_group_closed_under_composition():
    data = aut_group_of_truncation(mono_pres(3, 1, 3))
    group = data.group
    for a in range(group.order):
        for b in range(group.order):
            assert 0 <= group.mul(a, b) < group.order
    # x -> a*x + b*x^2 with a a unit: order (p-1)*p = 6
    assert group.order == 6


def test_aut_tower_structure_maps_are_homomorphisms():
    base = RingPresentation(PrimeField(2), (Generator("x", 1),), 2)
    tower, datas = aut_tower(base, [2, 3, 4])
    assert [g.order for g in tower.levels] == [1, 2, 4]
    verdict = surjectivity_verdict(tower)
    assert verdict.surjective
    assert lim1_orbits(tower).orbit_count == 1


def test_aut_group_budget():
    with pytest.raises(BudgetExceeded):
        aut_group_of_truncation(mono_pres(3, 1, 5), budget=10)
