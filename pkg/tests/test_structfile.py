import pytest

from lambdaforge import INTEGERS, KO_EVEN
from lambdaforge.coefficients import IntegersMod, PrimeField
from lambdaforge.errors import InputError
from lambdaforge.genus import chebyshev_structure
from lambdaforge.structfile import (
    dump_k_model,
    load_structure_text,
    parse_coefficient_ring,
)

CHEB = """
kind = "ring"

[ring]
coefficients = "Integers"
truncation = 28

[[ring.generators]]
name = "v"
weight = 4
degree = 0

[model]
primes = [3, 5]

[psi.3]
v = "v^3 + 6*v^2 + 9*v"

[psi.5]
v = "v^5 + 10*v^4 + 35*v^3 + 50*v^2 + 25*v"
"""

KO_FILE = """
[ring]
coefficients = "KOEven"
truncation = 12

[[ring.generators]]
name = "x"
weight = 4
degree = 4

[ko]
action = "4*xi*x + 2*bR*x^2"
"""

TOWER = """
kind = "tower"

[[levels]]
kind = "cyclic"
order = 2

[[levels]]
kind = "cyclic"
order = 4

[[maps]]
kind = "reduction"
"""

GRADED = """
kind = "graded"

[ring]
coefficients = "Integers"
truncation = 15
graded = true
relations = ["x^3"]

[[ring.generators]]
name = "x"
weight = 2
degree = 2
"""

LAMBDA_FILE = """
[ring]
coefficients = "Integers"
truncation = 12

[[ring.generators]]
name = "v"
weight = 4
degree = 0

[lambda.2]
v = "-2*v"
"""


def test_parse_coefficient_ring():
    assert parse_coefficient_ring("Integers") == INTEGERS
    assert parse_coefficient_ring("KOEven") == KO_EVEN
    assert parse_coefficient_ring("IntegersMod(6)") == IntegersMod(6)
    assert parse_coefficient_ring("PrimeField(3)") == PrimeField(3)
    with pytest.raises(InputError):
        parse_coefficient_ring("PrimeField(4)")
    with pytest.raises(InputError):
        parse_coefficient_ring("Rationals")


def test_load_k_model():
    loaded = load_structure_text(CHEB)
    assert loaded.k_model is not None
    assert loaded.k_model.primes == (3, 5)
    assert loaded.adams.has(3) and loaded.adams.has(1)


def test_load_ko_model():
    loaded = load_structure_text(KO_FILE)
    assert loaded.ko_model is not None
    assert loaded.ko_model.a_raw == 1


def test_load_tower():
    loaded = load_structure_text(TOWER)
    assert loaded.tower is not None
    assert [g.order for g in loaded.tower.levels] == [2, 4]
    assert loaded.tower.maps[0].mapping == (0, 1, 0, 1)


def test_load_graded():
    loaded = load_structure_text(GRADED)
    assert loaded.graded is not None
    assert loaded.graded.bound == 13


def test_load_lambda_table():
    loaded = load_structure_text(LAMBDA_FILE)
    lam = loaded.lambdas
    assert lam is not None and lam.bound == 2
    v = loaded.presentation.generator("v")
    assert lam.value(0, 2) == -2 * v


def test_dump_and_reload_round_trip():
    structure = chebyshev_structure((3, 5), truncation=28, exponent_bound=6)
    text = dump_k_model(structure)
    loaded = load_structure_text(text)
    assert loaded.k_model is not None
    assert loaded.k_model.primes == structure.primes
    for k in structure.family.ks:
        assert loaded.k_model.poly(k) == structure.poly(k)
    # dumping again is byte-identical
    assert dump_k_model(loaded.k_model) == text


def test_load_rejects_bad_input():
    with pytest.raises(InputError):
        load_structure_text("kind = ")
    with pytest.raises(InputError):
        load_structure_text("[ring]\ncoefficients = \"Integers\"\n")
    bad_polynomial = CHEB.replace("v^3 + 6*v^2 + 9*v", "v^^3")
    with pytest.raises(Exception):
        load_structure_text(bad_polynomial)
