from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from peterson.errors import DomainError, NotFiniteTypeError, ParseError
from peterson.rootdata import (
    WeightVec, build_diagram, card, connection_index, diagram_from_cartan, format_subset,
    fundamental_coweight, fundamental_weight, height, members, pairing, parse_subset,
    positive_coroots, positive_roots, restrict, rho, rho_check, simple_coroot, simple_root,
    subset, subsets_of, type_label,
)

NAMES = ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6", "E7"]


def _n_pos(name):
    fam, n = name[0], int(name[1:])
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}.get(
        fam, {"G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120}.get(name))


def _f(name):
    fam, n = name[0], int(name[1:])
    return {"A": n + 1, "B": 2, "C": 2, "D": 4}.get(fam, {"G2": 1, "F4": 1, "E6": 3, "E7": 2}.get(name))


def test_subset_helpers():
    m = subset([1, 3])
    assert m == 0b101
    assert members(m) == [1, 3]
    assert card(m) == 2
    assert format_subset(m) == "{1,3}"
    assert format_subset(0) == "{}"
    assert parse_subset("1,3") == m
    assert parse_subset("{2 3}") == subset([2, 3])
    assert parse_subset("") == 0
    assert [card(s) for s in subsets_of(0b111)] == [0, 1, 1, 1, 2, 2, 2, 3]


@pytest.mark.parametrize("text", ["1,x", "0", "1,5"])
def test_parse_subset_rejects(text):
    with pytest.raises((ParseError, DomainError)):
        parse_subset(text, 4)


def test_cartan_conventions():
    # a_{ab} = <b^vee, a>; the short root carries the -2 in its row for B
    assert build_diagram("B2").cartan == ((2, -2), (-1, 2))
    assert build_diagram("C2").cartan == ((2, -1), (-2, 2))
    assert build_diagram("B3").cartan == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert build_diagram("G2").a(2, 1) == -3
    assert build_diagram("F4").a(2, 3) == -2
    E6 = build_diagram("E6")
    assert sorted(E6.neighbours(4)) == [2, 3, 5]


@pytest.mark.parametrize("name", NAMES)
def test_positive_root_counts(name):
    D = build_diagram(name)
    assert len(positive_roots(D)) == _n_pos(name)
    assert len(positive_coroots(D)) == _n_pos(name)


@pytest.mark.parametrize("name", NAMES)
def test_connection_index(name):
    assert connection_index(build_diagram(name), build_diagram(name).full) == _f(name)


@pytest.mark.parametrize("name", NAMES)
def test_type_label_roundtrip(name):
    # B2 and C2 are the same diagram
    assert type_label(build_diagram(name)) == ("B2" if name == "C2" else name)


def test_subdiagram_labels():
    D5 = build_diagram("D5")
    assert type_label(D5, subset([1, 3, 4, 5])) == "A1xA3"
    assert type_label(D5, subset([2, 3, 4, 5])) == "D4"
    E6 = build_diagram("E6")
    assert type_label(E6, subset([1, 3, 4, 5, 6])) == "A5"
    assert type_label(E6, 0) == "empty"
    B4 = build_diagram("B4")
    assert type_label(B4, subset([3, 4])) == "B2"
    assert type_label(build_diagram("C4"), subset([2, 3, 4])) == "C3"


def test_fundamental_weights_b3(b3):
    # rows of C^{-1}: varpi_2 = a1 + 2a2 + 2a3, varpi_3 = (a1 + 2a2 + 3a3)/2
    assert fundamental_weight(b3, b3.full, 2).coords == (1, 2, 2)
    assert fundamental_weight(b3, b3.full, 3).coords == (Fraction(1, 2), 1, Fraction(3, 2))
    assert pairing(b3, fundamental_coweight(b3, b3.full, 3), fundamental_weight(b3, b3.full, 2)) == 2


def test_fundamental_weights_depend_on_subset(b3):
    I = subset([1, 2])
    assert fundamental_weight(b3, I, 2).coords == (Fraction(1, 3), Fraction(2, 3), 0)
    with pytest.raises(DomainError):
        fundamental_weight(b3, I, 3)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "F4", "D4"])
def test_weights_dual_to_coroots(name):
    D = build_diagram(name)
    for I in subsets_of(D.full):
        for a in members(I):
            for b in members(I):
                assert pairing(D, simple_coroot(D, b), fundamental_weight(D, I, a)) == (a == b)
                assert pairing(D, fundamental_coweight(D, I, a), simple_root(D, b)) == (a == b)


def test_rho_check_b3(b3):
    assert rho_check(b3, subset([1, 2])).coords == (1, 1, 0)
    assert rho(b3).coords == (Fraction(5, 2), 4, Fraction(9, 2))


def test_height(b2):
    assert height(b2, fundamental_weight(b2, b2.full, 1) * 2) == 4
    assert height(b2, WeightVec([1, 2])) == 3


def test_restrict(b3):
    E, nodes = restrict(b3, subset([2, 3]))
    assert nodes == [2, 3]
    assert E.cartan == build_diagram("B2").cartan


@pytest.mark.parametrize("rows, err", [
    ([[2, -1], [0, 2]], NotFiniteTypeError),
    ([[2, -2], [-2, 2]], NotFiniteTypeError),
    ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], NotFiniteTypeError),
    ([[2, 1], [1, 2]], NotFiniteTypeError),
    ([[2, -1]], ParseError),
    ([], ParseError),
])
def test_rejects_bad_cartan(rows, err):
    with pytest.raises(err):
        diagram_from_cartan(rows)


def test_affine_minor_reported():
    with pytest.raises(NotFiniteTypeError) as info:
        diagram_from_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert info.value.minor[1] == 0


@pytest.mark.parametrize("spec", ["X3", "E9", "F5", "G3", "B1", "D3", ""])
def test_build_diagram_rejects(spec):
    with pytest.raises(ParseError):
        build_diagram(spec)


def test_build_from_json():
    D = build_diagram('{"cartan": [[2, -1], [-3, 2]]}')
    assert type_label(D) == "G2"


@given(st.sampled_from(["A4", "B4", "C3", "D4", "F4", "G2"]), st.data())
def test_roots_are_integral_and_positive(name, data):
    D = build_diagram(name)
    I = data.draw(st.sampled_from(subsets_of(D.full)))
    for r in positive_roots(D, I):
        assert all(c >= 0 and Fraction(c).denominator == 1 for c in r.coords)
        assert r.support() & ~I == 0
