import json
import math
from fractions import Fraction

import pytest

from peterson.closedform import (
    chevalley, emit_tables, klyachko_integral, monk, monk_p_basis, multiplicity,
)
from peterson.cohring import p_basis_product
from peterson.errors import DomainError
from peterson.rootdata import build_diagram, card, subset, subsets_of
from peterson.tpoly import TPoly
from peterson.weylcox import WeylWord, coxeter_elements, reduced_word_count


def test_chevalley_b2(b2):
    c = chevalley(b2, 1, b2.full)
    assert c.diagonal == TPoly.monomial(4, 1)
    assert c.offdiag == {1: 4, 2: 4}


def test_chevalley_outside(b3):
    c = chevalley(b3, 1, subset([2, 3]))
    assert not c.diagonal and not c.expansion()


@pytest.mark.parametrize("n, i", [(3, 2), (4, 1), (4, 2), (5, 3)])
def test_chevalley_diagonal_type_a(n, i):
    D = build_diagram(f"A{n}")
    assert chevalley(D, i, D.full).diagonal == TPoly.monomial(i * (n + 1 - i), 1)


def test_monk_b3_a2_subset(b3):
    # Omega_2 Omega_{1,2} = 2t Omega_{1,2} + 4/3 Omega_Delta
    m = monk(b3, 2, subset([1, 2]))
    assert m.diagonal == TPoly.monomial(2, 1)
    assert m.up == {3: Fraction(4, 3)}


def test_monk_b3_on_b2_subdiagram(b3):
    m = monk(b3, 2, subset([2, 3]))
    assert m.diagonal == TPoly.monomial(4, 1)
    assert m.up == {1: 1}


def test_monk_d6():
    D6 = build_diagram("D6")
    m = monk(D6, 3, subset([3, 4, 5]))
    assert m.diagonal == TPoly.monomial(3, 1)
    assert m.up == {1: 0, 2: Fraction(3, 4), 6: Fraction(1, 2)}


def test_monk_a1_in_a2():
    A2 = build_diagram("A2")
    m = monk(A2, 1, subset([1]))
    assert m.diagonal == TPoly.monomial(1, 1)
    assert m.up == {2: Fraction(1, 2)}


def test_monk_outside_is_product(b3):
    m = monk(b3, 1, subset([3]))
    assert m.expansion() == {subset([1, 3]): TPoly.const(1)}


def _default_choice(D):
    return {I: coxeter_elements(D, I)[0] for I in subsets_of(D.full)}


def test_monk_p_basis_a2():
    A2 = build_diagram("A2")
    choice = _default_choice(A2)
    assert choice[A2.full].letters == (1, 2)
    assert monk_p_basis(A2, 2, subset([1]), choice) == {A2.full: TPoly.const(2)}


def test_monk_p_basis_rejects_bad_choice(b2):
    choice = _default_choice(b2)
    choice[b2.full] = WeylWord((1, 2, 1), b2)
    with pytest.raises(DomainError):
        monk_p_basis(b2, 1, subset([1]), choice)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2"])
def test_monk_p_basis_matches_ring(name):
    D = build_diagram(name)
    for pick in (0, -1):
        choice = {I: coxeter_elements(D, I)[pick] for I in subsets_of(D.full)}
        for a in D.nodes:
            for I in subsets_of(D.full):
                got = {K: c for K, c in monk_p_basis(D, a, I, choice).items() if c}
                want = p_basis_product(D, subset([a]), I, choice)
                assert got == want


@pytest.mark.parametrize("name", ["A3", "B3", "D4"])
def test_monk_rescales_to_p_basis(name):
    # p_{v_K} = R(v_K)/|K|! Omega_K turns monk() into monk_p_basis()
    D = build_diagram(name)
    choice = _default_choice(D)
    g = {K: Fraction(reduced_word_count(v), math.factorial(card(K))) for K, v in choice.items()}
    for a in D.nodes:
        for I in subsets_of(D.full):
            omega = monk(D, a, I).expansion()
            p = monk_p_basis(D, a, I, choice)
            for K, c in omega.items():
                assert c * g[I] * g[subset([a])] == p.get(K, TPoly()) * g[K]


@pytest.mark.parametrize("name, letters, m", [
    ("A2", (1,), 1), ("B2", (1, 2), 2), ("A2", (1, 2), 1), ("D4", (1, 2, 3, 4), 4),
])
def test_multiplicity(name, letters, m):
    assert multiplicity(WeylWord(letters, build_diagram(name))) == m


@pytest.mark.parametrize("name, value", [("B2", 4), ("A2", 2), ("A1", 1), ("E6", 17280)])
def test_klyachko_integral(name, value):
    assert klyachko_integral(build_diagram(name)) == value


def _entry(tab, **kw):
    return [e for e in tab.entries if all(getattr(e, k) == v for k, v in kw.items())]


def test_table1_b3():
    t = emit_tables("B", 3)
    (e,) = _entry(t, table=1, n=3, i=3)
    assert e.general == 6 and e.status == "ok"


def test_table2_pinned_cells():
    t = emit_tables("B", 2)
    (e,) = _entry(t, table=2, n=2, i=1, j=2)
    assert e.general == 4 and e.status == "ok"


def test_table2_mismatch_is_flagged_not_asserted():
    t = emit_tables("B", 3)
    (e,) = _entry(t, table=2, n=3, i=1, j=2)
    assert e.general == 12 and e.closed == 6
    assert e.status == "flagged" and e.note == "agrees with i,j exchanged"


@pytest.mark.parametrize("family", "ABCD")
def test_tables_through_rank6(family):
    t = emit_tables(family, 6)
    assert not t.failures
    assert all(e.asserted for e in t.entries if e.table in (1, 3))


def test_table3_a_row():
    t = emit_tables("A", 4)
    rows = _entry(t, table=3, n=4)
    assert [e.general for e in rows] == [Fraction(i, 4) for i in range(1, 4)]


@pytest.mark.parametrize("fmt", ["text", "csv", "json", "latex"])
def test_render(fmt):
    out = emit_tables("C", 3).render(fmt)
    assert out.endswith("\n") or fmt == "json"
    if fmt == "json":
        assert json.loads(out)["family"] == "C"
    if fmt == "latex":
        assert out.count(r"\begin{tabular}") == 3


def test_tables_reject_exceptional():
    with pytest.raises(DomainError):
        emit_tables("E", 6)
