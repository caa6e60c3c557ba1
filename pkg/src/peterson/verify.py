"""Invariant sweeps over a list of diagrams.

Each suite maps a diagram to one :class:`CaseResult`; ``run`` collects results
in a canonical order (suite, then sweep position) so output does not depend on
how cases were scheduled.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closedform import chevalley, emit_tables, monk
from .cohring import (
    check_triangularity, divisor, expand_in_omega, giambelli_check,
    klyachko_ordinary_check, omega_class, p_class, relation_check,
)
from .errors import DomainError, OutsideModelError
from .homologymod import (
    HomClass, cap_divisor, cap_omega, duality_check, multiplicity_by_integration,
    q_chevalley_lhs,
)
from .localization import divisor_closed_form, p_restrict
from .rootdata import (
    DynkinDiagram, build_diagram, card, component_types, connection_index,
    format_subset, members, restrict, subset, subsets_of,
)
from .tpoly import TPoly
from .weylcox import (
    WeylWord, coxeter_elements, elements_by_length, linear_extension_count,
    reduced_word_count, weyl_order,
)

DEFAULT_SWEEP = ("A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4",
                 "D4", "D5", "G2", "F4", "E6")
_FAMILY_START = {"A": 1, "B": 2, "C": 2, "D": 4}

SUITES = ("giambelli", "ring", "duality", "qchevalley", "oracles", "positivity",
          "klyachko", "stability", "tables")


def sweep(max_rank: int | None = None) -> list[str]:
    """The default sweep, with classical families extended up to ``max_rank``."""
    names = list(DEFAULT_SWEEP)
    if max_rank:
        for family, start in _FAMILY_START.items():
            for n in range(start, max_rank + 1):
                if f"{family}{n}" not in names:
                    names.append(f"{family}{n}")
    return names


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    ok: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{self.suite:<11} {self.case:<8} {status:<4} {self.checked:>6}{tail}"

    def to_json(self) -> dict:
        return {"suite": self.suite, "case": self.case, "ok": self.ok,
                "checked": self.checked, "detail": self.detail}


class _Tally:
    def __init__(self):
        self.checked = 0
        self.first = ""

    def check(self, ok: bool, msg) -> None:
        self.checked += 1
        if not ok and not self.first:
            self.first = msg() if callable(msg) else msg

    def result(self, suite: str, case: str) -> CaseResult:
        return CaseResult(suite, case, not self.first, self.checked, self.first)


def _label(D: DynkinDiagram) -> str:
    return str(D)


# -- suites -------------------------------------------------------------------


def check_giambelli(D: DynkinDiagram) -> CaseResult:
    """``p_v = R(v)/|I|! Omega_I`` at every fixed point, for every Coxeter element."""
    tally = _Tally()
    for I in subsets_of(D.full):
        for v in coxeter_elements(D, I):
            ok, J = giambelli_check(v)
            tally.check(ok, lambda: f"v={v.format()} I={format_subset(I)} fails at w_{format_subset(J)}")
            tally.check(reduced_word_count(v) == linear_extension_count(v),
                        lambda: f"R({v.format()}) disagrees with the linear-extension count")
    return tally.result("giambelli", _label(D))


def check_ring(D: DynkinDiagram) -> CaseResult:
    """``p_alpha (q_alpha - 2t) = 0``, divisor closed form, Omega triangularity."""
    tally = _Tally()
    try:
        check_triangularity(D)
        tally.check(True, "")
    except OutsideModelError as exc:
        tally.check(False, str(exc))
    for alpha in D.nodes:
        tally.check(relation_check(D, alpha), lambda: f"p_{alpha}(q_{alpha} - 2t) != 0")
        p = divisor(D, alpha)
        for J in subsets_of(D.full):
            want = divisor_closed_form(D, alpha, J)
            tally.check(p.at(J) == want,
                        lambda: f"p_{alpha} at w_{format_subset(J)} = {p.at(J)}, closed form {want}")
    return tally.result("ring", _label(D))


def check_duality(D: DynkinDiagram) -> CaseResult:
    report = duality_check(D)
    detail = report.failures[0] if report.failures else ""
    return CaseResult("duality", _label(D), report.ok, report.checked, detail)


def check_qchevalley(D: DynkinDiagram) -> CaseResult:
    """``prod_{alpha not in I} (q_alpha - 2t) cap [P] = |W|/|W_I| [P_I]``."""
    tally = _Tally()
    order = weyl_order(D)
    for I in subsets_of(D.full):
        got = q_chevalley_lhs(D, I)
        want = HomClass(D, {I: TPoly.const(Fraction(order, weyl_order(D, I)))})
        tally.check(got == want, lambda: f"I={format_subset(I)}: got {got}, expected {want}")
    return tally.result("qchevalley", _label(D))


def check_oracles(D: DynkinDiagram) -> CaseResult:
    """Closed forms against the ring expansion and against homology capping."""
    tally = _Tally()
    omegas = {I: omega_class(D, I) for I in subsets_of(D.full)}
    for alpha in D.nodes:
        a_mask = subset([alpha])
        for I in subsets_of(D.full):
            # Monk: closed form vs Omega-expansion of Omega_alpha Omega_I
            expected = monk(D, alpha, I).expansion()
            got = expand_in_omega(omegas[a_mask] * omegas[I])
            for K in set(expected) | set(got):
                e, g = expected.get(K, TPoly()), got.get(K, TPoly())
                tally.check(e == g, lambda: (f"Omega_{alpha} Omega_{format_subset(I)}: coefficient of "
                                             f"Omega_{format_subset(K)} is {g}, closed form {e}"))
            # Chevalley: closed form vs cap_divisor
            expected = chevalley(D, alpha, I).expansion()
            capped = cap_divisor(D, alpha, I)
            for K in set(expected) | set(capped.coeffs):
                e, g = expected.get(K, TPoly()), capped.coeff(K)
                tally.check(e == g, lambda: (f"p_{alpha} cap [P_{format_subset(I)}]: coefficient of "
                                             f"[P_{format_subset(K)}] is {g}, closed form {e}"))
            # Monk from Chevalley: c = f_J/|W_J| <Omega_I, Omega_alpha cap [P_J]>
            if alpha in members(I):
                for gamma in D.nodes:
                    if gamma in members(I):
                        continue
                    J = I | subset([gamma])
                    pairing = cap_omega(I, cap_divisor(D, alpha, J)).coeff(0)
                    via_hom = pairing * Fraction(connection_index(D, J), weyl_order(D, J))
                    want = TPoly.const(monk(D, alpha, I).up[gamma])
                    tally.check(via_hom == want, lambda: (
                        f"alpha={alpha} I={format_subset(I)} gamma={gamma}: homology gives {via_hom}, "
                        f"closed form {want}"))
                    # converse: d_{alpha J}^I = c_{alpha I}^J |W_J| f_I / (f_J |W_I|)
                    d = monk(D, alpha, I).up[gamma] * Fraction(
                        weyl_order(D, J) * connection_index(D, I),
                        connection_index(D, J) * weyl_order(D, I))
                    tally.check(d == chevalley(D, alpha, J).offdiag[gamma], lambda: (
                        f"alpha={alpha} J={format_subset(J)} beta={gamma}: Monk-derived {d}, "
                        f"Chevalley {chevalley(D, alpha, J).offdiag[gamma]}"))
    return tally.result("oracles", _label(D))


def check_positivity(D: DynkinDiagram, product_rank: int = 4) -> CaseResult:
    """Nonnegativity of Monk/Chevalley constants and of ``p_{v_I} p_{v_J}``."""
    tally = _Tally()
    for alpha in D.nodes:
        for I in subsets_of(D.full):
            ch = chevalley(D, alpha, I)
            mk = monk(D, alpha, I)
            if alpha in members(I):
                d = ch.diagonal.coeff(1)
                tally.check(d > 0 and d.denominator == 1 and ch.diagonal == mk.diagonal,
                            lambda: f"alpha={alpha} I={format_subset(I)}: diagonal {ch.diagonal}")
            for beta, c in ch.offdiag.items():
                tally.check(c >= 0, lambda: f"d coefficient alpha={alpha} J={format_subset(I)} beta={beta} is {c}")
            for gamma, c in mk.up.items():
                tally.check(c >= 0, lambda: f"c coefficient alpha={alpha} I={format_subset(I)} gamma={gamma} is {c}")
    if D.rank <= product_rank:
        classes = {}
        for I in subsets_of(D.full):
            for v in coxeter_elements(D, I):
                classes[(I, v.letters)] = (v, p_class(v))
        keys = sorted(classes, key=lambda k: (card(k[0]), k[0], k[1]))
        for a, ka in enumerate(keys):
            for kb in keys[a:]:
                va, pa = classes[ka]
                vb, pb = classes[kb]
                for K, c in expand_in_omega(pa * pb).items():
                    # p_{v_K} is a positive multiple of Omega_K, so signs agree
                    tally.check(c.nonneg(), lambda: (
                        f"p_{{{va.format()}}} p_{{{vb.format()}}}: coefficient at "
                        f"{format_subset(K)} is {c}"))
    return tally.result("positivity", _label(D))


def check_klyachko(D: DynkinDiagram, max_length: int = 5) -> CaseResult:
    """Ordinary Giambelli for every w with l(w) <= max_length."""
    tally = _Tally()
    for w in elements_by_length(D, max_length):
        tally.check(klyachko_ordinary_check(w), lambda: f"w={w.format()}")
    return tally.result("klyachko", _label(D))


def _lift(mask: int, nodes: list[int]) -> int:
    return subset(nodes[k - 1] for k in members(mask))


def check_stability(D: DynkinDiagram, max_length: int = 3) -> CaseResult:
    """Constants for a subdiagram I agree inside D and standalone."""
    tally = _Tally()
    for I in subsets_of(D.full):
        if I in (0, D.full):
            continue
        E, nodes = restrict(D, I)
        lift = {k: nodes[k - 1] for k in E.nodes}
        for J in subsets_of(E.full):
            for a in members(J):
                ce, cd = chevalley(E, a, J), chevalley(D, lift[a], _lift(J, nodes))
                same = ce.diagonal == cd.diagonal and all(
                    cd.offdiag[lift[b]] == c for b, c in ce.offdiag.items())
                tally.check(same, lambda: (f"Chevalley alpha={lift[a]} J={format_subset(_lift(J, nodes))} "
                                           f"differs inside {D} and standalone"))
        for w in elements_by_length(E, max_length):
            wd = WeylWord(tuple(lift[a] for a in w.letters), D)
            for J in subsets_of(E.full):
                tally.check(p_restrict(w, J) == p_restrict(wd, _lift(J, nodes)), lambda: (
                    f"p_{{{wd.format()}}} at w_{format_subset(_lift(J, nodes))} differs from standalone"))
        for v in coxeter_elements(E, E.full):
            vd = WeylWord(tuple(lift[a] for a in v.letters), D)
            tally.check(multiplicity_by_integration(v) == multiplicity_by_integration(vd),
                        lambda: f"m({vd.format()}) differs inside {D} and standalone")
    return tally.result("stability", _label(D))


def check_tables(family: str, max_rank: int = 6) -> CaseResult:
    table = emit_tables(family, max_rank)
    bad = table.failures
    detail = ""
    if bad:
        e = bad[0]
        detail = f"Table {e.table} {e.family}{e.n} i={e.i} j={e.j}: general {e.general}, closed {e.closed}"
    asserted = sum(1 for e in table.entries if e.asserted)
    return CaseResult("tables", family, not bad, asserted, detail)


_PER_DIAGRAM = {
    "giambelli": check_giambelli,
    "ring": check_ring,
    "duality": check_duality,
    "qchevalley": check_qchevalley,
    "oracles": check_oracles,
    "positivity": check_positivity,
    "klyachko": check_klyachko,
    "stability": check_stability,
}

# suites that only run on small diagrams in a sweep
_RANK_CAP = {"klyachko": 3, "oracles": 5}


def run(suite: str = "all", types=None, max_rank: int | None = None,
        table_rank: int = 6) -> list[CaseResult]:
    """Run one suite (or ``"all"``) over ``types`` (default: the standard sweep)."""
    if suite != "all" and suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}")
    names = list(types) if types else sweep(max_rank)
    diagrams = [build_diagram(n) for n in names]
    chosen = SUITES if suite == "all" else (suite,)
    explicit = bool(types)
    out = []
    for name in chosen:
        if name == "tables":
            families = sorted({f for D in diagrams for f, _ in component_types(D, D.full)} & set("ABCD"))
            for fam in families:
                out.append(check_tables(fam, table_rank))
            continue
        cap = _RANK_CAP.get(name)
        for D in diagrams:
            if cap and not explicit and D.rank > cap:
                continue
            out.append(_PER_DIAGRAM[name](D))
    order = {name: k for k, name in enumerate(SUITES)}
    pos = {str(D): k for k, D in enumerate(diagrams)}
    return sorted(out, key=lambda r: (order[r.suite], pos.get(r.case, -1), r.case))
