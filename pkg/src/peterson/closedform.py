"""Closed-form Chevalley and Monk structure constants, multiplicities, and Tables 1-3."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import DomainError
from .rootdata import (
    DynkinDiagram, build_diagram, card, connection_index, format_subset,
    fundamental_weight, members, pairing, positive_coroots, subset,
)
from .tpoly import TPoly
from .weylcox import WeylWord, is_coxeter, reduced_word_count, weyl_order


@dataclass(frozen=True)
class ChevalleyCoeffs:
    """``p_alpha cap [P_J] = diagonal [P_J] + sum_beta offdiag[beta] [P_{J - beta}]``."""
    alpha: int
    J: int
    diagonal: TPoly
    offdiag: dict

    def expansion(self) -> dict[int, TPoly]:
        out = {self.J: self.diagonal} if self.diagonal else {}
        for beta, c in self.offdiag.items():
            if c:
                out[self.J & ~subset([beta])] = TPoly.const(c)
        return out


@dataclass(frozen=True)
class MonkCoeffs:
    """``Omega_alpha Omega_I = diagonal Omega_I + sum_gamma up[gamma] Omega_{I + gamma}``."""
    alpha: int
    I: int
    diagonal: TPoly
    up: dict

    def expansion(self) -> dict[int, TPoly]:
        out = {self.I: self.diagonal} if self.diagonal else {}
        for gamma, c in self.up.items():
            if c:
                out[self.I | subset([gamma])] = TPoly.const(c)
        return out


def _two_rho_check_pairing(D: DynkinDiagram, J: int, lam) -> Fraction:
    # <2 rho_J^vee, lam> as the sum over positive coroots of J
    return sum((pairing(D, c, lam) for c in positive_coroots(D, J)), Fraction(0))


def chevalley(D: DynkinDiagram, alpha: int, J: int) -> ChevalleyCoeffs:
    D.check_node(alpha)
    D.check_subset(J)
    if not J & subset([alpha]):
        return ChevalleyCoeffs(alpha, J, TPoly(), {})
    fw = fundamental_weight(D, J, alpha)
    diag = TPoly.monomial(_two_rho_check_pairing(D, J, fw), 1)
    offdiag = {}
    for beta in members(J):
        K = J & ~subset([beta])
        ratio = weyl_order(D, J) // weyl_order(D, K)
        # <varpi_beta^{J vee}, varpi_alpha^J> is the beta-coordinate of varpi_alpha^J
        offdiag[beta] = fw.coeff(beta) * ratio
    return ChevalleyCoeffs(alpha, J, diag, offdiag)


def monk(D: DynkinDiagram, alpha: int, I: int) -> MonkCoeffs:
    D.check_node(alpha)
    D.check_subset(I)
    if not I & subset([alpha]):
        return MonkCoeffs(alpha, I, TPoly(), {alpha: Fraction(1)})
    diag = TPoly.monomial(_two_rho_check_pairing(D, I, fundamental_weight(D, I, alpha)), 1)
    f_i = connection_index(D, I)
    up = {}
    for gamma in D.nodes:
        if I & subset([gamma]):
            continue
        J = I | subset([gamma])
        up[gamma] = Fraction(connection_index(D, J), f_i) * fundamental_weight(D, J, alpha).coeff(gamma)
    return MonkCoeffs(alpha, I, diag, up)


def _check_choice(D: DynkinDiagram, choice: dict) -> None:
    for I, v in choice.items():
        if v.diagram != D or v.support != I or not is_coxeter(v):
            raise DomainError(f"choice for {format_subset(I)} is not a Coxeter word of that subset")


def monk_p_basis(D: DynkinDiagram, alpha: int, I: int, choice: dict) -> dict[int, TPoly]:
    """Coefficients of ``p_alpha p_{v_I}`` in the basis ``{p_{v_K}}``."""
    _check_choice(D, choice)
    r_i = reduced_word_count(choice[I])
    if not I & subset([alpha]):
        J = I | subset([alpha])
        return {J: TPoly.const(Fraction((card(I) + 1) * r_i, reduced_word_count(choice[J])))}
    fw_ambient = fundamental_weight(D, D.full, alpha)
    out = {I: TPoly.monomial(_two_rho_check_pairing(D, I, fw_ambient), 1)}
    f_i = connection_index(D, I)
    for gamma in D.nodes:
        if I & subset([gamma]):
            continue
        J = I | subset([gamma])
        c = (Fraction(card(J) * connection_index(D, J) * r_i, f_i * reduced_word_count(choice[J]))
             * fundamental_weight(D, J, alpha).coeff(gamma))
        if c:
            out[J] = TPoly.const(c)
    return out


def multiplicity(v: WeylWord) -> Fraction:
    """``R(v)|W_I| / (|I|! f_I)`` for a Coxeter word v of I."""
    if not is_coxeter(v):
        raise DomainError(f"{v.format()} is not a Coxeter word")
    D, I = v.diagram, v.support
    return Fraction(reduced_word_count(v) * weyl_order(D, I),
                    math.factorial(card(I)) * connection_index(D, I))


def giambelli_scalar(v: WeylWord) -> Fraction:
    if not is_coxeter(v):
        raise DomainError(f"{v.format()} is not a Coxeter word")
    return Fraction(reduced_word_count(v), math.factorial(len(v.letters)))


def klyachko_integral(D: DynkinDiagram) -> Fraction:
    """``<Omega_Delta, [P]> = |W| / f_Delta``."""
    return Fraction(weyl_order(D), connection_index(D, D.full))


# -- tables -------------------------------------------------------------------

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


def _table1(family: str, n: int, i: int) -> Fraction:
    if family == "A":
        return Fraction(i * (n + 1 - i))
    if family == "B":
        return Fraction(n * (n + 1), 2) if i == n else Fraction(i * (2 * n + 1 - i))
    if family == "C":
        return Fraction(i * (2 * n - i))
    return Fraction(n * (n - 1), 2) if i in (n - 1, n) else Fraction(i * (2 * n - 1 - i))


def _table2(family: str, n: int, i: int, j: int) -> Fraction:
    if family == "A":
        return Fraction(comb(n, j - 1) * (n - i + 1)) if j <= i else Fraction(comb(n, j) * i)
    if family == "B":
        return Fraction(2 ** (n - 1)) if i == n else Fraction(2 ** i * comb(n, i) * min(i, j))
    if family == "C":
        return Fraction(2 ** (i - 1) * comb(n, i) * i) if j == n else Fraction(2 ** i * comb(n, i) * min(i, j))
    if i == j and i >= n - 1:
        return Fraction(2 ** (n - 3) * n)
    if {i, j} == {n - 1, n}:
        return Fraction(2 ** (n - 3) * (n - 2))
    if i <= n - 2 and j >= n - 1:
        return Fraction(2 ** (n - 2) * i)
    if i >= n - 1 and j <= n - 2:
        return Fraction(2 ** (j - 1) * j * comb(n, j))
    return Fraction(2 ** j * comb(n, j) * min(i, j))


def _table3_rows(family: str, n: int):
    """(row label, blue subset J, added node gamma, closed form in i) for the ordinary Monk table."""
    head = subset(range(1, n))
    tail = subset(range(2, n + 1))
    if family == "A":
        return [("A_{n-1} in A_n", head, n, lambda i: Fraction(i, n))]
    if family == "B":
        return [("A_{n-1} in B_n", head, n, lambda i: Fraction(2 * i, n)),
                ("B_{n-1} in B_n", tail, 1, lambda i: Fraction(1) if i != n else Fraction(1, 2))]
    if family == "C":
        return [("A_{n-1} in C_n", head, n, lambda i: Fraction(i, n)),
                ("C_{n-1} in C_n", tail, 1, lambda i: Fraction(1))]
    return [("A_{n-1} in D_n", head, n, lambda i: Fraction(2 * i, n) if i != n - 1 else Fraction(n - 2, n)),
            ("D_{n-1} in D_n", tail, 1, lambda i: Fraction(1, 2) if i in (n - 1, n) else Fraction(1))]


# Table 2 cells whose (i, j) reading is pinned by a worked example in the text:
# B_3 with J = {2,3} (a B_2), divisor node 2 (i = 1), removed nodes 3 and 2 (j = 2, 1).
_TABLE2_PINNED = {("B", 2, 1, 1), ("B", 2, 1, 2)}


@dataclass
class TableEntry:
    table: int
    family: str
    n: int
    i: int
    j: int | None
    general: Fraction
    closed: Fraction
    asserted: bool
    note: str = ""

    @property
    def status(self) -> str:
        if self.asserted:
            return "ok" if self.general == self.closed else "FAIL"
        return "flagged"


@dataclass
class StructConstTable:
    family: str
    max_rank: int
    entries: list[TableEntry] = field(default_factory=list)

    @property
    def failures(self) -> list[TableEntry]:
        return [e for e in self.entries if e.status == "FAIL"]

    @property
    def flagged(self) -> list[TableEntry]:
        return [e for e in self.entries if e.status == "flagged"]

    def rows(self):
        for e in self.entries:
            yield {
                "table": e.table, "family": e.family, "n": e.n, "i": e.i,
                "j": "" if e.j is None else e.j, "general": str(e.general),
                "closed": str(e.closed), "status": e.status, "note": e.note,
            }

    def render(self, fmt: str = "text") -> str:
        rows = list(self.rows())
        if fmt == "json":
            return json.dumps({"family": self.family, "max_rank": self.max_rank, "entries": rows}, indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["table"], lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            return buf.getvalue()
        if fmt == "latex":
            return self._latex()
        if fmt != "text":
            raise DomainError(f"unknown format {fmt!r}")
        cols = ["table", "family", "n", "i", "j", "general", "closed", "status", "note"]
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in cols}
        lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
        for r in rows:
            lines.append("  ".join(str(r[c]).ljust(widths[c]) for c in cols).rstrip())
        return "\n".join(lines) + "\n"

    def _latex(self) -> str:
        captions = {1: "Structure constant for the leading term in the Monk and Chevalley formulae.",
                    2: "Structure constants for the Chevalley formula.",
                    3: "Ordinary terms in the Monk rule."}
        heads = {1: r"$n$ & $i$ & $c_{iI}^I=d_{iI}^I$ \\",
                 2: r"$n$ & $i$ & $j$ & $d_{iI}^{I\backslash\{j\}}$ \\",
                 3: r"row & $n$ & $i$ & $c_{iJ}^K$ \\"}
        out = []
        for table in (1, 2, 3):
            entries = [e for e in self.entries if e.table == table]
            if not entries:
                continue
            ncol = 3 if table == 1 else 4
            out.append(r"\begin{table}[ht]")
            out.append(r"\begin{tabular}{|" + " c |" * ncol + "}")
            out.append(r"\hline")
            out.append(heads[table])
            out.append(r"\hline")
            for e in entries:
                val = _latex_value(e.general, t=table == 1)
                mark = "" if e.asserted else r"^{\dagger}"
                if table == 1:
                    out.append(f"{e.n} & {e.i} & ${val}{mark}$ \\\\")
                elif table == 2:
                    out.append(f"{e.n} & {e.i} & {e.j} & ${val}{mark}$ \\\\")
                else:
                    out.append(f"${e.note}$ & {e.n} & {e.i} & ${val}{mark}$ \\\\")
            out.append(r"\hline")
            out.append(r"\end{tabular}")
            out.append(r"\caption{" + f"{captions[table]} Type {self.family}, rank $\\leq {self.max_rank}$." + "}")
            out.append(r"\end{table}")
        return "\n".join(out) + "\n"


def _latex_value(q: Fraction, t: bool = False) -> str:
    body = str(q.numerator) if q.denominator == 1 else rf"\frac{{{q.numerator}}}{{{q.denominator}}}"
    if t:
        body = "t" if q == 1 else body + "t"
    return body


def emit_tables(family: str, max_rank: int) -> StructConstTable:
    """Evaluate Tables 1-3 for a classical family from the general formulas.

    Each entry carries both the general-formula value and the closed-form table
    value.  Entries whose reading is fixed are asserted; Table 2 cells whose
    node-role convention cannot be pinned down are flagged instead.
    """
    family = family.upper()
    if family not in _MIN_RANK:
        raise DomainError(f"tables cover families A-D, not {family}")
    table = StructConstTable(family, max_rank)
    for n in range(_MIN_RANK[family], max_rank + 1):
        D = build_diagram(f"{family}{n}")
        for i in D.nodes:
            ch = chevalley(D, i, D.full)
            mk = monk(D, i, D.full)
            general = ch.diagonal.coeff(1)
            assert mk.diagonal == ch.diagonal
            table.entries.append(TableEntry(1, family, n, i, None, general, _table1(family, n, i), True))
        for i in D.nodes:
            ch = chevalley(D, i, D.full)
            for j in D.nodes:
                closed = _table2(family, n, i, j)
                pinned = (family, n, i, j) in _TABLE2_PINNED
                swapped = _table2(family, n, j, i)
                if pinned:
                    note = "pinned by worked example"
                elif ch.offdiag[j] == closed:
                    note = "agrees as printed"
                elif ch.offdiag[j] == swapped:
                    note = "agrees with i,j exchanged"
                else:
                    note = "differs under both readings"
                table.entries.append(TableEntry(2, family, n, i, j, ch.offdiag[j], closed, pinned, note))
        if family == "A" and n < 2:
            continue
        for label, J, gamma, formula in _table3_rows(family, n):
            for i in members(J):
                general = monk(D, i, J).up[gamma]
                table.entries.append(TableEntry(3, family, n, i, None, general, formula(i), True, label))
    return table
