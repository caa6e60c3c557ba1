"""``peterson`` command line.

Exit status: 0 on success, 1 when a verification fails, 2 on bad arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import verify as verify_mod
from .closedform import chevalley, emit_tables, monk, monk_p_basis, multiplicity
from .cohring import CohClass, giambelli_check, omega_class, p_class, q_class
from .errors import OutsideModelError, PetersonError
from .homologymod import HomClass, multiplicity_by_integration, pair_omega
from .localization import billey_restrict, p_restrict
from .rootdata import (
    build_diagram, card, connection_index, format_subset, members, parse_subset,
    positive_roots, subsets_of, type_label,
)
from .tpoly import TPoly, format_rational
from .weylcox import coxeter_elements, is_coxeter, longest_element, parse_word, reduced_word_count, weyl_order

FORMATS = ("text", "json", "csv", "latex")


class UsageError(Exception):
    pass


# -- rendering ----------------------------------------------------------------


def _coef_text(c: TPoly, latex: bool = False) -> tuple[str, str]:
    """(sign, body) for a coefficient in front of a basis symbol; body '' means 1."""
    nonzero = [k for k in range(c.degree + 1) if c.coeff(k)]
    if len(nonzero) == 1:
        k = nonzero[0]
        q = c.coeff(k)
        sign = "-" if q < 0 else "+"
        body = (-c if q < 0 else c).format()
        if body == "1":
            body = ""
    else:
        sign, body = "+", f"({c.format()})"
    if latex and body:
        body = _latex_poly(body)
    return sign, body


def _latex_poly(text: str) -> str:
    out = []
    for tok in text.split(" "):
        if "/" in tok:
            num, _, rest = tok.partition("/")
            den = "".join(ch for ch in rest if ch.isdigit())
            tail = rest[len(den):]
            lead = "(" if num.startswith("(") else ""
            num = num.lstrip("(")
            tok = f"{lead}\\frac{{{num}}}{{{den}}}{tail}"
        out.append(tok)
    return " ".join(out)


def render_expansion(coeffs: dict[int, TPoly], symbol, order) -> str:
    keys = sorted((K for K, c in coeffs.items() if c), key=order)
    if not keys:
        return "0"
    text = ""
    for n, K in enumerate(keys):
        sign, body = _coef_text(coeffs[K])
        term = f"{body} {symbol(K)}" if body else symbol(K)
        if n == 0:
            text = ("-" if sign == "-" else "") + term
        else:
            text += f" {sign} {term}"
    return text


def _latex_expansion(coeffs: dict[int, TPoly], symbol, order) -> str:
    keys = sorted((K for K, c in coeffs.items() if c), key=order)
    if not keys:
        return "0"
    parts = []
    for n, K in enumerate(keys):
        sign, body = _coef_text(coeffs[K], latex=True)
        term = f"{body}\\,{symbol(K)}" if body else symbol(K)
        parts.append(("-" if sign == "-" else "") + term if n == 0 else f" {sign} {term}")
    return "$" + "".join(parts) + "$"


def _hom_symbol(K: int) -> str:
    return f"[P_{{{','.join(map(str, members(K)))}}}]"


def _omega_symbol(K: int) -> str:
    return f"Ω_{{{','.join(map(str, members(K)))}}}"


def _latex_hom(K: int) -> str:
    return "[\\mathbf{P}_{" + ",".join(map(str, members(K))) + "}]"


def _latex_omega(K: int) -> str:
    return "\\Omega_{" + ",".join(map(str, members(K))) + "}"


def _hom_order(K):
    return (-card(K), K)


def _coh_order(K):
    return (card(K), K)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit_expansion(args, coeffs, kind: str, extra=None) -> str:
    if kind == "hom":
        symbol, order, latex_symbol = _hom_symbol, _hom_order, _latex_hom
    else:
        symbol, order, latex_symbol = _omega_symbol, _coh_order, _latex_omega
    fmt = args.format
    if fmt == "json":
        D = args.diagram
        if kind == "hom":
            payload = HomClass(D, coeffs).to_json()
        else:
            payload = {"basis": "omega", "entries": [
                {"subset": members(K), "poly": coeffs[K].to_json()}
                for K in sorted((K for K in coeffs if coeffs[K]), key=order)]}
        payload = {"type": str(D), **payload, **(extra or {})}
        return json.dumps(payload, indent=2, ensure_ascii=False)
    if fmt == "csv":
        rows = [[format_subset(K), coeffs[K].format()] for K in sorted(coeffs, key=order) if coeffs[K]]
        return _csv(rows, ["subset", "coefficient"]).rstrip("\n")
    if fmt == "latex":
        return _latex_expansion(coeffs, latex_symbol, order)
    return render_expansion(coeffs, symbol, order)


# -- argument helpers ---------------------------------------------------------


def _diagram(text: str):
    return build_diagram(text)


def _subset(args, text: str) -> int:
    return parse_subset(text, args.diagram.rank)


def _node(args, value: int) -> int:
    if not 1 <= value <= args.diagram.rank:
        raise UsageError(f"node {value} out of range 1..{args.diagram.rank}")
    return value


def _parse_class(D, token: str) -> CohClass:
    """``p:<word>``, ``omega:<subset>``, ``q:<node>`` or ``@file.json``."""
    if token.startswith("@"):
        try:
            with open(token[1:], encoding="utf-8") as fh:
                return CohClass.from_json(D, json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read class from {token[1:]!r}: {exc}") from exc
    kind, sep, body = token.partition(":")
    if not sep:
        raise UsageError(f"bad class {token!r}; expected p:<word>, omega:<subset>, q:<node> or @file")
    kind = kind.strip().lower()
    if kind == "p":
        return p_class(parse_word(D, body))
    if kind in ("omega", "o"):
        return omega_class(D, parse_subset(body, D.rank))
    if kind == "q":
        try:
            alpha = int(body)
        except ValueError as exc:
            raise UsageError(f"bad node in {token!r}") from exc
        return q_class(D, D.check_node(alpha))
    raise UsageError(f"unknown class kind {kind!r}")


def _coxeter_choice(args) -> dict:
    D = args.diagram
    choice = {I: coxeter_elements(D, I)[0] for I in subsets_of(D.full)}
    for item in args.coxeter or []:
        sub, sep, w = item.partition(":")
        if not sep:
            raise UsageError(f"bad --coxeter entry {item!r}; expected SUBSET:WORD, e.g. 1,2:2 1")
        I = parse_subset(sub, D.rank)
        v = parse_word(D, w)
        if v.support != I or not is_coxeter(v):
            raise UsageError(f"{v.format()} is not a Coxeter word for {format_subset(I)}")
        choice[I] = v
    return choice


# -- verbs --------------------------------------------------------------------


def cmd_diagram(args) -> tuple[str, int]:
    D = args.diagram
    roots = positive_roots(D)
    subsets = subsets_of(D.full)
    rows = [(format_subset(I), type_label(D, I), connection_index(D, I), weyl_order(D, I)) for I in subsets]
    fmt = args.format
    if fmt == "json":
        payload = {
            "type": str(D),
            "cartan": [list(r) for r in D.cartan],
            "positive_roots": [[format_rational(c) for c in r.coords] for r in roots],
            "subsets": [{"subset": members(I), "label": r[1], "f": r[2], "order": r[3]}
                        for I, r in zip(subsets, rows)],
        }
        return json.dumps(payload, indent=2), 0
    if fmt == "csv":
        return _csv(rows, ["subset", "label", "f", "order"]).rstrip("\n"), 0
    if fmt == "latex":
        body = " \\\\ ".join(" & ".join(map(str, r)) for r in D.cartan)
        return f"$C_{{{D}}} = \\begin{{pmatrix}} {body} \\end{{pmatrix}}$", 0
    lines = [f"type {D}", "cartan"]
    lines += ["  " + " ".join(f"{x:>2}" for x in r) for r in D.cartan]
    lines.append(f"positive roots ({len(roots)})")
    lines += ["  " + r.format() for r in roots]
    lines.append("subset  label  f  |W_I|")
    lines += [f"  {s}  {lab}  {f}  {o}" for s, lab, f, o in rows]
    return "\n".join(lines), 0


def cmd_chevalley(args) -> tuple[str, int]:
    D = args.diagram
    alpha = _node(args, args.alpha)
    J = _subset(args, args.subset)
    return _emit_expansion(args, chevalley(D, alpha, J).expansion(), "hom"), 0


def cmd_monk(args) -> tuple[str, int]:
    D = args.diagram
    alpha = _node(args, args.alpha)
    I = _subset(args, args.subset)
    if not args.p_basis:
        if args.coxeter:
            raise UsageError("--coxeter only applies with --p-basis")
        return _emit_expansion(args, monk(D, alpha, I).expansion(), "coh"), 0
    choice = _coxeter_choice(args)
    coeffs = monk_p_basis(D, alpha, I, choice)
    used = {format_subset(K): choice[K].format() for K in sorted(coeffs, key=_coh_order)}

    def symbol(K):
        return f"p_{{v_{{{','.join(map(str, members(K)))}}}}}"

    if args.format == "json":
        payload = {"type": str(D), "basis": "p", "entries": [
            {"subset": members(K), "word": list(choice[K].letters), "poly": coeffs[K].to_json()}
            for K in sorted(coeffs, key=_coh_order) if coeffs[K]]}
        return json.dumps(payload, indent=2), 0
    if args.format == "csv":
        rows = [[format_subset(K), choice[K].format(), coeffs[K].format()]
                for K in sorted(coeffs, key=_coh_order) if coeffs[K]]
        return _csv(rows, ["subset", "word", "coefficient"]).rstrip("\n"), 0
    if args.format == "latex":
        return _latex_expansion(coeffs, lambda K: "p_{v_{" + ",".join(map(str, members(K))) + "}}",
                                _coh_order), 0
    lines = [render_expansion(coeffs, symbol, _coh_order)]
    lines += [f"  v_{s} = {w}" for s, w in used.items()]
    return "\n".join(lines), 0


def cmd_multiply(args) -> tuple[str, int]:
    D = args.diagram
    if not args.classes:
        raise UsageError("multiply needs at least one class")
    prod = CohClass.constant(D)
    for token in args.classes:
        prod = prod * _parse_class(D, token)
    return _emit_expansion(args, prod.omega(), "coh"), 0


def cmd_pair(args) -> tuple[str, int]:
    D = args.diagram
    I = _subset(args, args.omega)
    J = _subset(args, args.cycle)
    value = pair_omega(D, I, J)
    if args.format == "json":
        return json.dumps({"type": str(D), "omega": members(I), "cycle": members(J),
                           "value": value.to_json()}), 0
    if args.format == "csv":
        return _csv([[format_subset(I), format_subset(J), value.format()]], ["omega", "cycle", "value"]).rstrip("\n"), 0
    if args.format == "latex":
        return f"$\\langle \\Omega_{{{','.join(map(str, members(I)))}}}, [\\mathbf{{P}}_{{{','.join(map(str, members(J)))}}}]\\rangle = {_latex_poly(value.format())}$", 0
    return value.format(), 0


def cmd_giambelli(args) -> tuple[str, int]:
    D = args.diagram
    v = parse_word(D, args.word)
    if not is_coxeter(v):
        raise UsageError(f"{v.format()} is not a Coxeter word")
    ok, bad = giambelli_check(v)
    r = reduced_word_count(v)
    m_closed = multiplicity(v)
    m_int = multiplicity_by_integration(v)
    m_ok = m_int == TPoly.const(m_closed)
    status = ok and m_ok
    info = {
        "type": str(D), "word": list(v.letters), "subset": members(v.support),
        "R": r, "scalar": format_rational(Fraction(r, math.factorial(len(v.letters)))),
        "m": format_rational(m_closed), "m_by_integration": m_int.format(),
        "giambelli": ok, "first_failing_fixed_point": None if ok else members(bad),
    }
    if args.format == "json":
        return json.dumps(info, indent=2), 0 if status else 1
    if args.format == "csv":
        return _csv([[info[k] for k in info]], list(info)).rstrip("\n"), 0 if status else 1
    I = format_subset(v.support)
    lines = [
        f"v = {v.format()}  (Coxeter element of {I})",
        f"R(v) = {r}",
        f"p_v = {info['scalar']} Ω_{I}: " + ("ok" if ok else f"FAIL at w_{format_subset(bad)}"),
        f"m(v) = {info['m']}  (integration: {m_int.format()})" + ("" if m_ok else "  FAIL"),
    ]
    if args.format == "latex":
        lines = [f"$R(v)={r}$, $m(v)={_latex_poly(info['m'])}$"]
    return "\n".join(lines), 0 if status else 1


def cmd_tables(args) -> tuple[str, int]:
    table = emit_tables(args.family, args.max_rank)
    return table.render(args.format).rstrip("\n"), 1 if table.failures else 0


def cmd_verify(args) -> tuple[str, int]:
    types = None
    if args.type:
        types = [t for item in args.type for t in item.split(",") if t.strip()]
        for t in types:
            build_diagram(t)
    results = verify_mod.run(args.suite, types=types, max_rank=args.max_rank)
    failed = [r for r in results if not r.ok]
    code = 1 if failed else 0
    if args.format == "json":
        return json.dumps({"ok": not failed, "results": [r.to_json() for r in results]}, indent=2), code
    if args.format == "csv":
        rows = [[r.suite, r.case, "ok" if r.ok else "FAIL", r.checked, r.detail] for r in results]
        return _csv(rows, ["suite", "case", "status", "checked", "detail"]).rstrip("\n"), code
    if args.format == "latex":
        lines = [r"\begin{tabular}{|l|l|l|r|}", r"\hline", r"suite & case & status & checked \\", r"\hline"]
        lines += [f"{r.suite} & ${r.case}$ & {'ok' if r.ok else 'FAIL'} & {r.checked} \\\\" for r in results]
        lines += [r"\hline", r"\end{tabular}"]
        return "\n".join(lines), code
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} cases passed")
    return "\n".join(lines), code


def cmd_restrict(args) -> tuple[str, int]:
    D = args.diagram
    w = parse_word(D, args.word)
    J = _subset(args, args.subset)
    full = billey_restrict(w, longest_element(D, J))
    value = p_restrict(w, J)
    if args.format == "json":
        return json.dumps({"type": str(D), "word": list(w.letters), "subset": members(J),
                           "root_polynomial": full.format(), "value": value.to_json()}, indent=2), 0
    if args.format == "csv":
        return _csv([[w.format(), format_subset(J), full.format(), value.format()]],
                    ["word", "subset", "root_polynomial", "value"]).rstrip("\n"), 0
    if args.format == "latex":
        return f"$p_{{{w.format()}}}|_{{w_{{{','.join(map(str, members(J)))}}}}} = {_latex_poly(value.format())}$", 0
    return "\n".join([f"sigma_w|_(w_J) = {full.format()}", f"p_w|_(w_J) = {value.format()}"]), 0


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    parser = _Parser(prog="peterson", description="Equivariant Schubert calculus on Peterson varieties.")
    parser.add_argument("--format", choices=FORMATS, default="text")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_text, typed=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if typed:
            p.add_argument("--type", required=True, help="diagram, e.g. B3, or JSON {\"cartan\": [[...]]}")
        p.set_defaults(func=func)
        return p

    verb("diagram", cmd_diagram, "Cartan matrix, positive roots, f_I and |W_I|")
    p = verb("chevalley", cmd_chevalley, "p_alpha cap [P_J] in fundamental classes")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--subset", required=True)
    p = verb("monk", cmd_monk, "Omega_alpha Omega_I in the Omega basis (or p basis)")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--subset", required=True)
    p.add_argument("--p-basis", action="store_true")
    p.add_argument("--coxeter", nargs="+", metavar="SUBSET:WORD")
    p = verb("multiply", cmd_multiply, "product of classes in the Omega basis")
    p.add_argument("--classes", nargs="+", required=True, metavar="CLASS",
                   help="p:<word>, omega:<subset>, q:<node> or @file.json")
    p = verb("pair", cmd_pair, "<Omega_I, [P_J]>")
    p.add_argument("--omega", required=True)
    p.add_argument("--cycle", required=True)
    p = verb("giambelli", cmd_giambelli, "check Giambelli for a Coxeter word; print R(v), m(v)")
    p.add_argument("--word", required=True)
    p = verb("tables", cmd_tables, "structure constant tables for a classical family", typed=False)
    p.add_argument("--family", required=True, choices=list("ABCD") + list("abcd"))
    p.add_argument("--max-rank", type=int, default=6)
    p = verb("verify", cmd_verify, "invariant sweeps", typed=False)
    p.add_argument("--type", action="append", help="diagram(s); default is the standard sweep")
    p.add_argument("--suite", default="all", choices=("all",) + verify_mod.SUITES)
    p.add_argument("--max-rank", type=int, default=None)
    p = verb("restrict", cmd_restrict, "Billey restriction of sigma_w at w_J")
    p.add_argument("--word", required=True)
    p.add_argument("--subset", required=True)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "type", None) and isinstance(args.type, str):
            args.diagram = _diagram(args.type)
        text, code = args.func(args)
    except UsageError as exc:
        print(f"peterson: error: {exc}", file=err)
        return 2
    except PetersonError as exc:
        print(f"peterson: error: {exc}", file=err)
        return 2
    except OutsideModelError as exc:
        print(f"peterson: {exc}", file=err)
        return 1
    print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
