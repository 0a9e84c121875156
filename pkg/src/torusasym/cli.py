"""Command-line interface: ``torusasym {components,invariant,series,growth,verify}``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from mpmath import mp, mpf

from . import __version__
from .asymptotics import kashaev_expansion, growth_diagnostic, main_theorem_check
from .charvar import enumerate_components
from .chern_simons import (
    cs_invariant,
    cs_via_inner_product,
    knot_exterior_phase,
    transport_from_bifurcation,
)
from .errors import PrecisionExhausted, TorusAsymError
from .exact import TorusKnot, a_coefficients, coprime_pairs, make_torus_knot, to_ratio_string
from .golden import TABLE1
from .precision import DEFAULT_DPS, tolerance
from .quadrature import kashaev_integral
from .torsion import nonabelian_torsion, torsion_at_bifurcation_via_derivative, verify_residue_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- encoding ----------------------------------------------------------------

def decimal(x, digits: int) -> dict:
    """Real number as ``{"value": "<digits significant digits>", "digits": digits}``."""
    with mp.workdps(digits + 10):
        return {"value": mp.nstr(mpf(x), digits, strip_zeros=False), "digits": digits}


def complex_decimal(z, digits: int) -> dict:
    with mp.workdps(digits + 10):
        z = mp.mpc(z)
    return {"re": decimal(z.real, digits), "im": decimal(z.imag, digits)}


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_csv(header: Sequence[str], rows: List[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _tex_frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else rf"\frac{{{x.numerator}}}{{{x.denominator}}}"


# -- components --------------------------------------------------------------

def torsion_expression(K: TorusKnot, alpha: int, beta: int) -> str:
    return f"16/{K.pq ** 2}*sin(pi*{alpha}/{K.p})^2*sin(pi*{beta}/{K.q})^2"


def component_rows(K: TorusKnot, digits: int) -> List[dict]:
    rows = []
    for c in enumerate_components(K):
        rows.append({
            "ell": c.ell,
            "alpha": c.alpha,
            "beta": c.beta,
            "k_minus": c.k_minus,
            "k_plus": c.k_plus,
            "m": c.m,
            "A_diamond": to_ratio_string(Fraction(c.A_diamond)),
            "A_triangle": to_ratio_string(c.A_triangle),
            "epsilon": c.epsilon,
            "torsion_expression": torsion_expression(K, c.alpha, c.beta),
            "torsion": decimal(nonabelian_torsion(c, K, digits), digits),
        })
    return rows


COMPONENT_COLUMNS = ["ell", "alpha", "beta", "k_minus", "k_plus", "m", "A_diamond", "A_triangle",
                     "epsilon", "torsion_expression", "torsion"]


def cmd_components(args) -> (int, str):
    K = _knot(args)
    rows = component_rows(K, args.digits)
    if args.format == "json":
        return EXIT_OK, dump_json({"knot": [K.p, K.q], "components": rows})
    if args.format == "csv":
        return EXIT_OK, dump_csv(
            COMPONENT_COLUMNS,
            [[r[c]["value"] if c == "torsion" else r[c] for c in COMPONENT_COLUMNS] for r in rows])
    lines = [r"\begin{tabular}{|c|c|c|c|c|}", r"\hline",
             r"$(k^-_\ell,k^+_\ell)$ & $m_\ell$ & $A^\diamond_\ell$ & $A^\triangleright_\ell$ & $\epsilon_\ell$ \\",
             r"\hline"]
    for c in enumerate_components(K):
        lines.append(f"$({c.k_minus},{c.k_plus})$ & ${c.m}$ & ${c.A_diamond}$ & "
                     f"${_tex_frac(c.A_triangle)}$ & ${c.epsilon}$ \\\\")
        lines.append(r"\hline")
    lines.append(r"\end{tabular}")
    return EXIT_OK, "\n".join(lines) + "\n"


# -- invariant ---------------------------------------------------------------

def _expansion_json(rep, digits: int) -> dict:
    return {
        "value": complex_decimal(rep.assembled_value, digits),
        "residue_terms": {str(k): complex_decimal(v, digits) for k, v in sorted(rep.residue_terms.items())},
        "tail_value": complex_decimal(rep.tail_value, digits),
        "tail_truncation_index": rep.tail_truncation_index,
        "tail_error_estimate": decimal(rep.tail_error_estimate, 6),
        "tail_terms": [complex_decimal(t, digits) for t in rep.tail_terms],
        "z_invariant": complex_decimal(rep.z_invariant, digits),
        "residue_identity_residual": decimal(rep.main_theorem_residual, 6),
        "signed_identity_residual": decimal(rep.closed_form_residual, 6),
    }


def _quadrature_json(res, digits: int) -> dict:
    return {
        "value": complex_decimal(res.value, digits),
        "error_estimate": decimal(res.error_estimate, 6),
        "refinement_delta": decimal(res.refinement_delta, 6),
        "truncation_bound": decimal(res.truncation_bound, 6),
        "nodes_used": res.nodes_used,
        "working_precision": res.working_precision,
        "path_angle": decimal(res.path_angle, 20),
        "truncation_radius": decimal(res.truncation_radius, 20),
        "converged": res.converged,
    }


def cmd_invariant(args) -> (int, str):
    K = _knot(args)
    N = _need_N(args)
    out: Dict[str, object] = {"knot": [K.p, K.q], "N": N, "digits": args.digits, "method": args.method}
    status = EXIT_OK
    exp = quad = None
    if args.method in ("expansion", "both"):
        exp = kashaev_expansion(K, N, args.digits)
        out["expansion"] = _expansion_json(exp, args.digits)
    if args.method in ("quadrature", "both"):
        quad = kashaev_integral(K, N, args.digits, phi=args.phi)
        out["quadrature"] = _quadrature_json(quad, args.digits)
        if not quad.converged:
            status = EXIT_FAIL
    if exp is not None and quad is not None:
        with mp.workdps(args.digits + 10):
            disc = abs(quad.value - exp.assembled_value)
            threshold = 2 * (exp.tail_error_estimate + quad.error_estimate)
        out["discrepancy"] = decimal(disc, 6)
        out["discrepancy_threshold"] = decimal(threshold, 6)
        out["agree"] = bool(disc <= threshold)
        if disc > threshold:
            status = EXIT_FAIL
    return status, dump_json(out)


# -- series / growth ---------------------------------------------------------

def cmd_series(args) -> (int, str):
    K = _knot(args)
    if args.n_max < 0:
        raise UsageError("--n-max must be non-negative")
    a = a_coefficients(K, args.n_max)
    if args.format == "csv":
        return EXIT_OK, dump_csv(["n", "a_n"], [[n, to_ratio_string(x)] for n, x in enumerate(a)])
    if args.format == "tex":
        body = "\n".join(f"{n} & ${_tex_frac(x)}$ \\\\" for n, x in enumerate(a))
        return EXIT_OK, "\\begin{tabular}{|c|c|}\n\\hline\n$n$ & $a_n$ \\\\\n\\hline\n" + body + "\n\\hline\n\\end{tabular}\n"
    return EXIT_OK, dump_json({"knot": [K.p, K.q], "a": [to_ratio_string(x) for x in a]})


def cmd_growth(args) -> (int, str):
    K = _knot(args)
    if args.jmax < 1:
        raise UsageError("--jmax must be at least 1")
    rows = growth_diagnostic(K, args.jmax, args.digits)
    if args.format == "csv":
        return EXIT_OK, dump_csv(
            ["j", "N", "ratio", "tail_error_estimate"],
            [[r["j"], r["N"], mp.nstr(r["ratio"], args.digits), mp.nstr(r["tail_error_estimate"], 6)] for r in rows])
    return EXIT_OK, dump_json({
        "knot": [K.p, K.q],
        "rows": [{"j": r["j"], "N": r["N"], "ratio": decimal(r["ratio"], args.digits),
                  "tail_error_estimate": decimal(r["tail_error_estimate"], 6)} for r in rows],
    })


# -- verify ------------------------------------------------------------------

class Report:
    def __init__(self):
        self.lines: List[str] = []
        self.failed = 0
        self.notes: List[str] = []

    def check(self, ok: bool, label: str, detail: str = ""):
        self.lines.append(f"{'PASS' if ok else 'FAIL'} {label}{(': ' + detail) if detail else ''}")
        if not ok:
            self.failed += 1

    def info(self, message: str):
        self.notes.append(f"INFO {message}")

    def text(self) -> str:
        total = len(self.lines)
        out = self.lines + self.notes + [f"{total - self.failed}/{total} checks passed"]
        return "\n".join(out) + "\n"


def verify_table1(rep: Report, args):
    for (p, q), rows in sorted(TABLE1.items()):
        K = make_torus_knot(p, q)
        comps = enumerate_components(K)
        rep.check(len(comps) == len(rows), f"T({p},{q}) component count", f"{len(comps)} vs {len(rows)}")
        for c, (pair, m, ad, at) in zip(comps, rows):
            got = (c.pair, c.m, Fraction(c.A_diamond), c.A_triangle)
            rep.check(got == (pair, m, Fraction(ad), at), f"T({p},{q}) {pair}",
                      f"m={c.m} A_diamond={c.A_diamond} A_triangle={to_ratio_string(c.A_triangle)}")


def verify_main_theorem(rep: Report, args):
    """Residue-sum identity in its signed form; the published-sign residual is reported as INFO."""
    knots = [_knot(args)] if args.p is not None else coprime_pairs(7)
    Ns = [_need_N(args)] if args.N is not None else list(range(2, 41))
    for K in knots:
        worst, worst_N, published = mpf(0), Ns[0], mpf(0)
        for N in Ns:
            r = main_theorem_check(K, N, args.digits)
            if r.closed_form_residual >= worst:
                worst, worst_N = r.closed_form_residual, N
            published = max(published, r.sub_identity_residual)
            ok = r.closed_form_passed and r.antisymmetry_passed
            if len(Ns) == 1 or not ok:
                rep.check(ok, f"{K} N={N}", f"residual {mp.nstr(r.closed_form_residual, 3)}")
        if len(Ns) > 1:
            rep.check(worst <= r.tolerance, f"{K} N={Ns[0]}..{Ns[-1]}",
                      f"max residual {mp.nstr(worst, 3)} at N={worst_N}")
        rep.info(f"{K} with unsigned eps and i^(-pqN): max residual {mp.nstr(published, 3)}")


def verify_residue(rep: Report, args):
    knots = [_knot(args)] if args.p is not None else coprime_pairs(9)
    tol = tolerance(args.digits, 10)
    for K in knots:
        for c in enumerate_components(K):
            r = verify_residue_theorem(c, K, args.digits)
            t = nonabelian_torsion(c, K, args.digits)
            with mp.workdps(args.digits + 10):
                meta = max(abs(abs(torsion_at_bifurcation_via_derivative(K, k, args.digits)) - t) / t
                           for k in c.pair)
            rep.check(r.passed and meta <= tol, f"{K} {c.pair}",
                      f"residue {mp.nstr(r.max_residual, 3)}, derivative form {mp.nstr(meta, 3)}")


def verify_chern_simons(rep: Report, args):
    knots = [_knot(args)] if args.p is not None else [make_torus_knot(3, 4), make_torus_knot(4, 7)]
    tol = tolerance(args.digits, 10)
    for K in knots:
        for c in enumerate_components(K):
            _chern_simons_component(rep, K, c, args.digits, tol)


def _chern_simons_component(rep: Report, K: TorusKnot, c, digits: int, tol):
    with mp.workdps(digits + 10):
        plus = abs(cs_invariant(K, c, 1, digits) - cs_via_inner_product(K, c, 1, dps=digits))
        rep.check(plus <= tol, f"{K} {c.pair} chi+", f"|closed - pairing| {mp.nstr(plus, 3)}")
        # the pairing at chi^- lands on the conjugate of the closed form
        minus = abs(mp.conj(cs_invariant(K, c, -1, digits))
                    - cs_via_inner_product(K, c, -1, dps=digits))
        rep.check(minus <= tol, f"{K} {c.pair} chi- (up to orientation)",
                  f"|conj(closed) - pairing| {mp.nstr(minus, 3)}")
        for k in c.pair:
            g = Fraction(1, 3)
            moved = transport_from_bifurcation(K, c, k, g).normalized()
            target = knot_exterior_phase(K, c, g).normalized()
            rep.check(moved == target, f"{K} {c.pair} transport from k={k}", "exact")


SUITES: Dict[str, Callable] = {
    "table1": verify_table1,
    "main-theorem": verify_main_theorem,
    "residue-theorem": verify_residue,
    "chern-simons": verify_chern_simons,
}


def cmd_verify(args) -> (int, str):
    rep = Report()
    SUITES[args.suite](rep, args)
    return (EXIT_FAIL if rep.failed else EXIT_OK), rep.text()


# -- plumbing ----------------------------------------------------------------

def _knot(args) -> TorusKnot:
    if args.p is None or args.q is None:
        raise UsageError("--p and --q are required")
    return make_torus_knot(args.p, args.q)


def _need_N(args) -> int:
    if args.N is None:
        raise UsageError("--N is required")
    if args.N < 2:
        raise UsageError(f"N must be at least 2, got {args.N}")
    return args.N


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--digits", type=int, default=DEFAULT_DPS)
    common.add_argument("--format", choices=["json", "csv", "tex"], default="json")
    common.add_argument("--method", choices=["expansion", "quadrature", "both"], default="expansion")
    common.add_argument("--jmax", type=int, default=4)
    common.add_argument("--n-max", dest="n_max", type=int, default=10)
    common.add_argument("--phi", type=float, default=None, help="quadrature path angle in radians")
    common.add_argument("--output", metavar="FILE")

    parser = argparse.ArgumentParser(prog="torusasym", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("components", parents=[common], help="component table")
    sub.add_parser("invariant", parents=[common], help="<K>_N by expansion and/or quadrature")
    sub.add_parser("series", parents=[common], help="finite type coefficients a_n")
    sub.add_parser("growth", parents=[common], help="|<K>_N| / N^(3/2) along N = 2pq(1+2j)")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    return parser


COMMANDS = {
    "components": cmd_components,
    "invariant": cmd_invariant,
    "series": cmd_series,
    "growth": cmd_growth,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.digits < 10:
        print("error: --digits must be at least 10", file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            status, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TorusAsymError, PrecisionExhausted) as exc:
        name = type(exc).__name__
        msg = str(exc)
        print(f"error: {msg if msg.startswith(name) else name + ': ' + msg}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
