"""JSON algebra documents and the ``homlie`` command line.

An algebra document looks like::

    {"dim": 3, "basis": ["h", "e", "f"],
     "structure": [{"i": 0, "j": 1, "k": 1, "value": "2"}, ...],
     "alpha": [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "1/2"]],
     "kind": "lie"}

``structure`` lists only nonzero constants (value = coefficient of e_k in
e_i e_j).  ``alpha`` is row-major: ``alpha[r][c]`` is the coefficient of e_r
in alpha(e_c).  Scalars are integers or ``"p/q"`` strings; floats are refused.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import families
from .exactla import Matrix, format_rational, rational
from .homalg import (
    AlgebraError, FinAlgebra, HomAlgebra, LinearSelfMap, hom_assoc_counterexample, is_multiplicative,
    is_skew_symmetric, make_algebra, multiplicativity_counterexample, subgroup, twist,
)
from .homology import (
    build_ce_complex, h0_dim, hom_module_failures, homology_table, make_module, verify_d_squared,
)
from .hybe import (
    HybeError, braid_operators, braid_relation_failures, build_B_alpha, check_hybe,
    is_invertible_operator,
)

KINDS = ("associative", "lie", "left-symmetric", "lie-admissible")


class DocumentError(ValueError):
    pass


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraDocument:
    algebra: FinAlgebra
    alpha: LinearSelfMap | None = None
    kind: str | None = None


# -- documents -----------------------------------------------------------------

def _scalar(v, where: str):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise DocumentError(f"{where}: expected an integer or a 'p/q' string, got {v!r}")
    try:
        return rational(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _parse_matrix(rows, dim: int, where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != dim or any(not isinstance(r, list) or len(r) != dim for r in rows):
        raise DocumentError(f"{where}: expected a {dim}x{dim} list of rows")
    return Matrix([[_scalar(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)] for r, row in enumerate(rows)])


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_document(text: str) -> AlgebraDocument:
    doc = _loads(text, "algebra document")
    if not isinstance(doc, dict):
        raise DocumentError("algebra document must be a JSON object")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise DocumentError("'dim' must be a non-negative integer")
    basis = doc.get("basis", [f"e{i}" for i in range(dim)])
    if not isinstance(basis, list) or len(basis) != dim:
        raise DocumentError(f"'basis' must list {dim} labels")
    if len(set(map(str, basis))) != dim:
        raise DocumentError("'basis' labels must be distinct")
    c = {}
    for n, e in enumerate(doc.get("structure", [])):
        where = f"structure[{n}]"
        if not isinstance(e, dict) or not {"i", "j", "k", "value"} <= e.keys():
            raise DocumentError(f"{where}: entries need i, j, k and value")
        idx = tuple(e[key] for key in "ijk")
        if any(isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < dim for x in idx):
            raise DocumentError(f"{where}: index out of range for dim {dim}")
        c[idx] = c.get(idx, 0) + _scalar(e["value"], where)
    alpha = None
    if doc.get("alpha") is not None:
        alpha = LinearSelfMap(_parse_matrix(doc["alpha"], dim, "alpha"))
    kind = doc.get("kind")
    if kind is not None and kind not in KINDS:
        raise DocumentError(f"'kind' must be one of {', '.join(KINDS)}")
    return AlgebraDocument(make_algebra(dim, basis, c), alpha, kind)


def parse_algebra(text: str) -> tuple[FinAlgebra, LinearSelfMap | None]:
    doc = read_document(text)
    return doc.algebra, doc.alpha


def algebra_document(A: FinAlgebra, alpha: LinearSelfMap | None = None, kind: str | None = None) -> dict:
    doc = {
        "dim": A.dim,
        "basis": list(A.basis_labels),
        "structure": [{"i": i, "j": j, "k": k, "value": format_rational(v)} for i, j, k, v in A.entries()],
    }
    if alpha is not None:
        doc["alpha"] = [[format_rational(v) for v in row] for row in alpha.matrix.to_rows()]
    if kind is not None:
        doc["kind"] = kind
    return doc


def dump_algebra(A: FinAlgebra, alpha: LinearSelfMap | None = None, kind: str | None = None) -> str:
    return json.dumps(algebra_document(A, alpha, kind), indent=1) + "\n"


# -- reports -------------------------------------------------------------------

def _vec(A: FinAlgebra, v):
    return {"coords": [format_rational(x) for x in v], "text": A.format_vector(v)}


def _check(axiom: str, passed: bool, counterexample=None, **extra) -> dict:
    entry = {"axiom": axiom, **extra, "passed": bool(passed)}
    if not passed:
        entry["counterexample"] = counterexample
    return entry


def g_axiom_check(A: FinAlgebra, alpha: LinearSelfMap, G) -> dict:
    G = subgroup(G)
    bad = hom_assoc_counterexample(A, alpha, G)
    cex = None
    if bad is not None:
        (i, j, k), defect = bad
        cex = {"triple": [A.basis_labels[x] for x in (i, j, k)], "indices": [i, j, k],
               "defect": _vec(A, defect)}
    return _check("G-Hom-associativity", bad is None, cex, subgroup=G.tag)


def multiplicativity_check(A: FinAlgebra, alpha: LinearSelfMap) -> dict:
    bad = multiplicativity_counterexample(A, alpha)
    cex = None if bad is None else {"pair": [A.basis_labels[x] for x in bad], "indices": list(bad)}
    return _check("multiplicativity", bad is None, cex)


def format_report(report: dict) -> str:
    lines = ["$ homlie " + " ".join(report["command"])]
    for c in report.get("checks", []):
        tag = f" [{c['subgroup']}]" if "subgroup" in c else ""
        line = f"{'PASS' if c['passed'] else 'FAIL'}  {c['axiom']}{tag}"
        if not c["passed"] and c.get("counterexample") is not None:
            line += "  counterexample: " + json.dumps(c["counterexample"])
        lines.append(line)
    for key, val in report.get("info", {}).items():
        lines.append(f"info  {key}: {val}")
    table = report.get("homology")
    if table:
        lines.append(f"{'degree':>6} {'chain dim':>9} {'rank d':>7} {'rank d_next':>11} {'homology':>9}")
        for r in table:
            flag = "  (truncated)" if r["truncated"] else ""
            lines.append(f"{r['degree']:>6} {r['chain_dim']:>9} {r['rank_d']:>7} "
                         f"{r['rank_d_next']:>11} {r['homology_dim']:>9}{flag}")
    if "timing_seconds" in report:
        lines.append(f"time  {report['timing_seconds']:.3f}s")
    return "\n".join(lines) + "\n"


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_common(p: argparse.ArgumentParser, algebra=True):
    if algebra:
        p.add_argument("--algebra", default="-", help="algebra document path, '-' for stdin")
        p.add_argument("--alpha", help="twisting map: a JSON matrix inline or a path to one")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homlie", description="Hom-algebra twisting, axiom checks and homology")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check the G-Hom-associativity axiom")
    _add_common(p)
    p.add_argument("--group", required=True, choices=["e", "12", "13", "23", "a3", "s3"])

    p = sub.add_parser("twist", help="write the twisted algebra alpha o mu")
    _add_common(p)
    p.add_argument("--out", default="-")

    p = sub.add_parser("homology", help="twisted Chevalley-Eilenberg homology")
    _add_common(p)
    p.add_argument("--coefficients", choices=["adjoint", "trivial"], default="trivial")
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("hybe", help="Hom-Yang-Baxter operator and braid relations")
    _add_common(p)
    p.add_argument("--strands", type=int, default=3)
    p.add_argument("--dump", help="write the operators in matrix text format to this path")

    p = sub.add_parser("example", help="emit a builtin algebra document")
    ex = p.add_subparsers(dest="name", required=True, parser_class=_Parser)

    def example(name, help_):
        q = ex.add_parser(name, help=help_)
        _add_common(q, algebra=False)
        q.add_argument("--out", default="-")
        q.add_argument("--untwisted", action="store_true",
                       help="emit the classical algebra with its endomorphism instead of the twist")
        return q

    q = example("sl2", "sl(2) with alpha(e) = lambda e, alpha(f) = f / lambda")
    q.add_argument("--lambda", dest="lam", default="1")
    q = example("sln", "sl(n) with n-1 scaling parameters")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--lambdas", nargs="*", default=[])
    q = example("heisenberg", "Heisenberg algebra with alpha = diag(l1, l2, l1 l2)")
    q.add_argument("--l1", default="1")
    q.add_argument("--l2", default="1")
    q = example("abelian", "abelian Lie algebra, alpha = Id")
    q.add_argument("--n", type=int, required=True)
    q = example("matrix", "M_n(Q) with conjugation by an invertible matrix")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--u", help="JSON matrix; defaults to the identity")
    q = example("matrix-exp", "M_n(Q) with exp(ad(t E_ij))")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--i", type=int, default=0)
    q.add_argument("--j", type=int, default=1)
    q.add_argument("--t", default="1")
    q = example("gl", "gl(n) with Ad_x")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--x", help="JSON matrix; defaults to the identity")
    q = example("group", "group algebra of the cyclic group C_n with g -> g^power")
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--power", type=int, default=1)
    q = example("poly", "Q[x]/(x^d) with x -> p(x)")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--coeffs", nargs="+", required=True, help="coefficients of p, constant term first")
    q = example("witt", "shift-twisted vector fields on the line, checked on an index window")
    q.add_argument("--lambda", dest="lam", default="0")
    q.add_argument("--lo", type=int, default=-1)
    q.add_argument("--hi", type=int, default=6)
    return parser


# -- commands ------------------------------------------------------------------

def _read_text(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _json_matrix(text: str, what: str) -> Matrix:
    rows = _loads(text, what)
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
        raise DocumentError(f"{what}: expected a list of rows")
    return Matrix([[_scalar(v, what) for v in r] for r in rows])


def _load(args, stdin) -> AlgebraDocument:
    doc = read_document(_read_text(args.algebra, stdin))
    if args.alpha is not None:
        text = args.alpha if args.alpha.lstrip().startswith("[") else _read_text(args.alpha, stdin)
        m = _json_matrix(text, "--alpha")
        if m.shape != (doc.algebra.dim, doc.algebra.dim):
            raise DocumentError(f"--alpha must be {doc.algebra.dim}x{doc.algebra.dim}")
        doc = AlgebraDocument(doc.algebra, LinearSelfMap(m), doc.kind)
    return doc


def _alpha_or_id(doc: AlgebraDocument) -> LinearSelfMap:
    return doc.alpha if doc.alpha is not None else LinearSelfMap.identity(doc.algebra.dim)


def _write(path: str, text: str, stdout):
    if path == "-":
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_verify(args, stdin, stdout, report):
    doc = _load(args, stdin)
    A, alpha = doc.algebra, _alpha_or_id(doc)
    report["checks"].append(g_axiom_check(A, alpha, args.group))
    report["info"] = {"multiplicative": is_multiplicative(A, alpha), "skew_symmetric": is_skew_symmetric(A)}


def _cmd_twist(args, stdin, stdout, report):
    doc = _load(args, stdin)
    A, alpha = doc.algebra, _alpha_or_id(doc)
    mult = multiplicativity_check(A, alpha)
    report["checks"].append(mult)
    if mult["passed"]:
        T = twist(A, alpha)
        _write(args.out, dump_algebra(T.algebra, T.alpha, doc.kind), stdout)


def _homlie_checks(A, alpha, report) -> bool:
    skew = is_skew_symmetric(A)
    report["checks"].append(_check("skew-symmetry", skew, {"reason": "bracket is not skew-symmetric"}))
    report["checks"].append(g_axiom_check(A, alpha, "A3"))
    return skew and report["checks"][-1]["passed"]


def _cmd_homology(args, stdin, stdout, report):
    doc = _load(args, stdin)
    A, alpha = doc.algebra, _alpha_or_id(doc)
    if not _homlie_checks(A, alpha, report):
        return
    L = HomAlgebra(A, alpha)
    report["checks"].append(multiplicativity_check(A, alpha))
    if not report["checks"][-1]["passed"]:
        return
    M = make_module(L, args.coefficients)
    bad = hom_module_failures(L, M, first_only=True)
    cex = None if not bad else {"axiom": bad[0][0], "indices": list(bad[0][1])}
    report["checks"].append(_check("Hom-module axioms", not bad, cex, coefficients=args.coefficients))
    if bad:
        return
    C = build_ce_complex(L, M, args.max_degree, check=False)
    dsq = verify_d_squared(C)
    report["checks"].append(_check("d^2 = 0", dsq, {"reason": "some d_p d_(p+1) is nonzero"}))
    if dsq:
        report["homology"] = homology_table(C, check=False)
        report["info"] = {"h0_dim": h0_dim(L, M)}


def _cmd_hybe(args, stdin, stdout, report):
    doc = _load(args, stdin)
    A, alpha = doc.algebra, _alpha_or_id(doc)
    if not _homlie_checks(A, alpha, report):
        return
    report["checks"].append(multiplicativity_check(A, alpha))
    if not report["checks"][-1]["passed"]:
        return
    B = build_B_alpha(HomAlgebra(A, alpha), check=False)
    ok = check_hybe(B)
    report["checks"].append(_check("HYBE", ok, {"reason": "the two triple products differ"}))
    ops = [B]
    if ok and args.strands >= 3:
        ops = braid_operators(B, args.strands, check=False)
        bad = braid_relation_failures(ops)
        report["checks"].append(_check("braid relations", not bad, {"pairs": bad}, strands=args.strands))
    report["info"] = {"operator_rows": B.matrix.rows, "invertible": is_invertible_operator(B)}
    if args.dump:
        _write(args.dump, "".join(op.matrix.to_text() for op in ops), stdout)


def _matrix_arg(text, n, what):
    if text is None:
        return Matrix.identity(n).to_rows()
    return _json_matrix(text, what).to_rows()


_KIND = {"sl2": "lie", "sln": "lie", "heisenberg": "lie", "abelian": "lie", "gl": "lie",
         "matrix": "associative", "matrix-exp": "associative", "group": "associative", "poly": "associative"}


def _cmd_example(args, stdin, stdout, report):
    name = args.name
    if name == "witt":
        W = families.witt_line(_scalar(args.lam, "--lambda"))
        rep = families.window_report(W, args.lo, args.hi)
        for key, axiom in (("jacobi_failures", "Jacobi (untwisted)"),
                           ("hom_jacobi_failures", "Hom-Jacobi (twisted)"),
                           ("multiplicative_failures", "multiplicativity")):
            fails = rep[key]
            report["checks"].append(_check(axiom, not fails, {"first": list(fails[0])} if fails else None))
        report["info"] = {"window": list(rep["window"]), "triples": rep["triples"], "pairs": rep["pairs"]}
        return
    if name == "sl2":
        A, alpha = families.sl2(_scalar(args.lam, "--lambda"))
    elif name == "sln":
        A, alpha = families.sl_n(args.n, [_scalar(v, "--lambdas") for v in args.lambdas])
    elif name == "heisenberg":
        A, alpha = families.heisenberg(_scalar(args.l1, "--l1"), _scalar(args.l2, "--l2"))
    elif name == "abelian":
        A = families.abelian(args.n)
        alpha = LinearSelfMap.identity(args.n)
    elif name == "matrix":
        A, alpha = families.matrix_inner(args.n, _matrix_arg(args.u, args.n, "--u"))
    elif name == "matrix-exp":
        A, alpha = families.matrix_exp_ad(args.n, args.i, args.j, _scalar(args.t, "--t"))
    elif name == "gl":
        A, alpha = families.matrix_hom_lie(args.n, _matrix_arg(args.x, args.n, "--x"))
    elif name == "group":
        A, alpha = families.cyclic_group_algebra(args.order, args.power)
    elif name == "poly":
        A, alpha = families.truncated_poly(args.d, [_scalar(v, "--coeffs") for v in args.coeffs])
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown example {name!r}")
    report["checks"].append(multiplicativity_check(A, alpha))
    if not args.untwisted:
        T = twist(A, alpha)
        A, alpha = T.algebra, T.alpha
    _write(args.out, dump_algebra(A, alpha, _KIND[name]), stdout)


_COMMANDS = {"verify": _cmd_verify, "twist": _cmd_twist, "homology": _cmd_homology,
             "hybe": _cmd_hybe, "example": _cmd_example}


def run_command(argv, stdin=None, stdout=None, stderr=None) -> tuple[int, dict]:
    """Run one subcommand; print its report and return ``(exit code, report)``."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)
    report = {"command": argv, "checks": []}
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2, report
    start = time.perf_counter()
    try:
        _COMMANDS[args.command](args, stdin, stdout, report)
    except (ValueError, ZeroDivisionError) as exc:
        report["error"] = str(exc)
        stderr.write(f"error: {exc}\n")
        return 2, report
    if args.timing:
        report["timing_seconds"] = time.perf_counter() - start
    # documents written to stdout push the report to stderr
    doc_on_stdout = getattr(args, "out", None) == "-" or getattr(args, "dump", None) == "-"
    if args.command == "example" and args.name == "witt":
        doc_on_stdout = False
    sink = stderr if doc_on_stdout else stdout
    sink.write(json.dumps(report, indent=1) + "\n" if args.json else format_report(report))
    code = 0 if all(c["passed"] for c in report["checks"]) else 1
    return code, report


def main(argv=None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
