"""Command-line front end.

Subcommands map one-to-one onto the library operations:

    psi --N 4                          component table (JSON)
    sum --N 5                          component-sum polynomial (JSON/text)
    tsasm count --order 13             counts by enum/integral/partition
    tsasm genfun --order 9             generating function (JSON)
    tsasm list --order 9               matrices (text/JSON)
    sixvertex pf --n 2 --alpha -       partition function at an exact point
    spinchain verify --N 8 --x 3/7     exact eigenpair verification (JSON)
    verify --suite all --max-N 6       theorem/property suites (JSON lines)

Exit codes: 0 success, 1 verification failure, 2 usage error.  Output is
byte-stable for fixed flags: polynomial terms are ordered lexicographically
and all scalars print through the canonical exact formats.  XTL_SEED and
XTL_THREADS provide defaults for --seed/--threads (flags win); neither value
affects any numerical result.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .contour import psi_components, sum_components, tsasm_count_integral
from .exact import (DomainError, GaussianRational, MultiLaurent, UsageError,
                    format_scalar, parse_scalar)

__all__ = ["main", "dispatch"]


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="xtl", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--out", help="write output to this path instead of stdout")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psi", help="eigenvector component table")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--x", help="exact value for x (default: symbolic)")
    p.add_argument("--tau", help="exact value for tau (default: symbolic)")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("sum", help="component-sum polynomial")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("tsasm", help="totally-symmetric ASM operations")
    tsub = p.add_subparsers(dest="tsasm_command", required=True)
    pc = tsub.add_parser("count", help="count matrices of one or more odd orders")
    pc.add_argument("--order", type=int, help="odd order 2N+1")
    pc.add_argument("--max-order", type=int, dest="max_order",
                    help="emit a table for all odd orders up to this")
    pc.add_argument("--method", choices=("enum", "integral", "partition"),
                    default="integral")
    pc.add_argument("--format", choices=("csv", "json", "text"), default="text")
    pg = tsub.add_parser("genfun", help="generating function of one order")
    pg.add_argument("--order", type=int)
    pg.add_argument("--N", type=int)
    pg.add_argument("--format", choices=("json", "text"), default="json")
    pl = tsub.add_parser("list", help="list the matrices of one order")
    pl.add_argument("--order", type=int, required=True)
    pl.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("sixvertex", help="staircase six-vertex operations")
    ssub = p.add_subparsers(dest="sixvertex_command", required=True)
    pf = ssub.add_parser("pf", help="partition function at an exact point")
    pf.add_argument("--n", type=int, required=True)
    pf.add_argument("--alpha", required=True,
                    help="boundary word over u/d, or + / - for the alternating words")
    pf.add_argument("--z", help="comma-separated 2n exact site values (default all 1)")
    pf.add_argument("--s", required=True, help="exact value with q = s^2")
    pf.add_argument("--t", required=True, help="exact corner weight t")
    pf.add_argument("--method", choices=("enum", "algebraic"), default="enum")

    p = sub.add_parser("spinchain", help="spin-chain operations")
    csub = p.add_subparsers(dest="spinchain_command", required=True)
    pv = csub.add_parser("verify", help="exact eigenpair verification")
    pv.add_argument("--N", type=int, required=True)
    pv.add_argument("--x", required=True, help="exact rational, e.g. 3/7")

    p = sub.add_parser("verify", help="theorem and property suites")
    p.add_argument("--suite", default="all",
                   choices=("all", "ybe", "exchange", "reduction", "zprops",
                            "yandyy", "gflemma", "main", "corollaries", "relationsz"))
    p.add_argument("--max-N", type=int, dest="max_n", default=6)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=_env_int("XTL_SEED", 42))
    p.add_argument("--threads", type=int, default=_env_int("XTL_THREADS", 1),
                   help="worker processes for independent checks (never affects output)")
    return top


def _emit(ns, text: str) -> None:
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def serialize(result, fmt: str) -> str:
    """Bit-stable rendering of a polynomial, count table, matrix list, or
    report; raises UsageError on an unsupported pairing."""
    from .tsasm import matrices_to_text

    if isinstance(result, MultiLaurent):
        if fmt == "json":
            return json.dumps(result.to_json(), separators=(",", ":")) + "\n"
        if fmt == "text":
            return repr(result) + "\n"
    if isinstance(result, list) and result and isinstance(result[0], tuple) \
            and len(result[0]) == 3:
        if fmt == "csv":
            return "N,order,count\n" + "\n".join(
                f"{N},{o},{c}" for N, o, c in result) + "\n"
        if fmt == "json":
            return json.dumps([{"N": N, "order": o, "count": c}
                               for N, o, c in result]) + "\n"
        if fmt == "text":
            return "\n".join(str(c) for _, _, c in result) + "\n"
    if isinstance(result, list) and (not result or isinstance(result[0], list)):
        if fmt == "text":
            return matrices_to_text(result)
        if fmt == "json":
            return json.dumps(result) + "\n"
    if isinstance(result, dict):
        if fmt == "json":
            return json.dumps(result, sort_keys=True, default=str) + "\n"
    raise UsageError(f"cannot serialize {type(result).__name__} as {fmt}")


def _poly_out(poly, fmt: str) -> str:
    return serialize(poly, fmt)


def _cmd_psi(ns) -> int:
    x = parse_scalar(ns.x) if ns.x else None
    tau = parse_scalar(ns.tau) if ns.tau else None
    table = psi_components(ns.N, x=x, tau=tau)
    if ns.format == "json":
        _emit(ns, json.dumps(table.to_json(), separators=(",", ":")) + "\n")
    else:
        lines = []
        for a in sorted(table.entries):
            v = table.entries[a]
            vs = repr(v) if isinstance(v, MultiLaurent) else format_scalar(v)
            lines.append(f"{','.join(map(str, a)) or '-'}: {vs}")
        _emit(ns, "\n".join(lines) + "\n")
    return 0


def _cmd_sum(ns) -> int:
    _emit(ns, _poly_out(sum_components(ns.N), ns.format))
    return 0


def _order_to_N(order: int) -> int:
    if order < 1 or order % 2 == 0:
        raise UsageError("order must be a positive odd integer")
    return (order - 1) // 2


def _cmd_tsasm(ns) -> int:
    from .tsasm import count_from_partition, enumerate_tsasm, genfun

    if ns.tsasm_command == "count":
        if (ns.order is None) == (ns.max_order is None):
            raise UsageError("give exactly one of --order / --max-order")
        orders = ([ns.order] if ns.order is not None
                  else list(range(1, ns.max_order + 1, 2)))
        method = {"enum": lambda N: len(enumerate_tsasm(N)),
                  "integral": tsasm_count_integral,
                  "partition": count_from_partition}[ns.method]
        rows = [(_order_to_N(o), o, method(_order_to_N(o))) for o in orders]
        _emit(ns, serialize(rows, ns.format))
        return 0

    if ns.tsasm_command == "genfun":
        if (ns.order is None) == (ns.N is None):
            raise UsageError("give exactly one of --order / --N")
        N = ns.N if ns.N is not None else _order_to_N(ns.order)
        _emit(ns, _poly_out(genfun(N), ns.format))
        return 0

    N = _order_to_N(ns.order)
    _emit(ns, serialize(enumerate_tsasm(N), ns.format))
    return 0


def _scalar_or_var(token: str):
    """Parse an exact scalar; a bare identifier becomes a symbolic variable."""
    try:
        return GaussianRational(0) + parse_scalar(token)
    except (ValueError, UsageError):
        if token.isidentifier():
            return MultiLaurent.var(token)
        raise UsageError(f"cannot parse scalar or variable {token!r}") from None


def _cmd_sixvertex(ns) -> int:
    from .sixvertex import partition_algebraic, partition_enum

    s = GaussianRational(0) + parse_scalar(ns.s)
    t = _scalar_or_var(ns.t)
    if ns.z:
        zs = [_scalar_or_var(v) for v in ns.z.split(",")]
    else:
        zs = [GaussianRational(1)] * (2 * ns.n)
    symbolic = isinstance(t, MultiLaurent) or any(isinstance(z, MultiLaurent) for z in zs)
    if ns.method == "algebraic":
        if symbolic:
            raise UsageError("the algebraic route needs numeric site values")
        val = partition_algebraic(ns.n, ns.alpha, zs, s, t)
    else:
        val = partition_enum(ns.n, ns.alpha, zs, s, t)
    if isinstance(val, MultiLaurent):
        _emit(ns, serialize(val, "json"))
    else:
        _emit(ns, format_scalar(val) + "\n")
    return 0


def _cmd_spinchain(ns) -> int:
    from .spinchain import verify_eigenpair

    rep = verify_eigenpair(ns.N, Fraction(ns.x))
    _emit(ns, json.dumps(rep.to_json()) + "\n")
    return 0 if rep.passed else 1


def _suite_jobs(ns):
    """Declarative (kind, params) job specs for the requested suite; specs are
    plain data so they can cross process boundaries."""
    max_n, trials, seed = ns.max_n, ns.trials, ns.seed
    jobs = []
    if ns.suite in ("all", "ybe"):
        jobs.append(("ybe", {"trials": max(trials, 20), "seed": seed}))
    if ns.suite in ("all", "exchange"):
        jobs.append(("exchange", {"max_n": max_n, "trials": trials, "seed": seed}))
    if ns.suite in ("all", "reduction"):
        jobs.append(("reduction", {"max_n": max_n, "trials": trials, "seed": seed + 1}))
    if ns.suite in ("all", "zprops"):
        jobs.extend(("zprops", {"N": N, "trials": trials, "seed": seed})
                    for N in range(2, max_n + 1))
    if ns.suite in ("all", "yandyy"):
        jobs.extend(("yandyy", {"N": N, "trials": trials, "seed": seed})
                    for N in range(0, max_n + 1))
    if ns.suite in ("all", "gflemma"):
        jobs.extend(("gflemma", {"n": n, "trials": trials, "seed": seed})
                    for n in range(1, min(3, max(1, max_n // 2)) + 1))
    if ns.suite in ("all", "relationsz"):
        jobs.extend(("relationsz", {"N": N, "trials": trials if N <= 4 else
                                    min(trials, 3), "seed": seed})
                    for N in range(0, max_n + 1))
    if ns.suite in ("all", "main"):
        jobs.extend(("main", {"N": N}) for N in range(0, max_n + 1))
    if ns.suite in ("all", "corollaries"):
        jobs.extend(("corollaries", {"N": N}) for N in range(0, min(max_n, 6) + 1))
    return jobs


def _run_job(job):
    """Execute one verification job; returns (passed, json line).  Top-level so worker
    processes can import and run it."""
    from . import qkz, sixvertex, theorems
    from .sampling import ExactSampler

    kind, p = job

    def dict_result(name, rep):
        passed = bool(rep.get("pass"))
        line = json.dumps({"statement": name, "params": p, "pass": passed,
                           "failures": rep.get("failures", [])[:5]},
                          sort_keys=True, default=repr)
        return passed, line

    if kind == "ybe":
        rep = sixvertex.check_yb_identities(trials=p["trials"], seed=p["seed"])
        fails = [f for v in rep.values() if isinstance(v, dict)
                 for f in v["failures"]]
        return dict_result("yang_baxter_identities",
                           {"pass": rep["passed"], "failures": fails})
    if kind in ("exchange", "reduction"):
        rng = ExactSampler(p["seed"])
        fails = []
        for N in range(2, p["max_n"] + 1):
            s, beta = rng.s_value(), rng.beta_value()
            for _ in range(p["trials"]):
                zs = rng.z_point(N, s, beta)
                for i in range(1, N):
                    if kind == "exchange":
                        r = qkz.check_exchange_and_reflection(N, i, zs, s, beta)
                    else:
                        r = qkz.check_psi_reduction(N, i, zs, s, beta)
                    fails.extend(r["failures"])
        return dict_result(kind, {"pass": not fails, "failures": fails})
    if kind == "zprops":
        rep = qkz.check_Z_properties(p["N"], trials=p["trials"], seed=p["seed"])
        return dict_result(f"generalized_sum_properties_N{p['N']}", rep)
    if kind == "yandyy":
        rep = theorems.check_Y_equals_YY(p["N"], p["trials"], p["seed"])
    elif kind == "gflemma":
        rep = theorems.check_gf_lemma(p["n"], p["trials"], p["seed"])
    elif kind == "relationsz":
        rep = theorems.check_relation_SZ(p["N"], p["trials"], p["seed"])
    elif kind == "main":
        rep = theorems.check_main_theorem(p["N"])
    elif kind == "corollaries":
        rep = theorems.check_corollaries(p["N"])
    else:
        raise UsageError(f"unknown job kind {kind!r}")
    return rep.passed, rep.to_json_line()


def _cmd_verify(ns) -> int:
    jobs = _suite_jobs(ns)
    if ns.threads > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(ns.threads) as pool:
            results = pool.map(_run_job, jobs)
    else:
        results = [_run_job(j) for j in jobs]
    lines = [line for _, line in results]
    all_ok = all(ok for ok, _ in results)
    _emit(ns, "\n".join(lines) + "\n")
    return 0 if all_ok else 1


def dispatch(argv) -> int:
    """Parse argv and run the mapped operation; returns the exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if ns.command == "psi":
            return _cmd_psi(ns)
        if ns.command == "sum":
            return _cmd_sum(ns)
        if ns.command == "tsasm":
            return _cmd_tsasm(ns)
        if ns.command == "sixvertex":
            return _cmd_sixvertex(ns)
        if ns.command == "spinchain":
            return _cmd_spinchain(ns)
        if ns.command == "verify":
            return _cmd_verify(ns)
        raise UsageError(f"unknown command {ns.command!r}")
    except (UsageError, ValueError) as exc:
        if isinstance(exc, DomainError):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
