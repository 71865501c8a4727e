"""Command line interface: evaluate, classify, tabulate, verify, simulate.

Every successful JSON invocation prints exactly one envelope object with
the command, the echoed inputs, the result payload and the tool version.
Exit codes: 0 success, 2 usage or parse error, 3 cross check mismatch,
4 verification failure.  The verification drivers live here as plain
functions so the test suite can run them in process.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from typing import Iterator

from . import __version__
from .config import (
    Configuration,
    NoWeaklyShift,
    all_configurations,
    classify,
    core,
    left_to_right_order,
    max_weakly_shift,
    parse_config,
    shifted_config,
)
from .engine import (
    drop_order_check,
    exact_sweep,
    remixed_exact,
    remixed_induction,
    success_probability,
)
from .formulas import (
    CSParams,
    HitIndex,
    _one_hole_prefactor,
    a_almost_lukasiewicz,
    a_connected,
    a_lukasiewicz,
    a_one_hole,
    a_weakly_lukasiewicz,
    carlitz_scoville_q,
    core_series,
    corrective_series,
    dispatch,
    mset,
    q_hit,
)
from .qcalc import ONE, TSeries, ZERO, q_int, series_equal_mod
from .simulate import estimate_success


def _envelope(command: str, inputs: dict, result: dict) -> dict:
    return {"command": command, "inputs": inputs, "result": result, "version": __version__}


def _emit(env: dict) -> None:
    sys.stdout.write(json.dumps(env, indent=2) + "\n")


def _parse_rational(text: str) -> Fraction:
    """Exact rational from 'a/b' or an integer literal; decimals rejected."""
    text = text.strip()
    if "/" in text:
        a, b = text.split("/", 1)
        return Fraction(int(a), int(b))
    if "." in text:
        raise ValueError(f"decimal {text!r} rejected, use an integer or a/b")
    return Fraction(int(text))


def _parse_tuple(text: str, what: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    try:
        vals = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"{what} must be comma separated integers, got {text!r}") from exc
    if any(v < 0 for v in vals):
        raise ValueError(f"{what} must be nonnegative")
    return vals


def cmd_eval(args: argparse.Namespace) -> int:
    c = parse_config(args.config)
    if args.method == "exact":
        method, poly, pretty, flags = "exact", remixed_exact(c), None, classify(c)
    elif args.method == "induction":
        method, poly, pretty, flags = "induction", remixed_induction(c), None, classify(c)
    else:
        rep = dispatch(c)
        method, poly, pretty, flags = rep.method, rep.poly, rep.pretty, rep.flags
        if args.method == "formula" and method == "induction":
            raise ValueError(f"no closed formula applies to {c}")
    check = "skip"
    oracle = None
    if args.crosscheck:
        oracle = remixed_induction(c) if method == "exact" else remixed_exact(c)
        check = "pass" if oracle == poly else "fail"
    result: dict = {"config": list(c.c), "method": method}
    if args.q is not None:
        result["value"] = str(poly.evaluate(_parse_rational(args.q)))
    else:
        result["poly"] = poly.to_json()
    result["flags"] = flags.to_json()
    result["crosscheck"] = check
    if args.pretty and pretty is not None:
        result["pretty"] = pretty
    if check == "fail":
        result["oracle"] = oracle.to_json()
    inputs = {
        "config": args.config,
        "method": args.method,
        "crosscheck": args.crosscheck,
        "q": args.q,
        "pretty": args.pretty,
    }
    _emit(_envelope("eval", inputs, result))
    return 3 if check == "fail" else 0


def cmd_classify(args: argparse.Namespace) -> int:
    c = parse_config(args.config)
    result = {"config": list(c.c), "flags": classify(c).to_json()}
    _emit(_envelope("classify", {"config": args.config}, result))
    return 0


def _require(value, name: str):
    if value is None:
        raise ValueError(f"table kind requires --{name}")
    return value


def cmd_table(args: argparse.Namespace) -> int:
    rows: list[tuple[str, object]] = []
    if args.kind == "connected":
        gamma = _parse_tuple(_require(args.gamma, "gamma"), "gamma")
        n = _require(args.n, "n")
        for i in range(n - len(gamma) + 1):
            rows.append((str(i), a_connected(gamma, i, n)))
    elif args.kind == "weakly":
        gamma = _parse_tuple(_require(args.gamma, "gamma"), "gamma")
        n = _require(args.n, "n")
        for i in range(max_weakly_shift(gamma, n) + 1):
            rows.append((str(i), a_weakly_lukasiewicz(gamma, i, n)))
    elif args.kind == "one-hole":
        gamma = _parse_tuple(_require(args.gamma, "gamma"), "gamma")
        n = _require(args.n, "n")
        if n - len(gamma) < 0:
            raise ValueError(f"core {gamma} spans more than {n} sites")
        for i in range(n - len(gamma) + 1):
            rows.append((str(i), a_one_hole(shifted_config(gamma, i, n))))
    elif args.kind == "cs":
        x, y = _require(args.x, "x"), _require(args.y, "y")
        rsmax = _require(args.rsmax, "rsmax")
        for total in range(rsmax + 1):
            for r in range(total + 1):
                p = carlitz_scoville_q(CSParams(r, total - r, x, y))
                rows.append((f"{r}:{total - r}", p))
    elif args.kind == "hit":
        lam = _parse_tuple(_require(args.lam, "lambda"), "lambda")
        n = _require(args.n, "n")
        for i in range(n + 1):
            rows.append((str(i), q_hit(HitIndex(lam, i, n))))
    if args.format == "csv":
        width = max((len(p.coeffs) for _, p in rows), default=0)
        width = max(width, 1)
        lines = ["index," + ",".join(f"coeff{i}" for i in range(width))]
        for idx, p in rows:
            lines.append(idx + "," + ",".join(str(p.coeff(i)) for i in range(width)))
        sys.stdout.write("\n".join(lines) + "\n")
        return 0
    inputs = {
        "kind": args.kind,
        "gamma": args.gamma,
        "n": args.n,
        "x": args.x,
        "y": args.y,
        "rsmax": args.rsmax,
        "lambda": args.lam,
        "format": args.format,
    }
    result = {"rows": [{"index": idx, "poly": p.to_json()} for idx, p in rows]}
    _emit(_envelope("table", inputs, result))
    return 0


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    """All tuples of positive integers with the given sum."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _tables(nmax: int, tables: dict[int, dict] | None) -> dict[int, dict]:
    if tables is None:
        return {n: exact_sweep(n) for n in range(1, nmax + 1)}
    return tables


def verify_families(nmax: int, tables: dict[int, dict] | None = None) -> dict:
    """Closed formulas and the recursion against the oracle, exhaustively."""
    tables = _tables(nmax, tables)
    checks = {
        "induction": 0,
        "lukasiewicz": 0,
        "almost": 0,
        "connected": 0,
        "one_hole": 0,
        "weakly": 0,
        "dispatch": 0,
    }
    failures: list[dict] = []

    def fail(ct, family):
        failures.append({"config": list(ct), "family": family})

    for n in range(1, nmax + 1):
        for ct in sorted(tables[n]):
            oracle = tables[n][ct]
            c = Configuration(ct)
            flags = classify(c)
            if remixed_induction(c) != oracle:
                fail(ct, "induction")
            checks["induction"] += 1
            if dispatch(c).poly != oracle:
                fail(ct, "dispatch")
            checks["dispatch"] += 1
            dec = core(c)
            if flags.is_lukasiewicz:
                if a_lukasiewicz(c) != oracle:
                    fail(ct, "lukasiewicz")
                checks["lukasiewicz"] += 1
            if flags.almost_defect is not None:
                if a_almost_lukasiewicz(c) != oracle:
                    fail(ct, "almost")
                checks["almost"] += 1
            if flags.is_connected:
                if a_connected(dec.gamma, dec.left_zeros, n) != oracle:
                    fail(ct, "connected")
                checks["connected"] += 1
            if flags.is_one_hole:
                if a_one_hole(c) != oracle:
                    fail(ct, "one_hole")
                checks["one_hole"] += 1
            if flags.is_weakly_lukasiewicz:
                if a_weakly_lukasiewicz(dec.gamma, dec.left_zeros, n) != oracle:
                    fail(ct, "weakly")
                checks["weakly"] += 1
    return {
        "name": "families",
        "passed": not failures,
        "checks": checks,
        "failures": failures[:20],
    }


def verify_congruence(nmax: int, tables: dict[int, dict] | None = None) -> dict:
    """The truncated series identity at the maximal weakly shift."""
    tables = _tables(nmax, tables)
    checks = 0
    failures: list[dict] = []
    for n in range(1, nmax + 1):
        cores = sorted({core(Configuration(ct)).gamma for ct in tables[n]})
        for gamma in cores:
            m = len(gamma)
            try:
                k = max_weakly_shift(gamma, n)
            except NoWeaklyShift:
                continue
            lhs = TSeries(
                n - m + 1,
                tuple(tables[n][shifted_config(gamma, i, n).c] for i in range(n - m + 1)),
            )
            rhs = core_series(gamma, n, k + 1)
            if not series_equal_mod(lhs, rhs, k + 1):
                failures.append({"core": list(gamma), "n": n, "k": k})
            checks += 1
    return {"name": "congruence", "passed": not failures, "checks": checks, "failures": failures[:20]}


def verify_corrective(nmax: int, tables: dict[int, dict] | None = None) -> dict:
    """Corrective series against its definition, plus the two block factorization."""
    tables = _tables(nmax, tables)
    checks = 0
    failures: list[dict] = []
    for n in range(2, nmax + 1):
        table = tables[n]
        for p in range(1, n):
            r = n - p
            base = corrective_series((p,), (r,), n)
            for alpha in _compositions(p):
                for beta in _compositions(r):
                    series = corrective_series(alpha, beta, n)
                    gamma = alpha + (0,) + beta
                    span = len(gamma)
                    definition = core_series(gamma, n, n + 1)
                    shifted = [ZERO] * (n + 1)
                    for i in range(n - span + 1):
                        shifted[i] = table[shifted_config(gamma, i, n).c]
                    ok = all(
                        series.tcoeffs[t] == definition.tcoeffs[t] - shifted[t]
                        for t in range(n + 1)
                    )
                    if not ok:
                        failures.append({"alpha": list(alpha), "beta": list(beta), "n": n, "law": "definition"})
                    checks += 1
                    exp, brackets = _one_hole_prefactor(alpha, beta)
                    pref = ONE
                    for a in brackets:
                        pref = pref * q_int(a)
                    ell = len(alpha)
                    ok = all(
                        series.tcoeffs[t].shift(-exp) == base.tcoeffs[t + ell - 1] * pref
                        if t + ell - 1 <= n
                        else series.tcoeffs[t] == ZERO
                        for t in range(n + 1)
                    )
                    if not ok:
                        failures.append({"alpha": list(alpha), "beta": list(beta), "n": n, "law": "factorization"})
                    checks += 1
    return {"name": "corrective", "passed": not failures, "checks": checks, "failures": failures[:20]}


def verify_abelian(nmax: int, tables: dict[int, dict] | None = None) -> dict:
    """Drop order invariance of the success probability, spot checked."""
    rng = random.Random(97)
    qs = [Fraction(1, 3), Fraction(1), Fraction(2)]
    checks = 0
    failures: list[dict] = []
    for n in range(2, min(nmax, 7) + 1):
        cfgs = list(all_configurations(n))
        for c in rng.sample(cfgs, min(4, len(cfgs))):
            base = {q0: success_probability(c, q0) for q0 in qs}
            for _ in range(5):
                order = list(left_to_right_order(c))
                rng.shuffle(order)
                for q0 in qs:
                    if drop_order_check(c, tuple(order), q0) != base[q0]:
                        failures.append({"config": list(c.c), "order": order, "q": str(q0)})
                    checks += 1
    return {"name": "abelian", "passed": not failures, "checks": checks, "failures": failures[:20]}


_SUITES = {
    "families": verify_families,
    "congruence": verify_congruence,
    "corrective": verify_corrective,
    "abelian": verify_abelian,
}


def cmd_verify(args: argparse.Namespace) -> int:
    if args.nmax < 1:
        raise ValueError("nmax must be at least 1")
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    tables = {n: exact_sweep(n) for n in range(1, args.nmax + 1)}
    suites = [_SUITES[name](args.nmax, tables) for name in names]
    result = {"suites": suites}
    _emit(_envelope("verify", {"suite": args.suite, "nmax": args.nmax}, result))
    return 0 if all(s["passed"] for s in suites) else 4


def cmd_simulate(args: argparse.Namespace) -> int:
    c = parse_config(args.config)
    if args.trials < 1:
        raise ValueError("need at least one trial")
    q0 = _parse_rational(args.q)
    res = estimate_success(c, q0, args.trials, args.seed)
    result: dict = {"sim": res.to_json()}
    if c.n <= 10:
        exact = success_probability(c, q0)
        result["exact"] = str(exact)
        p = float(exact)
        sigma = math.sqrt(p * (1 - p) / res.trials)
        if sigma == 0:
            dev = "0.0000" if res.estimate == exact else "inf"
        else:
            dev = f"{abs(res.successes / res.trials - p) / sigma:.4f}"
        result["sigma_deviation"] = dev
    inputs = {"config": args.config, "q": args.q, "trials": args.trials, "seed": args.seed}
    _emit(_envelope("simulate", inputs, result))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="remixed",
        description="Exact remixed Eulerian number computations and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the polynomial of a configuration")
    p.add_argument("config")
    p.add_argument("--method", choices=["auto", "exact", "induction", "formula"], default="auto")
    p.add_argument("--crosscheck", action="store_true")
    p.add_argument("--q", default=None, help="evaluate at an exact rational, a/b or integer")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="family flags of a configuration")
    p.add_argument("config")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="tabulate a family of polynomials")
    p.add_argument("kind", choices=["connected", "weakly", "one-hole", "cs", "hit"])
    p.add_argument("--gamma", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--rsmax", type=int, default=None)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run exhaustive identity suites")
    p.add_argument("suite", choices=["families", "congruence", "corrective", "abelian", "all"])
    p.add_argument("--nmax", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo check of the drop dynamics")
    p.add_argument("config")
    p.add_argument("--q", default="1")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
