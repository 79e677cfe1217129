"""Command line: ``plotkinlab <command> [options]``.

Options may also come from a ``key = value`` file given with ``--config``
(``#`` starts a comment, keys are flag names without dashes); explicit flags
win over the file.
"""

from __future__ import annotations

import argparse
import sys

from .. import _kernels


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"{path}:{no}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _common(p):
    p.add_argument("--code", default="R(2,5)", help="catalog label, see `codes`")
    p.add_argument("--decoder", default="auto", help='variant spec, "auto" or "ml"')
    p.add_argument("--strategy", default="auto", choices=("auto", "r37-sim", "r37-cost"))
    p.add_argument("--ebn0", default="2", help="dB: value, list a,b,c or start:stop:step")
    p.add_argument("--trials", type=int, default=100_000, help="trial limit per point")
    p.add_argument("--min-errors", type=int, default=200, help="stop a point after this many word errors (0: off)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--chunk", type=int, default=500, help="trials per work item")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plotkinlab", description="Recursive Plotkin codes: decoding experiments")
    ap.add_argument("--config", default=None, help="key = value option file")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, hlp in (("wer", "simulate word/bit error rates"), ("lbound", "simulate the genie-aided L-bound")):
        _common(sub.add_parser(name, help=hlp))

    p = sub.add_parser("cancel-stats", help="error rates of the join/add composites")
    p.add_argument("--ebn0", type=float, default=2.0)
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("opcount", help="operation counts of one decode")
    p.add_argument("--code", default="R(2,5)")
    p.add_argument("--decoder", default="v(0,1)")
    p.add_argument("--strategy", default="auto", choices=("auto", "r37-sim", "r37-cost"))
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--table", action="store_true", help="also print the join/add cost table")

    p = sub.add_parser("birthday", help="probability that errors fall on distinct positions")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--tau", default="1:8", help="value or range a:b")

    p = sub.add_parser("codes", help="list the code catalog or describe one code")
    p.add_argument("label", nargs="?")

    p = sub.add_parser("verify", help="run the invariant checks")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _parse(argv):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        sub = ap._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for k, v in cfg.items():
            if k not in known:
                raise SystemExit(f"{args.config}: unknown option {k!r} for {args.command}")
            act = known[k]
            defaults[k] = act.type(v) if act.type else v
        sub.set_defaults(**defaults)
        args = ap.parse_args(argv)
    return args


def _cmd_wer(args, genie=False):
    from .simulate import SimConfig, csv_text, parse_sweep, run_wer

    cfg = SimConfig(
        args.code,
        args.decoder,
        tuple(parse_sweep(args.ebn0)),
        max_trials=args.trials,
        min_errors=args.min_errors or None,
        seed=args.seed,
        workers=args.workers,
        out=args.out,
        strategy=args.strategy,
        chunk=args.chunk,
        genie=genie,
    )
    rows = run_wer(cfg)
    if not args.out:
        sys.stdout.write(csv_text(rows))
    return 0


def _cmd_cancel(args):
    from .stats import OPERATIONS, REFERENCE_2DB, run_cancellation_stats

    res = run_cancellation_stats(args.ebn0, args.rate, args.samples, args.seed)
    print("operation,error_rate,reference_2db")
    for op in OPERATIONS:
        print(f"{op},{res[op]:.4f},{REFERENCE_2DB[op]}")
    return 0


def _cmd_opcount(args):
    from .opcount import JOIN_ADD_FORMULAS, report_opcounts

    if args.table:
        print("operation: signs comparisons additions (per n)")
        for k, v in JOIN_ADD_FORMULAS.items():
            print(f"  {k:<10} {v[0]}n {v[1]}n {v[2]}n")
    rep = report_opcounts(args.code, args.decoder, args.strategy, args.depth)
    print(f"{rep.code} decoder {rep.decoder} (strategy {args.strategy})")
    print("\n".join(rep.lines()))
    return 0


def _cmd_birthday(args):
    from .stats import birthday_approx, birthday_exact

    if ":" in args.tau:
        a, b = (int(t) for t in args.tau.split(":"))
        taus = range(a, b + 1)
    else:
        taus = [int(args.tau)]
    print("n,tau,exact,approx")
    for t in taus:
        print(f"{args.n},{t},{birthday_exact(args.n, t):.6f},{birthday_approx(args.n, t):.6f}")
    return 0


def _cmd_codes(args):
    from ..constructions import CATALOG, catalog_entry, get_code

    if not args.label:
        for lab, e in CATALOG.items():
            n, k, d = e.expected
            print(f"{lab:<22} ({n},{k},{d})  {e.note}".rstrip())
        return 0
    e = catalog_entry(args.label)
    code = get_code(e.label)
    print(f"{e.label}: (n,k,d) = ({code.n},{code.k},{code.d_declared})")
    if code.double is not None:
        for i, c in enumerate(code.double.comps):
            print(f"  C{i} = {c.label} ({c.n},{c.k},{c.d_declared})")
        rel = ", ".join(f"{k}:{'yes' if v else 'no'}" for k, v in code.double.relations.items())
        print(f"  relations {rel}")
    return 0


def _cmd_verify(args):
    from .audit import audit_constructions
    from .opcount import JOIN_ADD_FORMULAS, measure_join_add, report_opcounts

    checks = audit_constructions(args.samples, args.seed)
    lines = [c.line() for c in checks if not c.ok]
    ok = all(c.ok for c in checks)
    print(f"construction audit: {sum(c.ok for c in checks)}/{len(checks)} checks pass")
    for n in (2, 4, 8, 16, 32):
        meas = measure_join_add(n)
        good = all(meas[k] == tuple(f * n for f in v) for k, v in JOIN_ADD_FORMULAS.items())
        ok &= good
        print(f"{'PASS' if good else 'FAIL'}  join/add cost table, n={n}")
    for code, spec, strat, want in (
        ("R(2,5)", "v(0,1)", "auto", 147),
        ("R(2,5)", "v(*)", "auto", 887),
    ):
        got = report_opcounts(code, spec, strat).ac_ops
        ok &= got == want
        print(f"{'PASS' if got == want else 'FAIL'}  {code} {spec}: {got} (expected {want})")
    rep = report_opcounts("R(3,7)", "v4(0,2)", "r37-cost")
    good = rep.layer == 384 and rep.total_c0_as_c1 == 3301
    ok &= good
    print(f"{'PASS' if good else 'FAIL'}  R(3,7) v4(0,2): layer {rep.layer}, total {rep.total_c0_as_c1}")
    for line in lines:
        print(line)
    return 0 if ok else 1


def main(argv=None) -> int:
    args = _parse(argv)
    if args.command == "wer":
        return _cmd_wer(args)
    if args.command == "lbound":
        return _cmd_wer(args, genie=True)
    if args.command == "cancel-stats":
        return _cmd_cancel(args)
    if args.command == "opcount":
        return _cmd_opcount(args)
    if args.command == "birthday":
        return _cmd_birthday(args)
    if args.command == "codes":
        return _cmd_codes(args)
    if args.command == "verify":
        return _cmd_verify(args)
    return 2  # pragma: no cover


def backend_name() -> str:
    return _kernels.BACKEND_NAME
