"""Command-line front end: ``finring analyze|witness|verify|enumerate``.

Exit codes: 0 success, 1 a claim failed, 2 usage or parse error,
3 an order cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, dsl
from .classify import decomposition_attempts, profile, usqrtdelta_witness
from .core import RingError, SizeCapError, UnsupportedSizeError, max_order
from .enumeration import enumerate_unital_rings
from .radicals import named_sets, sqrt_delta, units

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3

# attempted decompositions shown by `witness`
MAX_ATTEMPTS_SHOWN = 8


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _ring_header(R) -> dict:
    return {"label": R.label, "order": R.order, "characteristic": R.characteristic}


def profile_json(R, sets: bool = False) -> dict:
    p = profile(R)
    out = {
        "version": __version__,
        "ring": _ring_header(R),
        "profile": {**p.flags(), "counts": dict(p.counts)},
    }
    if sets:
        out["sets"] = {name: s.tolist() for name, s in named_sets(R).items()}
    return out


def cmd_analyze(args) -> int:
    e = dsl.parse_ring_expr(args.expr)
    R = dsl.evaluate(e)
    if args.json:
        print(_dump(profile_json(R, args.sets)))
        return EXIT_OK
    p = profile(R)
    print(f"{R.label}: order {R.order}, characteristic {R.characteristic}")
    print("counts:")
    for k, v in p.counts.items():
        print(f"  {k:<12} {v}")
    print("flags:")
    for k, v in p.flags().items():
        print(f"  {k:<24} {'yes' if v else 'no'}")
    if args.sets:
        print("sets:")
        for name, s in named_sets(R).items():
            print(f"  {name} ({len(s)}): {s.tolist()}")
    return EXIT_OK


def cmd_witness(args) -> int:
    e = dsl.parse_ring_expr(args.expr)
    R = dsl.evaluate(e)
    x = usqrtdelta_witness(R)
    if x is None:
        print(f"{R.label} is U√Δ: every non-unit is a unit times an element of √Δ")
        return EXIT_OK
    print(f"{R.label} is not U√Δ")
    print(f"witness: index {x} = {dsl.format_element(e, x)}")
    root = sqrt_delta(R)
    print(f"units: {len(units(R))}, √Δ: {len(root)}")
    print("attempts x = u·c (c = u⁻¹x is forced; none lies in √Δ):")
    attempts = decomposition_attempts(R, x)
    for a in attempts[:MAX_ATTEMPTS_SHOWN]:
        print(f"  u = {dsl.format_element(e, a.unit)}  c = {dsl.format_element(e, a.cofactor)}"
              f"  c in √Δ: {'yes' if a.cofactor_power_in_delta else 'no'}")
    if len(attempts) > MAX_ATTEMPTS_SHOWN:
        print(f"  ... {len(attempts) - MAX_ATTEMPTS_SHOWN} more units")
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify as V

    if args.corpus in (None, "default"):
        corpus, corpus_name = V.default_corpus(), "default"
    else:
        corpus, corpus_name = V.load_corpus(args.corpus), args.corpus
    claim_ids = None
    if args.claims not in (None, "all"):
        claim_ids = [c.strip().upper() for c in args.claims.split(",") if c.strip()]
        try:
            for c in claim_ids:
                V.get_claim(c)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_USAGE
    summary = V.verify_all(corpus, jobs=args.jobs, claim_ids=claim_ids)
    if args.json:
        print(_dump({
            "version": __version__,
            "corpus": corpus_name,
            "claims": [r.to_dict(args.timings) for r in summary.reports],
            "summary": summary.counts,
            "ok": summary.ok,
        }))
    else:
        for cid, c in summary.counts.items():
            status = "FAIL" if c["fail"] else "ok"
            print(f"{cid} {status:<4} pass {c['pass']:>3}  fail {c['fail']:>3}  skipped {c['skipped']:>3}"
                  f"  {V.get_claim(cid).statement}")
        for r in summary.failures:
            print(f"failure {r.claim_id} on {r.ring}: witness {list(r.witness or ())} {r.note or ''}".rstrip())
        for r in summary.reports:
            if r.status == "skipped" and r.size is not None:
                print(f"skipped {r.claim_id} on {r.ring} (size {r.size}): {r.note}")
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    reps = enumerate_unital_rings(args.order)
    flags = [profile(R).is_usqrtdelta for R in reps]
    if args.json:
        print(_dump({
            "version": __version__,
            "order": args.order,
            "count": len(reps),
            "usqrtdelta_count": sum(flags),
            "classes": [
                {**_ring_header(R), "is_usqrtdelta": f, "add": R.add.tolist(), "mul": R.mul.tolist()}
                for R, f in zip(reps, flags)
            ],
        }))
    else:
        print(f"{len(reps)} unital rings of order {args.order} up to isomorphism, {sum(flags)} U√Δ")
        for R, f in zip(reps, flags):
            print(f"  {R.label:<14} U√Δ: {'yes' if f else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finring", description="Brute-force analysis of finite rings.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--max-order", type=int, default=None, help="override the ring order cap")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="profile a ring")
    p.add_argument("expr")
    p.add_argument("--sets", action="store_true", help="include every element set")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("witness", help="show why a ring is not U√Δ")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("verify", help="check the claim registry over a corpus")
    p.add_argument("--claims", default="all", help="comma-separated ids, or 'all'")
    p.add_argument("--corpus", default="default", help="file with one expression per line, or 'default'")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="add elapsed_ms to JSON reports")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("enumerate", help="list unital rings of a small order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_enumerate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_order is not None and args.max_order < 1:
        print("error: --max-order must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.max_order is not None:
            with max_order(args.max_order):
                return args.fn(args)
        return args.fn(args)
    except dsl.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeCapError, UnsupportedSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
