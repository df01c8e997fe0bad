"""``galois-tukey`` command line.

Every verb prints one JSON report on stdout with keys ``verb``, ``inputs``,
``result``, ``witness``, ``mode``, ``seed`` and ``elapsed_ms``, and a one-line
summary on stderr.  Exit status: 0 success, 1 a check failed (or a search
found nothing), 2 usage, input or cap errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import catalog, formats, sweeps
from .combinators import CapExceeded, old_product, product, seq_compose
from .morphisms import SearchCapExceeded, search_morphism, verify
from .relations import AdmissibilityError, dual, dual_norm, min_cover, norm
from .streams import DEFAULT_HORIZON, EXACT, HORIZON, Horizon

OK, FAILED, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"schema violation in {path}: not valid JSON ({exc.msg})") from None


def _load_relation(path: str):
    data = _read_json(path)
    # accept a previous report whose result is a relation, so verbs chain through pipes
    if isinstance(data, dict) and "verb" in data and "result" in data:
        data = data["result"]
    try:
        return formats.relation_from_json(data)
    except (formats.SchemaError, AdmissibilityError) as exc:
        raise InputError(f"schema violation in {path}: {exc}") from None


def _report(verb, inputs, result, witness=None, mode=EXACT, seed=None):
    return {"verb": verb, "inputs": inputs, "result": result, "witness": witness, "mode": mode, "seed": seed,
            "elapsed_ms": None}


def cmd_norm(args):
    rel = _load_relation(args.relation)
    cover = list(min_cover(rel))
    report = _report("norm", {"relation": args.relation}, norm(rel),
                     {"cover": cover, "cover_labels": [str(rel.plus[i]) for i in cover], "dual_norm": dual_norm(rel)})
    return OK, report, f"norm = {norm(rel)} (cover {cover})"


def cmd_dual(args):
    rel = dual(_load_relation(args.relation))
    return OK, _report("dual", {"relation": args.relation}, formats.relation_to_json(rel)), \
        f"dual: {len(rel.minus)}x{len(rel.plus)}"


def _binary(verb, build):
    def run(args):
        A, B = _load_relation(args.left), _load_relation(args.right)
        rel = build(A, B, args)
        return OK, _report(verb, {"left": args.left, "right": args.right}, formats.relation_to_json(rel)), \
            f"{verb}: {len(rel.minus)}x{len(rel.plus)}"
    return run


def cmd_verify(args):
    data = _read_json(args.morphism)
    base = None if args.morphism == "-" else Path(args.morphism).parent
    try:
        source, target, mm, pm = formats.morphism_parts_from_json(data, base)
        result = verify(mm, pm, source, target)
    except FileNotFoundError as exc:
        raise InputError(f"file not found: {exc.filename}") from None
    except (formats.SchemaError, AdmissibilityError, ValueError, TypeError) as exc:
        raise InputError(f"schema violation in {args.morphism}: {exc}") from None
    witness = None
    if not result.ok:
        b, a = result.counterexample
        witness = {"counterexample": [b, a], "minus_map_b": mm[b], "plus_map_a": pm[a]}
    report = _report("verify", {"morphism": args.morphism}, {"ok": result.ok}, witness)
    summary = "PASS" if result.ok else f"FAIL at (b, a) = {result.counterexample}"
    return (OK if result.ok else FAILED), report, summary


def cmd_search(args):
    A, B = _load_relation(args.source), _load_relation(args.target)
    m = search_morphism(A, B, args.cap)
    result = None if m is None else formats.morphism_to_json(m)
    witness = {"exists": m is not None}
    report = _report("search", {"source": args.source, "target": args.target, "cap": args.cap}, result, witness)
    if m is None:
        return FAILED, report, "none exists"
    return OK, report, f"found: minus_map={list(m.minus_map)} plus_map={list(m.plus_map)}"


def _horizon(args) -> Horizon:
    return Horizon(args.horizon, args.witnesses)


def cmd_catalog(args):
    entry = catalog.ENTRIES[args.entry]
    hz = _horizon(args)
    hand = [(label, entry.run(inst, hz)) for label, inst in entry.hand_picked()]
    swept = entry.sweep(args.sweep, args.seed, hz) if args.sweep else []
    everything = [r for _, r in hand] + swept
    summary = catalog.summarize(swept)
    result = {
        "entry": entry.name,
        "source": entry.source,
        "target": entry.target,
        "hand_picked": [{"label": label, **r.to_dict()} for label, r in hand],
        "verdicts": [r.to_dict() for r in swept],
        "summary": summary,
    }
    failures = [r.to_dict() for r in everything if r.status == catalog.FAIL]
    mode = EXACT if all(r.mode == EXACT for r in everything) else HORIZON
    inputs = {"entry": args.entry, "sweep": args.sweep, "horizon": args.horizon, "witnesses": args.witnesses}
    report = _report("catalog", inputs, result, {"failures": failures}, mode, args.seed)
    text = (f"{entry.name}: {len(hand)} hand-picked, {summary['total']} swept, "
            f"{summary['fail']} FAIL, {summary['vacuous']} vacuous")
    return (FAILED if failures else OK), report, text


def cmd_sweep(args):
    suite = args.suite
    kwargs = {}
    if suite in ("prop2", "product-laws", "morphism-soundness", "chain") and args.max_side is not None:
        kwargs["max_side"] = args.max_side
    if suite in ("product-laws", "chain") and args.n is not None:
        kwargs["n_random"] = args.n
    if suite in ("engulf-lemma", "catalog") and args.n is not None:
        kwargs["n"] = args.n
    seeded = suite in ("product-laws", "chain", "engulf-lemma", "catalog")
    if seeded:
        kwargs["seed"] = args.seed
    result = sweeps.SUITES[suite](**kwargs)
    inputs = {"suite": suite, **{k: v for k, v in kwargs.items() if k != "seed"}}
    bounded = suite == "catalog" and any(e["sweep"]["horizon"] for e in result["entries"].values())
    mode = HORIZON if bounded else EXACT
    report = _report("sweep", inputs, result, {"examples": result["examples"]}, mode, args.seed if seeded else None)
    text = f"{suite}: {result['checked']} checked, {result['violations']} violations"
    return (OK if result["passed"] else FAILED), report, text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="galois-tukey", description="Finite relations, morphisms and catalog checks.")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="fill in elapsed_ms (makes reports run-dependent)")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("norm", help="minimum cover size of a relation")
    s.add_argument("relation", help="relation file or - for stdin")
    s.set_defaults(run=cmd_norm)

    s = sub.add_parser("dual", help="dual relation")
    s.add_argument("relation")
    s.set_defaults(run=cmd_dual)

    for verb, build, text in [
        ("product", lambda A, B, _: product(A, B), "categorical product"),
        ("oldprod", lambda A, B, _: old_product(A, B), "old (Kronecker) product"),
        ("seqcomp", lambda A, B, args: seq_compose(A, B, args.cap).relation, "sequential composition"),
    ]:
        s = sub.add_parser(verb, help=text)
        s.add_argument("left")
        s.add_argument("right")
        s.add_argument("--cap", type=int, default=10**6)
        s.set_defaults(run=_binary(verb, build))

    s = sub.add_parser("verify", help="check a morphism file")
    s.add_argument("morphism")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("search", help="first morphism in lexicographic order")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--cap", type=int, default=10**6)
    s.set_defaults(run=cmd_search)

    s = sub.add_parser("catalog", help="run a catalog entry's checks")
    s.add_argument("entry", choices=sorted(catalog.ENTRIES))
    s.add_argument("--sweep", type=int, default=0, metavar="N", help="number of random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--horizon", type=int, default=DEFAULT_HORIZON.limit)
    s.add_argument("--witnesses", type=int, default=DEFAULT_HORIZON.witnesses)
    s.set_defaults(run=cmd_catalog)

    s = sub.add_parser("sweep", help="run a verification suite")
    s.add_argument("suite", choices=sorted(sweeps.SUITES))
    s.add_argument("--max-side", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    for flag in ("cap", "sweep", "horizon", "witnesses", "n", "max_side"):
        v = getattr(args, flag, None)
        if v is not None and v < (1 if flag in ("cap", "horizon", "witnesses", "max_side") else 0):
            print(f"error: --{flag.replace('_', '-')} must be positive", file=sys.stderr)
            return USAGE
    start = time.perf_counter()
    try:
        status, report, summary = args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (CapExceeded, SearchCapExceeded) as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return USAGE
    if args.timing:
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
