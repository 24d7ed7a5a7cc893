"""The ``bilink`` command line tool.

Subcommands: ``gen``, ``classify``, ``extract``, ``edge-link``, ``verify``,
``campaign``.  Exit codes: 0 success, 1 verification failure, 2 usage or
domain error, 3 violation of a guaranteed property (a bug, not an input
problem).

``campaign`` runs seeded trials and writes a report next to the delimited
per-trial table: ``BASE.tsv``, ``BASE.json``, and (unless ``--no-plots``)
``BASE_cases.png`` / ``BASE_patterns.png`` rendered with matplotlib.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .bipartite import DomainError, PartitionedGraph
from .classify import PatternViolationError, classify
from .diagram import DegenerateSceneError, pick_generic_direction, project
from .extract import (
    TheoremViolationError,
    VERIFY_SEED,
    edge_nlink,
    extract_nlink,
    verify_certificate,
)
from .fileio import (
    dumps,
    load_certificate,
    load_curve,
    load_embedding,
    save_certificate,
    save_embedding,
)
from .geometry import GenerationError, random_embedding, validate_scene

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3


def _parse_shape(text: str) -> tuple[int, int]:
    body = text.lower().lstrip("k")
    try:
        r, s = (int(p) for p in body.split(","))
    except ValueError as exc:
        raise DomainError(f"bad graph shape {text!r}; expected like k5,5") from exc
    return r, s


def _parse_subgraph(g: PartitionedGraph, text: str):
    try:
        xs, ys = text.split(":")
        return g.subgraph(xs.split(","), ys.split(","))
    except ValueError as exc:
        raise DomainError(f"bad subgraph {text!r}; expected like 1,3,5:2,4,6") from exc


def _parse_edge_arg(g: PartitionedGraph, text: str):
    a, sep, b = text.partition("-")
    if not sep:
        raise DomainError(f"bad edge {text!r}; expected like 1-2")
    return g.edge(a, b)


def cmd_gen(args) -> int:
    r, s = _parse_shape(args.graph)
    g = PartitionedGraph.complete(r, s)
    e = random_embedding(g, args.seed, args.bends)
    save_embedding(e, args.out)
    print(f"wrote {args.out}: K_{{{r},{s}}} seed={args.seed} bends={args.bends}")
    return EXIT_OK


def cmd_classify(args) -> int:
    e = load_embedding(getattr(args, "in"))
    curve = load_curve(args.curve)
    m = _parse_subgraph(e.graph, args.subgraph)
    scene = validate_scene(e, [curve])
    if not scene.ok:
        raise DomainError(f"scene is invalid: {scene.summary()}")
    direction = pick_generic_direction(e, [curve], args.seed)
    d = project(e, [curve], direction)
    try:
        pattern = classify(d, 0, m)
    except PatternViolationError as exc:
        print(f"VIOLATION {exc}")
        return EXIT_VIOLATION
    squares_text = ",".join(sorted(str(s) for s in pattern.squares))
    suffix = f" squares={squares_text}" if pattern.squares else ""
    print(f"{pattern}{suffix}")
    return EXIT_OK


def cmd_extract(args) -> int:
    e = load_embedding(getattr(args, "in"))
    cert = extract_nlink(
        e, args.n, method=args.method, seed=args.seed, allow_fallback=args.allow_fallback
    )
    save_certificate(cert, args.out)
    _print_cert_summary(cert, args.out)
    return EXIT_OK


def cmd_edge_link(args) -> int:
    e = load_embedding(getattr(args, "in"))
    target = _parse_edge_arg(e.graph, args.edge)
    cert = edge_nlink(
        e, target, args.n, method=args.method, seed=args.seed,
        allow_fallback=args.allow_fallback,
    )
    save_certificate(cert, args.out)
    _print_cert_summary(cert, args.out)
    return EXIT_OK


def _print_cert_summary(cert, out) -> None:
    comps = " ".join(str(c) for c in cert.components)
    cases = ",".join(step.case for step in cert.trace)
    print(f"wrote {out}: {cert.n} components [{comps}] designated={cert.designated} cases={cases}")


def cmd_verify(args) -> int:
    e = load_embedding(getattr(args, "in"))
    cert = load_certificate(args.cert)
    report = verify_certificate(e, cert, seed=args.seed)
    for name, ok, detail in report.entries:
        line = f"{name}: {'pass' if ok else 'FAIL'}"
        if detail and not ok:
            line += f" ({detail})"
        print(line)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _campaign_trial(params: dict) -> dict:
    t0 = time.perf_counter()
    row = {
        "trial": params["trial"],
        "seed": params["seed"],
        "edge": params.get("edge") or "",
        "ok": False,
        "cases": "",
        "ZERO": 0,
        "FOUR": 0,
        "SIX": 0,
        "error": "",
    }
    try:
        g = PartitionedGraph.complete(params["shape"][0], params["shape"][1])
        e = random_embedding(g, params["seed"], params["bends"])
        if params.get("edge"):
            target = _parse_edge_arg(g, params["edge"])
            cert = edge_nlink(
                e, target, params["n"], method=params["method"],
                seed=params["seed"], allow_fallback=params["allow_fallback"],
            )
            carried = any(
                target.x in c.xs and target.y in c.ys for c in cert.components
            )
            if not carried:
                raise TheoremViolationError(f"no component carries {target}")
        else:
            cert = extract_nlink(
                e, params["n"], method=params["method"],
                seed=params["seed"], allow_fallback=params["allow_fallback"],
            )
        report = verify_certificate(e, cert)
        row["cases"] = ";".join(step.case for step in cert.trace)
        for step in cert.trace:
            for kind, count in step.pattern_counts:
                row[kind] += count
        if not report.ok:
            row["error"] = "verify: " + report.summary()
        else:
            row["ok"] = True
    except Exception as exc:  # per-trial isolation: failures are report rows
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["seconds"] = round(time.perf_counter() - t0, 6)
    return row


def cmd_campaign(args) -> int:
    r, s = _parse_shape(args.graph)
    g = PartitionedGraph.complete(r, s)
    jobs = []
    if args.edge_link:
        trial = 0
        for k in range(args.trials):
            for ed in g.edges():
                jobs.append(
                    {
                        "trial": trial,
                        "seed": args.seed + k,
                        "shape": (r, s),
                        "n": args.n,
                        "method": args.method,
                        "bends": args.bends,
                        "allow_fallback": args.allow_fallback,
                        "edge": str(ed),
                    }
                )
                trial += 1
    else:
        for k in range(args.trials):
            jobs.append(
                {
                    "trial": k,
                    "seed": args.seed + k,
                    "shape": (r, s),
                    "n": args.n,
                    "method": args.method,
                    "bends": args.bends,
                    "allow_fallback": args.allow_fallback,
                }
            )

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_campaign_trial, jobs))
    else:
        rows = [_campaign_trial(j) for j in jobs]

    case_counts: dict[str, int] = {}
    patterns = {"ZERO": 0, "FOUR": 0, "SIX": 0}
    failures = []
    durations = [row["seconds"] for row in rows]
    for row in rows:
        for c in row["cases"].split(";"):
            if c:
                case_counts[c] = case_counts.get(c, 0) + 1
        for kind in patterns:
            patterns[kind] += row[kind]
        if not row["ok"]:
            failures.append(
                {"trial": row["trial"], "seed": row["seed"], "edge": row["edge"], "error": row["error"]}
            )

    base = args.out
    columns = ["trial", "seed", "edge", "ok", "cases", "ZERO", "FOUR", "SIX", "seconds", "error"]
    with open(f"{base}.tsv", "w", encoding="utf-8") as fh:
        fh.write("\t".join(columns) + "\n")
        for row in rows:
            fh.write("\t".join(str(row[c]) for c in columns) + "\n")

    summary = {
        "graph": f"k{r},{s}",
        "n": args.n,
        "method": args.method,
        "edge_link": bool(args.edge_link),
        "seed0": args.seed,
        "trials": len(rows),
        "certificates": sum(1 for row in rows if row["ok"]),
        "case_counts": dict(sorted(case_counts.items())),
        "pattern_histogram": patterns,
        "failures": failures,
        "wall_clock": {
            "total_s": round(sum(durations), 6),
            "mean_s": round(sum(durations) / len(durations), 6) if durations else 0.0,
            "min_s": min(durations) if durations else 0.0,
            "max_s": max(durations) if durations else 0.0,
        },
    }
    with open(f"{base}.json", "w", encoding="utf-8") as fh:
        fh.write(dumps(summary))

    if not args.no_plots:
        _write_figures(base, case_counts, patterns, durations)

    print(
        f"campaign: {summary['certificates']}/{len(rows)} ok; "
        f"cases={summary['case_counts']}; patterns={patterns}"
    )
    for f in failures[:10]:
        print(f"  FAIL trial={f['trial']} seed={f['seed']} {f['edge']}: {f['error']}")
    if not failures:
        return EXIT_OK
    if any("Violation" in f["error"] for f in failures):
        return EXIT_VIOLATION
    return EXIT_VERIFY


def _write_figures(base: str, case_counts: dict, patterns: dict, durations) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3.5))
    items = sorted(case_counts.items()) or [("none", 0)]
    ax.bar([k for k, _ in items], [v for _, v in items], color="#4878a8")
    ax.set_ylabel("extraction steps")
    ax.set_title("dispatch cases fired")
    fig.tight_layout()
    fig.savefig(f"{base}_cases.png", dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(1, 2, figsize=(8, 3.5))
    kinds = ["ZERO", "FOUR", "SIX"]
    ax[0].bar(kinds, [patterns[k] for k in kinds], color=["#888888", "#4878a8", "#a85448"])
    ax[0].set_title("linking patterns consulted")
    if durations:
        ax[1].hist(durations, bins=min(20, max(5, len(durations) // 5)), color="#4878a8")
    ax[1].set_title("trial wall-clock (s)")
    fig.tight_layout()
    fig.savefig(f"{base}_patterns.png", dpi=120)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bilink", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random valid embedding file")
    g.add_argument("--graph", required=True, help="shape, e.g. k5,5")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bends", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("classify", help="linking pattern of a curve against a 3+3 subgraph")
    c.add_argument("--in", required=True)
    c.add_argument("--curve", required=True)
    c.add_argument("--subgraph", required=True, help="like 1,3,5:2,4,6")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_classify)

    x = sub.add_parser("extract", help="extract a non-split n-component link certificate")
    x.add_argument("--in", required=True)
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--method", choices=["proof", "search"], default="proof")
    x.add_argument("--allow-fallback", action="store_true")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--out", required=True)
    x.set_defaults(func=cmd_extract)

    el = sub.add_parser("edge-link", help="certificate containing a chosen edge")
    el.add_argument("--in", required=True)
    el.add_argument("--edge", required=True, help="like 1-2")
    el.add_argument("--n", type=int, required=True)
    el.add_argument("--method", choices=["proof", "search"], default="proof")
    el.add_argument("--allow-fallback", action="store_true")
    el.add_argument("--seed", type=int, default=0)
    el.add_argument("--out", required=True)
    el.set_defaults(func=cmd_edge_link)

    v = sub.add_parser("verify", help="re-check a certificate under a fresh direction")
    v.add_argument("--in", required=True)
    v.add_argument("--cert", required=True)
    v.add_argument("--seed", type=int, default=VERIFY_SEED)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("campaign", help="seeded trial campaign with a figure-bearing report")
    k.add_argument("--graph", required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--trials", type=int, required=True)
    k.add_argument("--seed", type=int, default=0, help="base seed; trial i uses seed+i")
    k.add_argument("--method", choices=["proof", "search"], default="proof")
    k.add_argument("--bends", type=int, default=0)
    k.add_argument("--edge-link", action="store_true", help="run every edge per seed")
    k.add_argument("--allow-fallback", action="store_true")
    k.add_argument("--jobs", type=int, default=1)
    k.add_argument("--no-plots", action="store_true")
    k.add_argument("--out", required=True, help="report base path (writes BASE.tsv/.json/_*.png)")
    k.set_defaults(func=cmd_campaign)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TheoremViolationError, PatternViolationError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (DomainError, GenerationError, DegenerateSceneError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
