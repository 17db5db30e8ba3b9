"""Command-line front end for tables, detection runs, and complexity reports.

Subcommands: chars, kstar, detect (zcsn | kron | lr | classical), kron, lr,
holo (roundtrip | cutoff-table | cost), report. Output defaults to text;
--json and --csv switch formats where a command supports them, and --out
writes to a file instead of stdout. JSON output is byte-identical for a fixed
(argv, seed) pair and always carries a top-level "schema": "1". Partitions
are written comma-joined ("3,2,1"), triples semicolon-joined
("3,1;2,2;2,1,1"). Exit codes: 0 success, 1 detection failure, 2 usage error.

The default seed is 0; the environment variable PROJDETECT_SEED overrides it
when --seed is not given explicitly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .symgroup import (
    CharacterTable,
    format_partition,
    parse_partition,
    partitions,
)

SEED_ENV = "PROJDETECT_SEED"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _partition_arg(parser: argparse.ArgumentParser, text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        parser.error(str(exc))


def _triple_arg(parser: argparse.ArgumentParser, text: str):
    parts = text.split(";")
    if len(parts) != 3:
        parser.error(f"expected three semicolon-joined partitions, got {text!r}")
    return tuple(_partition_arg(parser, p) for p in parts)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="rng seed (default 0, or $" + SEED_ENV + ")")


def _add_formats(p: argparse.ArgumentParser, csv_too: bool = True) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON")
    if csv_too:
        p.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--out", default=None, help="write output to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projdetect",
        description="projector detection toolkit: tables, detection, reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chars", help="character table of S_n")
    p.add_argument("--n", type=int, required=True)
    _add_formats(p)

    p = sub.add_parser("kstar", help="signature cutoffs k*(n)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument(
        "--signatures-for",
        type=int,
        default=None,
        metavar="N",
        help="emit the signature table CSV for this n instead",
    )
    _add_formats(p)

    p = sub.add_parser("detect", help="run a detection pipeline")
    dsub = p.add_subparsers(dest="pipeline", required=True)

    d = dsub.add_parser("zcsn", help="centre signature detection")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--r", required=True, help='projector label, e.g. "3,3"')
    _add_seed(d)
    _add_formats(d, csv_too=False)

    d = dsub.add_parser("kron", help="tensor-square detection")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--triple", required=True, help='"R1;R2;R3"')
    _add_seed(d)
    _add_formats(d, csv_too=False)

    d = dsub.add_parser("lr", help="restriction detection")
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--triple", required=True, help='"R;R1;R2"')
    _add_seed(d)
    _add_formats(d, csv_too=False)

    d = dsub.add_parser("classical", help="randomized sampling detection")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--r", required=True)
    d.add_argument("--delta", type=float, default=0.05)
    d.add_argument("--trials", type=int, default=1)
    _add_seed(d)
    _add_formats(d, csv_too=False)

    p = sub.add_parser("kron", help="Kronecker coefficients and dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--triple", default=None, help='"R1;R2;R3"')
    p.add_argument("--table", action="store_true", help="list all nonzero triples")
    _add_formats(p)

    p = sub.add_parser("lr", help="restriction coefficients and dimensions")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--triple", default=None, help='"R;R1;R2"')
    p.add_argument("--table", action="store_true", help="list all nonzero triples")
    _add_formats(p)

    p = sub.add_parser("holo", help="geometry-profile pipeline")
    hsub = p.add_subparsers(dest="stage", required=True)

    h = hsub.add_parser("roundtrip", help="diagram -> profile -> diagram")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--capital-n", type=int, required=True)
    h.add_argument("--lambda", dest="lam", type=int, default=None)
    h.add_argument("--rho", type=float, default=1.0)
    h.add_argument("--r", default=None, help="run a single diagram")
    _add_formats(h)

    h = hsub.add_parser("cutoff-table", help="moment cutoff next to k*")
    h.add_argument("--n-max", type=int, required=True)
    _add_formats(h)

    h = hsub.add_parser("cost", help="operation counts for one cutoff")
    h.add_argument("--lambda", dest="lam", type=int, required=True)
    h.add_argument("--beta", type=float, required=True)
    _add_formats(h, csv_too=False)

    p = sub.add_parser("report", help="complexity summary across pipelines")
    p.add_argument("--n-max", type=int, default=12)
    _add_formats(p, csv_too=False)

    return parser


def _cmd_chars(args, out: str | None) -> int:
    table = CharacterTable(args.n)
    if args.json:
        _emit(table.to_json(), out)
    elif args.csv:
        _emit(table.to_csv(), out)
    else:
        lines = []
        for r in table.labels:
            row = " ".join(str(table.entries[(r, mu)]) for mu in table.labels)
            lines.append(f"{format_partition(r) or '-'}: {row}")
        _emit("\n".join(lines), out)
    return 0


def _cmd_kstar(args, parser, out: str | None) -> int:
    from .centre import k_star_growth_report, signature_table_csv, k_star

    if args.signatures_for is not None:
        n = args.signatures_for
        if n < 2:
            parser.error("signature tables need n >= 2")
        _emit(signature_table_csv(n, k_star(n)), out)
        return 0
    rows = k_star_growth_report(args.n_max)
    if args.json:
        _emit(
            _dump(
                {
                    "schema": "1",
                    "rows": [{"n": r["n"], "k_star": r["k_star"]} for r in rows],
                }
            ),
            out,
        )
    elif args.csv:
        lines = ["n,k_star,heuristic"]
        lines += [f"{r['n']},{r['k_star']},{r['heuristic']!r}" for r in rows]
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(
            "\n".join(
                f"n={r['n']} k*={r['k_star']} heuristic={r['heuristic']:.4f}"
                for r in rows
            ),
            out,
        )
    return 0


def _cmd_detect_zcsn(args, parser, out: str | None) -> int:
    from .detection import detect_projector

    rep = _partition_arg(parser, args.r)
    if sum(rep) != args.n:
        parser.error(f"|{args.r}| = {sum(rep)} does not match --n {args.n}")
    seed = _resolve_seed(args)
    try:
        transcript = detect_projector(rep, seed=seed)
    except ValueError as exc:
        print(f"detection failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        _emit(transcript.to_json(), out)
    else:
        _emit(
            f"true={format_partition(rep)} identified="
            f"{format_partition(transcript.identified_label)} "
            f"queries={transcript.query_total} gates={transcript.gate_total}",
            out,
        )
    return 0 if transcript.identified_label == rep else 1


def _cmd_detect_kron(args, parser, out: str | None) -> int:
    from .kron_lr import kron_detect, pair_projector_state

    triple = _triple_arg(parser, args.triple)
    if any(sum(p) != args.n for p in triple):
        parser.error(f"every diagram in {args.triple!r} must have {args.n} boxes")
    seed = _resolve_seed(args)
    try:
        transcript = kron_detect(pair_projector_state(*triple), seed=seed)
    except ValueError as exc:
        print(f"detection failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        _emit(transcript.to_json(), out)
    else:
        detected = ";".join(format_partition(p) for p in transcript.detected)
        _emit(
            f"detected={detected} queries={transcript.counters.cu_queries} "
            f"gates={transcript.counters.total_gates}",
            out,
        )
    return 0 if transcript.detected == triple else 1


def _cmd_detect_lr(args, parser, out: str | None) -> int:
    from .kron_lr import lr_detect, lr_projector_state

    triple = _triple_arg(parser, args.triple)
    rep, r1, r2 = triple
    if sum(r1) != args.m or sum(r2) != args.n or sum(rep) != args.m + args.n:
        parser.error(
            f"sizes of {args.triple!r} must be ({args.m + args.n}; {args.m}; {args.n})"
        )
    seed = _resolve_seed(args)
    try:
        transcript = lr_detect(lr_projector_state(*triple), seed=seed)
    except ValueError as exc:
        print(f"detection failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        _emit(transcript.to_json(), out)
    else:
        detected = ";".join(format_partition(p) for p in transcript.detected)
        _emit(
            f"detected={detected} queries={transcript.counters.cu_queries} "
            f"gates={transcript.counters.total_gates}",
            out,
        )
    return 0 if transcript.detected == triple else 1


def _cmd_detect_classical(args, parser, out: str | None) -> int:
    from .classical import classical_detect

    rep = _partition_arg(parser, args.r)
    if sum(rep) != args.n:
        parser.error(f"|{args.r}| = {sum(rep)} does not match --n {args.n}")
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    seed = _resolve_seed(args)
    failures = 0
    first = None
    total_queries = 0
    for i in range(args.trials):
        transcript = classical_detect(rep, delta=args.delta, seed=seed + i)
        if first is None:
            first = transcript
        total_queries += transcript.queries
        if transcript.detected != rep:
            failures += 1
    report = {
        "schema": "1",
        "n": args.n,
        "true_label": format_partition(rep),
        "delta": args.delta,
        "trials": args.trials,
        "seed": seed,
        "failures": failures,
        "per_k": first.per_k,
        "totals": {"per_trial": first.queries, "all_trials": total_queries},
    }
    if args.json:
        _emit(_dump(report), out)
    else:
        lines = [
            f"true={format_partition(rep)} trials={args.trials} failures={failures}"
        ]
        lines += [
            f"k={row['k']} estimate={row['estimate']} truth={row['truth']} "
            f"queries={row['queries']}"
            for row in first.per_k
        ]
        lines.append(f"queries per trial: {first.queries}")
        _emit("\n".join(lines), out)
    return 0 if failures == 0 else 1


def _cmd_kron(args, parser, out: str | None) -> int:
    from .kron_lr import dim_K, kron_labels, kronecker, ribbon_count

    if args.triple:
        triple = _triple_arg(parser, args.triple)
        if any(sum(p) != args.n for p in triple):
            parser.error(f"every diagram in {args.triple!r} must have {args.n} boxes")
        value = kronecker(*triple)
        if args.json:
            _emit(
                _dump({"schema": "1", "triple": args.triple, "kronecker": value}), out
            )
        else:
            _emit(str(value), out)
        return 0
    if args.table:
        rows = [
            (";".join(format_partition(p) for p in label), kronecker(*label))
            for label in kron_labels(args.n)
        ]
        if args.json:
            _emit(
                _dump(
                    {
                        "schema": "1",
                        "n": args.n,
                        "rows": [{"triple": t, "kronecker": v} for t, v in rows],
                    }
                ),
                out,
            )
        else:
            lines = ["triple,kronecker"]
            lines += [f'"{t}",{v}' for t, v in rows]
            _emit("\n".join(lines) + "\n", out)
        return 0
    summary = {
        "schema": "1",
        "n": args.n,
        "dim_K": dim_K(args.n),
        "ribbon_count": ribbon_count(args.n),
        "nonzero_triples": len(kron_labels(args.n)),
    }
    if args.json:
        _emit(_dump(summary), out)
    else:
        _emit(
            f"n={args.n} dim_K={summary['dim_K']} "
            f"ribbon_count={summary['ribbon_count']} "
            f"nonzero_triples={summary['nonzero_triples']}",
            out,
        )
    return 0


def _cmd_lr(args, parser, out: str | None) -> int:
    from .kron_lr import dim_A, lr_coefficient, lr_labels, necklace_count

    if args.triple:
        rep, r1, r2 = _triple_arg(parser, args.triple)
        if sum(r1) != args.m or sum(r2) != args.n or sum(rep) != args.m + args.n:
            parser.error(
                f"sizes of {args.triple!r} must be ({args.m + args.n}; {args.m}; {args.n})"
            )
        value = lr_coefficient(rep, r1, r2)
        if args.json:
            _emit(
                _dump({"schema": "1", "triple": args.triple, "coefficient": value}),
                out,
            )
        else:
            _emit(str(value), out)
        return 0
    if args.table:
        rows = [
            (";".join(format_partition(p) for p in label), lr_coefficient(*label))
            for label in lr_labels(args.m, args.n)
        ]
        if args.json:
            _emit(
                _dump(
                    {
                        "schema": "1",
                        "m": args.m,
                        "n": args.n,
                        "rows": [{"triple": t, "coefficient": v} for t, v in rows],
                    }
                ),
                out,
            )
        else:
            lines = ["triple,coefficient"]
            lines += [f'"{t}",{v}' for t, v in rows]
            _emit("\n".join(lines) + "\n", out)
        return 0
    summary = {
        "schema": "1",
        "m": args.m,
        "n": args.n,
        "dim_A": dim_A(args.m, args.n),
        "necklace_count": necklace_count(args.m, args.n),
        "nonzero_triples": len(lr_labels(args.m, args.n)),
    }
    if args.json:
        _emit(_dump(summary), out)
    else:
        _emit(
            f"m={args.m} n={args.n} dim_A={summary['dim_A']} "
            f"necklace_count={summary['necklace_count']} "
            f"nonzero_triples={summary['nonzero_triples']}",
            out,
        )
    return 0


def _roundtrip_json(result: dict) -> dict:
    return {
        "rep": format_partition(result["rep"]),
        "recovered": format_partition(result["recovered"]),
        "match": result["match"],
        "lam": result["lam"],
        "rho": result["rho"],
        "residual_max": result["residual_max"],
        "moments": result["moments"],
        "ops": result["ops"],
    }


def _cmd_holo_roundtrip(args, parser, out: str | None) -> int:
    from .holographic import fermion_config, holographic_roundtrip, u_profile

    if args.capital_n <= args.n:
        parser.error("--capital-n must exceed --n")
    if args.r is not None:
        rep = _partition_arg(parser, args.r)
        if sum(rep) != args.n:
            parser.error(f"|{args.r}| = {sum(rep)} does not match --n {args.n}")
        try:
            result = holographic_roundtrip(rep, args.capital_n, lam=args.lam, rho=args.rho)
        except (ValueError, ArithmeticError) as exc:
            print(f"roundtrip failed: {exc}", file=sys.stderr)
            return 1
        if args.csv:
            profile = u_profile(
                fermion_config(rep, args.capital_n), args.rho, result["lam"]
            )
            _emit(profile.samples_csv(), out)
        elif args.json:
            _emit(_dump({"schema": "1", **_roundtrip_json(result)}), out)
        else:
            _emit(
                f"rep={format_partition(rep)} recovered="
                f"{format_partition(result['recovered'])} match={result['match']} "
                f"residual={result['residual_max']:.3g}",
                out,
            )
        return 0 if result["match"] else 1
    results = []
    for rep in partitions(args.n):
        try:
            results.append(
                holographic_roundtrip(rep, args.capital_n, lam=args.lam, rho=args.rho)
            )
        except (ValueError, ArithmeticError) as exc:
            print(f"roundtrip failed at {format_partition(rep)}: {exc}", file=sys.stderr)
            return 1
    ok = all(r["match"] for r in results)
    if args.json:
        _emit(
            _dump(
                {
                    "schema": "1",
                    "n": args.n,
                    "capital_n": args.capital_n,
                    "rho": args.rho,
                    "rows": [_roundtrip_json(r) for r in results],
                    "all_match": ok,
                }
            ),
            out,
        )
    elif args.csv:
        lines = ["rep,recovered,match,residual_max"]
        lines += [
            f'"{format_partition(r["rep"])}","{format_partition(r["recovered"])}",'
            f"{int(r['match'])},{r['residual_max']!r}"
            for r in results
        ]
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(
            "\n".join(
                f"rep={format_partition(r['rep'])} match={r['match']} "
                f"residual={r['residual_max']:.3g}"
                for r in results
            ),
            out,
        )
    return 0 if ok else 1


def _cmd_holo_cutoffs(args, out: str | None) -> int:
    from .holographic import cutoff_comparison_table

    rows = cutoff_comparison_table(args.n_max)
    if args.json:
        _emit(_dump({"schema": "1", "rows": rows}), out)
    elif args.csv:
        lines = ["n,moment_cutoff,k_star"]
        lines += [f"{r['n']},{r['moment_cutoff']},{r['k_star']}" for r in rows]
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(
            "\n".join(
                f"n={r['n']} moment_cutoff={r['moment_cutoff']} k*={r['k_star']}"
                for r in rows
            ),
            out,
        )
    return 0


def _cmd_holo_cost(args, out: str | None) -> int:
    from .holographic import holographic_complexity_report

    report = holographic_complexity_report(args.lam, args.beta)
    if args.json:
        _emit(_dump({"schema": "1", **report}), out)
    else:
        _emit(
            f"lambda={report['lambda']} beta={report['beta']} case={report['case']} "
            f"dominant={report['dominant']} direct_mults={report['direct_mults']} "
            f"solve_mults={report['solve_mults']}",
            out,
        )
    return 0


def _cmd_report(args, out: str | None) -> int:
    from .classical import classical_complexity_report
    from .detection import complexity_table
    from .holographic import cutoff_comparison_table

    n_max = args.n_max
    quantum = complexity_table(range(2, n_max + 1))
    classical = classical_complexity_report([6, 7, 8])
    holo = cutoff_comparison_table(min(n_max, 10))
    if args.json:
        _emit(
            _dump(
                {
                    "schema": "1",
                    "quantum": quantum,
                    "classical": classical,
                    "holographic_cutoffs": holo,
                }
            ),
            out,
        )
    else:
        lines = ["signature detection (exact phase):"]
        lines += [
            f"  n={r['n']} k*={r['k_star']} queries={r['query_total']} "
            f"gates={r['gate_total']}"
            for r in quantum
        ]
        lines.append("sampling baseline (widest diagram):")
        lines += [
            f"  n={r['n']} queries={r['queries']} vs quantum {r['quantum_queries']}"
            for r in classical
        ]
        lines.append("profile pipeline cutoffs:")
        lines += [
            f"  n={r['n']} moment_cutoff={r['moment_cutoff']} k*={r['k_star']}"
            for r in holo
        ]
        _emit("\n".join(lines), out)
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = getattr(args, "out", None)
    try:
        if args.command == "chars":
            return _cmd_chars(args, out)
        if args.command == "kstar":
            return _cmd_kstar(args, parser, out)
        if args.command == "detect":
            if args.pipeline == "zcsn":
                return _cmd_detect_zcsn(args, parser, out)
            if args.pipeline == "kron":
                return _cmd_detect_kron(args, parser, out)
            if args.pipeline == "lr":
                return _cmd_detect_lr(args, parser, out)
            return _cmd_detect_classical(args, parser, out)
        if args.command == "kron":
            return _cmd_kron(args, parser, out)
        if args.command == "lr":
            return _cmd_lr(args, parser, out)
        if args.command == "holo":
            if args.stage == "roundtrip":
                return _cmd_holo_roundtrip(args, parser, out)
            if args.stage == "cutoff-table":
                return _cmd_holo_cutoffs(args, out)
            return _cmd_holo_cost(args, out)
        return _cmd_report(args, out)
    except SystemExit as exc:
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
