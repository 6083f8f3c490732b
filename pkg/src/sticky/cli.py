"""Command line entry point.

Exit status is 0 on success, 1 for validation, domain or size-guard errors,
and 2 when an input file or argument cannot be parsed.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import combinatorics as comb
from .diagram import (
    build_momentum_diagram,
    decompose_polygons,
    diagram_svg,
    lower_convex_envelope,
    predict_clusters,
)
from .io import (
    ParticleFileError,
    clusters_to_json,
    dump_json,
    read_particle_file,
    render_number,
)
from .montecarlo import McConfig, sample_cluster_counts
from .numerics import ParseError, rational_parse
from .simulator import simulate, trajectories_svg

EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None = None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(args):
    return read_particle_file(args.input, args.format).system


def cmd_predict(args) -> int:
    system = _load(args)
    payload = {"clusters": clusters_to_json(predict_clusters(system), args.decimal)}
    _emit(dump_json(payload), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    t_max = None
    if args.t_max is not None:
        t_max = rational_parse(args.t_max)
        if t_max <= 0:
            raise UsageError("--t-max must be positive")
    system = _load(args)
    result = simulate(system)
    d = args.decimal
    events = [
        {
            "time": render_number(ev.time, d),
            "position": render_number(ev.position, d),
            "merged": [list(r) for r in ev.merged],
        }
        for ev in result.events
    ]
    if args.events:
        _emit(dump_json(events), args.out)
    else:
        _emit(dump_json({"events": events, "clusters": clusters_to_json(result.final, d)}), args.out)
    if args.svg:
        if t_max is None:
            last = result.events[-1].time if result.events else 0
            t_max = 2 * last if last else 1
        Path(args.svg).write_text(trajectories_svg(result, system, t_max), encoding="utf-8")
    return EXIT_OK


def cmd_diagram(args) -> int:
    system = _load(args)
    diagram = build_momentum_diagram(system)
    envelope = lower_convex_envelope(diagram)
    polygons = decompose_polygons(diagram, envelope)
    d = args.decimal
    sidecar = {
        "points": [[render_number(x, d), render_number(y, d)] for x, y in diagram.points],
        "contacts": list(envelope.contact_indices),
        "edge_slopes": [render_number(s, d) for s in envelope.edge_slopes],
        "polygons": [
            {"members": list(t.members), "slope": render_number(t.slope, d), "degenerate": t.degenerate}
            for t in polygons.polygons
        ],
    }
    text = dump_json(sidecar)
    if args.svg:
        svg_path = Path(args.svg)
        svg_path.write_text(diagram_svg(system), encoding="utf-8")
        svg_path.with_suffix(".json").write_text(text, encoding="utf-8")
    _emit(text, args.out)
    return EXIT_OK


def cmd_prob(args) -> int:
    if args.table is not None:
        rows = comb.asymptotic_trend_report(args.table)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "p", "p_decimal", "n_p", "n_p_decimal"])
        for row in rows:
            writer.writerow([
                row.n,
                render_number(row.probability),
                render_number(row.probability, args.digits),
                render_number(row.scaled),
                render_number(row.scaled, args.digits),
            ])
        _emit(buf.getvalue())
        return EXIT_OK
    if args.n is None:
        raise UsageError("give --n or --table")
    if args.enumerate:
        p = comb.one_cluster_probability_bruteforce(args.n, args.workers)
    else:
        p = comb.one_cluster_probability(args.n)
    _emit(render_number(p, args.decimal) + "\n")
    return EXIT_OK


def cmd_mc(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    try:
        config = McConfig(args.n, args.trials, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = sample_cluster_counts(config, args.workers)
    payload = {"n": config.n, "seed": config.seed, "model": config.model, **result.to_dict()}
    _emit(dump_json(payload))
    return EXIT_OK


def cmd_paths(args) -> int:
    try:
        rows = tuple(int(part) for part in args.shape.split(","))
    except ValueError:
        raise ParseError(f"malformed shape {args.shape!r}") from None
    shape = comb.YoungShape(rows)
    count = comb.count_paths_bruteforce(shape) if args.bruteforce else comb.count_paths(shape)
    _emit(f"{count}\n")
    return EXIT_OK


def _decimal_flag(p):
    p.add_argument("--decimal", type=int, metavar="DIGITS", default=None,
                   help="render numbers as decimals rounded to DIGITS places instead of exact p/q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sticky", description="Sticky particle clusters from momentum diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="particle file (JSON array or CSV with header m,x,v)")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="input format; inferred from the file suffix by default")
        p.add_argument("--out", default=None, help="write the JSON result here instead of stdout")
        _decimal_flag(p)
        return p

    p = with_input("predict", "predict final clusters from the momentum diagram")
    p.set_defaults(func=cmd_predict)

    p = with_input("simulate", "run the event-driven collision simulation")
    p.add_argument("--events", action="store_true", help="print only the collision event array")
    p.add_argument("--svg", default=None, help="write a trajectory plot")
    p.add_argument("--t-max", default=None, help="time horizon of the plot (rational)")
    p.set_defaults(func=cmd_simulate)

    p = with_input("diagram", "momentum diagram, envelope contacts and polygons")
    p.add_argument("--svg", default=None, help="write the diagram plot; a .json sidecar goes next to it")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("prob", help="probability that n unit particles with random +-1 velocities form one cluster")
    p.add_argument("--n", type=int, default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="closed form via path determinants (default)")
    mode.add_argument("--enumerate", action="store_true", help="enumerate all 2^n assignments")
    p.add_argument("--table", type=int, default=None, metavar="N_MAX", help="CSV of p_n and n*p_n for 2..N_MAX")
    p.add_argument("--digits", type=int, default=12, help="decimal places in the table")
    p.add_argument("--workers", type=int, default=1)
    _decimal_flag(p)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("mc", help="Monte Carlo histogram of cluster counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("paths", help="count North-East lattice paths on a Young shape")
    p.add_argument("--shape", required=True, help='comma separated rows, e.g. "4,2,1,0,0"')
    p.add_argument("--bruteforce", action="store_true", help="count by dynamic programming instead")
    p.set_defaults(func=cmd_paths)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ParticleFileError, comb.DomainError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
