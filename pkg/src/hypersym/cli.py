"""Command-line front end.

Exit codes: 0 on success, 1 on a validation error (including unknown flags),
2 when a computation cap is exceeded.  JSON reports embed the resolved
configuration; the thread count, output path and timing flag are left out
so that a fixed seed gives byte-identical output at any thread count.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from typing import Optional

from . import __version__
from .catalog import CATALOG_ENV, find_entry, load_catalog, render_catalog
from .counting import (asymptotic_P2, asymptotic_Q2_rate, stabilizer_prob_bound,
                       union_bound_asymmetry, union_bound_transversal)
from .errors import CapExceeded, CatalogError, NotPreservedError
from .experiments import (DEFAULT_SEED, UNION_ORBIT_CAP, asymmetry_mc, min_edge_size,
                          orbit_union_lattice, rigidity_mc, scan_exceptions,
                          transversal_asymmetry_mc)
from .groups import KSET_CAP, MINDEG_ORDER_CAP, PermGroup, structure_report
from .hypergraph import (AUT_DEGREE_CAP, EDGE_CAP, Hypergraph, TransversalHypergraph,
                         aut_group, aut_group_transversal, kset_orbit_reps, setwise_stabilizer)
from .perm import parse_generators
from .reports import to_csv, to_json
from ._search import NODE_CAP

# Fields of the parsed namespace that never reach a report.
_UNREPORTED = {"threads", "output", "timing", "format", "func", "command", "action"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclasses.dataclass
class CliConfig:
    subcommand: str
    options: dict

    @classmethod
    def from_namespace(cls, ns) -> "CliConfig":
        name = ns.command if ns.command not in ("group", "catalog") else \
            f"{ns.command} {getattr(ns, 'action', None) or 'info'}"
        opts = {k: v for k, v in sorted(vars(ns).items()) if k not in _UNREPORTED}
        return cls(name, opts)


def _common(p, seeded=False, threaded=False):
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--one-based", action="store_true",
                   help="read and print points numbered from 1")
    p.add_argument("--catalog", help=f"catalog file (default: ${CATALOG_ENV} or builtin)")
    if seeded:
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help=f"RNG seed (default {DEFAULT_SEED})")
        p.add_argument("--timing", action="store_true", help="record runtime_ms in the report")
    if threaded:
        p.add_argument("--threads", type=int, default=1)


def _group_args(p):
    p.add_argument("--group", required=True,
                   help="catalog name, or a ';'-separated generator list in cycle notation")
    p.add_argument("--degree", type=int, help="degree when --group is a generator list")


def _caps(p):
    p.add_argument("--node-cap", type=int, default=NODE_CAP,
                   help="search-tree nodes per automorphism computation")
    p.add_argument("--max-degree", type=int, default=AUT_DEGREE_CAP)
    p.add_argument("--max-edges", type=int, default=EDGE_CAP)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypersym", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("group", help="group structure")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = gsub.add_parser("info", help="order, transitivity, primitivity, minimal degree")
    _common(info)
    _group_args(info)
    info.add_argument("--kmax", type=int)
    info.add_argument("--mindeg-cap", type=int, default=MINDEG_ORDER_CAP)
    info.add_argument("--kset-cap", type=int, default=KSET_CAP)
    info.set_defaults(func=cmd_group_info)

    p = sub.add_parser("orbits", help="point orbits, or orbits on k-sets with --k")
    _common(p)
    _group_args(p)
    p.add_argument("--k", type=int)
    p.add_argument("--kset-cap", type=int, default=KSET_CAP)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("stab", help="setwise stabilizer of a point set")
    _common(p)
    _group_args(p)
    p.add_argument("--set", required=True, help="comma-separated points")
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("aut", help="automorphism group of a hypergraph file")
    _common(p)
    _caps(p)
    p.add_argument("--file", required=True)
    p.add_argument("--transversal", action="store_true",
                   help="file is a transversal hypergraph; only layer-respecting maps count")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("rigidity", help="Monte Carlo comparison of Aut(Y^G) with G")
    _common(p, seeded=True, threaded=True)
    _group_args(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--k", type=int, help="sample k-sets (default: all subsets, p = 1/2)")
    p.add_argument("--check-deduction", action="store_true")
    p.set_defaults(func=cmd_rigidity)

    for name, fn, what in (("asymmetry", cmd_asymmetry, "random t-uniform hypergraph"),
                           ("transversal-asymmetry", cmd_transversal_asymmetry,
                            "random transversal hypergraph")):
        p = sub.add_parser(name, help=f"probability that a {what} is not rigid")
        _common(p, seeded=True, threaded=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--t", type=int, default=2)
        p.add_argument("--trials", type=int, default=10000)
        p.add_argument("--exact", action="store_true", help="enumerate every hypergraph")
        p.set_defaults(func=fn)

    p = sub.add_parser("exceptions", help="scan catalog groups for exception candidates")
    _common(p)
    p.add_argument("--degree-max", type=int, required=True)
    p.add_argument("--max-orbits", type=int, default=UNION_ORBIT_CAP)
    p.set_defaults(func=cmd_exceptions)

    p = sub.add_parser("lattice", help="Aut of every union of k-set orbits")
    _common(p)
    _group_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-orbits", type=int, default=UNION_ORBIT_CAP)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("minedge", help="least k with a k-set orbit whose Aut is G")
    _common(p)
    _group_args(p)
    p.add_argument("--kmax", type=int)
    p.set_defaults(func=cmd_minedge)

    p = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--order", type=int, help="|M| for the stabilizer bound")
    p.add_argument("--m", type=int, help="minimal degree for the stabilizer bound")
    p.add_argument("--k", type=int, help="set size for the stabilizer bound")
    p.set_defaults(func=cmd_bounds)

    c = sub.add_parser("catalog", help="catalog utilities")
    csub = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    dump = csub.add_parser("dump", help="print the catalog in its file format")
    _common(dump)
    dump.set_defaults(func=cmd_catalog_dump)
    return parser


# group selection -----------------------------------------------------------

def resolve_group(args) -> tuple:
    """Return ``(name, group)`` for ``--group``."""
    text = args.group
    try:
        entry = find_entry(load_catalog(args.catalog), text)
        return entry.name, entry.group
    except KeyError:
        if "(" not in text:
            raise
    degree = args.degree
    shift = 1 if args.one_based else 0
    if degree is None:
        points = [int(x) for x in text.replace("(", " ").replace(")", " ").replace(";", " ")
                  .replace(",", " ").split()]
        degree = max(points) + 1 - shift
    return text, PermGroup(degree, parse_generators(text, degree, args.one_based))


def _gens(G: PermGroup, one_based: bool) -> list:
    return [g.to_cycles(one_based) for g in G.generators]


def _points(pts, one_based):
    shift = 1 if one_based else 0
    return [p + shift for p in pts]


# commands ------------------------------------------------------------------
# Each returns (payload dict, text lines).

def cmd_group_info(args, cfg):
    name, G = resolve_group(args)
    rep = structure_report(G, args.kmax, args.mindeg_cap, args.kset_cap)
    w = rep.minimal_degree_witness
    result = {
        "name": name, "degree": G.degree, "order": G.order,
        "generators": _gens(G, args.one_based),
        "transitive": rep.transitive, "primitive": rep.primitive,
        "nontrivial_block": None if rep.nontrivial_block is None
        else _points(rep.nontrivial_block, args.one_based),
        "k_homogeneous_up_to": rep.k_homogeneous_up_to,
        "minimal_degree": rep.minimal_degree,
        "minimal_degree_witness": None if w is None else w.to_cycles(args.one_based),
    }
    lines = [f"{k}: {v}" for k, v in result.items()]
    return result, lines


def cmd_orbits(args, cfg):
    name, G = resolve_group(args)
    if args.k is None:
        orbs = [_points(o, args.one_based) for o in G.orbits()]
        result = {"name": name, "k": None, "orbits": orbs, "sizes": [len(o) for o in orbs]}
        return result, [" ".join(map(str, o)) for o in orbs]
    if not 0 <= args.k <= G.degree:
        raise ValueError(f"k={args.k} outside 0..{G.degree}")
    reps = kset_orbit_reps(G, args.k, args.kset_cap)
    result = {"name": name, "k": args.k,
              "representatives": [_points(r, args.one_based) for r, _ in reps],
              "sizes": [s for _, s in reps]}
    lines = [f"{len(reps)} orbits on {args.k}-sets"]
    lines += [f"{s}\t{{{', '.join(map(str, _points(r, args.one_based)))}}}" for r, s in reps]
    return result, lines


def _parse_points(text, degree, one_based):
    shift = 1 if one_based else 0
    pts = sorted({int(x) - shift for x in text.replace(",", " ").split()})
    bad = [p for p in pts if not 0 <= p < degree]
    if bad:
        raise ValueError(f"points {bad} outside the domain of degree {degree}")
    return pts


def cmd_stab(args, cfg):
    name, G = resolve_group(args)
    Y = _parse_points(args.set, G.degree, args.one_based)
    S = setwise_stabilizer(G, Y)
    result = {"name": name, "set": _points(Y, args.one_based), "order": S.order,
              "orbit_length": G.order // S.order, "generators": _gens(S, args.one_based)}
    lines = [f"order {S.order}", f"orbit length {G.order // S.order}"]
    lines += _gens(S, args.one_based)
    return result, lines


def cmd_aut(args, cfg):
    with open(args.file) as fh:
        text = fh.read()
    if args.transversal:
        T = TransversalHypergraph.from_text(text)
        A = aut_group_transversal(T, args.max_degree, args.node_cap)
        n, m = T.n, len(T.edges)
    else:
        H = Hypergraph.from_text(text)
        A = aut_group(H, args.max_degree, args.max_edges, args.node_cap)
        n, m = H.n, len(H.edges)
    gens = _gens(A, args.one_based)
    result = {"file": args.file, "n": n, "edges": m, "order": A.order, "generators": gens}
    return result, [f"order {A.order}"] + gens


def _experiment(report, args):
    return report.to_dict(timing=args.timing)


def cmd_rigidity(args, cfg):
    name, G = resolve_group(args)
    rep = rigidity_mc(G, args.trials, args.seed, args.k, name, args.threads,
                      args.check_deduction)
    data = _experiment(rep, args)
    lines = [f"group {name} (order {G.order}, degree {G.degree})",
             f"trials {rep.trials}: Aut = G in {rep.count_aut_equal}, "
             f"Aut > G in {rep.count_aut_larger}, indeterminate {rep.indeterminate}"]
    return data, lines


def _asym_lines(rep):
    lines = [f"{rep.model} n={rep.n} t={rep.t} trials={rep.trials}",
             f"P(not rigid) = {rep.estimate:.6g} +/- {rep.stderr:.2g}"]
    if rep.formula is not None:
        lines.append(f"asymptotic formula {rep.formula_value:.6g}")
    if rep.rate is not None:
        lines.append(f"rate n^2 2^(-n/4) {float(rep.rate.value):.6g}")
    if rep.union_bound is not None:
        lines.append(f"union bound {rep.union_bound_value:.6g}"
                     + (" (vacuous)" if rep.union_bound.vacuous else ""))
    return lines


def cmd_asymmetry(args, cfg):
    rep = asymmetry_mc(args.n, args.t, args.trials, args.seed, args.exact, args.threads)
    return _experiment(rep, args), _asym_lines(rep)


def cmd_transversal_asymmetry(args, cfg):
    rep = transversal_asymmetry_mc(args.n, args.t, args.trials, args.seed, args.exact,
                                   args.threads)
    return _experiment(rep, args), _asym_lines(rep)


def cmd_exceptions(args, cfg):
    findings = scan_exceptions(load_catalog(args.catalog), args.degree_max, args.max_orbits)
    result = {"degree_max": args.degree_max, "findings": [f.to_dict() for f in findings]}
    lines = []
    for f in findings:
        mark = "EXCEPTION-CANDIDATE" if f.is_exception else "ok"
        prim = "primitive" if f.primitive else "imprimitive"
        lines.append(f"{f.group}\tn={f.n}\t{prim}\t{mark}\t{f.evidence}\t{f.witness}")
    return result, lines


def cmd_lattice(args, cfg):
    name, G = resolve_group(args)
    L = orbit_union_lattice(G, args.k, args.max_orbits)
    result = {"name": name, "k": args.k, "group_order": G.order, "orbit_sizes": L.orbit_sizes,
              "unions": [{"orbits": list(idx), "aut_order": o} for idx, o in L.unions],
              "all_unions_larger": L.all_unions_larger,
              "minimal_overgroups": [{"order": H.order, "generators": _gens(H, args.one_based)}
                                     for H in L.minimal_overgroups]}
    lines = [f"orbit sizes {L.orbit_sizes}"]
    lines += [f"union {list(idx)}: |Aut| = {o}" for idx, o in L.unions]
    lines.append(f"minimal overgroup orders {L.minimal_overgroup_orders}")
    return result, lines


def cmd_minedge(args, cfg):
    name, G = resolve_group(args)
    r = min_edge_size(G, args.kmax, name)
    if r is None:
        return ({"name": name, "k": None, "witness": None},
                [f"no k-set orbit with Aut = G for k <= {args.kmax or G.degree // 2}"])
    w = _points(r.witness, args.one_based)
    result = {"name": name, "k": r.k, "witness": w, "aut_order": r.aut_order,
              "orbit_size": r.orbit_size}
    return result, [f"k = {r.k}", f"witness {w}", f"aut order {r.aut_order}",
                    f"orbit size {r.orbit_size}"]


def cmd_bounds(args, cfg):
    n, t = args.n, args.t
    bounds = {}
    if t == 2 and n >= 4:
        bounds["asymptotic_P2"] = asymptotic_P2(n)
    bounds["union_bound_asymmetry"] = union_bound_asymmetry(n, t)
    if t >= 2 and n % t == 0:
        bounds["union_bound_transversal"] = union_bound_transversal(t, n // t)
        if t == 2:
            bounds["asymptotic_Q2_rate"] = asymptotic_Q2_rate(n)
    stab = (args.order, args.m, args.k)
    if any(v is not None for v in stab):
        if any(v is None for v in stab):
            raise ValueError("--order, --m and --k must be given together")
        bounds["stabilizer_prob_bound"] = stabilizer_prob_bound(args.order, n, args.m, args.k)
    result = {"n": n, "t": t, "bounds": {k: b.to_dict() for k, b in bounds.items()}}
    lines = []
    for k, b in bounds.items():
        lines.append(f"{k} {float(b.value):.6g}" + (" (vacuous)" if b.vacuous else ""))
        for ek, ev in b.extra.items():
            lines.append(f"  {ek} {ev if isinstance(ev, str) else f'{float(ev):.6g}'}")
    return result, lines


def cmd_catalog_dump(args, cfg):
    entries = load_catalog(args.catalog)
    text = render_catalog(entries)
    result = {"entries": [{"name": e.name, "degree": e.degree, "order": e.order,
                           "tags": sorted(e.tags), "generators": list(e.generators)}
                          for e in entries]}
    return result, text.rstrip("\n").split("\n")


# dispatch ------------------------------------------------------------------

def _render(args, cfg, payload, lines) -> str:
    if "experiment" in payload:
        payload["inputs"]["config"] = cfg.options
        report = payload
    else:
        report = {"command": cfg.subcommand, "inputs": {"config": cfg.options},
                  "result": payload, "version": __version__}
    if args.format == "json":
        return to_json(report)
    if args.format == "csv":
        if "experiment" in report:
            return to_csv([report])
        return _flat_csv(report["result"])
    return "\n".join(lines) + "\n"


def _flat_csv(result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in result.items():
        w.writerow([k, v if isinstance(v, (str, int, float, type(None))) else
                    json.dumps(v, sort_keys=True)])
    return buf.getvalue()


def run(argv: Optional[list] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (0, None) else 1
    cfg = CliConfig.from_namespace(args)
    try:
        if getattr(args, "threads", 1) < 1:
            raise ValueError("--threads must be positive")
        payload, lines = args.func(args, cfg)
        out = _render(args, cfg, payload, lines)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=stderr)
        return 2
    except (ValueError, KeyError, CatalogError, NotPreservedError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
