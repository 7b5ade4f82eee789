"""Command-line entry point: ``cosmotope <verb> --graph SPEC [options]``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .canonical import Pole, format_fraction, independence_check, polytope_canonical_value, sample_points
from .facets import closed_volume, cycle_facets, decorate, path_facets, tree_facets
from .graphs import (Graph, GraphError, cycle_graph, edge_key, parse_graph_json,
                     path_graph, root_order, star_graph)
from .polytope import (DILATE_MAX_DIM, BRUTE_VOLUME_MAX_DIM, GuardExceeded, brute_volume,
                       dimension, generators, hstar_ehrhart)
from .toric import (NotGoodOrderError, OrderShapeError, T, Y, Z, ZE,
                    all_generators, format_poly, generate_basis, generic_good_order,
                    minimal_nonfaces, parse_generator, shuffled_good_order, specialized_order,
                    verify_groebner)
from .triangulation import (enumerate_facets, hstar_from_triangulation,
                            is_unimodular_simplex)

VERBS = ("facets", "volume", "hstar", "gb-verify", "nonfaces", "canonical-eval", "cross-check")
# the volume verb runs the facet search only up to this polytope dimension
VOLUME_ENGINE_MAX_DIM = 10


class UsageError(Exception):
    pass


def load_graph(spec: str) -> tuple[Graph, str | None, int | None]:
    """Resolve ``path:n``, ``cycle:n``, ``star:n`` or a JSON file path."""
    if ":" in spec and spec.split(":", 1)[0] in ("path", "cycle", "star"):
        kind, num = spec.split(":", 1)
        try:
            n = int(num)
        except ValueError:
            raise UsageError(f"bad builtin graph {spec!r}") from None
        if kind == "path":
            if n < 1:
                raise UsageError("path:n needs n >= 1")
            return path_graph(n), "path", n
        if kind == "cycle":
            return cycle_graph(n), "cycle", n
        if n < 1:
            raise UsageError("star:n needs n >= 1")
        return star_graph(n), "tree", n
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"graph file {spec!r} not found")
    g = parse_graph_json(path.read_text())
    return g, detect_shape(g), None


def detect_shape(g: Graph) -> str | None:
    n = g.vertex_count
    if set(g.edges) == {(i, i + 1) for i in range(1, n)} and n >= 2:
        return "path"
    if n >= 3 and len(g.edges) == n and set(g.edges) == {edge_key(i, i % n + 1) for i in range(1, n + 1)}:
        return "cycle"
    if g.is_tree() and n >= 2:
        return "tree"
    return None


def resolve_order(g: Graph, shape: str | None, spec: str):
    """Returns (TermOrder, kind, root)."""
    if spec == "auto":
        if shape == "path":
            return specialized_order(g, "path"), "path", 1
        if shape == "cycle":
            return specialized_order(g, "cycle"), "cycle", None
        if shape == "tree":
            root = min(g.leaves())
            return specialized_order(g, "tree", root), "tree", root
        high = [x for x in all_generators(g) if x.family in (Y, T)]
        low = [x for x in all_generators(g) if x.family in (Z, ZE)]
        return generic_good_order(high + low, g, name="generic"), "generic", None
    if spec in ("path", "cycle"):
        return specialized_order(g, spec), spec, 1 if spec == "path" else None
    if spec.startswith("tree:"):
        root = int(spec[5:])
        return specialized_order(g, "tree", root), "tree", root
    if spec.startswith("shuffled:"):
        return shuffled_good_order(g, int(spec[9:])), "generic", None
    if spec.startswith("lex:"):
        text = Path(spec[4:]).read_text()
        # tokens are separated by whitespace or commas outside brackets
        seq = [parse_generator(tok) for tok in re.findall(r"[^\s,\[]+(?:\[[^\]]*\])?", text)]
        return generic_good_order(seq, g, name=f"lex:{spec[4:]}"), "generic", None
    raise UsageError(f"unknown order {spec!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosmotope", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--graph", required=True,
                   help="JSON graph file, or builtin path:n, cycle:n, star:n")
    p.add_argument("--order", default="auto",
                   help="auto | path | cycle | tree:ROOT | shuffled:SEED | lex:FILE")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--points", type=int, default=None, help="sample count for canonical-eval")
    return p


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "canonical-eval" and (args.seed is None or args.points is None):
        parser.error("canonical-eval requires --seed and --points")
    if args.points is not None and args.points < 1:
        parser.error("--points must be positive")
    if args.seed is None:
        args.seed = 0
    return args


def _facet_names(f) -> list[str]:
    return [str(x) for x in sorted(f)]


def run_facets(g, shape, n, order, kind, root, args):
    tri = enumerate_facets(g, order)
    return {
        "order": order.descriptor(),
        "count": len(tri.facets),
        "facets": [{"generators": _facet_names(f), "drawing": decorate(f, g).render()}
                   for f in tri.facets],
    }, True


def run_volume(g, shape, n, order, kind, root, args):
    d = dimension(g)
    if d <= VOLUME_ENGINE_MAX_DIM:
        tri = enumerate_facets(g, order)
        return {"volume": len(tri.facets), "method": "triangulation"}, True
    if shape in ("path", "cycle"):
        m = len(g.edges) if shape == "path" else g.vertex_count
        return {"volume": closed_volume(shape, m), "method": "closed_form",
                "note": f"facet search skipped: dimension {d} > {VOLUME_ENGINE_MAX_DIM}"}, True
    raise GuardExceeded("volume-engine-dimension", f"dimension {d} > {VOLUME_ENGINE_MAX_DIM} and no closed form")


def run_hstar(g, shape, n, order, kind, root, args):
    tri = enumerate_facets(g, order)
    from_tri = list(hstar_from_triangulation(tri))
    out = {"hstar_triangulation": from_tri}
    ok = True
    if dimension(g) <= DILATE_MAX_DIM:
        from_ehrhart = list(hstar_ehrhart(g))
        out["hstar_ehrhart"] = from_ehrhart
        ok = from_ehrhart == from_tri
        out["agree"] = ok
    else:
        out["note"] = f"Ehrhart count skipped: dimension {dimension(g)} > {DILATE_MAX_DIM}"
    return out, ok


def run_gb_verify(g, shape, n, order, kind, root, args):
    basis = generate_basis(g)
    rep = verify_groebner(basis, order, g)
    return {
        "order": order.descriptor(),
        "basis_size": len(basis),
        "pairs_checked": rep.pairs_checked,
        "passed": rep.passed,
        "failing_pairs": [{"first": str(basis[a]), "second": str(basis[b]), "remainder": format_poly(r)}
                          for a, b, r in rep.failing_pairs],
    }, rep.passed


def run_nonfaces(g, shape, n, order, kind, root, args):
    nf = minimal_nonfaces(generate_basis(g), order)
    return {"order": order.descriptor(), "count": len(nf),
            "nonfaces": [_facet_names(s) for s in nf]}, True


def run_canonical(g, shape, n, order, kind, root, args):
    tri = enumerate_facets(g, order)
    table = generators(g)
    values = []
    for p in sample_points(g, args.points, args.seed):
        entry = {"point": [format_fraction(x) for x in p]}
        try:
            entry["value"] = format_fraction(polytope_canonical_value(tri, table, p))
        except Pole as exc:
            entry["pole"] = str(exc)
        values.append(entry)
    return {"order": order.descriptor(), "facets": len(tri.facets), "values": values}, \
        all("value" in v for v in values)


def run_cross_check(g, shape, n, order, kind, root, args):
    checks = {}
    tri = enumerate_facets(g, order)
    count = len(tri.facets)
    facets = set(tri.facets)
    out = {"order": order.descriptor(), "facet_count": count}
    table = generators(g)
    checks["unimodular"] = all(is_unimodular_simplex(f, table) for f in tri.facets)
    if kind == "path":
        checks["path_rules"] = facets == set(path_facets(len(g.edges)))
    if kind == "cycle":
        checks["cycle_rules"] = facets == set(cycle_facets(g.vertex_count))
    if kind == "tree":
        checks["tree_rules"] = facets == set(tree_facets(root_order(g, root)))
    if shape in ("path", "cycle"):
        m = len(g.edges) if shape == "path" else g.vertex_count
        cv = closed_volume(shape, m)
        out["closed_volume"] = cv
        checks["closed_volume"] = cv == count
    if dimension(g) <= BRUTE_VOLUME_MAX_DIM:
        bv = brute_volume(g)
        out["brute_volume"] = bv
        checks["brute_volume"] = bv == count
    hs = list(hstar_from_triangulation(tri))
    out["hstar_triangulation"] = hs
    checks["hstar_sum"] = sum(hs) == count
    if dimension(g) <= DILATE_MAX_DIM:
        he = list(hstar_ehrhart(g))
        out["hstar_ehrhart"] = he
        checks["hstar_ehrhart"] = he == hs
    alt = shuffled_good_order(g, args.seed)
    alt_tri = enumerate_facets(g, alt)
    checks["order_independent_volume"] = len(alt_tri.facets) == count
    pts = sample_points(g, 3, args.seed)
    checks["canonical_independent"] = independence_check(g, [order, alt], pts,
                                                         [tri, alt_tri]).passed
    out["checks"] = checks
    return out, all(checks.values())


HANDLERS = {
    "facets": run_facets,
    "volume": run_volume,
    "hstar": run_hstar,
    "gb-verify": run_gb_verify,
    "nonfaces": run_nonfaces,
    "canonical-eval": run_canonical,
    "cross-check": run_cross_check,
}


def run_command(args) -> tuple[dict, int]:
    report = {"version": __version__, "command": args.verb, "graph": args.graph,
              "order_spec": args.order, "seed": args.seed}
    try:
        g, shape, n = load_graph(args.graph)
        order, kind, root = resolve_order(g, shape, args.order)
        report["vertices"] = g.vertex_count
        report["edges"] = [f"{a}-{b}" for a, b in g.edges]
        result, ok = HANDLERS[args.verb](g, shape, n, order, kind, root, args)
    except (UsageError, GraphError, OrderShapeError, OSError, ValueError, KeyError) as exc:
        if isinstance(exc, GuardExceeded):
            report["error"] = f"guard exceeded: {exc}"
            return report, 1
        if isinstance(exc, NotGoodOrderError):
            report["error"] = f"refused: {exc}"
            return report, 1
        report["error"] = str(exc)
        return report, 2
    report["result"] = result
    report["passed"] = ok
    return report, 0 if ok else 1


def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            nested = isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))
            if nested and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def emit_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False) + "\n"
    return "\n".join(_text(report)) + "\n"


def main(argv=None) -> int:
    args = parse_args(sys.argv[1:] if argv is None else argv)
    report, code = run_command(args)
    sys.stdout.write(emit_report(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
