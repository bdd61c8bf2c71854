"""Command line front door, one subcommand group per module.

Every command prints a single JSON record on stdout; --format text renders
the same record as key/value lines for eyeballing.  --seed pins every
random choice and --budget caps search effort wherever a command searches.
Fractions are printed as p/q strings, exactness intact.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import click

from . import dinterval, grprops, setfam
from .brouwer import BUILTIN_MAPS, BudgetExceeded, CubeMap, affine_map, approx_fixed_point
from .hexboard import WHITE, HexBoard2D, coloring_from_text, winner_2d
from .hexsolve import CapExceeded, Position, pairing_move, solve
from .scomplex import (
    SimplicialComplex,
    complex_from_text,
    dunce_hat,
    is_collapsible,
    is_nonevasive,
    is_q_acyclic,
    projective_plane_rp2,
    rational_betti,
)
from .setfam import SetFamily, argument_complexity, divisibility_certificate
from .setfam import is_evasive as family_is_evasive
from .setfam import optimal_tree, tree_depth, tree_to_text


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def emit(ctx: click.Context, record: dict) -> None:
    record = _plain(record)
    if ctx.obj["fmt"] == "text":
        width = max(len(k) for k in record)
        for k, v in record.items():
            if isinstance(v, (dict, list)):
                v = json.dumps(v)
            click.echo(f"{k:<{width}}  {v}")
    else:
        click.echo(json.dumps(record))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise click.ClickException(str(exc))


@click.group()
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for every random choice.")
@click.option("--budget", type=int, default=None,
              help="Search effort cap (nodes, evaluations or states).")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="json", show_default=True, help="Output rendering.")
@click.pass_context
def main(ctx, seed, budget, fmt):
    """Workbench for HEX games, fixed points, evasiveness and d-intervals."""
    ctx.obj = {"seed": seed, "budget": budget, "fmt": fmt}


# ----------------------------------------------------------------------- hex


@main.group("hex")
def hex_group():
    """Winner detection and game solving on 2-D boards."""


def _solve_file(ctx, boardfile):
    try:
        coloring = coloring_from_text(_read(boardfile))
        p = Position.from_coloring(coloring.board, coloring)
        res = solve(p, cap=coloring.board.rows * coloring.board.cols,
                    node_budget=ctx.obj["budget"])
    except (ValueError, CapExceeded) as exc:
        raise click.ClickException(str(exc))
    return {"winner": res.winner,
            "move": list(res.move) if res.move else None,
            "nodes": res.nodes}


@hex_group.command("solve")
@click.argument("boardfile", type=click.Path(exists=True))
@click.pass_context
def hex_solve(ctx, boardfile):
    """Winner under optimal play for the position in BOARDFILE."""
    emit(ctx, _solve_file(ctx, boardfile))


@hex_group.command("best")
@click.argument("boardfile", type=click.Path(exists=True))
@click.pass_context
def hex_best(ctx, boardfile):
    """A winning move for the mover in BOARDFILE, when one exists."""
    emit(ctx, _solve_file(ctx, boardfile))


@hex_group.command("pairing")
@click.option("--rows", type=int, required=True)
@click.option("--cols", type=int, required=True)
@click.pass_context
def hex_pairing(ctx, rows, cols):
    """Random White against the pairing strategy, played to the full board."""
    import random

    try:
        p = Position.empty(HexBoard2D(rows, cols))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    rng = random.Random(ctx.obj["seed"])
    record, last = [], None
    try:
        while not p.coloring.is_full():
            if p.to_move == WHITE:
                last = rng.choice(p.coloring.grey_tiles())
                move = last
            else:
                move = pairing_move(p.board, p, last)
            record.append([p.to_move, *move])
            p = p.after(*move)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    win = winner_2d(p.board, p.coloring)
    emit(ctx, {"winner": win.winner, "moves": len(record),
               "record": record, "path": [list(t) for t in win.path]})


# ------------------------------------------------------------------- brouwer


@main.group("brouwer")
def brouwer_group():
    """Fixed point approximation for self-maps of the cube."""


def _build_map(name: str, dim: int, matrix: str | None) -> CubeMap:
    if name == "affine":
        if matrix is None:
            raise click.UsageError("--map affine needs --matrix FILE")
        spec = json.loads(_read(matrix))
        return affine_map(spec["matrix"], spec["offset"])
    if name in BUILTIN_MAPS:
        try:
            return BUILTIN_MAPS[name](dim)
        except ValueError as exc:
            raise click.ClickException(str(exc))
    # anything else is an expression:  "lambda x: (x[1], x[0])"
    try:
        fn = eval(name, {"math": math})  # desk tool, caller's own machine
    except Exception as exc:
        raise click.UsageError(f"--map {name!r} is neither a builtin "
                               f"({', '.join(BUILTIN_MAPS)}, affine) nor a "
                               f"valid expression: {exc}")
    if not callable(fn):
        raise click.UsageError(f"--map expression {name!r} is not callable")
    return CubeMap(dim, fn)


@brouwer_group.command("fix")
@click.option("--map", "map_name", default="rotation", show_default=True,
              help="Builtin name, 'affine', or a Python expression in x.")
@click.option("--dim", type=int, default=2, show_default=True)
@click.option("--eps", type=float, default=1e-3, show_default=True)
@click.option("--matrix", type=click.Path(exists=True), default=None,
              help="JSON {matrix, offset} for --map affine.")
@click.pass_context
def brouwer_fix(ctx, map_name, dim, eps, matrix):
    """A point moved less than eps by the map, in the max norm."""
    f = _build_map(map_name, dim, matrix)
    kwargs = {}
    if ctx.obj["budget"]:
        kwargs["max_evals"] = ctx.obj["budget"]
    try:
        point = approx_fixed_point(f, eps, **kwargs)
    except (BudgetExceeded, ValueError) as exc:
        raise click.ClickException(str(exc))
    emit(ctx, {"point": list(point), "residual": f.residual(point).value,
               "eps": eps})


# ---------------------------------------------------------------------- dint


@main.group("dint")
def dint_group():
    """Packing and piercing of d-interval families."""


def _family(path: str) -> dinterval.DIntervalFamily:
    try:
        return dinterval.parse_family(_read(path))
    except ValueError as exc:
        raise click.ClickException(str(exc))


@dint_group.command("nu")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def dint_nu(ctx, familyfile):
    """Largest pairwise disjoint subfamily."""
    value, witness = dinterval.nu(_family(familyfile))
    emit(ctx, {"value": value, "witness": list(witness)})


@dint_group.command("tau")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def dint_tau(ctx, familyfile):
    """Fewest points meeting every member."""
    value, points = dinterval.tau(_family(familyfile))
    emit(ctx, {"value": value, "points": [list(pt) for pt in points]})


@dint_group.command("lp")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def dint_lp(ctx, familyfile):
    """Common value of the fractional relaxations, exact rationals."""
    sol = dinterval.nu_star_tau_star(_family(familyfile))
    emit(ctx, {"value": sol.value, "packing": list(sol.packing),
               "points": [list(pt) for pt in sol.points],
               "transversal": list(sol.transversal)})


@dint_group.command("kaiser")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def dint_kaiser(ctx, familyfile):
    """Trap-built transversal with its size bound, exactly verified."""
    try:
        res = dinterval.kaiser_transversal(_family(familyfile))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    emit(ctx, {"size": res.size, "bound": res.bound, "nu": res.nu,
               "fallback": res.fallback,
               "transversal": [list(pt) for pt in res.transversal]})


@dint_group.command("multipoint")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def dint_multipoint(ctx, familyfile):
    """d points meeting every member at once, when the k-wise overlap holds."""
    res = dinterval.multipoint_search(_family(familyfile))
    emit(ctx, {"k": res.k, "hypothesis": res.hypothesis,
               "points": [list(pt) for pt in res.points] if res.points else None})


@dint_group.command("lowerbound")
@click.option("--d", type=int, required=True)
@click.option("--copies", type=int, default=1, show_default=True,
              help="Disjoint copies of the construction.")
@click.option("--out", type=click.Path(), default=None,
              help="Also write the family file here.")
@click.pass_context
def dint_lowerbound(ctx, d, copies, out):
    """A family witnessing tau > nu at this dimension."""
    try:
        built = dinterval.lower_bound_family(d, copies)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    text = dinterval.format_family(built.family)
    if out:
        Path(out).write_text(text)
    emit(ctx, {"d": d, "members": len(built.family.members),
               "nu": built.nu, "tau": built.tau, "family": text})


# --------------------------------------------------------------------- props


@main.group("props")
def props_group():
    """Argument complexity of invariant set families."""


_GRAPH_PROPS = {
    "no-edge": grprops.no_edge,
    "connected": grprops.connected,
    "planar": grprops.planar,
    "scorpion": grprops.scorpion,
    "star-union": grprops.star_union,
}
_DIGRAPH_PROPS = {
    "sink": grprops.has_sink,
    "dicycle": grprops.has_directed_cycle,
}


def _family_record(ctx, fam: SetFamily) -> dict:
    counts = fam.generating_polynomial()
    try:
        c = argument_complexity(fam, state_cap=ctx.obj["budget"])
    except ValueError as exc:
        return {"c": None, "m": fam.m, "evasive": None,
                "counts": counts, "note": str(exc)}
    return {"c": c, "m": fam.m, "evasive": c == fam.m, "counts": counts}


@props_group.command("build")
@click.option("--kind", type=click.Choice([grprops.GRAPH, grprops.DIGRAPH,
                                           grprops.BIPARTITE]), required=True)
@click.option("--n", "size", type=str, required=True,
              help="Vertex count; RxC for bipartite.")
@click.option("--name", required=True)
@click.option("--r", type=int, default=1, show_default=True,
              help="Row threshold for the bipartite property.")
@click.pass_context
def props_build(ctx, kind, size, name, r):
    """One named property, its counts and exact complexity."""
    try:
        if kind == grprops.BIPARTITE:
            if name != "threshold":
                raise click.UsageError("bipartite properties: threshold")
            rows, _, cols = size.partition("x")
            prop = grprops.complete_bipartite_threshold(int(rows), int(cols), r)
        else:
            table = _GRAPH_PROPS if kind == grprops.GRAPH else _DIGRAPH_PROPS
            if name not in table:
                raise click.UsageError(
                    f"{kind} properties: {', '.join(sorted(table))}")
            prop = table[name](int(size))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    record = {"name": name, "kind": kind,
              "members": len(prop.family.members)}
    record.update(_family_record(ctx, prop.family))
    emit(ctx, record)


@props_group.command("sweep")
@click.option("--n", type=int, required=True)
@click.pass_context
def props_sweep(ctx, n):
    """Every monotone invariant graph property at this vertex count."""
    try:
        rep = grprops.monotone_sweep(n)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    emit(ctx, {"n": rep.n, "m": rep.m, "classes": rep.class_count,
               "families": rep.family_count, "nontrivial": rep.nontrivial_count,
               "histogram": [list(hc) for hc in rep.complexity_histogram],
               "violations": [list(v) for v in rep.violations]})


@props_group.command("illies")
@click.pass_context
def props_illies(ctx):
    """The twelve-element shift-invariant family probed below twelve."""
    rep = grprops.illies_report()
    emit(ctx, {"c": rep.c, "m": rep.family.m,
               "evasive": rep.c == rep.family.m,
               "counts": list(rep.counts),
               "alternating": rep.family.euler_count(),
               "nonMonotoneWitness": [sorted(rep.non_monotone[0]),
                                      sorted(rep.non_monotone[1])]})


@props_group.command("yao")
@click.option("--m", "rows", type=int, required=True)
@click.option("--n", "cols", type=int, required=True)
@click.option("--r", type=int, default=1, show_default=True)
@click.pass_context
def props_yao(ctx, rows, cols, r):
    """Fixed complex of the rotation action and its Euler obstruction."""
    try:
        rep = grprops.yao_fixed_complex(rows, cols, r)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    emit(ctx, {"rows": rows, "cols": cols, "r": r,
               "chiReduced": rep.chi_reduced, "closedForm": rep.closed_form,
               "skeleton": rep.skeleton.f_vector(),
               "subdivision": rep.subdivision.f_vector()})


# ------------------------------------------------------------------- complex


@main.group("complex")
def complex_group():
    """Simplicial complexes: homology, collapsibility, non-evasiveness."""


_BUILTIN_COMPLEXES = {
    "rp2": projective_plane_rp2,
    "dunce": dunce_hat,
}


def _load_complex(file: str | None, builtin: str | None) -> SimplicialComplex:
    if (file is None) == (builtin is None):
        raise click.UsageError("give either COMPLEXFILE or --builtin")
    if file is not None:
        try:
            return complex_from_text(_read(file))
        except ValueError as exc:
            raise click.ClickException(str(exc))
    if builtin in _BUILTIN_COMPLEXES:
        return _BUILTIN_COMPLEXES[builtin]()
    if builtin.startswith("simplex:"):
        return SimplicialComplex.simplex(int(builtin.split(":", 1)[1]))
    raise click.UsageError(
        f"builtins: {', '.join(_BUILTIN_COMPLEXES)}, simplex:N")


@complex_group.command("info")
@click.argument("complexfile", type=click.Path(exists=True), required=False)
@click.option("--builtin", default=None)
@click.pass_context
def complex_info(ctx, complexfile, builtin):
    """Face counts, Euler characteristic and rational homology ranks."""
    K = _load_complex(complexfile, builtin)
    emit(ctx, {"vertices": len(K.vertices()), "fvector": K.f_vector(),
               "euler": K.euler_characteristic(),
               "betti": rational_betti(K), "qAcyclic": is_q_acyclic(K)})


@complex_group.command("props")
@click.argument("complexfile", type=click.Path(exists=True), required=False)
@click.option("--builtin", default=None)
@click.pass_context
def complex_props(ctx, complexfile, builtin):
    """Non-evasiveness and collapsibility, exact searches with caps."""
    K = _load_complex(complexfile, builtin)
    record = {"vertices": len(K.vertices()), "euler": K.euler_characteristic()}
    try:
        record["nonevasive"] = is_nonevasive(K)
    except ValueError as exc:
        record["nonevasive"] = None
        record["nonevasiveNote"] = str(exc)
    collapse = is_collapsible(K)
    record["collapsible"] = {"collapsible": True, "not_collapsible": False,
                             "unknown": None}[collapse.status]
    emit(ctx, record)


# -------------------------------------------------------------------- setfam


@main.group("setfam")
def setfam_group():
    """Decision-tree complexity of explicit set families."""


def _load_family(path: str) -> SetFamily:
    try:
        return SetFamily.from_text(_read(path))
    except ValueError as exc:
        raise click.ClickException(str(exc))


@setfam_group.command("complexity")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def setfam_complexity(ctx, familyfile):
    """Exact argument complexity and the (1+t) divisibility certificate."""
    fam = _load_family(familyfile)
    record = {"members": len(fam.members)}
    record.update(_family_record(ctx, fam))
    if record["c"] is not None:
        _, quotient = divisibility_certificate(fam, state_cap=ctx.obj["budget"])
        record["quotient"] = quotient
    emit(ctx, record)


@setfam_group.command("tree")
@click.argument("familyfile", type=click.Path(exists=True))
@click.pass_context
def setfam_tree(ctx, familyfile):
    """An optimal decision tree in the portable text form."""
    fam = _load_family(familyfile)
    try:
        tree = optimal_tree(fam, state_cap=ctx.obj["budget"])
    except ValueError as exc:
        raise click.ClickException(str(exc))
    emit(ctx, {"c": tree_depth(tree), "m": fam.m,
               "evasive": family_is_evasive(fam, state_cap=ctx.obj["budget"]),
               "tree": tree_to_text(tree)})


# --------------------------------------------------------------------- serve


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--data-dir", type=click.Path(), default=None,
              help="Session storage root, else HEXATOPE_DATA_DIR.")
def serve(host, port, data_dir):
    """Run the HTTP game service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir), host=host, port=port)


# -------------------------------------------------------------------- report


@main.command("report")
@click.option("--out", type=click.Path(), required=True,
              help="Directory for the figures and the summary table.")
@click.pass_context
def report_command(ctx, out):
    """Render the standard battery: figures plus a delimited summary."""
    from .report import run_report

    written = run_report(Path(out), seed=ctx.obj["seed"])
    emit(ctx, {"written": [str(p) for p in written]})


if __name__ == "__main__":
    main()
