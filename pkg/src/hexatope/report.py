"""The standard battery, rendered to files.

run_report writes a tab separated summary plus one PNG figure per topic
into a directory and returns the written paths.  Everything here calls
the library the way a user would; nothing is recomputed by hand.  The
Agg backend keeps it headless.
"""
from __future__ import annotations

import math
import random
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle, RegularPolygon

from .brouwer import approx_fixed_point, rotation_map
from .dinterval import gap_family, nu, nu_star_tau_star, tau
from .grprops import illies_report, monotone_sweep
from .hexboard import BLACK, WHITE, Coloring2D, HexBoard2D, winner_2d
from .hexsolve import Position, solve
from .scomplex import (
    dunce_hat,
    is_q_acyclic,
    projective_plane_rp2,
    rational_betti,
)

FIGURE_DPI = 150


def _hex_center(i: int, j: int) -> tuple:
    # rows shift right by half a tile; vertical pitch keeps neighbors equidistant
    return (j + 0.5 * i, -i * math.sqrt(3) / 2)


def render_hex_board(coloring: Coloring2D, path, outfile: Path,
                     title: str = "") -> None:
    """One board with its stones; a winning path is drawn through centers."""
    board = coloring.board
    fig, ax = plt.subplots(figsize=(1.2 * board.cols + 1, 1.2 * board.rows + 1))
    for i in range(board.rows):
        for j in range(board.cols):
            x, y = _hex_center(i, j)
            ax.add_patch(RegularPolygon((x, y), 6, radius=0.55,
                                        facecolor="#e8dcc4", edgecolor="#6b5d45"))
            stone = coloring.color(i, j)
            if stone == WHITE:
                ax.add_patch(Circle((x, y), 0.32, facecolor="white",
                                    edgecolor="black", linewidth=1.2, zorder=3))
            elif stone == BLACK:
                ax.add_patch(Circle((x, y), 0.32, facecolor="black",
                                    edgecolor="black", zorder=3))
    if path:
        xs, ys = zip(*(_hex_center(i, j) for i, j in path))
        ax.plot(xs, ys, color="crimson", linewidth=3, zorder=4)
    ax.set_title(title or "White joins left-right, Black top-bottom")
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.axis("off")
    fig.savefig(outfile, dpi=FIGURE_DPI, bbox_inches="tight")
    plt.close(fig)


def render_rotation_field(point, outfile: Path) -> None:
    """Displacement quiver of the quarter turn with the found fixed point."""
    f = rotation_map()
    ticks = [k / 16 for k in range(17)]
    xs, ys, us, vs = [], [], [], []
    for a in ticks:
        for b in ticks:
            fa, fb = f((a, b))
            xs.append(a)
            ys.append(b)
            us.append(fa - a)
            vs.append(fb - b)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.quiver(xs, ys, us, vs, angles="xy", scale_units="xy", scale=4,
              color="#46628a", width=0.003)
    ax.plot(*point, marker="*", markersize=16, color="crimson")
    ax.set_title("quarter turn displacement, fixed point starred")
    ax.set_aspect("equal")
    fig.savefig(outfile, dpi=FIGURE_DPI, bbox_inches="tight")
    plt.close(fig)


def render_family(family, points, outfile: Path) -> None:
    """Members as stacked segments per line, piercing points as dashed rules."""
    palette = plt.cm.tab10.colors
    fig, axes = plt.subplots(family.d, 1, figsize=(7, 1.2 * family.d + 1),
                             squeeze=False, sharex=True)
    for line in range(family.d):
        ax = axes[line][0]
        for idx, member in enumerate(family.members):
            comp = member.components[line]
            if comp is not None:
                ax.hlines(idx + 1, float(comp[0]), float(comp[1]), linewidth=6,
                          color=palette[idx % len(palette)])
        for pt_line, x in points:
            if pt_line == line:
                ax.axvline(float(x), color="crimson", linestyle="--")
        ax.set_ylabel(f"line {line}")
        ax.set_ylim(0, len(family.members) + 1)
        ax.set_yticks([])
    axes[-1][0].set_xlabel("members per line, dashed rules form a transversal")
    fig.savefig(outfile, dpi=FIGURE_DPI, bbox_inches="tight")
    plt.close(fig)


def render_sweep(report, outfile: Path) -> None:
    """Complexity histogram of the monotone invariant families."""
    cs = [c for c, _ in report.complexity_histogram]
    counts = [k for _, k in report.complexity_histogram]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(cs, counts, color="#46628a")
    ax.set_xlabel("argument complexity")
    ax.set_ylabel("families")
    ax.set_title(f"monotone invariant families on {report.n} vertices "
                 f"(m = {report.m})")
    ax.set_xticks(cs)
    fig.savefig(outfile, dpi=FIGURE_DPI, bbox_inches="tight")
    plt.close(fig)


def _random_full_game(rows: int, cols: int, seed: int) -> Coloring2D:
    p = Position.empty(HexBoard2D(rows, cols))
    rng = random.Random(seed)
    while not p.coloring.is_full():
        p = p.after(*rng.choice(p.coloring.grey_tiles()))
    return p.coloring


def run_report(outdir: Path, *, seed: int = 0) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows: list[tuple] = []
    written: list[Path] = []

    # hex: solved openings and one full playout for the picture
    for n in (2, 3):
        res = solve(Position.empty(HexBoard2D(n, n)))
        rows.append(("hex", f"empty-{n}x{n}-winner", res.winner))
        rows.append(("hex", f"empty-{n}x{n}-nodes", res.nodes))
    coloring = _random_full_game(3, 3, seed)
    win = winner_2d(coloring.board, coloring)
    rows.append(("hex", "playout-3x3-winner", win.winner))
    fig = outdir / "hex_board.png"
    render_hex_board(coloring, win.path, fig,
                     title=f"random playout, {win.winner} crossed")
    written.append(fig)

    # brouwer: the quarter turn pinned at the center
    point = approx_fixed_point(rotation_map(), 1e-3)
    residual = rotation_map().residual(point).value
    rows.append(("brouwer", "rotation-point",
                 " ".join(f"{c:.6f}" for c in point)))
    rows.append(("brouwer", "rotation-residual", f"{residual:.2e}"))
    fig = outdir / "brouwer_rotation.png"
    render_rotation_field(point, fig)
    written.append(fig)

    # d-intervals: the gap family and its matching numbers
    family = gap_family()
    nu_val, _ = nu(family)
    tau_val, tau_pts = tau(family)
    frac = nu_star_tau_star(family)
    rows.append(("dint", "gap-nu", nu_val))
    rows.append(("dint", "gap-tau", tau_val))
    rows.append(("dint", "gap-fractional", str(frac.value)))
    fig = outdir / "dinterval_family.png"
    render_family(family, tau_pts, fig)
    written.append(fig)

    # properties: the exhaustive sweep and the twelve-element family
    sweep = monotone_sweep(4)
    rows.append(("props", "sweep4-families", sweep.family_count))
    rows.append(("props", "sweep4-violations", len(sweep.violations)))
    illies = illies_report()
    rows.append(("props", "illies-c", illies.c))
    rows.append(("props", "illies-members", sum(illies.counts)))
    fig = outdir / "sweep_histogram.png"
    render_sweep(sweep, fig)
    written.append(fig)

    # complexes: the two classical probes
    rp2 = projective_plane_rp2()
    rows.append(("complex", "rp2-euler", rp2.euler_characteristic()))
    rows.append(("complex", "rp2-betti", " ".join(map(str, rational_betti(rp2)))))
    rows.append(("complex", "rp2-qacyclic", is_q_acyclic(rp2)))
    rows.append(("complex", "dunce-euler", dunce_hat().euler_characteristic()))

    summary = outdir / "summary.tsv"
    summary.write_text("".join(f"{s}\t{k}\t{v}\n" for s, k, v in rows))
    written.insert(0, summary)
    return written
