"""Figure and CSV rendering for the report subcommand.

Writes, into a target directory:

* ``bratteli.png`` — the quotient diagram of a seed, levels top to bottom;
* ``bratteli.csv`` — level sizes and edge multiplicities, one row per edge;
* ``moduli.png``   — the modulus solutions x1(t), x2(t) over [4, t_max];
* ``moduli.csv``   — the sampled sweep with residuals.

matplotlib is imported lazily with the Agg backend so that library use never
touches a display.
"""

from __future__ import annotations

import csv
import os

from . import annulus, bratteli, cluster

__all__ = ["write_report", "draw_bratteli", "draw_moduli_sweep"]


def _figure():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def draw_bratteli(diagram, path):
    """Render a leveled diagram to an image file."""
    plt = _figure()
    fig, ax = plt.subplots(figsize=(6, 1.2 * diagram.num_levels() + 1))
    positions = {}
    for m, size in enumerate(diagram.level_sizes):
        for i in range(size):
            positions[(m, i)] = (i - (size - 1) / 2.0, -m)
    for m in range(len(diagram.edges)):
        for (i, j), mult in sorted(diagram.edges[m].items()):
            x0, y0 = positions[(m, i)]
            x1, y1 = positions[(m + 1, j)]
            ax.plot([x0, x1], [y0, y1], color="tab:gray", zorder=1)
            if mult > 1:
                ax.text(
                    (x0 + x1) / 2.0,
                    (y0 + y1) / 2.0,
                    str(mult),
                    fontsize=8,
                    ha="center",
                    color="tab:red",
                )
    xs = [p[0] for p in positions.values()]
    ys = [p[1] for p in positions.values()]
    ax.scatter(xs, ys, s=80, color="tab:blue", zorder=2)
    ax.set_title(f"quotient diagram, level sizes {diagram.level_sizes}")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def draw_moduli_sweep(t_values, solutions, path):
    """Plot x1(t) and x2(t) over a sweep of admissible moduli."""
    plt = _figure()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t_values, [s.x1 for s in solutions], label="x1(t)")
    ax.plot(t_values, [s.x2 for s in solutions], label="x2(t)")
    ax.axvline(4.0, color="tab:gray", linestyle=":", label="t = 4")
    ax.set_xlabel("t")
    ax.set_title("modulus equation solutions")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(seed_path, depth, mode, t_max, out_dir):
    """Build the diagram and moduli artifacts; return the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    with open(seed_path, "r", encoding="utf-8") as fh:
        seed = cluster.seed_from_json(fh.read())
    tree = bratteli.build_mutation_tree(seed, depth)
    diagram = bratteli.quotient_to_bratteli(tree, mode=mode)

    paths = []
    png = os.path.join(out_dir, "bratteli.png")
    draw_bratteli(diagram, png)
    paths.append(png)

    path = os.path.join(out_dir, "bratteli.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["level", "from", "to", "mult"])
        for m in range(len(diagram.edges)):
            for (i, j), mult in sorted(diagram.edges[m].items()):
                writer.writerow([m, i, j, mult])
    paths.append(path)

    if t_max < 4.0:
        raise ValueError("t_max must be at least 4")
    samples = 200
    t_values = [4.0 + (t_max - 4.0) * k / (samples - 1) for k in range(samples)]
    solutions = [annulus.solve_moduli(t) for t in t_values]
    png = os.path.join(out_dir, "moduli.png")
    draw_moduli_sweep(t_values, solutions, png)
    paths.append(png)

    path = os.path.join(out_dir, "moduli.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "x1", "x2", "residual1", "residual2"])
        for s in solutions:
            writer.writerow(
                [f"{s.t:.12f}", f"{s.x1:.12f}", f"{s.x2:.12f}",
                 f"{s.residual1:.3e}", f"{s.residual2:.3e}"]
            )
    paths.append(path)
    return paths
