"""Static SVG figures: support ticks, localization disks and zero markers."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle as CirclePatch  # noqa: E402

from ._mp import to_mp  # noqa: E402

# fixed salt and no Date field keep the SVG bytes reproducible
plt.rcParams["svg.hashsalt"] = "cauchyloc"


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_localization(report, grid, path, title=""):
    fig, ax = plt.subplots(figsize=(8, 3))
    xs = [float(to_mp(t)) for t in grid.centers]
    ax.plot(xs, [0] * len(xs), "|", color="k", ms=10, label="support")
    for t, r, idx in zip(xs, grid.radii, grid.indices):
        color = "tab:green" if idx in report.occupied else "tab:gray"
        ax.add_patch(CirclePatch((t, 0), float(r), fill=False, color=color))
    if report.inventory is not None:
        zs = [complex(r.location) for r in report.inventory.zeros]
        stray_ids = {id(r) for r, _ in report.strays}
        inside = [z for z, r in zip(zs, report.inventory.zeros) if id(r) not in stray_ids]
        out = [z for z, r in zip(zs, report.inventory.zeros) if id(r) in stray_ids]
        ax.plot([z.real for z in inside], [z.imag for z in inside], "o", color="tab:blue",
                ms=4, label="localized zeros")
        ax.plot([z.real for z in out], [z.imag for z in out], "x", color="tab:red",
                ms=6, label="strays")
    if xs and min(xs) > 0 and max(xs) / min(xs) > 100:
        ax.set_xscale("symlog", linthresh=min(xs))
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(title)
    ax.legend(loc="upper left", fontsize=7)
    return _save(fig, path)


def plot_residuals(report, path, title=""):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name, res in report.residuals.items():
        ys = [max(float(v), 1e-300) for v in res]
        ax.semilogy(range(len(ys)), ys, marker=".", label=name)
    ax.set_xlabel("degree K")
    ax.set_ylabel("residual")
    ax.set_title(title or report.verdict)
    ax.legend(fontsize=7)
    return _save(fig, path)
