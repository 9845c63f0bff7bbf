"""Small grid figures for the command line (PNG/SVG/PDF by file suffix)."""
from __future__ import annotations


def _grid(ax, cells: dict, title: str, xlabel: str, ylabel: str):
    if not cells:
        ax.set_title(title + " (empty)")
        ax.set_xticks([])
        ax.set_yticks([])
        return
    xs = [p for p, _ in cells]
    ys = [q for _, q in cells]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    for x in range(x0, x1 + 2):
        ax.plot([x - 0.5, x - 0.5], [y0 - 0.5, y1 + 0.5], color="0.85", lw=0.8)
    for y in range(y0, y1 + 2):
        ax.plot([x0 - 0.5, x1 + 0.5], [y - 0.5, y - 0.5], color="0.85", lw=0.8)
    vmax = max(cells.values()) or 1
    for (p, q), v in cells.items():
        if v:
            ax.add_patch(_square(p, q, 0.15 + 0.6 * v / vmax))
        ax.text(p, q, str(v), ha="center", va="center", fontsize=11)
    ax.set_xlim(x0 - 0.5, x1 + 0.5)
    ax.set_ylim(y0 - 0.5, y1 + 0.5)
    ax.set_xticks(range(x0, x1 + 1))
    ax.set_yticks(range(y0, y1 + 1))
    ax.set_aspect("equal")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)


def _square(x, y, alpha):
    from matplotlib.patches import Rectangle
    return Rectangle((x - 0.5, y - 0.5), 1, 1, color="tab:blue", alpha=alpha, lw=0)


def hodge_number_figure(numbers: dict, path: str, title: str = "Hodge numbers"):
    """numbers: (p, q) -> dim I^{p,q}."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(4, 4))
    _grid(ax, dict(numbers), title, "p", "q")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def e1_figure(pages: dict, path: str):
    """pages: panel title -> {(p, q): dim E1^{p,q}}."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, axes = plt.subplots(1, len(pages), figsize=(4 * len(pages), 4), squeeze=False)
    for ax, (title, cells) in zip(axes[0], pages.items()):
        _grid(ax, cells, title, "p", "q")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
