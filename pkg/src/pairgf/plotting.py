"""Figure rendering for the CLI report path.

Each dataset the CLI can emit has a matching renderer that writes a PNG
next to the delimited output.  Rendering is optional (``--plot``) and sits
outside the deterministic data path.
"""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_fig_r0(rows, path):
    """Log-log origin densities: pair vs free pair, single vs free single."""
    plt = _pyplot()
    es = [row["E"] for row in rows if row["E"] > 0]
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 4.0))
    for ax, cols, title in (
            (axes[0], ("rho0", "rho_f0"), "electron pair"),
            (axes[1], ("rho_c0", "rho_e0"), "single electron")):
        for col, style in zip(cols, ("-", "--")):
            ys = [row[col] for row in rows if row["E"] > 0]
            ax.loglog(es, ys, style, label=col)
        ax.set_xlabel("E (Hartree)")
        ax.set_title(title)
        ax.legend()
    axes[0].set_ylabel(r"density of states ($r_B^{-6}$ / $r_B^{-3}$)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_ldos(rows, path):
    """Density components against whichever of r or E is swept."""
    plt = _pyplot()
    xs_r = {row["r"] for row in rows}
    sweep_r = len(xs_r) > 1
    xkey = "r" if sweep_r else "E"
    xs = [row[xkey] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for col in ("rho_total", "rho_even", "rho_odd", "rho_minus"):
        ax.plot(xs, [row[col] for row in rows], label=col)
    if sweep_r:
        E = rows[0]["E"]
        if E > 0:
            flat = 2.0 * E * E / (16.0 * math.pi ** 3)
            ax.axhline(flat, color="gray", lw=0.8, ls=":",
                       label="free-pair level")
        ax.set_xlabel(r"r ($r_B$)")
    else:
        ax.set_xlabel("E (Hartree)")
    ax.set_ylabel(r"LDOS ($r_B^{-6}$)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_g0(rows, path):
    plt = _pyplot()
    xs = [row["E"] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(xs, [row["rho0"] for row in rows], label="rho0")
    ax.plot(xs, [row["re_g0"] for row in rows], label="re_g0")
    ax.set_xlabel("E (Hartree)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
