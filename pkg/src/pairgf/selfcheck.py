"""Built-in oracle battery.

Runs the same cross-checks the test suite uses, but packaged for the CLI:
every check pits one evaluation route against an independent one (closed
form vs partial waves, series vs analytic limits, channel solves vs full
spin-space solves) and reports the worst residual per check.
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np

from . import coulomb, dyson, ldos
from .pair import SpinChannel
from .special import WhittakerIndex, whittaker_pair


def _check(name, residual, tol):
    return {
        "name": name,
        "max_residual": float(residual),
        "tolerance": float(tol),
        "passed": bool(residual < tol),
    }


def check_wronskian(tol=1e-8, n_k=8, n_r=8):
    """Constancy of the Whittaker Wronskian over the (k, r) working range."""
    worst = 0.0
    for i in range(n_k):
        k = 0.1 * (10.0 / 0.1) ** (i / (n_k - 1))
        for j in range(n_r):
            r = 0.05 * (20.0 / 0.05) ** (j / (n_r - 1))
            ev = whittaker_pair(WhittakerIndex(kappa=-1j / k, mu=0.5),
                                -2j * k * r, strict=False)
            worst = max(worst, ev.wronskian_residual)
    return _check("wronskian-constancy", worst, tol)


def check_free_reduction(tol=1e-8, n=12, seed=20260810):
    """Closed kernel at nu = 0 against the free-particle form."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        r1 = tuple(rng.uniform(-3, 3) for _ in range(3))
        r2 = tuple(rng.uniform(-3, 3) for _ in range(3))
        d = math.dist(r1, r2)
        if d < 0.1:
            continue
        E = rng.choice([1.0, 4.0])
        k = math.sqrt(E)
        got = coulomb.gc_closed(r1, r2, E, nu=0.0).value
        ref = -cmath.exp(1j * k * d) / (4.0 * math.pi * d)
        worst = max(worst, abs(got - ref) / abs(ref))
    return _check("free-reduction", worst, tol)


def check_partial_waves(tol=1e-6, l_max=40):
    """Partial-wave resummation against the closed kernel."""
    # distinct radii: the series tail decays like (r_< / r_>)^l, so keep
    # the radius ratio away from 1 at this l_max
    samples = [
        (1.0, 1.4, 0.3, 4.0), (0.7, 2.5, -0.6, 1.0), (1.0, 3.0, 0.8, 4.0),
        (0.5, 0.9, -0.2, 1.0), (1.2, 3.8, 0.5, 4.0),
    ]
    worst = 0.0
    for (r1, r2, ca, E) in samples:
        pw = coulomb.gc_pw_sum(r1, r2, ca, E, l_max)
        sa = math.sqrt(max(0.0, 1.0 - ca * ca))
        closed = coulomb.gc_closed((0.0, 0.0, r1),
                                   (r2 * sa, 0.0, r2 * ca), E).value
        worst = max(worst, abs(pw - closed) / abs(closed))
    return _check("partial-wave-vs-closed", worst, tol)


def check_free_pair_bessel(tol=1e-4):
    """Closed Bessel form of the free-pair density against quadrature."""
    worst = 0.0
    for (R, r, E) in [(1.0, 1.0, 4.0), (0.3, 2.0, 1.0), (2.0, 0.5, 4.0)]:
        closed = ldos.rho_free(R, r, E)
        quad = ldos.rho_free_quadrature(R, r, E)
        worst = max(worst, abs(closed - quad) / abs(quad))
    return _check("free-pair-bessel-vs-quadrature", worst, tol)


def check_dyson_decoupling(tol_cross=1e-12, tol_assembly=1e-10, seed=7):
    """Spin-space block structure and channel-wise assembly."""
    rng = np.random.default_rng(seed)
    n = 4
    lam_s, lam_t = dyson.spin_projectors()
    u = rng.normal(size=n)
    w = np.full(n, 0.25)
    g_e = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    g_o = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    g_e = 0.1 * (g_e + g_e.T)
    g_o = 0.1 * (g_o + g_o.T)

    # spin-independent potential lifted to spin space has no cross block
    u_spin = np.kron(np.eye(4), np.diag(u))
    cross_norm = float(np.linalg.norm(
        np.kron(lam_s, np.eye(n)) @ u_spin @ np.kron(lam_t, np.eye(n))))

    g_full = dyson.lift_spin_blocks(g_e, g_o)
    big = dyson.solve_dyson_matrix(g_full, np.tile(u, 4), np.tile(w, 4))
    ge_sol = dyson.solve_dyson_matrix(g_e, u, w)
    go_sol = dyson.solve_dyson_matrix(g_o, u, w)
    assembled = dyson.lift_spin_blocks(ge_sol, go_sol)
    assembly_residual = float(np.max(np.abs(big - assembled)))

    out = _check("dyson-decoupling", assembly_residual, tol_assembly)
    out["cross_block_norm"] = cross_norm
    out["assembly_residual"] = assembly_residual
    out["passed"] = bool(assembly_residual < tol_assembly
                         and cross_norm < tol_cross)
    return out


def check_coincidence_extrapolation(tol=1e-5, r=1.0, E=4.0):
    """Analytic coincidence limit against Richardson extrapolation of the
    raw kernel with the 1/(4 pi delta) divergence added back."""
    analytic = coulomb.gc_coincident_regular(r, E)
    deltas = [1e-2, 1e-3, 1e-4]
    vals = []
    for d in deltas:
        g = coulomb.gc_closed((0.0, 0.0, r), (0.0, 0.0, r + d), E).value
        vals.append(g + 1.0 / (4.0 * math.pi * d))
    # two Richardson stages for a leading-order-linear expansion in delta
    r1 = [(10.0 * vals[i + 1] - vals[i]) / 9.0 for i in range(2)]
    r2 = (100.0 * r1[1] - r1[0]) / 99.0
    resid = abs(r2 - analytic) / abs(analytic)
    return _check("coincidence-extrapolation", resid, tol)


def run_selfcheck(strict: bool = False) -> dict:
    """Run the oracle battery; ``strict`` adds the extrapolation check."""
    checks = [
        check_wronskian(),
        check_free_reduction(),
        check_partial_waves(),
        check_free_pair_bessel(),
        check_dyson_decoupling(),
    ]
    if strict:
        checks.append(check_coincidence_extrapolation())
    return {
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "wronskian_max_residual": checks[0]["max_residual"],
    }
