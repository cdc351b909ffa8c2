"""Green's function and local density of states of a repulsive electron
pair, with the singlet/triplet decomposition demanded by the Pauli
principle.

Atomic-unit conventions throughout: lengths in Bohr radii, energies in
Hartree, center-of-mass kinetic coefficient c_K = 1/4 and relative-motion
coefficient c_k = 1.  Pair densities are in r_B^-6, single-particle
references in r_B^-3.
"""

__version__ = "0.1.0"

from .coulomb import (  # noqa: F401
    CoulombParams,
    GfKind,
    GfValue,
    Parity,
    coulomb_params,
    gc_antipodal,
    gc_closed,
    gc_closed_advanced,
    gc_coincident_regular,
    gc_pw_sum,
    gc_radial_l,
)
from .dyson import (  # noqa: F401
    GridSpec,
    PotentialSpec,
    bare_channel_matrix,
    dyson_solve,
    lift_spin_blocks,
    solve_dyson_matrix,
    spin_projectors,
)
from .errors import (  # noqa: F401
    CoincidentArguments,
    ConfigError,
    CutoffRequired,
    DivergentArguments,
    NonConvergence,
    PairGFError,
    PoleError,
    QuadratureFailure,
    SingularSystem,
    ToleranceNotMet,
    WronskianViolation,
)
from .ldos import (  # noqa: F401
    LdosPoint,
    rho_components,
    rho_free,
    rho_free_quadrature,
    rho_point,
    rho_single_refs,
)
from .pair import (  # noqa: F401
    DivergenceClass,
    DivergenceGroup,
    Degeneracy,
    PairArgs,
    SpinChannel,
    classify_args,
    f_origin_weight,
    g0_dos,
    g0_real,
    pair_gf,
    pair_gf_channel,
)
from .quadrature import (  # noqa: F401
    QuadResult,
    QuadratureSpec,
    Transform,
    integrate,
    principal_value,
)
from .selfcheck import run_selfcheck  # noqa: F401
from .special import (  # noqa: F401
    WhittakerEval,
    WhittakerIndex,
    bessel_j,
    cgamma,
    hyp1f1,
    whittaker_pair,
)
