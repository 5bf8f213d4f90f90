"""Pseudo-spectral toolkit for the 3D rotating Navier-Stokes equations.

Spectral fields on a periodic box, Littlewood-Paley analysis with hybrid
Besov norms, the Stokes-Coriolis semigroup as an exact Fourier multiplier,
and the Picard construction of mild solutions, with verification suites
that check the quantitative structure numerically at desk scale.
"""

from .spectral import (
    FlowParams,
    Grid,
    PhysicalField,
    SpectralField,
    derivative,
    divergence,
    divergence_defect,
    dyadic_rescale,
    leray_project,
    lp_norm,
    make_grid,
    nonlinear_term,
    sobolev_norm,
    to_physical,
    to_spectral,
)
from .littlewood_paley import (
    DyadicPartition,
    FieldSeries,
    TimeGrid,
    bernstein_ratio,
    besov_norm,
    block,
    bony_parts,
    build_partition,
    check_identities,
    ep_norm,
    hybrid_norm,
    tilde_norm,
)
from .semigroup import (
    apply_semigroup,
    decay_fit,
    mode_oracle,
    semigroup_property_check,
    series_propagate,
)
from .solver import (
    PicardReport,
    WeightSpec,
    bilinear_bound_probe,
    duhamel_bilinear,
    energy_report,
    fp_norm,
    if_step_integrate,
    omega_weights,
    picard_solve,
    smallness_gate,
    weighted_bilinear_probe,
)
from .initial_data import (
    EnvelopeSpec,
    modulated_scalar,
    oscillating_vortex,
    random_solenoidal,
)
from .config import RunConfig, load_config
from .snapshot import read_snapshot, write_snapshot
from .reports import write_report
from .suites import run_suite

__version__ = "0.1.0"
