"""Exact and spectral verification toolkit for higher order div-curl
complexes on the torus."""

__version__ = "0.1.0"

from .increments import IncrementSolution, admissible_increments, binom, increment_scan
from .multiindex import (
    Ordering,
    complement,
    epsilon,
    labels,
    make_ordering,
    multiindices,
    random_ordering,
)
from .trigpoly import TrigPoly
from .gridfield import GridField, grid_points
from .randoms import random_trig_form, random_trigpoly
from .forms import (
    Form,
    form_max_abs,
    grad_lp_norm,
    hodge_star,
    inner_product,
    inner_product_wedge,
    lp_norm,
    partial,
    pullback_linear,
    sample_form,
    sobolev_norm,
    wedge,
    zero_form,
)
from .operators import (
    CoeffTensor,
    OperatorSpec,
    apply_T,
    apply_T_star,
    apply_T_star_coordinate,
    apply_Top,
    apply_Top_star,
    box_apply,
    box_apply_top,
    box_coeff_closed_form,
    box_coeff_tensor,
    coeff_entry_closed_form,
    coeff_entry_direct,
    compose_TT,
    invariance_defect,
    spec_for,
    top_coeff_tensor,
    tt_single_orientation,
)
from .symbol import (
    box_symbol,
    ellipticity_scan,
    lh_quotient,
    min_symbol_eigenvalue,
    rational_sphere_point,
    source_symbol_scalar,
    symbol_rayleigh,
    wave_symbol_check,
)
from .inequalities import (
    BumpSpec,
    bump_field,
    bump_form,
    classical_gn_ratio,
    default_config,
    dilate_form_specs,
    divergence_defect,
    divergence_free_family,
    duality_dilation_study,
    duality_ratio,
    gn_ratio,
    hodge_solve,
    make_closed_source,
    make_coclosed_source,
    random_bump_form,
    run_suite,
    scalar_symbol_array,
    vs_lift,
    vs_reduction,
)
from .verify import CheckRecord, default_cases, identity_suite, run_verify
