"""Computer-algebra kernel for ideals in polynomial rings localized at the
origin: standard bases, Hilbert invariants, minimal free resolutions, and a
perturbation laboratory."""

from .rings import (
    GF,
    GLOBAL,
    LOCAL,
    ParseError,
    Polynomial,
    QQ,
    RingError,
    Vector,
    initial_form,
    order_v,
    parse_polynomial,
)
from .division import (
    DivisionError,
    NotAMember,
    StandardBasis,
    colon,
    initial_module,
    intersect,
    lift,
    membership,
    minimal_generators,
    minimalize,
    standard_basis,
    syzygies,
    weak_normal_form,
)
from .invariants import (
    ARResult,
    HilbertData,
    artin_rees,
    depth,
    depth_gr,
    dimension,
    hilbert_data,
    hilbert_function,
    is_cohen_macaulay,
    is_filter_regular_sequence,
)
from .resolution import (
    FreeResolution,
    PerturbedComplex,
    betti_numbers,
    check_exact,
    graded_betti,
    image_initial_module,
    minimal_free_resolution,
    perturb_resolution,
)
from .perturb import (
    PerturbationSpec,
    TheoremBounds,
    VerificationReport,
    check_betti,
    check_mu,
    check_star_inclusion,
    compare_hilbert,
    make_perturbation,
    search_min_N,
    theorem_bounds,
    verify_elias,
    verify_filter_regular_theorem,
    verify_min_mult,
)
from .ideal_io import IdealFile, load_ideal, parse_ideal_text, serialize_ideal
