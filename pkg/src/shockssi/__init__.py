"""Shock severity between supremum and infimum.

Builds the shock response matrix of an oscillator bank, its maximax shock
response spectrum (supremum) and the shock severity infimum taken from the
best rank-one approximation of the magnitude matrix.
"""

from .errors import (
    AliasError,
    BoundViolation,
    DegenerateInput,
    EmptyInput,
    GridError,
    IoError,
    ParameterError,
    ParseError,
    RangeError,
    ResolutionError,
    SamplingError,
    ShockError,
)
from .modal import (
    BoundReport,
    ModalModel,
    ResponseBounds,
    cantilever_beam,
    check_bounds,
    load_modal_model,
    predict_actual,
    predict_bounds,
    reconstruction_compare,
    signed_weight_vector,
    weight_vector,
    write_bounds_csv,
)
from .sdof import (
    OscillatorBank,
    log_freq_grid,
    sdof_response_filter,
    sdof_response_oracle,
)
from .signal import (
    G0,
    Signal,
    gen_damped_sine_sum,
    gen_half_sine,
    load_signal,
    pyroshock_like,
    save_signal,
)
from .spectrum import (
    ResponseMatrix,
    SrsVector,
    build_response_matrix,
    export_src,
    srs,
    write_srs_csv,
    write_srs_svg,
)
from .ssi import (
    DualSpectra,
    SsiResult,
    SvdDecomposition,
    analyse,
    dual_spectra,
    ssi_extract,
    svd_nonneg,
    trend_bound_check,
    write_dual_csv,
    write_dual_svg,
)

__version__ = "0.1.0"
