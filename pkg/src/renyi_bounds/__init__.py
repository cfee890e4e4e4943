"""Rényi-entropy lower bounds on quantum communication complexity."""

from .bounds import (
    BoundReport,
    exact_transform_bound,
    function_bound_promise,
    function_bound_uniform,
    holder_entropy_floor,
    ip_bounds_closed,
    qchar_bound_closed,
    state_approx_bound,
)
from .embezzle import EmbezzleResult, embezzle_fidelity, m_spectrum, min_embezzle_dim
from .linalg import eigh, fidelity, partial_trace_b, pinch, psd_sqrt
from .rectangles import (
    Rectangle,
    from_csv,
    function_spectrum,
    ip_rectangle,
    legendre,
    marginals,
    qchar_rectangle,
)
from .spectra import INF, Spectrum, eps_rank, majorizes, match_fidelity, renyi, tensor, uniform

__version__ = "0.1.0"
