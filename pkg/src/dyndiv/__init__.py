"""Divergences and relative entropies of quantum and classical channels."""

import types as _types

from .channel_divergences import (
    OptimizerConfig,
    amortized_lb,
    channel_dmax,
    channel_dmin,
    channel_hyptest,
    channel_umegaki,
    geometric_renyi_channel,
    isometry_max_ext,
)
from .channels import (
    ClassicalChannel,
    QuantumChannel,
    Superchannel,
    apply_channel,
    completely_randomizing,
    compose,
    identity_channel,
    make_replacement,
    sample_random,
    superchannel_apply,
    tensor_channels,
)
from .classical import DivergenceValue, dmax_c, dmin_c, hyptest_c, kl, renyi
from .errors import DyndivError
from .harness import CheckReport, SuiteConfig, run_suite
from .majorization import (
    Dichotomy,
    LorenzCurve,
    classical_channel_max_ext,
    classical_channel_min_ext,
    dichotomy_join,
    lorenz_curve,
    majorization_join,
    rational_flatten,
    relatively_majorizes,
)
from .states import (
    dmax_q,
    dmin_q,
    geometric_renyi_state,
    hyptest_q,
    measured_lb,
    sandwiched_renyi,
    umegaki,
)
from .tolerances import DEFAULT_TOL, ToleranceConfig

__version__ = "0.1.0"

__all__ = [name for name, obj in dict(globals()).items()
           if not name.startswith("_") and not isinstance(obj, _types.ModuleType)]
