"""Non-Markovian qubit Pauli channels: construction, CP-divisibility tests and measures."""

__version__ = "0.1.0"

from nmpauli.channels import (  # noqa: E402
    ChannelParams,
    Family,
    KrausElement,
    KrausSet,
    PauliWeights,
    alpha_pm,
    kappa_dephasing,
    kappa_toy,
    kraus_from_weights,
    weights,
    weights_dephasing,
    weights_depolarizing,
)
from nmpauli.dynmap import (  # noqa: E402
    IntermediateWindow,
    apply_sum_difference,
    choi,
    choi_eigs,
    compose,
    intermediate_kraus,
    intermediate_map,
    lambda_closed_form,
    superop_from_weights,
)
from nmpauli.measures import (  # noqa: E402
    MeasureReport,
    gamma_dephasing,
    gamma_from_kappa,
    gamma_normalized,
    n_blp,
    n_hcla_normalized,
    rhp_from_hcla,
    trace_distance_pair,
    trace_distance_pi2,
)
