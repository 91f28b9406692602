"""Single-shot quantum illumination bounds for Gaussian and non-Gaussian probes.

The heavy lifting lives in the compiled extension ``qillume._core``; this
package re-exports its public surface.
"""

from ._core import (
    ChannelParams,
    ChernoffResult,
    CorrelationReport,
    DensityMatrix,
    FockVector,
    HypothesisPair,
    NoiseKind,
    NoiseModel,
    NumericalIntegrityError,
    ProbeOp,
    ProbeSpec,
    ResourceError,
    TruncationError,
    assemble_coherent_hypotheses,
    assemble_hypotheses,
    apply_faulty_squeezer,
    build_probe,
    build_probe_auto,
    chernoff_bound,
    chernoff_fixed_alpha,
    classical_bound,
    correlation_report,
    find_threshold_p_star,
    log_negativity,
    m_copy_error,
    min_efficiency,
    mutual_information,
    noisy_probe_state,
    preset_names,
    probe_state,
    run_preset,
    s_overlap,
    signal_strength,
    tmsv_entanglement_closed_form,
    tmsv_log_negativity_closed_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
