"""Fading-aware noise-shaping link simulator."""

from ._pfans import (  # noqa: F401
    BandMetrics,
    BandPlan,
    BandRequest,
    BandSpec,
    FiberParams,
    LinkConfig,
    ModFormat,
    NtfDesign,
    ProbePoint,
    RunReport,
    SweepPoint,
    config_from_json,
    config_to_json,
    design_ntf,
    emit_reports,
    fading_magnitude,
    notch_frequencies,
    plan_bands,
    probe_fading,
    run_link,
    shape,
    sweep_rop,
)

__all__ = [
    "BandMetrics",
    "BandPlan",
    "BandRequest",
    "BandSpec",
    "FiberParams",
    "LinkConfig",
    "ModFormat",
    "NtfDesign",
    "ProbePoint",
    "RunReport",
    "SweepPoint",
    "config_from_json",
    "config_to_json",
    "design_ntf",
    "emit_reports",
    "fading_magnitude",
    "notch_frequencies",
    "plan_bands",
    "probe_fading",
    "run_link",
    "shape",
    "sweep_rop",
]
