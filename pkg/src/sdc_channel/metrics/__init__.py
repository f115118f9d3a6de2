"""CIR metrics: correlation profiles, FAP detection and power traces."""

from .profile import (
    CorrelationProfile,
    FapEstimate,
    band_limited_profile,
    clean_components,
    detect_fap,
    pulse_shape,
    resolve_peaks,
    synthesize_profile,
)
from .trace import PowerTrace, power_trace, total_power_db

__all__ = [
    "CorrelationProfile",
    "FapEstimate",
    "PowerTrace",
    "band_limited_profile",
    "clean_components",
    "detect_fap",
    "power_trace",
    "pulse_shape",
    "resolve_peaks",
    "synthesize_profile",
    "total_power_db",
]
