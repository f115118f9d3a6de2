"""Band-limited correlation profiles and first-arriving-path detection."""

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import least_squares

from ..drifting.channel import SnapshotChannel
from ..errors import DetectionFailure, DomainError
from ..models import RfConfig

Pulse = Literal["sinc", "raised_cosine"]

# Profile extends this many main-lobe widths (2/B each) past the last path
TAIL_MAIN_LOBES = 4

# Successive cancellation
MAX_COMPONENTS = 48
MAX_GROUP = 6
# Spans in main-lobe half-widths (1/B): joint delay refit, merge into a stronger path
REFINE_SPAN = 2.0
MERGE_SPAN = 0.5
# Near-coincident pulses are not told apart by the amplitude fit
LSTSQ_RCOND = 1e-6


def pulse_shape(
    t: NDArray[np.float64], bandwidth: float, pulse: Pulse = "sinc", rolloff: float = 0.25
) -> NDArray[np.float64]:
    """Autocorrelation pulse of a band-limited signal, unit peak at ``t = 0``.

    ``sinc`` is ``sin(pi*B*t)/(pi*B*t)``; ``raised_cosine`` additionally
    tapers the sidelobes with roll-off ``rolloff``.
    """
    x = bandwidth * np.asarray(t, dtype=np.float64)
    shape = np.sinc(x)
    if pulse == "sinc" or rolloff == 0.0:
        return shape
    if pulse != "raised_cosine":
        raise DomainError(f"unknown pulse '{pulse}'")
    denom = 1.0 - (2.0 * rolloff * x) ** 2
    singular = np.abs(denom) < 1e-10
    with np.errstate(divide="ignore", invalid="ignore"):
        taper = np.cos(math.pi * rolloff * x) / denom
    limit = (math.pi / 4.0) * np.sinc(1.0 / (2.0 * rolloff))
    return np.where(singular, limit, shape * taper)


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Complex correlation samples on a uniform delay grid."""

    delays: NDArray[np.float64]
    samples: NDArray[np.complex128]
    bandwidth: float
    oversampling: int
    pulse: Pulse = "sinc"
    rolloff: float = 0.25

    @property
    def step(self) -> float:
        """Grid spacing ``1 / (B * oversampling)``."""
        return 1.0 / (self.bandwidth * self.oversampling)

    @property
    def magnitude(self) -> NDArray[np.float64]:
        return np.abs(self.samples)

    @property
    def power_db(self) -> NDArray[np.float64]:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(self.magnitude)


@dataclass(frozen=True)
class FapEstimate:
    """A resolved path: refined delay, power of its own amplitude, nearest grid index."""

    delay: float
    power_db: float
    index: int


def synthesize_profile(
    delays: NDArray[np.float64],
    amplitudes: NDArray[np.complex128],
    bandwidth: float,
    oversampling: int = 16,
    *,
    pulse: Pulse = "sinc",
    rolloff: float = 0.25,
    max_delay: Optional[float] = None,
    noise_floor_db: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
) -> CorrelationProfile:
    """Superpose one pulse per path on a grid ``k / (B * oversampling)``.

    The grid runs from 0 to ``max_delay`` (default: the latest path) plus
    four main-lobe widths.

    Raises:
        DomainError: On empty input, bad parameters, or noise without a generator
    """
    delays = np.asarray(delays, dtype=np.float64)
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    if delays.size == 0:
        raise DomainError("profile needs at least one path")
    if not bandwidth > 0 or oversampling < 1:
        raise DomainError("bandwidth must be > 0 and oversampling >= 1")
    if np.any(delays < 0):
        raise DomainError("path delays must be >= 0")

    step = 1.0 / (bandwidth * oversampling)
    last = float(delays.max()) if max_delay is None else max_delay
    end = last + TAIL_MAIN_LOBES * 2.0 / bandwidth
    grid = np.arange(int(math.floor(end / step)) + 1) * step
    samples = pulse_shape(grid[:, None] - delays[None, :], bandwidth, pulse, rolloff) @ amplitudes

    if noise_floor_db is not None:
        if rng is None:
            raise DomainError("a noise floor needs a random generator")
        sigma = math.sqrt(10.0 ** (noise_floor_db / 10.0) / 2.0)
        samples = samples + sigma * (
            rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size)
        )
    return CorrelationProfile(
        delays=grid,
        samples=samples,
        bandwidth=bandwidth,
        oversampling=oversampling,
        pulse=pulse,
        rolloff=rolloff,
    )


def band_limited_profile(
    channel: SnapshotChannel,
    rf: RfConfig,
    oversampling: int = 16,
    **options: object,
) -> CorrelationProfile:
    """Correlation profile of all paths of a snapshot at the signal bandwidth.

    Extra keyword options are passed to ``synthesize_profile`` (pulse,
    roll-off, grid end, noise floor and generator).
    """
    return synthesize_profile(
        channel.delays,
        channel.amplitudes,
        rf.bandwidth_hz,
        oversampling,
        **options,  # type: ignore[arg-type]
    )


def _basis(
    profile: CorrelationProfile, times: NDArray[np.float64], delays: NDArray[np.float64]
) -> NDArray[np.complex128]:
    shape = pulse_shape(
        times[:, None] - delays[None, :], profile.bandwidth, profile.pulse, profile.rolloff
    )
    return shape.astype(np.complex128)


def _peak_delay(profile: CorrelationProfile, mag: NDArray[np.float64], k: int) -> float:
    """Parabolic interpolation of a sampled magnitude peak over 3 samples."""
    offset = 0.0
    if 0 < k < mag.size - 1:
        y0, y1, y2 = float(mag[k - 1]), float(mag[k]), float(mag[k + 1])
        curvature = y0 - 2.0 * y1 + y2
        if curvature < 0.0:
            offset = min(max(0.5 * (y0 - y2) / curvature, -0.5), 0.5)
    return float(profile.delays[k] + offset * profile.step)


def _fit_amplitudes(
    profile: CorrelationProfile, delays: NDArray[np.float64]
) -> NDArray[np.complex128]:
    amplitudes, *_ = np.linalg.lstsq(
        _basis(profile, profile.delays, delays), profile.samples, rcond=LSTSQ_RCOND
    )
    return np.asarray(amplitudes, dtype=np.complex128)


def _refine_group(
    profile: CorrelationProfile,
    residual: NDArray[np.complex128],
    delays: NDArray[np.float64],
    amplitudes: NDArray[np.complex128],
    group: NDArray[np.int64],
) -> NDArray[np.float64]:
    """Jointly refit delays and amplitudes of overlapping components.

    Only samples within two main-lobe half-widths of the group take part;
    the other components are held at their current values. Returns the new
    delays (unchanged if the fit fails).
    """
    inv_b = 1.0 / profile.bandwidth
    lo = float(delays[group].min()) - 2.0 * inv_b
    hi = float(delays[group].max()) + 2.0 * inv_b
    window = (profile.delays >= lo) & (profile.delays <= hi)
    t = profile.delays[window]
    target = residual[window] + _basis(profile, t, delays[group]) @ amplitudes[group]
    scale = float(np.abs(target).max())
    n = group.size
    if scale == 0.0 or 2 * t.size < 3 * n:
        return delays
    target = target / scale
    a0 = amplitudes[group] / scale
    x0 = np.concatenate([delays[group] * profile.bandwidth, a0.real, a0.imag])

    def misfit(x: NDArray[np.float64]) -> NDArray[np.float64]:
        model = _basis(profile, t, x[:n] * inv_b) @ (x[n : 2 * n] + 1j * x[2 * n :])
        error = target - model
        return np.concatenate([error.real, error.imag])

    bound = np.full(2 * n, np.inf)
    fit = least_squares(
        misfit,
        x0,
        bounds=(
            np.concatenate([np.full(n, lo * profile.bandwidth), -bound]),
            np.concatenate([np.full(n, hi * profile.bandwidth), bound]),
        ),
    )
    if not fit.success or fit.cost > 0.5 * float(np.sum(misfit(x0) ** 2)):
        return delays
    moved = np.sort(fit.x[:n] * inv_b)
    if n > 1 and float(np.diff(moved).min()) < 0.5 * profile.step:
        return delays
    refined = delays.copy()
    refined[group] = fit.x[:n] * inv_b
    return refined


def clean_components(
    profile: CorrelationProfile, stop: float
) -> tuple[NDArray[np.float64], NDArray[np.complex128]]:
    """Decompose the profile into delayed pulses by successive cancellation.

    Each round takes the largest residual sample, places a pulse at its
    interpolated delay and refits all amplitudes by least squares. Pulses
    within two main-lobe half-widths of the new one also get their delays
    refit, so unresolved paths separate instead of leaving sidelobe residue.
    Stops when the residual drops below ``stop``.

    Returns:
        ``(delays, amplitudes)`` of the components, in extraction order
    """
    delays = np.empty(0, dtype=np.float64)
    amplitudes = np.empty(0, dtype=np.complex128)
    residual = profile.samples.astype(np.complex128)
    for _ in range(MAX_COMPONENTS):
        mag = np.abs(residual)
        k = int(np.argmax(mag))
        if not mag[k] > stop:
            break
        delay = _peak_delay(profile, mag, k)
        if delays.size and float(np.min(np.abs(delays - delay))) < 0.5 * profile.step:
            break
        delays = np.append(delays, delay)
        amplitudes = _fit_amplitudes(profile, delays)
        residual = profile.samples - _basis(profile, profile.delays, delays) @ amplitudes

        distance = np.abs(delays - delay)
        group = np.argsort(distance, kind="stable")[:MAX_GROUP]
        group = group[distance[group] < REFINE_SPAN / profile.bandwidth]
        if group.size > 1:
            delays = _refine_group(profile, residual, delays, amplitudes, group)
            amplitudes = _fit_amplitudes(profile, delays)
            residual = profile.samples - _basis(profile, profile.delays, delays) @ amplitudes
    return delays, amplitudes


def resolve_peaks(
    profile: CorrelationProfile, threshold_db: float = 25.0, clean_depth_db: float = 6.0
) -> list[FapEstimate]:
    """Paths resolved from the profile within ``threshold_db`` of its maximum.

    Components closer than half a main-lobe half-width to a stronger one
    merge into it. Earliest first.

    Raises:
        DomainError: If the threshold is not positive
        DetectionFailure: If the profile is identically zero
    """
    if not threshold_db > 0:
        raise DomainError("FAP threshold must be > 0 dB")
    peak = float(profile.magnitude.max()) if profile.samples.size else 0.0
    if not peak > 0.0:
        raise DetectionFailure("correlation profile has no peak")
    floor = peak * 10.0 ** (-threshold_db / 20.0)
    delays, amplitudes = clean_components(profile, floor * 10.0 ** (-clean_depth_db / 20.0))

    strength = np.abs(amplitudes)
    kept: list[int] = []
    for i in np.argsort(-strength, kind="stable"):
        if strength[i] < floor:
            break
        if all(abs(delays[i] - delays[j]) >= MERGE_SPAN / profile.bandwidth for j in kept):
            kept.append(int(i))
    kept.sort(key=lambda i: delays[i])
    last = profile.delays.size - 1
    return [
        FapEstimate(
            delay=float(delays[i]),
            power_db=float(20.0 * np.log10(strength[i])),
            index=min(max(int(round((delays[i] - profile.delays[0]) / profile.step)), 0), last),
        )
        for i in kept
    ]


def detect_fap(
    profile: CorrelationProfile, threshold_db: float = 25.0, clean_depth_db: float = 6.0
) -> FapEstimate:
    """Earliest path within ``threshold_db`` of the strongest profile peak.

    Peaks are taken from the successive-cancellation decomposition, so pulse
    sidelobes never count as paths. Delays are parabolically interpolated
    and refined jointly with overlapping paths; the power is the path's own
    amplitude.

    Raises:
        DetectionFailure: If the profile has no qualifying peak
    """
    peaks = resolve_peaks(profile, threshold_db, clean_depth_db)
    if not peaks:
        raise DetectionFailure("no peak of the correlation profile qualifies")
    return peaks[0]
