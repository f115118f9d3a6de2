"""Random (TR38.901-style) cluster generation with dual-bounce scatterers.

Delays, powers and angles follow the 3GPP fast-fading recipe. Scatterer
positions are then fixed by ``dual_bounce_positions`` so the clusters can
drift as the UE moves within a segment.

Large-scale draws come from a ``ClusterDraws`` provider. ``RngDraws`` gives
independent draws; ``FieldDraws`` samples correlated fields at the UE
position so nearby segment starts see similar clusters.
"""

from typing import Optional, Protocol

import numpy as np
from numpy.typing import NDArray
from scipy.stats import norm

from ..constants import C0
from ..errors import ConfigurationError, DegenerateGeometryError
from ..geometry import Vec3, unit_vectors, vec3, vectors_to_angles
from ..models import RandomClusterParams
from ..propagation.field import CorrelatedField
from ..utils import get_logger
from ..utils.seeding import text_key
from .dual_bounce import dual_bounce_positions
from .types import RandomClusterState

logger = get_logger(__name__)

# Ray offsets within a cluster (unit RMS spread), 20-ray table
RAY_OFFSETS = np.array(
    [0.0447, 0.1413, 0.2492, 0.3715, 0.5129, 0.6797, 0.8844, 1.1481, 1.5195, 2.1551]
)

_UNIFORM_CLIP = 1e-12


class ClusterDraws(Protocol):
    """Source of the per-cluster large-scale random variables."""

    def normal(self, name: str, n: int) -> NDArray[np.float64]: ...

    def uniform(self, name: str, n: int) -> NDArray[np.float64]: ...


class RngDraws:
    """Independent draws from a numpy Generator."""

    def __init__(self, rng: np.random.Generator):
        self._rng = rng

    def normal(self, name: str, n: int) -> NDArray[np.float64]:
        return self._rng.standard_normal(n)

    def uniform(self, name: str, n: int) -> NDArray[np.float64]:
        return np.clip(self._rng.uniform(size=n), _UNIFORM_CLIP, 1.0 - _UNIFORM_CLIP)


class FieldDraws:
    """Spatially consistent draws: each variable is a correlated field at ``position``.

    Uniform variables are the normal CDF of a Gaussian field sample.
    """

    def __init__(
        self,
        seed: int,
        keys: tuple[int, ...],
        position: Vec3,
        decorrelation_distance: float,
        sinusoids: int = 64,
    ):
        self._seed = seed
        self._keys = keys
        self._position = vec3(position)
        self._distance = decorrelation_distance
        self._sinusoids = sinusoids

    def normal(self, name: str, n: int) -> NDArray[np.float64]:
        bank = CorrelatedField(
            seed=self._seed,
            decorrelation_distance=self._distance,
            keys=(*self._keys, text_key(name)),
            sinusoids=self._sinusoids,
            size=n,
        )
        return bank.sample(self._position)

    def uniform(self, name: str, n: int) -> NDArray[np.float64]:
        return np.clip(norm.cdf(self.normal(name, n)), _UNIFORM_CLIP, 1.0 - _UNIFORM_CLIP)


def ray_offsets(subpaths: int) -> NDArray[np.float64]:
    """Unit-spread sub-path angle offsets.

    Twenty sub-paths use the symmetric 3GPP table; other counts are spread
    evenly over the same span.
    """
    if subpaths == 2 * RAY_OFFSETS.size:
        return np.concatenate([RAY_OFFSETS, -RAY_OFFSETS])
    if subpaths == 1:
        return np.zeros(1)
    return np.linspace(-1.0, 1.0, subpaths) * RAY_OFFSETS[-1]


def angle_scaling(params: RandomClusterParams) -> tuple[float, float]:
    """Azimuth and zenith scaling constants ``(C_phi, C_theta)``.

    Keyed by the total cluster count (LOS cluster included), defaulting to 1,
    and scaled by the LOS K-factor polynomials when a K-factor is set.
    """
    total = params.n_clusters + 1
    c_phi = params.c_phi.get(total, 1.0)
    c_theta = params.c_theta.get(total, 1.0)
    if params.k_factor_db is not None:
        k = params.k_factor_db
        c_phi *= 1.1035 - 0.028 * k - 0.002 * k**2 + 0.0001 * k**3
        c_theta *= 1.3086 + 0.0339 * k - 0.0077 * k**2 + 0.0002 * k**3
    if c_phi <= 0 or c_theta <= 0:
        raise ConfigurationError(
            f"angle scaling became non-positive for K = {params.k_factor_db} dB"
        )
    return c_phi, c_theta


def _check_params(params: RandomClusterParams) -> None:
    problems = []
    if params.n_clusters < 1:
        problems.append("n_clusters must be >= 1")
    if params.subpaths < 1:
        problems.append("subpaths must be >= 1")
    if not params.delay_spread_s > 0:
        problems.append("delay_spread_s must be > 0")
    if not params.delay_scaling > 1:
        problems.append("delay_scaling must be > 1")
    spreads = (
        params.asd_deg,
        params.asa_deg,
        params.zsd_deg,
        params.zsa_deg,
        params.cluster_asd_deg,
        params.cluster_asa_deg,
        params.cluster_zsd_deg,
        params.cluster_zsa_deg,
        params.shadowing_std_db,
    )
    if min(spreads) < 0:
        problems.append("angular spreads and shadowing must be >= 0")
    if problems:
        raise ConfigurationError("; ".join(problems))


def cluster_delays_powers(
    params: RandomClusterParams, draws: ClusterDraws
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Sorted delays, powers (LOS share included) and NLOS-normalized powers.

    Returns:
        ``(delays, powers, nlos_powers)`` for ``n_clusters + 1`` clusters,
        delay 0 first
    """
    total = params.n_clusters + 1
    raw = -params.delay_scaling * params.delay_spread_s * np.log(draws.uniform("delay", total))
    delays = np.sort(raw - raw.min())

    shadowing = params.shadowing_std_db * draws.normal("shadowing", total)
    raw_powers = np.exp(
        -delays * (params.delay_scaling - 1.0) / (params.delay_scaling * params.delay_spread_s)
    ) * 10.0 ** (-shadowing / 10.0)
    nlos = raw_powers / raw_powers.sum()

    k_lin = 0.0 if params.k_factor_db is None else 10.0 ** (params.k_factor_db / 10.0)
    powers = nlos / (k_lin + 1.0)
    powers[0] += k_lin / (k_lin + 1.0)
    return delays, powers, nlos


def _cluster_angles(
    draws: ClusterDraws,
    tag: str,
    ratio: NDArray[np.float64],
    spread_deg: float,
    scaling: float,
    center_deg: float,
    zenith: bool,
) -> NDArray[np.float64]:
    n = ratio.size
    sign = np.where(draws.uniform(f"{tag}_sign", n) < 0.5, -1.0, 1.0)
    jitter = draws.normal(tag, n) * spread_deg / 7.0
    if zenith:
        base = -spread_deg * np.log(ratio) / scaling
    else:
        base = 2.0 * (spread_deg / 1.4) * np.sqrt(-np.log(ratio)) / scaling
    angles = sign * base + jitter
    # cluster 0 is the LOS cluster and points along the LOS direction
    return angles - angles[0] + center_deg


def generate_random_clusters(
    params: RandomClusterParams,
    tx: Vec3,
    rx: Vec3,
    rng: np.random.Generator,
    draws: Optional[ClusterDraws] = None,
) -> RandomClusterState:
    """Draw random clusters for one link at one segment start.

    Args:
        params: Statistical parameters
        tx: TRP position
        rx: UE position at the segment start
        rng: Generator for sub-path coupling and initial phases
        draws: Large-scale draw provider; defaults to ``RngDraws(rng)``

    Returns:
        Cluster state with ``n_clusters + 1`` clusters, cluster 0 merged with LOS

    Raises:
        ConfigurationError: If the parameters are invalid
        DegenerateGeometryError: If ``tx`` and ``rx`` coincide
    """
    _check_params(params)
    tx, rx = vec3(tx), vec3(rx)
    los = rx - tx
    los_length = float(np.linalg.norm(los))
    if los_length == 0.0:
        raise DegenerateGeometryError("TRP and UE coincide")
    draws = draws if draws is not None else RngDraws(rng)

    delays, powers, nlos = cluster_delays_powers(params, draws)
    ratio = np.maximum(nlos / nlos.max(), np.finfo(np.float64).tiny)
    c_phi, c_theta = angle_scaling(params)

    dep_az0, dep_el0 = (np.degrees(a) for a in vectors_to_angles(los))
    arr_az0, arr_el0 = (np.degrees(a) for a in vectors_to_angles(-los))
    cluster_dep_az = _cluster_angles(draws, "az_dep", ratio, params.asd_deg, c_phi, dep_az0, False)
    cluster_arr_az = _cluster_angles(draws, "az_arr", ratio, params.asa_deg, c_phi, arr_az0, False)
    cluster_dep_zen = _cluster_angles(
        draws, "zen_dep", ratio, params.zsd_deg, c_theta, 90.0 - dep_el0, True
    )
    cluster_arr_zen = _cluster_angles(
        draws, "zen_arr", ratio, params.zsa_deg, c_theta, 90.0 - arr_el0, True
    )

    total = params.n_clusters + 1
    offsets = np.tile(ray_offsets(params.subpaths), (total, 1))

    def spread(center: NDArray[np.float64], cluster_spread: float) -> NDArray[np.float64]:
        # random coupling of sub-paths across the four angle dimensions
        return center[:, None] + cluster_spread * rng.permuted(offsets, axis=1)

    dep_az = np.radians(spread(cluster_dep_az, params.cluster_asd_deg))
    arr_az = np.radians(spread(cluster_arr_az, params.cluster_asa_deg))
    dep_el = np.radians(90.0 - spread(cluster_dep_zen, params.cluster_zsd_deg))
    arr_el = np.radians(90.0 - spread(cluster_arr_zen, params.cluster_zsa_deg))

    u_dep = unit_vectors(dep_az, dep_el)
    u_arr = unit_vectors(arr_az, arr_el)
    dep_az, dep_el = vectors_to_angles(u_dep)
    arr_az, arr_el = vectors_to_angles(u_arr)

    lengths = los_length + C0 * delays
    fbs = np.empty((total, params.subpaths, 3))
    lbs = np.empty_like(fbs)
    fbs[0] = lbs[0] = 0.5 * (tx + rx)
    fbs[1:], lbs[1:] = dual_bounce_positions(tx, rx, u_dep[1:], u_arr[1:], lengths[1:, None])

    # the LOS cluster shares the LOS direction
    dep_az[0], dep_el[0] = np.radians(dep_az0), np.radians(dep_el0)
    arr_az[0], arr_el[0] = np.radians(arr_az0), np.radians(arr_el0)

    logger.debug(
        "random_clusters_drawn",
        clusters=params.n_clusters,
        subpaths=params.subpaths,
        max_delay_ns=float(delays.max() * 1e9),
        los_power=float(powers[0]),
    )
    return RandomClusterState(
        delays=delays,
        powers=powers,
        departure_azimuth=dep_az,
        departure_elevation=dep_el,
        arrival_azimuth=arr_az,
        arrival_elevation=arr_el,
        fbs=fbs,
        lbs=lbs,
        phases=rng.uniform(-np.pi, np.pi, (total, params.subpaths)),
        los_length=los_length,
    )
