"""Sample domains and counter-based random streams for the verification suites.

Each check draws from its own stream, keyed by (seed, check id) through a
BLAKE2b digest, so results do not depend on how checks are scheduled.
"""

from typing import Any

import nacl.encoding
import nacl.hash
import numpy as np

from monopole_quantization.quaternions.quaternion import DEFAULT_R_MIN

DEFAULT_BOX = 3.0
DEFAULT_CONE_TOLERANCE = 1e-3
DEFAULT_SAMPLES = 10000
DEFAULT_SEED = 42

STREAM_PERSON = b"ej-verify-stream"
MAX_SEED = 2**64


def derive_stream_key(seed: int, check_id: str) -> int:
    """
    Derive a 128-bit Philox key for one check.

    Args:
        seed: Global 64-bit seed
        check_id: Stable identifier of the check

    Returns:
        int: Key for ``numpy.random.Philox``
    """
    if not 0 <= seed < MAX_SEED:
        raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")
    digest = nacl.hash.blake2b(
        check_id.encode("utf-8"),
        digest_size=16,
        key=seed.to_bytes(16, "little"),
        person=STREAM_PERSON,
        encoder=nacl.encoding.RawEncoder,
    )
    return int.from_bytes(digest, "little")


def stream_for(seed: int, check_id: str) -> np.random.Generator:
    """A fresh generator for the stream of (seed, check_id)"""
    return np.random.Generator(np.random.Philox(key=derive_stream_key(seed, check_id)))


def is_antipodal(
    x: Any, y: Any, cone_tolerance: float = DEFAULT_CONE_TOLERANCE
) -> np.ndarray:
    """True where the angle between x and y is within cone_tolerance of pi"""
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    angle = np.arctan2(
        np.linalg.norm(np.cross(x_arr, y_arr), axis=-1),
        np.einsum("...k,...k->...", x_arr, y_arr),
    )
    return np.asarray(np.pi - angle <= cone_tolerance)


class SampleDomain:
    """Box of sample points with an exclusion ball around the origin"""

    def __init__(
        self,
        box: float = DEFAULT_BOX,
        r_min: float = DEFAULT_R_MIN,
        cone_tolerance: float = DEFAULT_CONE_TOLERANCE,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
    ):
        """
        Initialize a sample domain.

        Args:
            box: Half-width B of the sampling box [-B, B]^3
            r_min: Exclusion radius around the origin
            cone_tolerance: Angular margin around antipodal configurations
            samples: Number of samples N per check
            seed: Global 64-bit seed

        Raises:
            ValueError: If the parameters are out of range
        """
        if not r_min > 0.0:
            raise ValueError("Exclusion radius must be positive")
        if not box > r_min:
            raise ValueError("Sampling box must extend beyond the exclusion radius")
        if not cone_tolerance > 0.0:
            raise ValueError("Cone tolerance must be positive")
        if samples < 1:
            raise ValueError("Sample count must be at least 1")
        if not 0 <= seed < MAX_SEED:
            raise ValueError("Seed must be an unsigned 64-bit integer")

        self.box = float(box)
        self.r_min = float(r_min)
        self.cone_tolerance = float(cone_tolerance)
        self.samples = int(samples)
        self.seed = int(seed)

    def generator(self, check_id: str) -> np.random.Generator:
        """Random stream of one check"""
        return stream_for(self.seed, check_id)

    def is_regular(self, x: Any, margin: float = 0.0) -> np.ndarray:
        """True where |x| > r_min + margin"""
        radius = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return np.asarray(radius > self.r_min + margin)

    def translation_admissible(self, a: Any, x: Any, margin: float = 0.0) -> np.ndarray:
        """True where the cocycle w(a; x) is defined with the given radial margin"""
        x_arr = np.asarray(x, dtype=float)
        shifted = x_arr + np.asarray(a, dtype=float)
        return (
            self.is_regular(x_arr, margin)
            & self.is_regular(shifted, margin)
            & ~is_antipodal(x_arr, shifted, self.cone_tolerance)
        )

    def draw_points(
        self, rng: np.random.Generator, count: int = 0, margin: float = 0.0
    ) -> np.ndarray:
        """
        Uniform points in the box outside the exclusion ball.

        Rejected rows are redrawn in order, so the result depends only on rng.

        Args:
            rng: Stream to draw from
            count: Number of points; defaults to the domain sample count
            margin: Extra radial margin beyond r_min

        Returns:
            np.ndarray: Points of shape (count, 3)
        """
        count = count or self.samples
        points = rng.uniform(-self.box, self.box, (count, 3))
        rejected = ~self.is_regular(points, margin)
        while np.any(rejected):
            redraw = (int(rejected.sum()), 3)
            points[rejected] = rng.uniform(-self.box, self.box, redraw)
            rejected = ~self.is_regular(points, margin)
        return points

    def draw_vectors(
        self, rng: np.random.Generator, scale: float, count: int = 0
    ) -> np.ndarray:
        """Uniform vectors in [-scale, scale]^3"""
        return rng.uniform(-scale, scale, (count or self.samples, 3))

    def __repr__(self) -> str:
        return (
            f"SampleDomain(box={self.box}, r_min={self.r_min}, "
            f"cone_tolerance={self.cone_tolerance}, samples={self.samples}, "
            f"seed={self.seed})"
        )
