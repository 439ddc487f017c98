"""Lie-Poisson calculus on the dual Poincare algebra.

Structure constants are derived from the coadjoint action, never typed in:
each basis element X_i (order H, P1..P3, J1..J3, K1..K3) generates a flow
t -> Coad(exp(t X_i)) y whose velocity is linear in y. With
dy_j/dt = A_i[j, k] y_k the bracket {x_i, x_j} = c^k_ij x_k has
c^k_ij = -A_i[j, k], so the flow of X_i is df/dt = {f, x_i}.
"""

import logging
from functools import lru_cache
from typing import Any, Callable, Optional, Union

import numpy as np

from monopole_quantization.errors import InconsistentTable
from monopole_quantization.finite_difference import central_derivative
from monopole_quantization.poincare.coadjoint import (
    CoadjointPoint,
    GroupFactor,
    coad_apply,
)
from monopole_quantization.poincare.orbit_chart import (
    OrbitChartPoint,
    chart_to_point,
)
from monopole_quantization.quaternions.quaternion import LEVI_CIVITA

logger = logging.getLogger(__name__)

DIMENSION = 10
BASIS_LABELS = ("H", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3")
STRUCTURE_FD_STEP = 1e-5
ROUNDING_TOLERANCE = 1e-6
REGENERATION_TOLERANCE = 1e-8
EQ1_STRENGTH = 0.5

PointLike = Union[CoadjointPoint, np.ndarray]


def _as_array(y: PointLike) -> np.ndarray:
    if isinstance(y, CoadjointPoint):
        return y.as_array()
    return np.asarray(y, dtype=float)


def generator_factor(index: int, t: float) -> GroupFactor:
    """
    The one-parameter factor exp(t X_index).

    For H the standard form writes exp(-a0 H), so a0 = -t.
    """
    if not 0 <= index < DIMENSION:
        raise ValueError(f"Basis index must be 0..9, got {index}")
    if index == 0:
        return GroupFactor.time_translation(-t)
    block, axis = divmod(index - 1, 3)
    direction = np.eye(3)[axis]
    if block == 0:
        return GroupFactor.space_translation(t * direction)
    if block == 1:
        return GroupFactor.rotation(t, direction)
    return GroupFactor.boost(t, direction)


def infinitesimal_action(
    index: int, y: Any, step: float = STRUCTURE_FD_STEP
) -> np.ndarray:
    """Velocity d/dt Coad(exp(t X_index)) y at t = 0, by central differences"""
    point = CoadjointPoint.from_array(y)
    return central_derivative(
        lambda t: coad_apply(generator_factor(index, t), point).as_array(), step
    )


class StructureConstants:
    """Table c[i, j, k] = c^k_ij of the Poincare algebra in the basis (H, P, J, K)"""

    def __init__(self, table: np.ndarray):
        """
        Initialize from a table.

        Args:
            table: Array of shape (10, 10, 10)

        Raises:
            ValueError: If the table has the wrong shape
        """
        if table.shape != (DIMENSION, DIMENSION, DIMENSION):
            raise ValueError("Structure constants must form a 10x10x10 table")
        self.table = table

    def poisson_tensor(self, y: PointLike) -> np.ndarray:
        """Pi_ij(y) = c^k_ij y_k, shape (..., 10, 10)"""
        return np.einsum("ijk,...k->...ij", self.table, _as_array(y))

    def action_matrix(self, index: int) -> np.ndarray:
        """A_index with dy/dt = A y along the flow of X_index"""
        return -self.table[index]

    def antisymmetry_residual(self) -> float:
        return float(np.max(np.abs(self.table + self.table.transpose(1, 0, 2))))

    def jacobi_residual(self) -> float:
        """Largest entry of c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj"""
        c = self.table
        cyclic = (
            np.einsum("ijm,mkl->ijkl", c, c)
            + np.einsum("jkm,mil->ijkl", c, c)
            + np.einsum("kim,mjl->ijkl", c, c)
        )
        return float(np.max(np.abs(cyclic)))

    def regeneration_residual(
        self, points: np.ndarray, step: float = STRUCTURE_FD_STEP
    ) -> float:
        """Largest deviation between the finite-difference flows and A_i y"""
        worst = 0.0
        for index in range(DIMENSION):
            fd = infinitesimal_action(index, points, step)
            predicted = points @ self.action_matrix(index).T
            worst = max(worst, float(np.max(np.abs(fd - predicted), initial=0.0)))
        return worst

    def nonzero_entries(self) -> list:
        """Readable listing of the nonzero brackets {X_i, X_j} = c X_k"""
        entries = []
        for i, j, k in zip(*np.nonzero(self.table)):
            if i < j:
                entries.append(
                    (
                        BASIS_LABELS[i],
                        BASIS_LABELS[j],
                        float(self.table[i, j, k]),
                        BASIS_LABELS[k],
                    )
                )
        return entries


@lru_cache(maxsize=1)
def structure_constants(step: float = STRUCTURE_FD_STEP) -> StructureConstants:
    """
    Derive the structure constants from finite differences of the coadjoint action.

    A_i[:, k] is the flow velocity at y = e_k. Entries are rounded to the
    nearest half-integer and the rounded table must reproduce the raw data.

    Returns:
        StructureConstants: The derived table, computed once and cached

    Raises:
        InconsistentTable: If an entry is more than 1e-6 from a half-integer
    """
    raw = np.zeros((DIMENSION, DIMENSION, DIMENSION))
    basis = np.eye(DIMENSION)
    for i in range(DIMENSION):
        velocities = infinitesimal_action(i, basis, step)
        # velocities[k, j] = A_i[j, k]
        raw[i] = -velocities.T
    rounded = np.round(2.0 * raw) / 2.0
    residual = float(np.max(np.abs(raw - rounded)))
    if residual > ROUNDING_TOLERANCE:
        raise InconsistentTable(f"Structure constants rounding residual {residual:.3e}")
    logger.debug("Derived structure constants, rounding residual %.3e", residual)
    return StructureConstants(rounded)


class PhaseSpaceFunction:
    """A scalar function on the dual algebra with a gradient"""

    def __call__(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, y: np.ndarray) -> np.ndarray:
        """Gradient with respect to [h, p, j, k], shape (..., 10)"""
        raise NotImplementedError

    def __mul__(self, other: "PhaseSpaceFunction") -> "ProductFunction":
        return ProductFunction(self, other)


class CoordinateFunction(PhaseSpaceFunction):
    """The linear coordinate x_index"""

    def __init__(self, index: int):
        if not 0 <= index < DIMENSION:
            raise ValueError(f"Coordinate index must be 0..9, got {index}")
        self.index = index

    def __call__(self, y: np.ndarray) -> np.ndarray:
        return np.asarray(y, dtype=float)[..., self.index]

    def gradient(self, y: np.ndarray) -> np.ndarray:
        y_arr = np.asarray(y, dtype=float)
        return np.broadcast_to(np.eye(DIMENSION)[self.index], y_arr.shape).copy()


class ChartPositionFunction(PhaseSpaceFunction):
    """The chart coordinate q_axis = k_axis / h"""

    def __init__(self, axis: int):
        if axis not in (0, 1, 2):
            raise ValueError(f"Axis must be 0, 1 or 2, got {axis}")
        self.axis = axis
        self._k_index = 7 + axis

    def __call__(self, y: np.ndarray) -> np.ndarray:
        y_arr = np.asarray(y, dtype=float)
        return y_arr[..., self._k_index] / y_arr[..., 0]

    def gradient(self, y: np.ndarray) -> np.ndarray:
        y_arr = np.asarray(y, dtype=float)
        grad = np.zeros(y_arr.shape)
        h = y_arr[..., 0]
        grad[..., 0] = -y_arr[..., self._k_index] / (h * h)
        grad[..., self._k_index] = 1.0 / h
        return grad


class ScalarField(PhaseSpaceFunction):
    """A user function with an optional analytic gradient, else finite differences"""

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        fd_step: float = STRUCTURE_FD_STEP,
    ):
        self.func = func
        self._gradient = gradient
        self.fd_step = fd_step

    def __call__(self, y: np.ndarray) -> np.ndarray:
        return self.func(np.asarray(y, dtype=float))

    def gradient(self, y: np.ndarray) -> np.ndarray:
        y_arr = np.asarray(y, dtype=float)
        if self._gradient is not None:
            return self._gradient(y_arr)
        columns = [
            central_derivative(lambda t: self.func(y_arr + t * e), self.fd_step)
            for e in np.eye(DIMENSION)
        ]
        return np.stack(columns, axis=-1)


class ProductFunction(PhaseSpaceFunction):
    """Pointwise product f g with the Leibniz gradient"""

    def __init__(self, left: PhaseSpaceFunction, right: PhaseSpaceFunction):
        self.left = left
        self.right = right

    def __call__(self, y: np.ndarray) -> np.ndarray:
        return self.left(y) * self.right(y)

    def gradient(self, y: np.ndarray) -> np.ndarray:
        return (
            self.left(y)[..., None] * self.right.gradient(y)
            + self.right(y)[..., None] * self.left.gradient(y)
        )


def lie_poisson_bracket(
    f: PhaseSpaceFunction,
    g: PhaseSpaceFunction,
    y: PointLike,
    constants: Optional[StructureConstants] = None,
) -> np.ndarray:
    """
    Lie-Poisson bracket {f, g}(y) = c^k_ij (df/dx_i)(dg/dx_j) y_k.

    Args:
        f: First function
        g: Second function
        y: Coadjoint point(s)
        constants: Structure constants; derived on first use when omitted

    Returns:
        np.ndarray: The bracket at each point
    """
    table = constants or structure_constants()
    y_arr = _as_array(y)
    tensor = table.poisson_tensor(y_arr)
    return np.einsum(
        "...i,...ij,...j->...", f.gradient(y_arr), tensor, g.gradient(y_arr)
    )


def chart_functions() -> list:
    """Chart coordinates (q1, q2, q3, p1, p2, p3) as phase-space functions"""
    return [ChartPositionFunction(a) for a in range(3)] + [
        CoordinateFunction(1 + a) for a in range(3)
    ]


def poisson_bivector(
    c: OrbitChartPoint, constants: Optional[StructureConstants] = None
) -> np.ndarray:
    """
    Brackets of the chart coordinates (q, p) from the Lie-Poisson engine.

    Returns:
        np.ndarray: Matrix of shape (..., 6, 6) with entries {z_a, z_b}
    """
    y = chart_to_point(c).as_array()
    functions = chart_functions()
    rows = [
        np.stack(
            [lie_poisson_bracket(fa, fb, y, constants) for fb in functions], axis=-1
        )
        for fa in functions
    ]
    return np.stack(rows, axis=-2)


def _momentum_curvature(p: np.ndarray, exponent: float = 3.0) -> np.ndarray:
    """E_ab = eps_abk p_k / |p|^exponent, shape (..., 3, 3)"""
    p_norm = np.linalg.norm(p, axis=-1)
    scale = (p_norm**exponent)[..., None, None]
    return np.einsum("abk,...k->...ab", LEVI_CIVITA, p) / scale


def symplectic_matrix(c: OrbitChartPoint) -> np.ndarray:
    """
    Matrix Omega_ab = omega(e_a, e_b) of the orbit symplectic form in (dq, dp).

    Omega = [[0, I], [-I, lambda E]] with E_ab = eps_abk p_k / |p|^3; it is
    the form whose inverse reproduces the Lie-Poisson brackets, Pi = -Omega^-1.

    Args:
        c: Chart point (|p| > p_min is enforced by the chart)

    Returns:
        np.ndarray: Antisymmetric matrix of shape (..., 6, 6)
    """
    curvature = c.helicity[..., None, None] * _momentum_curvature(c.p)
    shape = curvature.shape[:-2]
    omega = np.zeros(shape + (6, 6))
    omega[..., :3, 3:] = np.eye(3)
    omega[..., 3:, :3] = -np.eye(3)
    omega[..., 3:, 3:] = curvature
    return omega


def displayed_symplectic_matrix(c: OrbitChartPoint) -> np.ndarray:
    """
    Literal matrix of dq^i ^ dp^i - lambda eps_ijk p^k dp^i ^ dp^j / |p|^3.

    Its p-p block is -2 lambda E; comparing it with symplectic_matrix measures
    the normalization mismatch of the literal form.
    """
    omega = symplectic_matrix(c)
    omega[..., 3:, 3:] *= -2.0
    return omega


def symplectic_inverse_residual(
    c: OrbitChartPoint, constants: Optional[StructureConstants] = None
) -> float:
    """Largest entry of |-Omega^-1 - Pi| over the chart points"""
    inverse = np.linalg.inv(symplectic_matrix(c))
    return float(np.max(np.abs(-inverse - poisson_bivector(c, constants)), initial=0.0))


def liouville_density(c: OrbitChartPoint) -> np.ndarray:
    """sqrt(det Omega), the density of the symplectic volume in d^3q d^3p"""
    return np.sqrt(np.linalg.det(symplectic_matrix(c)))


def monopole_duality_check(
    c: OrbitChartPoint,
    strength: float = EQ1_STRENGTH,
    exponent: float = 3.0,
    constants: Optional[StructureConstants] = None,
) -> float:
    """
    Compare the orbit brackets with the monopole structure after exchanging roles.

    Under q -> momentum and p -> position of the monopole system the target
    table is {q_i, p_j} = delta_ij, {p_i, p_j} = 0 and
    {q_i, q_j} = -strength eps_ijk p_k / |p|^exponent.

    Args:
        c: Chart point
        strength: Monopole strength of the target structure
        exponent: Power of |p| in the target field
        constants: Structure constants

    Returns:
        float: Max entry deviation between the two tables
    """
    bivector = poisson_bivector(c, constants)
    target = np.zeros(bivector.shape)
    target[..., :3, :3] = -strength * _momentum_curvature(c.p, exponent)
    target[..., :3, 3:] = np.eye(3)
    target[..., 3:, :3] = -np.eye(3)
    return float(np.max(np.abs(bivector - target), initial=0.0))


if __name__ == "__main__":
    print("📐 Deriving Poincare structure constants...")
    table = structure_constants()
    print(f"✅ antisymmetry residual {table.antisymmetry_residual():.3g}")
    print(f"✅ Jacobi residual {table.jacobi_residual():.3g}")
    for left, right, coefficient, result in table.nonzero_entries()[:6]:
        print(f"   {{{left}, {right}}} = {coefficient:+g} {result}")
