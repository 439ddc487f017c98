"""Central finite differences used as independent oracles.

The helpers work on any value type that supports ``scalar * value`` and
``value + value``, which covers both numpy arrays and ``Quaternion`` batches.
"""

from typing import Callable, Dict, Tuple, TypeVar

import numpy as np

T = TypeVar("T")

DEFAULT_FD_STEP = 1e-4

# offsets and weights of the central stencils, keyed by accuracy order
_STENCILS: Dict[int, Tuple[Tuple[int, float], ...]] = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1.0 / 12.0), (-1, -2.0 / 3.0), (1, 2.0 / 3.0), (2, -1.0 / 12.0)),
}


def central_derivative(
    func: Callable[[float], T], step: float = DEFAULT_FD_STEP, order: int = 2
) -> T:
    """
    Differentiate a one-parameter family at t = 0 with a central stencil.

    Args:
        func: Function of the scalar parameter t
        step: Stencil spacing
        order: Accuracy order of the stencil (2 or 4)

    Returns:
        The approximate derivative d/dt func(t) at t = 0

    Raises:
        ValueError: If the order is unsupported or the step is not positive
    """
    if order not in _STENCILS:
        raise ValueError(f"Unsupported finite-difference order {order}")
    if not step > 0.0:
        raise ValueError("Finite-difference step must be positive")

    total = None
    for offset, weight in _STENCILS[order]:
        term = (weight / step) * func(offset * step)  # type: ignore[operator]
        total = term if total is None else total + term
    return total  # type: ignore[return-value]


def directional_derivative(
    func: Callable[[np.ndarray], T],
    x: np.ndarray,
    direction: np.ndarray,
    step: float = DEFAULT_FD_STEP,
    order: int = 2,
) -> T:
    """
    Directional derivative of a field on R^3 by central differences.

    Args:
        func: Field evaluated on batches of points of shape (..., 3)
        x: Base points, shape (..., 3)
        direction: Direction vectors, broadcastable against x
        step: Stencil spacing
        order: Accuracy order of the stencil (2 or 4)

    Returns:
        The approximate derivative of func along direction at x
    """
    x = np.asarray(x, dtype=float)
    direction = np.asarray(direction, dtype=float)
    return central_derivative(lambda t: func(x + t * direction), step, order)


def partial_derivative(
    func: Callable[[np.ndarray], T],
    x: np.ndarray,
    axis: int,
    step: float = DEFAULT_FD_STEP,
    order: int = 2,
) -> T:
    """Partial derivative along coordinate axis 0, 1 or 2"""
    return directional_derivative(func, x, np.eye(3)[axis], step, order)
