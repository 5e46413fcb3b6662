"""Brute-force reference solvers used to check the closed-form updates.

Test-scale only (m <= 4). The search enumerates every active set: each subset
S of assets allowed to be positive, with the linear constraint either active
or not. On each candidate face the nearest point is an equality-constrained
least-squares projection; the best feasible candidate over all faces is the
exact optimum of

    minimize 1/2 ||b - b_t||^2  over the simplex, subject to b.d <= eps (or >=).

Nothing here calls project_simplex or the strategy update rules.
"""

from __future__ import annotations

from itertools import combinations
from typing import Literal

import numpy as np
import numpy.typing as npt

from revertbench.errors import InfeasibleConstraintError, ValidationError
from revertbench.numerics import Portfolio

MAX_ORACLE_ASSETS = 4
_FEASIBILITY_TOL = 1e-12
_TIE_TOL = 1e-12

Sense = Literal["<=", ">="]


def _face_point(
    center: np.ndarray, support: tuple[int, ...], rows: np.ndarray, rhs: np.ndarray
) -> np.ndarray | None:
    """Nearest point to center with b[~support] = 0 and rows[:, support] b = rhs."""
    a = rows[:, list(support)]
    c = center[list(support)]
    b_s = c - np.linalg.pinv(a) @ (a @ c - rhs)
    if not np.allclose(a @ b_s, rhs, rtol=0.0, atol=1e-10):
        return None
    b = np.zeros_like(center)
    b[list(support)] = b_s
    return b


def _search(
    center: np.ndarray,
    allowed: list[int],
    direction: np.ndarray | None,
    sense: Sense,
    epsilon: float,
) -> np.ndarray:
    m = center.size
    sign = 1.0 if sense == ">=" else -1.0
    ones = np.ones((1, m))
    systems = [(ones, np.array([1.0]))]
    if direction is not None:
        systems.append(
            (np.vstack([ones, direction[None, :]]), np.array([1.0, epsilon]))
        )

    best: np.ndarray | None = None
    best_dist = np.inf
    for size in range(1, len(allowed) + 1):
        for support in combinations(allowed, size):
            for rows, rhs in systems:
                b = _face_point(center, support, rows, rhs)
                if b is None or np.any(b < -_FEASIBILITY_TOL):
                    continue
                if (
                    direction is not None
                    and sign * (b @ direction - epsilon) < -_FEASIBILITY_TOL
                ):
                    continue
                dist = float(np.sum((b - center) ** 2))
                if dist < best_dist:
                    best, best_dist = b, dist
    assert best is not None  # the vertices of `allowed` are always candidates
    return np.maximum(best, 0.0)


def oracle_qp(
    b_t: npt.ArrayLike,
    direction: npt.ArrayLike,
    sense: Sense,
    epsilon: float,
    strict: bool = False,
) -> Portfolio:
    """Closest simplex point to b_t with b.direction <= / >= epsilon.

    If the constraint can't be met anywhere on the simplex, returns the point
    closest to b_t among those minimizing (<=) or maximizing (>=) b.direction,
    or raises InfeasibleConstraintError when ``strict``.
    """
    b_t = np.asarray(b_t, dtype=np.float64)
    d = np.asarray(direction, dtype=np.float64)
    m = b_t.size
    if m > MAX_ORACLE_ASSETS:
        raise ValidationError(f"oracle is limited to {MAX_ORACLE_ASSETS} assets")
    if d.shape != b_t.shape:
        raise ValidationError("direction and portfolio lengths differ")
    if sense not in ("<=", ">="):
        raise ValidationError(f"unknown constraint sense {sense!r}")

    extreme = d.max() if sense == ">=" else d.min()
    infeasible = epsilon > extreme if sense == ">=" else epsilon < extreme
    if infeasible:
        if strict:
            raise InfeasibleConstraintError(
                f"b.d {sense} {epsilon} has no solution on the simplex"
            )
        allowed = [j for j in range(m) if abs(d[j] - extreme) <= _TIE_TOL]
        return _search(b_t, allowed, None, sense, epsilon)

    return _search(b_t, list(range(m)), d, sense, epsilon)


def oracle_project_simplex(v: npt.ArrayLike) -> Portfolio:
    """Closest simplex point to v, by the same exhaustive search."""
    v = np.asarray(v, dtype=np.float64)
    if v.size > MAX_ORACLE_ASSETS:
        raise ValidationError(f"oracle is limited to {MAX_ORACLE_ASSETS} assets")
    return _search(v, list(range(v.size)), None, ">=", 0.0)
