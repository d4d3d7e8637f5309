"""Least-squares fits for the timing experiments.

Both models are linear in their parameters, so ordinary least squares
suffices: t = m * n log2(n) + t_S for the complexity fits, and
t = t_s + t_p / w + m_c * (w - 1) for the worker-scaling model, whose
(w - 1) term captures a limitation to parallel execution that a pure
serial-fraction model misses. The quality measure r is the Pearson
correlation between observed and fitted times.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

import numpy as np

__all__ = ["FitResult", "fit_linear_nlogn", "fit_scaling_model"]


@dataclass(frozen=True)
class FitResult:
    """Fitted coefficients (model-dependent names) and the correlation r."""

    model: str
    params: Dict[str, float]
    r: float


def _pearson(observed: np.ndarray, fitted: np.ndarray) -> float:
    if len(observed) < 2 or np.ptp(observed) == 0 or np.ptp(fitted) == 0:
        warnings.warn(
            "degenerate fit (constant observed or fitted values); reporting r = 0",
            stacklevel=3,
        )
        return 0.0
    return float(np.corrcoef(observed, fitted)[0, 1])


def fit_linear_nlogn(points: Iterable[Tuple[float, float]]) -> FitResult:
    """Fit t = m * n log2(n) + t_S over (n, seconds) points."""
    pts = list(points)
    ns = [p[0] for p in pts]
    if len(set(ns)) < 2:
        raise ValueError("need at least 2 distinct n values to fit")
    x = np.array([n * math.log2(n) for n in ns], dtype=float)
    t = np.array([p[1] for p in pts], dtype=float)
    if np.ptp(x) == 0:
        raise ValueError("regressor n log2(n) has zero variance")
    design = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, t, rcond=None)
    fitted = design @ coef
    return FitResult(
        model="nlogn",
        params={"m": float(coef[0]), "t_S": float(coef[1])},
        r=_pearson(t, fitted),
    )


def fit_scaling_model(points: Iterable[Tuple[int, float]]) -> FitResult:
    """Fit t = t_s + t_p / w + m_c (w - 1) over (workers, seconds) points."""
    pts = list(points)
    ws = [p[0] for p in pts]
    if len(set(ws)) < 3:
        raise ValueError("need at least 3 distinct worker counts to fit")
    w = np.array(ws, dtype=float)
    t = np.array([p[1] for p in pts], dtype=float)
    design = np.column_stack([np.ones_like(w), 1.0 / w, w - 1.0])
    if np.linalg.matrix_rank(design) < 3:
        raise ValueError("singular normal equations for the scaling model")
    coef, *_ = np.linalg.lstsq(design, t, rcond=None)
    fitted = design @ coef
    return FitResult(
        model="scaling",
        params={"t_s": float(coef[0]), "t_p": float(coef[1]), "m_c": float(coef[2])},
        r=_pearson(t, fitted),
    )
