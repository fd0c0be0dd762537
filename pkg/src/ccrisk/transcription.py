"""Deterministic transcriptions of Gaussian chance constraints.

Each method replaces P(y <= 0 componentwise) >= 1 - beta with deterministic
margins of the form mean + backoff <= 0; margins <= 0 imply the chance
constraint holds. Margins are exposed (not just the boolean) so optimizers
can use them as residuals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import risk as _risk
from .gaussian import GaussianVec
from .linalg import spectral_radius_sqrt
from .special import psi_inv, std_normal_quantile

__all__ = [
    "Method",
    "TranscriptionVerdict",
    "bound_norm_highdim",
    "bound_norm_lowdim",
    "bound_linear_1d",
    "bound_nakka_chung",
    "transcribe_spectral_radius",
    "transcribe_first_order",
    "transcribe_dth_order",
    "quantile_vector",
]


class Method(str, Enum):
    NORM_HIGHDIM = "norm_highdim"
    NORM_LOWDIM = "norm_lowdim"
    LINEAR_1D = "linear_1d"
    NAKKA_CHUNG = "nakka_chung"
    SPECTRAL_RADIUS = "spectral_radius"
    FIRST_ORDER = "first_order"
    DTH_ORDER = "dth_order"


@dataclass(frozen=True)
class TranscriptionVerdict:
    method: Method
    beta: float
    margins: np.ndarray
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "beta": self.beta,
            "margins": np.asarray(self.margins).tolist(),
            "satisfied": bool(self.satisfied),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_beta(beta: float) -> float:
    beta = float(beta)
    # beta = 0 makes the backoff infinite, beta = 1 makes the constraint
    # vacuous; both are rejected everywhere.
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie strictly in (0, 1), got {beta}")
    return beta


def bound_norm_highdim(beta: float, n_u: int, rho: float) -> float:
    """Norm-constraint safety bound [sqrt(2 ln(1/beta)) + sqrt(n_u)] * rho,
    valid in any control dimension."""
    beta = _check_beta(beta)
    if n_u < 1:
        raise ValueError("control dimension must be >= 1")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    return (math.sqrt(2.0 * math.log(1.0 / beta)) + math.sqrt(n_u)) * rho


def bound_norm_lowdim(beta: float, rho: float) -> float:
    """Sharper norm-constraint bound sqrt(2 ln(1/beta)) * rho for control
    dimension 1 or 2."""
    beta = _check_beta(beta)
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    return math.sqrt(2.0 * math.log(1.0 / beta)) * rho


def bound_linear_1d(beta: float, var_y: float) -> float:
    """Exact scalar Gaussian backoff Phi^-1(1-beta) * sigma (necessary and
    sufficient in one dimension)."""
    beta = _check_beta(beta)
    if var_y <= 0.0:
        raise ValueError("variance must be positive")
    return std_normal_quantile(1.0 - beta) * math.sqrt(var_y)


def bound_nakka_chung(beta: float, var_y: float) -> float:
    """Distribution-free scalar backoff sqrt((1-beta)/beta) * sigma; more
    conservative than the exact Gaussian bound."""
    beta = _check_beta(beta)
    if var_y <= 0.0:
        raise ValueError("variance must be positive")
    return math.sqrt((1.0 - beta) / beta * var_y)


def _verdict(method: Method, beta: float, margins: np.ndarray) -> TranscriptionVerdict:
    return TranscriptionVerdict(method, beta, margins, bool(np.all(margins <= 0.0)))


def transcribe_spectral_radius(g: GaussianVec, beta: float) -> TranscriptionVerdict:
    """Back off every component by psi_inv(beta, d) times the square root of
    the covariance spectral radius."""
    beta = _check_beta(beta)
    backoff = psi_inv(beta, g.dim) * spectral_radius_sqrt(g.cov)
    return _verdict(Method.SPECTRAL_RADIUS, beta, g.mean + backoff)


def transcribe_first_order(g: GaussianVec, beta: float) -> TranscriptionVerdict:
    """Back off each component by psi_inv(beta, d) times its own standard
    deviation."""
    beta = _check_beta(beta)
    sigma = np.sqrt(np.diag(g.cov))
    return _verdict(Method.FIRST_ORDER, beta, g.mean + psi_inv(beta, g.dim) * sigma)


def quantile_vector(g: GaussianVec, beta: float) -> np.ndarray:
    """Componentwise (1-beta)-quantile bound mean + psi_inv(beta, d) * sigma;
    y stays below it componentwise with probability at least 1 - beta."""
    beta = float(beta)
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    return g.mean + psi_inv(beta, g.dim) * np.sqrt(np.diag(g.cov))


def transcribe_dth_order(g: GaussianVec, beta: float) -> TranscriptionVerdict:
    """Accept when the d-th-order risk estimate is within beta.

    Satisfied requires mean <= 0 with at least one strictly negative
    component, and the d-th-order risk at most beta. The condition itself is
    boolean; the reported margin vector prepends (risk - beta) to the mean
    as a diagnostic residual.
    """
    beta = _check_beta(beta)
    estimate = _risk.risk_dth_order(g)
    if not estimate.defined or not np.any(g.mean != 0.0):
        # positive mean component, or mean exactly 0 (no strictly negative
        # entry to anchor the corollary)
        risk_value = estimate.value if estimate.defined else 1.0
        margins = np.concatenate(([risk_value - beta], g.mean))
        return TranscriptionVerdict(Method.DTH_ORDER, beta, margins, False)
    margins = np.concatenate(([estimate.value - beta], g.mean))
    return TranscriptionVerdict(Method.DTH_ORDER, beta, margins, bool(np.all(margins <= 0.0)))
