"""Gaussian models of constraint outputs.

A constraint output y is modeled as y ~ N(mean, cov). This module builds
that distribution from linearized constraints with state feedback, computes
the signed standardized margins used by the risk estimators, and draws
reproducible samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_symmetric, cholesky_lower, congruence

__all__ = [
    "GaussianVec",
    "LinearConstraintModel",
    "constraint_distribution",
    "linearized_norm_constraint",
    "signed_mahalanobis",
    "sorted_radii",
    "sample",
]


@dataclass(frozen=True)
class GaussianVec:
    """Mean and positive-definite covariance of a constraint output.

    Positive definiteness is checked once at construction (fail fast, with
    the error pointing at the construction site); the Cholesky factor is
    kept for sampling.
    """

    mean: np.ndarray
    cov: np.ndarray
    chol: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        if mean.ndim != 1:
            raise ValueError(f"mean must be a vector, got shape {mean.shape}")
        cov = as_symmetric(self.cov)
        if cov.shape[0] != mean.shape[0]:
            raise ValueError(
                f"mean has length {mean.shape[0]} but cov is {cov.shape}"
            )
        chol = cholesky_lower(cov)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "chol", chol)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    def to_json(self) -> str:
        return json.dumps({"mean": self.mean.tolist(), "cov": self.cov.tolist()})

    @classmethod
    def from_dict(cls, obj: dict) -> "GaussianVec":
        if not isinstance(obj, dict) or "mean" not in obj or "cov" not in obj:
            raise ValueError('expected an object with "mean" and "cov" keys')
        return cls(np.asarray(obj["mean"], dtype=float), np.asarray(obj["cov"], dtype=float))

    @classmethod
    def from_json(cls, text: str) -> "GaussianVec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LinearConstraintModel:
    """Linearized constraint y = f_val + (grad_x + grad_u @ gain) @ dx with
    dx ~ N(0, state_cov)."""

    f_val: np.ndarray
    grad_x: np.ndarray
    grad_u: np.ndarray
    gain: np.ndarray
    state_cov: np.ndarray

    def __post_init__(self) -> None:
        f_val = np.atleast_1d(np.asarray(self.f_val, dtype=float))
        grad_x = np.atleast_2d(np.asarray(self.grad_x, dtype=float))
        grad_u = np.atleast_2d(np.asarray(self.grad_u, dtype=float))
        gain = np.atleast_2d(np.asarray(self.gain, dtype=float))
        state_cov = as_symmetric(self.state_cov)
        d, n_x = grad_x.shape
        if f_val.shape[0] != d:
            raise ValueError("f_val length does not match gradient rows")
        if grad_u.shape[0] != d:
            raise ValueError("grad_x and grad_u row counts differ")
        if gain.shape != (grad_u.shape[1], n_x):
            raise ValueError(
                f"gain must be {grad_u.shape[1]}x{n_x}, got {gain.shape}"
            )
        if state_cov.shape[0] != n_x:
            raise ValueError("state_cov dimension does not match grad_x columns")
        for name, val in (
            ("f_val", f_val),
            ("grad_x", grad_x),
            ("grad_u", grad_u),
            ("gain", gain),
            ("state_cov", state_cov),
        ):
            object.__setattr__(self, name, val)


def constraint_distribution(m: LinearConstraintModel) -> GaussianVec:
    """Distribution of the linearized constraint output under state feedback."""
    combined = m.grad_x + m.grad_u @ m.gain
    return GaussianVec(m.f_val, congruence(combined, m.state_cov))


def linearized_norm_constraint(u_mean, u_cov, u_max: float) -> GaussianVec:
    """Scalar distribution of ||u||_2 - u_max, linearized at the nominal u.

    The gradient of the norm at u_mean is u_mean / ||u_mean||, so the output
    variance is u_mean^T u_cov u_mean / ||u_mean||^2.
    """
    u_mean = np.atleast_1d(np.asarray(u_mean, dtype=float))
    norm = float(np.linalg.norm(u_mean))
    if norm == 0.0:
        raise ValueError("nominal control has zero norm; gradient undefined")
    u_cov = as_symmetric(u_cov)
    var = float(u_mean @ u_cov @ u_mean) / norm**2
    return GaussianVec([norm - float(u_max)], [[var]])


def signed_mahalanobis(g: GaussianVec) -> np.ndarray:
    """Signed standardized margins r_i = -mean_i / sigma_i.

    Positive entries mean the nominal constraint i is satisfied; negative
    entries mean it is violated.
    """
    variances = np.diag(g.cov)
    if np.any(variances <= 0.0):
        raise ValueError("covariance has a nonpositive diagonal entry")
    return -g.mean / np.sqrt(variances)


def sorted_radii(r) -> tuple[np.ndarray, np.ndarray]:
    """Ascending radii with a leading 0, plus the sorting permutation.

    Returns ``(r_tilde, perm)`` with ``r_tilde[0] == 0`` and
    ``r[perm[i-1]] == r_tilde[i]``. Ties are broken by original index
    (stable sort); any consistent choice gives the same d-th-order risk
    since equal radii contribute zero-width shells.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    perm = np.argsort(r, kind="stable")
    return np.concatenate(([0.0], r[perm])), perm


def sample(g: GaussianVec, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` samples of g, deterministically for a given seed.

    Uses the counter-based Philox generator so that identical
    ``(g, n, seed)`` gives bitwise-identical output on any platform and so
    parallel callers can partition the seed space (convention:
    ``seed ^ task_index``).
    """
    if n < 0:
        raise ValueError("sample count must be nonnegative")
    rng = np.random.Generator(np.random.Philox(np.uint64(seed)))
    z = rng.standard_normal((int(n), g.dim))
    return g.mean + z @ g.chol.T
