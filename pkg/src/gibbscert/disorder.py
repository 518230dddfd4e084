"""Random interaction norms: distributions, kappa weights, and the critical beta.

The per-edge weight kappa_xy(beta) = exp(4 beta |W_xy|) - 1 drives every
path-sum bound; its expectation kappa(beta) = MGF(4 beta) - 1 is strictly
increasing in beta, and the critical inverse temperature beta* solves
kappa(beta*) = exp(-gamma).

Sampling is counter-based: each edge's norm comes from a Philox stream
keyed by (seed, edge id), so samples do not depend on iteration order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy import integrate

if TYPE_CHECKING:
    from .graphs import Graph


class MomentExplosionError(ValueError):
    """MGF requested outside its finite domain."""


@dataclass(frozen=True)
class NormDistribution:
    """Law of the interaction norm |W_xy| (support in [0, inf)).

    Families: exponential(rate), uniform(0, a), half_normal(scale),
    constant(w).  The exponential family has a finite MGF only for
    t < rate; the others are exponentially integrable everywhere.
    """

    family: str
    param: float

    def __post_init__(self):
        if self.family not in ("exponential", "uniform", "half_normal", "constant"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.param < 0 or (self.family != "constant" and self.param <= 0):
            raise ValueError("parameter must be positive")

    @property
    def mgf_sup(self) -> float:
        """Supremum of t for which E[exp(t |W|)] is finite."""
        return self.param if self.family == "exponential" else math.inf

    def mgf(self, t: float) -> float:
        """E[exp(t |W|)], closed form except half-normal (adaptive quadrature)."""
        if t < 0:
            raise ValueError("t must be nonnegative")
        if t == 0:
            return 1.0
        if self.family == "exponential":
            lam = self.param
            if t >= lam:
                raise MomentExplosionError(
                    f"exponential({lam}) MGF diverges at t={t} >= rate"
                )
            return lam / (lam - t)
        if self.family == "uniform":
            a = self.param
            return math.expm1(t * a) / (t * a)
        if self.family == "constant":
            return math.exp(t * self.param)
        # half-normal with scale s: density 2/(s sqrt(2 pi)) exp(-x^2 / 2 s^2)
        s = self.param
        c = 2.0 / (s * math.sqrt(2.0 * math.pi))
        val, _ = integrate.quad(
            lambda x: c * math.exp(t * x - x * x / (2.0 * s * s)),
            0.0,
            math.inf,
            epsrel=1e-12,
            epsabs=0.0,
            limit=200,
        )
        return val

    def mean(self) -> float:
        if self.family == "exponential":
            return 1.0 / self.param
        if self.family == "uniform":
            return self.param / 2.0
        if self.family == "constant":
            return self.param
        return self.param * math.sqrt(2.0 / math.pi)

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        if self.family == "exponential":
            return -math.expm1(-self.param * x)
        if self.family == "uniform":
            return min(x / self.param, 1.0)
        if self.family == "constant":
            return 1.0 if x >= self.param else 0.0
        return math.erf(x / (self.param * math.sqrt(2.0)))

    def sample(self, rng: np.random.Generator, size: int = 1) -> np.ndarray:
        if self.family == "exponential":
            return rng.exponential(1.0 / self.param, size)
        if self.family == "uniform":
            return rng.uniform(0.0, self.param, size)
        if self.family == "constant":
            return np.full(size, self.param)
        return np.abs(rng.normal(0.0, self.param, size))

    def to_dict(self) -> dict:
        return {"family": self.family, "param": self.param}


def exponential(rate: float) -> NormDistribution:
    return NormDistribution("exponential", rate)


def uniform(a: float) -> NormDistribution:
    return NormDistribution("uniform", a)


def half_normal(scale: float) -> NormDistribution:
    return NormDistribution("half_normal", scale)


def constant(w: float) -> NormDistribution:
    return NormDistribution("constant", w)


def from_dict(d: dict) -> NormDistribution:
    return NormDistribution(d["family"], float(d["param"]))


# ---------------------------------------------------------------------------
# kappa and the critical inverse temperature


def edge_kappa(norm: float, beta: float) -> float:
    """exp(4 beta norm) - 1 for a realized norm."""
    if norm < 0:
        raise ValueError("norm must be nonnegative")
    return math.expm1(4.0 * beta * norm)


def mean_kappa(d: NormDistribution, beta: float) -> float:
    """E[edge_kappa] = MGF(4 beta) - 1, with expm1-accurate closed forms."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    t = 4.0 * beta
    if t == 0:
        return 0.0
    if d.family == "exponential":
        lam = d.param
        if t >= lam:
            raise MomentExplosionError(
                f"exponential({lam}) mean kappa diverges at beta={beta}"
            )
        return t / (lam - t)
    if d.family == "uniform":
        ta = t * d.param
        return (math.expm1(ta) - ta) / ta
    if d.family == "constant":
        return math.expm1(t * d.param)
    return d.mgf(t) - 1.0


def kappa_margin(d: NormDistribution, gamma: float, beta: float) -> float:
    """kappa(beta) * e^gamma; below 1 means the uniqueness regime."""
    return mean_kappa(d, beta) * math.exp(gamma)


def beta_star(d: NormDistribution, gamma: float, tol: float = 1e-10) -> float:
    """The unique beta with mean_kappa(beta) = exp(-gamma), by bisection.

    Uniqueness follows from strict monotonicity of kappa.  Raises if the
    target is unreachable within the MGF domain (cannot happen for the
    built-in families with unbounded kappa).
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = math.exp(-gamma)
    hi_domain = d.mgf_sup / 4.0  # sup of admissible beta
    lo = 0.0
    hi = min(1.0, hi_domain / 2.0) if math.isfinite(hi_domain) else 1.0
    while mean_kappa(d, hi) < target:
        if math.isfinite(hi_domain):
            hi = 0.5 * (hi + hi_domain)
            if hi_domain - hi < 1e-15:
                sup_kappa = mean_kappa(d, hi)
                raise MomentExplosionError(
                    f"target kappa {target} unreachable; sup attainable ~ {sup_kappa}"
                )
        else:
            hi *= 2.0
            if hi > 1e12:
                raise MomentExplosionError("target kappa unreachable (degenerate law)")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mean_kappa(d, mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# per-edge sampling


@dataclass(frozen=True)
class DisorderSample:
    """Frozen draw of i.i.d. edge norms (and optional Rademacher signs)."""

    distribution: NormDistribution
    seed: int
    sign_mode: str  # "positive" | "rademacher"
    norms: dict[tuple[int, int], float]
    signs: dict[tuple[int, int], int]

    @staticmethod
    def _key(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def norm(self, u: int, v: int) -> float:
        return self.norms[self._key(u, v)]

    def sign(self, u: int, v: int) -> int:
        return self.signs[self._key(u, v)]

    def kappa(self, u: int, v: int, beta: float) -> float:
        return edge_kappa(self.norm(u, v), beta)

    def to_dict(self) -> dict:
        return {
            "distribution": self.distribution.to_dict(),
            "seed": self.seed,
            "sign_mode": self.sign_mode,
            "edges": [
                [u, v, self.norms[(u, v)], self.signs[(u, v)]]
                for (u, v) in sorted(self.norms)
            ],
        }


def _edge_rng(seed: int, u: int, v: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, ((u & 0xFFFFFFFF) << 32) | (v & 0xFFFFFFFF)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_disorder(
    d: NormDistribution,
    g: "Graph",
    sign_mode: str = "positive",
    seed: int = 0,
) -> DisorderSample:
    """One norm per edge, reproducible under the seed, keyed by edge id."""
    if sign_mode not in ("positive", "rademacher"):
        raise ValueError("sign_mode must be 'positive' or 'rademacher'")
    norms: dict[tuple[int, int], float] = {}
    signs: dict[tuple[int, int], int] = {}
    for (u, v) in g.edges:
        rng = _edge_rng(seed, u, v)
        norms[(u, v)] = float(d.sample(rng, 1)[0])
        if sign_mode == "rademacher":
            signs[(u, v)] = 1 if rng.integers(0, 2) == 1 else -1
        else:
            signs[(u, v)] = 1
    return DisorderSample(
        distribution=d, seed=seed, sign_mode=sign_mode, norms=norms, signs=signs
    )
