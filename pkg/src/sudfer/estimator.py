"""Monte Carlo estimation of E max for Gaussian vectors, with a 2-d oracle.

Every stochastic output is an MCEstimate: value, CLT standard error, sample
count, seed.  Batches are streamed shard by shard (see gaussian.py), so large
(samples x n) products never have to fit in memory at once.

For n = 2 there is a closed form.  With d = mu1 - mu2 and
theta^2 = Var(V1 - V2) = cov[0,0] + cov[1,1] - 2*cov[0,1],

    E max(V1, V2) = mu1*Phi(d/theta) + mu2*Phi(-d/theta) + theta*phi(d/theta),

degenerating to max(mu1, mu2) at theta = 0.  The test suite validates this
once against brute-force 2-d tensor quadrature before anything relies on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidInput
from .gaussian import GaussianSpec, check_seed, derive_seed, iter_sample_shards


@dataclass(frozen=True)
class MCEstimate:
    """A Monte Carlo value with its CLT uncertainty."""

    value: float
    stderr: float
    samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.samples < 2:
            raise InvalidInput(f"samples must be >= 2, got {self.samples}")
        if not (self.stderr >= 0.0):
            raise InvalidInput(f"stderr must be >= 0, got {self.stderr}")
        object.__setattr__(self, "seed", check_seed(self.seed))


def estimate_from_values(values: np.ndarray, seed: int) -> MCEstimate:
    """Reduce per-draw values to (mean, sd/sqrt(N)).  Needs N >= 2."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] < 2:
        raise InvalidInput("need a 1-d array of at least two per-draw values")
    n = v.shape[0]
    return MCEstimate(
        value=float(v.mean()),
        stderr=float(v.std(ddof=1) / math.sqrt(n)),
        samples=n,
        seed=check_seed(seed),
    )


def max_values(spec: GaussianSpec, samples: int, seed: int) -> np.ndarray:
    """Per-draw rowwise maxima, streamed in shard order."""
    if samples < 2:
        raise InvalidInput(f"samples must be >= 2, got {samples}")
    parts = [shard.max(axis=1) for shard in iter_sample_shards(spec, samples, seed)]
    return np.concatenate(parts)


def expected_max_mc(spec: GaussianSpec, samples: int, seed: int) -> MCEstimate:
    """Monte Carlo estimate of E max_i V_i.  Deterministic per (spec, samples, seed)."""
    return estimate_from_values(max_values(spec, samples, seed), seed)


def _phi(z: float) -> float:
    return math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)


def _Phi(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def expected_max_bivariate_exact(spec: GaussianSpec) -> float:
    """Closed-form E max(V1, V2) for a 2-dimensional law."""
    if spec.n != 2:
        raise DimensionMismatch(f"closed form needs n = 2, got n = {spec.n}")
    mu1, mu2 = (float(m) for m in spec.mean)
    c = spec.covariance
    theta_sq = float(c[0, 0] + c[1, 1] - 2.0 * c[0, 1])
    if theta_sq <= 0.0:
        # V1 - V2 is a.s. constant: the max is just the larger mean.
        return mu1 if mu1 >= mu2 else mu2
    theta = math.sqrt(theta_sq)
    d = mu1 - mu2
    return mu1 * _Phi(d / theta) + mu2 * _Phi(-d / theta) + theta * _phi(d / theta)


def empirical_gap(
    spec_x: GaussianSpec,
    spec_y: GaussianSpec,
    samples: int,
    seed: int,
) -> tuple[MCEstimate, MCEstimate]:
    """(gap, abs_gap) between independently estimated expected maxima.

    The two laws are sampled on distinct substreams derived from the one
    seed; the gap's stderr combines the two in quadrature, and abs_gap
    shares it.
    """
    est_x = expected_max_mc(spec_x, samples, derive_seed(seed, 0))
    est_y = expected_max_mc(spec_y, samples, derive_seed(seed, 1))
    value = est_x.value - est_y.value
    stderr = math.hypot(est_x.stderr, est_y.stderr)
    gap = MCEstimate(value=value, stderr=stderr, samples=samples, seed=check_seed(seed))
    abs_gap = MCEstimate(value=abs(value), stderr=stderr, samples=samples, seed=check_seed(seed))
    return gap, abs_gap
