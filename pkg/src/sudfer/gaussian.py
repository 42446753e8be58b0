"""Finite-dimensional Gaussian laws: validation, increments, sampling, blending.

A law is a mean vector plus a symmetric PSD covariance matrix.  The module
also computes the increment matrix

    g[i, j] = E (V_i - V_j)^2 = cov[i,i] + cov[j,j] - 2 cov[i,j] + (mu_i - mu_j)^2

whose entrywise comparison is the currency of Gaussian comparison theorems,
and realizes the "square-root blend" between two equal-mean laws,

    (1 - t) * centered covariance of X  +  t * centered covariance of Y,

i.e. the law of sqrt(1-t) * Xc + sqrt(t) * Yc + mu for independent centered
copies Xc, Yc.

Sampling is deterministic per (spec, count, seed): the batch is the
concatenation of fixed-size shards, shard k drawn from the substream
SeedSequence(seed, spawn_key=(k,)).  Worker count or chunked consumption can
never change the result.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    FactorizationFailure,
    InvalidInput,
    MeanMismatch,
    NotPSD,
    NotSymmetric,
)

# Relative PSD tolerance: eigenvalues down to -PSD_RTOL*(1+trace) are treated
# as rounding noise and clamped to zero.
PSD_RTOL = 1e-10

# Relative tolerance for the equal-means hypothesis of the comparison theorem.
MEAN_RTOL = 1e-9

# Rows per sampling shard.  Each shard has its own derived substream, so
# results are identical no matter how the shards are produced or consumed.
SHARD_ROWS = 8192

_MAX_SEED = 2**64


def _as_readonly(a: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out is a:
        out = out.copy()
    out.setflags(write=False)
    return out


def check_seed(seed: int) -> int:
    """Validate a 64-bit unsigned seed and return it as a plain int."""
    s = int(seed)
    if s != seed or not (0 <= s < _MAX_SEED):
        raise InvalidInput(f"seed must be an integer in [0, 2^64), got {seed!r}")
    return s


def derive_seed(seed: int, *path: int) -> int:
    """Derive a 64-bit sub-seed from a base seed and an integer path.

    Used for every internal stream split (per-trial seeds, per-law seeds),
    so that one experiment seed determines all downstream randomness.
    """
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(int(p) for p in path))
    lo, hi = (int(w) for w in ss.generate_state(2, np.uint32))
    return lo | (hi << 32)


@dataclass(frozen=True, eq=False)
class GaussianSpec:
    """The law of one finite Gaussian vector: mean and covariance.

    Construction checks shapes, finiteness and exact symmetry.  The PSD
    tolerance check (and clamping of tiny negative eigenvalues) lives in
    :func:`validate_spec`, which is how specs should normally be built.
    """

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=np.float64)
        cov = np.asarray(self.covariance, dtype=np.float64)
        if mean.ndim != 1 or cov.ndim != 2:
            raise DimensionMismatch(
                f"mean must be 1-d and covariance 2-d, got shapes {mean.shape} and {cov.shape}"
            )
        n = mean.shape[0]
        if n < 1:
            raise DimensionMismatch("need at least one coordinate")
        if cov.shape != (n, n):
            raise DimensionMismatch(
                f"covariance shape {cov.shape} does not match mean length {n}"
            )
        if not (np.isfinite(mean).all() and np.isfinite(cov).all()):
            raise InvalidInput("mean/covariance entries must be finite")
        if not np.array_equal(cov, cov.T):
            raise NotSymmetric("covariance is not exactly symmetric as stored")
        object.__setattr__(self, "mean", _as_readonly(mean))
        object.__setattr__(self, "covariance", _as_readonly(cov))

    @property
    def n(self) -> int:
        return self.mean.shape[0]

    def fingerprint(self) -> str:
        """Stable hash of (mean, covariance), identifying the generating law."""
        h = hashlib.sha256()
        h.update(np.int64(self.n).tobytes())
        h.update(self.mean.tobytes())
        h.update(self.covariance.tobytes())
        return h.hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class IncrementMatrix:
    """Matrix of squared L2 increments g[i,j] = E (V_i - V_j)^2.

    Symmetric, zero diagonal, nonnegative.  sqrt(g) is a pseudometric on the
    coordinates (checked statistically in the test suite, not on every
    construction).
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        g = np.asarray(self.entries, dtype=np.float64)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DimensionMismatch(f"entries must be square, got shape {g.shape}")
        if not np.isfinite(g).all():
            raise InvalidInput("increment entries must be finite")
        if not np.array_equal(g, g.T):
            raise NotSymmetric("increment matrix is not exactly symmetric")
        if np.any(np.diagonal(g) != 0.0):
            raise InvalidInput("increment matrix must have an exactly zero diagonal")
        if np.any(g < 0.0):
            raise InvalidInput("increment entries must be nonnegative")
        object.__setattr__(self, "entries", _as_readonly(g))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """One batch of iid draws, tagged with its seed and the law that made it."""

    draws: np.ndarray
    seed: int
    spec_fingerprint: str = field(default="")

    def __post_init__(self) -> None:
        draws = np.asarray(self.draws, dtype=np.float64)
        if draws.ndim != 2 or draws.shape[0] < 1:
            raise DimensionMismatch(f"draws must be a count x n matrix, got {draws.shape}")
        object.__setattr__(self, "draws", _as_readonly(draws))
        object.__setattr__(self, "seed", check_seed(self.seed))

    @property
    def count(self) -> int:
        return self.draws.shape[0]

    @property
    def n(self) -> int:
        return self.draws.shape[1]


def validate_spec(mean, covariance) -> GaussianSpec:
    """Build a validated GaussianSpec.

    Raises DimensionMismatch / NotSymmetric / NotPSD per the failed check.
    Eigenvalues in [-PSD_RTOL*(1+trace), 0) are rounding noise: the covariance
    is re-assembled with them clamped to zero so that downstream factorization
    cannot trip over them.
    """
    spec = GaussianSpec(np.asarray(mean, dtype=np.float64), np.asarray(covariance, dtype=np.float64))
    cov = spec.covariance
    trace = float(np.trace(cov))
    tol = PSD_RTOL * (1.0 + trace)
    eigvals = np.linalg.eigvalsh(cov)
    smallest = float(eigvals[0])
    if smallest < -tol:
        raise NotPSD(
            f"covariance has eigenvalue {smallest:.6g} below tolerance {-tol:.6g}"
        )
    if smallest < 0.0:
        w, v = np.linalg.eigh(cov)
        w = np.maximum(w, 0.0)
        clamped = (v * w) @ v.T
        clamped = (clamped + clamped.T) / 2.0  # exact symmetry after the matmul
        return GaussianSpec(spec.mean, clamped)
    return spec


def increment_matrix(spec: GaussianSpec) -> IncrementMatrix:
    """Increment matrix g[i,j] = cov[i,i]+cov[j,j]-2cov[i,j]+(mu_i-mu_j)^2.

    For a valid spec this is nonnegative up to rounding; entries that round
    to tiny negatives are clamped to zero so the type invariant holds.
    """
    cov = spec.covariance
    mu = spec.mean
    d = np.diagonal(cov)
    g = d[:, None] + d[None, :] - 2.0 * cov + (mu[:, None] - mu[None, :]) ** 2
    return IncrementMatrix(np.maximum(g, 0.0))


def _factor(spec: GaussianSpec) -> np.ndarray:
    """An n x n matrix L with L @ L.T equal to the covariance.

    Cholesky when the matrix is numerically PD; otherwise the symmetric
    eigendecomposition with negative eigenvalues clamped to zero (this is
    what makes degenerate laws like the all-zero law samplable).
    """
    cov = spec.covariance
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        pass
    try:
        w, v = np.linalg.eigh(cov)
    except np.linalg.LinAlgError as exc:
        raise FactorizationFailure(f"eigendecomposition failed: {exc}") from exc
    tol = PSD_RTOL * (1.0 + float(np.trace(cov)))
    if float(w[0]) < -tol:
        raise FactorizationFailure(
            f"covariance is numerically indefinite (eigenvalue {float(w[0]):.6g})"
        )
    return v * np.sqrt(np.maximum(w, 0.0))


def _transform(z: np.ndarray, factor: np.ndarray, mean: np.ndarray) -> np.ndarray:
    # Diagonal factors (iid / independent coordinates) skip the O(n^2) matmul;
    # with a single nonzero per row the results coincide bitwise.
    n = factor.shape[0]
    if np.count_nonzero(factor) == np.count_nonzero(np.diagonal(factor)):
        return z * np.diagonal(factor) + mean
    return z @ factor.T + mean


def iter_sample_shards(spec: GaussianSpec, count: int, seed: int):
    """Yield the sample batch in shard order without materializing it whole.

    Shard k holds rows [k*SHARD_ROWS, ...) and is drawn from the substream
    derived from (seed, k).  Concatenating the yielded arrays gives exactly
    ``sample(spec, count, seed).draws``.
    """
    if count < 1:
        raise InvalidInput(f"count must be >= 1, got {count}")
    check_seed(seed)
    factor = _factor(spec)
    n = spec.n
    degenerate = not np.any(factor)
    done = 0
    k = 0
    while done < count:
        rows = min(SHARD_ROWS, count - done)
        if degenerate:
            # z * 0 + mean == mean for every z: skip generating the normals.
            yield np.broadcast_to(spec.mean, (rows, n))
        else:
            rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(k,)))
            z = rng.standard_normal((rows, n))
            yield _transform(z, factor, spec.mean)
        done += rows
        k += 1


def sample(spec: GaussianSpec, count: int, seed: int) -> SampleBatch:
    """Draw ``count`` iid rows from the law.  Deterministic per (spec, count, seed)."""
    draws = np.concatenate(list(iter_sample_shards(spec, count, seed)), axis=0)
    return SampleBatch(draws, seed, spec.fingerprint())


def means_equal(spec_x: GaussianSpec, spec_y: GaussianSpec) -> bool:
    """Equal-means hypothesis check, with a relative floating-point band."""
    if spec_x.n != spec_y.n:
        raise DimensionMismatch(f"dimensions differ: {spec_x.n} vs {spec_y.n}")
    scale = max(float(np.max(np.abs(spec_x.mean))), float(np.max(np.abs(spec_y.mean))))
    return bool(np.max(np.abs(spec_x.mean - spec_y.mean)) <= MEAN_RTOL * (1.0 + scale))


def blended_spec(spec_x: GaussianSpec, spec_y: GaussianSpec, t: float) -> GaussianSpec:
    """Law of the square-root blend at time t in [0, 1].

    Covariance is the entrywise convex combination of the two (centered)
    covariances; the mean is the shared mean (interpolated, so that the
    t=0 / t=1 endpoints reproduce the inputs exactly even when the means
    differ by tolerance-level noise).  PSD holds by convexity, so no
    re-clamping is done and endpoints round-trip bit-identically.
    """
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"t must lie in [0, 1], got {t}")
    if not means_equal(spec_x, spec_y):
        raise MeanMismatch("blending requires entrywise equal means")
    s = 1.0 - t
    mean = s * spec_x.mean + t * spec_y.mean
    cov = s * spec_x.covariance + t * spec_y.covariance
    return GaussianSpec(mean, cov)
