"""Reproducible random streams and the four samplers the claim simulator needs.

Every Monte Carlo replicate owns one :class:`RandomStream`, addressed by
``(master_seed, stream_id)``.  Identical pairs replay the identical draw
sequence bit for bit; distinct stream ids give statistically independent
substreams.  Derivation goes through :class:`numpy.random.SeedSequence`,
which mixes the pair with a fixed hash, so replicate ``r`` is reproducible
regardless of execution order or worker placement.

Severities are parameterized by (mean, variance); the Gamma shape/scale
conversion is internal.  A zero variance degenerates to a point mass at the
mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = [
    "RandomStream",
    "gamma_shape_scale",
    "sample_binomial",
    "sample_gamma_mv",
    "sample_multinomial",
    "sample_poisson",
]

#: Tolerance on probability-vector normalization.
PROB_TOL = 1e-9

_UINT64_MAX = 2**64 - 1


@dataclass(eq=False)
class RandomStream:
    """One substream of a master-seeded random source.

    A stream is single-consumer: draws advance its internal state.  Distinct
    streams may be consumed concurrently from different workers; they share
    no mutable state.
    """

    master_seed: int
    stream_id: int = 0
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_id"):
            value = getattr(self, name)
            if not (0 <= int(value) <= _UINT64_MAX):
                raise ParameterError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
        seq = np.random.SeedSequence([int(self.master_seed), int(self.stream_id)])
        self._gen = np.random.default_rng(seq)

    @property
    def generator(self) -> np.random.Generator:
        """The underlying numpy generator (PCG64)."""
        return self._gen


def sample_poisson(stream: RandomStream, mean: float) -> int:
    """Draw one Poisson variate with the given mean.

    ``mean = 0`` returns 0 deterministically.
    """
    if not math.isfinite(mean) or mean < 0:
        raise ParameterError(f"poisson mean must be finite and >= 0, got {mean!r}")
    return int(stream.generator.poisson(mean))


def sample_binomial(stream: RandomStream, n: int, p: float) -> int:
    """Draw one Binomial(n, p) variate; always within [0, n]."""
    if n < 0:
        raise ParameterError(f"binomial n must be >= 0, got {n!r}")
    if not (0.0 <= p <= 1.0):
        raise ParameterError(f"binomial p must lie in [0, 1], got {p!r}")
    return int(stream.generator.binomial(n, p))


def sample_multinomial(stream: RandomStream, n: int, probs) -> np.ndarray:
    """Split ``n`` into categories according to ``probs``.

    The components of the result are non-negative and sum to exactly ``n``.
    ``probs`` must be non-negative and sum to 1 within ``PROB_TOL``.
    """
    if n < 0:
        raise ParameterError(f"multinomial n must be >= 0, got {n!r}")
    pvals = np.asarray(probs, dtype=float)
    if pvals.ndim != 1 or pvals.size == 0:
        raise ParameterError("multinomial probs must be a non-empty 1-D vector")
    if np.any(pvals < 0) or not np.all(np.isfinite(pvals)):
        raise ParameterError("multinomial probs must be finite and >= 0")
    total = pvals.sum()
    if abs(total - 1.0) > PROB_TOL:
        raise ParameterError(f"multinomial probs sum {total!r} differs from 1 by more than {PROB_TOL}")
    return stream.generator.multinomial(int(n), pvals / total)


def gamma_shape_scale(mean: float, variance: float) -> tuple[float, float]:
    """Map a (mean, variance) severity parameterization to Gamma (shape, scale).

    shape = mean^2 / variance, scale = variance / mean.  Only valid for
    variance > 0; callers handle the degenerate point mass themselves.
    """
    return mean * mean / variance, variance / mean


def sample_gamma_mv(stream: RandomStream, mean: float, variance: float, size: int | None = None):
    """Draw Gamma variates with the requested mean and variance.

    ``variance = 0`` returns the mean deterministically (point-mass limit).
    With ``size=None`` a single float is returned, otherwise an array.
    """
    if not math.isfinite(mean) or mean <= 0:
        raise ParameterError(f"gamma mean must be finite and > 0, got {mean!r}")
    if not math.isfinite(variance) or variance < 0:
        raise ParameterError(f"gamma variance must be finite and >= 0, got {variance!r}")
    if variance == 0.0:
        if size is None:
            return float(mean)
        return np.full(size, float(mean))
    shape, scale = gamma_shape_scale(mean, variance)
    draws = stream.generator.gamma(shape, scale, size=size)
    return float(draws) if size is None else draws
