"""Exact sampling of the process's driving subordinator and increments.

The subordinator value over a window of length t follows the one-sided
stable law with Laplace transform exp(-t lambda^(alpha/2)), tempered by
the weight exp(-m^(2/alpha) u). Sampling is exact in distribution:

  * plain stable draws use the two-uniform angular representation
    (no series truncation, no density inversion);
  * tempering is a rejection step with acceptance weight
    exp(-m^(2/alpha) S), accepted with overall probability exp(-m t);
    long windows are split additively so each piece keeps a workable
    acceptance rate.

Process increments are the subordinated Gaussians: given a subordinator
increment V, the spatial displacement is sqrt(2 V) times a standard
normal vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from relkernel import _backend
from relkernel.kernels import ProcessParams

__all__ = [
    "RngStream",
    "sample_stable_increment",
    "sample_tempered_increment",
    "sample_process_increment",
]

# Splitting threshold for the tempered rejection sampler. Windows longer
# than this are cut into equal pieces; each piece then has acceptance
# rate exp(-m t_piece) >= exp(-m).
T_MAX_REJECT = 1.0


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream identity: (seed, stream_id).

    Materialize with generator(); the same pair always yields the same
    stream. Parallel consumers take substreams with distinct stream_ids.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not (0 <= int(self.seed) < 2 ** 64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if int(self.stream_id) < 0:
            raise ValueError(f"stream_id must be >= 0, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))

    def substream(self, offset: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id + offset)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"rng must be an RngStream or numpy Generator, got {type(rng)}")


def sample_stable_increment(t: float, index: float, rng, size: int | None = None):
    """Draw from the one-sided stable law with Laplace transform
    exp(-t lambda^index).

    Args:
        t: time window, > 0.
        index: stability index of the subordinator, in (0, 1).
        rng: RngStream (materialized fresh per call) or a live Generator.
        size: None for a scalar, else the number of draws.

    Returns:
        float or ndarray of positive samples.
    """
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be positive and finite, got {t}")
    if not (0.0 < index < 1.0):
        raise ValueError(f"index must lie in (0, 1), got {index}")
    gen = _as_generator(rng)
    n = 1 if size is None else int(size)
    if n < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    out = _backend.stable_batch(gen, n, t, index)
    return float(out[0]) if size is None else out


def sample_tempered_increment(t: float, p: ProcessParams, rng,
                              size: int | None = None,
                              t_max_reject: float = T_MAX_REJECT,
                              return_stats: bool = False):
    """Draw the tempered subordinator increment over a window of length t.

    Args:
        t: window length, > 0.
        p: process parameters (alpha and m are used).
        rng: RngStream or Generator.
        size: None for a scalar, else number of draws.
        t_max_reject: maximum window handled by one rejection pass; must
            satisfy m * t_max_reject < 30 or the acceptance rate underflows
            (configuration error).
        return_stats: also return the total number of stable proposals.

    Returns:
        samples, or (samples, proposals) when return_stats is set.
    """
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be positive and finite, got {t}")
    if not t_max_reject > 0.0:
        raise ValueError(f"t_max_reject must be positive, got {t_max_reject}")
    if t_max_reject >= 30.0 / p.m:
        raise ValueError(
            f"t_max_reject={t_max_reject} with m={p.m} gives acceptance rate "
            f"exp(-{p.m * t_max_reject:.1f}); require t_max_reject < 30/m")
    gen = _as_generator(rng)
    n = 1 if size is None else int(size)
    if n < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    out, proposals = _backend.tempered_batch(gen, n, t, p.alpha, p.m, t_max_reject)
    samples = float(out[0]) if size is None else out
    if return_stats:
        return samples, proposals
    return samples


def sample_process_increment(dt: float, p: ProcessParams, rng,
                             size: int | None = None):
    """Draw spatial increments of the process over a step of length dt.

    Exact in distribution: V tempered subordinator increment, then a
    d-dimensional normal with per-coordinate variance 2 V.

    Returns:
        ndarray of shape (d,) for size=None, else (size, d).
    """
    gen = _as_generator(rng)
    n = 1 if size is None else int(size)
    v = sample_tempered_increment(dt, p, gen, size=n)
    z = ndtri(gen.random(n * p.d)).reshape(n, p.d)
    steps = np.sqrt(2.0 * np.asarray(v))[:, None] * z
    return steps[0] if size is None else steps
