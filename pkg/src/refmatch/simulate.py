"""Monte Carlo cross-validation of the mean-field referral formulas.

An explicit configuration-model social network is built from sampled
degrees, then a snapshot experiment estimates the probability that an
unemployed worker obtains vacancy information through at least one
contact.  The estimate is compared against the closed-form
``referral_expectation`` of the same degree law.

Snapshot design.  Each trial picks a uniformly random focal worker,
conditions it unemployed, and draws its contacts' states fresh: a
contact is employed with probability ``employment_rate`` and, if
employed, holds vacancy information with probability
``phi * (1 - (1 - vacancy_share)^d_f)`` -- an employed contact watches
the d_f jobs adjacent to its own, each vacant with probability
``vacancy_share``, and passes information on with frequency ``phi``.
Because the contact states are redrawn independently per trial, trials
are i.i.d. Bernoulli and the reported binomial standard error is exact
for the network-conditional success rate.  Contacts reached through
parallel edges are drawn per edge, matching the stub-count degree that
the mean-field expectation uses; self-loop stubs can never inform the
(unemployed) focal worker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .degree import DegreeDistribution

__all__ = [
    "Network",
    "SimConfig",
    "ReferralEstimate",
    "build_configuration_network",
    "estimate_referral_rate",
]

_PARITY_RESAMPLE_LIMIT = 100


@dataclass(frozen=True)
class Network:
    """Configuration-model multigraph in flat adjacency form.

    ``neighbors[offsets[i]:offsets[i+1]]`` lists node i's adjacency
    entries, one per stub: parallel edges repeat a partner, a self-loop
    contributes the node itself twice.
    """

    n: int
    degrees: np.ndarray
    neighbors: np.ndarray
    offsets: np.ndarray

    def neighbors_of(self, node: int) -> np.ndarray:
        return self.neighbors[self.offsets[node]:self.offsets[node + 1]]

    @property
    def stub_count(self) -> int:
        return int(self.offsets[-1])


def build_configuration_network(
    dist: DegreeDistribution, n: int, seed_or_rng: int | np.random.Generator
) -> Network:
    """Uniform stub-matching network with i.i.d. degrees from ``dist``.

    If the sampled stub total is odd the last node's degree is resampled
    (up to a bounded number of tries; a degree law with fixed parity,
    e.g. a constant odd degree, gets one extra stub instead).  Self-loops
    and parallel edges are kept: they vanish asymptotically and removing
    them would distort the degree sequence.
    """
    if n < 2:
        raise ValueError(f"network needs at least 2 nodes, got {n}")
    rng = (
        seed_or_rng
        if isinstance(seed_or_rng, np.random.Generator)
        else np.random.default_rng(seed_or_rng)
    )
    degrees = dist.sample(rng, n).astype(np.int64)
    if degrees.sum() % 2 == 1:
        for _ in range(_PARITY_RESAMPLE_LIMIT):
            degrees[-1] = int(dist.sample(rng, 1)[0])
            if degrees.sum() % 2 == 0:
                break
        else:
            degrees[-1] += 1

    total = int(degrees.sum())
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])
    if total == 0:
        return Network(n=n, degrees=degrees, neighbors=np.empty(0, dtype=np.int64), offsets=offsets)

    # stubs[perm] is the uniformly shuffled stub list; consecutive pairs
    # form edges.  inv maps a node-grouped stub to its shuffled slot, and
    # slot ^ 1 is its partner, so the node-grouped partner list (i.e. the
    # flat adjacency) falls out without any sort.
    stubs_by_node = np.repeat(np.arange(n, dtype=np.int64), degrees)
    perm = rng.permutation(total)
    shuffled = stubs_by_node[perm]
    inv = np.empty(total, dtype=np.int64)
    inv[perm] = np.arange(total, dtype=np.int64)
    neighbors = shuffled[inv ^ 1]
    return Network(n=n, degrees=degrees, neighbors=neighbors, offsets=offsets)


@dataclass(frozen=True)
class SimConfig:
    """Snapshot experiment configuration.

    ``employment_rate`` is 1 - u_i for the simulated group;
    ``vacancy_share`` is the fraction of jobs vacant, v / (1 - u + v).
    """

    dist: DegreeDistribution
    n_workers: int
    n_trials: int
    seed: int
    d_f: int
    employment_rate: float
    vacancy_share: float
    phi: float

    def __post_init__(self):
        if self.n_workers < 2:
            raise ValueError(f"need at least 2 workers, got {self.n_workers}")
        if self.n_trials < 1:
            raise ValueError(f"need at least one trial, got {self.n_trials}")
        if self.d_f < 0:
            raise ValueError(f"job-network degree must be >= 0, got {self.d_f}")
        for name in ("employment_rate", "vacancy_share", "phi"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {val}")

    @classmethod
    def at_context(
        cls,
        dist: DegreeDistribution,
        *,
        u_i: float,
        u: float,
        v: float,
        phi: float,
        d_f: int,
        n_workers: int = 100_000,
        n_trials: int = 100_000,
        seed: int = 0,
    ) -> "SimConfig":
        """Build a config from model-level quantities (u_i, u, v, phi)."""
        denom = 1.0 - u + v
        if not denom > 0.0:
            raise ValueError(f"degenerate job pool: 1 - u + v = {denom}")
        return cls(
            dist=dist,
            n_workers=n_workers,
            n_trials=n_trials,
            seed=seed,
            d_f=d_f,
            employment_rate=1.0 - u_i,
            vacancy_share=v / denom,
            phi=phi,
        )

    @property
    def informed_given_employed(self) -> float:
        """P(contact holds info | employed) = phi (1 - (1 - vacancy_share)^d_f)."""
        return self.phi * (1.0 - (1.0 - self.vacancy_share) ** self.d_f)


@dataclass(frozen=True)
class ReferralEstimate:
    estimate: float
    std_error: float
    n_trials: int
    successes: int

    def z_score(self, reference: float) -> float:
        """Standardized deviation from ``reference``; inf if se is zero and off."""
        if self.std_error == 0.0:
            return 0.0 if self.estimate == reference else math.inf
        return (self.estimate - reference) / self.std_error


def estimate_referral_rate(config: SimConfig) -> ReferralEstimate:
    """Empirical referral success frequency with binomial standard error.

    Builds the social network, then runs ``n_trials`` independent focal
    draws as described in the module docstring.  Raises if the group has
    no unemployed workers to sample (employment_rate == 1).
    """
    if config.employment_rate >= 1.0:
        raise ValueError("no unemployed focal candidates: employment rate is 1")
    rng = np.random.default_rng(config.seed)
    net = build_configuration_network(config.dist, config.n_workers, rng)

    t = config.n_trials
    focal = rng.integers(0, net.n, size=t)
    deg = net.offsets[focal + 1] - net.offsets[focal]
    total = int(deg.sum())
    if total == 0:
        return ReferralEstimate(estimate=0.0, std_error=0.0, n_trials=t, successes=0)

    # Ragged gather of each focal worker's adjacency entries.
    trial_of_entry = np.repeat(np.arange(t, dtype=np.int64), deg)
    before = np.concatenate(([0], np.cumsum(deg)[:-1]))
    entry_idx = np.repeat(net.offsets[focal], deg) + (np.arange(total, dtype=np.int64) - np.repeat(before, deg))
    contacts = net.neighbors[entry_idx]
    is_self = contacts == np.repeat(focal, deg)

    p_informed = config.informed_given_employed
    informed = (
        (rng.random(total) < config.employment_rate)
        & (rng.random(total) < p_informed)
        & ~is_self
    )
    successes = int(np.count_nonzero(np.bincount(trial_of_entry[informed], minlength=t)))
    est = successes / t
    se = math.sqrt(est * (1.0 - est) / t)
    return ReferralEstimate(estimate=est, std_error=se, n_trials=t, successes=successes)
