"""Accelerated-frame mode expansions and the acceleration <-> squeeze mapping.

A uniformly accelerated detector splits spacetime into two causally
disconnected wedges (here: wedge I, which it can access, and wedge II, which
it cannot).  In the accelerated frame a single inertial field mode of the
vacuum looks like a two-mode squeezed state over the wedge pair, with squeeze
parameter r tied to the dimensionless acceleration ratio a/(|k| c) by

    a/(|k| c) = -2 pi / ln(tanh^2 r),        r > 0,

with r = 0 mapped to zero acceleration.  The ladder sums are infinite; this
module builds them on a truncated ladder of `n_levels` occupation states and
deliberately does NOT renormalize: the missing tail weight (the truncation
deficit) is a useful diagnostic, and renormalizing is the caller's decision.

Two families of builders exist side by side:

* `vacuum_two_mode` / `particle_two_mode`: the two-wedge expansions, one
  factor per wedge, summed to the top of the ladder.
* `vacuum_compat` / `particle_compat`: single-factor variants whose ladder
  sums stop one term early and whose single-particle form keeps a leading
  |0> term instead of the sqrt(1)|1> term.  These quirks are the compat
  contract: sweep outputs built from them are regression targets and must
  not be "fixed" here.  Physics arguments belong on the two-mode builders.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .fockspace import FactorDims, Ket

# Truncation tolerances below this reportedly destabilize the ladder sums for
# squeeze parameters up to roughly 6; warn rather than refuse.
EPSILON_FLOOR = 0.1


def _check_squeeze(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"squeeze parameter must be finite and >= 0, got {r}")
    return r


def _check_levels(n_levels: int) -> int:
    n_levels = int(n_levels)
    if n_levels < 2:
        raise ValueError(f"ladder needs at least 2 levels, got {n_levels}")
    return n_levels


def acceleration_from_squeeze(r: float) -> float:
    """Dimensionless acceleration ratio a/(|k| c) for squeeze parameter r.

    Strictly increasing in r, with the inertial limit r = 0 mapped to exactly
    0 (a special case, since the closed form is singular there).
    """
    r = _check_squeeze(r)
    if r == 0.0:
        return 0.0
    return -2.0 * math.pi / math.log(math.tanh(r) ** 2)


def squeeze_from_acceleration(a_over_kc: float) -> float:
    """Inverse of `acceleration_from_squeeze`: r = artanh(exp(-pi/(a/|k|c)))."""
    a_over_kc = float(a_over_kc)
    if not math.isfinite(a_over_kc) or a_over_kc < 0.0:
        raise ValueError(f"acceleration ratio must be finite and >= 0, got {a_over_kc}")
    if a_over_kc == 0.0:
        return 0.0
    return math.atanh(math.exp(-math.pi / a_over_kc))


def truncation_level(r: float, epsilon: float) -> int:
    """Smallest ladder dimension N >= 2 with tanh(r)**N < epsilon."""
    r = _check_squeeze(r)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if epsilon < EPSILON_FLOOR:
        warnings.warn(
            f"epsilon = {epsilon} is below {EPSILON_FLOOR}; ladder sums are "
            "reported numerically unstable this deep",
            RuntimeWarning,
            stacklevel=2,
        )
    t = math.tanh(r)
    if t == 0.0:
        return 2
    # Closed-form starting point, then a local fix-up with the same float
    # comparisons the contract is stated in (t**n underflow is harmless: it
    # compares as < epsilon, which is the right direction).
    n = max(2, math.floor(math.log(epsilon) / math.log(t)) + 1)
    while t**n >= epsilon:
        n += 1
    while n > 2 and t ** (n - 1) < epsilon:
        n -= 1
    return n


@dataclass(frozen=True)
class TruncationSpec:
    """Fixed ladder dimension, or one derived from a tail tolerance.

    Exactly one of `n_max` (fixed mode, >= 2) and `epsilon` (derived mode,
    in (0, 1)) is set.
    """

    n_max: int | None = None
    epsilon: float | None = None

    def __post_init__(self) -> None:
        if (self.n_max is None) == (self.epsilon is None):
            raise ValueError("specify exactly one of n_max or epsilon")
        if self.n_max is not None and int(self.n_max) < 2:
            raise ValueError(f"n_max must be at least 2, got {self.n_max}")
        if self.epsilon is not None and not 0.0 < float(self.epsilon) < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    @classmethod
    def fixed(cls, n_max: int) -> "TruncationSpec":
        return cls(n_max=n_max)

    @classmethod
    def adaptive(cls, epsilon: float) -> "TruncationSpec":
        return cls(epsilon=epsilon)

    def level(self, r: float) -> int:
        """Ladder dimension to use at squeeze parameter r."""
        if self.n_max is not None:
            return int(self.n_max)
        return truncation_level(r, float(self.epsilon))


def vacuum_two_mode(n_levels: int, r: float) -> Ket:
    """Truncated two-wedge expansion of an inertial vacuum mode.

    On factors (n_levels, n_levels), wedge I first:

        (1/cosh r) * sum_{n=0}^{n_levels-1} tanh^n(r) |n>_I |n>_II

    Not renormalized; the norm shortfall is the truncation deficit.
    """
    n_levels = _check_levels(n_levels)
    r = _check_squeeze(r)
    t = math.tanh(r)
    amps = np.zeros((n_levels, n_levels), dtype=complex)
    for n in range(n_levels):
        amps[n, n] = t**n
    amps = amps * (1.0 / math.cosh(r))
    return Ket(amps.reshape(-1), FactorDims((n_levels, n_levels)))


def particle_two_mode(n_levels: int, r: float) -> Ket:
    """Truncated two-wedge expansion of an inertial single-particle mode.

    On factors (n_levels, n_levels):

        (1/cosh^2 r) * sum_{n=0}^{n_levels-2} tanh^n(r) sqrt(n+1) |n+1>_I |n>_II

    Exactly orthogonal to `vacuum_two_mode` at every truncation (the wedge-I
    occupations never coincide).  Not renormalized.
    """
    n_levels = _check_levels(n_levels)
    r = _check_squeeze(r)
    t = math.tanh(r)
    amps = np.zeros((n_levels, n_levels), dtype=complex)
    for n in range(n_levels - 1):
        amps[n + 1, n] = t**n * math.sqrt(n + 1)
    amps = amps * (1.0 / math.cosh(r) ** 2)
    return Ket(amps.reshape(-1), FactorDims((n_levels, n_levels)))


def vacuum_compat(n_levels: int, r: float) -> Ket:
    """Single-factor compat variant of the vacuum expansion.

    (1/cosh r) * (|0> + sum_{n=1}^{n_levels-2} tanh^n(r) |n>), on one factor
    of size n_levels.  Note the sum stops at n_levels - 2, one term short of
    the ladder top; this cutoff is part of the compat contract.
    """
    n_levels = _check_levels(n_levels)
    r = _check_squeeze(r)
    amps = np.zeros(n_levels, dtype=complex)
    amps[0] = 1.0
    for n in range(1, n_levels - 1):
        amps[n] += math.tanh(r) ** n
    amps = amps * (1.0 / math.cosh(r))
    return Ket(amps, FactorDims((n_levels,)))


def particle_compat(n_levels: int, r: float) -> Ket:
    """Single-factor compat variant of the single-particle expansion.

    (1/cosh^2 r) * (|0> + sum_{n=1}^{n_levels-2} tanh^n(r) sqrt(n+1) |n+1>).

    Two deliberate quirks relative to `particle_two_mode`: the sum keeps a
    leading |0> term where the two-mode form has sqrt(1)|1>, and it starts at
    n = 1.  In particular at r = 0 this returns |0>, not |1>.  Both quirks
    are preserved on purpose; compat sweeps regress against them.
    """
    n_levels = _check_levels(n_levels)
    r = _check_squeeze(r)
    amps = np.zeros(n_levels, dtype=complex)
    amps[0] = 1.0
    for n in range(1, n_levels - 1):
        amps[n + 1] += math.tanh(r) ** n * math.sqrt(n + 1)
    amps = amps * (1.0 / math.cosh(r) ** 2)
    return Ket(amps, FactorDims((n_levels,)))
