"""Vectorized sweeps over code pairs for the prism of C_n.

Codes are packed into uint64 scalars using the prism vertex indexing
(cycle bit a, bar bit n+a), so both the condition system and the
definitional ball requirements become "mask & code != 0" tests that numpy
applies to millions of codes at once.  The definitional side is built
from the prism's actual distance balls, independent of the condition
masks, which is what makes the equivalence sweeps meaningful.

Scope: 2n must fit a uint64 payload, n <= 31; the sweeps are meant for
desk-scale n anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cycleprism import condition_masks, _prism
from .graphs import ball_table


def _check_n(n: int) -> None:
    if not 3 <= n <= 31:
        raise ValueError("vectorized sweeps support 3 <= n <= 31")


def all_codes(n: int) -> np.ndarray:
    """Every code pair for C_n's prism, ascending; 2^(2n) entries."""
    _check_n(n)
    if n > 12:
        raise ValueError("full enumeration beyond n = 12 will not fit in memory")
    return np.arange(1 << 2 * n, dtype=np.uint64)

def random_codes(n: int, count: int, seed: int) -> np.ndarray:
    """count uniform code pairs, reproducible from the seed."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    return rng.integers(0, 1 << 2 * n, size=count, dtype=np.uint64)


def _hits_all(codes: np.ndarray, masks) -> np.ndarray:
    ok = np.ones(codes.shape, dtype=bool)
    for m in masks:
        ok &= (codes & np.uint64(m)) != 0
    return ok


def condition_satisfied(n: int, codes: np.ndarray) -> np.ndarray:
    """True where the code meets every condition instance."""
    return _hits_all(codes, [c.mask for c in condition_masks(n)])


@lru_cache(maxsize=32)
def _definitional_masks(n: int) -> tuple[int, ...]:
    prism = _prism(n)
    balls = ball_table(prism, 1).balls
    masks = list(balls)
    for u in range(prism.order):
        for v in range(u + 1, prism.order):
            diff = balls[u] ^ balls[v]
            if not diff:
                raise ValueError(f"prism of C_{n} has radius-1 twins, no code exists")
            masks.append(diff)
    return tuple(masks)


def definition_satisfied(n: int, codes: np.ndarray) -> np.ndarray:
    """True where the code is an identifying code by the ball definition."""
    _check_n(n)
    return _hits_all(codes, _definitional_masks(n))


def bar_counts(n: int, codes: np.ndarray) -> np.ndarray:
    return np.bitwise_count(codes >> np.uint64(n))


@dataclass(frozen=True)
class SweepResult:
    n: int
    total: int
    valid: int                      # definitional identifying codes seen
    condition_clean: int            # codes with zero condition violations
    necessity_failures: np.ndarray  # valid but violating some condition
    sufficiency_failures: np.ndarray  # condition-clean, bar side >= 4, not valid

    @property
    def ok(self) -> bool:
        return len(self.necessity_failures) == 0 and len(self.sufficiency_failures) == 0


def equivalence_sweep(n: int, codes: np.ndarray) -> SweepResult:
    """Compare the condition system to the definition over given codes.

    Necessity must hold for every code; sufficiency only where the bar
    side has at least 4 members.  Both failure arrays are empty exactly
    when the implementation and the reduction agree on this sample.
    """
    _check_n(n)
    valid = definition_satisfied(n, codes)
    clean = condition_satisfied(n, codes)
    enough_bar = bar_counts(n, codes) >= 4
    necessity_bad = codes[valid & ~clean]
    sufficiency_bad = codes[clean & enough_bar & ~valid]
    return SweepResult(
        n=n,
        total=len(codes),
        valid=int(np.count_nonzero(valid)),
        condition_clean=int(np.count_nonzero(clean)),
        necessity_failures=necessity_bad,
        sufficiency_failures=sufficiency_bad,
    )


def enumerate_valid_codes(n: int) -> np.ndarray:
    """All identifying codes of C_n's prism, as packed uint64 masks."""
    codes = all_codes(n)
    return codes[definition_satisfied(n, codes)]
