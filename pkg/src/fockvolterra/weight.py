"""Radial Fock-Sobolev weight psi_m(r) = r**2/2 - m*log(1+r) and its normalizer.

All functions take the modulus ``r = |z|`` and broadcast over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Floor used by the clamped normalizer ``max(eps, 1 + psi_m'(r))``.
CLAMP_EPS = 0.25

NORMALIZERS = ("canonical", "clamped")


@dataclass(frozen=True)
class Weight:
    """Fock-Sobolev order ``m`` together with the normalizer convention."""

    m: int
    normalizer: str = "canonical"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"order m must be a nonnegative integer, got {self.m!r}")
        if self.normalizer not in NORMALIZERS:
            raise ValueError(f"unknown normalizer {self.normalizer!r}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def mode(self) -> int:
        # integer code understood by the compiled kernels
        return NORMALIZERS.index(self.normalizer)


def _as_weight(w) -> Weight:
    return w if isinstance(w, Weight) else Weight(int(w))


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(np.isnan(r)):
        raise ValueError("radius must be nonnegative")
    return r


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def psi(w, r):
    """psi_m(r) = r^2/2 - m log(1+r)."""
    w = _as_weight(w)
    r = _check_r(r)
    return _out(0.5 * r * r - w.m * np.log1p(r))


def psi_prime(w, r):
    """Radial derivative r - m/(1+r)."""
    w = _as_weight(w)
    r = _check_r(r)
    return _out(r - w.m / (1.0 + r))


def normalizer(w, r):
    """Positive stand-in for ``1 + psi_m'(r)``.

    The canonical form is ``1 + r``; it is comparable to ``1 + psi_m'(r)``
    for ``r >= 2*sqrt(m)`` and, unlike the raw expression, never vanishes.
    The clamped form ``max(CLAMP_EPS, 1 + psi_m'(r))`` is kept for
    sensitivity studies.
    """
    w = _as_weight(w)
    r = _check_r(r)
    if w.normalizer == "canonical":
        return _out(1.0 + r)
    return _out(np.maximum(CLAMP_EPS, 1.0 + r - w.m / (1.0 + r)))


def log_normalizer(w, r):
    return _out(np.log(normalizer(w, r)))
