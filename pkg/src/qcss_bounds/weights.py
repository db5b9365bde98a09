"""Simplex weight vectors of length 2N-1 fed to the GLB functional.

Families: uniform, step(m), cosine(j) (weight vector 1), sine(m)
(positive cycle of sine, weight vector 2) and chebyshev(m) (weight
vector 3).  Every constructor returns a float ndarray that passes
:func:`validate_simplex`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .circulant import QcssParams

__all__ = [
    "SIMPLEX_EPS",
    "FAMILIES",
    "SimplexCheck",
    "WeightFamily",
    "uniform_weights",
    "step_weights",
    "cosine_weights",
    "raised_cosine_weights",
    "sine_weights",
    "chebyshev_angle",
    "chebyshev_default_m",
    "chebyshev_weights",
    "validate_simplex",
    "read_weight_file",
    "write_weight_file",
]

SIMPLEX_EPS = 1e-12
FAMILIES = ("uniform", "step", "cosine", "sine", "chebyshev")


@dataclass(frozen=True)
class SimplexCheck:
    ok: bool
    min_index: int
    min_value: float
    total: float
    message: str

    def __bool__(self):
        return self.ok


def validate_simplex(w, eps: float = SIMPLEX_EPS) -> SimplexCheck:
    """Check ``w_i >= -eps`` and ``|sum w - 1| <= eps``.

    The diagnostic names the most negative index and the observed sum.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        return SimplexCheck(False, -1, math.nan, math.nan, "weight vector must be a non-empty 1-D array")
    if not np.all(np.isfinite(w)):
        bad = int(np.flatnonzero(~np.isfinite(w))[0])
        return SimplexCheck(False, bad, float(w[bad]), math.nan, f"non-finite entry at index {bad}")
    idx = int(np.argmin(w))
    lo = float(w[idx])
    total = math.fsum(w)
    problems = []
    if lo < -eps:
        problems.append(f"negative entry w[{idx}] = {lo:.17g}")
    if abs(total - 1.0) > eps:
        problems.append(f"entries sum to {total:.17g}, not 1")
    ok = not problems
    return SimplexCheck(ok, idx, lo, total, "ok" if ok else "; ".join(problems))


def _finalize(w: np.ndarray) -> np.ndarray:
    # boundary touches come out as -1e-17 or so; anything worse is a bug
    neg = w < 0
    if np.any(neg):
        if np.min(w) < -SIMPLEX_EPS:
            i = int(np.argmin(w))
            raise ValueError(f"weight entry w[{i}] = {w[i]:.3e} is below -{SIMPLEX_EPS}")
        w = np.where(neg, 0.0, w)
        w = w / math.fsum(w)
    return w


def _check_n(N: int):
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")


def uniform_weights(N: int) -> np.ndarray:
    _check_n(N)
    L = 2 * N - 1
    return np.full(L, 1.0 / L)


def step_weights(N: int, m: int) -> np.ndarray:
    """``1/m`` on the first ``m`` entries, requires ``1 <= m <= N``."""
    _check_n(N)
    if not 1 <= m <= N:
        raise ValueError(f"step weights need 1 <= m <= N={N}, got m={m}")
    w = np.zeros(2 * N - 1)
    w[:m] = 1.0 / m
    return w


def raised_cosine_weights(N: int, r: float, theta: float = 0.0) -> np.ndarray:
    """Single-frequency weight ``(1 + 2r cos(theta + 2 pi i/(2N-1)))/(2N-1)``.

    Frequency content is ``v_0 = 1`` and ``v_1 = conj(v_{2N-2}) = r e^{i theta}``.
    Not validated: large ``r`` gives negative entries on purpose.
    """
    _check_n(N)
    L = 2 * N - 1
    i = np.arange(L)
    return (1.0 + 2.0 * r * np.cos(theta + 2.0 * np.pi * i / L)) / L


def cosine_weights(N: int, j: int = 0) -> np.ndarray:
    """Weight vector 1: ``(1 + cos(2 pi (i+j)/(2N-1)) / cos(pi/(2N-1))) / (2N-1)``.

    Touches zero at two entries.  ``j`` acts as a cyclic rotation, so the
    base vector is built once and rolled; results for different ``j`` are
    exact rotations of each other.
    """
    _check_n(N)
    L = 2 * N - 1
    i = np.arange(L)
    base = (1.0 + np.cos(2.0 * np.pi * i / L) / math.cos(math.pi / L)) / L
    # the zeros at i = N-1 and i = N are exact; rounding leaves +-1e-17 there
    base[N - 1] = base[N] = 0.0
    return np.roll(base, -(int(j) % L))


def sine_weights(N: int, m: int) -> np.ndarray:
    """Weight vector 2: ``tan(pi/2m) sin(pi i/m)`` for ``i < m``, else 0."""
    _check_n(N)
    if not 2 <= m <= 2 * N - 1:
        raise ValueError(f"sine weights need 2 <= m <= 2N-1={2 * N - 1}, got m={m}")
    w = np.zeros(2 * N - 1)
    i = np.arange(m)
    w[:m] = math.tan(math.pi / (2 * m)) * np.sin(np.pi * i / m)
    return _finalize(w)


def chebyshev_angle(params: QcssParams) -> float:
    """``phi`` with ``cos(phi) = 1 - K/(M N^2)``; needs ``K <= M N^2``."""
    K, M, N = params.K, params.M, params.N
    if K > M * N * N:
        raise ValueError(f"chebyshev weights need K <= M N^2 = {M * N * N}, got K={K}")
    return math.acos(1.0 - K / (M * N * N))


def chebyshev_default_m(params: QcssParams) -> int:
    """Even ``m`` closest to ``floor(pi/phi) + 1`` with ``m phi < pi + phi``.

    ``floor(pi/phi) + 2`` never satisfies the angle constraint, so an odd
    candidate drops to ``floor(pi/phi)``.  The support is also capped at
    2N-1 entries.
    """
    phi = chebyshev_angle(params)
    base = math.floor(math.pi / phi)
    m = base + 1 if (base + 1) % 2 == 0 else base
    cap = 2 * params.N - 1
    if m > cap:
        m = cap - 1  # 2N-1 is odd
    return max(m, 2)


def chebyshev_weights(params: QcssParams, m: int | None = None) -> np.ndarray:
    """Weight vector 3 from Chebyshev polynomials of the second kind.

    ``w_i = sin(phi/2)/sin(m phi/2) * sin(phi0 + i phi)`` for ``i < m`` with
    ``phi0 = (pi - m phi + phi)/2``.
    """
    phi = chebyshev_angle(params)
    if m is None:
        m = chebyshev_default_m(params)
    L = params.length
    if m < 2 or m % 2:
        raise ValueError(f"chebyshev m must be an even integer >= 2, got {m}")
    if m > L:
        raise ValueError(f"chebyshev m={m} exceeds the vector length {L}")
    if not m * phi < math.pi + phi:
        raise ValueError(f"chebyshev m={m} violates m*phi < pi + phi (phi={phi:.6g})")
    phi0 = (math.pi - m * phi + phi) / 2.0
    w = np.zeros(L)
    i = np.arange(m)
    w[:m] = math.sin(phi / 2) / math.sin(m * phi / 2) * np.sin(phi0 + i * phi)
    return _finalize(w)


@dataclass(frozen=True)
class WeightFamily:
    """A family tag with its parameter (``m`` or ``j``)."""

    tag: str
    param: int | None = None

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown weight family {self.tag!r}; choose from {', '.join(FAMILIES)}")
        if self.tag == "step" and self.param is None:
            raise ValueError("step family needs m")
        if self.tag == "sine" and self.param is None:
            raise ValueError("sine family needs m")

    def build(self, params: QcssParams) -> np.ndarray:
        N = params.N
        if self.tag == "uniform":
            return uniform_weights(N)
        if self.tag == "step":
            return step_weights(N, self.param)
        if self.tag == "cosine":
            return cosine_weights(N, self.param or 0)
        if self.tag == "sine":
            return sine_weights(N, self.param)
        return chebyshev_weights(params, self.param)

    def label(self) -> str:
        if self.param is None:
            return self.tag
        key = "j" if self.tag == "cosine" else "m"
        return f"{self.tag}({key}={self.param})"


def write_weight_file(path, w) -> None:
    """One value per line, 17 significant digits."""
    w = np.asarray(w, dtype=float)
    Path(path).write_text("".join(f"{x:.17g}\n" for x in w), encoding="utf-8")


def read_weight_file(path, N: int | None = None) -> np.ndarray:
    """Read a weight file; no simplex validation, only shape."""
    values = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    w = np.array(values, dtype=float)
    if N is not None and w.size != 2 * N - 1:
        raise ValueError(f"{path}: expected {2 * N - 1} values for N={N}, found {w.size}")
    return w
