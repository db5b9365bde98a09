"""Circulant quadratic form of the generalized Levenshtein bound.

The GLB numerator is ``w^T Q_a w`` where ``Q_a`` is the (2N-1)x(2N-1)
circulant matrix with ``a`` on the diagonal and the cyclic distance
``tau(s, t)`` elsewhere.  Production code only touches the closed-form
spectrum; the dense matrix and the naive DFT exist as oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "QcssParams",
    "Spectrum",
    "ConsistencyError",
    "tau",
    "q_first_column",
    "circulant_matrix",
    "dft",
    "idft",
    "quadratic_form_time",
    "quadratic_form_freq",
    "sum_squares_freq",
    "spectrum_closed_form",
    "spectrum_dft",
]

DENSE_MAX_N = 512
_DFT_CHUNK = 256


class ConsistencyError(RuntimeError):
    """Two routes that must agree numerically did not."""


@dataclass(frozen=True)
class QcssParams:
    """Set size ``K``, channel count ``M`` and row length ``N`` of a QCSS."""

    K: int
    M: int
    N: int

    def __post_init__(self):
        for name in ("K", "M", "N"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")

    @property
    def a(self) -> float:
        """Diagonal constant N(MN-1)/K of Q_a."""
        return self.N * (self.M * self.N - 1) / self.K

    @property
    def length(self) -> int:
        """Weight-vector length 2N-1."""
        return 2 * self.N - 1

    def replace(self, **changes) -> "QcssParams":
        fields = {"K": self.K, "M": self.M, "N": self.N}
        fields.update(changes)
        return QcssParams(**fields)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues of Q_a, ``lambdas[0]`` first."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float)
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def N(self) -> int:
        return (len(self.lambdas) + 1) // 2

    @property
    def lambda0(self) -> float:
        return float(self.lambdas[0])

    @property
    def lambda1(self) -> float:
        return float(self.lambdas[1])

    def __len__(self):
        return len(self.lambdas)

    def __getitem__(self, idx):
        return self.lambdas[idx]


def _length_to_n(length: int) -> int:
    if length < 3 or length % 2 == 0:
        raise ValueError(f"vector length must be odd and >= 3 (2N-1), got {length}")
    return (length + 1) // 2


def tau(s: int, t: int, N: int) -> int:
    """Cyclic distance min(|t-s|, 2N-1-|t-s|) on Z_{2N-1}."""
    L = 2 * N - 1
    if not (0 <= s <= L - 1 and 0 <= t <= L - 1):
        raise ValueError(f"indices must lie in [0, {L - 1}], got s={s}, t={t}")
    d = abs(t - s)
    return min(d, L - d)


def _tau_row(N: int) -> np.ndarray:
    idx = np.arange(2 * N - 1)
    return np.minimum(idx, 2 * N - 1 - idx).astype(float)


def q_first_column(params: QcssParams) -> np.ndarray:
    """First column ``[a, 1, 2, ..., N-1, N-1, ..., 2, 1]`` of Q_a."""
    q = _tau_row(params.N)
    q[0] = params.a
    return q


def circulant_matrix(params: QcssParams, a: float | None = None) -> np.ndarray:
    """Dense Q_a.  Oracle use only; refuses N > 512."""
    if params.N > DENSE_MAX_N:
        raise ValueError(f"dense Q_a is limited to N <= {DENSE_MAX_N}, got N={params.N}")
    q = q_first_column(params)
    if a is not None:
        q[0] = a
    L = params.length
    idx = np.arange(L)
    return q[(idx[:, None] - idx[None, :]) % L]


def dft(x) -> np.ndarray:
    """Naive L-point DFT ``X_l = sum_n x_n exp(-2 pi i l n / L)``.

    Twiddles are looked up by the exact integer residue ``l*n mod L`` so no
    angle is accumulated.  Works on the first axis; extra axes are batched.
    """
    x = np.asarray(x)
    L = x.shape[0]
    twiddle = np.exp(-2j * np.pi * np.arange(L) / L)
    n = np.arange(L)
    out = np.empty(x.shape, dtype=complex)
    for start in range(0, L, _DFT_CHUNK):
        rows = n[start:start + _DFT_CHUNK, None]
        out[start:start + _DFT_CHUNK] = twiddle[(rows * n[None, :]) % L] @ x
    return out


def idft(X) -> np.ndarray:
    """Inverse of :func:`dft` (``(1/L) F^H X``)."""
    X = np.asarray(X)
    return np.conj(dft(np.conj(X))) / X.shape[0]


def _check_params_length(w: np.ndarray, params: QcssParams):
    if w.ndim != 1 or w.shape[0] != params.length:
        raise ValueError(
            f"weight vector length {w.shape} does not match 2N-1 = {params.length} for N={params.N}"
        )


def quadratic_form_time(w, a) -> float:
    """``a*sum(w_i^2) + sum_{s!=t} tau(s,t) w_s w_t`` by direct summation.

    ``a`` may be a number or a :class:`QcssParams` (then its ``a`` is used and
    the length of ``w`` is checked against ``N``).
    """
    w = np.asarray(w, dtype=float)
    if isinstance(a, QcssParams):
        _check_params_length(w, a)
        N, diag = a.N, a.a
    else:
        if w.ndim != 1:
            raise ValueError("weight vector must be one-dimensional")
        N, diag = _length_to_n(w.shape[0]), float(a)
    if N <= DENSE_MAX_N:
        Q = circulant_matrix(QcssParams(K=1, M=2, N=N), a=diag)
        return float(w @ Q @ w)
    # offset-by-offset double sum, avoids the dense matrix
    L = 2 * N - 1
    total = diag * float(w @ w)
    for d in range(1, L):
        total += min(d, L - d) * float(w @ np.roll(w, -d))
    return total


def spectrum_closed_form(params: QcssParams) -> Spectrum:
    """All 2N-1 eigenvalues of Q_a from the closed form.

    The upper half is mirrored from ``l = 1..N-1`` so that
    ``lambda_l == lambda_{2N-1-l}`` holds bit for bit.
    """
    N, a = params.N, params.a
    L = params.length
    l = np.arange(1, N)
    x = np.pi * l / L
    sign = np.where(l % 2 == 0, 1.0, -1.0)
    half = a - (1.0 - sign * np.cos(x)) / (2.0 * np.sin(x) ** 2)
    lam = np.empty(L)
    lam[0] = a + N * (N - 1)
    lam[1:N] = half
    lam[N:] = half[::-1]
    return Spectrum(lam)


def spectrum_dft(params: QcssParams) -> Spectrum:
    """Eigenvalues as the naive DFT of the first column (oracle route)."""
    lam = dft(q_first_column(params))
    scale = float(np.max(np.abs(lam)))
    worst = float(np.max(np.abs(lam.imag)))
    if worst > 1e-9 * scale:
        raise ConsistencyError(
            f"DFT of a symmetric circulant column left imaginary residue {worst:.3e}"
        )
    return Spectrum(lam.real)


def quadratic_form_freq(w, params: QcssParams, a: float | None = None) -> float:
    """``(1/(2N-1)) sum_l lambda_l |v_l|^2`` with ``v = DFT(w)``.

    ``a`` overrides the diagonal constant (the spectrum shifts by the same
    amount in every entry).
    """
    w = np.asarray(w, dtype=float)
    _check_params_length(w, params)
    lam = spectrum_closed_form(params).lambdas
    if a is not None:
        lam = lam + (a - params.a)
    power = np.abs(dft(w)) ** 2
    return float(lam @ power) / params.length


def sum_squares_freq(w) -> float:
    """Parseval: ``sum w_i^2 = (1/(2N-1)) sum |v_l|^2``."""
    w = np.asarray(w, dtype=float)
    return float(np.sum(np.abs(dft(w)) ** 2)) / w.shape[0]


def lambda0_lambda1(params: QcssParams) -> tuple[float, float]:
    """The two eigenvalues the bound formulas need, in their simplest form."""
    N, a = params.N, params.a
    s = math.sin(math.pi / (2 * params.length))
    return a + N * (N - 1), a - 1.0 / (4.0 * s * s)
