"""Brute-force correlation sums for explicit sequence sets.

Everything here is exhaustive and direct (no FFT correlation), meant for
desk-scale sets where it serves as ground truth for the bound formulas.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bounds import BoundResult

__all__ = [
    "SequenceSet",
    "ToleranceReport",
    "VerificationReport",
    "aperiodic_xcorr",
    "correlation_sum",
    "correlation_sums",
    "tolerances",
    "golay_pair",
    "golay_mate",
    "golay_pcss",
    "random_qcss",
    "verify_bounds",
    "read_sequence_set",
    "write_sequence_set",
    "energy",
]

UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SequenceSet:
    """``K`` complex matrices of shape ``M x N`` stored as a ``(K, M, N)`` array."""

    matrices: np.ndarray
    unimodular: bool = True

    def __post_init__(self):
        arr = np.array(self.matrices, dtype=complex)
        if arr.ndim != 3 or 0 in arr.shape:
            raise ValueError(f"sequence set must have shape (K, M, N), got {arr.shape}")
        if self.unimodular:
            dev = float(np.max(np.abs(np.abs(arr) - 1.0)))
            if dev > UNIMODULAR_TOL:
                raise ValueError(f"entries are not unimodular (max deviation {dev:.3e})")
        arr.setflags(write=False)
        object.__setattr__(self, "matrices", arr)

    @property
    def K(self) -> int:
        return self.matrices.shape[0]

    @property
    def M(self) -> int:
        return self.matrices.shape[1]

    @property
    def N(self) -> int:
        return self.matrices.shape[2]


def aperiodic_xcorr(a, b, tau: int) -> complex:
    """``rho_{a,b}(tau)`` with the conjugate on ``b``; zero for ``|tau| >= N``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"sequences must be 1-D of equal length, got {a.shape} and {b.shape}")
    N = a.shape[0]
    if abs(tau) >= N:
        return 0j
    if tau >= 0:
        return complex(np.sum(a[:N - tau] * np.conj(b[tau:])))
    return complex(np.sum(a[-tau:] * np.conj(b[:N + tau])))


def correlation_sum(Cmu, Cnu, tau: int) -> complex:
    """Sum over rows of the per-row aperiodic correlation at shift ``tau``."""
    Cmu = np.asarray(Cmu, dtype=complex)
    Cnu = np.asarray(Cnu, dtype=complex)
    if Cmu.shape != Cnu.shape or Cmu.ndim != 2:
        raise ValueError(f"matrices must share an (M, N) shape, got {Cmu.shape} and {Cnu.shape}")
    return sum((aperiodic_xcorr(x, y, tau) for x, y in zip(Cmu, Cnu)), 0j)


def correlation_sums(matrices) -> np.ndarray:
    """All ``rho_{C^mu, C^nu}(tau)`` for ``0 <= tau < N`` as a ``(N, K, K)`` array."""
    C = np.asarray(matrices, dtype=complex)
    N = C.shape[2]
    out = np.empty((N, C.shape[0], C.shape[0]), dtype=complex)
    for tau in range(N):
        out[tau] = np.einsum("kmt,jmt->kj", C[:, :, :N - tau], np.conj(C[:, :, tau:]))
    return out


@dataclass(frozen=True)
class ToleranceReport:
    delta_a: float
    delta_c: float
    delta_max: float
    argmax_auto: tuple | None
    argmax_cross: tuple | None
    cross_defined: bool = True


def tolerances(sset: SequenceSet) -> ToleranceReport:
    """Exhaustive auto/cross tolerances over every pair and every shift.

    Negative shifts are covered through ``rho_{a,b}(-tau) = conj(rho_{b,a}(tau))``
    by scanning both orderings of each pair.  ``delta_c`` is reported as 0
    with ``cross_defined=False`` when ``K = 1``.
    """
    sums = np.abs(correlation_sums(sset.matrices))
    K, N = sset.K, sset.N
    delta_a, arg_a = 0.0, None
    if N > 1:
        auto = np.stack([np.diagonal(sums[tau]) for tau in range(1, N)])  # (N-1, K)
        t, mu = np.unravel_index(int(np.argmax(auto)), auto.shape)
        delta_a, arg_a = float(auto[t, mu]), (int(mu), int(mu), int(t) + 1)
    delta_c, arg_c = 0.0, None
    if K > 1:
        cross = sums.copy()
        idx = np.arange(K)
        cross[:, idx, idx] = -1.0
        t, mu, nu = np.unravel_index(int(np.argmax(cross)), cross.shape)
        delta_c, arg_c = float(cross[t, mu, nu]), (int(mu), int(nu), int(t))
    return ToleranceReport(delta_a, delta_c, max(delta_a, delta_c), arg_a, arg_c, K > 1)


def golay_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Binary Golay pair of length ``n = 2^k`` by repeated ``(a|b, a|-b)``."""
    if n < 1 or n & (n - 1):
        raise ValueError(f"Golay pair length must be a power of two, got {n}")
    a = np.array([1.0 + 0j])
    b = np.array([1.0 + 0j])
    while a.size < n:
        a, b = np.concatenate([a, b]), np.concatenate([a, -b])
    return a, b


def golay_mate(pair) -> tuple[np.ndarray, np.ndarray]:
    """Companion ``(reverse(conj b), -reverse(conj a))``; cross sums with the pair vanish."""
    a, b = (np.asarray(x, dtype=complex) for x in pair)
    return np.conj(b[::-1]), -np.conj(a[::-1])


def golay_pcss(n: int, K: int = 2) -> SequenceSet:
    """Perfect set with ``M = 2``: the Golay matrix alone (K=1) or with its mate (K=2)."""
    if K not in (1, 2):
        raise ValueError("a Golay PCSS has K = 1 or K = 2")
    a, b = golay_pair(n)
    mats = [np.stack([a, b])]
    if K == 2:
        mats.append(np.stack(golay_mate((a, b))))
    return SequenceSet(np.stack(mats))


def random_qcss(K: int, M: int, N: int, q: int = 2, seed: int | None = 0,
                inject_golay: bool = False) -> SequenceSet:
    """Uniform random ``q``-th roots of unity; deterministic for a given seed.

    ``inject_golay`` overwrites the first matrix with a Golay matrix
    (needs ``M = 2`` and ``N`` a power of two).
    """
    if q < 2:
        raise ValueError(f"alphabet order q must be >= 2, got {q}")
    rng = np.random.default_rng(seed)
    k = rng.integers(0, q, size=(K, M, N))
    if q == 2:
        mats = np.where(k == 0, 1.0, -1.0).astype(complex)
    else:
        mats = np.exp(2j * np.pi * k / q)
    if inject_golay:
        if M != 2:
            raise ValueError("Golay injection needs M = 2")
        a, b = golay_pair(N)
        mats[0] = np.stack([a, b])
    return SequenceSet(mats)


@dataclass
class VerificationReport:
    K: int
    M: int
    N: int
    delta_max: float
    delta_max_sq: float
    entries: list = field(default_factory=list)
    ok: bool = True

    @property
    def violations(self) -> list:
        return [e for e in self.entries if e["checked"] and not e["ok"]]

    def to_dict(self) -> dict:
        return {"K": self.K, "M": self.M, "N": self.N, "delta_max": self.delta_max,
                "delta_max_sq": self.delta_max_sq, "ok": self.ok, "entries": self.entries}


def verify_bounds(sset: SequenceSet, results: list[BoundResult], tol: float = 1e-9) -> VerificationReport:
    """Check ``delta_max^2 >= bound - tol`` for every rigorous bound.

    Invalid bounds and asymptotic approximations are listed but not checked.
    A violation here means an implementation bug, since the bounds are theorems.
    """
    if not sset.unimodular:
        raise ValueError("bound verification needs a unimodular set")
    report = tolerances(sset)
    dsq = report.delta_max ** 2
    out = VerificationReport(sset.K, sset.M, sset.N, report.delta_max, dsq)
    for res in results:
        p = res.params
        if (p.K, p.M, p.N) != (sset.K, sset.M, sset.N):
            raise ValueError(f"bound computed for {(p.K, p.M, p.N)}, set is {(sset.K, sset.M, sset.N)}")
        checked = res.rigorous
        ok = (dsq >= res.value - tol) if checked else True
        out.entries.append({
            "kind": res.kind.value,
            "family_param": dict(res.family_param),
            "value": res.value,
            "valid": res.valid,
            "checked": checked,
            "slack": dsq - res.value,
            "ok": bool(ok),
        })
        out.ok = out.ok and bool(ok)
    return out


def write_sequence_set(path, sset: SequenceSet) -> None:
    entries = [[[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in sset.matrices]
    doc = {"K": sset.K, "M": sset.M, "N": sset.N, "entries": entries}
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def read_sequence_set(path, unimodular: bool = True) -> SequenceSet:
    """Read the JSON set format and validate its declared shape."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        K, M, N = int(doc["K"]), int(doc["M"]), int(doc["N"])
        raw = np.asarray(doc["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: malformed sequence set ({exc})") from None
    if raw.shape != (K, M, N, 2):
        raise ValueError(f"{path}: entries have shape {raw.shape[:-1]}, header says {(K, M, N)}")
    if not np.all(np.isfinite(raw)):
        raise ValueError(f"{path}: non-finite entries")
    return SequenceSet(raw[..., 0] + 1j * raw[..., 1], unimodular=unimodular)


def energy(matrix) -> float:
    return float(np.sum(np.abs(np.asarray(matrix)) ** 2))

