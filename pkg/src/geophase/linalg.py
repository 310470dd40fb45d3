"""Fixed-size complex linear algebra for two-qubit problems.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
(2, 2) or (4, 4); vectors have shape (2,) or (4,). The eigensolver is a
cyclic complex Jacobi method so the results do not depend on which LAPACK
build happens to be installed.
"""

from __future__ import annotations

import math

import numpy as np

from geophase.errors import NotHermitian, NotPSD

CMat2 = np.ndarray
CMat4 = np.ndarray
CVec4 = np.ndarray

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

_EPS = np.finfo(float).eps
# Eigenvalues within this many ulps of the spectral scale are roundoff.
_NOISE_ULPS = 16


def _as_complex(m, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite entry")
    return arr


def tensor_product(a: CMat2, b: CMat2) -> CMat4:
    """Kronecker product of two 2x2 matrices, ``(a⊗b)[2i+k, 2j+l] = a[i,j] b[k,l]``."""
    a = _as_complex(a, (2, 2))
    b = _as_complex(b, (2, 2))
    out = np.empty((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = a[i, j] * b
    return out


def tensor_product_vec(u, v) -> CVec4:
    """Kronecker product of two 2-vectors (left factor is the high bit)."""
    u = _as_complex(u, (2,))
    v = _as_complex(v, (2,))
    return np.array([u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]])


def is_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(h - h.conj().T)) <= tol)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi on a Hermitian matrix; returns unsorted (values, vectors)."""
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) < JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # Unit phase making the pivot real, then a real rotation.
                ph = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                phc = ph.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * phc * col_q
                a[:, q] = s * col_p + c * phc * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * ph * row_q
                a[q, :] = s * row_p + c * ph * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * phc * vq
                v[:, q] = s * vp + c * phc * vq
    return np.real(np.diag(a)).copy(), v


def _fix_gauge(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its first non-negligible component is real positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = int(np.argmax(np.abs(col) > 1e-12))
        z = col[idx]
        if z != 0:
            v[:, k] = col * (abs(z) / z)
    return v


def hermitian_eigen(h: CMat4) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a 4x4 Hermitian matrix.

    Returns
    -------
    eigenvalues : ndarray, shape (4,)
        Real eigenvalues in descending order.
    eigenvectors : ndarray, shape (4, 4)
        Orthonormal eigenvectors as columns, ``h @ V = V @ diag(w)``. Each
        column is phase-fixed so its first nonzero component is real and
        positive.

    Raises
    ------
    NotHermitian
        If ``max|h - h†| > 1e-10``.
    """
    h = _as_complex(h, (4, 4))
    if not is_hermitian(h):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    h = 0.5 * (h + h.conj().T)
    w, v = _jacobi(h)
    order = np.argsort(-w, kind="stable")
    return w[order], _fix_gauge(v[:, order])


def noise_floor(values: np.ndarray) -> float:
    """Magnitude below which a computed eigenvalue is indistinguishable from zero."""
    return _NOISE_ULPS * _EPS * max(1.0, float(np.max(np.abs(values))))


def psd_sqrt(m: CMat4) -> CMat4:
    """Principal square root of a 4x4 positive semidefinite Hermitian matrix.

    Negative eigenvalues down to -1e-10 are clamped to zero, as are
    eigenvalues lying within roundoff of zero; anything more negative
    raises ``NotPSD``.
    """
    w, v = hermitian_eigen(m)
    if w[-1] < -PSD_TOL:
        raise NotPSD(f"eigenvalue {w[-1]:.3e} below -{PSD_TOL}")
    w = np.where(w <= noise_floor(w), 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T
