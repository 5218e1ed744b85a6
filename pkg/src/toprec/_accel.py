"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

The fallback path is selected when numba is unavailable or when the
environment variable ``TOPREC_NO_NUMBA`` is set to a non-empty value.
``bench/benchmark_accel.py`` compares both paths.

Kernels here are deliberately dependency-free and operate on plain
complex128 arrays so they can be jitted in nopython mode:

* truncated-series convolution (product of Laurent coefficient blocks),
* Fourier/q-series evaluation of the Weierstrass functions on node arrays,
* the brute-force lattice sum used as an independent oracle for ℘.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = bool(os.environ.get("TOPREC_NO_NUMBA"))

if not _DISABLED:
    try:
        from numba import njit, prange

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def _conv_trunc_py(a: np.ndarray, b: np.ndarray, nout: int) -> np.ndarray:
    out = np.zeros(nout, dtype=np.complex128)
    na, nb = len(a), len(b)
    for i in range(min(na, nout)):
        ai = a[i]
        if ai == 0:
            continue
        jmax = min(nb, nout - i)
        out[i : i + jmax] += ai * b[:jmax]
    return out


def _qsum_wp_py(z: np.ndarray, qq: complex, nterms: int) -> np.ndarray:
    # sum_{n>=1} n qq^n/(1-qq^n) cos(2 pi n z), vectorized over z
    acc = np.zeros(z.shape, dtype=np.complex128)
    qn = 1.0 + 0j
    for n in range(1, nterms + 1):
        qn *= qq
        acc += n * qn / (1.0 - qn) * np.cos(2.0 * np.pi * n * z)
    return acc


def _qsum_zeta_py(z: np.ndarray, qq: complex, nterms: int) -> np.ndarray:
    acc = np.zeros(z.shape, dtype=np.complex128)
    qn = 1.0 + 0j
    for n in range(1, nterms + 1):
        qn *= qq
        acc += qn / (1.0 - qn) * np.sin(2.0 * np.pi * n * z)
    return acc


def _qsum_wpprime_py(z: np.ndarray, qq: complex, nterms: int) -> np.ndarray:
    acc = np.zeros(z.shape, dtype=np.complex128)
    qn = 1.0 + 0j
    for n in range(1, nterms + 1):
        qn *= qq
        acc += n * n * qn / (1.0 - qn) * np.sin(2.0 * np.pi * n * z)
    return acc


def _wp_lattice_py(z: complex, tau: complex, nmax: int) -> complex:
    # symmetric square truncation of 1/z^2 + sum' [1/(z-w)^2 - 1/w^2]
    total = 1.0 / (z * z)
    for m in range(-nmax, nmax + 1):
        for n in range(-nmax, nmax + 1):
            if m == 0 and n == 0:
                continue
            w = m + n * tau
            d = z - w
            total += 1.0 / (d * d) - 1.0 / (w * w)
    return total


if HAVE_NUMBA:
    _conv_trunc = njit(cache=True)(_conv_trunc_py)
    _qsum_wp = njit(cache=True)(_qsum_wp_py)
    _qsum_zeta = njit(cache=True)(_qsum_zeta_py)
    _qsum_wpprime = njit(cache=True)(_qsum_wpprime_py)

    @njit(cache=True, parallel=True)
    def _wp_lattice(z: complex, tau: complex, nmax: int) -> complex:  # type: ignore[misc]
        total = 1.0 / (z * z)
        for m in prange(-nmax, nmax + 1):
            row = 0.0 + 0j
            for n in range(-nmax, nmax + 1):
                if m == 0 and n == 0:
                    continue
                w = m + n * tau
                d = z - w
                row += 1.0 / (d * d) - 1.0 / (w * w)
            total += row
        return total

else:
    _conv_trunc = _conv_trunc_py
    _qsum_wp = _qsum_wp_py
    _qsum_zeta = _qsum_zeta_py
    _qsum_wpprime = _qsum_wpprime_py
    _wp_lattice = _wp_lattice_py


def conv_trunc(a: np.ndarray, b: np.ndarray, nout: int) -> np.ndarray:
    """Truncated convolution: first ``nout`` coefficients of a*b."""
    return _conv_trunc(
        np.ascontiguousarray(a, dtype=np.complex128),
        np.ascontiguousarray(b, dtype=np.complex128),
        nout,
    )


def qsum_wp(z: np.ndarray, qq: complex, nterms: int) -> np.ndarray:
    return _qsum_wp(np.ascontiguousarray(z, dtype=np.complex128), complex(qq), nterms)


def qsum_zeta(z: np.ndarray, qq: complex, nterms: int) -> np.ndarray:
    return _qsum_zeta(np.ascontiguousarray(z, dtype=np.complex128), complex(qq), nterms)


def qsum_wpprime(z: np.ndarray, qq: complex, nterms: int) -> np.ndarray:
    return _qsum_wpprime(np.ascontiguousarray(z, dtype=np.complex128), complex(qq), nterms)


def wp_lattice_sum(z: complex, tau: complex, nmax: int) -> complex:
    """Plain symmetric-square lattice sum for ℘ (oracle use; slow on purpose)."""
    return _wp_lattice(complex(z), complex(tau), nmax)
