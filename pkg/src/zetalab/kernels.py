"""Hot numeric kernels, in matched numba and pure-numpy flavours.

Each public ``*_batch`` function dispatches on :mod:`zetalab.accel`:
an ``@njit`` scalar loop when numba is enabled, a chunked vectorised
numpy fallback otherwise (``ZETALAB_NO_NUMBA=1``).  Both flavours are
deterministic; they agree to float rounding, which the benchmark in
``benchmarks/bench_kernels.py`` checks.

Kernels operate on plain arrays only.  The mixing function must stay in
bit-exact lockstep with :mod:`zetalab.rng`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from . import rng
from .accel import USE_NUMBA, njit

__all__ = [
    "rs_z_batch",
    "em_zeta_batch",
    "walk_batch",
    "mollifier_trunc_logabs_batch",
    "steinhaus_batch",
    "rs_theta",
]

# ---------------------------------------------------------------------------
# constants

_TWO_PI = 2.0 * math.pi

# B_{2k}/(2k)! for the Euler-Maclaurin tail, k = 1..12
_BERN = [
    (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730),
    (7, 6), (-3617, 510), (43867, 798), (-174611, 330),
    (854513, 138), (-236364091, 2730),
]
EM_COEF = np.array(
    [float(Fraction(n, d) / math.factorial(2 * k)) for k, (n, d) in enumerate(_BERN, start=1)]
)
EM_TERMS = len(EM_COEF)

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_SALT = np.uint64(0xC2B2AE3D27D4EB4F)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_INV_2_53 = 1.0 / 9007199254740992.0


def rs_theta(t):
    """Riemann-Siegel theta, asymptotic form (t >= ~10)."""
    t = np.asarray(t, dtype=np.float64)
    lg = np.log(t / _TWO_PI)
    inv = 1.0 / t
    inv2 = inv * inv
    return (
        0.5 * t * lg
        - 0.5 * t
        - math.pi / 8.0
        + inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0))))
    )


# ---------------------------------------------------------------------------
# numba flavour

if USE_NUMBA:

    @njit(inline="always")
    def _mix64(z):
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
        return z ^ (z >> _S31)

    @njit(inline="always")
    def _unit_uniform(seed_u, stream, index):
        h = _mix64(stream * _SALT + seed_u)
        h = _mix64(h ^ (index * _GOLDEN + _M2))
        return (h >> _S11) * _INV_2_53

    @njit(inline="always")
    def _theta_scalar(t):
        lg = math.log(t / _TWO_PI)
        inv = 1.0 / t
        inv2 = inv * inv
        return (
            0.5 * t * lg
            - 0.5 * t
            - math.pi / 8.0
            + inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0))))
        )

    @njit(inline="always")
    def _chebval(x, c):
        b1 = 0.0
        b2 = 0.0
        for i in range(len(c) - 1, 0, -1):
            b1, b2 = c[i] + 2.0 * x * b1 - b2, b1
        return c[0] + x * b1 - b2

    @njit
    def _rs_z_numba(t_arr, cheb):
        n_pts = t_arr.shape[0]
        z = np.empty(n_pts)
        theta = np.empty(n_pts)
        n_corr = cheb.shape[0]
        for i in range(n_pts):
            t = t_arr[i]
            a = math.sqrt(t / _TWO_PI)
            nmax = int(a)
            p = a - nmax
            th = _theta_scalar(t)
            s = 0.0
            for n in range(1, nmax + 1):
                s += math.cos(th - t * math.log(n)) / math.sqrt(n)
            s *= 2.0
            x = 2.0 * p - 1.0
            y = 1.0 / a
            corr = 0.0
            yk = 1.0
            for k in range(n_corr):
                corr += _chebval(x, cheb[k]) * yk
                yk *= y
            sign = 1.0 if (nmax - 1) % 2 == 0 else -1.0
            z[i] = s + sign * corr / math.sqrt(a)
            theta[i] = th
        return z, theta

    @njit
    def _em_zeta_numba(t_arr, n_factor, n_min, coef):
        n_pts = t_arr.shape[0]
        out = np.empty(n_pts, dtype=np.complex128)
        for i in range(n_pts):
            t = t_arr[i]
            s = complex(0.5, t)
            big_n = int(n_factor * t) + 1
            if big_n < n_min:
                big_n = n_min
            acc = 0.0 + 0.0j
            for n in range(1, big_n):
                acc += cmath.exp(-s * math.log(n))
            ln_n = math.log(big_n)
            npow = cmath.exp(-s * ln_n)  # N^{-s}
            acc += npow * big_n / (s - 1.0)
            acc += 0.5 * npow
            # tail: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
            poch = s  # running product s(s+1)...(s+2k-2)
            scale = npow / big_n  # N^{-s-1}
            inv_n2 = 1.0 / (big_n * big_n)
            acc += coef[0] * poch * scale
            for k in range(1, len(coef)):
                poch = poch * (s + (2 * k - 1)) * (s + (2 * k))
                scale = scale * inv_n2
                acc += coef[k] * poch * scale
            out[i] = acc
        return out

    @njit
    def _walk_numba(t_arr, log_p, w1, w2, block_idx, n_blocks):
        n_pts = t_arr.shape[0]
        n_primes = log_p.shape[0]
        y = np.zeros((n_pts, n_blocks))
        logm0 = np.zeros(n_pts)
        for i in range(n_pts):
            t = t_arr[i]
            for jp in range(n_primes):
                b = block_idx[jp]
                if b < 0:
                    continue
                ph = t * log_p[jp]
                c = math.cos(ph)
                y[i, b] += c * w1[jp] + (2.0 * c * c - 1.0) * w2[jp]
                if b == 0:
                    # log|1 - p^{-1/2} e^{-i ph}|
                    logm0[i] += 0.5 * math.log(1.0 - 2.0 * w1[jp] * c + w1[jp] * w1[jp])
        return y, logm0

    @njit
    def _moll_trunc_numba(t_arr, log_p, w1, cap):
        n_pts = t_arr.shape[0]
        n_primes = log_p.shape[0]
        out = np.empty(n_pts)
        coeffs = np.empty(cap + 1, dtype=np.complex128)
        for i in range(n_pts):
            t = t_arr[i]
            for d in range(cap + 1):
                coeffs[d] = 0.0 + 0.0j
            coeffs[0] = 1.0 + 0.0j
            top = 0
            for jp in range(n_primes):
                ph = t * log_p[jp]
                x = w1[jp] * complex(math.cos(ph), -math.sin(ph))
                if top < cap:
                    top += 1
                for d in range(top, 0, -1):
                    coeffs[d] -= x * coeffs[d - 1]
            val = 0.0 + 0.0j
            for d in range(cap + 1):
                val += coeffs[d]
            out[i] = math.log(abs(val))
        return out

    @njit
    def _steinhaus_numba(seed_u, primes_u, w1, w2, block_idx, n_blocks, i0, n_samples):
        y = np.zeros((n_samples, n_blocks))
        logm0 = np.zeros(n_samples)
        n_primes = primes_u.shape[0]
        for i in range(n_samples):
            idx = np.uint64(i0) + np.uint64(i)
            for jp in range(n_primes):
                b = block_idx[jp]
                if b < 0:
                    continue
                theta = _TWO_PI * _unit_uniform(seed_u, primes_u[jp], idx)
                c = math.cos(theta)
                y[i, b] += c * w1[jp] + (2.0 * c * c - 1.0) * w2[jp]
                if b == 0:
                    logm0[i] += 0.5 * math.log(1.0 - 2.0 * w1[jp] * c + w1[jp] * w1[jp])
        return y, logm0


# ---------------------------------------------------------------------------
# numpy flavour (chunked vectorised)

_CHUNK = 2048


def _rs_z_numpy(t_arr, cheb):
    z = np.empty_like(t_arr)
    theta = np.empty_like(t_arr)
    for lo in range(0, len(t_arr), _CHUNK):
        t = t_arr[lo : lo + _CHUNK]
        a = np.sqrt(t / _TWO_PI)
        nmax = a.astype(np.int64)
        p = a - nmax
        th = rs_theta(t)
        ns = np.arange(1, int(nmax.max()) + 1, dtype=np.float64)
        args = th[:, None] - t[:, None] * np.log(ns)[None, :]
        terms = np.cos(args) / np.sqrt(ns)[None, :]
        terms[ns[None, :] > nmax[:, None]] = 0.0
        main = 2.0 * terms.sum(axis=1)
        x = 2.0 * p - 1.0
        y = 1.0 / a
        corr = np.zeros_like(t)
        yk = np.ones_like(t)
        for k in range(cheb.shape[0]):
            corr += np.polynomial.chebyshev.chebval(x, cheb[k]) * yk
            yk *= y
        sign = np.where((nmax - 1) % 2 == 0, 1.0, -1.0)
        z[lo : lo + _CHUNK] = main + sign * corr / np.sqrt(a)
        theta[lo : lo + _CHUNK] = th
    return z, theta


def _em_zeta_numpy(t_arr, n_factor, n_min, coef):
    out = np.empty(len(t_arr), dtype=np.complex128)
    for i, t in enumerate(t_arr):  # N varies wildly; per-point is simplest
        s = complex(0.5, t)
        big_n = max(int(n_factor * t) + 1, n_min)
        ns = np.arange(1, big_n, dtype=np.float64)
        acc = np.exp(-s * np.log(ns)).sum()
        npow = np.exp(-s * math.log(big_n))
        acc += npow * big_n / (s - 1.0) + 0.5 * npow
        poch = s
        scale = npow / big_n
        acc += coef[0] * poch * scale
        inv_n2 = 1.0 / (big_n * big_n)
        for k in range(1, len(coef)):
            poch = poch * (s + (2 * k - 1)) * (s + (2 * k))
            scale = scale * inv_n2
            acc += coef[k] * poch * scale
        out[i] = acc
    return out


def _walk_numpy(t_arr, log_p, w1, w2, block_idx, n_blocks):
    n_pts = len(t_arr)
    y = np.zeros((n_pts, n_blocks))
    logm0 = np.zeros(n_pts)
    live = block_idx >= 0
    lp, a1, a2, bi = log_p[live], w1[live], w2[live], block_idx[live]
    b0 = bi == 0
    for lo in range(0, n_pts, _CHUNK):
        t = t_arr[lo : lo + _CHUNK]
        c = np.cos(t[:, None] * lp[None, :])
        contrib = c * a1[None, :] + (2.0 * c * c - 1.0) * a2[None, :]
        for b in range(n_blocks):
            sel = bi == b
            if sel.any():
                y[lo : lo + _CHUNK, b] = contrib[:, sel].sum(axis=1)
        logm0[lo : lo + _CHUNK] = 0.5 * np.log(
            1.0 - 2.0 * a1[None, b0] * c[:, b0] + (a1[None, b0] ** 2)
        ).sum(axis=1)
    return y, logm0


def _moll_trunc_numpy(t_arr, log_p, w1, cap):
    out = np.empty(len(t_arr))
    for lo in range(0, len(t_arr), _CHUNK):
        t = t_arr[lo : lo + _CHUNK]
        coeffs = np.zeros((len(t), cap + 1), dtype=np.complex128)
        coeffs[:, 0] = 1.0
        for jp in range(len(log_p)):
            x = w1[jp] * np.exp(-1j * t * log_p[jp])
            coeffs[:, 1:] -= x[:, None] * coeffs[:, :-1]
        out[lo : lo + _CHUNK] = np.log(np.abs(coeffs.sum(axis=1)))
    return out


def _steinhaus_numpy(seed, primes, w1, w2, block_idx, n_blocks, i0, n_samples):
    y = np.zeros((n_samples, n_blocks))
    logm0 = np.zeros(n_samples)
    live = block_idx >= 0
    pr, a1, a2, bi = primes[live], w1[live], w2[live], block_idx[live]
    b0 = bi == 0
    chunk = max(1, (_CHUNK * 256) // max(len(pr), 1))
    for lo in range(0, n_samples, chunk):
        hi = min(lo + chunk, n_samples)
        idx = np.arange(i0 + lo, i0 + hi, dtype=np.uint64)
        u = rng.uniform01(seed, pr[None, :], idx[:, None])
        c = np.cos(_TWO_PI * u)
        contrib = c * a1[None, :] + (2.0 * c * c - 1.0) * a2[None, :]
        for b in range(n_blocks):
            sel = bi == b
            if sel.any():
                y[lo:hi, b] = contrib[:, sel].sum(axis=1)
        logm0[lo:hi] = 0.5 * np.log(
            1.0 - 2.0 * a1[None, b0] * c[:, b0] + (a1[None, b0] ** 2)
        ).sum(axis=1)
    return y, logm0


# ---------------------------------------------------------------------------
# dispatchers

def rs_z_batch(t_arr: np.ndarray, cheb: np.ndarray):
    """Riemann-Siegel Z(t) and theta(t) for an array of heights t >= 50."""
    t_arr = np.ascontiguousarray(t_arr, dtype=np.float64)
    if USE_NUMBA:
        return _rs_z_numba(t_arr, np.ascontiguousarray(cheb))
    return _rs_z_numpy(t_arr, cheb)


def em_zeta_batch(t_arr: np.ndarray, n_factor: float = 1.35, n_min: int = 24):
    """Euler-Maclaurin zeta(1/2 + it); accurate for modest t (< ~5e3)."""
    t_arr = np.ascontiguousarray(t_arr, dtype=np.float64)
    if USE_NUMBA:
        return _em_zeta_numba(t_arr, n_factor, n_min, EM_COEF)
    return _em_zeta_numpy(t_arr, n_factor, n_min, EM_COEF)


def walk_batch(t_arr, log_p, w1, w2, block_idx, n_blocks: int):
    """Per-block cosine sums Y[i, j] and block-0 log|euler product|.

    Y[i, j] = sum over primes p in block j of cos(t_i log p)/sqrt(p)
    + cos(2 t_i log p)/(2p); logm0[i] = log|prod_{block 0}(1 - p^{-1/2-i t})|.
    """
    t_arr = np.ascontiguousarray(t_arr, dtype=np.float64)
    args = (
        np.ascontiguousarray(log_p),
        np.ascontiguousarray(w1),
        np.ascontiguousarray(w2),
        np.ascontiguousarray(block_idx, dtype=np.int64),
    )
    if USE_NUMBA:
        return _walk_numba(t_arr, *args, n_blocks)
    return _walk_numpy(t_arr, *args, n_blocks)


def mollifier_trunc_logabs_batch(t_arr, log_p, w1, cap: int):
    """log| degree-capped product of (1 - p^{-1/2-it}) | over one block."""
    t_arr = np.ascontiguousarray(t_arr, dtype=np.float64)
    lp = np.ascontiguousarray(log_p)
    ws = np.ascontiguousarray(w1)
    if USE_NUMBA:
        return _moll_trunc_numba(t_arr, lp, ws, int(cap))
    return _moll_trunc_numpy(t_arr, lp, ws, int(cap))


def steinhaus_batch(seed: int, primes, w1, w2, block_idx, n_blocks: int, i0: int, n_samples: int):
    """Batch of steinhaus draws: per-block increments and block-0 log|M|.

    Sample i uses counter index i0 + i; angles are keyed by (seed, prime,
    counter) so batching never changes values.
    """
    if USE_NUMBA:
        return _steinhaus_numba(
            np.uint64((int(seed) * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF),
            np.ascontiguousarray(primes, dtype=np.uint64),
            np.ascontiguousarray(w1),
            np.ascontiguousarray(w2),
            np.ascontiguousarray(block_idx, dtype=np.int64),
            n_blocks,
            i0,
            n_samples,
        )
    return _steinhaus_numpy(
        seed,
        np.asarray(primes, dtype=np.uint64),
        np.asarray(w1),
        np.asarray(w2),
        np.asarray(block_idx, dtype=np.int64),
        n_blocks,
        i0,
        n_samples,
    )
