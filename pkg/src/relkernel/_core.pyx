# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the sampling and path-simulation core.

Mirrors relkernel._fallback draw for draw: only uniform doubles are read
from the bit generator, in the order documented there, so both backends
produce the same trajectories from the same Philox stream.
"""

import math

import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport M_PI, exp, log, log1p, sin, sqrt
from numpy.random cimport bitgen_t
from scipy.special.cython_special cimport ndtri

BACKEND_NAME = "compiled"

cdef double _TINY = 1e-300


cdef inline bitgen_t *_bitgen(object bit_generator) except NULL:
    return <bitgen_t *> PyCapsule_GetPointer(bit_generator.capsule, "BitGenerator")


cdef inline double _kanter_log_a(double u, double sigma) noexcept nogil:
    if u < _TINY:
        u = _TINY
    return ((sigma / (1.0 - sigma)) * log(sin(sigma * M_PI * u))
            + log(sin((1.0 - sigma) * M_PI * u))
            - log(sin(M_PI * u)) / (1.0 - sigma))


def stable_batch(object gen, Py_ssize_t n, double t, double index):
    """n draws of the one-sided stable law with Laplace transform
    exp(-t lambda^index)."""
    cdef object bg = gen.bit_generator
    cdef bitgen_t *rng = _bitgen(bg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] u = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double[::1] uv = u, wv = w, ov = out
    cdef double sigma = index
    cdef double expo = (1.0 - sigma) / sigma
    cdef double t_scale = t ** (1.0 / sigma)
    cdef double e
    cdef Py_ssize_t i
    with bg.lock, nogil:
        for i in range(n):
            uv[i] = rng.next_double(rng.state)
        for i in range(n):
            wv[i] = rng.next_double(rng.state)
        for i in range(n):
            e = -log1p(-wv[i])
            ov[i] = t_scale * exp(expo * (_kanter_log_a(uv[i], sigma) - log(e)))
    return out


def tempered_batch(object gen, Py_ssize_t n, double t, double alpha,
                   double m, double t_max):
    """n draws of the tempered subordinator increment over time t and the
    number of stable proposals spent."""
    cdef object bg = gen.bit_generator
    cdef bitgen_t *rng = _bitgen(bg)
    cdef Py_ssize_t pieces = max(1, math.ceil(t / t_max - 1e-12))
    cdef double t_sub = t / pieces
    cdef double sigma = alpha / 2.0
    cdef double expo = (1.0 - sigma) / sigma
    cdef double t_scale = t_sub ** (1.0 / sigma)
    cdef double m2a = m ** (2.0 / alpha)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n)
    cdef double[::1] ov = out
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pend_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] pend = pend_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ubuf = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wbuf = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] abuf = np.empty(n)
    cdef double[::1] uv = ubuf, wv = wbuf, av = abuf
    cdef Py_ssize_t npend, i, j, jw, piece
    cdef long long proposals = 0
    cdef double e, s
    with bg.lock, nogil:
        for piece in range(pieces):
            npend = n
            for i in range(n):
                pend[i] = i
            while npend > 0:
                for j in range(npend):
                    uv[j] = rng.next_double(rng.state)
                for j in range(npend):
                    wv[j] = rng.next_double(rng.state)
                for j in range(npend):
                    av[j] = rng.next_double(rng.state)
                proposals += npend
                jw = 0
                for j in range(npend):
                    e = -log1p(-wv[j])
                    s = t_scale * exp(expo * (_kanter_log_a(uv[j], sigma) - log(e)))
                    if av[j] <= exp(-m2a * s):
                        ov[pend[j]] += s
                    else:
                        pend[jw] = pend[j]
                        jw += 1
                npend = jw
    return out, int(proposals)


cdef Py_ssize_t _draw_step(bitgen_t *rng, double[::1] v, long long[::1] pend,
                           double[::1] uv, double[::1] wv, double[::1] av,
                           Py_ssize_t na, double sigma, double expo,
                           double t_scale, double m2a) noexcept nogil:
    """Fill v[0:na] with one tempered increment per lane; returns rounds."""
    cdef Py_ssize_t npend = na, j, jw
    cdef double e, s
    for j in range(na):
        pend[j] = j
    while npend > 0:
        for j in range(npend):
            uv[j] = rng.next_double(rng.state)
        for j in range(npend):
            wv[j] = rng.next_double(rng.state)
        for j in range(npend):
            av[j] = rng.next_double(rng.state)
        jw = 0
        for j in range(npend):
            e = -log1p(-wv[j])
            s = t_scale * exp(expo * (_kanter_log_a(uv[j], sigma) - log(e)))
            if av[j] <= exp(-m2a * s):
                v[pend[j]] = s
            else:
                pend[jw] = pend[j]
                jw += 1
        npend = jw
    return 0


def simulate_exit(object gen, object x0_obj, double alpha, double m, double dt,
                  double horizon, Py_ssize_t n, int domain):
    """Run n paths until they leave the domain (0: half-space, 1: unit
    interval) or reach the horizon. Returns (tau, x_final, alive)."""
    cdef object bg = gen.bit_generator
    cdef bitgen_t *rng = _bitgen(bg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x0 = np.ascontiguousarray(x0_obj, dtype=np.float64)
    cdef Py_ssize_t d = x0.shape[0]
    cdef Py_ssize_t n_steps = math.ceil(horizon / dt - 1e-9)
    cdef double sigma = alpha / 2.0
    cdef double expo = (1.0 - sigma) / sigma
    cdef double t_scale = dt ** (2.0 / alpha)
    cdef double m2a = m ** (2.0 / alpha)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] x = np.tile(x0, (n, 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tau = np.full(n, horizon)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive = np.ones(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] idx_arr = np.arange(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vbuf = np.zeros(n)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pend_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ubuf = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wbuf = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] abuf = np.empty(n)
    cdef double[:, ::1] xv = x
    cdef double[::1] tauv = tau, vv = vbuf, uv = ubuf, wv = wbuf, av = abuf
    cdef cnp.uint8_t[::1] alivev = alive
    cdef long long[::1] idx = idx_arr, pend = pend_arr
    cdef Py_ssize_t na = n, k, j, c, j2
    cdef long long i
    cdef double root, g, t_k
    cdef bint out
    with bg.lock, nogil:
        for k in range(1, n_steps + 1):
            if na == 0:
                break
            _draw_step(rng, vv, pend, uv, wv, av, na, sigma, expo, t_scale, m2a)
            for j in range(na):
                i = idx[j]
                root = sqrt(2.0 * vv[j])
                for c in range(d):
                    g = rng.next_double(rng.state)
                    xv[i, c] += root * ndtri(g)
            t_k = k * dt
            j2 = 0
            for j in range(na):
                i = idx[j]
                if domain == 0:
                    out = xv[i, d - 1] <= 0.0
                else:
                    out = xv[i, 0] <= 0.0 or xv[i, 0] >= 1.0
                if out:
                    tauv[i] = t_k
                    alivev[i] = 0
                else:
                    idx[j2] = i
                    j2 += 1
            na = j2
    return tau, x, alive.astype(bool)


def simulate_occupation(object gen, object x0_obj, double alpha, double m,
                        double dt, double horizon, Py_ssize_t n,
                        object center_obj, double radius, double discount):
    """Half-space paths accumulating (discounted) occupation of the ball
    B(center, radius), left endpoint rule. Returns (occupation, tau, alive)."""
    cdef object bg = gen.bit_generator
    cdef bitgen_t *rng = _bitgen(bg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x0 = np.ascontiguousarray(x0_obj, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] center = np.ascontiguousarray(center_obj, dtype=np.float64)
    cdef Py_ssize_t d = x0.shape[0]
    cdef Py_ssize_t n_steps = math.ceil(horizon / dt - 1e-9)
    cdef double sigma = alpha / 2.0
    cdef double expo = (1.0 - sigma) / sigma
    cdef double t_scale = dt ** (2.0 / alpha)
    cdef double m2a = m ** (2.0 / alpha)
    cdef double r2 = radius * radius
    cdef cnp.ndarray[cnp.float64_t, ndim=2] x = np.tile(x0, (n, 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tau = np.full(n, horizon)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive = np.ones(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] occ = np.zeros(n)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] idx_arr = np.arange(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vbuf = np.zeros(n)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pend_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ubuf = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wbuf = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] abuf = np.empty(n)
    cdef double[:, ::1] xv = x
    cdef double[::1] tauv = tau, vv = vbuf, uv = ubuf, wv = wbuf, av = abuf
    cdef double[::1] occv = occ, cenv = center
    cdef cnp.uint8_t[::1] alivev = alive
    cdef long long[::1] idx = idx_arr, pend = pend_arr
    cdef Py_ssize_t na = n, k, j, c, j2
    cdef long long i
    cdef double root, g, t_k, wk, s2, diff
    with bg.lock, nogil:
        for k in range(1, n_steps + 1):
            if na == 0:
                break
            wk = exp(-discount * (k - 1) * dt) * dt
            for j in range(na):
                i = idx[j]
                s2 = 0.0
                for c in range(d):
                    diff = xv[i, c] - cenv[c]
                    s2 += diff * diff
                if s2 < r2:
                    occv[i] += wk
            _draw_step(rng, vv, pend, uv, wv, av, na, sigma, expo, t_scale, m2a)
            for j in range(na):
                i = idx[j]
                root = sqrt(2.0 * vv[j])
                for c in range(d):
                    g = rng.next_double(rng.state)
                    xv[i, c] += root * ndtri(g)
            t_k = k * dt
            j2 = 0
            for j in range(na):
                i = idx[j]
                if xv[i, d - 1] <= 0.0:
                    tauv[i] = t_k
                    alivev[i] = 0
                else:
                    idx[j2] = i
                    j2 += 1
            na = j2
    return occ, tau, alive.astype(bool)
