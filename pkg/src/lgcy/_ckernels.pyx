# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled transport kernel; same contract as :mod:`lgcy._pykernels`."""

from libc.stdlib cimport malloc, free
from libc.math cimport fmax, fmin, pow

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex cexp(double complex)

from ._pykernels import StepUnderflow

cdef double C_[7]
cdef double A_[7][6]
cdef double B5_[7]
cdef double E_[7]

C_[:] = [0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0]
A_[0][:] = [0, 0, 0, 0, 0, 0]
A_[1][:] = [1.0 / 5, 0, 0, 0, 0, 0]
A_[2][:] = [3.0 / 40, 9.0 / 40, 0, 0, 0, 0]
A_[3][:] = [44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0]
A_[4][:] = [19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0]
A_[5][:] = [9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0]
A_[6][:] = [35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84]
B5_[:] = [35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0]
E_[:] = [35.0 / 384 - 5179.0 / 57600, 0.0, 500.0 / 1113 - 7571.0 / 16695, 125.0 / 192 - 393.0 / 640,
         -2187.0 / 6784 + 92097.0 / 339200, 11.0 / 84 - 187.0 / 2100, -1.0 / 40]


cdef void _rhs(int d, int ncol, double complex* a, double complex* b, double complex s,
               double complex ds, double complex* Y, double complex* out) noexcept nogil:
    cdef double complex v = cexp(s)
    cdef double complex den = a[d] - v * b[d]
    cdef double complex c[64]
    cdef double complex top
    cdef int m, col
    for m in range(d):
        c[m] = (a[m] - v * b[m]) / den
    for col in range(ncol):
        top = 0
        for m in range(d):
            top = top - c[m] * Y[col * d + m]
        for m in range(d - 1):
            out[col * d + m] = ds * Y[col * d + m + 1]
        out[col * d + d - 1] = ds * top


cdef int _segment(int d, int ncol, double complex* a, double complex* b, double complex s0,
                  double complex s1, double complex* Y, double tol, double* hio, double hmin,
                  long* steps, long* rejected, double complex* work) noexcept nogil:
    cdef int n = d * ncol
    cdef double complex ds = s1 - s0
    cdef double t = 0.0, h = hio[0], err, e, scale, fac
    cdef double complex* K = work
    cdef double complex* Yi = work + 7 * n
    cdef double complex* Yn = work + 8 * n
    cdef double complex acc
    cdef int i, j, k, col, m
    while t < 1.0:
        if h < hmin:
            hio[0] = h
            return -1
        h = fmin(h, 1.0 - t)
        for i in range(7):
            if i == 0:
                for k in range(n):
                    Yi[k] = Y[k]
            else:
                for k in range(n):
                    acc = 0
                    for j in range(i):
                        acc = acc + A_[i][j] * K[j * n + k]
                    Yi[k] = Y[k] + h * acc
            _rhs(d, ncol, a, b, s0 + (t + C_[i] * h) * ds, ds, Yi, K + i * n)
        for k in range(n):
            acc = 0
            for j in range(7):
                acc = acc + B5_[j] * K[j * n + k]
            Yn[k] = Y[k] + h * acc
        err = 0.0
        for col in range(ncol):
            scale = 1e-300
            e = 0.0
            for m in range(d):
                k = col * d + m
                scale = fmax(scale, fmax(cabs(Y[k]), cabs(Yn[k])))
                acc = 0
                for j in range(7):
                    acc = acc + E_[j] * K[j * n + k]
                e = fmax(e, cabs(h * acc))
            err = fmax(err, e / (tol * scale))
        if err <= 1.0:
            t += h
            for k in range(n):
                Y[k] = Yn[k]
            steps[0] += 1
        else:
            rejected[0] += 1
        if err == 0.0:
            fac = 5.0
        else:
            fac = fmin(5.0, fmax(0.2, 0.9 * pow(err, -0.2)))
        h *= fac
    hio[0] = h
    return 0


def integrate_path(a, b, waypoints, Y, double tol=1e-12, double h0=0.01, double hmin=1e-12):
    """Transport columns Y along the polyline ``waypoints``; returns (Y, stats)."""
    cdef int d = len(a) - 1
    cdef int ncol = len(Y)
    cdef int n = d * ncol
    cdef int i, c, m, rc
    cdef long steps = 0, rejected = 0
    cdef double h, L
    cdef double complex s0, s1
    if d > 64:
        raise ValueError("order above 64 not supported")
    cdef double complex* ca = <double complex*> malloc((d + 1) * sizeof(double complex))
    cdef double complex* cb = <double complex*> malloc((d + 1) * sizeof(double complex))
    cdef double complex* cY = <double complex*> malloc(n * sizeof(double complex))
    cdef double complex* work = <double complex*> malloc(9 * n * sizeof(double complex))
    try:
        for i in range(d + 1):
            ca[i] = complex(a[i])
            cb[i] = complex(b[i])
        for c in range(ncol):
            for m in range(d):
                cY[c * d + m] = complex(Y[c][m])
        pts = [complex(w) for w in waypoints]
        for i in range(len(pts) - 1):
            s0 = pts[i]
            s1 = pts[i + 1]
            if s0 == s1:
                continue
            L = cabs(s1 - s0)
            h = fmin(1.0, h0 / L)
            with nogil:
                rc = _segment(d, ncol, ca, cb, s0, s1, cY, tol, &h, hmin / L, &steps, &rejected, work)
            if rc != 0:
                raise StepUnderflow(f"step size {h:.3e} below {hmin / L:.3e} on segment {i}")
        out = [[cY[c * d + m] for m in range(d)] for c in range(ncol)]
    finally:
        free(ca)
        free(cb)
        free(cY)
        free(work)
    return out, {"steps": steps, "rejected": rejected}
