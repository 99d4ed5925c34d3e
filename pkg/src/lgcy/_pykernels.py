"""Pure-Python transport kernel (Dormand-Prince 5(4) on a piecewise-linear path)."""

from __future__ import annotations

import cmath

# Dormand-Prince coefficients
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(x - y for x, y in zip(_B5, _B4))


class StepUnderflow(RuntimeError):
    pass


def _rhs(a, b, s, ds, Y, d):
    """ds * F(s, Y) for the companion system of A(theta) - e^s B(theta)."""
    v = cmath.exp(s)
    den = a[d] - v * b[d]
    c = [(a[m] - v * b[m]) / den for m in range(d)]
    out = []
    for y in Y:
        top = 0j
        for m in range(d):
            top -= c[m] * y[m]
        col = [ds * y[m + 1] for m in range(d - 1)]
        col.append(ds * top)
        out.append(col)
    return out


def _segment(a, b, s0, s1, Y, tol, h, stats, hmin):
    d = len(a) - 1
    ds = s1 - s0
    t = 0.0
    while t < 1.0:
        if h < hmin:
            raise StepUnderflow(f"step size {h:.3e} below {hmin:.3e} at s = {s0 + t * ds}")
        h = min(h, 1.0 - t)
        K = []
        for i in range(7):
            if i == 0:
                Yi = Y
            else:
                coeffs = _A[i]
                Yi = [
                    [y[m] + h * sum(coeffs[j] * K[j][c][m] for j in range(i)) for m in range(d)]
                    for c, y in enumerate(Y)
                ]
            K.append(_rhs(a, b, s0 + (t + _C[i] * h) * ds, ds, Yi, d))
        Ynew = [[y[m] + h * sum(_B5[j] * K[j][c][m] for j in range(7)) for m in range(d)] for c, y in enumerate(Y)]
        err = 0.0
        for c in range(len(Y)):
            scale = max(max(abs(x) for x in Y[c]), max(abs(x) for x in Ynew[c]), 1e-300)
            e = max(abs(h * sum(_E[j] * K[j][c][m] for j in range(7))) for m in range(d))
            err = max(err, e / (tol * scale))
        if err <= 1.0:
            t += h
            Y = Ynew
            stats["steps"] += 1
        else:
            stats["rejected"] += 1
        fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
        h *= fac
    return Y, h


def integrate_path(a, b, waypoints, Y, tol=1e-12, h0=0.01, hmin=1e-12):
    """Transport columns Y = [jet_0, ...] along the polyline ``waypoints`` in s = log v.

    ``a`` and ``b`` are the coefficient lists of A(theta) and B(theta).  The
    step ``h`` is a fraction of the current segment.  Returns (Y, stats).
    """
    a = [complex(x) for x in a]
    b = [complex(x) for x in b]
    Y = [[complex(x) for x in y] for y in Y]
    stats = {"steps": 0, "rejected": 0}
    pts = [complex(w) for w in waypoints]
    for s0, s1 in zip(pts, pts[1:]):
        if s0 == s1:
            continue
        L = abs(s1 - s0)
        h = min(1.0, h0 / L)
        Y, _ = _segment(a, b, s0, s1, Y, tol, h, stats, hmin / L)
    return Y, stats
