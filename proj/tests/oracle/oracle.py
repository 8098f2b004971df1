"""Independent reference values for the test suite.

Closed forms, a Schwarz-Christoffel solve and brute-force enumerations,
written without reference to the C++ implementation. Run

    python3 tests/oracle/oracle.py > tests/unit/oracle_values.hpp

to regenerate the frozen header.
"""
import math
from fractions import Fraction

import mpmath as mp
import numpy as np

mp.mp.dps = 30


def seg_T(alpha):
    # hcap/2 of the unit segment at angle alpha*pi, from the power map
    # (w + a)^(1-alpha) (w - b)^alpha.
    return 1.0 / (4.0 * (1 - alpha) ** (1 - 2 * alpha) * alpha ** (2 * alpha - 1))


def seg_c(alpha):
    return 2.0 * (1 - 2 * alpha) / math.sqrt(alpha * (1 - alpha))


def alpha_for_c(c):
    return float(mp.findroot(lambda a: 2 * (1 - 2 * a) / mp.sqrt(a * (1 - a)) - c, 0.3))


def l_shape_hcap():
    # H minus 0 -> i -> 1+i. Boundary prevertices w1..w5 map to 0 (left),
    # i (outer corner), 1+i (tip), i (inner corner), 0 (right).
    e = [mp.mpf(-0.5), mp.mpf(0.5), mp.mpf(1), mp.mpf(-0.5), mp.mpf(-0.5)]

    def side(ws, k):
        def g(x):
            return mp.fprod(abs(x - w) ** ek for w, ek in zip(ws, e))
        return mp.quad(g, [ws[k], ws[k + 1]])

    def eqs(*u):
        ws = [mp.mpf(0)] + list(u)
        return [side(ws, k) - 1 for k in range(4)]

    sol = mp.findroot(eqs, [0.8, 1.6, 2.2, 3.0])
    ws = [mp.mpf(0)] + [sol[k] for k in range(4)]
    return float(-0.5 * mp.fsum(ek * w * w for w, ek in zip(ws, e)))


def squares_meeting(poly, j_min, j_max=8):
    # Closed standard squares [k2^j,(k+1)2^j] x [2^j,2^(j+1)] meeting a
    # polyline, by exact rational clipping.
    count, area = 0, Fraction(0)
    segs = list(zip(poly[:-1], poly[1:]))
    for j in range(j_min, j_max + 1):
        s = Fraction(2) ** j
        ks = set()
        for (a, b) in segs:
            ya, yb = sorted((a[1], b[1]))
            if yb < s or ya > 2 * s:
                continue
            # Clip the segment to the strip s <= y <= 2s.
            (x0, y0), (x1, y1) = a, b
            if y0 == y1:
                xs = [x0, x1]
            else:
                ts = [Fraction(0), Fraction(1)]
                for yy in (s, 2 * s):
                    t = (yy - y0) / (y1 - y0)
                    if 0 <= t <= 1:
                        ts.append(t)
                inside = [t for t in ts if s <= y0 + t * (y1 - y0) <= 2 * s]
                xs = [x0 + t * (x1 - x0) for t in inside]
            lo, hi = min(xs), max(xs)
            k0 = math.ceil(lo / s) - 1
            k1 = math.floor(hi / s)
            ks.update(range(k0, k1 + 1))
        count += len(ks)
        area += len(ks) * s * s
    return count, float(area)


def resample_dev():
    fine = np.linspace(0, 1, 1000)
    coarse = np.linspace(0, 1, 100)
    vals = np.interp(coarse, fine, np.sqrt(fine))
    return float(np.max(np.abs(vals - np.sqrt(coarse))))


def weak_lip_worst(f, T, n, c):
    t = np.linspace(0, T, n)
    v = f(t)
    best = (0.0, 0.0, 0.0)
    for lag in range(1, n):
        h = t[lag] - t[0]
        if h > 0.5 + 1e-12:
            break
        r = np.abs(v[lag:] - v[:-lag]) / (c * math.sqrt(h * math.log(1 / h)))
        i = int(np.argmax(r))
        if r[i] > best[0]:
            best = (float(r[i]), float(t[i]), float(t[i + lag]))
    return best


def main():
    P = Fraction
    out = {}
    out["sqrt5"] = math.sqrt(5)
    out["sqrt9996"] = math.sqrt(9996)
    out["seg_T_pi3"] = seg_T(1 / 3)
    out["seg_c_pi3"] = seg_c(1 / 3)
    out["alpha_c3"] = alpha_for_c(3.0)
    out["resample_sqrt_dev"] = resample_dev()
    out["acosh3"] = math.acosh(3)
    out["logcot_pi8"] = math.log(1 / math.tan(math.pi / 8))
    out["slit_internal_distance"] = math.sqrt(0.01 + 0.25)
    out["crossing_bound"] = math.log(2) / (2 * math.pi)
    out["half_annulus_e"] = math.pi
    out["half_annulus_e2"] = math.pi / 2
    out["l_shape_hcap"] = l_shape_hcap()
    slit = [(P(0), P(0)), (P(0), P(1))]
    n, a = squares_meeting(slit, -20)
    out["slit_squares_j20"] = n
    out["slit_area_j20"] = a
    ell = [(P(0), P(0)), (P(0), P(1)), (P(1), P(1))]
    n, a = squares_meeting(ell, -10)
    out["lshape_squares_j10"] = n
    out["lshape_area_j10"] = a
    tilted = [(P(0), P(0)), (P(3, 10), P(7, 10)), (P(-1, 5), P(13, 10))]
    n, a = squares_meeting(tilted, -12)
    out["tilted_squares_j12"] = n
    out["tilted_area_j12"] = a
    r, s, t = weak_lip_worst(np.sqrt, 0.5, 1001, 0.5)
    out["weaklip_sqrt_ratio"] = r
    out["weaklip_sqrt_s"] = s
    out["weaklip_sqrt_t"] = t
    r, _, _ = weak_lip_worst(lambda x: x, 0.5, 1001, 1.0)
    out["weaklip_linear_ratio"] = r

    print("// Generated by tests/oracle/oracle.py. Do not edit by hand.")
    print("#pragma once\n")
    print("namespace oracle {\n")
    for k, v in out.items():
        if isinstance(v, int):
            print(f"constexpr long {k} = {v};")
        else:
            print(f"constexpr double {k} = {v!r};")
    print("\n}  // namespace oracle")


if __name__ == "__main__":
    main()
