# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels.

Scalar loops over right-closed theta grids, mirroring _kernels_py exactly:
same grid points, same guard rule, same -inf sentinels, same first-index
tie-breaking.
"""

from libc.math cimport INFINITY, M_PI, NAN, cos, fabs, floor, log, log1p, sin


cdef inline double _den(double s) noexcept nogil:
    # -log1p(-s) - s, with a series tail against cancellation for small s
    if s < 1e-4:
        return s * s * (0.5 + s * (1.0 / 3.0 + s * (0.25 + s * 0.2)))
    return -log1p(-s) - s


cdef inline double _threshold(int k, double th) noexcept nogil:
    cdef double half = 0.5 * th
    cdef double s = sin(half)
    cdef double sk, sk2, num
    s = s * s
    if s >= 1.0:
        return -INFINITY
    sk = sin(k * half)
    sk2 = sk * sk
    if sk2 >= 1.0:
        return -INFINITY
    num = (<double> (k * k)) * s + log1p(-sk2)
    return num / _den(s)


cdef inline bint _guarded(int k, double th, double guard, double pk) noexcept nogil:
    cdef double u = th * k / M_PI
    cdef double o = 2.0 * floor((u - 1.0) / 2.0 + 0.5) + 1.0
    return fabs(u - o) * pk < guard


def grid_max_threshold(int k, double lo, double hi, long n, double guard):
    """Max of the threshold curve over the guarded grid; (-inf, nan) if empty."""
    cdef double span = hi - lo
    cdef double pk = M_PI / k
    cdef double best = -INFINITY
    cdef double best_th = NAN
    cdef double th, v
    cdef long i
    with nogil:
        for i in range(1, n + 1):
            th = lo + span * ((<double> i) / (<double> n))
            if guard > 0.0 and _guarded(k, th, guard, pk):
                continue
            v = _threshold(k, th)
            if v > best:
                best = v
                best_th = th
    if best == -INFINITY:
        return -INFINITY, NAN
    return best, best_th


def grid_min_margin(double m, int k, double lo, double hi, long n, double guard):
    """Min of m - threshold over the guarded grid; (+inf, nan) if empty."""
    cdef double span = hi - lo
    cdef double pk = M_PI / k
    cdef double best = INFINITY
    cdef double best_th = NAN
    cdef double th, v
    cdef long i
    with nogil:
        for i in range(1, n + 1):
            th = lo + span * ((<double> i) / (<double> n))
            if guard > 0.0 and _guarded(k, th, guard, pk):
                continue
            v = m - _threshold(k, th)
            if v < best:
                best = v
                best_th = th
    if best == INFINITY:
        return INFINITY, NAN
    return best, best_th


def count_nonneg_threshold(int k, double lo, double hi, long n, double guard):
    """Number of unguarded grid points where the threshold curve is >= 0."""
    cdef double span = hi - lo
    cdef double pk = M_PI / k
    cdef double th
    cdef long i, count = 0
    with nogil:
        for i in range(1, n + 1):
            th = lo + span * ((<double> i) / (<double> n))
            if guard > 0.0 and _guarded(k, th, guard, pk):
                continue
            if _threshold(k, th) >= 0.0:
                count += 1
    return count


def grid_max_limit_shape(double lo, double hi, long n):
    """Max of the limit shape 2/z^2 + 2 ln(cos^2 z)/z^4 over a right-closed grid."""
    cdef double span = hi - lo
    cdef double best = -INFINITY
    cdef double best_z = NAN
    cdef double z, c, c2, z2, v
    cdef long i
    with nogil:
        for i in range(1, n + 1):
            z = lo + span * ((<double> i) / (<double> n))
            c = cos(z)
            c2 = c * c
            if c2 <= 0.0:
                continue
            z2 = z * z
            v = 2.0 / z2 + 2.0 * log(c2) / (z2 * z2)
            if v > best:
                best = v
                best_z = z
    if best == -INFINITY:
        return -INFINITY, NAN
    return best, best_z
