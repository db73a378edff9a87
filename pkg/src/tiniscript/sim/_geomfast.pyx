# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometry kernels, mirroring _geom.py operation for operation.

Keep the arithmetic order in sync with _geom.py: the test suite asserts
bit-identical results between the two backends. Compiled with
-ffp-contract=off so no multiply-add fusing changes the floats.
"""

from libc.math cimport cos, floor, sin, sqrt, INFINITY, M_PI

BACKEND = "compiled"

cdef double _STRAIGHT_OMEGA = 1e-9
cdef double _PARALLEL_EPS = 1e-12
cdef double _CONTACT_EPS = 1e-9
cdef int _BISECT_STEPS = 48


cpdef double normalize_angle(double theta):
    """Wrap into (-pi, pi]."""
    cdef double wrapped = theta - (2.0 * M_PI) * floor((theta + M_PI) / (2.0 * M_PI))
    if wrapped <= -M_PI:
        return M_PI
    return wrapped


cdef inline (double, double, double) _arc(
    double x, double y, double theta, double vl, double vr, double wheelbase, double dt
) nogil:
    cdef double v = (vl + vr) * 0.5
    cdef double omega = (vr - vl) / wheelbase
    cdef double nx, ny, ntheta, radius
    if omega > -_STRAIGHT_OMEGA and omega < _STRAIGHT_OMEGA:
        nx = x + v * dt * cos(theta)
        ny = y + v * dt * sin(theta)
        ntheta = theta
    else:
        radius = v / omega
        ntheta = theta + omega * dt
        nx = x + radius * (sin(ntheta) - sin(theta))
        ny = y - radius * (cos(ntheta) - cos(theta))
    return nx, ny, ntheta


cpdef tuple integrate_arc(
    double x, double y, double theta, double vl, double vr, double wheelbase, double dt
):
    """Advance a unicycle pose by dt along an exact circular arc."""
    cdef double nx, ny, ntheta
    nx, ny, ntheta = _arc(x, y, theta, vl, vr, wheelbase, dt)
    return nx, ny, normalize_angle(ntheta)


cpdef double raycast(
    double px, double py, double dx, double dy, double[:, ::1] walls, double[:, ::1] circles
):
    """Distance along the unit ray to the first obstacle; inf when clear."""
    cdef double best = INFINITY
    cdef Py_ssize_t i
    cdef double ax, ay, ex, ey, denom, fx, fy, t, u
    cdef double cx, cy, r, mx, my, b, c, disc, root
    for i in range(walls.shape[0]):
        ax = walls[i, 0]
        ay = walls[i, 1]
        ex = walls[i, 2] - ax
        ey = walls[i, 3] - ay
        denom = dx * ey - dy * ex
        if denom > -_PARALLEL_EPS and denom < _PARALLEL_EPS:
            continue
        fx = ax - px
        fy = ay - py
        t = (fx * ey - fy * ex) / denom
        u = (fx * dy - fy * dx) / denom
        if t >= 0.0 and u >= 0.0 and u <= 1.0 and t < best:
            best = t
    for i in range(circles.shape[0]):
        cx = circles[i, 0]
        cy = circles[i, 1]
        r = circles[i, 2]
        mx = px - cx
        my = py - cy
        b = 2.0 * (dx * mx + dy * my)
        c = mx * mx + my * my - r * r
        disc = b * b - 4.0 * c
        if disc < 0.0:
            continue
        root = sqrt(disc)
        t = (-b - root) * 0.5
        if t < 0.0:
            t = (-b + root) * 0.5
        if t >= 0.0 and t < best:
            best = t
    return best


cpdef double light_sum(double sx, double sy, double[:, ::1] lights):
    """Inverse-square sum of all sources at the sensor point, no occlusion."""
    cdef double total = 0.0
    cdef Py_ssize_t i
    cdef double ox, oy, d2
    for i in range(lights.shape[0]):
        ox = lights[i, 0] - sx
        oy = lights[i, 1] - sy
        d2 = ox * ox + oy * oy
        if d2 < 1e-4:
            d2 = 1e-4
        total += lights[i, 2] / d2
    return total


cdef double _clearance(double px, double py, double[:, ::1] walls, double[:, ::1] circles) nogil:
    cdef double best = INFINITY
    cdef Py_ssize_t i
    cdef double ax, ay, bx, by, ex, ey, fx, fy, length2, s, gx, gy, d, mx, my
    for i in range(walls.shape[0]):
        ax = walls[i, 0]
        ay = walls[i, 1]
        bx = walls[i, 2]
        by = walls[i, 3]
        ex = bx - ax
        ey = by - ay
        fx = px - ax
        fy = py - ay
        length2 = ex * ex + ey * ey
        if length2 > 0.0:
            s = (fx * ex + fy * ey) / length2
            if s < 0.0:
                s = 0.0
            elif s > 1.0:
                s = 1.0
        else:
            s = 0.0
        gx = fx - s * ex
        gy = fy - s * ey
        d = sqrt(gx * gx + gy * gy)
        if d < best:
            best = d
    for i in range(circles.shape[0]):
        mx = px - circles[i, 0]
        my = py - circles[i, 1]
        d = sqrt(mx * mx + my * my) - circles[i, 2]
        if d < best:
            best = d
    return best


cpdef double point_clearance(double px, double py, double[:, ::1] walls, double[:, ::1] circles):
    """Distance from a point to the nearest obstacle boundary."""
    return _clearance(px, py, walls, circles)


cpdef tuple resolve_motion(
    double x,
    double y,
    double theta,
    double vl,
    double vr,
    double wheelbase,
    double body_radius,
    double dt,
    double[:, ::1] walls,
    double[:, ::1] circles,
):
    """One tick of motion with collision stop; see _geom.resolve_motion."""
    cdef double nx, ny, ntheta, clearance, lo, hi, mid, mx, my, mtheta
    cdef int step
    nx, ny, ntheta = _arc(x, y, theta, vl, vr, wheelbase, dt)
    clearance = _clearance(nx, ny, walls, circles)
    if clearance >= body_radius:
        return nx, ny, normalize_angle(ntheta), clearance <= body_radius + _CONTACT_EPS
    lo = 0.0
    hi = 1.0
    for step in range(_BISECT_STEPS):
        mid = (lo + hi) * 0.5
        mx, my, mtheta = _arc(x, y, theta, vl, vr, wheelbase, dt * mid)
        if _clearance(mx, my, walls, circles) >= body_radius:
            lo = mid
        else:
            hi = mid
    nx, ny, ntheta = _arc(x, y, theta, vl, vr, wheelbase, dt * lo)
    return nx, ny, normalize_angle(ntheta), True
