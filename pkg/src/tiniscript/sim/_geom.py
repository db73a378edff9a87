"""Pure-Python geometry kernels: pose integration, raycasts, clearances.

The compiled backend in _geomfast.pyx mirrors this module operation for
operation so both produce bit-identical floats. Keep the arithmetic order
in the two files in sync when changing either.

Array conventions: walls (N,4) rows [x1,y1,x2,y2]; circles (M,3) rows
[cx,cy,r]; lights (K,3) rows [x,y,intensity]; all float64, lengths in
meters.
"""

from __future__ import annotations

import math

BACKEND = "pure"

# Below this |omega| the motion counts as straight-line.
_STRAIGHT_OMEGA = 1e-9

# Parallel-ray rejection threshold for segment intersection.
_PARALLEL_EPS = 1e-12

# A pose within this of an obstacle still counts as touching it.
_CONTACT_EPS = 1e-9

_BISECT_STEPS = 48


def normalize_angle(theta: float) -> float:
    """Wrap into (-pi, pi]."""
    wrapped = theta - (2.0 * math.pi) * math.floor((theta + math.pi) / (2.0 * math.pi))
    if wrapped <= -math.pi:
        return math.pi
    return wrapped


def integrate_arc(
    x: float,
    y: float,
    theta: float,
    vl: float,
    vr: float,
    wheelbase: float,
    dt: float,
) -> tuple[float, float, float]:
    """Advance a unicycle pose by dt along an exact circular arc."""
    v = (vl + vr) * 0.5
    omega = (vr - vl) / wheelbase
    if omega > -_STRAIGHT_OMEGA and omega < _STRAIGHT_OMEGA:
        nx = x + v * dt * math.cos(theta)
        ny = y + v * dt * math.sin(theta)
        return nx, ny, normalize_angle(theta)
    radius = v / omega
    ntheta = theta + omega * dt
    nx = x + radius * (math.sin(ntheta) - math.sin(theta))
    ny = y - radius * (math.cos(ntheta) - math.cos(theta))
    return nx, ny, normalize_angle(ntheta)


def raycast(px: float, py: float, dx: float, dy: float, walls, circles) -> float:
    """Distance along the unit ray (px,py)+(dx,dy)t to the first obstacle.

    Returns inf when nothing is hit.
    """
    best = math.inf
    for i in range(walls.shape[0]):
        ax = float(walls[i, 0])
        ay = float(walls[i, 1])
        ex = float(walls[i, 2]) - ax
        ey = float(walls[i, 3]) - ay
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
        cx = float(circles[i, 0])
        cy = float(circles[i, 1])
        r = float(circles[i, 2])
        mx = px - cx
        my = py - cy
        b = 2.0 * (dx * mx + dy * my)
        c = mx * mx + my * my - r * r
        disc = b * b - 4.0 * c
        if disc < 0.0:
            continue
        root = math.sqrt(disc)
        t = (-b - root) * 0.5
        if t < 0.0:
            t = (-b + root) * 0.5
        if t >= 0.0 and t < best:
            best = t
    return best


def light_sum(sx: float, sy: float, lights) -> float:
    """Inverse-square sum of all sources at the sensor point, no occlusion."""
    total = 0.0
    for i in range(lights.shape[0]):
        ox = float(lights[i, 0]) - sx
        oy = float(lights[i, 1]) - sy
        d2 = ox * ox + oy * oy
        if d2 < 1e-4:
            d2 = 1e-4
        total += float(lights[i, 2]) / d2
    return total


def point_clearance(px: float, py: float, walls, circles) -> float:
    """Distance from a point to the nearest obstacle boundary.

    Negative inside a circle obstacle; inf when the world is empty.
    """
    best = math.inf
    for i in range(walls.shape[0]):
        ax = float(walls[i, 0])
        ay = float(walls[i, 1])
        bx = float(walls[i, 2])
        by = float(walls[i, 3])
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
        d = math.sqrt(gx * gx + gy * gy)
        if d < best:
            best = d
    for i in range(circles.shape[0]):
        mx = px - float(circles[i, 0])
        my = py - float(circles[i, 1])
        d = math.sqrt(mx * mx + my * my) - float(circles[i, 2])
        if d < best:
            best = d
    return best


def resolve_motion(
    x: float,
    y: float,
    theta: float,
    vl: float,
    vr: float,
    wheelbase: float,
    body_radius: float,
    dt: float,
    walls,
    circles,
) -> tuple[float, float, float, bool]:
    """One tick of motion with collision stop.

    Integrates the exact arc; if the endpoint would overlap an obstacle,
    bisects the arc for the contact pose. The returned flag is True while
    the body touches an obstacle (within a hair), so it stays set when the
    robot rests against a wall and clears once motion pulls it away.
    """
    nx, ny, ntheta = integrate_arc(x, y, theta, vl, vr, wheelbase, dt)
    clearance = point_clearance(nx, ny, walls, circles)
    if clearance >= body_radius:
        touching = clearance <= body_radius + _CONTACT_EPS
        return nx, ny, ntheta, touching
    lo = 0.0
    hi = 1.0
    for _ in range(_BISECT_STEPS):
        mid = (lo + hi) * 0.5
        mx, my, _ = integrate_arc(x, y, theta, vl, vr, wheelbase, dt * mid)
        if point_clearance(mx, my, walls, circles) >= body_radius:
            lo = mid
        else:
            hi = mid
    nx, ny, ntheta = integrate_arc(x, y, theta, vl, vr, wheelbase, dt * lo)
    return nx, ny, ntheta, True
