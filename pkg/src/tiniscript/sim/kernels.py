"""Geometry backend selection.

The compiled extension (_geomfast, Cython) and the pure-Python module
(_geom) implement the same kernels with the same arithmetic. The compiled
one wins when it imports; set TINI_PURE=1 to force the pure backend, for
comparison runs and as an escape hatch.
"""

from __future__ import annotations

import os

if os.environ.get("TINI_PURE") == "1":
    from . import _geom as _backend
else:
    try:
        from . import _geomfast as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _geom as _backend

BACKEND: str = _backend.BACKEND

normalize_angle = _backend.normalize_angle
integrate_arc = _backend.integrate_arc
raycast = _backend.raycast
light_sum = _backend.light_sum
point_clearance = _backend.point_clearance
resolve_motion = _backend.resolve_motion
