"""Beam-quality metrics: grid-min PDAF, closed-form average PDAF, and
the normalized average U at half-wavelength spacing.

The closed form for the average over theta ~ U[-pi/2, pi/2] is

    E{A} = M + 2 sum_{n<m} J0(a_{m-n}) cos(phi_m - phi_n - a_{m-n} sin theta_h)

with a_k = 2 pi (d/lambda) k and J0 the order-zero Bessel function of
the first kind.  U normalizes E{A} by its maximum over all codes at
spacing 1/2, attained by the max-average construction; the normalizer
is computed through the same closed-form path so the maximizer scores
exactly 1.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special

from . import codes
from .model import (
    AngularGrid,
    ArrayGeometry,
    InvalidInputError,
    PhaseCode,
    UnsupportedConfigurationError,
    pdaf_values,
)

# Serialized dB floor: grid minima below this linear level are written
# as -150 dB plus a flag (JSON cannot carry -inf).
DB_FLOOR_LINEAR = 1e-15
DB_FLOOR = -150.0

# u_half may exceed 1 by a hair for adversarial codes: the normalizer's
# maximality argument leans on the large-argument J0 behavior, which is
# loose for the first few lags.
U_HALF_SLACK = 3e-2

_GAUSS_NODES = 2048


def bessel_j0(x):
    """J0(x), the order-zero Bessel function of the first kind.

    Accepts a scalar or an array; rejects non-finite arguments.
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("bessel_j0 requires finite arguments")
    out = scipy.special.j0(arr)
    return float(out) if arr.ndim == 0 else out


def avg_pdaf_closed_form(code: PhaseCode, geom: ArrayGeometry) -> float:
    """E{A(Phi, theta)} over theta ~ U[-pi/2, pi/2], closed form."""
    m = geom.m
    if code.m != m:
        raise InvalidInputError(
            f"code length {code.m} does not match geometry element count {m}"
        )
    phases = code.phases
    lags = np.arange(1, m)
    a = 2.0 * np.pi * geom.spacing_ratio * lags
    j0a = scipy.special.j0(a)
    sh = math.sin(geom.theta_h)
    # fixed lag-major summation order; the u_half normalizer reuses this
    # exact path so identical terms cancel exactly
    total = 0.0
    for k in range(1, m):
        d = phases[k:] - phases[: m - k] - a[k - 1] * sh
        total += float(j0a[k - 1]) * float(np.sum(np.cos(d)))
    return m + 2.0 * total


def avg_pdaf_numeric(
    code: PhaseCode, geom: ArrayGeometry, nodes: int = _GAUSS_NODES, backend: str | None = None
) -> float:
    """E{A} by fixed Gauss-Legendre quadrature (cross-check of the closed form)."""
    x, w = np.polynomial.legendre.leggauss(int(nodes))
    theta = 0.5 * np.pi * x
    values = pdaf_values(code, geom, theta, backend)
    # expectation = (1/pi) * integral over [-pi/2, pi/2]
    return float(0.5 * np.dot(w, values))


def _max_average_reference(m: int) -> float:
    """Normalizer for u_half: E{A} of the max-average code at theta_h = 0."""
    ref_geom = ArrayGeometry(m, 0.5, 0.0)
    ref_code = codes.max_average(m, ref_geom, 0.0)
    return avg_pdaf_closed_form(ref_code, ref_geom)


def u_half(code: PhaseCode, geom: ArrayGeometry) -> float:
    """Average PDAF normalized by its maximum over codes, at spacing 1/2."""
    if geom.spacing_ratio != 0.5:
        raise UnsupportedConfigurationError(
            "u_half is only defined for spacing_ratio exactly 1/2"
        )
    return avg_pdaf_closed_form(code, geom) / _max_average_reference(geom.m)


def a_min_db(
    code: PhaseCode, geom: ArrayGeometry, grid: AngularGrid, backend: str | None = None
) -> float:
    """10*log10 of the grid-minimum PDAF; -inf when the minimum is zero."""
    v = float(pdaf_values(code, geom, grid.points, backend).min())
    if v == 0.0:
        return float("-inf")
    return 10.0 * math.log10(v)


@dataclass(frozen=True)
class MetricsReport:
    """Aggregated beam metrics for one code under one geometry.

    u_half is None when the geometry spacing is not exactly 1/2 (the
    normalizer is only defined there); a_min_db is -inf for an exactly
    zero grid minimum, and serialization floors values below -150 dB.
    """

    a_min_db: float
    a_min_linear: float
    a_avg_linear: float
    a_avg_numeric: float
    u_half: float | None
    grid_d: int
    geometry: ArrayGeometry


def metrics_report(
    code: PhaseCode, geom: ArrayGeometry, grid: AngularGrid, backend: str | None = None
) -> MetricsReport:
    """Compute all metrics and check their internal consistency."""
    values = pdaf_values(code, geom, grid.points, backend)
    vmin = float(values.min())
    min_db = 10.0 * math.log10(vmin) if vmin > 0.0 else float("-inf")
    avg_closed = avg_pdaf_closed_form(code, geom)
    avg_numeric = avg_pdaf_numeric(code, geom, backend=backend)
    u = u_half(code, geom) if geom.spacing_ratio == 0.5 else None

    if abs(avg_closed - avg_numeric) > 1e-6 * abs(avg_closed):
        raise ArithmeticError(
            "closed-form and quadrature average PDAF disagree beyond 1e-6: "
            f"{avg_closed!r} vs {avg_numeric!r}"
        )
    if min_db > 10.0 * math.log10(avg_closed) + 1e-9:
        raise ArithmeticError("grid-min PDAF exceeds the average PDAF")
    if u is not None and not (0.0 < u <= 1.0 + U_HALF_SLACK):
        raise ArithmeticError(f"u_half out of range: {u!r}")

    return MetricsReport(
        a_min_db=min_db,
        a_min_linear=vmin,
        a_avg_linear=avg_closed,
        a_avg_numeric=avg_numeric,
        u_half=u,
        grid_d=grid.d,
        geometry=geom,
    )
