"""Core objects: phase codes, array geometry, PDAF, ACF, element pattern.

A uni-polarized linear RIS with M elements applies a phase shift
``phi_m`` to the impinging wave at each element.  The power-domain array
factor (PDAF) of the reflected beam at azimuth angle ``theta`` is

    A(Phi, theta) = |sum_m e^{j phi_m} e^{-j 2 pi (d/lambda) (m-1) (sin theta_h + sin theta)}|^2

which ranges over [0, M^2].  Everything in this module is a pure
function over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._kernels import TWO_PI

HALF_PI = math.pi / 2.0

# 3GPP single-element pattern rolloff coefficient (dB per normalized angle^2)
_PATTERN_ROLLOFF_DB = 12.0


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class UnsupportedConfigurationError(InvalidInputError):
    """The requested quantity is not defined for this configuration."""


def _canonical_phases(values) -> np.ndarray:
    p = np.asarray(values, dtype=np.float64)
    if p.ndim != 1:
        raise InvalidInputError("phases must be a one-dimensional sequence")
    if p.size < 2:
        raise InvalidInputError("a phase code needs at least 2 elements")
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("phases must be finite")
    out = np.mod(p, TWO_PI)
    # np.mod of a tiny negative value can round up to exactly 2*pi
    out[out == TWO_PI] = 0.0
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class PhaseCode:
    """Immutable vector of element phase shifts, canonical in [0, 2*pi)."""

    phases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phases", _canonical_phases(self.phases))

    @property
    def m(self) -> int:
        return int(self.phases.size)

    def __len__(self) -> int:
        return int(self.phases.size)

    def unit_phasors(self) -> np.ndarray:
        """The unit-modulus vector e^{j phi_m} this code induces."""
        return _kernels.unit_phasors(self.phases)

    def __eq__(self, other):
        if not isinstance(other, PhaseCode):
            return NotImplemented
        return self.phases.shape == other.phases.shape and bool(
            np.all(self.phases == other.phases)
        )

    def __hash__(self):
        return hash(self.phases.tobytes())

    def __repr__(self):
        return f"PhaseCode(m={self.m})"


@dataclass(frozen=True)
class ArrayGeometry:
    """Element count, spacing-to-wavelength ratio, and incidence angle."""

    m: int
    spacing_ratio: float = 0.5
    theta_h: float = 0.0

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer)):
            raise InvalidInputError("element count m must be an integer")
        object.__setattr__(self, "m", int(self.m))
        if self.m < 2:
            raise InvalidInputError("element count m must be at least 2")
        if not (math.isfinite(self.spacing_ratio) and self.spacing_ratio > 0):
            raise InvalidInputError("spacing_ratio must be positive and finite")
        if not (-HALF_PI <= self.theta_h <= HALF_PI):
            raise InvalidInputError("theta_h must lie in [-pi/2, pi/2]")


@dataclass(frozen=True, eq=False)
class AngularGrid:
    """D+1 evenly spaced angles covering [-pi/2, pi/2] inclusive."""

    d: int
    points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, (int, np.integer)):
            raise InvalidInputError("grid resolution d must be an integer")
        object.__setattr__(self, "d", int(self.d))
        if self.d < 1:
            raise InvalidInputError("grid resolution d must be at least 1")
        pts = np.linspace(-HALF_PI, HALF_PI, self.d + 1)  # exact endpoints
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __eq__(self, other):
        if not isinstance(other, AngularGrid):
            return NotImplemented
        return self.d == other.d

    def __hash__(self):
        return hash(("AngularGrid", self.d))


@dataclass(frozen=True)
class ElementPattern:
    """Clipped-parabola element gain in dBi, symmetric about theta0."""

    peak_gain_dbi: float = 8.0
    theta0: float = 0.0
    delta_theta: float = HALF_PI
    floor_db: float = 30.0

    def __post_init__(self):
        if not (math.isfinite(self.delta_theta) and self.delta_theta > 0):
            raise InvalidInputError("delta_theta must be positive and finite")
        if not (math.isfinite(self.floor_db) and self.floor_db >= 0):
            raise InvalidInputError("floor_db must be nonnegative and finite")
        if not math.isfinite(self.peak_gain_dbi) or not math.isfinite(self.theta0):
            raise InvalidInputError("pattern parameters must be finite")


def _check_dims(code: PhaseCode, geom: ArrayGeometry) -> None:
    if code.m != geom.m:
        raise InvalidInputError(
            f"code length {code.m} does not match geometry element count {geom.m}"
        )


def _check_angles(theta) -> np.ndarray:
    th = np.asarray(theta, dtype=np.float64)
    if not np.all(np.isfinite(th)):
        raise InvalidInputError("angles must be finite")
    if np.any(th < -HALF_PI) or np.any(th > HALF_PI):
        raise InvalidInputError("angles must lie in [-pi/2, pi/2]")
    return th


def element_gain(pattern: ElementPattern, theta) -> float | np.ndarray:
    """Element gain G0(theta) in dBi.

    G0(theta) = peak - min(12 ((theta - theta0) / delta_theta)^2, floor).
    Accepts a scalar or an array of angles in [-pi/2, pi/2].
    """
    th = _check_angles(theta)
    off = (th - pattern.theta0) / pattern.delta_theta
    loss = np.minimum(_PATTERN_ROLLOFF_DB * off * off, pattern.floor_db)
    gain = pattern.peak_gain_dbi - loss
    if np.isscalar(theta) or getattr(theta, "ndim", 1) == 0:
        return float(gain)
    return gain


def pdaf_values(
    code: PhaseCode, geom: ArrayGeometry, thetas, backend: str | None = None
) -> np.ndarray:
    """PDAF evaluated at an arbitrary array of angles (bulk path)."""
    _check_dims(code, geom)
    th = np.atleast_1d(_check_angles(thetas))
    st_re, st_im = _kernels.steering_tables(
        geom.m, geom.spacing_ratio, geom.theta_h, th
    )
    prof = _kernels.pdaf_profile_many(code.phases[None, :], st_re, st_im, backend)
    return prof[0]


def pdaf(code: PhaseCode, geom: ArrayGeometry, theta: float, backend: str | None = None) -> float:
    """PDAF A(Phi, theta) at a single angle; in [0, M^2]."""
    return float(pdaf_values(code, geom, np.asarray([theta]), backend)[0])


def pdaf_profile(
    code: PhaseCode, geom: ArrayGeometry, grid: AngularGrid, backend: str | None = None
) -> np.ndarray:
    """(angle, linear gain) rows over the grid, shape (D+1, 2)."""
    values = pdaf_values(code, geom, grid.points, backend)
    return np.column_stack([grid.points, values])


@dataclass(frozen=True, eq=False)
class AcfSequence:
    """Autocorrelation of the unit-phasor vector over lags -(M-1)..M-1."""

    lags: np.ndarray
    values: np.ndarray

    def value_at(self, lag: int) -> complex:
        m = (self.lags.size + 1) // 2
        if not -m < lag < m:
            raise InvalidInputError(f"lag {lag} outside [-(M-1), M-1]")
        return complex(self.values[lag + m - 1])


def acf(code: PhaseCode) -> AcfSequence:
    """R[tau] = sum_m psi_m conj(psi_{m+tau}) for tau = -(M-1)..M-1.

    The lag-0 value is the analytic sum of unit moduli, exactly M.
    Negative lags are filled by conjugate symmetry.
    """
    psi = code.unit_phasors()
    m = psi.size
    pos = np.empty(m, dtype=np.complex128)
    pos[0] = float(m)
    for tau in range(1, m):
        pos[tau] = np.sum(psi[: m - tau] * np.conj(psi[tau:]))
    values = np.concatenate([np.conj(pos[:0:-1]), pos])
    lags = np.arange(-(m - 1), m)
    values.flags.writeable = False
    lags.flags.writeable = False
    return AcfSequence(lags=lags, values=values)


def retarget(code: PhaseCode, geom: ArrayGeometry, new_theta_h: float) -> PhaseCode:
    """Re-steer a code designed for theta_h = 0 to a new incidence angle.

    phi_m -> phi_m + 2 pi (d/lambda) (m-1) sin(new_theta_h)  (mod 2 pi).
    The PDAF profile under the new incidence angle is identical to the
    original profile at theta_h = 0.
    """
    _check_dims(code, geom)
    if geom.theta_h != 0.0:
        raise InvalidInputError("retarget expects a code designed for theta_h = 0")
    if not (-HALF_PI <= new_theta_h <= HALF_PI):
        raise InvalidInputError("new_theta_h must lie in [-pi/2, pi/2]")
    if new_theta_h == 0.0:
        return PhaseCode(code.phases)
    shift = (
        TWO_PI
        * geom.spacing_ratio
        * math.sin(new_theta_h)
        * np.arange(geom.m, dtype=np.float64)
    )
    return PhaseCode(code.phases + shift)
