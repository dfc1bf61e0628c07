"""Generators for the phase-code families the toolkit compares.

Families: Barker (binary), Frank (polyphase, square lengths), Chu
(polyphase, any length), best-of-N random baseline, the closed-form
maximizer of the average PDAF, and the bundled reference codes.
"""

from __future__ import annotations

import math
from math import gcd, isqrt

import numpy as np

from . import _kernels, refdata
from .model import AngularGrid, ArrayGeometry, InvalidInputError, PhaseCode

FAMILIES = ("barker", "frank", "chu", "random", "max-average", "reference")


def barker(m: int, alternate: bool = False) -> PhaseCode:
    """The Barker sequence of length m as a binary phase code.

    Lengths 2 and 4 have two known sequences; ``alternate=True`` selects
    the second one.
    """
    rows = refdata.BARKER_CODES.get(m)
    if rows is None:
        supported = ", ".join(str(k) for k in sorted(refdata.BARKER_CODES))
        raise InvalidInputError(
            f"no Barker code of length {m}; supported lengths: {supported}"
        )
    if alternate:
        if len(rows) < 2:
            raise InvalidInputError(f"no alternate Barker code of length {m}")
        return PhaseCode(rows[1])
    return PhaseCode(rows[0])


def barker_sidelobe_ratio_db(m: int) -> float:
    """Peak-to-sidelobe ratio 20*log10(1/M) of the length-m Barker code."""
    if m not in refdata.BARKER_CODES:
        supported = ", ".join(str(k) for k in sorted(refdata.BARKER_CODES))
        raise InvalidInputError(
            f"no Barker code of length {m}; supported lengths: {supported}"
        )
    return 20.0 * math.log10(1.0 / m)


def frank(m: int) -> PhaseCode:
    """The Frank polyphase code of length m = N^2.

    Row-concatenation of the N x N matrix with entries
    2*pi*(i-1)*(j-1)/N mod 2*pi.  The modular reduction is done on the
    integer product so exactly representable phases stay exact.
    """
    n = isqrt(m) if m >= 0 else 0
    if n * n != m or n < 2:
        raise InvalidInputError(
            f"Frank requires a perfect-square length of at least 4, got {m}"
        )
    idx = np.arange(n)
    omega = (2.0 * np.pi / n) * (np.outer(idx, idx) % n)
    return PhaseCode(omega.reshape(-1))


def chu(m: int, q: int) -> PhaseCode:
    """The Chu polyphase code of length m with parameter q coprime to m.

    Even m: phi_k = q*pi*(k-1)^2 / m;  odd m: phi_k = q*pi*k*(k-1) / m,
    for k = 1..m, reduced mod 2*pi (on the integer numerator, exactly).
    """
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise InvalidInputError("Chu parameter q must be an integer")
    if q < 1:
        raise InvalidInputError("Chu parameter q must be positive")
    if m < 2:
        raise InvalidInputError("Chu requires length at least 2")
    if gcd(q, m) != 1:
        raise InvalidInputError(f"Chu requires gcd(q, m) = 1, got gcd({q}, {m}) = {gcd(q, m)}")
    k = np.arange(1, m + 1, dtype=np.int64)
    if m % 2 == 0:
        num = q * (k - 1) ** 2
    else:
        num = q * k * (k - 1)
    return PhaseCode((np.pi / m) * (num % (2 * m)))


def chu_best_q(
    m: int, geom: ArrayGeometry, grid: AngularGrid, backend: str | None = None
) -> tuple[int, PhaseCode]:
    """The coprime q in 1..m-1 maximizing the grid-min PDAF.

    q and q+m generate the same phases mod 2*pi, so the search is finite.
    Mirror pairs (q, m-q) trace mirror-image profiles over the symmetric
    grid and tie exactly in exact arithmetic; candidates within 1e-9
    relative of the maximum are treated as tied and the smallest q wins.
    """
    if geom.m != m:
        raise InvalidInputError(f"geometry element count {geom.m} does not match m={m}")
    qs = [q for q in range(1, m) if gcd(q, m) == 1]
    pop = np.stack([chu(m, q).phases for q in qs])
    st_re, st_im = _kernels.steering_tables(
        m, geom.spacing_ratio, geom.theta_h, grid.points
    )
    fits = _kernels.min_pdaf_many(pop, st_re, st_im, backend)
    fmax = float(fits.max())
    best_q = min(q for q, f in zip(qs, fits) if f >= fmax * (1.0 - 1e-9))
    return best_q, chu(m, best_q)


def random_best(
    m: int,
    trials: int,
    seed: int,
    geom: ArrayGeometry,
    grid: AngularGrid,
    backend: str | None = None,
) -> PhaseCode:
    """Best of `trials` codes drawn i.i.d. uniform on [0, 2*pi) per element.

    All trials come from one PCG64 stream seeded with `seed`, drawn as a
    single (trials, m) block, so the result is a pure function of the
    arguments.  Ties resolve to the earliest trial.
    """
    if isinstance(trials, bool) or not isinstance(trials, (int, np.integer)) or trials < 1:
        raise InvalidInputError("trials must be a positive integer")
    if geom.m != m:
        raise InvalidInputError(f"geometry element count {geom.m} does not match m={m}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pop = rng.uniform(0.0, _kernels.TWO_PI, size=(int(trials), m))
    st_re, st_im = _kernels.steering_tables(
        m, geom.spacing_ratio, geom.theta_h, grid.points
    )
    fits = _kernels.min_pdaf_many(pop, st_re, st_im, backend)
    return PhaseCode(pop[int(np.argmax(fits))])


def max_average(m: int, geom: ArrayGeometry, phi0: float = 0.0) -> PhaseCode:
    """Closed-form maximizer of the average PDAF at half-wavelength spacing.

    phi_k = phi0 + (k-1) * (1 + sin(theta_h)) * pi  (mod 2*pi).
    The 2*pi reduction is applied to the multiplier of pi before the
    final product, which is algebraically identical and keeps the phases
    at exact multiples of pi when sin(theta_h) = 0.
    """
    if geom.m != m:
        raise InvalidInputError(f"geometry element count {geom.m} does not match m={m}")
    if not math.isfinite(phi0):
        raise InvalidInputError("phi0 must be finite")
    t = ((1.0 + math.sin(geom.theta_h)) * np.arange(m, dtype=np.float64)) % 2.0
    return PhaseCode(phi0 + t * np.pi)


def reference_code(m: int) -> PhaseCode:
    """One of the bundled max-min reference codes (M in {13, 16, 36, 64}).

    These were produced by the included optimizer at desk scale for
    theta_h = 0 and spacing 1/2, and are stored at 4-decimal precision.
    """
    phases = refdata.REFERENCE_CODES.get(m)
    if phases is None:
        supported = ", ".join(str(k) for k in sorted(refdata.REFERENCE_CODES))
        raise InvalidInputError(
            f"no bundled reference code of length {m}; supported lengths: {supported}"
        )
    return PhaseCode(phases)
