"""Numerical kernels with selectable numba and numpy backends.

The hot path of the whole package is bulk evaluation of the power-domain
array factor (PDAF) of many phase codes over many angles.  Two
implementations are provided: a JIT-compiled scalar-loop kernel (numba)
and a vectorized einsum path (numpy).  Both consume identical steering
tables and identical unit phasors, so they agree to floating round-off,
and within each backend batch size never changes a result.

The environment variable ``RISBEAM_BACKEND`` selects the default:
``numba``, ``numpy``, or ``auto`` (numba when importable, else numpy).
Every public wrapper also accepts an explicit ``backend=`` argument.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an install-time choice
    numba = None
    _HAVE_NUMBA = False

PI = math.pi
TWO_PI = 2.0 * math.pi

ENV_BACKEND = "RISBEAM_BACKEND"


def available_backends() -> tuple[str, ...]:
    """Backends usable in this process."""
    if _HAVE_NUMBA:
        return ("numba", "numpy")
    return ("numpy",)


def default_backend() -> str:
    """Resolve the default backend from the environment."""
    choice = os.environ.get(ENV_BACKEND, "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if _HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(
            f"unknown {ENV_BACKEND} value {choice!r}; expected 'numba', 'numpy' or 'auto'"
        )
    if choice == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


def _resolve(backend: str | None) -> str:
    if backend is None:
        return default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}; expected 'numba' or 'numpy'")
    if backend == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def unit_phasors(phases: np.ndarray) -> np.ndarray:
    """e^{j*phase} with exact values at the phases 0, pi and 2*pi.

    sin(pi) evaluates to ~1.2e-16 in doubles, which would leave a spurious
    imaginary residue in the autocorrelation of binary-phase codes.
    Snapping the three exactly-representable special phases keeps such
    codes exactly on the real axis.  The numba kernels below apply the
    identical rule inline.
    """
    p = np.asarray(phases, dtype=np.float64)
    re = np.cos(p)
    im = np.sin(p)
    at_zero = (p == 0.0) | (p == TWO_PI)
    at_pi = p == PI
    re[at_zero] = 1.0
    im[at_zero] = 0.0
    re[at_pi] = -1.0
    im[at_pi] = 0.0
    return re + 1j * im


def steering_tables(
    m: int, spacing_ratio: float, theta_h: float, thetas
) -> tuple[np.ndarray, np.ndarray]:
    """Real/imag steering tables of shape (n_angles, m), C-contiguous.

    Row j holds e^{-i k alpha_j} for k = 0..m-1 with
    alpha_j = 2*pi*spacing_ratio*(sin(theta_h) + sin(theta_j)).
    The angle-major layout gives both kernels unit-stride inner loops.
    """
    th = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    alpha = TWO_PI * spacing_ratio * (math.sin(theta_h) + np.sin(th))
    angle = -np.outer(alpha, np.arange(m, dtype=np.float64))
    return np.cos(angle), np.sin(angle)


def _profile_np(pop: np.ndarray, st_re: np.ndarray, st_im: np.ndarray) -> np.ndarray:
    # einsum (not matmul) so the reduction order over elements is fixed
    # regardless of how many codes or angles are in the batch; a scalar
    # call then reproduces any batch entry bit for bit
    e = unit_phasors(pop)
    c = np.einsum("im,jm->ij", e, st_re + 1j * st_im)
    return c.real**2 + c.imag**2


def _min_np(pop: np.ndarray, st_re: np.ndarray, st_im: np.ndarray) -> np.ndarray:
    # literally the profile path followed by a reduction, so the two
    # numpy entry points can never disagree
    return _profile_np(pop, st_re, st_im).min(axis=1)


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _profile_nb(pop, st_re, st_im):  # pragma: no cover - exercised via wrapper
        n, m = pop.shape
        g = st_re.shape[0]
        out = np.empty((n, g))
        cr = np.empty(m)
        ci = np.empty(m)
        for i in range(n):
            for k in range(m):
                p = pop[i, k]
                if p == 0.0 or p == TWO_PI:
                    cr[k] = 1.0
                    ci[k] = 0.0
                elif p == PI:
                    cr[k] = -1.0
                    ci[k] = 0.0
                else:
                    cr[k] = np.cos(p)
                    ci[k] = np.sin(p)
            for j in range(g):
                sr = 0.0
                si = 0.0
                for k in range(m):
                    sr += cr[k] * st_re[j, k] - ci[k] * st_im[j, k]
                    si += cr[k] * st_im[j, k] + ci[k] * st_re[j, k]
                out[i, j] = sr * sr + si * si
        return out

    @numba.njit(cache=True)
    def _min_nb(pop, st_re, st_im):  # pragma: no cover - exercised via wrapper
        # identical arithmetic to _profile_nb, reduced in-register;
        # no fastmath anywhere so the two stay bit-identical
        n, m = pop.shape
        g = st_re.shape[0]
        out = np.empty(n)
        cr = np.empty(m)
        ci = np.empty(m)
        for i in range(n):
            for k in range(m):
                p = pop[i, k]
                if p == 0.0 or p == TWO_PI:
                    cr[k] = 1.0
                    ci[k] = 0.0
                elif p == PI:
                    cr[k] = -1.0
                    ci[k] = 0.0
                else:
                    cr[k] = np.cos(p)
                    ci[k] = np.sin(p)
            lo = np.inf
            for j in range(g):
                sr = 0.0
                si = 0.0
                for k in range(m):
                    sr += cr[k] * st_re[j, k] - ci[k] * st_im[j, k]
                    si += cr[k] * st_im[j, k] + ci[k] * st_re[j, k]
                v = sr * sr + si * si
                if v < lo:
                    lo = v
            out[i] = lo
        return out


def _as_pop(pop) -> np.ndarray:
    arr = np.ascontiguousarray(pop, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("population must be a 2-D array of phases")
    return arr


def _as_table(tab) -> np.ndarray:
    return np.ascontiguousarray(tab, dtype=np.float64)


def pdaf_profile_many(pop, st_re, st_im, backend: str | None = None) -> np.ndarray:
    """PDAF of each population row at each steering-table angle, shape (n, g)."""
    b = _resolve(backend)
    pop = _as_pop(pop)
    st_re = _as_table(st_re)
    st_im = _as_table(st_im)
    if b == "numba":
        return _profile_nb(pop, st_re, st_im)
    return _profile_np(pop, st_re, st_im)


def min_pdaf_many(pop, st_re, st_im, backend: str | None = None) -> np.ndarray:
    """Minimum PDAF over the steering-table angles for each row, shape (n,)."""
    b = _resolve(backend)
    pop = _as_pop(pop)
    st_re = _as_table(st_re)
    st_im = _as_table(st_im)
    if b == "numba":
        return _min_nb(pop, st_re, st_im)
    return _min_np(pop, st_re, st_im)


def warmup(backend: str | None = None) -> None:
    """Trigger JIT compilation so later calls run at steady-state speed."""
    b = _resolve(backend)
    pop = np.array([[0.0, 1.0]])
    st_re, st_im = steering_tables(2, 0.5, 0.0, np.array([0.0, 0.3]))
    pdaf_profile_many(pop, st_re, st_im, backend=b)
    min_pdaf_many(pop, st_re, st_im, backend=b)
