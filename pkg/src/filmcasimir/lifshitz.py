"""Casimir pressure between two identical films across a vacuum gap.

The pressure is the double integral over transverse wavevector k and
imaginary frequency xi of the two polarization terms Q^2/(1 - Q^2),
with Q the finite-thickness slab reflection factor times exp(-gamma l).
All reflection quantities are real on the imaginary axis.

Two independent integration engines are provided: "legendre" evaluates a
tensor Gauss-Legendre rule of increasing order in polar-like variables
(radial decay exp(-2 gamma l) is one-dimensional there), and "quadpack"
nests adaptive quadratures over the rectangular transforms
xi = xi0 t/(1-t), k = k0 u/(1-u).  They cross-check each other in tests.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .constants import C_NM_S, HBAR_JS
from .dielectric import DielectricTensor, build_tensor, eps_isotropic_bulk, eps_xx, eps_zz
from .estructure import film_state
from .materials import Material, derive_bulk

# maps the nm^-4 double integral to Pa
_PREF_PA = HBAR_JS * C_NM_S * 1e27 / (2.0 * math.pi**2)

_ORDERS = (16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024)


@dataclass(frozen=True)
class SlabOptics:
    """Dielectric response and thickness of one film, ready for the integrand."""

    eps_xx: Callable
    eps_zz: Callable
    D: float                # nm
    omega_scale: float = 0.0  # rad/s, sets the frequency transform scale


@dataclass(frozen=True)
class ForceResult:
    pressure: float            # Pa, negative = attractive
    abs_error_estimate: float  # Pa
    evaluations: int           # integrand points


class ForceConvergenceError(RuntimeError):
    """Quadrature did not reach the requested tolerance; carries the partial result."""

    def __init__(self, message: str, partial: ForceResult):
        super().__init__(message)
        self.partial = partial


def slab_from_tensor(tensor: DielectricTensor) -> SlabOptics:
    return SlabOptics(
        eps_xx=lambda xi: eps_xx(tensor, xi),
        eps_zz=lambda xi: eps_zz(tensor, xi),
        D=tensor.state.spectrum.D,
        omega_scale=tensor.omega_P,
    )


def isotropic_slab(bulk, gamma: float, D: float) -> SlabOptics:
    """Reference film with the bulk free-electron response in both directions."""
    if D <= 0.0:
        raise ValueError(f"film thickness must be positive, got {D}")
    eps = lambda xi: eps_isotropic_bulk(bulk, gamma, xi)
    return SlabOptics(eps_xx=eps, eps_zz=eps, D=D, omega_scale=bulk.Omega_P)


def _ln_q(a, b, g_slab, g0, D, ell):
    """log of |Q| for one polarization, with its sign.

    rho = (a - b)/(a + b); the slab factor rho(1 - e)/(1 - rho^2 e) with
    e = exp(-2 g_slab D) stays in (-1, 1), and 1 - |slab factor| is computed
    cancellation-free as (1 - |rho|)(1 + |rho| e)/(1 - rho^2 e).
    """
    denom = a + b
    rho = (a - b) / denom
    abs_rho = np.abs(rho)
    e2d = np.exp(-2.0 * g_slab * D)
    one_minus_slab = (2.0 * np.minimum(a, b) / denom) * (1.0 + abs_rho * e2d) / (1.0 - rho * rho * e2d)
    with np.errstate(divide="ignore"):
        ln_q = np.log1p(-one_minus_slab) - g0 * ell
    return ln_q, np.sign(rho)


def _ln_q_both(slab: SlabOptics, k, zeta, ell: float):
    """(ln|Q_TM|, sign_TM, ln|Q_TE|, sign_TE) on the imaginary axis.

    k and zeta = xi/c in nm^-1; all square-root arguments are positive
    because eps_xx > 1 and eps_zz >= 1 there.
    """
    xi = zeta * C_NM_S
    exx = slab.eps_xx(xi)
    ezz = slab.eps_zz(xi)
    # same expression as g_te/g_tm so eps = 1 cancels exactly in rho
    g0 = np.sqrt(k * k + zeta * zeta)
    g_te = np.sqrt(k * k + zeta * zeta * exx)
    g_tm = np.sqrt((k * k / ezz + zeta * zeta) * exx)
    ln_tm, sign_tm = _ln_q(g_tm, g0 * exx, g_tm, g0, slab.D, ell)
    ln_te, sign_te = _ln_q(g_te, g0, g_te, g0, slab.D, ell)
    return ln_tm, sign_tm, ln_te, sign_te


def q_factors(slab: SlabOptics, k: float, xi: float, ell: float) -> tuple[float, float]:
    """Signed reflection factors (Q_TM, Q_TE) entering the pressure integrand."""
    if k < 0.0 or xi <= 0.0 or ell <= 0.0:
        raise ValueError("need k >= 0, xi > 0 and ell > 0")
    ln_tm, s_tm, ln_te, s_te = _ln_q_both(slab, k, xi / C_NM_S, ell)
    return float(s_tm * np.exp(ln_tm)), float(s_te * np.exp(ln_te))


def _r_sum(slab: SlabOptics, k, zeta, ell: float):
    """Q_TM^2/(1-Q_TM^2) + Q_TE^2/(1-Q_TE^2), stable near |Q| -> 1 and 0."""
    ln_tm, _, ln_te, _ = _ln_q_both(slab, k, zeta, ell)
    out = 0.0
    for ln in (ln_tm, ln_te):
        two_ln = 2.0 * ln
        out = out + np.exp(two_ln) / (-np.expm1(two_ln))
    return out


def _force_legendre(slab: SlabOptics, ell: float, tol: float, max_order: int) -> ForceResult:
    g_scale = 1.5 / ell  # radial nodes straddle the exp(-2 gamma ell) support
    prev = None
    evaluations = 0
    pressure = math.nan
    err = math.inf
    for n in _ORDERS:
        if n > max_order:
            break
        t, wt = _unit_nodes(n)
        gam = g_scale * t / (1.0 - t)
        jac = g_scale / (1.0 - t) ** 2
        y = t  # same open rule for the angular variable
        zeta = gam[:, None] * y[None, :]
        k = gam[:, None] * np.sqrt(1.0 - y * y)[None, :]
        integ = _r_sum(slab, k, zeta, ell)
        val = (wt * gam**3 * jac) @ integ @ wt
        evaluations += n * n
        pressure = float(-_PREF_PA * val)
        if prev is not None:
            err = abs(pressure - prev)
            if err <= tol * abs(pressure) or err == 0.0:
                return ForceResult(pressure, err, evaluations)
        prev = pressure
    raise ForceConvergenceError(
        f"pressure not converged to {tol:g} at order {max_order} (ell={ell} nm)",
        ForceResult(pressure, err, evaluations),
    )


def _force_quadpack(slab: SlabOptics, ell: float, tol: float, limit: int = 200) -> ForceResult:
    zeta0 = max(slab.omega_scale / C_NM_S, 1.0 / ell)
    k0 = 1.0 / ell
    inner_rel = max(tol / 10.0, 1e-13)
    counter = [0]

    def outer(u):
        k = k0 * u / (1.0 - u)

        def inner(t):
            counter[0] += 1
            zeta = zeta0 * t / (1.0 - t)
            g0 = math.hypot(k, zeta)
            r = _r_sum(slab, k, zeta, ell)
            return float(r) * g0 * zeta0 / (1.0 - t) ** 2

        val, _ = quad(inner, 0.0, 1.0, epsabs=0.0, epsrel=inner_rel, limit=limit)
        return k * val * k0 / (1.0 - u) ** 2

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, abserr = quad(outer, 0.0, 1.0, epsabs=0.0, epsrel=0.8 * tol, limit=limit)
    pressure = -_PREF_PA * val
    err = _PREF_PA * abserr + inner_rel * abs(pressure)
    if err > tol * abs(pressure) and pressure != 0.0:
        raise ForceConvergenceError(
            f"adaptive rule reports error {err:g} Pa above {tol:g} relative (ell={ell} nm)",
            ForceResult(pressure, err, counter[0]),
        )
    return ForceResult(pressure, err, counter[0])


_NODE_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _unit_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to the open interval (0, 1)."""
    if n not in _NODE_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _NODE_CACHE[n] = (0.5 * (x + 1.0), 0.5 * w)
    return _NODE_CACHE[n]


def force(slab: SlabOptics, ell: float, tol: float = 1e-6, engine: str = "legendre",
          max_order: int = 1024) -> ForceResult:
    """Casimir pressure (Pa, negative = attractive) between two copies of ``slab``.

    Parameters
    ----------
    slab : SlabOptics
    ell : float
        Vacuum gap between the facing surfaces, nm.
    tol : float
        Relative tolerance; on success abs_error_estimate <= tol*|pressure|.
    engine : str
        "legendre" (default) or "quadpack"; see the module docstring.

    Raises ForceConvergenceError (carrying the partial result) when the
    requested tolerance cannot be certified.
    """
    if ell <= 0.0:
        raise ValueError(f"gap must be positive, got {ell}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if engine == "legendre":
        return _force_legendre(slab, ell, tol, max_order)
    if engine == "quadpack":
        return _force_quadpack(slab, ell, tol)
    raise ValueError(f"unknown engine {engine!r} (expected 'legendre' or 'quadpack')")


def ideal_mirror_pressure(ell: float) -> float:
    """Perfect-mirror limit -pi^2 hbar c / (240 ell^4), in Pa (ell in nm)."""
    return -math.pi**2 / 240.0 * HBAR_JS * C_NM_S * 1e27 / ell**4


def quantized_slab(material: Material, model: str, D: float, gamma: float = 0.0,
                   omega_P_mode: str = "sqrt") -> SlabOptics:
    """Film optics from the size-quantized dielectric tensor."""
    state = film_state(material, model, D)
    return slab_from_tensor(build_tensor(state, omega_P_mode=omega_P_mode, gamma=gamma))


def reference_slab(material: Material, D: float, gamma: float = 0.0) -> SlabOptics:
    """Film optics of the same slab with the bulk isotropic response."""
    return isotropic_slab(derive_bulk(material), gamma, D)


def force_pair(material: Material, model: str, D: float, ell: float, gamma: float = 0.0,
               tol: float = 1e-7, engine: str = "legendre",
               omega_P_mode: str = "sqrt") -> tuple[ForceResult, ForceResult]:
    """(quantized, bulk-reference) pressures at identical quadrature settings."""
    f_q = force(quantized_slab(material, model, D, gamma, omega_P_mode), ell, tol=tol, engine=engine)
    f_ref = force(reference_slab(material, D, gamma), ell, tol=tol, engine=engine)
    return f_q, f_ref


def delta_D(material: Material, model: str, D: float, ell: float, gamma: float,
            tol: float = 1e-7, engine: str = "legendre", omega_P_mode: str = "sqrt") -> float:
    """Relative force reduction (F_ref - F_quantized)/F_ref with relaxation gamma."""
    f_q, f_ref = force_pair(material, model, D, ell, gamma, tol=tol, engine=engine,
                            omega_P_mode=omega_P_mode)
    return (f_ref.pressure - f_q.pressure) / f_ref.pressure


def delta_P(material: Material, model: str, D: float, ell: float,
            tol: float = 1e-7, engine: str = "legendre", omega_P_mode: str = "sqrt") -> float:
    """Force reduction for the dissipationless plasma-type response."""
    return delta_D(material, model, D, ell, 0.0, tol=tol, engine=engine, omega_P_mode=omega_P_mode)
