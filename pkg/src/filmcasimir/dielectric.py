"""Uniaxial dielectric tensor of a quantized film, on the imaginary axis.

In-plane motion is free, so eps_xx = eps_yy keeps the plasma form
1 + omega_P^2/(xi(xi+gamma)).  Along the confinement axis the response is
a sum over intersubband transitions.  Combining each transition's partial
fractions with the plasma term cancels the 1/xi^2 pieces exactly (the
oscillator-strength sum rule within the retained spectrum), leaving

    eps_zz(i xi) = 1 + sum_pairs  s_p / (dE_p^2 + hbar^2 xi (xi + gamma))

with strictly positive coefficients s_p, so eps_zz is finite at xi = 0 and
monotone decreasing.  Relaxation enters through the number-conserving
substitution omega^2 -> omega(omega + i gamma), i.e. xi^2 -> xi(xi+gamma).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import TextIO

import numpy as np

from .constants import E2_GAUSS, HBAR2_OVER_2ME as MU, HBAR_EVS
from .estructure import FilmElectronicState
from .materials import BulkReference
from .qwell import FiniteWell, WellSpectrum

# 8 pi e^2 (hbar^2/m)^2 = 32 pi e^2 mu^2; eV^3 after I^2 W / d
_PREF = 32.0 * math.pi * E2_GAUSS * MU * MU

_LEVEL_CAP = 400_000
_CHUNK = 1 << 23  # max elements of one (xi, pair) block


class TensorBuildError(RuntimeError):
    """The intersubband sum did not converge within the level cap."""


@dataclass(frozen=True)
class DielectricTensor:
    """Pair table and plasma weight for one film state at one relaxation rate."""

    state: FilmElectronicState
    gamma: float              # rad/s
    hw_p2: float              # (hbar omega_P)^2, eV^2
    d_norm: float             # normalization width, nm
    de: np.ndarray            # transition energies E_m - E_n > 0, eV
    strength_over_de: np.ndarray  # s_p / dE_p, eV^2
    osc_weight: float         # hbar^2 * oscillator plasma weight, eV^2

    @property
    def omega_P(self) -> float:
        """In-plane plasma frequency, rad/s."""
        return math.sqrt(self.hw_p2) / HBAR_EVS

    @property
    def sum_rule_completeness(self) -> float:
        """Oscillator weight over the full-sum-rule value 4 pi e^2 n_avg/m.

        Equals 1 for a complete partner basis; below 1 when the finite well
        keeps bound states only (continuum transitions are not modeled).
        """
        exact = 8.0 * math.pi * E2_GAUSS * MU * (self.state.areal_density / self.d_norm)
        return self.osc_weight / exact

    def with_gamma(self, gamma: float) -> "DielectricTensor":
        if gamma < 0.0:
            raise ValueError(f"relaxation frequency must be >= 0, got {gamma}")
        return replace(self, gamma=float(gamma))

    def eps_xx(self, xi):
        return eps_xx(self, xi)

    def eps_zz(self, xi):
        return eps_zz(self, xi)


def _pair_block(spectrum: WellSpectrum, weights: np.ndarray, j_lo: int, j_hi: int,
                d_norm: float) -> tuple[np.ndarray, np.ndarray]:
    """Transition energies and strengths for partners j in [j_lo, j_hi].

    Pairs are ordered (i < j) with i occupied; W = w_i - w_j > 0 since the
    weights decrease with energy.
    """
    e = spectrum.well_bottom_energies
    m0 = weights.size
    de_parts: list[np.ndarray] = []
    num_parts: list[np.ndarray] = []
    for i in range(1, m0 + 1):
        lo = max(j_lo, i + 1)
        if lo > j_hi:
            continue
        js = np.arange(lo, j_hi + 1)
        js = js[(i + js) % 2 == 1]
        if js.size == 0:
            continue
        i_nm = spectrum.momentum_row(i, js)
        de = e[js - 1] - e[i - 1]
        w_j = np.where(js <= m0, weights[np.minimum(js, m0) - 1], 0.0)
        s = _PREF * i_nm**2 * (weights[i - 1] - w_j) / d_norm
        de_parts.append(de)
        num_parts.append(s)
    if not de_parts:
        return np.empty(0), np.empty(0)
    return np.concatenate(de_parts), np.concatenate(num_parts)


def build_tensor(state: FilmElectronicState, omega_P_mode: str = "sqrt",
                 gamma: float = 0.0, table_tol: float = 1e-13,
                 weight_tol: float = 1e-9) -> DielectricTensor:
    """Assemble the dielectric tensor of a film state.

    omega_P_mode selects how the in-plane plasma frequency follows the mean
    electron density n_avg of the normalization slab: "sqrt" uses
    Omega_P*sqrt(n_avg/n0) (the plasma-frequency definition), "linear" uses
    Omega_P*(n_avg/n0).  The two agree for models without spill-out.
    """
    if omega_P_mode not in ("sqrt", "linear"):
        raise ValueError(f"omega_P_mode must be 'sqrt' or 'linear', got {omega_P_mode!r}")
    if gamma < 0.0:
        raise ValueError(f"relaxation frequency must be >= 0, got {gamma}")

    spectrum = state.spectrum
    d_norm = state.d_box if state.d_box is not None else spectrum.D
    n0 = state.ion_density
    hw_omega2 = 8.0 * math.pi * E2_GAUSS * MU * n0      # (hbar Omega_P)^2
    ratio = state.n_avg / n0
    hw_p2 = hw_omega2 * (ratio if omega_P_mode == "sqrt" else ratio * ratio)

    weights = state.subband_weights
    if isinstance(spectrum.model, FiniteWell):
        de, num = _pair_block(spectrum, weights, 2, spectrum.n_levels, d_norm)
        osc_weight = float(np.sum(num / de)) if de.size else 0.0
    else:
        # unbounded ladder: extend partners until the static response and the
        # oscillator weight both converge
        j_hi = max(4 * state.m0, 64)
        spectrum = spectrum.extended(j_hi)
        de, num = _pair_block(spectrum, weights, 2, j_hi, d_norm)
        static = float(np.sum(num / de**3)) if de.size else 0.0
        osc_weight = float(np.sum(num / de)) if de.size else 0.0
        keep_de, keep_num = [de], [num]
        while True:
            j_lo, j_hi = j_hi + 1, 2 * j_hi
            if j_hi > _LEVEL_CAP:
                raise TensorBuildError(
                    f"intersubband sum not converged below {_LEVEL_CAP} levels "
                    f"(D={spectrum.D} nm, {state.m0} occupied subbands)")
            spectrum = spectrum.extended(j_hi)
            de_b, num_b = _pair_block(spectrum, weights, j_lo, j_hi, d_norm)
            static_b = float(np.sum(num_b / de_b**3))
            weight_b = float(np.sum(num_b / de_b))
            osc_weight += weight_b
            if static_b > table_tol * static:
                keep_de.append(de_b)
                keep_num.append(num_b)
                static += static_b
            if static_b <= table_tol * static and weight_b <= weight_tol * osc_weight:
                break
        de = np.concatenate(keep_de)
        num = np.concatenate(keep_num)

    with np.errstate(invalid="ignore"):
        s_over_de = num / de if de.size else num
    de.setflags(write=False)
    s_over_de.setflags(write=False)
    return DielectricTensor(
        state=state, gamma=float(gamma), hw_p2=hw_p2, d_norm=d_norm,
        de=de, strength_over_de=s_over_de, osc_weight=osc_weight,
    )


def _s_ev2(xi, gamma: float) -> np.ndarray:
    """hbar^2 xi (xi + gamma) in eV^2."""
    hx = HBAR_EVS * np.asarray(xi, dtype=float)
    return hx * (hx + HBAR_EVS * gamma)


def eps_xx(tensor: DielectricTensor, xi):
    """In-plane permittivity at imaginary frequency xi > 0 (rad/s)."""
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr <= 0.0):
        raise ValueError("eps_xx requires xi > 0 (it diverges at xi = 0)")
    out = 1.0 + tensor.hw_p2 / _s_ev2(xi_arr, tensor.gamma)
    return out if np.ndim(xi) else float(out)


def eps_zz(tensor: DielectricTensor, xi):
    """Out-of-plane permittivity at imaginary frequency xi >= 0 (rad/s)."""
    xi_flat = np.asarray(xi, dtype=float).ravel()
    if np.any(xi_flat < 0.0):
        raise ValueError("eps_zz requires xi >= 0")
    s = _s_ev2(xi_flat, tensor.gamma)
    de2 = tensor.de**2
    coef = tensor.strength_over_de
    out = np.ones_like(xi_flat)
    if de2.size:
        step = max(1, _CHUNK // de2.size)
        for a in range(0, xi_flat.size, step):
            block = s[a:a + step]
            out[a:a + step] += (coef / (de2[None, :] + block[:, None])).sum(axis=1)
    if np.ndim(xi) == 0:
        return float(out[0])
    return out.reshape(np.shape(xi))


def eps_isotropic_bulk(bulk: BulkReference, gamma: float, xi):
    """Bulk free-electron permittivity 1 + Omega_P^2/(xi(xi+gamma))."""
    if gamma < 0.0:
        raise ValueError(f"relaxation frequency must be >= 0, got {gamma}")
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr <= 0.0):
        raise ValueError("bulk permittivity requires xi > 0")
    out = 1.0 + (HBAR_EVS * bulk.Omega_P) ** 2 / _s_ev2(xi_arr, gamma)
    return out if np.ndim(xi) else float(out)


def write_eps_csv(fh: TextIO, tensor: DielectricTensor, xi_grid) -> None:
    """Tabulate both tensor components over a grid of imaginary frequencies."""
    xi_grid = np.asarray(xi_grid, dtype=float)
    exx = eps_xx(tensor, xi_grid)
    ezz = eps_zz(tensor, xi_grid)
    fh.write(f"# dielectric tensor, D={tensor.state.spectrum.D} nm, gamma={tensor.gamma!r} rad/s\n")
    fh.write("# columns: xi [rad/s], eps_xx, eps_zz\n")
    fh.write("xi_rad_s,eps_xx,eps_zz\n")
    for x, a, b in zip(xi_grid, exx, ezz):
        fh.write(f"{float(x)!r},{float(a)!r},{float(b)!r}\n")
