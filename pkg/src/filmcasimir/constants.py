"""Physical constants and the internal unit system.

Everything inside the library is expressed in eV (energy), nm (length)
and rad/s (angular frequency).  SI values are taken from scipy.constants
(single CODATA source) and converted exactly once, here.
"""

import math

import scipy.constants as _sc

EV_J = _sc.e                    # J per eV (exact)
HBAR_JS = _sc.hbar              # J s (exact)
HBAR_EVS = HBAR_JS / EV_J       # eV s
C_M_S = _sc.c                   # m/s (exact)
C_NM_S = C_M_S * 1e9            # nm/s
M_E_KG = _sc.m_e                # kg
EPS0_F_M = _sc.epsilon_0        # F/m
BOHR_NM = _sc.physical_constants["Bohr radius"][0] * 1e9  # nm

# hbar^2 / (2 m_e) in eV nm^2; fixes the kinetic energy scale everywhere.
HBAR2_OVER_2ME = HBAR_JS**2 / (2.0 * M_E_KG * EV_J) * 1e18

# e^2 in Gaussian convention, i.e. e^2/(4 pi eps0), in eV nm.
E2_GAUSS = EV_J / (4.0 * math.pi * EPS0_F_M) * 1e9
