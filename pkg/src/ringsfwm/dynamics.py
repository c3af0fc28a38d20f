"""Signal/idler linear dynamics around the classical cw pump.

In the rotating frame the signal mode and the idler's conjugate evolve under
the constant 2x2 matrix

    M = [[-gamma_tot - i*chi,  -i*lambda*beta^2],
         [ i*lambda*conj(beta)^2,  -gamma_tot + i*chi]],    chi = zeta*N - Delta,

whose propagator exp(M*tau) has entries

    g_D(tau) = exp(-gamma_tot*tau) * (c(tau) - i*chi*s(tau))
    g_A(tau) = exp(-gamma_tot*tau) * (-i*lambda*beta^2) * s(tau)

written in terms of the squared coupling parameter

    rho_sq = lambda^2*N^2 - chi^2

and the regular pair c = cosh(rho*tau), s = sinh(rho*tau)/rho.  rho itself is
never materialized: for rho_sq < 0 the pair is (cos, sin/omega) and through
rho_sq = 0 it continues analytically with s(0, tau) = tau, so every formula
stays real and finite in all three regimes.  rho_sq -> gamma_tot^2 marks the
parametric-oscillation threshold, beyond which no steady state exists.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .params import RingParams

# Relative half-width of the rho_sq = 0 band used for regime classification.
ZERO_RHO_RTOL = 1e-12

# Below this value of |rho_sq|*tau^2 the cosh/sinh pair switches to its
# Taylor series (truncation error < 1e-24 relative).
_SERIES_CUT = 1e-6


class AboveThresholdError(RuntimeError):
    """Raised when a steady-state quantity is requested at or above the
    parametric-oscillation threshold rho_sq >= gamma_tot^2."""


class RhoRegime(Enum):
    IMAGINARY = "imaginary"
    ZERO = "zero"
    REAL = "real"


def rho_bar_sq(n_p: float, detuning: float, params: RingParams) -> float:
    """Signed squared coupling parameter lambda^2*N^2 - (zeta*N - Delta)^2.

    Positive values mean the gain-like (real-rho) regime, negative values the
    oscillatory (imaginary-rho) regime; the square root is never taken.
    """
    if n_p < 0.0:
        raise ValueError(f"n_p must be >= 0, got {n_p}")
    lam_n = params.lambda_fwm * n_p
    chi = params.zeta_xpm * n_p - detuning
    return lam_n * lam_n - chi * chi


def classify_rho(rho_sq: float, scale: float) -> RhoRegime:
    tol = ZERO_RHO_RTOL * scale
    if rho_sq > tol:
        return RhoRegime.REAL
    if rho_sq < -tol:
        return RhoRegime.IMAGINARY
    return RhoRegime.ZERO


@dataclass(frozen=True)
class DynParam:
    """One operating point (N, Delta) with its derived dynamical quantities."""

    n_p: float
    detuning: float
    params: RingParams
    rho_sq: float
    regime: RhoRegime

    @classmethod
    def for_operating_point(cls, n_p: float, detuning: float,
                            params: RingParams) -> "DynParam":
        rho_sq = rho_bar_sq(n_p, detuning, params)
        lam_n = params.lambda_fwm * n_p
        chi = params.zeta_xpm * n_p - detuning
        scale = lam_n * lam_n + chi * chi
        return cls(n_p=n_p, detuning=detuning, params=params,
                   rho_sq=rho_sq, regime=classify_rho(rho_sq, scale))

    @property
    def chi(self) -> float:
        """XPM-shifted detuning zeta*N - Delta [s^-1]."""
        return self.params.zeta_xpm * self.n_p - self.detuning

    @property
    def gamma_tot(self) -> float:
        return self.params.gamma_tot

    @property
    def above_threshold(self) -> bool:
        """True at or beyond the parametric-oscillation threshold."""
        return self.gamma_tot**2 - self.rho_sq <= 0.0

    @property
    def rho_mag(self) -> float:
        """|rho| = sqrt(|rho_sq|), the oscillation or gain rate [s^-1]."""
        return math.sqrt(abs(self.rho_sq))

    @property
    def pump_beta_sq(self) -> complex:
        """Squared steady-state pump amplitude beta^2 = N*exp(2i*phi).

        The phase follows from the steady pump equation with a real, positive
        drive amplitude: beta = -i*p / (gamma_tot + i*(2*eta*N - Delta)), so
        beta^2 = -N*(gamma_tot - i*q)^2 / (gamma_tot^2 + q^2) with
        q = 2*eta*N - Delta.  The phase cancels from every observable but is
        kept for propagator-level comparisons.
        """
        q = 2.0 * self.params.eta_spm * self.n_p - self.detuning
        gam = self.gamma_tot
        denom = gam * gam + q * q
        return -self.n_p * complex(gam, -q) ** 2 / denom


def hyp_pair(rho_sq: float, tau):
    """Regularized pair (c, s) with c = cosh(rho*tau), s = sinh(rho*tau)/rho.

    Valid for either sign of rho_sq: for rho_sq = -w^2 this is
    (cos(w*tau), sin(w*tau)/w), and the pair is analytic through rho_sq = 0
    where (c, s) = (1, tau).  ``tau`` may be a scalar or an array.
    """
    tau_arr = np.asarray(tau, dtype=float)
    x = rho_sq * tau_arr * tau_arr
    c = np.empty_like(tau_arr)
    s = np.empty_like(tau_arr)
    small = np.abs(x) < _SERIES_CUT
    if small.any():
        xs = x[small]
        c[small] = 1.0 + xs / 2.0 * (1.0 + xs / 12.0 * (1.0 + xs / 30.0))
        s[small] = tau_arr[small] * (1.0 + xs / 6.0 * (1.0 + xs / 20.0 * (1.0 + xs / 42.0)))
    big = ~small
    if big.any():
        tb = tau_arr[big]
        if rho_sq > 0.0:
            r = math.sqrt(rho_sq)
            c[big] = np.cosh(r * tb)
            s[big] = np.sinh(r * tb) / r
        else:
            w = math.sqrt(-rho_sq)
            c[big] = np.cos(w * tb)
            s[big] = np.sin(w * tb) / w
    if np.isscalar(tau) or np.ndim(tau) == 0:
        return float(c), float(s)
    return c, s


@dataclass(frozen=True)
class KernelEval:
    """Propagator entries at one delay: g_d couples like-to-like, g_a pairs."""

    g_d: complex
    g_a: complex
    tau: float


def green_kernels(dyn: DynParam, tau: float) -> KernelEval:
    """Propagator entries g_D(tau), g_A(tau) for tau >= 0.

    At tau = 0 this is the identity: g_D = 1, g_A = 0.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    c, s = hyp_pair(dyn.rho_sq, tau)
    damp = math.exp(-dyn.gamma_tot * tau)
    g_d = damp * complex(c, -dyn.chi * s)
    g_a = damp * (-1j * dyn.params.lambda_fwm * dyn.pump_beta_sq * s)
    return KernelEval(g_d=g_d, g_a=g_a, tau=tau)


def kernel_trace(dyn: DynParam, taus):
    """Vectorized (g_D, g_A) arrays over a grid of delays, for export."""
    taus = np.asarray(taus, dtype=float)
    if (taus < 0.0).any():
        raise ValueError("all delays must be >= 0")
    c, s = hyp_pair(dyn.rho_sq, taus)
    damp = np.exp(-dyn.gamma_tot * taus)
    g_d = damp * (c - 1j * dyn.chi * s)
    g_a = damp * (-1j * dyn.params.lambda_fwm * dyn.pump_beta_sq * s)
    return g_d, g_a


def response_qsi_magnitude_sq(dyn: DynParam, dtau):
    """|q_SI|^2, the squared signal-from-idler channel response at lag dtau.

    Equals (2*gamma_ext)^2 * lambda^2 * N^2 * exp(-2*gamma_tot*dtau) * s^2;
    its lag integral times (2*gamma_tot/gamma_ext) is the outgoing pair flux.
    """
    dtau_arr = np.asarray(dtau, dtype=float)
    if (dtau_arr < 0.0).any():
        raise ValueError("dtau must be >= 0")
    _, s = hyp_pair(dyn.rho_sq, dtau_arr)
    amp = (2.0 * dyn.params.gamma_ext * dyn.params.lambda_fwm * dyn.n_p) ** 2
    out = amp * np.exp(-2.0 * dyn.gamma_tot * dtau_arr) * s * s
    if np.isscalar(dtau) or np.ndim(dtau) == 0:
        return float(out)
    return out
