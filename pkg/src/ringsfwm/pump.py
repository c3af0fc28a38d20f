"""Steady-state intraring pump photon number, stability and bistability.

With a cw drive the steady-state pump photon number N is a non-negative root
of the cubic

    C(N) = 4*eta^2*N^3 - 4*eta*Delta*N^2 + (gamma_tot^2 + Delta^2)*N - |p|^2,

where Delta is the pump detuning and eta the effective SPM rate.  A root is a
stable equilibrium of the pump equation of motion iff the real parts of both
fluctuation eigenvalues

    f_pm = -gamma_tot +- sqrt(4*eta^2*N^2 - (4*eta*N - Delta)^2)

are negative.  Equivalently: every root is stable for |Delta| below the
critical detuning sqrt(3)*gamma_tot, while for supercritical detunings a root
is stable iff it lies outside the open interval (N_minus, N_plus) with

    N_pm = (Delta +- sqrt(Delta^2 - 3*gamma_tot^2)/2) / (3*eta).

Choosing the power-dependent detuning Delta = 2*eta*N cancels the SPM shift
and restores the linear relation N = |p|^2 / gamma_tot^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .params import PumpDrive, RingParams

# Two roots closer than this (relatively) are reported as a single tangency root.
TANGENCY_RTOL = 1e-8


class Stability(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


class Branch(Enum):
    LOWER = "lower"
    MIDDLE = "middle"
    UPPER = "upper"
    UNIQUE = "unique"


@dataclass(frozen=True)
class PumpSolution:
    """One steady-state root with its stability classification."""

    n_p: float
    stability: Stability
    branch: Branch
    drive: PumpDrive


@dataclass(frozen=True)
class StabilityWindow:
    """Unstable photon-number interval (n_minus, n_plus), when it exists.

    ``defined`` is False for subcritical detunings (and for eta = 0), in which
    case every root is stable.  The bounds are stored in ascending order, so
    the interval semantics hold for negative effective eta as well.
    """

    n_minus: float
    n_plus: float
    defined: bool


def critical_detuning(params: RingParams) -> float:
    """Detuning magnitude sqrt(3)*gamma_tot separating mono- and bistable regimes."""
    return math.sqrt(3.0) * params.gamma_tot


def cubic_coefficients(drive: PumpDrive, params: RingParams) -> tuple[float, float, float, float]:
    """Coefficients (a, b, c, d) of C(N) = a*N^3 + b*N^2 + c*N + d."""
    eta = params.eta_spm
    delta = drive.detuning
    gam = params.gamma_tot
    return (4.0 * eta * eta,
            -4.0 * eta * delta,
            gam * gam + delta * delta,
            -drive.p_amp_sq)


def cubic_eval(n_p: float, drive: PumpDrive, params: RingParams) -> float:
    """Steady-state residual C(n_p); zero at a steady state."""
    a, b, c, d = cubic_coefficients(drive, params)
    return ((a * n_p + b) * n_p + c) * n_p + d


def _cubic_real_roots(a: float, b: float, c: float, d: float) -> list[float]:
    """Real roots of a*x^3 + b*x^2 + c*x + d (a > 0), closed form.

    Trigonometric branch when three real roots exist (it degrades gracefully
    to double roots at tangency), Cardano branch otherwise.
    """
    shift = b / (3.0 * a)
    p = c / a - 3.0 * shift * shift
    q = 2.0 * shift**3 - (c / a) * shift + d / a
    roots: list[float]
    if p < 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        cos_arg = 3.0 * q / (p * m)
        if abs(cos_arg) <= 1.0:
            theta = math.acos(cos_arg) / 3.0
            roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
        else:
            roots = [_cardano_single(p, q)]
    else:
        roots = [_cardano_single(p, q)]
    return [r - shift for r in roots]


def _cardano_single(p: float, q: float) -> float:
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc >= 0.0:
        s = math.sqrt(disc)
        return _cbrt(-q / 2.0 + s) + _cbrt(-q / 2.0 - s)
    # Three-real-root region reached with a slightly negative disc: fall back
    # to the principal complex cube root, whose real part is a root.
    u = (-q / 2.0 + cmath.sqrt(complex(disc))) ** (1.0 / 3.0)
    return (u + (-p / 3.0) / u).real


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish_root(r: float, a: float, b: float, c: float, d: float) -> float:
    # Two Newton steps; skipped near fold points where C'(r) ~ 0.
    for _ in range(2):
        deriv = (3.0 * a * r + 2.0 * b) * r + c
        scale = 3.0 * a * r * r + abs(2.0 * b * r) + abs(c)
        if abs(deriv) <= 1e-8 * scale:
            break
        value = ((a * r + b) * r + c) * r + d
        r -= value / deriv
    return r


def stability_eigenvalues(n_p: float, drive: PumpDrive,
                          params: RingParams) -> tuple[complex, complex]:
    """Fluctuation eigenvalues f_pm around the steady state n_p.

    The root is stable iff Re(f_plus) < 0; Re(f_minus) < 0 always.
    """
    if n_p < 0.0:
        raise ValueError(f"n_p must be >= 0, got {n_p}")
    eta = params.eta_spm
    q = 4.0 * eta * n_p - drive.detuning
    radical = cmath.sqrt(complex(4.0 * eta * eta * n_p * n_p - q * q))
    gam = params.gamma_tot
    return (-gam + radical, -gam - radical)


def stability_window(drive: PumpDrive, params: RingParams) -> StabilityWindow:
    """Unstable interval (N_minus, N_plus) of the supercritical regime."""
    eta = params.eta_spm
    delta = drive.detuning
    crit = critical_detuning(params)
    if eta == 0.0 or abs(delta) < crit:
        return StabilityWindow(n_minus=math.nan, n_plus=math.nan, defined=False)
    half = 0.5 * math.sqrt(delta * delta - crit * crit)
    lo = (delta - half) / (3.0 * eta)
    hi = (delta + half) / (3.0 * eta)
    if lo > hi:  # negative effective eta flips the formula's ordering
        lo, hi = hi, lo
    return StabilityWindow(n_minus=lo, n_plus=hi, defined=True)


def classify_stability(n_p: float, drive: PumpDrive, params: RingParams) -> Stability:
    """Interval rule: stable iff subcritical detuning or n_p outside (N-, N+)."""
    window = stability_window(drive, params)
    if not window.defined:
        return Stability.STABLE
    if window.n_minus < n_p < window.n_plus:
        return Stability.UNSTABLE
    return Stability.STABLE


def solve_steady_state(drive: PumpDrive, params: RingParams) -> list[PumpSolution]:
    """All real non-negative steady-state roots, ascending, stability-classified.

    The closed-form roots are polished with two Newton steps each.  A double
    root at a fold is reported once, so the list has 1, 2 or 3 entries.
    When eta = 0 the cubic degenerates and the linear solution
    |p|^2 / (gamma_tot^2 + Delta^2) is returned directly.
    """
    a, b, c, d = cubic_coefficients(drive, params)
    if a == 0.0:
        roots = [drive.p_amp_sq / c]
    else:
        roots = sorted(_polish_root(r, a, b, c, d) for r in _cubic_real_roots(a, b, c, d))
        roots = [0.0 if -1e-12 * max(abs(r) for r in roots) <= r < 0.0 else r
                 for r in roots]
        roots = [r for r in roots if r >= 0.0]
        roots = _merge_tangent(roots)
    solutions = []
    branches = _branch_labels(len(roots))
    for r, branch in zip(roots, branches):
        solutions.append(PumpSolution(n_p=r,
                                      stability=classify_stability(r, drive, params),
                                      branch=branch,
                                      drive=drive))
    return solutions


def _merge_tangent(roots: list[float]) -> list[float]:
    merged: list[float] = []
    for r in roots:
        if merged and abs(r - merged[-1]) <= TANGENCY_RTOL * max(abs(r), abs(merged[-1])):
            merged[-1] = 0.5 * (merged[-1] + r)
        else:
            merged.append(r)
    return merged


def _branch_labels(count: int) -> list[Branch]:
    if count == 1:
        return [Branch.UNIQUE]
    if count == 2:
        return [Branch.LOWER, Branch.UPPER]
    return [Branch.LOWER, Branch.MIDDLE, Branch.UPPER]


def optimal_detuning(n_p: float, params: RingParams) -> float:
    """SPM-cancelling detuning 2*eta*n_p for a target photon number."""
    if n_p < 0.0:
        raise ValueError(f"n_p must be >= 0, got {n_p}")
    return 2.0 * params.eta_spm * n_p


def photon_number_at_optimal(p_amp_sq: float, params: RingParams) -> float:
    """Photon number |p|^2 / gamma_tot^2 reached under the optimal detuning."""
    return p_amp_sq / params.gamma_tot**2


@dataclass(frozen=True)
class HysteresisSweep:
    """Root sets over a power grid plus history-following up/down traces.

    ``trace_up``/``trace_down`` follow the nearest stable root to the
    previously occupied one, jumping branches only when the occupied branch
    disappears at a fold; which stable branch a real device occupies inside
    the bistable window is history-dependent, and this convention is recorded
    here rather than asserted as physics.
    """

    p_in: tuple[float, ...]
    solutions: tuple[tuple[PumpSolution, ...], ...]
    trace_up: tuple[float, ...]
    trace_down: tuple[float, ...]
    convention: str = "history-following; jump to nearest stable root at folds"


def hysteresis_sweep(p_in_grid, detuning: float, params: RingParams) -> HysteresisSweep:
    """Solve the steady state over an ascending power grid, with hysteresis traces."""
    powers = [float(p) for p in p_in_grid]
    if not powers:
        raise ValueError("power grid must be non-empty")
    if any(b <= a for a, b in zip(powers, powers[1:])):
        raise ValueError("power grid must be strictly ascending")
    all_solutions = []
    for p_in in powers:
        drive = PumpDrive.from_power(p_in, detuning, params)
        all_solutions.append(tuple(solve_steady_state(drive, params)))
    up = _follow_trace(all_solutions, start_high=False)
    down = _follow_trace(all_solutions[::-1], start_high=True)[::-1]
    return HysteresisSweep(p_in=tuple(powers),
                           solutions=tuple(all_solutions),
                           trace_up=tuple(up),
                           trace_down=tuple(down))


def _follow_trace(solution_sets, start_high: bool) -> list[float]:
    trace: list[float] = []
    current: float | None = None
    for solutions in solution_sets:
        stable = [s.n_p for s in solutions if s.stability is Stability.STABLE]
        if not stable:  # all roots unstable; track the closest root anyway
            stable = [s.n_p for s in solutions]
        if current is None:
            current = stable[-1] if start_high else stable[0]
        else:
            previous = current
            current = min(stable, key=lambda n: abs(n - previous))
        trace.append(current)
    return trace
