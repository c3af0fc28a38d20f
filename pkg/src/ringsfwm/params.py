"""Physical parameters of the ring-channel system.

All rates, linewidths and detunings are angular frequencies in s^-1, so a
"1 GHz" total linewidth is entered as 1e9.  The nonlinear coupling rates obey
the fixed Kerr relations

    eta = lambda_fwm / 2      (self-phase modulation of the pump)
    zeta = 2 * lambda_fwm     (cross-phase modulation pump <-> signal/idler)

up to optional additive thermal offsets, which model the slow power-dependent
drift of the ring resonances and may drive the effective rates negative.

The four-wave-mixing rate itself can be estimated from material data through
the uniform-field mode-volume formula

    lambda_fwm = hbar * omega_p^2 * c * n2 / (n^2 * L * A),

with n2 the nonlinear refractive index, n the linear index, L the ring
circumference and A the transverse mode area (mode volume V = L * A).
"""

from __future__ import annotations

from dataclasses import dataclass

# Reduced Planck constant [J s] and vacuum speed of light [m/s].
HBAR = 1.054571817e-34
C_VACUUM = 299792458.0


@dataclass(frozen=True)
class MaterialGeometry:
    """Material and geometry inputs for the nonlinear-rate estimate.

    Parameters
    ----------
    n_linear : float
        Linear refractive index of the ring core (dimensionless).
    n2 : float
        Nonlinear refractive index [m^2/W].
    ring_length : float
        Ring circumference L [m].
    cross_section : float
        Transverse mode area A [m^2].
    """

    n_linear: float
    n2: float
    ring_length: float
    cross_section: float

    def __post_init__(self) -> None:
        for name in ("n_linear", "n2", "ring_length", "cross_section"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value}")


def estimate_lambda(mat: MaterialGeometry, omega_p: float) -> float:
    """Four-wave-mixing rate lambda_fwm = hbar*omega_p^2*c*n2 / (n^2*L*A) [s^-1].

    Silicon nitride rings at 1550 nm land around 10 s^-1, silicon rings
    around 10^3 s^-1.
    """
    if not omega_p > 0.0:
        raise ValueError(f"omega_p must be strictly positive, got {omega_p}")
    volume = mat.ring_length * mat.cross_section
    return HBAR * omega_p**2 * C_VACUUM * mat.n2 / (mat.n_linear**2 * volume)


def spm_xpm_rates(lambda_fwm: float) -> tuple[float, float]:
    """Derived (eta, zeta) = (lambda/2, 2*lambda) for a Kerr medium."""
    return lambda_fwm / 2.0, 2.0 * lambda_fwm


@dataclass(frozen=True)
class RingParams:
    """Damping and nonlinear rates of the three ring resonances.

    The signal, idler and pump resonances are assumed to share the same
    channel coupling and loss rates; per-mode asymmetry is not representable.

    Parameters
    ----------
    gamma_ext : float
        Damping rate into the physical channel [s^-1].
    gamma_loss : float
        Damping rate into the scattering-loss (phantom) channel [s^-1].
    lambda_fwm : float
        Four-wave-mixing rate [s^-1]; must be > 0.
    omega_p : float
        Pump resonance angular frequency [rad/s].
    eta_thermal, zeta_thermal : float
        Additive thermal offsets to the SPM/XPM rates [s^-1], default 0.
        Typically negative; the effective rates may change sign.
    """

    gamma_ext: float
    gamma_loss: float
    lambda_fwm: float
    omega_p: float
    eta_thermal: float = 0.0
    zeta_thermal: float = 0.0

    def __post_init__(self) -> None:
        if self.gamma_ext < 0.0:
            raise ValueError(f"gamma_ext must be >= 0, got {self.gamma_ext}")
        if self.gamma_loss < 0.0:
            raise ValueError(f"gamma_loss must be >= 0, got {self.gamma_loss}")
        if not self.gamma_ext + self.gamma_loss > 0.0:
            raise ValueError("total linewidth gamma_ext + gamma_loss must be > 0")
        if not self.lambda_fwm > 0.0:
            raise ValueError(f"lambda_fwm must be > 0, got {self.lambda_fwm}")
        if not self.omega_p > 0.0:
            raise ValueError(f"omega_p must be > 0, got {self.omega_p}")

    @property
    def gamma_tot(self) -> float:
        """Total effective linewidth [s^-1]."""
        return self.gamma_ext + self.gamma_loss

    @property
    def eta_spm(self) -> float:
        """Effective SPM rate lambda/2 + eta_thermal [s^-1]."""
        return self.lambda_fwm / 2.0 + self.eta_thermal

    @property
    def zeta_xpm(self) -> float:
        """Effective XPM rate 2*lambda + zeta_thermal [s^-1]."""
        return 2.0 * self.lambda_fwm + self.zeta_thermal


def quality_factor(params: RingParams) -> float:
    """Loaded quality factor Q = omega_p / gamma_tot of the pump resonance."""
    # gamma_tot > 0 is enforced at construction; guard anyway for clarity.
    if not params.gamma_tot > 0.0:
        raise ValueError("quality factor undefined for gamma_tot = 0")
    return params.omega_p / params.gamma_tot


def p_amp_sq_from_power(p_in: float, params: RingParams) -> float:
    """Squared drive amplitude |p|^2 = 2*gamma_ext*P_in/(hbar*omega_p).

    P_in is the cw pump power in the channel [W]; |p|^2 has units of
    photons/s^2 and is the constant source term of the intraring pump
    equation of motion.
    """
    if p_in < 0.0:
        raise ValueError(f"input power must be >= 0, got {p_in}")
    return 2.0 * params.gamma_ext * p_in / (HBAR * params.omega_p)


def power_from_p_amp_sq(p_amp_sq: float, params: RingParams) -> float:
    """Inverse of :func:`p_amp_sq_from_power`."""
    if p_amp_sq < 0.0:
        raise ValueError(f"|p|^2 must be >= 0, got {p_amp_sq}")
    if params.gamma_ext == 0.0:
        raise ValueError("cannot infer channel power with gamma_ext = 0")
    return p_amp_sq * HBAR * params.omega_p / (2.0 * params.gamma_ext)


@dataclass(frozen=True)
class PumpDrive:
    """A cw pump drive: channel power, detuning and derived |p|^2.

    Use :meth:`from_power` (or :meth:`from_p_amp_sq`) so the invariant
    p_amp_sq = 2*gamma_ext*p_in/(hbar*omega_p) holds by construction.
    """

    p_in: float       # channel input power [W]
    detuning: float   # pump detuning from the ring resonance [rad/s]
    p_amp_sq: float   # |p|^2 [photons/s^2]

    @classmethod
    def from_power(cls, p_in: float, detuning: float, params: RingParams) -> "PumpDrive":
        return cls(p_in=p_in, detuning=detuning,
                   p_amp_sq=p_amp_sq_from_power(p_in, params))

    @classmethod
    def from_p_amp_sq(cls, p_amp_sq: float, detuning: float, params: RingParams) -> "PumpDrive":
        return cls(p_in=power_from_p_amp_sq(p_amp_sq, params), detuning=detuning,
                   p_amp_sq=p_amp_sq)
