"""Host-vector transmission model with vaccination control.

Humans are split into susceptible/infected/recovered classes and mosquitoes
into aquatic/susceptible/infected classes (SIR+ASI).  The control u(t) is the
vaccination coverage rate of susceptibles, bounded to [0, 1]; a vaccine
inefficacy factor sigma leaks vaccinated individuals back to susceptibility.

All compartments are stored as proportions of the (constant) host population
N_h, so the human classes satisfy s_h + i_h + r_h = 1 and the mosquito
classes are mosquito-per-host ratios.  Rates are per day.

Everything in this module is a pure function of its arguments: the state
dynamics, the running cost, the Hamiltonian of the control problem, the
co-state (adjoint) dynamics, and the pointwise control characterization that
minimizes the Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import NamedTuple


class EpiState(NamedTuple):
    """Compartment values as proportions of the host population.

    ``s_h + i_h + r_h = 1`` holds along trajectories started on that
    manifold; mosquito compartments are not normalized to sum to anything.
    """

    s_h: float
    i_h: float
    r_h: float
    a_m: float
    s_m: float
    i_m: float


class AdjointState(NamedTuple):
    """Co-state values, ordered to match :class:`EpiState` components."""

    l1: float
    l2: float
    l3: float
    l4: float
    l5: float
    l6: float


@dataclass(frozen=True)
class ModelParams:
    """Epidemiological and entomological rate constants.

    Attributes:
        n_h: Host population size (persons).
        bite_rate: Average daily bites per mosquito (1/day).
        beta_mh: Transmission probability mosquito to human, per bite.
        beta_hm: Transmission probability human to mosquito, per bite.
        mu_h: Human mortality rate (1/day).
        mu_m: Adult mosquito mortality rate (1/day).
        mu_a: Aquatic-phase mortality rate (1/day).
        eta_h: Human recovery rate (1/day).
        eta_a: Larvae-to-adult maturation rate (1/day).
        phi: Eggs per deposit per capita (1/day).
        k: Aquatic carrying capacity per host (dimensionless multiplier).
        sigma: Vaccine inefficacy in [0, 1]; 0 is a perfect vaccine, 1 a
            useless one.
    """

    n_h: float
    bite_rate: float
    beta_mh: float
    beta_hm: float
    mu_h: float
    mu_m: float
    mu_a: float
    eta_h: float
    eta_a: float
    phi: float
    k: float
    sigma: float

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)):
                raise ValueError(f"{f.name} must be a number, got {value!r}")
            if value < 0:
                raise ValueError(f"{f.name} must be >= 0, got {value}")
        if self.n_h <= 0:
            raise ValueError(f"n_h must be > 0, got {self.n_h}")
        if self.k <= 0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in [0, 1], got {self.sigma}")


@dataclass(frozen=True)
class CostWeights:
    """Weights of the two running-cost terms.

    gamma_i multiplies the squared infected proportion (infection burden),
    gamma_v the squared control (vaccination effort).  gamma_v must be
    strictly positive because the control characterization divides by it.
    """

    gamma_i: float
    gamma_v: float

    def __post_init__(self) -> None:
        if self.gamma_i < 0:
            raise ValueError(f"gamma_i must be >= 0, got {self.gamma_i}")
        if self.gamma_v <= 0:
            raise ValueError(f"gamma_v must be > 0, got {self.gamma_v}")


def state_rhs(p: ModelParams, x: EpiState, u: float) -> EpiState:
    """Time derivatives of the six compartments under control value u.

    Args:
        p: Model rate constants.
        x: Current state (proportions of N_h).
        u: Vaccination coverage rate in [0, 1].

    Returns:
        Componentwise d/dt of the state, per day.  The three human
        components sum to zero whenever s_h + i_h + r_h = 1.
    """
    s_h, i_h, r_h, a_m, s_m, i_m = x

    foi_h = p.bite_rate * p.beta_mh * i_m   # force of infection on humans
    foi_m = p.bite_rate * p.beta_hm * i_h   # force of infection on mosquitoes

    d_s_h = p.mu_h - (foi_h + p.mu_h + u) * s_h + p.sigma * u * r_h
    d_i_h = foi_h * s_h - (p.eta_h + p.mu_h) * i_h
    d_r_h = p.eta_h * i_h + u * s_h - (p.sigma * u + p.mu_h) * r_h
    d_a_m = p.phi * (1.0 - a_m / p.k) * (s_m + i_m) - (p.eta_a + p.mu_a) * a_m
    d_s_m = p.eta_a * a_m - (foi_m + p.mu_m) * s_m
    d_i_m = foi_m * s_m - p.mu_m * i_m

    return EpiState(d_s_h, d_i_h, d_r_h, d_a_m, d_s_m, d_i_m)


def cost_integrand(w: CostWeights, x: EpiState, u: float) -> float:
    """Running cost rate: gamma_i * i_h**2 + gamma_v * u**2 (per day)."""
    return w.gamma_i * x.i_h * x.i_h + w.gamma_v * u * u


def hamiltonian(
    p: ModelParams,
    w: CostWeights,
    x: EpiState,
    l: AdjointState,
    u: float,
) -> float:
    """Control Hamiltonian: co-states dotted with the dynamics plus the
    running cost.

    By construction this satisfies the decomposition
    ``hamiltonian = dot(l, state_rhs) + cost_integrand`` exactly.
    """
    f = state_rhs(p, x, u)
    return (
        l.l1 * f.s_h
        + l.l2 * f.i_h
        + l.l3 * f.r_h
        + l.l4 * f.a_m
        + l.l5 * f.s_m
        + l.l6 * f.i_m
        + cost_integrand(w, x, u)
    )


def adjoint_rhs(
    p: ModelParams,
    w: CostWeights,
    x: EpiState,
    l: AdjointState,
    u: float,
) -> AdjointState:
    """Co-state dynamics dl_i/dt = -dH/dx_i, per day.

    The zero co-state is an equilibrium when gamma_i = 0; otherwise the
    infected-human component sources -2*gamma_i*i_h into l2.
    """
    s_h, i_h, r_h, a_m, s_m, i_m = x
    l1, l2, l3, l4, l5, l6 = l

    foi_h = p.bite_rate * p.beta_mh * i_m
    foi_m = p.bite_rate * p.beta_hm * i_h
    hatch = p.phi * (1.0 - a_m / p.k)

    d_l1 = (l1 - l2) * foi_h + l1 * p.mu_h + (l1 - l3) * u
    d_l2 = (
        -2.0 * w.gamma_i * i_h
        + l2 * (p.eta_h + p.mu_h)
        - l3 * p.eta_h
        + (l5 - l6) * p.bite_rate * p.beta_hm * s_m
    )
    d_l3 = -l1 * p.sigma * u + l3 * (p.mu_h + p.sigma * u)
    d_l4 = l4 * p.phi * (s_m + i_m) / p.k + l4 * (p.eta_a + p.mu_a) - l5 * p.eta_a
    d_l5 = -l4 * hatch + (l5 - l6) * foi_m + l5 * p.mu_m
    d_l6 = (l1 - l2) * p.bite_rate * p.beta_mh * s_h - l4 * hatch + l6 * p.mu_m

    return AdjointState(d_l1, d_l2, d_l3, d_l4, d_l5, d_l6)


def stationary_control(p: ModelParams, w: CostWeights, x: EpiState, l: AdjointState) -> float:
    """Unclipped root of dH/du = 0: (l1 - l3)(s_h - sigma*r_h) / (2*gamma_v)."""
    return (l.l1 - l.l3) * (x.s_h - p.sigma * x.r_h) / (2.0 * w.gamma_v)


def optimal_control(p: ModelParams, w: CostWeights, x: EpiState, l: AdjointState) -> float:
    """Pointwise minimizer of the Hamiltonian over u in [0, 1].

    The stationary value (l1 - l3)(s_h - sigma*r_h) / (2*gamma_v) is clipped
    to the admissible interval.  Because the Hamiltonian is a convex
    quadratic in u, the clipped stationary point is the exact minimizer.
    """
    raw = stationary_control(p, w, x, l)
    if raw <= 0.0:
        return 0.0
    if raw >= 1.0:
        return 1.0
    return raw
