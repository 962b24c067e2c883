"""Shared helpers for the test suite: baseline scenario values and
finite-difference oracles kept independent of the library's own code paths."""

from __future__ import annotations

import numpy as np

from denguevax.model import (
    AdjointState,
    CostWeights,
    EpiState,
    ModelParams,
    hamiltonian,
)

# Baseline scenario: 480k hosts, one-year horizon, imperfect vaccine.
# mu_h is 1/(71*365); eta_h is 1/3.
BASELINE_PARAMS = ModelParams(
    n_h=480_000.0,
    bite_rate=0.5,
    beta_mh=0.3,
    beta_hm=0.3,
    mu_h=1.0 / 25_915.0,
    mu_m=0.1,
    mu_a=0.25,
    eta_a=0.08,
    eta_h=1.0 / 3.0,
    phi=6.0,
    k=3.0,
    sigma=0.15,
)

UNIT_WEIGHTS = CostWeights(gamma_i=1.0, gamma_v=1.0)

INFECTED_0 = 216.0


def baseline_initial_state(p: ModelParams = BASELINE_PARAMS, m: float = 3.0) -> EpiState:
    i_h0 = INFECTED_0 / p.n_h
    return EpiState(s_h=1.0 - i_h0, i_h=i_h0, r_h=0.0, a_m=p.k, s_m=m, i_m=0.0)


def random_state(rng: np.random.Generator, k: float = 3.0) -> EpiState:
    """A state with humans on the conservation manifold and mosquito
    compartments in plausible ranges."""
    i_h = rng.uniform(0.0, 1.0)
    r_h = rng.uniform(0.0, 1.0 - i_h)
    s_h = 1.0 - i_h - r_h
    return EpiState(
        s_h=s_h,
        i_h=i_h,
        r_h=r_h,
        a_m=rng.uniform(0.0, k),
        s_m=rng.uniform(0.0, 5.0),
        i_m=rng.uniform(0.0, 5.0),
    )


def random_adjoint(rng: np.random.Generator, scale: float = 2.0) -> AdjointState:
    return AdjointState(*rng.uniform(-scale, scale, size=6))


def fd_adjoint_rhs(
    p: ModelParams,
    w: CostWeights,
    x: EpiState,
    l: AdjointState,
    u: float,
    step: float = 1e-6,
) -> np.ndarray:
    """-dH/dx_i by central differences, one entry per state component."""
    base = np.asarray(x, dtype=float)
    out = np.empty(6)
    for i in range(6):
        plus = base.copy()
        minus = base.copy()
        plus[i] += step
        minus[i] -= step
        h_plus = hamiltonian(p, w, EpiState(*plus), l, u)
        h_minus = hamiltonian(p, w, EpiState(*minus), l, u)
        out[i] = -(h_plus - h_minus) / (2.0 * step)
    return out


def fd_hamiltonian_du(
    p: ModelParams,
    w: CostWeights,
    x: EpiState,
    l: AdjointState,
    u: float,
    step: float = 1e-6,
) -> float:
    """dH/du by central differences."""
    h_plus = hamiltonian(p, w, x, l, u + step)
    h_minus = hamiltonian(p, w, x, l, u - step)
    return (h_plus - h_minus) / (2.0 * step)
