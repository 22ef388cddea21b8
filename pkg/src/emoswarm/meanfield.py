"""Deterministic reference integrator for the reduced recruitment /
cross-inhibition population model:

    dphi_A/dt = r * phi_A * u - sigma * phi_A * phi_B
    dphi_B/dt = r * phi_B * u - sigma * phi_A * phi_B

with u = 1 - phi_A - phi_B. Used to validate the qualitative behavior of
the agent-based engine; the two time axes are distinct and no quantitative
correspondence is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntegrationUnstableError(RuntimeError):
    """The state left the population simplex by more than the tolerance;
    the step size is too large."""


@dataclass(frozen=True)
class MeanFieldState:
    """Committed fractions (phi_a, phi_b); the uncommitted fraction is the
    complement."""

    phi_a: float
    phi_b: float

    @property
    def u(self) -> float:
        return 1.0 - (self.phi_a + self.phi_b)


@dataclass(frozen=True)
class MeanFieldParams:
    r: float = 0.02
    sigma: float = 0.02

    def __post_init__(self):
        if self.r < 0.0 or self.sigma < 0.0:
            raise ValueError("rates must be >= 0")


def bee_rhs(state: MeanFieldState, params: MeanFieldParams) -> tuple[float, float]:
    """Time derivatives (dphi_A/dt, dphi_B/dt) at `state`."""
    return _rhs(state.phi_a, state.phi_b, params.r, params.sigma)


def _rhs(pa: float, pb: float, r: float, sigma: float) -> tuple[float, float]:
    # the shared inhibition term is computed once and both components use
    # the same expression shape, so exchanging phi_a and phi_b exchanges
    # the derivatives exactly (bit for bit)
    u = 1.0 - (pa + pb)
    inhibition = sigma * (pa * pb)
    da = r * pa * u - inhibition
    db = r * pb * u - inhibition
    return da, db


# Leaving the simplex by less than this is treated as roundoff and clipped.
_CLIP_TOL = 1e-9
# Beyond this the integration is declared unstable.
_FAIL_TOL = 1e-6


def integrate(
    initial: MeanFieldState,
    params: MeanFieldParams,
    dt: float = 0.1,
    n_steps: int = 1,
) -> list[MeanFieldState]:
    """Fixed-step classical 4th-order Runge-Kutta integration.

    Returns n_steps + 1 states, the initial one included. Tiny negative
    excursions (within 1e-9) are clipped to zero; leaving the simplex by
    more than 1e-6 raises IntegrationUnstableError.
    """
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    r, sigma = params.r, params.sigma
    pa, pb = initial.phi_a, initial.phi_b
    out = [initial]
    for _ in range(n_steps):
        k1a, k1b = _rhs(pa, pb, r, sigma)
        k2a, k2b = _rhs(pa + 0.5 * dt * k1a, pb + 0.5 * dt * k1b, r, sigma)
        k3a, k3b = _rhs(pa + 0.5 * dt * k2a, pb + 0.5 * dt * k2b, r, sigma)
        k4a, k4b = _rhs(pa + dt * k3a, pb + dt * k3b, r, sigma)
        pa = pa + (dt / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        pb = pb + (dt / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        pa, pb = _project(pa, pb)
        out.append(MeanFieldState(pa, pb))
    return out


def _project(pa: float, pb: float) -> tuple[float, float]:
    """Clip roundoff-level simplex violations; fail on real ones."""
    if pa < -_FAIL_TOL or pb < -_FAIL_TOL or (pa + pb) - 1.0 > _FAIL_TOL:
        raise IntegrationUnstableError(
            f"state ({pa}, {pb}) left the simplex; reduce dt"
        )
    if pa < 0.0:
        pa = 0.0
    if pb < 0.0:
        pb = 0.0
    s = pa + pb
    if s > 1.0:
        pa /= s
        pb /= s
    return pa, pb


def symmetric_equilibrium(params: MeanFieldParams) -> MeanFieldState:
    """The interior symmetric fixed point phi_A = phi_B = r / (2r + sigma).

    At that point recruitment from the uncommitted pool exactly balances
    cross-inhibition. Requires r > 0.
    """
    if params.r <= 0.0:
        raise ValueError("no interior equilibrium when r = 0")
    phi = params.r / (2.0 * params.r + params.sigma)
    return MeanFieldState(phi, phi)


def trajectory_rows(states: list[MeanFieldState], dt: float) -> list[tuple[float, float, float, float]]:
    """(t, phi_A, phi_B, u) rows for CSV emission."""
    return [(i * dt, s.phi_a, s.phi_b, s.u) for i, s in enumerate(states)]
