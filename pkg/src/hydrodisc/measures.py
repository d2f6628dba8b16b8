"""Spread and information measures of a state in position and momentum space.

For a normalized radial density in two dimensions the variance is
V = <x^2> - <x>^2 with moments taken against the radial measure x dx, and
the Fisher information of the theta-independent density reduces to
F = 4 Int (dW/dx)^2 x dx where W is the radial wavefunction.  The product
C = F * V is the Cramer-Rao complexity; it is bounded below by the squared
dimension over each space separately, and the cross products <x^2> F are
bounded below by d^2 as well.

Position-space integrals run on the same Gauss-Legendre wall grid the
variational solver used, so the reported norm residual doubles as a check
that the state object is self-consistent.  Momentum-space integrals combine
the panel quadrature stored in a RadialMomentumTable with its analytic
large-p tail corrections.

The free_*_report helpers evaluate the same measures for the analytic free
atom by direct quadrature.  They exist as oracles: the closed forms in
free_atom must agree with them, and the confined solver must approach them
as the wall recedes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .confined import ConfinedState
from .free_atom import StateLabel, free_radial_momentum_wf, free_radial_position_wf
from .momentum import AccuracyError, RadialMomentumTable
from .specfun import composite_gauss, semi_axis_rule

__all__ = [
    "NORM_TOLERANCE",
    "MeasureReport",
    "position_measures",
    "momentum_measures",
    "free_position_report",
    "free_momentum_report",
    "fisher_uncertainty_check",
]

NORM_TOLERANCE = 1e-4


@dataclass(frozen=True)
class MeasureReport:
    """Moments, variance, Fisher information, and complexity in one space."""

    space: str
    mean: float
    second_moment: float
    variance: float
    fisher: float
    cramer_rao: float
    norm_residual: float


def _build_report(
    space: str, mean: float, second: float, fisher: float, norm_residual: float
) -> MeasureReport:
    """Assemble a report, enforcing the identities the fields must satisfy."""
    if norm_residual > NORM_TOLERANCE:
        raise AccuracyError(
            f"{space} norm residual {norm_residual:.3e} exceeds {NORM_TOLERANCE:.0e}"
        )
    variance = second - mean * mean
    if not variance > 0.0:
        raise AccuracyError(f"{space} variance {variance:.3e} is not positive")
    return MeasureReport(
        space=space,
        mean=mean,
        second_moment=second,
        variance=variance,
        fisher=fisher,
        cramer_rao=fisher * variance,
        norm_residual=norm_residual,
    )


def position_measures(cs: ConfinedState) -> MeasureReport:
    """Measures of the position density of an optimized confined state.

    The Fisher integrand (rho')^2 / rho factorizes to 4 R'(r)^2 r, which
    stays finite across radial nodes.  The m >= 1 states use the same
    formula since the planar density carries no angular dependence.
    """
    grid = cs.grid()
    r = grid.nodes
    value, deriv = cs.radial(r)
    cell = grid.weights * value * value
    norm = float(np.sum(cell * r))
    mean = float(np.sum(cell * r * r))
    second = float(np.sum(cell * r**3))
    fisher = 4.0 * float(np.sum(grid.weights * deriv * deriv * r))
    return _build_report("position", mean, second, fisher, abs(norm - 1.0))


def momentum_measures(table: RadialMomentumTable) -> MeasureReport:
    """Measures of the momentum density, tail corrections included."""
    norm = table.moment(0)
    mean = table.moment(1)
    second = table.moment(2)
    fisher = 4.0 * float(
        np.sum(table.p_weights * table.dphi_dp**2 * table.p_grid)
    ) + table.tail_fisher()
    return _build_report("momentum", mean, second, fisher, abs(norm - 1.0))


def free_position_report(state: StateLabel, order: int = 16, levels: int = 14) -> MeasureReport:
    """Quadrature-based measures of the free atom's position density."""
    scale = 0.5 * (3.0 * state.eta**2 - state.big_l * (state.big_l + 1.0))
    r, w = semi_axis_rule(scale, order=order, levels=levels)
    value, deriv = free_radial_position_wf(state, r)
    cell = w * value * value
    norm = float(np.sum(cell * r))
    mean = float(np.sum(cell * r * r))
    second = float(np.sum(cell * r**3))
    fisher = 4.0 * float(np.sum(w * deriv * deriv * r))
    return _build_report("position", mean, second, fisher, abs(norm - 1.0))


def _compact_momentum_rule(
    state: StateLabel, order: int = 16, levels: int = 40
) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature on p in [0, inf) built in the compact variable of M(p).

    Substituting y = (1 - eta^2 p^2) / (1 + eta^2 p^2) maps the half line
    to [-1, 1], where the momentum wavefunction is polynomial up to
    endpoint powers.  Dyadic refinement toward both endpoints resolves the
    half-integer powers there; levels = 40 reaches p ~ 2^20 / eta, far past
    where any tabulated moment integrand carries mass.
    """
    steps = 0.5 ** np.arange(1, levels + 1)
    edges = np.concatenate(([-1.0], -1.0 + steps[::-1], 1.0 - steps, [1.0]))
    y, wy = composite_gauss(edges, order)
    eta = state.eta
    p = np.sqrt((1.0 - y) / (1.0 + y)) / eta
    jac = 1.0 / (eta * (1.0 + y) * np.sqrt(1.0 - y * y))
    return p, wy * jac


def free_momentum_report(state: StateLabel, order: int = 16, levels: int = 40) -> MeasureReport:
    """Quadrature-based measures of the free atom's momentum density."""
    p, w = _compact_momentum_rule(state, order=order, levels=levels)
    value, deriv = free_radial_momentum_wf(state, p)
    cell = w * value * value
    norm = float(np.sum(cell * p))
    mean = float(np.sum(cell * p * p))
    second = float(np.sum(cell * p**3))
    fisher = 4.0 * float(np.sum(w * deriv * deriv * p))
    return _build_report("momentum", mean, second, fisher, abs(norm - 1.0))


def fisher_uncertainty_check(
    pos: MeasureReport, mom: MeasureReport, state: StateLabel
) -> bool:
    """Whether the Fisher informations satisfy F_pos * F_mom >= 16.

    The product bound (2d)^2 holds for real wavefunctions, i.e. the m = 0
    states here.  For m != 0 the product can fall below 16 (the 2p state
    near the free limit reaches about 10.7), so callers should treat the
    result as informational for those states.
    """
    if pos.space != "position" or mom.space != "momentum":
        raise ValueError("expected one position report and one momentum report")
    bound = (2.0 * state.d) ** 2
    return bool(pos.fisher * mom.fisher >= bound)
