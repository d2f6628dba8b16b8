"""Variational solver for the 2D hydrogen atom confined in a hard circular wall.

The trial state for a nodeless level (n = |m| + 1) is the free hydrogenic
radial shape with its inverse length scale alpha left free, times the linear
cut-off enforcing the impenetrable wall:

    R(r; alpha) = N' e^(-alpha r) r^|m| (1 + c_2 r^2) (1 - r/r0).

The c_2 r^2 curvature term, chosen for each alpha by a two-function
Rayleigh-Ritz solve, undoes the tilt the linear cut-off imprints on the
density bulk; without it the extended 3d state misses its free-atom
variance by about 3 percent even at r0 = 40 (a linear correction term
would not help, being equivalent to a shift of alpha to first order).

Levels with k = n - |m| - 1 radial nodes carry a degree-(k+1) polynomial,

    R(r; alpha) = N' e^(-alpha r) r^|m| (1 + c_1 r + ... + c_{k+1} r^{k+1}) (1 - r/r0),

whose coefficients come, for each alpha, from a Rayleigh-Ritz solve over
the span of the bare trial and its monomial companions, taking eigenvalue
number k + 1.  Minimizing a plain Rayleigh quotient over a family with a
free node would collapse onto the nodeless branch (for the 2s in a small
cavity that minimum sits at the 1s energy, far below the true 2s level),
and orthogonalizing against an approximate lower state can dip below the
exact level by the square of that state's error; the Ritz eigenvalue of
matching index instead stays a strict upper bound for its own level by the
Hylleraas-Undheim/MacDonald theorem.  At alpha = 1/eta (eta = n - 1/2)
and r0 -> inf the polynomial reproduces the Laguerre factor of the exact
state, so the free limit is reached exactly.

E(alpha) is the Rayleigh quotient of the radial Hamiltonian
(-1/2)(1/r)(d/dr)(r d/dr) + m^2/(2r^2) - 1/r evaluated by Gauss-Legendre
quadrature in weak form (no second derivatives), minimized by bounded
Brent search with automatic bracket growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import minimize_scalar

from .free_atom import StateLabel
from .specfun import gauss_legendre

__all__ = [
    "ConvergenceError",
    "RadialGrid",
    "ConfinedState",
    "trial_radial_wf",
    "node_coefficients",
    "energy_functional",
    "solve",
    "coulomb_expectation",
    "reference_energies",
    "MIN_WALL_RADIUS",
]

MIN_WALL_RADIUS = 0.05
_ALPHA_FLOOR = 1e-6


class ConvergenceError(RuntimeError):
    """Raised when the variational bracket or minimizer fails to settle."""


@dataclass(frozen=True)
class RadialGrid:
    """Gauss-Legendre quadrature grid on [0, r0]."""

    r0: float
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    @classmethod
    def for_wall(cls, r0: float, order: int = 200) -> "RadialGrid":
        r, w = gauss_legendre(order).mapped(0.0, r0)
        return cls(r0=r0, nodes=r, weights=w, order=order)


def trial_radial_wf(
    state: StateLabel,
    r0: float,
    alpha: float,
    r,
    node_coeffs: tuple[float, ...] = (),
) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized trial R(r; alpha) and its radial derivative.

    node_coeffs are the polynomial coefficients (c_1 .. c_k) determined by
    the solver: states with radial nodes require at least n_r of them to
    place their nodes, and nodeless trials carry (0, c_2) with a single
    curvature-correction term (see node_coefficients).
    """
    if state.d != 2:
        raise ValueError("the confined solver covers the 2D problem only")
    if len(node_coeffs) < state.n_r:
        raise ValueError(
            f"{state.label} needs at least {state.n_r} node coefficients, "
            f"got {len(node_coeffs)}"
        )
    m = state.l
    r = np.asarray(r, dtype=float)
    poly = np.ones_like(r)
    dpoly = np.zeros_like(r)
    for j, c in enumerate(node_coeffs, start=1):
        poly += c * r**j
        dpoly += j * c * r ** (j - 1)
    cut = 1.0 - r / r0
    envelope = np.exp(-alpha * r)
    power = r**m
    dpower = m * r ** (m - 1) if m >= 1 else np.zeros_like(r)
    base = power * poly
    dbase = dpower * poly + power * dpoly
    value = envelope * base * cut
    deriv = envelope * ((dbase - alpha * base) * cut - base / r0)
    return value, deriv


def _ritz_powers(n_r: int) -> tuple[int, ...]:
    """Monomial companions spanning the trial space for n_r radial nodes.

    Nodeless states skip the linear term: to first order it duplicates a
    shift of alpha, and keeping it turns E(alpha) into a flat valley that
    leaves the optimizer nothing to hold on to.  Noded states need every
    power up to n_r to place their nodes, plus one curvature term.
    """
    if n_r == 0:
        return (0, 2)
    return tuple(range(n_r + 2))


def node_coefficients(
    state: StateLabel, r0: float, alpha: float, grid: RadialGrid
) -> tuple[float, ...]:
    """Polynomial coefficients of the trial at fixed alpha.

    Rayleigh-Ritz in the span of the bare trial and its monomial companions
    r^j * R_bare: the generalized eigenproblem is solved with the weak-form
    matrix elements and the eigenvector of level n_r is taken, so states
    with radial nodes ride the (n_r+1)-th eigenvalue.  By the
    Hylleraas-Undheim/MacDonald theorem that eigenvalue lies above the
    exact level with the same node count, which keeps the upper-bound
    property that orthogonalizing against an approximate lower state would
    forfeit.  For nodeless states the companion is a single curvature term
    c_2 r^2; without it the linear cutoff tilts the density of spatially
    extended states (3d most of all) even at weak confinement.
    """
    r, w = grid.nodes, grid.weights
    powers = _ritz_powers(state.n_r)
    v0, d0 = trial_radial_wf(state, r0, alpha, r, (0.0,) * state.n_r)
    values = []
    derivs = []
    for j in powers:
        if j == 0:
            values.append(v0)
            derivs.append(d0)
        else:
            values.append(v0 * r**j)
            derivs.append(d0 * r**j + v0 * j * r ** (j - 1))
    scale = [1.0 / math.sqrt(np.sum(w * v * v * r)) for v in values]
    ell_sq = float(state.l * state.l)
    dim = len(powers)
    s_mat = np.empty((dim, dim))
    h_mat = np.empty((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            vi, vj = values[i] * scale[i], values[j] * scale[j]
            di, dj = derivs[i] * scale[i], derivs[j] * scale[j]
            s_mat[i, j] = s_mat[j, i] = np.sum(w * vi * vj * r)
            cross = np.sum(w * vi * vj * (0.5 * ell_sq / r - 1.0))
            h_mat[i, j] = h_mat[j, i] = 0.5 * np.sum(w * di * dj * r) + cross
    _, vecs = eigh(h_mat, s_mat)
    u = vecs[:, state.n_r]
    if abs(u[0]) < 1e-12 * np.linalg.norm(u):
        raise ConvergenceError(
            f"companion terms dominate the {state.label} trial at r0={r0}"
        )
    coeffs = [0.0] * max(powers)
    for idx in range(1, dim):
        c = (u[idx] * scale[idx]) / (u[0] * scale[0])
        coeffs[powers[idx] - 1] = float(c)
    return tuple(coeffs)


def energy_functional(
    state: StateLabel,
    r0: float,
    alpha: float,
    grid: RadialGrid | None = None,
    node_coeffs: tuple[float, ...] = (),
) -> float:
    """Rayleigh quotient E(alpha) of the trial state inside the wall."""
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if grid is None:
        grid = RadialGrid.for_wall(r0)
    r, w = grid.nodes, grid.weights
    f, df = trial_radial_wf(state, r0, alpha, r, node_coeffs)
    norm = np.sum(w * f * f * r)
    kinetic = 0.5 * np.sum(w * df * df * r)
    if state.l > 0:
        kinetic += 0.5 * state.l**2 * np.sum(w * f * f / r)
    potential = -np.sum(w * f * f)  # -1/r against the r weight
    return float((kinetic + potential) / norm)


@dataclass(frozen=True)
class ConfinedState:
    """Optimized variational state inside a wall of radius r0."""

    state: StateLabel
    r0: float
    alpha: float
    energy: float
    norm_constant: float
    quadrature_order: int
    node_coeffs: tuple[float, ...] = ()

    def radial(self, r) -> tuple[np.ndarray, np.ndarray]:
        """Normalized radial wavefunction and derivative, Int R^2 r dr = 1."""
        value, deriv = trial_radial_wf(self.state, self.r0, self.alpha, r, self.node_coeffs)
        return self.norm_constant * value, self.norm_constant * deriv

    def grid(self) -> RadialGrid:
        return RadialGrid.for_wall(self.r0, self.quadrature_order)

    def wall_slope(self) -> float:
        """dR/dr at the wall, the coefficient driving the momentum tail."""
        _, deriv = self.radial(np.asarray([self.r0]))
        return float(deriv[0])


def solve(
    state: StateLabel,
    r0: float,
    order: int = 200,
    xatol: float = 1e-10,
    max_expansions: int = 24,
) -> ConfinedState:
    """Minimize E(alpha) for one state and wall radius.

    The outer search is one-dimensional in alpha; at each alpha the node
    and curvature coefficients come from the Ritz solve, and states with
    radial nodes ride the matching higher eigenvalue.
    """
    if r0 < MIN_WALL_RADIUS:
        raise ValueError(f"wall radius below supported minimum {MIN_WALL_RADIUS}: {r0}")
    grid = RadialGrid.for_wall(r0, order)

    def coeffs_at(alpha: float) -> tuple[float, ...]:
        return node_coefficients(state, r0, alpha, grid)

    def energy_at(alpha: float) -> float:
        return energy_functional(state, r0, alpha, grid, coeffs_at(alpha))

    eta = state.eta
    lo, hi = 0.2 / eta, 5.0 / eta
    hi_cap = 600.0 / r0
    best = None
    for _ in range(max_expansions):
        res = minimize_scalar(
            energy_at, bounds=(lo, hi), method="bounded", options={"xatol": xatol}
        )
        if not res.success:
            raise ConvergenceError(
                f"bounded minimization failed for {state.label} at r0={r0}: {res.message}"
            )
        best = res
        span = hi - lo
        at_lo = res.x - lo < 0.02 * span
        at_hi = hi - res.x < 0.02 * span
        if at_lo and lo > _ALPHA_FLOOR:
            lo = max(0.5 * lo, _ALPHA_FLOOR)
        elif at_hi and hi < hi_cap:
            hi = min(2.0 * hi, hi_cap)
        elif at_hi:
            raise ConvergenceError(
                f"optimal alpha pinned at cap {hi_cap} for {state.label} at r0={r0}"
            )
        else:
            break
    else:
        raise ConvergenceError(
            f"variational bracket would not settle for {state.label} at r0={r0}: "
            f"last bracket [{lo}, {hi}], alpha={best.x}"
        )

    alpha = float(best.x)
    coeffs = coeffs_at(alpha)
    f, _ = trial_radial_wf(state, r0, alpha, grid.nodes, coeffs)
    norm_sq = float(np.sum(grid.weights * f * f * grid.nodes))
    if not norm_sq > 0.0:
        raise ConvergenceError(f"degenerate trial norm for {state.label} at r0={r0}")
    return ConfinedState(
        state=state,
        r0=r0,
        alpha=alpha,
        energy=float(best.fun),
        norm_constant=1.0 / math.sqrt(norm_sq),
        quadrature_order=order,
        node_coeffs=coeffs,
    )


def coulomb_expectation(cs: ConfinedState) -> float:
    """<1/r> of the optimized state, for kinetic-energy consistency checks."""
    grid = cs.grid()
    value, _ = cs.radial(grid.nodes)
    return float(np.sum(grid.weights * value * value))


def reference_energies() -> dict[str, tuple[float, float]]:
    """Free-limit energy and approximate saturation radius per tabulated state."""
    return {
        "1s": (-2.0, 2.0),
        "2s": (-2.0 / 9.0, 3.0),
        "2p": (-2.0 / 9.0, 3.0),
        "3d": (-2.0 / 25.0, 5.0),
    }
