"""Closed-form measures and wavefunctions of the free d-dimensional hydrogen atom.

Everything here is analytic: energies, radial wavefunctions in position and
momentum space, first and second moments, Fisher information, and the
Crámer-Rao complexity built from them.  These serve as oracle values for the
confined solver in its weak-confinement limit and as reference rows for the
free-atom table.

Atomic units throughout.  The dimension d enters through the grand quantum
number eta = n + (d-3)/2 and L = l + (d-3)/2; the default d = 2 is the case
the rest of the package studies, where the angular quantum number is the
single magnetic number m.  For d > 2 the second label is read as the orbital
quantum number of an ns (m = 0) or circular-type (all angular numbers equal)
state, the scope the closed forms below cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import gamma_fn, gegenbauer_orthonormal, orthonormal_laguerre

__all__ = [
    "StateLabel",
    "FreeMeasures",
    "MOMENTUM_FISHER_2S_NOTE",
    "free_energy",
    "position_mean",
    "position_second_moment",
    "position_variance",
    "position_fisher",
    "momentum_mean",
    "momentum_second_moment",
    "momentum_variance",
    "momentum_fisher",
    "circular_position_moment",
    "circular_momentum_moment",
    "ground_momentum_moment",
    "free_measures",
    "table1_states",
    "table1",
    "free_radial_position_wf",
    "free_radial_momentum_wf",
]

_SPECTROSCOPIC = "spdfghiklmnoq"

MOMENTUM_FISHER_2S_NOTE = (
    "F[gamma](2s) = 58.5 exactly: the closed form 2*eta^2*(5*eta^2+1) for m=0 "
    "equals 4<r^2> = 58.5 at eta = 3/2, and direct quadrature of 4*Int H'(p)^2 p dp "
    "confirms it.  The value 58.2000 sometimes tabulated for this state (with the "
    "complexity 16.8896 built from it) is a misprint."
)


@dataclass(frozen=True)
class StateLabel:
    """Quantum numbers (n, m) of a hydrogenic state in d dimensions."""

    n: int
    m: int
    d: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"principal quantum number must be >= 1, got {self.n}")
        if abs(self.m) > self.n - 1:
            raise ValueError(f"|m| must be <= n-1, got (n={self.n}, m={self.m})")
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")

    @property
    def l(self) -> int:
        """Orbital angular quantum number (|m| in two dimensions)."""
        return abs(self.m)

    @property
    def eta(self) -> float:
        """Grand quantum number n + (d-3)/2."""
        return self.n + 0.5 * (self.d - 3)

    @property
    def big_l(self) -> float:
        """Grand orbital number L = l + (d-3)/2."""
        return self.l + 0.5 * (self.d - 3)

    @property
    def lam(self) -> float:
        """Radial length scale eta/2."""
        return 0.5 * self.eta

    @property
    def n_r(self) -> int:
        """Radial node count n - l - 1, the Laguerre/Gegenbauer degree."""
        return self.n - self.l - 1

    @property
    def is_ns(self) -> bool:
        return self.l == 0

    @property
    def is_circular(self) -> bool:
        return self.l == self.n - 1

    @property
    def label(self) -> str:
        """Spectroscopic name such as '1s' or '3d'."""
        return f"{self.n}{_SPECTROSCOPIC[self.l]}"


@dataclass(frozen=True)
class FreeMeasures:
    """Variance, Fisher information and Crámer-Rao complexity of a free state."""

    energy: float
    v_pos: float
    f_pos: float
    v_mom: float
    f_mom: float
    cr_pos: float
    cr_mom: float

    @classmethod
    def from_parts(
        cls, energy: float, v_pos: float, f_pos: float, v_mom: float, f_mom: float
    ) -> "FreeMeasures":
        return cls(
            energy=energy,
            v_pos=v_pos,
            f_pos=f_pos,
            v_mom=v_mom,
            f_mom=f_mom,
            cr_pos=f_pos * v_pos,
            cr_mom=f_mom * v_mom,
        )


def free_energy(state: StateLabel) -> float:
    """Bound-state energy -1/(2 eta^2)."""
    return -0.5 / state.eta**2


def position_mean(state: StateLabel) -> float:
    """<r> = [3 eta^2 - L(L+1)] / 2."""
    big_l = state.big_l
    return 0.5 * (3.0 * state.eta**2 - big_l * (big_l + 1.0))


def position_second_moment(state: StateLabel) -> float:
    """<r^2> = eta^2 [5 eta^2 - 3L(L+1) + 1] / 2."""
    big_l = state.big_l
    return 0.5 * state.eta**2 * (5.0 * state.eta**2 - 3.0 * big_l * (big_l + 1.0) + 1.0)


def position_variance(state: StateLabel) -> float:
    """V[rho] = [eta^2 (eta^2 + 2) - L^2 (L+1)^2] / 4."""
    big_l = state.big_l
    return 0.25 * (state.eta**2 * (state.eta**2 + 2.0) - big_l**2 * (big_l + 1.0) ** 2)


def position_fisher(state: StateLabel) -> float:
    """F[rho] = 4 (eta - |m|) / eta^3."""
    return 4.0 * (state.eta - state.l) / state.eta**3


def momentum_second_moment(state: StateLabel) -> float:
    """<p^2> = 1/eta^2 (virial theorem)."""
    return 1.0 / state.eta**2


def momentum_fisher(state: StateLabel) -> float:
    """F[gamma] = 2 eta^2 [5 eta^2 - 3L(L+1) - |m|(8 eta - 6L - 3) + 1]."""
    big_l = state.big_l
    eta = state.eta
    return (
        2.0
        * eta**2
        * (
            5.0 * eta**2
            - 3.0 * big_l * (big_l + 1.0)
            - state.l * (8.0 * eta - 6.0 * big_l - 3.0)
            + 1.0
        )
    )


def _momentum_mean_ns_2d(n: int) -> float:
    # alternating finite sum, exact for every ns state of the 2D atom
    total = 0.0
    for j in range(n):
        term = (
            (-1.0) ** j
            * (2.0 * j + 1.0)
            / (2.0 * j + 2.0)
            * gamma_fn(j + 0.5) ** 2
            / gamma_fn(j + 1.0) ** 4
            * gamma_fn(n + j)
            / gamma_fn(n - j)
        )
        total += term
    return total


def circular_position_moment(state: StateLabel, alpha: float) -> float:
    """<r^alpha> of a circular state, alpha > -(2n + d - 2)."""
    if not state.is_circular:
        raise ValueError(f"{state.label} is not a circular state")
    two_eta = 2.0 * state.eta
    if alpha <= -(two_eta + 1.0):
        raise ValueError(f"moment order {alpha} diverges for {state.label}")
    return (0.5 * state.lam) ** alpha * gamma_fn(two_eta + 1.0 + alpha) / gamma_fn(two_eta + 1.0)


def circular_momentum_moment(state: StateLabel, alpha: float) -> float:
    """<p^alpha> of a circular state, -(2n + d - 2) < alpha < 2n + d."""
    if not state.is_circular:
        raise ValueError(f"{state.label} is not a circular state")
    n, d = state.n, state.d
    if not (-(2.0 * n + d - 2.0) < alpha < 2.0 * n + d):
        raise ValueError(f"moment order {alpha} diverges for {state.label}")
    half = n + 0.5 * (d - 2.0)
    return (
        (1.0 / state.eta) ** alpha
        * gamma_fn(n + 0.5 * (d + alpha - 2.0))
        * gamma_fn(n + 0.5 * (d - alpha))
        / (half * gamma_fn(half) ** 2)
    )


def ground_momentum_moment(d: int, alpha: float) -> float:
    """<p^alpha> of the d-dimensional ground state, -d < alpha < d + 2."""
    if not (-d < alpha < d + 2):
        raise ValueError(f"moment order {alpha} diverges for the {d}-dimensional 1s state")
    return (
        (2.0 / (d - 1.0)) ** alpha
        * 2.0
        * gamma_fn(0.5 * (d - alpha) + 1.0)
        * gamma_fn(0.5 * (d + alpha))
        / (d * gamma_fn(0.5 * d) ** 2)
    )


def momentum_mean(state: StateLabel) -> float:
    """<p> where a closed form exists: ns states (d = 2) and circular states.

    No general closed form for <p> is known; other states raise ValueError.
    """
    if state.is_circular:
        return circular_momentum_moment(state, 1.0)
    if state.is_ns:
        if state.d == 2:
            return _momentum_mean_ns_2d(state.n)
        if state.n == 1:
            return ground_momentum_moment(state.d, 1.0)
    raise ValueError(f"<p> has no implemented closed form for {state.label} (d={state.d})")


def momentum_variance(state: StateLabel) -> float:
    """V[gamma] = <p^2> - <p>^2 for ns and circular states."""
    mean = momentum_mean(state)
    return momentum_second_moment(state) - mean**2


def free_measures(state: StateLabel) -> FreeMeasures:
    """All free-atom measures of a state with known <p> (ns or circular)."""
    return FreeMeasures.from_parts(
        energy=free_energy(state),
        v_pos=position_variance(state),
        f_pos=position_fisher(state),
        v_mom=momentum_variance(state),
        f_mom=momentum_fisher(state),
    )


def table1_states() -> list[StateLabel]:
    """The four 2D states tabulated and swept throughout: 1s, 2s, 2p, 3d."""
    return [StateLabel(1, 0), StateLabel(2, 0), StateLabel(2, 1), StateLabel(3, 2)]


def table1() -> list[tuple[StateLabel, FreeMeasures]]:
    """Free-atom reference table: measures of the 1s, 2s, 2p and 3d states."""
    return [(s, free_measures(s)) for s in table1_states()]


def free_radial_position_wf(state: StateLabel, r) -> tuple[np.ndarray, np.ndarray]:
    """Radial position wavefunction R(r) and dR/dr, normalized by Int R^2 r^(d-1) dr = 1."""
    lam = state.lam
    l, k = state.l, state.n_r
    rt = np.asarray(r, dtype=float) / lam
    poly = orthonormal_laguerre(k, 2.0 * state.big_l + 1.0, rt)
    const = math.sqrt(lam ** (-state.d) / (2.0 * state.eta))
    envelope = np.exp(-0.5 * rt)
    power = rt**l
    value = const * power * envelope * poly.value
    dpower = l * rt ** (l - 1) if l >= 1 else np.zeros_like(rt)
    deriv = (
        const
        / lam
        * envelope
        * ((dpower - 0.5 * power) * poly.value + power * poly.derivative)
    )
    return value, deriv


def free_radial_momentum_wf(state: StateLabel, p) -> tuple[np.ndarray, np.ndarray]:
    """Radial momentum wavefunction M(p) and dM/dp, normalized by Int M^2 p^(d-1) dp = 1."""
    eta, d = state.eta, state.d
    l, k = state.l, state.n_r
    alpha = state.big_l + 1.0
    p = np.asarray(p, dtype=float)
    s2 = (eta * p) ** 2
    y = (1.0 - s2) / (1.0 + s2)
    a_exp = 1.5 + 0.25 * (d - 2.0) + 0.25 * (2.0 * state.big_l + 1.0)
    b_exp = 0.25 * (2.0 * state.big_l + 1.0) - 0.25 * (d - 2.0)  # = l/2
    const = eta ** (0.5 * d)
    poly = gegenbauer_orthonormal(k, alpha, y)

    positive = p > 0.0
    yp = np.where(positive, y, 0.0)  # placeholder at p=0, fixed below
    up = 1.0 + yp
    um = 1.0 - yp
    value = const * up**a_exp * um**b_exp * poly.value
    dy_dp = -4.0 * eta**2 * p / (1.0 + s2) ** 2
    dvalue_dy = const * (
        up ** (a_exp - 1.0) * um ** (b_exp - 1.0) * (a_exp * um - b_exp * up) * poly.value
        + up**a_exp * um**b_exp * poly.derivative
    )
    deriv = dvalue_dy * dy_dp

    if np.any(~positive):
        # limits at p = 0, where y = 1 exactly
        at_one = gegenbauer_orthonormal(k, alpha, 1.0)
        peak = const * 2.0**a_exp * at_one.value
        v0 = peak if l == 0 else 0.0
        d0 = peak * math.sqrt(2.0) * eta if l == 1 else 0.0
        value = np.where(positive, value, v0)
        deriv = np.where(positive, deriv, d0)
    return value, deriv
