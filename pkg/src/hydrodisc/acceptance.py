"""Acceptance checks: the quantitative claims the package must reproduce.

Each criterion prints one pass/fail line.  Expensive artifacts (the default
confinement sweep evaluated with full measure reports, one finite-difference
oracle energy per grid point) are computed once and shared; the time shown
per criterion is its own marginal cost.

Run via `hydrodisc verify`, `python3 -m hydrodisc.acceptance`, or the
pytest wrapper in tests/test_acceptance.py.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from .confined import ConfinedState, coulomb_expectation, solve
from .fd_eigensolver import oracle_energy
from .free_atom import StateLabel, free_energy, free_measures, table1_states
from .measures import (
    MeasureReport,
    fisher_uncertainty_check,
    free_momentum_report,
    free_position_report,
    momentum_measures,
    position_measures,
)
from .momentum import build_table
from .sweep import DEFAULT_STATES, SweepConfig, radii

__all__ = ["run_all", "main", "CRITERIA"]

# The reference table as printed (V_pos, V_mom, F_pos, F_mom, CR_pos, CR_mom).
# F_mom(2s) = 58.2000 is the known misprint, adjudicated in criterion 1;
# the CR columns are products of the printed 4-decimal factors.
_TABLE1_PRINTED = {
    "1s": (0.1250, 1.5326, 16.0000, 1.5000, 2.0000, 2.2989),
    "2s": (2.3750, 0.2902, 1.7777, 58.2000, 4.2220, 16.8896),
    "2p": (2.2500, 0.0975, 0.5925, 18.0000, 1.3331, 1.7550),
    "3d": (9.3750, 0.0245, 0.1280, 62.5000, 1.2000, 1.5312),
}

@dataclass(frozen=True)
class CurvePoint:
    """One evaluated (state, r0) point with everything the criteria need."""

    state: StateLabel
    r0: float
    cs: ConfinedState
    pos: MeasureReport
    mom: MeasureReport


_cache: dict[str, object] = {}


def _curve() -> list[CurvePoint]:
    """The default sweep grid evaluated with full measure reports."""
    if "curve" not in _cache:
        t0 = time.time()
        cfg = SweepConfig()
        points = []
        for n, m in DEFAULT_STATES:
            state = StateLabel(n, m)
            for r0 in radii(cfg):
                cs = solve(state, float(r0))
                pos = position_measures(cs)
                mom = momentum_measures(build_table(cs))
                points.append(CurvePoint(state, float(r0), cs, pos, mom))
        _cache["curve"] = points
        _cache["curve_seconds"] = time.time() - t0
    return _cache["curve"]


def _point(state: StateLabel, r0: float) -> CurvePoint:
    key = ("point", state.n, state.m, r0)
    if key not in _cache:
        cs = solve(state, r0)
        pos = position_measures(cs)
        mom = momentum_measures(build_table(cs))
        _cache[key] = CurvePoint(state, r0, cs, pos, mom)
    return _cache[key]


def _curve_for(state: StateLabel) -> list[CurvePoint]:
    return [p for p in _curve() if p.state == state]


def criterion_1() -> tuple[bool, str]:
    """Reference-table closed forms at 4 decimals, with the F[gamma](2s) adjudication."""
    strict = 1.01e-4
    problems = []
    for st in table1_states():
        fm = free_measures(st)
        v_pos, v_mom, f_pos, f_mom, cr_pos, cr_mom = _TABLE1_PRINTED[st.label]
        checks = [
            ("v_pos", fm.v_pos, v_pos, strict),
            ("v_mom", fm.v_mom, v_mom, strict),
            ("f_pos", fm.f_pos, f_pos, strict),
            ("cr_pos", fm.cr_pos, cr_pos, (v_pos + f_pos + 1.0) * strict),
        ]
        if st.label != "2s":
            checks.append(("f_mom", fm.f_mom, f_mom, strict))
            checks.append(("cr_mom", fm.cr_mom, cr_mom, (v_mom + f_mom + 1.0) * strict))
        for name, got, printed, tol in checks:
            if abs(got - printed) > tol:
                problems.append(f"{st.label} {name}: {got:.6f} vs printed {printed}")
    # F[gamma](2s): closed form says 58.5, the printed 58.2000 is a misprint;
    # an independent quadrature oracle adjudicates.
    fm2s = free_measures(StateLabel(2, 0))
    oracle = free_momentum_report(StateLabel(2, 0)).fisher
    if abs(fm2s.f_mom - 58.5) > 1e-10:
        problems.append(f"2s f_mom reports {fm2s.f_mom}, expected 58.5")
    if abs(oracle / 58.5 - 1.0) > 1e-5:
        problems.append(f"2s f_mom quadrature oracle {oracle:.6f} disagrees with 58.5")
    if abs(fm2s.cr_mom - fm2s.f_mom * fm2s.v_mom) > 1e-12:
        problems.append("2s cr_mom is not the artifact's own F*V product")
    detail = (
        f"24 entries vs printed table; F[gamma](2s) verdict: printed 58.2000 is a "
        f"misprint, closed form 58.5 confirmed by quadrature ({oracle:.6f})"
    )
    return (not problems, detail if not problems else "; ".join(problems))


def criterion_2() -> tuple[bool, str]:
    """Free-state quadrature oracles match closed forms (1e-6 pos, 1e-5 mom)."""
    problems = []
    worst_pos = worst_mom = 0.0
    for label in ("1s", "2p", "3d"):
        st = next(s for s in table1_states() if s.label == label)
        fm = free_measures(st)
        pos = free_position_report(st)
        mom = free_momentum_report(st)
        for name, closed, quad in (
            ("v_pos", fm.v_pos, pos.variance),
            ("f_pos", fm.f_pos, pos.fisher),
        ):
            rel = abs(quad / closed - 1.0)
            worst_pos = max(worst_pos, rel)
            if rel > 1e-6:
                problems.append(f"{label} {name} rel {rel:.2e}")
        for name, closed, quad in (
            ("v_mom", fm.v_mom, mom.variance),
            ("f_mom", fm.f_mom, mom.fisher),
        ):
            rel = abs(quad / closed - 1.0)
            worst_mom = max(worst_mom, rel)
            if rel > 1e-5:
                problems.append(f"{label} {name} rel {rel:.2e}")
    detail = f"worst relative error: position {worst_pos:.1e}, momentum {worst_mom:.1e}"
    return (not problems, detail if not problems else "; ".join(problems))


def criterion_3() -> tuple[bool, str]:
    """Free-limit convergence at r0 = 40: energies 1e-3, measures 2%."""
    problems = []
    worst = 0.0
    for n, m in DEFAULT_STATES:
        st = StateLabel(n, m)
        p = _point(st, 40.0)
        de = abs(p.cs.energy - free_energy(st))
        if de > 1e-3:
            problems.append(f"{st.label} energy off by {de:.2e}")
        fm = free_measures(st)
        for name, free_val, got in (
            ("v_pos", fm.v_pos, p.pos.variance),
            ("f_pos", fm.f_pos, p.pos.fisher),
            ("cr_pos", fm.cr_pos, p.pos.cramer_rao),
            ("v_mom", fm.v_mom, p.mom.variance),
            ("f_mom", fm.f_mom, p.mom.fisher),
            ("cr_mom", fm.cr_mom, p.mom.cramer_rao),
        ):
            rel = abs(got / free_val - 1.0)
            worst = max(worst, rel)
            if rel > 0.02:
                problems.append(f"{st.label} {name} rel {rel:.2%}")
    detail = f"four states at r0=40: worst measure deviation {worst:.2%} (limit 2%)"
    return (not problems, detail if not problems else "; ".join(problems))


def criterion_4() -> tuple[bool, str]:
    """Variational energies upper-bound the grid oracle on the default grid."""
    worst = math.inf
    problems = []
    for p in _curve():
        ref = oracle_energy(p.state, p.r0)
        margin = p.cs.energy - ref
        worst = min(worst, margin)
        if margin < -1e-9:
            problems.append(f"{p.state.label} r0={p.r0:.3f} margin {margin:.2e}")
    detail = f"{len(_curve())} points vs 4096-cell oracle, worst margin {worst:+.2e}"
    return (not problems, detail if not problems else "; ".join(problems))


def criterion_5() -> tuple[bool, str]:
    """(2s;3d) energy inversion: exactly one sign change on [0.8, 1.3]."""
    s2, d3 = StateLabel(2, 0), StateLabel(3, 2)
    grid = np.linspace(0.8, 1.3, 11)
    diff = np.array([solve(s2, float(r)).energy - solve(d3, float(r)).energy for r in grid])
    signs = np.sign(diff)
    changes = int(np.sum(signs[:-1] != signs[1:]))
    where = ""
    if changes == 1:
        i = int(np.nonzero(signs[:-1] != signs[1:])[0][0])
        where = f" between r0={grid[i]:.2f} and {grid[i + 1]:.2f}"
    elif changes == 0:
        # locate the inversion so the failure says where it actually happens
        lo, hi = 0.3, float(grid[-1])
        f_lo = solve(s2, lo).energy - solve(d3, lo).energy
        if f_lo > 0 > diff[-1]:
            for _ in range(20):
                mid = 0.5 * (lo + hi)
                if solve(s2, mid).energy - solve(d3, mid).energy > 0:
                    lo = mid
                else:
                    hi = mid
            where = f"; the inversion actually happens at r0 = {0.5 * (lo + hi):.3f}"
        else:
            where = "; no inversion anywhere in [0.3, 1.3]"
    detail = f"E(2s)-E(3d) changes sign {changes}x on 11-point grid{where}"
    return (changes == 1, detail)


def criterion_6() -> tuple[bool, str]:
    """Cramer-Rao ordering 3d < 2p < 1s < 2s in both spaces at r0 = 30."""
    order = ["3d", "2p", "1s", "2s"]
    vals = {}
    for n, m in DEFAULT_STATES:
        st = StateLabel(n, m)
        p = _point(st, 30.0)
        vals[st.label] = (p.pos.cramer_rao, p.mom.cramer_rao)
    ok = True
    for space, idx in (("position", 0), ("momentum", 1)):
        chain = [vals[lbl][idx] for lbl in order]
        if not all(a < b for a, b in zip(chain, chain[1:])):
            ok = False
    detail = "; ".join(
        f"{space}: " + " < ".join(f"{vals[lbl][idx]:.4f}({lbl})" for lbl in order)
        for space, idx in (("pos", 0), ("mom", 1))
    )
    return (ok, detail)


def _local_extrema(r: np.ndarray, y: np.ndarray, kind: str) -> list[float]:
    out = []
    for i in range(1, len(y) - 1):
        if kind == "min" and y[i] < y[i - 1] and y[i] < y[i + 1]:
            out.append(float(r[i]))
        if kind == "max" and y[i] > y[i - 1] and y[i] > y[i + 1]:
            out.append(float(r[i]))
    return out


def criterion_7() -> tuple[bool, str]:
    """Structural extrema of the Cramer-Rao curves (2s min/max, 2p;3d cross)."""
    problems = []
    pts_2s = _curve_for(StateLabel(2, 0))
    r = np.array([p.r0 for p in pts_2s])
    cr_pos = np.array([p.pos.cramer_rao for p in pts_2s])
    cr_mom = np.array([p.mom.cramer_rao for p in pts_2s])

    i_min = int(np.argmin(cr_pos))
    r_min = float(r[i_min])
    if not (0 < i_min < len(r) - 1 and 4.0 <= r_min <= 8.0):
        problems.append(f"2s position CR minimum at r0={r_min:.2f}, outside [4, 8]")

    maxima = [rm for rm in _local_extrema(r, cr_mom, "max") if 3.5 <= rm <= 7.0]
    if not maxima:
        problems.append("2s momentum CR has no interior maximum in [3.5, 7]")

    pts_2p = _curve_for(StateLabel(2, 1))
    pts_3d = _curve_for(StateLabel(3, 2))
    diff = np.array(
        [a.mom.cramer_rao - b.mom.cramer_rao for a, b in zip(pts_2p, pts_3d)]
    )
    signs = np.sign(diff)
    flips = np.nonzero(signs[:-1] != signs[1:])[0]
    cross_at = None
    for i in flips:
        lo, hi = float(r[i]), float(r[i + 1])
        if 4.5 <= lo and hi <= 7.5:
            cross_at = (lo, hi)
    if cross_at is None:
        problems.append("2p/3d momentum CR curves do not cross inside [4.5, 7.5]")
    detail = (
        f"2s CR[rho] min at r0={r_min:.2f}; 2s CR[gamma] max at "
        f"r0={maxima[0]:.2f}" + (f"; 2p/3d cross in [{cross_at[0]:.2f}, {cross_at[1]:.2f}]"
        if cross_at else "")
    ) if not problems else "; ".join(problems)
    return (not problems, detail)


def criterion_8() -> tuple[bool, str]:
    """Uncertainty products, moment bounds, norms, Parseval, kinetic identity."""
    problems = []
    worst_kin = worst_norm = 0.0
    worst_ff = math.inf
    for p in _curve():
        st = p.state
        ff = p.pos.fisher * p.mom.fisher
        if st.m == 0:
            worst_ff = min(worst_ff, ff)
            if not fisher_uncertainty_check(p.pos, p.mom, st):
                problems.append(f"{st.label} r0={p.r0:.3f} Fisher product {ff:.3f} < 16")
        if p.pos.second_moment * p.pos.fisher < 4.0:
            problems.append(f"{st.label} r0={p.r0:.3f} <r^2>F[rho] < 4")
        if p.mom.second_moment * p.mom.fisher < 4.0:
            problems.append(f"{st.label} r0={p.r0:.3f} <p^2>F[gamma] < 4")
        parseval = p.pos.norm_residual + p.mom.norm_residual
        worst_norm = max(worst_norm, parseval)
        if p.pos.norm_residual > 1e-4 or p.mom.norm_residual > 1e-4 or parseval > 1e-4:
            problems.append(f"{st.label} r0={p.r0:.3f} norm residual {parseval:.2e}")
        kinetic = 2.0 * (p.cs.energy + coulomb_expectation(p.cs))
        rel = abs(p.mom.second_moment - kinetic) / p.mom.second_moment
        worst_kin = max(worst_kin, rel)
        if rel > 1e-4:
            problems.append(f"{st.label} r0={p.r0:.3f} kinetic identity off {rel:.2e}")
    detail = (
        f"{len(_curve())} points: min F*F (m=0) {worst_ff:.3f}, worst norm/Parseval "
        f"{worst_norm:.1e}, worst kinetic residual {worst_kin:.1e}"
    )
    return (not problems, detail if not problems else "; ".join(problems[:4]))


def _variance_crossings(st: StateLabel, grid: np.ndarray) -> list[tuple[float, float]]:
    ground = StateLabel(1, 0)
    diff = [
        _point(st, float(r0)).mom.variance - _point(ground, float(r0)).mom.variance
        for r0 in grid
    ]
    signs = np.sign(diff)
    flips = np.nonzero(signs[:-1] != signs[1:])[0]
    return [(float(grid[i]), float(grid[i + 1])) for i in flips]


def criterion_9() -> tuple[bool, str]:
    """Momentum-variance crossings with the ground state in the stated windows."""
    windows = {"2p": (1.0, 1.5), "3d": (1.5, 2.2), "2s": (2.3, 3.2)}
    problems = []
    found = []
    per_window = {}
    for label, (lo, hi) in windows.items():
        st = next(s for s in table1_states() if s.label == label)
        brackets = _variance_crossings(st, np.linspace(lo, hi, 7))
        per_window[label] = len(brackets) == 1
        if len(brackets) == 1:
            found.append(f"(1s;{label}) in [{brackets[0][0]:.2f}, {brackets[0][1]:.2f}]")
            continue
        # locate where the curves actually cross so the failure is informative
        wide = _variance_crossings(st, np.arange(0.8, 3.61, 0.14))
        where = ", ".join(f"[{a:.2f}, {b:.2f}]" for a, b in wide) or "nowhere in [0.8, 3.6]"
        problems.append(
            f"(1s;{label}) has {len(brackets)} crossings in [{lo}, {hi}]; "
            f"the pipeline curves actually cross at {where}"
        )
    _cache["crossing_windows"] = per_window
    detail = "; ".join(found + problems)
    return (not problems, detail)


CRITERIA = [
    ("reference table closed forms", criterion_1),
    ("free-state quadrature oracles", criterion_2),
    ("free-limit convergence at r0=40", criterion_3),
    ("variational upper bound vs grid oracle", criterion_4),
    ("(2s;3d) energy inversion", criterion_5),
    ("Cramer-Rao ordering at r0=30", criterion_6),
    ("Cramer-Rao structural extrema", criterion_7),
    ("uncertainty and bound properties", criterion_8),
    ("momentum-variance crossing windows", criterion_9),
]


def run_all(verbose: bool = False) -> list[tuple[str, bool, str]]:
    """Evaluate all criteria; returns (name, passed, printed line) triples."""
    results = []
    for idx, (name, fn) in enumerate(CRITERIA, start=1):
        t0 = time.time()
        ok, detail = fn()
        dt = time.time() - t0
        line = f"criterion {idx} ({name}): {'PASS' if ok else 'FAIL'} [{dt:.1f}s] {detail}"
        if verbose:
            print(line, flush=True)
        results.append((name, ok, line))
    if verbose and "curve_seconds" in _cache:
        print(f"(shared default-grid evaluation: {_cache['curve_seconds']:.1f}s, "
              f"included in the first criterion that needed it)", flush=True)
    return results


def main() -> int:
    results = run_all(verbose=True)
    failed = [name for name, ok, _ in results if not ok]
    if failed:
        print(f"{len(failed)} of {len(results)} criteria FAILED: {', '.join(failed)}")
        return 2
    print(f"all {len(results)} acceptance criteria passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
