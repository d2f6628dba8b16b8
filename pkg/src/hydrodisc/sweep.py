"""Confinement sweeps: orchestration over (state, r0) points and file output.

A sweep solves every requested state at every wall radius, computes the
position and momentum measures, and collects one row per point.  Numerical
failures (non-converged solve, unmet quadrature accuracy) are isolated: the
affected row keeps its identifying columns, carries nan in the numeric
fields and an error marker in a trailing field, and the rest of the sweep
proceeds.  Rows are sorted by (n, m, r0) and printed in full-precision
scientific notation so identical configurations give byte-identical files.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .confined import MIN_WALL_RADIUS, ConvergenceError, solve
from .free_atom import StateLabel, free_measures, table1_states
from .measures import momentum_measures, position_measures
from .momentum import AccuracyError, build_table

__all__ = [
    "SweepConfig",
    "SweepRow",
    "DEFAULT_STATES",
    "CSV_HEADER",
    "radii",
    "evaluate_point",
    "run_sweep",
    "emit_csv",
    "parse_csv",
    "table1_text",
    "emit_table1",
    "emit_plot_data",
    "read_config_file",
    "parse_states",
    "config_from",
    "config_echo",
]

DEFAULT_STATES = ((1, 0), (2, 0), (2, 1), (3, 2))

CSV_HEADER = (
    "n,m,r0,alpha_opt,energy,v_pos,f_pos,cr_pos,"
    "v_mom,f_mom,cr_mom,pos_norm_residual,mom_norm_residual"
)

TABLE1_HEADER = "state,v_pos,v_mom,f_pos,f_mom,cr_pos,cr_mom"

# figN stem -> SweepRow attribute (fig6 is the Fisher uncertainty product)
PLOT_QUANTITIES = (
    ("fig1_E", "energy"),
    ("fig2_Vpos", "v_pos"),
    ("fig3_Vmom", "v_mom"),
    ("fig4_CRpos", "cr_pos"),
    ("fig5_CRmom", "cr_mom"),
    ("fig6_FF", None),
)


@dataclass(frozen=True)
class SweepConfig:
    """Resolved sweep parameters; validation happens on construction."""

    states: tuple[tuple[int, int], ...] = DEFAULT_STATES
    r0_min: float = 0.5
    r0_max: float = 40.0
    points: int = 40
    spacing: str = "log"
    quadrature_order: int = 200
    p_tail_tolerance: float = 1e-6
    output_path: str = "."
    emit_plot_data: bool = False

    def __post_init__(self):
        if not self.states:
            raise ValueError("states list must not be empty")
        for n, m in self.states:
            if not (0 <= m <= n - 1):
                raise ValueError(f"state ({n},{m}) violates 0 <= m <= n-1")
        if not (MIN_WALL_RADIUS <= self.r0_min < self.r0_max):
            raise ValueError(
                f"need {MIN_WALL_RADIUS} <= r0_min < r0_max, "
                f"got [{self.r0_min}, {self.r0_max}]"
            )
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")
        if self.quadrature_order < 8:
            raise ValueError(f"quadrature_order must be >= 8, got {self.quadrature_order}")
        if not (0.0 < self.p_tail_tolerance <= 1e-3):
            raise ValueError(
                f"p_tail_tolerance must lie in (0, 1e-3], got {self.p_tail_tolerance}"
            )


@dataclass(frozen=True)
class SweepRow:
    """One sweep point; unavailable numbers are None (emitted as nan)."""

    n: int
    m: int
    r0: float
    alpha_opt: float | None = None
    energy: float | None = None
    v_pos: float | None = None
    f_pos: float | None = None
    cr_pos: float | None = None
    v_mom: float | None = None
    f_mom: float | None = None
    cr_mom: float | None = None
    pos_norm_residual: float | None = None
    mom_norm_residual: float | None = None
    error: str | None = None

    @property
    def key(self) -> tuple[int, int, float]:
        return (self.n, self.m, self.r0)


_NUMERIC_FIELDS = [f.name for f in fields(SweepRow)][3:-1]


def radii(cfg: SweepConfig) -> np.ndarray:
    """Wall radii of the sweep, r0_max included exactly."""
    if cfg.spacing == "log":
        return np.geomspace(cfg.r0_min, cfg.r0_max, cfg.points)
    return np.linspace(cfg.r0_min, cfg.r0_max, cfg.points)


def _flatten_error(exc: Exception, stage: str) -> str:
    text = f"{stage}: {exc}"
    return text.replace(",", ";").replace("\n", " ")


def evaluate_point(
    n: int,
    m: int,
    r0: float,
    quadrature_order: int = 200,
    p_tail_tolerance: float = 1e-6,
) -> SweepRow:
    """Solve one (state, r0) point and compute both measure sets.

    Convergence and accuracy failures are captured in the row's error
    field; anything else (a genuine usage or programming error) propagates.
    """
    state = StateLabel(n, m)
    row = SweepRow(n=n, m=m, r0=r0)
    try:
        cs = solve(state, r0, order=quadrature_order)
    except ConvergenceError as exc:
        return replace(row, error=_flatten_error(exc, "solve"))
    row = replace(row, alpha_opt=cs.alpha, energy=cs.energy)
    try:
        pos = position_measures(cs)
    except AccuracyError as exc:
        return replace(row, error=_flatten_error(exc, "position"))
    row = replace(
        row,
        v_pos=pos.variance,
        f_pos=pos.fisher,
        cr_pos=pos.cramer_rao,
        pos_norm_residual=pos.norm_residual,
    )
    try:
        table = build_table(cs, p_tail_tolerance=p_tail_tolerance)
        mom = momentum_measures(table)
    except AccuracyError as exc:
        return replace(row, error=_flatten_error(exc, "momentum"))
    return replace(
        row,
        v_mom=mom.variance,
        f_mom=mom.fisher,
        cr_mom=mom.cramer_rao,
        mom_norm_residual=mom.norm_residual,
    )


def _evaluate_task(task: tuple[int, int, float, int, float]) -> SweepRow:
    return evaluate_point(*task)


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """All sweep rows, sorted by (n, m, r0), failures isolated per row."""
    r_values = radii(cfg)
    tasks = [
        (n, m, float(r0), cfg.quadrature_order, cfg.p_tail_tolerance)
        for n, m in sorted(cfg.states)
        for r0 in r_values
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate_task, tasks))
    else:
        rows = [_evaluate_task(t) for t in tasks]
    return sorted(rows, key=lambda row: row.key)


def _format_value(x: float | None) -> str:
    return "nan" if x is None else f"{x:.17e}"


def emit_csv(rows: list[SweepRow], path: str) -> None:
    """Write the sweep CSV; failed rows gain a trailing error-marker field."""
    if not rows:
        raise ValueError("refusing to write an empty sweep CSV")
    lines = [CSV_HEADER]
    for row in rows:
        cells = [str(row.n), str(row.m), f"{row.r0:.17e}"]
        cells += [_format_value(getattr(row, name)) for name in _NUMERIC_FIELDS]
        if row.error is not None:
            cells.append(row.error)
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_csv(path: str) -> list[SweepRow]:
    """Read a sweep CSV back into rows (inverse of emit_csv)."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing or mismatched sweep CSV header")
    rows = []
    n_cols = len(CSV_HEADER.split(","))
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) not in (n_cols, n_cols + 1):
            raise ValueError(f"{path}: malformed row: {line!r}")
        values = [None if p == "nan" else float(p) for p in parts[3:n_cols]]
        rows.append(
            SweepRow(
                int(parts[0]),
                int(parts[1]),
                float(parts[2]),
                *values,
                error=parts[n_cols] if len(parts) > n_cols else None,
            )
        )
    return rows


def table1_text() -> str:
    """The free-atom measure table with 4-decimal formatting.

    Every column is rounded independently from full-precision values, so
    the products satisfy cr = f*v before rounding (see free_atom for the
    F[gamma](2s) note).
    """
    lines = [TABLE1_HEADER]
    for st in table1_states():
        fm = free_measures(st)
        cells = (fm.v_pos, fm.v_mom, fm.f_pos, fm.f_mom, fm.cr_pos, fm.cr_mom)
        lines.append(st.label + "," + ",".join(f"{x:.4f}" for x in cells))
    return "\n".join(lines) + "\n"


def emit_table1(path: str) -> None:
    """Write table1_text to a file."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(table1_text())


def emit_plot_data(rows: list[SweepRow], directory: str) -> None:
    """Write one (r0, quantity) two-column .dat file per state and quantity."""
    if not rows:
        raise ValueError("refusing to write plot data for an empty sweep")
    os.makedirs(directory, exist_ok=True)
    states = sorted({(row.n, row.m) for row in rows})
    for stem, attr in PLOT_QUANTITIES:
        for n, m in states:
            picked = [row for row in rows if (row.n, row.m) == (n, m)]
            lines = [f"# r0  {stem}  state n={n} m={m}"]
            for row in picked:
                if attr is None:
                    value = (
                        None
                        if row.f_pos is None or row.f_mom is None
                        else row.f_pos * row.f_mom
                    )
                else:
                    value = getattr(row, attr)
                if value is None:
                    continue
                lines.append(f"{row.r0:.17e} {value:.17e}")
            name = os.path.join(directory, f"{stem}_n{n}m{m}.dat")
            with open(name, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")


def read_config_file(path: str) -> dict[str, str]:
    """Parse key=value lines; blank lines and # comments are skipped."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def parse_states(text: str) -> tuple[tuple[int, int], ...]:
    """Parse a state list like '1,0;2,0;2,1;3,2'."""
    states = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad state {chunk!r}, expected 'n,m'")
        states.append((int(parts[0]), int(parts[1])))
    if not states:
        raise ValueError("states list must not be empty")
    return tuple(states)


_BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def config_from(
    file_values: dict[str, str] | None, flag_values: dict[str, object]
) -> SweepConfig:
    """Merge config-file values and CLI flag values; flags win."""
    merged: dict[str, object] = {}
    converters = {
        "states": parse_states,
        "r0_min": float,
        "r0_max": float,
        "points": int,
        "spacing": str,
        "quadrature_order": int,
        "p_tail_tolerance": float,
        "output_path": str,
        "emit_plot_data": lambda s: _parse_bool(s),
    }
    for key, raw in (file_values or {}).items():
        if key not in converters:
            raise ValueError(f"unknown config key {key!r}")
        merged[key] = converters[key](raw)
    for key, value in flag_values.items():
        if value is not None:
            merged[key] = value
    return SweepConfig(**merged)


def _parse_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError:
        raise ValueError(f"expected a boolean word, got {text!r}") from None


def config_echo(cfg: SweepConfig, jobs: int) -> str:
    """Render the resolved configuration as diff-friendly key=value lines."""
    states = ";".join(f"{n},{m}" for n, m in cfg.states)
    pairs = [
        ("states", states),
        ("r0_min", repr(cfg.r0_min)),
        ("r0_max", repr(cfg.r0_max)),
        ("points", str(cfg.points)),
        ("spacing", cfg.spacing),
        ("quadrature_order", str(cfg.quadrature_order)),
        ("p_tail_tolerance", repr(cfg.p_tail_tolerance)),
        ("output_path", cfg.output_path),
        ("emit_plot_data", "true" if cfg.emit_plot_data else "false"),
        ("jobs", str(jobs)),
    ]
    return "\n".join(f"{k}={v}" for k, v in pairs) + "\n"
