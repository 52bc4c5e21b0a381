"""Branch and profile persistence plus plot-data export.

Branches are JSON-lines files (one record per converged state, append
friendly, resumable); field data goes to CSV.  All numeric text is written
through ``repr``-style shortest round-trip formatting, so values reload
bit-exactly.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .babenko import Diagnostics, WaveState, diagnose, physical_surface
from .continuation import BranchEntry, WaveBranch
from .fits import SingularityFit, _window_mask
from .grids import Grid, PeriodicProfile, make_grid, profile_from_cosines
from .operators import DepthMode

__all__ = [
    "BranchParseError",
    "write_profile_csv",
    "read_profile_csv",
    "store_branch",
    "append_branch_entry",
    "load_branch",
    "export_plot_data",
    "export_fit_csv",
]


class BranchParseError(ValueError):
    """A branch file line failed to parse; the message names the line."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def write_profile_csv(profile: PeriodicProfile, path: str | os.PathLike) -> None:
    """Write a profile as CSV with header ``u,value`` at full precision."""
    lines = ["u,value"]
    for u, v in zip(profile.grid.points, profile.values):
        lines.append(f"{_fmt(u)},{_fmt(v)}")
    _atomic_write(Path(path), "\n".join(lines) + "\n")


def read_profile_csv(path: str | os.PathLike) -> PeriodicProfile:
    """Read a profile CSV back; the sample points must form a staggered grid."""
    rows = Path(path).read_text().strip().splitlines()
    if not rows or rows[0].strip() != "u,value":
        raise ValueError(f"{path}: expected header 'u,value'")
    data = np.array([[float(tok) for tok in row.split(",")] for row in rows[1:]])
    grid = make_grid(len(data))
    if not np.allclose(data[:, 0], grid.points, atol=1e-12, rtol=0.0):
        raise ValueError(f"{path}: sample points are not the staggered grid")
    return PeriodicProfile(grid, data[:, 1])


_REQUIRED_FIELDS = ("s", "c", "N", "mode", "cos_coeffs", "residual_norm",
                    "mean_zero_value", "crest_gap")


def _record_of(entry: BranchEntry) -> dict:
    state = entry.state
    return {
        "s": entry.height,
        "c": state.speed,
        "N": state.grid.n,
        "mode": state.mode.token(),
        "cos_coeffs": list(state.profile.cosine_coeffs()),
        "residual_norm": entry.diagnostics.residual_norm,
        "mean_zero_value": entry.diagnostics.mean_zero_value,
        "crest_gap": entry.diagnostics.crest_gap,
    }


def _entry_of(record: dict, lineno: int) -> BranchEntry:
    for key in _REQUIRED_FIELDS:
        if key not in record:
            raise BranchParseError(f"line {lineno}: missing field {key!r}")
    try:
        n = int(record["N"])
        mode = DepthMode.from_token(str(record["mode"]))
        coeffs = np.asarray(record["cos_coeffs"], dtype=float)
        profile = profile_from_cosines(make_grid(n), coeffs)
        state = WaveState(profile, float(record["c"]), mode)
    except (ValueError, TypeError) as exc:
        raise BranchParseError(f"line {lineno}: {exc}") from exc
    tail = diagnose(state).tail_fraction  # not stored; deterministic to recompute
    diag = Diagnostics(
        residual_norm=float(record["residual_norm"]),
        mean_zero_value=float(record["mean_zero_value"]),
        crest_gap=float(record["crest_gap"]),
        tail_fraction=tail,
    )
    return BranchEntry(float(record["s"]), state, diag)


def _dump_record(entry: BranchEntry) -> str:
    return json.dumps(_record_of(entry))


def store_branch(branch: WaveBranch, path: str | os.PathLike) -> None:
    """Write a whole branch as JSON lines (atomic replace)."""
    _atomic_write(
        Path(path), "".join(_dump_record(e) + "\n" for e in branch.entries)
    )


def append_branch_entry(entry: BranchEntry, path: str | os.PathLike) -> None:
    """Append one record to an existing branch file."""
    with open(path, "a") as fh:
        fh.write(_dump_record(entry) + "\n")


def load_branch(path: str | os.PathLike) -> WaveBranch:
    """Load a JSON-lines branch file; an empty file is an empty branch."""
    branch = WaveBranch()
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise BranchParseError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
        branch.entries.append(_entry_of(record, lineno))
    heights = branch.heights()
    if len(heights) > 1 and np.any(np.diff(heights) <= 0):
        raise BranchParseError("branch heights are not strictly increasing")
    return branch


def export_plot_data(branch: WaveBranch, out_dir: str | os.PathLike) -> list[Path]:
    """Write per-state profile (u, eta) and surface (x, y) CSV files.

    Files are index-stamped profile_###.csv / surface_###.csv in branch
    order; returns the paths written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for i, entry in enumerate(branch.entries):
        p_path = out / f"profile_{i:03d}.csv"
        write_profile_csv(entry.state.profile, p_path)
        written.append(p_path)
        if entry.state.mode.kind == "infinite":
            surf = physical_surface(entry.state)
            s_path = out / f"surface_{i:03d}.csv"
            lines = ["x,y"]
            for x, y in zip(surf.x, surf.y):
                lines.append(f"{_fmt(x)},{_fmt(y)}")
            _atomic_write(s_path, "\n".join(lines) + "\n")
            written.append(s_path)
    return written


def export_fit_csv(
    profile: PeriodicProfile,
    c: float,
    fit: SingularityFit,
    path: str | os.PathLike,
) -> None:
    """Write the fit comparison (u, deviation, model, residual) as CSV.

    deviation and model are in linear space; the residual column is the
    log-space misfit log(deviation_corrected) - log(model), whose rms
    equals the fit's rms_residual.
    """
    u_all = profile.grid.points
    mask = _window_mask(u_all, fit.window)
    u = np.abs(u_all[mask])
    dev = 0.5 * c**2 - profile.values[mask]
    model = fit.A * u**fit.beta
    corrected = dev.copy()
    if fit.B is not None and fit.mu is not None:
        corrected = dev - fit.B * u**fit.mu
    residual = np.log(corrected) - np.log(model)
    lines = ["u,deviation,model,residual"]
    for row in zip(u_all[mask], dev, model, residual):
        lines.append(",".join(_fmt(v) for v in row))
    _atomic_write(Path(path), "\n".join(lines) + "\n")
