"""Deterministic parameter sweeps producing the figure datasets as CSV.

A SweepPlan fixes one quantity and the grids; ``run`` writes one CSV per
(material, model, gamma) combination plus a plain-text manifest.  Rows are
computed in a fixed order, so re-running an identical plan reproduces the
CSV bodies byte for byte.  Point failures are recorded in the manifest and
the sweep continues.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .dielectric import build_tensor, eps_zz
from .estructure import ef_ratio, film_state
from .lifshitz import force, isotropic_slab, slab_from_tensor
from .materials import Material, derive_bulk

QUANTITIES = ("EF_ratio", "eps_zz0", "delta_P", "delta_D", "force")
MODELS = ("FWM", "IWM", "PBM")


@dataclass(frozen=True)
class SweepPlan:
    """One quantity swept over materials, confinement models and grids.

    For EF_ratio and eps_zz0 the abscissa is the dimensionless x = kF*D/pi
    (x_grid); the force quantities walk the product D_grid x ell_grid.
    gammas=None lets each material bring its own preset relaxation rates
    (plus gamma=0); an explicitly empty tuple is rejected for delta_D.
    """

    quantity: str
    materials: tuple[Material, ...]
    models: tuple[str, ...]
    output_dir: str = "."
    D_grid: tuple[float, ...] = ()
    ell_grid: tuple[float, ...] = ()
    x_grid: tuple[float, ...] = ()
    gammas: tuple[float, ...] | None = (0.0,)
    force_tol: float = 1e-7
    omega_P_mode: str = "sqrt"
    engine: str = "legendre"
    tag: str = ""
    workers: int = 1

    def validate(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}, expected one of {QUANTITIES}")
        if not self.materials:
            raise ValueError("plan needs at least one material")
        for model in self.models or ():
            if model not in MODELS:
                raise ValueError(f"unknown confinement model {model!r}, expected one of {MODELS}")
        if not self.models:
            raise ValueError("plan needs at least one confinement model")
        if self.quantity in ("EF_ratio", "eps_zz0"):
            _check_grid("x_grid", self.x_grid)
        else:
            _check_grid("D_grid", self.D_grid)
            _check_grid("ell_grid", self.ell_grid)
        if self.quantity == "delta_D":
            if self.gammas is not None and len(self.gammas) == 0:
                raise ValueError("delta_D needs a non-empty gamma set (or None for presets)")
        if self.gammas is not None and any(g < 0.0 for g in self.gammas):
            raise ValueError("relaxation frequencies must be >= 0")
        if self.force_tol <= 0.0:
            raise ValueError("force_tol must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _check_grid(name: str, grid: tuple[float, ...]) -> None:
    if not grid:
        raise ValueError(f"{name} must not be empty for this quantity")
    arr = np.asarray(grid, dtype=float)
    if np.any(arr <= 0.0) or np.any(np.diff(arr) <= 0.0):
        raise ValueError(f"{name} must be positive and strictly increasing")


@dataclass(frozen=True)
class RunReport:
    files: tuple[Path, ...]
    failures: tuple[str, ...]
    wall_time_s: float
    manifest: Path


def _resolved_gammas(plan: SweepPlan, material: Material) -> tuple[float, ...]:
    if plan.quantity != "delta_D":
        return (0.0,)
    if plan.gammas is not None:
        return plan.gammas
    return (0.0,) + material.relaxation_frequencies


def _group_key(plan: SweepPlan, material: Material, model: str, gamma: float) -> str:
    parts = [plan.tag or plan.quantity]
    if plan.tag:
        parts.append(plan.quantity)
    parts += [material.name, model]
    if plan.quantity == "delta_D":
        parts.append(f"gamma{gamma:.6g}")
    return "_".join(parts)


def _group_rows(plan: SweepPlan, material: Material, model: str, gamma: float):
    """Rows and failure notes for one output file; importable for workers."""
    rows: list[tuple] = []
    failures: list[str] = []
    bulk = derive_bulk(material)
    if plan.quantity in ("EF_ratio", "eps_zz0"):
        for x in plan.x_grid:
            d_film = x * math.pi / bulk.kF_bulk
            try:
                state = film_state(material, model, d_film)
                if plan.quantity == "EF_ratio":
                    rows.append((d_film, x, ef_ratio(state, bulk), state.m0))
                else:
                    tensor = build_tensor(state, omega_P_mode=plan.omega_P_mode)
                    e0 = eps_zz(tensor, 0.0)
                    rows.append((d_film, x, e0, e0 / d_film**2))
            except Exception as exc:  # noqa: BLE001 - recorded, sweep continues
                failures.append(f"{material.name} {model} D={d_film!r}: {exc}")
        return rows, failures

    for d_film in plan.D_grid:
        try:
            state = film_state(material, model, d_film)
            tensor = build_tensor(state, omega_P_mode=plan.omega_P_mode, gamma=gamma)
            slab_q = slab_from_tensor(tensor)
            slab_ref = isotropic_slab(bulk, gamma, d_film)
        except Exception as exc:  # noqa: BLE001
            failures.append(f"{material.name} {model} D={d_film!r} gamma={gamma!r}: {exc}")
            continue
        for ell in plan.ell_grid:
            try:
                f_q = force(slab_q, ell, tol=plan.force_tol, engine=plan.engine)
                if plan.quantity == "force":
                    rows.append((d_film, ell, f_q.pressure, f_q.abs_error_estimate, f_q.evaluations))
                    continue
                f_ref = force(slab_ref, ell, tol=plan.force_tol, engine=plan.engine)
                delta = (f_ref.pressure - f_q.pressure) / f_ref.pressure
                rows.append((d_film, ell, gamma, f_ref.pressure, f_q.pressure, delta))
            except Exception as exc:  # noqa: BLE001
                failures.append(
                    f"{material.name} {model} D={d_film!r} ell={ell!r} gamma={gamma!r}: {exc}")
    return rows, failures


_HEADERS = {
    "EF_ratio": ("D_nm,kFD_over_pi,EF_over_EFB,m0",
                 "Fermi level over its bulk value, from the well bottom"),
    "eps_zz0": ("D_nm,kFD_over_pi,eps_zz0,eps_zz0_over_D2",
                "static out-of-plane permittivity"),
    "delta_P": ("D_nm,ell_nm,gamma_rad_s,F_reference_Pa,F_quantized_Pa,delta",
                "relative force reduction, dissipationless response"),
    "delta_D": ("D_nm,ell_nm,gamma_rad_s,F_reference_Pa,F_quantized_Pa,delta",
                "relative force reduction with Drude relaxation"),
    "force": ("D_nm,ell_nm,pressure_Pa,abs_error_Pa,evaluations",
              "Casimir pressure of the quantized film"),
}


def _write_group_csv(path: Path, plan: SweepPlan, material: Material, model: str,
                     gamma: float, rows) -> None:
    header, title = _HEADERS[plan.quantity]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {title}\n")
        fh.write(f"# filmcasimir {__version__}; material={material.name} model={model}")
        if plan.quantity == "delta_D":
            fh.write(f" gamma={float(gamma)!r} rad/s")
        fh.write("\n")
        fh.write(f"# omega_P_mode={plan.omega_P_mode} force_tol={plan.force_tol!r} engine={plan.engine}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in row) + "\n")


def run(plan: SweepPlan) -> RunReport:
    """Execute the plan; returns the written files and recorded failures."""
    plan.validate()
    t0 = time.perf_counter()
    out = Path(plan.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    groups = [(material, model, gamma)
              for material in plan.materials
              for model in plan.models
              for gamma in _resolved_gammas(plan, material)]

    if plan.workers > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            results = list(pool.map(_group_rows, *zip(*[(plan, m, mod, g) for m, mod, g in groups])))
    else:
        results = [_group_rows(plan, m, mod, g) for m, mod, g in groups]

    files: list[Path] = []
    failures: list[str] = []
    for (material, model, gamma), (rows, fails) in zip(groups, results):
        path = out / f"{_group_key(plan, material, model, gamma)}.csv"
        _write_group_csv(path, plan, material, model, gamma, rows)
        files.append(path)
        failures.extend(fails)

    wall = time.perf_counter() - t0
    manifest = out / f"{plan.tag or plan.quantity}_manifest.txt"
    with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"library_version={__version__}\n")
        fh.write(f"quantity={plan.quantity}\n")
        fh.write(f"materials={','.join(m.name for m in plan.materials)}\n")
        fh.write(f"models={','.join(plan.models)}\n")
        fh.write(f"D_grid={','.join(repr(float(v)) for v in plan.D_grid)}\n")
        fh.write(f"ell_grid={','.join(repr(float(v)) for v in plan.ell_grid)}\n")
        fh.write(f"x_grid={','.join(repr(float(v)) for v in plan.x_grid)}\n")
        gam = "presets" if plan.gammas is None else ",".join(repr(float(v)) for v in plan.gammas)
        fh.write(f"gammas={gam}\n")
        fh.write(f"force_tol={plan.force_tol!r}\n")
        fh.write(f"omega_P_mode={plan.omega_P_mode}\n")
        fh.write(f"engine={plan.engine}\n")
        fh.write(f"workers={plan.workers}\n")
        fh.write(f"files={len(files)}\n")
        fh.write(f"failures={len(failures)}\n")
        fh.write(f"wall_time_s={wall:.3f}\n")
        for note in failures:
            fh.write(f"failure={note}\n")

    return RunReport(files=tuple(files), failures=tuple(failures), wall_time_s=wall,
                     manifest=manifest)


def _logspace(lo: float, hi: float, n: int) -> tuple[float, ...]:
    return tuple(float(v) for v in np.geomspace(lo, hi, n))


FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9")

# the relaxation figures 8 and 9 are published for silver only
_FIGURE_MATERIALS = {"fig8": ("Ag",), "fig9": ("Ag",)}


def figure_default_materials(figure: str) -> tuple[str, ...]:
    return _FIGURE_MATERIALS.get(figure, ("Al", "Ag", "Cs"))


def figure_plan(figure: str, materials: tuple[Material, ...] | None = None,
                output_dir: str = ".", n_points: int | None = None,
                **overrides) -> SweepPlan:
    """Preset plan for one of the published-figure datasets (fig2..fig9)."""
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}, expected one of {FIGURES}")
    if materials is None:
        from .materials import PRESETS

        materials = tuple(PRESETS[name] for name in figure_default_materials(figure))
    pts = lambda default: n_points or default

    if figure == "fig2":
        plan = SweepPlan("EF_ratio", materials, ("FWM", "IWM"),
                         x_grid=_logspace(0.5, 12.0, pts(80)))
    elif figure == "fig3":
        plan = SweepPlan("eps_zz0", materials, ("FWM", "IWM", "PBM"),
                         x_grid=_logspace(0.5, 40.0, pts(56)))
    elif figure in ("fig4", "fig5"):
        d_film = 1.0 if figure == "fig4" else 5.0
        plan = SweepPlan("delta_P", materials, ("FWM", "IWM", "PBM"),
                         D_grid=(d_film,), ell_grid=_logspace(1.0, 100.0, pts(60)))
    elif figure in ("fig6", "fig7"):
        d_film = 1.0 if figure == "fig6" else 5.0
        plan = SweepPlan("delta_D", materials, ("FWM",), gammas=None,
                         D_grid=(d_film,), ell_grid=_logspace(1.0, 100.0, pts(60)))
    elif figure == "fig8":
        plan = SweepPlan("delta_D", materials, ("FWM", "IWM", "PBM"), gammas=(1e14,),
                         D_grid=(5.0,), ell_grid=_logspace(1.0, 100.0, pts(60)))
    else:  # fig9
        plan = SweepPlan("delta_D", materials, ("FWM",), gammas=None,
                         D_grid=_logspace(1.0, 50.0, pts(40)), ell_grid=(5.0,))
    plan = replace(plan, output_dir=output_dir, tag=figure, **overrides)
    plan.validate()
    return plan
