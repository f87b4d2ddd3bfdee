"""Command-line front end: spectra, verification runs, and data exports."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .catalog import (
    ClassId,
    ENERGY_FORMS,
    PARAMETER_CONSTRAINTS,
    POTENTIAL_NAMES,
    W_FORMS,
    bound_state_count,
    closed_form_energy,
    make_spec,
)
from .eigenfunctions import (
    closed_form_eigenfunction,
    compare_eigenfunctions,
)
from .errors import NotBound, ShapeinvError, UnsupportedClass
from .grid import Grid
from .invariance import check_spec
from .ladder import apply_lowering, excited_state_via_ladder, groundstate
from .presets import ALT_PARAMS, PRESETS, preset_grid, preset_spec
from .qhj import (
    fixed_pole_set,
    quantization_equation,
    residue_solutions,
    solve_energy_qhj,
    spurious_multiplier,
)
from .qmf import audit
from .schrodinger import numeric_energy, numerov_wavefunction

QHJ_TOLERANCE = 1e-12
NUMERIC_TOLERANCE = 1e-6

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    class_id: str
    a: float | None = None
    B: float | None = None
    omega: float | None = None
    hbar: float = 1.0
    n_max: int = 3
    grid: str | None = None
    tol: float = NUMERIC_TOLERANCE
    format: str = "csv"
    out: str | None = None

    def to_dict(self):
        d = {"class": self.class_id}
        for key in ("a", "B", "omega"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        d.update(hbar=self.hbar, n_max=self.n_max, tol=self.tol, format=self.format)
        if self.grid is not None:
            d["grid"] = self.grid
        if self.out is not None:
            d["out"] = self.out
        return d

    @classmethod
    def from_dict(cls, d):
        known = {"class", "a", "B", "omega", "hbar", "n_max", "grid", "tol", "format", "out"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(d)
        class_id = kw.pop("class")
        return cls(class_id=class_id, **kw)

    def build_spec(self):
        return make_spec(
            self.class_id, a=self.a, B=self.B, omega=self.omega, hbar=self.hbar
        )

    def build_grid(self):
        if self.grid is not None:
            return Grid.parse(self.grid)
        return preset_grid(self.class_id)


@dataclass
class SpectrumReport:
    config: RunConfig
    rows: list  # (n, E_closed, E_qhj, E_numeric, err_qhj, err_numeric)
    tolerances: dict = field(
        default_factory=lambda: {"qhj": QHJ_TOLERANCE, "numeric": NUMERIC_TOLERANCE}
    )

    @property
    def passed(self) -> bool:
        return all(
            err_q <= self.tolerances["qhj"] * max(1.0, abs(e_closed))
            and err_n <= self.tolerances["numeric"] * max(1.0, abs(e_closed))
            for (_, e_closed, _, _, err_q, err_n) in self.rows
        )

    def to_json_obj(self):
        return {
            "spec": self.config.to_dict(),
            "rows": [
                {
                    "n": n,
                    "E_closed": ec,
                    "E_qhj": eq,
                    "E_numeric": en,
                    "err_qhj_vs_closed": err_q,
                    "err_numeric_vs_closed": err_n,
                }
                for (n, ec, eq, en, err_q, err_n) in self.rows
            ],
            "tolerances": self.tolerances,
            "pass": self.passed,
        }


def _use_color():
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _status(ok):
    word = "PASS" if ok else "FAIL"
    if _use_color():
        return f"\033[32m{word}\033[0m" if ok else f"\033[31m{word}\033[0m"
    return word


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _fmt(x):
    """Shortest round-trip decimal for file output."""
    return repr(float(x))


# ---------------------------------------------------------------------------
# subcommands


def cmd_list(args):
    ids = [c.value for c in ClassId]
    if args.class_id is not None:
        if args.class_id not in ids:
            print(
                f"unknown class {args.class_id!r}; valid ids: {', '.join(ids)}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        ids = [args.class_id]
    header = f"{'class':<7}{'potential':<28}{'W(x; a)':<34}{'E_n':<49}constraints"
    print(header)
    print("-" * len(header))
    for cid_s in ids:
        cid = ClassId(cid_s)
        print(
            f"{cid.value:<7}{POTENTIAL_NAMES[cid]:<28}{W_FORMS[cid]:<34}"
            f"{ENERGY_FORMS[cid]:<49}{PARAMETER_CONSTRAINTS[cid]}"
        )
    return EXIT_OK


def _spectrum_report(config) -> SpectrumReport:
    spec = config.build_spec()
    grid = config.build_grid()
    rows = []
    for n in range(config.n_max + 1):
        e_closed = closed_form_energy(spec, n)
        e_qhj = solve_energy_qhj(spec, n, "closed_form").energy
        e_num = numeric_energy(spec, grid, n)
        rows.append(
            (n, e_closed, e_qhj, e_num, abs(e_qhj - e_closed), abs(e_num - e_closed))
        )
    report = SpectrumReport(config, rows)
    report.tolerances["numeric"] = config.tol
    return report


def _spectrum_csv(report):
    lines = ["n,E_closed,E_qhj,E_numeric,err_qhj_vs_closed,err_numeric_vs_closed"]
    for row in report.rows:
        n, *vals = row
        lines.append(",".join([str(n)] + [_fmt(v) for v in vals]))
    return "\n".join(lines) + "\n"


def cmd_spectrum(args):
    config = _merge_config(args)
    report = _spectrum_report(config)
    print(f"{config.class_id}: {POTENTIAL_NAMES[ClassId(config.class_id)]}")
    print(f"{'n':>3} {'E_closed':>14} {'E_qhj':>14} {'E_numeric':>14} {'err_qhj':>10} {'err_num':>10}")
    for n, ec, eq, en, err_q, err_n in report.rows:
        print(f"{n:>3} {ec:>14.6f} {eq:>14.6f} {en:>14.6f} {err_q:>10.2e} {err_n:>10.2e}")
    print(f"result: {_status(report.passed)}")
    if config.out:
        if config.format == "json":
            _write_text(config.out, json.dumps(report.to_json_obj(), indent=2) + "\n")
        else:
            _write_text(config.out, _spectrum_csv(report))
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def _verify_one(class_id, hbar, n_levels=2):
    """Run all verification layers for one class; yields (name, ok, detail)."""
    spec = preset_spec(class_id, hbar=hbar)
    grid = preset_grid(class_id)
    x = np.linspace(grid.x_min, grid.x_max, 2001)
    checks = []

    rep = check_spec(spec, x)
    checks.append(
        (
            "shape-invariance residuals",
            rep.passed,
            f"si={rep.sup_norm_si:.2e} pde={rep.sup_norm_pde1:.2e}",
        )
    )

    psi0 = groundstate(spec, grid)
    res = apply_lowering(spec, psi0)
    ann = float(np.sqrt(np.trapezoid(res * res, dx=grid.h)))
    e0 = numeric_energy(spec, grid, 0)
    ok = ann <= 1e-6 and abs(e0) <= 1e-6
    checks.append(("unbroken SUSY (A psi0 = 0, E0 = 0)", ok, f"|Apsi0|={ann:.2e} |E0|={abs(e0):.2e}"))

    count = bound_state_count(spec)
    iso_ok, iso_worst = True, 0.0
    for n in range(min(n_levels, count if math.isinf(count) else int(count))):
        e_plus = numeric_energy(spec, grid, n, which="plus")
        e_minus = numeric_energy(spec, grid, n + 1, which="minus")
        iso_worst = max(iso_worst, abs(e_plus - e_minus))
        iso_ok &= iso_worst <= 1e-6
    checks.append(("isospectrality of partners", iso_ok, f"max|dE|={iso_worst:.2e}"))

    route_ok, route_worst = True, 0.0
    n_top = int(min(3, count))
    for n in range(n_top + 1):
        ec = closed_form_energy(spec, n)
        eq = solve_energy_qhj(spec, n, "closed_form").energy
        en = numeric_energy(spec, grid, n)
        route_worst = max(
            route_worst,
            abs(eq - ec) / max(1.0, abs(ec)),
            abs(en - ec) / max(1.0, abs(ec)),
        )
    route_ok = route_worst <= 1e-6
    checks.append(("three-route spectrum agreement", route_ok, f"max rel err={route_worst:.2e}"))

    pa = audit(spec, n_top, grid)
    ok = (
        len(pa.node_locations) == n_top
        and pa.max_residue_error <= 0.05 * spec.hbar
        and pa.qmf_vs_W_tail_error <= 1e-4
    )
    checks.append(
        (
            "momentum-function pole audit",
            ok,
            f"nodes={len(pa.node_locations)}/{n_top} "
            f"res_err={pa.max_residue_error:.2e} tail={pa.qmf_vs_W_tail_error:.2e}",
        )
    )
    return checks


def cmd_verify(args):
    if args.all:
        ids = [c.value for c in ClassId]
    elif args.class_id is not None:
        ids = [args.class_id]
    else:
        print("verify: need --class ID or --all", file=sys.stderr)
        return EXIT_USAGE
    all_ok = True
    for cid in ids:
        try:
            if args.a is not None or args.B is not None or args.omega is not None:
                # explicit parameters replace the preset
                make_spec(cid, a=args.a, B=args.B, omega=args.omega, hbar=args.hbar)
                spec_override = True
            else:
                spec_override = False
            checks = (
                _verify_one_custom(cid, args)
                if spec_override
                else _verify_one(cid, args.hbar)
            )
        except ShapeinvError as exc:
            print(f"{cid}: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"{cid}: {POTENTIAL_NAMES[ClassId(cid)]}")
        for name, ok, detail in checks:
            all_ok &= ok
            print(f"  {_status(ok)}  {name:<38} {detail}")
    print(f"overall: {_status(all_ok)}")
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def _verify_one_custom(cid, args):
    spec = make_spec(cid, a=args.a, B=args.B, omega=args.omega, hbar=args.hbar)
    grid = preset_grid(cid)
    x = np.linspace(grid.x_min, grid.x_max, 2001)
    rep = check_spec(spec, x)
    checks = [
        (
            "shape-invariance residuals",
            rep.passed,
            f"si={rep.sup_norm_si:.2e} pde={rep.sup_norm_pde1:.2e}",
        )
    ]
    count = bound_state_count(spec)
    n_top = int(min(3, count))
    pa = audit(spec, n_top, grid)
    mean_res = (
        sum(pa.residue_estimates) / len(pa.residue_estimates)
        if pa.residue_estimates
        else -spec.hbar
    )
    ok = (
        len(pa.node_locations) == n_top
        and pa.max_residue_error <= 0.05 * spec.hbar
        and pa.qmf_vs_W_tail_error <= 1e-4
    )
    checks.append(
        (
            "momentum-function pole audit",
            ok,
            f"nodes={len(pa.node_locations)}/{n_top} mean_residue={mean_res:.4f} "
            f"tail={pa.qmf_vs_W_tail_error:.2e}",
        )
    )
    return checks


def _wavefunction_columns(config, n, routes):
    spec = config.build_spec()
    grid = config.build_grid()
    cols = {}
    if "ladder" in routes:
        cols["psi_ladder"] = excited_state_via_ladder(spec, grid, n).wavefunction
    if "closed" in routes:
        cols["psi_closed"] = closed_form_eigenfunction(spec, n, grid)
    if "numeric" in routes:
        energy = numeric_energy(spec, grid, n)
        cols["psi_numeric"] = numerov_wavefunction(spec, grid, energy)
    # align signs to the first column for plottable output
    names = list(cols)
    ref = cols[names[0]]
    for name in names[1:]:
        wf = cols[name]
        flipped = type(wf)(wf.grid, -wf.values, wf.energy, normalized=True)
        if compare_eigenfunctions(ref, flipped) < compare_eigenfunctions(ref, wf):
            cols[name] = flipped
    return grid, cols


def cmd_wavefunction(args):
    config = _merge_config(args)
    routes = [r.strip() for r in args.routes.split(",")] if args.routes else None
    if routes is None:
        routes = ["ladder", "numeric"]
        if config.class_id == "IIB2":
            routes.insert(1, "closed")
    grid, cols = _wavefunction_columns(config, args.n, routes)
    deltas = {}
    names = list(cols)
    for i, n1 in enumerate(names):
        for n2 in names[i + 1 :]:
            deltas[f"{n1}_vs_{n2}"] = compare_eigenfunctions(cols[n1], cols[n2])
    if config.out:
        if config.format == "json":
            obj = {
                "spec": config.to_dict(),
                "columns": {"x": [_fmt(v) for v in grid.x]}
                | {k: [_fmt(v) for v in wf.values] for k, wf in cols.items()},
                "pairwise_l2": deltas,
                "pass": all(d <= 1e-4 for d in deltas.values()),
            }
            _write_text(config.out, json.dumps(obj, indent=2) + "\n")
        else:
            lines = [",".join(["x"] + names)]
            for i in range(grid.n_points):
                lines.append(
                    ",".join(
                        [_fmt(grid.x[i])] + [_fmt(cols[k].values[i]) for k in names]
                    )
                )
            _write_text(config.out, "\n".join(lines) + "\n")
            sidecar = {
                "spec": config.to_dict(),
                "pairwise_l2": deltas,
                "pass": all(d <= 1e-4 for d in deltas.values()),
            }
            _write_text(config.out + ".meta.json", json.dumps(sidecar, indent=2) + "\n")
    print(f"{config.class_id} n={args.n} routes={','.join(names)}")
    for k, v in deltas.items():
        print(f"  L2 {k} = {v:.6f}")
    return EXIT_OK


def cmd_qhj(args):
    config = _merge_config(args)
    spec = config.build_spec()
    mult = spurious_multiplier(spec.class_id)
    print(f"{config.class_id}: {POTENTIAL_NAMES[ClassId(config.class_id)]}")
    if mult != 1.0:
        print(f"moving-pole multiplier: {mult:g} (spurious-pole doubling)")
    for n in range(config.n_max + 1):
        result = solve_energy_qhj(spec, n, "closed_form")
        print(f"n={n}  E={result.energy:.6f}  |Q(E)|={result.residual:.2e}")
        if args.show_residues:
            for rs in residue_solutions(spec, result.energy):
                print(
                    f"    {rs.pole.id:<18} var={rs.pole.variable:<3} "
                    f"weight={rs.pole.weight:g} b1={rs.b1:.6f} a0={rs.a0:.6f} "
                    f"a1={rs.a1:.6f} contribution={rs.contribution:.6f}"
                )
                print(f"      branch: {rs.branch}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing


def _merge_config(args) -> RunConfig:
    file_cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
    merged = dict(file_cfg)
    for key, attr in (
        ("class", "class_id"),
        ("a", "a"),
        ("B", "B"),
        ("omega", "omega"),
        ("hbar", "hbar"),
        ("n_max", "n_max"),
        ("grid", "grid"),
        ("tol", "tol"),
        ("format", "format"),
        ("out", "out"),
    ):
        val = getattr(args, attr, None)
        if val is not None:
            merged[key] = val
    if "class" not in merged:
        raise ValueError("missing potential class (use --class or a config file)")
    try:
        cid = ClassId(merged["class"])
    except ValueError:
        valid = ", ".join(c.value for c in ClassId)
        raise ValueError(
            f"unknown class {merged['class']!r}; valid ids: {valid}"
        ) from None
    for key, value in PRESETS[cid].params.items():
        merged.setdefault(key, value)
    if "hbar" not in merged:
        merged["hbar"] = 1.0
    return RunConfig.from_dict(merged)


def _add_common(p, with_config=True):
    p.add_argument("--class", dest="class_id", help="potential class id (e.g. IIB2)")
    p.add_argument("--a", type=float, help="superpotential parameter a")
    p.add_argument("--B", type=float, help="superpotential parameter B")
    p.add_argument("--omega", type=float, help="oscillator frequency")
    p.add_argument("--hbar", type=float, default=None, help="Planck constant (default 1)")
    p.add_argument("--n-max", dest="n_max", type=int, default=None, help="highest level")
    p.add_argument("--grid", help="solver grid MIN:MAX:POINTS")
    p.add_argument("--tol", type=float, default=None, help="numeric-route tolerance")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", help="output file path")
    if with_config:
        p.add_argument("--config", help="JSON config file (flags override)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shapeinv",
        description="Spectra of the ten conventional shape-invariant potentials "
        "by closed form, momentum-function residue algebra, and direct "
        "numerical solution.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="catalog of the ten potential classes")
    p.add_argument("--class", dest="class_id", default=None)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("spectrum", help="three-route spectrum comparison")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run all verification layers")
    p.add_argument("--all", action="store_true", help="verify every shipped preset")
    p.add_argument("--class", dest="class_id", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--hbar", type=float, default=1.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wavefunction", help="export eigenfunction columns")
    _add_common(p)
    p.add_argument("--n", type=int, default=0, help="level index")
    p.add_argument(
        "--routes", help="comma list from ladder,closed,numeric (default: available)"
    )
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("qhj", help="residue table and quantization energies")
    _add_common(p)
    p.add_argument("--show-residues", action="store_true")
    p.set_defaults(func=cmd_qhj)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n_max", None) is None and hasattr(args, "n_max"):
        args.n_max = 3
    try:
        return args.func(args)
    except (NotBound, UnsupportedClass, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ShapeinvError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
