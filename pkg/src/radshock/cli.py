"""Command-line front end: ``radshock solve | classify | sweep``."""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import EXIT_OK, InvalidConfig, RadShockError
from .gasdynamics import GasParams, RadiationParams, build_shock
from .phaseplane import DEFAULT_ROOT_TOL, DEFAULT_TOL, DEFAULT_TOL_CONNECT
from .reduction import ReducedSystem, classify, reduce_hamer, reduce_radhydro
from .solver import Solution, Tolerances, solve

PROFILE_COLUMNS = ("xi", "x", "y", "rho", "u", "theta", "n", "m")
RADHYDRO_KEYS = ("gamma", "R", "rho_minus", "Uc", "delta", "c", "sigma_s", "tau")
HAMER_KEYS = ("u_minus", "u_plus")


@dataclass(frozen=True)
class RunConfig:
    model: str = "radhydro"
    gamma: float = 5.0 / 3.0
    R: float = 8.31
    rho_minus: float = 0.1
    Uc: float | None = None
    delta: float | None = None
    c: float = 0.0
    u_minus: float | None = None
    u_plus: float | None = None
    sigma: float = 1.0
    sigma_s: float = 1.0
    tau: float = 1.0
    alpha: float = 2.0
    tol_int: float = DEFAULT_TOL
    tol_match: float = DEFAULT_ROOT_TOL
    tol_connect: float = DEFAULT_TOL_CONNECT
    zeta_max: float | None = None
    out: str | None = None
    format: str | None = None  # csv for solve and sweep, json for classify

    def validate(self, explicit: set[str] = frozenset(), swept: set[str] = frozenset()) -> "RunConfig":
        """Check the model groups; ``explicit`` are keys the user set, ``swept`` come from sweep axes."""
        if self.model not in ("radhydro", "hamer"):
            raise InvalidConfig(f"model must be 'radhydro' or 'hamer', got {self.model!r}")
        if self.format not in (None, "csv", "json"):
            raise InvalidConfig(f"format must be 'csv' or 'json', got {self.format!r}")
        if self.model == "radhydro":
            stray = [k for k in HAMER_KEYS if getattr(self, k) is not None or k in swept]
            missing = [k for k in ("Uc", "delta") if getattr(self, k) is None and k not in swept]
        else:
            stray = [k for k in RADHYDRO_KEYS if k in explicit or k in swept]
            missing = [k for k in HAMER_KEYS if getattr(self, k) is None and k not in swept]
        if stray:
            raise InvalidConfig(f"parameters {stray} do not belong to model {self.model!r}")
        if missing:
            raise InvalidConfig(f"model {self.model!r} requires {missing}")
        return self

    def tolerances(self) -> Tolerances:
        try:
            return Tolerances(self.tol_int, self.tol_match, self.tol_connect)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None

    def system(self) -> ReducedSystem:
        if self.model == "hamer":
            return reduce_hamer(self.u_minus, self.u_plus, self.sigma, self.alpha)
        gas = GasParams(self.gamma, self.R)
        shock = build_shock(gas, self.rho_minus, self.Uc, self.delta, self.c)
        return reduce_radhydro(shock, RadiationParams(self.sigma, self.sigma_s, self.tau, self.alpha))

    def as_dict(self) -> dict:
        skip = {"out", "format"} | set(HAMER_KEYS if self.model == "radhydro" else RADHYDRO_KEYS)
        return {k: v for k, v in asdict(self).items() if v is not None and k not in skip}


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_STRING_KEYS = ("model", "out", "format")


def _canonical_key(key: str) -> str:
    k = key.strip().replace("-", "_")
    return {"U_c": "Uc", "uc": "Uc", "r": "R"}.get(k, k)


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment, keys mirror the flags."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = _canonical_key(key)
        if key == "workers":
            values[key] = _parse_int(value, f"{source}:{lineno}")
            continue
        if key not in _FIELD_TYPES:
            raise InvalidConfig(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = value if key in _STRING_KEYS else _parse_float(value, f"{source}:{lineno}")
    return values


def _parse_float(text: str, where: str) -> float:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return float(num) / float(den)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidConfig(f"{where}: not a number: {text!r}") from None


def _parse_int(text: str, where: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidConfig(f"{where}: not an integer: {text!r}") from None


def load_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config file {path!r}: {exc.strerror}") from None
    return parse_config_text(text, path)


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(obj):
    """Plain JSON types; NaN and infinities become null."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def profile_csv(cfg: RunConfig, sol: Solution) -> str:
    buf = io.StringIO()
    buf.write("# radshock profile\n")
    for k, v in cfg.as_dict().items():
        buf.write(f"# {k} = {fmt(v)}\n")
    conn = sol.orbit.connection
    buf.write(f"# connection = {conn.kind}\n")
    if conn.kind == "jump":
        buf.write(f"# x_left = {fmt(conn.x_left)}\n# x_right = {fmt(conn.x_right)}\n")
    buf.write(f"# y_c = {fmt(conn.y_c)}\n")
    buf.write(",".join(PROFILE_COLUMNS) + "\n")
    p = sol.profile
    cols = [getattr(p, c) for c in PROFILE_COLUMNS]
    for i in range(len(p.xi)):
        buf.write(",".join(fmt(col[i]) for col in cols) + "\n")
    return buf.getvalue()


def solution_summary(cfg: RunConfig, sol: Solution, with_profile: bool = False) -> dict:
    d = {"config": cfg.as_dict(), **sol.summary()}
    if with_profile:
        d["profile"] = {c: getattr(sol.profile, c) for c in PROFILE_COLUMNS}
    return d


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def summary_path(out: Path) -> Path:
    return out.with_name(out.stem + ".summary.json")


def cmd_solve(cfg: RunConfig) -> int:
    sol = solve(cfg.system(), cfg.tolerances(), zeta_max=cfg.zeta_max)
    if cfg.format == "json":
        text = dumps(solution_summary(cfg, sol, with_profile=True))
        if cfg.out:
            _write_atomic(Path(cfg.out), text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    csv_text = profile_csv(cfg, sol)
    summary = dumps(solution_summary(cfg, sol))
    if cfg.out:
        out = Path(cfg.out)
        _write_atomic(out, csv_text)
        _write_atomic(summary_path(out), summary)
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    report = classify(cfg.system()).as_dict()
    if cfg.format == "csv":
        keys = sorted(report)
        text = ",".join(keys) + "\n" + ",".join(
            fmt(report[k]) if not isinstance(report[k], list) else ";".join(fmt(v) for v in report[k])
            for k in keys
        ) + "\n"
    else:
        text = dumps(report)
    if cfg.out:
        _write_atomic(Path(cfg.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def values(self) -> list[float]:
        # 15 significant digits keep grid points such as 0.8 exact
        return [float(f"{v:.15g}") for v in np.linspace(self.lo, self.hi, self.count)]


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[Axis, ...]
    base: RunConfig
    solve: bool = False

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise InvalidConfig("a sweep needs one or two axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise InvalidConfig(f"duplicate sweep axis in {names}")
        for a in self.axes:
            if a.count < 2:
                raise InvalidConfig(f"axis {a.name!r} needs at least 2 points, got {a.count}")
            if not a.lo < a.hi:
                raise InvalidConfig(f"axis {a.name!r} needs min < max")
        if "delta" in names:
            a = self.axes[names.index("delta")]
            gammas = [self.base.gamma]
            if "gamma" in names:
                g_axis = self.axes[names.index("gamma")]
                gammas = [g_axis.lo, g_axis.hi]
            if not (a.lo > 0.0 and all(a.hi < 2.0 / g for g in gammas)):
                raise InvalidConfig(f"delta range [{a.lo}, {a.hi}] must lie inside (0, 2/gamma)")

    def points(self) -> list[dict]:
        if len(self.axes) == 1:
            a = self.axes[0]
            return [{a.name: v} for v in a.values()]
        a, b = self.axes
        return [{a.name: va, b.name: vb} for va in a.values() for vb in b.values()]


def parse_axis(text: str) -> Axis:
    """``name=min:max:count``"""
    try:
        name, rng = text.split("=", 1)
        lo, hi, count = rng.split(":")
        name = _canonical_key(name)
        if name not in _FIELD_TYPES or name in _STRING_KEYS or name.startswith("tol") or name == "zeta_max":
            raise InvalidConfig(f"cannot sweep over {name!r}")
        return Axis(name, _parse_float(lo, "axis"), _parse_float(hi, "axis"), _parse_int(count, "axis"))
    except ValueError:
        raise InvalidConfig(f"axis must look like name=min:max:count, got {text!r}") from None


def regime_label(report, spike_present: bool | None, jump: bool) -> str:
    if spike_present is None:
        return "jump" if jump else "continuous"
    shape = "nonmonotone" if spike_present else "monotone"
    return f"{shape}-{'jump' if jump else 'continuous'}"


SWEEP_RESULT_COLUMNS = (
    "predicted_regime", "forced_jump_by_G0", "spiral", "spike_predicted", "nu", "G_at_0", "G_prime_at_0",
    "solved_regime", "connection", "y_c", "x_left", "x_right", "theta_peak", "spike_location",
    "max_ode_residual", "error",
)


def sweep_point(base: RunConfig, point: dict, do_solve: bool) -> dict:
    row = dict(point)
    try:
        cfg = replace(base, **point)
        rs = cfg.system()
        rep = classify(rs)
        row.update(
            predicted_regime=regime_label(rep, rep.spike_predicted, rep.jump_predicted),
            forced_jump_by_G0=rep.forced_jump_by_G0,
            spiral=rep.spiral,
            spike_predicted=rep.spike_predicted,
            nu=rep.nu,
            G_at_0=rep.G_at_0,
            G_prime_at_0=rep.G_prime_at_0,
        )
        if do_solve:
            sol = solve(rs, cfg.tolerances(), zeta_max=cfg.zeta_max)
            conn = sol.orbit.connection
            spike = sol.spike
            row.update(
                solved_regime=regime_label(rep, spike.present if spike else None, sol.is_jump),
                connection=conn.kind,
                y_c=conn.y_c,
                x_left=conn.x_left,
                x_right=conn.x_right,
                theta_peak=spike.theta_peak if spike else None,
                spike_location=spike.location if spike else None,
                max_ode_residual=sol.residuals.max_ode_residual,
            )
    except RadShockError as exc:
        row["error"] = exc.code
    return row


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[dict]:
    pts = spec.points()
    if workers <= 1:
        return [sweep_point(spec.base, p, spec.solve) for p in pts]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        # map preserves submission order, so rows stay axis-major
        return list(ex.map(sweep_point, [spec.base] * len(pts), pts, [spec.solve] * len(pts)))


def sweep_csv(spec: SweepSpec, rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write("# radshock sweep\n")
    for k, v in spec.base.as_dict().items():
        if k not in [a.name for a in spec.axes]:
            buf.write(f"# {k} = {fmt(v)}\n")
    for a in spec.axes:
        buf.write(f"# axis {a.name} = {fmt(a.lo)}:{fmt(a.hi)}:{a.count}\n")
    cols = [a.name for a in spec.axes] + list(SWEEP_RESULT_COLUMNS)
    buf.write(",".join(cols) + "\n")
    for r in rows:
        buf.write(",".join(fmt(r.get(c)) for c in cols) + "\n")
    return buf.getvalue()


def cmd_sweep(spec: SweepSpec, workers: int = 1) -> int:
    rows = run_sweep(spec, workers)
    cfg = spec.base
    if cfg.format == "json":
        text = dumps({"config": cfg.as_dict(), "axes": [asdict(a) for a in spec.axes], "rows": rows})
    else:
        text = sweep_csv(spec, rows)
    if cfg.out:
        _write_atomic(Path(cfg.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="flat key = value file; flags override it")
    common.add_argument("--model", choices=("radhydro", "hamer"))
    common.add_argument("--gamma", type=float)
    common.add_argument("--R", type=float, dest="R")
    common.add_argument("--rho-minus", type=float, dest="rho_minus")
    common.add_argument("--Uc", type=float, dest="Uc")
    common.add_argument("--delta", type=float)
    common.add_argument("--c", type=float, dest="c")
    common.add_argument("--u-minus", type=float, dest="u_minus")
    common.add_argument("--u-plus", type=float, dest="u_plus")
    common.add_argument("--sigma", type=float)
    common.add_argument("--sigma-s", type=float, dest="sigma_s")
    common.add_argument("--tau", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--tol-int", type=float, dest="tol_int")
    common.add_argument("--tol-match", type=float, dest="tol_match")
    common.add_argument("--zeta-max", type=float, dest="zeta_max")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--workers", type=int, metavar="N")

    parser = argparse.ArgumentParser(prog="radshock", description="Radiative shock profiles via planar heteroclinic orbits.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="compute one profile (CSV + JSON summary)")
    sub.add_parser("classify", parents=[common], help="closed-form regime report, no integration")
    sw = sub.add_parser("sweep", parents=[common], help="regime map over one or two parameter axes")
    sw.add_argument("--axis", action="append", default=[], metavar="NAME=MIN:MAX:COUNT",
                    help="sweep axis, may be given twice")
    sw.add_argument("--solve", action="store_true", help="also solve every grid point")
    return parser


def config_from_args(args: argparse.Namespace) -> tuple[RunConfig, int, set[str]]:
    """Merge the config file and the flags (flags win); also return the keys set explicitly."""
    values = load_config_file(args.config) if args.config else {}
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    if getattr(args, "workers", None) is not None:
        values["workers"] = args.workers
    workers = int(values.pop("workers", 1))
    if workers < 1:
        raise InvalidConfig(f"workers must be at least 1, got {workers}")
    return RunConfig(**values), workers, set(values)


def _report_error(exc: RadShockError) -> int:
    sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
    return exc.exit_code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, workers, explicit = config_from_args(args)
        if args.command == "sweep":
            axes = tuple(parse_axis(a) for a in args.axis)
            cfg.validate(explicit, swept={a.name for a in axes})
            return cmd_sweep(SweepSpec(axes, cfg, solve=args.solve), workers)
        cfg.validate(explicit)
        if args.command == "classify":
            return cmd_classify(cfg)
        return cmd_solve(cfg)
    except RadShockError as exc:
        return _report_error(exc)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
