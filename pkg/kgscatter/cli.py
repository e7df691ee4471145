"""
kgscatter 命令列工具。

    python -m kgscatter phase-shift --potential hellmann --mode rel \\
        --a 2 --b 1 --beta 0.2 --mass 1 --energy 1 --l 0
    python -m kgscatter sweep --job cases.json --workers 4
    python -m kgscatter table --id 4 --format text
    python -m kgscatter validate --suite all

Data (CSV/JSON) goes to stdout, logs and progress bars to stderr.
"""

import argparse
import cmath
import json
import logging
import os
import sys
from datetime import datetime
from multiprocessing import Pool
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from tqdm import tqdm

from . import __version__, config, paperdata, validation
from .errors import (
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_USAGE,
    DomainError,
    KGScatterError,
    UsageError,
    domain_status,
    exit_code_for,
)
from .model import Kinematics, Mode, PotentialKind, PotentialSpec, wave_number_squared
from .scattering import phase_shift, radial_wavefunction
from .specfun import ArgConvention
from .spectra import default_window, nr_levels, solve_rel_levels
from .utils import colorize, fmt, render, setup_logging

logger = logging.getLogger(__name__)

PHASE_COLUMNS = (
    "potential",
    "mode",
    "l",
    "a",
    "b",
    "beta",
    "mass_or_mu",
    "energy",
    "k_re",
    "k_im",
    "below_threshold",
    "delta",
    "convention",
)
BOUND_COLUMNS = ("potential", "mode", "n", "l", "E", "residual", "suspect_redundant")
WAVEFUNCTION_COLUMNS = ("r", "u_re", "u_im")
CHECK_COLUMNS = ("name", "passed", "measured", "threshold", "detail")

_CONVENTION_PATTERN = "^(" + "|".join(c.value for c in ArgConvention) + ")$"


class JobSpec(BaseModel):
    """One phase-shift case; a sweep when ``var`` is set. Keys mirror the CLI flags."""

    model_config = ConfigDict(extra="forbid")

    command: str = Field(default="sweep", pattern=r"^(phase-shift|sweep)$")
    potential: str
    mode: str = Field(default="rel", pattern=r"^(rel|nr)$")
    a: float = 0.0
    b: float = 0.0
    beta: Optional[float] = Field(default=None, gt=0)
    mass: float = Field(gt=0)
    energy: float
    hbar: float = Field(default=config.DEFAULT_HBAR, gt=0)
    l: List[int] = Field(default_factory=lambda: [0])
    var: Optional[str] = Field(default=None, pattern=r"^(beta|b)$")
    start: Optional[float] = None
    stop: Optional[float] = None
    count: int = Field(default=1, ge=1)
    scale: str = Field(default="linear", pattern=r"^(linear|log)$")
    format: Optional[str] = Field(default=None, pattern=r"^(csv|json)$")
    convention: str = Field(default=config.DEFAULT_CONVENTION, pattern=_CONVENTION_PATTERN)
    skip_degenerate: bool = False

    @field_validator("potential")
    @classmethod
    def _known_potential(cls, value):
        return PotentialKind.parse(value).value

    @field_validator("l", mode="before")
    @classmethod
    def _listify(cls, value):
        return [value] if isinstance(value, int) else value

    @field_validator("l")
    @classmethod
    def _nonnegative(cls, value):
        if not value or any(l < 0 for l in value):
            raise ValueError(f"l 必須為非負整數串列: {value}")
        return value

    @model_validator(mode="after")
    def _check_sweep(self):
        if self.var is None:
            if self.beta is None:
                raise ValueError("缺少 beta")
            return self
        if self.var != "beta" and self.beta is None:
            raise ValueError("缺少 beta")
        if self.start is None:
            raise ValueError(f"掃描 {self.var} 需要 start")
        if self.count > 1:
            if self.stop is None or not self.start < self.stop:
                raise ValueError(f"count > 1 時需要 start < stop，收到 {self.start}, {self.stop}")
        if self.scale == "log" and self.start <= 0:
            raise ValueError("log 掃描需要 start > 0")
        return self

    def sweep_values(self) -> List[float]:
        if self.var is None:
            return []
        if self.count == 1:
            return [float(self.start)]
        spacing = np.geomspace if self.scale == "log" else np.linspace
        return [float(v) for v in spacing(self.start, self.stop, self.count)]

    def cases(self) -> List[dict]:
        """Flat per-point parameter dicts in sweep order."""
        base = self.model_dump()
        if self.var is None:
            return [base]
        return [{**base, self.var: value} for value in self.sweep_values()]


def evaluate_point(case: dict, l: int) -> dict:
    """One phase-shift output row for a flat case dict."""
    spec = PotentialSpec(case["potential"], case["a"], case["b"], case["beta"])
    kin = Kinematics(case["mode"], case["mass"], case["energy"], case["hbar"])
    k_sq = wave_number_squared(spec, kin, l)
    k = cmath.sqrt(complex(k_sq, 0.0))
    row = {
        "potential": spec.kind.value,
        "mode": kin.mode.value,
        "l": l,
        "a": spec.a,
        "b": spec.b,
        "beta": spec.beta,
        "mass_or_mu": kin.mass,
        "energy": kin.energy,
        "k_re": k.real,
        "k_im": k.imag,
        "below_threshold": k_sq <= 0,
        "delta": None,
        "convention": ArgConvention.parse(case["convention"]).value,
    }
    try:
        row["delta"] = phase_shift(spec, kin, l, case["convention"]).delta
    except DomainError as e:
        if not case["skip_degenerate"]:
            raise
        logger.warning(f"⚠️ 略過 {spec.kind.value} l={l}: {e}")
        row["reason"] = domain_status(e)
    return row


def _evaluate_task(task):
    case, l = task
    return evaluate_point(case, l)


def run_jobs(jobs: List[JobSpec], workers: int = 1) -> List[dict]:
    """Rows for every (case, sweep point, l) in input order."""
    tasks = [(case, l) for job in jobs for case in job.cases() for l in job.l]
    rows = []
    with tqdm(
        total=len(tasks),
        desc="phase shifts",
        unit=" pt",
        file=sys.stderr,
        disable=not sys.stderr.isatty(),
    ) as progress_bar:
        if workers > 1 and len(tasks) > 1:
            logger.info(f"以 {workers} 個行程平行計算 {len(tasks)} 個點")
            with Pool(processes=workers) as pool:
                for row in pool.imap(_evaluate_task, tasks, chunksize=8):
                    rows.append(row)
                    progress_bar.update(1)
        else:
            for task in tasks:
                rows.append(_evaluate_task(task))
                progress_bar.update(1)
    return rows


def load_jobs(path: str) -> List[JobSpec]:
    if not os.path.exists(path):
        raise UsageError(f"找不到工作檔: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"無法讀取工作檔 {path}: {e}") from e
    cases = payload["cases"] if isinstance(payload, dict) and "cases" in payload else [payload]
    if not isinstance(cases, list) or not cases:
        raise UsageError(f"工作檔 {path} 必須是一個案例或 {{\"cases\": [...]}}")
    return [JobSpec.model_validate(case) for case in cases]


def _job_from_args(args, command: str) -> JobSpec:
    fields = {
        name: getattr(args, name)
        for name in JobSpec.model_fields
        if getattr(args, name, None) is not None
    }
    fields["command"] = command
    return JobSpec(**fields)


def _phase_columns(jobs):
    if any(job.skip_degenerate for job in jobs):
        return PHASE_COLUMNS + ("reason",)
    return PHASE_COLUMNS


def _emit(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


def _stamp_line(args) -> str:
    if not args.stamp:
        return ""
    return f"# generated {datetime.now().isoformat(timespec='seconds')}\n"


def cmd_phase_shift(args) -> int:
    job = _job_from_args(args, "phase-shift")
    rows = run_jobs([job], args.workers)
    _emit(render(rows, _phase_columns([job]), args.format or config.DEFAULT_FORMAT))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.job:
        jobs = load_jobs(args.job)
        if args.skip_degenerate:
            jobs = [job.model_copy(update={"skip_degenerate": True}) for job in jobs]
    else:
        if args.var is None:
            raise UsageError("sweep 需要 --var 或 --job")
        jobs = [_job_from_args(args, "sweep")]
    rows = run_jobs(jobs, args.workers)
    output_format = args.format or jobs[0].format or config.DEFAULT_FORMAT
    logger.info(f"✅ 掃描完成，共 {len(rows)} 列")
    _emit(render(rows, _phase_columns(jobs), output_format))
    return EXIT_OK


def _cli_inputs(args, energy=0.0):
    """PotentialSpec and Kinematics from flags; invalid values are usage errors."""
    try:
        spec = PotentialSpec(args.potential, args.a, args.b, args.beta)
        kin = Kinematics(args.mode, args.mass, energy, args.hbar)
    except DomainError as e:
        raise UsageError(str(e)) from e
    return spec, kin


def cmd_bound(args) -> int:
    spec, kin = _cli_inputs(args)
    mode = kin.mode
    if mode is Mode.RELATIVISTIC:
        window = tuple(args.window) if args.window else default_window(spec, args.mass)
        if not window[0] < window[1]:
            raise UsageError(f"--window 需要 E_LO < E_HI，收到 {window[0]} {window[1]}")
        sys.stderr.write(f"搜尋視窗: E ∈ [{fmt(window[0])}, {fmt(window[1])}]\n")
    rows = []
    for l in args.l:
        if mode is Mode.NON_RELATIVISTIC:
            levels = nr_levels(spec, args.mass, args.hbar, l, args.n_max)
        else:
            levels = solve_rel_levels(spec, args.mass, l, args.n_max, window=window)
        for level in levels:
            rows.append(
                {
                    "potential": spec.kind.value,
                    "mode": mode.value,
                    "n": level.n,
                    "l": level.l,
                    "E": level.E,
                    "residual": level.residual,
                    "suspect_redundant": level.suspect_redundant,
                }
            )
    _emit(render(rows, BOUND_COLUMNS, args.format or config.DEFAULT_FORMAT))
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    if args.samples < 1 or args.rmax <= 0:
        raise UsageError("--samples 必須 >= 1 且 --rmax 必須 > 0")
    spec, kin = _cli_inputs(args, args.energy)
    r_min = args.rmin if args.rmin is not None else args.rmax / args.samples
    radii = np.linspace(r_min, args.rmax, args.samples)
    samples = radial_wavefunction(spec, kin, args.l, radii)
    rows = [{"r": s.r, "u_re": s.u.real, "u_im": s.u.imag} for s in samples]
    _emit(render(rows, WAVEFUNCTION_COLUMNS, args.format or config.DEFAULT_FORMAT))
    return EXIT_OK


def _check_lines(checks, stream) -> List[str]:
    lines = []
    for check in checks:
        label = colorize("PASS", "green", stream) if check.passed else colorize("FAIL", "red", stream)
        line = f"[{label}] {check.name}: measured={check.measured:.3e} threshold={check.threshold:.3e}"
        if check.detail:
            line += f" ({check.detail})"
        lines.append(line)
    return lines


def table_text(report, args, stream) -> str:
    lines = [f"表格 {report.table_id} 比對報告 (convention={report.convention.value})"]
    lines.append("  " + ", ".join(f"{k}={v}" for k, v in report.summary.items()))
    flagged = [r for r in report.records if r.status in ("degenerate", "pole", "complex_index", "domain")]
    for record in flagged:
        entry = record.entry
        lines.append(
            f"  {colorize('⚠️', 'yellow', stream)} {entry.kind.value} l={entry.l} "
            f"{entry.sweep_var}={entry.sweep_text}: {record.status}"
        )
    lines.extend("  " + line for line in _check_lines(report.checks, stream))
    return _stamp_line(args) + "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    report = paperdata.compare_table(args.id, args.convention)
    if args.format == "text":
        _emit(table_text(report, args, sys.stdout))
    else:
        _emit(render(paperdata.report_rows(report), paperdata.REPORT_COLUMNS, args.format or "csv"))
        sys.stderr.write(table_text(report, args, sys.stderr))
    if not report.structural_ok:
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_validate(args) -> int:
    checks = validation.run_suite(args.suite)
    if args.format in ("csv", "json"):
        rows = [
            {
                "name": c.name,
                "passed": c.passed,
                "measured": c.measured,
                "threshold": c.threshold,
                "detail": c.detail,
            }
            for c in checks
        ]
        _emit(render(rows, CHECK_COLUMNS, args.format))
    else:
        passed = sum(1 for c in checks if c.passed)
        lines = _check_lines(checks, sys.stdout)
        lines.append(f"{passed}/{len(checks)} 項檢查通過")
        _emit(_stamp_line(args) + "\n".join(lines) + "\n")
    if all(c.passed for c in checks):
        logger.info("✅ 驗證全部通過")
        return EXIT_OK
    logger.error("❌ 驗證未通過")
    return EXIT_INVARIANT


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    common.add_argument("--log-dir", default=None, help="輪替日誌檔目錄")
    common.add_argument("--format", choices=["csv", "json", "text"], default=None)
    common.add_argument("--stamp", action="store_true", help="報告文字加上產生時間")
    common.add_argument("--workers", type=int, default=1, help="掃描用的行程數")
    return common


def potential_kind(value: str) -> str:
    """argparse type for --potential; aliases such as "vsp" are accepted."""
    return PotentialKind.parse(value).value


def _add_potential_args(parser, required=True):
    parser.add_argument(
        "--potential",
        type=potential_kind,
        required=required,
        help="varshni | hellmann | varshni-shukla",
    )
    parser.add_argument("--mode", choices=[m.value for m in Mode], default="rel")
    parser.add_argument("--a", type=float, default=0.0)
    parser.add_argument("--b", type=float, default=0.0)
    parser.add_argument("--beta", type=float, required=required)
    parser.add_argument("--mass", type=float, required=required, help="M (rel) 或 μ (nr)")
    parser.add_argument("--hbar", type=float, default=config.DEFAULT_HBAR)


def _add_phase_args(parser, required=True):
    _add_potential_args(parser, required)
    parser.add_argument("--energy", type=float, required=required)
    parser.add_argument("--l", type=int, nargs="+", default=[0])
    parser.add_argument(
        "--convention",
        choices=[c.value for c in ArgConvention],
        default=config.DEFAULT_CONVENTION,
    )
    parser.add_argument("--skip-degenerate", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="kgscatter", description="Klein-Gordon 散射相移與束縛態計算工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    p = sub.add_parser("phase-shift", parents=[common], help="單點相移")
    _add_phase_args(p)
    p.set_defaults(handler=cmd_phase_shift)

    p = sub.add_parser("sweep", parents=[common], help="β 或 b 掃描")
    _add_phase_args(p, required=False)
    p.add_argument("--var", choices=["beta", "b"], default=None)
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--stop", type=float, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--scale", choices=["linear", "log"], default=None)
    p.add_argument("--job", default=None, help="JSON 工作檔")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("bound", parents=[common], help="束縛態能階")
    _add_potential_args(p)
    p.add_argument("--l", type=int, nargs="+", default=[0])
    p.add_argument("--n-max", type=int, default=0)
    p.add_argument("--window", type=float, nargs=2, default=None, metavar=("E_LO", "E_HI"))
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("wavefunction", parents=[common], help="徑向波函數取樣")
    _add_potential_args(p)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--rmax", type=float, default=20.0)
    p.add_argument("--rmin", type=float, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(handler=cmd_wavefunction)

    p = sub.add_parser("table", parents=[common], help="論文表格比對報告")
    p.add_argument("--id", type=int, required=True, choices=range(1, 7))
    p.add_argument(
        "--convention",
        choices=[c.value for c in ArgConvention],
        default=config.DEFAULT_CONVENTION,
    )
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("validate", parents=[common], help="驗收檢查")
    p.add_argument("--suite", choices=validation.SUITES, default="all")
    p.set_defaults(handler=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(args.verbose, args.log_dir)
    if args.format == "text" and args.command not in ("table", "validate"):
        parser.print_usage(sys.stderr)
        sys.stderr.write("kgscatter: error: --format text 只適用於 table 與 validate\n")
        return EXIT_USAGE

    try:
        return args.handler(args)
    except ValidationError as e:
        logger.error(f"❌ 參數驗證失敗: {e}")
        return EXIT_USAGE
    except KGScatterError as e:
        code = exit_code_for(e)
        logger.error(f"❌ {type(e).__name__}: {e}")
        return code
    except Exception as e:
        logger.exception(f"❌ 非預期的數值錯誤 {type(e).__name__}: {e}")
        return exit_code_for(e)
