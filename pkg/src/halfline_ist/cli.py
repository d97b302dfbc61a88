"""Command line: halfline-ist {forward,validate,solve,verify,soliton,roundtrip}.

Every command reads a JSON configuration, writes its results into the
output directory together with <command>_manifest.json (sha256 of each
emitted file) and maps failures to exit codes:
0 success, 1 numerical or schema failure, 2 data outside the admissible
class, 3 singular Marchenko system, 4 failed verification oracle.
"""

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import scattering, validate, verify
from .core import ProblemConfig, ScatteringData, SolutionGrid, soliton_config
from .errors import ConfigError, HalflineError, OracleFailure
from .marchenko import KernelField, reconstruct_grid

log = logging.getLogger("halfline_ist")

SOLITON_TOL = 1e-4
DATA_R_TOL = 1e-4
DATA_EIG_TOL = 1e-5


class Run:
    """Output directory plus the manifest of emitted files."""

    def __init__(self, command, config_path, out):
        self.command = command
        self.config_path = "" if config_path is None else str(config_path)
        self.out = Path(out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.files = []

    def write(self, name, text):
        path = self.out / name
        path.write_text(text)
        self.files = [f for f in self.files if f["name"] != name]
        self.files.append({"name": name, "sha256": hashlib.sha256(text.encode()).hexdigest()})
        return path

    def write_json(self, name, obj):
        return self.write(name, json.dumps(obj, indent=2) + "\n")

    def finish(self):
        manifest = {"command": self.command, "config_path": self.config_path,
                    "output_dir": str(self.out), "files": self.files}
        (self.out / f"{self.command}_manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


# ---------------------------------------------------------------------------
# loading

def load_config(path):
    if path is None:
        raise ConfigError("--config is required for this command")
    try:
        d = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from None
    return ProblemConfig.from_dict(d)


def load_data(path):
    try:
        d = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read scattering data: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scattering data is not valid JSON: {exc}") from None
    return ScatteringData.from_dict(d)


def load_solution(path):
    try:
        return SolutionGrid.from_csv(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read solution: {exc}") from None


def thread_count(arg):
    if arg is not None:
        return max(1, int(arg))
    env = os.environ.get("HALFLINE_IST_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise ConfigError("HALFLINE_IST_THREADS must be an integer") from None


def _apply_overrides(cfg, args):
    if args.nystrom_n is not None:
        cfg = cfg.with_(nystrom_n=int(args.nystrom_n))
        cfg.check()
    return cfg


def _data_path(args):
    return Path(args.data) if args.data else Path(args.out) / "scattering_data.json"


def _solution_path(args):
    return Path(args.solution) if args.solution else Path(args.out) / "q_grid.csv"


# ---------------------------------------------------------------------------
# pipeline steps

def forward(cfg, run):
    data = scattering.assemble_scattering_data(cfg, log.info)
    run.write_json("scattering_data.json", data.to_dict())
    return data


def run_validation(cfg, data, run):
    report = validate.validate(data, cfg)
    run.write_json("validation_report.json", report.to_dict())
    return report


def solve(cfg, data, run, threads, emit_kernel=False):
    grid, diag = reconstruct_grid(data, cfg, threads)
    run.write("q_grid.csv", grid.to_csv())
    run.write_json("diagnostics.json", diag)
    if emit_kernel:
        field = KernelField(data)
        xs, ts = cfg.x_nodes(), cfg.t_nodes()
        H = np.stack([field.H(xs, t) for t in ts], axis=1)
        run.write("kernel_grid.csv", SolutionGrid(xs, ts, H).to_csv().replace("x,t,q", "x,t,H", 1))
    return grid


def _require_valid(report):
    if not report.overall:
        raise HalflineError("scattering data failed validation: " + ", ".join(report.failed()))


# ---------------------------------------------------------------------------
# commands

def cmd_forward(args, run):
    cfg = _apply_overrides(load_config(args.config), args)
    forward(cfg, run)
    return 0


def cmd_validate(args, run):
    cfg = load_config(args.config)
    report = run_validation(cfg, load_data(_data_path(args)), run)
    return 0 if report.overall else 1


def cmd_solve(args, run):
    cfg = _apply_overrides(load_config(args.config), args)
    data = load_data(_data_path(args))
    if not args.skip_validate:
        _require_valid(run_validation(cfg, data, run))
    solve(cfg, data, run, thread_count(args.threads), args.emit_kernel)
    return 0


def cmd_verify(args, run):
    cfg = _apply_overrides(load_config(args.config), args)
    data = load_data(_data_path(args))
    grid = load_solution(_solution_path(args))
    report = verify.verify_run(cfg, data, grid)
    run.write_json("verify_report.json", report.to_dict())
    if not report.overall:
        failed = [o.name for o in report.oracles if not o.passed]
        raise OracleFailure("failed oracles: " + ", ".join(failed))
    return 0


def cmd_soliton(args, run):
    """Forward, validate, solve and compare with the exact soliton."""
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = soliton_config()
        run.write_json("config.json", cfg.to_dict())
    cfg = _apply_overrides(cfg, args)
    p = dict(cfg.u.params)
    if cfg.u.preset != "soliton_trace" or cfg.lam != -1:
        raise ConfigError("the soliton command needs lambda = -1 and a soliton_trace u")
    data = forward(cfg, run)
    if not args.skip_validate:
        _require_valid(run_validation(cfg, data, run))
    grid = solve(cfg, data, run, thread_count(args.threads), args.emit_kernel)
    exact = verify.sample_grid(verify.soliton_exact(p["kappa"], p["x0"], p["sign"]),
                               grid.x_nodes, grid.t_nodes)
    err = float(np.max(np.abs(grid.q_values - exact)))
    run.write_json("soliton_error.json", {"max_error": err, "tol": SOLITON_TOL,
                                          "pass": err <= SOLITON_TOL,
                                          "eigenvalues_x": data.to_dict()["eigenvalues_x"],
                                          "eigenvalues_bc": data.to_dict()["eigenvalues_bc"]})
    if not err <= SOLITON_TOL:
        raise OracleFailure(f"soliton error {err:.3g} exceeds {SOLITON_TOL:g}")
    return 0


def data_roundtrip(data, cfg):
    """Direct scattering of the reconstructed q(., 0): r samples and
    eigenvalues against the stored ones."""
    prof = verify.reconstructed_profile(data, cfg, 0.0)
    k = np.asarray(data.r_grid)
    r_new = scattering.Spectral(cfg, prof).reflection(k) if k.size else np.zeros(0)
    r_err = float(np.max(np.abs(r_new - data.r_grid_values), initial=0.0))
    eig = scattering.find_zeros_s2p(cfg, prof) if data.lam == -1 else np.zeros(0)
    old = np.asarray(data.eigenvalues_x, dtype=complex)
    if len(eig) != len(old):
        e_err = np.inf
    else:
        e_err = float(max((np.min(np.abs(old - z)) for z in eig), default=0.0))
    return r_err, e_err


def cmd_roundtrip(args, run):
    cfg = _apply_overrides(load_config(args.config), args)
    data = load_data(_data_path(args))
    field = KernelField(data)
    oracles = [verify.Oracle("roundtrip_initial", verify.roundtrip_initial(data, cfg, field),
                             verify.ROUNDTRIP_TOL)]
    for name, v in zip(("q", "q_x", "q_xx"), verify.roundtrip_boundary(data, cfg, field_=field)):
        oracles.append(verify.Oracle(f"roundtrip_boundary_{name}", v, verify.BOUNDARY_TOL))
    r_err, e_err = data_roundtrip(data, cfg)
    oracles.append(verify.Oracle("data_roundtrip_r", r_err, DATA_R_TOL))
    oracles.append(verify.Oracle("data_roundtrip_eigenvalues", e_err, DATA_EIG_TOL))
    report = verify.VerifyReport(oracles)
    run.write_json("roundtrip_report.json", report.to_dict())
    if not report.overall:
        raise OracleFailure("round trip failed: " + ", ".join(o.name for o in oracles if not o.passed))
    return 0


COMMANDS = {"forward": cmd_forward, "validate": cmd_validate, "solve": cmd_solve,
            "verify": cmd_verify, "soliton": cmd_soliton, "roundtrip": cmd_roundtrip}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--data", help="scattering data JSON (default: OUT/scattering_data.json)")
    common.add_argument("--solution", help="solution CSV (default: OUT/q_grid.csv)")
    common.add_argument("--skip-validate", action="store_true",
                        help="solve without checking the admissibility conditions first")
    common.add_argument("--nystrom-n", type=int, help="Nystrom nodes per Marchenko solve")
    common.add_argument("--threads", type=int,
                        help="worker threads for the (x, t) sweep (env HALFLINE_IST_THREADS)")
    common.add_argument("--emit-kernel", action="store_true",
                        help="also write the kernel H(x, t) on the grid")
    common.add_argument("-v", "--verbose", action="store_true")
    p = argparse.ArgumentParser(prog="halfline-ist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(fn.__doc__ or name).splitlines()[0])
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    run = Run(args.command, args.config, args.out)
    try:
        code = COMMANDS[args.command](args, run)
    except HalflineError as exc:
        code = exc.exit_code
        run.write_json("error.json", {"error": type(exc).__name__, "message": str(exc),
                                      "exit_code": code})
        print(f"halfline-ist {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
    run.finish()
    return code


if __name__ == "__main__":
    sys.exit(main())
