"""Command-line front end: each subcommand writes one experiment as CSV.

Configuration precedence, lowest to highest: built-in defaults, the JSON
document given by ``--config``, then command-line flags. The JSON document
has optional top-level keys ``seed``, ``shots``, ``gamma`` (radians),
``phi_deg``, ``delta_deg`` and ``noise`` (``readout_sigma``,
``prep_depolarize``, ``fredkin_depolarize``), plus one section per
subcommand. Angles in sections are in degrees.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from swapmeter import circuit, fingerprint, multimeter, prep, states
from swapmeter.circuit import NoiseConfig
from swapmeter.exceptions import UnphysicalStateError, VisibilityUnrecoverableError
from swapmeter.gates import PhaseGateSettings, depolarize

EXIT_USAGE = 2
EXIT_NUMERICAL = 3

NAMED_STATES = {
    "+x": (1, 0, 0), "-x": (-1, 0, 0),
    "+y": (0, 1, 0), "-y": (0, -1, 0),
    "+z": (0, 0, 1), "-z": (0, 0, -1),
    "mixed": (0, 0, 0),
}

INTERFERENCE_PAIRS = {
    "pure": ((0, 0, 1), (0, 0, 1)),
    "mixed": ((0, 0, math.sqrt(3) / 2), (0, 0, math.sqrt(3) / 2)),
}

DEFAULT_OVERLAP_PAIRS = ((1.0, 1.0), (1.0, 0.8), (0.81, 0.81), (1.0, 0.5))

COLUMNS = {
    "interference": "phi_deg, p0_exact, p0_sampled, visibility",
    "tomography": "index, true_rx, true_ry, true_rz, v_x, v_y, v_z, rec_rx, rec_ry, rec_rz, fidelity",
    "eigenscan": "theta_deg, phi_deg, visibility   (theta is the elevation, -90..90)",
    "overlap": "ra, rb, theta_deg, overlap_exact, overlap_measured",
    "purity": "n, eta_deg, visibility, extracted_r, r_theory",
    "fingerprint": "alpha, beta, overlap, accept_prob   (+ JSON summary)",
    "prepare": "JSON list of {kind, axis, angle} steps",
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def _round12(x: float) -> float:
    return float(format(float(x), ".12g"))


# config handling

def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def _section(cfg: dict, name: str) -> dict:
    sec = cfg.get(name, {})
    if not isinstance(sec, dict):
        raise UsageError(f"config section {name!r} must be an object")
    return sec


def _number(value, what: str, *, lo: float | None = None, hi: float | None = None) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise UsageError(f"{what} must be a number, got {value!r}") from None
    if not math.isfinite(x) or (lo is not None and x < lo) or (hi is not None and x > hi):
        raise UsageError(f"{what} out of range: {value!r}")
    return x


def parse_state(spec, what: str = "state") -> states.QubitState:
    """A named state (``+x`` ... ``-z``, ``mixed``) or a Bloch vector [rx, ry, rz]."""
    if isinstance(spec, str):
        if spec not in NAMED_STATES:
            raise UsageError(f"unknown {what} {spec!r}; expected one of {sorted(NAMED_STATES)}")
        spec = NAMED_STATES[spec]
    if not isinstance(spec, (list, tuple)) or len(spec) != 3:
        raise UsageError(f"{what} must be a name or a 3-component Bloch vector, got {spec!r}")
    r = [_number(c, what) for c in spec]
    try:
        return prep.prepare_state(r)
    except UnphysicalStateError as exc:
        raise UsageError(f"{what}: {exc}") from None


class Run:
    """Resolved common options for one invocation."""

    def __init__(self, args: argparse.Namespace, cfg: dict):
        self.cfg = cfg
        self.section = _section(cfg, args.command)
        seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise UsageError(f"seed must be a non-negative integer, got {seed!r}")
        self.seed = seed
        shots = args.shots if args.shots is not None else cfg.get("shots")
        if shots is not None and (isinstance(shots, bool) or not isinstance(shots, int) or shots < 1):
            raise UsageError(f"shots must be a positive integer, got {shots!r}")
        self.shots = shots
        noise_cfg = _section(cfg, "noise")
        unknown_keys = set(noise_cfg) - {"readout_sigma", "prep_depolarize", "fredkin_depolarize"}
        if unknown_keys:
            raise UsageError(f"unknown noise keys: {sorted(unknown_keys)}")
        readout = args.noise_readout if args.noise_readout is not None else noise_cfg.get("readout_sigma", 0.0)
        depol = args.noise_depolarize if args.noise_depolarize is not None else noise_cfg.get("prep_depolarize", 0.0)
        self.noise = NoiseConfig(
            prep_depolarize=_number(depol, "depolarizing probability", lo=0, hi=1),
            fredkin_depolarize=_number(noise_cfg.get("fredkin_depolarize", 0.0),
                                       "fredkin_depolarize", lo=0, hi=1),
            readout_sigma=_number(readout, "readout sigma", lo=0),
        )
        gamma = args.gamma if args.gamma is not None else cfg.get("gamma", 0.0)
        self.settings = PhaseGateSettings(
            phi=math.radians(_number(cfg.get("phi_deg", 0.0), "phi_deg")),
            delta=math.radians(_number(cfg.get("delta_deg", 90.0), "delta_deg")),
            gamma=_number(gamma, "gamma"),
        )
        self.rng = np.random.default_rng(self.seed)

    def get(self, key, default):
        return self.section.get(key, default)


def _degrees_grid(start: float, stop: float, step: float, what: str) -> list[float]:
    if step <= 0:
        raise UsageError(f"{what} step must be positive")
    n = (stop - start) / step
    if n < 0 or abs(n - round(n)) > 1e-9:
        raise UsageError(f"{what} step {step} does not divide [{start}, {stop}]")
    return [start + i * step for i in range(int(round(n)) + 1)]


# subcommands; each returns (header, rows) and optionally extra JSON

def cmd_interference(run: Run):
    pair = run.get("states", "pure")
    if isinstance(pair, str):
        if pair not in INTERFERENCE_PAIRS:
            raise UsageError(f"unknown interference pair {pair!r}")
        pair = INTERFERENCE_PAIRS[pair]
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise UsageError("interference states must be 'pure', 'mixed' or two states")
    rho_a, rho_b = (parse_state(s, "input state") for s in pair)
    start = _number(run.get("phi_start_deg", 0.0), "phi_start_deg")
    stop = _number(run.get("phi_stop_deg", 360.0), "phi_stop_deg")
    step = _number(run.get("phi_step_deg", 10.0), "phi_step_deg")
    noisy_a, noisy_b = rho_a, rho_b
    if run.noise.prep_depolarize:
        noisy_a = depolarize(rho_a, run.noise.prep_depolarize)
        noisy_b = depolarize(rho_b, run.noise.prep_depolarize)
    rows = []
    for phi_deg in _degrees_grid(start, stop, step, "phi"):
        settings = PhaseGateSettings(math.radians(phi_deg), run.settings.delta, run.settings.gamma)
        exact = circuit.run_full(rho_a, rho_b, settings)
        noisy = circuit.run_full(noisy_a, noisy_b, settings,
                                 fredkin_depolarize=run.noise.fredkin_depolarize)
        sampled = noisy.p0
        if run.shots is not None:
            sampled = run.rng.binomial(run.shots, noisy.p0) / run.shots
        if run.noise.readout_sigma:
            sampled += run.rng.normal(0.0, run.noise.readout_sigma) / 2
        rows.append((phi_deg, exact.p0, sampled, exact.visibility))
    return ["phi_deg", "p0_exact", "p0_sampled", "visibility"], rows, None


def cmd_tomography(run: Run):
    if "unknown" in run.section:
        unknowns = run.section["unknown"]
        if isinstance(unknowns, str) or (isinstance(unknowns, list) and unknowns
                                         and not isinstance(unknowns[0], (list, str))):
            unknowns = [unknowns]
        targets = [parse_state(u, "unknown state") for u in unknowns]
    else:
        count = run.get("random", 20)
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise UsageError(f"random must be a positive integer, got {count!r}")
        pure = bool(run.get("pure", True))
        targets = [states.random_state(run.rng, pure=pure) for _ in range(count)]
    rows = []
    for i, rho in enumerate(targets):
        res = multimeter.tomography(rho, run.noise, run.shots, run.rng, run.settings)
        truth = rho.bloch().as_array()
        rec = res.reconstructed.bloch().as_array()
        rows.append((i, *truth, *res.raw_visibilities, *rec, res.fidelity_vs_truth))
    header = ["index", "true_rx", "true_ry", "true_rz", "v_x", "v_y", "v_z",
              "rec_rx", "rec_ry", "rec_rz", "fidelity"]
    return header, rows, None


def cmd_eigenscan(run: Run):
    unknown = parse_state(run.get("unknown", [0.0, 0.0, math.sqrt(2) / 2]), "unknown state")
    theta_step = _number(run.get("theta_step_deg", 15.0), "theta_step_deg", lo=0)
    phi_step = _number(run.get("phi_step_deg", 15.0), "phi_step_deg", lo=0)
    try:
        res = multimeter.eigen_scan(unknown, math.radians(theta_step), math.radians(phi_step),
                                    run.noise, run.shots, run.rng, run.settings)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(math.degrees(p.theta), math.degrees(p.phi), p.visibility) for p in res.grid]
    return ["theta_deg", "phi_deg", "visibility"], rows, None


def cmd_overlap(run: Run):
    pairs = run.get("pairs", DEFAULT_OVERLAP_PAIRS)
    step = _number(run.get("theta_step_deg", 15.0), "theta_step_deg")
    rows = []
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise UsageError(f"overlap pair must be [ra, rb], got {pair!r}")
        ra, rb = (_number(r, "purity", lo=0, hi=1) for r in pair)
        for theta_deg in _degrees_grid(0.0, 180.0, step, "theta"):
            a, b = multimeter.overlap_pair(ra, rb, math.radians(theta_deg))
            measured = multimeter.overlap_experiment(a, b, run.settings, run.noise,
                                                     run.shots, run.rng)
            rows.append((ra, rb, theta_deg, states.overlap(a, b), measured))
    return ["ra", "rb", "theta_deg", "overlap_exact", "overlap_measured"], rows, None


def cmd_purity(run: Run):
    n_max = run.get("n_max", 6)
    if isinstance(n_max, bool) or not isinstance(n_max, int) or not 0 <= n_max <= 6:
        raise UsageError(f"n_max must be an integer in 0..6, got {n_max!r}")
    rows = []
    for n in range(n_max + 1):
        eta = n * math.pi / 12
        v, r = multimeter.purity_experiment(eta, run.settings, run.noise, run.shots, run.rng)
        rows.append((n, math.degrees(eta), v, r, math.cos(eta)))
    return ["n", "eta_deg", "visibility", "extracted_r", "r_theory"], rows, None


def cmd_fingerprint(run: Run):
    report = fingerprint.full_report(run.settings, run.noise, run.shots, run.rng)
    summary = {k: _round12(v) for k, v in report.summary().items()}
    summary["classical_one_sided_error"] = fingerprint.classical_baseline()
    summary["quantum_classical_gap"] = _round12(report.classical_gap)
    return ["alpha", "beta", "overlap", "accept_prob"], list(report.rows()), summary


def cmd_prepare(run: Run):
    target = run.get("target", [0.0, 0.0, math.sqrt(2) / 2])
    rho = parse_state(target, "target")
    _, recipe = prep.prepare(rho.bloch())
    return None, None, json.loads(recipe.to_json())


COMMANDS = {
    "interference": cmd_interference,
    "tomography": cmd_tomography,
    "eigenscan": cmd_eigenscan,
    "overlap": cmd_overlap,
    "purity": cmd_purity,
    "fingerprint": cmd_fingerprint,
    "prepare": cmd_prepare,
}


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _write(path: str | None, text: str, stream) -> None:
    if path is None:
        stream.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapmeter",
        description="Scattering-circuit multimeter experiments as CSV.",
        epilog="Exit codes: 0 success, 2 usage error, 3 numerical-domain error.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON experiment configuration")
    common.add_argument("--seed", type=int, help="seed of the random generator (default 0)")
    common.add_argument("--shots", type=int, help="shots per measurement; omit for exact mode")
    common.add_argument("--noise-readout", type=float, metavar="SIGMA",
                        help="std. dev. of Gaussian readout noise on each visibility")
    common.add_argument("--noise-depolarize", type=float, metavar="P",
                        help="depolarizing probability applied to each prepared input")
    common.add_argument("--gamma", type=float, metavar="RADIANS",
                        help="extra phase of the modified Fredkin gate")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=f"columns: {COLUMNS[name]}",
                           description=f"Output columns: {COLUMNS[name]}")
        if name == "fingerprint":
            p.add_argument("--summary", metavar="PATH",
                           help="JSON summary path (default: --out with .json suffix, else stderr)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = Run(args, load_config(args.config))
        header, rows, extra = COMMANDS[args.command](run)
    except UsageError as exc:
        print(f"swapmeter {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VisibilityUnrecoverableError as exc:
        print(f"swapmeter {args.command}: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if header is not None:
        _write(args.out, render_csv(header, rows), sys.stdout)
    if extra is not None:
        text = json.dumps(extra, separators=(",", ":")) + "\n"
        if header is None:
            _write(args.out, text, sys.stdout)
        else:
            summary_path = getattr(args, "summary", None)
            if summary_path is None and args.out is not None:
                summary_path = str(Path(args.out).with_suffix(".json"))
            _write(summary_path, text, sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
