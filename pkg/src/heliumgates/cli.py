"""Command-line front end reproducing the gate tables, figures and spectra.

Every subcommand writes one flat table (CSV or JSON) to ``--out`` or stdout.
Exit codes: 0 success, 2 configuration error, 3 physics-invariant violation,
4 convergence failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import helium
from .config import RunConfig, load_config
from .dynamics import experiments as ex
from .errors import ConfigError, ConvergenceError, InvariantViolation
from .holonomy import GateParams
from .pulses import GaussianPulse, normalize_area
from .quantum import BASIS

log = logging.getLogger("heliumgates")

EXIT_OK, EXIT_CONFIG, EXIT_INVARIANT, EXIT_CONVERGENCE = 0, 2, 3, 4
SIG_DIGITS = 10


def _num(x):
    return float(format(float(x), f".{SIG_DIGITS}g"))


def _cell(x) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), f".{SIG_DIGITS}g")
    return str(x)


class Table:
    def __init__(self, columns, rows):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for r in self.rows:
            lines.append(",".join(_quote(_cell(v)) for v in r))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        recs = [{c: (_num(v) if isinstance(v, (float, np.floating)) else v)
                 for c, v in zip(self.columns, r)} for r in self.rows]
        return json.dumps({"columns": self.columns, "rows": recs}, indent=1) + "\n"


def _quote(s: str) -> str:
    return f'"{s}"' if "," in s else s


# --------------------------------------------------------------------------
# resolved physics inputs


def constants(cfg: RunConfig) -> helium.PhysicalConstants:
    return helium.PhysicalConstants(kappa_0=cfg.kappa0)


def pulse(cfg: RunConfig) -> GaussianPulse:
    return normalize_area(GaussianPulse(cfg.pulse_duration, cfg.sigma))


def detunings(cfg: RunConfig) -> helium.DetuningSet:
    base = helium.default_detunings(helium.REFERENCE_FIELD, constants(cfg))
    return helium.DetuningSet(
        base.delta13 if cfg.delta13 is None else cfg.delta13,
        base.delta23 if cfg.delta23 is None else cfg.delta23,
        base.delta12 if cfg.delta12 is None else cfg.delta12,
    )


def operating_point(cfg: RunConfig) -> ex.OperatingPoint:
    return ex.OperatingPoint(
        e_perp=cfg.e_perp, constants=constants(cfg), pulse=pulse(cfg),
        kappa_scale=cfg.kappa_scale, detunings=detunings(cfg), step=cfg.step,
        crosstalk=cfg.crosstalk,
    )


def _sweep_fields(cfg: RunConfig):
    return np.linspace(cfg.e_min, cfg.e_max, cfg.n_points)


# --------------------------------------------------------------------------
# subcommands


def cmd_cnot_table(cfg: RunConfig) -> Table:
    op = operating_point(cfg)
    rows = ex.run_cnot_table(op.channels(), op.resolved_detunings(), op.pulse,
                             cfg.step, cfg.crosstalk, GateParams(cfg.theta, cfg.phi))
    return Table(["input", "ideal_output", "fidelity"],
                 [(r.input, r.ideal_output, r.fidelity) for r in rows])


def cmd_trajectory(cfg: RunConfig) -> Table:
    op = operating_point(cfg)
    traj = ex.entangling_trajectory(op.channels(), op.resolved_detunings(), op.pulse,
                                    cfg.step, cfg.stride, cfg.crosstalk)
    pops = traj.populations()
    cols = ["time_ns"] + [f"pop_{b.spin.name.lower()}{b.rydberg}" for b in BASIS]
    cols.append("fidelity")
    rows = [[t, *p, f] for t, p, f in zip(traj.times, pops, traj.fidelities)]
    return Table(cols, rows)


COMPUTATIONAL = (0, 1, 3, 4)


def cmd_density_matrix(cfg: RunConfig) -> Table:
    op = operating_point(cfg)
    traj = ex.entangling_trajectory(op.channels(), op.resolved_detunings(), op.pulse,
                                    cfg.step, 10**9, cfg.crosstalk)
    rho = traj.final
    rows = []
    for i in COMPUTATIONAL:
        for j in COMPUTATIONAL:
            rows.append((str(BASIS[i]), str(BASIS[j]), rho[i, j].real, rho[i, j].imag))
    return Table(["row", "col", "real", "imag"], rows)


def cmd_field_sweep(cfg: RunConfig) -> Table:
    pts = ex.fidelity_vs_field(_sweep_fields(cfg), operating_point(cfg), cfg.jobs)
    return Table(["e_perp_v_per_cm", "kappa2_per_ns", "kappa3_per_ns", "fidelity"],
                 [(p.e_perp, p.kappa2, p.kappa3, p.fidelity) for p in pts])


def cmd_single_qubit(cfg: RunConfig, gates=None) -> Table:
    op = operating_point(cfg)
    rows = ex.run_single_qubit_table(op.channels(), op.resolved_detunings(), op.pulse,
                                     cfg.step, cfg.lag, gates, cfg.crosstalk)
    return Table(["gate", "theta", "phi", "lag_ns", "fidelity_simultaneous",
                  "fidelity_lagged"],
                 [(r.gate, r.theta, r.phi, r.lag, r.simultaneous, r.lagged)
                  for r in rows])


def cmd_rydberg_control(cfg: RunConfig) -> Table:
    op = operating_point(cfg)
    r = ex.run_rydberg_control_gate(cfg.rabi, op.resolved_detunings(), op.channels(),
                                    cfg.duration, cfg.step)
    return Table(["rabi_rad_per_ns", "duration_ns", "delta12_rad_per_ns",
                  "flip_fidelity", "idle_fidelity"],
                 [(r.rabi, r.duration, r.delta12, r.flip_fidelity, r.idle_fidelity)])


def cmd_spectrum(cfg: RunConfig) -> Table:
    sol = helium.solve_vertical_states(cfg.e_perp, c=constants(cfg),
                                       check_convergence=True)
    for w in sol.warnings:
        log.warning(w)
    if cfg.wavefunctions:
        cols = ["z_nm"] + [f"psi{n}_per_sqrt_nm" for n in range(1, sol.n_states + 1)]
        return Table(cols, [[z, *psi] for z, psi in zip(sol.z, sol.wavefunctions.T)])
    return Table(["level", "energy_ghz", "expected_z_nm", "grad_element_n"],
                 [(n + 1, sol.energies_ghz[n], sol.expected_z[n], sol.grad_elements[n])
                  for n in range(sol.n_states)])


def cmd_decay_rates(cfg: RunConfig) -> Table:
    pts = ex.decay_rate_sweep(_sweep_fields(cfg), constants(cfg), cfg.jobs)
    return Table(["e_perp_v_per_cm", "kappa12_per_ns", "kappa13_per_ns",
                  "kappa23_per_ns", "kappa2_per_ns", "kappa3_per_ns"],
                 [(p.e_perp, p.kappa12, p.kappa13, p.kappa23, p.kappa2, p.kappa3)
                  for p in pts])


COMMANDS = {
    "cnot-table": (cmd_cnot_table, "CNOT output fidelities for the reference inputs"),
    "trajectory": (cmd_trajectory, "populations and F(t) for the entangling input"),
    "density-matrix": (cmd_density_matrix, "final 4x4 computational density matrix"),
    "field-sweep": (cmd_field_sweep, "entangling fidelity and decay rates vs E_perp"),
    "single-qubit": (cmd_single_qubit, "average single-qubit gate fidelities"),
    "rydberg-control": (cmd_rydberg_control, "spin flip conditioned on the Rydberg level"),
    "spectrum": (cmd_spectrum, "vertical energies, <z> and wavefunctions"),
    "decay-rates": (cmd_decay_rates, "two-ripplon decay rates vs E_perp"),
}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    a = common.add_argument
    a("--config", help="key = value configuration file (flags override it)")
    a("--e-perp", type=float, help="holding field in V/cm")
    a("--pulse-duration", type=float, help="Gaussian window T in ns")
    a("--sigma", type=float, help="Gaussian standard deviation in ns (default T/8)")
    a("--theta", type=float, help="gate polar angle in rad")
    a("--phi", type=float, help="gate azimuth in rad")
    a("--lag", type=float, help="delay of the spin-down drive pair in ns")
    a("--step", type=float, help="RK4 step in ns (default T/5000)")
    a("--stride", type=int, help="record every N-th step in trajectories")
    a("--kappa-scale", type=float, help="multiply all decay rates")
    a("--kappa0", type=float, help="penetration depth parameter in 1/m")
    a("--delta13", type=float, help="Zeeman detuning 1-3 in rad/ns")
    a("--delta23", type=float, help="Zeeman detuning 2-3 in rad/ns")
    a("--delta12", type=float, help="Zeeman detuning 1-2 in rad/ns")
    a("--crosstalk", action="store_const", const=True,
      help="include off-resonant action of each drive on the other spin block")
    a("--rabi", type=float, help="spin Rabi frequency in rad/ns (rydberg-control)")
    a("--duration", type=float, help="spin drive duration in ns (rydberg-control)")
    a("--e-min", type=float, help="sweep start in V/cm")
    a("--e-max", type=float, help="sweep end in V/cm")
    a("--n-points", type=int, help="number of sweep points")
    a("--wavefunctions", action="store_const", const=True,
      help="spectrum: emit psi_n(z) instead of level data")
    a("--format", choices=("csv", "json"))
    a("--out", help="output path (default stdout)")
    a("--jobs", type=int, help="worker processes for sweeps")
    a("--dump-config", action="store_true",
      help="print the resolved configuration and exit")
    a("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="heliumgates", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_)
    return p


_NON_CONFIG = {"command", "config", "dump_config", "verbose"}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    overrides = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG}
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.dump_config:
        sys.stdout.write(cfg.dump())
        return EXIT_OK

    fn = COMMANDS[args.command][0]
    try:
        table = fn(cfg)
    except InvariantViolation as exc:
        print(f"physics invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = table.to_csv() if cfg.format == "csv" else table.to_json()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
