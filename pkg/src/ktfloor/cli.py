"""Command-line interface.

Subcommands::

    floor   dissipation floors for a target error probability
    cycle   full-cycle energy audit of a follower gate
    mc      Monte Carlo first-passage error estimate vs the analytic value
    tank    LC recycling transfer efficiency and switch break-even
    sweep   one-variable parameter sweep to CSV + manifest

Exit codes: 0 success, 2 usage or domain error, 3 strict-audit failure.
All output is deterministic — no timestamps, explicit float formats — so a
rerun with the same flags and seed is byte-identical.  The default Monte
Carlo seed can be overridden with the ``KTFLOOR_SEED`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import __version__
from .audit import CLAIM_NEGLECTS, FollowerGate, audit_claim, run_cycle
from .circuit import RcStage
from .floors import ErrorSpec, first_passage_mc, floor_long, floor_short
from .noise import OuProcess, stationary_path
from .quantities import ROOM_TEMPERATURE, PhysicalEnvironment
from .sweep import SweepConfigError, load_config, run_sweep
from .tank import TankCircuit

DEFAULT_SEED = 12345


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get("KTFLOOR_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"KTFLOOR_SEED must be an integer, got {raw!r}") from None


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _kt(value: float) -> str:
    return "%.3f" % value


def cmd_floor(args) -> int:
    env = PhysicalEnvironment(temperature=args.temp)
    if (args.t_obs is None) != (args.tau is None):
        raise ValueError("--t-obs and --tau must be given together")
    spec = ErrorSpec(
        epsilon=args.epsilon,
        observation_time=args.t_obs if args.t_obs is not None else 0.0,
        correlation_time=args.tau,
    )
    short = floor_short(spec, env)
    long_result = floor_long(spec, env) if args.tau is not None else None

    if args.json:
        payload = {
            "command": "floor",
            "temperature_K": args.temp,
            "thermal_energy_J": env.thermal_energy(),
            "epsilon": args.epsilon,
            "short": {
                "floor_kT": short.floor_kt,
                "floor_J": short.floor_joule,
                "regime": short.regime,
            },
            "long": None
            if long_result is None
            else {
                "floor_kT": long_result.floor_kt,
                "floor_J": long_result.floor_joule,
                "regime": long_result.regime,
                "t_obs_s": args.t_obs,
                "tau_s": args.tau,
            },
        }
        _print_json(payload)
        return 0

    print(f"temperature       {args.temp:.8e} K")
    print(f"thermal energy    {env.thermal_energy():.8e} J")
    print(f"epsilon           {args.epsilon:.8e}")
    print(f"floor (short)     {short.floor_kt:.2f} kT = {short.floor_joule:.8e} J")
    if long_result is not None:
        print(
            f"floor (long)      {long_result.floor_kt:.2f} kT = "
            f"{long_result.floor_joule:.8e} J  "
            f"[t_obs={args.t_obs:.8e} s, tau={args.tau:.8e} s]"
        )
    return 0


def cmd_cycle(args) -> int:
    env = PhysicalEnvironment(temperature=args.temp)
    friction = args.friction_per_transition
    if args.friction_kt is not None:
        friction = env.kt_to_joules(args.friction_kt)
    stage = RcStage(
        capacitance=args.cap,
        resistance=args.res,
        swing_voltage=args.swing,
        env=env,
    )
    gate = FollowerGate(
        stage=stage,
        friction_energy_per_transition=friction,
        threshold_fraction=args.threshold_fraction,
    )
    report = run_cycle(gate)

    claimed = args.claimed
    if args.claimed_kt is not None:
        claimed = env.kt_to_joules(args.claimed_kt)
    claim_verdict = None if claimed is None else audit_claim(gate, claimed)

    per_op = args.accounting == "op"
    scale = 0.5 if per_op else 1.0

    if args.json:
        payload = {
            "command": "cycle",
            "capacitance_F": args.cap,
            "resistance_ohm": args.res,
            "swing_V": args.swing,
            "temperature_K": args.temp,
            "threshold_fraction": args.threshold_fraction,
            "friction_per_transition_J": friction,
            "accounting": args.accounting,
            "epsilon_per_observation": report.epsilon_per_observation,
            "e_input_J": scale * report.e_input_cycle,
            "e_input_kT": scale * report.e_input_cycle_kt,
            "e_friction_J": scale * report.e_friction_cycle,
            "e_friction_kT": scale * report.e_friction_cycle_kt,
            "e_total_J": scale * report.e_total_cycle,
            "e_total_kT": scale * report.e_total_cycle_kt,
            "floor_short_kT": report.floor_short_kt,
            "floor_short_J": report.floor_short_joule,
            "verdict_friction_only": report.verdict_friction_only,
            "verdict_total": report.verdict_total,
            "claimed_per_op_J": claimed,
            "claim_verdict": claim_verdict,
        }
        _print_json(payload)
    else:
        sigma = (env.thermal_energy() / args.cap) ** 0.5
        label = "per operation (half cycle)" if per_op else "per cycle (one 0->1->0)"
        print(
            f"gate              C={args.cap:.8e} F  R={args.res:.8e} ohm  "
            f"U1={args.swing:.8e} V  T={args.temp:.8e} K"
        )
        print(f"noise sigma       {sigma:.8e} V")
        print(
            f"threshold         {args.threshold_fraction * args.swing:.8e} V  "
            f"({args.threshold_fraction:.2f} of swing)"
        )
        print(f"epsilon per obs   {report.epsilon_per_observation:.8e}")
        print(f"accounting        {label}")
        print(
            f"  input charging  {scale * report.e_input_cycle:.8e} J = "
            f"{_kt(scale * report.e_input_cycle_kt)} kT"
        )
        print(
            f"  switch friction {scale * report.e_friction_cycle:.8e} J = "
            f"{_kt(scale * report.e_friction_cycle_kt)} kT"
        )
        print(
            f"  total           {scale * report.e_total_cycle:.8e} J = "
            f"{_kt(scale * report.e_total_cycle_kt)} kT"
        )
        if report.floor_short_kt is None:
            print("floor (short)     not applicable (epsilon = 0.5)")
        else:
            print(
                f"floor (short)     {report.floor_short_kt:.2f} kT = "
                f"{report.floor_short_joule:.8e} J"
            )
        print(f"verdict (friction only)  {report.verdict_friction_only}")
        print(f"verdict (total)          {report.verdict_total}")
        if claim_verdict is not None:
            print(f"claimed per op    {claimed:.8e} J = {_kt(env.joules_to_kt(claimed))} kT")
            print(f"claim verdict     {claim_verdict}")

    if args.strict and claim_verdict == CLAIM_NEGLECTS:
        return 3
    return 0


def cmd_mc(args) -> int:
    env = PhysicalEnvironment(temperature=args.temp)
    stage = RcStage(
        capacitance=args.cap, resistance=args.res, swing_voltage=0.0, env=env
    )
    process = OuProcess.from_stage(stage)
    seed = _resolve_seed(args)
    threshold = args.threshold_sigma * process.stationary_sigma
    result = first_passage_mc(
        stage=stage,
        threshold=threshold,
        observation_time=args.t_obs,
        trials=args.trials,
        seed=seed,
        workers=args.workers,
    )
    if args.dump_path is not None:
        path = stationary_path(
            process,
            dt=process.correlation_time,
            n=result.n_observations,
            seed=seed,
            path_index=0,
        )
        path.write_csv(args.dump_path)

    if args.json:
        payload = {
            "command": "mc",
            "capacitance_F": args.cap,
            "resistance_ohm": args.res,
            "temperature_K": args.temp,
            "sigma_V": process.stationary_sigma,
            "tau_s": process.correlation_time,
            "threshold_sigma": args.threshold_sigma,
            "threshold_V": threshold,
            "observation_time_s": args.t_obs,
            "n_observations": result.n_observations,
            "trials": result.trials,
            "seed": seed,
            "workers": args.workers,
            "hits": result.hits,
            "epsilon_hat": result.epsilon_hat,
            "std_err": result.std_err,
            "analytic_epsilon": result.analytic_epsilon,
            "low_confidence": result.low_confidence,
        }
        _print_json(payload)
        return 0

    print(f"sigma             {process.stationary_sigma:.8e} V")
    print(f"tau               {process.correlation_time:.8e} s")
    print(
        f"threshold         {threshold:.8e} V  ({args.threshold_sigma:.2f} sigma)"
    )
    print(
        f"observations      {result.n_observations}  "
        f"(one per tau over {args.t_obs:.8e} s)"
    )
    print(f"trials            {result.trials}  seed {seed}  workers {args.workers}")
    print(f"hits              {result.hits}")
    print(f"epsilon_hat       {result.epsilon_hat:.8e}")
    print(f"std_err           {result.std_err:.8e}")
    print(f"analytic (independent samples)  {result.analytic_epsilon:.8e}")
    print(f"low confidence    {'yes' if result.low_confidence else 'no'}")
    if result.low_confidence:
        print("warning: expected hit count below 10; estimate is unreliable")
    return 0


def cmd_tank(args) -> int:
    env = PhysicalEnvironment(temperature=args.temp)
    tank = TankCircuit(
        c1=args.c1,
        c2=args.c2,
        inductance=args.inductance,
        series_resistance=args.resistance,
        initial_voltage=args.v0,
    )
    closed = tank.transfer_efficiency()
    rk4 = None
    if args.simulate or args.dump_waveform is not None:
        rk4 = tank.simulate_transfer(
            dt=args.dt, record=args.dump_waveform is not None
        )
        if args.dump_waveform is not None:
            _write_waveform(args.dump_waveform, rk4.waveform)

    breakeven = None
    if args.e_switch_kt is not None:
        breakeven = tank.break_even(
            e_switch_control=env.kt_to_joules(args.e_switch_kt),
            n_switch_events=args.n_switches,
        )

    q1, q2 = tank.quality_factors
    if args.json:
        payload = {
            "command": "tank",
            "inductance_H": args.inductance,
            "c1_F": args.c1,
            "c2_F": args.c2,
            "resistance_ohm": args.resistance,
            "v0_V": args.v0,
            "temperature_K": args.temp,
            "quality_factors": [q1, q2],
            "schedule_s": [closed.phase1_duration, closed.phase2_duration],
            "energy_initial_J": closed.energy_initial,
            "closed_form": {
                "energy_delivered_J": closed.energy_delivered,
                "efficiency": closed.efficiency,
            },
            "rk4": None
            if rk4 is None
            else {
                "energy_delivered_J": rk4.energy_delivered,
                "efficiency": rk4.efficiency,
            },
            "break_even": None
            if breakeven is None
            else {
                "e_switch_kT": args.e_switch_kt,
                "n_switches": args.n_switches,
                "net_saving_J": breakeven.net_saving,
                "break_even_J": breakeven.break_even_energy,
                "break_even_kT": env.joules_to_kt(breakeven.break_even_energy),
            },
        }
        _print_json(payload)
        return 0

    print(
        f"tank              L={args.inductance:.8e} H  C1={args.c1:.8e} F  "
        f"C2={args.c2:.8e} F  R={args.resistance:.8e} ohm  V0={args.v0:.8e} V"
    )
    print(f"quality factors   q1={q1:.2f}  q2={q2:.2f}")
    print(
        f"schedule          t1={closed.phase1_duration:.8e} s  "
        f"t2={closed.phase2_duration:.8e} s"
    )
    print(f"energy initial    {closed.energy_initial:.8e} J")
    print(f"energy delivered  {closed.energy_delivered:.8e} J")
    print(f"efficiency        {closed.efficiency:.8f}")
    if rk4 is not None:
        rel = (rk4.efficiency - closed.efficiency) / closed.efficiency
        print(f"rk4 efficiency    {rk4.efficiency:.8f}  (relative gap {rel:+.1e})")
    if breakeven is not None:
        overhead = args.n_switches * env.kt_to_joules(args.e_switch_kt)
        print(
            f"switch control    {args.n_switches} x {_kt(args.e_switch_kt)} kT "
            f"= {overhead:.8e} J"
        )
        print(f"net saving        {breakeven.net_saving:.8e} J")
        print(
            f"break-even energy {breakeven.break_even_energy:.8e} J = "
            f"{_kt(env.joules_to_kt(breakeven.break_even_energy))} kT"
        )
    return 0


def _write_waveform(path: str, waveform) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(["t", "v_c1", "i_l", "v_c2", "e_loss"])
        for row in waveform:
            writer.writerow("%.8e" % cell for cell in row)


def cmd_sweep(args) -> int:
    try:
        spec = load_config(args.config)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{args.config}: malformed JSON: {exc}") from None
    except SweepConfigError as exc:
        raise ValueError(f"{args.config}: {exc}") from None
    csv_path, manifest_path = run_sweep(spec)
    print(f"wrote {spec.points} rows to {csv_path} (manifest {manifest_path})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktfloor",
        description=(
            "Thermal-noise energy floors for voltage-controlled logic: "
            "cycle energetics, error floors, first-passage Monte Carlo, and "
            "LC recycling break-even."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"ktfloor {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_floor = sub.add_parser(
        "floor", help="dissipation floors for a target error probability"
    )
    p_floor.add_argument(
        "--epsilon", type=float, required=True, metavar="EPS",
        help="target error probability, open interval (0, 0.5)",
    )
    p_floor.add_argument(
        "--t-obs", type=float, default=None, metavar="S",
        help="state-holding time for the long floor (needs --tau)",
    )
    p_floor.add_argument(
        "--tau", type=float, default=None, metavar="S",
        help="noise correlation time RC for the long floor (needs --t-obs)",
    )
    p_floor.add_argument(
        "--temp", type=float, default=ROOM_TEMPERATURE, metavar="K",
        help="bath temperature in kelvin (default 300)",
    )
    p_floor.add_argument("--json", action="store_true", help="emit JSON")
    p_floor.set_defaults(handler=cmd_floor)

    p_cycle = sub.add_parser(
        "cycle", help="full-cycle energy audit of a follower gate"
    )
    p_cycle.add_argument(
        "--cap", type=float, required=True, metavar="F",
        help="input capacitance in farads",
    )
    p_cycle.add_argument(
        "--swing", type=float, required=True, metavar="V",
        help="logic swing U1 in volts",
    )
    p_cycle.add_argument(
        "--res", type=float, default=1.0, metavar="OHM",
        help="switch on-resistance (does not change the cycle energies)",
    )
    p_cycle.add_argument(
        "--temp", type=float, default=ROOM_TEMPERATURE, metavar="K",
        help="bath temperature in kelvin (default 300)",
    )
    friction = p_cycle.add_mutually_exclusive_group()
    friction.add_argument(
        "--friction-per-transition", type=float, default=0.0, metavar="J",
        help="internal switch loss per transition, joules (default 0)",
    )
    friction.add_argument(
        "--friction-kt", type=float, default=None, metavar="KT",
        help="internal switch loss per transition, kT units",
    )
    p_cycle.add_argument(
        "--threshold-fraction", type=float, default=0.5, metavar="FRAC",
        help="decision threshold as a fraction of the swing (default 0.5)",
    )
    claim = p_cycle.add_mutually_exclusive_group()
    claim.add_argument(
        "--claimed", type=float, default=None, metavar="J",
        help="claimed per-operation energy to audit, joules",
    )
    claim.add_argument(
        "--claimed-kt", type=float, default=None, metavar="KT",
        help="claimed per-operation energy to audit, kT units",
    )
    p_cycle.add_argument(
        "--accounting", choices=("cycle", "op"), default="cycle",
        help="report energies per full cycle or per operation (half cycle)",
    )
    p_cycle.add_argument(
        "--strict", action="store_true",
        help="exit 3 if the claimed energy neglects input charging",
    )
    p_cycle.add_argument("--json", action="store_true", help="emit JSON")
    p_cycle.set_defaults(handler=cmd_cycle)

    p_mc = sub.add_parser(
        "mc", help="Monte Carlo first-passage error estimate"
    )
    p_mc.add_argument(
        "--cap", type=float, required=True, metavar="F",
        help="node capacitance in farads",
    )
    p_mc.add_argument(
        "--res", type=float, required=True, metavar="OHM",
        help="node resistance in ohms (sets tau = RC)",
    )
    p_mc.add_argument(
        "--temp", type=float, default=ROOM_TEMPERATURE, metavar="K",
        help="bath temperature in kelvin (default 300)",
    )
    p_mc.add_argument(
        "--threshold-sigma", type=float, required=True, metavar="X",
        help="threshold in units of the stationary noise sigma",
    )
    p_mc.add_argument(
        "--t-obs", type=float, required=True, metavar="S",
        help="observation window; one observation per tau",
    )
    p_mc.add_argument(
        "--trials", type=int, default=100000, metavar="N",
        help="Monte Carlo trials (default 100000)",
    )
    p_mc.add_argument(
        "--seed", type=int, default=None, metavar="N",
        help="master seed (default: KTFLOOR_SEED env var, else 12345)",
    )
    p_mc.add_argument(
        "--workers", type=int, default=1, metavar="N",
        help="worker threads; results are identical for any value",
    )
    p_mc.add_argument(
        "--dump-path", default=None, metavar="FILE",
        help="write one sampled noise path as CSV columns (t, V)",
    )
    p_mc.add_argument("--json", action="store_true", help="emit JSON")
    p_mc.set_defaults(handler=cmd_mc)

    p_tank = sub.add_parser(
        "tank", help="LC recycling transfer efficiency and break-even"
    )
    p_tank.add_argument(
        "--inductance", type=float, required=True, metavar="H",
        help="tank inductance in henries",
    )
    p_tank.add_argument(
        "--c1", type=float, required=True, metavar="F",
        help="source capacitance in farads",
    )
    p_tank.add_argument(
        "--c2", type=float, required=True, metavar="F",
        help="destination capacitance in farads",
    )
    p_tank.add_argument(
        "--resistance", type=float, default=0.0, metavar="OHM",
        help="series loop resistance (default 0: ideal tank)",
    )
    p_tank.add_argument(
        "--v0", type=float, required=True, metavar="V",
        help="initial voltage on C1",
    )
    p_tank.add_argument(
        "--temp", type=float, default=ROOM_TEMPERATURE, metavar="K",
        help="bath temperature for kT conversions (default 300)",
    )
    p_tank.add_argument(
        "--e-switch-kt", type=float, default=None, metavar="KT",
        help="control energy per steering switch event, kT units",
    )
    p_tank.add_argument(
        "--n-switches", type=int, default=2, metavar="N",
        help="steering switch events per transfer (default 2, minimum 2)",
    )
    p_tank.add_argument(
        "--simulate", action="store_true",
        help="cross-check the closed form with fixed-step RK4",
    )
    p_tank.add_argument(
        "--dt", type=float, default=None, metavar="S",
        help="RK4 step; must be <= sqrt(L*min(C1,C2))/100",
    )
    p_tank.add_argument(
        "--dump-waveform", default=None, metavar="FILE",
        help="write the RK4 waveform as CSV (t, v_c1, i_l, v_c2, e_loss)",
    )
    p_tank.add_argument("--json", action="store_true", help="emit JSON")
    p_tank.set_defaults(handler=cmd_tank)

    p_sweep = sub.add_parser(
        "sweep", help="one-variable parameter sweep to CSV + manifest"
    )
    p_sweep.add_argument(
        "config", metavar="CONFIG.json", help="sweep configuration file"
    )
    p_sweep.set_defaults(handler=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code is None else int(exc.code)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
