"""Command line front end.

Subcommands: table, estimate, game, validate, catalog.

Exit codes: 0 success (or game won), 1 reproduction or validation
failure, 2 usage error, 3 game lost, 4 protocol fault in a game.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import refdata
from .cost import Budget
from .devices import CatalogError, Fleet, default_catalog, find_device, load_catalog, resource_rate
from .estimators import (
    BruteForceModel,
    DictionaryModel,
    Tf1Model,
    break_time,
    brute_force_cost,
    dictionary_stats,
    progress_years,
    tf1_estimate,
)
from .game import GameResult, ProtocolFault, export_transcript, transcript_lines
from .otp import run_otp_challenge
from .reports import (
    Report,
    build_break_suite_report,
    build_cost_per_bit_report,
    build_device_rate_report,
    build_state_search_report,
    format_duration,
    render_csv,
    render_text,
    report_failures,
)
from .scenarios import (
    Scenario,
    ScenarioError,
    load_scenario,
    scenario_bool,
    scenario_float,
    scenario_fleet,
    scenario_int,
)
from .toycrypto import KeystreamGen

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_GAME_LOST = 3
EXIT_PROTOCOL_FAULT = 4


def _emit(report: Report, as_csv: bool, output: Optional[str]) -> None:
    text = render_csv(report) if as_csv else render_text(report)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _table_report(number: int) -> tuple[Report, list[str]]:
    if number == 1:
        report = build_device_rate_report()
        bad = report_failures(report, "deviation", refdata.TABLE1_TOLERANCE)
    elif number == 2:
        report = build_cost_per_bit_report()
        bad = report_failures(report, "deviation", refdata.TABLE2_TOLERANCE)
    else:
        report = build_state_search_report()
        bad = report_failures(report, "deviation", refdata.TABLE3_TIME_TOLERANCE)
    return report, bad


def cmd_table(args: argparse.Namespace) -> int:
    report, bad = _table_report(args.number)
    _emit(report, args.csv, args.output)
    for line in bad:
        print(f"reproduction failure: {line}", file=sys.stderr)
    return EXIT_FAILURE if bad else EXIT_OK


def _estimate_brute_force(scenario: Scenario) -> Report:
    catalog = default_catalog()
    key_bits = scenario_int(scenario, "key_bits", 1, 1024)
    per_bit = (
        scenario_float(scenario, "bytes_per_key_bit")
        if "bytes_per_key_bit" in scenario.params
        else None
    )
    triple = scenario_bool(scenario, "triple") if "triple" in scenario.params else False
    if per_bit is None:
        per_bit = 360.0 if triple else 120.0
    elif triple:
        raise ScenarioError("give bytes_per_key_bit or triple, not both")
    model = BruteForceModel(key_bits, per_bit)
    cost = brute_force_cost(model)
    fleet = scenario_fleet(scenario, catalog)
    rows = [
        ("key_bits", float(key_bits), "key size searched"),
        ("bytes_per_key_bit", per_bit, "per-candidate price"),
        ("total_cost_bytes", cost, "average over the keyspace"),
    ]
    if fleet is not None:
        est = break_time(cost, fleet)
        rows.extend(
            [
                ("fleet_rate_bytes_per_s", est.fleet_rate, ""),
                ("expected_seconds", est.expected_seconds, format_duration(est.expected_seconds)),
                ("worst_case_seconds", est.worst_case_seconds, format_duration(est.worst_case_seconds)),
            ]
        )
        if "target_years" in scenario.params:
            target = scenario_float(scenario, "target_years")
            speedup = est.expected_seconds / (target * 365.0 * 86400.0)
            rows.append(("required_speedup", speedup, f"to reach {target:g} years"))
            if speedup >= 1.0:
                kwargs = {}
                if "annual_factor" in scenario.params:
                    kwargs["annual_factor"] = scenario_float(scenario, "annual_factor")
                years = progress_years(speedup, **kwargs)
                rows.append(("progress_years", years, "hardware progress wait"))
    return Report(
        title=f"Exhaustive search, {key_bits}-bit key",
        columns=("quantity", "value", "note"),
        rows=tuple(rows),
        provenance=tuple(("computed", "") for _ in rows),
    )


def _estimate_dictionary(scenario: Scenario) -> Report:
    key_bits = scenario_int(scenario, "key_bits", 1, 1024)
    epsilon = scenario_int(scenario, "epsilon", 0, max(0, key_bits - 1))
    kwargs = {}
    if "plaintext_blocks" in scenario.params:
        kwargs["plaintext_blocks"] = scenario_int(scenario, "plaintext_blocks", 1, 64)
    if "steps_per_comparison" in scenario.params:
        kwargs["steps_per_comparison"] = scenario_int(scenario, "steps_per_comparison", 1, 64)
    if "comparison_bound" in scenario.params:
        bound = scenario.params["comparison_bound"].strip().lower()
        if bound not in ("conservative", "upper"):
            raise ScenarioError(
                f"comparison_bound must be conservative or upper, got {bound!r}"
            )
        kwargs["upper_bound"] = bound == "upper"
    stats = dictionary_stats(DictionaryModel(key_bits, epsilon, **kwargs))
    rows = [
        ("entries", stats.entries, "2**(key_bits - epsilon)"),
        ("entry_bits", float(stats.entry_bits), ""),
        ("dictionary_bytes", stats.dictionary_bytes, "storage held while searching"),
        ("expected_comparisons", float(stats.expected_comparisons), ""),
        ("steps_per_lookup", float(stats.steps_per_lookup), ""),
        ("lookup_cost_bytes", stats.lookup_cost, "one lookup leases the storage"),
        ("per_key_cost_bytes", stats.per_key_cost, "2**epsilon lookups per key"),
        ("construction_cost_bytes", stats.construction_cost, "search bound, not tight"),
    ]
    return Report(
        title=f"Dictionary attack, {key_bits}-bit key, epsilon {epsilon}",
        columns=("quantity", "value", "note"),
        rows=tuple(rows),
        provenance=tuple(("computed", "") for _ in rows),
    )


def _estimate_tf1(scenario: Scenario) -> Report:
    catalog = default_catalog()
    word_bits = scenario_int(scenario, "word_bits", 1, 256)
    kwargs = {}
    if "bytes_per_strength_bit" in scenario.params:
        kwargs["bytes_per_strength_bit"] = scenario_float(scenario, "bytes_per_strength_bit")
    if "checker_ops" in scenario.params:
        kwargs["checker_ops"] = scenario_int(scenario, "checker_ops", 1, 4096)
    if "scan_words_per_second" in scenario.params:
        kwargs["scan_words_per_second"] = scenario_float(scenario, "scan_words_per_second")
    fleet = scenario_fleet(scenario, catalog)
    if fleet is None:
        # price on one reference GPU unless the scenario says otherwise
        fleet = Fleet(find_device("ati-radeon-5870", catalog), 1)
    est = tf1_estimate(Tf1Model(word_bits, **kwargs), fleet)
    rows = [
        ("word_bits", float(word_bits), ""),
        ("intended_strength_bits", float(est.intended_strength_bits), "2w by design"),
        ("effective_strength_bits", est.effective_strength_bits, "1.5w after reduction"),
        ("state_search_cost_bytes", est.state_search_cost, ""),
        ("fleet_rate_bytes_per_s", est.fleet_rate, ""),
        ("expected_seconds", est.expected_seconds, format_duration(est.expected_seconds)),
        ("expected_scan_words", est.expected_scan_words, "wait for a zero word"),
        ("scan_seconds", est.scan_seconds, format_duration(est.scan_seconds)),
    ]
    return Report(
        title=f"Stream generator state search, {word_bits}-bit words",
        columns=("quantity", "value", "note"),
        rows=tuple(rows),
        provenance=tuple(("computed", "") for _ in rows),
    )


def cmd_estimate(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except OSError as exc:
        print(f"cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"bad scenario: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    builders = {
        "brute_force": _estimate_brute_force,
        "dictionary": _estimate_dictionary,
        "tf1": _estimate_tf1,
    }
    builder = builders.get(scenario.kind)
    if builder is None:
        print(
            f"scenario kind [{scenario.kind}] is not an estimator; "
            f"expected one of {', '.join(sorted(builders))}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        report = builder(scenario)
    except ScenarioError as exc:
        print(f"bad scenario: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    _emit(report, args.csv, args.output)
    return EXIT_OK


def cmd_game(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except OSError as exc:
        print(f"cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"bad scenario: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if scenario.kind != "game_otp":
        print(
            f"scenario kind [{scenario.kind}] is not a game", file=sys.stderr
        )
        return EXIT_USAGE
    try:
        seed = scenario_int(scenario, "seed", -(2**63), 2**63 - 1)
        bias = scenario_float(scenario, "bias", 0.0, allow_equal=True)
        if bias > 1.0:
            raise ScenarioError(f"bias must be in [0, 1], got {bias}")
        trials = scenario_int(scenario, "trials", 1, 1_000_000)
        # zero is a legal budget: the game then opens already depleted
        budget = scenario_float(scenario, "budget", 0.0, allow_equal=True)
        kwargs = {}
        if "plaintext_bytes" in scenario.params:
            kwargs["plaintext_bytes"] = scenario_int(scenario, "plaintext_bytes", 1, 65536)
        if "win_threshold" in scenario.params:
            alpha = scenario_float(scenario, "win_threshold")
            if not 0.0 < alpha < 1.0:
                raise ScenarioError(f"win_threshold must be in (0, 1), got {alpha}")
            kwargs["win_threshold"] = alpha
        if "per_step_information" in scenario.params:
            kwargs["per_step_information"] = scenario_float(scenario, "per_step_information")
    except ScenarioError as exc:
        print(f"bad scenario: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    keystream = KeystreamGen(bias, f"{seed}:keystream")
    try:
        outcome = run_otp_challenge(
            keystream,
            trials,
            rng_seed=seed,
            budget=Budget.fresh(budget),
            **kwargs,
        )
    except ProtocolFault as fault:
        print(f"protocol fault: {fault}", file=sys.stderr)
        if fault.transcript is not None:
            lines = transcript_lines(fault.transcript)
            lines.append("result ProtocolFault")
            with open(args.transcript, "w", encoding="utf-8") as handle:
                handle.write("\n".join(lines) + "\n")
        return EXIT_PROTOCOL_FAULT
    with open(args.transcript, "w", encoding="utf-8") as handle:
        handle.write(export_transcript(outcome))
    print(f"result {outcome.result.value}")
    print(f"challenges {outcome.successes}/{outcome.trials}")
    print(f"total_cost {outcome.total_cost!r}")
    print(f"budget_remaining {outcome.final_budget.remaining!r}")
    if outcome.p_value is not None:
        print(f"p_value {float(outcome.p_value):.6g}")
    print(f"transcript {args.transcript}")
    return EXIT_OK if outcome.result is GameResult.WON else EXIT_GAME_LOST


def cmd_validate(args: argparse.Namespace) -> int:
    from .experiments import run_validation

    failures = 0
    lines = []
    for number in (1, 2, 3):
        report, bad = _table_report(number)
        status = "PASS" if not bad else "FAIL"
        failures += len(bad)
        lines.append(f"{status} {report.title}")
        lines.extend(f"     {b}" for b in bad)
    suite = build_break_suite_report()
    lines.append(f"PASS {suite.title} (printed figures attached)")
    for result in run_validation(quick=args.quick, seed=args.seed):
        status = "PASS" if result.passed else "FAIL"
        if not result.passed:
            failures += 1
        lines.append(
            f"{status} {result.name}: {result.statistic:.6g} "
            f"(expected {result.expected:.6g} within {result.tolerance:.3g})"
        )
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAILURE if failures else EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as handle:
                catalog = load_catalog(handle)
        except OSError as exc:
            print(f"cannot read catalog: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except CatalogError as exc:
            print(f"bad catalog: {exc}", file=sys.stderr)
            return EXIT_FAILURE
    else:
        catalog = default_catalog()
    rows = []
    for device in catalog:
        rows.append(
            (
                device.name,
                device.transistor_count,
                device.clock_hz,
                device.component_count,
                resource_rate(device),
            )
        )
    report = Report(
        title="Device catalog",
        columns=("device", "transistors", "clock_hz", "components", "rate_bytes_per_s"),
        rows=tuple(rows),
        provenance=tuple(("catalog", "") for _ in rows),
    )
    _emit(report, args.csv, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workfunc",
        description="Cost-of-attack calculator over a byte-step price model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="rebuild a published table and self-check it")
    p_table.add_argument("number", type=int, choices=(1, 2, 3))
    p_table.add_argument("--csv", action="store_true", help="emit CSV instead of text")
    p_table.add_argument("--output", help="write to a file instead of stdout")
    p_table.set_defaults(func=cmd_table)

    p_est = sub.add_parser("estimate", help="run a closed-form estimator scenario")
    p_est.add_argument("scenario", help="scenario file path")
    p_est.add_argument("--csv", action="store_true")
    p_est.add_argument("--output", help="write to a file instead of stdout")
    p_est.set_defaults(func=cmd_estimate)

    p_game = sub.add_parser("game", help="play a budgeted distinguishing game")
    p_game.add_argument("scenario", help="scenario file path")
    p_game.add_argument("--transcript", required=True, help="transcript output path")
    p_game.set_defaults(func=cmd_game)

    p_val = sub.add_parser("validate", help="desk-scale reproduction experiments")
    p_val.add_argument("--quick", action="store_true", help="smaller trial counts")
    p_val.add_argument("--seed", type=int, default=11)
    p_val.add_argument("--output", help="write to a file instead of stdout")
    p_val.set_defaults(func=cmd_validate)

    p_cat = sub.add_parser("catalog", help="show a device catalog with rates")
    p_cat.add_argument("--file", help="catalog CSV path (default: built in)")
    p_cat.add_argument("--csv", action="store_true")
    p_cat.add_argument("--output", help="write to a file instead of stdout")
    p_cat.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
