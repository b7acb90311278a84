"""
Command line front end: xswap swap|classify|sweep|verify|sample
"""
import argparse
import json
import logging
import sys

import numpy as np

from xswap.config import (
    DEFAULT_POINTS,
    DEFAULT_VERIFY_CASES,
    EXIT_CODES,
    FAMILIES,
    N_JOBS,
    OUTPUT_FORMATS,
    SAMPLE_CONSTRAINTS,
    SEED,
)
from xswap.families import sweep
from xswap.oracle import concurrence_general, joint_state, measure_bell
from xswap.sample import sample_xstates
from xswap.swap import swap_outcomes, thresholds
from xswap.utils import StateFileError, XSwapError, logger, open_file, save_file
from xswap.verify import OracleVerifier
from xswap.xstate import XState, align_phases, from_matrix, require_valid

STATE_KEYS = {"diag", "o14", "o23"}
MATRIX_KEYS = {"matrix"}


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise StateFileError("%s must be an object, got %r" % (where, obj))
    unknown = set(obj) - allowed
    if unknown:
        raise StateFileError("Unknown keys in %s: %s" % (where, ", ".join(sorted(unknown))))


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StateFileError("%s must be a number, got %r" % (where, value))
    return float(value)


def parse_complex(obj, where):
    """ {re, im} or {mod, phase_rad} (radians) to a complex number """
    if isinstance(obj, dict) and set(obj) == {"re", "im"}:
        return complex(_number(obj["re"], where + ".re"), _number(obj["im"], where + ".im"))
    if isinstance(obj, dict) and set(obj) == {"mod", "phase_rad"}:
        modulus = _number(obj["mod"], where + ".mod")
        return modulus * np.exp(1j * _number(obj["phase_rad"], where + ".phase_rad"))
    raise StateFileError("%s must be {re, im} or {mod, phase_rad}, got %r" % (where, obj))


def parse_state(obj, where="state"):
    """ One state record to an XState; a 'matrix' record must be a valid X-form density matrix """
    if isinstance(obj, dict) and "matrix" in obj:
        _check_keys(obj, MATRIX_KEYS, where)
        rows = obj["matrix"]
        if not (isinstance(rows, list) and len(rows) == 4 and all(isinstance(r, list) and len(r) == 4 for r in rows)):
            raise StateFileError("%s.matrix must be a 4x4 array" % where)
        m = np.array(
            [
                [
                    parse_complex(e, "%s.matrix[%d][%d]" % (where, i, j))
                    if isinstance(e, dict)
                    else _number(e, "%s.matrix[%d][%d]" % (where, i, j))
                    for j, e in enumerate(row)
                ]
                for i, row in enumerate(rows)
            ],
            dtype=complex,
        )
        return from_matrix(m)
    _check_keys(obj, STATE_KEYS, where)
    if not STATE_KEYS <= set(obj):
        raise StateFileError("%s needs diag, o14 and o23" % where)
    diag = obj["diag"]
    if not (isinstance(diag, list) and len(diag) == 4):
        raise StateFileError("%s.diag must hold 4 numbers" % where)
    x = XState(
        *[_number(d, "%s.diag[%d]" % (where, i)) for i, d in enumerate(diag)],
        o14=parse_complex(obj["o14"], where + ".o14"),
        o23=parse_complex(obj["o23"], where + ".o23"),
    )
    return require_valid(x)


def parse_state_file(doc):
    """
    A single state record, {"states": [one or two records]} or a list of one or
    two records (a .jsonl file) to a list of XStates
    """
    if isinstance(doc, list):
        doc = {"states": doc}
    if isinstance(doc, dict) and "states" in doc:
        _check_keys(doc, {"states"}, "document")
        records = doc["states"]
        if not isinstance(records, list) or not 1 <= len(records) <= 2:
            raise StateFileError("states must be a list of one or two states")
        return [parse_state(r, "states[%d]" % i) for i, r in enumerate(records)]
    return [parse_state(doc)]


def state_record(x):
    """ XState to a state record, coherences as {re, im} """
    return {
        "diag": list(x.diagonal),
        "o14": {"re": x.o14.real, "im": x.o14.imag},
        "o23": {"re": x.o23.real, "im": x.o23.imag},
    }


def load_states(file_path):
    doc = open_file(file_path)
    if not isinstance(doc, (dict, list)):
        raise StateFileError("%s is not a state file" % file_path)
    return parse_state_file(doc)


def _emit(report, fmt, text_lines):
    if fmt == "machine":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(text_lines))


def _header(title):
    return "\n" + (" %s: " % title).center(80, "-")


def _threshold_record(report):
    return {
        "c_in": report.c_in,
        "c_th_min": report.c_th_min,
        "c_th_max": report.c_th_max,
        "regime": report.regime.value,
        "threshold_regime": report.threshold_regime.value,
        "radicand_clamped_min": report.radicand_clamped_min,
        "radicand_clamped_max": report.radicand_clamped_max,
        "four_outcome_condition": report.four_outcome_condition,
        "psi_only_condition": report.psi_only_condition,
    }


def _threshold_lines(record):
    return [
        _header("Thresholds"),
        "C_in      %.10f" % record["c_in"],
        "C_th_min  %.10f%s" % (record["c_th_min"], " (radicand clamped)" if record["radicand_clamped_min"] else ""),
        "C_th_max  %.10f%s" % (record["c_th_max"], " (radicand clamped)" if record["radicand_clamped_max"] else ""),
        "regime    %s" % record["regime"],
    ]


def cmd_swap(args):
    """ Four outcomes of the swap, plus thresholds and regime for a single (equal-input) state """
    states = load_states(args.input)
    x = states[0]
    xp = states[-1]
    outcome_set = swap_outcomes(x, xp)
    outcomes = []
    lines = [_header("Swap outcomes")]
    for o in outcome_set:
        record = {"label": o.label.value, "probability": o.probability}
        if o.defined:
            record.update(state_record(o.state))
            record["concurrence"] = o.concurrence
            lines.append(
                "%-5s p=%.10f  C=%.10f  diag=[%s]  o14=%s  o23=%s"
                % (
                    o.label.value,
                    o.probability,
                    o.concurrence,
                    ", ".join("%.10f" % d for d in o.state.diagonal),
                    "{:.10f}".format(o.state.o14),
                    "{:.10f}".format(o.state.o23),
                )
            )
        else:
            record["state"] = None
            record["concurrence"] = None
            lines.append("%-5s p=0  (no conditional state)" % o.label.value)
        outcomes.append(record)
    report = {"equal_inputs": len(states) == 1, "outcomes": outcomes}
    if len(states) == 1:
        report["thresholds"] = _threshold_record(thresholds(x))
        lines += _threshold_lines(report["thresholds"])
    _emit(report, args.format, lines)
    return EXIT_CODES["success"]


def cmd_classify(args):
    """ Thresholds, regime and fired inequality of one state, cross-checked by the oracle """
    states = load_states(args.input)
    if len(states) != 1:
        raise StateFileError("classify takes a single state")
    x = states[0]
    report = _threshold_record(thresholds(x))
    aligned = align_phases(x)
    measured = {m.label.value: m for m in measure_bell(joint_state(aligned, aligned))}
    report["oracle_concurrences"] = {
        label: (concurrence_general(m.rho_ab) if m.rho_ab is not None else None)
        for label, m in measured.items()
    }
    if report["four_outcome_condition"]:
        fired = "all-four inequality"
    elif report["psi_only_condition"]:
        fired = "psi-only inequality"
    else:
        fired = "none"
    report["fired"] = fired
    lines = _threshold_lines(report) + [
        "fired     %s" % fired,
        _header("Oracle outcome concurrences"),
    ]
    lines += [
        "%-5s %s" % (label, "undefined" if c is None else "%.10f" % c)
        for label, c in report["oracle_concurrences"].items()
    ]
    _emit(report, args.format, lines)
    return EXIT_CODES["success"]


def cmd_sweep(args):
    """ Write the family sweep as CSV """
    try:
        df = sweep(args.family, args.start, args.stop, args.points, n_jobs=args.jobs)
    except ValueError as e:
        raise StateFileError("Invalid sweep: %s" % e) from e
    save_file(df, args.out, replace=True)
    return EXIT_CODES["success"]


def cmd_verify(args):
    """ Compare closed forms with the oracle, exit 1 if any deviation is above the bound """
    report = OracleVerifier(n=args.n, seed=args.seed, n_jobs=args.jobs).run()
    record = {
        "n_cases": report.n_cases,
        "bound": report.bound,
        "max_deviations": report.max_deviations,
        "passed": report.passed,
    }
    lines = [_header("Max deviations vs oracle")]
    lines += ["%-36s %.3e" % (k, v) for k, v in report.max_deviations.items()]
    lines.append("%d cases, bound %.0e: %s" % (report.n_cases, report.bound, "PASS" if report.passed else "FAIL"))
    _emit(record, args.format, lines)
    return EXIT_CODES["success"] if report.passed else EXIT_CODES["verification"]


def cmd_sample(args):
    """ Seeded states as JSON lines, one state record per line """
    states = sample_xstates(args.n, seed=args.seed, constraint=args.constraint)
    text = "".join(json.dumps(state_record(x)) + "\n" for x in states)
    if args.out:
        save_file(text, args.out, replace=True)
    else:
        sys.stdout.write(text)
    return EXIT_CODES["success"]


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="xswap", description="Entanglement swapping of X-states")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--jobs", type=int, default=N_JOBS, help="Workers for sweep and verify")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, handler_fn, text in [
        ("swap", cmd_swap, "Outcome states of swapping one state with itself, or two states"),
        ("classify", cmd_classify, "Thresholds and outcome regime of one state"),
    ]:
        sub = subparsers.add_parser(name, help=text)
        sub.add_argument("--input", required=True, help="JSON state file")
        sub.add_argument("--format", choices=OUTPUT_FORMATS, default="text")
        sub.set_defaults(func=handler_fn)

    sub = subparsers.add_parser("sweep", help="CSV sweep of a state family")
    sub.add_argument("--family", choices=FAMILIES, required=True)
    sub.add_argument("--start", type=float, default=0.0)
    sub.add_argument("--stop", type=float, default=1.0)
    sub.add_argument("--points", type=int, default=DEFAULT_POINTS)
    sub.add_argument("--out", required=True, help="CSV file to write")
    sub.set_defaults(func=cmd_sweep)

    sub = subparsers.add_parser("verify", help="Cross-check closed forms with the oracle")
    sub.add_argument("--n", type=int, default=DEFAULT_VERIFY_CASES)
    sub.add_argument("--seed", type=int, default=SEED)
    sub.add_argument("--format", choices=OUTPUT_FORMATS, default="text")
    sub.set_defaults(func=cmd_verify)

    sub = subparsers.add_parser("sample", help="Seeded random X-states as JSON lines")
    sub.add_argument("--n", type=int, default=1)
    sub.add_argument("--seed", type=int, default=SEED)
    sub.add_argument("--constraint", choices=SAMPLE_CONSTRAINTS, default="any")
    sub.add_argument("--out", default=None, help="File to write instead of stdout")
    sub.set_defaults(func=cmd_sample)

    return parser.parse_args(argv)


def main(argv=None):
    try:
        args = parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors, which is also our parse error code
        return e.code if isinstance(e.code, int) else EXIT_CODES["parse"]
    if args.verbose:
        logger.setLevel(logging.DEBUG)
    if getattr(args, "n", 1) < 1:
        logger.error("--n must be >= 1")
        return EXIT_CODES["parse"]
    try:
        return args.func(args)
    except XSwapError as e:
        logger.error("%s", e)
        print("error: %s" % e, file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logger.error("Could not read input: %s", e)
        return EXIT_CODES["io"]


if __name__ == "__main__":
    sys.exit(main())
