"""Deterministic reports for the verification suites.

A report is a config echo plus one row per check: trial counts, failure
counts, and replayable counterexample payloads. Serialization is stable
(sorted keys, no timestamps inside rows), so two runs with the same config
produce byte-identical JSON apart from the wall-clock field. Trials draw
from per-trial streams split by counter, so execution order cannot change
a report either.
"""

import json
from typing import NamedTuple

SCHEMA = "lbldg-report/1"

# cap stored counterexamples per row; counts still reflect every failure
KEEP = 5


class CheckRow(NamedTuple):
    name: str
    trials: int
    passed: int
    failed: int
    counterexamples: tuple

    @property
    def ok(self):
        return self.failed == 0


class Report(NamedTuple):
    kind: str
    which: str
    config: tuple
    rows: tuple
    elapsed_ms: int

    @property
    def ok(self):
        return all(row.ok for row in self.rows)


def run_check(name, trials, one_trial):
    """Drive one_trial over range(trials). A trial passes when it returns
    None; a JSON-able payload or a raised exception records a failure."""
    passed = failed = 0
    kept = []
    for t in range(trials):
        try:
            bad = one_trial(t)
        except Exception as exc:
            bad = {"error": f"{type(exc).__name__}: {exc}"}
        if bad is None:
            passed += 1
        else:
            failed += 1
            if len(kept) < KEEP:
                payload = dict(bad)
                payload["trial"] = t
                kept.append(payload)
    return CheckRow(name, trials, passed, failed, tuple(kept))


def report_to_dict(report):
    return {
        "schema": SCHEMA,
        "kind": report.kind,
        "which": report.which,
        "config": report.config._asdict(),
        "checks": [
            {
                "name": row.name,
                "trials": row.trials,
                "passed": row.passed,
                "failed": row.failed,
                "counterexamples": list(row.counterexamples),
            }
            for row in report.rows
        ],
        "ok": report.ok,
        "elapsed_ms": report.elapsed_ms,
    }


def report_to_json(report):
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2)


def format_lines(report):
    """One human-readable line per check."""
    out = []
    for row in report.rows:
        verdict = "PASS" if row.ok else "FAIL"
        out.append(
            f"{verdict} {report.which}: {row.name} "
            f"[{row.passed}/{row.trials} trials]"
        )
    return out
