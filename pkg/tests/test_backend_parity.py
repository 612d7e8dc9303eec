"""The compiled and pure series kernels must agree observationally.

Backend choice happens at import time, so each backend runs in its own
subprocess and the full JSON outputs are compared.
"""

import json
import os
import subprocess
import sys

import pytest

SNIPPET = r"""
import json
from fractions import Fraction

from lbldg.valfield import _backend, series as fs
from lbldg.building import apartment_overlap, overlap_to_json, x_mu
from lbldg.harness.axioms import check_axiom
from lbldg.harness.config import TrialConfig
from lbldg.harness.generators import gen_group_elem, trial_rng
from lbldg.harness.report import report_to_dict
from lbldg.symspace import distance, matrix_to_json

out = {"backend": _backend._impl.__name__.rsplit(".", 1)[-1]}
a = fs.parse("3/2*t^(1/2) + 1 - 2*t^(-3)")
b = fs.parse("t^(1/2) - 1 + t^(-5/2)")
out["sum"] = fs.to_str(fs.add(a, b))
out["prod"] = fs.to_str(fs.mul(a, b))
out["floored"] = fs.to_str(fs.mul(fs.with_floor(a, Fraction(-2)), b))
g = gen_group_elem(trial_rng(3, "parity", 0), 3)
out["g"] = matrix_to_json(g.entries)
out["inv"] = matrix_to_json(g.inverse().entries)
out["overlap"] = overlap_to_json(apartment_overlap(g))
out["dist"] = str(
    distance(x_mu([1, 0, -1]), x_mu([Fraction(1, 2), 0, Fraction(-1, 2)])).finite_value
)
rep = report_to_dict(check_axiom(TrialConfig(n=2, trials=4, seed=9), "A2"))
rep.pop("elapsed_ms")
out["report"] = rep
print(json.dumps(out, sort_keys=True))
"""


def _run(pure):
    env = dict(os.environ)
    if pure:
        env["LBLDG_PURE"] = "1"
    else:
        env.pop("LBLDG_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", SNIPPET], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_backends_agree():
    fast = _run(pure=False)
    pure = _run(pure=True)
    assert pure.pop("backend") == "_kernel_py"
    if fast.pop("backend") != "_kernel":
        pytest.skip("compiled kernel unavailable; parity trivially holds")
    assert fast == pure


def test_pure_env_var_forces_fallback():
    pure = _run(pure=True)
    assert pure["backend"] == "_kernel_py"
