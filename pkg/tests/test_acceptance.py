"""Runs every acceptance criterion and prints one PASS/FAIL line for each."""
from __future__ import annotations

import json

import pytest

from polyfaces.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line(), flush=True)
    assert res.passed, json.dumps(res.detail, indent=1, default=str)


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        print(run_criterion(k).line())
