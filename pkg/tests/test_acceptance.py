"""The ten acceptance criteria, each exact (tolerance 0) and within its time budget."""

from __future__ import annotations

import pytest

from hopfact.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c.number for c in CRITERIA], ids=[f"criterion-{c.number}-{c.group}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
        for line in result.details:
            print("    " + line)
    assert result.passed, "\n".join(result.details)
