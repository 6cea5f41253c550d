"""The acceptance gate: every criterion at its stated tolerance, one line each."""

import pytest

from weylwalks.acceptance import CRITERIA, run_acceptance

_RESULTS = {}


def _get(number):
    if number not in _RESULTS:
        (result,) = run_acceptance(criteria=[number])
        _RESULTS[number] = result
    return _RESULTS[number]


@pytest.mark.parametrize("number,name", [(n, name) for n, name, _, _ in CRITERIA],
                         ids=[f"criterion_{n}" for n, _, _, _ in CRITERIA])
def test_acceptance_criterion(number, name, capsys):
    result = _get(number)
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.details
