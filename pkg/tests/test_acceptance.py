"""Acceptance criteria at their stated tolerances and time budgets.

Each criterion prints one ``[PASS]``/``[FAIL]`` line (visible with ``-s`` or
in the captured output of ``-v`` runs). A failing criterion stays failing;
see the README for the known ones.
"""

import pytest

from fockvolterra import acceptance

pytestmark = pytest.mark.acceptance


@pytest.mark.parametrize("cid", [c[0] for c in acceptance.CRITERIA],
                         ids=[f"criterion{c[0]}" for c in acceptance.CRITERIA])
def test_criterion(cid, capsys):
    res = acceptance.run_one(cid)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.line()
