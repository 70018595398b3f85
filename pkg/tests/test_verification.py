from collections import Counter

import pytest

from neighboring_nim.core import NimGMove, NimGPosition
from neighboring_nim.geography import geography_from_arcs
from neighboring_nim.reduction import gadget_scripts, reduce_geography, without_gadget_edge
from neighboring_nim.verification import (
    IllegalScriptError,
    verify_no_backwards,
    verify_optimal_sequence,
    verify_safe_sequences,
    verify_scripts,
)

ONE_ARC = geography_from_arcs(2, [(0, 1)], 0, ["y", "z"])
TWO_CYCLE = geography_from_arcs(2, [(0, 1), (1, 0)], 0, ["y", "z"])
TRIANGLE = geography_from_arcs(3, [(0, 1), (1, 2), (2, 0)], 0, ["y", "z", "w"])

# frozen from running verify_scripts on the c-d-less gadget of ONE_ARC
MUTANT_FAILURES = Counter({"deviation-not-losing": 4, "script-illegal": 1})

NAMED_DEVIATIONS = [
    "c(1) instead of e(1)",
    "d(2) instead of d(1)",
    "g(1) instead of d(1)",
    "d(1) instead of c(1)",
    "d(1) instead of X_z(1)",
]


def test_no_backwards_examples():
    # X.z is only reachable through g here, so no backward move ever arises
    one = verify_no_backwards(ONE_ARC)
    assert one.passed and one.situations == 0
    two = verify_no_backwards(TWO_CYCLE)
    assert two.passed and two.situations >= 1
    tri = verify_no_backwards(TRIANGLE)
    assert tri.passed and tri.situations >= 1
    assert tri.coverage["X_y-winning"] and tri.coverage["X_y-losing"]


def test_scripts_examples():
    rep = verify_scripts(ONE_ARC)
    assert rep.passed and rep.situations == 1
    for name in NAMED_DEVIATIONS:
        assert rep.coverage[name] >= 1, name
    assert verify_scripts(TWO_CYCLE).passed


def test_negative_control_missing_cd_edge():
    pos, gmap = reduce_geography(ONE_ARC)
    mutant = without_gadget_edge(pos, gmap, (0, 1), "c", "d")
    rep = verify_scripts(ONE_ARC, reduced=(mutant, gmap))
    assert not rep.passed
    assert Counter(v.kind for v in rep.violations) == MUTANT_FAILURES
    illegal = [v for v in rep.violations if v.kind == "script-illegal"][0]
    assert illegal.move == "c.y.z(1)"
    assert illegal.path[-2:] == ["d.y.z(1)", "c.y.z(1)"]


def test_forward_scripts_one_arc():
    pos, gmap = reduce_geography(ONE_ARC)
    a = NimGMove(gmap.gadget((0, 1)).a, 1)
    for script in gadget_scripts(gmap, (0, 1)):
        assert verify_optimal_sequence(pos, [a, *script]).passed


def test_single_winning_move_script():
    pos = NimGPosition.from_labels({"v": 1})
    assert verify_optimal_sequence(pos, [NimGMove(0, 1)]).passed


def test_bad_script_flagged_at_c():
    pos, gmap = reduce_geography(ONE_ARC)
    gad = gmap.gadget((0, 1))
    script = [NimGMove(gad.a, 1), NimGMove(gad.b, 1), NimGMove(gad.c, 1)]
    rep = verify_optimal_sequence(pos, script)
    assert len(rep.violations) == 1
    assert rep.violations[0].move == "step 2: c.y.z(1)"


def test_illegal_script_reports_step():
    pos, gmap = reduce_geography(ONE_ARC)
    gad = gmap.gadget((0, 1))
    with pytest.raises(IllegalScriptError) as err:
        verify_optimal_sequence(pos, [NimGMove(gad.a, 1), NimGMove(gad.c, 1)])
    assert err.value.step == 1


def test_safe_sequences_triangle():
    rep = verify_safe_sequences(TRIANGLE)
    assert rep.passed and rep.situations > 0


def test_report_rendering():
    rep = verify_scripts(ONE_ARC)
    d = rep.to_dict()
    assert d["pass"] is True and d["instances_checked"] == 1 and d["violations"] == []
    assert "stick-to-the-script: PASS" in rep.render()
    pos, gmap = reduce_geography(ONE_ARC)
    bad = verify_scripts(ONE_ARC, reduced=(without_gadget_edge(pos, gmap, (0, 1), "c", "d"), gmap))
    assert bad.to_dict()["pass"] is False
    assert "FAIL" in bad.render()
