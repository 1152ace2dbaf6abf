import pytest

from zonoweave import theorems
from zonoweave.theorems import THEOREMS, TheoremReport, greedy_sizes, run


@pytest.mark.parametrize(
    "theorem, ns",
    [("A", [1, 2, 3, 4]), ("B", [1, 2, 3, 4]), ("A'", [2, 3]), ("2.1", [1, 2, 3, 4]),
     ("3.1", [1, 2, 3]), ("4.1", [1, 2, 3]), ("6.1", [3]), ("7.1", [2, 3])],
)
def test_small_runs_pass(theorem, ns):
    rep = run(theorem, ns)
    assert rep.passed, rep.text()
    assert sorted(rep.checked) == ns


def test_counts_reported():
    # number of maximal collections is reported, not asserted elsewhere
    assert run("B", [1, 2, 3, 4]).checked == {1: 1, 2: 1, 3: 2, 4: 10}
    assert run("7.1", [3]).checked == {3: 30}


def test_jobs_do_not_change_output():
    assert run("A", [4], jobs=2).text() == run("A", [4], jobs=1).text()


def test_unknown():
    with pytest.raises(ValueError):
        run("9.9", [2])
    assert "A'" in THEOREMS


def test_failure_carries_witness(monkeypatch):
    monkeypatch.setattr(theorems, "largest_size", lambda n: -1)
    rep = run("B", [3])
    assert not rep.passed
    assert '"sets"' in rep.counterexample
    assert "FAIL" in rep.text() and "counterexample" in rep.text()


def test_report_text():
    rep = TheoremReport("B", [2], {2: 1})
    assert rep.text() == "theorem B: PASS (n=2: 1)\n"


def test_greedy_sizes():
    assert set(greedy_sizes(4, range(10)).values()) == {11}
