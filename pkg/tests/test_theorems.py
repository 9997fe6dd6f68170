import pytest

from qcong import theorems
from qcong.congruence import FAIL, PASS, SKIPPED, check_congruent
from qcong.exact_core import Cyclotomic, Modulus
from qcong.theorems import CONJECTURE, IDENTITY, PROVED, SAMPLED, SYMBOLIC, Ctx, UnknownStatement, check_statement, scan


def test_registry_shape():
    specs = theorems.list_statements()
    kinds = {s.kind for s in specs}
    assert kinds == {PROVED, CONJECTURE, IDENTITY}
    ids = [s.id for s in specs]
    assert len(ids) == len(set(ids))
    for s in specs:
        assert s.anchor and s.modulus
        assert s.summary()["id"] == s.id


def test_unknown_statement():
    with pytest.raises(UnknownStatement):
        theorems.get("S-NOPE")
    with pytest.raises(UnknownStatement):
        check_statement("S-NOPE", 3)


def test_domain_skip_has_reason():
    r = check_statement("S-FIRST-FULL", 4)
    assert r.verdict == SKIPPED and r.reason


@pytest.mark.parametrize("sid,n", [("S-FIRST-FULL", 5), ("S-SECOND-HALF", 7), ("S-THIRD", 5), ("S-QAB", 5),
                                   ("S-LEMMA21", 7), ("S-4K1-7", 5), ("S-TAURASO-Q", 4)])
def test_small_instances_pass(sid, n):
    assert check_statement(sid, n).verdict == PASS


def test_family_selection():
    r = check_statement("S-FOURTH", 5, family=3)
    assert r.verdict == PASS
    assert check_statement("S-FOURTH", 5, family=4).verdict == SKIPPED


def test_sampled_mode_drops_mixed_factors():
    r = check_statement("S-QAB", 7, mode=SAMPLED, samples=2)
    assert r.verdict == PASS
    assert not any("(1-a*q" in d.factor or "(a-q" in d.factor for d in r.detail)


def test_sampled_mode_is_deterministic():
    a = theorems.sample_values(("a", "b"), 3, 7)
    b = theorems.sample_values(("a", "b"), 3, 7)
    assert a == b and len(a) == 3
    assert all(abs(v) != 1 and v != 0 for env in a for v in env.values())


def test_qab_specializes_to_first_congruence():
    for n in (3, 5, 7, 9):
        lhs, rhs = theorems.qab_sides(Ctx(n, None, {}))
        lhs1 = lhs.specialize({"a": 1, "b": 1})
        rhs1 = rhs.specialize({"a": 1, "b": 1})
        assert check_congruent(lhs1, rhs1, Modulus([(Cyclotomic(n), 3)])).verdict == PASS


def test_detail_reports_valuation_shortfall():
    # the stated form of one conjectured congruence fails; achieved < required on some factor
    r = check_statement("C-2D-MINUS", 5, family=3, mode=SAMPLED, samples=1)
    assert r.verdict == FAIL
    assert any(d.achieved < d.required for d in r.detail)


def test_scan_report():
    rep = scan("S-FIRST-HALF", range(3, 10))
    assert rep.counts == {PASS: 4, FAIL: 0, SKIPPED: 3}
    assert rep.first_failure is None
    assert rep.as_dict()["tested"] == 4
    with pytest.raises(ValueError):
        scan("S-FIRST-HALF", [])


def test_mode_validation():
    with pytest.raises(ValueError):
        check_statement("S-FIRST-FULL", 3, mode="bogus")
    assert SYMBOLIC != SAMPLED
