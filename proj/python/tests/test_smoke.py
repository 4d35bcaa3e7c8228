import pytest

import melcoh


def test_basis():
    assert melcoh.dim() == 125
    names = melcoh.basis()
    assert len(names) == 125 and names[0] == "x^(0,0)D_1"
    assert melcoh.degree("Dt1") == -1
    assert melcoh.weight("x^(1,0)D_1") == (0, 0)


def test_bracket():
    assert melcoh.bracket("Dt1", "Dt2") == {"x^(0,0)": 1}
    assert melcoh.bracket("x^(2,4)D_2", "x^(1,0)") == {"x^(3,3)": 2}
    assert melcoh.bracket("D1", "D1") == {}
    with pytest.raises(ValueError):
        melcoh.bracket("D1", "nonsense")


def test_jacobi():
    assert melcoh.jacobi_failures() == 0


def test_cohomology():
    assert [melcoh.total(melcoh.cohomology(s, domain="m3")) for s in range(3)] == [5, 10, 5]
    assert melcoh.total(melcoh.cohomology(1, domain="lt0")) == 7
    assert melcoh.total(melcoh.cohomology(1)) == 0
    with pytest.raises(melcoh.UsageError):
        melcoh.cohomology(1, domain="nowhere")


def test_squaring():
    assert melcoh.sq_value("Dt1", "x^(1,0)D_2", "x~^(1,0)D_2") == {"x^(0,0)D_1": 1}
    assert melcoh.certify_squares(["Dt1", "Dt2"]) == {-5: 2}


def test_verify():
    reports = melcoh.verify(claim="dimension")
    assert len(reports) == 1
    r = reports[0]
    assert r["status"] == "pass" and r["computed"]["dim"] == 125
    assert set(r) == {"id", "status", "expected", "computed", "paper_ref", "elapsed_ms", "notes"}
    assert "main-theorem" in melcoh.claim_ids()
    assert all(r["status"] == "pass" for r in melcoh.verify(tag="structure"))
    with pytest.raises(ValueError):
        melcoh.verify(claim="no-such-claim")
