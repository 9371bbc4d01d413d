import pytest

import nilsol


def test_list_spaces():
    spaces = nilsol.list_spaces()
    assert "so23" in spaces and "sl5c" in spaces


def test_sl4r_special_point():
    v = nilsol.check("sl4r", "alpha1=s2/2,alpha3=s2/2")
    assert v["is_soliton"] is True
    assert v["c"] == "-1/8"
    assert v["mode"] == "exact"
    assert v["dim_s"] == 5


def test_negative_and_float():
    v = nilsol.check("so25", "alpha1=s2/2,alpha2=s2/2")
    assert v["mode"] == "float"
    assert v["is_soliton"] is False


def test_bad_spec_raises():
    with pytest.raises(nilsol.NilsolError):
        nilsol.check("sl3r", "alpha7=1")
    with pytest.raises(ValueError):
        nilsol.check("so99", "alpha1=1")


def test_classify_and_verify():
    r = nilsol.classify("so23", grid=4)
    assert r["passed"] and r["cases_total"] == 7
    ok, text = nilsol.verify("lemmas", "sl3r", samples=20)
    assert ok, text
