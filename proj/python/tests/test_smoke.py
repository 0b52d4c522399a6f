import math

import pytest

import cubic_census as cc


def test_discriminant_and_maximal_order():
    assert cc.discriminant((0, -1, -1)) == -23
    F = cc.maximal_order((-1, -2, -8))
    assert F.d_K == -503
    assert F.index == 2
    assert F.to_dict()["basis_den"] == 2
    big = cc.discriminant((0, 0, -(10**30)))
    assert big == -27 * 10**60


def test_enumeration():
    fields = cc.enumerate_fields(50)
    assert [F.d_K for F in fields] == [-23, -31, -44]
    assert fields[0].poly == (-1, 0, 1)
    assert cc.isomorphic(fields[0], cc.maximal_order((0, -1, -1)))


def test_units_and_classes():
    F = cc.maximal_order((0, -1, -1))
    u = cc.fundamental_unit(F)
    assert u["eps"] == [0, 1, 0]
    assert abs(float(u["R_K"].split("±")[0]) - 0.2811995743) < 1e-9
    assert cc.class_number(cc.maximal_order((0, 0, -7))) == 3
    r = cc.order_class_number(F, [[1, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert r["h"] == 3
    assert not r["all_invertible"]


def test_splitting():
    F = cc.maximal_order((0, -1, -1))
    assert cc.splitting_type(F, 23) == [(1, 1), (2, 1)]
    assert cc.lambda_S(F) == 9
    assert abs(cc.density_diagnostic(F, 10000) - 1 / 3) < 0.05


def test_census_and_zeta():
    c = cc.census(300)
    recs = c.records()
    assert recs and all(r["weight"] == r["h"] * r["lambda"] for r in recs)
    assert c.pi_S(100) == 28
    assert c.report([100, 300]).startswith("x,pi_S,li")
    z = c.zeta(1.5, math.log(300) / 3)
    assert z.imag == 0 and 0 < z.real < 1
    assert c.log_derivative_residual(1.5, math.log(300) / 3) <= 1e-12
    assert abs(cc.li(1000) - 176.5644942) < 1e-6


def test_cached_count(tmp_path):
    a = cc.count(str(tmp_path / "c"), "100")
    assert a == cc.count(str(tmp_path / "c"), "100")
    assert "\n100,28," in a


def test_errors():
    with pytest.raises(cc.InvalidInput):
        cc.maximal_order((0, 0, -1))
    with pytest.raises(cc.UnsupportedSignature):
        cc.fundamental_unit(cc.maximal_order((0, -3, -1)))
    with pytest.raises(cc.CubicError):
        cc.census(1)
    assert "d_K: -23" in cc.analyze((0, -1, -1))
