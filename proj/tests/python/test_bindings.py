import json
import math

import pytest

import cmzeta

A = "13/2 + 21/2*w"


@pytest.fixture(scope="module")
def curve():
    return cmzeta.load_curve("cm15")


def test_curve(curve):
    assert "cm15" in cmzeta.curve_names()
    assert curve.j_invariant() == "-52515 - 85995*w"
    assert int(curve.norm_discriminant()) == 2**12 * 3**6 * 5**6
    assert curve.field == (1, 1)
    assert [curve.classify(p) for p in (5, 7, 17)] == ["bad", "supersingular", "ordinary"]


def test_expand(curve):
    ex = cmzeta.expand(curve, 15)
    assert ex["log"][1] == "1"
    assert ex["log"][5] == "-711 - 2301/2*w"
    assert ex["zeta"][0] == "1"  # z^-1
    assert ex["zeta"][4] == "-237/2 - 767/4*w"  # z^3
    assert cmzeta.expand(curve, 40, route="formal-group")["zeta_of_log"] == cmzeta.expand(curve, 40)["zeta_of_log"]
    with pytest.raises(ValueError):
        cmzeta.expand(curve, 10, route="sideways")


def test_verify(curve):
    reports = cmzeta.verify(curve, A, [7, 17, 19], N=500)
    assert all(r["ok"] for r in reports)
    assert reports[0]["mu"] == "47 mod 7^2"
    assert reports[0]["pre_correction_violation"] == (343, -2)
    bad = cmzeta.verify(curve, "15/2 + 21/2*w", [17], N=200, domain="exact")
    assert not bad[0]["ok"]
    with pytest.raises(ValueError):
        cmzeta.verify(curve, "1 + + w", [17])


def test_recover(curve):
    rec = cmzeta.recover(curve, [(17, 2), (19, 1)], bound=25)
    assert rec["value"] == A
    assert rec["residues"][0] == (17, 2, "151 + 155*w")
    with pytest.raises(ValueError):
        cmzeta.recover(curve, [(23, 2)], bound=25)  # 23^2 exceeds N


def test_analytic(curve):
    v = [cmzeta.analytic_A(curve, k) for k in (0, 1)]
    root = [(1 - math.sqrt(5)) / 2, (1 + math.sqrt(5)) / 2]
    for k in (0, 1):
        assert abs(v[k] - (13 / 2 + 21 / 2 * root[k])) < 1e-8
    assert abs(cmzeta.tau(curve, 0).imag - 0.96824583655185422) < 1e-10
    assert cmzeta.recognize(curve, v[0].real, v[1].real) == A


def test_run_matches_cli_contract():
    code, out, _ = cmzeta.run("recover", 'primes = "17,19"\nbound = 25\n')
    assert code == 0
    assert json.loads(out)["recovered"] == A
    code, _, err = cmzeta.run("recover", 'primes = "7"\n')
    assert code == 2 and err
    with pytest.raises(cmzeta.ConfigError):
        cmzeta.run("verify", "N = [")
