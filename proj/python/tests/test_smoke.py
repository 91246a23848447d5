from fractions import Fraction
import random

import pytest

import ccmm


def test_group_scheme_info():
    c = ccmm.group_scheme(ccmm.parse_group("cyclic:5"))
    assert (c.points, c.rank) == (5, 5)
    assert c.is_commutative() and c.is_association_scheme() and not c.is_symmetric()
    assert c.p(1, 2, 3) == 1 and c.p(1, 2, 4) == 0


def test_text_round_trip():
    c = ccmm.schurian(ccmm.parse_action("natural:sym:4"))
    assert ccmm.CoherentConfiguration.from_text(c.to_text()) == c


def test_fusion_rejection():
    z5 = ccmm.group_scheme(ccmm.parse_group("cyclic:5"))
    with pytest.raises(ccmm.Rejection):
        ccmm.fusion(z5, [[0], [1, 2], [3], [4]])
    z4 = ccmm.group_scheme(ccmm.parse_group("cyclic:4"))
    assert ccmm.fusion(z4, [[0], [1, 3], [2]]).rank == 3


def test_degrees():
    assert ccmm.character_degrees(ccmm.group_scheme(ccmm.parse_group("sym:3")))[0] == [1, 1, 2]
    degrees, residual = ccmm.character_degrees(ccmm.trivial_configuration(3))
    assert degrees == [3] and residual < 1e-6


def naive(a, b):
    return [[sum(a[i][j] * b[j][k] for j in range(len(b))) for k in range(len(b[0]))] for i in range(len(a))]


def test_embedded_matmul_matches_naive():
    config, family = ccmm.diagonal_example(5, [0, 1])
    assert config.rank == 125 and len(family) == 2
    rng = random.Random(0)
    for r in family:
        a = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)] for _ in range(5)]
        b = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)] for _ in range(5)]
        assert ccmm.embedded_matmul(config, r, a, b) == naive(a, b)


def test_boolean_matmul():
    c = ccmm.trivial_configuration(4)
    r = ccmm.fibers_realization(c)
    a = [[1, 0, 0, 1], [0, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 1]]
    truth = [[int(any(a[i][j] and a[j][k] for j in range(4))) for k in range(4)] for i in range(4)]
    assert ccmm.boolean_matmul(c, r, a, a, seed=1) == truth


def test_realization_verification():
    c = ccmm.trivial_configuration(3)
    r = ccmm.fibers_realization(c)
    assert ccmm.verify_realization(c, r)[0]
    g = list(r.gamma)
    g[0], g[1] = g[1], g[0]
    r.gamma = g
    ok, detail = ccmm.verify_realization(c, r)
    assert not ok and detail


def test_grp_as():
    cfg, r = ccmm.grp_as_realization(ccmm.parse_group("cyclic:8"), [[[0, 1], [0, 2], [0, 4]]])
    assert r.dims == (2, 2, 2)
    assert ccmm.verify_realization(cfg, r)[0]


def test_theorem32():
    for n in (1, 2, 3):
        assert ccmm.theorem32_check(n, seed=0)[0]


def test_exponents():
    b = ccmm.cksu_formula(10)
    assert 2.403 < b.value <= 2.41
    w = ccmm.omega_from_omega_s(b)
    assert w.kind == "omega" and w.replay()
    assert str(w).startswith("omega <= 2.6055")
    assert ccmm.round_up(ccmm.omega_from_omega_s(ccmm.cksu_formula(10)).value, 2) <= 2.62


def test_cli():
    code, out, err = ccmm.run_cli(["demo", "theorem32", "--n", "2", "--seed", "0"])
    assert code == 0 and out.startswith("PASS")
    code, out, _ = ccmm.run_cli(["exponent", "convert"], stdin="omega_s <= 2.41\n")
    assert code == 0 and out.startswith("omega <= 2.6150")
    assert ccmm.run_cli(["bogus"])[0] == 2
