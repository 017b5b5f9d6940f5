import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anyonkit.anyon_model import (
    InadmissibleError,
    ds3_model,
    model_from_json,
    model_to_json,
    trivial_model,
    verify_fusion_associativity,
    verify_hexagon,
    verify_modular,
    verify_pentagon,
    verify_qdims,
    verify_unitarity,
    verify_verlinde,
)
from anyonkit.exact_arith import OMEGA, ONE, ZERO

MODEL = ds3_model()

# Fusion table of the quantum double of S3, one row per label A..H; entry
# (a, b) lists the channels of a x b.  Written out by hand from the
# character/conjugacy-class description of the irreducible representations.
FUSION = """
A: A B C D E F G H
B: B A C E D F G H
C: C C ABC DE DE GH FH FG
D: D E DE ACFGH BCFGH DE DE DE
E: E D DE BCFGH ACFGH DE DE DE
F: F F GH DE DE ABF CH CG
G: G G FH DE DE CH ABG CF
H: H H FG DE DE CG CF ABH
"""


def _fusion_table():
    table = {}
    for line in FUSION.strip().splitlines():
        a, rest = line.split(":")
        for b, chans in zip("ABCDEFGH", rest.split()):
            table[(a, b)] = set(chans)
    return table


def test_fusion_table():
    for (a, b), chans in _fusion_table().items():
        assert set(MODEL.fuse(a, b)) == chans


def test_quantum_dimensions():
    assert [MODEL.qdim[x] for x in "ABCDEFGH"] == [1, 1, 2, 3, 3, 2, 2, 2]
    assert verify_qdims(MODEL).ok


def test_twists():
    T = MODEL.T
    assert T[:6] == (ONE, ONE, ONE, -ONE, ONE, ONE)
    assert T[6] == OMEGA and T[7] == OMEGA ** 2


def test_f_symbol_counts():
    assert len(MODEL.F) == 2948
    assert len(MODEL.R) == sum(len(MODEL.fuse(a, b)) for a in "ABCDEFGH" for b in "ABCDEFGH")


@pytest.mark.parametrize(
    "suite, checked",
    [
        (verify_fusion_associativity, 4096),
        (verify_pentagon, 96356),
        (verify_hexagon, 5896),
        (verify_unitarity, 1460),
        (verify_verlinde, 512),
    ],
)
def test_consistency_suites(suite, checked):
    rep = suite(MODEL)
    assert rep.ok, rep.violations[:3]
    assert rep.checked == checked


def test_modular_data():
    rep = verify_modular(MODEL)
    assert rep.ok
    S = MODEL.S
    assert S[0][0] == Fraction(1, 6)
    assert sum((x * x for x in S[0]), ZERO) == 1


def test_trivial_model_passes_everything():
    m = trivial_model()
    for suite in (verify_pentagon, verify_hexagon, verify_unitarity):
        assert suite(m).ok


@pytest.mark.parametrize(
    "key, suite",
    [
        (("C", "C", "C", "C", "A", "A"), verify_pentagon),
        (("C", "C", "C", "C", "A", "A"), verify_unitarity),
    ],
)
def test_mutated_f_symbol_is_detected(key, suite):
    bad = MODEL.with_f(key, -MODEL.F[key])
    assert not suite(bad).ok


def test_mutated_r_symbol_is_detected():
    key = ("D", "D", "A")
    bad = MODEL.with_r(key, -MODEL.R[key])
    assert not verify_hexagon(bad).ok
    assert bad.fingerprint() != MODEL.fingerprint()


def test_inadmissible_lookup():
    with pytest.raises(InadmissibleError):
        MODEL.with_f(("B", "G", "G", "B", "G", "G"), ONE)
    with pytest.raises(InadmissibleError):
        MODEL.r_symbol("A", "B", "A")


def test_json_round_trip():
    text = model_to_json(MODEL)
    back = model_from_json(text)
    assert back.fingerprint() == MODEL.fingerprint()
    assert back.F == MODEL.F and back.R == MODEL.R
    assert json.loads(text) == json.loads(model_to_json(back))


@given(st.sampled_from(sorted(MODEL.F)))
@settings(max_examples=50, deadline=None)
def test_f_symbol_text_round_trip(key):
    from anyonkit.exact_arith import parse

    v = MODEL.F[key]
    assert parse(v.serialize()) == v
