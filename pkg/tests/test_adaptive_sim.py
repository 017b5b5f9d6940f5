import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anyonkit.adaptive_sim import (
    SHORT_NAMES,
    Apply,
    Loop,
    Measure,
    MeasurementSpec,
    ProtocolProgram,
    QuditBasis,
    Terminal,
    ancilla,
    check_braid_R,
    field_sqrt,
    measure,
    procedure,
    proportionality,
    protocol_library,
    qudit_gate,
    qudit_state,
    run_exact,
    run_merged,
    run_sampled,
    toffoli_initial,
    verify_alpha_recursion,
)
from anyonkit.adaptive_sim import _anc_state
from anyonkit.exact_arith import OMEGA, ONE, SQRT2, SQRT3, ZERO, Cyclotomic, ZETA
from anyonkit.fusion_space import StateVector
from anyonkit.qutrit_models import encoding_basis, reference_gates, two_qutrit_space

LIB = protocol_library()
F = Fraction


def _enc(name, coeffs):
    out = None
    for c, s in zip(coeffs, encoding_basis(name).states):
        t = s.scaled(c)
        out = t if out is None else out + t
    return out


GENERIC = [F(1, 2), F(1, 2), SQRT2 / 2]


# ----------------------------------------------------------------------
# measurements

amp = st.integers(-2, 2).map(lambda k: Cyclotomic(k))
phase = st.integers(0, 71).map(lambda k: ZETA ** k)


def _specs():
    r3 = SQRT3 / 3
    return [
        MeasurementSpec.computational_zero(0),
        MeasurementSpec.computational(1),
        MeasurementSpec.subspace([{"0": r3, "1": r3, "2": r3}], 0, ("t", "rest")),
        MeasurementSpec.subspace([{"0": 1}, {"1": 1}], 1, ("in", "out")),
        MeasurementSpec.subspace([{"00": SQRT2 / 2, "11": SQRT2 / 2}], None, ("bell", "rest")),
    ]


states = st.lists(st.tuples(amp, phase), min_size=9, max_size=9).map(
    lambda xs: StateVector(QuditBasis((3, 3)), [a * p for a, p in xs])
)


@given(states, st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_projectors_complete_and_idempotent(state, k):
    spec = _specs()[k]
    parts = spec.project(state)
    total = StateVector.zero(state.basis)
    for _, v in parts:
        total = total + v
        # projecting a projected vector returns it on its own outcome only
        hits = [w for _, w in spec.project(v) if not w.is_zero()]
        assert len(hits) <= 1
        if hits:
            assert hits[0] == v
    assert total == state
    for (_, u), (_, v) in itertools.combinations(parts, 2):
        assert u.inner(v) == ZERO


@given(states.filter(lambda s: not s.is_zero()), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_born_probabilities_sum_to_one(state, k):
    outs = measure(state, _specs()[k])
    assert sum((Cyclotomic(o.probability) if isinstance(o.probability, Fraction) else o.probability for o in outs), ZERO) == ONE


def test_pair_charge_measurement():
    sp = two_qutrit_space()
    s = _anc_state(sp, "H_A", "W", 0) + _anc_state(sp, "H_B", "U", 1)
    outs = {o.label: o for o in measure(s, MeasurementSpec.pair_charge_A(0))}
    assert outs["A"].probability == F(1, 2) and outs["not_A"].probability == F(1, 2)


def test_measure_zero_vector():
    with pytest.raises(ValueError):
        measure(StateVector.zero(QuditBasis((3,))), MeasurementSpec.computational(0))


def test_field_sqrt():
    assert field_sqrt(F(4, 9)) == ONE * 2 / 3
    assert field_sqrt(F(1, 2)) == SQRT2 / 2
    assert field_sqrt(F(1, 3)) * field_sqrt(F(1, 3)) == ONE / 3
    assert field_sqrt(F(19, 25)) is None
    assert field_sqrt(F(-1)) is None


def test_outcome_normalization():
    s = qudit_state(QuditBasis((3,)), {"0": 1, "1": 1})
    out = measure(s, MeasurementSpec.computational(0))[0]
    assert out.probability == F(1, 2)
    assert out.normalized().norm_squared() == 1
    odd = qudit_state(QuditBasis((3,)), {"0": 3, "1": 1, "2": 2})
    with pytest.raises(ValueError):
        measure(odd, MeasurementSpec.computational_zero(0))[1].normalized()


def test_ancillas_are_normalized():
    for name in ("H_A", "H_B", "psi", "i0", "i1", "i2", "t0", "t1", "t2"):
        assert ancilla(name).is_unit()
    with pytest.raises(KeyError):
        ancilla("zz")


def test_qudit_gate_targets():
    b = QuditBasis((3, 3))
    x = qudit_gate(b, reference_gates()["X"], [1])
    assert x.apply(qudit_state(b, {"02": 1})) == qudit_state(b, {"00": 1})


# ----------------------------------------------------------------------
# program semantics

def test_loop_validation():
    with pytest.raises(ValueError):
        Loop({"a": ()}, "a", {"x": "b"}, 2)
    with pytest.raises(ValueError):
        Loop({"a": ()}, "a", {}, 0)
    with pytest.raises(ValueError):
        Measure(MeasurementSpec.computational_zero(0), {"0": ()})


def test_simple_loop_tree():
    b = QuditBasis((2,))
    h = [[SQRT2 / 2, SQRT2 / 2], [SQRT2 / 2, -SQRT2 / 2]]
    spec = MeasurementSpec.computational(0, 2)
    body = (Apply(qudit_gate(b, h, [0]), "H"), Measure(spec, {"0": (Terminal("zero"),), "1": (Terminal("again"),)}))
    prog = ProtocolProgram("coin", (Loop({"c": body}, "c", {"again": "c"}, 3),))
    tree = run_exact(prog, qudit_state(b, {"0": 1}))
    assert tree.terminal_distribution() == {"residual": F(1, 8), "zero": F(7, 8)}
    assert tree.is_consistent()
    assert prog.labels() == {"zero", "residual"}
    merged = run_merged(prog, qudit_state(b, {"0": 1}))
    assert {k: v[0] for k, v in merged.items()} == tree.terminal_distribution()


# ----------------------------------------------------------------------
# single-qutrit procedures

@pytest.mark.parametrize(
    "name, enc, expected",
    [
        ("P", "U", {"h": F(1, 3), "identity": F(4, 9), "gamma": F(2, 9)}),
        ("Q", "V", {"h": F(2, 3), "identity": F(2, 9), "gamma": F(1, 9)}),
        ("R", "U", {"gamma": F(4, 9), "identity": F(5, 9)}),
        ("R_inv", "V", {"gamma_inv": F(4, 9), "identity": F(5, 9)}),
    ],
)
def test_procedure_distributions(name, enc, expected):
    tree = run_exact(procedure(name), encoding_basis(enc)[1])
    assert tree.terminal_distribution() == expected
    assert tree.is_consistent()


def test_procedures_act_coherently():
    h = reference_gates()["h"]
    hc = [sum((h[i][j] * GENERIC[j] for j in range(3)), ZERO) for i in range(3)]
    U, V = _enc("U", GENERIC), _enc("V", GENERIC)
    targets = {
        "P": (U, {"h": _enc("U", hc), "identity": U, "gamma": V}),
        "Q": (V, {"h": _enc("U", hc), "identity": U, "gamma": V}),
        "R": (U, {"identity": U, "gamma": V}),
        "R_inv": (V, {"identity": V, "gamma_inv": U}),
    }
    for name, (init, want) in targets.items():
        for leaf in run_exact(procedure(name), init).leaves():
            assert proportionality(leaf.state, want[leaf.terminal]) is not None, (name, leaf.terminal)


def test_w_procedures_coherent():
    sp = two_qutrit_space()

    def enc(anc, e):
        out = _anc_state(sp, anc, e, 0, GENERIC[0])
        for i in (1, 2):
            out = out + _anc_state(sp, anc, e, i, GENERIC[i])
        return out

    for name, start, goal in [("beta_via_S", ("H_A", "W"), ("H_B", "U")), ("beta_inv_via_T", ("H_B", "U"), ("H_A", "W"))]:
        init, target = enc(*start), enc(*goal)
        merged = run_merged(LIB[name].build(2), init)
        (label,) = LIB[name].success
        (state,) = merged[label][1]
        assert proportionality(state, target) is not None


def test_s_and_t_single_round():
    s = run_exact(LIB["beta_via_S"].build(1), LIB["beta_via_S"].initial()).terminal_distribution()
    t = run_exact(LIB["beta_inv_via_T"].build(1), LIB["beta_inv_via_T"].initial()).terminal_distribution()
    assert s == {"beta": F(3, 4), "residual": F(1, 4)}
    assert t == {"beta_inv": F(1, 2), "residual": F(1, 2)}


# ----------------------------------------------------------------------
# repeat-until-success chains

CHAINS = ["hadamard_via_P", "hadamard_via_Q", "gamma_via_R", "gamma_inv_via_R", "beta_via_S", "beta_inv_via_T", "flip2", "sigma_x_measurement"]


@pytest.mark.parametrize("name", CHAINS)
@pytest.mark.parametrize("n", range(1, 7))
def test_chain_closed_forms(name, n):
    e = LIB[name]
    tree = run_exact(e.build(n), e.initial())
    assert tree.probability(e.success) == e.closed_form(n)
    assert tree.is_consistent()


def test_closed_form_values():
    assert LIB["hadamard_via_P"].closed_form(1) == F(1, 3)
    assert LIB["hadamard_via_P"].closed_form(5) == F(18433, 19683)
    assert LIB["gamma_via_R"].closed_form(4) == 1 - F(625, 6561)
    assert LIB["hadamard_via_Q"].closed_form(1) == F(2, 3)


@pytest.mark.parametrize("n", range(1, 4))
def test_merged_matches_full_tree(n):
    for name, e in LIB.items():
        tree = run_exact(e.build(n), e.initial())
        merged = run_merged(e.build(n), e.initial())
        assert {k: v[0] for k, v in merged.items()} == tree.terminal_distribution(), name


def test_flip2_round_probabilities():
    e = LIB["flip2"]
    tree = run_exact(e.build(1), e.initial())
    assert tree.root.conditional == [F(1, 3)] * 3


def test_flip2_coherent():
    e = LIB["flip2"]
    psi = ancilla("psi").as_dict()
    want = qudit_state(QuditBasis((3, 3)), {a + b: c * p for a, c in {"0": F(1, 2), "1": F(1, 2), "2": -SQRT2 / 2}.items() for b, p in psi.items()})
    merged = run_merged(e.build(4), e.initial())
    (state,) = merged["FLIP2"][1]
    assert proportionality(state, want) is not None


def test_psi_ancilla_preparation():
    e = LIB["psi_ancilla_prep"]
    tree = run_exact(e.build(1), e.initial())
    assert tree.probability("psi") == F(1, 9)
    psi, t0 = ancilla("psi").as_dict(), ancilla("t0").as_dict()
    want = qudit_state(QuditBasis((3, 3)), {a + b: x * y for a, x in t0.items() for b, y in psi.items()})
    for leaf in tree.leaves():
        if leaf.terminal == "psi":
            assert proportionality(leaf.state, want) is not None


@pytest.mark.parametrize("bits", ["".join(b) for b in itertools.product("01", repeat=3)])
def test_lambda2_sigma_z(bits):
    e = LIB["lambda2_sigma_z"]
    s = qudit_state(QuditBasis((3, 3, 3)), {bits: 1})
    (leaf,) = run_exact(e.build(1), s).leaves()
    assert proportionality(leaf.state, s) == (-ONE if bits == "111" else ONE)


@pytest.mark.parametrize("alpha2", [F(0), F(9, 25), F(1)])
@pytest.mark.parametrize("n", range(1, 6))
def test_alpha_recursion(alpha2, n):
    out = verify_alpha_recursion(alpha2, n)
    assert out["match"]
    if alpha2 == F(9, 25):
        tree = run_exact(LIB["sigma_x_measurement"].build(n), LIB["sigma_x_measurement"].initial())
        assert tree.probability("plus") == F(9, 25) * (1 - F(1, 9 ** n))
        assert tree.probability({"minus", "plus"}) == 1


def test_alpha_recursion_values():
    out = verify_alpha_recursion(F(9, 25), 2)
    assert out["alpha2_n"] == F(1, 145)
    assert out["no_plus"] == F(29, 45)
    with pytest.raises(ValueError):
        verify_alpha_recursion(F(3, 2), 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_toffoli(n):
    e = LIB["toffoli_from_cz"]
    merged = run_merged(e.build(n), e.initial())
    assert merged["toffoli"][0] == 1 - F(1, 2 ** n)


def test_toffoli_coherent():
    e = LIB["toffoli_from_cz"]
    terms = {f"{i}{j}{k}": SQRT2 / 4 * (1 + i + 2 * j + k) for i in range(2) for j in range(2) for k in range(2)}
    init = toffoli_initial(terms)
    want = toffoli_initial({s[:2] + str((int(s[0]) * int(s[1]) + int(s[2])) % 2): v for s, v in terms.items()})
    tree = run_exact(e.build(2), init)
    for leaf in tree.leaves():
        if leaf.terminal == "toffoli":
            assert proportionality(leaf.state, want) is not None


def test_short_names():
    assert set(SHORT_NAMES.values()) <= set(LIB)


# ----------------------------------------------------------------------
# braid R amplitudes

def test_braid_r_phases():
    out = check_braid_R()
    w2 = OMEGA ** 2
    assert out["phases"]["first"] == [w2] * 3
    assert out["phases"]["second"] == [-w2] * 3
    assert not out["exact"]


# ----------------------------------------------------------------------
# sampling

def test_sampling_reproducible_and_order_free():
    e = LIB["gamma_via_R"]
    tree = run_exact(e.build(3), e.initial())
    a = run_sampled(e.build(3), e.initial(), seed=11, trials=3000, tree=tree)
    b = run_sampled(e.build(3), e.initial(), seed=11, trials=3000, tree=tree)
    c = run_sampled(e.build(3), e.initial(), seed=12, trials=3000, tree=tree)
    assert a.counts == b.counts and a.counts != c.counts
    p = float(e.closed_form(3))
    assert abs(a.frequency(e.success) - p) <= 4 * math.sqrt(p * (1 - p) / 3000)


def test_sampling_prefix_stability():
    e = LIB["hadamard_via_P"]
    tree = run_exact(e.build(2), e.initial())
    small = run_sampled(e.build(2), e.initial(), seed=5, trials=200, tree=tree)
    big = run_sampled(e.build(2), e.initial(), seed=5, trials=400, tree=tree)
    assert all(big.counts.get(k, 0) >= v for k, v in small.counts.items())
    with pytest.raises(ValueError):
        run_sampled(e.build(2), e.initial(), seed=5, trials=0, tree=tree)
