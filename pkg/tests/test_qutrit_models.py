import pytest

from anyonkit.exact_arith import I, OMEGA, ONE, ZERO, mat_adjoint, mat_identity, mat_mul
from anyonkit.qutrit_models import (
    CRLZ_WORD,
    GATE_CHECKS,
    braid_gates,
    crlz,
    encoding_basis,
    gate_report,
    kron,
    leakage_check,
    phase_relation,
    reference_gates,
    restrict,
    sector_generators,
    sum_from_crlz,
    two_qutrit_space,
)


@pytest.fixture(scope="module")
def space():
    return two_qutrit_space()


@pytest.fixture(scope="module")
def crlz_circuit(space):
    return crlz(space)


def test_encodings_are_orthonormal():
    states = [s for name in "UVW" for s in encoding_basis(name).states]
    for a, u in enumerate(states):
        for b, v in enumerate(states):
            assert u.inner(v) == (ONE if a == b else ZERO)
    with pytest.raises(KeyError):
        encoding_basis("X")


def test_w_sector_is_invariant():
    for g in sector_generators("W"):
        assert (g @ g.adjoint()).is_identity()


def test_reference_gates():
    g = reference_gates()
    h = g["h"]
    assert mat_mul(h, g["h_inv"]) == mat_identity(3)
    h4 = mat_mul(mat_mul(h, h), mat_mul(h, h))
    assert h4 == mat_identity(3)
    assert mat_mul(g["X"], mat_mul(g["X"], g["X"])) == mat_identity(3)
    assert [g["CZ"][k][k] for k in (0, 4, 5, 8)] == [ONE, OMEGA, OMEGA ** 2, OMEGA]
    assert mat_mul(kron(mat_identity(3), h), kron(mat_identity(3), g["h_inv"])) == mat_identity(9)


def test_phase_relation():
    a = [[ONE, ZERO], [ZERO, I]]
    assert phase_relation([[OMEGA * x for x in r] for r in a], a) == OMEGA
    assert phase_relation([[ONE, ZERO], [ZERO, ONE]], a) is None


@pytest.mark.parametrize("check", GATE_CHECKS)
def test_gate_reports(check):
    out = gate_report(check)
    assert out["pass"], out["entries"]


def test_gate_report_rejects_unknown():
    with pytest.raises(KeyError):
        gate_report("nope")


def test_p2q2p2_is_h_squared_exactly():
    h = reference_gates()["h"]
    assert [list(r) for r in braid_gates("U")["p2q2p2"].rows] == mat_mul(h, h)


def test_hprime_on_w():
    h = reference_gates()["h"]
    assert phase_relation(braid_gates("W")["h_prime"], h) == -I


def test_w_generators():
    s1, _, s3 = sector_generators("W")
    assert [s1.rows[i][i] for i in range(3)] == [ONE, ONE, OMEGA]
    assert [s3.rows[i][i] for i in range(3)] == [ONE, OMEGA, ONE]


def test_crlz_on_u_block(space, crlz_circuit):
    m = restrict(crlz_circuit, space.block("U"))
    assert phase_relation(m, reference_gates()["CZ"]) == OMEGA
    assert leakage_check(crlz_circuit, space.block("U")).is_zero()


def test_crlz_leaks_on_v_and_w(space, crlz_circuit):
    assert leakage_check(crlz_circuit, space.block("V")) == ONE * 3 / 4
    assert leakage_check(crlz_circuit, space.block("W")) == ONE * 3 / 4


def test_single_crossing_leaks(space):
    sigma4 = space.circuit([4], "s4")
    assert leakage_check(sigma4, space.block("U")) == ONE * 8 / 9


def test_crlz_word_length():
    assert len(CRLZ_WORD) == 32


def test_sum_identity_with_built_crlz(space, crlz_circuit):
    built = restrict(crlz_circuit, space.block("U"))
    assert phase_relation(sum_from_crlz(built), reference_gates()["SUM"]) == OMEGA.conjugate()


def test_sum_is_unitary():
    s = reference_gates()["SUM"]
    assert mat_mul(mat_adjoint(s), s) == mat_identity(9)
