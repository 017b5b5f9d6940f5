import pytest

from anyonkit.braid_engine import reference_generators
from anyonkit.exact_arith import OMEGA, ExactMatrix
from anyonkit.group_closure import (
    SIGMA216_RELATIONS,
    IMAGE_GROUPS,
    CapExceeded,
    check_conjugation_equivalence,
    check_presentation,
    closure,
    dseries_generators,
    expand_relation,
    report,
    image_group_check,
    image_group_generators,
)

from reference_matrices import CONJUGATOR_GB, SECTORS

# order, center order, projective order of each checked image
EXPECTED = {
    ("C", "A"): 12,
    ("C", "B"): 24,
    ("C", "C"): 24,
    ("D", "A"): 12,
    ("D", "B"): 24,
    ("D", "F"): 216,
    ("D", "G"): 648,
    ("G", "A"): 162,
    ("G", "B"): 648,
    ("G", "G"): 648,
}


@pytest.mark.parametrize("key", sorted(IMAGE_GROUPS))
def test_image_group_rows(key):
    out = image_group_check(*key)
    assert out["pass"], out["checks"]
    assert out["report"]["order"] == EXPECTED[key]


def test_dg_structure():
    rep = report(closure(image_group_generators("D", "G")))
    assert (rep.order, rep.center_order, rep.projective_order) == (648, 3, 216)


def test_db_projective_order():
    rep = report(closure(image_group_generators("D", "B")))
    assert rep.projective_order == 12


def test_db_second_sector_same_group():
    from reference_matrices import DB_SECOND_SECTOR

    gens = [g.restricted(DB_SECOND_SECTOR) for g in reference_generators("D", "B")]
    rep = report(closure(gens))
    assert (rep.order, rep.projective_order) == (24, 12)


def test_ca_plain_restriction_has_order_six():
    vecs = SECTORS[("C", "A")][0]
    gens = [g.restricted(vecs) for g in reference_generators("C", "A")]
    assert closure(gens).order == 6


def test_gg_full_space_order():
    assert closure(reference_generators("G", "G")).order == 1944


def test_df_raw_order_doubles():
    from anyonkit.braid_engine import printed_generators

    vecs = IMAGE_GROUPS[("D", "F")]["vectors"]
    raw = [g.restricted(vecs) for g in printed_generators("D", "F")]
    assert closure(raw).order == 432


def test_sigma216_presentation():
    gens = image_group_generators("D", "F")
    group = closure(gens)
    assert check_presentation(group, dict(zip("abc", gens)), SIGMA216_RELATIONS, 216)
    assert not check_presentation(group, dict(zip("abc", gens)), ["ab=ba"])


def test_expand_relation():
    assert expand_relation("a^3=1") == [("aaa", "")]
    assert expand_relation("(ab)^2=ba") == [("abab", "ba")]


def test_dseries_orders():
    assert closure(dseries_generators(9, 1, 1, 2, 1, 1)).order == 162
    assert closure(dseries_generators(18, 1, 1, 2, 1, 1)).order == 648
    with pytest.raises(ValueError):
        dseries_generators(5, 1, 1, 2, 1, 1)


def test_gb_conjugator_direction():
    gb = closure(image_group_generators("G", "B"))
    d18 = closure(dseries_generators(18, 1, 1, 2, 1, 1))
    p = ExactMatrix.from_rows(CONJUGATOR_GB)
    assert check_conjugation_equivalence(p.adjoint(), gb, d18)
    assert not check_conjugation_equivalence(p, gb, d18)


def test_ga_conjugates_into_d9():
    ga = closure(image_group_generators("G", "A"))
    d9 = closure(dseries_generators(9, 1, 1, 2, 1, 1))
    p = ExactMatrix.from_rows(CONJUGATOR_GB)
    assert check_conjugation_equivalence(p, ga, d9)


def test_small_groups():
    z3 = closure([ExactMatrix.from_rows([[OMEGA]])])
    assert z3.order == 3
    rep = report(z3)
    assert rep.center_order == 3 and rep.projective_order == 1
    assert report(z3).to_dict()["order"] == 3


def test_cap():
    with pytest.raises(CapExceeded):
        closure(dseries_generators(18, 1, 1, 2, 1, 1), cap=100)
