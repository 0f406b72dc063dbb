from fractions import Fraction

import pytest

from braidquiver.arrangement import braid_pairs, braid_poset, sign_vector
from braidquiver.embedfunctor import (
    corollary_analysis,
    duplicate_coordinate,
    iota_braid,
    iota_geometric,
    open_cell_profile,
    phi_functor,
    phi_functor_morphism,
    restrict_along,
    verify_duality_commutes,
    verify_exactness,
    verify_fully_faithful,
    verify_functor_preserves_J,
    verify_order_embedding,
    verify_simple_to_simple,
)
from braidquiver.errors import DomainError
from braidquiver.matrix import Matrix
from braidquiver.quiverrep import (
    RepMorphism,
    constant_rep,
    direct_sum,
    hom_space,
    is_in_J,
    skyscraper_rep,
)

from suite import broken_monotonicity, suite_a1, suite_a2

A1 = suite_a1()
PAIRS_1 = braid_pairs(3)


def test_iota_table_example():
    emb = iota_braid(1, 1, 3)
    assert emb.table == {"0": "000", "-": "-0+", "+": "+0-"}
    assert emb.label == "L(1,3)"


@pytest.mark.parametrize("n", [1, 2])
def test_braid_and_geometric_embeddings_agree(n):
    for i, j in braid_pairs(n + 2):
        a, b = iota_braid(n, i, j), iota_geometric(n, i, j)
        assert a.table == b.table
        assert verify_order_embedding(a).ok


def test_order_embedding_check_names():
    report = verify_order_embedding(iota_braid(2, 2, 4))
    assert [name for name, _, _ in report.checks] == [
        "injective",
        "order_preserving",
        "image_characterization",
        "downward_closed",
        "dimension_preserving",
    ]


@pytest.mark.parametrize("args", [(1, 0, 2), (1, 2, 2), (1, 3, 4), (1, 2, 1), (0, 1, 2)])
def test_bad_indices(args):
    with pytest.raises(DomainError):
        iota_braid(*args)


def test_duplicate_coordinate_lands_on_hyperplane():
    x = (Fraction(2), Fraction(-1), Fraction(-1))
    y = duplicate_coordinate(x, 2, 2, 4)
    assert sum(y) == 0 and y[1] == y[3]
    arr = braid_poset(3).arrangement
    assert sign_vector(arr, y)[arr.index_of("L(2,4)")] == "0"


def test_image_of_hyperplane_is_its_zero_set():
    emb = iota_braid(2, 1, 2)
    k = emb.hyperplane_index
    assert emb.image() == {s for s in emb.target.signs if s[k] == "0"}


@pytest.mark.parametrize("name", sorted(A1))
@pytest.mark.parametrize("ij", PAIRS_1)
def test_phi_preserves_J(name, ij):
    report = verify_functor_preserves_J(A1[name], iota_braid(1, *ij))
    assert report.ok, report.failures()


def test_phi_rejects_wrong_poset():
    with pytest.raises(DomainError):
        phi_functor(constant_rep(braid_poset(2)), iota_braid(1, 1, 2))


def test_phi_of_broken_rep_is_still_broken():
    emb = iota_braid(1, 1, 3)
    out = phi_functor(broken_monotonicity(), emb).output
    assert "monotonicity" in is_in_J(out).relations()
    report = verify_functor_preserves_J(broken_monotonicity(), emb)
    assert not report.passed("input_in_J")


def test_restrict_inverts_phi():
    emb = iota_braid(1, 2, 3)
    for rep in A1.values():
        assert restrict_along(phi_functor(rep, emb).output, emb) == rep


def test_fully_faithful_pairs():
    keys = ["const1", "sky0", "const1+sky0", "mono2", "dual(mono2)"]
    emb = iota_braid(1, 1, 2)
    for a in keys:
        for b in keys:
            report = verify_fully_faithful(A1[a], A1[b], emb)
            assert report.ok, (a, b, report.failures())


def test_functor_on_morphisms_composes():
    P = braid_poset(1)
    c, s = constant_rep(P), skyscraper_rep(P, "0")
    proj = RepMorphism(direct_sum(c, s), c, {"0": Matrix([[1, 0]]), "+": Matrix([[1]]), "-": Matrix([[1]])})
    image = phi_functor_morphism(proj, iota_braid(1, 1, 3))
    assert image.is_intertwining()
    assert verify_exactness(proj, iota_braid(1, 1, 3)).ok


@pytest.mark.parametrize("ij", PAIRS_1)
def test_duality_commutes(ij):
    emb = iota_braid(1, *ij)
    for rep in A1.values():
        assert verify_duality_commutes(rep, emb).ok


def test_simple_to_simple_certificates():
    emb = iota_braid(1, 1, 3)
    report = verify_simple_to_simple(A1["const1"], emb)
    assert report.ok
    assert report.data["image"]["algebra_dim"] == 9
    report = verify_simple_to_simple(A1["const1+sky0"], emb)
    assert report.ok and not report.data["image"]["simple"]


def test_corollary_on_phi_image():
    rep = phi_functor(A1["const1"], iota_braid(1, 1, 3)).output
    verdict = corollary_analysis(rep)
    assert verdict.ok and verdict.zero_profile
    assert verdict.covering == [(1, 3)]
    assert verdict.recovered_via == (1, 3)
    assert verdict.round_trip_ok
    assert verdict.recovered == A1["const1"]


def test_corollary_lists_every_covering_hyperplane():
    # the origin skyscraper lies on every hyperplane
    verdict = corollary_analysis(skyscraper_rep(braid_poset(2), "000"))
    assert verdict.covering == [(1, 2), (1, 3), (2, 3)]
    assert verdict.recovered_via == (1, 2)
    assert verdict.round_trip_ok


def test_corollary_constant_a2():
    verdict = corollary_analysis(constant_rep(braid_poset(2)))
    assert verdict.ok
    assert set(open_cell_profile(constant_rep(braid_poset(2))).values()) == {1}
    assert verdict.wall_bound_ok


def test_corollary_a1_zero_profile_note():
    verdict = corollary_analysis(skyscraper_rep(braid_poset(1), "0"))
    assert verdict.ok and verdict.notes


def test_corollary_domain_errors():
    with pytest.raises(DomainError):
        corollary_analysis(A1["const1+sky0"])
    with pytest.raises(DomainError):
        corollary_analysis(broken_monotonicity())


def test_a2_to_a3_constant():
    # one step further up: constant(1) on A_2 along L(2,4)
    rep = constant_rep(braid_poset(2))
    emb = iota_braid(2, 2, 4)
    out = phi_functor(rep, emb).output
    assert out.total_dim == 13
    assert hom_space(out, out)[0] == 1
    assert verify_duality_commutes(rep, emb).ok


def test_suite_a2_contains_images():
    a2 = suite_a2()
    for i, j in PAIRS_1:
        rep = a2[f"phi{i}{j}(mono2)"]
        assert set(open_cell_profile(rep).values()) == {0}
