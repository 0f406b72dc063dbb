from itertools import product

import pytest

from braidquiver.arrangement import braid_poset
from braidquiver.errors import DomainError, StructuralError
from braidquiver.matrix import Matrix
from braidquiver.quiverrep import (
    DoubleRep,
    RepMorphism,
    check_invertibility,
    check_monotonicity,
    check_transitivity,
    constant_rep,
    direct_sum,
    dual,
    hom_space,
    identity_morphism,
    is_absolutely_simple,
    is_in_J,
    kernel_cokernel,
    phi,
    skyscraper_rep,
    validate_structure,
    zero_rep,
)

from oracles import burnside_oracle
from suite import (
    broken_composition,
    broken_invertibility,
    broken_monotonicity,
    broken_transitivity,
    monodromy_rep,
    suite_a1,
    suite_a2,
)

A1 = suite_a1()
A2 = suite_a2()


@pytest.mark.parametrize("name", sorted(A1))
def test_suite_a1_in_J(name):
    assert is_in_J(A1[name]).ok


@pytest.mark.parametrize("name", sorted(A2))
def test_suite_a2_in_J(name):
    assert is_in_J(A2[name]).ok


def test_zero_rep_in_J():
    assert is_in_J(zero_rep(braid_poset(2))).ok


def test_broken_monotonicity_witness():
    report = is_in_J(broken_monotonicity())
    assert report.first("monotonicity").faces == ("0", "+")
    assert validate_structure(broken_monotonicity()).ok


def test_broken_invertibility_witness():
    report = is_in_J(broken_invertibility())
    assert report.relations() == {"invertibility"}
    assert {v.faces for v in report.of("invertibility")} == {("-", "+", "0"), ("+", "-", "0")}


def test_broken_composition_witness():
    rep, (ray, chamber) = broken_composition()
    report = validate_structure(rep)
    assert not report.ok
    first = report.first("composition")
    assert first.faces[0] == "000" and first.faces[-1] == chamber
    # the doubled edge itself fails the identity gamma delta = Id
    bad = {v.faces for v in check_monotonicity(rep).of("monotonicity")}
    assert (ray, chamber) in bad


def test_broken_transitivity_witness():
    rep = broken_transitivity()
    report = is_in_J(rep)
    assert report.relations() == {"transitivity"}
    first = report.first("transitivity")
    a, b, c = first.faces
    P = rep.poset
    assert P.dim(a) == 1 and P.dim(c) == 1 and P.dim(b) == 2
    # transport between adjacent rays is 1 directly and 0 through the chamber
    assert phi(rep, a, c) == Matrix([[1]])
    assert (phi(rep, b, c) @ phi(rep, a, b)).is_zero()


def test_monodromy_needs_pairing():
    rep = monodromy_rep(1, 1, 1, 1)  # a*c + b*d = 2
    assert not check_monotonicity(rep).ok
    assert check_invertibility(rep).ok


def test_structural_errors():
    P = braid_poset(1)
    one = Matrix([[1]])
    with pytest.raises(StructuralError):
        DoubleRep(P, {"0": 1, "+": 1}, {("0", "+"): one})  # delta missing
    with pytest.raises(StructuralError):
        DoubleRep(P, {"0": 1, "+": 1}, {("0", "+"): Matrix([[1, 0]])}, {("+", "0"): one})
    with pytest.raises(StructuralError):
        DoubleRep(braid_poset(2), {}, {("000", "+++"): Matrix.zeros(0, 0)})
    with pytest.raises(StructuralError):
        DoubleRep(P, {"0": -1})


def _common_lower_bounds(P, a, b):
    return [c for c in P.signs if P.leq(c, a) and P.leq(c, b)]


@pytest.mark.parametrize("suite", [A1, A2], ids=["A1", "A2"])
def test_phi_independent_of_lower_bound(suite):
    for rep in suite.values():
        P = rep.poset
        for a, b in product(P.signs, repeat=2):
            ref = rep.phi(a, b)
            for c in _common_lower_bounds(P, a, b):
                assert rep.phi_via(a, b, c) == ref


def test_monotone_delta_injective_gamma_surjective():
    for rep in list(A1.values()) + list(A2.values()):
        for lo, up in rep.poset.comparable_pairs():
            d = rep.dims[up]
            assert rep.delta(up, lo).rank() == d
            assert rep.gamma(lo, up).rank() == d


def test_dual_involution_and_J():
    for rep in list(A1.values()) + list(A2.values()):
        assert dual(dual(rep)) == rep
        assert is_in_J(dual(rep)).ok
    m = A1["mono2"]
    assert dual(m) != m


def test_hom_values():
    P = braid_poset(1)
    c1, c2, s = constant_rep(P), constant_rep(P, 2), skyscraper_rep(P, "0")
    assert hom_space(c1, c1)[0] == 1
    assert hom_space(c1, c2)[0] == 2
    assert hom_space(s, c1)[0] == 0
    assert hom_space(c1, s)[0] == 0
    assert hom_space(direct_sum(c1, s), direct_sum(c1, s))[0] == 2
    assert hom_space(A1["mono2"], A1["mono2"])[0] == 1


def test_hom_basis_intertwines():
    dim, basis = hom_space(A1["const1+sky0"], A1["const2+sky0"])
    assert dim == len(basis) == 3
    assert all(f.is_intertwining() for f in basis)


def test_hom_duality_symmetry():
    reps = [A1[k] for k in ("const1", "sky0", "const1+sky0", "mono2", "mono1", "dual(mono2)")]
    for x, y in product(reps, repeat=2):
        assert hom_space(x, y)[0] == hom_space(dual(y), dual(x))[0]


def test_direct_sum_poset_mismatch():
    with pytest.raises(DomainError):
        direct_sum(constant_rep(braid_poset(1)), constant_rep(braid_poset(2)))


def test_kernel_cokernel_of_projection():
    P = braid_poset(1)
    c, s = constant_rep(P), skyscraper_rep(P, "0")
    total = direct_sum(c, s)
    proj = RepMorphism(total, c, {"0": Matrix([[1, 0]]), "+": Matrix([[1]]), "-": Matrix([[1]])})
    assert proj.is_intertwining()
    ker, coker = kernel_cokernel(proj)
    assert ker.dims == s.dims
    assert coker.is_zero()
    assert is_in_J(ker).ok


def test_kernel_cokernel_of_inclusion():
    P = braid_poset(2)
    s = skyscraper_rep(P, P.origin)
    c = constant_rep(P)
    total = direct_sum(c, s)
    comps = {sg: Matrix.zeros(total.dims[sg], 1 if sg == P.origin else 0) for sg in P.signs}
    comps[P.origin] = Matrix([[0], [1]])
    inc = RepMorphism(s, total, comps)
    ker, coker = kernel_cokernel(inc)
    assert ker.is_zero()
    assert coker.dims == c.dims


def test_kernel_cokernel_rejects_non_intertwining():
    P = braid_poset(1)
    c = constant_rep(P)
    bad = RepMorphism(c, c, {"0": Matrix([[1]])})
    assert not bad.is_intertwining()
    with pytest.raises(DomainError):
        kernel_cokernel(bad)


def test_identity_morphism():
    rep = A2["phi13(mono2)"]
    assert identity_morphism(rep).is_intertwining()


def test_simplicity_certificates():
    assert is_absolutely_simple(A1["const1"]).algebra_dim == 9
    assert is_absolutely_simple(A1["sky0"]).simple
    assert is_absolutely_simple(A1["mono2"]).simple
    assert not is_absolutely_simple(A1["mono1"]).simple
    assert not is_absolutely_simple(A1["const2"]).simple
    with pytest.raises(DomainError):
        is_absolutely_simple(zero_rep(braid_poset(1)))


@pytest.mark.parametrize("name", sorted(A1))
def test_simplicity_matches_oracle_a1(name):
    rep = A1[name]
    assert is_absolutely_simple(rep).algebra_dim == burnside_oracle(rep)


@pytest.mark.parametrize("name", ["sky0", "phi13(const1)", "phi12(mono2)", "phi23(mono1)", "const1+sky0"])
def test_simplicity_matches_oracle_a2(name):
    rep = A2[name]
    assert is_absolutely_simple(rep).algebra_dim == burnside_oracle(rep)


def test_non_simple_has_subrep():
    # a non-simple certificate comes with an explicit proper subobject
    rep = A1["mono1"]
    sub = DoubleRep(rep.poset, {"0": 1})
    inc = RepMorphism(sub, rep, {"0": Matrix([[0], [1]])})
    assert inc.is_intertwining()


def test_transitivity_only_on_collinear_triples():
    rep = A2["const1"]
    assert check_transitivity(rep).ok
