"""Representations shared by the test modules."""

from braidquiver.arrangement import braid_pairs, braid_poset
from braidquiver.embedfunctor import iota_braid, phi_functor
from braidquiver.matrix import Matrix
from braidquiver.quiverrep import (
    DoubleRep,
    constant_rep,
    direct_sum,
    dual,
    skyscraper_rep,
)


def monodromy_rep(a, b, c, d) -> DoubleRep:
    """A_1 rep with E_0 = Q^2 and E_+ = E_- = Q; needs a*c + b*d = 1.

    Simple when a and c are nonzero and a*c != 1.
    """
    P = braid_poset(1)
    gamma = {("0", "+"): Matrix([[1, 0]]), ("0", "-"): Matrix([[a, b]])}
    delta = {("+", "0"): Matrix([[1], [0]]), ("-", "0"): Matrix([[c], [d]])}
    return DoubleRep(P, {"0": 2, "+": 1, "-": 1}, gamma, delta)


def base_reps(n: int) -> dict:
    P = braid_poset(n)
    c1, c2, s = constant_rep(P, 1), constant_rep(P, 2), skyscraper_rep(P, P.origin)
    reps = {
        "const1": c1,
        "const2": c2,
        "sky0": s,
        "const1+sky0": direct_sum(c1, s),
        "const2+sky0": direct_sum(c2, s),
        "const1+const2": direct_sum(c1, c2),
    }
    for name in list(reps):
        reps[f"dual({name})"] = dual(reps[name])
    return reps


def suite_a1() -> dict:
    reps = base_reps(1)
    reps["mono2"] = monodromy_rep(2, 1, 1, -1)
    reps["dual(mono2)"] = dual(reps["mono2"])
    reps["mono1"] = monodromy_rep(1, 0, 1, 5)
    return reps


def suite_a2() -> dict:
    reps = base_reps(2)
    for name in ("const1", "mono2", "mono1"):
        src = suite_a1()[name]
        for i, j in braid_pairs(3):
            reps[f"phi{i}{j}({name})"] = phi_functor(src, iota_braid(1, i, j)).output
    return reps


# deliberately broken fixtures


def broken_monotonicity() -> DoubleRep:
    """constant(1) on A_1 with the specialization + -> 0 set to zero."""
    c = constant_rep(braid_poset(1))
    delta = dict(c.delta_edges)
    delta[("+", "0")] = Matrix([[0]])
    return DoubleRep(c.poset, c.dims, c.gamma_edges, delta)


def broken_invertibility() -> DoubleRep:
    """Q at 0 and +, nothing at -: the transport + -> - cannot be invertible."""
    P = braid_poset(1)
    one = Matrix([[1]])
    return DoubleRep(P, {"0": 1, "+": 1}, {("0", "+"): one}, {("+", "0"): one})


def broken_composition() -> tuple:
    """constant(1) on A_2 with gamma doubled on one ray -> chamber edge."""
    c = constant_rep(braid_poset(2))
    edge = next((lo, up) for lo, up in c.poset.hasse if c.poset.dim(lo) == 1)
    gamma = dict(c.gamma_edges)
    gamma[edge] = Matrix([[2]])
    return DoubleRep(c.poset, c.dims, gamma, c.delta_edges), edge


def broken_transitivity() -> DoubleRep:
    """Q at the origin and on every ray of A_2, identity maps, chambers zero.

    Adjacent rays then transport isomorphically through the origin but
    through zero across the chamber between them.
    """
    P = braid_poset(2)
    rays = [f.sign for f in P if f.dim == 1]
    one = Matrix([[1]])
    dims = {P.origin: 1, **{r: 1 for r in rays}}
    gamma = {(P.origin, r): one for r in rays}
    delta = {(r, P.origin): one for r in rays}
    return DoubleRep(P, dims, gamma, delta)
