"""Embedding of the A_n face poset into a hyperplane of A_{n+1}, and extension by zero.

For 1 <= i < j <= n+2 the hyperplane L(i,j) of A_{n+1} carries a copy of
A_n: identify {1..n+2} / (i ~ j) with {1..n+1} order-preservingly. The
embedding is built twice, combinatorially on ordered set partitions
(:func:`iota_braid`) and geometrically by pushing witnesses through the
coordinate-duplicating linear map (:func:`iota_geometric`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from braidquiver.arrangement import (
    FacePoset,
    braid_label,
    braid_pairs,
    braid_poset,
    collinear_triples,
    opposed_configurations,
    osp_to_sign,
    sign_to_osp,
    sign_vector,
)
from braidquiver.errors import DomainError, InternalConsistencyError
from braidquiver.exactgeom import rank
from braidquiver.quiverrep import (
    DoubleRep,
    RepMorphism,
    direct_sum,
    dual,
    hom_space,
    is_absolutely_simple,
    is_in_J,
    kernel_cokernel,
)


class CheckReport:
    """Named pass/fail checks in a fixed order, plus optional numeric data."""

    def __init__(self, title: str = ""):
        self.title = title
        self.checks = []
        self.data = {}

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def failures(self) -> list:
        return [name for name, p, _ in self.checks if not p]

    def passed(self, name: str) -> bool:
        for n, p, _ in self.checks:
            if n == name:
                return p
        raise KeyError(name)

    def __repr__(self):
        return f"CheckReport({self.title!r}, ok={self.ok}, failures={self.failures()})"

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in self.checks],
            "data": self.data,
        }

    def lines(self) -> list:
        out = []
        for n, p, d in self.checks:
            line = f"{'PASS' if p else 'FAIL'} {self.title + ': ' if self.title else ''}{n}"
            out.append(line + (f" ({d})" if d else ""))
        return out


# ---------------------------------------------------------------------------
# the embedding


@dataclass
class EmbeddingMap:
    n: int
    i: int
    j: int
    source: FacePoset
    target: FacePoset
    table: dict

    @property
    def label(self) -> str:
        return braid_label(self.i, self.j)

    @property
    def hyperplane_index(self) -> int:
        return self.target.arrangement.index_of(self.label)

    def image(self) -> set:
        return set(self.table.values())

    def inverse(self) -> dict:
        return {v: k for k, v in self.table.items()}

    def __eq__(self, other):
        if not isinstance(other, EmbeddingMap):
            return NotImplemented
        return (self.n, self.i, self.j, self.table) == (other.n, other.i, other.j, other.table)


def _check_indices(n: int, i: int, j: int):
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if not (1 <= i < j <= n + 2):
        raise DomainError(f"need 1 <= i < j <= {n + 2}, got ({i}, {j})")


def _relabel(m: int, j: int) -> int:
    return m if m < j else m + 1


def _finish(n, i, j, source, target, table, how) -> EmbeddingMap:
    emb = EmbeddingMap(n, i, j, source, target, table)
    report = verify_order_embedding(emb)
    if not report.ok:
        raise InternalConsistencyError(f"{how} embedding fails {report.failures()}")
    return emb


def iota_braid(n: int, i: int, j: int) -> EmbeddingMap:
    """Embedding built on ordered set partitions: j joins the block of i."""
    _check_indices(n, i, j)
    source, target = braid_poset(n), braid_poset(n + 1)
    table = {}
    for s in source.signs:
        blocks = []
        for block in sign_to_osp(s, n + 1):
            new = [_relabel(e, j) for e in block]
            if i in block:
                new.append(j)
            blocks.append(tuple(sorted(new)))
        table[s] = osp_to_sign(blocks, n + 2)
    return _finish(n, i, j, source, target, table, "combinatorial")


def duplicate_coordinate(x, n: int, i: int, j: int) -> tuple:
    """Linear isomorphism from V^n onto L(i,j) in V^(n+1).

    Coordinates are relabelled into {1..n+2} minus {j}, coordinate j copies
    coordinate i, and the result is recentred to sum zero (recentring moves
    along (1, ..., 1) and so changes no braid sign).
    """
    y = [Fraction(0)] * (n + 2)
    for m in range(1, n + 2):
        y[_relabel(m, j) - 1] = Fraction(x[m - 1])
    y[j - 1] = Fraction(x[i - 1])
    mean = sum(y) / (n + 2)
    return tuple(v - mean for v in y)


def iota_geometric(n: int, i: int, j: int) -> EmbeddingMap:
    """Embedding built by mapping each face witness into L(i,j) and reading its face."""
    _check_indices(n, i, j)
    source, target = braid_poset(n), braid_poset(n + 1)
    arr = target.arrangement
    table = {f.sign: sign_vector(arr, duplicate_coordinate(f.witness, n, i, j)) for f in source}
    return _finish(n, i, j, source, target, table, "geometric")


def verify_order_embedding(emb: EmbeddingMap) -> CheckReport:
    src, tgt = emb.source, emb.target
    table = emb.table
    rep = CheckReport("embedding")
    bad = [s for s in src.signs if s not in table or table[s] not in tgt.index]
    if bad:
        rep.add("injective", False, f"unmapped or unknown faces {bad[:3]}")
        for name in ("order_preserving", "image_characterization", "downward_closed", "dimension_preserving"):
            rep.add(name, False, "table incomplete")
        return rep
    image = set(table.values())
    rep.add("injective", len(image) == len(table), f"{len(image)} images of {len(table)} faces")

    broken = [
        (a, b)
        for a in src.signs
        for b in src.signs
        if src.leq(a, b) != tgt.leq(table[a], table[b])
    ]
    rep.add("order_preserving", not broken, f"first failure {broken[0]}" if broken else "")

    k = emb.hyperplane_index
    on_hyperplane = {s for s in tgt.signs if s[k] == "0"}
    rep.add(
        "image_characterization",
        image == on_hyperplane,
        f"{len(image)} image faces, {len(on_hyperplane)} faces in {emb.label}",
    )

    leaks = [(lo, d) for d in image for lo in tgt.below(d) if lo not in image]
    rep.add("downward_closed", not leaks, f"first leak {leaks[0]}" if leaks else "")

    wrong = [s for s in src.signs if src.dim(s) != tgt.dim(table[s])]
    rep.add("dimension_preserving", not wrong, f"first failure {wrong[0]}" if wrong else "")
    rep.data = {"source_faces": len(src), "target_faces": len(tgt), "image_faces": len(image)}
    return rep


# ---------------------------------------------------------------------------
# extension by zero


@dataclass
class FunctorResult:
    output: DoubleRep
    embedding: EmbeddingMap


def _check_source(rep: DoubleRep, emb: EmbeddingMap):
    if not rep.poset.same_as(emb.source):
        raise DomainError("representation does not live on the embedding's source poset")


def _check_target(rep: DoubleRep, emb: EmbeddingMap):
    if not rep.poset.same_as(emb.target):
        raise DomainError("representation does not live on the embedding's target poset")


def phi_functor(rep: DoubleRep, emb: EmbeddingMap) -> FunctorResult:
    """Copy ``rep`` onto the image of the embedding, zero elsewhere."""
    _check_source(rep, emb)
    table, inv = emb.table, emb.inverse()
    dims = {table[s]: d for s, d in rep.dims.items()}
    gamma, delta = {}, {}
    for lo, up in emb.target.hasse:
        if lo in inv and up in inv:
            slo, sup = inv[lo], inv[up]
            if (slo, sup) not in rep.gamma_edges:
                raise InternalConsistencyError(f"image edge {lo}/{up} has no source edge")
            gamma[(lo, up)] = rep.gamma_edges[(slo, sup)]
            delta[(up, lo)] = rep.delta_edges[(sup, slo)]
    out = DoubleRep(emb.target, dims, gamma, delta)
    return FunctorResult(out, emb)


def phi_functor_morphism(m: RepMorphism, emb: EmbeddingMap) -> RepMorphism:
    src = phi_functor(m.source, emb).output
    tgt = phi_functor(m.target, emb).output
    return RepMorphism(src, tgt, {emb.table[s]: f for s, f in m.components.items()})


def restrict_along(rep: DoubleRep, emb: EmbeddingMap) -> DoubleRep:
    """Pull a rep on the target back to the source along the embedding."""
    _check_target(rep, emb)
    table = emb.table
    dims = {s: rep.dims[table[s]] for s in emb.source.signs}
    gamma = {(lo, up): rep.gamma_edges[(table[lo], table[up])] for lo, up in emb.source.hasse}
    delta = {(up, lo): rep.delta_edges[(table[up], table[lo])] for lo, up in emb.source.hasse}
    return DoubleRep(emb.source, dims, gamma, delta)


def _relation_checks(report: CheckReport, prefix: str, violations):
    for rel in ("composition", "monotonicity", "transitivity", "invertibility"):
        first = violations.first(rel)
        report.add(f"{prefix}{rel}", first is None, "" if first is None else "at " + "/".join(first.faces))


def verify_functor_preserves_J(rep: DoubleRep, emb: EmbeddingMap) -> CheckReport:
    """Run the relations on the image and replay the image/off-image case split."""
    report = CheckReport("relations")
    report.add("input_in_J", is_in_J(rep).ok)
    out = phi_functor(rep, emb).output
    image = emb.image()
    report.add("vanishes_off_image", all(out.dims[s] == 0 for s in out.poset.signs if s not in image))
    _relation_checks(report, "output_", is_in_J(out))

    straddle_bad = []
    closed_bad = []
    for a, b, c in collinear_triples(out.poset):
        if a in image and c in image and b not in image:
            closed_bad.append((a, b, c))
        if a in image and b in image and c in image:
            continue
        if not (out.phi(a, c).is_zero() and (out.phi(b, c) @ out.phi(a, b)).is_zero()):
            straddle_bad.append((a, b, c))
    report.add("straddling_triples_zero", not straddle_bad, f"first failure {straddle_bad[0]}" if straddle_bad else "")
    report.add("image_segments_stay_in_image", not closed_bad, f"first failure {closed_bad[0]}" if closed_bad else "")
    straddling_pairs = [
        (c1, c2, d) for c1, c2, d in opposed_configurations(out.poset) if (c1 in image) != (c2 in image)
    ]
    report.add(
        "opposed_pairs_never_straddle",
        not straddling_pairs,
        f"first failure {straddling_pairs[0]}" if straddling_pairs else "",
    )
    return report


def verify_fully_faithful(rep1: DoubleRep, rep2: DoubleRep, emb: EmbeddingMap) -> CheckReport:
    """Hom dimensions agree and restriction of morphisms is a bijection."""
    report = CheckReport("hom")
    dim_src, basis_src = hom_space(rep1, rep2)
    im1, im2 = phi_functor(rep1, emb).output, phi_functor(rep2, emb).output
    dim_tgt, basis_tgt = hom_space(im1, im2)
    report.data = {"hom_source": dim_src, "hom_image": dim_tgt}
    report.add("hom_dim_equal", dim_src == dim_tgt, f"{dim_src} = {dim_tgt}" if dim_src == dim_tgt else f"{dim_src} != {dim_tgt}")

    restricted = [
        RepMorphism(rep1, rep2, {s: f.components[emb.table[s]] for s in emb.source.signs})
        for f in basis_tgt
    ]
    all_valid = all(g.is_intertwining() for g in restricted)
    independent = rank([g.flat() for g in restricted]) == len(restricted) if restricted else True
    report.add(
        "restriction_bijective",
        all_valid and independent and len(restricted) == dim_src,
    )
    pushed = [phi_functor_morphism(f, emb) for f in basis_src]
    report.add("functor_on_morphisms", all(g.is_intertwining() for g in pushed))
    return report


def verify_duality_commutes(rep: DoubleRep, emb: EmbeddingMap) -> CheckReport:
    report = CheckReport("dual")
    lhs = phi_functor(dual(rep), emb).output
    rhs = dual(phi_functor(rep, emb).output)
    report.add("phi_dual_equals_dual_phi", lhs == rhs)
    return report


def verify_simple_to_simple(rep: DoubleRep, emb: EmbeddingMap) -> CheckReport:
    report = CheckReport("simple")
    before = is_absolutely_simple(rep)
    after = is_absolutely_simple(phi_functor(rep, emb).output)
    report.data = {"source": before.to_json(), "image": after.to_json()}
    report.add(
        "simple_maps_to_simple",
        (not before.simple) or after.simple,
        f"dim A {before.algebra_dim}/{before.total_dim ** 2} -> {after.algebra_dim}/{after.total_dim ** 2}",
    )
    report.add("certificate_preserved", before == after)
    return report


def verify_exactness(m: RepMorphism, emb: EmbeddingMap) -> CheckReport:
    """Extension by zero commutes with kernels, cokernels and direct sums."""
    report = CheckReport("exact")
    ker, coker = kernel_cokernel(m)
    ker_img, coker_img = kernel_cokernel(phi_functor_morphism(m, emb))
    report.add("kernel", phi_functor(ker, emb).output == ker_img)
    report.add("cokernel", phi_functor(coker, emb).output == coker_img)
    s = phi_functor(direct_sum(m.source, m.target), emb).output
    t = direct_sum(phi_functor(m.source, emb).output, phi_functor(m.target, emb).output)
    report.add("direct_sum", s == t)
    return report


# ---------------------------------------------------------------------------
# corollaries about simple objects


def open_cell_profile(rep: DoubleRep) -> dict:
    return {c: rep.dims[c] for c in rep.poset.chambers()}


@dataclass
class CorollaryVerdict:
    chamber_dims: dict
    zero_profile: bool
    covering: list = field(default_factory=list)
    recovered_via: Optional[tuple] = None
    recovered: Optional[DoubleRep] = None
    round_trip_ok: Optional[bool] = None
    wall_bound_ok: Optional[bool] = None
    notes: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "chamber_dims": dict(self.chamber_dims),
            "zero_profile": self.zero_profile,
            "covering": [braid_label(i, j) for i, j in self.covering],
            "recovered_via": braid_label(*self.recovered_via) if self.recovered_via else None,
            "round_trip_ok": self.round_trip_ok,
            "wall_bound_ok": self.wall_bound_ok,
            "notes": list(self.notes),
            "violations": list(self.violations),
        }


def corollary_analysis(rep: DoubleRep) -> CorollaryVerdict:
    """Check the open-cell claims for an absolutely simple rep in J on A_{n+1}.

    (a) every chamber space has dimension 0 or 1; (b) when all chamber
    spaces vanish, the support lies on some L(i,j) and the rep is the
    extension by zero of its restriction; (c) on A_2, every ray space has
    dimension at most 2. Failures are listed in ``violations``.
    """
    top = rep.poset.arrangement.braid_n
    if top is None:
        raise DomainError("corollary analysis needs a braid arrangement")
    if not is_in_J(rep).ok:
        raise DomainError("representation is not in J")
    if not is_absolutely_simple(rep).simple:
        raise DomainError("representation is not absolutely simple")

    profile = open_cell_profile(rep)
    verdict = CorollaryVerdict(profile, all(d == 0 for d in profile.values()))
    big = [c for c, d in profile.items() if d > 1]
    if big:
        verdict.violations.append(f"chamber {big[0]} has dimension {profile[big[0]]} > 1")

    if verdict.zero_profile:
        if top == 1:
            verdict.notes.append("A_1 has no lower arrangement to recover from")
        else:
            n = top - 1
            support = rep.support()
            arr = rep.poset.arrangement
            for i, j in braid_pairs(n + 2):
                k = arr.index_of(braid_label(i, j))
                if all(s[k] == "0" for s in support):
                    verdict.covering.append((i, j))
            if not verdict.covering:
                verdict.violations.append("no hyperplane L(i,j) contains the support")
            else:
                i, j = verdict.covering[0]
                emb = iota_braid(n, i, j)
                g = restrict_along(rep, emb)
                verdict.recovered_via = (i, j)
                verdict.recovered = g
                if not is_in_J(g).ok:
                    verdict.violations.append(f"restriction along {braid_label(i, j)} is not in J")
                verdict.round_trip_ok = phi_functor(g, emb).output == rep
                if not verdict.round_trip_ok:
                    verdict.violations.append(f"extension of the restriction along {braid_label(i, j)} differs")

    if top == 2:
        rays = [f.sign for f in rep.poset if f.dim == 1]
        over = [s for s in rays if rep.dims[s] > 2]
        verdict.wall_bound_ok = not over
        if over:
            verdict.violations.append(f"ray {over[0]} has dimension {rep.dims[over[0]]} > 2")
    return verdict
