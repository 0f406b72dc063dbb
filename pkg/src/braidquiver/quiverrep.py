"""Double representations of a face poset and the relations cutting out J.

Index convention: for C' <= C, ``gamma(C', C)`` maps E_{C'} -> E_C and
``delta(C, C')`` maps E_C -> E_{C'}. Monotonicity then reads
gamma(C', C) @ delta(C, C') = Id on E_C.

Maps are supplied on Hasse edges only. Maps between other comparable pairs
are composites along a canonical chain; :func:`validate_structure` checks
that every chain gives the same composite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from braidquiver.arrangement import FacePoset, collinear_triples, opposed_configurations
from braidquiver.errors import DomainError, InternalConsistencyError, StructuralError
from braidquiver.exactgeom import kernel_basis
from braidquiver.matrix import Matrix, block_diag, hstack


@dataclass(frozen=True)
class Violation:
    relation: str
    faces: tuple
    detail: str

    def to_json(self) -> dict:
        return {"relation": self.relation, "faces": list(self.faces), "detail": self.detail}


class ViolationReport:
    """Ordered list of relation failures. Empty means the rep is in J."""

    def __init__(self, violations: Iterable[Violation] = ()):
        self.violations = list(violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __add__(self, other: "ViolationReport") -> "ViolationReport":
        return ViolationReport(self.violations + other.violations)

    def __repr__(self):
        return f"ViolationReport({len(self.violations)} violations)"

    def relations(self) -> set:
        return {v.relation for v in self.violations}

    def of(self, relation: str) -> list:
        return [v for v in self.violations if v.relation == relation]

    def first(self, relation: str) -> Optional[Violation]:
        found = self.of(relation)
        return found[0] if found else None

    def to_json(self) -> list:
        return [v.to_json() for v in self.violations]


class DoubleRep:
    """Vector spaces E_C = Q^dims[C] with generization and specialization maps.

    ``gamma`` is keyed by Hasse edges (lower, upper), ``delta`` by (upper, lower).
    An edge may be omitted when either end is zero-dimensional.
    """

    def __init__(
        self,
        poset: FacePoset,
        dims: Mapping[str, int],
        gamma: Optional[Mapping] = None,
        delta: Optional[Mapping] = None,
    ):
        self.poset = poset
        full = {}
        for s in dims:
            poset.sign(s)
        for s in poset.signs:
            d = dims.get(s, 0)
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise StructuralError(f"dimension at {s} must be a nonnegative integer, got {d!r}")
            full[s] = d
        self.dims = full
        gamma = dict(gamma or {})
        delta = dict(delta or {})
        edges = set(poset.hasse)
        for lo, up in gamma:
            if (lo, up) not in edges:
                raise StructuralError(f"gamma given on {lo}/{up}, which is not a Hasse edge")
        for up, lo in delta:
            if (lo, up) not in edges:
                raise StructuralError(f"delta given on {up}/{lo}, which is not a Hasse edge")
        self.gamma_edges = {}
        self.delta_edges = {}
        for lo, up in poset.hasse:
            dl, du = full[lo], full[up]
            g = gamma.get((lo, up))
            d = delta.get((up, lo))
            if g is None:
                if dl and du:
                    raise StructuralError(f"missing gamma on {lo}/{up}")
                g = Matrix.zeros(du, dl)
            if d is None:
                if dl and du:
                    raise StructuralError(f"missing delta on {up}/{lo}")
                d = Matrix.zeros(dl, du)
            if g.shape != (du, dl):
                raise StructuralError(f"gamma on {lo}/{up} has shape {g.shape}, expected {(du, dl)}")
            if d.shape != (dl, du):
                raise StructuralError(f"delta on {up}/{lo} has shape {d.shape}, expected {(dl, du)}")
            self.gamma_edges[(lo, up)] = g
            self.delta_edges[(up, lo)] = d
        self._gamma: dict = {}
        self._delta: dict = {}
        self._phi: dict = {}

    def __repr__(self):
        return f"DoubleRep(total dim {self.total_dim} on {self.poset!r})"

    def __eq__(self, other):
        if not isinstance(other, DoubleRep):
            return NotImplemented
        return (
            self.poset.same_as(other.poset)
            and self.dims == other.dims
            and self.gamma_edges == other.gamma_edges
            and self.delta_edges == other.delta_edges
        )

    __hash__ = None

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def support(self) -> list:
        return [s for s in self.poset.signs if self.dims[s]]

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def _cover_towards(self, lo: str, up: str) -> str:
        for m in self.poset.lower_covers[up]:
            if self.poset.leq(lo, m):
                return m
        raise InternalConsistencyError(f"no chain from {lo} to {up}")

    def gamma(self, lo: str, up: str) -> Matrix:
        """gamma_{lo,up}: E_lo -> E_up for lo <= up."""
        if lo == up:
            return Matrix.identity(self.dims[lo])
        key = (lo, up)
        if key not in self._gamma:
            if not self.poset.leq(lo, up):
                raise DomainError(f"{lo} is not below {up}")
            m = self._cover_towards(lo, up)
            self._gamma[key] = self.gamma_edges[(m, up)] @ self.gamma(lo, m)
        return self._gamma[key]

    def delta(self, up: str, lo: str) -> Matrix:
        """delta_{up,lo}: E_up -> E_lo for lo <= up."""
        if lo == up:
            return Matrix.identity(self.dims[lo])
        key = (up, lo)
        if key not in self._delta:
            if not self.poset.leq(lo, up):
                raise DomainError(f"{lo} is not below {up}")
            m = self._cover_towards(lo, up)
            self._delta[key] = self.delta(m, lo) @ self.delta_edges[(up, m)]
        return self._delta[key]

    def phi_via(self, a: str, b: str, c: str) -> Matrix:
        """gamma_{c,b} delta_{a,c} for a common lower bound c of a and b."""
        return self.gamma(c, b) @ self.delta(a, c)

    def phi(self, a: str, b: str) -> Matrix:
        """Transport E_a -> E_b through the origin."""
        key = (a, b)
        if key not in self._phi:
            self._phi[key] = self.phi_via(a, b, self.poset.origin)
        return self._phi[key]


def phi(rep: DoubleRep, a: str, b: str) -> Matrix:
    return rep.phi(rep.poset.sign(a), rep.poset.sign(b))


def validate_structure(rep: DoubleRep) -> ViolationReport:
    """Check that gamma and delta composites are independent of the chain."""
    out = []
    poset = rep.poset
    for lo, up in poset.comparable_pairs():
        g, d = rep.gamma(lo, up), rep.delta(up, lo)
        for m in poset.lower_covers[up]:
            if m == lo or not poset.leq(lo, m):
                continue
            if rep.gamma_edges[(m, up)] @ rep.gamma(lo, m) != g:
                out.append(Violation("composition", (lo, m, up), f"gamma {lo}->{up} depends on the chain through {m}"))
            if rep.delta(m, lo) @ rep.delta_edges[(up, m)] != d:
                out.append(Violation("composition", (up, m, lo), f"delta {up}->{lo} depends on the chain through {m}"))
    return ViolationReport(out)


def check_monotonicity(rep: DoubleRep) -> ViolationReport:
    out = []
    for lo, up in rep.poset.comparable_pairs():
        if not rep.dims[up]:
            continue
        if not (rep.gamma(lo, up) @ rep.delta(up, lo)).is_identity():
            out.append(Violation("monotonicity", (lo, up), f"gamma[{lo}->{up}] delta[{up}->{lo}] != Id"))
    return ViolationReport(out)


def check_transitivity(rep: DoubleRep) -> ViolationReport:
    out = []
    for c1, d1, c2 in collinear_triples(rep.poset):
        if rep.phi(c1, c2) != rep.phi(d1, c2) @ rep.phi(c1, d1):
            out.append(Violation("transitivity", (c1, d1, c2), f"phi[{c1}->{c2}] != phi[{d1}->{c2}] phi[{c1}->{d1}]"))
    return ViolationReport(out)


def check_invertibility(rep: DoubleRep) -> ViolationReport:
    out = []
    for c1, c2, d in opposed_configurations(rep.poset):
        if not rep.phi(c1, c2).is_invertible():
            out.append(Violation("invertibility", (c1, c2, d), f"phi[{c1}->{c2}] is not invertible"))
    return ViolationReport(out)


def is_in_J(rep: DoubleRep) -> ViolationReport:
    """All relation failures: composition, monotonicity, transitivity, invertibility."""
    return (
        validate_structure(rep)
        + check_monotonicity(rep)
        + check_transitivity(rep)
        + check_invertibility(rep)
    )


# ---------------------------------------------------------------------------
# constructions


def constant_rep(poset: FacePoset, r: int = 1) -> DoubleRep:
    ident = Matrix.identity(r)
    return DoubleRep(
        poset,
        {s: r for s in poset.signs},
        {e: ident for e in poset.hasse},
        {(up, lo): ident for lo, up in poset.hasse},
    )


def skyscraper_rep(poset: FacePoset, face: str, r: int = 1) -> DoubleRep:
    return DoubleRep(poset, {poset.sign(face): r})


def zero_rep(poset: FacePoset) -> DoubleRep:
    return DoubleRep(poset, {})


def dual(rep: DoubleRep) -> DoubleRep:
    """Same dimensions, gamma and delta swapped and transposed."""
    return DoubleRep(
        rep.poset,
        rep.dims,
        {(lo, up): rep.delta_edges[(up, lo)].T for lo, up in rep.poset.hasse},
        {(up, lo): rep.gamma_edges[(lo, up)].T for lo, up in rep.poset.hasse},
    )


def _same_poset(a: DoubleRep, b: DoubleRep):
    if not a.poset.same_as(b.poset):
        raise DomainError("representations live on different posets")


def direct_sum(rep1: DoubleRep, rep2: DoubleRep) -> DoubleRep:
    _same_poset(rep1, rep2)
    poset = rep1.poset
    return DoubleRep(
        poset,
        {s: rep1.dims[s] + rep2.dims[s] for s in poset.signs},
        {e: block_diag(rep1.gamma_edges[e], rep2.gamma_edges[e]) for e in poset.hasse},
        {
            (up, lo): block_diag(rep1.delta_edges[(up, lo)], rep2.delta_edges[(up, lo)])
            for lo, up in poset.hasse
        },
    )


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class RepMorphism:
    source: DoubleRep
    target: DoubleRep
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        _same_poset(self.source, self.target)
        comps = {}
        for s in self.source.poset.signs:
            shape = (self.target.dims[s], self.source.dims[s])
            m = self.components.get(s)
            if m is None:
                m = Matrix.zeros(*shape)
            if m.shape != shape:
                raise StructuralError(f"component at {s} has shape {m.shape}, expected {shape}")
            comps[s] = m
        self.components = comps

    def __eq__(self, other):
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.components == other.components

    def violations(self) -> list:
        """Hasse edges on which the components fail to intertwine."""
        src, tgt, f = self.source, self.target, self.components
        bad = []
        for lo, up in src.poset.hasse:
            if f[up] @ src.gamma_edges[(lo, up)] != tgt.gamma_edges[(lo, up)] @ f[lo]:
                bad.append(("gamma", lo, up))
            if f[lo] @ src.delta_edges[(up, lo)] != tgt.delta_edges[(up, lo)] @ f[up]:
                bad.append(("delta", up, lo))
        return bad

    def is_intertwining(self) -> bool:
        return not self.violations()

    def flat(self) -> tuple:
        return tuple(x for s in self.source.poset.signs for x in self.components[s].entries())


def identity_morphism(rep: DoubleRep) -> RepMorphism:
    return RepMorphism(rep, rep, {s: Matrix.identity(d) for s, d in rep.dims.items()})


def hom_space(rep1: DoubleRep, rep2: DoubleRep):
    """(dimension, basis) of the space of morphisms rep1 -> rep2.

    Solves the intertwining equations on Hasse edges, which suffice because
    all other maps are composites of edge maps.
    """
    _same_poset(rep1, rep2)
    poset = rep1.poset
    offset = {}
    nvars = 0
    for s in poset.signs:
        offset[s] = nvars
        nvars += rep1.dims[s] * rep2.dims[s]
    if nvars == 0:
        return 0, []

    def var(face, i, j):
        return offset[face] + i * rep1.dims[face] + j

    rows = []

    def emit(terms):
        row = [0] * nvars
        nonzero = False
        for v, c in terms:
            if c:
                row[v] += c
                nonzero = True
        if nonzero:
            rows.append(row)

    for lo, up in poset.hasse:
        d1lo, d1up, d2lo, d2up = rep1.dims[lo], rep1.dims[up], rep2.dims[lo], rep2.dims[up]
        g1, g2 = rep1.gamma_edges[(lo, up)], rep2.gamma_edges[(lo, up)]
        e1, e2 = rep1.delta_edges[(up, lo)], rep2.delta_edges[(up, lo)]
        # f_up g1 - g2 f_lo = 0, shape d2up x d1lo
        for i in range(d2up):
            for j in range(d1lo):
                terms = [(var(up, i, k), g1.rows[k][j]) for k in range(d1up)]
                terms += [(var(lo, k, j), -g2.rows[i][k]) for k in range(d2lo)]
                emit(terms)
        # f_lo e1 - e2 f_up = 0, shape d2lo x d1up
        for i in range(d2lo):
            for j in range(d1up):
                terms = [(var(lo, i, k), e1.rows[k][j]) for k in range(d1lo)]
                terms += [(var(up, k, j), -e2.rows[i][k]) for k in range(d2up)]
                emit(terms)

    basis = []
    for vec in kernel_basis(rows, nvars):
        comps = {}
        for s in poset.signs:
            r, c = rep2.dims[s], rep1.dims[s]
            o = offset[s]
            comps[s] = Matrix([vec[o + i * c:o + (i + 1) * c] for i in range(r)], nrows=r, ncols=c)
        basis.append(RepMorphism(rep1, rep2, comps))
    return len(basis), basis


def _complement(sub: Matrix, n: int) -> Matrix:
    """Standard basis vectors completing the columns of ``sub`` to a basis of Q^n."""
    cols = sub.columns()
    chosen = []
    current = len(cols)
    for i in range(n):
        if current == n:
            break
        e = tuple(1 if k == i else 0 for k in range(n))
        trial = Matrix.from_columns(cols + chosen + [e], n)
        if trial.rank() > current:
            chosen.append(e)
            current += 1
    return Matrix.from_columns(chosen, n)


def kernel_cokernel(m: RepMorphism):
    """Facewise kernel and cokernel of ``m``, with the induced maps."""
    if not m.is_intertwining():
        raise DomainError("morphism does not intertwine the structure maps")
    src, tgt = m.source, m.target
    poset = src.poset
    kern = {s: m.components[s].kernel() for s in poset.signs}
    image = {s: m.components[s].column_space() for s in poset.signs}
    comp = {s: _complement(image[s], tgt.dims[s]) for s in poset.signs}
    proj = {}
    for s in poset.signs:
        n = tgt.dims[s]
        full = hstack([image[s], comp[s]], n)
        inv = full.inverse()
        r = image[s].ncols
        proj[s] = Matrix(inv.rows[r:], nrows=n - r, ncols=n)

    kg, kd, qg, qd = {}, {}, {}, {}
    for lo, up in poset.hasse:
        g = src.gamma_edges[(lo, up)] @ kern[lo]
        x = kern[up].left_inverse() @ g
        if kern[up] @ x != g:
            raise InternalConsistencyError(f"kernel not preserved by gamma on {lo}/{up}")
        kg[(lo, up)] = x
        d = src.delta_edges[(up, lo)] @ kern[up]
        x = kern[lo].left_inverse() @ d
        if kern[lo] @ x != d:
            raise InternalConsistencyError(f"kernel not preserved by delta on {up}/{lo}")
        kd[(up, lo)] = x
        qg[(lo, up)] = proj[up] @ tgt.gamma_edges[(lo, up)] @ comp[lo]
        qd[(up, lo)] = proj[lo] @ tgt.delta_edges[(up, lo)] @ comp[up]
    ker_rep = DoubleRep(poset, {s: kern[s].ncols for s in poset.signs}, kg, kd)
    coker_rep = DoubleRep(poset, {s: comp[s].ncols for s in poset.signs}, qg, qd)
    return ker_rep, coker_rep


# ---------------------------------------------------------------------------
# simplicity


@dataclass(frozen=True)
class SimplicityCertificate:
    simple: bool
    algebra_dim: int
    total_dim: int

    def __bool__(self):
        return self.simple

    def to_json(self) -> dict:
        return {
            "simple": self.simple,
            "algebra_dim": self.algebra_dim,
            "total_dim": self.total_dim,
            "full_dim": self.total_dim ** 2,
        }


class _Span:
    """Incrementally maintained echelon basis of a subspace of Q^n."""

    def __init__(self, n: int):
        self.n = n
        self.rows = []  # (pivot, vector) in insertion order

    def __len__(self):
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.n

    def add(self, vec) -> bool:
        v = list(vec)
        for p, row in self.rows:
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        piv = next((k for k, a in enumerate(v) if a), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        self.rows.append((piv, [a * inv for a in v]))
        return True


def is_absolutely_simple(rep: DoubleRep) -> SimplicityCertificate:
    """Burnside dimension count for the algebra generated by the rep.

    The algebra is generated by the face projections and the edge maps,
    acting on the direct sum T of all E_C. It is computed block by block:
    the (C, D) block is the span of path products E_D -> E_C. The rep is
    absolutely simple iff the algebra is all of End(T).
    """
    if rep.is_zero():
        raise DomainError("simplicity undefined for zero object")
    dims = rep.dims
    out_edges = {s: [] for s in rep.poset.signs}
    for lo, up in rep.poset.hasse:
        if dims[lo] and dims[up]:
            out_edges[lo].append((up, rep.gamma_edges[(lo, up)]))
            out_edges[up].append((lo, rep.delta_edges[(up, lo)]))
    spans = {}
    work = []
    for s in rep.support():
        span = _Span(dims[s] * dims[s])
        ident = Matrix.identity(dims[s])
        span.add(ident.entries())
        spans[(s, s)] = span
        work.append((s, s, ident))
    while work:
        c, d, m = work.pop()
        for e, g in out_edges[c]:
            span = spans.get((e, d))
            if span is None:
                span = spans[(e, d)] = _Span(dims[e] * dims[d])
            if span.full:
                continue
            prod = g @ m
            if span.add(prod.entries()):
                work.append((e, d, prod))
    m = rep.total_dim
    achieved = sum(len(span) for span in spans.values())
    return SimplicityCertificate(achieved == m * m, achieved, m)
