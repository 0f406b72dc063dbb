"""Central real arrangements, their faces, and the closure order on faces.

A face is named by its sign string over the alphabet "+-0", one character per
hyperplane in arrangement order. Sign strings are the identifiers used by
every other module and by all file formats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence, Union

from braidquiver.errors import DomainError, MalformedInputError
from braidquiver.exactgeom import LinearSystem, dot, rank, solve_feasible, to_vector

SIGNS = "0-+"
_SIGN_KEY = {"0": 0, "-": 1, "+": 2}
_NEG = {"+": "-", "-": "+", "0": "0"}


def sign_of(q: Fraction) -> str:
    return "+" if q > 0 else "-" if q < 0 else "0"


def sign_key(sign: str) -> tuple:
    return tuple(_SIGN_KEY[s] for s in sign)


def negate_sign(sign: str) -> str:
    return "".join(_NEG[s] for s in sign)


@dataclass(frozen=True)
class Hyperplane:
    label: str
    normal: tuple

    def __post_init__(self):
        normal = to_vector(self.normal)
        if all(x == 0 for x in normal):
            raise MalformedInputError(f"hyperplane {self.label} has zero normal")
        object.__setattr__(self, "normal", normal)


@dataclass(frozen=True)
class Arrangement:
    """Linear hyperplanes restricted to the subspace cut out by ``subspace`` rows.

    ``braid_n`` is set for the braid arrangement A_n and None otherwise.
    """

    ambient_dim: int
    subspace: tuple
    hyperplanes: tuple
    braid_n: Optional[int] = None

    def __post_init__(self):
        subspace = tuple(to_vector(r) for r in self.subspace)
        for row in subspace:
            if len(row) != self.ambient_dim:
                raise MalformedInputError("subspace row has wrong length")
        for h in self.hyperplanes:
            if len(h.normal) != self.ambient_dim:
                raise MalformedInputError(f"normal of {h.label} has wrong length")
        labels = [h.label for h in self.hyperplanes]
        if len(set(labels)) != len(labels):
            raise MalformedInputError("duplicate hyperplane labels")
        object.__setattr__(self, "subspace", subspace)
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        normals = [h.normal for h in self.hyperplanes]
        if rank(list(subspace) + normals) != self.ambient_dim:
            raise DomainError("arrangement is not essential on its subspace")

    @property
    def dim(self) -> int:
        """Dimension of the subspace the arrangement lives in."""
        return self.ambient_dim - rank(self.subspace)

    def __len__(self):
        return len(self.hyperplanes)

    def labels(self) -> list:
        return [h.label for h in self.hyperplanes]

    def index_of(self, label: str) -> int:
        for k, h in enumerate(self.hyperplanes):
            if h.label == label:
                return k
        raise DomainError(f"no hyperplane labelled {label!r}")

    def in_subspace(self, point: Sequence) -> bool:
        return all(dot(r, point) == 0 for r in self.subspace)


def braid_label(i: int, j: int) -> str:
    return f"L({i},{j})"


def braid_pairs(m: int) -> list:
    """Pairs (i, j), 1 <= i < j <= m, in lexicographic order."""
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


@lru_cache(maxsize=None)
def braid_arrangement(n: int) -> Arrangement:
    """The arrangement A_n: hyperplanes x_i = x_j inside sum(x) = 0 in Q^(n+1)."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"braid arrangement needs n >= 1, got {n!r}")
    m = n + 1
    hyps = []
    for i, j in braid_pairs(m):
        normal = [0] * m
        normal[i - 1], normal[j - 1] = 1, -1
        hyps.append(Hyperplane(braid_label(i, j), tuple(normal)))
    return Arrangement(m, ((1,) * m,), tuple(hyps), braid_n=n)


def rn_chart(n: int) -> Arrangement:
    """A_n pulled back to Q^n along y -> (y_1, ..., y_n, -sum y).

    Hyperplanes follow the order of ``braid_arrangement(n)``: L(i,j) becomes
    A(i,j) = Y_i - Y_j for j <= n and L(i,n+1) becomes B(i) = 2Y_i + sum_{k != i} Y_k.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"chart needs n >= 1, got {n!r}")
    hyps = []
    for i, j in braid_pairs(n + 1):
        if j <= n:
            normal = [0] * n
            normal[i - 1], normal[j - 1] = 1, -1
            hyps.append(Hyperplane(f"A({i},{j})", tuple(normal)))
        else:
            normal = [1] * n
            normal[i - 1] = 2
            hyps.append(Hyperplane(f"B({i})", tuple(normal)))
    return Arrangement(n, (), tuple(hyps))


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    sign: str
    dim: int
    witness: tuple = field(compare=False)


def check_sign(arr: Arrangement, sign: str) -> str:
    if not isinstance(sign, str) or len(sign) != len(arr) or any(s not in SIGNS for s in sign):
        raise MalformedInputError(f"bad sign vector {sign!r} for {len(arr)} hyperplanes")
    return sign


def sign_vector(arr: Arrangement, point: Sequence) -> str:
    point = to_vector(point)
    if len(point) != arr.ambient_dim:
        raise MalformedInputError("point has wrong dimension")
    if not arr.in_subspace(point):
        raise DomainError("point does not lie in the arrangement's subspace")
    return "".join(sign_of(dot(h.normal, point)) for h in arr.hyperplanes)


def face_dimension(arr: Arrangement, sign: str) -> int:
    zero_normals = [h.normal for h, s in zip(arr.hyperplanes, sign) if s == "0"]
    return arr.ambient_dim - rank(list(arr.subspace) + zero_normals)


def face_system(arr: Arrangement, sign: str) -> LinearSystem:
    """Cone constraints for the (prefix) sign vector ``sign``."""
    eqs = [(r, 0) for r in arr.subspace]
    strict = []
    for h, s in zip(arr.hyperplanes, sign):
        if s == "0":
            eqs.append((h.normal, 0))
        elif s == "+":
            strict.append(h.normal)
        else:
            strict.append(tuple(-x for x in h.normal))
    return LinearSystem(arr.ambient_dim, tuple(eqs), tuple(strict))


def realizable(arr: Arrangement, sign: str) -> Optional[Face]:
    """The face with sign vector ``sign``, or None if no point has that sign."""
    check_sign(arr, sign)
    x = solve_feasible(face_system(arr, sign))
    if x is None:
        return None
    return Face(sign, face_dimension(arr, sign), x)


class FacePoset:
    """All faces of an arrangement with the closure order C' <= C.

    Faces are kept in canonical order: by dimension, then lexicographically
    in the sign alphabet ordered 0 < - < +.
    """

    def __init__(self, arrangement: Arrangement, faces: Iterable[Face]):
        self.arrangement = arrangement
        self.faces = tuple(sorted(faces, key=lambda f: (f.dim, sign_key(f.sign))))
        self.index = {f.sign: k for k, f in enumerate(self.faces)}
        if len(self.index) != len(self.faces):
            raise MalformedInputError("duplicate faces")
        self.signs = tuple(f.sign for f in self.faces)
        self._masks = [_masks(s) for s in self.signs]
        below = []
        for k in range(len(self.faces)):
            pk, nk = self._masks[k]
            below.append(
                frozenset(
                    i for i, (p, n) in enumerate(self._masks)
                    if i != k and p & pk == p and n & nk == n
                )
            )
        self._below = below
        lower_covers = {}
        for k, lows in enumerate(below):
            covers = [i for i in lows if not any(i in below[j] for j in lows)]
            lower_covers[self.signs[k]] = tuple(self.signs[i] for i in sorted(covers))
        self.lower_covers = lower_covers
        upper = {s: [] for s in self.signs}
        for s, lows in lower_covers.items():
            for lo in lows:
                upper[lo].append(s)
        self.upper_covers = {
            s: tuple(sorted(v, key=self.index.__getitem__)) for s, v in upper.items()
        }
        self.hasse = tuple(
            (lo, up) for up in self.signs for lo in lower_covers[up]
        )
        self.cache: dict = {}

    def __len__(self):
        return len(self.faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.faces)

    def __repr__(self):
        return f"FacePoset({len(self.faces)} faces, {len(self.arrangement)} hyperplanes)"

    @property
    def key(self) -> tuple:
        """Identity of the poset: equal keys mean interchangeable posets."""
        return (self.arrangement, self.signs)

    def same_as(self, other: "FacePoset") -> bool:
        return self is other or self.key == other.key

    def sign(self, face: Union[str, Face]) -> str:
        s = face.sign if isinstance(face, Face) else face
        if s not in self.index:
            raise DomainError(f"face {s!r} is not in this poset")
        if isinstance(face, Face) and face.dim != self.faces[self.index[s]].dim:
            raise DomainError(f"face {s!r} belongs to a different arrangement")
        return s

    def face(self, sign: str) -> Face:
        return self.faces[self.index[self.sign(sign)]]

    def dim(self, face) -> int:
        return self.faces[self.index[self.sign(face)]].dim

    @property
    def origin(self) -> str:
        return "0" * len(self.arrangement)

    def chambers(self) -> list:
        top = self.arrangement.dim
        return [f.sign for f in self.faces if f.dim == top]

    def leq(self, a, b) -> bool:
        """a <= b in the closure order (componentwise 0 <= +, 0 <= -)."""
        i, j = self.index[self.sign(a)], self.index[self.sign(b)]
        return i == j or i in self._below[j]

    def below(self, face) -> list:
        """Faces strictly below ``face``, in canonical order."""
        return [self.signs[i] for i in sorted(self._below[self.index[self.sign(face)]])]

    def comparable_pairs(self) -> list:
        """All (lower, upper) with lower < upper, in canonical order."""
        return [(lo, up) for up in self.signs for lo in self.below(up)]

    def dims_by_dimension(self) -> dict:
        counts: dict = {}
        for f in self.faces:
            counts[f.dim] = counts.get(f.dim, 0) + 1
        return dict(sorted(counts.items()))


def _masks(sign: str) -> tuple:
    p = n = 0
    for k, s in enumerate(sign):
        if s == "+":
            p |= 1 << k
        elif s == "-":
            n |= 1 << k
    return p, n


def leq(poset: FacePoset, a, b) -> bool:
    return poset.leq(a, b)


def enumerate_faces(arr: Arrangement) -> FacePoset:
    """All realizable sign vectors, found by extending feasible prefixes."""
    zero = tuple(Fraction(0) for _ in range(arr.ambient_dim))
    level = [("", zero)]
    for k, h in enumerate(arr.hyperplanes):
        prefix_arr = _Prefix(arr, k + 1)
        nxt = []
        for prefix, w in level:
            known = sign_of(dot(h.normal, w))
            for s in SIGNS:
                if s == known:
                    nxt.append((prefix + s, w))
                    continue
                x = solve_feasible(face_system(prefix_arr, prefix + s))
                if x is not None:
                    nxt.append((prefix + s, x))
        level = nxt
    faces = []
    for sign, _ in level:
        face = realizable(arr, sign)
        faces.append(face)
    return FacePoset(arr, faces)


class _Prefix:
    """The first ``k`` hyperplanes of an arrangement, duck-typed for face_system."""

    def __init__(self, arr: Arrangement, k: int):
        self.ambient_dim = arr.ambient_dim
        self.subspace = arr.subspace
        self.hyperplanes = arr.hyperplanes[:k]


@lru_cache(maxsize=None)
def braid_poset(n: int) -> FacePoset:
    """Cached face poset of A_n (one shared object per n)."""
    return enumerate_faces(braid_arrangement(n))


# ---------------------------------------------------------------------------
# ordered set partitions (combinatorial model of braid faces)


def ordered_set_partitions(m: int) -> Iterator[tuple]:
    """Ordered set partitions of {1..m} as tuples of sorted tuples (low to high)."""
    for k in range(1, m + 1):
        for f in itertools.product(range(k), repeat=m):
            if len(set(f)) != k:
                continue
            yield tuple(
                tuple(e + 1 for e in range(m) if f[e] == b) for b in range(k)
            )


def osp_to_sign(blocks: Sequence[Sequence[int]], m: int) -> str:
    pos = {e: t for t, block in enumerate(blocks) for e in block}
    if sorted(pos) != list(range(1, m + 1)):
        raise MalformedInputError(f"{blocks!r} is not an ordered set partition of 1..{m}")
    out = []
    for i, j in braid_pairs(m):
        out.append("0" if pos[i] == pos[j] else "+" if pos[i] > pos[j] else "-")
    return "".join(out)


def sign_to_osp(sign: str, m: int) -> tuple:
    """Inverse of :func:`osp_to_sign` for realizable braid sign vectors."""
    less = {e: set() for e in range(1, m + 1)}
    same = {e: {e} for e in range(1, m + 1)}
    for (i, j), s in zip(braid_pairs(m), sign):
        if s == "0":
            same[i].add(j)
            same[j].add(i)
        elif s == "+":
            less[i].add(j)
        else:
            less[j].add(i)
    blocks = {}
    for e in range(1, m + 1):
        blocks.setdefault(len(less[e]), set()).update(same[e])
    return tuple(tuple(sorted(blocks[k])) for k in sorted(blocks))


def osp_witness(blocks: Sequence[Sequence[int]], m: int) -> tuple:
    """Point of the face: block index per coordinate, recentred to sum zero."""
    pos = {e: t for t, block in enumerate(blocks) for e in block}
    mean = Fraction(sum(pos.values()), m)
    return tuple(Fraction(pos[e]) - mean for e in range(1, m + 1))


def faces_from_osp(n: int) -> FacePoset:
    """Faces of A_n built directly from ordered set partitions of {1..n+1}."""
    arr = braid_arrangement(n)
    m = n + 1
    faces = [
        Face(osp_to_sign(blocks, m), len(blocks) - 1, osp_witness(blocks, m))
        for blocks in ordered_set_partitions(m)
    ]
    return FacePoset(arr, faces)


# ---------------------------------------------------------------------------
# collinear triples and opposed faces


def _allowed_middle(sa: str, sc: str) -> str:
    if sa == sc:
        return sa
    if sa == "0":
        return sc
    if sc == "0":
        return sa
    return SIGNS


def collinear_prefilter(a: str, b: str, c: str) -> bool:
    """Necessary sign condition for b to meet an open segment from a to c."""
    return all(sb in _allowed_middle(sa, sc) for sa, sb, sc in zip(a, b, c))


def _signed_rows(normal, s):
    if s == "+":
        return normal
    return tuple(-x for x in normal)


def _segment_system(arr: Arrangement, a: str, b: str, c: str) -> LinearSystem:
    k = arr.ambient_dim
    zero = (0,) * k
    eqs, strict = [], []
    for r in arr.subspace:
        eqs.append((tuple(r) + zero, 0))
        eqs.append((zero + tuple(r), 0))
    for h, sa, sb, sc in zip(arr.hyperplanes, a, b, c):
        na = tuple(h.normal) + zero
        nc = zero + tuple(h.normal)
        nb = tuple(h.normal) + tuple(h.normal)
        for row, s in ((na, sa), (nc, sc), (nb, sb)):
            if s == "0":
                eqs.append((row, 0))
            else:
                strict.append(_signed_rows(row, s))
    return LinearSystem(2 * k, tuple(eqs), tuple(strict))


def collinear(poset: FacePoset, a, b, c) -> bool:
    """True iff some segment from a point of ``a`` to a point of ``c`` meets ``b``.

    Endpoints are allowed, so (a, a, c) and (a, c, c) are always collinear.
    For central arrangements the open-segment case reduces to a' + c' lying
    in ``b`` for some a' in ``a`` and c' in ``c``.
    """
    a, b, c = poset.sign(a), poset.sign(b), poset.sign(c)
    if b == a or b == c:
        return True
    key = (a, b, c) if poset.index[a] <= poset.index[c] else (c, b, a)
    memo = poset.cache.setdefault("collinear", {})
    if key not in memo:
        if not collinear_prefilter(*key):
            memo[key] = False
        else:
            memo[key] = solve_feasible(_segment_system(poset.arrangement, *key)) is not None
    return memo[key]


def collinear_triples(poset: FacePoset) -> list:
    """All collinear (a, b, c) in canonical order. Cached on the poset."""
    if "collinear_triples" not in poset.cache:
        out = []
        for a in poset.signs:
            for c in poset.signs:
                for b in poset.signs:
                    if collinear(poset, a, b, c):
                        out.append((a, b, c))
        poset.cache["collinear_triples"] = out
    return poset.cache["collinear_triples"]


def zero_support(sign: str) -> frozenset:
    return frozenset(k for k, s in enumerate(sign) if s == "0")


def opposed(poset: FacePoset, c1, c2, d) -> bool:
    """True iff ``c1`` and ``c2`` are opposed across the face ``d``.

    Requires c1 != c2 of equal dimension and linear span, d of one dimension
    less lying below both, and c1, c2 of opposite sign on every hyperplane
    that vanishes on d but not on c1.
    """
    c1, c2, d = poset.sign(c1), poset.sign(c2), poset.sign(d)
    if c1 == c2:
        return False
    dim = poset.dim(c1)
    if poset.dim(c2) != dim or poset.dim(d) != dim - 1:
        return False
    if not (poset.leq(d, c1) and poset.leq(d, c2)):
        return False
    if zero_support(c1) != zero_support(c2):
        return False
    return all(
        s1 == _NEG[s2]
        for s1, s2, sd in zip(c1, c2, d)
        if sd == "0" and s1 != "0"
    )


def opposed_configurations(poset: FacePoset) -> list:
    """All (c1, c2, d) with c1, c2 opposed by d. Cached on the poset."""
    if "opposed" not in poset.cache:
        out = []
        for d in poset.signs:
            ups = poset.upper_covers[d]
            for c1 in ups:
                for c2 in ups:
                    if opposed(poset, c1, c2, d):
                        out.append((c1, c2, d))
        poset.cache["opposed"] = out
    return poset.cache["opposed"]
