"""Exact rational linear algebra and feasibility of linear systems.

Rationals are :class:`fractions.Fraction`, which is always normalized (lowest
terms, positive denominator). Nothing in this module touches floats.

Feasibility is decided by Fourier-Motzkin elimination in low dimension and by
a phase-one simplex with Bland's rule above :data:`FM_MAX_DIM`. Both are
complete and exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from braidquiver.errors import MalformedInputError

Rational = Fraction
Vector = tuple  # tuple of Fraction

FM_MAX_DIM = 8

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise MalformedInputError(f"not a rational string: {value!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise MalformedInputError(f"zero denominator: {value!r}")
        return Fraction(int(m.group(1)), den)
    raise MalformedInputError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """"p/q", or "p" when the denominator is one."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_vector(values: Iterable) -> tuple:
    return tuple(to_rational(v) for v in values)


def _as_rows(rows: Iterable[Sequence], ncols: Optional[int] = None) -> list:
    out = [list(to_vector(r)) for r in rows]
    if out:
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise MalformedInputError("ragged rows")
        if ncols is not None and width != ncols:
            raise MalformedInputError(f"rows have length {width}, expected {ncols}")
    return out


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# rank, row reduction, kernels


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_row(row: Sequence[Fraction]) -> list:
    den = 1
    for q in row:
        den = _lcm(den, q.denominator)
    return [int(q * den) for q in row]


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of the span of ``rows``, by fraction-free (Bareiss) elimination."""
    mat = [_integer_row(r) for r in _as_rows(rows)]
    if not mat:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, nrows):
            a = mat[i][c]
            row_i, row_r = mat[i], mat[r]
            for k in range(c, ncols):
                # exact division is guaranteed by Sylvester's identity
                row_i[k] = (p * row_i[k] - a * row_r[k]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: Iterable[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form over Q. Returns ``(nonzero_rows, pivot_columns)``."""
    mat = _as_rows(rows, ncols)
    if not mat:
        return [], []
    nrows, width = len(mat), len(mat[0])
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                a = mat[i][c]
                mat[i] = [x - a * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def primitive(vec: Sequence[Fraction]) -> tuple:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    ints = _integer_row([Fraction(x) for x in vec])
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in ints)
    first = next(x for x in ints if x != 0)
    if first < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def kernel_basis(rows: Iterable[Sequence], ncols: Optional[int] = None) -> list:
    """Basis of the right null space ``{x : row . x = 0 for every row}``.

    ``ncols`` is required when ``rows`` is empty. Basis vectors are returned
    as primitive integer vectors (as Fractions), one per free column.
    """
    mat = _as_rows(rows, ncols)
    if not mat:
        if ncols is None:
            raise MalformedInputError("ncols is required for an empty row set")
        width = ncols
    else:
        width = len(mat[0])
    red, pivots = rref(mat, width)
    pivset = set(pivots)
    basis = []
    for f in range(width):
        if f in pivset:
            continue
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


# ---------------------------------------------------------------------------
# feasibility


@dataclass(frozen=True)
class LinearSystem:
    """Constraints on a point x of Q^ambient_dim.

    ``equalities``: pairs (row, c) meaning row . x = c.
    ``strict_positives``: rows meaning row . x >= 1. This stands in for
    row . x > 0 and is only sound when the strict part is invariant under
    positive scaling (cones).
    ``nonstrict``: pairs (row, c) meaning row . x >= c.
    """

    ambient_dim: int
    equalities: tuple = field(default_factory=tuple)
    strict_positives: tuple = field(default_factory=tuple)
    nonstrict: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.ambient_dim, int) or self.ambient_dim < 0:
            raise MalformedInputError(f"bad ambient dimension {self.ambient_dim!r}")
        eqs = tuple((to_vector(r), to_rational(c)) for r, c in self.equalities)
        strict = tuple(to_vector(r) for r in self.strict_positives)
        ge = tuple((to_vector(r), to_rational(c)) for r, c in self.nonstrict)
        rows = [r for r, _ in eqs] + list(strict) + [r for r, _ in ge]
        if self.ambient_dim == 0 and rows:
            raise MalformedInputError("constraints given on a zero-dimensional space")
        for r in rows:
            if len(r) != self.ambient_dim:
                raise MalformedInputError(
                    f"constraint row of length {len(r)} in dimension {self.ambient_dim}"
                )
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "strict_positives", strict)
        object.__setattr__(self, "nonstrict", ge)

    def inequalities(self) -> list:
        """All inequality constraints as (row, c) meaning row . x >= c."""
        return [(r, Fraction(1)) for r in self.strict_positives] + list(self.nonstrict)

    def is_satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.ambient_dim:
            return False
        if any(dot(r, x) != c for r, c in self.equalities):
            return False
        return all(dot(r, x) >= c for r, c in self.inequalities())


def solve_feasible(system: LinearSystem, method: str = "auto") -> Optional[tuple]:
    """Exact rational point satisfying ``system``, or None when infeasible.

    ``method`` is "fm", "simplex" or "auto" (Fourier-Motzkin up to
    :data:`FM_MAX_DIM` variables, simplex above). Deterministic.
    """
    if method == "auto":
        method = "fm" if system.ambient_dim <= FM_MAX_DIM else "simplex"
    if method == "fm":
        x = _solve_fm(system)
    elif method == "simplex":
        x = _solve_simplex(system)
    else:
        raise ValueError(f"unknown method {method!r}")
    if x is not None and not system.is_satisfied_by(x):
        from braidquiver.errors import InternalConsistencyError

        raise InternalConsistencyError(f"{method} witness fails its own system")
    return x


def _eliminate_equalities(system: LinearSystem):
    """Parametrize the affine solution set of the equalities.

    Returns (free, pivot_exprs) where pivot_exprs maps a pivot variable to
    (const, {free_var: coeff}) so that x_p = const + sum coeff * x_f, or None
    when the equalities are inconsistent.
    """
    n = system.ambient_dim
    aug = [list(r) + [c] for r, c in system.equalities]
    red, pivots = rref(aug, n + 1) if aug else ([], [])
    if n in pivots:
        return None
    pivset = set(pivots)
    free = [v for v in range(n) if v not in pivset]
    exprs = {}
    for row, p in zip(red, pivots):
        exprs[p] = (row[n], {f: -row[f] for f in free if row[f] != 0})
    return free, exprs


def _normalize(coeffs: Sequence, rhs: Fraction):
    """Scale a >= constraint so its coefficients are coprime integers."""
    den = 1
    for q in coeffs:
        if isinstance(q, Fraction):
            den = _lcm(den, q.denominator)
    ints = [int(q * den) for q in coeffs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return None, rhs
    return tuple(a // g for a in ints), Fraction(rhs) * den / g


def _add_constraint(store: dict, coeffs, rhs) -> bool:
    """Insert into ``store`` keeping the tightest rhs. False if 0 >= rhs fails."""
    lhs, rhs = _normalize(coeffs, rhs)
    if lhs is None:
        return rhs <= 0
    old = store.get(lhs)
    if old is None or rhs > old:
        store[lhs] = rhs
    return True


def _pick_value(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    # prefer 0, then the nearest integer inside the interval, then the bound
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if lo is not None and lo > 0:
        c = Fraction(-((-lo.numerator) // lo.denominator))
        return c if hi is None or c <= hi else lo
    f = Fraction(hi.numerator // hi.denominator)
    return f if lo is None or f >= lo else hi


def _solve_fm(system: LinearSystem) -> Optional[tuple]:
    n = system.ambient_dim
    if n == 0:
        return ()
    param = _eliminate_equalities(system)
    if param is None:
        return None
    free, exprs = param
    k = len(free)
    col = {f: t for t, f in enumerate(free)}

    store: dict = {}
    for row, c in system.inequalities():
        coeffs = [Fraction(0)] * k
        rhs = c
        for v, a in enumerate(row):
            if a == 0:
                continue
            if v in exprs:
                const, lin = exprs[v]
                rhs -= a * const
                for f, b in lin.items():
                    coeffs[col[f]] += a * b
            else:
                coeffs[col[v]] += a
        if not _add_constraint(store, coeffs, rhs):
            return None

    stages = []
    remaining = set(range(k))
    while remaining:
        def cost(v):
            pos = sum(1 for lhs in store if lhs[v] > 0)
            neg = sum(1 for lhs in store if lhs[v] < 0)
            return (pos * neg - pos - neg, v)

        v = min(remaining, key=cost)
        stages.append((v, store))
        pos = [(l, r) for l, r in store.items() if l[v] > 0]
        neg = [(l, r) for l, r in store.items() if l[v] < 0]
        new: dict = {l: r for l, r in store.items() if l[v] == 0}
        for lp, rp in pos:
            for ln, rn in neg:
                a, b = -ln[v], lp[v]
                coeffs = [a * x + b * y for x, y in zip(lp, ln)]
                if not _add_constraint(new, coeffs, a * rp + b * rn):
                    return None
        store = new
        remaining.discard(v)

    y = [Fraction(0)] * k
    assigned = set()
    for v, cons in reversed(stages):
        lo = hi = None
        for lhs, rhs in cons.items():
            a = lhs[v]
            if a == 0:
                continue
            rest = rhs - sum(lhs[u] * y[u] for u in assigned if lhs[u] != 0)
            bound = rest / a
            if a > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        y[v] = _pick_value(lo, hi)
        assigned.add(v)

    x = [Fraction(0)] * n
    for f, t in col.items():
        x[f] = y[t]
    for p, (const, lin) in exprs.items():
        x[p] = const + sum((b * x[f] for f, b in lin.items()), Fraction(0))
    return tuple(x)


def _solve_simplex(system: LinearSystem) -> Optional[tuple]:
    """Phase-one simplex on x = p - q, p, q >= 0, with Bland's rule."""
    n = system.ambient_dim
    if n == 0:
        return ()
    ineqs = system.inequalities()
    m_eq, m_ge = len(system.equalities), len(ineqs)
    m = m_eq + m_ge
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    # columns: p (n), q (n), surplus (m_ge), artificial (m)
    ncols = 2 * n + m_ge + m
    tab = []
    rhs = []
    for i, (row, c) in enumerate(list(system.equalities) + ineqs):
        line = [Fraction(0)] * ncols
        for v in range(n):
            line[v] = row[v]
            line[n + v] = -row[v]
        if i >= m_eq:
            line[2 * n + (i - m_eq)] = Fraction(-1)
        c = Fraction(c)
        if c < 0:
            line = [-a for a in line]
            c = -c
        line[2 * n + m_ge + i] = Fraction(1)
        tab.append(line)
        rhs.append(c)
    basis = [2 * n + m_ge + i for i in range(m)]
    art_start = 2 * n + m_ge
    # minimize the sum of artificials: reduced costs
    cost = [Fraction(0)] * ncols
    for j in range(art_start, ncols):
        cost[j] = Fraction(1)
    red = cost[:]
    obj = Fraction(0)
    for i in range(m):
        for j in range(ncols):
            red[j] -= tab[i][j]
        obj -= rhs[i]
    while True:
        enter = next((j for j in range(ncols) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded cannot happen in phase one
            break
        piv = tab[leave][enter]
        tab[leave] = [a / piv for a in tab[leave]]
        rhs[leave] /= piv
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
                rhs[i] -= f * rhs[leave]
        f = red[enter]
        red = [a - f * b for a, b in zip(red, tab[leave])]
        obj -= f * rhs[leave]
        basis[leave] = enter
    if obj != 0:
        return None
    values = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        values[b] = rhs[i]
    return tuple(values[v] - values[n + v] for v in range(n))
