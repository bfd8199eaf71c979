"""Bounded complexes of finitely generated projective right modules.

The degree-``n`` term of a complex is ``e_{i_1}A + ... + e_{i_r}A`` and is
stored as the tuple of idempotent indices ``(i_1, ..., i_r)``.  Module maps
``e_iA -> e_jA`` are left multiplications by elements of ``e_jAe_i``, so a
map between terms is a matrix of algebra elements (row = target summand,
column = source summand).  Indexing is cohomological; the differential
``D_n`` goes from degree ``n`` to ``n + 1``.

Sign conventions: ``X[k]^n = X^{n+k}`` with differential ``(-1)^k d``; the
cone of ``f : X -> Y`` has ``C^n = X^{n+1} + Y^n`` and differential
``[[-d_X, 0], [f, d_Y]]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FDAlgebra
from .errors import ContractViolation, StructuralError


def _freeze(matrix) -> tuple:
    return tuple(tuple(tuple(e) for e in row) for row in matrix)


def zero_matrix(A: FDAlgebra, nrows: int, ncols: int) -> tuple:
    z = A.zero
    return tuple(tuple(z for _ in range(ncols)) for _ in range(nrows))


def identity_matrix(A: FDAlgebra, idems: Sequence[int]) -> tuple:
    z = A.zero
    return tuple(
        tuple(A.idempotents[i] if r == c else z for c in range(len(idems)))
        for r, i in enumerate(idems)
    )


def mat_add(A: FDAlgebra, P, Q) -> tuple:
    return tuple(tuple(A.add(a, b) for a, b in zip(rp, rq)) for rp, rq in zip(P, Q))


def mat_scale(A: FDAlgebra, c, P) -> tuple:
    return tuple(tuple(A.scale(c, a) for a in row) for row in P)


def mat_mul(A: FDAlgebra, P, Q, nrows: int, ncols: int) -> tuple:
    """``P @ Q`` with explicit outer shape (handles empty inner dimension)."""
    if not P or not Q or not Q[0]:
        return zero_matrix(A, nrows, ncols)
    return _freeze(A.matmul(P, Q))


def mat_is_zero(P) -> bool:
    return not any(any(e) for row in P for e in row)


class ProjComplex:
    """Immutable bounded complex of projectives over ``algebra``."""

    def __init__(self, algebra: FDAlgebra, terms: dict, diff: dict | None = None, validate: bool = True):
        self.algebra = A = algebra
        r = len(A.idempotents)
        self.terms = {}
        for n, idems in sorted(terms.items()):
            idems = tuple(int(i) for i in idems)
            if any(i < 0 or i >= r for i in idems):
                raise StructuralError(f"degree {n}: idempotent index out of range")
            if idems:
                self.terms[int(n)] = idems
        self.diff = {}
        for n, D in sorted((diff or {}).items()):
            n = int(n)
            src, tgt = self.term(n), self.term(n + 1)
            D = tuple(tuple(A.element(e) for e in row) for row in D)
            if len(D) != len(tgt) or any(len(row) != len(src) for row in D):
                if mat_is_zero(D) and not (src and tgt):
                    continue
                raise StructuralError(f"differential D_{n} has wrong shape")
            if src and tgt and not mat_is_zero(D):
                self.diff[n] = D
        self._key = (id(A), tuple(self.terms.items()), tuple(self.diff.items()))
        self._hash = hash(self._key)
        if validate:
            self.validate()

    # -- access -----------------------------------------------------------
    def term(self, n: int) -> tuple:
        return self.terms.get(n, ())

    def d(self, n: int) -> tuple:
        if n in self.diff:
            return self.diff[n]
        return zero_matrix(self.algebra, len(self.term(n + 1)), len(self.term(n)))

    @property
    def support(self):
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def rank(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def profile(self) -> dict:
        return {n: t for n, t in self.terms.items()}

    def validate(self) -> None:
        A = self.algebra
        for n, D in self.diff.items():
            src, tgt = self.term(n), self.term(n + 1)
            for t, row in enumerate(D):
                for s, a in enumerate(row):
                    if not A.in_corner(a, tgt[t], src[s]):
                        raise StructuralError(f"D_{n}[{t}][{s}] is not in e_{tgt[t]} A e_{src[s]}")
        for n in self.diff:
            if n + 1 in self.diff:
                DD = mat_mul(A, self.diff[n + 1], self.diff[n], len(self.term(n + 2)), len(self.term(n)))
                if not mat_is_zero(DD):
                    raise StructuralError(f"d^2 != 0 at degree {n}")

    def __eq__(self, other):
        return isinstance(other, ProjComplex) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = []
        for n, t in self.terms.items():
            parts.append(f"{n}:{list(t)}")
        return f"ProjComplex({', '.join(parts) or '0'})"


def zero_complex(A: FDAlgebra) -> ProjComplex:
    return ProjComplex(A, {})


def stalk(A: FDAlgebra, idems: Sequence[int] | int = 0, degree: int = 0) -> ProjComplex:
    if isinstance(idems, int):
        idems = (idems,)
    return ProjComplex(A, {degree: tuple(idems)})


def two_term(A: FDAlgebra, a, src: int = 0, tgt: int = 0, degree: int = -1) -> ProjComplex:
    """``[e_src A --a--> e_tgt A]`` with the source in ``degree``."""
    return ProjComplex(A, {degree: (src,), degree + 1: (tgt,)}, {degree: [[a]]})


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Family ``f_n : X^n -> Y^{n+degree}`` keyed by the source degree ``n``.

    A chain map satisfies ``d Y f_n - (-1)^degree f_{n+1} d X = 0``.
    Construction does not check this; see :meth:`is_chain_map`.
    """

    source: ProjComplex
    target: ProjComplex
    degree: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise StructuralError("chain map between complexes over different algebras")
        A = self.source.algebra
        comps = {}
        for n, M in self.components.items():
            n = int(n)
            rows, cols = len(self.target.term(n + self.degree)), len(self.source.term(n))
            M = tuple(tuple(A.element(e) for e in row) for row in M)
            if rows == 0 or cols == 0:
                continue
            if len(M) != rows or any(len(r) != cols for r in M):
                raise StructuralError(f"component f_{n} has wrong shape")
            if not mat_is_zero(M):
                comps[n] = M
        object.__setattr__(self, "components", comps)

    @property
    def algebra(self) -> FDAlgebra:
        return self.source.algebra

    def component(self, n: int) -> tuple:
        if n in self.components:
            return self.components[n]
        return zero_matrix(self.algebra, len(self.target.term(n + self.degree)), len(self.source.term(n)))

    def is_zero(self) -> bool:
        return not self.components

    def differential(self) -> "ChainMap":
        return hom_differential(self)

    def is_chain_map(self) -> bool:
        return hom_differential(self).is_zero()

    def check(self) -> "ChainMap":
        if not self.is_chain_map():
            raise ContractViolation("map does not commute with the differentials")
        return self

    def in_corners(self) -> bool:
        A = self.algebra
        for n, M in self.components.items():
            src, tgt = self.source.term(n), self.target.term(n + self.degree)
            for t, row in enumerate(M):
                for s, a in enumerate(row):
                    if not A.in_corner(a, tgt[t], src[s]):
                        return False
        return True

    def __add__(self, other: "ChainMap") -> "ChainMap":
        _same_space(self, other)
        A = self.algebra
        comps = {}
        for n in set(self.components) | set(other.components):
            comps[n] = mat_add(A, self.component(n), other.component(n))
        return ChainMap(self.source, self.target, self.degree, comps)

    def scale(self, c) -> "ChainMap":
        A = self.algebra
        c = A.field(c)
        return ChainMap(self.source, self.target, self.degree,
                        {n: mat_scale(A, c, M) for n, M in self.components.items()})

    def __neg__(self) -> "ChainMap":
        return self.scale(-1)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.source, self.target, self.degree, tuple(sorted(self.components.items()))))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r}, degree={self.degree}, nonzero={sorted(self.components)})"


def _same_space(f: ChainMap, g: ChainMap) -> None:
    if f.source != g.source or f.target != g.target or f.degree != g.degree:
        raise ContractViolation("maps live in different Hom-spaces")


def zero_map(X: ProjComplex, Y: ProjComplex, degree: int = 0) -> ChainMap:
    return ChainMap(X, Y, degree, {})


def identity(X: ProjComplex) -> ChainMap:
    A = X.algebra
    return ChainMap(X, X, 0, {n: identity_matrix(A, t) for n, t in X.terms.items()})


def hom_differential(f: ChainMap) -> ChainMap:
    """``d(f)_n = dY f_n - (-1)^i f_{n+1} dX`` for ``f`` of degree ``i``."""
    X, Y, i = f.source, f.target, f.degree
    A = X.algebra
    sign = -1 if i % 2 == 0 else 1
    comps = {}
    candidates = set(f.components) | {n - 1 for n in f.components}
    for n in candidates:
        rows, cols = len(Y.term(n + i + 1)), len(X.term(n))
        if not rows or not cols:
            continue
        left = mat_mul(A, Y.d(n + i), f.component(n), rows, cols)
        right = mat_mul(A, f.component(n + 1), X.d(n), rows, cols)
        comps[n] = mat_add(A, left, mat_scale(A, A.field(sign), right))
    return ChainMap(X, Y, i + 1, comps)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f`` (apply ``f`` first): ``(g f)_n = g_{n+|f|} f_n``."""
    if f.target != g.source:
        raise ContractViolation("maps are not composable")
    A = f.algebra
    X, Z = f.source, g.target
    deg = f.degree + g.degree
    comps = {}
    for n, M in f.components.items():
        G = g.components.get(n + f.degree)
        if G is None:
            continue
        comps[n] = mat_mul(A, G, M, len(Z.term(n + deg)), len(X.term(n)))
    return ChainMap(X, Z, deg, comps)


def as_shifted_target(f: ChainMap) -> ChainMap:
    """View a degree-``i`` map ``X -> Y`` as the degree-0 map ``X -> Y[i]``."""
    return ChainMap(f.source, shift(f.target, f.degree), 0, f.components)


def from_shifted_target(f: ChainMap, Y: ProjComplex, k: int) -> ChainMap:
    """Inverse of :func:`as_shifted_target` for ``f : X -> Y[k]`` of degree 0."""
    if f.degree != 0 or f.target != shift(Y, k):
        raise ContractViolation("target is not the expected shift")
    return ChainMap(f.source, Y, k, f.components)


# -- constructions ---------------------------------------------------------

def shift(X: ProjComplex, k: int) -> ProjComplex:
    if k == 0:
        return X
    A = X.algebra
    sign = A.field(-1 if k % 2 else 1)
    return ProjComplex(
        A,
        {n - k: t for n, t in X.terms.items()},
        {n - k: mat_scale(A, sign, D) for n, D in X.diff.items()},
        validate=False,
    )


@dataclass(frozen=True, eq=False)
class DirectSum:
    """A direct sum with its block structure: ``offsets[c][n]`` is where
    component ``c`` starts inside degree ``n`` of ``total``."""

    total: ProjComplex
    parts: tuple
    offsets: tuple

    def injection(self, c: int) -> ChainMap:
        A = self.total.algebra
        part = self.parts[c]
        comps = {}
        for n, t in part.terms.items():
            big = self.total.term(n)
            off = self.offsets[c][n]
            z = A.zero
            comps[n] = tuple(
                tuple(A.idempotents[t[s]] if r == off + s else z for s in range(len(t)))
                for r in range(len(big))
            )
        return ChainMap(part, self.total, 0, comps)

    def projection(self, c: int) -> ChainMap:
        A = self.total.algebra
        part = self.parts[c]
        comps = {}
        for n, t in part.terms.items():
            big = self.total.term(n)
            off = self.offsets[c][n]
            z = A.zero
            comps[n] = tuple(
                tuple(A.idempotents[t[r]] if s == off + r else z for s in range(len(big)))
                for r in range(len(t))
            )
        return ChainMap(self.total, part, 0, comps)


def direct_sum_blocks(*parts: ProjComplex) -> DirectSum:
    if not parts:
        raise StructuralError("direct sum of nothing needs an algebra; use zero_complex")
    A = parts[0].algebra
    if any(p.algebra is not A for p in parts):
        raise StructuralError("direct sum of complexes over different algebras")
    degrees = sorted({n for p in parts for n in p.terms})
    terms = {n: tuple(i for p in parts for i in p.term(n)) for n in degrees}
    offsets = []
    running = {n: 0 for n in degrees}
    for p in parts:
        offsets.append(dict(running))
        for n in degrees:
            running[n] += len(p.term(n))
    diff = {}
    z = A.zero
    for n in degrees:
        src, tgt = terms[n], terms.get(n + 1, ())
        if not src or not tgt:
            continue
        D = [[z] * len(src) for _ in tgt]
        for c, p in enumerate(parts):
            if n not in p.diff:
                continue
            ro, co = offsets[c].get(n + 1, 0), offsets[c][n]
            for t, row in enumerate(p.diff[n]):
                for s, a in enumerate(row):
                    D[ro + t][co + s] = a
        diff[n] = D
    total = ProjComplex(A, terms, diff, validate=False)
    return DirectSum(total, tuple(parts), tuple(offsets))


def direct_sum(*parts: ProjComplex) -> ProjComplex:
    return direct_sum_blocks(*parts).total


def cone(f: ChainMap) -> ProjComplex:
    return cone_maps(f)[0]


def cone_maps(f: ChainMap):
    """``(C, incl, proj)`` with ``incl : Y -> C`` and ``proj : C -> X[1]``."""
    if f.degree != 0:
        raise ContractViolation("cone needs a degree-0 chain map")
    f.check()
    X, Y = f.source, f.target
    A = X.algebra
    z = A.zero
    minus = A.field(-1)
    degrees = sorted({n - 1 for n in X.terms} | set(Y.terms))
    terms = {n: X.term(n + 1) + Y.term(n) for n in degrees}
    diff = {}
    for n in degrees:
        xs, ys = X.term(n + 1), Y.term(n)
        xt, yt = X.term(n + 2), Y.term(n + 1)
        src, tgt = xs + ys, xt + yt
        if not src or not tgt:
            continue
        D = [[z] * len(src) for _ in tgt]
        dX, dY, fn = X.d(n + 1), Y.d(n), f.component(n + 1)
        for t in range(len(xt)):
            for s in range(len(xs)):
                D[t][s] = A.scale(minus, dX[t][s])
        for t in range(len(yt)):
            for s in range(len(xs)):
                D[len(xt) + t][s] = fn[t][s]
            for s in range(len(ys)):
                D[len(xt) + t][len(xs) + s] = dY[t][s]
        diff[n] = D
    C = ProjComplex(A, terms, diff)
    incl = {}
    for n, ys in Y.terms.items():
        xs = X.term(n + 1)
        incl[n] = tuple(
            tuple(A.idempotents[ys[s]] if r == len(xs) + s else z for s in range(len(ys)))
            for r in range(len(xs) + len(ys))
        )
    X1 = shift(X, 1)
    proj = {}
    for n in degrees:
        xs, ys = X.term(n + 1), Y.term(n)
        if not xs:
            continue
        proj[n] = tuple(
            tuple(A.idempotents[xs[r]] if s == r else z for s in range(len(xs) + len(ys)))
            for r in range(len(xs))
        )
    return C, ChainMap(Y, C, 0, incl), ChainMap(C, X1, 0, proj)


# -- minimisation ----------------------------------------------------------

@dataclass(frozen=True)
class EliminationStep:
    degree: int
    row: int
    col: int
    idempotent: int
    entry: tuple


@dataclass(frozen=True, eq=False)
class MinimizationCertificate:
    """``projection : X -> Xmin`` and ``inclusion : Xmin -> X`` with
    ``projection o inclusion = id`` and ``inclusion o projection ~ id``."""

    steps: tuple
    inclusion: ChainMap
    projection: ChainMap


def _find_unit_entry(X: ProjComplex):
    A = X.algebra
    for n in sorted(X.diff):
        D = X.diff[n]
        src, tgt = X.term(n), X.term(n + 1)
        for s in range(len(src)):
            for t in range(len(tgt)):
                if src[s] != tgt[t] or not any(D[t][s]):
                    continue
                inv = A.corner_inverse(D[t][s], src[s])
                if inv is not None:
                    return n, t, s, inv
    return None


def _eliminate(X: ProjComplex, n: int, t0: int, s0: int, uinv):
    """Cancel the unit entry ``D_n[t0][s0]``; returns ``(X', incl, proj)``."""
    A = X.algebra
    z = A.zero
    minus = A.field(-1)
    D = X.d(n)
    src, tgt = X.term(n), X.term(n + 1)
    keep_s = [s for s in range(len(src)) if s != s0]
    keep_t = [t for t in range(len(tgt)) if t != t0]
    terms = dict(X.terms)
    terms[n] = tuple(src[s] for s in keep_s)
    terms[n + 1] = tuple(tgt[t] for t in keep_t)
    diff = dict(X.diff)
    # eps - gamma phi^{-1} delta
    new = []
    for t in keep_t:
        g = A.mul(D[t][s0], uinv)
        row = []
        for s in keep_s:
            row.append(A.sub(D[t][s], A.mul(g, D[t0][s])))
        new.append(row)
    diff[n] = new
    if n - 1 in X.diff:
        diff[n - 1] = [X.diff[n - 1][s] for s in keep_s]
    if n + 1 in X.diff:
        diff[n + 1] = [[row[t] for t in keep_t] for row in X.diff[n + 1]]
    Xm = ProjComplex(A, terms, diff)

    incl, proj = {}, {}
    for k, ts in X.terms.items():
        if k not in (n, n + 1):
            incl[k] = identity_matrix(A, ts)
            proj[k] = identity_matrix(A, ts)
    # degree n: incl = [-phi^{-1} delta ; 1], proj = [0 1]
    rows = []
    for r in range(len(src)):
        row = []
        for c, s in enumerate(keep_s):
            if r == s0:
                row.append(A.scale(minus, A.mul(uinv, D[t0][s])))
            else:
                row.append(A.idempotents[src[r]] if r == s else z)
        rows.append(row)
    incl[n] = rows
    proj[n] = [[A.idempotents[src[s]] if r == s else z for r in range(len(src))] for s in keep_s]
    # degree n+1: incl = [0 ; 1], proj = [-gamma phi^{-1}, 1]
    incl[n + 1] = [[A.idempotents[tgt[t]] if r == t else z for t in keep_t] for r in range(len(tgt))]
    rows = []
    for t in keep_t:
        row = []
        for r in range(len(tgt)):
            if r == t0:
                row.append(A.scale(minus, A.mul(D[t][s0], uinv)))
            else:
                row.append(A.idempotents[tgt[t]] if r == t else z)
        rows.append(row)
    proj[n + 1] = rows
    return Xm, ChainMap(Xm, X, 0, incl), ChainMap(X, Xm, 0, proj)


def minimize(X: ProjComplex):
    """Cancel invertible diagonal-corner differential entries until none remain.

    Returns ``(Xmin, certificate)``.
    """
    steps = []
    incl = proj = identity(X)
    cur = X
    while True:
        hit = _find_unit_entry(cur)
        if hit is None:
            break
        n, t, s, inv = hit
        steps.append(EliminationStep(n, t, s, cur.term(n)[s], cur.d(n)[t][s]))
        nxt, i1, p1 = _eliminate(cur, n, t, s, inv)
        incl = compose(incl, i1)
        proj = compose(p1, proj)
        cur = nxt
    return cur, MinimizationCertificate(tuple(steps), incl, proj)
