"""Hom-spaces in the homotopy category as explicit quotients.

For complexes X, Y the graded space ``Hom^i = prod_n Hom_A(X^n, Y^{n+i})``
carries the differential ``d(f) = dY f - (-1)^i f dX``; cycles are chain
maps ``X -> Y[i]`` and boundaries are the null-homotopic ones, so
``Hom_K(X, Y[i]) = H^i``.  Coordinates of ``Hom^i`` are ordered
degree-major, then target row, then source column, then corner basis.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .complexes import ChainMap, ProjComplex, compose, hom_differential, mat_mul
from .errors import ContractViolation, StructuralError


class HomComplex:
    """Coordinate system and differential of the graded Hom-complex Hom*(X, Y)."""

    def __init__(self, X: ProjComplex, Y: ProjComplex):
        if X.algebra is not Y.algebra:
            raise StructuralError("Hom between complexes over different algebras")
        self.X, self.Y = X, Y
        self.algebra = X.algebra
        self._slots: dict = {}
        self._dmat: dict = {}

    def slots(self, i: int):
        """List of ``(n, t, s, corner_rows, corner_pivots, offset)``."""
        if i not in self._slots:
            A = self.algebra
            out = []
            off = 0
            for n in sorted(self.X.terms):
                src, tgt = self.X.term(n), self.Y.term(n + i)
                for t in range(len(tgt)):
                    for s in range(len(src)):
                        rows, piv = A.corner(tgt[t], src[s])
                        if rows:
                            out.append((n, t, s, rows, piv, off))
                            off += len(rows)
            self._slots[i] = (out, off)
        return self._slots[i][0]

    def dim(self, i: int) -> int:
        self.slots(i)
        return self._slots[i][1]

    def to_vector(self, f: ChainMap) -> list:
        if f.source != self.X or f.target != self.Y:
            raise ContractViolation("map does not belong to this Hom-complex")
        F = self.algebra.field
        vec = linalg.zeros(self.dim(f.degree), F)
        for n, t, s, rows, piv, off in self.slots(f.degree):
            a = f.component(n)[t][s]
            if not any(a):
                continue
            coords = linalg.coordinates(a, rows, piv, F)
            if coords is None:
                raise ContractViolation(f"component f_{n}[{t}][{s}] is outside its corner")
            vec[off:off + len(coords)] = coords
        leftover = set(f.components) - {sl[0] for sl in self.slots(f.degree)}
        if leftover:
            raise ContractViolation("map has components outside the Hom-complex")
        return vec

    def to_map(self, vec, i: int) -> ChainMap:
        A = self.algebra
        comps: dict = {}
        for n, t, s, rows, piv, off in self.slots(i):
            coeffs = vec[off:off + len(rows)]
            if not any(coeffs):
                continue
            if n not in comps:
                comps[n] = [[A.zero] * len(self.X.term(n)) for _ in self.Y.term(n + i)]
            a = A.zero
            for c, r in zip(coeffs, rows):
                if c:
                    a = A.add(a, A.scale(c, r))
            comps[n][t][s] = a
        return ChainMap(self.X, self.Y, i, comps)

    def basis_map(self, i: int, k: int) -> ChainMap:
        F = self.algebra.field
        v = linalg.zeros(self.dim(i), F)
        v[k] = F.one
        return self.to_map(v, i)

    def d_images(self, i: int) -> list:
        """Rows: ``d`` of each coordinate basis vector of Hom^i, in Hom^{i+1} coordinates."""
        if i not in self._dmat:
            imgs = [
                self.to_vector(hom_differential(self.basis_map(i, k)))
                for k in range(self.dim(i))
            ]
            self._dmat[i] = imgs
        return self._dmat[i]


def support_window(X: ProjComplex, Y: ProjComplex):
    """``(i_min, i_max)`` outside of which ``Hom^i(X, Y) = 0``; ``None`` if empty."""
    if X.is_zero or Y.is_zero:
        return None
    (a, b), (c, d) = X.support, Y.support
    return c - b, d - a


class HomSpace:
    """``Hom_K(X, Y[i])`` with canonical echelon representatives."""

    def __init__(self, X: ProjComplex, Y: ProjComplex, i: int, hc: HomComplex | None = None):
        self.source, self.target, self.degree = X, Y, i
        self.hc = hc = hc or HomComplex(X, Y)
        F = self.field = X.algebra.field
        n = hc.dim(i)
        self.ambient_dim = n
        self.cycles, self.cycle_pivots = linalg.rref(
            linalg.left_kernel(hc.d_images(i), hc.dim(i + 1), F), F, n
        ) if n else ([], [])
        self.boundary_images = hc.d_images(i - 1)
        self.boundaries, self.boundary_pivots = linalg.rref(self.boundary_images, F, n) if n else ([], [])
        residues = [linalg.reduce(z, self.boundaries, self.boundary_pivots, F) for z in self.cycles]
        self.reps, self.rep_pivots = linalg.rref(residues, F, n) if n else ([], [])

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def cycle_dim(self) -> int:
        return len(self.cycles)

    @property
    def boundary_dim(self) -> int:
        return len(self.boundaries)

    @property
    def basis(self) -> list:
        return [self.hc.to_map(r, self.degree) for r in self.reps]

    def rep(self, k: int) -> ChainMap:
        return self.hc.to_map(self.reps[k], self.degree)

    def vector_coordinates(self, vec):
        """Coefficients of a cycle vector modulo boundaries, plus the boundary residual."""
        F = self.field
        q = linalg.reduce(vec, self.boundaries, self.boundary_pivots, F)
        coeffs = [q[c] for c in self.rep_pivots]
        if any(linalg.reduce(q, self.reps, self.rep_pivots, F)):
            raise ContractViolation("not a chain map")
        residual = list(vec)
        for c, r in zip(coeffs, self.reps):
            if c:
                residual = [F.norm(a - c * b) for a, b in zip(residual, r)]
        return coeffs, residual

    def reduce(self, f: ChainMap) -> list:
        return reduce_to_basis(f, self)[0]

    def homotopy(self, boundary_vec):
        """A map ``s`` of degree ``i-1`` with ``d(s)`` equal to ``boundary_vec``, or ``None``."""
        sol = linalg.solve_combination(self.boundary_images, boundary_vec, self.field)
        if sol is None:
            return None
        return self.hc.to_map(sol, self.degree - 1)

    def is_null_homotopic(self, f: ChainMap) -> bool:
        coeffs, _ = self.vector_coordinates(self.hc.to_vector(f))
        return not any(coeffs)

    def __repr__(self):
        return f"HomSpace(degree={self.degree}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Reduction:
    coefficients: list
    homotopy: ChainMap


@lru_cache(maxsize=4096)
def _hom_complex(X: ProjComplex, Y: ProjComplex) -> HomComplex:
    return HomComplex(X, Y)


@lru_cache(maxsize=8192)
def hom_k(X: ProjComplex, Y: ProjComplex, i: int) -> HomSpace:
    if X.algebra is not Y.algebra:
        raise StructuralError("Hom between complexes over different algebras")
    return HomSpace(X, Y, i, _hom_complex(X, Y))


def graded_hom(X: ProjComplex, Y: ProjComplex) -> dict:
    """``{i: HomSpace}`` over the support window (all degrees, including zero spaces)."""
    w = support_window(X, Y)
    if w is None:
        return {}
    return {i: hom_k(X, Y, i) for i in range(w[0], w[1] + 1)}


def graded_dims(X: ProjComplex, Y: ProjComplex) -> dict:
    return {i: H.dim for i, H in graded_hom(X, Y).items() if H.dim}


def reduce_to_basis(f: ChainMap, H: HomSpace):
    """``(coefficients, homotopy)``: ``f - sum c_k rep_k = d(homotopy)``."""
    if f.source != H.source or f.target != H.target or f.degree != H.degree:
        raise ContractViolation("map does not belong to this Hom-space")
    if not f.is_chain_map():
        raise ContractViolation("not a chain map")
    vec = H.hc.to_vector(f)
    coeffs, residual = H.vector_coordinates(vec)
    s = H.homotopy(residual)
    if s is None:
        raise ContractViolation("residual is not a boundary")
    return coeffs, s


def reduce(f: ChainMap) -> list:
    """Coefficients of ``f`` in the canonical basis of its own Hom-space."""
    return reduce_to_basis(f, hom_k(f.source, f.target, f.degree))[0]


def is_null_homotopic(f: ChainMap) -> bool:
    return not any(reduce(f))


def homotopic(f: ChainMap, g: ChainMap) -> bool:
    return is_null_homotopic(f - g)


def compose_all(*maps: ChainMap) -> ChainMap:
    """``maps[0] o maps[1] o ... o maps[-1]``."""
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose(g, out)
    return out


# -- brute-force oracle ----------------------------------------------------

@dataclass(frozen=True)
class OracleCount:
    p: int
    chain_maps: int
    null_homotopic: int

    @property
    def dim(self) -> int:
        ratio = self.chain_maps // self.null_homotopic
        d = round(math.log(ratio, self.p)) if ratio > 1 else 0
        if self.p ** d != ratio:
            raise ArithmeticError("counts are not a power ratio")
        return d

    @property
    def chain_dim(self) -> int:
        return round(math.log(self.chain_maps, self.p)) if self.chain_maps > 1 else 0

    @property
    def null_dim(self) -> int:
        return round(math.log(self.null_homotopic, self.p)) if self.null_homotopic > 1 else 0


ENUMERATION_LIMIT = 2 ** 24


def _all_families(X: ProjComplex, Y: ProjComplex, i: int):
    """Every family ``(g_n : X^n -> Y^{n+i})_n`` as ``{n: matrix}``, built
    directly from corner elements."""
    A = X.algebra
    F = A.field
    slots = []
    for n in sorted(X.terms):
        src, tgt = X.term(n), Y.term(n + i)
        for t in range(len(tgt)):
            for s in range(len(src)):
                rows, _ = A.corner(tgt[t], src[s])
                elems = []
                for coeffs in itertools.product(F.elements(), repeat=len(rows)):
                    a = A.zero
                    for c, r in zip(coeffs, rows):
                        if c:
                            a = A.add(a, A.scale(c, r))
                    elems.append(a)
                slots.append((n, t, s, elems))
    for choice in itertools.product(*(sl[3] for sl in slots)):
        comps: dict = {}
        for (n, t, s, _), a in zip(slots, choice):
            if n not in comps:
                comps[n] = [[A.zero] * len(X.term(n)) for _ in Y.term(n + i)]
            comps[n][t][s] = a
        yield comps


def _mat(A, P, Q, nrows, ncols):
    return mat_mul(A, P, Q, nrows, ncols)


def _is_chain_map_into_shift(X: ProjComplex, Y: ProjComplex, i: int, f: dict) -> bool:
    """``f_{n+1} d_X = d_{Y[i]} f_n`` for all ``n``, with ``d_{Y[i]} = (-1)^i d_Y``."""
    A = X.algebra
    sign = A.field(-1 if i % 2 else 1)
    for n in range(X.support[0] - 1, X.support[1] + 1):
        rows, cols = len(Y.term(n + 1 + i)), len(X.term(n))
        if not rows or not cols:
            continue
        lhs = _mat(A, f.get(n + 1), X.diff.get(n), rows, cols)
        rhs = _mat(A, Y.diff.get(n + i), f.get(n), rows, cols)
        if any(A.sub(a, A.scale(sign, b)) != A.zero for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2)):
            return False
    return True


def _homotopy_image(X: ProjComplex, Y: ProjComplex, i: int, h: dict) -> tuple:
    """``(d_{Y[i]} h_n + h_{n+1} d_X)_n`` for ``h_n : X^n -> Y^{n+i-1}``, frozen."""
    A = X.algebra
    sign = A.field(-1 if i % 2 else 1)
    out = []
    for n in sorted(X.terms):
        rows, cols = len(Y.term(n + i)), len(X.term(n))
        if not rows:
            continue
        a = _mat(A, Y.diff.get(n + i - 1), h.get(n), rows, cols)
        b = _mat(A, h.get(n + 1), X.diff.get(n), rows, cols)
        out.append((n, tuple(tuple(A.add(A.scale(sign, x), y) for x, y in zip(r1, r2))
                             for r1, r2 in zip(a, b))))
    return tuple(out)


def enumeration_size(X: ProjComplex, Y: ProjComplex, i: int) -> int:
    A = X.algebra
    p = A.field.p
    hc = HomComplex(X, Y)
    return p ** hc.dim(i) + p ** hc.dim(i - 1)


def oracle_enumerate(X: ProjComplex, Y: ProjComplex, i: int, limit: int = ENUMERATION_LIMIT) -> OracleCount:
    """Count chain maps ``X -> Y[i]`` and the null-homotopic ones by exhaustive
    enumeration, using the textbook definitions directly."""
    A = X.algebra
    if A.field.p is None:
        raise StructuralError("enumeration oracle needs a prime field")
    if X.is_zero or Y.is_zero:
        return OracleCount(A.field.p, 1, 1)
    size = enumeration_size(X, Y, i)
    if size > limit:
        raise StructuralError(f"enumeration size {size} exceeds limit {limit}")
    cycles = sum(1 for f in _all_families(X, Y, i) if _is_chain_map_into_shift(X, Y, i, f))
    boundaries = {_homotopy_image(X, Y, i, h) for h in _all_families(X, Y, i - 1)}
    return OracleCount(A.field.p, cycles, len(boundaries))
