"""Finite-dimensional algebras given by structure constants.

An element is a tuple of ``dim`` field scalars in the algebra's basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import StructuralError, UnsupportedFeatureError
from .fields import QQ, Field


class FDAlgebra:
    """Associative unital algebra with a complete set of orthogonal idempotents.

    ``table[i][j]`` is the product ``b_i * b_j``, either as a dense vector or
    as a sparse ``{k: coeff}`` mapping.  Instances are treated as immutable.
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        table,
        unit: Sequence,
        idempotents: Sequence[Sequence] | None = None,
        validate: bool = True,
    ):
        F = self.field = field
        self.labels = tuple(labels)
        d = self.dim = len(self.labels)
        if d == 0:
            raise StructuralError("algebra must have positive dimension")
        if len(table) != d or any(len(row) != d for row in table):
            raise StructuralError("structure-constant table must be dim x dim")
        mult = []
        for row in table:
            out_row = []
            for entry in row:
                if isinstance(entry, dict):
                    items = [(int(k), F(c)) for k, c in sorted(entry.items())]
                else:
                    if len(entry) != d:
                        raise StructuralError("product vector has wrong length")
                    items = [(k, F(c)) for k, c in enumerate(entry)]
                out_row.append(tuple((k, c) for k, c in items if c))
            mult.append(tuple(out_row))
        self._mult = tuple(mult)
        self.unit = self.element(unit)
        if idempotents is None:
            idempotents = [self.unit]
        self.idempotents = tuple(self.element(e) for e in idempotents)
        self._cache: dict = {}
        if validate:
            self.validate()

    # -- elements ---------------------------------------------------------
    def element(self, coeffs) -> tuple:
        if len(coeffs) != self.dim:
            raise StructuralError(f"element has length {len(coeffs)}, algebra has dim {self.dim}")
        F = self.field
        return tuple(F(c) for c in coeffs)

    @property
    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis_element(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def add(self, a, b) -> tuple:
        F = self.field
        return tuple(F.norm(x + y) for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        F = self.field
        return tuple(F.norm(x - y) for x, y in zip(a, b))

    def scale(self, c, a) -> tuple:
        F = self.field
        return tuple(F.norm(c * x) for x in a)

    def mul(self, a, b) -> tuple:
        if len(a) != self.dim or len(b) != self.dim:
            raise StructuralError("dimension mismatch in multiply")
        F = self.field
        out = [F.zero] * self.dim
        nzb = [(j, y) for j, y in enumerate(b) if y]
        mult = self._mult
        for i, x in enumerate(a):
            if not x:
                continue
            row = mult[i]
            for j, y in nzb:
                xy = x * y
                for k, c in row[j]:
                    out[k] += xy * c
        return tuple(F.norm(v) for v in out)

    def product_vector(self, i: int, j: int) -> tuple:
        out = [self.field.zero] * self.dim
        for k, c in self._mult[i][j]:
            out[k] = c
        return tuple(out)

    # -- matrices of elements ---------------------------------------------
    def matmul(self, P, Q):
        """Product of matrices whose entries are algebra elements."""
        if not P or not Q:
            ncols = len(Q[0]) if Q else 0
            return [[self.zero] * ncols for _ in P]
        inner = len(Q)
        if any(len(row) != inner for row in P):
            raise StructuralError("matrix shapes do not compose")
        out = []
        for row in P:
            out_row = []
            for c in range(len(Q[0])):
                acc = self.zero
                for k in range(inner):
                    if any(row[k]) and any(Q[k][c]):
                        acc = self.add(acc, self.mul(row[k], Q[k][c]))
                out_row.append(acc)
            out.append(out_row)
        return out

    # -- corners ----------------------------------------------------------
    def corner(self, j: int, i: int):
        """RREF basis ``(rows, pivots)`` of ``e_j A e_i``."""
        key = ("corner", j, i)
        if key not in self._cache:
            ej, ei = self.idempotents[j], self.idempotents[i]
            vecs = [self.mul(self.mul(ej, self.basis_element(k)), ei) for k in range(self.dim)]
            self._cache[key] = linalg.rref(vecs, self.field, self.dim)
        return self._cache[key]

    def corner_dim(self, j: int, i: int) -> int:
        return len(self.corner(j, i)[1])

    def in_corner(self, a, j: int, i: int) -> bool:
        ej, ei = self.idempotents[j], self.idempotents[i]
        return self.mul(self.mul(ej, a), ei) == tuple(a)

    def corner_inverse(self, a, i: int):
        """Inverse of ``a`` in the corner algebra ``e_i A e_i``, or ``None``."""
        ei = self.idempotents[i]
        rows, piv = self.corner(i, i)
        if not rows or not self.in_corner(a, i, i):
            return None
        images = [self.mul(a, r) for r in rows]
        sol = linalg.solve_combination(images, ei, self.field)
        if sol is None:
            return None
        v = self.zero
        for c, r in zip(sol, rows):
            v = self.add(v, self.scale(c, r))
        if self.mul(v, a) != ei:
            return None
        return v

    # -- validation -------------------------------------------------------
    def validate(self) -> None:
        d = self.dim
        basis = [self.basis_element(i) for i in range(d)]
        prods = [[self.product_vector(i, j) for j in range(d)] for i in range(d)]
        for i, j, k in itertools.product(range(d), repeat=3):
            left = self.mul(prods[i][j], basis[k])
            right = self.mul(basis[i], prods[j][k])
            if left != right:
                raise StructuralError(
                    f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                )
        for i in range(d):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                raise StructuralError(f"unit law fails on {self.labels[i]}")
        total = self.zero
        for a, e in enumerate(self.idempotents):
            if self.mul(e, e) != e:
                raise StructuralError(f"idempotent {a} is not idempotent")
            for b, f in enumerate(self.idempotents):
                if a != b and any(self.mul(e, f)):
                    raise StructuralError(f"idempotents {a} and {b} are not orthogonal")
            total = self.add(total, e)
        if total != self.unit:
            raise StructuralError("idempotents do not sum to the unit")

    def with_idempotents(self, idempotents) -> "FDAlgebra":
        return FDAlgebra(self.field, self.labels, self._table(), self.unit, idempotents)

    def _table(self):
        return [[dict(self._mult[i][j]) for j in range(self.dim)] for i in range(self.dim)]

    def structure_constants(self):
        """Sparse ``(i, j, k, c)`` quadruples, sorted."""
        return [
            (i, j, k, c)
            for i in range(self.dim)
            for j in range(self.dim)
            for k, c in self._mult[i][j]
        ]

    def __eq__(self, other):
        return (
            isinstance(other, FDAlgebra)
            and self.field == other.field
            and self.dim == other.dim
            and self._mult == other._mult
            and self.unit == other.unit
            and self.idempotents == other.idempotents
        )

    def __hash__(self):
        return hash((self.field, self.dim, self._mult, self.idempotents))

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, idempotents={len(self.idempotents)}, field={self.field!r})"


def multiply(A: FDAlgebra, a, b) -> tuple:
    return A.mul(a, b)


def _span_products(A: FDAlgebra, left: Sequence, right: Sequence):
    vecs = [A.mul(x, y) for x in left for y in right]
    return linalg.rref(vecs, A.field, A.dim)[0]


def _require_char0(A: FDAlgebra, what: str) -> None:
    if A.field.characteristic != 0:
        raise UnsupportedFeatureError(
            f"{what} is only implemented in characteristic 0 (trace-form radical); got {A.field!r}"
        )


def radical(A: FDAlgebra) -> list:
    """RREF basis of the Jacobson radical, as the radical of the trace form."""
    _require_char0(A, "radical")
    if "radical" in A._cache:
        return A._cache["radical"]
    F = A.field
    d = A.dim
    # tr(L_{b_k}) = sum_j coefficient of b_j in b_k b_j
    tr = []
    for k in range(d):
        t = F.zero
        for j in range(d):
            for kk, c in A._mult[k][j]:
                if kk == j:
                    t += c
        tr.append(t)
    gram = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(sum((c * tr[k] for k, c in A._mult[i][j]), F.zero))
        gram.append(row)
    rad = linalg.nullspace(gram, d, F)
    A._cache["radical"] = rad
    return rad


def radical_powers(A: FDAlgebra) -> list[int]:
    """Dimensions of rad, rad^2, ... down to (and excluding) the zero power."""
    R = radical(A)
    dims = []
    cur = R
    while cur:
        dims.append(len(cur))
        nxt = _span_products(A, cur, R)
        if len(nxt) == len(cur):
            raise StructuralError("radical is not nilpotent")
        cur = nxt
    return dims


def radical_power_basis(A: FDAlgebra, k: int) -> list:
    R = radical(A)
    cur = R
    for _ in range(k - 1):
        cur = _span_products(A, cur, R)
    return cur


def cartan_matrix(A: FDAlgebra) -> list[list[int]]:
    r = len(A.idempotents)
    return [[A.corner_dim(i, j) for j in range(r)] for i in range(r)]


def center(A: FDAlgebra) -> list:
    F = A.field
    d = A.dim
    # z central iff sum_k z_k [b_k, b_i] = 0 for every i
    rows = []
    for i in range(d):
        comms = [
            [F.norm(x - y) for x, y in zip(A.product_vector(k, i), A.product_vector(i, k))]
            for k in range(d)
        ]
        rows.extend(linalg.transpose(comms, d))
    return linalg.nullspace(rows, d, F)


def commutator_space(A: FDAlgebra) -> list:
    F = A.field
    vecs = [
        [F.norm(x - y) for x, y in zip(A.product_vector(i, j), A.product_vector(j, i))]
        for i in range(A.dim)
        for j in range(i + 1, A.dim)
    ]
    return linalg.rref(vecs, F, A.dim)[0]


def gram_matrix(A: FDAlgebra, functional: Sequence) -> list:
    F = A.field
    lam = [F(c) for c in functional]
    return [
        [F.norm(sum((c * lam[k] for k, c in A._mult[i][j]), F.zero)) for j in range(A.dim)]
        for i in range(A.dim)
    ]


def is_symmetrizing(A: FDAlgebra, functional: Sequence) -> bool:
    G = gram_matrix(A, functional)
    d = A.dim
    if any(G[i][j] != G[j][i] for i in range(d) for j in range(d)):
        return False
    return linalg.det(G, A.field) != 0


def symmetric_functionals(A: FDAlgebra) -> list:
    """Basis of functionals vanishing on ``[A, A]``."""
    return linalg.nullspace(commutator_space(A), A.dim, A.field)


def graded_commutator_space(A: FDAlgebra, grading: Sequence[int]) -> list:
    """Span of ``ab - (-1)^{|a||b|} ba`` over homogeneous basis pairs."""
    F = A.field
    vecs = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            sign = -1 if (grading[i] * grading[j]) % 2 else 1
            vecs.append([
                F.norm(x - sign * y) for x, y in zip(A.product_vector(i, j), A.product_vector(j, i))
            ])
    return linalg.rref(vecs, F, A.dim)[0]


def graded_symmetric_functionals(A: FDAlgebra, grading: Sequence[int]) -> list:
    return linalg.nullspace(graded_commutator_space(A, grading), A.dim, A.field)


def degeneracy_witness(A: FDAlgebra, functionals: Sequence):
    """A nonzero ``v`` with ``lam(v b) = 0`` for every listed ``lam`` and basis ``b``.

    If one exists, every combination of the functionals has a degenerate
    pairing, so no candidate search is needed.  ``None`` otherwise.
    """
    F = A.field
    rows = []
    for lam in functionals:
        for j in range(A.dim):
            rows.append([
                F.norm(sum((c * lam[k] for k, c in A._mult[i][j]), F.zero)) for i in range(A.dim)
            ])
    null = linalg.nullspace(rows, A.dim, F) if rows else [
        [F.one if k == i else F.zero for k in range(A.dim)] for i in range(A.dim)
    ]
    return tuple(null[0]) if null else None


def _search_form(A: FDAlgebra, lams: list, max_trials: int):
    F = A.field
    if not lams or degeneracy_witness(A, lams) is not None:
        return None

    def combo(coeffs):
        return tuple(
            F.norm(sum((F(c) * lam[k] for c, lam in zip(coeffs, lams)), F.zero))
            for k in range(A.dim)
        )

    def candidates():
        s = len(lams)
        for t in range(1, s + 1):
            yield [1] * t + [0] * (s - t)
        yield from itertools.product(range(1, A.dim + 2), repeat=s)

    for trial, coeffs in enumerate(candidates()):
        if trial >= max_trials:
            break
        lam = combo(coeffs)
        if linalg.det(gram_matrix(A, lam), F) != 0:
            return lam
    return None


def symmetrizing_form(A: FDAlgebra, max_trials: int = 20000):
    """A nondegenerate functional with ``lam(ab) = lam(ba)``, or ``None``.

    Candidates are tried in a fixed order: the prefix sums of a basis of
    symmetric functionals, then integer combinations with coefficients in
    ``1..dim+1`` (lexicographic).  The Gram determinant is a polynomial of
    degree ``dim`` in the coefficients, so exhausting that grid decides
    non-vanishing; ``max_trials`` caps the search, in which case ``None``
    means "not certified".  When some nonzero element pairs to zero with
    everything under every symmetric functional, ``None`` is certain and
    the search is skipped (see :func:`degeneracy_witness`).
    """
    key = ("symform", max_trials)
    if key not in A._cache:
        # reversed RREF order puts socle-type functionals first
        A._cache[key] = _search_form(A, symmetric_functionals(A)[::-1], max_trials)
    return A._cache[key]


def graded_symmetrizing_form(A: FDAlgebra, grading: Sequence[int], max_trials: int = 20000):
    """Like :func:`symmetrizing_form` for ``lam(ab) = (-1)^{|a||b|} lam(ba)``."""
    key = ("gsymform", tuple(grading), max_trials)
    if key not in A._cache:
        A._cache[key] = _search_form(A, graded_symmetric_functionals(A, grading)[::-1], max_trials)
    return A._cache[key]


def symmetry_report(A: FDAlgebra, grading: Sequence[int] | None = None) -> dict:
    """Symmetric / graded-symmetric certificates, with a witness when symmetry is refuted."""
    lam = symmetrizing_form(A)
    out = {"symmetric": lam is not None}
    if lam is None:
        w = degeneracy_witness(A, symmetric_functionals(A))
        out["refuted"] = w is not None
        if w is not None:
            out["witness"] = [A.labels[k] for k, c in enumerate(w) if c]
    if grading is not None:
        out["graded_symmetric"] = graded_symmetrizing_form(A, grading) is not None
    return out


def canonical_cartan(C: Sequence[Sequence[int]]) -> tuple:
    """Lexicographically least form of ``C`` under simultaneous row/column permutation."""
    r = len(C)
    best = None
    for perm in itertools.permutations(range(r)):
        form = tuple(tuple(C[perm[i]][perm[j]] for j in range(r)) for i in range(r))
        if best is None or form < best:
            best = form
    return best if best is not None else ()


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    n_idempotents: int
    cartan: tuple
    cartan_det: int
    radical_series: tuple
    center_dim: int
    commutator_dim: int
    symmetric: bool

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "n_idempotents": self.n_idempotents,
            "cartan": [list(r) for r in self.cartan],
            "cartan_det": self.cartan_det,
            "radical_series": list(self.radical_series),
            "center_dim": self.center_dim,
            "commutator_dim": self.commutator_dim,
            "symmetric": self.symmetric,
        }


def fingerprint(A: FDAlgebra) -> Fingerprint:
    if "fingerprint" in A._cache:
        return A._cache["fingerprint"]
    C = cartan_matrix(A)
    fp = Fingerprint(
        dim=A.dim,
        n_idempotents=len(A.idempotents),
        cartan=canonical_cartan(C),
        cartan_det=linalg.integer_det(C),
        radical_series=tuple(radical_powers(A)),
        center_dim=len(center(A)),
        commutator_dim=len(commutator_space(A)),
        symmetric=symmetrizing_form(A) is not None,
    )
    A._cache["fingerprint"] = fp
    return fp


def subalgebra(A: FDAlgebra, indices: Sequence[int], validate: bool = True) -> FDAlgebra:
    """Subalgebra spanned by a subset of basis elements that is closed under
    multiplication and contains the unit and idempotents."""
    pos = {k: n for n, k in enumerate(indices)}
    table = []
    for i in indices:
        row = []
        for j in indices:
            entry = {}
            for k, c in A._mult[i][j]:
                if k not in pos:
                    raise StructuralError("basis subset is not closed under multiplication")
                entry[pos[k]] = c
            row.append(entry)
        table.append(row)

    def restrict(v):
        if any(v[k] for k in range(A.dim) if k not in pos):
            raise StructuralError("unit or idempotent lies outside the subalgebra")
        return [v[k] for k in indices]

    return FDAlgebra(
        A.field,
        [A.labels[k] for k in indices],
        table,
        restrict(A.unit),
        [restrict(e) for e in A.idempotents],
        validate=validate,
    )


def ground_field_algebra(field: Field = QQ) -> FDAlgebra:
    return FDAlgebra(field, ["1"], [[[1]]], [1])
