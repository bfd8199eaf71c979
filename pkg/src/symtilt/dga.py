"""The endomorphism dg-algebra of a complex and its cohomology.

``RHom*(C, C)`` is modelled as the full matrix algebra over ``A`` indexed by
the positions (summand, degree, slot) of ``C``: an entry in row ``r``,
column ``c`` is a map from position ``c`` to position ``r`` and has degree
``deg(r) - deg(c)``.  The differential is ``d(f) = D f - (-1)^{|f|} f D``
with ``D`` the total differential matrix.  Nothing here goes through the
Hom-complex slot machinery, so cohomology dimensions give an independent
check of the homotopy-category Hom-spaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import FDAlgebra, subalgebra
from .complexes import ProjComplex
from .errors import ContractViolation, StructuralError


def _corner_basis(A: FDAlgebra, r: int, c: int):
    """RREF basis of ``e_r A e_c`` computed from scratch."""
    er, ec = A.idempotents[r], A.idempotents[c]
    vecs = [A.mul(A.mul(er, A.basis_element(k)), ec) for k in range(A.dim)]
    return linalg.rref(vecs, A.field, A.dim)


class DGAlgebra:
    """Graded algebra by structure constants with a degree +1 differential."""

    def __init__(self, field, labels, degrees, table, differential, unit, idempotents=(), validate=True):
        self.field = field
        self.labels = tuple(labels)
        self.degrees = tuple(degrees)
        self.dim = len(self.labels)
        self._mult = [[tuple(sorted(e.items())) for e in row] for row in table]
        self.d = [tuple(v) for v in differential]
        self.unit = tuple(unit)
        self.idempotents = tuple(tuple(e) for e in idempotents)
        if validate:
            self.validate()

    def mul(self, a, b) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            row = self._mult[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in row[j]:
                    out[k] += xy * c
        return tuple(F.norm(v) for v in out)

    def diff(self, a) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for i, x in enumerate(a):
            if x:
                for k, c in enumerate(self.d[i]):
                    if c:
                        out[k] += x * c
        return tuple(F.norm(v) for v in out)

    def basis_element(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def degree_part(self, i: int) -> list:
        return [k for k, g in enumerate(self.degrees) if g == i]

    @property
    def degree_range(self):
        return (min(self.degrees), max(self.degrees)) if self.degrees else (0, -1)

    def validate(self) -> None:
        F = self.field
        for i in range(self.dim):
            di = self.diff(self.basis_element(i))
            if any(self.diff(di)):
                raise StructuralError(f"d^2 != 0 on {self.labels[i]}")
            for k, c in enumerate(di):
                if c and self.degrees[k] != self.degrees[i] + 1:
                    raise StructuralError("differential does not raise degree by one")
        for i in range(self.dim):
            a = self.basis_element(i)
            da = self.diff(a)
            sign = F(-1 if self.degrees[i] % 2 else 1)
            for j in range(self.dim):
                b = self.basis_element(j)
                lhs = self.diff(self.mul(a, b))
                rhs = [F.norm(x + sign * y) for x, y in zip(self.mul(da, b), self.mul(a, self.diff(b)))]
                if list(lhs) != rhs:
                    raise StructuralError(f"Leibniz rule fails on ({self.labels[i]}, {self.labels[j]})")
        for i in range(self.dim):
            b = self.basis_element(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise StructuralError("unit axiom fails")
        if any(self.diff(self.unit)):
            raise StructuralError("unit is not a cocycle")


@dataclass(frozen=True)
class Position:
    summand: int
    degree: int
    slot: int
    idempotent: int


def positions(summands: Sequence[ProjComplex]) -> list:
    """Summand-major, then degree, then slot."""
    out = []
    for p, S in enumerate(summands):
        for n in sorted(S.terms):
            for k, e in enumerate(S.term(n)):
                out.append(Position(p, n, k, e))
    return out


def rhom_dga(C, validate: bool = True) -> DGAlgebra:
    """``RHom*(C, C)`` for a complex or a list of summands (one idempotent each)."""
    summands = [C] if isinstance(C, ProjComplex) else list(C)
    if not summands or any(S.is_zero for S in summands):
        raise ContractViolation("rhom_dga needs nonzero complexes")
    A = summands[0].algebra
    if any(S.algebra is not A for S in summands):
        raise StructuralError("summands over different algebras")
    F = A.field
    pos = positions(summands)
    N = len(pos)

    # total differential: D[r][c] from position c to position r
    D = [[None] * N for _ in range(N)]
    where = {(q.summand, q.degree, q.slot): i for i, q in enumerate(pos)}
    for p, S in enumerate(summands):
        for n, M in S.diff.items():
            for t, row in enumerate(M):
                for s, a in enumerate(row):
                    if any(a):
                        D[where[(p, n + 1, t)]][where[(p, n, s)]] = a

    corners = {}
    basis = []  # (r, c, element)
    labels, degrees = [], []
    for r in range(N):
        for c in range(N):
            rows, piv = _corner_basis(A, pos[r].idempotent, pos[c].idempotent)
            corners[(r, c)] = (rows, piv, len(basis))
            for k, v in enumerate(rows):
                basis.append((r, c, tuple(v)))
                labels.append(f"({r},{c})#{k}")
                degrees.append(pos[r].degree - pos[c].degree)
    dim = len(basis)

    def coords(entries: dict) -> tuple:
        """Coordinates of a sparse matrix ``{(r, c): element}``."""
        vec = [F.zero] * dim
        for (r, c), a in entries.items():
            if not any(a):
                continue
            rows, piv, off = corners[(r, c)]
            co = linalg.coordinates(a, rows, piv, F)
            if co is None:
                raise StructuralError("matrix entry outside its corner")
            for k, x in enumerate(co):
                vec[off + k] = x
        return tuple(vec)

    def add_entry(out: dict, key, a):
        out[key] = A.add(out[key], a) if key in out else a

    table = []
    for r, c, a in basis:
        row = []
        for r2, c2, b in basis:
            if c != r2:
                row.append({})
                continue
            v = coords({(r, c2): A.mul(a, b)})
            row.append({k: x for k, x in enumerate(v) if x})
        table.append(row)

    minus = F(-1)
    diff = []
    for (r, c, a), g in zip(basis, degrees):
        out: dict = {}
        for k in range(N):
            if D[k][r] is not None:
                add_entry(out, (k, c), A.mul(D[k][r], a))
            if D[c][k] is not None:
                term = A.mul(a, D[c][k])
                add_entry(out, (r, k), A.scale(minus, term) if g % 2 == 0 else term)
        diff.append(coords(out))

    def block_identity(filter_fn) -> tuple:
        return coords({(i, i): A.idempotents[q.idempotent] for i, q in enumerate(pos) if filter_fn(q)})

    unit = block_identity(lambda q: True)
    idems = [block_identity(lambda q, p=p: q.summand == p) for p in range(len(summands))]
    dga = DGAlgebra(F, labels, degrees, table, diff, unit, idems, validate=validate)
    dga.positions = pos
    dga.base = A
    dga.entries = basis
    return dga


def degree_pattern(D: DGAlgebra) -> list:
    """``[[deg(r) - deg(c)]]`` over the positions of ``rhom_dga``."""
    pos = D.positions
    return [[r.degree - c.degree for c in pos] for r in pos]


def differential_arrows(D: DGAlgebra) -> list:
    """Sorted ``((r, c), (r', c'))``: the differential moves some entry at
    ``(r, c)`` to ``(r', c')``."""
    arrows = set()
    for i, (r, c, _) in enumerate(D.entries):
        for k, x in enumerate(D.d[i]):
            if x:
                r2, c2, _ = D.entries[k]
                arrows.add(((r, c), (r2, c2)))
    return sorted(arrows)


class Cohomology:
    """``H^*(D)`` with echelon representatives and the induced product."""

    def __init__(self, D: DGAlgebra, check: bool = True):
        self.dga = D
        F = self.field = D.field
        lo, hi = D.degree_range
        self.reps: dict = {}
        self._bound: dict = {}
        for i in range(lo, hi + 1):
            idx = D.degree_part(i)
            below = D.degree_part(i - 1)
            # d restricted to degree i, as rows in degree-(i+1) coordinates
            above = D.degree_part(i + 1)
            d_rows = [[D.d[k][t] for t in above] for k in idx]
            z = linalg.left_kernel(d_rows, len(above), F) if above else [
                [F.one if a == b else F.zero for b in range(len(idx))] for a in range(len(idx))
            ]
            Z, _ = linalg.rref(z, F, len(idx))
            B, bpiv = linalg.rref([[D.d[k][t] for t in idx] for k in below], F, len(idx))
            residues = [linalg.reduce(v, B, bpiv, F) for v in Z]
            R, rpiv = linalg.rref(residues, F, len(idx))
            self.reps[i] = (idx, R, rpiv)
            self._bound[i] = (B, bpiv)
        self.dims = {i: len(v[1]) for i, v in self.reps.items() if v[1]}
        self.index = [(i, k) for i in sorted(self.dims) for k in range(self.dims[i])]
        self.algebra = self._build(check)

    def _full(self, i: int, local) -> tuple:
        idx = self.reps[i][0]
        vec = [self.field.zero] * self.dga.dim
        for k, x in zip(idx, local):
            vec[k] = x
        return tuple(vec)

    def rep(self, i: int, k: int) -> tuple:
        return self._full(i, self.reps[i][1][k])

    def coordinates(self, vec) -> tuple:
        """``(degree, coeffs)`` of a homogeneous cocycle modulo coboundaries."""
        F = self.field
        D = self.dga
        degs = {D.degrees[k] for k, x in enumerate(vec) if x}
        if not degs:
            return None, []
        if len(degs) > 1:
            raise ContractViolation("inhomogeneous element")
        i = degs.pop()
        if any(D.diff(vec)):
            raise ContractViolation("not a cocycle")
        idx, R, rpiv = self.reps[i]
        B, bpiv = self._bound[i]
        local = linalg.reduce([vec[k] for k in idx], B, bpiv, F)
        coeffs = [local[c] for c in rpiv]
        if any(linalg.reduce(local, R, rpiv, F)):
            raise ContractViolation("cocycle outside the span of representatives")
        return i, coeffs

    def _class_vector(self, vec) -> list:
        F = self.field
        out = [F.zero] * len(self.index)
        i, coeffs = self.coordinates(vec)
        if i is None:
            return out
        start = self.index.index((i, 0)) if coeffs else 0
        for k, c in enumerate(coeffs):
            out[start + k] = c
        return out

    def _build(self, check: bool) -> FDAlgebra:
        D = self.dga
        F = self.field
        reps = [self.rep(i, k) for i, k in self.index]
        table = []
        for a, ra in enumerate(reps):
            row = []
            for b, rb in enumerate(reps):
                v = self._class_vector(D.mul(ra, rb))
                row.append({k: x for k, x in enumerate(v) if x})
            table.append(row)
        if check:
            self._check_well_defined(reps, table)
        unit = self._class_vector(D.unit)
        idems = [self._class_vector(e) for e in D.idempotents]
        labels = [f"H{i}#{k}" for i, k in self.index]
        self.grading = tuple(i for i, _ in self.index)
        return FDAlgebra(F, labels, table, unit, idems)

    def _check_well_defined(self, reps, table) -> None:
        """Perturb each representative by a coboundary; products must not move."""
        D = self.dga
        F = self.field
        for a, (i, _) in enumerate(self.index):
            B, _ = self._bound[i]
            if not B:
                continue
            alt = tuple(F.norm(x + y) for x, y in zip(reps[a], self._full(i, B[0])))
            for b, rb in enumerate(reps):
                v1 = self._class_vector(D.mul(alt, rb))
                v2 = self._class_vector(D.mul(rb, alt))
                if v1 != [table[a][b].get(k, F.zero) for k in range(len(reps))] or \
                        v2 != [table[b][a].get(k, F.zero) for k in range(len(reps))]:
                    raise StructuralError("induced product depends on the representative")

    def degree0(self) -> FDAlgebra:
        return subalgebra(self.algebra, [n for n, (i, _) in enumerate(self.index) if i == 0])


def cohomology(D: DGAlgebra, check: bool = True) -> Cohomology:
    return Cohomology(D, check)


def dga_report(D: DGAlgebra, H: Cohomology | None = None) -> dict:
    H = H or cohomology(D)
    nnz = sum(1 for row in D.d for x in row if x)
    lo, hi = D.degree_range
    return {
        "dim": D.dim,
        "degree_pattern": degree_pattern(D),
        "graded_dims": {str(i): len(D.degree_part(i)) for i in range(lo, hi + 1)},
        "differential_nonzeros": nnz,
        "differential_arrows": [[list(a), list(b)] for a, b in differential_arrows(D)],
        "cohomology_dims": {str(i): d for i, d in sorted(H.dims.items())},
    }
