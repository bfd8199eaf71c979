"""Endomorphism algebras of lists of complexes, in K(A) and in the orbit category.

The basis of ``End(S_0 + ... + S_{r-1})`` is indexed by
``(source, target, degree, k)``: the k-th canonical representative of
``Hom_K(S_source, S_target[degree])``.  Products are compositions
(``a * b = a o b``), so ``e_q E e_p`` holds the maps ``S_p -> S_q`` and an
arrow ``p -> q`` of the quiver lives in ``e_q (rad / rad^2) e_p``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg
from .algebra import FDAlgebra, radical, radical_power_basis, subalgebra
from .complexes import ChainMap, ProjComplex, compose, identity
from .errors import ContractViolation, StructuralError
from .homcalc import HomSpace, hom_k, reduce_to_basis, support_window


class EndAlgebra:
    """``End`` of a list of nonzero complexes; graded (orbit category) or degree 0 only."""

    def __init__(self, summands: Sequence[ProjComplex], graded: bool = True, validate: bool = True):
        summands = tuple(summands)
        if not summands:
            raise StructuralError("need at least one summand")
        A = summands[0].algebra
        if any(S.algebra is not A for S in summands):
            raise StructuralError("summands over different algebras")
        if any(S.is_zero for S in summands):
            raise StructuralError("summands must be nonzero")
        self.summands = summands
        self.graded = graded
        self.base = A
        F = self.field = A.field
        r = len(summands)

        self.spaces: dict = {}
        self.index: list = []
        self.offsets: dict = {}
        for p in range(r):
            for q in range(r):
                w = support_window(summands[p], summands[q])
                degrees = range(w[0], w[1] + 1) if graded else [0]
                for i in degrees:
                    H = hom_k(summands[p], summands[q], i)
                    self.spaces[(p, q, i)] = H
                    if H.dim:
                        self.offsets[(p, q, i)] = len(self.index)
                        self.index.extend((p, q, i, k) for k in range(H.dim))
        self.index = sorted(self.index)
        self.offsets = {}
        for n, (p, q, i, k) in enumerate(self.index):
            if k == 0:
                self.offsets[(p, q, i)] = n
        d = len(self.index)
        self.grading = tuple(i for (_, _, i, _) in self.index)
        reps = [self.spaces[(p, q, i)].rep(k) for (p, q, i, k) in self.index]
        self._reps = reps

        table = []
        for a, (p, q, i, _) in enumerate(self.index):
            row = []
            for b, (p2, q2, i2, _) in enumerate(self.index):
                if q2 != p:
                    row.append({})
                    continue
                prod = compose(reps[a], reps[b])
                row.append(self._sparse(self._coords(prod, p2, q)))
            table.append(row)

        idems = [self._coords(identity(S), p, p) for p, S in enumerate(summands)]
        unit = [sum(col, F.zero) for col in zip(*idems)]
        labels = [f"{p}->{q}[{i}]#{k}" for (p, q, i, k) in self.index]
        self.algebra = FDAlgebra(F, labels, table, unit, idems, validate=validate)
        self.dim = d

    # -- identification with chain maps -------------------------------------
    def _coords(self, f: ChainMap, p: int, q: int) -> list:
        F = self.field
        vec = [F.zero] * len(self.index)
        i = f.degree
        H = self.spaces.get((p, q, i))
        if H is None:
            if not f.is_zero():
                w = support_window(self.summands[p], self.summands[q])
                if self.graded or w is None or not (w[0] <= i <= w[1]):
                    raise ContractViolation(f"map of degree {i} has no place in this algebra")
                raise ContractViolation("ungraded endomorphism algebra only holds degree-0 maps")
            return vec
        coeffs, _ = H.vector_coordinates(H.hc.to_vector(f))
        off = self.offsets.get((p, q, i))
        for k, c in enumerate(coeffs):
            if c:
                vec[off + k] = c
        return vec

    @staticmethod
    def _sparse(vec) -> dict:
        return {k: c for k, c in enumerate(vec) if c}

    def element(self, f: ChainMap, src: int, tgt: int) -> tuple:
        """Algebra element represented by a chain map ``S_src -> S_tgt``."""
        if f.source != self.summands[src] or f.target != self.summands[tgt]:
            raise ContractViolation("map does not go between the named summands")
        if not f.is_chain_map():
            raise ContractViolation("not a chain map")
        return self.algebra.element(self._coords(f, src, tgt))

    def rep(self, n: int) -> ChainMap:
        return self._reps[n]

    def space(self, src: int, tgt: int, degree: int) -> HomSpace:
        return hom_k(self.summands[src], self.summands[tgt], degree)

    def degree_part(self, degree: int) -> list[int]:
        return [n for n, g in enumerate(self.grading) if g == degree]

    def degree0(self) -> FDAlgebra:
        return subalgebra(self.algebra, self.degree_part(0))

    def idempotent(self, p: int) -> tuple:
        return self.algebra.idempotents[p]

    def graded_dims(self, src: int, tgt: int) -> dict:
        return {i: H.dim for (p, q, i), H in self.spaces.items() if p == src and q == tgt and H.dim}

    def __repr__(self):
        kind = "graded" if self.graded else "ungraded"
        return f"EndAlgebra({kind}, summands={len(self.summands)}, dim={self.dim})"


GradedEndAlgebra = EndAlgebra


def end_graded(summands: Sequence[ProjComplex]) -> EndAlgebra:
    return EndAlgebra(summands, graded=True)


def end_algebra(summands: Sequence[ProjComplex], graded: bool = False) -> EndAlgebra:
    return EndAlgebra(summands, graded=graded)


def end_ungraded(summands: Sequence[ProjComplex]) -> FDAlgebra:
    return EndAlgebra(summands, graded=False).algebra


# -- named generators and relations ------------------------------------------

@dataclass(frozen=True, eq=False)
class NamedMap:
    src: int
    tgt: int
    map: ChainMap

    @property
    def degree(self) -> int:
        return self.map.degree


@dataclass(frozen=True)
class Relation:
    """``sum coeff * word = 0``; a word ``(a, b, c)`` means ``a o b o c``."""

    label: str
    terms: tuple

    def names(self) -> set:
        return {n for _, w in self.terms for n in w}


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text: str):
    out = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            out.append(("num", int(num)))
        elif name:
            out.append(("name", name))
        elif op.strip():
            out.append(("op", op))
    return out


class _Parser:
    """Noncommutative polynomial expressions: ``+ - * ^ ( )``, juxtaposition = product."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise StructuralError(f"cannot parse relation {self.text!r} near token {self.pos}")
        self.pos += 1
        return tok

    def expr(self) -> dict:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        out = _scale(self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            s = 1 if self.take()[1] == "+" else -1
            out = _add(out, _scale(self.term(), s))
        return out

    def term(self) -> dict:
        out = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
            elif not (tok[0] in ("name", "num") or tok == ("op", "(")):
                return out
            out = _mul(out, self.power())

    def power(self) -> dict:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = self.take("num")[1]
            out = {(): 1}
            for _ in range(k):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return {(): value} if value else {}
        if kind == "name":
            self.take()
            return {(value,): 1}
        self.take("op", "(")
        out = self.expr()
        self.take("op", ")")
        return out


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + c
        if not out[w]:
            del out[w]
    return out


def _scale(a: dict, s: int) -> dict:
    return {w: s * c for w, c in a.items() if s * c}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            out = _add(out, {w1 + w2: c1 * c2})
    return out


def _parse_side(text: str) -> dict:
    p = _Parser(text)
    out = p.expr()
    if p.pos != len(p.toks):
        raise StructuralError(f"trailing input in {text!r}")
    return out


def parse_relation(text: str, label: str | None = None) -> Relation:
    """Parse ``"lhs = rhs"`` (or a bare expression meaning ``= 0``)."""
    sides = text.split("=")
    if len(sides) > 2:
        raise StructuralError("a single relation has at most one '='")
    lhs = _parse_side(sides[0])
    rhs = _parse_side(sides[1]) if len(sides) == 2 else {}
    diff = _add(lhs, _scale(rhs, -1))
    return Relation(label or text.strip(), tuple((c, w) for w, c in sorted(diff.items())))


def parse_relations(texts: Sequence[str]) -> list[Relation]:
    out = []
    for t in texts:
        # "a = b = c = 0" chains
        parts = [p.strip() for p in t.split("=")]
        if len(parts) > 2:
            out.extend(parse_relation(f"{p} = {parts[-1]}") for p in parts[:-1])
        else:
            out.append(parse_relation(t))
    return out


@dataclass
class RelationResult:
    label: str
    passed: bool
    source: int | None = None
    target: int | None = None
    degree: int | None = None
    coefficients: list = field(default_factory=list)
    homotopy: ChainMap | None = None
    message: str = ""

    def as_dict(self) -> dict:
        return {
            "relation": self.label,
            "passed": self.passed,
            "source": self.source,
            "target": self.target,
            "degree": self.degree,
            "coefficients": [str(c) for c in self.coefficients],
            "homotopy_components": (
                sorted(self.homotopy.components) if self.homotopy is not None else None
            ),
            "message": self.message,
        }


def _with_idempotents(E: EndAlgebra, named: Mapping[str, NamedMap]) -> dict:
    out = {f"e{p + 1}": NamedMap(p, p, identity(S)) for p, S in enumerate(E.summands)}
    out.update(named)
    return out


def evaluate_word(E: EndAlgebra, named: Mapping[str, NamedMap], word: Sequence[str]) -> NamedMap:
    named = _with_idempotents(E, named)
    if not word:
        raise StructuralError("empty word")
    for w in word:
        if w not in named:
            raise StructuralError(f"unknown generator {w!r}")
    gens = [named[w] for w in word]
    for left, right in zip(gens, gens[1:]):
        if right.tgt != left.src:
            raise ContractViolation(f"word {' '.join(word)} is not composable")
    out = gens[-1].map
    for g in reversed(gens[:-1]):
        out = compose(g.map, out)
    return NamedMap(gens[-1].src, gens[0].tgt, out)


def check_generators(E: EndAlgebra, named: Mapping[str, NamedMap]) -> None:
    for name, g in named.items():
        if g.map.source != E.summands[g.src] or g.map.target != E.summands[g.tgt]:
            raise ContractViolation(f"generator {name} does not go between its summands")
        if not g.map.is_chain_map():
            raise ContractViolation(f"generator {name} is not a chain map")
        E.element(g.map, g.src, g.tgt)


def verify_relations(E: EndAlgebra, named: Mapping[str, NamedMap], relations: Sequence[Relation]) -> list:
    """Check each relation modulo null-homotopy; one :class:`RelationResult` each."""
    full = _with_idempotents(E, named)
    for rel in relations:
        unknown = rel.names() - set(full)
        if unknown:
            raise StructuralError(f"relation {rel.label!r} uses unknown names {sorted(unknown)}")
    check_generators(E, named)
    out = []
    for rel in relations:
        if not rel.terms:
            out.append(RelationResult(rel.label, True, message="trivial"))
            continue
        values = [(c, evaluate_word(E, full, w)) for c, w in rel.terms]
        shapes = {(v.src, v.tgt, v.map.degree) for _, v in values}
        if len(shapes) != 1:
            out.append(RelationResult(rel.label, False, message="inhomogeneous relation"))
            continue
        src, tgt, deg = shapes.pop()
        total = None
        for c, v in values:
            term = v.map.scale(c)
            total = term if total is None else total + term
        w = support_window(E.summands[src], E.summands[tgt])
        if w is None or not (w[0] <= deg <= w[1]):
            ok = total.is_zero()
            out.append(RelationResult(rel.label, ok, src, tgt, deg, [],
                                      None, "outside support window"))
            continue
        H = hom_k(E.summands[src], E.summands[tgt], deg)
        coeffs, s = reduce_to_basis(total, H)
        ok = not any(coeffs)
        out.append(RelationResult(rel.label, ok, src, tgt, deg, coeffs, s if ok else None))
    return out


def spanning_check(E: EndAlgebra, named: Mapping[str, NamedMap]) -> bool:
    """Do monomials in the generators and the idempotents span ``E``?"""
    A = E.algebra
    F = A.field
    gens = [E.element(g.map, g.src, g.tgt) for g in named.values()]
    start = list(A.idempotents) + gens
    basis, piv = linalg.rref(start, F, A.dim)
    frontier = list(gens)
    for _ in range(A.dim):
        new = []
        for f in frontier:
            for g in gens:
                v = A.mul(g, f)
                res = linalg.reduce(v, basis, piv, F)
                if any(res):
                    basis, piv = linalg.rref(basis + [res], F, A.dim)
                    new.append(v)
        if not new:
            break
        frontier = new
    return len(basis) == A.dim


def quiver_data(E) -> tuple:
    """``(vertices, arrows)`` with ``arrows[i][j] = dim e_j (rad/rad^2) e_i`` (arrows i -> j)."""
    A = E.algebra if isinstance(E, EndAlgebra) else E
    F = A.field
    R = radical(A)
    R2 = radical_power_basis(A, 2) if R else []
    r = len(A.idempotents)

    def corner_dim(vecs, j, i):
        ej, ei = A.idempotents[j], A.idempotents[i]
        return linalg.rank([A.mul(A.mul(ej, v), ei) for v in vecs], F, A.dim) if vecs else 0

    arrows = [[corner_dim(R, j, i) - corner_dim(R2, j, i) for j in range(r)] for i in range(r)]
    return r, arrows
