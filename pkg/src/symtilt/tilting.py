"""Approximations, the exchange construction and tilting complexes over the
resulting endomorphism algebras.

Maps in the orbit category ``X -> S`` are sums over degrees ``i`` of maps
``X -> S[i]``; an approximation is assembled as one degree-0 chain map into
``M' = sum_c S_{j_c}[i_c]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .algebra import (
    FDAlgebra, cartan_matrix, fingerprint, symmetrizing_form, symmetry_report,
)
from .complexes import (
    ChainMap, ProjComplex, as_shifted_target, compose, cone_maps, direct_sum_blocks,
    minimize, shift, stalk, zero_complex, zero_map,
)
from .endalg import EndAlgebra
from .errors import ContractViolation, PreconditionError, StructuralError
from .homcalc import hom_k, support_window
from .linalg import integer_det


# -- approximations --------------------------------------------------------

@dataclass(frozen=True)
class ApproxComponent:
    """``f_c : X -> S_summand[degree]``, the ``index``-th basis map of that Hom-space."""

    summand: int
    degree: int
    index: int


@dataclass(eq=False)
class Approximation:
    source: ProjComplex
    summands: tuple
    components: tuple
    target: ProjComplex
    map: ChainMap
    parts: tuple = ()

    @property
    def is_zero(self) -> bool:
        return not self.components


def _hom_window(X: ProjComplex, Y: ProjComplex):
    w = support_window(X, Y)
    return range(w[0], w[1] + 1) if w else range(0)


def _candidate_components(X: ProjComplex, M: Sequence[ProjComplex]) -> list:
    out = []
    for j, S in enumerate(M):
        for i in _hom_window(X, S):
            out.extend(ApproxComponent(j, i, k) for k in range(hom_k(X, S, i).dim))
    return out


def _assemble(X: ProjComplex, M: Sequence[ProjComplex], comps: Sequence[ApproxComponent]) -> Approximation:
    A = X.algebra
    if not comps:
        Z = zero_complex(A)
        return Approximation(X, tuple(M), (), Z, zero_map(X, Z), ())
    parts = [shift(M[c.summand], c.degree) for c in comps]
    ds = direct_sum_blocks(*parts)
    f = None
    for n, c in enumerate(comps):
        rep = as_shifted_target(hom_k(X, M[c.summand], c.degree).rep(c.index))
        term = compose(ds.injection(n), rep)
        f = term if f is None else f + term
    return Approximation(X, tuple(M), tuple(comps), ds.total, f.check(), tuple(parts))


def verify_left_approx(f: ChainMap, M: Sequence[ProjComplex]) -> bool:
    """Every map ``X -> S[i]`` (``S`` in ``M``) factors through ``f : X -> M'``."""
    X, Mp = f.source, f.target
    F = X.algebra.field
    for S in M:
        for i in _hom_window(X, S):
            H = hom_k(X, S, i)
            if not H.dim:
                continue
            if Mp.is_zero:
                return False
            images = [H.reduce(compose(h, f)) for h in hom_k(Mp, S, i).basis]
            if linalg.rank(images, F, H.dim) < H.dim:
                return False
    return True


def verify_right_approx(g: ChainMap, M: Sequence[ProjComplex]) -> bool:
    """Every map ``S[-i] -> Y`` (``S`` in ``M``) factors through ``g : M' -> Y``."""
    Mp, Y = g.source, g.target
    F = Y.algebra.field
    for S in M:
        for i in _hom_window(S, Y):
            H = hom_k(S, Y, i)
            if not H.dim:
                continue
            if Mp.is_zero:
                return False
            images = [H.reduce(compose(g, h)) for h in hom_k(S, Mp, i).basis]
            if linalg.rank(images, F, H.dim) < H.dim:
                return False
    return True


def left_approximation(X: ProjComplex, M: Sequence[ProjComplex], mode: str = "raw") -> Approximation:
    """Left add(M)-approximation of ``X`` in the orbit category.

    ``raw`` takes every basis map of every ``Hom_K(X, S[i])``.  ``reduced``
    then drops components greedily, in basis order, while the result still
    verifies.
    """
    if X.is_zero or not M or any(S.is_zero for S in M):
        raise PreconditionError("left_approximation needs nonzero X and nonzero summands")
    if mode not in ("raw", "reduced"):
        raise StructuralError(f"unknown approximation mode {mode!r}")
    comps = _candidate_components(X, M)
    if mode == "reduced":
        kept = list(comps)
        for c in comps:
            trial = [k for k in kept if k != c]
            if verify_left_approx(_assemble(X, M, trial).map, M):
                kept = trial
        comps = kept
    return _assemble(X, M, comps)


# -- exchange --------------------------------------------------------------

def _shifted_copies(approx: Approximation) -> list:
    """Distinct shifted summands occurring in ``M'``, in first-occurrence order."""
    seen = []
    for c in approx.components:
        key = (c.summand, c.degree)
        if key not in seen:
            seen.append(key)
    return [shift(approx.summands[j], i) for j, i in seen]


def same_profile(Y: ProjComplex, Z: ProjComplex):
    """Shift ``k`` with ``Y`` and ``Z[k]`` of equal shape, or ``None``.

    Equal shape: the same idempotents in each degree, and differential
    entries generating the same two-sided ideals.
    """
    if Y.is_zero or Z.is_zero:
        return 0 if Y.is_zero and Z.is_zero else None
    A = Y.algebra
    k = Z.support[0] - Y.support[0]
    Zs = shift(Z, k)
    if Y.terms != Zs.terms:
        return None
    for n in Y.diff:
        for r1, r2 in zip(Y.d(n), Zs.d(n)):
            for a, b in zip(r1, r2):
                if ideal_basis(A, a) != ideal_basis(A, b):
                    return None
    return k


def ideal_basis(A: FDAlgebra, a) -> tuple:
    """RREF basis of the two-sided ideal ``A a A``."""
    vecs = [A.mul(A.mul(A.basis_element(i), a), A.basis_element(j))
            for i in range(A.dim) for j in range(A.dim)]
    return tuple(tuple(v) for v in linalg.rref(vecs, A.field, A.dim)[0])


@dataclass(eq=False)
class ExchangeResult:
    X: ProjComplex
    M: tuple
    approximation: Approximation
    cone: ProjComplex
    Y: ProjComplex
    minimization: object
    lam: EndAlgebra
    gamma: EndAlgebra
    lam0: FDAlgebra
    gamma0: FDAlgebra
    triangle: tuple
    right_approx: bool
    symmetry: dict = field(default_factory=dict)

    @property
    def f(self) -> ChainMap:
        return self.approximation.map

    def report(self) -> dict:
        def alg(A, E=None):
            C = cartan_matrix(A)
            out = {"dim": A.dim, "cartan": C, "cartan_det": integer_det(C)}
            if E is not None:
                out["graded_dims"] = _degree_counts(E)
            return out

        return {
            "approximation": [
                {"summand": c.summand, "degree": c.degree, "index": c.index}
                for c in self.approximation.components
            ],
            "cone_profile": self.cone.profile(),
            "Y_profile": self.Y.profile(),
            "right_approximation": self.right_approx,
            "lambda": alg(self.lam.algebra, self.lam),
            "gamma": alg(self.gamma.algebra, self.gamma),
            "lambda0": alg(self.lam0),
            "gamma0": alg(self.gamma0),
            "determinants_equal": {
                "graded": integer_det(cartan_matrix(self.lam.algebra))
                == integer_det(cartan_matrix(self.gamma.algebra)),
                "degree0": integer_det(cartan_matrix(self.lam0))
                == integer_det(cartan_matrix(self.gamma0)),
            },
            "symmetry": self.symmetry,
        }


def _degree_counts(E: EndAlgebra) -> dict:
    out: dict = {}
    for g in E.grading:
        out[str(g)] = out.get(str(g), 0) + 1
    return dict(sorted(out.items(), key=lambda kv: int(kv[0])))


def exchange(X: ProjComplex, M: Sequence[ProjComplex], mode: str = "reduced", strict: bool = False) -> ExchangeResult:
    """Replace ``X`` by the minimized cone ``Y`` of a left add(M)-approximation.

    Builds ``lam = End(M + X)`` and ``gamma = End(M + Y)`` in the orbit
    category, and the ordinary endomorphism algebras ``lam0 = End_K(X + M')``
    and ``gamma0 = End_K(Y + M')``.  Symmetry certificates of all four are
    reported; with ``strict`` a missing certificate raises.
    """
    A = X.algebra
    if symmetrizing_form(A) is None:
        raise PreconditionError("exchange needs a symmetric base algebra")
    M = tuple(M)
    approx = left_approximation(X, M, mode)
    C, incl, proj = cone_maps(approx.map)
    Y, cert = minimize(C)
    g = compose(cert.projection, incl)            # M' -> Y
    h = compose(proj, cert.inclusion)             # Y -> X[1]
    lam = EndAlgebra(list(M) + [X], graded=True)
    gamma = EndAlgebra(list(M) + ([Y] if not Y.is_zero else []), graded=True)
    copies = _shifted_copies(approx)
    lam0 = EndAlgebra(copies + [X], graded=False).algebra
    gamma0 = EndAlgebra(copies + ([Y] if not Y.is_zero else []), graded=False).algebra
    right = verify_right_approx(g, M) if not Y.is_zero else True
    symmetry = {
        "lambda": symmetry_report(lam.algebra, lam.grading),
        "gamma": symmetry_report(gamma.algebra, gamma.grading),
        "lambda0": symmetry_report(lam0),
        "gamma0": symmetry_report(gamma0),
    }
    if strict:
        missing = [k for k, v in symmetry.items() if not v["symmetric"]]
        if missing:
            raise ContractViolation(f"no symmetrizing form certified for {missing}")
    return ExchangeResult(
        X, M, approx, C, Y, cert, lam, gamma, lam0, gamma0,
        (approx.map, g, h), right, symmetry,
    )


# -- tilting complexes over the endomorphism algebra -------------------------

@dataclass(eq=False)
class TiltingComplex:
    """``T = T1 + T2`` over ``algebra``: ``T1`` a list of stalk projectives in
    degree 0, ``T2`` a complex in degrees -1, 0 (or ``None``)."""

    algebra: FDAlgebra
    t1: tuple
    t2: ProjComplex | None
    missing: tuple = ()

    @property
    def summands(self) -> list:
        out = list(self.t1)
        if self.t2 is not None and not self.t2.is_zero:
            out.append(self.t2)
        return out


def build_tilting_complex(L: EndAlgebra, approx: Approximation, entries=None) -> TiltingComplex:
    """``T1 = e_M L`` and ``T2 = [e_X L --f*--> sum_c e_{j_c} L]`` from an exchange.

    ``L`` must be ``End(M + X)`` with ``X`` last.  ``entries`` overrides the
    elements of ``L`` used for the components of ``f`` (for tests).
    """
    Lam = L.algebra
    r = len(L.summands)
    x = r - 1
    if L.summands[x] != approx.source or tuple(L.summands[:x]) != tuple(approx.summands):
        raise ContractViolation("approximation does not match the endomorphism algebra")
    t1 = tuple(stalk(Lam, j) for j in range(x))
    if not approx.components:
        return TiltingComplex(Lam, t1, None, (x,))
    if entries is None:
        entries = []
        for c in approx.components:
            rep = hom_k(approx.source, approx.summands[c.summand], c.degree).rep(c.index)
            entries.append(L.element(rep, x, c.summand))
    targets = tuple(c.summand for c in approx.components)
    D = tuple((e,) for e in entries)
    t2 = ProjComplex(Lam, {-1: (x,), 0: targets}, {-1: D})
    return TiltingComplex(Lam, t1, t2, (x,))


def generation_check(T: TiltingComplex) -> dict:
    """Recover the missing projective as a cone, then check all vertices are covered."""
    Lam = T.algebra
    covered = {i for S in T.t1 for ts in S.terms.values() for i in ts}
    out = {"recovered": True, "recovered_profile": None}
    if T.t2 is not None and not T.t2.is_zero:
        top = T.t2.term(0)
        W = stalk(Lam, top)
        comps = {0: tuple(
            tuple(Lam.idempotents[top[s]] if r == s else Lam.zero for s in range(len(top)))
            for r in range(len(top)))}
        u = ChainMap(W, T.t2, 0, comps).check()
        C, _, _ = cone_maps(u)
        Cmin, _ = minimize(C)
        want = stalk(Lam, T.t2.term(-1), -1)
        ok = Cmin.terms == want.terms
        out["recovered"] = ok
        out["recovered_profile"] = Cmin.profile()
        if ok:
            covered |= set(T.t2.term(-1))
    elif T.missing:
        out["recovered"] = not T.missing
    out["covered"] = sorted(covered)
    out["generates"] = out["recovered"] and covered == set(range(len(Lam.idempotents)))
    return out


def verify_tilting(T: TiltingComplex) -> dict:
    """Hom-vanishing in nonzero degrees for all summand pairs, plus generation."""
    S = T.summands
    failures = []
    for a, X in enumerate(S):
        for b, Y in enumerate(S):
            for i in _hom_window(X, Y):
                if i != 0 and hom_k(X, Y, i).dim:
                    failures.append({"source": a, "target": b, "degree": i,
                                     "dim": hom_k(X, Y, i).dim})
    gen = generation_check(T)
    return {
        "vanishing": not failures,
        "vanishing_failures": failures,
        "generation": gen,
        "tilting": not failures and gen["generates"],
    }


def endring_of_tilting(T: TiltingComplex) -> FDAlgebra:
    return EndAlgebra(T.summands, graded=False).algebra


def prop21_tilting(A: FDAlgebra, P: Sequence[int], Q: Sequence[int]) -> TiltingComplex:
    """``[P --f--> Q'] + Q`` for a left add(Q)-approximation ``f`` of the stalk ``P``."""
    P, Q = tuple(P), tuple(Q)
    if not Q:
        raise PreconditionError("Q must be nonzero")
    if symmetrizing_form(A) is None:
        raise PreconditionError("prop21_tilting needs a symmetric algebra")
    t1 = tuple(stalk(A, j) for j in Q)
    if not P:
        return TiltingComplex(A, t1, None, ())
    approx = left_approximation(stalk(A, P), list(t1), "reduced")
    C, _, _ = cone_maps(approx.map)
    return TiltingComplex(A, t1, C, P)


def tilting_fingerprints(ex: ExchangeResult) -> dict:
    T = build_tilting_complex(ex.lam, ex.approximation)
    verdict = verify_tilting(T)
    E = endring_of_tilting(T)
    fe, fg = fingerprint(E), fingerprint(ex.gamma.algebra)
    return {
        "verify": verdict,
        "endring": fe.as_dict(),
        "gamma": fg.as_dict(),
        "match": fe == fg,
        "complex": T,
    }
