"""Worked instances: truncated polynomial rings and the dihedral-type base ring,
the complexes built over them, named generator maps and relation suites.

Summand numbering is 0-based in code; the quiver vertex of summand ``p`` is
``p + 1``.  Generator names are ASCII: ``alpha beta gamma delta eps`` with a
trailing ``'`` for the primed maps.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .algebra import FDAlgebra
from .complexes import ChainMap, ProjComplex, shift, stalk, two_term
from .endalg import NamedMap, parse_relations
from .errors import StructuralError
from .fields import QQ, Field


def truncated_poly(n: int, field: Field = QQ) -> FDAlgebra:
    """``k[x]/(x^n)`` with basis ``1, x, ..., x^{n-1}``."""
    if n < 2:
        raise StructuralError("truncated_poly needs n >= 2")
    table = [[{i + j: 1} if i + j < n else {} for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, n)]
    return FDAlgebra(field, labels, table, [1] + [0] * (n - 1))


def dihedral_base(n: int, s: int, field: Field = QQ) -> FDAlgebra:
    """``k[x,y]/(x^n - y^s, xy)`` with basis ``1, x..x^{n-1}, y..y^{s-1}, x^n``."""
    if n < 2 or s < 2:
        raise StructuralError("dihedral_base needs n, s >= 2")
    # monomials as (letter, exponent); x^n doubles as y^s
    monos = [("", 0)] + [("x", k) for k in range(1, n)] + [("y", k) for k in range(1, s)] + [("x", n)]
    pos = {m: i for i, m in enumerate(monos)}
    pos[("y", s)] = pos[("x", n)]

    def prod(a, b):
        (la, ea), (lb, eb) = a, b
        if ea == 0:
            return b
        if eb == 0:
            return a
        if ("x", n) in (a, b):
            return None  # x^n lies in the socle
        if la != lb:
            return None
        e = ea + eb
        if (la == "x" and e > n) or (la == "y" and e > s):
            return None
        return (la, e)

    table = []
    for a in monos:
        row = []
        for b in monos:
            c = prod(a, b)
            row.append({} if c is None else {pos[c]: 1})
        table.append(row)
    labels = ["1"] + [_power_label("x", k) for k in range(1, n)] + [_power_label("y", k) for k in range(1, s)] + [_power_label("x", n)]
    return FDAlgebra(field, labels, table, [1] + [0] * (n + s - 1))


def _power_label(v: str, k: int) -> str:
    return v if k == 1 else f"{v}^{k}"


def monomial(A: FDAlgebra, label: str) -> tuple:
    """Basis element by label; ``"1"`` and ``"x^1"`` are accepted, ``y^s`` maps to ``x^n``."""
    if label in ("x^1", "y^1"):
        label = label[0]
    if label == "0":
        return A.zero
    if label in A.labels:
        return A.basis_element(A.labels.index(label))
    # y^s = x^n, and powers beyond the basis vanish
    if label.startswith(("x^", "y^")):
        v, e = label[0], int(label[2:])
        base = A.basis_element(A.labels.index(v))
        out = A.unit
        for _ in range(e):
            out = A.mul(out, base)
        return out
    raise StructuralError(f"no basis element {label!r}")


@dataclass
class PresetInstance:
    id: str
    params: dict
    algebra: FDAlgebra
    complexes: dict
    summands: list
    graded: bool
    generators: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)
    relation_texts: list = field(default_factory=list)

    def summand_complexes(self) -> list:
        return [self.complexes[name] for name in self.summands]

    @property
    def key(self) -> str:
        return preset_key(self.id, self.params)


def preset_key(pid: str, params: dict) -> str:
    return pid + "".join(f"_{k}{params[k]}" for k in sorted(params))


def _expected(pid: str, params: dict) -> dict:
    try:
        data = json.loads(resources.files("symtilt").joinpath("data/expected.json").read_text())
    except FileNotFoundError:
        return {}
    return data.get("instances", {}).get(preset_key(pid, params), {})


def _map(src: ProjComplex, tgt: ProjComplex, degree: int, comps: dict) -> ChainMap:
    return ChainMap(src, tgt, degree, {n: [[e]] for n, e in comps.items()}).check()


def example1(n: int, m: int, field: Field = QQ) -> PresetInstance:
    """``T(m) = A + [A --x^m--> A]`` over ``k[x]/(x^n)``, graded endomorphisms ``Lambda(m)``."""
    if n < 2 or not 1 <= m < n:
        raise StructuralError("example1 needs n >= 2 and 1 <= m < n")
    A = truncated_poly(n, field)
    x = monomial(A, "x")
    one = A.unit
    T1 = stalk(A)
    T2 = two_term(A, monomial(A, f"x^{m}"))
    gens = {
        "alpha": NamedMap(0, 0, _map(T1, T1, 0, {0: x})),
        "beta": NamedMap(0, 1, _map(T1, T2, 0, {0: one})),
        "gamma": NamedMap(1, 0, _map(T2, T1, 1, {-1: one})),
        "delta": NamedMap(1, 1, _map(T2, T2, 0, {-1: x, 0: x})),
        "eps": NamedMap(1, 1, _map(T2, T2, -1, {0: monomial(A, f"x^{n - m}")})),
    }
    texts = [
        f"beta alpha^{m} = gamma beta = delta^{m} = eps^2 = 0",
        "beta alpha = delta beta",
        "delta eps = eps delta",
        "gamma delta = alpha gamma",
        f"alpha^{n - m} = gamma eps beta",
        f"delta^{n - m} = beta gamma eps + eps beta gamma",
    ]
    if m == n - 1:
        texts.append(f"(beta gamma eps)^{n - 1} + (eps beta gamma)^{n - 1} = 0")
    params = {"n": n, "m": m}
    return PresetInstance(
        "example1", params, A, {"A": T1, "T2": T2}, ["A", "T2"], True,
        gens, parse_relations(texts), _expected("example1", params), texts,
    )


def example2(n: int, m: int, field: Field = QQ) -> PresetInstance:
    """``A + [A --x^m--> A] + A[1]``, ordinary endomorphisms ``Gamma(m)``."""
    if n < 2 or not 1 <= m < n:
        raise StructuralError("example2 needs n >= 2 and 1 <= m < n")
    A = truncated_poly(n, field)
    x = monomial(A, "x")
    one = A.unit
    xnm = monomial(A, f"x^{n - m}")
    T1 = stalk(A)
    T2 = two_term(A, monomial(A, f"x^{m}"))
    T3 = shift(T1, 1)
    gens = {
        "alpha": NamedMap(0, 0, _map(T1, T1, 0, {0: x})),
        "alpha'": NamedMap(2, 2, _map(T3, T3, 0, {-1: x})),
        "beta": NamedMap(0, 1, _map(T1, T2, 0, {0: one})),
        "beta'": NamedMap(2, 1, _map(T3, T2, 0, {-1: xnm})),
        "gamma": NamedMap(1, 2, _map(T2, T3, 0, {-1: one})),
        "gamma'": NamedMap(1, 0, _map(T2, T1, 0, {0: xnm})),
        "delta": NamedMap(1, 1, _map(T2, T2, 0, {-1: x, 0: x})),
    }
    texts = [
        f"beta alpha^{m} = beta' alpha'^{m} = alpha^{m} gamma' = alpha'^{m} gamma"
        f" = gamma beta = gamma' beta' = delta^{m} = 0",
        f"alpha^{n - m} = gamma' beta",
        f"alpha'^{n - m} = gamma beta'",
        f"delta^{n - m} = beta gamma' + beta' gamma",
        "beta alpha = delta beta",
        "beta' alpha' = delta beta'",
        "gamma delta = alpha' gamma",
        "gamma' delta = alpha gamma'",
    ]
    params = {"n": n, "m": m}
    return PresetInstance(
        "example2", params, A, {"A": T1, "T2": T2, "A[1]": T3}, ["A", "T2", "A[1]"], False,
        gens, parse_relations(texts), _expected("example2", params), texts,
    )


def example3(n: int, s: int, field: Field = QQ) -> PresetInstance:
    """``A + [A --x--> A]`` over ``k[x,y]/(x^n - y^s, xy)``, graded endomorphisms ``Lambda(n,s)``."""
    if n < 2 or s < 2:
        raise StructuralError("example3 needs n, s >= 2")
    A = dihedral_base(n, s, field)
    x, y, one = monomial(A, "x"), monomial(A, "y"), A.unit
    T1 = stalk(A)
    T2 = two_term(A, x)
    T2y = two_term(A, y)
    gens = {
        "alpha": NamedMap(0, 0, _map(T1, T1, 0, {0: x})),
        "beta": NamedMap(0, 1, _map(T1, T2, 0, {0: one})),
        "gamma": NamedMap(1, 0, _map(T2, T1, 1, {-1: one})),
        "eps": NamedMap(1, 1, _map(T2, T2, -1, {0: y})),
    }
    texts = [
        "alpha gamma = gamma beta = beta alpha = eps^2 = 0",
        f"alpha^{n} = (gamma eps beta)^{s}",
        f"(eps beta gamma)^{s} + (beta gamma eps)^{s} = 0",
    ]
    params = {"n": n, "s": s}
    return PresetInstance(
        "example3", params, A, {"A": T1, "T2": T2, "T2y": T2y}, ["A", "T2"], True,
        gens, parse_relations(texts), _expected("example3", params), texts,
    )


def dga_section7(n: int, s: int, field: Field = QQ) -> PresetInstance:
    """The complexes ``T^(x) = A + [A --x--> A]`` and ``T^(y)`` over the dihedral-type base."""
    inst = example3(n, s, field)
    inst.id = "dga_section7"
    inst.complexes = {
        "A": inst.complexes["A"],
        "T2x": inst.complexes["T2"],
        "T2y": inst.complexes["T2y"],
    }
    inst.summands = ["A", "T2x"]
    inst.expected = _expected("dga_section7", inst.params)
    return inst


PRESETS = {
    "example1": (example1, ("n", "m")),
    "example2": (example2, ("n", "m")),
    "example3": (example3, ("n", "s")),
    "dga_section7": (dga_section7, ("n", "s")),
}


def build_preset(pid: str, field: Field = QQ, **params) -> PresetInstance:
    if pid not in PRESETS:
        raise StructuralError(f"unknown preset {pid!r}; choose from {sorted(PRESETS)}")
    fn, names = PRESETS[pid]
    missing = [k for k in names if params.get(k) is None]
    if missing:
        raise StructuralError(f"preset {pid} needs parameters {missing}")
    return fn(*(int(params[k]) for k in names), field=field)
