"""Expected-value fixtures computed by brute-force enumeration over F_2.

Every number here comes from :func:`symtilt.homcalc.oracle_enumerate`,
i.e. from counting chain maps and null-homotopic maps, never from the
rank-based Hom computation.  Regenerate with ``python3 -m symtilt.fixtures``.
"""
from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

from .fields import Field
from .homcalc import oracle_enumerate, support_window
from .presets import build_preset, preset_key

F2 = Field(2)

INSTANCES = [
    ("example1", {"n": 2, "m": 1}),
    ("example1", {"n": 3, "m": 1}),
    ("example1", {"n": 3, "m": 2}),
    ("example1", {"n": 4, "m": 2}),
    ("example2", {"n": 3, "m": 1}),
    ("example2", {"n": 3, "m": 2}),
    ("example2", {"n": 4, "m": 2}),
    ("example3", {"n": 2, "s": 2}),
    ("example3", {"n": 2, "s": 3}),
    ("example3", {"n": 3, "s": 2}),
    ("dga_section7", {"n": 2, "s": 2}),
]


def oracle_graded_dims(X, Y) -> dict:
    w = support_window(X, Y)
    if w is None:
        return {}
    out = {}
    for i in range(w[0], w[1] + 1):
        d = oracle_enumerate(X, Y, i).dim
        if d:
            out[i] = d
    return out


def oracle_cartan(summands, graded: bool) -> list:
    """``C[q][p] = dim e_q E e_p`` = dims of maps ``S_p -> S_q`` (all shifts if graded)."""
    r = len(summands)
    C = [[0] * r for _ in range(r)]
    for p in range(r):
        for q in range(r):
            dims = oracle_graded_dims(summands[p], summands[q])
            C[q][p] = sum(dims.values()) if graded else dims.get(0, 0)
    return C


def instance_fixture(pid: str, params: dict) -> dict:
    params = {k: v for k, v in params.items() if v is not None}
    inst = build_preset(pid, field=F2, **params)
    S = inst.summand_complexes()
    C = oracle_cartan(S, inst.graded)
    pairs = {}
    for p, a in enumerate(inst.summands):
        for q, b in enumerate(inst.summands):
            pairs[f"{a}->{b}"] = {str(i): d for i, d in oracle_graded_dims(S[p], S[q]).items()}
    return {
        "provenance": "DERIVED: F_2 enumeration oracle",
        "graded": inst.graded,
        "summands": list(inst.summands),
        "cartan": C,
        "dim": sum(map(sum, C)),
        "graded_dims": pairs,
    }


def generate() -> dict:
    out = {}
    for pid, params in INSTANCES:
        clean = {k: v for k, v in params.items() if v is not None}
        out[preset_key(pid, clean)] = instance_fixture(pid, clean)
    return {"source": "symtilt.fixtures", "instances": out}


def stored() -> dict:
    return json.loads(resources.files("symtilt").joinpath("data/expected.json").read_text())


def write(path: str | None = None) -> Path:
    target = Path(path) if path else Path(__file__).parent / "data" / "expected.json"
    target.write_text(json.dumps(generate(), sort_keys=True, indent=2) + "\n")
    return target


if __name__ == "__main__":
    print(write(sys.argv[1] if len(sys.argv) > 1 else None))
