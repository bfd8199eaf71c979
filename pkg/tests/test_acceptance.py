"""The ten acceptance criteria, one test each, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are repeated in the terminal summary either way.
"""
import subprocess
import sys
from functools import lru_cache

import pytest

from symtilt import fixtures
from symtilt.algebra import cartan_matrix, fingerprint, symmetrizing_form, symmetry_report
from symtilt.complexes import direct_sum, two_term
from symtilt.dga import cohomology, degree_pattern, rhom_dga
from symtilt.endalg import EndAlgebra, spanning_check, verify_relations
from symtilt.fields import Field
from symtilt.homcalc import enumeration_size, hom_k, oracle_enumerate, support_window
from symtilt.linalg import integer_det
from symtilt.presets import build_preset, monomial, preset_key
from symtilt.tilting import endring_of_tilting, exchange, same_profile, tilting_fingerprints

F2 = Field(2)


@pytest.fixture(scope="module")
def oracle():
    """Fixtures regenerated by the enumeration oracle; must equal the stored ones."""
    fresh = fixtures.generate()
    assert fresh == fixtures.stored()
    return fresh["instances"]


@lru_cache(maxsize=None)
def preset(pid, **params):
    return build_preset(pid, **params)


@lru_cache(maxsize=None)
def end_of(pid, **params):
    inst = preset(pid, **params)
    return EndAlgebra(inst.summand_complexes(), graded=inst.graded)


@lru_cache(maxsize=None)
def exchange_of(pid, x="T2", **params):
    inst = preset(pid, **params)
    return exchange(inst.complexes[x], [inst.complexes["A"]])


@lru_cache(maxsize=None)
def tilt_of(pid, **params):
    return tilting_fingerprints(exchange_of(pid, **params))


def det(A):
    return integer_det(cartan_matrix(A))


def failed_relations(pid, **params):
    inst = preset(pid, **params)
    res = verify_relations(end_of(pid, **params), inst.generators, inst.relations)
    return [r.label for r in res if not r.passed], len(res)


def test_criterion_1_example1_relations(criterion):
    bad, total = [], 0
    for n, m in [(4, 2), (3, 1), (3, 2)]:
        fails, count = failed_relations("example1", n=n, m=m)
        total += count
        bad += [f"(n={n},m={m}) {f}" for f in fails]
        if not spanning_check(end_of("example1", n=n, m=m), preset("example1", n=n, m=m).generators):
            bad.append(f"(n={n},m={m}) generators do not span")
    ok = criterion(1, not bad, f"{total} example1 relations over Q, failures: {bad or 'none'}")
    assert ok


def test_criterion_2_example1_exchange(criterion, oracle):
    ex = exchange_of("example1", n=3, m=1)
    A = preset("example1", n=3, m=1).algebra
    shape = same_profile(ex.Y, two_term(A, monomial(A, "x^2")))
    lam, gam = cartan_matrix(ex.lam.algebra), cartan_matrix(ex.gamma.algebra)
    want_lam = oracle["example1_m1_n3"]["cartan"]
    want_gam = oracle["example1_m2_n3"]["cartan"]
    dl, dg = det(ex.lam.algebra), det(ex.gamma.algebra)
    ok = (shape is not None and lam == want_lam == [[3, 2], [2, 4]]
          and gam == want_gam == [[3, 4], [4, 8]] and dl == dg == 8)
    ok = criterion(2, ok, f"cone ~ [A -x^2-> A] shift {shape}; Cartan {lam} / {gam}; det {dl} = {dg}")
    assert ok


def test_criterion_3_example2(criterion, oracle):
    parts, ok = [], True
    dets = []
    for m, want in [(1, [[3, 1, 0], [1, 2, 1], [0, 1, 3]]), (2, [[3, 2, 0], [2, 4, 2], [0, 2, 3]])]:
        E = end_of("example2", n=3, m=m)
        C = cartan_matrix(E.algebra)
        fails, _ = failed_relations("example2", n=3, m=m)
        simples = len(E.algebra.idempotents)
        ok &= (C == want == oracle[preset_key("example2", {"n": 3, "m": m})]["cartan"]
               and simples == 3 and not fails)
        dets.append(det(E.algebra))
        parts.append(f"Gamma({m}) Cartan {C}, relation failures {fails or 'none'}")
    ok &= dets[0] == dets[1] == 12
    ok = criterion(3, ok, "; ".join(parts) + f"; det {dets[0]} = {dets[1]}")
    assert ok


def test_criterion_4_example3(criterion):
    ok, parts = True, []
    for n, s in [(2, 3), (3, 2)]:
        fails, count = failed_relations("example3", n=n, s=s)
        ex = exchange_of("example3", n=n, s=s)
        inst = preset("example3", n=n, s=s)
        y_side = EndAlgebra([inst.complexes["A"], inst.complexes["T2y"]], graded=True)
        swapped = end_of("example3", n=s, s=n)
        match = fingerprint(ex.gamma.algebra) == fingerprint(y_side.algebra)
        swap_match = fingerprint(y_side.algebra) == fingerprint(swapped.algebra)
        ok &= not fails and match and swap_match
        parts.append(f"(n={n},s={s}) {count - len(fails)}/{count} relations, "
                     f"gamma = y-instance: {match}, y-instance = swapped x-instance: {swap_match}")
    d1, d2 = det(end_of("example3", n=2, s=3).algebra), det(end_of("example3", n=3, s=2).algebra)
    ok &= d1 == d2
    ok = criterion(4, ok, "; ".join(parts) + f"; det {d1} = {d2}")
    assert ok


def test_criterion_5_tilting(criterion):
    ok, parts = True, []
    for pid, params in [("example1", {"n": 3, "m": 1}), ("example3", {"n": 2, "s": 2})]:
        t = tilt_of(pid, **params)
        good = t["verify"]["vanishing"] and t["verify"]["generation"]["generates"] and t["match"]
        ok &= good
        parts.append(f"{preset_key(pid, params)}: vanishing {t['verify']['vanishing']}, "
                     f"generates {t['verify']['generation']['generates']}, fingerprint match {t['match']}")
    ok = criterion(5, ok, "; ".join(parts))
    assert ok


def criterion_6_algebras():
    """Every end algebra produced in criteria 2-5, with its grading when graded."""
    out = []

    def add_exchange(tag, ex):
        out.append((f"{tag} Lambda", ex.lam.algebra, ex.lam.grading))
        out.append((f"{tag} Gamma", ex.gamma.algebra, ex.gamma.grading))
        out.append((f"{tag} Lambda_0", ex.lam0, None))
        out.append((f"{tag} Gamma_0", ex.gamma0, None))

    add_exchange("ex1(3,1)", exchange_of("example1", n=3, m=1))
    for m in (1, 2):
        out.append((f"ex2(3,{m})", end_of("example2", n=3, m=m).algebra, None))
    for n, s in [(2, 3), (3, 2)]:
        add_exchange(f"ex3({n},{s})", exchange_of("example3", n=n, s=s))
    for pid, params in [("example1", {"n": 3, "m": 1}), ("example3", {"n": 2, "s": 2})]:
        out.append((f"End(T) {preset_key(pid, params)}", endring_of_tilting(tilt_of(pid, **params)["complex"]), None))
    return out


def test_criterion_6_symmetry(criterion):
    missing, graded_ok = [], []
    algs = criterion_6_algebras()
    for name, A, grading in algs:
        if symmetrizing_form(A) is None:
            missing.append(name)
            if grading is not None:
                graded_ok.append(bool(symmetry_report(A, grading).get("graded_symmetric")))
    detail = (f"{len(algs) - len(missing)}/{len(algs)} algebras have a symmetrizing form; "
              f"none for {missing or '-'}")
    if missing:
        detail += (f"; a degeneracy witness refutes every symmetric form, "
                   f"while a graded-symmetric form exists for {sum(graded_ok)}/{len(graded_ok)} of the graded ones")
    ok = criterion(6, not missing, detail)
    assert ok


LOCAL_GRADED = [
    ("example1", {"n": n, "m": m}) for n in (2, 3, 4) for m in range(1, n)
] + [("example3", {"n": n, "s": s}) for n, s in [(2, 2), (2, 3), (3, 2)]] + [
    ("dga_section7", {"n": 2, "s": 2})]


def test_criterion_7_cartan_at_least_two(criterion):
    low = []
    for pid, params in LOCAL_GRADED:
        C = cartan_matrix(end_of(pid, **params).algebra)
        if min(min(r) for r in C) < 2:
            low.append(f"{preset_key(pid, params)} {C}")
    for pid, params in [("example1", {"n": 3, "m": 1}), ("example3", {"n": 2, "s": 3})]:
        C = cartan_matrix(exchange_of(pid, **params).gamma.algebra)
        if min(min(r) for r in C) < 2:
            low.append(f"exchanged {preset_key(pid, params)} {C}")
    ok = criterion(7, not low, f"{len(LOCAL_GRADED) + 2} graded end algebras, entries < 2: {low or 'none'}")
    assert ok


def dga_matches(summands):
    D = rhom_dga(summands)
    H = cohomology(D)
    C = direct_sum(*summands)
    lo, hi = support_window(C, C)
    return D, all(H.dims.get(i, 0) == hom_k(C, C, i).dim for i in range(lo - 1, hi + 2))


def test_criterion_8_dg_cross_validation(criterion):
    inst = preset("dga_section7", n=2, s=2)
    D, ok_x = dga_matches([inst.complexes["A"], inst.complexes["T2x"]])
    pattern = degree_pattern(D)
    bad = [] if ok_x else ["T^(x)"]
    count = 1
    for n in (2, 3, 4):
        for m in range(1, n):
            e = preset("example1", n=n, m=m)
            for label, summ in [("T2", [e.complexes["T2"]]), ("A+T2", e.summand_complexes())]:
                count += 1
                if not dga_matches(summ)[1]:
                    bad.append(f"(n={n},m={m}) {label}")
    ok = not bad and pattern == [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]
    ok = criterion(8, ok, f"{count} complexes, mismatches: {bad or 'none'}; degree pattern {pattern}")
    assert ok


def test_criterion_9_oracle_equivalence(criterion):
    checked, skipped, bad = 0, 0, []
    for pid, params in fixtures.INSTANCES:
        if params["n"] > 3:
            continue
        inst = build_preset(pid, field=F2, **params)
        for a, X in inst.complexes.items():
            for b, Y in inst.complexes.items():
                w = support_window(X, Y)
                if w is None:
                    continue
                for i in range(w[0] - 1, w[1] + 2):
                    if enumeration_size(X, Y, i) > 2 ** 24:
                        skipped += 1
                        continue
                    checked += 1
                    if hom_k(X, Y, i).dim != oracle_enumerate(X, Y, i).dim:
                        bad.append(f"{preset_key(pid, params)} {a}->{b}[{i}]")
    ok = criterion(9, not bad and checked > 0,
                   f"{checked} (pair, degree) cases over F_2 agree, {skipped} over the size limit, "
                   f"mismatches: {bad or 'none'}")
    assert ok


SUITE_RUNS = [
    ["example1", "--n", "3", "--m", "1"],
    ["example2", "--n", "3", "--m", "2"],
    ["example3", "--n", "2", "--s", "3"],
    ["dga_section7", "--n", "2", "--s", "2"],
]


def test_criterion_10_determinism(criterion):
    differ = []
    for args in SUITE_RUNS:
        cmd = [sys.executable, "-m", "symtilt", "suite", *args]
        first = subprocess.run(cmd, capture_output=True, check=False).stdout
        second = subprocess.run(cmd, capture_output=True, check=False).stdout
        if not first or first != second:
            differ.append(args[0])
    ok = criterion(10, not differ, f"{len(SUITE_RUNS)} presets, two suite runs each, differing: {differ or 'none'}")
    assert ok
