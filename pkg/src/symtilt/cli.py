"""Batch command-line front end.

Inputs come from a preset (``--preset ID --n --m --s``; ``suite`` also takes
the id positionally) or from a JSON bundle (``--in``).  Reports go to stdout
or ``--out`` as deterministic JSON or as indented text; ``-v`` lists the
checks on stderr.

Exit codes: 0 all checks passed, 1 a verification failed, 2 input error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import __version__
from .algebra import cartan_matrix, fingerprint, symmetry_report
from .complexes import ChainMap, direct_sum, two_term
from .dga import cohomology, dga_report, rhom_dga
from .endalg import EndAlgebra, quiver_data, spanning_check, verify_relations
from .errors import SymtiltError
from .fields import Field
from .homcalc import graded_dims, hom_k, support_window
from .linalg import integer_det
from .presets import PRESETS, build_preset, monomial
from .serialize import dumps, load_bundle, scalar_to_json
from .tilting import (
    build_tilting_complex, endring_of_tilting, exchange, left_approximation, same_profile,
    verify_left_approx, verify_tilting,
)

COMMANDS = ("validate", "hom", "endring", "approx", "exchange", "tilt", "dga", "suite")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    preset: str | None = None
    params: dict = field(default_factory=dict)
    input_path: str | None = None
    output_path: str | None = None
    fmt: str = "json"
    field: Field = field(default_factory=Field)
    source: str | None = None
    target: str | None = None
    targets: list | None = None
    degree_range: tuple | None = None
    mode: str = "reduced"
    graded: bool | None = None
    verbose: bool = False


@dataclass
class Context:
    algebra: object
    complexes: dict
    instance: object = None  # PresetInstance when loaded from a preset


# -- helpers -----------------------------------------------------------------

def _elem(a) -> list:
    return [scalar_to_json(c) for c in a]


def _map_json(f: ChainMap) -> dict:
    return {
        "degree": f.degree,
        "components": {str(n): [[_elem(a) for a in row] for row in M]
                       for n, M in sorted(f.components.items()) if any(any(a) for r in M for a in r)},
    }


def _algebra_summary(A, grading=None) -> dict:
    C = cartan_matrix(A)
    out = {"dim": A.dim, "cartan": C, "cartan_det": integer_det(C)}
    if A.field.characteristic == 0:
        out["fingerprint"] = fingerprint(A).as_dict()
        out["quiver"] = quiver_data(A)[1]
    out["symmetry"] = symmetry_report(A, grading)
    return out


def _load(cfg: RunConfig) -> Context:
    if (cfg.preset is None) == (cfg.input_path is None):
        raise InputError("give exactly one of --preset and --in")
    if cfg.preset is not None:
        inst = build_preset(cfg.preset, field=cfg.field, **cfg.params)
        return Context(inst.algebra, dict(inst.complexes), inst)
    A, comps = load_bundle(cfg.input_path)
    return Context(A, comps)


def _complex(ctx: Context, name: str | None, default: str | None = None):
    name = name or default
    if name is None:
        raise InputError("a complex name is required (--source/--target)")
    if name not in ctx.complexes:
        raise InputError(f"unknown complex {name!r}; available: {sorted(ctx.complexes)}")
    return ctx.complexes[name]


def _default_pair(ctx: Context):
    """``(X, M)`` names for approximation-type commands."""
    if ctx.instance is not None and "T2" in ctx.complexes:
        return "T2", ["A"]
    if ctx.instance is not None and ctx.instance.id == "dga_section7":
        return "T2x", ["A"]
    return None, None


def _summand_names(ctx: Context) -> list:
    if ctx.instance is not None:
        return list(ctx.instance.summands)
    return sorted(ctx.complexes)


def _check(checks: list, name: str, ok: bool) -> None:
    checks.append({"check": name, "passed": bool(ok)})


# -- commands ----------------------------------------------------------------

def cmd_validate(cfg, ctx):
    A = ctx.algebra
    checks = []
    A.validate()
    _check(checks, "algebra axioms", True)
    comps = {}
    for name, X in sorted(ctx.complexes.items()):
        X.validate()
        comps[name] = {"profile": {str(k): list(v) for k, v in X.profile().items()}}
        _check(checks, f"complex {name}: d^2 = 0 and corners", True)
    if ctx.instance is not None:
        for name, g in sorted(ctx.instance.generators.items()):
            _check(checks, f"generator {name} is a chain map", g.map.is_chain_map())
    report = {"algebra": {"dim": A.dim, "field": A.field.to_json(),
                          "idempotents": len(A.idempotents)},
              "complexes": comps}
    return report, checks


def cmd_hom(cfg, ctx):
    X = _complex(ctx, cfg.source, _summand_names(ctx)[0])
    Y = _complex(ctx, cfg.target, cfg.source or _summand_names(ctx)[0])
    w = support_window(X, Y)
    if cfg.degree_range is not None:
        lo, hi = cfg.degree_range
    elif w is not None:
        lo, hi = w
    else:
        lo, hi = 0, 0
    degrees = {}
    for i in range(lo, hi + 1):
        H = hom_k(X, Y, i)
        degrees[str(i)] = {"dim": H.dim, "basis": [_map_json(f) for f in H.basis]}
    return {"window": list(w) if w else None, "degrees": degrees}, []


def cmd_endring(cfg, ctx):
    names = cfg.targets or _summand_names(ctx)
    graded = cfg.graded
    if graded is None:
        graded = ctx.instance.graded if ctx.instance is not None else True
    E = EndAlgebra([_complex(ctx, n) for n in names], graded=graded)
    checks = []
    report = {"summands": names, "graded": graded,
              **_algebra_summary(E.algebra, E.grading if graded else None)}
    if graded:
        _check(checks, "degree-0 part is a subalgebra", E.degree0() is not None)
    if ctx.instance is not None and list(names) == list(ctx.instance.summands):
        res = verify_relations(E, ctx.instance.generators, ctx.instance.relations)
        report["relations"] = [r.as_dict() for r in res]
        for r in res:
            _check(checks, f"relation {r.label}", r.passed)
        _check(checks, "generators span", spanning_check(E, ctx.instance.generators))
    return report, checks


def _pair(cfg, ctx):
    dx, dm = _default_pair(ctx)
    X = _complex(ctx, cfg.source, dx)
    mnames = cfg.targets or dm
    if not mnames:
        raise InputError("--targets is required")
    return X, [_complex(ctx, n) for n in mnames], mnames


def cmd_approx(cfg, ctx):
    X, M, names = _pair(cfg, ctx)
    ap = left_approximation(X, M, cfg.mode)
    checks = []
    ok = verify_left_approx(ap.map, M)
    _check(checks, "left approximation", ok)
    report = {
        "mode": cfg.mode,
        "targets": names,
        "components": [{"summand": names[c.summand], "degree": c.degree, "index": c.index}
                       for c in ap.components],
        "target_profile": {str(k): list(v) for k, v in ap.target.profile().items()},
        "map": _map_json(ap.map),
        "zero": ap.is_zero,
    }
    return report, checks


def _exchange_checks(ex, checks):
    _check(checks, "left approximation", verify_left_approx(ex.f, ex.M))
    _check(checks, "right approximation", ex.right_approx)
    rep = ex.report()
    _check(checks, "graded Cartan determinants agree", rep["determinants_equal"]["graded"])
    _check(checks, "degree-0 Cartan determinants agree", rep["determinants_equal"]["degree0"])
    for k in ("lambda0", "gamma0"):
        _check(checks, f"{k} symmetric", rep["symmetry"][k]["symmetric"])
    for k in ("lambda", "gamma"):
        _check(checks, f"{k} graded-symmetric", rep["symmetry"][k]["graded_symmetric"])
    return rep


def cmd_exchange(cfg, ctx):
    X, M, _ = _pair(cfg, ctx)
    ex = exchange(X, M, cfg.mode)
    checks = []
    rep = _exchange_checks(ex, checks)
    rep["Y_profile"] = {str(k): list(v) for k, v in ex.Y.profile().items()}
    rep["Y_differential"] = {str(n): [[_elem(a) for a in row] for row in D]
                             for n, D in sorted(ex.Y.diff.items())}
    return rep, checks


def _tilt_report(ex, checks) -> dict:
    T = build_tilting_complex(ex.lam, ex.approximation)
    verdict = verify_tilting(T)
    _check(checks, "Hom vanishing in nonzero degrees", verdict["vanishing"])
    _check(checks, "generation by cone recovery", verdict["generation"]["generates"])
    fe, fg = fingerprint(endring_of_tilting(T)), fingerprint(ex.gamma.algebra)
    _check(checks, "End(T) fingerprint equals gamma fingerprint", fe == fg)
    gen = dict(verdict["generation"])
    if gen.get("recovered_profile") is not None:
        gen["recovered_profile"] = {str(k): list(v) for k, v in gen["recovered_profile"].items()}
    return {
        "T2_profile": {str(k): list(v) for k, v in T.t2.profile().items()} if T.t2 else None,
        "vanishing_failures": verdict["vanishing_failures"],
        "generation": gen,
        "endring_fingerprint": fe.as_dict(),
        "gamma_fingerprint": fg.as_dict(),
    }


def cmd_tilt(cfg, ctx):
    X, M, _ = _pair(cfg, ctx)
    ex = exchange(X, M, cfg.mode)
    checks = []
    return _tilt_report(ex, checks), checks


def _dga_check(summands, checks, label):
    D = rhom_dga(summands)
    H = cohomology(D)
    T = direct_sum(*summands)
    dims_h = {str(i): d for i, d in sorted(H.dims.items())}
    dims_k = {str(i): d for i, d in sorted(graded_dims(T, T).items())}
    _check(checks, f"{label}: H^i(RHom) = Hom_K(T, T[i])", dims_h == dims_k)
    rep = dga_report(D, H)
    rep["hom_dims"] = dims_k
    if D.base.field.characteristic == 0:
        same = fingerprint(H.degree0()) == fingerprint(EndAlgebra(summands, graded=False).algebra)
        _check(checks, f"{label}: H^0 fingerprint equals End_K", same)
    return rep


def cmd_dga(cfg, ctx):
    names = cfg.targets or ([cfg.source] if cfg.source else _summand_names(ctx))
    checks = []
    rep = _dga_check([_complex(ctx, n) for n in names], checks, "+".join(names))
    rep["summands"] = names
    return rep, checks


def cmd_suite(cfg, ctx):
    inst = ctx.instance
    if inst is None:
        raise InputError("suite runs on presets only")
    checks = []
    report = {"preset": inst.id, "params": inst.params, "field": cfg.field.to_json()}
    E = EndAlgebra(inst.summand_complexes(), graded=inst.graded)
    report["endring"] = {"summands": inst.summands, "graded": inst.graded,
                         **_algebra_summary(E.algebra, E.grading if inst.graded else None)}
    res = verify_relations(E, inst.generators, inst.relations)
    report["relations"] = [r.as_dict() for r in res]
    for r in res:
        _check(checks, f"relation {r.label}", r.passed)
    _check(checks, "generators span", spanning_check(E, inst.generators))
    if inst.expected:
        exp = inst.expected
        if "dim" in exp:
            _check(checks, "dimension matches fixture", E.dim == exp["dim"])
        if "cartan" in exp:
            _check(checks, "Cartan matrix matches fixture", cartan_matrix(E.algebra) == exp["cartan"])
    cart = cartan_matrix(E.algebra)
    if inst.graded:
        _check(checks, "graded Cartan entries >= 2", all(c >= 2 for row in cart for c in row))
    sym = report["endring"]["symmetry"]
    if inst.graded:
        _check(checks, "graded-symmetric form", sym["graded_symmetric"])
    else:
        _check(checks, "symmetric form", sym["symmetric"])
    if inst.id in ("example1", "example3", "dga_section7"):
        X, M = _default_pair(ctx)
        ex = exchange(ctx.complexes[X], [ctx.complexes[n] for n in M])
        report["exchange"] = _exchange_checks(ex, checks)
        if inst.id == "example1":
            n, m = inst.params["n"], inst.params["m"]
            target = two_term(inst.algebra, monomial(inst.algebra, f"x^{n - m}"))
            _check(checks, "cone has the profile of [A --x^(n-m)--> A]",
                   same_profile(ex.Y, target) is not None)
        else:
            _check(checks, "cone has the profile of [A --y--> A]",
                   same_profile(ex.Y, ctx.complexes["T2y"]) is not None)
        report["tilting"] = _tilt_report(ex, checks)
    report["dga"] = _dga_check(inst.summand_complexes(), checks, "summands")
    return report, checks


HANDLERS = {
    "validate": cmd_validate, "hom": cmd_hom, "endring": cmd_endring, "approx": cmd_approx,
    "exchange": cmd_exchange, "tilt": cmd_tilt, "dga": cmd_dga, "suite": cmd_suite,
}


# -- output ------------------------------------------------------------------

def _text(obj, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, dict) and (not isinstance(x, list) or _flat(x)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def run(cfg: RunConfig):
    """``(exit_code, report_dict)``."""
    try:
        ctx = _load(cfg)
        report, checks = HANDLERS[cfg.command](cfg, ctx)
    except (InputError, SymtiltError) as exc:
        kind = type(exc).__name__
        return 2, {"command": cfg.command, "error": f"{kind}: {exc}"}
    ok = all(c["passed"] for c in checks)
    out = {"command": cfg.command, "ok": ok, "checks": checks, "report": report}
    return (0 if ok else 1), out


def _range(text: str):
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a:b with integers a <= b") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symtilt", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"symtilt {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name == "suite":
            s.add_argument("preset_id", nargs="?", choices=sorted(PRESETS))
        s.add_argument("--preset", choices=sorted(PRESETS))
        s.add_argument("--n", type=int)
        s.add_argument("--m", type=int)
        s.add_argument("--s", type=int)
        s.add_argument("--field", default="Q", help="Q or Fp:<p>")
        s.add_argument("--in", dest="input_path")
        s.add_argument("--out", dest="output_path")
        s.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
        s.add_argument("--degree-range", type=_range)
        s.add_argument("--source", help="complex name (X, or the Hom source)")
        s.add_argument("--target", help="Hom target complex name")
        s.add_argument("--targets", nargs="+", help="summand names (M, or the End summands)")
        s.add_argument("--mode", choices=("raw", "reduced"), default="reduced")
        g = s.add_mutually_exclusive_group()
        g.add_argument("--graded", dest="graded", action="store_true", default=None)
        g.add_argument("--ungraded", dest="graded", action="store_false")
        s.add_argument("-v", "--verbose", action="store_true", help="list checks on stderr")
    return p


def config_from_args(ns) -> RunConfig:
    preset = getattr(ns, "preset_id", None) or ns.preset
    if getattr(ns, "preset_id", None) and ns.preset and ns.preset != ns.preset_id:
        raise InputError("conflicting preset ids")
    params = {}
    if preset is not None:
        names = PRESETS[preset][1]
        params = {k: getattr(ns, k) for k in names}
    return RunConfig(
        command=ns.command, preset=preset, params=params, input_path=ns.input_path,
        output_path=ns.output_path, fmt=ns.fmt, field=Field.parse(ns.field),
        source=ns.source, target=ns.target, targets=ns.targets,
        degree_range=ns.degree_range, mode=ns.mode, graded=ns.graded, verbose=ns.verbose,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = config_from_args(ns)
    except (InputError, SymtiltError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code, out = run(cfg)
    text = dumps(out) if cfg.fmt == "json" else "\n".join(_text(out)) + "\n"
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == 2:
        print(out["error"], file=sys.stderr)
    elif cfg.verbose:
        for c in out["checks"]:
            print(f"{'PASS' if c['passed'] else 'FAIL'} {c['check']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
