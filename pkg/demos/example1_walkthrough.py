"""Truncated polynomial ring k[x]/(x^3): exchange [A -x-> A] against A.

Builds the graded endomorphism algebra of A + [A -x-> A], checks its
relations, replaces the two-term complex by the cone of its left
approximation and compares the two sides.
"""
from symtilt import build_preset, exchange, verify_relations
from symtilt.algebra import cartan_matrix
from symtilt.endalg import EndAlgebra
from symtilt.linalg import integer_det
from symtilt.tilting import tilting_fingerprints


def main():
    inst = build_preset("example1", n=3, m=1)
    E = EndAlgebra(inst.summand_complexes(), graded=True)
    print(f"End(A + T2) has dimension {E.dim}, Cartan {cartan_matrix(E.algebra)}")
    for r in verify_relations(E, inst.generators, inst.relations):
        print(f"  {'ok ' if r.passed else 'BAD'} {r.label}")

    ex = exchange(inst.complexes["T2"], [inst.complexes["A"]])
    print("approximation components:", [(c.summand, c.degree) for c in ex.approximation.components])
    print("minimized cone terms:", ex.Y.profile())
    for name, alg in [("Lambda", ex.lam.algebra), ("Gamma", ex.gamma.algebra),
                      ("Lambda_0", ex.lam0), ("Gamma_0", ex.gamma0)]:
        C = cartan_matrix(alg)
        print(f"{name:9s} dim {alg.dim:3d}  Cartan {C}  det {integer_det(C)}")

    t = tilting_fingerprints(ex)
    print("tilting:", t["verify"]["tilting"], " End(T) matches Gamma:", t["match"])


if __name__ == "__main__":
    main()
