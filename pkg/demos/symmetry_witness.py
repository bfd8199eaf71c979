"""Why the graded endomorphism algebras are graded-symmetric but not symmetric.

Every symmetric functional kills a socle element over Q, while a
sign-twisted (graded-symmetric) form is nondegenerate.  Over F_2 the two
notions agree and an ordinary symmetrizing form exists.
"""
from symtilt import build_preset, symmetrizing_form
from symtilt.algebra import degeneracy_witness, graded_symmetrizing_form, symmetric_functionals
from symtilt.endalg import EndAlgebra
from symtilt.fields import Field


def main():
    inst = build_preset("example1", n=3, m=1)
    E = EndAlgebra(inst.summand_complexes(), graded=True)
    A = E.algebra
    v = degeneracy_witness(A, symmetric_functionals(A))
    print("symmetric functionals:", len(symmetric_functionals(A)))
    print("witness:", [A.labels[k] for k, c in enumerate(v) if c])
    print("symmetrizing form over Q:", symmetrizing_form(A))
    print("graded-symmetric form found:", graded_symmetrizing_form(A, E.grading) is not None)
    E2 = EndAlgebra(build_preset("example1", n=3, m=1, field=Field(2)).summand_complexes(), graded=True)
    print("symmetrizing form over F_2 found:", symmetrizing_form(E2.algebra) is not None)


if __name__ == "__main__":
    main()
