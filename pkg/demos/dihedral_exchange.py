"""Base k[x,y]/(x^n - y^s, xy): exchanging [A -x-> A] yields the y-complex.

The cone of the approximation of [A -x-> A] by A has the shape of
[A -y-> A], and the end algebra of the swapped parameters agrees.
"""
from symtilt import build_preset, exchange, fingerprint
from symtilt.algebra import cartan_matrix
from symtilt.endalg import EndAlgebra
from symtilt.tilting import same_profile


def main():
    for n, s in [(2, 3), (3, 2)]:
        inst = build_preset("example3", n=n, s=s)
        ex = exchange(inst.complexes["T2"], [inst.complexes["A"]])
        y_side = EndAlgebra([inst.complexes["A"], inst.complexes["T2y"]], graded=True)
        swapped = EndAlgebra(build_preset("example3", n=s, s=n).summand_complexes(), graded=True)
        print(f"(n, s) = ({n}, {s})")
        print("  cone looks like [A -y-> A] up to shift:", same_profile(ex.Y, inst.complexes["T2y"]))
        print("  Cartan before / after:", cartan_matrix(ex.lam.algebra), cartan_matrix(ex.gamma.algebra))
        print("  Gamma = End(A + [A -y-> A]):", fingerprint(ex.gamma.algebra) == fingerprint(y_side.algebra))
        print("  ... = End for swapped (s, n):", fingerprint(y_side.algebra) == fingerprint(swapped.algebra))


if __name__ == "__main__":
    main()
