"""The endomorphism dg algebra of A + [A -x-> A] over k[x,y]/(x^2 - y^2, xy).

Prints the 3x3 position degrees, the nonzero differential arrows and the
cohomology dimensions next to the homotopy-category Hom dimensions.
"""
from symtilt import build_preset, cohomology, degree_pattern, rhom_dga
from symtilt.complexes import direct_sum
from symtilt.dga import differential_arrows
from symtilt.homcalc import graded_dims


def main():
    inst = build_preset("dga_section7", n=2, s=2)
    for name in ("T2x", "T2y"):
        S = [inst.complexes["A"], inst.complexes[name]]
        D = rhom_dga(S)
        H = cohomology(D)
        T = direct_sum(*S)
        print(f"{name}: dg algebra of dimension {D.dim}")
        for row in degree_pattern(D):
            print("   ", " ".join(f"{d:2d}" for d in row))
        print("  differential arrows:", differential_arrows(D))
        print("  H^i dims:", {i: d for i, d in H.dims.items() if d}, " Hom_K dims:", graded_dims(T, T))


if __name__ == "__main__":
    main()
