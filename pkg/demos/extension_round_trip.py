"""Extend partial representations to the groupoid semialgebra.

The canonical partial representation lambda_p sends g to the sum of all
arrows (I, g); extending it along the idempotent formula gives back exactly
the identity map on the basis. The regular representation of a small group
extends too, and the factorization report certifies that the extension is a
unital homomorphism composing with lambda_p back to the original.
"""

from pargroupoid import (
    Gamma,
    GammaAlgebra,
    QNN,
    extend_to_gamma_hom,
    lambda_p,
    make_group,
    regular_representation,
    verify_factorization,
)


def main() -> None:
    G = make_group("cyclic:3")
    alg = GammaAlgebra(Gamma(G), QNN)
    lam = lambda_p(alg)
    print(f"lambda_p on {G.name}:")
    for g in G.elements():
        print(f"  {G.label(g)} -> {lam.image(g)!r}")

    ext = extend_to_gamma_hom(lam)
    same = all(ext.image_of(el) == alg.basis_element(el) for el in alg.basis)
    print(f"\nextension of lambda_p is the identity on all "
          f"{alg.size} basis arrows: {same}")

    reg = regular_representation(G, QNN)
    print(f"\nregular representation, image of {G.label(1)}:")
    print(f"  {reg.image(1)!r}")
    reg_ext = extend_to_gamma_hom(reg)
    report = verify_factorization(reg, reg_ext)
    for check in report.checks:
        note = f"  ({check.note})" if check.note else ""
        print(f"  {check.name}: {'pass' if check.passed else 'FAIL'}{note}")
    print(f"factorization: {'PASS' if report.passed else 'FAIL'}")

    # a global representation has epsilon(r) = 1 for every r, so the factor
    # 1 - epsilon(s) kills every arrow whose subset is proper; the extension
    # lives entirely on the full-subset component
    full = (1 << G.order) - 1
    zeros = sum(1 for el in alg.basis
                if el.mask != full and reg_ext.image_of(el).is_zero)
    print(f"\nimages vanishing off the full subset: {zeros} of {alg.size}")
    top = next(el for el in alg.basis if el.mask == full and el.g == 1)
    print(f"image of ({{e,a,a2}}, a) is the permutation matrix again:")
    print(f"  {reg_ext.image_of(top)!r}")


if __name__ == "__main__":
    main()
