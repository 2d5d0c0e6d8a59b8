"""The flagship pair of monoidal-signature algebras and their reflection.

Both algebras live on the two-object category whose endomorphisms form
Z/2 at each object, with tensor acting as XOR on objects.  The strict
one interprets the associator as the identity; the other interprets it
as the nontrivial symmetry sigma everywhere.  Only the strict one
satisfies the pentagon and triangle equations; reflecting the other
into the coherent subclass collapses sigma to the identity.

Run after installing the package:  python3 demos/monoidal_reflection.py
"""
from birkhoff2d import check_algebra_orthogonal, classify, reflect, satisfies
from birkhoff2d.corpus import catalog, catalog_algebra, coherence_extension


def main():
    E = coherence_extension()
    xor = catalog_algebra("xor_strict")
    sigma = catalog_algebra("sigma_assoc")

    print("-- satisfaction --")
    print("strict algebra satisfies pentagon+triangle:", bool(satisfies(xor, E)))
    res = satisfies(sigma, E)
    print("sigma algebra satisfies:", bool(res))
    print("first failure:", res.witness)

    print("\n-- reflection --")
    R = reflect(sigma, E)
    print("merged endomorphism classes:",
          [sorted(c) for c in R.congruence.classes if len(c) > 1])
    print("unit classifies b.o. full:", classify(R.unit.functor).bo_full)
    print("reflected algebra satisfies:", bool(satisfies(R.reflected, E)))

    print("\n-- the unit is inverted by every coherent member --")
    for name, B in catalog():
        if not satisfies(B, E):
            continue
        ortho = check_algebra_orthogonal(R.unit, B)
        print("  %-13s orthogonal: %s %s" % (name, bool(ortho), ortho.witness))

    print("\n-- and detected by the non-coherent one --")
    bad = check_algebra_orthogonal(R.unit, sigma)
    print("  sigma_assoc   orthogonal: %s %s" % (bool(bad), bad.witness))


if __name__ == "__main__":
    main()
