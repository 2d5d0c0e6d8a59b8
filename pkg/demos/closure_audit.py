"""Closure-property audit of the coherent subclass, and how it breaks.

An equationally defined subclass of algebras must be closed under
2-products, subalgebras, quotient algebras and reflexive coequifiers.
The audit checks all four families over the bundled catalog.  Pinning
the subclass to the single non-coherent algebra instead produces a
subclass that is not equationally definable, and the audit says so
with concrete witnesses.

Run after installing the package:  python3 demos/closure_audit.py
"""
from birkhoff2d import audit_closure, enumerate_quotient_algebras
from birkhoff2d.corpus import (
    catalog,
    catalog_algebra,
    coherence_extension,
    plain_p,
    refl_data,
    sub_witnesses,
)


def main():
    E = coherence_extension()
    algebras = [a for (_, a) in catalog()]

    print("-- the honest audit --")
    report = audit_closure(E, algebras, sub_witnesses(), refl_data())
    for line in report.lines():
        print(line)

    print("\n-- a subclass that is not a variety --")
    report = audit_closure(E, algebras, members=[catalog_algebra("sigma_assoc")])
    for line in report.lines():
        print(line)

    print("\n-- quotient census --")
    for name in ("two_max", "xor_strict", "sigma_assoc", "z2_strict", "terminal_alg"):
        count = len(enumerate_quotient_algebras(catalog_algebra(name)))
        print("  %-13s %d quotient algebras" % (name, count))
    print("  %-13s %d quotient algebras" % ("plain_p", len(enumerate_quotient_algebras(plain_p()))))


if __name__ == "__main__":
    main()
