"""Walk the parallel-pair collapse through every 1-cell construction.

The functor under the microscope sends the walking parallel pair P
(two objects, two arrows u, v between them) onto the walking arrow by
identifying u with v.  It is the smallest non-trivial quotient of a
category and every construction in the package has something concrete
to say about it.

Run after installing the package:  python3 demos/collapse_walkthrough.py
"""
from birkhoff2d import (
    bof_kernel,
    check_orthogonal_morphisms,
    check_orthogonal_object,
    classify,
    coequify,
    factor_bo_ff,
    factor_bof,
    factor_so_ioff,
    immediate_convergence_check,
)
from birkhoff2d.corpus import category, collapse_functor
from birkhoff2d.kernel import make_reflexive


def flags_line(F):
    fl = classify(F)
    names = [n for n in ("bo_full", "ff", "ioff", "so", "faithful") if getattr(fl, n)]
    return ", ".join(names) or "(none)"


def main():
    f = collapse_functor()
    print("the collapse functor P -> 2:", f.on_morphisms)

    print("\n-- three factorisations --")
    for label, build in (("bof", factor_bof), ("bo", factor_bo_ff), ("so", factor_so_ioff)):
        fact = build(f)
        print("%s: middle has %d morphisms; left is %s; right is %s"
              % (label, len(fact.middle.morphisms),
                 flags_line(fact.left), flags_line(fact.right)))

    print("\n-- the kernel and its coequifier --")
    kd = bof_kernel(f)
    print("apex: %d objects (pairs of arrows with equal image), %d morphisms"
          % (len(kd.apex.objects), len(kd.apex.morphisms)))
    q, C = coequify(kd.phi, kd.psi)
    print("coequifier quotient has %d morphisms; projection is %s"
          % (len(C.morphisms), flags_line(q)))

    print("\n-- reflexivizing changes nothing --")
    rd = make_reflexive(kd.phi, kd.psi)
    q2, C2 = coequify(rd.phi, rd.psi)
    print("reflexivized coequifier has %d morphisms (same quotient: %s)"
          % (len(C2.morphisms), C == C2))

    print("\n-- one-step convergence --")
    res = immediate_convergence_check(f)
    print("comparison out of the quotient is faithful:", bool(res))

    print("\n-- orthogonality --")
    fact = factor_bof(f)
    print("left part against right part:",
          bool(check_orthogonal_morphisms(fact.left, fact.right)))
    print("left part against itself:",
          bool(check_orthogonal_morphisms(fact.left, fact.left)),
          "(no functor back into P splits the collapse)")
    print("collapse against the walking arrow as an object:",
          bool(check_orthogonal_object(f, category("two"))))
    print("collapse against P itself:",
          bool(check_orthogonal_object(f, category("p"))))


if __name__ == "__main__":
    main()
