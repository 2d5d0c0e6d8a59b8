"""Theories, algebras, satisfaction and the algebra-level constructions."""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birkhoff2d import corpus
from birkhoff2d.errors import (
    NotClosedUnderOperations,
    NotOperationClosed,
    SignatureMismatch,
)
from birkhoff2d.fincat import (
    Congruence,
    Functor,
    classify,
    congruence_closure,
    identity_functor,
    vcompose,
)
from birkhoff2d.theory import (
    App,
    GenCell,
    IdCell,
    InvCell,
    Operation,
    Signature,
    SubstCell,
    VCompCell,
    Var,
    algebra_congruence_closure,
    algebra_two_cells,
    congruence_operation_witness,
    enumerate_algebra_homs,
    eval_term_mor,
    eval_term_obj,
    identity_algebra_hom,
    interpret_term,
    interpret_two_cell,
    is_algebra_hom,
    product_algebra,
    quotient_algebra,
    reflexive_coequifier_algebra,
    satisfies,
    subalgebra_check,
    subst_term,
    term_min_arity,
)


@pytest.fixture(scope="module")
def algebras(catalog):
    return catalog


@pytest.fixture(scope="module")
def xor(catalog):
    return catalog["xor_strict"]


@pytest.fixture(scope="module")
def sigma(catalog):
    return catalog["sigma_assoc"]


TENSOR = lambda l, r: App("tensor", (l, r))
UNIT = App("unit", ())


# -- signatures --------------------------------------------------------


def test_signature_rejects_unknown_operation():
    sig = Signature([Operation("unit", 0), Operation("tensor", 2)])
    with pytest.raises(SignatureMismatch):
        sig.check_term(App("mystery", ()), 0)


def test_signature_rejects_wrong_argument_count():
    sig = Signature([Operation("tensor", 2)])
    with pytest.raises(SignatureMismatch):
        sig.check_term(App("tensor", (Var(1),)), 1)


def test_signature_rejects_out_of_range_variable():
    sig = Signature([Operation("tensor", 2)])
    with pytest.raises(SignatureMismatch):
        sig.check_term(Var(3), 2)


def test_duplicate_operations_rejected():
    with pytest.raises(SignatureMismatch):
        Signature([Operation("tensor", 2), Operation("tensor", 2)])


# -- evaluation and the substitution property --------------------------


def test_tensor_tables_on_xor(xor):
    assert eval_term_obj(xor, TENSOR(Var(1), Var(2)), ("1", "1")) == "0"
    assert eval_term_obj(xor, UNIT, ()) == "0"
    assert eval_term_mor(xor, TENSOR(Var(1), Var(2)), ("s0", "id1")) == "s1"
    assert eval_term_mor(xor, TENSOR(Var(1), Var(2)), ("s0", "s1")) == "id1"


DEPTH3_TERMS = [
    (Var(1), 1),
    (TENSOR(Var(1), Var(2)), 2),
    (TENSOR(Var(2), Var(1)), 2),
    (TENSOR(TENSOR(Var(1), Var(2)), Var(3)), 3),
    (TENSOR(Var(1), TENSOR(Var(2), UNIT)), 2),
]


@pytest.mark.parametrize("name", ["xor_strict", "two_max"])
def test_substitution_commutes_with_evaluation(algebras, name):
    A = algebras[name]
    args2 = [TENSOR(Var(1), Var(2)), Var(2), UNIT]
    for (t, n) in DEPTH3_TERMS:
        args = args2[:n] if n <= len(args2) else None
        if args is None:
            continue
        composed = subst_term(t, args)
        m = max(term_min_arity(a) for a in args)
        for tup in A.obj_tuples(m):
            inner = tuple(eval_term_obj(A, a, tup) for a in args)
            assert eval_term_obj(A, composed, tup) == eval_term_obj(A, t, inner)
        for tup in A.mor_tuples(m):
            inner = tuple(eval_term_mor(A, a, tup) for a in args)
            assert eval_term_mor(A, composed, tup) == eval_term_mor(A, t, inner)


def _terms(depth):
    if depth == 0:
        return st.sampled_from([Var(1), Var(2), UNIT])
    sub = _terms(depth - 1)
    return st.one_of(sub, st.tuples(sub, sub).map(lambda p: TENSOR(*p)))


@settings(max_examples=60, deadline=None)
@given(t=_terms(2), args=st.tuples(_terms(1), _terms(1)))
def test_substitution_lemma_random_terms(t, args):
    A = corpus.catalog_algebra("xor_strict")
    composed = subst_term(t, list(args))
    for tup in A.obj_tuples(2):
        inner = tuple(eval_term_obj(A, a, tup) for a in args)
        assert eval_term_obj(A, composed, tup) == eval_term_obj(A, t, inner)
    for tup in A.mor_tuples(2):
        inner = tuple(eval_term_mor(A, a, tup) for a in args)
        assert eval_term_mor(A, composed, tup) == eval_term_mor(A, t, inner)


# -- interpretation ----------------------------------------------------


def test_interpret_variable_is_projection(xor):
    F = interpret_term(xor, Var(1), 1)
    for a in xor.carrier.objects:
        assert F.obj("(%s)" % a) == a


def test_interpret_tensor_matches_tables(xor):
    F = interpret_term(xor, TENSOR(Var(1), Var(2)), 2)
    for (a, b) in itertools.product(xor.carrier.objects, repeat=2):
        assert F.obj("(%s,%s)" % (a, b)) == xor.op_obj("tensor", (a, b))


def test_identity_cell_interprets_to_identity_nat(xor):
    t = TENSOR(Var(1), Var(2))
    nat = interpret_two_cell(xor, IdCell(t), 2)
    C = xor.carrier
    for o, comp in nat.components.items():
        assert C.is_identity(comp)


def test_vertical_composite_cell_matches_vcompose(sigma):
    g = GenCell("assoc")
    comp_expr = interpret_two_cell(sigma, VCompCell(InvCell("assoc"), g), 3)
    direct = vcompose(
        interpret_two_cell(sigma, InvCell("assoc"), 3),
        interpret_two_cell(sigma, g, 3),
    )
    assert comp_expr == direct


def test_inverse_cell_cancels_generator(sigma):
    both = VCompCell(InvCell("assoc"), GenCell("assoc"))
    nat = interpret_two_cell(sigma, both, 3)
    src = TENSOR(Var(1), TENSOR(Var(2), Var(3)))
    assert nat == interpret_two_cell(sigma, IdCell(src), 3)


def test_twisted_associator_components(sigma):
    nat = interpret_two_cell(sigma, GenCell("assoc"), 3)
    assert sorted(set(nat.components.values())) == ["s0", "s1"]


# -- satisfaction ------------------------------------------------------


def test_coherent_algebras_satisfy(algebras, coherence):
    for name in ("xor_strict", "two_max", "z2_strict", "terminal_alg"):
        assert satisfies(algebras[name], coherence)


def test_twisted_algebras_fail_with_witness(algebras, coherence):
    res = satisfies(algebras["sigma_assoc"], coherence)
    assert not res
    assert res.witness == {
        "kind": "two_cell",
        "equation": 0,
        "tuple": ("0", "0", "0", "0"),
        "lhs": "id0",
        "rhs": "s0",
    }
    assert not satisfies(algebras["z2_sigma"], coherence)


def test_satisfaction_of_bare_presentation():
    assert satisfies(corpus.plain_p(), corpus.bare_presentation())


def test_satisfies_rejects_foreign_signature(coherence):
    with pytest.raises(SignatureMismatch):
        satisfies(corpus.plain_p(), coherence)


# -- homomorphisms and 2-cells -----------------------------------------


def test_hom_counts(algebras):
    xor, two_max = algebras["xor_strict"], algebras["two_max"]
    sigma, term = algebras["sigma_assoc"], algebras["terminal_alg"]
    assert len(enumerate_algebra_homs(xor, xor)) == 4
    assert len(enumerate_algebra_homs(two_max, two_max)) == 2
    assert len(enumerate_algebra_homs(sigma, sigma)) == 2
    assert len(enumerate_algebra_homs(term, xor)) == 1
    assert len(enumerate_algebra_homs(xor, term)) == 1


def test_structure_breaking_functor_is_refused(xor):
    Z = xor.carrier
    swap = Functor(Z, Z, {"0": "1", "1": "0"},
                   {"id0": "id1", "id1": "id0", "s0": "s1", "s1": "s0"}, name="swap")
    res = is_algebra_hom(swap, xor, xor)
    assert not res
    assert res.witness == {"kind": "operation-objects", "op": "unit", "tuple": ()}


def test_algebra_two_cells_between_identity(xor):
    idh = identity_algebra_hom(xor)
    cells = algebra_two_cells(idh, idh)
    comps = sorted(tuple(sorted(w.components.items())) for w in cells)
    assert comps == [
        (("0", "id0"), ("1", "id1")),
        (("0", "id0"), ("1", "s1")),
    ]


# -- products ----------------------------------------------------------


def test_product_projections_and_satisfaction(algebras, coherence):
    xor, two_max, sigma = (algebras[k] for k in
                           ("xor_strict", "two_max", "sigma_assoc"))
    prod, pr1, pr2 = product_algebra(xor, two_max)
    assert pr1.source is prod and pr2.source is prod
    assert satisfies(prod, coherence)
    bad, _, _ = product_algebra(sigma, xor)
    assert not satisfies(bad, coherence)


def test_product_rejects_different_presentations(algebras):
    with pytest.raises(SignatureMismatch):
        product_algebra(algebras["xor_strict"], corpus.plain_p())


# -- subalgebras -------------------------------------------------------


def test_subalgebra_at_unit_object(xor, coherence, cats):
    m = Functor(cats["one"], xor.carrier, {"*": "0"}, {"id": "id0"}, name="at0")
    sub = subalgebra_check(m, xor)
    assert satisfies(sub, coherence)
    assert sub.op_obj("unit", ()) == "*"


def test_subalgebra_away_from_unit_is_rejected(xor, cats):
    m = Functor(cats["one"], xor.carrier, {"*": "1"}, {"id": "id1"}, name="at1")
    with pytest.raises(NotClosedUnderOperations) as exc:
        subalgebra_check(m, xor)
    assert exc.value.witness == ("unit", (), "0")


# -- congruences and quotients -----------------------------------------


def test_discrete_quotient_is_the_algebra(xor):
    disc = congruence_closure(xor.carrier, [])
    quot, h = quotient_algebra(xor, disc)
    assert quot == xor
    flags = classify(h.functor)
    assert flags.bo and flags.ff


def test_operation_closure_witness_and_rejection(xor):
    partial = Congruence(xor.carrier, [["id0", "s0"], ["id1"], ["s1"]])
    w = congruence_operation_witness(xor, partial)
    assert w == ("tensor", ("id0", "id1"), ("s0", "id1"), "id1", "s1")
    with pytest.raises(NotOperationClosed) as exc:
        quotient_algebra(xor, partial)
    assert exc.value.witness == w


def test_algebra_congruence_closure_collapses_both_fibres(xor, coherence):
    cc = algebra_congruence_closure(xor, [("id0", "s0")])
    assert cc.classes == (("id0", "s0"), ("id1", "s1"))
    assert congruence_operation_witness(xor, cc) is None
    quot, h = quotient_algebra(xor, cc)
    assert classify(h.functor).bo_full
    assert satisfies(quot, coherence)


def test_algebra_congruence_closure_is_a_fixpoint(xor):
    cc = algebra_congruence_closure(xor, [("id0", "s0")])
    pairs = [(cl[0], u) for cl in cc.classes for u in cl[1:]]
    assert algebra_congruence_closure(xor, pairs) == cc


# -- reflexive coequifiers ---------------------------------------------


def test_bundled_reflexive_data_quotients(coherence):
    sizes = {}
    for d in corpus.refl_data():
        quot, proj = reflexive_coequifier_algebra(
            d["u"], d["v"], d["phi"], d["psi"], d["section"])
        assert classify(proj.functor).bo_full
        assert satisfies(quot, coherence)
        sizes[d["name"]] = len(quot.carrier.morphisms)
    assert sizes == {
        "two_max-projection-vs-tensor": 3,
        "xor-character-collapse": 2,
    }


# -- satisfaction is preserved by the constructions --------------------


def test_satisfaction_closed_under_all_four_constructions(algebras, coherence, cats):
    good = [algebras[k] for k in ("xor_strict", "two_max", "z2_strict", "terminal_alg")]
    for A in good:
        for B in good:
            prod, _, _ = product_algebra(A, B)
            assert satisfies(prod, coherence), (A.name, B.name)
    for (m, member) in corpus.sub_witnesses():
        sub = subalgebra_check(m, member)
        assert satisfies(sub, coherence)
    xor = algebras["xor_strict"]
    for gens in ([], [("id0", "s0")]):
        quot, _ = quotient_algebra(xor, algebra_congruence_closure(xor, gens))
        assert satisfies(quot, coherence)
    for d in corpus.refl_data():
        quot, _ = reflexive_coequifier_algebra(
            d["u"], d["v"], d["phi"], d["psi"], d["section"])
        assert satisfies(quot, coherence)
