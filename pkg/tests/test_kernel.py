"""Kernel data, coequifiers, reflexivization and convergence."""
import pytest

from birkhoff2d import corpus
from birkhoff2d.errors import BoundaryMismatch
from birkhoff2d.factor import factor_bof
from birkhoff2d.fincat import (
    Functor,
    NatTransformation,
    classify,
    compose_functors,
    identity_functor,
    identity_nat,
    whisker,
)
from birkhoff2d.kernel import (
    ReflexiveData,
    bof_kernel,
    coequifies,
    coequify,
    immediate_convergence_check,
    induced_between_quotients,
    lemma_cancel_two_cells,
    lemma_coeq_refl,
    lemma_immediate_convergence,
    lemma_so_faithful,
    make_reflexive,
    verify_coequifier_2d,
    verify_kernel_universal,
)


@pytest.fixture(scope="module")
def walking_pair():
    """The parallel pair u, v of P as a coequifier datum."""
    return corpus.coequifier_data()[0]


def _crush_to_one(cats):
    return Functor(cats["p"], cats["one"], {"a": "*", "b": "*"},
                   {"ida": "id", "idb": "id", "u": "id", "v": "id"}, name="crush")


# -- kernels -----------------------------------------------------------


def test_kernel_of_identity_is_diagonal(cats):
    for C in cats.values():
        kd = bof_kernel(identity_functor(C))
        assert len(kd.apex.objects) == len(C.morphisms)
        for o in kd.apex.objects:
            assert kd.phi.at(o) == kd.psi.at(o)


def test_kernel_of_collapse(cats):
    kd = bof_kernel(corpus.collapse_functor())
    assert len(kd.apex.objects) == 6
    assert len(kd.apex.morphisms) == 12
    assert "(u,v)" in kd.apex.objects
    assert kd.phi.at("(u,v)") == "u" and kd.psi.at("(u,v)") == "v"
    assert kd.s.obj("(u,v)") == "a" and kd.t.obj("(u,v)") == "b"


def test_functor_coequifies_its_own_kernel(all_functors):
    for f in all_functors[:30]:
        kd = bof_kernel(f)
        assert coequifies(f, kd.phi, kd.psi)


# -- coequifiers -------------------------------------------------------


def test_coequify_walking_pair(cats, walking_pair):
    phi, psi = walking_pair
    q, C = coequify(phi, psi)
    assert len(C.objects) == 2 and len(C.morphisms) == 3
    assert q.mor("u") == q.mor("v")
    assert classify(q).bo_full
    assert verify_coequifier_2d(q, phi, psi, [cats["one"], cats["two"], cats["p"]])


def test_coequify_of_equal_cells_is_isomorphism(walking_pair):
    phi, _ = walking_pair
    q, _ = coequify(phi, phi)
    flags = classify(q)
    assert flags.bo and flags.ff


def test_coequify_rejects_mismatched_cells(cats, walking_pair):
    phi, _ = walking_pair
    idp = identity_functor(cats["p"])
    other = identity_nat(idp)
    with pytest.raises(BoundaryMismatch):
        coequify(phi, other)


def test_overcollapsing_candidate_fails_verification(cats, walking_pair):
    phi, psi = walking_pair
    crush = _crush_to_one(cats)
    assert coequifies(crush, phi, psi)
    res = verify_coequifier_2d(crush, phi, psi, [cats["one"], cats["two"]])
    assert not res
    assert res.witness["level"] == 1
    assert res.witness["factorizations"] == 0


def test_kernel_quotient_equals_bof_left_leg(all_functors):
    for f in all_functors:
        kd = bof_kernel(f)
        q, C = coequify(kd.phi, kd.psi)
        fact = factor_bof(f)
        assert q == fact.left
        assert C == fact.middle


# -- universality ------------------------------------------------------


def test_kernel_universal_for_collapse(cats):
    f = corpus.collapse_functor()
    kd = bof_kernel(f)
    assert verify_kernel_universal(kd, f, [cats["one"], cats["two"]])


def test_undersized_datum_fails_universality(cats):
    """A degenerate datum on a single-object apex is coequified by the
    collapse functor but has no room for the candidate picking u and v
    apart, so terminality fails with zero mediators."""
    from birkhoff2d.kernel import KernelData

    f = corpus.collapse_functor()
    one, P = cats["one"], cats["p"]
    pick = Functor(one, P, {"*": "a"}, {"id": "ida"}, name="pick")
    trivial = identity_nat(pick)
    kd_small = KernelData(one, pick, pick, trivial, trivial)
    assert coequifies(f, kd_small.phi, kd_small.psi)
    res = verify_kernel_universal(kd_small, f, [one])
    assert not res
    assert res.witness["apex"] == "one"
    assert res.witness["mediators"] == 0


# -- reflexivization ---------------------------------------------------


def test_make_reflexive_laws(walking_pair):
    phi, psi = walking_pair
    rd = make_reflexive(phi, psi)
    A = rd.s.target
    assert compose_functors(rd.s, rd.section) == identity_functor(A)
    assert compose_functors(rd.t, rd.section) == identity_functor(A)
    unit = identity_nat(identity_functor(A))
    assert whisker(rd.section, rd.phi, "right") == unit
    assert whisker(rd.section, rd.psi, "right") == unit


def test_make_reflexive_preserves_the_coequifier(walking_pair):
    phi, psi = walking_pair
    rd = make_reflexive(phi, psi)
    q1, C1 = coequify(phi, psi)
    q2, C2 = coequify(rd.phi, rd.psi)
    assert q1 == q2 and C1 == C2


def test_reflexive_data_rejects_bad_section(walking_pair):
    phi, psi = walking_pair
    rd = make_reflexive(phi, psi)
    A = rd.s.target
    K = rd.s.source
    const = Functor(
        A, K,
        {a: "r:a" for a in A.objects},
        {m.name: "r:ida" for m in A.morphisms},
        name="const",
    )
    with pytest.raises(BoundaryMismatch):
        ReflexiveData(rd.s, rd.t, rd.phi, rd.psi, const)


# -- convergence -------------------------------------------------------


def test_identity_converges_immediately(cats):
    for C in cats.values():
        res = immediate_convergence_check(identity_functor(C))
        assert res.converges
        flags = classify(res.comparison)
        assert flags.bo and flags.ff


def test_collapse_converges_with_faithful_comparison():
    res = immediate_convergence_check(corpus.collapse_functor())
    assert res.converges
    assert classify(res.comparison).faithful
    assert classify(res.quotient).bo_full
    assert compose_functors(res.comparison, res.quotient) == corpus.collapse_functor()


# -- induced functors between quotients --------------------------------


def test_induced_functor_direction(walking_pair):
    phi, psi = walking_pair
    fine, _ = coequify(phi, phi)
    coarse, _ = coequify(phi, psi)
    assert induced_between_quotients(fine, coarse) is not None
    assert induced_between_quotients(coarse, fine) is None


# -- exhaustive suites, small slices -----------------------------------


def test_cancellation_suite_on_sample(cats, all_functors):
    sample = [f for f in all_functors if classify(f).bo_full][:3]
    res = lemma_cancel_two_cells(sample, [cats["two"], cats["p"]])
    assert res
    assert res.witness["pairs"] > 0


def test_surjective_whiskering_suite_on_sample(cats, all_functors):
    sample = [f for f in all_functors if classify(f).so][:3]
    res = lemma_so_faithful(sample, [cats["two"], cats["z2"]])
    assert res
    assert res.witness["cells"] >= 0


def test_reflexivization_suite_on_sample():
    res = lemma_coeq_refl(corpus.coequifier_data()[:6])
    assert res
    assert res.witness["data"] == 6


def test_convergence_suite_on_sample(all_functors):
    res = lemma_immediate_convergence(all_functors[:25])
    assert res
