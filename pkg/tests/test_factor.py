"""Factorisation systems and enriched orthogonality."""
import pytest

from birkhoff2d import corpus
from birkhoff2d.factor import (
    FACTOR_SYSTEMS,
    check_orthogonal_morphisms,
    check_orthogonal_object,
    factor_bof,
    factor_bo_ff,
    factor_so_ioff,
    factorisation_sound,
)
from birkhoff2d.fincat import Functor, classify, identity_functor
from birkhoff2d.kernel import bof_kernel, coequify, induced_between_quotients


@pytest.mark.parametrize("system", sorted(FACTOR_SYSTEMS))
def test_factorisations_sound_on_corpus(all_functors, system):
    for f in all_functors:
        res = factorisation_sound(f, system)
        assert res, (f.name, res.witness)


def test_bof_left_is_identity_exactly_for_faithful(all_functors):
    for f in all_functors:
        fact = factor_bof(f)
        if classify(f).faithful:
            assert fact.left == identity_functor(f.source)
        else:
            assert fact.left != identity_functor(f.source)


def test_bof_of_collapse_merges_the_parallel_pair():
    fact = factor_bof(corpus.collapse_functor())
    assert len(fact.middle.objects) == 2
    assert len(fact.middle.morphisms) == 3
    assert fact.left.mor("u") == fact.left.mor("v")
    assert classify(fact.right).faithful


def test_bo_ff_through_pulled_back_homs(cats):
    incl = Functor(cats["d2"], cats["two"], {"x": "0", "y": "1"},
                   {"idx": "id0", "idy": "id1"}, name="incl")
    fact = factor_bo_ff(incl)
    assert len(fact.middle.objects) == 2
    assert len(fact.middle.morphisms) == 3
    assert classify(fact.left).bo
    right = classify(fact.right)
    assert right.ff and right.bo  # an isomorphism here: incl was already bo


def test_so_ioff_through_full_image(cats):
    pick = Functor(cats["one"], cats["d2"], {"*": "x"}, {"id": "idx"}, name="pick")
    fact = factor_so_ioff(pick)
    assert len(fact.middle.objects) == 1
    assert len(fact.middle.morphisms) == 1
    assert classify(fact.left).so
    assert classify(fact.right).ioff


def test_factorisations_agree_up_to_comparison_isomorphism(all_functors):
    """The quotient route through the kernel gives a second (bo full,
    faithful) splitting; the two middles are linked by an invertible
    comparison in every corpus case."""
    for f in all_functors:
        fact = factor_bof(f)
        kd = bof_kernel(f)
        q, _ = coequify(kd.phi, kd.psi)
        u = induced_between_quotients(fact.left, q)
        v = induced_between_quotients(q, fact.left)
        assert u is not None and v is not None
        uf, vf = classify(u), classify(v)
        assert uf.bo and uf.ff and vf.bo and vf.ff


# -- orthogonality -----------------------------------------------------


def test_identity_is_orthogonal_to_everything(cats, all_functors):
    e = identity_functor(cats["p"])
    for m in all_functors[:20]:
        assert check_orthogonal_morphisms(e, m)


def test_collapse_not_orthogonal_to_itself():
    e = factor_bof(corpus.collapse_functor()).left
    res = check_orthogonal_morphisms(e, e)
    assert not res
    assert res.witness


def test_projection_orthogonal_object_cases(cats):
    e = factor_bof(corpus.collapse_functor()).left
    assert check_orthogonal_object(e, cats["two"])
    res = check_orthogonal_object(e, cats["p"])
    assert not res
    assert res.witness["reason"] == "not surjective on functors"


def test_left_and_right_classes_are_orthogonal_sample(all_functors):
    """A small slice of the exhaustive sweep (the full product of classes
    runs in the acceptance suite)."""
    bo_full = [f for f in all_functors if classify(f).bo_full][:4]
    faithful = [f for f in all_functors if classify(f).faithful][:6]
    for e in bo_full:
        for m in faithful:
            res = check_orthogonal_morphisms(e, m)
            assert res, (e.name, m.name, res.witness)
