"""Reflections, quotient enumeration, the closure audit and its converse."""
import pytest

from birkhoff2d import corpus
from birkhoff2d.birkhoff import (
    audit_closure,
    algebras_isomorphic,
    check_algebra_orthogonal,
    enumerate_quotient_algebras,
    reflect,
    verify_fully_faithful_inclusion,
    verify_orthogonality_characterisation,
    verify_reflection_free,
    verify_unit_terminal,
)
from birkhoff2d.birkhoff import _set_partitions
from birkhoff2d.errors import SizeLimitExceeded, ValidationError
from birkhoff2d.fincat import classify
from birkhoff2d.theory import product_algebra, satisfies

import oracles


@pytest.fixture(scope="module")
def sigma_reflection(catalog, coherence):
    return reflect(catalog["sigma_assoc"], coherence)


# -- reflection --------------------------------------------------------


def test_reflecting_a_member_changes_nothing(catalog, coherence):
    for name in ("xor_strict", "two_max", "z2_strict", "terminal_alg"):
        R = reflect(catalog[name], coherence)
        assert R.trivial
        flags = classify(R.unit.functor)
        assert flags.bo and flags.ff


def test_reflection_of_twisted_algebra(catalog, coherence, sigma_reflection):
    R = sigma_reflection
    assert not R.trivial
    assert R.congruence.classes == (("id0", "s0"), ("id1", "s1"))
    assert classify(R.unit.functor).bo_full
    assert satisfies(R.reflected, coherence)


def test_reflection_is_idempotent_up_to_isomorphism(catalog, coherence, sigma_reflection):
    R2 = reflect(sigma_reflection.reflected, coherence)
    assert R2.trivial
    assert algebras_isomorphic(R2.reflected, sigma_reflection.reflected) is not None


def test_reflection_requires_matching_presentation(coherence):
    with pytest.raises(ValidationError):
        reflect(corpus.plain_p(), coherence)


# -- orthogonality to the unit -----------------------------------------


def test_members_are_orthogonal_to_the_unit(catalog, sigma_reflection):
    homs = {}
    for name in ("xor_strict", "two_max", "z2_strict", "terminal_alg"):
        res = check_algebra_orthogonal(sigma_reflection.unit, catalog[name])
        assert res, (name, res.witness)
        homs[name] = res.witness["homs"]
    assert homs == {"xor_strict": 2, "two_max": 1, "z2_strict": 1, "terminal_alg": 1}


def test_twisted_algebra_is_not_orthogonal(catalog, sigma_reflection):
    res = check_algebra_orthogonal(sigma_reflection.unit, catalog["sigma_assoc"])
    assert not res
    assert res.witness == {"kind": "no factorisation", "hom": {"0": "0", "1": "0"}}


def test_freeness_over_member_probes(catalog, coherence, sigma_reflection):
    probes = [catalog[k] for k in ("xor_strict", "two_max", "z2_strict", "terminal_alg")]
    res = verify_reflection_free(sigma_reflection, coherence, probes)
    assert res
    assert res.witness == {"probes": 4}


def test_freeness_rejects_probes_outside_the_subclass(catalog, coherence, sigma_reflection):
    with pytest.raises(ValidationError):
        verify_reflection_free(sigma_reflection, coherence, [catalog["sigma_assoc"]])


# -- quotient enumeration ----------------------------------------------


def test_partition_generator_matches_recursive_oracle():
    for items in ([], ["a"], ["a", "b"], ["a", "b", "c"], ["w", "x", "y", "z"]):
        mine = [
            frozenset(frozenset(b) for b in part) for part in _set_partitions(items)
        ]
        ref = [
            frozenset(frozenset(b) for b in part) for part in oracles.set_partitions(items)
        ]
        assert len(mine) == len(set(mine)) == len(ref)
        assert set(mine) == set(ref)
    assert [len(list(_set_partitions(list("abcd"[:n])))) for n in range(5)] == [
        1, 1, 2, 5, 15,
    ]


def test_quotient_counts_match_bruteforce(catalog):
    algebras = dict(catalog)
    algebras["plain_p"] = corpus.plain_p()
    for name, expected in oracles.QUOTIENT_COUNTS.items():
        A = algebras[name]
        found = enumerate_quotient_algebras(A)
        assert len(found) == expected, name
        assert oracles.count_quotient_algebras(A) == expected, name


def test_quotient_enumeration_respects_limit(catalog):
    with pytest.raises(SizeLimitExceeded):
        enumerate_quotient_algebras(catalog["xor_strict"], limit=1)


# -- isomorphism -------------------------------------------------------


def test_isomorphism_detection(catalog):
    xor, sigma, two_max = (catalog[k] for k in
                           ("xor_strict", "sigma_assoc", "two_max"))
    assert algebras_isomorphic(xor, xor) is not None
    assert algebras_isomorphic(xor, sigma) is None
    assert algebras_isomorphic(xor, two_max) is None


def test_product_associativity_up_to_isomorphism(catalog):
    A, B, C = (catalog[k] for k in ("xor_strict", "two_max", "terminal_alg"))
    AB, _, _ = product_algebra(A, B)
    BC, _, _ = product_algebra(B, C)
    left, _, _ = product_algebra(AB, C)
    right, _, _ = product_algebra(A, BC)
    assert algebras_isomorphic(left, right) is not None


def test_product_with_terminal_is_identity_up_to_isomorphism(catalog):
    A = catalog["xor_strict"]
    P, _, _ = product_algebra(A, catalog["terminal_alg"])
    assert algebras_isomorphic(P, A) is not None


# -- the closure audit -------------------------------------------------


def test_audit_of_the_equational_subclass(catalog, coherence):
    report = audit_closure(
        coherence,
        list(catalog.values()),
        corpus.sub_witnesses(),
        corpus.refl_data(),
    )
    assert report.ok
    assert report.subclass == ("terminal_alg", "two_max", "xor_strict", "z2_strict")
    assert len(report.checks) == 21
    assert len(report.family("products")) == 10
    assert len(report.family("subalgebras")) == 3
    assert len(report.family("quotients")) == 6
    assert len(report.family("reflexive_coequifiers")) == 2
    assert report.to_json()["ok"] is True
    assert any("result: pass" in line for line in report.lines())


def test_audit_of_a_pinned_non_equational_subclass(catalog, coherence):
    report = audit_closure(
        coherence,
        list(catalog.values()),
        corpus.sub_witnesses(),
        corpus.refl_data(),
        members=[catalog["sigma_assoc"]],
    )
    assert not report.ok
    assert len(report.checks) == 3
    failed = [c for c in report.checks if not c["ok"]]
    assert {c["family"] for c in failed} == {"products", "quotients"}
    collapse = [c for c in failed if c["family"] == "quotients"]
    assert "id0" in collapse[0]["inputs"] and "s0" in collapse[0]["inputs"]


def test_audit_with_empty_extension_accepts_everything(catalog):
    from birkhoff2d.theory import Extension

    E0 = Extension(corpus.monoidal_presentation(), [], name="no-equations")
    report = audit_closure(
        E0, list(catalog.values()), corpus.sub_witnesses(), corpus.refl_data())
    assert report.ok
    assert len(report.subclass) == 6


# -- converse and terminality ------------------------------------------


def test_subclass_equals_orthogonality_class(catalog, coherence):
    res = verify_orthogonality_characterisation(coherence, list(catalog.values()))
    assert res
    assert res.witness == {"catalog": 6, "units": 6, "class_size": 4}


def test_unit_is_terminal_among_subclass_quotients(catalog, coherence):
    counts = {}
    for name in ("sigma_assoc", "xor_strict", "two_max"):
        res = verify_unit_terminal(catalog[name], coherence)
        assert res, (name, res.witness)
        counts[name] = res.witness["quotients_in_subclass"]
    assert counts == {"sigma_assoc": 1, "xor_strict": 2, "two_max": 1}


def test_inclusion_preserves_hom_categories(catalog, coherence):
    res = verify_fully_faithful_inclusion(
        coherence, catalog["xor_strict"], catalog["two_max"])
    assert res
    assert res.witness["homs"] >= 1
    with pytest.raises(ValidationError):
        verify_fully_faithful_inclusion(
            coherence, catalog["sigma_assoc"], catalog["xor_strict"])
