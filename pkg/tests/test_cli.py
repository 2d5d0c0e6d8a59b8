"""Exercising the batch front door through run(argv)."""
import json
import subprocess
import sys

import pytest

from birkhoff2d import cli, corpus
from birkhoff2d.fincat import compose_functors
from birkhoff2d.jsonio import Workspace
from birkhoff2d.theory import satisfies

ROOT = corpus.corpus_root()
COLLAPSE = str(ROOT / "collapse.json")
COHERENCE = str(ROOT / "coherence.json")
CATALOG_DIR = str(ROOT / "monoidal")
SIGMA = str(ROOT / "monoidal" / "sigma_assoc.json")


def go(capsys, argv):
    code = cli.run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


# -- validate ----------------------------------------------------------


def test_validate_reports_each_entity(capsys):
    code, out, _ = go(capsys, [
        "validate",
        "--category", str(ROOT / "p.json"),
        "--functor", COLLAPSE,
        "--algebra", SIGMA,
    ])
    assert code == 0
    assert "ok: %s (category)" % (ROOT / "p.json") in out
    assert "(functor)" in out and "(algebra)" in out


def test_validate_with_no_flags_is_a_usage_error(capsys):
    code, _, err = go(capsys, ["validate"])
    assert code == 2
    assert "nothing to validate" in err


def test_validate_rejects_mislabelled_entity(capsys):
    code, _, err = go(capsys, ["validate", "--category", COLLAPSE])
    assert code == 2
    assert "wrong entity kind" in err


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = go(capsys, ["validate", "--category", str(tmp_path / "no.json")])
    assert code == 2
    assert err.startswith("error:")


# -- factor ------------------------------------------------------------


def test_factor_writes_a_recomposable_triple(capsys, tmp_path):
    out_dir = tmp_path / "fact"
    code, out, _ = go(capsys, [
        "factor", "--system", "bof", "--functor", COLLAPSE, "--out", str(out_dir),
    ])
    assert code == 0
    assert "sound: yes" in out
    assert sorted(p.name for p in out_dir.iterdir()) == [
        "left.json", "middle.json", "right.json",
    ]
    ws = Workspace()
    left = ws.functor(out_dir / "left.json")
    right = ws.functor(out_dir / "right.json")
    assert compose_functors(right, left) == ws.functor(COLLAPSE)


def test_factor_report_as_json(capsys):
    code, out, _ = go(capsys, [
        "factor", "--system", "so", "--functor", COLLAPSE, "--json",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["sound"] is True
    assert report["left_class"] == "so" and report["right_class"] == "ioff"


# -- orthogonality -----------------------------------------------------


def test_orthogonal_quotient_against_itself_fails(capsys):
    code, out, _ = go(capsys, ["orthogonal", "--left", COLLAPSE, "--right", COLLAPSE])
    assert code == 1
    assert out.startswith("orthogonal: no")
    assert '"fillins": 0' in out


def test_orthogonal_object_verdicts(capsys):
    code, out, _ = go(capsys, [
        "orthogonal-object", "--morphism", COLLAPSE, "--object", str(ROOT / "one.json"),
    ])
    assert (code, out) == (0, "orthogonal: yes\n")
    code, out, _ = go(capsys, [
        "orthogonal-object", "--morphism", COLLAPSE, "--object", str(ROOT / "p.json"),
    ])
    assert code == 1
    assert "not surjective on functors" in out


# -- kernel, coequifier, convergence -----------------------------------


def test_kernel_coequify_round_trip(capsys, tmp_path):
    kdir = tmp_path / "kernel"
    code, out, _ = go(capsys, ["kernel", "--functor", COLLAPSE, "--out", str(kdir)])
    assert code == 0
    assert "kernel apex: 6 objects, 12 morphisms" in out
    assert "input coequifies its kernel: yes" in out
    assert sorted(p.name for p in kdir.iterdir()) == [
        "apex.json", "phi.json", "psi.json", "s.json", "t.json",
    ]

    qdir = tmp_path / "quot"
    code, out, _ = go(capsys, [
        "coequify", "--phi", str(kdir / "phi.json"), "--psi", str(kdir / "psi.json"),
        "--out", str(qdir),
    ])
    assert code == 0
    assert "quotient: 2 objects, 3 morphisms" in out
    assert 'merged classes: [["u", "v"]]' in out
    assert "projection classifies b.o. full: yes" in out

    code, _, _ = go(capsys, [
        "validate",
        "--category", str(qdir / "quotient.json"),
        "--functor", str(qdir / "projection.json"),
        "--nat", str(kdir / "phi.json"),
    ])
    assert code == 0


def test_converges(capsys):
    code, out, _ = go(capsys, ["converges", "--functor", COLLAPSE])
    assert code == 0
    assert "converges immediately: yes" in out


# -- satisfaction and reflection ---------------------------------------


def test_satisfies_failure_prints_the_witness(capsys):
    code, out, _ = go(capsys, [
        "satisfies", "--algebra", SIGMA, "--extension", COHERENCE,
    ])
    assert code == 1
    assert out.startswith("satisfies: no")
    assert '"lhs": "id0"' in out and '"rhs": "s0"' in out


def test_satisfies_success(capsys):
    code, out, _ = go(capsys, [
        "satisfies", "--algebra", str(ROOT / "monoidal" / "xor_strict.json"),
        "--extension", COHERENCE,
    ])
    assert (code, out) == (0, "satisfies: yes\n")


def test_satisfies_accepts_a_bare_presentation_target(capsys):
    code, out, _ = go(capsys, [
        "satisfies", "--algebra", str(ROOT / "plain_p.json"),
        "--extension", str(ROOT / "bare.json"),
    ])
    assert (code, out) == (0, "satisfies: yes\n")


def test_reflect_writes_a_reloadable_bundle(capsys, tmp_path):
    rdir = tmp_path / "refl"
    code, out, _ = go(capsys, [
        "reflect", "--algebra", SIGMA, "--extension", COHERENCE, "--out", str(rdir),
    ])
    assert code == 0
    assert 'merged classes: [["id0", "s0"], ["id1", "s1"]]' in out
    assert "unit classifies b.o. full: yes" in out

    code, _, _ = go(capsys, [
        "validate",
        "--algebra", str(rdir / "reflected.json"),
        "--functor", str(rdir / "unit.json"),
    ])
    assert code == 0
    ws = Workspace()
    reloaded = ws.algebra(rdir / "reflected.json")
    assert satisfies(reloaded, ws.extension(COHERENCE))


# -- quotients ---------------------------------------------------------


def test_quotients_listing_is_frozen(capsys):
    code, out, _ = go(capsys, ["quotients", "--algebra", str(ROOT / "plain_p.json")])
    assert code == 0
    assert out == '2 quotient algebras\n  1: [["u", "v"]]\n  2: discrete\n'


# -- audit and characterisation ----------------------------------------

AUDIT_ARGS = [
    "audit", "--extension", COHERENCE, "--catalog", CATALOG_DIR,
    "--subs", str(ROOT / "subs.json"), "--refl", str(ROOT / "refl.json"),
]


def test_audit_passes_on_the_equational_subclass(capsys):
    code, out, _ = go(capsys, AUDIT_ARGS)
    assert code == 0
    assert out.splitlines()[-1] == "result: pass (21 checks)"


def test_audit_fails_on_a_pinned_subclass(capsys):
    code, out, _ = go(capsys, AUDIT_ARGS + ["--members", "sigma_assoc"])
    assert code == 1
    assert out.splitlines()[-1] == "result: FAIL (3 checks)"


def test_audit_rejects_unknown_member_names(capsys):
    code, _, err = go(capsys, AUDIT_ARGS + ["--members", "nonesuch"])
    assert code == 2
    assert "unknown catalog entry" in err


def test_json_reports_are_deterministic(capsys):
    code1, out1, _ = go(capsys, AUDIT_ARGS + ["--json"])
    code2, out2, _ = go(capsys, AUDIT_ARGS + ["--json"])
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["ok"] is True


def test_ortho_char(capsys):
    code, out, _ = go(capsys, [
        "ortho-char", "--extension", COHERENCE, "--catalog", CATALOG_DIR,
    ])
    assert code == 0
    assert "equational subclass == orthogonality class: yes" in out
    assert '"class_size": 4' in out


# -- lemma suites and module entry -------------------------------------


def test_lemma_suites_all_pass(capsys):
    code, out, _ = go(capsys, ["lemmas"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'cancel-2-cells: pass {"cells": 698, "pairs": 1335}'
    assert lines[1] == 'so-faithful: pass {"cells": 2652, "pairs": 5644}'
    assert lines[2] == 'coeq-refl: pass {"data": 115}'
    assert lines[3] == 'immediate-convergence: pass {"functors": 114}'


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "birkhoff2d", "validate", "--category",
         str(ROOT / "two.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "ok:" in proc.stdout
