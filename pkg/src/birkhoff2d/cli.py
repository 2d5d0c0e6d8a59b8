"""Batch front door: load JSON entities, dispatch one subcommand, report.

Exit codes: 0 all checks passed, 1 a property check failed, 2 bad usage
or invalid input.  Reports are plain text by default and machine
readable with --json; output is deterministic for identical inputs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import birkhoff, corpus
from .errors import LabError, UsageError, ValidationError
from .factor import FACTOR_SYSTEMS, check_orthogonal_morphisms, check_orthogonal_object
from .fincat import DEFAULT_SEARCH_LIMIT, classify
from .jsonio import (
    Workspace,
    algebra_to_json,
    category_to_json,
    dump,
    functor_to_json,
    nat_to_json,
    parse_refl_data,
    parse_sub_witnesses,
    presentation_to_json,
)
from .kernel import (
    bof_kernel,
    coequifies,
    coequify,
    immediate_convergence_check,
    lemma_cancel_two_cells,
    lemma_coeq_refl,
    lemma_immediate_convergence,
    lemma_so_faithful,
)
from .theory import Extension, Presentation, satisfies


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_plain(v) for v in x)
    return x


def _show(x) -> str:
    return json.dumps(_plain(x), sort_keys=True)


def _emit_json(report) -> None:
    print(json.dumps(_plain(report), indent=1, sort_keys=True))


def _resolve(ref: str, base: Path) -> Path:
    p = Path(ref)
    return p if p.is_absolute() else (base / p).resolve()


def _rel(path: Path, out_dir: Path) -> str:
    return os.path.relpath(path, out_dir)


def _write(out_dir: Path, name: str, data) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    dump(data, out_dir / name)
    print("wrote %s" % (out_dir / name))


# -- subcommands -------------------------------------------------------


def cmd_validate(args, ws: Workspace) -> int:
    loaders = [
        ("category", ws.category),
        ("functor", ws.functor),
        ("nat", ws.nat),
        ("presentation", ws.presentation),
        ("extension", ws.extension),
        ("algebra", ws.algebra),
    ]
    results = []
    for kind, loader in loaders:
        for ref in getattr(args, kind) or []:
            loader(ref)
            results.append({"path": ref, "kind": kind})
    if not results:
        raise UsageError("nothing to validate; pass at least one entity flag")
    if args.as_json:
        _emit_json({"validated": results})
    else:
        for r in results:
            print("ok: %s (%s)" % (r["path"], r["kind"]))
    return 0


def cmd_factor(args, ws: Workspace) -> int:
    f = ws.functor(args.functor)
    build, left_class, right_class = FACTOR_SYSTEMS[args.system]
    fact = build(f)
    left_flags = classify(fact.left)
    right_flags = classify(fact.right)
    sound = (
        fact.recompose() == f
        and getattr(left_flags, left_class)
        and getattr(right_flags, right_class)
    )
    report = {
        "system": args.system,
        "left_class": left_class,
        "right_class": right_class,
        "sound": sound,
        "middle": category_to_json(fact.middle),
        "left": {"on_objects": fact.left.on_objects, "on_morphisms": fact.left.on_morphisms},
        "right": {"on_objects": fact.right.on_objects, "on_morphisms": fact.right.on_morphisms},
    }
    if args.out:
        fpath = _resolve(args.functor, Path(".").resolve())
        raw = json.loads(fpath.read_text())
        src = _resolve(raw["source"], fpath.parent)
        tgt = _resolve(raw["target"], fpath.parent)
        out = Path(args.out)
        _write(out, "middle.json", category_to_json(fact.middle))
        _write(out, "left.json", functor_to_json(fact.left, _rel(src, out), "middle.json"))
        _write(out, "right.json", functor_to_json(fact.right, "middle.json", _rel(tgt, out)))
    if args.as_json:
        _emit_json(report)
    else:
        print("left: %s, right: %s" % (left_class, right_class))
        print("middle category: %d objects, %d morphisms"
              % (len(fact.middle.objects), len(fact.middle.morphisms)))
        print("sound: %s" % ("yes" if sound else "NO"))
    return 0 if sound else 1


def cmd_orthogonal(args, ws: Workspace) -> int:
    f = ws.functor(args.left)
    g = ws.functor(args.right)
    res = check_orthogonal_morphisms(f, g, limit=args.limit)
    if args.as_json:
        _emit_json({"orthogonal": res.ok, "witness": res.witness})
    elif res:
        print("orthogonal: yes")
    else:
        print("orthogonal: no  %s" % _show(res.witness))
    return 0 if res else 1


def cmd_orthogonal_object(args, ws: Workspace) -> int:
    f = ws.functor(args.morphism)
    C = ws.category(args.object)
    res = check_orthogonal_object(f, C, limit=args.limit)
    if args.as_json:
        _emit_json({"orthogonal": res.ok, "witness": res.witness})
    elif res:
        print("orthogonal: yes")
    else:
        print("orthogonal: no  %s" % _show(res.witness))
    return 0 if res else 1


def cmd_kernel(args, ws: Workspace) -> int:
    f = ws.functor(args.functor)
    kd = bof_kernel(f)
    report = {
        "apex_objects": len(kd.apex.objects),
        "apex_morphisms": len(kd.apex.morphisms),
        "coequified_by_input": coequifies(f, kd.phi, kd.psi),
    }
    if args.out:
        fpath = _resolve(args.functor, Path(".").resolve())
        raw = json.loads(fpath.read_text())
        src = _resolve(raw["source"], fpath.parent)
        out = Path(args.out)
        _write(out, "apex.json", category_to_json(kd.apex))
        _write(out, "s.json", functor_to_json(kd.s, "apex.json", _rel(src, out)))
        _write(out, "t.json", functor_to_json(kd.t, "apex.json", _rel(src, out)))
        _write(out, "phi.json", nat_to_json(kd.phi, "s.json", "t.json"))
        _write(out, "psi.json", nat_to_json(kd.psi, "s.json", "t.json"))
    if args.as_json:
        _emit_json(report)
    else:
        print("kernel apex: %d objects, %d morphisms"
              % (report["apex_objects"], report["apex_morphisms"]))
        print("input coequifies its kernel: %s"
              % ("yes" if report["coequified_by_input"] else "NO"))
    return 0


def cmd_coequify(args, ws: Workspace) -> int:
    phi = ws.nat(args.phi)
    psi = ws.nat(args.psi)
    q, C = coequify(phi, psi)
    flags = classify(q)
    merged = [
        sorted(cl)
        for cl in _merged_classes(q)
    ]
    report = {
        "quotient_objects": len(C.objects),
        "quotient_morphisms": len(C.morphisms),
        "merged_classes": merged,
        "projection_bo_full": flags.bo_full,
    }
    if args.out:
        ppath = _resolve(args.phi, Path(".").resolve())
        raw_phi = json.loads(ppath.read_text())
        spath = _resolve(raw_phi["from"], ppath.parent)
        raw_s = json.loads(spath.read_text())
        apath = _resolve(raw_s["target"], spath.parent)
        out = Path(args.out)
        _write(out, "quotient.json", category_to_json(C))
        _write(out, "projection.json", functor_to_json(q, _rel(apath, out), "quotient.json"))
    if args.as_json:
        _emit_json(report)
    else:
        print("quotient: %d objects, %d morphisms"
              % (report["quotient_objects"], report["quotient_morphisms"]))
        print("merged classes: %s" % (_show(merged) if merged else "none"))
        print("projection classifies b.o. full: %s"
              % ("yes" if flags.bo_full else "NO"))
    return 0


def _merged_classes(q):
    """Fibres of a quotient functor's morphism map with more than one member."""
    fibres = {}
    for m in q.source.morphisms:
        fibres.setdefault(q.mor(m.name), []).append(m.name)
    return sorted(v for v in fibres.values() if len(v) > 1)


def cmd_converges(args, ws: Workspace) -> int:
    f = ws.functor(args.functor)
    res = immediate_convergence_check(f)
    flags = classify(res.comparison)
    report = {
        "converges": res.converges,
        "comparison_faithful": flags.faithful,
        "quotient_bo_full": classify(res.quotient).bo_full,
    }
    if args.as_json:
        _emit_json(report)
    else:
        print("converges immediately: %s" % ("yes" if res.converges else "NO"))
        print("comparison functor faithful: %s" % ("yes" if flags.faithful else "NO"))
    return 0 if res else 1


def _satisfaction_target(ws: Workspace, ref: str):
    entity = ws.load(ref)
    if not isinstance(entity, (Extension, Presentation)):
        raise UsageError("%s is neither an extension nor a presentation" % ref)
    return entity


def cmd_satisfies(args, ws: Workspace) -> int:
    A = ws.algebra(args.algebra)
    E = _satisfaction_target(ws, args.extension)
    res = satisfies(A, E)
    if args.as_json:
        _emit_json({"satisfies": res.ok, "witness": res.witness})
    elif res:
        print("satisfies: yes")
    else:
        print("satisfies: no  %s" % _show(res.witness))
    return 0 if res else 1


def cmd_reflect(args, ws: Workspace) -> int:
    A = ws.algebra(args.algebra)
    E = ws.extension(args.extension)
    R = birkhoff.reflect(A, E)
    unit_flags = classify(R.unit.functor)
    merged = [sorted(cl) for cl in R.congruence.classes if len(cl) > 1]
    report = {
        "trivial": R.trivial,
        "merged_classes": merged,
        "unit_bo_full": unit_flags.bo_full,
        "reflected_satisfies": True,
    }
    if args.out:
        out = Path(args.out)
        _write(out, "presentation.json", presentation_to_json(A.presentation))
        _write(out, "source_carrier.json", category_to_json(A.carrier))
        _write(out, "reflected_carrier.json", category_to_json(R.reflected.carrier))
        _write(out, "source.json",
               algebra_to_json(A, "presentation.json", "source_carrier.json"))
        _write(out, "reflected.json",
               algebra_to_json(R.reflected, "presentation.json", "reflected_carrier.json"))
        _write(out, "unit.json",
               functor_to_json(R.unit.functor, "source_carrier.json",
                               "reflected_carrier.json"))
    if args.as_json:
        _emit_json(report)
    else:
        print("merged classes: %s" % (_show(merged) if merged else "none (already inside)"))
        print("unit classifies b.o. full: %s" % ("yes" if unit_flags.bo_full else "NO"))
        print("reflected algebra satisfies the extension: yes")
    return 0


def cmd_quotients(args, ws: Workspace) -> int:
    A = ws.algebra(args.algebra)
    quots = birkhoff.enumerate_quotient_algebras(A, limit=args.limit)
    entries = []
    for (cong, Q, _) in quots:
        merged = [sorted(cl) for cl in cong.classes if len(cl) > 1]
        entries.append({"merged_classes": merged,
                        "objects": len(Q.carrier.objects),
                        "morphisms": len(Q.carrier.morphisms)})
    if args.as_json:
        _emit_json({"count": len(entries), "quotients": entries})
    else:
        print("%d quotient algebras" % len(entries))
        for i, e in enumerate(entries):
            desc = _show(e["merged_classes"]) if e["merged_classes"] else "discrete"
            print("  %d: %s" % (i + 1, desc))
    return 0


def _load_catalog(ws: Workspace, directory: str):
    return ws.catalog(directory)


def cmd_audit(args, ws: Workspace) -> int:
    E = ws.extension(args.extension)
    catalog = _load_catalog(ws, args.catalog)
    algebras = [a for (_, a) in catalog]
    by_name = dict(catalog)
    subs = ()
    if args.subs:
        path = _resolve(args.subs, Path(".").resolve())
        subs = parse_sub_witnesses(json.loads(path.read_text()), ws, path.parent, by_name)
    refl = ()
    if args.refl:
        path = _resolve(args.refl, Path(".").resolve())
        refl = parse_refl_data(json.loads(path.read_text()), ws, path.parent, by_name)
    members = None
    if args.members:
        members = []
        for nm in args.members.split(","):
            nm = nm.strip()
            if nm not in by_name:
                raise UsageError("--members names unknown catalog entry %r" % nm)
            members.append(by_name[nm])
    report = birkhoff.audit_closure(
        E, algebras, sub_witnesses=subs, refl_data=refl, members=members,
        limit=args.limit,
    )
    if args.as_json:
        _emit_json(report.to_json())
    else:
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


def cmd_ortho_char(args, ws: Workspace) -> int:
    E = ws.extension(args.extension)
    catalog = _load_catalog(ws, args.catalog)
    res = birkhoff.verify_orthogonality_characterisation(
        E, [a for (_, a) in catalog], limit=args.limit
    )
    if args.as_json:
        _emit_json({"coincide": res.ok, "witness": res.witness})
    elif res:
        print("equational subclass == orthogonality class: yes  %s" % _show(res.witness))
    else:
        print("equational subclass == orthogonality class: NO  %s" % _show(res.witness))
    return 0 if res else 1


def cmd_lemmas(args, ws: Workspace) -> int:
    cats = corpus.categories()
    functors = corpus.corpus_functors(limit=args.limit)
    suites = [
        ("cancel-2-cells", lambda: lemma_cancel_two_cells(functors, cats, limit=args.limit)),
        ("so-faithful", lambda: lemma_so_faithful(functors, cats, limit=args.limit)),
        ("coeq-refl", lambda: lemma_coeq_refl(corpus.coequifier_data(limit=args.limit),
                                              limit=args.limit)),
        ("immediate-convergence", lambda: lemma_immediate_convergence(functors)),
    ]
    results = []
    code = 0
    for name, run_suite in suites:
        res = run_suite()
        results.append({"suite": name, "ok": res.ok, "witness": res.witness})
        if not res:
            code = 1
    if args.as_json:
        _emit_json({"suites": results, "ok": code == 0})
    else:
        for r in results:
            status = "pass" if r["ok"] else "FAIL"
            print("%s: %s %s" % (r["suite"], status, _show(r["witness"])))
    return code


# -- argument parsing and dispatch ------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit", type=int, default=DEFAULT_SEARCH_LIMIT,
                        help="bound on enumeration search spaces")
    common.add_argument("--json", dest="as_json", action="store_true",
                        help="machine-readable report")

    parser = argparse.ArgumentParser(
        prog="birkhoff2d",
        description="Factorisations, kernels, coequifiers, orthogonality, "
                    "reflections and closure audits on finite categories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="validate entity files")
    for kind in ("category", "functor", "nat", "presentation", "extension", "algebra"):
        p.add_argument("--" + kind, action="append", metavar="FILE")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("factor", parents=[common],
                       help="factor a functor in one of the three systems")
    p.add_argument("--system", choices=sorted(FACTOR_SYSTEMS), required=True)
    p.add_argument("--functor", required=True, metavar="FILE")
    p.add_argument("--out", metavar="DIR", help="write middle/left/right JSON files")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("orthogonal", parents=[common],
                       help="two-dimensional orthogonality of two functors")
    p.add_argument("--left", required=True, metavar="FILE")
    p.add_argument("--right", required=True, metavar="FILE")
    p.set_defaults(func=cmd_orthogonal)

    p = sub.add_parser("orthogonal-object", parents=[common],
                       help="orthogonality of a functor against a category")
    p.add_argument("--morphism", required=True, metavar="FILE")
    p.add_argument("--object", required=True, metavar="FILE")
    p.set_defaults(func=cmd_orthogonal_object)

    p = sub.add_parser("kernel", parents=[common],
                       help="kernel data of a functor")
    p.add_argument("--functor", required=True, metavar="FILE")
    p.add_argument("--out", metavar="DIR",
                   help="write apex/s/t/phi/psi JSON files")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("coequify", parents=[common],
                       help="coequifier of two parallel 2-cells")
    p.add_argument("--phi", required=True, metavar="FILE")
    p.add_argument("--psi", required=True, metavar="FILE")
    p.add_argument("--out", metavar="DIR",
                   help="write quotient/projection JSON files")
    p.set_defaults(func=cmd_coequify)

    p = sub.add_parser("converges", parents=[common],
                       help="one-step convergence of the kernel-quotient factorisation")
    p.add_argument("--functor", required=True, metavar="FILE")
    p.set_defaults(func=cmd_converges)

    p = sub.add_parser("satisfies", parents=[common],
                       help="does an algebra satisfy an extension or presentation")
    p.add_argument("--algebra", required=True, metavar="FILE")
    p.add_argument("--extension", required=True, metavar="FILE")
    p.set_defaults(func=cmd_satisfies)

    p = sub.add_parser("reflect", parents=[common],
                       help="reflect an algebra into an equational subclass")
    p.add_argument("--algebra", required=True, metavar="FILE")
    p.add_argument("--extension", required=True, metavar="FILE")
    p.add_argument("--out", metavar="DIR", help="write the reflection as JSON files")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("quotients", parents=[common],
                       help="enumerate all quotient algebras")
    p.add_argument("--algebra", required=True, metavar="FILE")
    p.set_defaults(func=cmd_quotients)

    p = sub.add_parser("audit", parents=[common],
                       help="four-family closure audit of a catalog subclass")
    p.add_argument("--extension", required=True, metavar="FILE")
    p.add_argument("--catalog", required=True, metavar="DIR")
    p.add_argument("--subs", metavar="FILE", help="subalgebra witness list")
    p.add_argument("--refl", metavar="FILE", help="reflexive 2-cell data list")
    p.add_argument("--members", metavar="NAMES",
                   help="comma-separated catalog names; pins the subclass and "
                        "switches membership to isomorphism")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("ortho-char", parents=[common],
                       help="equational subclass vs orthogonality class")
    p.add_argument("--extension", required=True, metavar="FILE")
    p.add_argument("--catalog", required=True, metavar="DIR")
    p.set_defaults(func=cmd_ortho_char)

    p = sub.add_parser("lemmas", parents=[common],
                       help="run the exhaustive lemma suites over the bundled corpus")
    p.set_defaults(func=cmd_lemmas)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ws = Workspace()
    try:
        return args.func(args, ws)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValidationError as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return 2
    except LabError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
