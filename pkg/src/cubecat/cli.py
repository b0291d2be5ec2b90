"""Command-line front end.

Subcommands: ``compute``, ``euler``, ``verify``, ``verify-relations`` and
``classify-signs``. JSON goes to stdout (or ``--output``); messages go to
stderr. Exit status is 0 on success, 1 on invalid input, 2 when a
certification fails.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .complex import CubeError, complex_for, solve_sign_assignment
from .corpus import bundled, bundled_corpus, load_directory, load_pd_file
from .diagram import LinkDiagram, PDError, parse_pd
from .equivalence import (compare_mod2, enumerate_sign_systems, verify_outer_face_invariance,
                          verify_sign_equivalence, verify_theorem1)
from .frobenius import builtin_system, check_relations
from .homology import (graded_euler_characteristic, homology_table, kauffman_bracket_oracle,
                       parse_coefficients)

__all__ = ["RunConfig", "main", "run", "build_parser"]

THEORIES = {"kh": "khovanov", "khovanov": "khovanov", "nested": "nested", "odd": "odd"}
EXIT_OK, EXIT_INPUT, EXIT_CERT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    theory: str = "kh"
    coeff: str = "Z"
    pd: Optional[str] = None
    file: Optional[str] = None
    knot: Optional[str] = None
    corpus: bool = False
    outer_face: Optional[int] = None
    orient: bool = False
    output: Optional[str] = None
    seed: int = 0
    jobs: int = 1
    theorem: Optional[str] = None
    trials: int = 100
    dump_cube: Optional[str] = None


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("CUBECAT_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubecat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p, required=True):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]'")
        g.add_argument("--file", help="a .pd file or a directory of .pd files")
        g.add_argument("--knot", help="name of a bundled diagram")
        g.add_argument("--corpus", action="store_true", help="every bundled diagram")
        p.add_argument("--orient", action="store_true",
                       help="orient components that never pass under anything")
        p.add_argument("--outer-face", type=int, default=None)
        p.add_argument("--jobs", type=int, default=_default_jobs())

    def common(p):
        p.add_argument("--output", help="write JSON here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("compute", help="bigraded homology")
    inputs(p)
    common(p)
    p.add_argument("--theory", choices=sorted(THEORIES), default="kh")
    p.add_argument("--coeff", default="Z", help="Z, Q or F_p (e.g. F2)")
    p.add_argument("--dump-cube", help="write the hypercube (ranks, kinds, psi, eps) as JSON")

    p = sub.add_parser("euler", help="graded Euler characteristic vs. the bracket oracle")
    inputs(p)
    common(p)
    p.add_argument("--theory", choices=sorted(THEORIES), default="kh")

    p = sub.add_parser("verify", help="certificates")
    inputs(p, required=False)
    common(p)
    p.add_argument("--theorem", required=True, choices=["1", "2", "mod2", "signs", "outerface"])
    p.add_argument("--theory", choices=sorted(THEORIES), default="nested",
                   help="theory for --theorem signs")
    p.add_argument("--trials", type=int, default=100, help="random pairs for --theorem signs")

    p = sub.add_parser("verify-relations", help="sign report of the relation audit")
    common(p)
    p.add_argument("--theory", choices=sorted(THEORIES), default="nested")

    p = sub.add_parser("classify-signs", help="the 1024 sign tuples and their classification")
    inputs(p, required=False)
    common(p)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        theory=getattr(ns, "theory", "kh"),
        coeff=getattr(ns, "coeff", "Z"),
        pd=getattr(ns, "pd", None),
        file=getattr(ns, "file", None),
        knot=getattr(ns, "knot", None),
        corpus=getattr(ns, "corpus", False),
        outer_face=getattr(ns, "outer_face", None),
        orient=getattr(ns, "orient", False),
        output=ns.output,
        seed=ns.seed,
        jobs=getattr(ns, "jobs", 1),
        theorem=getattr(ns, "theorem", None),
        trials=getattr(ns, "trials", 100),
        dump_cube=getattr(ns, "dump_cube", None),
    )


def _diagrams(cfg: RunConfig) -> list[tuple[str, LinkDiagram]]:
    if cfg.pd is not None:
        return [("pd", parse_pd(cfg.pd, orient=cfg.orient))]
    if cfg.file is not None:
        path = Path(cfg.file)
        if path.is_dir():
            found = load_directory(path, orient=cfg.orient)
            if not found:
                raise PDError(f"no .pd files in {path}")
            return found
        if not path.exists():
            raise PDError(f"no such file: {path}")
        return [(path.stem, load_pd_file(path, orient=cfg.orient))]
    if cfg.knot is not None:
        try:
            return [(cfg.knot, bundled(cfg.knot))]
        except KeyError as exc:
            raise PDError(str(exc)) from None
    if cfg.corpus:
        return bundled_corpus()
    return []


def _pmap(fn, items, jobs: int):
    """Map preserving input order, in a process pool when ``jobs > 1``."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# workers take a single tuple so they can be pickled for the pool


def _compute_one(args):
    (name, diagram), theory, coeff, outer = args
    pipe = complex_for(diagram, builtin_system(theory), outer_face=outer)
    table = homology_table(pipe.complex, coeff, diagram=diagram.serialize() if diagram.c else name)
    out = table.to_json()
    out["name"] = name
    return out


def _euler_one(args):
    (name, diagram), theory, outer = args
    pipe = complex_for(diagram, builtin_system(theory), outer_face=outer)
    chi = graded_euler_characteristic(pipe.complex)
    oracle = kauffman_bracket_oracle(diagram)
    return {"name": name, "theory": theory, "euler": chi.to_json(), "oracle": oracle.to_json(),
            "polynomial": str(chi), "ok": chi == oracle}


def _signs_one(args):
    (name, diagram), theory, trials, seed = args
    rng = random.Random(f"{seed}:{name}")
    pipe = complex_for(diagram, builtin_system(theory))
    certified = 0
    for _ in range(trials):
        e1 = solve_sign_assignment(pipe.psi, rng)
        e2 = solve_sign_assignment(pipe.psi, rng)
        _, ok = verify_sign_equivalence(pipe.cube, e1, e2)
        certified += ok
    return {"kind": "signs", "diagram": name, "theory": theory, "seed": seed,
            "trials": trials, "certified": certified, "ok": certified == trials}


def _verify_one(args):
    (name, diagram), theorem, outer = args
    if theorem == "1":
        return verify_theorem1(diagram, name, outer).to_json()
    if theorem == "mod2":
        return compare_mod2(diagram, name).to_json()
    if theorem == "outerface":
        return verify_outer_face_invariance(diagram, name).to_json()
    raise ValueError(theorem)


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns ``(exit_status, report)``."""
    theory = THEORIES.get(cfg.theory, cfg.theory)
    if cfg.command == "verify-relations":
        results = check_relations(builtin_system(theory))
        report = {"theory": theory, "relations": [
            {"name": r.name, "family": r.family, "sign": r.sign, "expected": r.expected,
             "ok": r.ok} for r in results]}
        report["ok"] = all(r.ok for r in results)
        return (EXIT_OK if report["ok"] else EXIT_CERT), report

    diagrams = _diagrams(cfg)
    if cfg.command == "compute":
        coeff = cfg.coeff
        parse_coefficients(coeff)
        if cfg.dump_cube:
            if len(diagrams) != 1:
                raise ValueError("--dump-cube needs a single diagram")
            pipe = complex_for(diagrams[0][1], builtin_system(theory), outer_face=cfg.outer_face)
            Path(cfg.dump_cube).write_text(
                json.dumps(pipe.cube.to_json(pipe.psi, pipe.eps), sort_keys=True, indent=1) + "\n")
        items = [(d, theory, coeff, cfg.outer_face) for d in diagrams]
        tables = _pmap(_compute_one, items, cfg.jobs)
        report = tables[0] if len(tables) == 1 else {"results": tables}
        return EXIT_OK, report

    if cfg.command == "euler":
        items = [(d, theory, cfg.outer_face) for d in diagrams]
        res = _pmap(_euler_one, items, cfg.jobs)
        ok = all(r["ok"] for r in res)
        return (EXIT_OK if ok else EXIT_CERT), {"results": res, "ok": ok}

    if cfg.command == "classify-signs":
        report = enumerate_sign_systems(diagrams, compare_homology=bool(diagrams))
        return (EXIT_OK if report["ok"] else EXIT_CERT), report

    if cfg.command == "verify":
        if cfg.theorem == "2":
            report = enumerate_sign_systems(diagrams or bundled_corpus())
            report["kind"] = "theorem2"
            return (EXIT_OK if report["ok"] else EXIT_CERT), report
        if not diagrams:
            diagrams = bundled_corpus()
        if cfg.theorem == "signs":
            items = [(d, theory, cfg.trials, cfg.seed) for d in diagrams]
            res = _pmap(_signs_one, items, cfg.jobs)
        else:
            items = [(d, cfg.theorem, cfg.outer_face) for d in diagrams]
            res = _pmap(_verify_one, items, cfg.jobs)
        ok = all(r["ok"] for r in res)
        return (EXIT_OK if ok else EXIT_CERT), {"theorem": cfg.theorem, "results": res, "ok": ok}

    raise ValueError(f"unknown command {cfg.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = _config(ns)
    try:
        status, report = run(cfg)
    except (PDError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CubeError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    if status == EXIT_CERT:
        print("certification failed; see the report", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
