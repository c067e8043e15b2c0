"""Command line interface.

Exit codes form a stable contract: 0 for success/pass verdicts, 1 for
mathematical failures (a failing certificate, a DISTINCT or inconclusive
verdict, an unsatisfiable construction), 2 for input errors.  Reports are
byte-identical across runs; `--threads` is accepted for compatibility and
never changes output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .axioms import certify
from .errors import (
    InputError,
    InvalidTransport,
    LambdaForgeError,
    LevelTooLow,
    MalformedStructure,
    ParseError,
    ShapeError,
    Unsatisfiable,
)
from .genus import (
    KModelStructure,
    combined_profile,
    construct_structure,
    find_intertwiner,
)
from .graded import graded_tower_verdict
from .lifting import tower_surjectivity
from .newton import adams_from_lambda, lambda_from_adams
from .parsing import format_series
from .structfile import dump_k_model, load_structure_file
from .towers import lim1_orbits, surjectivity_verdict

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class _Report:
    def __init__(self, machine: bool):
        self.machine = machine
        self.lines = []

    def say(self, text: str):
        self.lines.append(text)

    def emit(self, verdict: str, detail: dict):
        if self.machine:
            print(verdict)
            print(json.dumps(detail, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _parse_levels(text: str):
    for sep in ("..", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            levels = range(int(lo), int(hi) + 1)
            if not levels:
                raise InputError(f"empty level range {text!r}")
            return levels
    raise InputError(f"levels must look like A..B, got {text!r}")


def _parse_primes(text: str):
    return tuple(int(p) for p in text.replace(" ", "").split(",") if p)


def _parse_signs(text: str):
    signs = {}
    if not text:
        return signs
    for chunk in text.replace(" ", "").split(","):
        if "=" not in chunk:
            raise InputError(f"each sign must look like p=+1 or p=-1, got {chunk!r}")
        p, s = chunk.split("=", 1)
        value = int(s)
        if value not in (1, -1):
            raise InputError(f"sign for {p} must be +1 or -1")
        signs[int(p)] = value
    return signs


def cmd_certify(args) -> int:
    report = _Report(args.format == "machine")
    loaded = load_structure_file(args.file)
    if loaded.adams is None:
        raise InputError("certify needs psi tables in the structure file")
    cert = certify(loaded.adams, prime_bound=args.primes_bound, exponent_bound=args.kmax)
    report.say(cert.summary())
    report.emit(
        "CERTIFIED" if cert.passed else "REFUSED",
        {
            "passed": cert.passed,
            "prime_bound": cert.prime_bound,
            "exponent_bound": cert.exponent_bound,
            "failures": [r.name for r in cert.failures()],
        },
    )
    return EXIT_PASS if cert.passed else EXIT_FAIL


def cmd_invariants(args) -> int:
    report = _Report(args.format == "machine")
    loaded = load_structure_file(args.file)
    profile = combined_profile(loaded.ko_model, loaded.k_model)
    report.say(profile.text())
    report.emit(
        "PROFILE",
        {"a": profile.a_class, "signs": {str(p): s for p, s in profile.signs}},
    )
    return EXIT_PASS


def _require_k_model(loaded, path) -> KModelStructure:
    if loaded.k_model is None:
        raise InputError(f"{path} does not declare a K-model ([model] primes = [...])")
    return loaded.k_model


def cmd_distinguish(args) -> int:
    report = _Report(args.format == "machine")
    a = _require_k_model(load_structure_file(args.file_a), args.file_a)
    b = _require_k_model(load_structure_file(args.file_b), args.file_b)
    result = find_intertwiner(
        a, b, degree_bound=args.degree, oriented=not args.unoriented
    )
    if result.kind == "isomorphic":
        witness = result.witness_map(a.presentation)
        report.say(f"ISOMORPHIC (witness: v -> {format_series(witness.images[0])})")
        report.emit("ISOMORPHIC", {"witness": {str(k): v for k, v in result.witness.items()}})
        return EXIT_PASS
    if result.kind == "distinct":
        first = result.refutations[0]
        report.say(f"DISTINCT (refuted at degree {first.degree}, prime {first.prime})")
        report.emit(
            "DISTINCT",
            {
                "refutations": [
                    {"eps": r.eps, "degree": r.degree, "prime": r.prime}
                    for r in result.refutations
                ]
            },
        )
        return EXIT_FAIL
    report.say(f"INCONCLUSIVE ({args.degree})")
    report.emit("INCONCLUSIVE", {"degree_bound": args.degree})
    return EXIT_FAIL


def cmd_lift(args) -> int:
    report = _Report(args.format == "machine")
    loaded = load_structure_file(args.file)
    levels = _parse_levels(args.levels)
    if loaded.graded is not None:
        verdict = graded_tower_verdict(
            loaded.graded, levels, trials=args.trials, seed=args.seed
        )
    else:
        if loaded.presentation is None:
            raise InputError("lift needs a ring presentation")
        verdict = tower_surjectivity(
            loaded.presentation, levels, trials=args.trials, seed=args.seed
        )
    report.say(verdict.summary())
    report.emit(
        "SURJECTIVE" if verdict.surjective else "NOT-SURJECTIVE",
        {
            "surjective": verdict.surjective,
            "levels": [w.level for w in verdict.levels],
            "trials": args.trials,
        },
    )
    return EXIT_PASS if verdict.surjective else EXIT_FAIL


def cmd_tower(args) -> int:
    report = _Report(args.format == "machine")
    loaded = load_structure_file(args.file)
    if loaded.tower is None:
        raise InputError("tower command needs a tower file (kind = \"tower\")")
    verdict = surjectivity_verdict(loaded.tower)
    orbits = lim1_orbits(loaded.tower)
    report.say(verdict.summary())
    report.say(orbits.summary())
    report.emit(
        "SURJECTIVE" if verdict.surjective else "NOT-SURJECTIVE",
        {
            "surjective": verdict.surjective,
            "failing_level": verdict.failing_index,
            "orbits": orbits.orbit_count,
            "basepoint_orbit_is_everything": orbits.basepoint_orbit_is_everything,
        },
    )
    return EXIT_PASS if verdict.surjective else EXIT_FAIL


def cmd_construct(args) -> int:
    report = _Report(args.format == "machine")
    primes = _parse_primes(args.primes) if args.primes else (2, 3, 5)
    signs = _parse_signs(args.signs)
    structure = construct_structure(
        signs, primes=primes, truncation=args.trunc, exponent_bound=args.kmax
    )
    text = dump_k_model(structure)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        report.say(f"wrote {args.out}")
    else:
        report.say(text)
    report.emit("CONSTRUCTED", {"primes": list(primes), "signs": {str(p): s for p, s in signs.items()}})
    return EXIT_PASS


def cmd_convert(args) -> int:
    report = _Report(args.format == "machine")
    loaded = load_structure_file(args.file)
    pres = loaded.presentation
    if args.to == "psi":
        if loaded.lambdas is None:
            raise InputError("convert --to psi needs a lambda table")
        family = adams_from_lambda(loaded.lambdas, range(1, args.kmax + 1))
        name_rows = []
        for k in family.ks:
            for g, im in zip(pres.generators, family.psi(k).images):
                name_rows.append(f"psi^{k}({g.name}) = {format_series(im)}")
        for line in name_rows:
            report.say(line)
        report.emit("CONVERTED", {"direction": "lambda->psi", "kmax": args.kmax})
        return EXIT_PASS
    if loaded.adams is None:
        raise InputError("convert --to lambda needs psi tables")
    family = lambda_from_adams(loaded.adams, args.kmax)
    for i in range(1, family.bound + 1):
        for gi, g in enumerate(pres.generators):
            report.say(f"lambda^{i}({g.name}) = {format_series(family.value(gi, i))}")
    report.emit("CONVERTED", {"direction": "psi->lambda", "kmax": args.kmax})
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambda-forge",
        description="Exact arithmetic and certification for Adams operation families",
    )
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument(
        "--threads", type=int, default=1, help="accepted for compatibility; output is identical"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="check the Adams operation properties")
    p.add_argument("file")
    p.add_argument("--primes-bound", type=int, default=7)
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("invariants", help="extract the classification profile")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("distinguish", help="decide isomorphism of two K-models")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument(
        "--unoriented",
        action="store_true",
        help="also search orientation-reversing intertwiners",
    )
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("lift", help="randomized automorphism lifting harness")
    p.add_argument("file")
    p.add_argument("--levels", required=True, help="range A..B")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("tower", help="surjectivity and orbit report for a finite tower")
    p.add_argument("file")
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("construct", help="build a K-model realizing prescribed signs")
    p.add_argument("--signs", default="", help='e.g. "3=-1,5=+1"')
    p.add_argument("--primes", default="", help='e.g. "3,5" (default 2,3,5)')
    p.add_argument("--trunc", type=int, default=28)
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("convert", help="convert between lambda and psi tables")
    p.add_argument("file")
    p.add_argument("--to", choices=("lambda", "psi"), required=True)
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(func=cmd_convert)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, LevelTooLow) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ShapeError, MalformedStructure, Unsatisfiable, InvalidTransport) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except LambdaForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
