"""Command-line front end.

Exit codes: 0 success, 1 relation failure, 2 malformed input,
3 oracle disagreement, 4 theorem violation.
"""

from __future__ import annotations

import argparse
import sys

from braidquiver import jsonio
from braidquiver.arrangement import (
    braid_arrangement,
    braid_poset,
    collinear,
    collinear_triples,
    enumerate_faces,
    faces_from_osp,
)
from braidquiver.embedfunctor import (
    corollary_analysis,
    iota_braid,
    phi_functor,
    verify_duality_commutes,
    verify_fully_faithful,
    verify_functor_preserves_J,
    verify_simple_to_simple,
)
from braidquiver.errors import (
    DomainError,
    InternalConsistencyError,
    MalformedInputError,
    StructuralError,
    TheoremViolation,
)
from braidquiver.quiverrep import dual, hom_space, is_absolutely_simple, is_in_J

EXIT_OK = 0
EXIT_RELATION = 1
EXIT_MALFORMED = 2
EXIT_ORACLE = 3
EXIT_THEOREM = 4

N_CAP = 4
RELATIONS = ("composition", "monotonicity", "transitivity", "invertibility")
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class Outcome:
    """Text lines, a JSON report, an optional artifact and an exit code."""

    def __init__(self):
        self.lines = []
        self.report = {}
        self.artifact = None
        self.code = EXIT_OK

    def say(self, line: str):
        self.lines.append(line)

    def fail(self, code: int):
        self.code = max(self.code, code)


def squared(m: int) -> str:
    return f"{m}" + "2".translate(_SUPERSCRIPT)


def _check_n(n: int, allow_large: bool):
    if n < 1:
        raise MalformedInputError(f"n must be at least 1, got {n}")
    if n > N_CAP and not allow_large:
        raise MalformedInputError(f"n = {n} exceeds the default cap {N_CAP}; pass --allow-large")


def _load_rep(path, allow_large=False):
    rep = jsonio.load_rep(path)
    n = rep.poset.arrangement.braid_n
    if n is not None:
        _check_n(n, allow_large)
    return rep


def _relation_lines(out: Outcome, violations):
    for rel in RELATIONS:
        first = violations.first(rel)
        if first is None:
            out.say(f"{rel}: pass")
        else:
            count = len(violations.of(rel))
            out.say(f"{rel}: FAIL ({count}) first at {'/'.join(first.faces)}: {first.detail}")


def cmd_faces(args) -> Outcome:
    out = Outcome()
    if args.n is None and args.arrangement is None:
        raise MalformedInputError("faces needs --n or --arrangement")
    if args.n is not None and args.arrangement is not None:
        raise MalformedInputError("give only one of --n and --arrangement")
    if args.n is not None:
        _check_n(args.n, args.allow_large)
        poset = enumerate_faces(braid_arrangement(args.n))
    else:
        poset = enumerate_faces(jsonio.arrangement_from_json(jsonio.read_json(args.arrangement)))
    counts = poset.dims_by_dimension()
    detail = ", ".join(f"dim {d}: {c}" for d, c in counts.items())
    out.say(f"faces: {len(poset)} ({detail})")
    out.report = {"faces": len(poset), "by_dimension": {str(d): c for d, c in counts.items()}}
    if args.oracle:
        n = poset.arrangement.braid_n
        if n is None:
            raise MalformedInputError("--oracle needs a braid arrangement")
        oracle = faces_from_osp(n)
        agree = oracle.signs == poset.signs and oracle.hasse == poset.hasse
        out.say("oracle: agree" if agree else "oracle: DISAGREE")
        out.report["oracle"] = "agree" if agree else "disagree"
        if not agree:
            out.fail(EXIT_ORACLE)
    out.artifact = jsonio.poset_to_json(poset)
    return out


def cmd_check(args) -> Outcome:
    out = Outcome()
    rep = _load_rep(args.rep, args.allow_large)
    violations = is_in_J(rep)
    _relation_lines(out, violations)
    out.say("in J: yes" if violations.ok else "in J: no")
    out.report = {"in_J": violations.ok, "violations": violations.to_json()}
    if not violations.ok:
        out.fail(EXIT_RELATION)
    out.artifact = out.report
    return out


def cmd_functor(args) -> Outcome:
    out = Outcome()
    rep = _load_rep(args.rep, args.allow_large)
    n = rep.poset.arrangement.braid_n
    if n is None:
        raise MalformedInputError("functor needs a rep on a braid arrangement")
    _check_n(n + 1, args.allow_large)
    emb = iota_braid(n, args.i, args.j)
    violations = is_in_J(rep)
    out.report = {"embedding": jsonio.embedding_to_json(emb), "input_in_J": violations.ok, "checks": []}
    if not violations.ok:
        _relation_lines(out, violations)
        out.say("input not in J")
        out.report["violations"] = violations.to_json()
        out.fail(EXIT_RELATION)
        return out
    image = phi_functor(rep, emb).output
    out.say(f"extension by zero along {emb.label}: total dim {image.total_dim}")
    out.artifact = jsonio.rep_to_json(image)

    wanted = ("relations", "hom", "dual", "simple") if args.verify == "all" else (args.verify,)
    reports = []
    if "relations" in wanted:
        reports.append(verify_functor_preserves_J(rep, emb))
    if "hom" in wanted:
        other = _load_rep(args.rep2, args.allow_large) if args.rep2 else rep
        reports.append(verify_fully_faithful(rep, other, emb))
    if "dual" in wanted:
        reports.append(verify_duality_commutes(rep, emb))
    if "simple" in wanted:
        if rep.is_zero():
            out.say("simple: skipped for the zero rep")
        else:
            reports.append(verify_simple_to_simple(rep, emb))
    for rpt in reports:
        out.lines.extend(rpt.lines())
        out.report["checks"].append(rpt.to_json())
        if not rpt.ok:
            out.fail(EXIT_THEOREM)
    out.say("all checks pass" if out.code == EXIT_OK else "THEOREM VIOLATION")
    return out


def cmd_simple(args) -> Outcome:
    out = Outcome()
    rep = _load_rep(args.rep, args.allow_large)
    violations = is_in_J(rep)
    if not violations.ok:
        _relation_lines(out, violations)
        out.say("input not in J")
        out.report = {"input_in_J": False, "violations": violations.to_json()}
        out.fail(EXIT_RELATION)
        return out
    cert = is_absolutely_simple(rep)
    m = cert.total_dim
    if cert.simple:
        out.say(f"simple (dim A = {cert.algebra_dim} = {squared(m)})")
    else:
        out.say(f"not simple (dim A = {cert.algebra_dim} < {m * m} = {squared(m)})")
    out.report = {"certificate": cert.to_json()}
    if cert.simple and rep.poset.arrangement.braid_n is not None:
        verdict = corollary_analysis(rep)
        out.report["corollary"] = verdict.to_json()
        if verdict.recovered_via is not None:
            status = "round-trip OK" if verdict.round_trip_ok else "round-trip FAILED"
            i, j = verdict.recovered_via
            out.say(f"simple; open cells zero; recovered via L({i},{j}); {status}")
        elif not verdict.violations:
            out.say("open cells: " + ("zero" if verdict.zero_profile else "dimensions in {0, 1}"))
        for note in verdict.notes:
            out.say(f"note: {note}")
        if verdict.wall_bound_ok is not None:
            out.say("rays: dimensions at most 2" if verdict.wall_bound_ok else "rays: dimension above 2")
        for v in verdict.violations:
            out.say(f"THEOREM VIOLATION: {v}")
        if not verdict.ok:
            out.fail(EXIT_THEOREM)
    out.artifact = out.report
    return out


def cmd_dual(args) -> Outcome:
    out = Outcome()
    rep = _load_rep(args.rep, args.allow_large)
    d = dual(rep)
    out.say(f"dual: total dim {d.total_dim}")
    out.report = {"total_dim": d.total_dim}
    out.artifact = jsonio.rep_to_json(d)
    return out


def cmd_hom(args) -> Outcome:
    out = Outcome()
    rep1 = _load_rep(args.rep, args.allow_large)
    rep2 = _load_rep(args.rep2, args.allow_large)
    if not rep1.poset.same_as(rep2.poset):
        raise MalformedInputError("the two reps live on different posets")
    dim, basis = hom_space(rep1, rep2)
    out.say(f"dim Hom = {dim}")
    out.report = {"dim": dim, "basis": [{s: f.to_json() for s, f in g.components.items()} for g in basis]}
    out.artifact = out.report
    return out


def cmd_collinear(args) -> Outcome:
    out = Outcome()
    _check_n(args.n, args.allow_large)
    poset = braid_poset(args.n)
    if args.triple:
        parts = args.triple.split(",")
        if len(parts) != 3:
            raise MalformedInputError("--triple expects three comma-separated sign vectors")
        a, b, c = parts
        for s in (a, b, c):
            if s not in poset.index:
                raise MalformedInputError(f"{s!r} is not a face of A_{args.n}")
        value = collinear(poset, a, b, c)
        out.say(f"collinear: {'yes' if value else 'no'}")
        out.report = {"triple": [a, b, c], "collinear": value}
    else:
        triples = collinear_triples(poset)
        out.say(f"collinear triples: {len(triples)} of {len(poset) ** 3}")
        out.report = {"count": len(triples), "triples": [list(t) for t in triples]}
    out.artifact = out.report
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the produced JSON (poset, rep or report) here")
    common.add_argument("--quiet", action="store_true", help="print nothing; exit code only")
    common.add_argument("--allow-large", action="store_true", help=f"lift the n <= {N_CAP} cap")

    parser = argparse.ArgumentParser(prog="braidquiver", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("faces", parents=[common], help="enumerate faces of an arrangement")
    p.add_argument("--n", type=int)
    p.add_argument("--arrangement")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("check", parents=[common], help="check the relations of a rep")
    p.add_argument("--rep", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("functor", parents=[common], help="extend a rep by zero along L(i,j)")
    p.add_argument("--rep", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--verify", choices=("all", "relations", "hom", "dual", "simple"), default="all")
    p.add_argument("--rep2", help="second rep for the hom check (defaults to --rep)")
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("simple", parents=[common], help="absolute simplicity certificate")
    p.add_argument("--rep", required=True)
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("dual", parents=[common], help="dual rep")
    p.add_argument("--rep", required=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("hom", parents=[common], help="dimension of Hom(rep, rep2)")
    p.add_argument("--rep", required=True)
    p.add_argument("--rep2", required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("collinear", parents=[common], help="collinear triples of A_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--triple", metavar="A,B,C", help="write as --triple=A,B,C since signs may start with '-'")
    p.set_defaults(func=cmd_collinear)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (MalformedInputError, StructuralError, DomainError) as exc:
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InternalConsistencyError as exc:
        if not args.quiet:
            print(f"internal disagreement: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except TheoremViolation as exc:
        if not args.quiet:
            print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    if args.out and out.artifact is not None:
        jsonio.write_json(args.out, out.artifact)
    if not args.quiet:
        if args.format == "json":
            sys.stdout.write(jsonio.dumps({"command": args.command, "exit_code": out.code, **out.report}))
        else:
            for line in out.lines:
                print(line)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
