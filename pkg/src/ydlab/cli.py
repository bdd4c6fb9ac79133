"""Command-line entry point: ``ydlab <command> [--workspace PATH] [--json] [--seed N] [args]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bimonad import LambdaFamily, group_closure, verify_bimonad, verify_lambda_consequences, verify_zero_automorphism
from .errors import ClosureTooLarge, MalformedInput, PreconditionFailed, UnknownCommand, YDLabError
from .exactmat import flip, parse_matrix
from .groupsys import verify_system_axioms
from .involution import (InvolutionPair, check_involution_pair, iso_backward, iso_forward,
                         lambda_helper_identities, yd_from_tau_pair)
from .report import VerificationReport
from .workspace import Workspace, load_workspace, object_to_dict, write_json
from .ydcat import (GradedYDObject, apply_phi, classify_grading, compose_yd, pair_mul,
                    verify_phi_monoidal, verify_yd)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
PAIR_CAP = 256
GLOBAL_DEFAULTS = {"workspace": None, "json": False, "seed": 0}

COMMANDS = ("verify-bimonad", "verify-aut", "group-axioms", "verify-yd", "classify", "compose",
            "twist", "phi-laws", "involution-check", "iso", "tau-build")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        if "invalid choice" in message:
            raise UnknownCommand(message)
        raise MalformedInput(message)


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _first(reg: dict, kind: str, name: str | None) -> str:
    """The named entry, or the first one the manifest lists."""
    if name:
        return name
    if not reg:
        raise MalformedInput(f"the workspace has no {kind}")
    return next(iter(reg))


def _precondition_report(subject: str, exc: PreconditionFailed) -> VerificationReport:
    rep = VerificationReport(subject)
    rep.add(exc.condition, False, {"detail": exc.detail} if exc.detail else {})
    return rep


def _write_object(ws: Workspace, obj: GradedYDObject, out: str | None, default: str,
                  rep: VerificationReport) -> None:
    path = Path(out or default)
    write_json(path, object_to_dict(ws.renamed(obj), ws))
    rep.notes.append(f"wrote {path}")


# Command implementations. Each returns one report.

def cmd_verify_bimonad(ws: Workspace, args) -> VerificationReport:
    return verify_bimonad(ws.bimonad(_first(ws.bimonads, "bimonads", args.name)))


def cmd_verify_aut(ws: Workspace, args) -> VerificationReport:
    auts = [ws._get("automorphisms", n) for n in args.names] or list(ws.automorphisms.values())
    if not auts:
        raise MalformedInput("no automorphisms to verify")
    rep = VerificationReport(f"automorphisms {', '.join(a.name for a in auts)}")
    with rep.timed():
        for a in auts:
            rep.extend(verify_zero_automorphism(a.owner, a.map, a.name), f"{a.name}:")
        if args.family:
            owner = auts[0].owner
            try:
                closure = group_closure(owner, auts, cap=args.cap)
            except ClosureTooLarge as exc:
                rep.add("closure", False, {"detail": str(exc)})
                return rep
            rep.notes.append(f"closure order {len(closure)}")
            rep.extend(verify_lambda_consequences(LambdaFamily.conjugated(owner, closure)), "family:")
    return rep


def cmd_group_axioms(ws: Workspace, args) -> VerificationReport:
    names = args.names or list(ws.systems)
    if not names:
        raise MalformedInput("the workspace has no group systems")
    rep = VerificationReport(f"group systems {', '.join(names)}", seed=args.seed)
    with rep.timed():
        for n in names:
            rep.extend(verify_system_axioms(ws.system(n), seed=args.seed), f"{n}:")
    return rep


def _object_grading(ws: Workspace, obj: GradedYDObject, args):
    alpha = ws.aut(args.alpha, obj.target) if args.alpha else obj.alpha
    beta = ws.aut(args.beta, obj.source) if args.beta else obj.beta
    return alpha, beta


def cmd_verify_yd(ws: Workspace, args) -> VerificationReport:
    obj = ws.object(args.object)
    alpha, beta = _object_grading(ws, obj, args)
    return verify_yd(obj, alpha, beta)


def cmd_classify(ws: Workspace, args) -> VerificationReport:
    obj = ws.object(args.object)
    targets = ws.auts_of(obj.target)
    sources = ws.auts_of(obj.source)
    if args.auts:
        wanted = set(_split(args.auts))
        targets = [a for a in targets if a.name in wanted]
        sources = [b for b in sources if b.name in wanted]
    rep = VerificationReport(f"gradings of {obj.name}")
    with rep.timed():
        hits = classify_grading(obj, [(a, b) for a in targets for b in sources])
        for a, b in hits:
            rep.notes.append(f"holds at ({a.name}, {b.name})")
        rep.add("grading-found", bool(hits), None if hits else {"tried": len(targets) * len(sources)})
    return rep


def cmd_compose(ws: Workspace, args) -> VerificationReport:
    x, y = ws.object(args.left), ws.object(args.right)
    jy = ws.fusion_between(y.source, y.target)
    jx = ws.fusion_between(x.source, x.target)
    xy = ws.renamed(compose_yd(x, y, jy, jx))
    rep = verify_yd(xy)
    rep.notes.append(f"composite graded {xy.grading_label()}, carrier dimension {xy.xdim}")
    if args.out:
        _write_object(ws, xy, args.out, "", rep)
    return rep


def cmd_twist(ws: Workspace, args) -> VerificationReport:
    obj = ws.object(args.object)
    names = _split(args.pair)
    if len(names) != 2:
        raise MalformedInput("--pair takes two automorphism names separated by a comma")
    pair = (ws.aut(names[0], obj.target), ws.aut(names[1], obj.source))
    out = ws.renamed(apply_phi(pair, obj, ws.fusion_between(obj.source, obj.target)))
    rep = verify_yd(out)
    rep.notes.append(f"twisted object graded {out.grading_label()}")
    if args.out:
        _write_object(ws, out, args.out, "", rep)
    return rep


def _pair_group(gens, j, cap: int = PAIR_CAP):
    e = (gens[0][0].owner.identity_aut(), gens[0][1].owner.identity_aut())
    elems = [e]
    keys = {(e[0].key(), e[1].key())}
    frontier = [e]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = pair_mul(p, g, j)
                k = (q[0].key(), q[1].key())
                if k not in keys:
                    keys.add(k)
                    elems.append(q)
                    nxt.append(q)
                    if len(elems) > cap:
                        raise ClosureTooLarge(f"pair group exceeds {cap} elements")
        frontier = nxt
    return elems


def cmd_phi_laws(ws: Workspace, args) -> VerificationReport:
    obj = ws.object(args.object)
    j = ws.fusion_between(obj.source, obj.target)
    gens = []
    for g in _split(args.gens):
        a, _, b = g.partition(":")
        gens.append((ws.aut(a, obj.target), ws.aut(b or a, obj.source)))
    rep = VerificationReport(f"twisting functor laws on {obj.name}")
    with rep.timed():
        e = (obj.target.identity_aut(), obj.source.identity_aut())
        rep.add("identity", apply_phi(e, obj, j).same_as(obj))
        group = _pair_group(gens, j) if gens else [e]
        rep.notes.append(f"pair group of order {len(group)}")
        bad = None
        for p in group:
            for q in group:
                lhs = apply_phi(pair_mul(p, q, j), obj, j)
                rhs = apply_phi(p, apply_phi(q, obj, j), j)
                if not lhs.same_as(rhs):
                    bad = {"p": f"({p[0].name}, {p[1].name})", "q": f"({q[0].name}, {q[1].name})"}
                    break
            if bad:
                break
        rep.add("group-law", bad is None, bad)
        if args.with_object:
            y = ws.object(args.with_object)
            jy = ws.fusion_between(y.source, y.target)
            for p in group:
                sub = verify_phi_monoidal(p, obj, y, jy, j)
                rep.add(f"monoidal ({p[0].name}, {p[1].name})", sub.passed,
                        None if sub.passed else {"identity": sub.failed_labels[0]})
    return rep


def cmd_involution_check(ws: Workspace, args) -> VerificationReport:
    p = ws.pair(_first(ws.pairs, "pairs", args.pair))
    if args.alpha or args.beta:
        p = InvolutionPair(p.source, p.target, p.f, p.g,
                           ws.aut(args.alpha, p.target) if args.alpha else p.alpha,
                           ws.aut(args.beta, p.source) if args.beta else p.beta,
                           p.fusion, p.name)
    rep = check_involution_pair(p)
    if args.helpers and rep.passed:
        try:
            rep.extend(lambda_helper_identities(p), "helper:")
        except PreconditionFailed as exc:
            rep.add(f"helper:{exc.condition}", False, {"detail": exc.detail})
    return rep


def cmd_iso(ws: Workspace, args) -> VerificationReport:
    p = ws.pair(args.pair)
    obj = ws.object(args.object)
    forward = args.direction == "forward"
    subject = f"iso {args.direction} of {obj.name} along {p.name}"
    try:
        out = iso_forward(p, obj) if forward else iso_backward(p, obj)
    except PreconditionFailed as exc:
        return _precondition_report(subject, exc)
    back = iso_backward(p, out, checked=False) if forward else iso_forward(p, out, checked=False)
    rep = VerificationReport(subject)
    with rep.timed():
        rep.extend(verify_yd(out))
        rep.add("round-trip", back.same_as(obj))
    out = ws.renamed(out)
    rep.notes.append(f"output graded {out.grading_label()}")
    _write_object(ws, out, args.out, f"{obj.name}_{args.direction}.json", rep)
    return rep


def cmd_tau_build(ws: Workspace, args) -> VerificationReport:
    p = ws.pair(args.pair)
    F, F1 = p.source, p.target
    subject = f"tau construction along {p.name}"
    if args.tau_fx or args.tau_xf:
        if not (args.tau_fx and args.tau_xf):
            raise MalformedInput("--tau-fx and --tau-xf must be given together")
        tau_fx = parse_matrix(json.loads(Path(args.tau_fx).read_text()), args.tau_fx)
        tau_xf = parse_matrix(json.loads(Path(args.tau_xf).read_text()), args.tau_xf)
    else:
        if F.dim != F1.dim:
            raise MalformedInput("the default flip needs bimonads of equal dimension")
        tau_fx = tau_xf = flip(F.dim, F.dim)
    try:
        obj = yd_from_tau_pair(F, F1, tau_fx, tau_xf, p, name=args.name)
    except PreconditionFailed as exc:
        return _precondition_report(subject, exc)
    rep = verify_yd(obj)
    rep.subject = subject
    obj = ws.renamed(obj)
    rep.notes.append(f"object graded {obj.grading_label()}, carrier dimension {obj.xdim}")
    if args.out:
        _write_object(ws, obj, args.out, "", rep)
    return rep


HANDLERS = {
    "verify-bimonad": cmd_verify_bimonad, "verify-aut": cmd_verify_aut, "group-axioms": cmd_group_axioms,
    "verify-yd": cmd_verify_yd, "classify": cmd_classify, "compose": cmd_compose, "twist": cmd_twist,
    "phi-laws": cmd_phi_laws, "involution-check": cmd_involution_check, "iso": cmd_iso,
    "tau-build": cmd_tau_build,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workspace", default=argparse.SUPPRESS,
                        help="manifest path, directory, or bundled workspace name")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit the report as JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")

    parser = _Parser(prog="ydlab", description="Exact verification of graded Yetter-Drinfeld data.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("verify-bimonad", "check the bialgebra and distributive-law identities")
    p.add_argument("name", nargs="?")
    p = add("verify-aut", "check automorphisms, optionally their closure and twisted laws")
    p.add_argument("names", nargs="*")
    p.add_argument("--family", action="store_true")
    p.add_argument("--cap", type=int, default=10000)
    p = add("group-axioms", "check the axioms of group systems")
    p.add_argument("names", nargs="*")
    for name, text in (("verify-yd", "check an object at its grading or another one"),
                       ("classify", "find the registered gradings at which an object is valid")):
        p = add(name, text)
        p.add_argument("--object", required=True)
        if name == "verify-yd":
            p.add_argument("--alpha")
            p.add_argument("--beta")
        else:
            p.add_argument("--auts", help="comma-separated automorphism names to try")
    p = add("compose", "compose two objects")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out")
    p = add("twist", "apply the twisting functor of an automorphism pair")
    p.add_argument("--pair", required=True, help="ALPHA,BETA")
    p.add_argument("--object", required=True)
    p.add_argument("--out")
    p = add("phi-laws", "check identity, group and monoidal laws of the twisting functors")
    p.add_argument("--object", required=True)
    p.add_argument("--gens", default="", help="generators ALPHA:BETA separated by commas")
    p.add_argument("--with", dest="with_object")
    p = add("involution-check", "check a pair in involution")
    p.add_argument("--pair")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--helpers", action="store_true")
    p = add("iso", "move an object between graded components along a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--object", required=True)
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--out")
    p = add("tau-build", "build an object from braiding-like maps and a pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--tau-fx")
    p.add_argument("--tau-xf")
    p.add_argument("--name", default="tau")
    p.add_argument("--out")
    return parser


def _emit(text: str, stream=None) -> None:
    print(text, file=stream or sys.stdout)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        # shared option actions are attached to every subparser, so defaults are filled here
        for key, value in GLOBAL_DEFAULTS.items():
            if not hasattr(args, key):
                setattr(args, key, value)
        ws = load_workspace(args.workspace)
        report = HANDLERS[args.command](ws, args)
    except YDLabError as exc:
        kind = type(exc).__name__
        if as_json:
            _emit(json.dumps({"error": kind, "message": str(exc)}, indent=2))
        else:
            _emit(f"error ({kind}): {exc}", sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        if as_json:
            _emit(json.dumps({"error": "MalformedInput", "message": str(exc)}, indent=2))
        else:
            _emit(f"error (MalformedInput): {exc}", sys.stderr)
        return EXIT_INPUT
    _emit(report.to_json() if args.json else report.render())
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
