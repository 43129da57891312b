"""Command-line entry point. JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 failed verification, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import gtbij, patterns, pbw, repbuild, verify
from .rootsys import DominantWeight, cells, weight_from_fundamental, weyl_dim


class InputError(ValueError):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _load_json(arg: str):
    text = arg
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {arg[1:]}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _weight(args) -> DominantWeight:
    if args.weight is None:
        raise InputError("--weight is required")
    try:
        a = [int(x) for x in args.weight.split(",")]
    except ValueError as exc:
        raise InputError(f"--weight must be comma-separated integers, got {args.weight!r}") from exc
    if len(a) != args.n:
        raise InputError(f"--weight has {len(a)} entries but --n is {args.n}")
    return weight_from_fundamental(args.n, a)


def _triangle(args) -> patterns.Triangle:
    if args.triangle is None:
        raise InputError("--triangle is required")
    T = patterns.Triangle.from_json(_load_json(args.triangle))
    if T.n != args.n:
        raise InputError(f"triangle rank {T.n} does not match --n {args.n}")
    return T


def _word(args) -> pbw.Word:
    if args.word is None:
        raise InputError("--word is required")
    return pbw.Word.parse(args.n, args.word)


def _policy(args) -> verify.BasisPolicy:
    return verify.BasisPolicy(args.policy, seed=args.seed)


def _certificate(cert: verify.Certificate) -> int:
    _emit(cert.to_json())
    return 0 if cert.ok else 1


# -- subcommands --------------------------------------------------------------------

def cmd_cells(args) -> int:
    _emit([list(c) for c in cells(args.n)])
    return 0


def cmd_dim(args) -> int:
    _emit(weyl_dim(_weight(args)))
    return 0


def cmd_enumerate(args) -> int:
    w = _weight(args)
    if args.what == "pi":
        items = (T.to_json() for T in patterns.iter_pi(w))
    else:
        items = (R.to_json() for R in gtbij.enumerate_gt(w))
    if args.format == "jsonl":
        for obj in items:
            _emit(obj)
    else:
        _emit(list(items))
    return 0


def cmd_map(args) -> int:
    w = _weight(args)
    if args.direction == "f":
        if args.pattern is None:
            raise InputError("--pattern is required for 'map f'")
        R = gtbij.GTPattern.from_json(_load_json(args.pattern), w)
        _emit(gtbij.f_map(R).to_json())
    else:
        _emit(gtbij.g_map(_triangle(args), w).to_json())
    return 0


def cmd_membership(args) -> int:
    _emit({"member": patterns.in_pi(_triangle(args), _weight(args))})
    return 0


def cmd_polytope(args) -> int:
    _emit(patterns.polytope_h_rep(_weight(args)).to_json())
    return 0


def cmd_normalize(args) -> int:
    _emit(pbw.lincomb_to_json(pbw.pbw_normalize(_word(args))))
    return 0


def cmd_apply(args) -> int:
    w = _weight(args)
    M = repbuild.irreducible_module(w)
    v = repbuild.apply_word(M.ambient, _word(args), M.highest)
    _emit(M.ambient.vec_to_json(v))
    return 0


def cmd_verify_basis(args) -> int:
    return _certificate(verify.verify_basis(_weight(args), _policy(args)))


def cmd_straighten(args) -> int:
    w = _weight(args)
    M = _triangle(args) if args.triangle is not None else _word(args).log
    return _certificate(verify.straighten(w, M))


def cmd_minkowski(args) -> int:
    w = _weight(args)
    if args.triangle is None:
        return _certificate(verify.minkowski_certificate(w))
    try:
        r = verify.minkowski_decompose(w, _triangle(args))
    except verify.VerificationFailure as exc:
        return _certificate(exc.cert)
    _, eps = verify.minkowski_direction(w)
    _emit({
        "eps": list(eps.a),
        "rest": r.rest.to_json(),
        "part": r.part.to_json(),
        "used_fallback": r.used_fallback,
        "indicator_failure": r.indicator_failure,
    })
    return 0


def cmd_graded_dims(args) -> int:
    _, cert = verify.graded_dims(_weight(args))
    return _certificate(cert)


def cmd_degen_check(args) -> int:
    return _certificate(verify.degeneration_basis_check(_weight(args), _policy(args)))


def cmd_conjecture_scan(args) -> int:
    _emit(verify.conjecture_scan(_weight(args), args.max_len, seed=args.seed, samples=args.samples))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fflvb", description="Type-B FFLV monomial bases: enumeration and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, weight=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--n", type=int, required=True)
        if weight:
            sp.add_argument("--weight", help="fundamental coordinates a1,...,an")
        sp.add_argument("--format", choices=("json", "jsonl"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(func=func)
        return sp

    add("cells", cmd_cells, "list cells in << order", weight=False)
    add("dim", cmd_dim, "Weyl dimension of L_lambda")
    sp = add("enumerate", cmd_enumerate, "enumerate Pi_lambda or Gamma_lambda")
    sp.add_argument("what", choices=("pi", "gt"))
    sp = add("map", cmd_map, "apply the bijection F or its inverse G")
    sp.add_argument("direction", choices=("f", "g"))
    sp.add_argument("--pattern")
    sp.add_argument("--triangle")
    sp = add("membership", cmd_membership, "test T in Pi_lambda")
    sp.add_argument("--triangle")
    add("polytope", cmd_polytope, "H-representation of the polytope")
    sp = add("normalize", cmd_normalize, "PBW normal form of a word", weight=False)
    sp.add_argument("--word")
    sp = add("apply", cmd_apply, "apply a word to the highest vector")
    sp.add_argument("--word")
    sp = add("verify-basis", cmd_verify_basis, "check the monomial basis theorem")
    sp.add_argument("--policy", choices=("ordered", "random-arranged"), default="ordered")
    sp = add("straighten", cmd_straighten, "expand M v0 in the ordered basis")
    sp.add_argument("--word")
    sp.add_argument("--triangle")
    sp = add("minkowski", cmd_minkowski, "Minkowski decomposition of one triangle or all of Pi_lambda")
    sp.add_argument("--triangle")
    add("graded-dims", cmd_graded_dims, "grade counts vs filtration dimensions")
    sp = add("degen-check", cmd_degen_check, "basis check in the associated graded module")
    sp.add_argument("--policy", choices=("ordered", "random-arranged"), default="ordered")
    sp = add("conjecture-scan", cmd_conjecture_scan, "exploratory scan of non-arranged choices")
    sp.add_argument("--max-len", type=int, default=4)
    sp.add_argument("--samples", type=int, default=10)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.n < 1:
        print(f"error: --n must be >= 1, got {args.n}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
