"""Command line surface: present / graded / chern / verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
guard exceeded.  Output is a pure function of the arguments, so repeated
invocations are byte-identical.  The resource guard can be overridden
with CHOWGEN_GUARD=<rows>x<cols>.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import chern, grstruct, locusideals, presentations
from .grstruct import Guard, ScaleExceededError
from .polyring import Polynomial, ordered_monomials, render_polynomial
from .presentations import GroupSpec

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

SCHEMA_VERSION = presentations.SCHEMA_VERSION


class UsageError(Exception):
    pass


# -- LaTeX rendering -----------------------------------------------------------

_LATEX_NAMES = {"L": r"\mathcal{L}", "H": r"\mathcal{H}", "zeta": r"\zeta"}


def _latex_name(name: str) -> str:
    if name in _LATEX_NAMES:
        return _LATEX_NAMES[name]
    match = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
    if match:
        return f"{match.group(1)}_{match.group(2)}"
    return name


def latex_polynomial(
    p: Polynomial, normalize_sign: bool = False, ascending_degrees: bool = False
) -> str:
    if p.is_zero():
        return "0"
    order = ordered_monomials(p, ascending_degrees=ascending_degrees)
    sign = -1 if normalize_sign and p.terms[order[0]] < 0 else 1
    pieces = []
    for k, monomial in enumerate(order):
        coefficient = sign * p.terms[monomial]
        factors = []
        for name, e in zip(p.ring.names, monomial):
            if e == 1:
                factors.append(_latex_name(name))
            elif e > 1:
                factors.append(f"{_latex_name(name)}^{{{e}}}" if e > 9 else f"{_latex_name(name)}^{e}")
        magnitude = abs(coefficient)
        body = "".join(factors)
        if not body:
            body = str(magnitude)
        elif magnitude != 1:
            body = f"{magnitude}{body}"
        if k == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(("- " if coefficient < 0 else "+ ") + body)
    return " ".join(pieces)


def latex_presentation(p: presentations.Presentation) -> str:
    if p.ring.nvars:
        generators = ", ".join(_latex_name(n) for n in p.ring.names)
        ring = rf"\mathbb{{Z}}[{generators}]"
    else:
        ring = r"\mathbb{Z}"
    if not p.relations:
        return ring
    body = ", ".join(
        latex_polynomial(poly, normalize_sign=True) for _, poly in p.relations
    )
    return f"{ring}/({body})"


def latex_group(piece: grstruct.GradedPiece) -> str:
    parts = []
    if piece.free_rank == 1:
        parts.append(r"\mathbb{Z}")
    elif piece.free_rank > 1:
        parts.append(rf"\mathbb{{Z}}^{{{piece.free_rank}}}")
    parts.extend(rf"\mathbb{{Z}}/{d}" for d in piece.torsion)
    return r" \oplus ".join(parts) if parts else "0"


# -- argument handling -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowgen",
        description="Exact integral Chow ring presentations and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("text", "json", "latex"), default="text"
        )

    def add_family(p):
        p.add_argument(
            "--family",
            required=True,
            choices=(
                "hilbert",
                "hilbert-rational",
                "orthogonal",
                "special-orthogonal",
                "gl2",
                "sl2n",
            ),
        )
        p.add_argument("--d", type=int, help="curve degree (hilbert families)")
        p.add_argument("--n", type=int, help="dimension / torsion order")
        p.add_argument("--k", type=int, help="orthogonal rank")

    p_present = sub.add_parser("present", help="print a ring presentation")
    add_family(p_present)
    p_present.add_argument("--simplify", action="store_true")
    add_format(p_present)

    p_graded = sub.add_parser("graded", help="per-degree group structure")
    add_family(p_graded)
    p_graded.add_argument("--max-degree", type=int, required=True)
    add_format(p_graded)

    p_chern = sub.add_parser("chern", help="total Chern class pipelines")
    p_chern.add_argument("--rank", type=int, required=True)
    p_chern.add_argument("--sym", type=int, default=1)
    p_chern.add_argument("--dual", action="store_true")
    p_chern.add_argument(
        "--twist", action="store_true", help="tensor by a line class t"
    )
    p_chern.add_argument("--invert", action="store_true")
    p_chern.add_argument("--trunc", type=int)
    add_format(p_chern)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "suite",
        choices=(
            "beta-ideal",
            "cs-membership",
            "sym-closed-forms",
            "segre-pushforward",
            "proof-chain",
            "torsion",
            "all",
        ),
    )
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--d-max", type=int)
    p_verify.add_argument("--d", type=int)
    p_verify.add_argument("--degrees", type=str, help="range like 1..6")
    add_format(p_verify)

    return parser


def _resolve_group(args) -> GroupSpec:
    family = args.family
    if family == "hilbert":
        if args.d is None:
            raise UsageError("family hilbert requires --d")
        if args.d < 1:
            raise UsageError("--d must be >= 1")
        internal = (
            presentations.HILBERT_EVEN if args.d % 2 == 0 else presentations.HILBERT_ODD
        )
        spec = GroupSpec(internal, args.d)
    elif family == "hilbert-rational":
        if args.d is None:
            raise UsageError("family hilbert-rational requires --d")
        spec = GroupSpec(presentations.HILBERT_RATIONAL, args.d)
    elif family == "orthogonal":
        if args.k is None:
            raise UsageError("family orthogonal requires --k")
        spec = GroupSpec(presentations.ORTHOGONAL, args.k)
    elif family == "special-orthogonal":
        if args.n is None:
            raise UsageError("family special-orthogonal requires --n")
        spec = GroupSpec(presentations.SPECIAL_ORTHOGONAL, args.n)
    elif family == "gl2":
        spec = GroupSpec(presentations.GL2, None)
    else:
        if args.n is None:
            raise UsageError("family sl2n requires --n")
        spec = GroupSpec(presentations.SL2N, args.n)
    try:
        spec.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return spec


def _guard_from_env() -> Guard | None:
    raw = os.environ.get("CHOWGEN_GUARD")
    if not raw:
        return None
    match = re.fullmatch(r"(\d+)x(\d+)", raw.strip())
    if not match:
        raise UsageError(
            f"CHOWGEN_GUARD must look like <rows>x<cols>, got {raw!r}"
        )
    return Guard(max_rows=int(match.group(1)), max_basis=int(match.group(2)))


# -- subcommands -----------------------------------------------------------------


def _cmd_present(args) -> int:
    spec = _resolve_group(args)
    result = presentations.present(spec, simplified=args.simplify)
    if args.format == "text":
        print(result.render_text())
    elif args.format == "latex":
        print(latex_presentation(result))
    else:
        document = presentations.to_document(result)
        document["family"] = spec.family
        document["parameter"] = spec.parameter
        document["simplified"] = bool(args.simplify)
        print(json.dumps(document, indent=2))
    return EXIT_OK


def _cmd_graded(args) -> int:
    spec = _resolve_group(args)
    if args.max_degree < 0:
        raise UsageError("--max-degree must be >= 0")
    guard = _guard_from_env()
    result = presentations.present(spec)
    groups = [
        grstruct.graded_group(result, n, guard)
        for n in range(args.max_degree + 1)
    ]
    if args.format == "text":
        print("[" + ", ".join(piece.render() for piece in groups) + "]")
    elif args.format == "latex":
        print("[" + ", ".join(latex_group(piece) for piece in groups) + "]")
    else:
        document = {
            "schema_version": SCHEMA_VERSION,
            "kind": "graded",
            "family": spec.family,
            "parameter": spec.parameter,
            "max_degree": args.max_degree,
            "groups": [
                {
                    "degree": n,
                    "free_rank": piece.free_rank,
                    "torsion": list(piece.torsion),
                    "text": piece.render(),
                }
                for n, piece in enumerate(groups)
            ],
        }
        print(json.dumps(document, indent=2))
    return EXIT_OK


def _cmd_chern(args) -> int:
    if args.rank not in (1, 2, 3):
        raise UsageError("--rank must be 1, 2 or 3")
    if args.sym < 0:
        raise UsageError("--sym must be >= 0")
    if args.trunc is not None and args.trunc <= 0:
        raise UsageError("--trunc must be >= 1")
    if args.sym != 1 and args.rank == 1:
        raise UsageError("symmetric powers need --rank 2 or 3")
    if args.sym != 1:
        bundle_rank = (
            args.sym + 1 if args.rank == 2 else (args.sym + 1) * (args.sym + 2) // 2
        )
        if args.sym == 0:
            bundle_rank = 1
    else:
        bundle_rank = args.rank
    trunc = args.trunc if args.trunc is not None else bundle_rank
    if args.sym == 1:
        series = chern.generic_bundle(args.rank, trunc=trunc)
    else:
        series = chern.sym_power_chern(args.rank, args.sym, trunc)
    if args.dual:
        series = chern.dual_chern(series)
    if args.twist:
        ring = series.series.ring.extend([("t", 1)])
        series = chern.tensor_line(series.in_ring(ring), ring.var("t"))
    if args.invert:
        series = chern.invert_series(series)
    if args.format == "text":
        print(series.render())
    elif args.format == "latex":
        print(latex_polynomial(series.series, ascending_degrees=True))
    else:
        document = {
            "schema_version": SCHEMA_VERSION,
            "kind": "chern",
            "rank": series.rank,
            "trunc": series.trunc,
            "text": series.render(),
            "terms": sorted(
                [list(m), c] for m, c in series.series.terms.items()
            ),
        }
        print(json.dumps(document, indent=2))
    return EXIT_OK


# -- verification suites -----------------------------------------------------------


def _parse_degrees(raw: str | None, default=(1, 6)) -> range:
    if raw is None:
        return range(default[0], default[1] + 1)
    match = re.fullmatch(r"(\d+)\.\.(\d+)", raw.strip())
    if not match:
        raise UsageError(f"--degrees must look like 1..6, got {raw!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo < 1 or hi < lo:
        raise UsageError("--degrees must be a nonempty positive range")
    return range(lo, hi + 1)


def suite_beta_ideal(k_max: int = 4) -> list[tuple[str, bool]]:
    return [
        (f"beta-ideal k={k}", presentations.verify_beta_ideal(k))
        for k in range(1, k_max + 1)
    ]


def suite_cs_membership(k: int = 1) -> list[tuple[str, bool]]:
    return [(f"cs-membership k={k}", presentations.verify_cs_membership(k))]


def suite_sym_closed_forms(d_max: int = 12) -> list[tuple[str, bool]]:
    checks = []
    for d in range(1, d_max + 1):
        series = chern.sym_power_chern(2, d, 2)
        ok = series.component(1) == chern.sym2_degree1_closed_form(d) and (
            series.component(2) == chern.sym2_degree2_closed_form(d)
        )
        checks.append((f"sym-closed-forms d={d}", ok))
    return checks


def suite_segre_pushforward() -> list[tuple[str, bool]]:
    return [
        (f"segre-pushforward f={f}", chern.verify_pushforward_identity(f))
        for f in (2, 3)
    ]


def suite_proof_chain() -> list[tuple[str, bool]]:
    checks = []
    for e in (2, 3):
        checks.append((f"proof-chain I1 e={e}", locusideals.verify_proof_chain_i1(e)))
        checks.append((f"proof-chain J1 e={e}", locusideals.verify_proof_chain_j1(e)))
    return checks


def suite_torsion(d: int, degrees: range) -> list[tuple[str, bool]]:
    if d < 1:
        raise UsageError("--d must be >= 1")
    family = presentations.HILBERT_EVEN if d % 2 == 0 else presentations.HILBERT_ODD
    integral = presentations.present(GroupSpec(family, d))
    rational = presentations.present_hilbert_rational(d)
    checks = [
        (
            f"torsion d={d} integral degrees {degrees.start}..{degrees.stop - 1}",
            grstruct.torsion_check(integral, degrees),
        ),
        (
            f"torsion d={d} rational degrees {degrees.start}..{degrees.stop - 1}",
            grstruct.torsion_check(rational, degrees),
        ),
    ]
    return checks


def _cmd_verify(args) -> int:
    suite = args.suite
    if suite == "beta-ideal":
        checks = suite_beta_ideal(args.k if args.k is not None else 4)
    elif suite == "cs-membership":
        checks = suite_cs_membership(args.k if args.k is not None else 1)
    elif suite == "sym-closed-forms":
        checks = suite_sym_closed_forms(args.d_max if args.d_max is not None else 12)
    elif suite == "segre-pushforward":
        checks = suite_segre_pushforward()
    elif suite == "proof-chain":
        checks = suite_proof_chain()
    elif suite == "torsion":
        if args.d is None:
            raise UsageError("verify torsion requires --d")
        checks = suite_torsion(args.d, _parse_degrees(args.degrees))
    else:
        checks = (
            suite_beta_ideal(4)
            + suite_cs_membership(1)
            + suite_sym_closed_forms(12)
            + suite_segre_pushforward()
            + suite_proof_chain()
            + suite_torsion(2, range(1, 7))
            + suite_torsion(3, range(1, 7))
        )
    ok = all(passed for _, passed in checks)
    if args.format == "json":
        document = {
            "schema_version": SCHEMA_VERSION,
            "kind": "verify",
            "suite": suite,
            "checks": [
                {"name": name, "pass": passed} for name, passed in checks
            ],
            "ok": ok,
        }
        print(json.dumps(document, indent=2))
    else:
        for name, passed in checks:
            print(("PASS " if passed else "FAIL ") + name)
        print(f"ok: {sum(p for _, p in checks)}/{len(checks)}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# -- entry point ---------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "present":
            return _cmd_present(args)
        if args.command == "graded":
            return _cmd_graded(args)
        if args.command == "chern":
            return _cmd_chern(args)
        return _cmd_verify(args)
    except UsageError as exc:
        print(f"chowgen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScaleExceededError as exc:
        print(f"chowgen: {exc}", file=sys.stderr)
        return EXIT_GUARD


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
