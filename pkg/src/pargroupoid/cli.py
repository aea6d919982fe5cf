"""Command-line front end.

Builds groups from a small spec grammar, lists groupoids, prints block
decompositions, and runs verification suites. JSON is the machine format and
is emitted with a fixed key order, two-space indent, and trailing newline, so
identical invocations are byte-identical; text output is a rendering of the
same data. Each suite seeds its own generator, so a suite produces the same
checks whether run alone or as part of `all`.

Exit codes: 0 success, 1 verification failure, 2 usage or spec errors,
3 ingestion or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from .group import (
    FiniteGroup,
    GroupOrderBoundError,
    GroupSpecError,
    GroupTableError,
    indices_of_mask,
    make_group,
    subgroup_as_group,
)
from .groupoid import Gamma, StandardGroupoid
from .partial_rep import (
    AxiomReport,
    ExtensionMembershipError,
    PartialActionFormatError,
    extend_to_gamma_hom,
    lambda_p,
    partial_action_from_json,
    regular_representation,
    verify_factorization,
    verify_kpar_relations,
    verify_partial_action,
)
from .semialgebra import (
    DeltaPair,
    GammaAlgebra,
    StandardAlgebra,
    delta_extension,
    delta_extension_inverse,
    matrix_algebra_for,
    standard_to_matrix,
    tensor_phi,
    tensor_varphi,
)
from .semiring import (
    DEFAULT_SEED,
    NAT,
    QNN,
    SemiringSpec,
    check_semiring_laws,
    delta_of,
)
from .structure import (
    coset_count_identity,
    decompose,
    decomposition_report,
    vertex_count_identity,
)

SCALAR_CHOICES = ("qnn", "nat", "qnn-delta")
SUITE_ORDER = ("laws", "assoc", "partialrep", "extension", "tensor", "delta",
               "structure")


def _scalar(name: str) -> SemiringSpec:
    if name == "qnn":
        return QNN
    if name == "nat":
        return NAT
    return delta_of(QNN)


def _resolve_bound(args) -> int | None:
    if args.bound is not None:
        return args.bound
    env = os.environ.get("PARGROUPOID_BOUND")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise GroupSpecError(
            f"PARGROUPOID_BOUND must be an integer, got {env!r}") from None


def _emit(doc: dict, args, render: Callable[[dict], str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(render(doc))


# ---------------------------------------------------------------------------
# Verification suites. Each returns {"name", "checks"}; a check is
# {"name", "passed"} plus optional "witness"/"note" strings.

def _check(name: str, passed: bool, witness=None, note: str = "") -> dict:
    doc: dict[str, Any] = {"name": name, "passed": bool(passed)}
    if witness is not None:
        doc["witness"] = str(witness)
    if note:
        doc["note"] = note
    return doc


def _axiom_checks(report: AxiomReport) -> list[dict]:
    return [_check(c.name, c.passed, c.witness, c.note) for c in report.checks]


def _suite_laws(G: FiniteGroup, S: SemiringSpec, seed: int,
                bound: int | None) -> list[dict]:
    report = check_semiring_laws(S, seed=seed)
    claimed = {"additively_cancellative": S.claims_additively_cancellative,
               "semifield": S.claims_semifield}
    checks = []
    for c in report.laws:
        if c.law in claimed and not claimed[c.law]:
            # measured but not claimed; the witness is informational
            note = "not claimed" + ("" if c.passed else "; counterexample shown")
            checks.append(_check(c.law, True, c.witness, note))
        else:
            checks.append(_check(c.law, c.passed, c.witness))
    checks.append(_check("claims_consistent", report.claims_consistent,
                         "; ".join(report.claim_issues) or None,
                         note=f"laws measured {report.mode}"))
    return checks


def _suite_assoc(G: FiniteGroup, S: SemiringSpec, seed: int,
                 bound: int | None) -> list[dict]:
    alg = GammaAlgebra(Gamma(G, bound), S)
    n = alg.size
    basis = [alg.basis_element(b) for b in alg.basis]
    if G.order <= 4:
        triples = ((x, y, z) for x in basis for y in basis for z in basis)
        note = f"exhaustive over {n}^3 basis triples"
    else:
        rng = random.Random(seed)
        triples = ((basis[rng.randrange(n)], basis[rng.randrange(n)],
                    basis[rng.randrange(n)]) for _ in range(1000))
        note = "1000 seeded basis triples"
    witness = None
    for x, y, z in triples:
        if (x * y) * z != x * (y * z):
            witness = (repr(x), repr(y), repr(z))
            break
    checks = [_check("associativity", witness is None, witness, note)]
    one = alg.one()
    unit_w = next((repr(x) for x in basis if one * x != x or x * one != x), None)
    checks.append(_check("two_sided_unit", unit_w is None, unit_w))
    return checks


def _suite_partialrep(G: FiniteGroup, S: SemiringSpec, seed: int,
                      bound: int | None) -> list[dict]:
    return _axiom_checks(verify_kpar_relations(G, S, bound=bound))


def _suite_extension(G: FiniteGroup, S: SemiringSpec, seed: int,
                     bound: int | None) -> list[dict]:
    alg = GammaAlgebra(Gamma(G, bound), S)
    lam = lambda_p(alg)
    try:
        ext = extend_to_gamma_hom(lam)
    except ExtensionMembershipError as exc:
        return [_check("extension_exists", False, note=str(exc))]
    checks = [_check("extension_exists", True)]
    ident_w = next(
        (alg.gamma.describe(el) for el in alg.gamma.elements
         if ext.image_of(el) != alg.basis_element(el)), None)
    checks.append(_check("identity_on_basis", ident_w is None, ident_w))
    checks.extend(_axiom_checks(verify_factorization(lam, ext, seed=seed)))

    if G.order <= 4:
        reg = regular_representation(G, S)
        try:
            reg_ext = extend_to_gamma_hom(reg, alg)
        except ExtensionMembershipError as exc:
            return checks + [_check("regular_rep_extends", False, note=str(exc))]
        reg_rep = verify_factorization(reg, reg_ext, seed=seed)
        checks.append(_check("regular_rep_extends", reg_rep.passed,
                             None if reg_rep.passed else reg_rep.failures[0],
                             note="regular representation, checks aggregated"))
    return checks


def _suite_tensor(G: FiniteGroup, S: SemiringSpec, seed: int,
                  bound: int | None) -> list[dict]:
    summary = decompose(G, bound=bound)
    rng = random.Random(seed)
    pool = S.values(12, seed)
    per_block = 25
    rt_witness = None
    phi_witness = None
    for block in summary.blocks:
        H, _ = subgroup_as_group(G, block.subgroup)
        standard = StandardAlgebra(StandardGroupoid(H, block.m), S)
        matrix = matrix_algebra_for(standard)
        for k in range(per_block):
            where = (block.H_order, block.m, k)
            X = matrix.random_element(rng)
            if standard_to_matrix(tensor_varphi(X, standard), matrix) != X:
                rt_witness = rt_witness or where
            Y = standard.random_element(rng)
            if tensor_varphi(standard_to_matrix(Y, matrix), standard) != Y:
                rt_witness = rt_witness or where

            A = [[rng.choice(pool) for _ in range(block.m)] for _ in range(block.m)]
            B = [[rng.choice(pool) for _ in range(block.m)] for _ in range(block.m)]
            w = matrix.entries.random_element(rng)
            v = matrix.entries.random_element(rng)
            AB = [[_dot(S, A[i], [B[k2][j] for k2 in range(block.m)])
                   for j in range(block.m)] for i in range(block.m)]
            lhs = tensor_phi(A, w, matrix) * tensor_phi(B, v, matrix)
            if lhs != tensor_phi(AB, w * v, matrix):
                phi_witness = phi_witness or where
    note = f"{len(summary.blocks)} blocks, {per_block} samples each"
    return [_check("varphi_round_trip", rt_witness is None, rt_witness, note),
            _check("phi_multiplicative", phi_witness is None, phi_witness, note)]


def _dot(S: SemiringSpec, row: list, col: list):
    acc = S.zero
    for a, b in zip(row, col):
        acc = S.add(acc, S.mul(a, b))
    return acc


def _suite_delta(G: FiniteGroup, S: SemiringSpec, seed: int,
                 bound: int | None) -> list[dict]:
    base_alg = GammaAlgebra(Gamma(G, bound), S)
    dalg = base_alg.with_scalars(delta_of(S))
    rng = random.Random(seed)
    samples = 200
    rt_w = pair_w = mul_w = add_w = None
    for k in range(samples):
        x = dalg.random_element(rng, terms=4)
        y = dalg.random_element(rng, terms=4)
        fx, fy = delta_extension(x), delta_extension(y)
        if delta_extension_inverse(fx) != x:
            rt_w = rt_w or k
        p = DeltaPair(base_alg.random_element(rng), base_alg.random_element(rng))
        if delta_extension(delta_extension_inverse(p)) != p:
            pair_w = pair_w or k
        if delta_extension(x * y) != fx * fy:
            mul_w = mul_w or k
        if delta_extension(x + y) != fx + fy:
            add_w = add_w or k
    note = f"{samples} seeded samples over {dalg.scalars.name}"
    return [_check("delta_round_trip", rt_w is None, rt_w, note),
            _check("delta_pair_round_trip", pair_w is None, pair_w, note),
            _check("delta_multiplicative", mul_w is None, mul_w, note),
            _check("delta_additive", add_w is None, add_w, note)]


def _suite_structure(G: FiniteGroup, S: SemiringSpec, seed: int,
                     bound: int | None) -> list[dict]:
    checks = []
    try:
        summary = decompose(G, S, bound)
        checks.append(_check(
            "component_isomorphisms", True,
            note=f"{summary.components_verified} components verified over {S.name}"))
    except AssertionError as exc:
        checks.append(_check("component_isomorphisms", False, note=str(exc)))
        summary = decompose(G, bound=bound)
    checks.append(_check("dimension_audit", summary.audit_ok,
                         None if summary.audit_ok
                         else (summary.audit_lhs, summary.audit_rhs)))
    ok, w = vertex_count_identity(G, bound)
    checks.append(_check("vertex_count_identity", ok, w))
    ok, w = coset_count_identity(G, bound)
    checks.append(_check("coset_count_identity", ok, w))
    diff = decomposition_report(G, bound=bound)["recursion_diff"]
    mismatches = sum(1 for row in diff if not row["equal"])
    checks.append(_check(
        "recursion_diff_informational", True,
        note=f"{mismatches} of {len(diff)} rows differ (not asserted)"))
    return checks


_SUITES: dict[str, Callable] = {
    "laws": _suite_laws,
    "assoc": _suite_assoc,
    "partialrep": _suite_partialrep,
    "extension": _suite_extension,
    "tensor": _suite_tensor,
    "delta": _suite_delta,
    "structure": _suite_structure,
}


# ---------------------------------------------------------------------------
# Commands.

def _cmd_gamma(args) -> int:
    G = make_group(args.group)
    gamma = Gamma(G, _resolve_bound(args))
    elements = [{"I": indices_of_mask(el.mask), "g": el.g,
                 "unit": gamma.is_unit(el)}
                for el in gamma.elements]
    doc = {
        "group": G.name,
        "order": G.order,
        "labels": [G.label(i) for i in G.elements()],
        "size": gamma.size,
        "unit_count": len(gamma.unit_indices),
        "elements": elements,
    }

    def render(d: dict) -> str:
        lines = [f"Gamma({d['group']}): {d['size']} arrows, "
                 f"{d['unit_count']} units"]
        for el in d["elements"]:
            names = ",".join(d["labels"][i] for i in el["I"])
            tag = "  unit" if el["unit"] else ""
            lines.append(f"  ({{{names}}}, {d['labels'][el['g']]}){tag}")
        return "\n".join(lines) + "\n"

    _emit(doc, args, render)
    return 0


def _cmd_decompose(args) -> int:
    G = make_group(args.group)
    scalars = _scalar(args.scalar) if args.scalar else None
    doc = decomposition_report(G, scalars, _resolve_bound(args))

    def render(d: dict) -> str:
        lines = [f"KGamma({d['group']}): {d['gamma_size']} basis arrows"]
        for b in d["blocks"]:
            lines.append(f"  {b['c']} x M_{b['m']}(KH), |H| = {b['H_order']}, "
                         f"H = <{','.join(map(str, b['H_gens'])) or 'e'}>")
        audit = d["audit"]
        lines.append(f"  audit: {audit['lhs']} = {audit['rhs']} "
                     f"{'ok' if audit['ok'] else 'MISMATCH'}")
        rows = d["recursion_diff"]
        bad = sum(1 for r in rows if not r["equal"])
        lines.append(f"  recursion diff: {bad} of {len(rows)} rows differ")
        return "\n".join(lines) + "\n"

    _emit(doc, args, render)
    return 0


def _render_suites(doc: dict) -> str:
    lines = [f"verify {doc['group']} over {doc['scalar']} (seed {doc['seed']})"]
    for suite in doc["suites"]:
        lines.append(f"  {suite['name']}: {'PASS' if suite['passed'] else 'FAIL'}")
        for check in suite["checks"]:
            if not check["passed"]:
                detail = check.get("witness") or check.get("note", "")
                lines.append(f"    {check['name']}: FAIL {detail}".rstrip())
    lines.append(f"result: {'PASS' if doc['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    G = make_group(args.group)
    S = _scalar(args.scalar)
    bound = _resolve_bound(args)
    names = SUITE_ORDER if args.suite == "all" else (args.suite,)
    suites = []
    for name in names:
        checks = _SUITES[name](G, S, args.seed, bound)
        suites.append({"name": name, "checks": checks,
                       "passed": all(c["passed"] for c in checks)})
    doc = {
        "group": G.name,
        "scalar": S.name,
        "seed": args.seed,
        "suites": suites,
        "passed": all(s["passed"] for s in suites),
    }
    _emit(doc, args, _render_suites)
    if not doc["passed"]:
        first = next(c for s in suites for c in s["checks"] if not c["passed"])
        detail = first.get("witness") or first.get("note", "")
        print(f"first failure: {first['name']}: {detail}".rstrip(),
              file=sys.stderr)
        return 1
    return 0


def _cmd_action_check(args) -> int:
    doc_in = json.loads(Path(args.file).read_text())
    group = make_group(args.group) if args.group else None
    pa = partial_action_from_json(doc_in, group=group)
    report = verify_partial_action(pa)
    doc = {
        "subject": report.subject,
        "checks": _axiom_checks(report),
        "passed": report.passed,
    }

    def render(d: dict) -> str:
        lines = [f"action-check {d['subject']}"]
        for check in d["checks"]:
            status = "pass" if check["passed"] else "FAIL"
            extra = check.get("witness") or check.get("note", "")
            lines.append(f"  {check['name']}: {status}"
                         + (f" {extra}" if extra else ""))
        lines.append(f"result: {'PASS' if d['passed'] else 'FAIL'}")
        return "\n".join(lines) + "\n"

    _emit(doc, args, render)
    if not report.passed:
        first = report.failures[0]
        print(f"first failure: {first.name}: {first.witness or first.note}",
              file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "gamma": _cmd_gamma,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "action-check": _cmd_action_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pargroupoid",
        description="exact groupoid semialgebra computations for finite groups")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="output format (default json)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled checks (default 0xC0FFEE)")
    common.add_argument("--bound", type=int, default=None,
                        help="override the group-order bound "
                             "(or set PARGROUPOID_BOUND)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", parents=[common],
                       help="list the groupoid of a group")
    p.add_argument("--group", required=True, help="cyclic:n | klein4 | sym:n | "
                   "dihedral:n | table:<path>")

    p = sub.add_parser("decompose", parents=[common],
                       help="block decomposition of the groupoid semialgebra")
    p.add_argument("--group", required=True)
    p.add_argument("--scalar", choices=SCALAR_CHOICES, default=None,
                   help="also verify every component isomorphism over these "
                        "scalars")

    p = sub.add_parser("verify", parents=[common],
                       help="run verification suites")
    p.add_argument("--group", required=True)
    p.add_argument("--suite", choices=("all",) + SUITE_ORDER, default="all")
    p.add_argument("--scalar", choices=SCALAR_CHOICES, default="qnn")

    p = sub.add_parser("action-check", parents=[common],
                       help="check the axioms of an ingested partial action")
    p.add_argument("--file", required=True, help="JSON document to check")
    p.add_argument("--group", default=None,
                   help="group spec overriding the document's own")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except GroupSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupTableError, GroupOrderBoundError, PartialActionFormatError,
            OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
