"""Batch front end. Every command prints a versioned report envelope.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
3 only inconclusive checks besides passes.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from .cyclotomic import DEFAULT_DPS
from .hewett import (
    Check,
    build_dprime,
    classify,
    invariant_profile,
    realizability_condition,
    verify_embedding,
)
from .involution import (
    InvolutedAlgebra,
    dagger,
    gu_reference_invariants,
    is_unitary,
    norm_xi_check,
    positivity_report,
    reduced_trace,
)
from .crossed import matrix_trace, regular_rep

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
CLASSIFY_CAPS = {"p_max": 200, "m_max": 6, "alpha_max": 8}


@dataclass
class ReportEnvelope:
    command: str
    parameters: dict
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return EXIT_FAIL
        if "inconclusive" in statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_PASS

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "checks": [c.to_json() for c in self.checks],
        }


class UsageError(Exception):
    pass


# -- commands --------------------------------------------------------------------


def cmd_classify(p_max: int, m_max: int, alpha_max: int) -> ReportEnvelope:
    for name, value in (("p_max", p_max), ("m_max", m_max), ("alpha_max", alpha_max)):
        if not 1 <= value <= CLASSIFY_CAPS[name]:
            raise UsageError(f"{name} must lie in [1, {CLASSIFY_CAPS[name]}]")
    env = ReportEnvelope("classify", {"p_max": p_max, "m_max": m_max, "alpha_max": alpha_max})
    rows = classify(p_max, m_max, alpha_max)
    env.results = {"rows": [r.to_json() for r in rows]}
    odd = [r for r in rows if r.p != 2]
    consistent = all(r.condition_holds == realizability_condition(r.p, r.m) for r in odd)
    env.checks.append(Check.of("condition recomputed row by row", consistent))
    seen = set()
    for r in odd:
        if r.discrepancy and (r.p, r.m) not in seen:
            seen.add((r.p, r.m))
            env.checks.append(Check(f"discrepancy p={r.p} m={r.m}", "inconclusive", r.note))
    return env


def cmd_verify(p: int, m: int, alpha: int, seed: int, precision: int, samples: int) -> ReportEnvelope:
    env = ReportEnvelope(
        "verify", {"p": p, "m": m, "alpha": alpha, "seed": seed, "precision": precision, "samples": samples}
    )
    try:
        D = build_dprime(p, m, alpha)
    except ValueError as exc:
        env.checks.append(Check("build D'", "fail", f"unsupported configuration: {exc}"))
        return env
    env.results["algebra"] = D.to_json()
    try:
        env.results["realizability_condition"] = realizability_condition(p, m)
    except ValueError:
        pass

    report = verify_embedding(p, m, alpha, seed=seed)
    env.results["embedding"] = report.to_json()
    env.checks.extend(report.checks)

    A = InvolutedAlgebra(D)
    B = D.algebra
    rng = random.Random(seed)
    pairs = [(B.random_element(rng), B.random_element(rng)) for _ in range(samples)]
    env.checks.append(
        Check.of(
            "dagger is an involution",
            all(dagger(dagger(x, A), A) == x for x, _ in pairs),
            f"{samples} samples",
        )
    )
    env.checks.append(
        Check.of(
            "dagger is additive and reverses products",
            all(
                dagger(x + y, A) == dagger(x, A) + dagger(y, A)
                and dagger(x * y, A) == dagger(y, A) * dagger(x, A)
                for x, y in pairs
            ),
            f"{samples} pairs",
        )
    )
    env.checks.append(
        Check.of(
            "reduced trace equals matrix trace",
            all(reduced_trace(x, A) == matrix_trace(regular_rep(x, B)) for x, _ in pairs),
        )
    )
    if report.subgroup is not None:
        bad = sum(1 for g in report.subgroup.elements if not is_unitary(g, A))
        env.checks.append(
            Check.of("embedded group is unitary", bad == 0, f"{report.subgroup.order} elements, {bad} not unitary")
        )
    verdicts = {"positive": 0, "negative": 0, "inconclusive": 0}
    identity_ok = True
    for x, _ in pairs:
        if x.is_zero():
            continue
        r = positivity_report(x, A, precision)
        verdicts[r.verdict] += 1
        identity_ok &= r.identity_holds
    env.checks.append(Check.of("trace identity for x x^dagger", identity_ok))
    status = "fail" if verdicts["negative"] else ("inconclusive" if verdicts["inconclusive"] else "pass")
    env.checks.append(Check("positivity", status, json.dumps(verdicts, sort_keys=True)))
    return env


def cmd_profile(p: int, m: int, alpha: int) -> ReportEnvelope:
    env = ReportEnvelope("profile", {"p": p, "m": m, "alpha": alpha})
    try:
        prof = invariant_profile(p, m, alpha)
    except ValueError as exc:
        env.checks.append(Check("profile", "fail", str(exc)))
        return env
    env.results = prof.to_json()
    n = prof.degree
    env.checks.append(Check.of("invariants sum to 0", prof.total().is_zero()))
    env.checks.append(
        Check.of("denominators divide n", all(n % pl.inv.denominator == 0 for pl in prof.places), f"n = {n}")
    )
    return env


def cmd_hermitian(p: int) -> ReportEnvelope:
    if p not in (3, 5, 7):
        raise UsageError("hermitian needs p in {3, 5, 7}")
    env = ReportEnvelope("hermitian", {"p": p})
    gu = gu_reference_invariants(p)
    env.results["gu"] = gu.to_json()
    half = gu.n // 2
    finite = [pl for pl in gu.places if not pl.place.is_archimedean]
    for pl in finite:
        expected = half - 1 if (p == 5 and pl.place.prime == 2) else half
        env.checks.append(
            Check.of(f"Witt index at {pl.place}", pl.witt_index == expected, f"{pl.witt_index} ({pl.kind})")
        )
    if p == 5:
        res = norm_xi_check(5)
        env.results["norm_xi"] = res.to_json()
        env.checks.append(Check.of("norm of xi", res.ok, f"{res.value}"))
        env.checks.append(
            Check.of("norm class of xi at 2", res.norm_class_at_2.value == "nontrivial", res.norm_class_at_2.value)
        )
    return env


# -- output ------------------------------------------------------------------------


def _table(rows: list[list[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def render_text(env: ReportEnvelope) -> str:
    out = [f"{env.command} " + " ".join(f"{k}={v}" for k, v in env.parameters.items())]
    res = env.results
    if env.command == "classify":
        rows = [["p", "m", "alpha", "r", "condition", "verdict", "note"]]
        for r in res["rows"]:
            rows.append([r["p"], r["m"] or "-", r["alpha"] or "-", r.get("r", "-"), r["condition"], r["verdict"], r["note"]])
        out.append(_table(rows))
    elif env.command == "profile" and "places" in res:
        rows = [["t", "conjugate", "inv"]]
        rows += [[pl["t"], pl["conjugate"], pl["inv"]] for pl in res["places"]]
        out.append(_table(rows))
    elif env.command == "hermitian":
        rows = [["place", "kind", "disc class", "witt index", "note"]]
        for pl in res["gu"]["places"]:
            rows.append([pl["place"], pl["kind"], pl["disc_class"] or "-", pl["witt_index"], pl["note"]])
        out.append(_table(rows))
        if "norm_xi" in res:
            out.append(f"norm of xi: {res['norm_xi']['value']} ({res['norm_xi']['norm_class_at_2']} at 2)")
    elif env.command == "verify" and "embedding" in res:
        emb = res["embedding"]
        out.append(f"t = {emb['t']}, subgroup order {emb['subgroup_order']}")
    if env.checks:
        out.append("")
        out.append(_table([["check", "status", "detail"]] + [[c.name, c.status, c.detail] for c in env.checks]))
    return "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="decimal digits")

    parser = argparse.ArgumentParser(prog="hewettalg", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="realizability table")
    c.add_argument("--p-max", type=int, default=100)
    c.add_argument("--m-max", type=int, default=6)
    c.add_argument("--alpha-max", type=int, default=4)

    v = sub.add_parser("verify", parents=[common], help="embedding and involution suite")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--alpha", type=int, default=1)
    v.add_argument("--samples", type=int, default=20, help="random elements per property")

    pr = sub.add_parser("profile", parents=[common], help="invariant profile")
    pr.add_argument("--p", type=int, required=True)
    pr.add_argument("--m", type=int, default=1)
    pr.add_argument("--alpha", type=int, default=1)

    h = sub.add_parser("hermitian", parents=[common], help="discriminants and Witt indices")
    h.add_argument("--p", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    fmt = getattr(args, "format", "json")
    seed = getattr(args, "seed", 0)
    precision = getattr(args, "precision", DEFAULT_DPS)
    try:
        if precision < 5:
            raise UsageError("precision must be at least 5 digits")
        if args.command == "classify":
            env = cmd_classify(args.p_max, args.m_max, args.alpha_max)
        elif args.command == "verify":
            if args.samples < 0:
                raise UsageError("samples must be non-negative")
            env = cmd_verify(args.p, args.m, args.alpha, seed, precision, args.samples)
        elif args.command == "profile":
            env = cmd_profile(args.p, args.m, args.alpha)
        else:
            env = cmd_hermitian(args.p)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if fmt == "json":
        sys.stdout.write(json.dumps(env.to_json(), indent=2) + "\n")
    else:
        sys.stdout.write(render_text(env))
    return env.exit_code()


if __name__ == "__main__":
    sys.exit(main())
