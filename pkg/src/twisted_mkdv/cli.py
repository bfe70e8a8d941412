"""Command-line front end.

Exit codes: 0 ok, 1 usage or file-format error, 2 mathematical precondition
violated, 3 identity falsified.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from typing import Sequence

from .dressing import a1_vs_a2_flow, flow_forms_agree, verify_tangency_many
from .errors import (
    CenterGapError,
    DegreeError,
    DomainError,
    FormatError,
    NotFertileError,
    NotGenericError,
    PoleError,
    SingularityError,
)
from .generation import generate, is_degree_increasing, is_generic
from .loop import AlgebraDims, has_center
from .miura import family_oper, tangent_space_check
from .pdo import kdv_vector, miura_map, miura_tangent
from .serialize import (
    SCHEMA_VERSION,
    dumps,
    load_object,
    loads,
    oper_to_json,
    rat_to_str,
    ratfn_to_json,
    tuple_to_json,
)

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_FALSIFIED = 0, 1, 2, 3

MATH_ERRORS = (DegreeError, NotFertileError, NotGenericError, DomainError, PoleError, SingularityError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- parsing helpers

def parse_int_list(text: str) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from exc


def parse_rat_list(text: str) -> tuple[Fraction, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"expected a comma-separated list of rationals, got {text!r}") from exc


def sample_parameters(m: int, seed: int) -> tuple[Fraction, ...]:
    """Seeded rational parameters with small numerators and denominators."""
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(m))


def _resolve_inputs(args) -> tuple[int, tuple, tuple]:
    n = args.n
    if n < 2:
        raise UsageError("rank -n must be >= 2")
    J = parse_int_list(args.J)
    if any(not 0 <= j <= n for j in J):
        raise UsageError(f"directions in -J must lie in 0..{n}")
    if args.c is not None:
        c = parse_rat_list(args.c)
    elif args.seed is not None:
        c = sample_parameters(len(J), args.seed)
    else:
        raise UsageError("give parameters with -c or a --seed to sample them")
    if len(c) != len(J):
        raise UsageError(f"-J has {len(J)} entries but -c has {len(c)}")
    return n, J, c


def _inputs_json(args, n, J, c, **extra) -> dict:
    out = {"n": n, "J": list(J), "c": [rat_to_str(q) for q in c], "seed": args.seed}
    out.update(extra)
    return out


def _report(command: str, inputs: dict, outputs: dict, status: str) -> dict:
    return {
        "type": "report",
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "status": status,
    }


# ---------------------------------------------------------------- commands

def cmd_generate(args) -> tuple[dict, int]:
    n, J, c = _resolve_inputs(args)
    ok, k = is_degree_increasing(J, n)
    if not ok:
        raise DegreeError(f"J = {J} is not degree increasing")
    gen = generate(J, c, n)
    outputs = {
        "tuple": tuple_to_json(gen.y),
        "degrees": list(gen.degrees),
        "eps": [rat_to_str(e) for e in gen.eps],
        "generic": is_generic(gen.y),
    }
    return _report("generate", _inputs_json(args, n, J, c), outputs, "ok"), EXIT_OK


def _kdv_checks(v, flow, r: int) -> bool:
    N = len(v)
    for i in range(N):
        if not miura_tangent(v, flow, i).same_as(kdv_vector(miura_map(v, i), r)):
            return False
    return True


def cmd_verify(args) -> tuple[dict, int]:
    n, J, c = _resolve_inputs(args)
    rs = parse_int_list(args.r)
    if not rs:
        raise UsageError("verify needs at least one flow index -r")
    dims = AlgebraDims(n)
    for r in rs:
        if r <= 0 or not has_center(r, dims, "A2"):
            raise UsageError(f"r = {r} is not an admissible flow index for n = {n}")
    ok, _ = is_degree_increasing(J, n)
    if not ok:
        raise DegreeError(f"J = {J} is not degree increasing")
    fam = family_oper(J, c, n)
    reports = verify_tangency_many(J, c, rs, n, args.depth)
    m = len(J)
    per_r = []
    status = "ok"
    for rep in reports:
        r = rep.r
        checks = {
            "tangency": rep.ok,
            "flow_in_tangent_space": tangent_space_check(rep.flow),
            "flow_forms_agree": flow_forms_agree(fam.oper, r),
            "a1_equals_a2": a1_vs_a2_flow(fam.oper, r),
        }
        if r > 4 * m:
            checks["flow_vanishes_beyond_4m"] = rep.flow_is_zero
        if not args.skip_kdv:
            checks["kdv_compatible"] = _kdv_checks(fam.oper.v, rep.flow, r)
        if not all(checks.values()):
            status = "falsified"
        per_r.append({
            "r": r,
            "gamma": None if rep.gamma is None else [rat_to_str(g) for g in rep.gamma],
            "flow": [ratfn_to_json(f) for f in rep.flow],
            "flow_is_zero": rep.flow_is_zero,
            "residual_is_zero": all(f.is_zero() for f in rep.residual),
            "checks": checks,
        })
    outputs = {"tuple": tuple_to_json(fam.y), "oper": oper_to_json(fam.oper), "flows": per_r}
    inputs = _inputs_json(args, n, J, c, r=list(rs), depth=args.depth)
    code = EXIT_OK if status == "ok" else EXIT_FALSIFIED
    return _report("verify", inputs, outputs, status), code


def cmd_export(args) -> tuple[dict, int]:
    n, J, c = _resolve_inputs(args)
    ok, _ = is_degree_increasing(J, n)
    if not ok:
        raise DegreeError(f"J = {J} is not degree increasing")
    fam = family_oper(J, c, n)
    if args.what == "tuple":
        return tuple_to_json(fam.y), EXIT_OK
    if args.what == "oper":
        return oper_to_json(fam.oper), EXIT_OK
    outputs = {"tuple": tuple_to_json(fam.y), "oper": oper_to_json(fam.oper)}
    return _report("export", _inputs_json(args, n, J, c), outputs, "ok"), EXIT_OK


def cmd_import(args) -> tuple[dict, int]:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {args.path}: {exc.strerror}") from exc
    doc = loads(text)
    obj = load_object(text)
    outputs = {"document": doc}
    if doc["type"] == "tuple":
        outputs["degrees"] = list(obj.degrees)
    return _report("import", {"path": args.path}, outputs, "ok"), EXIT_OK


# ---------------------------------------------------------------- rendering

def render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            val = doc[key]
            if isinstance(val, (dict, list)) and val and not _is_flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_flat(val)}")
    elif isinstance(doc, list):
        for val in doc:
            if isinstance(val, (dict, list)) and val and not _is_flat(val):
                lines.append(f"{pad}-")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {_flat(val)}")
    else:
        lines.append(f"{pad}{_flat(doc)}")
    return "\n".join(lines)


def _is_flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) for x in val)


def _flat(val) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(_flat(x) for x in val) + "]"
    if val is None:
        return "null"
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twisted-mkdv", description="Exact verification of twisted mKdV flows on critical-point cells.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, needs_inputs=True):
        if needs_inputs:
            sp.add_argument("-n", type=int, required=True, help="rank n >= 2")
            sp.add_argument("-J", default="", help="comma-separated directions, e.g. 2,1")
            sp.add_argument("-c", default=None, help="comma-separated rational parameters, e.g. 0,5/2")
            sp.add_argument("--seed", type=int, default=None, help="sample parameters from this seed when -c is absent")
        sp.add_argument("--out", default=None, help="write the report to this path instead of stdout")
        sp.add_argument("--format", choices=("text", "structured"), default="structured")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time (makes output nondeterministic)")

    g = sub.add_parser("generate", help="generate the tuple of a cell")
    common(g)
    v = sub.add_parser("verify", help="verify flows, tangency and compatibility identities")
    common(v)
    v.add_argument("-r", default="", help="comma-separated flow indices")
    v.add_argument("--depth", type=int, default=None, help="dressing depth override (default: largest r)")
    v.add_argument("--skip-kdv", action="store_true", help="omit the Miura/KdV compatibility check")
    e = sub.add_parser("export", help="write a tuple, oper or report document")
    common(e)
    e.add_argument("--what", choices=("report", "tuple", "oper"), default="report")
    i = sub.add_parser("import", help="validate and echo a document")
    i.add_argument("path")
    common(i, needs_inputs=False)
    return p


COMMANDS = {"generate": cmd_generate, "verify": cmd_verify, "export": cmd_export, "import": cmd_import}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        doc, code = COMMANDS[args.command](args)
    except (UsageError, FormatError, CenterGapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MATH_ERRORS as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_MATH
    if args.timing and doc.get("type") == "report":
        doc = dict(doc, timing_seconds=round(time.perf_counter() - start, 3))
    text = dumps(doc) if args.format == "structured" else render_text(doc) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
