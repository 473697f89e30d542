"""File-based front end: load solution documents, run analyses, emit reports.

Document format (JSON): ``{"n": 2, "r": [[[2,2],[1,2]],[[2,1],[1,1]]]}`` or
``{"n": 4, "permutation": {"f": [2,1,4,3], "g": [2,1,3,4]}}``, optionally with
a ``"name"``.  Tables are 1-based, row x, column y, r(x,y) = [k, l].

Exit codes: 0 success, 2 semantic refusal (not a solution, unmet
precondition, budget), 1 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .core import (
    EnumerationBudgetError,
    QuadraticSet,
    check_ybe,
    enumerate_quadratic_sets,
    permutation_solution,
    profile,
)
from .exactalg import CycNum
from .lie import (
    derived_series,
    is_abelian,
    killing,
    lie_closure,
    lie_generators,
    semisimplicity_report,
    theorem_check,
)
from .linearize import check_operator_identities
from .qtwist import NotCommuting, RetractionNotTrivial, q_matrix, quadratic_relations
from .retract import (
    IllDefinedRetraction,
    class_map,
    is_retraction_trivial,
    mpl,
    retract,
    retraction_permutation_maps,
    tower,
)


class ParseError(Exception):
    """Malformed document; the message names the offending field and index."""


def _require_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what}: expected an integer, got {value!r}")
    return value


def parse_document(data) -> tuple:
    """Validate a decoded document; returns (QuadraticSet, name)."""
    if not isinstance(data, dict):
        raise ParseError("document root must be a JSON object")
    if "n" not in data:
        raise ParseError("field 'n': missing")
    n = _require_int(data["n"], "field 'n'")
    if n < 1:
        raise ParseError(f"field 'n': must be positive, got {n}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("field 'name': must be a string")
    has_r = "r" in data
    has_perm = "permutation" in data
    if has_r == has_perm:
        raise ParseError("exactly one of 'r' or 'permutation' is required")
    if has_r:
        rows = data["r"]
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"field 'r': expected {n} rows")
        table = []
        for x, row in enumerate(rows, start=1):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"field 'r', row {x}: expected {n} entries")
            out_row = []
            for y, entry in enumerate(row, start=1):
                if (
                    not isinstance(entry, list)
                    or len(entry) != 2
                    or any(isinstance(v, bool) or not isinstance(v, int) for v in entry)
                ):
                    raise ParseError(
                        f"field 'r', row {x}, column {y}: expected a pair of integers"
                    )
                a, b = entry
                if not (1 <= a <= n and 1 <= b <= n):
                    raise ParseError(
                        f"field 'r', row {x}, column {y}: entry [{a}, {b}] "
                        f"out of range 1..{n}"
                    )
                out_row.append((a, b))
            table.append(out_row)
        return QuadraticSet(n, table), name
    perm = data["permutation"]
    if not isinstance(perm, dict):
        raise ParseError("field 'permutation': must be an object with 'f' and 'g'")
    maps = {}
    for key in ("f", "g"):
        if key not in perm:
            raise ParseError(f"field 'permutation.{key}': missing")
        images = perm[key]
        if not isinstance(images, list) or len(images) != n:
            raise ParseError(
                f"field 'permutation.{key}': expected an image list of length {n}"
            )
        for i, v in enumerate(images, start=1):
            _require_int(v, f"field 'permutation.{key}', position {i}")
            if not (1 <= v <= n):
                raise ParseError(
                    f"field 'permutation.{key}', position {i}: value {v} "
                    f"out of range 1..{n}"
                )
        if sorted(images) != list(range(1, n + 1)):
            raise ParseError(f"field 'permutation.{key}': not a permutation of 1..{n}")
        maps[key] = tuple(images)
    return permutation_solution(maps["f"], maps["g"]), name


def load_document(path: str) -> tuple:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return parse_document(data)


def dump_document(q: QuadraticSet, name=None) -> dict:
    doc = {
        "n": q.n,
        "r": [[[a, b] for a, b in row] for row in q.rtable],
    }
    if name is not None:
        doc["name"] = name
    return doc


def _render(value) -> str:
    if isinstance(value, CycNum):
        return value.render()
    if isinstance(value, (int, Fraction)):
        return str(value)
    return str(value)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(records, lines, json_lines: bool, out):
    if json_lines:
        for record in records:
            print(json.dumps(record, sort_keys=True), file=out)
    else:
        for line in lines:
            print(line, file=out)


def cmd_verify(q, name, json_lines, out) -> int:
    prof = profile(q)
    identities = check_operator_identities(q)
    record = {
        "kind": "verify",
        "name": name,
        "n": q.n,
        "solution": prof.is_solution,
        "bijective": prof.is_bijective,
        "nondegenerate": prof.is_nondegenerate,
        "involutive": prof.is_involutive,
        "squarefree": prof.is_squarefree,
        "operator_identities": identities,
        "lemma_agreement": identities == prof.is_solution,
    }
    lines = [
        f"n: {q.n}" if name is None else f"name: {name}",
        f"solution: {_yesno(prof.is_solution)}",
        f"bijective: {_yesno(prof.is_bijective)}",
        f"non-degenerate: {_yesno(prof.is_nondegenerate)}",
        f"involutive: {_yesno(prof.is_involutive)}",
        f"square-free: {_yesno(prof.is_squarefree)}",
        f"operator identities: {_yesno(identities)}",
        f"lemma agreement: {_yesno(record['lemma_agreement'])}",
    ]
    if name is not None:
        lines.insert(1, f"n: {q.n}")
    _emit([record], lines, json_lines, out)
    return 0 if prof.is_solution else 2


def cmd_retract(q, name, show_tower, max_depth, json_lines, out) -> int:
    if not check_ybe(q):
        print("error: input is not a solution", file=sys.stderr)
        return 2
    cm = class_map(q)
    t = tower(q, max_depth=max_depth)
    level = mpl(q)
    rq = retract(q)
    trivial = is_retraction_trivial(q)
    perm_maps = retraction_permutation_maps(q)
    record = {
        "kind": "retract",
        "name": name,
        "n": q.n,
        "classes": [list(cm.members(c)) for c in range(1, cm.k + 1)],
        "retraction": [[list(pair) for pair in row] for row in rq.rtable],
        "tower_sizes": list(t.sizes()),
        "stabilized": t.stabilized,
        "mpl": level,
        "retraction_trivial": trivial,
        "permutation_maps": (
            None if perm_maps is None else {"f": list(perm_maps[0]), "g": list(perm_maps[1])}
        ),
    }
    lines = [
        f"classes: {[list(cm.members(c)) for c in range(1, cm.k + 1)]}",
        f"retraction table: {[[list(p) for p in row] for row in rq.rtable]}",
        f"tower: {list(t.sizes())}",
        f"mpl: {'none' if level is None else level}",
        f"retraction trivial: {_yesno(trivial)}",
    ]
    if show_tower:
        for depth, lvl in enumerate(t.levels):
            lines.append(
                f"level {depth}: n={lvl.n} "
                f"table={[[list(p) for p in row] for row in lvl.rtable]}"
            )
        record["tower_tables"] = [
            [[list(pair) for pair in row] for row in lvl.rtable] for lvl in t.levels
        ]
    _emit([record], lines, json_lines, out)
    return 0


def cmd_qmatrix(q, name, json_lines, out) -> int:
    tw = q_matrix(q)
    relations = quadratic_relations(tw, profile(q).is_involutive)
    record = {
        "kind": "qmatrix",
        "name": name,
        "n": q.n,
        "modulus": tw.modulus,
        "basis": [[_render(v) for v in vec] for vec in tw.basis],
        "qmatrix": [[_render(v) for v in row] for row in tw.qmatrix],
        "class_of": list(tw.class_of),
        "zero_squares": list(relations.zero_squares),
        "zero_products": [list(p) for p in relations.zero_products],
    }
    lines = [f"modulus: {tw.modulus}"]
    for i, vec in enumerate(tw.basis, start=1):
        coords = ", ".join(_render(v) for v in vec)
        lines.append(f"v{i} = ({coords})")
    lines.append("qmatrix:")
    for row in tw.qmatrix:
        lines.append("  [" + ", ".join(_render(v) for v in row) + "]")
    lines.append(f"zero squares: {list(relations.zero_squares)}")
    lines.append(f"zero products: {[list(p) for p in relations.zero_products]}")
    _emit([record], lines, json_lines, out)
    return 0


def cmd_lie(q, name, json_lines, out) -> int:
    if not check_ybe(q):
        print("error: input is not a solution", file=sys.stderr)
        return 2
    g = lie_closure(lie_generators(q))
    series = derived_series(g)
    kd = killing(g)
    abelian = is_abelian(g)
    record = {
        "kind": "lie",
        "name": name,
        "n": q.n,
        "dim_g": g.dim,
        "abelian": abelian,
        "derived_dims": [term.dim for term in series],
        "killing_determinant": str(kd.determinant),
        "killing_nondegenerate": kd.nondegenerate,
    }
    lines = [
        f"dim g: {g.dim}",
        f"abelian: {_yesno(abelian)}",
        f"derived dims: {[term.dim for term in series]}",
        f"killing det: {kd.determinant}",
    ]
    if profile(q).is_nondegenerate:
        report = semisimplicity_report(q)
        checks = theorem_check(q)
        record.update(
            {
                "dim_derived": report.dim_derived,
                "derived_trivial": report.derived_trivial,
                "derived_is_semisimple": report.derived_is_semisimple,
                "rank_estimate": report.rank_estimate,
                "type_a_candidate": (
                    None
                    if report.type_a_candidate is None
                    else list(report.type_a_candidate)
                ),
                "theorem": {"a": checks.a, "b": checks.b, "c": checks.c},
            }
        )
        semis = (
            "trivially (derived algebra is zero)"
            if report.derived_trivial
            else _yesno(report.derived_is_semisimple)
        )
        lines.append(f"derived semisimple: {semis}")
        lines.append(f"rank estimate: {report.rank_estimate}")
        lines.append(f"type A candidate: {record['type_a_candidate']}")
        lines.append(
            "theorem: "
            f"a={_yesno(checks.a)} b={_yesno(checks.b)} c={_yesno(checks.c)}"
        )
    else:
        lines.append("semisimplicity report: skipped (degenerate solution)")
    _emit([record], lines, json_lines, out)
    return 0


def cmd_enumerate(n, filters, json_lines, out) -> int:
    for idx, q in enumerate(enumerate_quadratic_sets(n, filters), start=1):
        print(json.dumps(dump_document(q), sort_keys=True), file=out)
    return 0


def experiment_rows(n: int, filters=frozenset()):
    """Report rows for the sweep over non-degenerate solutions of size n."""
    wanted = frozenset(filters) | {"solution", "nondegenerate"}
    rows = []
    for q in enumerate_quadratic_sets(n, wanted):
        prof = profile(q)
        report = semisimplicity_report(q)
        checks = theorem_check(q)
        rows.append(
            {
                "kind": "experiment",
                "n": n,
                "rtable": list(q.flat()),
                "involutive": prof.is_involutive,
                "squarefree": prof.is_squarefree,
                "retraction_trivial": is_retraction_trivial(q),
                "dim_g": report.dim_g,
                "dim_derived": report.dim_derived,
                "derived_trivial": report.derived_trivial,
                "derived_is_semisimple": report.derived_is_semisimple,
                "rank_estimate": report.rank_estimate,
                "type_a_candidate": (
                    None
                    if report.type_a_candidate is None
                    else list(report.type_a_candidate)
                ),
                "theorem_agreement": checks.a == checks.b == checks.c,
            }
        )
    return rows


def cmd_experiment(n, filters, force, json_lines, out) -> int:
    if n > 4 and not force:
        print(
            f"error: experiment budget is n <= 4 (got n={n}); pass --force to try",
            file=sys.stderr,
        )
        return 2
    rows = experiment_rows(n, filters)
    if json_lines:
        for row in rows:
            print(json.dumps(row, sort_keys=True), file=out)
    else:
        for row in rows:
            print(
                f"rtable={''.join(str(v) for v in row['rtable'])} "
                f"involutive={_yesno(row['involutive'])} "
                f"trivial_ret={_yesno(row['retraction_trivial'])} "
                f"dim_g={row['dim_g']} dim_derived={row['dim_derived']} "
                f"semisimple={_yesno(row['derived_is_semisimple'])}"
                f"{' (trivially)' if row['derived_trivial'] else ''} "
                f"type_A={row['type_a_candidate']} "
                f"theorem={_yesno(row['theorem_agreement'])}",
                file=out,
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybkit",
        description="Exact invariants of finite set-theoretic Yang-Baxter solutions.",
    )
    parser.add_argument(
        "--json-lines",
        action="store_true",
        help="emit machine-readable JSON records, one per line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="profile flags and operator-identity check")
    p.add_argument("path")

    p = sub.add_parser("retract", help="class partition, tower, mpl")
    p.add_argument("path")
    p.add_argument("--tower", action="store_true", help="print every tower level")
    p.add_argument("--max-depth", type=int, default=None)

    p = sub.add_parser("qmatrix", help="joint eigenbasis and twist matrix")
    p.add_argument("path")

    p = sub.add_parser("lie", help="Lie algebra invariants and theorem check")
    p.add_argument("path")

    p = sub.add_parser("enumerate", help="stream solution documents")
    p.add_argument("n", type=int)
    p.add_argument("--filter", action="append", default=[], metavar="NAME")

    p = sub.add_parser("experiment", help="semisimplicity sweep report")
    p.add_argument("n", type=int)
    p.add_argument("--filter", action="append", default=[], metavar="NAME")
    p.add_argument("--force", action="store_true")
    return parser


def _parse_filters(raw) -> frozenset:
    names = set()
    for item in raw:
        names.update(part.strip() for part in item.split(",") if part.strip())
    return frozenset(names)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify":
            q, name = load_document(args.path)
            return cmd_verify(q, name, args.json_lines, out)
        if args.command == "retract":
            q, name = load_document(args.path)
            return cmd_retract(
                q, name, args.tower, args.max_depth, args.json_lines, out
            )
        if args.command == "qmatrix":
            q, name = load_document(args.path)
            return cmd_qmatrix(q, name, args.json_lines, out)
        if args.command == "lie":
            q, name = load_document(args.path)
            return cmd_lie(q, name, args.json_lines, out)
        if args.command == "enumerate":
            return cmd_enumerate(args.n, _parse_filters(args.filter), args.json_lines, out)
        if args.command == "experiment":
            return cmd_experiment(
                args.n, _parse_filters(args.filter), args.force, args.json_lines, out
            )
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IllDefinedRetraction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RetractionNotTrivial as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotCommuting as exc:
        print(f"error: operators do not commute: {exc}", file=sys.stderr)
        return 2
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
