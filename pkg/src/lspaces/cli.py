"""Command line front end.

Exit codes: 0 on success, 2 for unreadable input, 3 for a violated
precondition, 4 for a failed internal cross-check.  All output is
byte-deterministic given the input files, flags and seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from random import Random

from . import bialgebra, f2sympl, formats, homomap, matrixops, ribbon
from .errors import InternalCheckError, ParseError, PreconditionError


def _read(path: str) -> str:
    return Path(path).read_text()


def _bits(mask: int, n: int, offset: int) -> str:
    return "".join("1" if (mask >> (offset + i)) & 1 else "0" for i in range(n))


def _print_lspace(L) -> None:
    print(f"lspace n={L.n}")
    for r in L.rows:
        print(_bits(r, L.n, 0) + "|" + _bits(r, L.n, L.n))


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(f) for f in text.split(",") if f.strip()]
    except ValueError:
        raise PreconditionError(f"expected a comma separated list of integers, got {text!r}")


def cmd_info(args) -> int:
    G = formats.parse_ribbon(_read(args.file))
    verdict = "orientable" if ribbon.is_orientable(G) else "non-orientable"
    print(f"edges {G.n}")
    print(
        f"vertices {ribbon.vertex_count(G)}, boundary {ribbon.boundary_count(G)}, "
        f"chi {ribbon.euler_characteristic(G)}, {verdict}"
    )
    arcs = ribbon.arcs_sorted(G)
    print(f"arcs {len(arcs)}")
    for k, (p, q) in enumerate(arcs, start=1):
        print(f"  {k}: {ribbon.format_corner(p)} {ribbon.format_corner(q)}")
    return 0


def cmd_lspace(args) -> int:
    G = formats.parse_ribbon(_read(args.file))
    _print_lspace(homomap.lspace(G))
    return 0


def cmd_dual(args) -> int:
    G = formats.parse_ribbon(_read(args.file))
    H = ribbon.partial_dual(G, _parse_int_list(args.edges))
    sys.stdout.write(formats.serialize_ribbon(H))
    return 0


def cmd_vmove(args) -> int:
    G = formats.parse_ribbon(_read(args.file))
    arcs = ribbon.arcs_sorted(G)
    if not 1 <= args.arc <= len(arcs):
        raise PreconditionError(f"arc {args.arc} out of range 1..{len(arcs)}")
    arc = arcs[args.arc - 1]
    if args.kind == 1:
        if args.fixed is not None:
            raise PreconditionError("--fixed only applies to kind 2")
        H = ribbon.vassiliev1(G, arc)
        image = ribbon.v1_image_arc(G, arc)
    else:
        if args.fixed is None:
            raise PreconditionError("kind 2 needs --fixed <edge>")
        H = ribbon.vassiliev2(G, arc, args.fixed)
        image = ribbon.v2_image_arc(G, arc, args.fixed)
    sys.stdout.write(formats.serialize_ribbon(H))
    print(f"# image arc {ribbon.arcs_sorted(H).index(image) + 1}")
    return 0


def cmd_intmatrix(args) -> int:
    G = formats.parse_ribbon(_read(args.file))
    sys.stdout.write(formats.serialize_graph(homomap.intersection_matrix(G)))
    return 0


def cmd_interlace(args) -> int:
    M = formats.parse_graph(_read(args.file))
    print(matrixops.interlace_polynomial(M))
    return 0


def cmd_lgr(args) -> int:
    if args.grade < 0:
        raise PreconditionError("grade must be nonnegative")
    if args.orbits:
        print(bialgebra.grade_dimension(args.grade))
    elif args.grade <= 5:
        print(len(f2sympl.all_lagrangians(args.grade)))
    else:
        print(sum(1 for _ in f2sympl.enumerate_lagrangians(args.grade)))
    return 0


def cmd_dims(args) -> int:
    table = [("grade", "lagrangians", "orbits", "burnside", "rank", "dimK")]
    for g in range(args.max + 1):
        direct = bialgebra.grade_dimension(g)
        rank = bialgebra.relation_rank(g, threads=args.threads)
        table.append(
            (
                str(g),
                str(len(f2sympl.all_lagrangians(g))),
                str(direct),
                str(bialgebra.burnside_count(g)),
                str(rank),
                str(direct - rank),
            )
        )
    widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    if args.realized:
        for g in range(1, args.max + 1):
            rng = Random(args.seed)
            classes = []
            for _ in range(args.realized):
                G = ribbon.from_rotation(ribbon.random_rotation(g, rng))
                classes.append(bialgebra.canonicalize(homomap.lspace(G)))
            got = bialgebra.realized_rank(g, classes, threads=args.threads)
            print(f"realized grade {g}: rank {got} of {bialgebra.quotient_dimension(g)}")
    return 0


# --- seeded self-checks ------------------------------------------------------


def _fail(message: str, G=None, note: str | None = None):
    parts = [message]
    if G is not None:
        parts.append("reproduce with this file:")
        parts.append(formats.serialize_ribbon(G).rstrip("\n"))
    if note:
        parts.append(note)
    raise InternalCheckError("\n".join(parts))


def _random_graph(rng: Random, n: int):
    G = ribbon.from_rotation(ribbon.random_rotation(n, rng))
    if rng.random() < 0.5:
        G = ribbon.partial_dual(G, [e for e in range(1, n + 1) if rng.random() < 0.5])
    return G


def _check_round_trip(rng: Random, count: int) -> str:
    for trial in range(count):
        n = 1 + trial % 6
        G = ribbon.from_rotation(ribbon.random_rotation(n, rng))
        if ribbon.from_rotation(ribbon.to_rotation(G)) != G:
            _fail("rotation round trip changed the graph", G)
        H = _random_graph(rng, n)
        H2 = ribbon.from_rotation(ribbon.to_rotation(H))
        facts = (ribbon.vertex_count, ribbon.boundary_count, ribbon.is_orientable, homomap.lspace)
        if any(f(H2) != f(H) for f in facts):
            _fail("relabelling changed an invariant", H)
    return f"{2 * count} graphs"


def _check_duality(rng: Random, count: int) -> str:
    for trial in range(count):
        n = 1 + trial % 6
        G = _random_graph(rng, n)
        a = {e for e in range(1, n + 1) if rng.random() < 0.5}
        b = {e for e in range(1, n + 1) if rng.random() < 0.5}
        lhs = ribbon.partial_dual(ribbon.partial_dual(G, a), b)
        if lhs != ribbon.partial_dual(G, a.symmetric_difference(b)):
            _fail(
                "duals do not compose by symmetric difference",
                G,
                f"subsets {sorted(a)} then {sorted(b)}",
            )
    return f"{count} graphs"


def _check_squares(rng: Random, count: int) -> str:
    done = 0
    size = 0
    while done < count:
        size += 1
        n = 2 + size % 5
        G = _random_graph(rng, n)
        candidates = [
            (p, q)
            for p, q in ribbon.arcs_sorted(G)
            if p >> 2 != q >> 2 and G.attach[p] != q
        ]
        if not candidates:
            continue
        arc = candidates[rng.randrange(len(candidates))]
        arc_id = ribbon.arcs_sorted(G).index(arc) + 1
        i, j = ribbon.corner_edge(arc[0]), ribbon.corner_edge(arc[1])
        L = homomap.lspace(G)
        got = homomap.lspace(ribbon.vassiliev1(G, arc))
        if got.rows != f2sympl.apply(f2sympl.v1_map(n, i, j), L).rows:
            _fail(
                "first sliding move disagrees with its matrix form",
                G,
                f"then: vmove --arc {arc_id} --kind 1",
            )
        fixed = i if rng.random() < 0.5 else j
        other = j if fixed == i else i
        got = homomap.lspace(ribbon.vassiliev2(G, arc, fixed))
        if got.rows != f2sympl.apply(f2sympl.v2_map(n, fixed, other), L).rows:
            _fail(
                "second sliding move disagrees with its matrix form",
                G,
                f"then: vmove --arc {arc_id} --kind 2 --fixed {fixed}",
            )
        done += 1
    return f"{count} moves"


def _check_one_vertex(rng: Random, count: int) -> str:
    for trial in range(count):
        n = 1 + trial % 5
        word = [e for e in range(1, n + 1) for _ in range(2)]
        rng.shuffle(word)
        G = ribbon.chord_diagram(word, [e for e in range(1, n + 1) if rng.random() < 0.5])
        M = homomap.intersection_matrix(G)
        sub = [e for e in range(1, n + 1) if rng.random() < 0.5]
        H = ribbon.partial_dual(G, sub)
        if matrixops.cohn_lempel(M, sub) != (ribbon.vertex_count(H) == 1):
            _fail(
                "invertibility fails to predict the dual vertex count",
                G,
                f"subset {sorted(sub)}",
            )
        if matrixops.cohn_lempel(M, sub):
            if homomap.intersection_matrix(H).rows != matrixops.partial_dual_matrix(M, sub).rows:
                _fail("dual matrices disagree", G, f"subset {sorted(sub)}")
    return f"{count} diagrams"


def _check_enumeration(rng: Random, count: int) -> str:
    counts = tuple(len(f2sympl.all_lagrangians(n)) for n in (1, 2, 3))
    if counts != (3, 15, 135):
        _fail(f"enumeration counts {counts} are wrong")
    if bialgebra.grade_dimension(2) != 11:
        _fail("grade 2 class count is wrong")
    return "3, 15, 135 lagrangians; 11 classes at grade 2"


def cmd_check(args) -> int:
    rng = Random(args.seed)
    suites = (
        ("rotation round trip", _check_round_trip),
        ("partial duality", _check_duality),
        ("sliding squares", _check_squares),
        ("one-vertex matrices", _check_one_vertex),
        ("enumeration", _check_enumeration),
    )
    for name, suite in suites:
        try:
            detail = suite(rng, args.count)
        except InternalCheckError as exc:
            raise InternalCheckError(f"{name}: {exc}") from exc
        print(f"{name}: ok ({detail})")
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lspaces",
        description="L-space invariants of ribbon graphs over F_2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="surface counts and the arc table of a ribbon file")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("lspace", help="Lagrangian subspace of a ribbon file")
    p.add_argument("file")
    p.set_defaults(func=cmd_lspace)

    p = sub.add_parser("dual", help="partial dual of a ribbon file")
    p.add_argument("file")
    p.add_argument("--edges", required=True, help="comma separated edge labels")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("vmove", help="apply a sliding move at an arc")
    p.add_argument("file")
    p.add_argument("--arc", type=int, required=True, help="1-based arc id, see info")
    p.add_argument("--kind", type=int, choices=(1, 2), default=1)
    p.add_argument("--fixed", type=int, help="fixed edge label for kind 2")
    p.set_defaults(func=cmd_vmove)

    p = sub.add_parser("intmatrix", help="interlacement matrix of a one-vertex ribbon file")
    p.add_argument("file")
    p.set_defaults(func=cmd_intmatrix)

    p = sub.add_parser("interlace", help="interlace polynomial of a graph file")
    p.add_argument("file")
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("lgr", help="count Lagrangians of a grade, or their orbits")
    p.add_argument("grade", type=int)
    p.add_argument("--orbits", action="store_true", help="count coordinate-permutation orbits")
    p.set_defaults(func=cmd_lgr)

    p = sub.add_parser("dims", help="grade table of the orbit bialgebra and its quotient")
    p.add_argument("--max", type=int, default=3)
    p.add_argument("--realized", type=int, default=0, metavar="SAMPLES",
                   help="also rank the classes of sampled ribbon graphs inside the quotient")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for relation generation; output is unaffected")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("check", help="run the seeded self-check suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=36, help="trials per suite")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
