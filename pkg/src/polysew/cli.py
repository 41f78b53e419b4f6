"""
Command-line interface.

Exit codes: 0 success, 1 verification failure or rejected input,
2 usage or parse error, 3 oracle mismatch (internal invariant breach).
"""
from __future__ import annotations

import argparse
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .bench import linear_fit, ratio_spread, run_bench
from .core import SimplicialPolytope
from .cyclic import cyclic_polytope, neighbourly_facet_count
from .errors import OracleMismatch, PolytopeError
from .formats import ParseError, catalog_to_json, parse_tower, read_polytope, write_polytope
from .neighbourly import is_neighbourly, universal_faces
from .sewing import sew, sew_bbp_oracle
from .tower import find_towers, tower_from_labels
from .tracking import sew_with_tracking, universal_catalog

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class CommandFailed(Exception):
    def __init__(self, message: str, code: int = EXIT_FAIL):
        super().__init__(message)
        self.code = code


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _formula_text(n: int, d: int) -> str:
    m = d // 2
    return f"C({n - m},{m})+C({n - m - 1},{m - 1})"


def _load(path):
    try:
        return read_polytope(path)
    except OSError as e:
        raise CommandFailed(f"cannot read {path}: {e.strerror or e}", EXIT_USAGE) from None
    except ParseError as e:
        raise CommandFailed(f"{path}: parse error: {e}", EXIT_USAGE) from None
    except PolytopeError as e:
        raise CommandFailed(f"{path}: invalid polytope: {type(e).__name__}: {e}") from None


def _save(path, P, meta) -> None:
    try:
        write_polytope(path, P, meta)
    except OSError as e:
        raise CommandFailed(f"cannot write {path}: {e.strerror or e}", EXIT_USAGE) from None


# checks shared by `verify` and pipeline steps; returns (lines, ok)
def verify_checks(P: SimplicialPolytope, neighbourly=True, formula=True, universal_dims=()) -> tuple:
    lines = [f"valid: {P.dim}-polytope, {P.n} vertices, {len(P.facets)} facets"]
    ok = True
    if neighbourly:
        nb = is_neighbourly(P)
        ok &= nb
        lines.append(f"neighbourly: {'yes' if nb else 'NO'}")
    if formula:
        if P.dim % 2:
            lines.append("facet formula: skipped (odd dimension)")
        else:
            want = neighbourly_facet_count(P.n, P.dim)
            got = len(P.facets)
            good = got == want
            ok &= good
            rel = "=" if good else "!="
            lines.append(f"facet formula: {got} facets {rel} {_formula_text(P.n, P.dim)} = {want}")
    for k in universal_dims:
        faces = universal_faces(P, k)
        lines.append(f"universal {k}-faces: {len(faces)}")
        lines += ["  " + " ".join(P.labels_of(U)) for U in faces]
    return lines, ok


def _history(meta) -> list:
    return list(meta.get("history", [])) if isinstance(meta, dict) else []


def _sew_step(P, meta, tower, label, oracle_check=False, track=False):
    """Sew and return (P+, metadata, catalog or None)."""
    catalog = None
    if track:
        Pplus, catalog = sew_with_tracking(P, tower, universal_catalog(P), label)
    else:
        Pplus = sew(P, tower, label)
    if oracle_check:
        ref = sew_bbp_oracle(P, tower, label)
        if ref.facets != Pplus.facets:
            raise OracleMismatch("recursive sewing and beyond/beneath oracle disagree")
    meta = dict(meta or {})
    meta["history"] = _history(meta) + [{"op": "sew", "tower": [list(p) for p in tower.label_pairs()], "label": label}]
    return Pplus, meta, catalog


def cmd_gen_cyclic(args) -> int:
    P = cyclic_polytope(args.n, args.d)
    meta = {"generator": {"kind": "cyclic", "n": args.n, "d": args.d}, "history": []}
    _save(args.output, P, meta)
    print(f"C({args.n},{args.d}): {len(P.facets)} facets -> {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        P, _ = read_polytope(args.path)
    except (OSError, ParseError) as e:
        raise CommandFailed(f"{args.path}: {e}", EXIT_USAGE) from None
    except PolytopeError as e:
        print(f"FAIL: {type(e).__name__}: {e}")
        return EXIT_FAIL
    dims = args.universal_dims or ()
    lines, ok = verify_checks(P, args.neighbourly, args.facet_formula, dims)
    for line in lines:
        print(line)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _pick_tower(P, text: Optional[str], auto: bool):
    if auto:
        found = find_towers(P, limit=1)
        if not found:
            raise CommandFailed("no universal tower found")
        return found[0]
    try:
        pairs = parse_tower(text)
    except ParseError as e:
        raise CommandFailed(f"tower: {e}", EXIT_USAGE) from None
    return tower_from_labels(P, pairs)


def cmd_sew(args) -> int:
    P, meta = _load(args.path)
    T = _pick_tower(P, args.tower, args.auto)
    Pplus, meta, catalog = _sew_step(P, meta, T, args.label, args.oracle_check, args.track_universal is not None)
    if args.auto:
        meta["history"][-1]["auto"] = True
    _save(args.output, Pplus, meta)
    tower_txt = ";".join(",".join(p) for p in T.label_pairs())
    print(f"sewed {args.label} through {tower_txt}: {Pplus.n} vertices, {len(Pplus.facets)} facets -> {args.output}")
    if args.oracle_check:
        print("oracle check: pass")
    if catalog is not None:
        side = args.track_universal or str(args.output) + ".universal.json"
        Path(side).write_text(catalog_to_json(Pplus, catalog), encoding="utf-8")
        sizes = ", ".join(f"{k}:{v}" for k, v in catalog.sizes().items())
        print(f"universal faces ({sizes}) -> {side}")
    return EXIT_OK


def cmd_towers(args) -> int:
    P, _ = _load(args.path)
    m = P.dim // 2
    if P.n < 2 * m + 3:
        _err(f"warning: {P.n} vertices; sewing needs at least {2 * m + 3}")
    towers = find_towers(P, limit=args.limit)
    for T in towers:
        print(";".join(",".join(p) for p in T.label_pairs()))
    _err(f"{len(towers)} tower(s)")
    return EXIT_OK


@dataclass
class Step:
    lineno: int
    op: str
    args: list = field(default_factory=list)


STEP_ARITY = {"generate": (2, 2), "sew-auto": (0, 1), "sew": (1, 2), "verify": (0, 0), "report": (0, 0), "write": (1, 1)}


def parse_script(text: str) -> list:
    """Parse a pipeline script and check it statically.

    One step per line, ``#`` comments::

        generate N D
        sew-auto [LABEL]
        sew A,B;C,D [LABEL]
        verify
        report
        write PATH

    New vertices default to labels s1, s2, ... in order of sewing.  Label
    references in explicit towers are checked against the labels the earlier
    steps define; any problem raises ParseError before anything runs.
    """
    steps = []
    labels = None
    sewn = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            words = shlex.split(line)
        except ValueError as e:
            raise ParseError(f"line {lineno}: {e}") from None
        op, rest = words[0], words[1:]
        if op not in STEP_ARITY:
            raise ParseError(f"line {lineno}: unknown step {op!r}")
        lo, hi = STEP_ARITY[op]
        if not lo <= len(rest) <= hi:
            raise ParseError(f"line {lineno}: {op} takes {lo}..{hi} arguments, got {len(rest)}")
        if op == "generate":
            try:
                n, d = int(rest[0]), int(rest[1])
            except ValueError:
                raise ParseError(f"line {lineno}: generate needs integers") from None
            labels = {str(i) for i in range(n)}
            sewn = 0
            steps.append(Step(lineno, op, [n, d]))
            continue
        if labels is None:
            raise ParseError(f"line {lineno}: {op} before any generate step")
        if op in ("sew", "sew-auto"):
            sewn += 1
            new = rest[-1] if (op == "sew" and len(rest) == 2) or (op == "sew-auto" and rest) else None
            if new is None:
                new = f"s{sewn}"
            if new in labels:
                raise ParseError(f"line {lineno}: label {new!r} already defined")
            if op == "sew":
                pairs = parse_tower(rest[0])
                for a, b in pairs:
                    for lab in (a, b):
                        if lab not in labels:
                            raise ParseError(f"line {lineno}: undefined label {lab!r}")
                steps.append(Step(lineno, op, [pairs, new]))
            else:
                steps.append(Step(lineno, op, [new]))
            labels.add(new)
        else:
            steps.append(Step(lineno, op, rest))
    return steps


def run_pipeline(steps, out=print) -> tuple:
    """Execute parsed steps; returns ``(polytope or None, metadata, ok)``."""
    P = None
    meta: dict = {}
    ok = True
    for st in steps:
        tag = f"[{st.lineno}] {st.op}"
        if st.op == "generate":
            n, d = st.args
            P = cyclic_polytope(n, d)
            meta = {"generator": {"kind": "cyclic", "n": n, "d": d}, "history": []}
            out(f"{tag}: C({n},{d}), {len(P.facets)} facets")
        elif st.op in ("sew", "sew-auto"):
            if st.op == "sew":
                pairs, label = st.args
                T = tower_from_labels(P, pairs)
            else:
                (label,) = st.args
                found = find_towers(P, limit=1)
                if not found:
                    raise CommandFailed(f"line {st.lineno}: no universal tower")
                T = found[0]
            P, meta, _ = _sew_step(P, meta, T, label)
            if st.op == "sew-auto":
                meta["history"][-1]["auto"] = True
            tower_txt = ";".join(",".join(p) for p in T.label_pairs())
            out(f"{tag}: {label} through {tower_txt}, {P.n} vertices, {len(P.facets)} facets")
        elif st.op == "verify":
            lines, good = verify_checks(P)
            ok &= good
            out(f"{tag}: {'pass' if good else 'FAIL'} ({'; '.join(lines)})")
        elif st.op == "report":
            deg = P.vertex_degrees()
            out(f"{tag}: dim {P.dim}, {P.n} vertices, {len(P.facets)} facets, vertex degrees {min(deg)}..{max(deg)}")
        elif st.op == "write":
            _save(st.args[0], P, meta)
            out(f"{tag}: -> {st.args[0]}")
    return P, meta, ok


def cmd_pipeline(args) -> int:
    try:
        text = Path(args.script).read_text(encoding="utf-8")
    except OSError as e:
        raise CommandFailed(f"cannot read {args.script}: {e.strerror or e}", EXIT_USAGE) from None
    try:
        steps = parse_script(text)
    except ParseError as e:
        raise CommandFailed(f"{args.script}: {e}", EXIT_USAGE) from None
    P, meta, ok = run_pipeline(steps)
    if args.output and P is not None:
        _save(args.output, P, meta)
        print(f"final: {P.n} vertices, {len(P.facets)} facets -> {args.output}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bench(args) -> int:
    if args.end_n <= args.start_n:
        raise CommandFailed("end-n must exceed start-n", EXIT_USAGE)
    rows = run_bench(args.start_n, args.end_n, dim=args.dim, repeats=args.repeats)
    print(f"{'n':>4} {'facets':>7} {'usec':>10} {'usec/facet':>11} {'touched':>8}")
    for r in rows:
        print(f"{r.n:>4} {r.facets:>7} {r.seconds * 1e6:>10.1f} {r.ratio * 1e6:>11.4f} {r.touched:>8}")
    print(f"time/facet spread (max/min): {ratio_spread(rows):.3f}")
    if len(rows) >= 3:
        a, b, worst = linear_fit([r.facets for r in rows], [r.touched for r in rows])
        print(f"touched ~ {a:.3f}*f + {b:.2f}, worst relative deviation {worst:.2%}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polysew", description="Neighbourly polytopes by sewing.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-cyclic", help="write the cyclic polytope C(n, d)")
    g.add_argument("n", type=int)
    g.add_argument("d", type=int)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen_cyclic)

    v = sub.add_parser("verify", help="validate a polytope file")
    v.add_argument("path")
    v.add_argument("--neighbourly", action="store_true")
    v.add_argument("--facet-formula", action="store_true", help="compare with the neighbourly facet count")
    v.add_argument("--universal-dims", type=int, nargs="+", metavar="K", help="list universal K-faces (odd K)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sew", help="sew a new vertex through a universal tower")
    s.add_argument("path")
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument("--tower", help="label pairs 'a,b;c,d' or a JSON file")
    which.add_argument("--auto", action="store_true", help="use the first tower found")
    s.add_argument("--label", default="s1", help="label of the new vertex (default s1)")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--oracle-check", action="store_true", help="cross-check with the beyond/beneath oracle")
    s.add_argument(
        "--track-universal", nargs="?", const="", default=None, metavar="PATH",
        help="write the universal faces of the result (default OUTPUT.universal.json)",
    )
    s.set_defaults(func=cmd_sew)

    t = sub.add_parser("towers", help="list universal towers")
    t.add_argument("path")
    t.add_argument("--limit", type=int, default=None)
    t.set_defaults(func=cmd_towers)

    pl = sub.add_parser("pipeline", help="run a sewing script")
    pl.add_argument("script")
    pl.add_argument("-o", "--output")
    pl.set_defaults(func=cmd_pipeline)

    b = sub.add_parser("bench", help="time repeated sewing")
    b.add_argument("start_n", type=int)
    b.add_argument("end_n", type=int)
    b.add_argument("--dim", type=int, default=4)
    b.add_argument("--repeats", type=int, default=7)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandFailed as e:
        _err(f"error: {e}")
        return e.code
    except OracleMismatch as e:
        _err(f"oracle mismatch: {e}")
        return EXIT_MISMATCH
    except ParseError as e:
        _err(f"parse error: {e}")
        return EXIT_USAGE
    except PolytopeError as e:
        _err(f"error: {type(e).__name__}: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
