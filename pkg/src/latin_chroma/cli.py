"""Command line interface.

Exit codes: 0 success / proper, 1 semantic negative (improper coloring,
structure violation, expectation mismatch), 2 input error, 3 budget
exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import errors
from .catalog import bundled_catalog, load_catalog
from .coloring import (
    Budget,
    bound_report,
    circulant_coloring,
    coloring_from_json,
    exact_chromatic,
    greedy_coloring,
    improve_coloring,
    plex_bound_coloring,
    row_complete_coloring,
    verify_coloring,
)
from .graph import is_circulant, mobius_check
from .groups import (
    cayley_square,
    element_orders,
    group_by_name,
    hall_paige_product,
    parse_group,
    predict_chi_class,
    unique_involution,
)
from .squares import (
    circulant,
    format_square,
    parse_square,
    random_square,
    williams_row_complete,
)
from .transversals import (
    count_transversals,
    diagonal_plex_partition,
    max_disjoint_transversals,
    max_partial_transversal,
    validate_partition,
)

OK, NEGATIVE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_square(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return parse_square(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except errors.LatinError as exc:
        raise InputError(f"{path}: {exc}") from None


def _budget(args):
    ms = getattr(args, "budget", None)
    nodes = getattr(args, "nodes", None)
    if ms is None:
        b = Budget.from_env()
        b.nodes = nodes
        return b
    return Budget(time_ms=ms, nodes=nodes)


def _emit(text, out=None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj) + "\n"


# ------------------------------------------------------------------ gen


def cmd_gen(args):
    kind, params = args.kind, args.params
    try:
        if kind == "circulant":
            L = circulant(_one_int(params))
        elif kind == "row-complete":
            L = williams_row_complete(_one_int(params))
        elif kind == "random":
            L = random_square(_one_int(params), args.seed)
        elif kind == "group":
            if len(params) != 1:
                raise InputError("group needs a name like z2xz4 or a group file")
            p = Path(params[0])
            G = parse_group(p.read_text()) if p.exists() else group_by_name(params[0])
            L = cayley_square(G)
        else:
            raise InputError(f"unknown kind {kind}")
    except (ValueError, errors.LatinError) as exc:
        raise InputError(str(exc)) from None
    _emit(format_square(L), args.output)
    return OK


def _one_int(params):
    if len(params) != 1:
        raise InputError("expected exactly one integer parameter")
    try:
        n = int(params[0])
    except ValueError:
        raise InputError(f"not an integer: {params[0]!r}") from None
    if n < 1:
        raise InputError("order must be positive")
    return n


# ------------------------------------------------------------------ chi


def cmd_chi(args):
    L = _read_square(args.file)
    budget = _budget(args)
    if args.heuristic:
        res = improve_coloring(L, budget)
    else:
        res = exact_chromatic(L, budget)
    if not verify_coloring(L, res.witness).proper:
        print("internal error: witness coloring is improper", file=sys.stderr)
        return NEGATIVE
    if args.witness:
        Path(args.witness).write_text(_dump(res.witness.to_json()))
    if args.json:
        out = res.to_json()
        out["verified"] = True
        out["mode"] = "heuristic" if args.heuristic else "exact"
        _emit(_dump(out))
    elif res.exact:
        print(f"chi={res.chi} exact")
    elif args.heuristic:
        print(f"chi<={res.upper} interval=[{res.lower},{res.upper}] heuristic")
    else:
        print(f"chi in [{res.lower},{res.upper}] budget exhausted")
    if not res.exact and not args.heuristic:
        return BUDGET
    return OK


# ---------------------------------------------------------------- color


def _plex_partition(L):
    if is_circulant(L) and L.n % 2 == 0:
        return diagonal_plex_partition(L)
    pk = max_disjoint_transversals(L)
    n = L.n
    trs = list(pk.transversals)
    if pk.t == n:
        return validate_partition(L, trs, [1] * n)
    used = {x for tr in trs for x in tr}
    rest = [x for x in L.triples() if x not in used]
    return validate_partition(L, trs + [rest], [1] * pk.t + [n - pk.t])


def cmd_color(args):
    L = _read_square(args.file)
    method = args.method
    try:
        if method == "exact":
            res = exact_chromatic(L, _budget(args))
            col = res.witness
            if not res.exact:
                print(f"warning: budget exhausted, chi in [{res.lower},{res.upper}]", file=sys.stderr)
        elif method == "greedy":
            col = greedy_coloring(L)
        elif method == "circulant":
            if not is_circulant(L):
                raise errors.MethodInapplicable("circulant method needs the r+c mod n square")
            col = circulant_coloring(L.n)
        elif method == "row-complete":
            col = row_complete_coloring(L)
        elif method == "plex":
            col = plex_bound_coloring(L, _plex_partition(L))
        else:
            raise InputError(f"unknown method {method}")
    except (errors.MethodInapplicable, errors.NotRowComplete, errors.NotCirculant) as exc:
        print(f"method not applicable: {exc}", file=sys.stderr)
        return INPUT_ERROR
    # self-verification gate: never emit an improper coloring
    rep = verify_coloring(L, col)
    if not rep.proper:
        print(f"internal error: {method} coloring has {len(rep.clashes)} clashes", file=sys.stderr)
        return NEGATIVE
    _emit(_dump(col.to_json()), args.output)
    return OK


# --------------------------------------------------------------- verify


def cmd_verify(args):
    L = _read_square(args.square)
    try:
        obj = json.loads(Path(args.coloring).read_text())
        col = coloring_from_json(L, obj)
    except (OSError, ValueError, KeyError, TypeError, errors.LatinError) as exc:
        raise InputError(f"{args.coloring}: {exc}") from None
    rep = verify_coloring(L, col)
    if args.json:
        _emit(_dump(rep.to_json()))
    elif rep.proper:
        print(f"proper {rep.num_colors}-coloring")
    else:
        print(f"improper: {len(rep.clashes)} clashes")
        for kind, colr, a, b in rep.clashes:
            print(f"  {kind} clash, color {colr}: {a} {b}")
    return OK if rep.proper else NEGATIVE


# ---------------------------------------------------------------- table


def _solve_entry(job):
    label, L, budget_ms, witness_dir = job
    t0 = time.monotonic()
    try:
        res = exact_chromatic(L, Budget(time_ms=budget_ms))
        proper = verify_coloring(L, res.witness).proper
        path = None
        if witness_dir:
            safe = "".join(ch if ch.isalnum() or ch in "._-" else "_" for ch in label)
            path = str(Path(witness_dir) / f"{safe}.json")
            Path(path).write_text(_dump(res.witness.to_json()))
        return {
            "label": label,
            "n": L.n,
            "chi": res.chi,
            "exact": res.exact,
            "lower": res.lower,
            "upper": res.upper,
            "proof": res.lower_bound_proof,
            "verified": proper,
            "seconds": round(time.monotonic() - t0, 4),
            "witness": path,
        }
    except Exception as exc:  # batch keeps going; failure is recorded
        return {"label": label, "n": L.n, "error": f"{type(exc).__name__}: {exc}",
                "seconds": round(time.monotonic() - t0, 4)}


def run_table(entries, budget_ms=None, jobs=1, witness_dir=None):
    work = [(e.label, e.square, budget_ms, witness_dir) for e in entries]
    if witness_dir:
        Path(witness_dir).mkdir(parents=True, exist_ok=True)
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_solve_entry, work))
    else:
        rows = [_solve_entry(w) for w in work]
    for row in rows:
        if "chi" in row:
            row["inRange"] = row["n"] <= row["lower"] and row["upper"] <= 3 * row["n"] - 2
    return rows


def summarize(rows):
    counts = Counter()
    for row in rows:
        if row.get("exact"):
            counts[(row["n"], row["chi"])] += 1
    out = {}
    for (n, chi), k in sorted(counts.items()):
        out.setdefault(str(n), {})[str(chi)] = k
    return out


def cmd_table(args):
    if args.catalog:
        try:
            entries = []
            for path in args.catalog:
                entries.extend(load_catalog(path))
        except (OSError, errors.LatinError) as exc:
            raise InputError(str(exc)) from None
    else:
        entries = bundled_catalog()
    if args.max_order:
        entries = [e for e in entries if e.square.n <= args.max_order]
    budget_ms = args.budget if args.budget is not None else Budget.from_env().time_ms
    rows = run_table(entries, budget_ms, args.jobs, args.witness_dir)
    summary = summarize(rows)
    mismatch = None
    if args.expect:
        try:
            want = json.loads(Path(args.expect).read_text())
        except (OSError, ValueError) as exc:
            raise InputError(f"{args.expect}: {exc}") from None
        want = {str(n): {str(c): k for c, k in v.items()} for n, v in want.items()}
        mismatch = {n: {"expected": want[n], "got": summary.get(n, {})}
                    for n in want if summary.get(n, {}) != want[n]}
    if args.json:
        _emit(_dump({"rows": rows, "summary": summary, "mismatch": mismatch}))
    else:
        print(f"{'label':<14} {'n':>2} {'chi':>4} {'exact':<6} {'interval':<9} {'sec':>8}")
        for row in rows:
            if "error" in row:
                print(f"{row['label']:<14} {row['n']:>2}  ERR {row['error']}")
                continue
            iv = f"[{row['lower']},{row['upper']}]"
            print(f"{row['label']:<14} {row['n']:>2} {row['chi']:>4} {str(row['exact']):<6} "
                  f"{iv:<9} {row['seconds']:>8.3f}")
        for n, per in summary.items():
            print(f"order {n}: " + ", ".join(f"chi={c}: {k}" for c, k in per.items()))
        if mismatch:
            print(f"expectation mismatch: {mismatch}")
    if mismatch:
        return NEGATIVE
    if any("error" in r or not r.get("verified", True) for r in rows):
        return NEGATIVE
    return OK


# --------------------------------------------------------------- mobius


def cmd_mobius(args):
    L = _read_square(args.file)
    try:
        cert = mobius_check(L, args.i)
    except errors.NotCirculant as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except errors.StructureViolation as exc:
        print(f"structure violation: {exc}", file=sys.stderr)
        return NEGATIVE
    _emit(_dump(cert.to_json()))
    return OK


# ------------------------------------------------------- bounds / extras


def cmd_bounds(args):
    L = _read_square(args.file)
    exact = None
    if args.exact:
        res = exact_chromatic(L, _budget(args))
        exact = res.chi if res.exact else None
    rep = bound_report(L, exact=exact)
    if args.json:
        _emit(_dump(rep.to_json()))
    else:
        for key, val in rep.to_json().items():
            print(f"{key}: {val}")
    return OK if rep.consistent else NEGATIVE


def cmd_transversals(args):
    L = _read_square(args.file)
    length, witness, _ = max_partial_transversal(L)
    pk = max_disjoint_transversals(L, exact_max_order=args.exact_max_order)
    out = {
        "n": L.n,
        "count": count_transversals(L),
        "maxPartial": length,
        "maxPartialWitness": [list(x) for x in witness],
        "disjoint": pk.t,
        "disjointExact": pk.exact,
        "decomposition": pk.to_json(),
        "orthogonalMate": pk.exact and pk.t == L.n,
    }
    _emit(_dump(out))
    return OK


def cmd_group(args):
    p = Path(args.group)
    try:
        G = parse_group(p.read_text()) if p.exists() else group_by_name(args.group)
    except (ValueError, errors.LatinError) as exc:
        raise InputError(str(exc)) from None
    ok, order = hall_paige_product(G)
    out = {
        "n": G.n,
        "abelian": G.is_abelian(),
        "orders": element_orders(G),
        "uniqueInvolution": unique_involution(G),
        "hallPaige": ok,
        "ordering": order,
        "prediction": predict_chi_class(G),
        "transversals": count_transversals(cayley_square(G)),
    }
    _emit(_dump(out))
    return OK


def build_parser():
    ap = argparse.ArgumentParser(prog="latin-chroma", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a square in the text format")
    p.add_argument("kind", choices=["circulant", "group", "row-complete", "random"])
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("chi", help="chromatic number (exact, or heuristic upper bound)")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact search (default)")
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--budget", type=float, help="milliseconds (default $LATIN_CHROMA_BUDGET_MS)")
    p.add_argument("--nodes", type=int, help="search node cap")
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness", help="write the coloring JSON here")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("color", help="emit a verified coloring as JSON")
    p.add_argument("file")
    p.add_argument("--method", default="greedy",
                   choices=["exact", "greedy", "circulant", "row-complete", "plex"])
    p.add_argument("--budget", type=float)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a coloring JSON against a square")
    p.add_argument("square")
    p.add_argument("coloring")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="batch chromatic numbers over catalog files")
    p.add_argument("--catalog", action="append", help="catalog file or directory (repeatable)")
    p.add_argument("--max-order", type=int)
    p.add_argument("--budget", type=float, help="per-entry milliseconds")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--expect", help='JSON like {"6": {"7": 6, "8": 6}}')
    p.add_argument("--witness-dir")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("mobius", help="ladder certificate for T_i u T_(i+1) of a circulant")
    p.add_argument("file")
    p.add_argument("--i", type=int, default=0)
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("bounds", help="lower/upper bound report")
    p.add_argument("file")
    p.add_argument("--exact", action="store_true", help="also run the exact solver")
    p.add_argument("--budget", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("transversals", help="transversal statistics as JSON")
    p.add_argument("file")
    p.add_argument("--exact-max-order", type=int, default=None)
    p.set_defaults(func=cmd_transversals)

    p = sub.add_parser("group", help="Hall-Paige predicates for a group name or file")
    p.add_argument("group")
    p.set_defaults(func=cmd_group)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
