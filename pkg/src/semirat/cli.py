"""Command-line front end.

Exit codes: 0 on success, 1 on usage or input errors, 2 when the
reproduction battery has a failing claim.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import autos, characters, groups, semirational
from .errors import BudgetExceeded, SemiratError
from .wordmap import DEFAULT_BUDGET
from .words import parse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in text_lines:
            print(line)


def _group(args):
    return groups.build(args.spec, ceiling=args.ceiling)


def cmd_group(args) -> int:
    G = _group(args)
    cls = G.classes
    payload = {
        "spec": args.spec,
        "order": G.n,
        "exponent": G.exponent,
        "class_sizes": list(cls.sizes),
        "class_rep_orders": [int(G.orders[r]) for r in cls.reps],
        "center_order": len(G.center),
        "named": {k: G.label(v) for k, v in G.named.items()},
    }
    try:
        zs = autos.absolute_center(G, budget=args.budget)
        payload["absolute_center"] = sorted(G.label(x) for x in zs)
        payload["absolute_center_order"] = len(zs)
    except BudgetExceeded as exc:
        payload["absolute_center"] = None
        payload["absolute_center_note"] = str(exc)
    lines = [
        f"group        {args.spec}",
        f"order        {G.n}",
        f"exponent     {G.exponent}",
        f"classes      {cls.count}  sizes {list(cls.sizes)}",
        f"center       order {len(G.center)}",
    ]
    if payload.get("absolute_center") is not None:
        lines.append(f"abs. center  order {payload['absolute_center_order']}: {payload['absolute_center']}")
    else:
        lines.append("abs. center  unavailable (automorphism search over budget)")
    _emit(args, payload, lines)
    return 0


def cmd_sr(args) -> int:
    G = _group(args)
    if args.search:
        cursor = tuple(int(x) for x in args.cursor.split(",")) if args.cursor else (1, 0)
        try:
            res = semirational.witness_search(G, args.search_rank, args.max_len, budget=args.budget,
                                              total_budget=args.total_budget, cursor=cursor,
                                              threads=args.threads)
        except BudgetExceeded as exc:
            at = ",".join(map(str, exc.cursor))
            _emit(args, {"spec": args.spec, "search": {"status": "Interrupted", "cursor": list(exc.cursor)}},
                  [f"search stopped by --total-budget; resume with --cursor {at}"])
            return 0
        payload = {"spec": args.spec, "search": res.to_json(G)}
        if res.exhausted:
            lines = [f"no witness among {res.words_tested} canonical words up to length {args.max_len}"]
        else:
            w = res.verdict.witness
            lines = [f"witness word {res.word}: N({G.label(w[0])}) = {w[2]} != N({G.label(w[1])}) = {w[3]}"]
        _emit(args, payload, lines)
        return 0
    if not args.word:
        raise SemiratError("sr needs a word or --search")
    v = semirational.test_word(G, parse(args.word), rank=args.rank, budget=args.budget,
                               threads=args.threads, with_fourier=args.fourier)
    payload = {"spec": args.spec, **v.to_json(G)}
    if v.generalized_character:
        lines = [f"N_w is a generalized character of {args.spec} (w = {v.word})"]
    else:
        g, h, ng, nh = v.witness
        lines = [f"N_w is NOT a generalized character of {args.spec} (w = {v.word})",
                 f"witness: <{G.label(g)}> = <{G.label(h)}>, N_w = {ng} vs {nh}"]
    if v.fourier is not None:
        lines.append(f"fourier integral: {v.fourier.generalized_character}")
    _emit(args, payload, lines)
    return 0


def cmd_fourier(args) -> int:
    G = _group(args)
    v = semirational.test_word(G, parse(args.word), rank=args.rank, budget=args.budget,
                               threads=args.threads, with_fourier=True)
    fd = v.fourier
    payload = {"spec": args.spec, "word": str(v.word), "distribution": list(v.distribution.values),
               **fd.to_json()}
    lines = [f"N_w per class: {list(v.distribution.values)}"]
    for d, c in zip(fd.table.degrees, fd.coefficients):
        lines.append(f"  deg {d:>3}: {c}")
    lines.append(f"all in Z[w]: {all(fd.in_z_omega)}   generalized character: {fd.generalized_character}")
    _emit(args, payload, lines)
    return 0


def cmd_chartab(args) -> int:
    G = _group(args)
    table = characters.character_table(G)
    payload = {"spec": args.spec, **table.to_json()}
    lines = [f"conductor {table.conductor}; class sizes {list(G.classes.sizes)}"]
    for row in table.rows:
        lines.append("  " + " | ".join(str(v) for v in row))
    lines.append(f"integer-character certificate: {characters.integer_character_certificate(G)}")
    _emit(args, payload, lines)
    return 0


def cmd_av(args) -> int:
    G = _group(args)
    res = autos.amit_vishne_check(G, budget=args.budget)
    payload = {"spec": args.spec, "holds": res.holds}
    if res.holds:
        lines = [f"{args.spec} satisfies the Amit-Vishne condition"]
    else:
        g, h = res.witness
        payload["witness"] = [G.label(g), G.label(h)]
        lines = [f"{args.spec} violates the Amit-Vishne condition",
                 f"witness: <{G.label(g)}> = <{G.label(h)}> in different Aut-orbits"]
    _emit(args, payload, lines)
    return 0


def cmd_aut(args) -> int:
    G = _group(args)
    A = autos.automorphism_group(G, budget=args.budget)
    zs = autos.absolute_center(G, budget=args.budget)
    payload = {"spec": args.spec, "automorphisms": len(A), "orbits": len(A.orbits),
               "absolute_center": sorted(G.label(x) for x in zs)}
    lines = [f"|Aut| = {len(A)}", f"Aut-orbits on G: {len(A.orbits)}",
             f"absolute center: {payload['absolute_center']}"]
    _emit(args, payload, lines)
    return 0


def cmd_repro(args) -> int:
    report = semirational.repro_paper(ceiling=args.ceiling, budget=args.budget,
                                      cayley_files=args.cayley or (), threads=args.threads,
                                      quick=args.quick)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(report, fh, indent=2, default=str)
    lines = [f"{c['status']:<8} {c['millis']:>7} ms  {c['id']}  {c['description']}" for c in report["claims"]]
    _emit(args, report, lines)
    return 2 if any(c["status"] == "FAIL" for c in report["claims"]) else 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cost budget (multiplications)")
    common.add_argument("--ceiling", type=int, default=groups.DEFAULT_CEILING, help="largest group order")
    common.add_argument("--threads", type=int, default=1)

    p = _Parser(prog="semirat", description="Word-map distributions and semi-rationality on finite groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("spec", help="cyclic:N | metacyclic:N,M,K | gp:P | cpqm:P,Q,M | psl2:P | pgl2:P | cayley:PATH")
        sp.set_defaults(func=fn)
        return sp

    spec_cmd("group", cmd_group, "structural summary")
    sp = spec_cmd("sr", cmd_sr, "per-word verdict or witness search")
    sp.add_argument("word", nargs="?")
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--fourier", action="store_true")
    sp.add_argument("--search", action="store_true")
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--search-rank", type=int, default=2)
    sp.add_argument("--cursor", help="resume point LENGTH,INDEX")
    sp.add_argument("--total-budget", type=int, default=None, help="summed cost cap for --search")
    sp = spec_cmd("fourier", cmd_fourier, "Fourier coefficients of N_w")
    sp.add_argument("word")
    sp.add_argument("--rank", type=int, default=None)
    spec_cmd("chartab", cmd_chartab, "character table")
    spec_cmd("av", cmd_av, "Amit-Vishne condition")
    spec_cmd("aut", cmd_aut, "automorphism group summary")
    sp = sub.add_parser("repro", parents=[common], help="run the reproduction battery")
    sp.add_argument("--quick", action="store_true", help="skip the theorem property suite")
    sp.add_argument("--cayley", action="append", help="also load and verify this Cayley file")
    sp.add_argument("--output", help="write the JSON report here")
    sp.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SemiratError as exc:
        parser.print_usage(sys.stderr)
        print(f"semirat: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
