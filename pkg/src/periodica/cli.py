"""Command-line interface.

Exit codes: 0 success, 1 an invariant failed (verify), 2 usage or input
error, 3 environment or capacity error (ceiling exceeded, bad cache file).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import bounds, enumeration
from .closure import choicebound_cases, forward_closure, irreducible, q_sequence
from .correlation import correlate, correlation_witness, decompose
from .errors import CacheError, DomainError, InvariantViolation, UnsupportedLength
from .periods import Autocorrelation, BitVector, PeriodSet, basic_period, period_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENV = 0, 1, 2, 3
GAMMA_DIR_ENV = "PERIODICA_GAMMA_DIR"

log = logging.getLogger("periodica")


class UsageError(Exception):
    pass


def resolve_gamma_dir(flag) -> Path:
    if flag:
        return Path(flag)
    return Path(os.environ.get(GAMMA_DIR_ENV) or "gamma")


def parse_set(text: str) -> list[int]:
    body = text.strip().removeprefix("{").removesuffix("}")
    try:
        return [int(x) for x in body.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--set expects comma-separated integers, got {text!r}") from None


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2) + "\n" if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _bits_arg(text: str) -> BitVector:
    try:
        return BitVector.from_string(text)
    except DomainError as e:
        raise UsageError(str(e)) from None


def _text(pairs) -> str:
    return "".join(f"{k}: {v}\n" for k, v in pairs)


def cmd_periods(args) -> int:
    u = args.word
    if not u:
        raise UsageError("word must be non-empty")
    P = period_set(u)
    s = P.autocorrelation()
    R = irreducible(P)
    payload = {"word": u, "n": len(u), "periods": list(P.periods), "basic_period": basic_period(P),
               "autocorrelation": str(s), "irreducible": list(R.elements)}
    _emit(args, payload, _text([("word", u), ("periods", P), ("basic period", basic_period(P)),
                                ("autocorrelation", s), ("irreducible", R)]))
    return EXIT_OK


def cmd_autocorr(args) -> int:
    if not args.word:
        raise UsageError("word must be non-empty")
    s = period_set(args.word).autocorrelation()
    _emit(args, {"word": args.word, "autocorrelation": str(s)}, f"{s}\n")
    return EXIT_OK


def cmd_correlate(args) -> int:
    if len(args.u) != len(args.v) or not args.u:
        raise UsageError(f"words must be non-empty and of equal length ({len(args.u)} vs {len(args.v)})")
    t = correlate(args.u, args.v)
    j, s = decompose(t)
    payload = {"u": args.u, "v": args.v, "correlation": str(t), "j": j, "s": str(s)}
    _emit(args, payload, _text([("correlation", t), ("j", j), ("s", str(s) or "(empty)")]))
    return EXIT_OK


def _set_and_n(args) -> tuple[list[int], int]:
    if args.set is None:
        raise UsageError("--set is required")
    S = parse_set(args.set)
    n = args.n if args.n is not None else (max(S) + 1 if S else None)
    if n is None or n < 1:
        raise UsageError("--n is required for an empty set")
    return S, n


def cmd_closure(args) -> int:
    S, n = _set_and_n(args)
    fc = forward_closure(S, n)
    text = "{" + ",".join(map(str, fc)) + "}\n"
    _emit(args, {"n": n, "set": S, "closure": list(fc)}, text)
    return EXIT_OK


def cmd_irreducible(args) -> int:
    if args.bits:
        P = Autocorrelation.from_string(args.bits).period_set()
    else:
        S, n = _set_and_n(args)
        P = PeriodSet(n, tuple(sorted(set(S))))
    R = irreducible(P, strict=args.strict, gamma_dir=_existing_gamma_dir(args))
    payload = {"n": P.n, "periods": list(P.periods), "irreducible": list(R.elements)}
    try:
        qs = q_sequence(R)
    except InvariantViolation as e:
        # only reachable for sets that are not genuine period sets
        payload.update(q_sequence=None, cases=None, note=str(e))
        _emit(args, payload, f"{R}\nq-sequence: none ({e})\n")
        return EXIT_OK
    cases = choicebound_cases(R, qs)
    payload.update(q_sequence=[list(e) for e in qs.entries], cases=cases)
    _emit(args, payload, f"{R}\n{qs}\ncases: {cases}\n")
    return EXIT_OK


def _existing_gamma_dir(args):
    d = resolve_gamma_dir(args.gamma_dir)
    return d if d.is_dir() else None


def cmd_enumerate(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    ceiling = args.max_n if args.max_n is not None else enumeration.MAX_N
    gs = enumeration.enumerate_gamma(args.n, jobs=args.jobs, max_n=ceiling)
    gamma_dir = Path(args.out) if args.out else resolve_gamma_dir(args.gamma_dir)
    path = enumeration.write_gamma_cache(gs, gamma_dir)
    payload = {"n": gs.n, "kappa": gs.kappa, "path": str(path)}
    text = f"kappa_{gs.n} = {gs.kappa}\nwrote {path}\n"
    sys.stdout.write(json.dumps(payload) + "\n" if args.format == "json" else text)
    return EXIT_OK


def cmd_witness(args) -> int:
    b = _bits_arg(args.bits)
    if b.bits & 1 or b.n == 0:
        w = enumeration.witness(b)
        _emit(args, {"autocorrelation": args.bits, "witness": w}, f"{w if w is not None else 'none'}\n")
    else:
        u, v = correlation_witness(b)
        _emit(args, {"correlation": args.bits, "u": u, "v": v}, f"{u}\n{v}\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    b = _bits_arg(args.bits)
    ceiling = args.max_n if args.max_n is not None else enumeration.MAX_N
    ok = enumeration.is_valid_autocorrelation(b, gamma_dir=_existing_gamma_dir(args), max_n=ceiling)
    _emit(args, {"autocorrelation": args.bits, "valid": ok}, f"{'true' if ok else 'false'}\n")
    return EXIT_OK


def cmd_bounds(args) -> int:
    from .svg import render_svg

    max_n = args.max_n if args.max_n is not None else 500
    if max_n < 2:
        raise UsageError("--max-n must be >= 2")
    rows = bounds.build_table(max_n, resolve_gamma_dir(args.gamma_dir))
    if args.format == "json":
        out = json.dumps([dict(zip(bounds.CSV_HEADER, r.csv_fields())) for r in rows], indent=2) + "\n"
    else:
        out = bounds.table_csv(rows)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    if args.svg:
        Path(args.svg).write_text(render_svg(rows))
    for r in rows:
        for w in r.warnings:
            print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all

    n_max = args.max_n if args.max_n is not None else (args.n if args.n is not None else 12)
    gamma_dir = resolve_gamma_dir(args.gamma_dir)
    results = run_all(n_max, gamma_dir if gamma_dir.is_dir() else None, jobs=args.jobs,
                      words=args.words, seed=args.seed)
    failed = [r for r in results if not r.ok]
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name}"
                     + (f" ({len(r.violations)} violations, first: {r.violations[0]})" if r.violations else ""))
    payload = {"n_max": n_max, "results": {r.name: len(r.violations) for r in results}}
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "periods": (cmd_periods, "period set, basic period, autocorrelation and irreducible set of a word"),
    "autocorr": (cmd_autocorr, "autocorrelation of a word"),
    "correlate": (cmd_correlate, "correlation of u over v and its decomposition"),
    "closure": (cmd_closure, "forward closure of --set within [0, --n)"),
    "irreducible": (cmd_irreducible, "irreducible period set, q-sequence and case labels"),
    "enumerate": (cmd_enumerate, "enumerate Γ_n and write gamma_<n>.txt"),
    "witness": (cmd_witness, "binary word(s) realising an autocorrelation or correlation"),
    "validate": (cmd_validate, "is a bitvector a valid autocorrelation"),
    "bounds": (cmd_bounds, "bounds table as CSV (optionally SVG)"),
    "verify": (cmd_verify, "run every invariant suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--max-n", type=int, dest="max_n")
    common.add_argument("--set")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--gamma-dir", dest="gamma_dir")
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "text", "csv"), default="text")
    common.add_argument("--svg")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="periodica", description="Combinatorics of period sets of words.")
    sub = p.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=help_)
            for name, (_, help_) in COMMANDS.items()}
    subs["periods"].add_argument("word")
    subs["autocorr"].add_argument("word")
    subs["correlate"].add_argument("u")
    subs["correlate"].add_argument("v")
    subs["irreducible"].add_argument("bits", nargs="?", help="autocorrelation as a 0/1 string")
    subs["irreducible"].add_argument("--strict", action="store_true",
                                     help="reject sets that are not valid period sets")
    subs["witness"].add_argument("bits")
    subs["validate"].add_argument("bits")
    subs["verify"].add_argument("--words", type=int, default=2000, help="random words per lemma suite")
    subs["verify"].add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except (UsageError, DomainError) as e:
        print(f"periodica {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        print(f"periodica {args.command}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (UnsupportedLength, CacheError, OSError) as e:
        print(f"periodica {args.command}: {e}", file=sys.stderr)
        return EXIT_ENV


if __name__ == "__main__":
    sys.exit(main())
