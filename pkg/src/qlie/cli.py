"""Command line front end.

    qlie generate --n 3 --kind sl --out sl3.json
    qlie verify   --n 3
    qlie oracle   --n 2
    qlie eval     --n 2 --q 4
    qlie dump-r   --n 2 --format csv

Brackets are written as [first o second]. Exit codes: 0 success,
1 verification or consistency failure, 2 invalid input, 3 resource cap.
"""
from __future__ import annotations

import argparse
import configparser
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import CONVENTIONS, closed_form, compare_families, compute_structure_constants, roots
from .scalar import PoleError
from .serialize import (
    dumps_records, dumps_table, format_value, killing_csv, killing_records, r_csv, r_records,
    root_csv, root_records, table_csv,
)
from .uq import ResourceError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
COMMANDS = ("generate", "verify", "oracle", "eval", "dump-r")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 2
    kind: str = "gl"
    format: str = "json"
    out: str | None = None
    q: str | None = None
    term_cap: int | None = None
    threads: int = 1
    convention: str = "a"
    formulas: str = "printed"
    verbose: bool = False

    def validate(self):
        if self.n < 2:
            raise InputError("n must be at least 2")
        if self.kind not in ("gl", "sl"):
            raise InputError("kind must be gl or sl")
        if self.format not in ("json", "csv"):
            raise InputError("format must be json or csv")
        if self.threads < 1:
            raise InputError("threads must be positive")
        if self.term_cap is not None and self.term_cap < 1:
            raise InputError("term-cap must be positive")
        if self.convention == "b":
            raise InputError("convention b (rescaled targets) was removed: only the coefficient-array reading 'a' "
                             "reproduces the Hopf-algebra oracle")
        if self.convention != "a":
            raise InputError("convention must be a")
        if self.formulas not in CONVENTIONS:
            raise InputError(f"formulas must be one of {', '.join(CONVENTIONS)}")
        if self.command == "eval" and self.q is None:
            raise InputError("eval needs --q")


def sqrt_q(text: str) -> Fraction:
    """s = sqrt(q) for a positive rational q whose square root is rational."""
    try:
        qv = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--q {text!r} is not a rational number") from None
    if qv <= 0:
        raise InputError("--q must be positive")
    a, b = qv.numerator, qv.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra != a or rb * rb != b:
        raise InputError(f"--q {text} has no rational square root; q^(1/2) must stay rational")
    return Fraction(ra, rb)


# ---------------------------------------------------------------------------

_KEYS = {"n": int, "kind": str, "format": str, "out": str, "q": str, "term-cap": int,
         "threads": int, "convention": str, "formulas": str, "verbose": str}


def read_config(path: str) -> dict:
    """``key = value`` lines, '#' comments; keys are the long flag names."""
    parser = configparser.ConfigParser(interpolation=None)
    text = Path(path).read_text()
    parser.read_string("[defaults]\n" + text)
    out = {}
    for key, value in parser["defaults"].items():
        if key not in _KEYS:
            raise InputError(f"unknown config key {key!r}")
        try:
            v = _KEYS[key](value)
        except ValueError:
            raise InputError(f"bad value for {key}: {value!r}") from None
        if key == "verbose":
            v = value.strip().lower() in ("1", "true", "yes", "on")
        out[key.replace("-", "_")] = v
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qlie", description="Quantum Lie algebras L_q(gl_n) and L_q(sl_n).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="key = value file supplying defaults")
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=["gl", "sl"])
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--q", help="rational value of q with a rational square root (eval)")
    p.add_argument("--term-cap", type=int, dest="term_cap")
    p.add_argument("--threads", type=int, help="accepted for compatibility; work is single-threaded")
    p.add_argument("--convention", help="reading of the adjoint-coefficient displays (only 'a')")
    p.add_argument("--formulas", help="closed forms to compare against: printed or corrected")
    p.add_argument("-v", "--verbose", action="store_true", default=None)
    return p


def parse_config(argv: list) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = read_config(args.config) if args.config else {}
    for key in ("n", "kind", "format", "out", "q", "term_cap", "threads", "convention",
                "formulas", "verbose"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    cfg = RunConfig(command=args.command, **values)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------

def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _sibling(path: str, tag: str) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}.{tag}{p.suffix}"))


def _log(cfg: RunConfig, msg: str):
    if cfg.verbose:
        print(msg, file=sys.stderr)


def cmd_generate(cfg: RunConfig) -> int:
    from .killing import killing_form

    sc = compute_structure_constants(cfg.n, cfg.kind)
    rd = roots(cfg.n, families=sc.families())
    kd = killing_form(cfg.n, cfg.kind, check=False)
    if cfg.format == "json":
        texts = (dumps_table(sc), dumps_records(root_records(rd)),
                 dumps_records(killing_records(kd.gram, kd.labels)))
    else:
        texts = (table_csv(sc), root_csv(rd), killing_csv(kd.gram, kd.labels))
    if cfg.out is None:
        sys.stdout.write(texts[0])
    else:
        _emit(texts[0], cfg.out)
        _emit(texts[1], _sibling(cfg.out, "roots"))
        _emit(texts[2], _sibling(cfg.out, "killing"))
    _log(cfg, f"{cfg.kind}_{cfg.n}: {len(sc.labels)} labels, {len(sc.table)} nonzero brackets")
    status = EXIT_OK
    diff = compare_families(sc.families(), closed_form(cfg.n, cfg.kind, convention=cfg.formulas).families())
    if diff:
        fam, idx, got, want = diff[0]
        fams = sorted({d[0] for d in diff})
        print(f"closed forms ({cfg.formulas}) disagree in {len(diff)} entries of {', '.join(fams)}; "
              f"first {fam}{idx}: computed {got}, closed form {want}", file=sys.stderr)
        status = EXIT_FAIL
    bad = kd.mismatches()
    if bad:
        a, b, got, want = bad[0]
        print(f"Killing form B({a}, {b}) = {got}, printed {want}", file=sys.stderr)
        status = EXIT_FAIL
    return status


def cmd_verify(cfg: RunConfig) -> int:
    from .verify import verify_all

    report = verify_all(cfg.n, cfg.kind, convention=cfg.formulas)
    cf = closed_form(cfg.n, cfg.kind, convention=cfg.formulas)
    diff = compare_families(compute_structure_constants(cfg.n, cfg.kind).families(), cf.families())
    lines = [report.format()]
    if diff:
        fam, idx, got, want = diff[0]
        lines.append(f"  closed forms ({cfg.formulas}): FAIL [{len(diff)} entries] -- {fam}{idx}: "
                     f"computed {got}, closed form {want}")
    else:
        lines.append(f"  closed forms ({cfg.formulas}): pass")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK if report.passed and not diff else EXIT_FAIL


def cmd_oracle(cfg: RunConfig) -> int:
    from .oracle import ORACLE_TERM_CAP, oracle_structure_constants

    cap = cfg.term_cap or ORACLE_TERM_CAP
    slow = oracle_structure_constants(cfg.n, cfg.kind, term_cap=cap)
    fast = compute_structure_constants(cfg.n, cfg.kind)
    d = fast.first_difference(slow)
    if d is None:
        _emit(f"oracle {cfg.kind}_{cfg.n}: identical ({len(fast.table)} nonzero brackets)\n", cfg.out)
        return EXIT_OK
    a, b, t, x, y = d
    _emit(f"oracle {cfg.kind}_{cfg.n}: differ at [{a} o {b}]_{t}: R-matrix {x}, Hopf {y}\n", cfg.out)
    return EXIT_FAIL


def cmd_eval(cfg: RunConfig) -> int:
    s0 = sqrt_q(cfg.q)
    sc = compute_structure_constants(cfg.n, cfg.kind)
    evaluated = {}
    for key, entry in sc.table.items():
        row = {}
        for t, c in entry.items():
            try:
                v = c.eval(s0)
            except PoleError:
                raise InputError(f"[{key[0]} o {key[1]}]_{t} = {c} has a pole at q = {cfg.q}") from None
            if v:
                row[t] = v
        if row:
            evaluated[key] = row
    from .algebra import StructureConstants
    out = StructureConstants(sc.n, sc.kind, sc.labels, evaluated)
    text = dumps_table(out, format_value) if cfg.format == "json" else table_csv(out, format_value)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_dump_r(cfg: RunConfig) -> int:
    from .rmatrix import check_intertwining, r_matrices

    rm = r_matrices(cfg.n)
    text = dumps_records(r_records(rm)) if cfg.format == "json" else r_csv(rm)
    _emit(text, cfg.out)
    bad = [label for label, R in rm.items() if not check_intertwining(R)]
    if bad:
        print(f"intertwining fails for {', '.join(bad)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


_DISPATCH = {"generate": cmd_generate, "verify": cmd_verify, "oracle": cmd_oracle,
             "eval": cmd_eval, "dump-r": cmd_dump_r}


def main(argv: list | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return _DISPATCH[cfg.command](cfg)
    except InputError as exc:
        print(f"qlie: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"qlie: resource cap: {exc} (raise --term-cap to continue)", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"qlie: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
