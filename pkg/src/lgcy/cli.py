"""Command-line front end.

    lgcy verify-koszul [--potential FILE]
    lgcy orlov --t 1 --q 0 --m 0 --method both
    lgcy check-main [--t 4:16 --q -6:6 --m 0:1] [--parallel N]
    lgcy continue [--l 0:1] [--log-v RE[,IM] ...]
    lgcy pf [--terms N]

Global flags --json and --config go before the command.  Exit codes: 0 pass,
1 mathematical failure, 2 input error, 3 parameter-range error.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .cohomology import GwClass
from .mirror import RangeError, build_mirror_map, check_main_theorem
from .mf.potential import ENV_POTENTIAL, Potential, PotentialError, default_potential

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_RANGE = 0, 1, 2, 3

DEFAULT_GW_SAMPLES = (-7.2, -7.8, -9.0)
DEFAULT_FJRW_SAMPLES = (-5.5, -4.5, -3.0)
GW_TOL, FJRW_TOL = 1e-8, 1e-6


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- parsing helpers


def parse_range(text: str | int | Sequence[int], name: str) -> list[int]:
    """'a', 'a:b' (inclusive) or 'a,b,c'; lists and ints from a config file also work."""
    if isinstance(text, bool):
        raise InputError(f"--{name}: expected an integer or a:b range")
    if isinstance(text, int):
        return [text]
    if isinstance(text, (list, tuple)):
        vals = [v for part in text for v in parse_range(part, name)]
        if not vals:
            raise InputError(f"--{name}: empty range")
        return vals
    s = str(text).strip()
    try:
        if ":" in s[1:]:
            cut = s.index(":", 1)
            lo, hi = int(s[:cut]), int(s[cut + 1 :])
            vals = list(range(lo, hi + 1))
        else:
            vals = [int(v) for v in s.split(",")]
    except ValueError:
        raise InputError(f"--{name}: cannot parse {text!r}; use N or A:B") from None
    if not vals:
        raise InputError(f"--{name}: range {text!r} is empty")
    return vals


_NAMES = {"pi": math.pi, "log3": math.log(3.0), "e": math.e}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_real(expr: str) -> float:
    """Arithmetic on numbers and the names pi, log3, e."""

    def ev(node: ast.AST) -> float:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise InputError(f"unsupported expression {expr!r}")

    try:
        return ev(ast.parse(expr.strip(), mode="eval"))
    except SyntaxError:
        raise InputError(f"cannot parse {expr!r}") from None


def parse_log_v(text: str | float | Sequence[float], l: int) -> complex:
    """'RE' or 'RE,IM'; a missing IM puts the point on the centre line of window l."""
    if isinstance(text, (int, float)):
        return complex(float(text), (2 * l - 1) * math.pi)
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise InputError("log_v pairs need exactly two numbers")
        return complex(float(text[0]), float(text[1]))
    parts = str(text).split(",")
    if len(parts) == 1:
        return complex(_eval_real(parts[0]), (2 * l - 1) * math.pi)
    if len(parts) == 2:
        return complex(_eval_real(parts[0]), _eval_real(parts[1]))
    raise InputError(f"cannot parse log v {text!r}; use RE or RE,IM")


def gw_plain(c: GwClass) -> list:
    """Rational coefficients as numbers when possible, else JSON scalars."""
    out: list[Any] = []
    for x in c.coeffs:
        if x.b == 0 and x.a.denominator == 1:
            out.append(int(x.a))
        elif x.b == 0:
            out.append(str(x.a))
        else:
            out.append(x.to_json())
    return out


# ---------------------------------------------------------------- config


@dataclass
class RunConfig:
    command: str
    t: list[int] = field(default_factory=list)
    q: list[int] = field(default_factory=list)
    m: list[int] = field(default_factory=list)
    l: list[int] = field(default_factory=list)
    log_v: list[Any] = field(default_factory=list)
    method: str = "ledger"
    potential: str | None = None
    tol: float | None = None
    terms: int | None = None
    json: bool = False
    parallel: int = 1
    perturb: str | None = None
    tamper: str | None = None

    def validate(self) -> None:
        if self.tol is not None and not self.tol > 0:
            raise InputError("--tol must be positive")
        if self.terms is not None and self.terms < 1:
            raise InputError("--terms must be >= 1")
        if self.parallel < 1:
            raise InputError("--parallel must be >= 1")
        if self.method not in ("ledger", "closed", "both"):
            raise InputError(f"--method must be ledger, closed or both, not {self.method!r}")


_DEFAULTS = {
    "orlov": {"t": "1", "q": "0", "m": "0", "method": "both"},
    "check-main": {"t": "4:16", "q": "-6:6", "m": "0:1", "method": "ledger"},
    "continue": {"l": "0:1"},
}
_CONFIG_KEYS = {"t", "q", "m", "l", "log_v", "method", "potential", "tol", "terms", "json", "parallel"}


def build_config(ns: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config file, then command-line flags."""
    merged: dict[str, Any] = dict(_DEFAULTS.get(ns.command, {}))
    if ns.config:
        try:
            with open(ns.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise InputError("config file must hold a JSON object")
        unknown = set(cfg) - _CONFIG_KEYS
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        merged.update(cfg)
    for key in _CONFIG_KEYS:
        v = getattr(ns, key, None)
        if v is not None and v is not False:
            merged[key] = v
    rc = RunConfig(command=ns.command)
    for key in ("t", "q", "m", "l"):
        if key in merged:
            setattr(rc, key, parse_range(merged[key], key))
    if "log_v" in merged:
        lv = merged["log_v"]
        rc.log_v = list(lv) if isinstance(lv, (list, tuple)) else [lv]
    rc.method = merged.get("method", rc.method)
    rc.potential = merged.get("potential")
    try:
        rc.tol = float(merged["tol"]) if merged.get("tol") is not None else None
        rc.terms = int(merged["terms"]) if merged.get("terms") is not None else None
        rc.parallel = int(merged.get("parallel") or 1)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad numeric option: {exc}") from exc
    rc.json = bool(merged.get("json", False))
    rc.perturb = getattr(ns, "perturb", None)
    rc.tamper = getattr(ns, "tamper", None)
    rc.validate()
    return rc


def load_potential(rc: RunConfig) -> Potential:
    if rc.potential:
        return Potential.load(rc.potential)
    return default_potential()


# ---------------------------------------------------------------- output


class Out:
    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json

    def emit(self, payload: dict, lines: Sequence[str]) -> None:
        if self.as_json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            for line in lines:
                print(line)


# ---------------------------------------------------------------- commands


def cmd_verify_koszul(rc: RunConfig) -> int:
    from .mf.factorization import MatrixFactorization, build_koszul_minus, build_koszul_plus, validate_mf

    P = load_potential(rc)
    Km = build_koszul_minus(P, validate=False)
    Kp = build_koszul_plus(P, validate=False)
    if rc.tamper:
        try:
            i, j = (int(v) for v in rc.tamper.split(","))
        except ValueError:
            raise InputError("--tamper expects ROW,COL") from None
        if not (0 <= i < len(Km) and 0 <= j < len(Km)):
            raise InputError(f"--tamper indices must lie in 0..{len(Km) - 1}")
        rows = {r: dict(cols) for r, cols in Km.rows.items()}
        old = rows.get(i, {}).get(j, {})
        rows.setdefault(i, {})[j] = {k: c * 2 for k, c in old.items()} or {0: 1}
        Km = MatrixFactorization(Km.summands, rows, P)
    results = {"K_minus": validate_mf(Km), "K_plus": validate_mf(Kp)}
    ok = all(r.ok for r in results.values())
    payload = {
        "pass": ok,
        "K_minus": {"summands": len(Km), **results["K_minus"].to_json()},
        "K_plus": {"summands": len(Kp), **results["K_plus"].to_json()},
    }
    lines = [
        f"K_-: {len(Km)} summands, {'ok' if results['K_minus'].ok else 'FAILED'}",
        f"K_+: {len(Kp)} summands, {'ok' if results['K_plus'].ok else 'FAILED'}",
    ]
    for name, r in results.items():
        for dgn in r.diagnostics[:10]:
            lines.append(f"  {name}: {json.dumps(dgn)}")
    Out(rc.json).emit(payload, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_orlov(rc: RunConfig) -> int:
    from .mf.window import orlov_chern_closed, orlov_chern_ledger

    P = load_potential(rc)
    methods = ["ledger", "closed"] if rc.method == "both" else [rc.method]
    tuples = [(t, q, m) for t in rc.t for q in rc.q for m in rc.m]
    if "ledger" in methods:
        bad = [(t, q) for t, q, _ in tuples if t - q < 1]
        if bad:
            raise RangeError(f"ledger route needs t - q >= 1; offending (t, q): {sorted(set(bad))}")
    results = []
    lines = []
    ok = True
    for t, q, m in tuples:
        vals = {}
        if "ledger" in methods:
            vals["ledger"] = orlov_chern_ledger(t, q, m, P)
        if "closed" in methods:
            vals["closed"] = orlov_chern_closed(t, q, m)
        agree = len(vals) < 2 or vals["ledger"] == vals["closed"]
        ok &= agree
        entry = {"t": t, "q": q, "m": m, **{k: gw_plain(v) for k, v in vals.items()}}
        if len(vals) == 2:
            entry["agree"] = agree
        results.append(entry)
        desc = "  ".join(f"{k}={gw_plain(v)}" for k, v in vals.items())
        tag = "" if len(vals) < 2 else ("  agree" if agree else "  DISAGREE")
        lines.append(f"ch Orl_{t}(K_-({q})[{m}]) = {desc}{tag}")
    Out(rc.json).emit({"pass": ok, "results": results}, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def _main_worker_init(ledgers: dict) -> None:
    from .mf.window import WindowLedger, seed_ledger

    for w, led in ledgers.items():
        seed_ledger(int(w), WindowLedger.from_json(led))


def _main_worker(args: tuple) -> dict:
    t, q, m, method, perturb = args
    mirror = _perturbed_mirror(t, perturb)
    return check_main_theorem(t, q, m, method, mirror=mirror).to_json()


def _perturbed_mirror(t: int, perturb: str | None):
    if not perturb:
        return None
    try:
        col, deg = (int(v) for v in perturb.split(","))
    except ValueError:
        raise InputError("--perturb expects COLUMN,DEGREE") from None
    if not (0 <= col < 4 and 0 <= deg < 4):
        raise InputError("--perturb indices must lie in 0..3")
    return build_mirror_map(t).perturbed(col, deg)


def cmd_check_main(rc: RunConfig) -> int:
    from .mf.window import window_ledger

    if rc.method == "both":
        raise InputError("check-main takes --method ledger or closed")
    P = load_potential(rc)
    if rc.potential:
        # the Orlov routes and worker processes read the potential from the environment
        os.environ[ENV_POTENTIAL] = rc.potential
    grid = [(t, q, m) for t in rc.t for q in rc.q for m in rc.m]
    single = len(grid) == 1
    skipped = []
    if rc.method == "ledger":
        keep = [g for g in grid if g[0] - 3 - g[1] >= 1]
        skipped = [g for g in grid if g[0] - 3 - g[1] < 1]
        if single and skipped:
            t, q, _ = grid[0]
            raise RangeError(f"ledger route needs t - 3 - q >= 1, got t={t}, q={q}")
        grid = keep
    _perturbed_mirror(4, rc.perturb)  # validate the hook before any work
    reports: list[dict] = []
    if rc.parallel > 1 and len(grid) > 1:
        ledgers = {}
        if rc.method == "ledger":
            for w in sorted({t - 3 - q for t, q, _ in grid}):
                ledgers[w] = window_ledger(w, P).to_json()
        with ProcessPoolExecutor(rc.parallel, initializer=_main_worker_init, initargs=(ledgers,)) as ex:
            reports = list(ex.map(_main_worker, [(t, q, m, rc.method, rc.perturb) for t, q, m in grid]))
    else:
        for t, q, m in grid:
            reports.append(check_main_theorem(t, q, m, rc.method, mirror=_perturbed_mirror(t, rc.perturb)).to_json())
    failed = [r["params"] for r in reports if not r["pass"]]
    ok = not failed and bool(reports)
    payload = {
        "pass": ok,
        "checked": len(reports),
        "failed": failed,
        "skipped": [{"t": t, "q": q, "m": m} for t, q, m in skipped],
        "results": reports,
    }
    lines = [f"checked {len(reports)} tuples, {len(failed)} failed, {len(skipped)} outside t-3-q >= 1 skipped"]
    for p in failed:
        lines.append(f"  FAIL t={p['t']} q={p['q']} m={p['m']}")
    Out(rc.json).emit(payload, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_continue(rc: RunConfig) -> int:
    from .analytic.contour import check_band, continuation_sample
    from .analytic.series import GW_RADIUS_LOG

    samples: list[tuple[int, complex]] = []
    for l in rc.l:
        if abs(l) > 3:
            raise RangeError("continuation is supported for |l| <= 3")
        raw = rc.log_v or [*DEFAULT_GW_SAMPLES, *DEFAULT_FJRW_SAMPLES]
        for item in raw:
            samples.append((l, parse_log_v(item, l)))
    for l, lv in samples:
        check_band(l, lv)
        if abs(lv.real - GW_RADIUS_LOG) < 0.2:
            raise RangeError(f"Re(log v) = {lv.real:g} is too close to the wall -6 log 3 for the series")
    terms = rc.terms or 400
    rows = []
    lines = []
    ok = True
    for l, lv in samples:
        s = continuation_sample(l, lv, terms=terms)
        tol = rc.tol if rc.tol is not None else (GW_TOL if s.side == "GW" else FJRW_TOL)
        good = s.rel_error <= tol
        ok &= good
        rows.append({**s.to_json(), "tol": tol, "pass": good})
        target = "H_GW series" if s.side == "GW" else f"U_{l}(H_FJRW)"
        lines.append(
            f"l={l} log v={lv.real:+.4f}{lv.imag:+.4f}i  vs {target}: rel err {s.rel_error:.2e} "
            f"(tol {tol:g}) {'ok' if good else 'FAIL'}"
        )
    Out(rc.json).emit({"pass": ok, "samples": rows}, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_pf(rc: RunConfig) -> int:
    from .analytic.series import pf_residual

    tol = rc.tol if rc.tol is not None else 1e-10
    igw_terms = rc.terms or 40
    fj_terms = rc.terms or 30
    igw = pf_residual("IGW", igw_terms)
    fj = pf_residual("IFJRW", fj_terms)
    ok = igw == 0 and fj <= tol
    payload = {
        "pass": ok,
        "IGW": {"terms": igw_terms, "max_residual": str(Fraction(igw)), "exact": True},
        "IFJRW": {"terms": fj_terms, "max_relative_residual": fj, "tol": tol},
    }
    lines = [
        f"IGW  ({igw_terms} coefficients, exact): max residual {igw}",
        f"IFJRW ({fj_terms} coefficients): max relative residual {fj:.3e} (tol {tol:g})",
    ]
    Out(rc.json).emit(payload, lines)
    return EXIT_PASS if ok else EXIT_FAIL


COMMANDS = {
    "verify-koszul": cmd_verify_koszul,
    "orlov": cmd_orlov,
    "check-main": cmd_check_main,
    "continue": cmd_continue,
    "pf": cmd_pf,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 is also argparse's default; keep the message short
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lgcy", description="LG/CY correspondence checks for two cubics in P^5.")
    ap.add_argument("--json", action="store_true", default=None, help="machine-readable output")
    ap.add_argument("--config", help="JSON file of option defaults; flags win")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        p.add_argument("--potential", help=f"potential JSON file (default ${ENV_POTENTIAL} or Fermat split)")
        p.add_argument("--tol", type=float)
        p.add_argument("--terms", type=int)
        p.add_argument("--parallel", type=int)

    p = sub.add_parser("verify-koszul", help="validate K_- and K_+")
    common(p)
    p.add_argument("--tamper", help=argparse.SUPPRESS)

    p = sub.add_parser("orlov", help="ch(Orl_t(K_-(q)[m])) by ledger and/or closed form")
    common(p)
    for name in ("t", "q", "m"):
        p.add_argument(f"--{name}", help="N or A:B")
    p.add_argument("--method", choices=("ledger", "closed", "both"))

    p = sub.add_parser("check-main", help="U_t(ch K_-(q)[m]) against the Orlov side")
    common(p)
    for name in ("t", "q", "m"):
        p.add_argument(f"--{name}", help="N or A:B")
    p.add_argument("--method", choices=("ledger", "closed"))
    p.add_argument("--perturb", help=argparse.SUPPRESS)

    p = sub.add_parser("continue", help="Mellin-Barnes continuation against both series")
    common(p)
    p.add_argument("--l", help="window index, N or A:B")
    p.add_argument("--log-v", dest="log_v", action="append", help="RE or RE,IM (pi and log3 allowed)")

    p = sub.add_parser("pf", help="Picard-Fuchs residuals of both I-series")
    common(p)
    return ap


_VALUE_FLAGS = {"--t", "--q", "--m", "--l", "--log-v", "--tol"}


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--q -6:6`` into ``--q=-6:6``; argparse would read -6:6 as an option."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    ns = ap.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    try:
        rc = build_config(ns)
        return COMMANDS[rc.command](rc)
    except (InputError, PotentialError) as exc:
        print(f"lgcy: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RangeError as exc:
        print(f"lgcy: range error: {exc}", file=sys.stderr)
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())
