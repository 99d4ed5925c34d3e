"""Command-line front end.

Every subcommand writes a deterministic JSON report (sorted keys, no
timings) to stdout or ``--out``.  Exit status: 0 when every check passes,
1 on any verification failure, 2 on usage or configuration errors.

Settings come from flags, then from a ``--config`` file of ``key = value``
lines (``#`` starts a comment), then from built-in defaults.  Config keys
are the long flag names with dashes or underscores, e.g. ``precision-bits``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .geometry import WeightSystem, WeightSystemError, catalog, parse_weights

DEFAULTS = {
    "weights": None,
    "q": None,
    "l": None,
    "lmin": -2,
    "lmax": 2,
    "precision_bits": 256,
    "tolerance": 1e-30,
    "order": None,
    "side": None,
    "nu": None,
    "format": "json",
    "window": 0,
    "z": "1",
    "lambda": "1/10",
    "tol": 1e-12,
    "rel_tol": 1e-8,
    "samples": "0.02,0.03,0.04",
    "terms": 200,
    "skip": "",
}

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# config and value parsing
# ---------------------------------------------------------------------------


def read_config(path: str) -> dict:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def parse_range(text: str) -> list[int]:
    """"a..b" (inclusive), "a,b,c" or a single integer."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer range {text!r}") from exc


def _number(text, kind=float):
    try:
        if kind is Fraction:
            return Fraction(str(text))
        if kind is complex:
            return complex(str(text).replace(" ", "").replace("i", "j"))
        return kind(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad value {text!r}") from exc


def _z_value(text):
    """Exact rationals stay exact; anything else becomes complex."""
    try:
        return Fraction(str(text))
    except ValueError:
        return _number(text, complex)


class Settings:
    """Flag values layered over the config file and the defaults."""

    def __init__(self, args: argparse.Namespace):
        self._flags = {k: v for k, v in vars(args).items() if v is not None}
        self._config = read_config(args.config) if getattr(args, "config", None) else {}

    def raw(self, key: str):
        if key in self._flags:
            return self._flags[key]
        if key in self._config:
            return self._config[key]
        return DEFAULTS[key]

    def int(self, key: str) -> int | None:
        v = self.raw(key)
        return None if v is None else _number(v, int)

    def float(self, key: str) -> float:
        v = _number(self.raw(key), float)
        if v <= 0:
            raise UsageError(f"{key} must be positive")
        return v

    def systems(self, default_all: bool = True) -> list[WeightSystem]:
        v = self.raw("weights")
        if v is None:
            if default_all:
                return catalog()
            raise UsageError("--weights is required")
        return [parse_weights(part.strip()) for part in str(v).split(";") if part.strip()]

    def windows(self) -> list[int]:
        if self.raw("l") is not None:
            return parse_range(self.raw("l"))
        return parse_range(f"{self.int('lmin')}..{self.int('lmax')}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _label(ws: WeightSystem) -> str:
    return ws.label()


def cmd_describe(st: Settings) -> dict:
    from .state_spaces import describe

    cases = {_label(ws): describe(ws) for ws in st.systems(default_all=False)}
    return {"pass": True, "cases": cases}


def _nu(st: Settings, ws: WeightSystem):
    v = st.raw("nu")
    if v is None:
        return None
    nu = parse_range(v)
    if len(nu) != ws.N + 1:
        raise UsageError(f"--nu needs {ws.N + 1} entries")
    return tuple(nu)


def _side(st: Settings) -> str:
    side = str(st.raw("side") or "fjrw").upper()
    if side not in ("GW", "FJRW"):
        raise UsageError("--side must be gw or fjrw")
    return side


def series_rows(ws: WeightSystem, side: str, nu, K: int) -> list[tuple]:
    """(exponent, sector, p-power, z-power, lambda-power, num, den, twopi-power) rows."""
    from .arith import ZLaurent
    from .hypergeom import SeriesDomainError, build_series

    try:
        s = build_series(ws, side, nu, K)
    except SeriesDomainError as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    for e in s.exponents():
        sector, coeff = s.terms[e]
        parts = [(0, coeff)] if side == "FJRW" else list(enumerate(coeff.coeffs))
        for ppow, c in parts:
            if not hasattr(c, "terms"):
                c = ZLaurent.const(Fraction(c))
            for (zp, lp), val in sorted(c.terms.items()):
                val = Fraction(val)
                rows.append((str(e), str(sector), ppow, zp, lp, val.numerator, val.denominator, 0))
    return rows


def cmd_series(st: Settings) -> dict | str:
    systems = st.systems(default_all=False)
    if len(systems) != 1:
        raise UsageError("series takes a single weight system")
    ws = systems[0]
    side = _side(st)
    K = st.int("order") or 6 * ws.d
    rows = series_rows(ws, side, _nu(st, ws), K)
    fmt = st.raw("format")
    header = ("exponent", "sector", "p_power", "z_power", "lambda_power", "numerator", "denominator", "twopi_power")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "json":
        raise UsageError("--format must be csv or json")
    return {"pass": True, "weights": list(ws.weights), "side": side, "order": K,
            "columns": list(header), "rows": [list(r) for r in rows]}


def cmd_verify_orlov(st: Settings) -> dict:
    from .continuation import apply_u
    from .branes import inv_ch_kclass, inv_ch_koszul, orlov_kclass

    cases = []
    for ws in st.systems():
        qs = parse_range(st.raw("q")) if st.raw("q") is not None else list(range(2 * ws.d))
        for l in st.windows():
            for q in qs:
                lhs = apply_u(ws, l, inv_ch_koszul(ws, q))
                rhs = inv_ch_kclass(ws, orlov_kclass(ws, q, l))
                equal = all((a - b).is_zero() for a, b in zip(lhs.coeffs, rhs.coeffs))
                cases.append({"case": {"weights": _label(ws), "q": q, "l": l},
                              "lhs": [repr(a) for a in lhs.coeffs], "rhs": [repr(b) for b in rhs.coeffs],
                              "equal": equal})
    return {"pass": all(c["equal"] for c in cases), "cases": cases}


def cmd_verify_hrr(st: Settings) -> dict:
    from .branes import euler_pairing_cy, euler_pairing_mf, orlov_kclass

    cases = []
    for ws in st.systems():
        qs = parse_range(st.raw("q")) if st.raw("q") is not None else list(range(2 * ws.d))
        for l in st.windows():
            images = {q: orlov_kclass(ws, q, l) for q in qs}
            for a in qs:
                for b in qs:
                    lhs = euler_pairing_mf(ws, a, b)
                    rhs = euler_pairing_cy(ws, images[a], images[b])
                    cases.append({"case": {"weights": _label(ws), "q": a, "q2": b, "l": l},
                                  "lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs})
    return {"pass": all(c["equal"] for c in cases), "cases": cases}


def cmd_verify_monodromy(st: Settings) -> dict:
    from .branes import monodromy_check
    from .continuation import conifold_consistency

    cases = []
    for ws in st.systems():
        m = monodromy_check(ws)
        for l in st.windows():
            c = conifold_consistency(ws, l)
            cases.append({"case": {"weights": _label(ws), "l": l},
                          "lhs": f"U_{l} U_{l + 1}^-1", "rhs": f"T_O({l})", "equal": c["pass"]})
        cases.append({"case": {"weights": _label(ws), "relation": "(O(-1) T_O^-1)^d"},
                      "lhs": "(O(-1) T_O^-1)^d", "rhs": "id", "equal": m["conifold_cycle_identity"]})
        cases.append({"case": {"weights": _label(ws), "relation": "Phi_0 Phi_1^-1"},
                      "lhs": "Phi_0 Phi_1^-1", "rhs": "T_O", "equal": m["orlov_ratio_is_spherical"]})
    return {"pass": all(c["equal"] for c in cases), "cases": cases}


def cmd_verify_gamma(st: Settings) -> dict:
    from .criteria import gamma_pairing

    r = gamma_pairing(st.systems(), prec=st.int("precision_bits"), tol=st.float("tolerance"))
    return {k: v for k, v in r.items() if k not in ("criterion",)}


def cmd_verify_pf(st: Settings) -> dict:
    from .criteria import picard_fuchs

    return picard_fuchs(st.systems(), order=st.int("order") or 30)


def cmd_verify_gkz(st: Settings) -> dict:
    from .hypergeom import SeriesDomainError, verify_gkz_ladder

    sides = [_side(st)] if st.raw("side") is not None else ["GW", "FJRW"]
    cases = {}
    for ws in st.systems():
        for side in sides:
            try:
                cases[f"{_label(ws)} {side}"] = verify_gkz_ladder(ws, side, _nu(st, ws), st.int("order"))
            except SeriesDomainError as exc:
                raise UsageError(str(exc)) from exc
    return {"pass": all(c["pass"] for c in cases.values()), "cases": cases}


def cmd_verify_givental(st: Settings) -> dict:
    from .givental import birkhoff_factorize, birkhoff_residual_ok, specialization_identity, upsilon0_is_F_phi0

    order = st.int("order")
    cases = {}
    for ws in st.systems():
        specialized = specialization_identity(ws, order)
        res = birkhoff_factorize(ws, None if order is None else max(order // 3, 1))
        ups = upsilon0_is_F_phi0(ws, res)
        resid = birkhoff_residual_ok(res)
        cases[_label(ws)] = {"specialization": specialized, "birkhoff_residual": resid, "upsilon0": ups,
                             "pass": specialized["pass"] and resid and ups["pass"]}
    return {"pass": all(c["pass"] for c in cases.values()), "cases": cases}


def cmd_continue(st: Settings) -> dict:
    from .continuation import ResonanceError, verify_mb
    from .kernels import StepUnderflow

    samples = tuple(_number(s, float) for s in str(st.raw("samples")).split(",") if s.strip())
    if not samples or any(not 0 < u < 1 for u in samples):
        raise UsageError("samples must lie in (0, 1)")
    cases = {}
    for ws in st.systems(default_all=False):
        try:
            r = verify_mb(ws, st.int("window"), _z_value(st.raw("z")), _number(st.raw("lambda"), Fraction),
                          samples, st.float("tol"), st.float("rel_tol"), K=st.int("terms"))
        except (ResonanceError, StepUnderflow) as exc:
            raise UsageError(str(exc)) from exc
        cases[_label(ws)] = r
    return {"pass": all(c["pass"] for c in cases.values()), "cases": cases}


def cmd_suite(st: Settings) -> dict:
    from . import criteria

    skip = set(parse_range(st.raw("skip"))) if st.raw("skip") else set()
    systems = st.systems() if st.raw("weights") is not None else None
    results = []
    for num, fn in enumerate(criteria.ALL, 1):
        if num in skip:
            results.append({"criterion": num, "name": fn.__name__, "pass": True, "skipped": True})
        elif systems is None:
            results.append(fn())
        else:
            results.append(fn(systems))
    return {"pass": all(r["pass"] for r in results), "criteria": results}


VERIFY = {
    "orlov": cmd_verify_orlov,
    "hrr": cmd_verify_hrr,
    "monodromy": cmd_verify_monodromy,
    "gamma-pairing": cmd_verify_gamma,
    "pf": cmd_verify_pf,
    "gkz": cmd_verify_gkz,
    "givental": cmd_verify_givental,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", help='catalog name or "1,1,1,1,2"; several separated by ";"')
    p.add_argument("--config", help="key = value settings file")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lgcy", description="LG/CY correspondence checks for weighted CY hypersurfaces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("describe", help="bases, degrees and Gram matrices")
    _common(p)

    p = sub.add_parser("series", help="dump symbolic I-function coefficients")
    _common(p)
    p.add_argument("--side", choices=["gw", "fjrw", "GW", "FJRW"])
    p.add_argument("--nu")
    p.add_argument("--order", type=int)
    p.add_argument("--format", choices=["csv", "json"])

    p = sub.add_parser("verify", help="run one family of checks")
    vsub = p.add_subparsers(dest="check", parser_class=_Parser)
    for name in VERIFY:
        v = vsub.add_parser(name)
        _common(v)
        if name in ("orlov", "hrr", "monodromy"):
            v.add_argument("--q")
            v.add_argument("--l")
            v.add_argument("--lmin", type=int)
            v.add_argument("--lmax", type=int)
        if name == "gamma-pairing":
            v.add_argument("--precision-bits", type=int)
            v.add_argument("--tolerance", type=float)
        if name in ("pf", "gkz", "givental"):
            v.add_argument("--order", type=int)
        if name == "gkz":
            v.add_argument("--side", choices=["gw", "fjrw", "GW", "FJRW"])
            v.add_argument("--nu")

    p = sub.add_parser("continue", help="transport H_GW through a window and compare")
    _common(p)
    p.add_argument("--window", type=int)
    p.add_argument("--z")
    p.add_argument("--lambda", dest="lambda")
    p.add_argument("--tol", type=float)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--samples")
    p.add_argument("--terms", type=int)

    p = sub.add_parser("suite", help="every acceptance criterion")
    _common(p)
    p.add_argument("--skip", help="criterion numbers to skip, e.g. 4 or 4,5")
    return ap


def _emit(report, out: str | None) -> None:
    text = report if isinstance(report, str) else json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


VALUE_FLAGS = {"--q", "--l", "--lmin", "--lmax", "--window", "--nu", "--z", "--lambda"}


def _glue_negative(argv: list[str]) -> list[str]:
    """Let "--l -2..2" through: argparse would read -2..2 as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt[:1] == "-" and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None) -> int:
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        if args.command is None or (args.command == "verify" and args.check is None):
            raise UsageError("missing subcommand")
        st = Settings(args)
        if args.command == "verify":
            handler = VERIFY[args.check]
            name = f"verify {args.check}"
        else:
            handler = {"describe": cmd_describe, "series": cmd_series,
                       "continue": cmd_continue, "suite": cmd_suite}[args.command]
            name = args.command
        report = handler(st)
    except (UsageError, WeightSystemError) as exc:
        print(f"lgcy: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(report, dict):
        report = {"suite": name, "schema": SCHEMA_VERSION, "version": __version__, **report}
        ok = bool(report["pass"])
    else:
        ok = True
    _emit(report, getattr(args, "out", None))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
