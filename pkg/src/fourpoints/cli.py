"""Command-line interface: ``fourpoints <command> ...``.

Exit codes: 0 success, 2 parse or usage error, 3 domain error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks
from .errors import DomainError, FourPointsError, ParseError, VerificationFailure
from .forms import FORM_KINDS, convert, form_j
from .invariants import j_invariant, j_of_points
from .moebius import FourPoints, cross_ratio, cross_ratio_orbit
from .numerics import INF, RHO, is_inf
from .shape import SvgOptions, cross_ratio_geometric, curvilinear_triangles, shape_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4

DEFAULT_DIGITS = 15

_NAMED = {"inf": INF, "rho": RHO, "rho2": RHO.conjugate()}


# ------------------------------------------------------------------ literals


def _scan_real(text: str, pos: int) -> tuple[float | None, int]:
    """Unsigned decimal ``digits [. digits] [e [-|+] digits]`` starting at pos."""
    start = pos
    n = len(text)
    while pos < n and text[pos].isdigit():
        pos += 1
    if pos == start:
        return None, start
    if pos < n and text[pos] == ".":
        frac = pos + 1
        while frac < n and text[frac].isdigit():
            frac += 1
        if frac == pos + 1:
            raise ParseError("expected digit after '.'", text, pos + 1)
        pos = frac
    if pos < n and text[pos] in "eE":
        exp = pos + 1
        if exp < n and text[exp] in "+-":
            exp += 1
        digits = exp
        while digits < n and text[digits].isdigit():
            digits += 1
        if digits == exp:
            raise ParseError("expected exponent digits", text, exp)
        pos = digits
    return float(text[start:pos]), pos


def _scan_term(text: str, pos: int) -> tuple[complex, bool, int]:
    """``["-"] real`` or ``["-"] [real] "i"``; returns (value, is_imaginary, end)."""
    sign = 1.0
    if pos < len(text) and text[pos] == "-":
        sign = -1.0
        pos += 1
    val, pos = _scan_real(text, pos)
    if pos < len(text) and text[pos] == "i":
        return complex(0, sign * (1.0 if val is None else val)), True, pos + 1
    if val is None:
        raise ParseError("expected a number, 'i', 'inf' or 'rho'", text, pos)
    return complex(sign * val, 0), False, pos


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def parse_complex(text: str):
    """Parse ``inf``, ``rho``, ``rho2``, ``1.5``, ``-2i``, ``i``, ``1.5+2i`` or ``3 - 4e-2i``."""
    word = text.strip().lower()
    neg = word.startswith("-")
    bare = word[1:] if neg else word
    if bare in _NAMED and not (neg and bare == "inf"):
        return -_NAMED[bare] if neg else _NAMED[bare]
    pos = _skip_ws(text, 0)
    if pos == len(text):
        raise ParseError("empty complex literal", text, pos)
    first, first_imag, pos = _scan_term(text, pos)
    pos = _skip_ws(text, pos)
    if pos == len(text):
        return first
    if first_imag or text[pos] not in "+-":
        raise ParseError("expected '+' or '-' followed by an imaginary part", text, pos)
    sign = 1.0 if text[pos] == "+" else -1.0
    pos = _skip_ws(text, pos + 1)
    if pos < len(text) and text[pos] == "-":
        raise ParseError("unexpected second sign", text, pos)
    second, second_imag, pos = _scan_term(text, pos)
    if not second_imag:
        raise ParseError("expected imaginary part ending in 'i'", text, pos)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("unexpected trailing characters", text, pos)
    return first + sign * second


def _fmt_real(x: float, digits: int | None) -> str:
    if x == 0:
        return "0"
    s = repr(float(x)) if digits is None else f"{x:.{digits}g}"
    s = s.replace("e+", "e")
    if s.endswith(".0"):
        s = s[:-2]
    return s


def format_complex(z, digits: int | None = None) -> str:
    """Text in the literal grammar; ``digits=None`` prints every significant digit."""
    if is_inf(z):
        return "inf"
    z = complex(z)
    re, im = z.real, z.imag
    if digits is not None:
        # components below the printed precision are noise
        cutoff = abs(z) * 10.0 ** (-digits)
        re = 0.0 if abs(re) < cutoff else re
        im = 0.0 if abs(im) < cutoff else im
    if im == 0:
        return _fmt_real(re, digits)
    mag = _fmt_real(abs(im), digits)
    mag = "" if mag == "1" else mag
    if re == 0:
        return ("-" if im < 0 else "") + mag + "i"
    return _fmt_real(re, digits) + ("-" if im < 0 else "+") + mag + "i"


def parse_form(text: str):
    """``kind:params`` for a normal form, or ``points:z1,z2,z3[,z4]`` (z4 defaults to inf)."""
    kind, sep, rest = text.partition(":")
    kind = kind.strip().lower()
    if not sep:
        raise ParseError("expected 'kind:parameters'", text, len(text))
    offset = len(kind) + 1
    params = []
    for piece in rest.split(","):
        try:
            params.append(parse_complex(piece))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at offset")[0], text, offset + exc.offset) from None
        offset += len(piece) + 1
    if kind == "points":
        if len(params) == 3:
            params.append(INF)
        if len(params) != 4:
            raise ParseError("points needs three or four values", text, len(text))
        return FourPoints(*params)
    if kind not in FORM_KINDS:
        raise ParseError(f"unknown form kind {kind!r}", text, 0)
    cls = FORM_KINDS[kind]
    arity = 2 if kind == "weierstrass" else 1
    if len(params) != arity:
        raise ParseError(f"{kind} takes {arity} parameter(s)", text, len(text))
    if any(is_inf(p) for p in params):
        raise DomainError(f"{kind} parameters must be finite")
    return cls(*params)


def format_form(f, digits: int | None = None) -> str:
    if isinstance(f, FourPoints):
        return "points:" + ",".join(format_complex(p, digits) for p in f)
    return f.kind + ":" + ",".join(format_complex(p, digits) for p in f.params)


def _json_value(z):
    if is_inf(z):
        return "inf"
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# ------------------------------------------------------------------ commands


class _Output:
    def __init__(self, args, command):
        self.json = args.json
        self.digits = args.digits
        self.command = command
        self.inputs = {}
        self.result = {}
        self.tolerances = {}
        self.lines = []

    def z(self, value) -> str:
        return format_complex(value, self.digits)

    def emit(self):
        if self.json:
            payload = {
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
                "tolerances": self.tolerances,
            }
            print(json.dumps(payload, ensure_ascii=False, allow_nan=False))
        else:
            for line in self.lines:
                print(line)


def _points(values) -> FourPoints:
    return FourPoints(*(parse_complex(v) for v in values))


def cmd_xratio(args, out: _Output):
    pts = _points(args.points)
    chi = cross_ratio(*pts)
    out.inputs = {"points": [_json_value(p) for p in pts]}
    out.result = {"cross_ratio": _json_value(chi)}
    out.lines.append(f"chi = {out.z(chi)}")
    if args.orbit:
        orbit = cross_ratio_orbit(chi)
        out.result["orbit"] = [_json_value(v) for v in orbit]
        out.lines.append("orbit: " + ", ".join(out.z(v) for v in orbit))
    out.tolerances = {"distinct": 1e-10, "orbit_dedup": 1e-9}


def cmd_orbit(args, out: _Output):
    lam = parse_complex(args.lam)
    orbit = cross_ratio_orbit(lam)
    out.inputs = {"lambda": _json_value(lam)}
    out.result = {"orbit": [_json_value(v) for v in orbit], "size": len(orbit), "j": _json_value(j_invariant(lam))}
    out.lines.append(f"orbit ({len(orbit)}): " + ", ".join(out.z(v) for v in orbit))
    out.lines.append(f"J = {out.z(j_invariant(lam))}")
    out.tolerances = {"orbit_dedup": 1e-9}


def cmd_jinv(args, out: _Output):
    if args.points is not None:
        pts = _points(args.points)
        j = j_of_points(pts)
        out.inputs = {"points": [_json_value(p) for p in pts]}
    elif args.lam is not None:
        lam = parse_complex(args.lam)
        j = j_invariant(lam)
        out.inputs = {"lambda": _json_value(lam)}
    else:
        raise _UsageError("jinv needs a cross ratio or --points z1 z2 z3 z4")
    out.result = {"j": _json_value(j)}
    out.lines.append(out.z(j))


def cmd_equiv(args, out: _Output):
    a, b = parse_form(args.form_a), parse_form(args.form_b)
    ja, jb = form_j(a), form_j(b)
    from .invariants import j_close

    same = j_close(ja, jb, args.tol)
    out.inputs = {"a": format_form(a), "b": format_form(b)}
    out.result = {"equivalent": same, "j_a": _json_value(ja), "j_b": _json_value(jb)}
    out.tolerances = {"j_relative": args.tol}
    out.lines += ["yes" if same else "no", f"J(a) = {out.z(ja)}", f"J(b) = {out.z(jb)}"]


def cmd_convert(args, out: _Output):
    f = parse_form(args.form)
    g = convert(f, args.to)
    out.inputs = {"form": format_form(f), "to": args.to}
    out.result = {"form": format_form(g), "kind": g.kind, "params": [_json_value(p) for p in g.params], "j": _json_value(form_j(g))}
    out.tolerances = {"j_relative": 1e-8}
    out.lines.append(format_form(g, out.digits))


def cmd_shape(args, out: _Output):
    pts = _points(args.points)
    tris = curvilinear_triangles(pts)
    lam = cross_ratio_geometric(pts)
    out.inputs = {"points": [_json_value(p) for p in pts]}
    labels = ("z1", "z2", "z3", "z4")
    rows = []
    for i, t in enumerate(tris):
        names = [labels[_position(pts, v)] for v in t.vertices]
        rows.append({"omits": labels[i], "vertices": names, "angles": list(t.angles), "relabeled": t.relabeled})
        angles = " ".join(f"{a:.{min(out.digits, 12)}g}" for a in t.angles)
        out.lines.append(f"triangle without {labels[i]} ({' '.join(names)}): angles {angles}")
    out.lines.append(f"geometric cross ratio = {out.z(lam)}")
    out.result = {"triangles": rows, "geometric_cross_ratio": _json_value(lam), "near_concyclic": tris[0].near_concyclic}
    out.tolerances = {"concyclic": 1e-9, "near_concyclic": 1e-6}
    if tris[0].near_concyclic:
        print("warning: points are nearly concyclic; angles are ill-conditioned", file=sys.stderr)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(shape_svg(pts, SvgOptions(title="four-point shape")))
        out.result["svg"] = args.svg
        out.lines.append(f"wrote {args.svg}")


def _position(pts: FourPoints, v) -> int:
    for i, p in enumerate(pts):
        if p is v or (not is_inf(p) and not is_inf(v) and p == v):
            return i
    raise ValueError(v)


def cmd_verify(args, out: _Output):
    if args.suite == "branching":
        items = checks.check_branching()
    elif args.suite == "chain":
        items = checks.check_chain(args.samples or 1000, args.seed)
    else:
        items = checks.check_hesse_phi(args.samples or 200, args.seed)
    out.inputs = {"suite": args.suite, "samples": args.samples, "seed": args.seed}
    out.result = {"passed": all(i.ok for i in items), "items": [{"name": i.name, "ok": i.ok, "detail": i.detail} for i in items]}
    out.tolerances = {"branching": 1e-8, "slope": 0.1, "chain": 1e-9, "hesse-phi": 1e-8}
    for i in items:
        out.lines.append(f"{'PASS' if i.ok else 'FAIL'}  {i.name}: {i.detail}")
    if not out.result["passed"]:
        out.emit()
        raise VerificationFailure(f"verify {args.suite} failed")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None, help="single-line JSON output")
    common.add_argument("--digits", metavar="N", type=int, default=None, help="significant digits (default 15)")

    parser = _Parser(prog="fourpoints", description="Elliptic curves as 4-point sets on the Riemann sphere.")
    parser.add_argument("--json", dest="g_json", action="store_true", help="single-line JSON output")
    parser.add_argument("--digits", dest="g_digits", metavar="N", type=int, default=None, help="significant digits (default 15)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("xratio", parents=[common], help="cross ratio of four points")
    p.add_argument("points", nargs=4, metavar="z")
    p.add_argument("--orbit", action="store_true", help="also print the equivalent cross ratios")
    p.set_defaults(func=cmd_xratio)

    p = sub.add_parser("orbit", parents=[common], help="equivalent cross ratios of lambda")
    p.add_argument("lam", metavar="lambda")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("jinv", parents=[common], help="J invariant")
    p.add_argument("lam", nargs="?", metavar="lambda")
    p.add_argument("--points", nargs=4, metavar="z")
    p.set_defaults(func=cmd_jinv)

    p = sub.add_parser("equiv", parents=[common], help="are two forms or point sets isomorphic")
    p.add_argument("form_a", metavar="formA")
    p.add_argument("form_b", metavar="formB")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("convert", parents=[common], help="convert to another normal form")
    p.add_argument("form")
    p.add_argument("--to", required=True, choices=sorted(FORM_KINDS))
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("shape", parents=[common], help="angles of the curvilinear triangles")
    p.add_argument("points", nargs=4, metavar="z")
    p.add_argument("--svg", metavar="FILE")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("verify", parents=[common], help="numerical self-checks")
    p.add_argument("suite", choices=("branching", "chain", "hesse-phi"))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _protect_negative_literals(argv: Sequence[str]) -> list[str]:
    """Prefix a space to arguments like ``-1`` or ``-i`` so argparse keeps them positional."""
    out = []
    for tok in argv:
        if tok.startswith("-") and not tok.startswith("--") and len(tok) > 1:
            try:
                parse_complex(tok)
            except ParseError:
                pass
            else:
                tok = " " + tok
        out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative_literals(argv))
        if args.command is None:
            raise _UsageError("fourpoints: error: a command is required (see --help)")
        args.json = bool(args.json or args.g_json)
        args.digits = args.digits if args.digits is not None else (args.g_digits or DEFAULT_DIGITS)
        if not 1 <= args.digits <= 17:
            raise _UsageError("fourpoints: error: --digits must be between 1 and 17")
        out = _Output(args, args.command)
        args.func(args, out)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (_UsageError, ParseError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, FourPointsError, ArithmeticError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.emit()
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
