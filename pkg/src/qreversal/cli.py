"""Command-line front end.

Exit codes: 0 success, 2 parse/usage error, 3 invalid channel, 4 reversal
precondition failed, 5 a fluctuation identity exceeded its residual tolerance.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import channel as ch
from . import zoo
from .channelfile import ParseError, dumps_channel, read_channel, read_matrix
from .errors import (
    InvalidChannel,
    NonUniqueFixedPoint,
    NotPositive,
    NotUnital,
    SingularState,
    WrongKrausCount,
)
from .reversal import ReversalMethod, essential_map, invariant_state, reverse
from .thermo import MeasurementPair, crooks_check, entropy_table, jarzynski_check, transition_table

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_PRECONDITION = 4
EXIT_RESIDUAL = 5

PRECONDITION_ERRORS = (NotUnital, SingularState, WrongKrausCount, NonUniqueFixedPoint, NotPositive)


def _g(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "undefined"
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    return f"{x:.15g}"


def _j(x):
    """JSON-safe number rounded to 15 significant digits."""
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.15g}")


def _jmat(m):
    m = np.asarray(m)
    if np.iscomplexobj(m):
        return [[[_j(z.real), _j(z.imag)] for z in row] for row in m]
    return [[_j(x) for x in row] for row in m]


def _fmt_complex(z) -> str:
    if abs(z.imag) == 0:
        return _g(z.real)
    return f"{_g(z.real)}{'+' if z.imag >= 0 else '-'}{_g(abs(z.imag))}j"


def _table_text(m, fmt=_g) -> str:
    cells = [[fmt(x) for x in row] for row in np.asarray(m)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  " + "  ".join(c.rjust(width) for c in row) for row in cells)


def _method_args(p):
    p.add_argument("--method", required=True, choices=[m.value for m in ReversalMethod],
                   help="time reversal to apply")
    p.add_argument("--leading", type=int, default=0,
                   help="index of the leading Kraus operator for two-kraus (default 0)")


def _tol_arg(p):
    p.add_argument("--tol", type=float, default=1e-8,
                   help="tolerance for the trace-preservation check of input files (default 1e-8)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qreversal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="describe a channel file")
    p.add_argument("channel")
    _tol_arg(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("reverse", help="write the time-reversed channel")
    p.add_argument("channel")
    _method_args(p)
    _tol_arg(p)
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("check", help="transition tables and fluctuation relations")
    p.add_argument("channel")
    _method_args(p)
    _tol_arg(p)
    p.add_argument("--hi", help="initial observable file (default diag(0, 1, ..., N-1))")
    p.add_argument("--hf", help="final observable file (default diag(0, 1, ..., N-1))")
    p.add_argument("--beta", type=float, default=1.0, help="inverse temperature (default 1)")
    p.add_argument("--bin-tol", type=float, default=1e-9,
                   help="work values closer than this share a bin (default 1e-9)")
    p.add_argument("--residual-tol", type=float, default=1e-8,
                   help="largest accepted identity residual before exit code 5 (default 1e-8)")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("zoo", help="emit a named channel as a channel file")
    p.add_argument("name", choices=["pauli", "decaying", "depolarizing", "unitary", "random"])
    p.add_argument("--p", help="decay probability, or four comma-separated Pauli probabilities")
    p.add_argument("--ops", default="I,X,Y,Z", help="Pauli operators matching --p (default I,X,Y,Z)")
    p.add_argument("--n", type=int, default=2, help="dimension (default 2)")
    p.add_argument("--k", type=int, help="Kraus count for random (default n^2)")
    p.add_argument("--seed", type=int, default=0, help="seed for unitary/random (default 0)")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("simplex", help="tetrahedron coordinates of a Pauli channel")
    p.add_argument("--p", required=True, help="four comma-separated probabilities")
    p.add_argument("--ops", default="I,X,Y,Z", help="Pauli operators matching --p (default I,X,Y,Z)")
    p.add_argument("--decimals", type=int, default=3, help="decimals printed (default 3)")
    p.add_argument("--essential", action="store_true",
                   help="report the point of the essential map instead")
    return parser


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_info(args) -> int:
    phi = read_channel(args.channel, args.tol)
    canon = ch.canonical_kraus(phi)
    weights = ch.kraus_weights(canon)
    flags = {
        "trace_preserving": bool(ch.is_trace_preserving(phi)),
        "unital": bool(ch.is_unital(phi)),
        "bistochastic": bool(ch.is_bistochastic(phi)),
        "selfdual": bool(ch.is_selfdual(phi)),
    }
    try:
        rho = invariant_state(phi)
        fixed, note = rho, None
    except (NonUniqueFixedPoint, NotPositive) as exc:
        fixed, note = None, f"non-unique: {exc}"
    if args.json:
        report = {
            "dim": phi.dim,
            "k": phi.k,
            "kraus_rank": canon.k,
            "weights": [_j(w) for w in weights],
            **flags,
            "invariant_state": None if fixed is None else _jmat(fixed),
            "invariant_state_note": note,
        }
        print(json.dumps(report))
        return EXIT_OK
    print(f"dim: {phi.dim}")
    print(f"k: {phi.k}")
    print(f"kraus rank: {canon.k}")
    print("weights: " + ", ".join(_g(w) for w in weights))
    for name, value in flags.items():
        print(f"{name.replace('_', '-')}: {str(value).lower()}")
    if fixed is None:
        print(f"invariant state: {note}")
    else:
        print("invariant state:")
        print(_table_text(fixed, _fmt_complex))
    return EXIT_OK


def cmd_reverse(args) -> int:
    phi = read_channel(args.channel, args.tol)
    _emit(dumps_channel(reverse(phi, args.method, args.leading)), args.output)
    return EXIT_OK


def _observable(path, n):
    if path is None:
        return np.diag(np.arange(n, dtype=float)).astype(np.complex128)
    m = read_matrix(path)
    if m.shape != (n, n):
        raise ParseError(f"{path}: observable is {m.shape[0]}x{m.shape[1]}, channel dimension is {n}")
    return m


def cmd_check(args) -> int:
    phi = read_channel(args.channel, args.tol)
    phi_r = reverse(phi, args.method, args.leading)
    pair = MeasurementPair(_observable(args.hi, phi.dim), _observable(args.hf, phi.dim), args.beta)
    table = transition_table(phi, phi_r, pair)
    ds = entropy_table(table)
    jar = jarzynski_check(phi, phi_r, pair, table)
    crooks = crooks_check(phi, phi_r, pair, args.bin_tol, table)
    ok = bool(jar.residual < args.residual_tol and crooks.max_residual < args.residual_tol)
    if args.json:
        report = {
            "method": args.method,
            "beta": _j(pair.beta),
            "energies_initial": [_j(e) for e in pair.ei],
            "energies_final": [_j(e) for e in pair.ef],
            "forward": _jmat(table.forward),
            "backward": _jmat(table.backward),
            "entropy_production": _jmat(ds),
            "jarzynski": {"lhs": _j(jar.lhs), "rhs": _j(jar.rhs), "residual": _j(jar.residual),
                          "average": _j(jar.average)},
            "crooks": [{"x": _j(b.x), "pf": _j(b.pf), "pr": _j(b.pr), "residual": _j(b.residual)}
                       for b in crooks.bins],
            "infinite_work": [{"a": t.a, "o": t.o, "work": _j(t.work), "pf": _j(t.pf), "pr": _j(t.pr)}
                              for t in crooks.infinite],
            "ok": ok,
        }
        print(json.dumps(report))
    else:
        print(f"method: {args.method}")
        print(f"beta: {_g(pair.beta)}")
        print("forward <o|phi(|a><a|)|o> (rows a, columns o):")
        print(_table_text(table.forward))
        print("backward <a|phiR(|o><o|)|a> (rows a, columns o):")
        print(_table_text(table.backward))
        print("entropy production dS[a,o]:")
        print(_table_text(ds))
        print(f"jarzynski lhs: {_g(jar.lhs)}")
        print(f"jarzynski rhs: {_g(jar.rhs)}")
        print(f"jarzynski residual: {_g(jar.residual)}")
        print("crooks bins (x, P^F(x), P^R(-x), residual):")
        for b in crooks.bins:
            print(f"  {_g(b.x)}  {_g(b.pf)}  {_g(b.pr)}  {_g(b.residual)}")
        for t in crooks.infinite:
            print(f"  infinite work at a={t.a}, o={t.o}: {_g(t.work)} (P^F {_g(t.pf)}, P^R {_g(t.pr)})")
    if not ok:
        print(f"error: fluctuation identity residual exceeds {args.residual_tol:g}", file=sys.stderr)
        return EXIT_RESIDUAL
    return EXIT_OK


def _probs(text):
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"could not parse probabilities {text!r}") from None


def _pauli_spec(args):
    if args.p is None:
        raise ValueError("--p is required")
    return zoo.PauliChannelSpec(_probs(args.p), tuple(args.ops.split(",")))


def cmd_zoo(args) -> int:
    if args.name == "pauli":
        phi = zoo.pauli_channel(_pauli_spec(args))
    elif args.name == "decaying":
        if args.p is None:
            raise ValueError("--p is required")
        phi = zoo.decaying_channel(float(args.p))
    elif args.name == "depolarizing":
        phi = zoo.depolarizing_channel(args.n)
    elif args.name == "unitary":
        phi = zoo.unitary_channel(zoo.random_unitary(args.n, args.seed))
    else:
        phi = zoo.random_channel(args.n, args.k or args.n * args.n, args.seed)
    _emit(dumps_channel(phi), args.output)
    return EXIT_OK


def cmd_simplex(args) -> int:
    spec = _pauli_spec(args)
    if args.essential:
        spec = zoo.pauli_spec_of(essential_map(zoo.pauli_channel(spec)).essential)
    coords = zoo.pauli_simplex_coordinates(spec)
    print(" ".join(f"{c:.{args.decimals}f}" for c in coords))
    return EXIT_OK


COMMANDS = {"info": cmd_info, "reverse": cmd_reverse, "check": cmd_check, "zoo": cmd_zoo,
            "simplex": cmd_simplex}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidChannel as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PRECONDITION_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
