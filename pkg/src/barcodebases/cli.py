"""Command-line front end.

Exit codes: 0 success, 2 unreadable or invalid input, 3 failed internal
certificate, 4 nested bars or a matching obstruction in ``ladder``.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .fileformat import ParseError, format_basis, format_maps, format_module, parse_maps, parse_module

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CERTIFICATE = 3
EXIT_NESTED = 4


class CommandError(Exception):
    """Ends a command with a message on stderr and the given exit code."""

    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CommandError(EXIT_INPUT, f"{path}: {exc.strerror}") from None


def _load(path: str, zigzag: bool):
    try:
        module = parse_module(_read(path), zigzag=True if zigzag else None)
    except ParseError as exc:
        raise CommandError(EXIT_INPUT, f"{path}: {exc}") from None
    if not zigzag and "q" in module.tau:
        raise CommandError(EXIT_INPUT, f"{path}: type {module.tau} has backward arrows; use the zigzag-* commands")
    return module


def _reduce(module, zigzag: bool, trace: bool = False):
    from .oracle import verify_reduction
    from .reduction import comp_pers
    from .zigzag.reduction import comp_pers_zigzag

    result = comp_pers_zigzag(module, trace=trace) if zigzag else comp_pers(module, trace=trace)
    problems = verify_reduction(module, result, module.tau)
    if problems:
        raise CommandError(EXIT_CERTIFICATE, "certificate failed: " + "; ".join(problems))
    return result


def _tau_key(module) -> Optional[str]:
    return module.tau if "q" in module.tau else None


def _trace_lines(trace: list[tuple], fmt) -> list[str]:
    """One line per trace event; scalars are the last field of row, col and basis events."""
    out = []
    for event in trace:
        if event[0] in ("row", "col", "basis"):
            out.append(" ".join([*map(str, event[:4]), fmt(event[4])]))
        else:
            out.append(" ".join(map(str, event)))
    return out


# -- commands -------------------------------------------------------------------


def cmd_reduce(args, zigzag: bool) -> str:
    module = _load(args.file, zigzag)
    result = _reduce(module, zigzag, trace=args.emit_trace)
    reduced = format_module(result.module())
    basis = format_basis(result.change, module.field) if args.emit_basis else None
    trace = None
    if args.emit_trace:
        trace = "\n".join(_trace_lines(result.trace, module.field.format))
        trace = trace + "\n" if trace else ""
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = "stdin" if args.file == "-" else Path(args.file).stem
        written = [out / f"{stem}.reduced.txt"]
        written[0].write_text(reduced)
        if basis is not None:
            written.append(out / f"{stem}.basis.txt")
            written[-1].write_text(basis)
        if trace is not None:
            written.append(out / f"{stem}.trace.txt")
            written[-1].write_text(trace)
        return "".join(f"{p}\n" for p in written)
    text = reduced
    if basis is not None:
        text += "# basis change\n" + basis
    if trace is not None:
        text += "# trace\n" + "".join(f"# {line}\n" for line in trace.splitlines())
    return text


def _barcode_text(path: str, zigzag: bool) -> str:
    module = _load(path, zigzag)
    result = _reduce(module, zigzag)
    return "".join(f"{line}\n" for line in result.barcode.lines(_tau_key(module)))


def cmd_barcode(args, zigzag: bool) -> str:
    files = args.files
    if args.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            texts = list(pool.map(_barcode_text, files, [zigzag] * len(files)))
    else:
        texts = [_barcode_text(f, zigzag) for f in files]
    if len(files) == 1:
        return texts[0]
    return "".join(f"# {f}\n{t}" for f, t in zip(files, texts))


def cmd_stab_dim(args, zigzag: bool) -> str:
    from .stabiliser import stab_dimension

    module = _load(args.file, zigzag)
    result = _reduce(module, zigzag)
    return f"{stab_dimension(result.barcode, _tau_key(module))}\n"


def cmd_ladder(args, zigzag: bool) -> str:
    from .ladder import InvalidLadder, LadderModule, MatchingObstruction, NestedBars, decompose_ladder

    V = _load(args.source, zigzag)
    W = _load(args.target, zigzag)
    if V.tau != W.tau or V.field != W.field:
        raise CommandError(EXIT_INPUT, "source and target must share field and type")
    try:
        mf = parse_maps(_read(args.maps), V.dims, W.dims)
    except ParseError as exc:
        raise CommandError(EXIT_INPUT, f"{args.maps}: {exc}") from None
    if mf.field != V.field or mf.tau != V.tau:
        raise CommandError(EXIT_INPUT, f"{args.maps}: field or type differs from the modules")
    try:
        res = decompose_ladder(LadderModule(V, W, mf.maps))
    except InvalidLadder as exc:
        raise CommandError(EXIT_INPUT, f"invalid ladder: {exc}") from None
    except (NestedBars, MatchingObstruction) as exc:
        raise CommandError(EXIT_NESTED, str(exc)) from None
    except ArithmeticError as exc:
        raise CommandError(EXIT_CERTIFICATE, str(exc)) from None
    return "".join(f"{line}\n" for line in res.decomposition.lines(_tau_key(V)))


def cmd_gen(args) -> str:
    from .field import parse_field
    from .oracle import random_module, random_zigzag

    try:
        fld = parse_field(args.field)
    except ValueError as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from None
    if args.type is not None:
        if len(args.type) != args.length or set(args.type) - set("fq"):
            raise CommandError(EXIT_INPUT, f"--type must be a string over f,q of length {args.length}")
        module = random_zigzag(args.seed, args.max_dim, field=fld, tau=args.type, density=args.density)
    else:
        module = random_module(args.seed, args.max_dim, field=fld, length=args.length, density=args.density)
    return format_module(module)


def cmd_gen_ladder(args) -> str:
    """Writes a random non-nested ladder as three files in the output directory."""
    from .field import parse_field
    from .ladder import random_ladder

    try:
        fld = parse_field(args.field)
    except ValueError as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from None
    tau = args.type
    if tau is not None and (len(tau) != args.length or set(tau) - set("fq")):
        raise CommandError(EXIT_INPUT, f"--type must be a string over f,q of length {args.length}")
    L = random_ladder(args.seed, args.length, fld, tau)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "source.txt", out / "target.txt", out / "map.txt"]
    paths[0].write_text(format_module(L.source))
    paths[1].write_text(format_module(L.target))
    paths[2].write_text(format_maps(L.maps, fld, L.tau))
    return "".join(f"{p}\n" for p in paths)


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barcodebases",
        description="Exact barcode bases, stabilisers and ladder decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for prefix, zigzag in (("", False), ("zigzag-", True)):
        p = sub.add_parser(prefix + "reduce", help="reduce a module to barcode form")
        p.add_argument("file")
        p.add_argument("--emit-basis", action="store_true", help="also write the basis change")
        p.add_argument("--emit-trace", action="store_true", help="also write the elementary operations")
        p.add_argument("--output-dir", help="write files here instead of stdout")
        p.set_defaults(func=cmd_reduce, zigzag=zigzag)

        p = sub.add_parser(prefix + "barcode", help="print 'i j multiplicity' lines")
        p.add_argument("files", nargs="+")
        p.add_argument("--jobs", type=int, default=1, help="process files in parallel")
        p.set_defaults(func=cmd_barcode, zigzag=zigzag)

        p = sub.add_parser(prefix + "stab-dim", help="print the stabiliser dimension")
        p.add_argument("file")
        p.set_defaults(func=cmd_stab_dim, zigzag=zigzag)

        p = sub.add_parser(prefix + "ladder", help="decompose a map of modules")
        p.add_argument("source")
        p.add_argument("target")
        p.add_argument("maps")
        p.set_defaults(func=cmd_ladder, zigzag=zigzag)

    p = sub.add_parser("gen", help="print a random module file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="Fp 2", help="'Fp <prime>' or 'Q'")
    p.add_argument("--length", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--type", help="arrow directions over f,q; gives a zigzag module")
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--ladder", action="store_true", help="write a random ladder to --output-dir")
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=None, zigzag=False)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            text = cmd_gen_ladder(args) if args.ladder else cmd_gen(args)
        else:
            text = args.func(args, args.zigzag)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
