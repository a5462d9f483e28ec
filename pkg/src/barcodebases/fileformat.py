"""Plain-text files for modules, ladder maps and basis changes.

A module file looks like::

    # comments run to the end of the line
    Fp 5
    length 3
    type fff
    dims 2 3 1 2
    matrix 1 3 2
    1 0
    0 1
    0 0
    ...

The header lines come in this order: field (``Fp <prime>`` or ``Q``),
``length``, ``type`` (``-`` when the length is zero) and ``dims``. Each of the
``l`` matrices follows, introduced by ``matrix <i> <rows> <cols>`` with
``i`` counted from 1, and its entries are read row-major as integers or
``num/den`` tokens across any number of lines.

A map file has the same header minus ``dims`` and carries blocks
``matrix 0`` through ``matrix l``. A basis file has a field line and blocks
``basis <k> <n> <n>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .field import Field, parse_field
from .matrix import Matrix
from .orders import check_type
from .persistence import BasisChange, PersistenceModule, arrow_shape, validate


class ParseError(ValueError):
    """A file does not follow the format; the message names the line."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class _Lines:
    """Non-empty lines with comments removed, keeping their line numbers."""

    def __init__(self, text: str):
        self.items: list[tuple[int, list[str]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            words = raw.split("#", 1)[0].split()
            if words:
                self.items.append((number, words))
        self.pos = 0
        self.last = len(text.splitlines())

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def peek(self) -> tuple[int, list[str]]:
        if self.done():
            raise ParseError(self.last, "unexpected end of file")
        return self.items[self.pos]

    def take(self) -> tuple[int, list[str]]:
        item = self.peek()
        self.pos += 1
        return item

    def keyword(self, word: str, count: Optional[int] = None) -> tuple[int, list[str]]:
        number, words = self.take()
        if words[0] != word:
            raise ParseError(number, f"expected '{word}', found '{words[0]}'")
        if count is not None and len(words) - 1 != count:
            raise ParseError(number, f"'{word}' takes {count} value(s), found {len(words) - 1}")
        return number, words[1:]

    def tokens(self, count: int) -> Iterator[tuple[int, str]]:
        """Yields ``count`` entry tokens, which may span several lines."""
        while count:
            number, words = self.peek()
            if words[0] in ("matrix", "basis"):
                raise ParseError(number, f"matrix ended early; {count} entries missing")
            take = min(count, len(words))
            for w in words[:take]:
                yield number, w
            count -= take
            if take == len(words):
                self.pos += 1
            else:
                self.items[self.pos] = (number, words[take:])


def _int(number: int, token: str, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(number, f"{what} must be an integer, found {token!r}") from None
    if value < 0:
        raise ParseError(number, f"{what} must be non-negative, found {value}")
    return value


def _entries(lines: _Lines, fld: Field, rows: int, cols: int) -> Matrix:
    M = Matrix.zeros(fld, rows, cols)
    for idx, (number, token) in enumerate(lines.tokens(rows * cols)):
        try:
            M.a[divmod(idx, cols)] = fld.parse(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(number, f"bad entry {token!r}: {exc}") from None
    return M


def _header(lines: _Lines) -> tuple[Field, int, str]:
    number, words = lines.take()
    try:
        fld = parse_field(" ".join(words))
    except ValueError as exc:
        raise ParseError(number, str(exc)) from None
    number, values = lines.keyword("length", 1)
    length = _int(number, values[0], "length")
    number, values = lines.keyword("type", 1)
    tau = "" if values[0] == "-" else values[0]
    try:
        check_type(tau)
    except ValueError as exc:
        raise ParseError(number, str(exc)) from None
    if len(tau) != length:
        raise ParseError(number, f"type has {len(tau)} arrows but length is {length}")
    return fld, length, tau


def _block(lines: _Lines, word: str, index: int, fld: Field, shape: tuple[int, int]) -> Matrix:
    number, values = lines.keyword(word, 3)
    got = [_int(number, v, f"{word} header value") for v in values]
    if got[0] != index:
        raise ParseError(number, f"expected {word} {index}, found {word} {got[0]}")
    if tuple(got[1:]) != shape:
        raise ParseError(number, f"{word} {index} has shape {tuple(got[1:])}, expected {shape}")
    return _entries(lines, fld, *shape)


def _finish(lines: _Lines) -> None:
    if not lines.done():
        number, words = lines.peek()
        raise ParseError(number, f"unexpected content '{' '.join(words)}'")


def parse_module(text: str, zigzag: Optional[bool] = None):
    """Parses a module file.

    Args:
        text: File contents.
        zigzag: Force a :class:`ZigzagModule` (``True``) or a plain module
            (``False``). By default the type decides.

    Raises:
        ParseError: on any format or shape problem.
    """
    from .zigzag.module import ZigzagModule

    lines = _Lines(text)
    fld, length, tau = _header(lines)
    number, values = lines.keyword("dims")
    if len(values) != length + 1:
        raise ParseError(number, f"dims lists {len(values)} values, expected {length + 1}")
    dims = tuple(_int(number, v, "dimension") for v in values)
    mats = []
    for i, arrow in enumerate(tau):
        mats.append(_block(lines, "matrix", i + 1, fld, arrow_shape(arrow, dims[i], dims[i + 1])))
    _finish(lines)
    zig = "q" in tau if zigzag is None else zigzag
    if zig:
        return ZigzagModule(fld, dims, tau, mats)
    if "q" in tau:
        raise ParseError(1, "a plain module cannot have backward arrows")
    return PersistenceModule(fld, dims, mats)


def _format_matrix(word: str, index: int, M: Matrix) -> list[str]:
    out = [f"{word} {index} {M.rows} {M.cols}"]
    fmt = M.field.format
    out += [" ".join(fmt(x) for x in row) for row in M.a]
    return out


def _header_lines(fld: Field, length: int, tau: str) -> list[str]:
    return [fld.header, f"length {length}", f"type {tau or '-'}"]


def format_module(module) -> str:
    """Serializes a plain or zigzag module; parsing the result gives it back."""
    problems = validate(module)
    if problems:
        raise ValueError(problems[0])
    out = _header_lines(module.field, module.length, module.tau)
    out.append("dims " + " ".join(str(n) for n in module.dims))
    for i, A in enumerate(module.matrices, start=1):
        out += _format_matrix("matrix", i, A)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class MapFile:
    """Contents of a map file: ``maps[k]`` is the component at space ``k``."""

    field: Field
    length: int
    tau: str
    maps: tuple[Matrix, ...]


def parse_maps(text: str, source_dims: Sequence[int], target_dims: Sequence[int]) -> MapFile:
    """Parses a map file whose blocks must fit ``target_dims[k] x source_dims[k]``.

    Raises:
        ParseError: on any format or shape problem.
    """
    lines = _Lines(text)
    fld, length, tau = _header(lines)
    if length + 1 != len(source_dims) or length + 1 != len(target_dims):
        raise ParseError(1, f"map file has length {length}, modules have length {len(source_dims) - 1}")
    maps = [
        _block(lines, "matrix", k, fld, (target_dims[k], source_dims[k])) for k in range(length + 1)
    ]
    _finish(lines)
    return MapFile(fld, length, tau, tuple(maps))


def format_maps(maps: Sequence[Matrix], field: Field, tau: str) -> str:
    out = _header_lines(field, len(maps) - 1, tau)
    for k, phi in enumerate(maps):
        out += _format_matrix("matrix", k, phi)
    return "\n".join(out) + "\n"


def format_basis(g: BasisChange, field: Field) -> str:
    """Serializes the components ``g_0..g_l`` of a basis change."""
    out = [field.header]
    for k, comp in enumerate(g.components):
        out += _format_matrix("basis", k, comp)
    return "\n".join(out) + "\n"


def parse_basis(text: str) -> BasisChange:
    """Parses a basis file.

    Raises:
        ParseError: on any format problem, or if a component is singular.
    """
    from .matrix import SingularMatrixError

    lines = _Lines(text)
    number, words = lines.take()
    try:
        fld = parse_field(" ".join(words))
    except ValueError as exc:
        raise ParseError(number, str(exc)) from None
    comps = []
    while not lines.done():
        number, values = lines.peek()
        if len(values) != 4 or values[0] != "basis":
            raise ParseError(number, "expected 'basis <k> <n> <n>'")
        n = _int(number, values[2], "size")
        comps.append(_block(lines, "basis", len(comps), fld, (n, n)))
    try:
        return BasisChange(comps)
    except SingularMatrixError as exc:
        raise ParseError(1, f"singular basis component: {exc}") from None
