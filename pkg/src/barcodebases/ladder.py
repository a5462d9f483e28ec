"""Maps between persistence modules and their decomposition into matched bars.

A ladder is a map ``phi: V -> W`` of modules of the same length (and type).
After both modules are put in ordered barcode bases, ``phi`` is a single
block matrix with one row per bar of ``W`` and one column per bar of ``V``.
Stabiliser elements of ``V`` and ``W`` act on that matrix by column and row
additions between related bars. When no bars are strictly nested these
suffice to reach a partial matching, which reads off the summands: matched
pairs, source-only bars and target-only bars.

Functions take their type from the modules; plain modules are all-forward.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence

import numpy as np

from .field import GF2, Field
from .matrix import Matrix, multiply
from .orders import Interval, lex_key, strictly_nested, strictly_nested_tau
from .persistence import (
    Barcode,
    BarChain,
    BasisChange,
    PersistenceModule,
    assemble,
    validate,
)
from .stabiliser import related


class InvalidLadder(ValueError):
    """The maps do not form a morphism of modules, or the data is inconsistent."""


class NestedBars(ValueError):
    """A barcode has a strictly nested pair, so no partial matching is guaranteed.

    Attributes:
        pair: ``(outer, inner)`` intervals.
        side: ``"source"`` or ``"target"``.
    """

    def __init__(self, pair: tuple[Interval, Interval], side: str):
        self.pair = pair
        self.side = side
        outer, inner = pair
        super().__init__(f"NESTED ({outer},{inner}) in the {side} barcode: {inner} lies strictly inside {outer}")


class NestedBarsTau(NestedBars):
    """A zigzag barcode has a pair that is strictly nested with regard to its type."""


class MatchingObstruction(RuntimeError):
    """The block matrix cannot be brought to a partial matching with legal operations."""


# -- data types ------------------------------------------------------------------


@dataclass(frozen=True)
class LadderModule:
    """A map of (zigzag) modules ``source -> target`` given by ``maps[k]: V_k -> W_k``."""

    source: object
    target: object
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))

    @property
    def tau(self) -> str:
        return self.source.tau

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def length(self) -> int:
        return len(self.source.dims) - 1


@dataclass
class BlockMatrix:
    """The matrix of a ladder map in ordered barcode bases.

    Attributes:
        row_bars: Interval of each row (bars of the target), in order.
        col_bars: Interval of each column (bars of the source), in order.
        body: Entries, one row per target bar and one column per source bar.
    """

    row_bars: list[Interval]
    col_bars: list[Interval]
    body: Matrix

    @property
    def row_classes(self) -> list[tuple[Interval, int]]:
        return _classes(self.row_bars)

    @property
    def col_classes(self) -> list[tuple[Interval, int]]:
        return _classes(self.col_bars)

    def block(self, row_bar, col_bar) -> Matrix:
        rows = [i for i, iv in enumerate(self.row_bars) if iv == tuple(row_bar)]
        cols = [j for j, iv in enumerate(self.col_bars) if iv == tuple(col_bar)]
        return self.body.submatrix(rows, cols)


def _classes(bars: Sequence[Interval]) -> list[tuple[Interval, int]]:
    out: list[tuple[Interval, int]] = []
    for iv in bars:
        if out and out[-1][0] == iv:
            out[-1] = (iv, out[-1][1] + 1)
        else:
            out.append((iv, 1))
    return out


@dataclass
class LadderDecomposition:
    """Multiplicities of the summands of a ladder.

    Attributes:
        matches: ``(target_bar, source_bar) -> r``; the target bar precedes
            the source bar.
        unmatched_source: ``bar -> d+`` for source bars mapped to zero.
        unmatched_target: ``bar -> d-`` for target bars outside the image.
    """

    matches: dict = dc_field(default_factory=dict)
    unmatched_source: dict = dc_field(default_factory=dict)
    unmatched_target: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.matches = {
            (Interval(*a), Interval(*b)): int(n) for (a, b), n in self.matches.items() if n
        }
        self.unmatched_source = {Interval(*a): int(n) for a, n in self.unmatched_source.items() if n}
        self.unmatched_target = {Interval(*a): int(n) for a, n in self.unmatched_target.items() if n}
        for table in (self.matches, self.unmatched_source, self.unmatched_target):
            if any(n < 0 for n in table.values()):
                raise ValueError("multiplicities must be non-negative")

    def source_barcode(self) -> Barcode:
        counts: dict = dict(self.unmatched_source)
        for (_, b), n in self.matches.items():
            counts[b] = counts.get(b, 0) + n
        return Barcode(counts)

    def target_barcode(self) -> Barcode:
        counts: dict = dict(self.unmatched_target)
        for (a, _), n in self.matches.items():
            counts[a] = counts.get(a, 0) + n
        return Barcode(counts)

    def check(self, tau: Optional[str] = None) -> None:
        """Raises ``ValueError`` if some matched pair is not related."""
        for a, b in self.matches:
            if not related(a, b, tau):
                raise ValueError(f"matched bars {a} and {b} are not related")

    def lines(self, tau: Optional[str] = None) -> list[str]:
        """``R i1 j1 i2 j2 r``, ``I+ i j d`` and ``I- i j d`` lines in a fixed order."""
        out = []
        for (a, b) in sorted(self.matches, key=lambda ab: (lex_key(ab[0], tau), lex_key(ab[1], tau))):
            out.append(f"R {a.start} {a.end} {b.start} {b.end} {self.matches[(a, b)]}")
        for a in sorted(self.unmatched_source, key=lambda iv: lex_key(iv, tau)):
            out.append(f"I+ {a.start} {a.end} {self.unmatched_source[a]}")
        for a in sorted(self.unmatched_target, key=lambda iv: lex_key(iv, tau)):
            out.append(f"I- {a.start} {a.end} {self.unmatched_target[a]}")
        return out


@dataclass
class LadderResult:
    """Output of :func:`decompose_ladder`.

    Attributes:
        decomposition: Summand multiplicities.
        source_change: Basis change of the source module.
        target_change: Basis change of the target module.
        matched: The transformed map as a block matrix (a partial matching).
        operations: Log of ``(kind, src_bar, dst_bar)`` for every elementary
            operation on the block matrix; ``kind`` is ``"col"`` or ``"row"``.
    """

    decomposition: LadderDecomposition
    source_change: BasisChange
    target_change: BasisChange
    matched: BlockMatrix
    operations: list = dc_field(default_factory=list)

    def __iter__(self) -> Iterator:
        yield self.decomposition
        yield (self.source_change, self.target_change)


# -- validation ---------------------------------------------------------------


def validate_ladder(L: LadderModule) -> list[str]:
    """Shape and commutativity diagnostics; an empty list means a valid ladder."""
    V, W = L.source, L.target
    problems = [f"source: {p}" for p in validate(V)] + [f"target: {p}" for p in validate(W)]
    if problems:
        return problems
    if V.tau != W.tau:
        return [f"source type {V.tau!r} differs from target type {W.tau!r}"]
    if V.field != W.field:
        return ["source and target use different fields"]
    if len(L.maps) != len(V.dims):
        return [f"expected {len(V.dims)} maps, got {len(L.maps)}"]
    for k, phi in enumerate(L.maps):
        if phi.shape != (W.dims[k], V.dims[k]):
            problems.append(f"phi_{k} has shape {phi.shape}, expected {(W.dims[k], V.dims[k])}")
        elif phi.field != V.field:
            problems.append(f"phi_{k} is over a different field")
    if problems:
        return problems
    for i, arrow in enumerate(V.tau):
        A, B = V.matrices[i], W.matrices[i]
        if arrow == "f":
            ok = multiply(L.maps[i + 1], A) == multiply(B, L.maps[i])
        else:
            ok = multiply(L.maps[i], A) == multiply(B, L.maps[i + 1])
        if not ok:
            problems.append(f"square {i + 1} (between spaces {i} and {i + 1}) does not commute")
    return problems


def check_no_nested(bar: Barcode, tau: Optional[str] = None) -> Optional[tuple[Interval, Interval]]:
    """First ``(outer, inner)`` strictly nested pair in (zigzag) lexicographic order, or ``None``."""
    classes = bar.classes(tau)
    zig = tau is not None and "q" in tau
    for i, a in enumerate(classes):
        for b in classes[i + 1 :]:
            if (strictly_nested_tau(a, b, tau) if zig else strictly_nested(a, b)):
                return (a, b)
    return None


# -- block matrices -------------------------------------------------------------


def _canonical_chains(module) -> list[BarChain]:
    """Chains of a module that must already be in its ordered barcode basis."""
    from .persistence import chains_to_barcode, trace_chains

    tau = module.tau
    try:
        chains = trace_chains(module.matrices, module.dims, tau)
    except ValueError as exc:
        raise InvalidLadder(f"module is not in barcode form: {exc}") from None
    bar = chains_to_barcode(chains)
    dims, mats = assemble([ch.interval for ch in chains], len(tau), tau, module.field)
    if tuple(mats) != tuple(module.matrices):
        raise InvalidLadder("module is not in its ordered barcode basis")
    del bar, dims
    return chains


def _read_blocks(maps: Sequence[Matrix], v_chains, w_chains, tau: Optional[str], fld: Field) -> BlockMatrix:
    body = Matrix.zeros(fld, len(w_chains), len(v_chains))
    for a, w in enumerate(w_chains):
        for b, v in enumerate(v_chains):
            ks = range(max(w.start, v.start), min(w.end, v.end) + 1)
            if not ks:
                continue
            vals = {maps[k].a[w.position(k), v.position(k)] for k in ks}
            if len(vals) != 1:
                raise InvalidLadder(
                    f"entry for target bar {w.interval} and source bar {v.interval} varies along the overlap"
                )
            val = vals.pop()
            if val != 0 and not related(w.interval, v.interval, tau):
                raise InvalidLadder(
                    f"nonzero entry between unrelated bars {w.interval} (target) and {v.interval} (source)"
                )
            body.a[a, b] = val
    return BlockMatrix([w.interval for w in w_chains], [v.interval for v in v_chains], body)


def to_block_matrix(L: LadderModule) -> BlockMatrix:
    """Block matrix of a ladder whose modules are in ordered barcode bases.

    Raises:
        InvalidLadder: if a module is not in ordered barcode form, or an entry
            is inconsistent across the overlap of its bars, or an entry links
            unrelated bars.
    """
    v_chains = _canonical_chains(L.source)
    w_chains = _canonical_chains(L.target)
    tau = L.tau if "q" in L.tau else None
    return _read_blocks(L.maps, v_chains, w_chains, tau, L.field)


# -- reduction of the block matrix ------------------------------------------------


class _BlockReducer:
    """Reduces a block matrix with operations coming from the two stabilisers.

    ``Col(dst) += lam Col(src)`` is allowed when the source bar of ``src``
    precedes that of ``dst``; ``Row(dst) += lam Row(src)`` when the target
    bar of ``dst`` precedes that of ``src``. Entries whose bars do not meet
    carry no information and are kept at zero.
    """

    def __init__(self, bm: BlockMatrix, tau: Optional[str]):
        self.bm = bm
        self.B = bm.body.copy()
        self.fld = self.B.field
        self.tau = tau
        self.rows = bm.row_bars
        self.cols = bm.col_bars
        self.meaningful = np.array(
            [[r.intersects(c) for c in self.cols] for r in self.rows], dtype=bool
        ).reshape(len(self.rows), len(self.cols))
        self.v_ops: list[tuple] = []
        self.w_ops: list[tuple] = []
        self.log: list[tuple] = []
        self.used_row: dict[int, int] = {}
        self.used_col: dict[int, int] = {}

    def _mask(self):
        self.B.a[~self.meaningful] = 0

    def legal_col(self, src: int, dst: int) -> bool:
        a, b = self.cols[src], self.cols[dst]
        return a == b or related(a, b, self.tau)

    def legal_row(self, dst: int, src: int) -> bool:
        a, b = self.rows[dst], self.rows[src]
        return a == b or related(a, b, self.tau)

    def col_add(self, dst: int, src: int, lam) -> None:
        self.B.add_col(dst, src, lam)
        self._mask()
        self.v_ops.append(("add", src, dst, lam))
        self.log.append(("col", self.cols[src], self.cols[dst]))

    def row_add(self, dst: int, src: int, lam) -> None:
        self.B.add_row(dst, src, lam)
        self._mask()
        self.w_ops.append(("add", dst, src, lam))
        self.log.append(("row", self.rows[src], self.rows[dst]))

    def scale_col(self, y: int, mu) -> None:
        self.B.scale_col(y, mu)
        self.v_ops.append(("scale", y, mu))
        self.log.append(("col", self.cols[y], self.cols[y]))

    def scale_row(self, x: int, mu) -> None:
        self.B.scale_row(x, mu)
        self.w_ops.append(("scale", x, mu))
        self.log.append(("row", self.rows[x], self.rows[x]))

    # The sweep: column classes in order, row classes from the diagonal up.

    def run(self) -> None:
        row_classes = _classes(self.rows)
        col_classes = _classes(self.cols)
        row_index = _class_indices(self.rows)
        col_index = _class_indices(self.cols)
        for C, _ in col_classes:
            cols = col_index[C]
            candidates = [R for R, _ in row_classes if related(R, C, self.tau)]
            candidates.sort(key=lambda R: lex_key(R, self.tau), reverse=True)
            for R in candidates:
                self._block(row_index[R], cols)
        self._finish()

    def _block(self, rows: list[int], cols: list[int]) -> None:
        a = self.B.a
        for x in rows:
            y0 = self.used_row.get(x)
            if y0 is None:
                continue
            for c in cols:
                if a[x, c] != 0 and self.legal_col(y0, c):
                    self.col_add(c, y0, -self.B[x, c])
        for c in cols:
            z0 = self.used_col.get(c)
            if z0 is None:
                continue
            for x in rows:
                if a[x, c] != 0 and self.legal_row(x, z0):
                    self.row_add(x, z0, -self.B[x, c])
        free_rows = [x for x in rows if x not in self.used_row]
        free_cols = [c for c in cols if c not in self.used_col]
        while True:
            hit = next(((x, c) for c in free_cols for x in free_rows if a[x, c] != 0), None)
            if hit is None:
                break
            x, c = hit
            self.scale_row(x, self.fld.inv(self.B[x, c]))
            for x2 in rows:
                if x2 != x and a[x2, c] != 0:
                    self.row_add(x2, x, -self.B[x2, c])
            for c2 in cols:
                if c2 != c and a[x, c2] != 0:
                    self.col_add(c2, c, -self.B[x, c2])
            self.used_row[x] = c
            self.used_col[c] = x
            free_rows.remove(x)
            free_cols.remove(c)
        self._fallback(rows, cols)

    def _fallback(self, rows: list[int], cols: list[int]) -> None:
        """Clears leftover entries of a block through any legal single-entry line."""
        a = self.B.a
        for _ in range(len(rows) * len(cols) + 1):
            leftovers = [
                (x, c)
                for x in rows
                for c in cols
                if a[x, c] != 0 and not (self.used_row.get(x) == c and self.used_col.get(c) == x)
            ]
            if not leftovers:
                return
            progress = False
            for x, c in leftovers:
                if a[x, c] == 0:
                    continue
                if self._clear_by_column(x, c) or self._clear_by_row(x, c):
                    progress = True
            if not progress:
                return

    def _clear_by_column(self, x: int, c: int) -> bool:
        """Col(c) -= B[x, c] Col(y) for a legal column ``y`` whose only entry is at ``x``."""
        a = self.B.a
        for y in range(a.shape[1]):
            if y == c or a[x, y] == 0 or not self.legal_col(y, c):
                continue
            if np.count_nonzero(a[:, y]) == 1:
                self.col_add(c, y, -self.B[x, c] * self.fld.inv(self.B[x, y]))
                return True
        return False

    def _clear_by_row(self, x: int, c: int) -> bool:
        """Row(x) -= B[x, c] Row(z) for a legal row ``z`` whose only entry is at ``c``."""
        a = self.B.a
        for z in range(a.shape[0]):
            if z == x or a[z, c] == 0 or not self.legal_row(x, z):
                continue
            if np.count_nonzero(a[z]) == 1:
                self.row_add(x, z, -self.B[x, c] * self.fld.inv(self.B[z, c]))
                return True
        return False

    def _finish(self) -> None:
        a = self.B.a
        nz = np.argwhere(a != 0)
        bad = [
            (int(x), int(c))
            for x, c in nz
            if a[x, c] != 1 or np.count_nonzero(a[x]) != 1 or np.count_nonzero(a[:, c]) != 1
        ]
        if bad:
            x, c = bad[0]
            raise MatchingObstruction(
                f"cannot isolate the entry between target bar {self.rows[x]} and source bar {self.cols[c]} "
                "with legal operations; the ladder has no partial-matching decomposition reachable this way"
            )


def _class_indices(bars: Sequence[Interval]) -> dict[Interval, list[int]]:
    out: dict[Interval, list[int]] = {}
    for i, iv in enumerate(bars):
        out.setdefault(iv, []).append(i)
    return out


def _replay(ops: list[tuple], chains: list[BarChain], fld: Field, dims: Sequence[int], side: str) -> list[Matrix]:
    """Per-space stabiliser matrices realizing the logged operations."""
    comps = [Matrix.identity(fld, n) for n in dims]
    for op in ops:
        if op[0] == "scale":
            _, y, mu = op
            ch = chains[y]
            factor = fld.inv(mu) if side == "source" else mu
            for k in range(ch.start, ch.end + 1):
                comps[k].scale_row(ch.position(k), factor)
            continue
        if side == "source":
            _, src, dst, lam = op
            r, s, coeff = chains[src], chains[dst], -lam
        else:
            _, dst, src, lam = op
            r, s, coeff = chains[dst], chains[src], lam
        for k in range(max(r.start, s.start), min(r.end, s.end) + 1):
            comps[k].add_row(r.position(k), s.position(k), coeff)
    return comps


def _decomposition_from(bm: BlockMatrix) -> LadderDecomposition:
    a = bm.body.a
    matches: dict = {}
    plus: dict = {}
    minus: dict = {}
    for x, row_bar in enumerate(bm.row_bars):
        if not a[x].any():
            minus[row_bar] = minus.get(row_bar, 0) + 1
    for c, col_bar in enumerate(bm.col_bars):
        hits = np.flatnonzero(a[:, c])
        if hits.size == 0:
            plus[col_bar] = plus.get(col_bar, 0) + 1
        else:
            key = (bm.row_bars[int(hits[0])], col_bar)
            matches[key] = matches.get(key, 0) + 1
    return LadderDecomposition(matches, plus, minus)


def decompose_ladder(L: LadderModule) -> LadderResult:
    """Decomposes a ladder into matched pairs, source-only and target-only bars.

    Both modules are reduced and put in ordered barcode bases, the map is
    read as a block matrix, and the block matrix is swept column class by
    column class (from the diagonal block upwards) with operations allowed by
    the stabilisers. The returned bases are certified: conjugating the maps
    by them gives exactly the matched block matrix at every index.

    Raises:
        InvalidLadder: if the maps are not a morphism of modules.
        NestedBars: if either barcode has a strictly nested pair
            (``NestedBarsTau`` for zigzag types).
        MatchingObstruction: if the sweep cannot reach a partial matching
            (possible only for zigzag types).
        ArithmeticError: if the final certificate fails (never expected).
    """
    from .reduction import ordered_reduction

    problems = validate_ladder(L)
    if problems:
        raise InvalidLadder(problems[0])
    tau = L.tau if "q" in L.tau else None
    gV, v_chains, v_bar = ordered_reduction(L.source)
    gW, w_chains, w_bar = ordered_reduction(L.target)
    for side, bar in (("source", v_bar), ("target", w_bar)):
        pair = check_no_nested(bar, tau)
        if pair is not None:
            raise (NestedBarsTau if tau else NestedBars)(pair, side)
    fld = L.field
    maps = [multiply(multiply(gW[k], phi), gV.inverses[k]) for k, phi in enumerate(L.maps)]
    bm = _read_blocks(maps, v_chains, w_chains, tau, fld)
    reducer = _BlockReducer(bm, tau)
    reducer.run()
    matched = BlockMatrix(bm.row_bars, bm.col_bars, reducer.B)
    H = _replay(reducer.v_ops, v_chains, fld, L.source.dims, "source")
    K = _replay(reducer.w_ops, w_chains, fld, L.target.dims, "target")
    source_change = BasisChange(H) @ gV
    target_change = BasisChange(K) @ gW
    for k, phi in enumerate(L.maps):
        final = multiply(multiply(target_change[k], phi), source_change.inverses[k])
        expect = Matrix.zeros(fld, *final.shape)
        for a, w in enumerate(w_chains):
            for b, v in enumerate(v_chains):
                if w.alive(k) and v.alive(k):
                    expect.a[w.position(k), v.position(k)] = matched.body.a[a, b]
        if final != expect:
            raise ArithmeticError(f"ladder certificate failed at index {k}")
    decomposition = _decomposition_from(matched)
    return LadderResult(decomposition, source_change, target_change, matched, reducer.log)


def synthesize_ladder(
    D: LadderDecomposition, length: int, field: Field = GF2, tau: Optional[str] = None
) -> LadderModule:
    """Direct sum of matched pairs and single bars in canonical bases.

    Matched pairs carry 1s wherever both bars are alive; unmatched bars map
    to or come from zero.

    Raises:
        ValueError: if a matched pair is unrelated or a bar exceeds ``length``.
    """
    tau_str = "f" * length if tau is None else tau
    zig = "q" in tau_str
    key_tau = tau_str if zig else None
    D.check(key_tau)
    v_items: list[tuple[Interval, Optional[int]]] = []
    w_items: list[tuple[Interval, Optional[int]]] = []
    pair_id = 0
    for (a, b), n in D.matches.items():
        for _ in range(n):
            w_items.append((a, pair_id))
            v_items.append((b, pair_id))
            pair_id += 1
    v_items += [(b, None) for b, n in D.unmatched_source.items() for _ in range(n)]
    w_items += [(a, None) for a, n in D.unmatched_target.items() for _ in range(n)]
    for iv, _ in v_items + w_items:
        if iv.end > length:
            raise ValueError(f"bar {iv} exceeds length {length}")
    v_items.sort(key=lambda it: lex_key(it[0], key_tau))
    w_items.sort(key=lambda it: lex_key(it[0], key_tau))
    v_dims, v_mats = assemble([iv for iv, _ in v_items], length, tau_str, field)
    w_dims, w_mats = assemble([iv for iv, _ in w_items], length, tau_str, field)
    if zig:
        from .zigzag.module import ZigzagModule

        V = ZigzagModule(field, v_dims, tau_str, v_mats)
        W = ZigzagModule(field, w_dims, tau_str, w_mats)
    else:
        V = PersistenceModule(field, v_dims, v_mats)
        W = PersistenceModule(field, w_dims, w_mats)
    v_pos = _positions([iv for iv, _ in v_items], length)
    w_pos = _positions([iv for iv, _ in w_items], length)
    w_of_pair = {pid: idx for idx, (_, pid) in enumerate(w_items) if pid is not None}
    maps = []
    for k in range(length + 1):
        phi = Matrix.zeros(field, w_dims[k], v_dims[k])
        for vi, (_, pid) in enumerate(v_items):
            if pid is None:
                continue
            wi = w_of_pair[pid]
            if k in v_pos[vi] and k in w_pos[wi]:
                phi.a[w_pos[wi][k], v_pos[vi][k]] = field.one
        maps.append(phi)
    return LadderModule(V, W, tuple(maps))


def ladder_from_blocks(
    source_bars: Sequence, target_bars: Sequence, body, length: int, field: Field = GF2, tau: Optional[str] = None
) -> LadderModule:
    """Realizes a block matrix as a ladder between canonical modules.

    Args:
        source_bars: Intervals of the source bars, in (zigzag) lexicographic order.
        target_bars: Intervals of the target bars, in the same order.
        body: Entries, rows indexed by target bars and columns by source bars.
        length: Length of the modules.
        field: Scalar field.
        tau: Type string; all-forward when omitted.
    """
    tau_str = "f" * length if tau is None else tau
    src = [Interval(*iv) for iv in source_bars]
    tgt = [Interval(*iv) for iv in target_bars]
    B = Matrix(field, body, shape=(len(tgt), len(src)))
    v_dims, v_mats = assemble(src, length, tau_str, field)
    w_dims, w_mats = assemble(tgt, length, tau_str, field)
    if "q" in tau_str:
        from .zigzag.module import ZigzagModule

        V = ZigzagModule(field, v_dims, tau_str, v_mats)
        W = ZigzagModule(field, w_dims, tau_str, w_mats)
    else:
        V = PersistenceModule(field, v_dims, v_mats)
        W = PersistenceModule(field, w_dims, w_mats)
    v_pos = _positions(src, length)
    w_pos = _positions(tgt, length)
    maps = []
    for k in range(length + 1):
        phi = Matrix.zeros(field, w_dims[k], v_dims[k])
        for a in range(len(tgt)):
            for b in range(len(src)):
                if k in w_pos[a] and k in v_pos[b]:
                    phi.a[w_pos[a][k], v_pos[b][k]] = B.a[a, b]
        maps.append(phi)
    return LadderModule(V, W, tuple(maps))


def _positions(bars: Sequence[Interval], length: int) -> list[dict[int, int]]:
    """For each bar, the map ``k -> position of its generator in V_k``."""
    out: list[dict[int, int]] = [dict() for _ in bars]
    for k in range(length + 1):
        pos = 0
        for idx, iv in enumerate(bars):
            if iv.start <= k <= iv.end:
                out[idx][k] = pos
                pos += 1
    return out


def scramble_ladder(L: LadderModule, g_source: BasisChange, g_target: BasisChange) -> LadderModule:
    """The same ladder in other bases: modules transformed, maps conjugated."""
    V = L.source.transformed(g_source)
    W = L.target.transformed(g_target)
    maps = [
        multiply(multiply(g_target[k], phi), g_source.inverses[k]) for k, phi in enumerate(L.maps)
    ]
    return LadderModule(V, W, tuple(maps))


def random_decomposition(
    seed, length: int, tau: Optional[str] = None, max_terms: int = 3, max_mult: int = 2, attempts: int = 200
) -> LadderDecomposition:
    """A seeded random decomposition whose two barcodes have no nested pairs.

    Raises:
        RuntimeError: if no admissible draw is found within ``attempts``.
    """
    from .oracle import _rng
    from .orders import all_intervals

    rng = _rng(seed)
    key_tau = tau if tau is not None and "q" in tau else None
    ivs = all_intervals(length)

    def pick() -> Interval:
        return ivs[int(rng.integers(len(ivs)))]

    for _ in range(attempts):
        matches: dict = {}
        plus: dict = {}
        minus: dict = {}
        for _ in range(int(rng.integers(0, max_terms + 1))):
            a, b = pick(), pick()
            if related(a, b, key_tau):
                matches[(a, b)] = matches.get((a, b), 0) + int(rng.integers(1, max_mult + 1))
        for table in (plus, minus):
            for _ in range(int(rng.integers(0, max_terms))):
                table[pick()] = int(rng.integers(1, max_mult + 1))
        D = LadderDecomposition(matches, plus, minus)
        if check_no_nested(D.source_barcode(), key_tau) is None and check_no_nested(D.target_barcode(), key_tau) is None:
            return D
    raise RuntimeError("no non-nested decomposition found")


def random_ladder(seed, length: int, field: Field = GF2, tau: Optional[str] = None) -> LadderModule:
    """A random non-nested ladder, synthesized and then put in random bases."""
    from .oracle import _rng, random_basis_change

    rng = _rng(seed)
    D = random_decomposition(rng, length, tau)
    L = synthesize_ladder(D, length, field, tau)
    return scramble_ladder(
        L, random_basis_change(rng, field, L.source.dims), random_basis_change(rng, field, L.target.dims)
    )
