"""Orders and relations on intervals, for plain and zigzag persistence.

A type ``tau`` is a string over ``{"f", "q"}``; character ``i - 1`` describes
arrow ``i`` between spaces ``i - 1`` and ``i`` (``f`` forward ``i-1 -> i``,
``q`` backward ``i-1 <- i``). The plain case is ``tau = "f" * length``.

For intervals ``a`` and ``b``, ``preceq(a, b)`` holds exactly when the
interval module ``I[b]`` admits a nonzero map into ``I[a]``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple


class Interval(NamedTuple):
    """Closed integer interval ``[start, end]``.

    Tuple order on intervals is the lexicographic order used for ordered
    barcode bases in the plain case.
    """

    start: int
    end: int

    def __contains__(self, k: object) -> bool:  # type: ignore[override]
        return isinstance(k, int) and self.start <= k <= self.end

    def intersects(self, other: "Interval") -> bool:
        return max(self.start, other.start) <= min(self.end, other.end)

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


def as_interval(x) -> Interval:
    """Coerces a pair to an :class:`Interval`, checking ``0 <= start <= end``."""
    i, j = (int(v) for v in x)
    if not 0 <= i <= j:
        raise ValueError(f"invalid interval [{i},{j}]")
    return Interval(i, j)


def check_type(tau: str, length: int | None = None) -> str:
    """Validates a zigzag type string.

    Raises:
        ValueError: on characters other than ``f``/``q`` or a length mismatch.
    """
    if any(ch not in "fq" for ch in tau):
        raise ValueError(f"type must be a string over 'f'/'q', got {tau!r}")
    if length is not None and len(tau) != length:
        raise ValueError(f"type {tau!r} has length {len(tau)}, expected {length}")
    return tau


# -- plain relations ----------------------------------------------------------


def preceq(a, b) -> bool:
    """``a`` precedes ``b``: ``a.start <= b.start <= a.end <= b.end``."""
    return a[0] <= b[0] <= a[1] <= b[1]


def lex_leq(a, b) -> bool:
    """Lexicographic order on ``(start, end)``."""
    return (a[0], a[1]) <= (b[0], b[1])


def strictly_nested(a, b) -> bool:
    """``b`` sits strictly inside ``a``: ``a.start < b.start <= b.end < a.end``."""
    return a[0] < b[0] <= b[1] < a[1]


# -- zigzag orders ------------------------------------------------------------


@lru_cache(maxsize=None)
def tau_ranks(tau: str) -> tuple[int, ...]:
    """Rank of each endpoint ``0..len(tau)`` under the start order of ``tau``.

    Built inductively: a forward arrow ``i -> i+1`` puts ``i+1`` above all of
    ``0..i``; a backward arrow puts it below them.
    """
    check_type(tau)
    rank = [0]
    for i, arrow in enumerate(tau):
        if arrow == "f":
            rank.append(i + 1)
        else:
            rank = [r + 1 for r in rank] + [0]
    return tuple(rank)


@lru_cache(maxsize=None)
def tau_star_ranks(tau: str) -> tuple[int, ...]:
    """Rank of each endpoint under the end order of ``tau``.

    Built from the right end downwards: a forward arrow ``j -> j+1`` puts
    ``j`` below all of ``j+1..l``; a backward arrow puts it above them.
    """
    check_type(tau)
    length = len(tau)
    rank = {length: length}
    for j in range(length - 1, -1, -1):
        if tau[j] == "f":
            rank[j] = j
        else:
            rank = {k: r - 1 for k, r in rank.items()}
            rank[j] = length
    return tuple(rank[k] for k in range(length + 1))


def _by_rank(ranks: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(ranks)
    for k, r in enumerate(ranks):
        out[r] = k
    return tuple(out)


def order_tau(tau: str) -> tuple[int, ...]:
    """Endpoints ``0..l`` listed from smallest to largest in the start order."""
    return _by_rank(tau_ranks(tau))


def order_tau_star(tau: str) -> tuple[int, ...]:
    """Endpoints ``0..l`` listed from smallest to largest in the end order."""
    return _by_rank(tau_star_ranks(tau))


def lex_key(a, tau: str | None = None) -> tuple[int, int]:
    """Sort key realizing the (zigzag) lexicographic order on intervals."""
    if tau is None or "q" not in tau:
        return (a[0], a[1])
    return (tau_ranks(tau)[a[0]], tau_star_ranks(tau)[a[1]])


def lex_tau(a, b, tau: str) -> bool:
    """Zigzag lexicographic order: starts by the start order, ties by the end order."""
    return lex_key(a, tau) <= lex_key(b, tau)


def preceq_tau(a, b, tau: str) -> bool:
    """Zigzag analogue of :func:`preceq`.

    The intervals must meet in some ``[i, j]``. The arrow entering ``i``
    decides whether ``a`` must start no later than ``b`` (forward) or no
    earlier (backward), and the arrow leaving ``j`` does the same for the
    ends. Arrows outside ``0..l`` impose nothing.
    """
    i = max(a[0], b[0])
    j = min(a[1], b[1])
    if i > j:
        return False
    if i >= 1:
        if tau[i - 1] == "f":
            if not a[0] <= b[0]:
                return False
        elif not b[0] <= a[0]:
            return False
    if j < len(tau):
        if tau[j] == "f":
            if not a[1] <= b[1]:
                return False
        elif not b[1] <= a[1]:
            return False
    return True


def strictly_nested_tau(a, b, tau: str) -> bool:
    """``b`` is strictly nested in ``a`` with respect to ``tau``.

    True when the intervals meet, ``a`` comes first in the zigzag
    lexicographic order, and ``a`` does not precede ``b``.
    """
    return Interval(*a).intersects(Interval(*b)) and lex_tau(a, b, tau) and not preceq_tau(a, b, tau)


def all_intervals(length: int) -> list[Interval]:
    return [Interval(i, j) for i in range(length + 1) for j in range(i, length + 1)]
