"""Finite words and lazy infinite sequences of naturals.

Streams are the working representation of points of Baire space.  They are
deterministic and memoized: querying an index twice yields the same symbol,
and a query answered under some step budget is answered identically under
any larger budget.  Running out of budget raises :class:`NeedMoreFuel`; it
never produces a wrong symbol and never corrupts cached state, so a later
query with more fuel simply resumes.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Optional, Union

Word = tuple  # finite word over the naturals

DEFAULT_BUDGET = 10**6


class NeedMoreFuel(Exception):
    """The step budget ran out before the queried symbol was determined.

    This is a "not yet" signal: retrying the same query with a larger
    budget either succeeds with the unique answer or signals again.
    """

    def __init__(self, tank: "Fuel", what: str = ""):
        self.tank = tank
        self.what = what
        super().__init__(what or "step budget exhausted")


class Fuel:
    """A per-query step budget, optionally chained to an enclosing budget.

    Every unit of fresh work ticks the tank (and its ancestors).  Cached
    reads are free, so resuming an interrupted computation replays cheaply
    and deterministically.
    """

    __slots__ = ("remaining", "parent", "spent")

    def __init__(self, steps: int, parent: Optional["Fuel"] = None):
        self.remaining = steps
        self.spent = 0
        self.parent = parent

    def tick(self, n: int = 1) -> None:
        # check the whole chain before charging any tank, so an exhausted
        # budget never records phantom work and resumption stays exact
        exhausted = None
        tank = self
        while tank is not None:
            if tank.remaining < n:
                exhausted = tank  # outermost exhausted tank wins
            tank = tank.parent
        if exhausted is not None:
            raise NeedMoreFuel(exhausted)
        tank = self
        while tank is not None:
            tank.remaining -= n
            tank.spent += n
            tank = tank.parent


FuelLike = Union[Fuel, int, None]


def as_fuel(fuel: FuelLike) -> Fuel:
    if fuel is None:
        return Fuel(DEFAULT_BUDGET)
    if isinstance(fuel, int):
        return Fuel(fuel)
    return fuel


# ---------------------------------------------------------------------------
# words


def is_prefix(u: Word, w: Word) -> bool:
    return len(u) <= len(w) and w[: len(u)] == u


def comparable(u: Word, w: Word) -> bool:
    return is_prefix(u, w) or is_prefix(w, u)


def word_sup(a: Word, b: Word) -> Optional[Word]:
    """Supremum of two words in the prefix order.

    Returns the longer word when one is a prefix of the other and None
    when the words are incompatible.  Incompatibility is a normal result.
    """
    if len(a) <= len(b):
        return b if b[: len(a)] == a else None
    return a if a[: len(b)] == b else None


def interleave_word(a: Word, b: Word) -> Word:
    """Longest word u with u(2i)=a(i), u(2i+1)=b(i) determined by a and b."""
    out = []
    for i in range(max(len(a), len(b)) + 1):
        if i >= len(a):
            break
        out.append(a[i])
        if i >= len(b):
            break
        out.append(b[i])
    return tuple(out)


def even_part(w: Word) -> Word:
    return w[0::2]


def odd_part(w: Word) -> Word:
    return w[1::2]


def cantor_pair(i: int, n: int) -> int:
    s = i + n
    return s * (s + 1) // 2 + n


def cantor_unpair(k: int) -> tuple:
    s = (math.isqrt(8 * k + 1) - 1) // 2
    n = k - s * (s + 1) // 2
    return s - n, n


# ---------------------------------------------------------------------------
# streams


class Stream:
    """Deterministic lazy infinite sequence of naturals."""

    label = ""

    def at(self, n: int, fuel: FuelLike = None) -> int:
        raise NotImplementedError

    def prefix(self, k: int, fuel: FuelLike = None) -> Word:
        """First k symbols; raises NeedMoreFuel if any is undetermined."""
        fuel = as_fuel(fuel)
        return tuple(self.at(i, fuel) for i in range(k))

    def determined_prefix(self, k: int, fuel: FuelLike = None) -> Word:
        """Longest prefix of length <= k computable before fuel runs out."""
        fuel = as_fuel(fuel)
        out = []
        for i in range(k):
            try:
                out.append(self.at(i, fuel))
            except NeedMoreFuel:
                break
        return tuple(out)

    def __repr__(self):
        tag = self.label or type(self).__name__
        return f"<{tag}>"


class _IndexedStream(Stream):
    """Random-access stream with a per-index memo table."""

    def __init__(self):
        self._cache = {}

    def _compute(self, n: int, fuel: Fuel) -> int:
        raise NotImplementedError

    def at(self, n: int, fuel: FuelLike = None) -> int:
        got = self._cache.get(n)
        if got is not None:
            return got
        fuel = as_fuel(fuel)
        fuel.tick()
        value = self._compute(n, fuel)
        self._cache[n] = value
        return value


class FunctionStream(_IndexedStream):
    """Stream given by a total index function."""

    def __init__(self, fn: Callable[[int], int], label: str = ""):
        super().__init__()
        self._fn = fn
        self.label = label

    def _compute(self, n, fuel):
        return self._fn(n)


class PlanStream(_IndexedStream):
    """Finite prefix followed by a tail rule: all zeros, or a cycled word.

    This is the serializable stream shape used by instance files and the
    command-line input syntax.
    """

    def __init__(self, head: Iterable = (), tail=("zeros",), label: str = ""):
        super().__init__()
        self.head = tuple(head)
        if tail[0] == "cycle" and len(tail[1]) == 0:
            raise ValueError("cycle tail needs a nonempty word")
        self.tail = (tail[0], tuple(tail[1])) if tail[0] == "cycle" else ("zeros",)
        self.label = label

    def _compute(self, n, fuel):
        if n < len(self.head):
            return self.head[n]
        if self.tail[0] == "zeros":
            return 0
        cyc = self.tail[1]
        return cyc[(n - len(self.head)) % len(cyc)]

    def spec_text(self) -> str:
        head = " ".join(str(s) for s in self.head) if self.head else "eps"
        if self.tail[0] == "zeros":
            return f"{head} zeros"
        return f"{head} cycle " + " ".join(str(s) for s in self.tail[1])


def constant_stream(value: int) -> PlanStream:
    return PlanStream((), ("zeros",)) if value == 0 else PlanStream((), ("cycle", (value,)))


ZEROS = PlanStream((), ("zeros",), label="0^w")


class PairStream(_IndexedStream):
    """Interleaving <q,p>: even positions read q, odd positions read p."""

    def __init__(self, left: Stream, right: Stream):
        super().__init__()
        self.left = left
        self.right = right

    def _compute(self, n, fuel):
        if n % 2 == 0:
            return self.left.at(n // 2, fuel)
        return self.right.at(n // 2, fuel)


class EvenView(_IndexedStream):
    def __init__(self, base: Stream):
        super().__init__()
        self.base = base

    def _compute(self, n, fuel):
        return self.base.at(2 * n, fuel)


class OddView(_IndexedStream):
    def __init__(self, base: Stream):
        super().__init__()
        self.base = base

    def _compute(self, n, fuel):
        return self.base.at(2 * n + 1, fuel)


class TupleStream(_IndexedStream):
    """Countable tupling: position cantor_pair(i, n) reads component i at n."""

    def __init__(self, component_fn: Callable[[int], Stream], label: str = ""):
        super().__init__()
        self._component_fn = component_fn
        self._components = {}
        self.label = label

    def component(self, i: int) -> Stream:
        got = self._components.get(i)
        if got is None:
            got = self._component_fn(i)
            self._components[i] = got
        return got

    def _compute(self, n, fuel):
        i, k = cantor_unpair(n)
        return self.component(i).at(k, fuel)


class ComponentView(_IndexedStream):
    def __init__(self, base: Stream, index: int):
        super().__init__()
        self.base = base
        self.index = index

    def _compute(self, n, fuel):
        return self.base.at(cantor_pair(self.index, n), fuel)


class ShiftStream(_IndexedStream):
    """Drops the first `offset` symbols of the base stream."""

    def __init__(self, base: Stream, offset: int):
        super().__init__()
        self.base = base
        self.offset = offset

    def _compute(self, n, fuel):
        return self.base.at(n + self.offset, fuel)


class WordStream(Stream):
    """A finite word acting as a partial stream.

    Reads beyond the word raise NeedMoreFuel with the WORD_EDGE tank, a
    permanent "this approximation ends here" signal that computations over
    word-level sources catch to stop cleanly.
    """

    def __init__(self, word: Word):
        self.word = tuple(word)

    def at(self, n: int, fuel: FuelLike = None) -> int:
        if n < len(self.word):
            return self.word[n]
        raise NeedMoreFuel(WORD_EDGE, "beyond the word approximation")


WORD_EDGE = Fuel(0)


def as_stream(value) -> Stream:
    return WordStream(value) if isinstance(value, tuple) else value


class BufferedStream(Stream):
    """Stream whose symbols are produced in order by a resumable producer.

    Subclasses implement _extend, which must either append at least one
    symbol to self._buf or raise NeedMoreFuel.  All producer state lives on
    the instance, so an interrupted query resumes exactly where it stopped.
    """

    def __init__(self):
        self._buf = []

    def _extend(self, fuel: Fuel) -> None:
        raise NotImplementedError

    def at(self, n: int, fuel: FuelLike = None) -> int:
        if n < len(self._buf):
            return self._buf[n]
        fuel = as_fuel(fuel)
        while n >= len(self._buf):
            fuel.tick()  # bounds unproductive producer rounds
            self._extend(fuel)
        return self._buf[n]


# ---------------------------------------------------------------------------
# pairing / tupling operations


def pair_stream(q: Stream, p: Stream) -> PairStream:
    return PairStream(q, p)


def unpair_stream(r: Stream) -> tuple:
    """Inverse of pair_stream; returns the original components when known."""
    if isinstance(r, PairStream):
        return r.left, r.right
    return EvenView(r), OddView(r)


def tuple_countable(components) -> TupleStream:
    """Tuple a countable family of streams along the pairing bijection.

    `components` is either a function i -> Stream or a sequence (queried
    components must be in range).
    """
    if callable(components):
        return TupleStream(components)
    seq = list(components)
    return TupleStream(lambda i: seq[i])


def project(t: Stream, i: int) -> Stream:
    if isinstance(t, TupleStream):
        return t.component(i)
    return ComponentView(t, i)
