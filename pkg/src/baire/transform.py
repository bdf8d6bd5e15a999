"""Program transformations on names.

Everything here manufactures total transformations of names out of word
machines: specialization of one pair argument, a uniform fixed-point
builder, an injection that hides its input inside dummy blocks together
with the fixed extractor that recovers it, the injective combination of
the two, and a self-reproducing name.

Transformed names come with two synchronized faces: raw symbols (the
graph blocks, enumerated fairly from word-level approximations) and a
bound word machine used for direct evaluation.  The raw face and the
direct face approximate the same function; tests compare them on every
determined index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from .machine import (
    GraphEntry,
    MachineName,
    MachineStream,
    WordMachine,
    apply_name,
    apply_name_structured,
    candidate_word,
    encode_entry_block,
    encode_machine,
    eval_name,
    identity_machine,
    memoized_machine,
    NameLike,
)
from .streams import (
    BufferedStream,
    Fuel,
    FuelLike,
    NeedMoreFuel,
    Stream,
    WORD_EDGE,
    Word,
    WordStream,
    as_stream,
    even_part,
    interleave_word,
    odd_part,
    pair_stream,
    unpair_stream,
)


def prefix_of(source, k: int, fuel: Fuel) -> Word:
    """First k symbols of a word or stream source; words just truncate."""
    if isinstance(source, tuple):
        return source[:k]
    return source.prefix(k, fuel)


def available_prefix(source, k: int, fuel: Fuel) -> Word:
    """Prefix up to length k, stopping quietly at the source's edge.

    Fuel shortages still propagate; only the permanent end of a finite
    approximation is treated as "no more symbols here".
    """
    if isinstance(source, tuple):
        return source[:k]
    out = []
    for i in range(k):
        try:
            out.append(source.at(i, fuel))
        except NeedMoreFuel as blocked:
            if blocked.tank is WORD_EDGE:
                break
            raise
    return tuple(out)


def value_prefix(value, k: int, fuel: Fuel) -> Word:
    if isinstance(value, tuple):
        return value[:k]
    return value.prefix(k, fuel)


def bounded_value_prefix(value, k: int, fuel: Fuel, step_cap: int) -> Word:
    """Deterministically budgeted prefix of a word or stream value.

    Runs the value under a fresh tank of `step_cap` steps (chained to the
    caller's budget) and returns whatever got determined.  The cap makes
    the result a function of the inputs alone, so word-level faces built
    from it stay monotone and budget-independent.
    """
    if isinstance(value, tuple):
        return value[:k]
    tank = Fuel(step_cap, parent=fuel)
    out = []
    for i in range(k):
        try:
            out.append(value.at(i, tank))
        except NeedMoreFuel as blocked:
            if blocked.tank is tank or blocked.tank is WORD_EDGE:
                break
            raise
    return tuple(out)


class SliceSource(Stream):
    """Length-limited lazy view of a stream; the limit reads as WORD_EDGE.

    Used to hand a parameter *approximation* to a functional without
    eagerly materializing the slice, so components the functional never
    looks at are never computed.
    """

    def __init__(self, base: Stream, limit: int):
        self.base = base
        self.limit = limit

    def at(self, n: int, fuel: FuelLike = None) -> int:
        if n >= self.limit:
            raise NeedMoreFuel(WORD_EDGE, "beyond the parameter slice")
        return self.base.at(n, fuel)


def limit_source(source, k: int):
    if isinstance(source, tuple):
        return source[:k]
    return SliceSource(source, k)


def word_face(source, fuel: Fuel) -> Optional[Word]:
    """The finite word a source stands for, if it is word-like.

    Words are themselves; slice views materialize their available part;
    genuine streams return None.
    """
    if isinstance(source, tuple):
        return source
    if isinstance(source, SliceSource):
        return available_prefix(source, source.limit, fuel)
    return None


def split_source(pair_like):
    """Even/odd components of a pair given as a word or a stream.

    Slices of structured pairs split into slices of the originals, so a
    component the consumer never reads is never evaluated.
    """
    if isinstance(pair_like, tuple):
        return even_part(pair_like), odd_part(pair_like)
    if isinstance(pair_like, SliceSource):
        left, right = split_source(pair_like.base)
        k = pair_like.limit
        return limit_source(left, (k + 1) // 2), limit_source(right, k // 2)
    return unpair_stream(pair_like)


def join_sources(left, right):
    if isinstance(left, tuple) and isinstance(right, tuple):
        return interleave_word(left, right)
    return pair_stream(as_stream(left), as_stream(right))


# ---------------------------------------------------------------------------
# specialization


class PairFunctional:
    """A continuous function of a pair, split into parameter and argument.

    `apply(param, x, fuel)` returns a word, monotone in the argument prefix
    and in the parameter source.  Subclasses may add `apply_structured`
    (lazy, structure-preserving application used by the fixed-point
    machinery) and may override `bind` to keep per-parameter state.
    """

    label = ""
    apply_structured: Optional[Callable] = None

    def apply(self, param, x: Word, fuel: Fuel) -> Word:
        raise NotImplementedError

    def bind(self, param) -> Callable[[Word, Fuel], Word]:
        return lambda x, fuel: self.apply(param, x, fuel)


class MachinePair(PairFunctional):
    """Word machine on interleaved pairs, viewed as a pair functional."""

    def __init__(self, machine: WordMachine):
        self.machine = machine
        self.label = machine.label

    def apply(self, param, x, fuel):
        return self.machine.apply(
            interleave_word(available_prefix(param, len(x), fuel), x), fuel
        )


class _BoundApplication:
    """Structured application hook carried by a specialized name."""

    def __init__(self, functional: PairFunctional, param):
        self.functional = functional
        self.param = param

    def apply(self, argument):
        return self.functional.apply_structured(self.param, argument)


@dataclass
class NameTransformer:
    """A total transformation of names with a word-level face.

    `apply` specializes a parameter source (word or stream) to a name;
    `machine` maps a parameter prefix to a prefix of the transformed name,
    which is what gets encoded when the transformer itself needs a name.
    """

    apply: Callable
    machine: WordMachine
    label: str = ""
    extract: Optional[Callable[[Stream], Stream]] = None

    def name(self, head: Word = ()) -> MachineName:
        """A name t with U_t equal to this transformer."""
        n = encode_machine(self.machine, head, label=f"name({self.label})")
        n.transformer = self
        return n


def transformer_word_prefix(F: PairFunctional, param_word: Word, fuel: Fuel) -> Word:
    """Prefix of the specialized name derivable from a parameter prefix.

    Emits graph blocks for candidate words in the fair order, fixing each
    entry's parameter slice at the candidate's own length so the emitted
    symbols never change as the parameter prefix grows.
    """
    out = []
    k = 0
    while True:
        u = candidate_word(k)
        if len(u) > len(param_word):
            break
        fuel.tick()
        v = F.apply(param_word[: len(u)], u, fuel)
        if v:
            out.extend(encode_entry_block(GraphEntry(u, v)))
        k += 1
    return tuple(out)


def smn(target) -> NameTransformer:
    """Specialization: a total S with U_{S(q)}(p) = F<q, p>.

    `target` is a word machine on interleaved pairs or a PairFunctional.
    The specialized name's graph holds entries (u, F(q-prefix-of-|u|, u)).
    """
    F = target if isinstance(target, PairFunctional) else MachinePair(target)
    label = f"smn({F.label})" if F.label else "smn"

    def specialize(param) -> MachineName:
        bound = F.bind(param)

        def raw_apply(u, fuel):
            # fix the parameter slice at the candidate's length so emitted
            # blocks never change as the parameter grows; the slice stays a
            # lazy view, so unread parameter components cost nothing
            return F.apply(limit_source(param, len(u)), u, fuel)

        name = MachineName(
            memoized_machine(bound, label), label=label, raw_apply=raw_apply
        )
        if F.apply_structured is not None:
            name.transformer = _BoundApplication(F, param)
        return name

    machine = WordMachine(
        lambda w, fuel: transformer_word_prefix(F, w, fuel), label
    )
    return NameTransformer(specialize, machine, label)


# ---------------------------------------------------------------------------
# uniform fixed points


class _SelfApplication(PairFunctional):
    """G<u, z> = value at z of the name named by u applied to itself."""

    label = "self-apply"

    def __init__(self):
        self._inner = {}

    def _self_value(self, u):
        key = id(u)
        got = self._inner.get(key)
        if got is None:
            got = (apply_name_structured(u, u), u)  # keep u alive with its id
            self._inner[key] = got
        return got[0]

    def apply(self, u, z, fuel):
        w = word_face(u, fuel)
        if w is not None:
            return apply_name(eval_name(w, w), z, fuel)
        return apply_name(self._self_value(u), z, fuel)

    def apply_structured(self, u, z):
        if isinstance(u, tuple):
            return apply_name_structured(eval_name(u, u), z)
        return apply_name_structured(self._self_value(u), z)


class _ApplyThroughSpecializer(PairFunctional):
    """H<p, u> = prefix of U_p applied to the specialized name for u."""

    label = "apply-through"

    def __init__(self, specializer: NameTransformer):
        self.specializer = specializer
        self._cache = {}

    def _specialized(self, u):
        key = u if isinstance(u, tuple) else id(u)
        got = self._cache.get(key)
        if got is None:
            got = (self.specializer.apply(u), u)  # keep u alive with its id
            self._cache[key] = got
        return got[0]

    def apply(self, p, u, fuel):
        p_word = word_face(p, fuel)
        if p_word is not None:
            p = p_word
        value = apply_name_structured(p, self._specialized(u), fuel)
        # deterministic inner budget: word faces must not hinge on the
        # caller's fuel, and a diverging application must cost a bounded
        # amount per entry
        return bounded_value_prefix(value, len(u), fuel, 4 * (len(u) + 4) ** 2)

    def apply_structured(self, p, u):
        return apply_name_structured(p, self._specialized(u))


def recursion_T() -> NameTransformer:
    """Total T with U_{T(p)} = U_{U_p(T(p))} for names p of total transformers.

    T(p) is built by specializing self-application and then feeding the
    result through p, the classical construction of a uniform fixed point.
    """
    G = _SelfApplication()
    D = smn(G)
    H = _ApplyThroughSpecializer(D)
    V = smn(H)

    def apply(p) -> MachineName:
        fixed = D.apply(V.apply(p))
        fixed.label = "fix"
        return fixed

    machine = WordMachine(
        lambda w, fuel: transformer_word_prefix(
            G, transformer_word_prefix(H, w, fuel), fuel
        ),
        "fix",
    )
    return NameTransformer(apply, machine, "recursion")


# ---------------------------------------------------------------------------
# injection with a fixed extractor


class InjectionOutput(BufferedStream):
    """The stream produced by an injected name on an input p.

    Stage i emits the marker block 1, 0^p(i), 1 and then every inner
    symbol of U_s(p) newly determined within a fresh budget of i*i steps,
    with inner 0s and 1s rewritten to 2.  Blocks are all dummies and the
    rewrite moves between dummies, so decoding still yields the graph of
    U_{U_s(p)}; scanning the marker blocks recovers p exactly.
    """

    def __init__(self, s_source, p_source, label: str = ""):
        super().__init__()
        self.s_source = s_source
        self.p_stream = as_stream(p_source)
        self.label = label
        self._inner = None
        self._stage = 0
        self._block_emitted = False
        self._stage_spent = 0
        self._inner_taken = 0
        self._pending = deque()
        self.machine = memoized_machine(self._apply_word, f"inj-out({label})")

    def _inner_stream(self) -> Stream:
        if self._inner is None:
            self._inner = as_stream(apply_name_structured(self.s_source, self.p_stream))
        return self._inner

    def _apply_word(self, z, fuel):
        # semantics of this stream as a name: same function U_s(p) names
        return apply_name(self._inner_stream(), z, fuel)

    def _extend(self, fuel: Fuel) -> None:
        if self._pending:
            self._buf.append(self._pending.popleft())
            return
        if not self._block_emitted:
            v = self.p_stream.at(self._stage, fuel)
            self._pending.extend((1,) + (0,) * v + (1,))
            self._block_emitted = True
            return
        allowance = self._stage * self._stage - self._stage_spent
        inner = self._inner_stream()
        while allowance > 0:
            tank = Fuel(allowance, parent=fuel)
            try:
                sym = inner.at(self._inner_taken, tank)
            except NeedMoreFuel as blocked:
                self._stage_spent += tank.spent
                if blocked.tank is tank or blocked.tank is WORD_EDGE:
                    break  # stage budget spent, or the approximation ends
                raise
            self._stage_spent += tank.spent
            allowance = self._stage * self._stage - self._stage_spent
            self._inner_taken += 1
            self._pending.append(2 if sym < 2 else sym)
        self._stage += 1
        self._block_emitted = False
        self._stage_spent = 0


class _InjectionFunctional(PairFunctional):
    """Pair functional behind the injection: (s, p) -> injected output."""

    label = "inject"

    def apply(self, s, p_word, fuel):
        out = InjectionOutput(s, WordStream(p_word))
        collected = []
        while True:
            try:
                collected.append(out.at(len(collected), fuel))
            except NeedMoreFuel as blocked:
                if blocked.tank is WORD_EDGE:
                    return tuple(collected)
                raise

    def apply_structured(self, s, p):
        return InjectionOutput(s, p, label="inj")


def extractor_machine() -> WordMachine:
    """The fixed machine recovering p from any injected output.

    Scans for 1-delimited zero blocks and emits their lengths; everything
    else (rewritten inner symbols, decoded content) is skipped.
    """

    def apply(w, fuel):
        out = []
        counting = False
        count = 0
        for sym in w:
            if counting:
                if sym == 0:
                    count += 1
                elif sym == 1:
                    out.append(count)
                    counting = False
                # rewritten symbols inside a block cannot occur; skip anyway
            elif sym == 1:
                counting = True
                count = 0
        return tuple(out)

    return WordMachine(apply, "extract")


@dataclass
class Injection:
    """The injection transformer I together with its fixed extractor L."""

    transformer: NameTransformer
    extractor: WordMachine

    def apply(self, s) -> MachineName:
        return self.transformer.apply(s)

    def extract(self, stream: Stream) -> Stream:
        return MachineStream(self.extractor, stream, label="extract")


def injection() -> Injection:
    """Total I making every name's function an injection, semantics kept.

    U_{I(s)}(p) encodes p in dummy marker blocks while reproducing the
    graph content of U_s(p), so U_{U_{I(s)}(p)} = U_{U_s(p)} whenever the
    latter is defined, and the single extractor L satisfies L(U_{I(s)}(p))
    = p for every s.
    """
    transformer = smn(_InjectionFunctional())
    transformer.label = "inject"
    L = extractor_machine()
    inj = Injection(transformer, L)
    transformer.extract = inj.extract
    return inj


# ---------------------------------------------------------------------------
# injective recursion


class _ReferencingFunctional(PairFunctional):
    """A<(s, q), p> = f(name of I(s), <q, p>) for a host functional f."""

    label = "self-ref"

    def __init__(self, f, inj: Injection):
        self.f = f
        self.inj = inj
        self._names = {}

    @staticmethod
    def _key(s):
        if isinstance(s, tuple):
            return s
        if isinstance(s, SliceSource):
            return (_ReferencingFunctional._key(s.base), s.limit)
        return id(s)

    def _injected(self, s, fuel):
        key = self._key(s)
        got = self._names.get(key)
        if got is None:
            got = (self.inj.apply(s), s)  # keep s alive with its id
            self._names[key] = got
        return got[0]

    def apply(self, sq, p_word, fuel):
        s, q = split_source(sq)
        q_pfx = available_prefix(q, len(p_word) + 1, fuel)
        return self.f(self._injected(s, fuel), interleave_word(q_pfx, p_word), fuel)


class _NamePrefixFunctional(PairFunctional):
    """C<s, q> = raw prefix of the name produced by an inner specializer."""

    label = "name-prefix"

    def __init__(self, inner: NameTransformer):
        self.inner = inner
        self._targets = {}

    def _target(self, s, q):
        key = (_ReferencingFunctional._key(s), q if isinstance(q, tuple) else id(q))
        got = self._targets.get(key)
        if got is None:
            got = (self.inner.apply(join_sources(s, q)), s, q)
            self._targets[key] = got
        return got[0]

    def apply(self, s, q_word, fuel):
        target = self._target(s, q_word)
        length_cap = (len(q_word) + 2) * (len(q_word) + 2)
        tank = Fuel(64 * length_cap, parent=fuel)  # deterministic sweep budget
        out = []
        for j in range(length_cap):
            try:
                out.append(target.at(j, tank))
            except NeedMoreFuel as blocked:
                if blocked.tank is tank or blocked.tank is WORD_EDGE:
                    break  # this approximation of s/q determines no more
                raise
        return tuple(out)

    def apply_structured(self, s, q):
        return self._target(s, q)


@dataclass
class InjectiveRecursion:
    """Total computable injection R with U_{R(q)}(p) = f(R, <q, p>).

    `name_stream` is the verbatim name of R handed to f as its first
    argument; `extract` undoes R on every tested prefix.
    """

    transformer: NameTransformer
    name_stream: Stream
    extract: Callable[[Stream], Stream]

    def apply(self, q) -> Stream:
        return self.transformer.apply(q)


def injective_recursion(f, label: str = "") -> InjectiveRecursion:
    """Build R for a host functional f(name_of_R, pair_prefix, fuel) -> word.

    Follows the double-specialization route: specialize f against injected
    names, name the resulting transformer, take its uniform fixed point t*,
    and let R be the function named by I(t*).
    """
    inj = injection()
    S1 = smn(_ReferencingFunctional(f, inj))
    S = smn(_NamePrefixFunctional(S1))
    t = S.name()
    T = recursion_T()
    t_fixed = T.apply(t)
    r_name = inj.apply(t_fixed)

    def apply(q) -> InjectionOutput:
        return InjectionOutput(t_fixed, q, label=label or "R(q)")

    machine = memoized_machine(
        lambda q_word, fuel: _InjectionFunctional().apply(t_fixed, q_word, fuel),
        f"R({label})",
    )
    transformer = NameTransformer(apply, machine, label or "injective-recursion")
    transformer.extract = inj.extract
    return InjectiveRecursion(transformer, r_name, inj.extract)


# ---------------------------------------------------------------------------
# self-reproducing name


class _PairIdentity(PairFunctional):
    """F<q, p> = <q, p>: the identity viewed as a pair functional."""

    label = "pair-id"

    def apply(self, q, x, fuel):
        return interleave_word(available_prefix(q, len(x), fuel), x)

    def apply_structured(self, q, p):
        return pair_stream(as_stream(q), as_stream(p))


def pair_specializer() -> NameTransformer:
    """S with U_{S(q)}(p) = <q, p>; the quine is its fixed point."""
    S = smn(_PairIdentity())
    S.label = "pair-id"
    return S


class SelfPairingName(BufferedStream):
    """A name q with U_q(p) = <q, p>: the fixed point solved by laziness.

    Entry for a word u is (u, <q, u>), where the output quotes the name's
    own earlier symbols.  Each block's header (begin marker, input payload,
    separator) is emitted before its output is computed, so those self
    reads always land in the already-produced buffer; the blocks emitted
    so far always outrun the prefix the next output needs.
    """

    def __init__(self, transform=None, head: Word = (), label: str = "quine"):
        super().__init__()
        self.label = label
        self.head = tuple(head)
        self._transform = transform or (lambda w: w)
        self._cand = 0
        self._header_done = False
        self._pending = deque(self.head)
        self.machine = memoized_machine(self._apply, label)
        self.transformer = None

    def _apply(self, x: Word, fuel: Fuel) -> Word:
        return interleave_word(self.prefix(len(x), fuel), self._transform(x))

    def _extend(self, fuel: Fuel) -> None:
        if self._pending:
            self._buf.append(self._pending.popleft())
            return
        u = candidate_word(self._cand)
        if not self._header_done:
            self._pending.append(3)
            self._pending.extend(s + 6 for s in u)
            self._pending.append(4)
            self._header_done = True
            return
        assert len(u) <= len(self._buf) or not u, "self reference outran buffer"
        v = self._apply(u, fuel)
        self._pending.extend(s + 6 for s in v)
        self._pending.append(5)
        self._cand += 1
        self._header_done = False


def quine() -> SelfPairingName:
    """A name q with U_q(p) = <q, p> on every determined index.

    This is the fixed point U_q = U_{S(q)} of the pair specializer, whose
    existence the uniform recursion theorem guarantees; it is built here
    by self-referential enumeration, which additionally makes the raw
    symbols cheap to produce.
    """
    return SelfPairingName()


# ---------------------------------------------------------------------------
# ready-made total transformer names (used by tests and the loop machinery)


class _ConstantApplication:
    def __init__(self, value):
        self.value = value

    def apply(self, argument):
        return self.value


def const_transformer_name(value: NameLike, label: str = "const") -> MachineName:
    """Name of the transformer sending every name to `value`."""

    def apply(w, fuel):
        return value_prefix(value, len(w), fuel)

    n = encode_machine(WordMachine(apply, label), label=label)
    n.transformer = _ConstantApplication(value)
    return n


class _IdentityApplication:
    def apply(self, argument):
        return argument


def identity_transformer_name() -> MachineName:
    n = encode_machine(identity_machine(), label="id-transformer")
    n.transformer = _IdentityApplication()
    return n


class _PrependApplication:
    def __init__(self, noise):
        self.noise = tuple(noise)

    def apply(self, argument):
        source = as_stream(argument)

        class _Prefixed(BufferedStream):
            def __init__(self, head, tail):
                super().__init__()
                self._buf = list(head)
                self.tail = tail
                self._pos = 0

            def _extend(self, fuel):
                self._buf.append(self.tail.at(self._pos, fuel))
                self._pos += 1

        return _Prefixed(self.noise, source)


def dummy_prefix_transformer_name(noise: Word) -> MachineName:
    """Name of the transformer prepending dummy noise to its argument.

    With noise drawn from the dummy symbols this keeps the meaning of every
    name it is applied to.
    """
    noise = tuple(noise)
    assert all(s in (0, 1, 2) for s in noise)

    def apply(w, fuel):
        return noise + w

    n = encode_machine(WordMachine(apply, "prepend"), label="prepend")
    n.transformer = _PrependApplication(noise)
    return n
