"""Seeded generators and independent oracles shared across the test suite.

The oracles here re-derive results by deliberately naive means (explicit
scans, quadratic filters) so they stay independent of the production code
paths they check.
"""

import random

from baire.machine import GraphEntry, WordMachine, encode_entry_block
from baire.streams import PlanStream, is_prefix


# --- independent decode/eval oracle -----------------------------------------


def naive_decode(word):
    """Entry extraction by explicit index walking; no shared parser code."""
    raw = []
    i, n = 0, len(word)
    while i < n:
        if word[i] != 3:
            i += 1
            continue
        j = i + 1
        inp, out = [], []
        part = inp
        bad = False
        while j < n:
            s = word[j]
            if s in (0, 1, 2):
                j += 1
            elif s >= 6:
                part.append(s - 6)
                j += 1
            elif s == 4:
                if part is inp:
                    part = out
                    j += 1
                else:
                    bad = True
                    break
            elif s == 5:
                break
            else:  # s == 3
                bad = True
                break
        if bad:
            i = j  # resume at the offending symbol
        elif j < n and part is out and word[j] == 5:
            raw.append((tuple(inp), tuple(out)))
            i = j + 1
        else:
            break  # prefix ends mid-entry
    accepted = []
    for u, v in raw:
        if (u, v) in accepted:
            continue
        ok = True
        for u2, v2 in accepted:
            if is_prefix(u, u2) or is_prefix(u2, u):
                if not (is_prefix(v, v2) or is_prefix(v2, v)):
                    ok = False
                    break
        if ok:
            accepted.append((u, v))
    return accepted


def naive_eval(name_word, input_word):
    best = ()
    for u, v in naive_decode(name_word):
        if is_prefix(u, input_word) and len(v) >= len(best):
            assert v[: len(best)] == best
            best = v
    return best


# --- seeded word machines -----------------------------------------------------


def transducer_machine(seed, chunk_bound=3, sym_bound=10):
    """Symbolwise transducer: each input symbol appends a seeded chunk.

    Monotone by construction (output is a fold over input symbols).
    """
    rng = random.Random(f"transducer:{seed}")
    table = {
        (pos, sym): tuple(
            rng.randrange(sym_bound) for _ in range(rng.randrange(chunk_bound))
        )
        for pos in range(8)
        for sym in range(8)
    }

    def apply(w):
        out = []
        for i, s in enumerate(w):
            out.extend(table[(min(i, 7), min(s, 7))])
        return tuple(out)

    return WordMachine(lambda w, fuel: apply(w), f"transducer{seed}")


# --- seeded raw names with known semantics ------------------------------------


class ChainPlan:
    """A raw name built from a chain of entries along a seeded input spine.

    Entry j is (spine[:j], target[:cut[j]]) with nondecreasing cuts, so the
    intended function maps any stream extending spine[:j] to at least
    target[:cut[j]].  Dummy noise, decoy conflicts and a malformed fragment
    are mixed into the raw symbols to exercise the decoder.
    """

    def __init__(self, seed, blocks=34):
        rng = random.Random(f"chain:{seed}")
        self.spine = tuple(rng.randrange(4) for _ in range(blocks))
        cuts = [0]
        for _ in range(blocks):
            cuts.append(cuts[-1] + 1 + rng.randrange(2))
        self.cuts = cuts
        self.target = tuple(rng.randrange(10) for _ in range(cuts[-1] + 4))
        syms = []
        if rng.random() < 0.5:
            syms.extend(rng.choice((0, 1, 2)) for _ in range(rng.randrange(3)))
        for j in range(blocks + 1):
            entry = GraphEntry(self.spine[:j], self.target[: cuts[j]])
            block = list(encode_entry_block(entry))
            for pos in range(len(block), 0, -1):  # sprinkle dummies
                if rng.random() < 0.1:
                    block.insert(pos - 1, rng.choice((0, 1, 2)))
            syms.extend(block)
            if j == 2:
                # decoy conflicting entry: same input, incompatible output
                wrong = tuple(s + 1 for s in self.target[: cuts[j]]) or (9,)
                syms.extend(encode_entry_block(GraphEntry(self.spine[:j], wrong)))
            if j == 4:
                syms.extend((3, 7, 3))  # malformed fragment, recovered at next 3
        self.name = PlanStream(syms, ("zeros",), label=f"chain{seed}")

    def expected(self, input_word):
        """Intended value on an input prefix (independent of the decoder)."""
        j = 0
        while j < len(self.spine) and is_prefix(self.spine[: j + 1], input_word):
            j += 1
        return self.target[: self.cuts[j]]

    def spine_stream(self, tail_seed=0):
        rng = random.Random(f"spine-tail:{tail_seed}")
        tail = tuple(rng.randrange(4) for _ in range(8))
        return PlanStream(self.spine, ("cycle", tail) if any(tail) else ("zeros",))


def seeded_plan_stream(seed, bound=4, length=24):
    rng = random.Random(f"plan:{seed}")
    head = tuple(rng.randrange(bound) for _ in range(length))
    cyc = tuple(rng.randrange(bound) for _ in range(1 + rng.randrange(3)))
    return PlanStream(head, ("cycle", cyc) if any(cyc) else ("zeros",))
