import pytest

from baire.machine import (
    MachineStream,
    WordMachine,
    apply_name,
    decode_entries,
    eval_stream,
    identity_name,
    pure_machine,
)
from baire.streams import (
    Fuel,
    PlanStream,
    ZEROS,
    EvenView,
    even_part,
    interleave_word,
    odd_part,
    pair_stream,
)
from baire.transform import (
    const_transformer_name,
    dummy_prefix_transformer_name,
    identity_transformer_name,
    injection,
    injective_recursion,
    quine,
    recursion_T,
    smn,
)

from helpers import ChainPlan, seeded_plan_stream


def determined(stream, depth, budget=400_000):
    return stream.determined_prefix(depth, Fuel(budget))


def common_agree(a, b, min_len=0):
    short = min(len(a), len(b))
    assert a[:short] == b[:short]
    assert short >= min_len, f"only {short} common determined indices"


# --- specialization -----------------------------------------------------------


second_projection = pure_machine(odd_part, "proj2")
first_projection = pure_machine(even_part, "proj1")
pair_identity = pure_machine(lambda w: w, "pair-id")


@pytest.mark.parametrize("seed", range(20))
def test_smn_second_projection(seed):
    S = smn(second_projection)
    q, p = seeded_plan_stream(seed), seeded_plan_stream(seed + 100)
    out = eval_stream(S.apply(q), p)
    assert determined(out, 32) == p.prefix(32)


@pytest.mark.parametrize("seed", range(20))
def test_smn_first_projection(seed):
    S = smn(first_projection)
    q, p = seeded_plan_stream(seed), seeded_plan_stream(seed + 100)
    out = eval_stream(S.apply(q), p)
    got = determined(out, 32)
    assert len(got) >= 31  # evens of a 2k-long interleave
    assert got == q.prefix(len(got))


@pytest.mark.parametrize("seed", range(20))
def test_smn_pair_identity(seed):
    S = smn(pair_identity)
    q, p = seeded_plan_stream(seed), seeded_plan_stream(seed + 100)
    out = eval_stream(S.apply(q), p)
    want = pair_stream(seeded_plan_stream(seed), seeded_plan_stream(seed + 100))
    got = determined(out, 32)
    assert len(got) >= 30
    assert got == want.prefix(len(got))


def test_smn_raw_face_matches_direct_face():
    S = smn(second_projection)
    q = seeded_plan_stream(3)
    name = S.apply(q)
    raw = name.prefix(400, Fuel(200_000))
    p = (1, 0, 2)
    from baire.machine import eval_name

    decoded_value = eval_name(raw, p)
    direct_value = name.machine.apply(p, Fuel(10_000))
    assert decoded_value == direct_value[: len(decoded_value)]
    assert len(decoded_value) >= 2


# --- uniform fixed points -------------------------------------------------------


def fixed_point_sides(p_name, z, depth=16):
    T = recursion_T()
    fixed = T.apply(p_name)
    lhs = eval_stream(fixed, z)
    rhs = eval_stream(eval_stream(p_name, fixed), z)
    return determined(lhs, depth), determined(rhs, depth)


@pytest.mark.parametrize("seed", range(6))
def test_fixed_point_for_constant_transformers(seed):
    plan = ChainPlan(seed)
    z = plan.spine_stream(seed)  # an input the constant's value acts on
    lhs, rhs = fixed_point_sides(const_transformer_name(plan.name), z)
    common_agree(lhs, rhs, min_len=10)


def test_fixed_point_identity_transformer_is_vacuous():
    # both sides are the same divergent evaluation; nothing is determined,
    # and in particular nothing disagrees or hangs
    z = seeded_plan_stream(9)
    lhs, rhs = fixed_point_sides(identity_transformer_name(), z, depth=4)
    common_agree(lhs, rhs)


@pytest.mark.parametrize("seed", range(20))
def test_fixed_point_seeded_total_transformers(seed):
    if seed % 2:
        plan = ChainPlan(seed)
        z = plan.spine_stream(seed)
        p_name = const_transformer_name(plan.name)
        floor = 8
    else:
        z = seeded_plan_stream(seed + 60)
        p_name = dummy_prefix_transformer_name(tuple((seed + i) % 3 for i in range(4)))
        floor = 0  # semantics-preserving noise; determinacy follows the argument
    lhs, rhs = fixed_point_sides(p_name, z)
    common_agree(lhs, rhs, min_len=floor)


# --- injection -------------------------------------------------------------------


def test_injected_output_block_layout():
    inj = injection()
    p = PlanStream((4, 0, 2), ("zeros",))
    out = inj.apply(ZEROS).transformer.apply(p) if False else None
    # evaluate through the name itself
    name = inj.apply(PlanStream((), ("zeros",)))
    stream = eval_stream(name, p)
    syms = determined(stream, 40)
    flat = []
    i = 0
    while i < len(syms):
        if syms[i] == 1:
            j = i + 1
            while j < len(syms) and syms[j] == 0:
                j += 1
            if j < len(syms) and syms[j] == 1:
                flat.append(j - i - 1)
                i = j + 1
                continue
        i += 1
    assert flat[:3] == [4, 0, 2]
    got = determined(inj.extract(eval_stream(inj.apply(ZEROS), p)), 3)
    assert got == (4, 0, 2)


@pytest.mark.parametrize("seed", range(50))
def test_extractor_round_trip(seed):
    inj = injection()
    s = ChainPlan(seed, blocks=6).name
    p = seeded_plan_stream(seed + 7)
    out = eval_stream(inj.apply(s), p)
    got = determined(inj.extract(out), 64, budget=800_000)
    assert len(got) >= 48
    assert got == p.prefix(len(got))


def test_semantic_preservation_for_constant_identity():
    inj = injection()
    s = const_transformer_name(identity_name())
    p = seeded_plan_stream(11)
    z = seeded_plan_stream(12)
    inner_name = eval_stream(inj.apply(s), p)  # a name for U_{U_s(p)} = id
    got = determined(eval_stream(inner_name, z), 32)
    assert len(got) >= 16
    assert got == z.prefix(len(got))


@pytest.mark.parametrize("seed", range(20))
def test_semantic_preservation_seeded(seed):
    inj = injection()
    plan = ChainPlan(seed)
    s = const_transformer_name(plan.name)
    p = seeded_plan_stream(seed + 21)
    z = plan.spine_stream(seed)
    lhs = eval_stream(eval_stream(inj.apply(s), p), z)
    rhs = eval_stream(eval_stream(s, p), z)
    common_agree(determined(lhs, 16), determined(rhs, 16), min_len=6)


# --- injective recursion ----------------------------------------------------------


def ignore_name_functional(r_name, x, fuel):
    # f(R, <q, p>) = p
    return odd_part(x)


def use_name_functional(r_name, x, fuel):
    # f(R, <q, p>) = <U_R(q), p>
    q, p = even_part(x), odd_part(x)
    val = apply_name(r_name, q, fuel)
    return interleave_word(val, p)


@pytest.mark.parametrize("seed", range(8))
def test_injective_recursion_ignoring_functional(seed):
    R = injective_recursion(ignore_name_functional, "drop-name")
    q, p = seeded_plan_stream(seed), seeded_plan_stream(seed + 31)
    out = eval_stream(R.apply(q), p)
    got = determined(out, 32, budget=2_000_000)
    assert len(got) >= 12
    assert got == p.prefix(len(got))


def test_injective_recursion_self_referencing_functional():
    R = injective_recursion(use_name_functional, "use-name")
    q, p = seeded_plan_stream(1), seeded_plan_stream(2)
    lhs = eval_stream(R.apply(q), p)
    rhs = MachineStream(
        WordMachine(lambda w, fuel: use_name_functional(R.name_stream, w, fuel), "rhs"),
        pair_stream(seeded_plan_stream(1), seeded_plan_stream(2)),
    )
    lw = determined(lhs, 16, budget=4_000_000)
    rw = determined(rhs, 16, budget=4_000_000)
    common_agree(lw, rw, min_len=2)


def test_injective_recursion_distinct_inputs_distinct_names():
    R = injective_recursion(ignore_name_functional, "drop-name")
    a = determined(R.apply(seeded_plan_stream(1)), 40, budget=2_000_000)
    b = determined(R.apply(seeded_plan_stream(2)), 40, budget=2_000_000)
    assert seeded_plan_stream(1).prefix(8) != seeded_plan_stream(2).prefix(8)
    assert a != b  # block boundaries expose the injected input


@pytest.mark.parametrize("seed", range(30))
def test_injective_recursion_extractor(seed):
    R = injective_recursion(ignore_name_functional, "drop-name")
    q = seeded_plan_stream(seed)
    got = determined(R.extract(R.apply(q)), 64, budget=2_000_000)
    assert len(got) >= 48
    assert got == q.prefix(len(got))


# --- quine -----------------------------------------------------------------------


def test_quine_on_zero_input():
    q = quine()
    out = eval_stream(q, ZEROS)
    got = determined(out, 64)
    assert len(got) >= 60
    assert got[0::2] == q.prefix((len(got) + 1) // 2)
    assert all(s == 0 for s in got[1::2])


@pytest.mark.parametrize("seed", range(10))
def test_quine_reproduces_itself_and_input(seed):
    q = quine()
    p = seeded_plan_stream(seed)
    got = determined(eval_stream(q, p), 128)
    want = pair_stream(q, seeded_plan_stream(seed))
    assert len(got) == 128
    assert got == want.prefix(128)


def test_quine_even_extraction_reevaluates():
    q = quine()
    p = seeded_plan_stream(5)
    extracted = EvenView(eval_stream(q, p))
    p2 = PlanStream((2, 1, 0, 1), ("zeros",))
    got = determined(eval_stream(extracted, p2), 12, budget=1_500_000)
    want = determined(eval_stream(q, p2), 12)
    common_agree(got, want, min_len=6)


def test_quine_decodes_consistently():
    q = quine()
    raw = q.prefix(220, Fuel(200_000))
    entries = decode_entries(raw)
    assert entries, "self-referential name decodes to entries"
    for u, v in entries:
        assert v[0::2] == raw[: len(v[0::2])]
        assert v[1::2] == u[: len(v[1::2])]
