import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epicheck.checker import (
    KnowledgeState,
    check_valid,
    check_valid_explicit,
    run_query,
    translate,
)
from epicheck.errors import ParseError, UndeclaredAgent, VocabularyTooLarge
from epicheck.formula import (
    BOT,
    TOP,
    Announce,
    Conj,
    Disj,
    Equiv,
    KnowsThat,
    KnowsWhether,
    Neg,
    Prop,
    Scene,
)
from epicheck.parser import parse_scene
from epicheck.randgen import random_formula, random_scene

P = Prop


def ks_for(vocab, obs, law=TOP, backend=None):
    return KnowledgeState.initial(Scene(vocab, law, obs, TOP), backend=backend)


def test_translate_examples(backend):
    ks = ks_for((1,), {"a": set()}, backend=backend)
    m = ks.manager
    assert translate(ks, KnowsThat("a", TOP)) == m.true
    assert translate(ks, KnowsWhether("a", P(1))) == m.false
    assert translate(ks, Announce(P(1), KnowsThat("a", P(1)))) == m.true


def test_translate_examples_agree_with_oracle():
    # constant true means valid; constant false means the negation is valid
    for query, expected in [
        (KnowsThat("a", TOP), True),
        (KnowsWhether("a", P(1)), False),
        (Announce(P(1), KnowsThat("a", P(1))), True),
    ]:
        q = query if expected else Neg(query)
        assert check_valid_explicit(Scene((1,), TOP, {"a": set()}, q)) is True


# expected verdicts first computed with check_valid_explicit, then frozen
SCENES = {
    "announce_top_a": ("VARS 1,2 LAW Top OBS a:1 b:2 VALID? [!Top] a knows whether 1", True),
    "announce_top_b": ("VARS 1,2 LAW Top OBS a:1 b:2 VALID? [!Top] b knows whether 1", False),
    "query_top": ("VARS 1,2 LAW 1 | 2 OBS a:1 VALID? Top", True),
    "announce_or": ("VARS 1,2 LAW Top OBS a:1 b:2 VALID? [!(1|2)] a knows whether 2", False),
    "announce_atom": ("VARS 1 LAW Top OBS a: VALID? [!1] a knows that 1", True),
}


@pytest.mark.parametrize("name", sorted(SCENES))
def test_check_valid_examples(name, backend):
    text, expected = SCENES[name]
    s = parse_scene(text)
    assert check_valid_explicit(s) is expected
    res = check_valid(s, backend=backend)
    assert res.verdict is expected
    assert res.state_count <= 2 ** len(s.vocabulary)


def test_state_count_and_stats():
    res = check_valid(parse_scene("VARS 1,2,3 LAW 1 | 2 OBS a:1 VALID? Top"))
    assert res.state_count == 6
    assert res.peak_node_count >= 3
    assert res.elapsed >= 0


def test_unsatisfiable_law_is_vacuous(backend):
    s = Scene((1, 2), BOT, {"a": {1}}, BOT)
    assert check_valid_explicit(s) is True
    assert check_valid(s, backend=backend).verdict is True
    assert check_valid(s, backend=backend).state_count == 0


BASE = "VARS 1,2,3,4\nLAW Top\nOBS Agenta:1\n    Agentb:2\n    Agentc:1,3\n    Agentd:4\nVALID? "

# Expected verdicts produced by check_valid_explicit, then frozen.
CARD_REGRESSIONS = [
    ("[!(1|2|3|4)] Agentc knows whether 2", False),
    ("[!(1|2|3|4)] [!~1] [!~3] [!~4] Agentc knows whether 2", True),
    ("[!(1|2|3|4)] [!~1] [!~3] Agentc knows whether 2", False),
    ("[!(1|2|3|4)] [!~(Agentb knows whether 2)] Agentc knows whether 2", True),
]


@pytest.mark.parametrize("query, expected", CARD_REGRESSIONS)
def test_card_scene_regressions(query, expected, backend):
    s = parse_scene(BASE + query)
    assert check_valid_explicit(s) is expected
    assert check_valid(s, backend=backend).verdict is expected


def test_epistemic_announcement():
    # b sees 1, so announcing "b does not know 1" reveals that 1 is false
    s = parse_scene("VARS 1,2 LAW Top OBS a:2 b:1 VALID? [!~(b knows that 1)] a knows that ~1")
    assert check_valid_explicit(s) is check_valid(s).verdict is True
    s2 = s.with_query(Announce(Neg(KnowsWhether("a", P(1))), KnowsThat("b", P(1))))
    assert check_valid_explicit(s2) is check_valid(s2).verdict is False


def test_vocabulary_guard():
    vocab = tuple(range(1, 22))
    s = Scene(vocab, TOP, {"a": set()}, TOP)
    with pytest.raises(VocabularyTooLarge):
        check_valid_explicit(s)
    assert check_valid(s).verdict is True


def test_run_query_errors():
    with pytest.raises(ParseError):
        run_query("VARS 1 LAW")
    with pytest.raises(UndeclaredAgent):
        run_query("VARS 1 LAW Top OBS a:1 VALID? zed knows that 1")
    assert run_query(BASE + CARD_REGRESSIONS[1][0]).verdict is True


def test_announcements_only_strengthen():
    s = random_scene(random.Random(5))
    ks = KnowledgeState.initial(s)
    m = ks.manager
    psi = translate(ks, random_formula(random.Random(6), list(s.vocabulary), s.agents, depth=3))
    after = ks.announce(psi)
    assert m.impl(after.current_law, ks.current_law) == m.true


seeds = st.integers(0, 2**32)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_oracle_equivalence(seed):
    s = random_scene(random.Random(seed))
    assert check_valid(s).verdict == check_valid_explicit(s)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_announce_top_identity(seed):
    s = random_scene(random.Random(seed))
    assert check_valid(s).verdict == check_valid(s.with_query(Announce(TOP, s.query))).verdict


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_knowledge_of_validity(seed):
    s = random_scene(random.Random(seed))
    if check_valid(s).verdict:
        for a in s.agents:
            assert check_valid(s.with_query(KnowsThat(a, s.query))).verdict


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_knows_whether_symmetry(seed):
    rng = random.Random(seed)
    s = random_scene(rng)
    a = rng.choice(s.agents)
    g = random_formula(rng, list(s.vocabulary), s.agents, depth=3)
    v1 = check_valid(s.with_query(KnowsWhether(a, g))).verdict
    v2 = check_valid(s.with_query(KnowsWhether(a, Neg(g)))).verdict
    assert v1 == v2


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_knowledge_distributes_over_conjunction(seed):
    rng = random.Random(seed)
    s = random_scene(rng)
    a = rng.choice(s.agents)
    f = random_formula(rng, list(s.vocabulary), s.agents, depth=3)
    g = random_formula(rng, list(s.vocabulary), s.agents, depth=3)
    q = Equiv(KnowsThat(a, Conj((f, g))), Conj((KnowsThat(a, f), KnowsThat(a, g))))
    assert check_valid(s.with_query(q)).verdict


def test_backends_agree_on_random_scenes():
    from epicheck.bdd import KERNELS

    rng = random.Random(42)
    for _ in range(200):
        s = random_scene(rng)
        verdicts = {be: check_valid(s, backend=be).verdict for be in KERNELS}
        assert len(set(verdicts.values())) == 1


def muddy(n, rounds):
    vocab = tuple(range(1, n + 1))
    knows = [KnowsWhether(f"c{i}", P(i)) for i in vocab]
    query = Conj(tuple(knows))
    for _ in range(rounds):
        query = Announce(Conj(tuple(Neg(k) for k in knows)), query)
    query = Announce(Disj(tuple(P(i) for i in vocab)), query)
    return Scene(vocab, TOP, {f"c{i}": set(vocab) - {i} for i in vocab}, query)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_muddy_children(n, backend):
    # everyone knows after n-1 silent rounds, not before
    for rounds, expected in ((n - 1, True), (n - 2, False)):
        s = muddy(n, rounds)
        assert check_valid_explicit(s) is expected
        assert check_valid(s, backend=backend).verdict is expected
