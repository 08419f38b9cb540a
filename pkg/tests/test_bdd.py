import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epicheck.bdd import KERNELS, Manager
from epicheck.checker import boolean_fn
from epicheck.errors import ManagerMismatch, PartialAssignment, UnknownVariable
from epicheck.formula import Bot, Conj, Disj, Equiv, Impl, Neg, Prop, Top
from epicheck.randgen import random_formula


def truth(f, a):
    """Independent evaluator for Boolean formulas (assignment: dict id -> bool)."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Prop):
        return a[f.id]
    if isinstance(f, Neg):
        return not truth(f.arg, a)
    if isinstance(f, Conj):
        return all(truth(g, a) for g in f.args)
    if isinstance(f, Disj):
        return any(truth(g, a) for g in f.args)
    if isinstance(f, Impl):
        return (not truth(f.left, a)) or truth(f.right, a)
    if isinstance(f, Equiv):
        return truth(f.left, a) == truth(f.right, a)
    raise TypeError(f)


def rows(vocab):
    for bits in itertools.product((False, True), repeat=len(vocab)):
        yield dict(zip(vocab, bits))


def table(f, vocab):
    return tuple(truth(f, a) for a in rows(vocab))


def test_const_and_var(backend):
    m = Manager([1, 2, 3, 4], backend=backend)
    assert m.const(True) != m.const(False)
    assert m.eval(m.var(1), {1: True, 2: False, 3: False, 4: False})
    with pytest.raises(UnknownVariable):
        m.var(5)


def test_connectives(backend):
    m = Manager([1, 2, 3, 4], backend=backend)
    x = m.var(1)
    assert m.conj(x, m.neg(x)) == m.false
    d = m.disj_all(m.var(p) for p in (1, 2, 3, 4))
    assert m.eval(d, {p: False for p in (1, 2, 3, 4)}) is False
    assert m.is_tautology(m.disj(x, m.neg(x)))
    assert m.node_count(m.true) == 1
    assert m.node_count(x) == 3


def test_manager_mismatch(backend):
    a, b = Manager([1], backend=backend), Manager([1], backend=backend)
    with pytest.raises(ManagerMismatch):
        a.conj(a.var(1), b.var(1))


def test_partial_assignment(backend):
    m = Manager([1, 2], backend=backend)
    with pytest.raises(PartialAssignment):
        m.eval(m.var(1), {1: True})
    with pytest.raises(UnknownVariable):
        m.eval(m.var(1), {1: True, 2: True, 3: False})


def test_quantification_basics(backend):
    m = Manager([1, 2], backend=backend)
    f = m.conj(m.var(1), m.var(2))
    assert m.forall_set(set(), f) == f
    assert m.forall_set({1}, m.var(1)) == m.false
    assert m.exists_set({1}, m.var(1)) == m.true
    with pytest.raises(UnknownVariable):
        m.forall_set({9}, f)


seeds = st.integers(0, 2**32)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_equiv_self_is_true(seed):
    for be in KERNELS:
        m = Manager([1, 2, 3, 4, 5], backend=be)
        f = boolean_fn(m, random_formula(random.Random(seed), [1, 2, 3, 4, 5], depth=5))
        assert m.equiv(f, f) == m.true


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_eval_matches_truth_table(seed):
    vocab = [1, 2, 3, 4, 5]
    f = random_formula(random.Random(seed), vocab, depth=6)
    for be in KERNELS:
        m = Manager(vocab, backend=be)
        fn = boolean_fn(m, f)
        for a in rows(vocab):
            assert m.eval(fn, a) == truth(f, a)
        assert m.count_models(fn) == sum(table(f, vocab))


@settings(max_examples=150, deadline=None)
@given(seeds, st.sets(st.sampled_from([1, 2, 3, 4, 5]), min_size=3, max_size=3))
def test_quantification_matches_enumeration(seed, qvars):
    vocab = [1, 2, 3, 4, 5]
    f = random_formula(random.Random(seed), vocab, depth=6)
    for be in KERNELS:
        m = Manager(vocab, backend=be)
        fn = boolean_fn(m, f)
        fa, ex = m.forall_set(qvars, fn), m.exists_set(qvars, fn)
        qs = sorted(qvars)
        for a in rows(vocab):
            vals = [truth(f, {**a, **dict(zip(qs, bits))})
                    for bits in itertools.product((False, True), repeat=len(qs))]
            assert m.eval(fa, a) == all(vals)
            assert m.eval(ex, a) == any(vals)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_canonicity_and_identities(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    vocab = list(range(1, n + 1))
    f = random_formula(rng, vocab, depth=4)
    g = random_formula(rng, vocab, depth=4) if rng.random() < 0.7 else Neg(Neg(f))
    same = table(f, vocab) == table(g, vocab)
    for be in KERNELS:
        m = Manager(vocab, backend=be)
        bf, bg = boolean_fn(m, f), boolean_fn(m, g)
        assert (bf == bg) == same
        assert m.neg(m.conj(bf, bg)) == m.disj(m.neg(bf), m.neg(bg))
        s = set(rng.sample(vocab, rng.randint(0, n)))
        assert m.forall_set(s, bf) == m.neg(m.exists_set(s, m.neg(bf)))


def test_kernels_agree_node_for_node():
    if len(KERNELS) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(3)
    vocab = list(range(1, 11))
    fs = [random_formula(rng, vocab, depth=7) for _ in range(30)]
    nodes = {}
    for be in KERNELS:
        m = Manager(vocab, backend=be)
        nodes[be] = ([boolean_fn(m, f).node for f in fs], m.total_nodes)
    assert nodes["python"] == nodes["cython"]


def test_reduced_and_ordered(backend):
    rng = random.Random(11)
    vocab = [2, 5, 9, 11]
    m = Manager(vocab, backend=backend)
    for _ in range(20):
        boolean_fn(m, random_formula(rng, vocab, depth=5))
    k = m.kernel
    seen = set()
    for u in range(2, k.size()):
        lo, hi = k.low(u), k.high(u)
        assert lo != hi
        assert k.level(u) < k.level(lo) and k.level(u) < k.level(hi)
        key = (k.level(u), lo, hi)
        assert key not in seen
        seen.add(key)


def test_dot_dump(backend):
    m = Manager([3, 7], backend=backend)
    text = m.to_dot(m.conj(m.var(3), m.var(7)))
    assert text.startswith("digraph bdd {")
    assert 'label="3"' in text and 'label="7"' in text
    assert '[label="0", style=dashed]' in text and '[label="1"]' in text
