"""Deciding VALID? queries on knowledge structures.

The symbolic path translates each formula to its local-truth function, a BDD
over the vocabulary. ``check_valid_explicit`` is an independent brute-force
evaluator over the law-satisfying states and serves as the oracle.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .bdd import BoolFn, Manager
from .errors import VocabularyTooLarge
from .formula import (
    Announce,
    Bot,
    Conj,
    Disj,
    Equiv,
    Formula,
    Impl,
    KnowsThat,
    KnowsWhether,
    Neg,
    Prop,
    Scene,
    Top,
    validate_scene,
)
from .parser import parse_scene

EXPLICIT_LIMIT = 20


@dataclass(frozen=True)
class KnowledgeState:
    scene: Scene
    manager: Manager
    current_law: BoolFn

    @classmethod
    def initial(cls, scene: Scene, backend: str | None = None) -> "KnowledgeState":
        mgr = Manager(scene.vocabulary, backend=backend)
        return cls(scene, mgr, boolean_fn(mgr, scene.law))

    def announce(self, announced: BoolFn) -> "KnowledgeState":
        return KnowledgeState(self.scene, self.manager, self.manager.conj(self.current_law, announced))


@dataclass(frozen=True)
class QueryResult:
    verdict: bool
    state_count: int
    peak_node_count: int
    elapsed: float


def boolean_fn(mgr: Manager, f: Formula) -> BoolFn:
    """BDD of a modality-free formula."""
    if isinstance(f, Top):
        return mgr.true
    if isinstance(f, Bot):
        return mgr.false
    if isinstance(f, Prop):
        return mgr.var(f.id)
    if isinstance(f, Neg):
        return mgr.neg(boolean_fn(mgr, f.arg))
    if isinstance(f, Conj):
        return mgr.conj_all(boolean_fn(mgr, g) for g in f.args)
    if isinstance(f, Disj):
        return mgr.disj_all(boolean_fn(mgr, g) for g in f.args)
    if isinstance(f, Impl):
        return mgr.impl(boolean_fn(mgr, f.left), boolean_fn(mgr, f.right))
    if isinstance(f, Equiv):
        return mgr.equiv(boolean_fn(mgr, f.left), boolean_fn(mgr, f.right))
    raise TypeError(f"not a Boolean formula: {f!r}")


def _knows(ks: KnowledgeState, agent: str, g: BoolFn) -> BoolFn:
    mgr = ks.manager
    hidden = set(ks.scene.vocabulary) - ks.scene.obs[agent]
    return mgr.forall_set(hidden, mgr.impl(ks.current_law, g))


def translate(ks: KnowledgeState, f: Formula) -> BoolFn:
    mgr = ks.manager
    if isinstance(f, Top):
        return mgr.true
    if isinstance(f, Bot):
        return mgr.false
    if isinstance(f, Prop):
        return mgr.var(f.id)
    if isinstance(f, Neg):
        return mgr.neg(translate(ks, f.arg))
    if isinstance(f, Conj):
        return mgr.conj_all(translate(ks, g) for g in f.args)
    if isinstance(f, Disj):
        return mgr.disj_all(translate(ks, g) for g in f.args)
    if isinstance(f, Impl):
        return mgr.impl(translate(ks, f.left), translate(ks, f.right))
    if isinstance(f, Equiv):
        return mgr.equiv(translate(ks, f.left), translate(ks, f.right))
    if isinstance(f, KnowsThat):
        return _knows(ks, f.agent, translate(ks, f.arg))
    if isinstance(f, KnowsWhether):
        g = translate(ks, f.arg)
        return mgr.disj(_knows(ks, f.agent, g), _knows(ks, f.agent, mgr.neg(g)))
    if isinstance(f, Announce):
        psi = translate(ks, f.announced)
        return mgr.impl(psi, translate(ks.announce(psi), f.continuation))
    raise TypeError(f"not a formula: {f!r}")


def check_valid(scene: Scene, backend: str | None = None) -> QueryResult:
    start = time.perf_counter()
    ks = KnowledgeState.initial(scene, backend=backend)
    mgr = ks.manager
    q = translate(ks, scene.query)
    verdict = mgr.is_tautology(mgr.impl(ks.current_law, q))
    return QueryResult(
        verdict=verdict,
        state_count=mgr.count_models(ks.current_law),
        peak_node_count=mgr.total_nodes,
        elapsed=time.perf_counter() - start,
    )


# ------------------------------------------------------------ explicit oracle


def _holds_bool(f: Formula, state: frozenset) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Prop):
        return f.id in state
    if isinstance(f, Neg):
        return not _holds_bool(f.arg, state)
    if isinstance(f, Conj):
        return all(_holds_bool(g, state) for g in f.args)
    if isinstance(f, Disj):
        return any(_holds_bool(g, state) for g in f.args)
    if isinstance(f, Impl):
        return not _holds_bool(f.left, state) or _holds_bool(f.right, state)
    if isinstance(f, Equiv):
        return _holds_bool(f.left, state) == _holds_bool(f.right, state)
    raise TypeError(f"not a Boolean formula: {f!r}")


class _ExplicitModel:
    """Kripke-style evaluation over explicit states (frozensets of true propositions)."""

    def __init__(self, scene: Scene):
        self.obs = scene.obs
        self.memo = {}
        self.restricted = {}
        # keep formulas/models referenced by id() alive for the memo's lifetime
        self._pins = []

    def holds(self, f: Formula, s: frozenset, model: frozenset) -> bool:
        key = (id(f), s, id(model))
        r = self.memo.get(key)
        if r is None:
            self._pins.append((f, model))
            r = self._holds(f, s, model)
            self.memo[key] = r
        return r

    def _holds(self, f, s, model) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Prop):
            return f.id in s
        if isinstance(f, Neg):
            return not self.holds(f.arg, s, model)
        if isinstance(f, Conj):
            return all(self.holds(g, s, model) for g in f.args)
        if isinstance(f, Disj):
            return any(self.holds(g, s, model) for g in f.args)
        if isinstance(f, Impl):
            return not self.holds(f.left, s, model) or self.holds(f.right, s, model)
        if isinstance(f, Equiv):
            return self.holds(f.left, s, model) == self.holds(f.right, s, model)
        if isinstance(f, (KnowsThat, KnowsWhether)):
            seen = self.obs[f.agent]
            view = s & seen
            values = {self.holds(f.arg, t, model) for t in model if t & seen == view}
            if isinstance(f, KnowsThat):
                return False not in values
            return len(values) <= 1
        if isinstance(f, Announce):
            if not self.holds(f.announced, s, model):
                return True
            return self.holds(f.continuation, s, self.restrict(model, f.announced))
        raise TypeError(f"not a formula: {f!r}")

    def restrict(self, model: frozenset, psi: Formula) -> frozenset:
        key = (id(model), id(psi))
        r = self.restricted.get(key)
        if r is None:
            r = frozenset(t for t in model if self.holds(psi, t, model))
            self.restricted[key] = r
            self._pins.append((psi, model, r))
        return r


def law_states(scene: Scene) -> frozenset:
    vocab = scene.vocabulary
    states = []
    for bits in itertools.product((False, True), repeat=len(vocab)):
        s = frozenset(p for p, b in zip(vocab, bits) if b)
        if _holds_bool(scene.law, s):
            states.append(s)
    return frozenset(states)


def check_valid_explicit(scene: Scene, limit: int = EXPLICIT_LIMIT) -> bool:
    if len(scene.vocabulary) > limit:
        raise VocabularyTooLarge(len(scene.vocabulary), limit)
    model = law_states(scene)
    ev = _ExplicitModel(scene)
    return all(ev.holds(scene.query, s, model) for s in model)


def run_query(text: str, backend: str | None = None) -> QueryResult:
    return check_valid(validate_scene(parse_scene(text)), backend=backend)
