"""Seeded random formulas and scenes, and the symbolic-vs-explicit cross-check."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List, Sequence

from .checker import check_valid, check_valid_explicit
from .formula import (
    BOT,
    TOP,
    Announce,
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
    validate_scene,
)

AGENT_NAMES = ("a", "b", "c", "d", "e", "f", "g", "h")


def random_formula(
    rng: random.Random,
    props: Sequence[int],
    agents: Sequence[str] = (),
    depth: int = 4,
    announcements: int = 2,
) -> Formula:
    """Random formula of height <= ``depth``.

    Modal nodes appear only when ``agents`` is nonempty; at most
    ``announcements`` announcements are nested along any branch.
    """
    if depth <= 0 or rng.random() < 0.15:
        r = rng.random()
        if r < 0.1:
            return TOP
        if r < 0.2:
            return BOT
        return Prop(rng.choice(props))

    kinds = ["neg", "conj", "disj", "impl", "equiv"]
    if agents:
        kinds += ["kt", "kt", "kw", "kw"]
        if announcements > 0:
            kinds += ["ann", "ann"]
    kind = rng.choice(kinds)
    d = depth - 1

    def sub(ann=announcements):
        return random_formula(rng, props, agents, d, ann)

    if kind == "neg":
        return Neg(sub())
    if kind in ("conj", "disj"):
        args = tuple(sub() for _ in range(rng.randint(2, 3)))
        return Conj(args) if kind == "conj" else Disj(args)
    if kind == "impl":
        return Impl(sub(), sub())
    if kind == "equiv":
        return Equiv(sub(), sub())
    if kind == "kt":
        return KnowsThat(rng.choice(agents), sub())
    if kind == "kw":
        return KnowsWhether(rng.choice(agents), sub())
    return Announce(sub(announcements - 1), sub(announcements - 1))


def random_formula_of_size(rng: random.Random, props: Sequence[int], agents: Sequence[str], size: int) -> Formula:
    """Random formula with exactly ``size`` AST nodes (``size >= 1``)."""
    if size == 1:
        r = rng.random()
        return TOP if r < 0.1 else BOT if r < 0.2 else Prop(rng.choice(props))
    rest = size - 1
    unary = ["neg"] + (["kt", "kw"] if agents else [])
    binary = ["conj", "disj", "impl", "equiv"] + (["ann"] if agents else [])
    kind = rng.choice(unary + binary) if rest >= 2 else rng.choice(unary)
    if kind in unary:
        g = random_formula_of_size(rng, props, agents, rest)
        if kind == "neg":
            return Neg(g)
        return (KnowsThat if kind == "kt" else KnowsWhether)(rng.choice(agents), g)
    if kind in ("conj", "disj") and rest >= 3 and rng.random() < 0.4:
        cut = sorted(rng.sample(range(1, rest), 2))
        sizes = [cut[0], cut[1] - cut[0], rest - cut[1]]
    else:
        k = rng.randint(1, rest - 1)
        sizes = [k, rest - k]
    args = [random_formula_of_size(rng, props, agents, n) for n in sizes]
    if kind == "conj":
        return Conj(tuple(args))
    if kind == "disj":
        return Disj(tuple(args))
    if kind == "impl":
        return Impl(*args)
    if kind == "equiv":
        return Equiv(*args)
    return Announce(*args)


def random_scene(
    rng: random.Random,
    max_props: int = 6,
    max_agents: int = 4,
    max_depth: int = 5,
    max_announcements: int = 2,
) -> Scene:
    n = rng.randint(1, max_props)
    vocab = rng.sample(range(1, max_props + 4), n)
    if rng.random() < 0.5:
        vocab.sort()
    if rng.random() < 0.4:
        law = TOP
    else:
        law = random_formula(rng, vocab, (), depth=2)
    k = rng.randint(1, max_agents)
    obs = []
    for name in AGENT_NAMES[:k]:
        seen = [p for p in vocab if rng.random() < 0.5]
        obs.append((name, frozenset(seen)))
    agents = [a for a, _ in obs]
    query = random_formula(rng, vocab, agents, depth=rng.randint(1, max_depth), announcements=max_announcements)
    return validate_scene(Scene(tuple(vocab), law, tuple(obs), query))


@dataclass
class CrossCheck:
    count: int
    mismatches: List[Scene] = field(default_factory=list)

    @property
    def agreed(self) -> int:
        return self.count - len(self.mismatches)


def cross_check(
    count: int,
    seed: int,
    max_props: int = 6,
    max_agents: int = 4,
    max_depth: int = 5,
    symbolic: Callable[[Scene], bool] = lambda s: check_valid(s).verdict,
    explicit: Callable[[Scene], bool] = check_valid_explicit,
) -> CrossCheck:
    rng = random.Random(seed)
    result = CrossCheck(count)
    for _ in range(count):
        scene = random_scene(rng, max_props, max_agents, max_depth)
        if symbolic(scene) != explicit(scene):
            result.mismatches.append(scene)
    return result
