"""Epistemic formulas, knowledge-structure scenes, benchmark records and verdicts."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Tuple

from .errors import EpistemicLaw, UndeclaredAgent, UndeclaredProposition

AGENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
KEYWORDS = frozenset(
    {"VARS", "LAW", "OBS", "Top", "Bot", "AND", "OR", "knows", "whether", "that"}
)

# Total map from proposition id to truth value over a scene's vocabulary.
Assignment = Mapping[int, bool]


class Formula:
    """Base class of the formula AST. Subclasses are frozen dataclasses."""

    __slots__ = ()

    def __invert__(self):
        return Neg(self)

    def __and__(self, other):
        return Conj((self, other))

    def __or__(self, other):
        return Disj((self, other))

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def walk(self) -> Iterator["Formula"]:
        """Pre-order traversal, iterative so deep trees are fine."""
        stack = [self]
        while stack:
            f = stack.pop()
            yield f
            stack.extend(reversed(f.children()))

    def __str__(self):
        from .parser import print_formula

        return print_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Prop(Formula):
    id: int

    def __post_init__(self):
        if isinstance(self.id, bool) or not isinstance(self.id, int) or self.id < 1:
            raise ValueError(f"proposition ids are positive integers, got {self.id!r}")


@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Conj(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("Conj needs at least two conjuncts")

    def children(self):
        return self.args


@dataclass(frozen=True)
class Disj(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("Disj needs at least two disjuncts")

    def children(self):
        return self.args


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Equiv(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


def _check_agent(name):
    if not isinstance(name, str) or not AGENT_RE.match(name) or name in KEYWORDS:
        raise ValueError(f"invalid agent name {name!r}")


@dataclass(frozen=True)
class KnowsThat(Formula):
    agent: str
    arg: Formula

    def __post_init__(self):
        _check_agent(self.agent)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class KnowsWhether(Formula):
    agent: str
    arg: Formula

    def __post_init__(self):
        _check_agent(self.agent)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Announce(Formula):
    """``[! announced] continuation``: after truthfully announcing, continuation holds."""

    announced: Formula
    continuation: Formula

    def children(self):
        return (self.announced, self.continuation)


MODAL_TYPES = (KnowsThat, KnowsWhether, Announce)


def free_props(f: Formula) -> frozenset:
    return frozenset(g.id for g in f.walk() if isinstance(g, Prop))


def agents_of(f: Formula) -> frozenset:
    return frozenset(g.agent for g in f.walk() if isinstance(g, (KnowsThat, KnowsWhether)))


def is_boolean(f: Formula) -> bool:
    return not any(isinstance(g, MODAL_TYPES) for g in f.walk())


def expand_knows_whether(f: Formula) -> Formula:
    """Rewrite every ``a knows whether g`` into ``a knows that g | a knows that ~g``."""
    if isinstance(f, (Top, Bot, Prop)):
        return f
    if isinstance(f, KnowsWhether):
        g = expand_knows_whether(f.arg)
        return Disj((KnowsThat(f.agent, g), KnowsThat(f.agent, Neg(g))))
    if isinstance(f, Neg):
        return Neg(expand_knows_whether(f.arg))
    if isinstance(f, (Conj, Disj)):
        return type(f)(tuple(expand_knows_whether(g) for g in f.args))
    if isinstance(f, (Impl, Equiv)):
        return type(f)(expand_knows_whether(f.left), expand_knows_whether(f.right))
    if isinstance(f, KnowsThat):
        return KnowsThat(f.agent, expand_knows_whether(f.arg))
    if isinstance(f, Announce):
        return Announce(expand_knows_whether(f.announced), expand_knows_whether(f.continuation))
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Scene:
    """A knowledge structure (vocabulary, state law, observations) plus a VALID? query.

    ``observations`` is a tuple of ``(agent, frozenset_of_props)`` pairs in
    declaration order; use :attr:`obs` for mapping-style access.
    """

    vocabulary: Tuple[int, ...]
    law: Formula
    observations: Tuple[Tuple[str, frozenset], ...]
    query: Formula

    def __post_init__(self):
        object.__setattr__(self, "vocabulary", tuple(self.vocabulary))
        if isinstance(self.observations, Mapping):
            pairs = self.observations.items()
        else:
            pairs = self.observations
        object.__setattr__(
            self, "observations", tuple((a, frozenset(ps)) for a, ps in pairs)
        )

    @property
    def obs(self) -> dict:
        return dict(self.observations)

    @property
    def agents(self) -> Tuple[str, ...]:
        return tuple(a for a, _ in self.observations)

    def with_query(self, query: Formula) -> "Scene":
        return Scene(self.vocabulary, self.law, self.observations, query)


def validate_scene(s: Scene) -> Scene:
    vocab = set(s.vocabulary)
    if not is_boolean(s.law):
        raise EpistemicLaw()
    mentioned = [free_props(s.law)] + [ps for _, ps in s.observations] + [free_props(s.query)]
    for props in mentioned:
        for p in sorted(props):
            if p not in vocab:
                raise UndeclaredProposition(p)
    declared = set(s.agents)
    for a in sorted(agents_of(s.query)):
        if a not in declared:
            raise UndeclaredAgent(a)
    return s


@dataclass(frozen=True)
class ProblemRecord:
    id: str
    premise: str
    hypothesis: str
    label: bool
    gold_formulation: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.label, bool):
            raise ValueError(f"label must be a bool, got {self.label!r}")
        if not self.premise or not self.hypothesis:
            raise ValueError(f"record {self.id!r}: premise and hypothesis must be nonempty")


class Verdict(enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    UNKNOWN = "UNKNOWN"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        return cls.TRUE if value else cls.FALSE

    def matches(self, label: bool) -> bool:
        return self is not Verdict.UNKNOWN and (self is Verdict.TRUE) == label

