"""Reduced ordered BDDs over a fixed proposition vocabulary.

Two interchangeable kernels implement the node table and the apply /
quantification recursions: the compiled ``_kernel`` (Cython, C++ hash maps)
and the pure-Python ``_pykernel``. The compiled one is used when it imports,
unless ``EPICHECK_BACKEND=python`` is set.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping

from ..errors import ManagerMismatch, PartialAssignment, UnknownVariable
from . import _pykernel

try:
    from . import _kernel as _ckernel
except ImportError:  # extension not built
    _ckernel = None

KERNELS = {"python": _pykernel.Kernel}
if _ckernel is not None:
    KERNELS["cython"] = _ckernel.Kernel


def _default_backend() -> str:
    want = os.environ.get("EPICHECK_BACKEND", "auto")
    if want == "auto":
        return "cython" if "cython" in KERNELS else "python"
    if want not in KERNELS:
        raise RuntimeError(f"EPICHECK_BACKEND={want!r} is not available (have {sorted(KERNELS)})")
    return want


BACKEND = _default_backend()

AND, OR, XOR, IMP, EQV = 0, 1, 2, 3, 4


class BoolFn:
    """A node reference inside one :class:`Manager`. Equal refs denote equal functions."""

    __slots__ = ("manager", "node")

    def __init__(self, manager: "Manager", node: int):
        self.manager = manager
        self.node = node

    def __eq__(self, other):
        if not isinstance(other, BoolFn):
            return NotImplemented
        return self.manager is other.manager and self.node == other.node

    def __hash__(self):
        return hash((id(self.manager), self.node))

    def __repr__(self):
        if self.node < 2:
            return f"BoolFn({bool(self.node)})"
        return f"BoolFn(node={self.node})"

    def __invert__(self):
        return self.manager.neg(self)

    def __and__(self, other):
        return self.manager.conj(self, other)

    def __or__(self, other):
        return self.manager.disj(self, other)

    def __rshift__(self, other):
        return self.manager.impl(self, other)


class Manager:
    """Owns the unique table and operation cache. Single-owner; do not share across threads."""

    def __init__(self, vocabulary: Iterable[int], backend: str | None = None):
        self.vocabulary = tuple(sorted(set(vocabulary)))
        self._level = {p: i for i, p in enumerate(self.vocabulary)}
        self.backend = backend or BACKEND
        self.kernel = KERNELS[self.backend](len(self.vocabulary))
        self.true = BoolFn(self, 1)
        self.false = BoolFn(self, 0)

    def _wrap(self, node: int) -> BoolFn:
        return BoolFn(self, node)

    def _own(self, f: BoolFn) -> int:
        if f.manager is not self:
            raise ManagerMismatch()
        return f.node

    def _levels(self, props) -> list:
        try:
            return [self._level[p] for p in props]
        except KeyError as e:
            raise UnknownVariable(e.args[0]) from None

    @property
    def total_nodes(self) -> int:
        return self.kernel.size()

    def const(self, b: bool) -> BoolFn:
        return self.true if b else self.false

    def var(self, p: int) -> BoolFn:
        (lvl,) = self._levels([p])
        return self._wrap(self.kernel.var(lvl))

    def neg(self, f: BoolFn) -> BoolFn:
        return self._wrap(self.kernel.neg(self._own(f)))

    def _apply(self, op, f, g):
        return self._wrap(self.kernel.apply(op, self._own(f), self._own(g)))

    def conj(self, f: BoolFn, g: BoolFn) -> BoolFn:
        return self._apply(AND, f, g)

    def disj(self, f: BoolFn, g: BoolFn) -> BoolFn:
        return self._apply(OR, f, g)

    def xor(self, f: BoolFn, g: BoolFn) -> BoolFn:
        return self._apply(XOR, f, g)

    def impl(self, f: BoolFn, g: BoolFn) -> BoolFn:
        return self._apply(IMP, f, g)

    def equiv(self, f: BoolFn, g: BoolFn) -> BoolFn:
        return self._apply(EQV, f, g)

    def conj_all(self, fs: Iterable[BoolFn]) -> BoolFn:
        r = self.true
        for f in fs:
            r = self.conj(r, f)
        return r

    def disj_all(self, fs: Iterable[BoolFn]) -> BoolFn:
        r = self.false
        for f in fs:
            r = self.disj(r, f)
        return r

    def forall_set(self, props: Iterable[int], f: BoolFn) -> BoolFn:
        levels = self._levels(props)
        return self._wrap(self.kernel.forall(self._own(f), levels))

    def exists_set(self, props: Iterable[int], f: BoolFn) -> BoolFn:
        levels = self._levels(props)
        return self._wrap(self.kernel.exists(self._own(f), levels))

    def eval(self, f: BoolFn, assignment: Mapping[int, bool]) -> bool:
        missing = set(self.vocabulary) - set(assignment)
        if missing:
            raise PartialAssignment(missing)
        extra = set(assignment) - set(self.vocabulary)
        if extra:
            raise UnknownVariable(min(extra))
        values = [bool(assignment[p]) for p in self.vocabulary]
        return self.kernel.evaluate(self._own(f), values)

    def is_tautology(self, f: BoolFn) -> bool:
        return self._own(f) == 1

    def node_count(self, f: BoolFn) -> int:
        return self.kernel.count_nodes(self._own(f))

    def count_models(self, f: BoolFn) -> int:
        """Satisfying assignments over the whole vocabulary (used for state counts)."""
        return self.kernel.satcount(self._own(f))

    def to_dot(self, f: BoolFn, name: str = "bdd") -> str:
        """DOT text: internal nodes labelled by proposition id, edges labelled 0/1."""
        k = self.kernel
        root = self._own(f)
        lines = [f"digraph {name} {{"]
        seen = {root}
        stack = [root]
        order = []
        while stack:
            u = stack.pop()
            order.append(u)
            if u > 1:
                for c in (k.low(u), k.high(u)):
                    if c not in seen:
                        seen.add(c)
                        stack.append(c)
        for u in sorted(order):
            if u < 2:
                lines.append(f'  n{u} [shape=box, label="{u}"];')
            else:
                lines.append(f'  n{u} [label="{self.vocabulary[k.level(u)]}"];')
        for u in sorted(order):
            if u > 1:
                lines.append(f'  n{u} -> n{k.low(u)} [label="0", style=dashed];')
                lines.append(f'  n{u} -> n{k.high(u)} [label="1"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
