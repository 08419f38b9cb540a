"""Pure-Python ROBDD kernel. Mirrors ``_kernel.pyx`` exactly.

Nodes are ints: 0 is FALSE, 1 is TRUE, internal nodes index three parallel
lists (level, low, high). Terminals sit at level ``nvars``.
"""

AND, OR, XOR, IMP, EQV = 0, 1, 2, 3, 4
_NEG, _EXISTS, _FORALL = 5, 6, 7


class Kernel:
    backend = "python"

    def __init__(self, nvars):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        self._level = [nvars, nvars]
        self._low = [0, 1]
        self._high = [0, 1]
        self._unique = {}
        self._cache = {}

    def size(self):
        return len(self._level)

    def level(self, u):
        return self._level[u]

    def low(self, u):
        return self._low[u]

    def high(self, u):
        return self._high[u]

    def mk(self, lvl, lo, hi):
        if lo == hi:
            return lo
        key = (lvl, lo, hi)
        u = self._unique.get(key)
        if u is None:
            u = len(self._level)
            self._level.append(lvl)
            self._low.append(lo)
            self._high.append(hi)
            self._unique[key] = u
        return u

    def var(self, lvl):
        if not 0 <= lvl < self.nvars:
            raise IndexError(lvl)
        return self.mk(lvl, 0, 1)

    def neg(self, u):
        if u < 2:
            return 1 - u
        key = (_NEG, u, 0)
        r = self._cache.get(key)
        if r is None:
            r = self.mk(self._level[u], self.neg(self._low[u]), self.neg(self._high[u]))
            self._cache[key] = r
        return r

    def apply(self, op, u, v):
        # terminal cases
        if op == AND:
            if u == 0 or v == 0:
                return 0
            if u == 1 or u == v:
                return v
            if v == 1:
                return u
        elif op == OR:
            if u == 1 or v == 1:
                return 1
            if u == 0 or u == v:
                return v
            if v == 0:
                return u
        elif op == XOR:
            if u == v:
                return 0
            if u == 0:
                return v
            if v == 0:
                return u
            if u == 1:
                return self.neg(v)
            if v == 1:
                return self.neg(u)
        elif op == IMP:
            if u == 0 or v == 1 or u == v:
                return 1
            if u == 1:
                return v
            if v == 0:
                return self.neg(u)
        elif op == EQV:
            if u == v:
                return 1
            if u == 1:
                return v
            if v == 1:
                return u
            if u == 0:
                return self.neg(v)
            if v == 0:
                return self.neg(u)
        else:
            raise ValueError(f"unknown op {op}")
        if op != IMP and u > v:
            u, v = v, u
        key = (op, u, v)
        r = self._cache.get(key)
        if r is not None:
            return r
        lu, lv = self._level[u], self._level[v]
        if lu == lv:
            top = lu
            u0, u1, v0, v1 = self._low[u], self._high[u], self._low[v], self._high[v]
        elif lu < lv:
            top = lu
            u0, u1, v0, v1 = self._low[u], self._high[u], v, v
        else:
            top = lv
            u0, u1, v0, v1 = u, u, self._low[v], self._high[v]
        r = self.mk(top, self.apply(op, u0, v0), self.apply(op, u1, v1))
        self._cache[key] = r
        return r

    def cube(self, levels):
        c = 1
        for lvl in sorted(set(levels), reverse=True):
            if not 0 <= lvl < self.nvars:
                raise IndexError(lvl)
            c = self.mk(lvl, 0, c)
        return c

    def _quant(self, op, u, c):
        if u < 2 or c == 1:
            return u
        lu, lc = self._level[u], self._level[c]
        while lc < lu:
            c = self._high[c]
            if c == 1:
                return u
            lc = self._level[c]
        key = (op, u, c)
        r = self._cache.get(key)
        if r is not None:
            return r
        if lc == lu:
            nc = self._high[c]
            r0 = self._quant(op, self._low[u], nc)
            r1 = self._quant(op, self._high[u], nc)
            r = self.apply(OR if op == _EXISTS else AND, r0, r1)
        else:
            r = self.mk(lu, self._quant(op, self._low[u], c), self._quant(op, self._high[u], c))
        self._cache[key] = r
        return r

    def exists(self, u, levels):
        return self._quant(_EXISTS, u, self.cube(levels))

    def forall(self, u, levels):
        return self._quant(_FORALL, u, self.cube(levels))

    def evaluate(self, u, values):
        while u > 1:
            u = self._high[u] if values[self._level[u]] else self._low[u]
        return u == 1

    def count_nodes(self, u):
        seen = {u}
        stack = [u]
        while stack:
            w = stack.pop()
            if w > 1:
                for c in (self._low[w], self._high[w]):
                    if c not in seen:
                        seen.add(c)
                        stack.append(c)
        return len(seen)

    def satcount(self, u):
        """Number of satisfying assignments over all ``nvars`` variables."""
        memo = {0: 0, 1: 1}

        def go(w):
            r = memo.get(w)
            if r is None:
                lw = self._level[w]
                lo, hi = self._low[w], self._high[w]
                r = (go(lo) << (self._level[lo] - lw - 1)) + (go(hi) << (self._level[hi] - lw - 1))
                memo[w] = r
            return r

        return go(u) << self._level[u]
