# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled ROBDD kernel. Same node numbering and semantics as ``_pykernel``."""

from libc.stdint cimport uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref

cdef enum:
    MAX_NODES = 1 << 26
    MAX_VARS = 4096

cdef enum:
    AND_ = 0
    OR_ = 1
    XOR_ = 2
    IMP_ = 3
    EQV_ = 4
    NEG_ = 5
    EXISTS_ = 6
    FORALL_ = 7

AND, OR, XOR, IMP, EQV = AND_, OR_, XOR_, IMP_, EQV_


cdef inline uint64_t _key(uint64_t a, uint64_t b, uint64_t c):
    return (a << 52) | (b << 26) | c


cdef class Kernel:
    cdef readonly int nvars
    cdef vector[int] lvl
    cdef vector[int] lo
    cdef vector[int] hi
    cdef unordered_map[uint64_t, int] unique
    cdef unordered_map[uint64_t, int] cache

    backend = "cython"

    def __init__(self, int nvars):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        if nvars >= MAX_VARS:
            raise ValueError(f"at most {MAX_VARS - 1} variables supported")
        self.nvars = nvars
        for _ in range(2):
            self.lvl.push_back(nvars)
        self.lo.push_back(0)
        self.lo.push_back(1)
        self.hi.push_back(0)
        self.hi.push_back(1)

    def size(self):
        return self.lvl.size()

    cdef inline int _check(self, int u) except -1:
        if u < 0 or <size_t>u >= self.lvl.size():
            raise IndexError(u)
        return 0

    def level(self, int u):
        self._check(u)
        return self.lvl[u]

    def low(self, int u):
        self._check(u)
        return self.lo[u]

    def high(self, int u):
        self._check(u)
        return self.hi[u]

    cdef int _mk(self, int l, int a, int b) except -1:
        if a == b:
            return a
        cdef uint64_t k = _key(l, a, b)
        cdef unordered_map[uint64_t, int].iterator it = self.unique.find(k)
        if it != self.unique.end():
            return deref(it).second
        cdef int u = self.lvl.size()
        if u >= MAX_NODES:
            raise MemoryError("BDD node table full")
        self.lvl.push_back(l)
        self.lo.push_back(a)
        self.hi.push_back(b)
        self.unique[k] = u
        return u

    def mk(self, int l, int a, int b):
        return self._mk(l, a, b)

    def var(self, int l):
        if l < 0 or l >= self.nvars:
            raise IndexError(l)
        return self._mk(l, 0, 1)

    cdef int _neg(self, int u) except -1:
        if u < 2:
            return 1 - u
        cdef uint64_t k = _key(NEG_, u, 0)
        cdef unordered_map[uint64_t, int].iterator it = self.cache.find(k)
        if it != self.cache.end():
            return deref(it).second
        cdef int a = self._neg(self.lo[u])
        cdef int b = self._neg(self.hi[u])
        cdef int r = self._mk(self.lvl[u], a, b)
        self.cache[k] = r
        return r

    def neg(self, int u):
        self._check(u)
        return self._neg(u)

    cdef int _apply(self, int op, int u, int v) except -1:
        cdef int t
        if op == AND_:
            if u == 0 or v == 0:
                return 0
            if u == 1 or u == v:
                return v
            if v == 1:
                return u
        elif op == OR_:
            if u == 1 or v == 1:
                return 1
            if u == 0 or u == v:
                return v
            if v == 0:
                return u
        elif op == XOR_:
            if u == v:
                return 0
            if u == 0:
                return v
            if v == 0:
                return u
            if u == 1:
                return self._neg(v)
            if v == 1:
                return self._neg(u)
        elif op == IMP_:
            if u == 0 or v == 1 or u == v:
                return 1
            if u == 1:
                return v
            if v == 0:
                return self._neg(u)
        elif op == EQV_:
            if u == v:
                return 1
            if u == 1:
                return v
            if v == 1:
                return u
            if u == 0:
                return self._neg(v)
            if v == 0:
                return self._neg(u)
        else:
            raise ValueError(f"unknown op {op}")
        if op != IMP_ and u > v:
            t = u
            u = v
            v = t
        cdef uint64_t k = _key(op, u, v)
        cdef unordered_map[uint64_t, int].iterator it = self.cache.find(k)
        if it != self.cache.end():
            return deref(it).second
        cdef int lu = self.lvl[u]
        cdef int lv = self.lvl[v]
        cdef int top, u0, u1, v0, v1
        if lu == lv:
            top = lu
            u0 = self.lo[u]; u1 = self.hi[u]; v0 = self.lo[v]; v1 = self.hi[v]
        elif lu < lv:
            top = lu
            u0 = self.lo[u]; u1 = self.hi[u]; v0 = v; v1 = v
        else:
            top = lv
            u0 = u; u1 = u; v0 = self.lo[v]; v1 = self.hi[v]
        cdef int a = self._apply(op, u0, v0)
        cdef int b = self._apply(op, u1, v1)
        cdef int r = self._mk(top, a, b)
        self.cache[k] = r
        return r

    def apply(self, int op, int u, int v):
        self._check(u)
        self._check(v)
        return self._apply(op, u, v)

    def cube(self, levels):
        cdef int c = 1
        for l in sorted(set(levels), reverse=True):
            if not 0 <= l < self.nvars:
                raise IndexError(l)
            c = self._mk(l, 0, c)
        return c

    cdef int _quant(self, int op, int u, int c) except -1:
        if u < 2 or c == 1:
            return u
        cdef int lu = self.lvl[u]
        cdef int lc = self.lvl[c]
        while lc < lu:
            c = self.hi[c]
            if c == 1:
                return u
            lc = self.lvl[c]
        cdef uint64_t k = _key(op, u, c)
        cdef unordered_map[uint64_t, int].iterator it = self.cache.find(k)
        if it != self.cache.end():
            return deref(it).second
        cdef int r, a, b
        if lc == lu:
            a = self._quant(op, self.lo[u], self.hi[c])
            b = self._quant(op, self.hi[u], self.hi[c])
            r = self._apply(OR_ if op == EXISTS_ else AND_, a, b)
        else:
            a = self._quant(op, self.lo[u], c)
            b = self._quant(op, self.hi[u], c)
            r = self._mk(lu, a, b)
        self.cache[k] = r
        return r

    def exists(self, int u, levels):
        self._check(u)
        return self._quant(EXISTS_, u, self.cube(levels))

    def forall(self, int u, levels):
        self._check(u)
        return self._quant(FORALL_, u, self.cube(levels))

    def evaluate(self, int u, values):
        self._check(u)
        while u > 1:
            u = self.hi[u] if values[self.lvl[u]] else self.lo[u]
        return u == 1

    def count_nodes(self, int u):
        cdef vector[int] stack
        cdef vector[char] seen
        cdef int w, ch, n = 1
        cdef int j
        self._check(u)
        seen.resize(self.lvl.size(), 0)
        seen[u] = 1
        stack.push_back(u)
        while stack.size():
            w = stack.back()
            stack.pop_back()
            if w > 1:
                for j in range(2):
                    ch = self.lo[w] if j == 0 else self.hi[w]
                    if not seen[ch]:
                        seen[ch] = 1
                        n += 1
                        stack.push_back(ch)
        return n

    def satcount(self, int u):
        self._check(u)
        memo = {0: 0, 1: 1}

        def go(int w):
            r = memo.get(w)
            if r is None:
                lw = self.lvl[w]
                a = self.lo[w]
                b = self.hi[w]
                r = (go(a) << (self.lvl[a] - lw - 1)) + (go(b) << (self.lvl[b] - lw - 1))
                memo[w] = r
            return r

        return go(u) << self.lvl[u]
