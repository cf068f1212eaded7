# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled CDCL kernel.

Mirrors ``_pykernel.Kernel`` operation for operation (same watch order, same
float arithmetic, same tie-breaks), so runs are identical on both backends.
See ``_pykernel`` for the literal-code conventions.
"""

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort as cpp_sort

cdef int NO_REASON = -1
cdef int MIN_DEPTH_LIMIT = 1000
cdef double RESCALE_LIMIT = 1e100
cdef double RESCALE_FACTOR = 1e-100
cdef double CLAUSE_RESCALE_LIMIT = 1e20
cdef double CLAUSE_RESCALE_FACTOR = 1e-20

cdef char REDUNDANT = 1
cdef char FAILED = 2

cdef int MODE_NEGATIVE = 0
cdef int MODE_SAVING = 1
cdef int MODE_ACTIVITY = 2


cdef class Kernel:
    cdef public str backend
    cdef readonly int num_vars
    cdef int mode
    cdef vector[signed char] lval
    cdef vector[char] assigned
    cdef vector[int] level
    cdef vector[int] reason
    cdef vector[int] trail
    cdef vector[int] trail_lim
    cdef int qhead
    cdef vector[vector[int]] clauses
    cdef vector[char] deleted
    cdef vector[char] learnt_flag
    cdef vector[double] cla_act
    cdef vector[int] learnts
    cdef vector[vector[int]] watchlists
    cdef double cla_inc
    cdef double clause_decay
    cdef vector[char] seen
    cdef vector[char] memo
    cdef public long long propagations
    # heuristics
    cdef vector[double] score
    cdef double bump_amt
    cdef double var_decay
    cdef vector[long long] pos_count
    cdef vector[long long] neg_count
    cdef vector[char] saved
    cdef vector[char] has_saved
    cdef vector[int] heap
    cdef vector[int] hpos

    def __init__(self, int num_vars, mode=1, double var_decay=0.95,
                 double clause_decay=0.999, init_scores=None):
        cdef int n = num_vars
        cdef int v
        if not 0.0 < var_decay < 1.0:
            raise ValueError(f"decay must lie in (0, 1), got {var_decay}")
        self.backend = "cython"
        self.num_vars = n
        self.mode = mode if isinstance(mode, int) else ["negative", "saving", "activity"].index(mode.value)
        self.lval.assign(2 * n + 2, 0)
        self.assigned.assign(n + 1, 0)
        self.level.assign(n + 1, 0)
        self.reason.assign(n + 1, NO_REASON)
        self.qhead = 0
        self.watchlists.resize(2 * n + 2)
        self.cla_inc = 1.0
        self.clause_decay = clause_decay
        self.seen.assign(n + 1, 0)
        self.memo.assign(n + 1, 0)
        self.propagations = 0
        self.score.assign(n + 1, 0.0)
        self.bump_amt = 1.0
        self.var_decay = var_decay
        self.pos_count.assign(n + 1, 0)
        self.neg_count.assign(n + 1, 0)
        self.saved.assign(n + 1, 0)
        self.has_saved.assign(n + 1, 0)
        self.hpos.assign(n + 1, -1)
        for v in range(1, n + 1):
            self._heap_insert(v)
        if init_scores is not None:
            for v in range(1, n + 1):
                self.score[v] = init_scores[v]
            self._heap_rebuild()

    # -- heap ---------------------------------------------------------------
    cdef inline bint _before(self, int a, int b):
        cdef double sa = self.score[a]
        cdef double sb = self.score[b]
        return sa > sb or (sa == sb and a < b)

    cdef void _heap_up(self, int i):
        cdef int v = self.heap[i]
        cdef int parent, p
        while i > 0:
            parent = (i - 1) >> 1
            p = self.heap[parent]
            if not self._before(v, p):
                break
            self.heap[i] = p
            self.hpos[p] = i
            i = parent
        self.heap[i] = v
        self.hpos[v] = i

    cdef void _heap_down(self, int i):
        cdef int n = <int>self.heap.size()
        cdef int v = self.heap[i]
        cdef int child, c
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            if child + 1 < n and self._before(self.heap[child + 1], self.heap[child]):
                child += 1
            c = self.heap[child]
            if not self._before(c, v):
                break
            self.heap[i] = c
            self.hpos[c] = i
            i = child
        self.heap[i] = v
        self.hpos[v] = i

    cdef void _heap_insert(self, int v):
        if self.hpos[v] >= 0:
            return
        self.heap.push_back(v)
        self.hpos[v] = <int>self.heap.size() - 1
        self._heap_up(<int>self.heap.size() - 1)

    cdef int _heap_pop(self):
        cdef int v = self.heap[0]
        cdef int last = self.heap.back()
        self.heap.pop_back()
        self.hpos[v] = -1
        if self.heap.size() > 0:
            self.heap[0] = last
            self.hpos[last] = 0
            self._heap_down(0)
        return v

    cdef void _heap_rebuild(self):
        cdef vector[int] vs = self.heap
        cdef size_t k
        cpp_sort(vs.begin(), vs.end())
        for k in range(vs.size()):
            self.hpos[vs[k]] = -1
        self.heap.clear()
        for k in range(vs.size()):
            self._heap_insert(vs[k])

    cdef void _bump(self, int v):
        cdef int i
        self.score[v] += self.bump_amt
        if self.score[v] > RESCALE_LIMIT:
            for i in range(1, self.num_vars + 1):
                self.score[i] *= RESCALE_FACTOR
            self.bump_amt *= RESCALE_FACTOR
            self._heap_rebuild()
        if self.hpos[v] >= 0:
            self._heap_up(self.hpos[v])

    # -- state --------------------------------------------------------------
    def decision_level(self):
        return <int>self.trail_lim.size()

    def value(self, int code):
        return self.lval[code]

    def var_level(self, int v):
        return self.level[v]

    def var_reason(self, int v):
        return self.reason[v]

    def trail_codes(self):
        return list(self.trail)

    def trail_size(self):
        return <int>self.trail.size()

    def level_start(self, int level):
        return self.trail_lim[level - 1] if level > 0 else 0

    def clause(self, int cref):
        if self.deleted[cref]:
            return None
        return list(self.clauses[cref])

    def num_clause_slots(self):
        return <int>self.clauses.size()

    def watches(self, int code):
        return list(self.watchlists[code])

    def is_learnt(self, int cref):
        return bool(self.learnt_flag[cref])

    def clause_activity(self, int cref):
        return self.cla_act[cref]

    def learnt_refs(self):
        return list(self.learnts)

    def num_learnts(self):
        return <int>self.learnts.size()

    def activity(self, int v):
        return self.score[v]

    def bump_amount(self):
        return self.bump_amt

    def phase(self, int v):
        return bool(self.has_saved[v]), bool(self.saved[v])

    def polarity_counts(self, int v):
        return self.pos_count[v], self.neg_count[v]

    # -- clause database ----------------------------------------------------
    def add_clause(self, codes, learnt=False):
        cdef int cref = <int>self.clauses.size()
        cdef vector[int] c = codes
        cdef int q
        for q in c:
            if q < 2 or q > 2 * self.num_vars + 1:
                raise ValueError(f"literal code {q} out of range")
        self.clauses.push_back(c)
        self.deleted.push_back(0)
        self.learnt_flag.push_back(<char>(bool(learnt)))
        self.cla_act.push_back(0.0)
        if c.size() >= 2:
            self.watchlists[c[0]].push_back(cref)
            self.watchlists[c[1]].push_back(cref)
        if learnt:
            self.learnts.push_back(cref)
        return cref

    cdef bint _locked(self, int cref):
        cdef int first = self.clauses[cref][0]
        return self.reason[first >> 1] == cref and self.lval[first] == 1

    def locked(self, int cref):
        return self._locked(cref)

    def reduce_db(self):
        cdef vector[pair[double, int]] cands
        cdef size_t k, nvict, j
        cdef int c
        cdef vector[int] kept
        for k in range(self.learnts.size()):
            c = self.learnts[k]
            if self.clauses[c].size() > 2 and not self._locked(c):
                cands.push_back(pair[double, int](self.cla_act[c], c))
        cpp_sort(cands.begin(), cands.end())
        nvict = cands.size() // 2
        if nvict == 0:
            return 0
        for k in range(nvict):
            c = cands[k].second
            self.deleted[c] = 1
            self.clauses[c].clear()
            self.clauses[c].shrink_to_fit()
        for k in range(self.learnts.size()):
            if not self.deleted[self.learnts[k]]:
                kept.push_back(self.learnts[k])
        self.learnts.swap(kept)
        for k in range(self.watchlists.size()):
            j = 0
            for c in self.watchlists[k]:
                if not self.deleted[c]:
                    self.watchlists[k][j] = c
                    j += 1
            self.watchlists[k].resize(j)
        return <int>nvict

    # -- trail --------------------------------------------------------------
    def new_level(self):
        self.trail_lim.push_back(<int>self.trail.size())

    cdef inline void _assign(self, int code, int reason):
        cdef int v = code >> 1
        self.lval[code] = 1
        self.lval[code ^ 1] = -1
        self.assigned[v] = 1
        self.level[v] = <int>self.trail_lim.size()
        self.reason[v] = reason
        self.trail.push_back(code)

    def enqueue(self, int code, int reason):
        assert not self.assigned[code >> 1], f"variable {code >> 1} already assigned"
        self._assign(code, reason)

    def backjump(self, int level):
        cdef int lim, i, code, v
        if <int>self.trail_lim.size() <= level:
            return
        lim = self.trail_lim[level]
        i = <int>self.trail.size() - 1
        while i >= lim:
            code = self.trail[i]
            v = code >> 1
            self.lval[code] = 0
            self.lval[code ^ 1] = 0
            self.assigned[v] = 0
            self.reason[v] = NO_REASON
            self.saved[v] = <char>(1 - (code & 1))
            self.has_saved[v] = 1
            self._heap_insert(v)
            i -= 1
        self.trail.resize(lim)
        self.trail_lim.resize(level)
        self.qhead = lim

    # -- propagation --------------------------------------------------------
    def propagate(self):
        return self._propagate()

    cdef int _propagate(self):
        cdef int confl = NO_REASON
        cdef int false_lit, cref, first, lit, k, n, i, j, csize
        cdef long long props = 0
        cdef int* c
        cdef vector[int]* ws
        while self.qhead < <int>self.trail.size():
            false_lit = self.trail[self.qhead] ^ 1
            self.qhead += 1
            ws = &self.watchlists[false_lit]
            n = <int>ws.size()
            i = 0
            j = 0
            while i < n:
                cref = ws[0][i]
                i += 1
                c = self.clauses[cref].data()
                csize = <int>self.clauses[cref].size()
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if self.lval[first] == 1:
                    ws[0][j] = cref
                    j += 1
                    continue
                k = 2
                while k < csize:
                    lit = c[k]
                    if self.lval[lit] != -1:
                        c[1] = lit
                        c[k] = false_lit
                        self.watchlists[lit].push_back(cref)
                        break
                    k += 1
                if k < csize:
                    continue
                ws[0][j] = cref
                j += 1
                if self.lval[first] == -1:
                    confl = cref
                    while i < n:
                        ws[0][j] = ws[0][i]
                        j += 1
                        i += 1
                    self.qhead = <int>self.trail.size()
                else:
                    self._assign(first, cref)
                    props += 1
            ws.resize(j)
        self.propagations += props
        return confl

    # -- conflict analysis --------------------------------------------------
    cdef void _bump_clause(self, int cref):
        cdef size_t k
        self.cla_act[cref] += self.cla_inc
        if self.cla_act[cref] > CLAUSE_RESCALE_LIMIT:
            for k in range(self.learnts.size()):
                self.cla_act[self.learnts[k]] *= CLAUSE_RESCALE_FACTOR
            self.cla_inc *= CLAUSE_RESCALE_FACTOR

    def analyze(self, int confl):
        cdef vector[int] out
        cdef vector[int] touched
        cdef int dl = <int>self.trail_lim.size()
        cdef int path = 0
        cdef int p = -1
        cdef int idx = <int>self.trail.size() - 1
        cdef int cref = confl
        cdef int k, q, v, csize
        cdef size_t t
        out.push_back(0)
        while True:
            if self.learnt_flag[cref]:
                self._bump_clause(cref)
            csize = <int>self.clauses[cref].size()
            k = 0 if p < 0 else 1
            while k < csize:
                q = self.clauses[cref][k]
                v = q >> 1
                if not self.seen[v] and self.level[v] > 0:
                    self.seen[v] = 1
                    touched.push_back(v)
                    self._bump(v)
                    if self.level[v] >= dl:
                        path += 1
                    else:
                        out.push_back(q)
                k += 1
            while not self.seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            self.seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
            cref = self.reason[p >> 1]
        out[0] = p ^ 1
        for t in range(touched.size()):
            self.seen[touched[t]] = 0
        result = list(out)
        return result, self.assert_order(result)

    def assert_order(self, list codes):
        cdef int best = 1
        cdef int k, n = len(codes)
        if n < 2:
            return 0
        for k in range(2, n):
            if self.level[<int>codes[k] >> 1] > self.level[<int>codes[best] >> 1]:
                best = k
        codes[1], codes[best] = codes[best], codes[1]
        return self.level[<int>codes[1] >> 1]

    def minimize(self, codes):
        cdef vector[int] cl = codes
        cdef vector[int] out
        cdef vector[int] touched
        cdef size_t k
        cdef int q
        for k in range(cl.size()):
            self.seen[cl[k] >> 1] = 1
        out.push_back(cl[0])
        for k in range(1, cl.size()):
            q = cl[k]
            if self.reason[q >> 1] == NO_REASON or not self._redundant(q >> 1, touched):
                out.push_back(q)
        for k in range(cl.size()):
            self.seen[cl[k] >> 1] = 0
        for k in range(touched.size()):
            self.memo[touched[k]] = 0
        return list(out)

    cdef bint _redundant(self, int root, vector[int]& touched):
        cdef vector[int] stack
        cdef vector[int] pos
        cdef int v, u, i, n, w
        cdef bint descended
        cdef size_t s
        stack.push_back(root)
        pos.push_back(1)
        while stack.size() > 0:
            v = stack.back()
            i = pos.back()
            n = <int>self.clauses[self.reason[v]].size()
            descended = False
            while i < n:
                u = self.clauses[self.reason[v]][i] >> 1
                i += 1
                if self.seen[u] or self.level[u] == 0 or self.memo[u] == REDUNDANT:
                    continue
                if (self.memo[u] == FAILED or self.reason[u] == NO_REASON
                        or <int>stack.size() >= MIN_DEPTH_LIMIT):
                    for s in range(stack.size()):
                        w = stack[s]
                        if not self.memo[w]:
                            self.memo[w] = FAILED
                            touched.push_back(w)
                    if not self.memo[u]:
                        self.memo[u] = FAILED
                        touched.push_back(u)
                    return False
                pos[pos.size() - 1] = i
                stack.push_back(u)
                pos.push_back(1)
                descended = True
                break
            if not descended:
                stack.pop_back()
                pos.pop_back()
                if not self.memo[v]:
                    self.memo[v] = REDUNDANT
                    touched.push_back(v)
        return True

    def learn(self, codes):
        cref = self.add_clause(codes, True)
        self.enqueue(codes[0], cref)
        return cref

    def after_conflict(self, codes):
        cdef int q
        for q in codes:
            if q & 1:
                self.neg_count[q >> 1] += 1
            else:
                self.pos_count[q >> 1] += 1
        self.bump_amt = self.bump_amt / self.var_decay
        self.cla_inc = self.cla_inc / self.clause_decay

    # -- decisions ----------------------------------------------------------
    def pick_branch_var(self):
        cdef int v
        while self.heap.size() > 0:
            v = self.heap[0]
            if not self.assigned[v]:
                return v
            self._heap_pop()
        return 0

    def pick_polarity(self, int v):
        if self.mode == MODE_NEGATIVE:
            return False
        if self.mode == MODE_SAVING:
            return bool(self.saved[v]) if self.has_saved[v] else False
        return self.pos_count[v] > self.neg_count[v]

    def bump_var(self, int v):
        self._bump(v)
