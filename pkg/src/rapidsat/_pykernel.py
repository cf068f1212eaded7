"""Pure-Python CDCL kernel.

Fallback for the compiled kernel in ``_ckernel.pyx``; both implement the
same algorithms step for step, so a run is bit-identical on either backend.

Literal codes: ``2*v`` for ``v`` and ``2*v + 1`` for ``-v`` (v is 1-based),
negation is ``code ^ 1``. Literal values: 1 true, -1 false, 0 unassigned.
Clauses are lists of codes; in a clause of length >= 2 positions 0 and 1 are
the watched literals, and the implied literal of a reason clause sits at 0.
"""

from .heuristics import Heuristics, PolarityMode

NO_REASON = -1
MIN_DEPTH_LIMIT = 1000
CLAUSE_RESCALE_LIMIT = 1e20
CLAUSE_RESCALE_FACTOR = 1e-20

_REDUNDANT = 1
_FAILED = 2


class Kernel:
    backend = "python"

    def __init__(self, num_vars, mode=1, var_decay=0.95, clause_decay=0.999,
                 init_scores=None):
        n = num_vars
        self.num_vars = n
        self.lval = [0] * (2 * n + 2)
        self.assigned = bytearray(n + 1)
        self.level = [0] * (n + 1)
        self.reason = [NO_REASON] * (n + 1)
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.clauses = []
        self.learnt_flag = []
        self.cla_act = []
        self.learnts = []
        self.watchlists = [[] for _ in range(2 * n + 2)]
        modes = list(PolarityMode)
        self.heur = Heuristics(n, modes[mode] if isinstance(mode, int) else mode, var_decay)
        if init_scores is not None:
            self.heur.set_scores(init_scores)
        self.cla_inc = 1.0
        self.clause_decay = clause_decay
        self.seen = bytearray(n + 1)
        self.memo = bytearray(n + 1)
        self.propagations = 0

    # -- state ------------------------------------------------------------
    def decision_level(self):
        return len(self.trail_lim)

    def value(self, code):
        return self.lval[code]

    def var_level(self, v):
        return self.level[v]

    def var_reason(self, v):
        return self.reason[v]

    def trail_codes(self):
        return list(self.trail)

    def trail_size(self):
        return len(self.trail)

    def level_start(self, level):
        return self.trail_lim[level - 1] if level > 0 else 0

    def clause(self, cref):
        c = self.clauses[cref]
        return None if c is None else list(c)

    def num_clause_slots(self):
        return len(self.clauses)

    def watches(self, code):
        return list(self.watchlists[code])

    def is_learnt(self, cref):
        return self.learnt_flag[cref]

    def clause_activity(self, cref):
        return self.cla_act[cref]

    def learnt_refs(self):
        return list(self.learnts)

    def num_learnts(self):
        return len(self.learnts)

    def activity(self, v):
        return self.heur.score[v]

    def bump_amount(self):
        return self.heur.bump_amount

    def phase(self, v):
        return self.heur.has_saved[v], self.heur.saved[v]

    def polarity_counts(self, v):
        return self.heur.pos_count[v], self.heur.neg_count[v]

    # -- clause database --------------------------------------------------
    def add_clause(self, codes, learnt=False):
        cref = len(self.clauses)
        c = list(codes)
        top = 2 * self.num_vars + 1
        for q in c:
            if q < 2 or q > top:
                raise ValueError(f"literal code {q} out of range")
        self.clauses.append(c)
        self.learnt_flag.append(bool(learnt))
        self.cla_act.append(0.0)
        if len(c) >= 2:
            self.watchlists[c[0]].append(cref)
            self.watchlists[c[1]].append(cref)
        if learnt:
            self.learnts.append(cref)
        return cref

    def locked(self, cref):
        c = self.clauses[cref]
        return self.reason[c[0] >> 1] == cref and self.lval[c[0]] == 1

    def reduce_db(self):
        """Delete the lower-activity half of the deletable learned clauses.

        Reason clauses and clauses of length <= 2 are never deleted. Ties in
        activity are broken by clause age (older first).
        """
        clauses = self.clauses
        cands = [(self.cla_act[c], c) for c in self.learnts
                 if len(clauses[c]) > 2 and not self.locked(c)]
        cands.sort()
        victims = cands[:len(cands) // 2]
        if not victims:
            return 0
        for _, c in victims:
            clauses[c] = None
        self.learnts = [c for c in self.learnts if clauses[c] is not None]
        for ws in self.watchlists:
            if ws:
                ws[:] = [c for c in ws if clauses[c] is not None]
        return len(victims)

    # -- trail ------------------------------------------------------------
    def new_level(self):
        self.trail_lim.append(len(self.trail))

    def enqueue(self, code, reason):
        v = code >> 1
        assert not self.assigned[v], f"variable {v} already assigned"
        self.lval[code] = 1
        self.lval[code ^ 1] = -1
        self.assigned[v] = 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(code)

    def backjump(self, level):
        if len(self.trail_lim) <= level:
            return
        lim = self.trail_lim[level]
        trail, lval, assigned, reason = self.trail, self.lval, self.assigned, self.reason
        heur = self.heur
        for i in range(len(trail) - 1, lim - 1, -1):
            code = trail[i]
            v = code >> 1
            lval[code] = 0
            lval[code ^ 1] = 0
            assigned[v] = 0
            reason[v] = NO_REASON
            heur.save_phase(v, not (code & 1))
            heur.reinsert(v)
        del trail[lim:]
        del self.trail_lim[level:]
        self.qhead = lim

    # -- propagation ------------------------------------------------------
    def propagate(self):
        """Unit propagation over the watch lists; returns a conflicting
        clause reference or -1."""
        trail, lval, clauses, watchlists = self.trail, self.lval, self.clauses, self.watchlists
        level, reason, assigned = self.level, self.reason, self.assigned
        dl = len(self.trail_lim)
        qhead = self.qhead
        props = 0
        confl = NO_REASON
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            ws = watchlists[false_lit]
            n = len(ws)
            i = j = 0
            while i < n:
                cref = ws[i]
                i += 1
                c = clauses[cref]
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if lval[first] == 1:
                    ws[j] = cref
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    if lval[lit] != -1:
                        c[1] = lit
                        c[k] = false_lit
                        watchlists[lit].append(cref)
                        break
                else:
                    ws[j] = cref
                    j += 1
                    if lval[first] == -1:
                        confl = cref
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        qhead = len(trail)
                    else:
                        v = first >> 1
                        lval[first] = 1
                        lval[first ^ 1] = -1
                        assigned[v] = 1
                        level[v] = dl
                        reason[v] = cref
                        trail.append(first)
                        props += 1
            del ws[j:]
        self.qhead = qhead
        self.propagations += props
        return confl

    # -- conflict analysis ------------------------------------------------
    def _bump_clause(self, cref):
        act = self.cla_act
        act[cref] += self.cla_inc
        if act[cref] > CLAUSE_RESCALE_LIMIT:
            for c in self.learnts:
                act[c] *= CLAUSE_RESCALE_FACTOR
            self.cla_inc *= CLAUSE_RESCALE_FACTOR

    def analyze(self, confl):
        """First-UIP learning. Returns (learned codes, backjump level) with the
        asserting literal first; bumps the activity of every variable met."""
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        clauses, heur, learnt_flag = self.clauses, self.heur, self.learnt_flag
        dl = len(self.trail_lim)
        out = [0]
        touched = []
        path = 0
        p = -1
        idx = len(trail) - 1
        cref = confl
        while True:
            if learnt_flag[cref]:
                self._bump_clause(cref)
            c = clauses[cref]
            for k in range(0 if p < 0 else 1, len(c)):
                q = c[k]
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    touched.append(v)
                    heur.bump(v)
                    if level[v] >= dl:
                        path += 1
                    else:
                        out.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
            cref = reason[p >> 1]
        out[0] = p ^ 1
        for v in touched:
            seen[v] = 0
        return out, self.assert_order(out)

    def assert_order(self, codes):
        """Move the highest-level non-asserting literal to position 1 and
        return its level (0 for a unit clause)."""
        if len(codes) < 2:
            return 0
        level = self.level
        best = 1
        for k in range(2, len(codes)):
            if level[codes[k] >> 1] > level[codes[best] >> 1]:
                best = k
        codes[1], codes[best] = codes[best], codes[1]
        return level[codes[1] >> 1]

    def minimize(self, codes):
        """Drop literals implied by the rest of the clause through reason
        clauses (recursive test, depth-limited). codes[0] is always kept."""
        seen, memo = self.seen, self.memo
        for q in codes:
            seen[q >> 1] = 1
        touched = []
        out = [codes[0]]
        for k in range(1, len(codes)):
            q = codes[k]
            if self.reason[q >> 1] == NO_REASON or not self._redundant(q >> 1, touched):
                out.append(q)
        for q in codes:
            seen[q >> 1] = 0
        for v in touched:
            memo[v] = 0
        return out

    def _redundant(self, root, touched):
        seen, memo, level, reason, clauses = self.seen, self.memo, self.level, self.reason, self.clauses
        stack = [root]
        pos = [1]
        while stack:
            v = stack[-1]
            c = clauses[reason[v]]
            i = pos[-1]
            n = len(c)
            descended = False
            while i < n:
                u = c[i] >> 1
                i += 1
                if seen[u] or level[u] == 0 or memo[u] == _REDUNDANT:
                    continue
                if memo[u] == _FAILED or reason[u] == NO_REASON or len(stack) >= MIN_DEPTH_LIMIT:
                    for w in stack:
                        if not memo[w]:
                            memo[w] = _FAILED
                            touched.append(w)
                    if not memo[u]:
                        memo[u] = _FAILED
                        touched.append(u)
                    return False
                pos[-1] = i
                stack.append(u)
                pos.append(1)
                descended = True
                break
            if not descended:
                stack.pop()
                pos.pop()
                if not memo[v]:
                    memo[v] = _REDUNDANT
                    touched.append(v)
        return True

    def learn(self, codes):
        """Record a learned clause and enqueue its asserting literal (call
        after backjumping to the level returned by ``assert_order``)."""
        cref = self.add_clause(codes, learnt=True)
        self.enqueue(codes[0], cref)
        return cref

    def after_conflict(self, codes):
        heur = self.heur
        pos, neg = heur.pos_count, heur.neg_count
        for q in codes:
            if q & 1:
                neg[q >> 1] += 1
            else:
                pos[q >> 1] += 1
        heur.decay_bump()
        self.cla_inc = self.cla_inc / self.clause_decay

    # -- decisions --------------------------------------------------------
    def pick_branch_var(self):
        v = self.heur.pick_branch_variable(self.assigned)
        return 0 if v is None else v

    def pick_polarity(self, v):
        return self.heur.pick_polarity(v)

    def bump_var(self, v):
        self.heur.bump(v)

