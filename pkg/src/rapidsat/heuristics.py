"""Decision heuristics: conflict-driven variable activity and polarity choice.

Variables are 1-based. The branching variable is the free variable with the
highest activity; ties go to the lowest index.
"""

from __future__ import annotations

import enum
import random
from typing import Iterable, Sequence

DECAY = 0.95
INITIAL_BUMP = 1.0
RESCALE_LIMIT = 1e100
RESCALE_FACTOR = 1e-100
JITTER = 1e-6


class PolarityMode(enum.Enum):
    NEGATIVE = "negative"
    PHASE_SAVING = "saving"
    ACTIVITY_SIGN = "activity"

    @classmethod
    def parse(cls, text: "str | PolarityMode") -> "PolarityMode":
        if isinstance(text, cls):
            return text
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "negative": cls.NEGATIVE, "neg": cls.NEGATIVE, "false": cls.NEGATIVE,
            "saving": cls.PHASE_SAVING, "phase-saving": cls.PHASE_SAVING,
            "phase": cls.PHASE_SAVING,
            "activity": cls.ACTIVITY_SIGN, "activity-sign": cls.ACTIVITY_SIGN,
            "counters": cls.ACTIVITY_SIGN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(
                f"unknown polarity mode {text!r}; expected negative, saving or activity"
            ) from None

    @property
    def code(self) -> int:
        return _MODE_CODES[self]


_MODE_CODES = {PolarityMode.NEGATIVE: 0, PolarityMode.PHASE_SAVING: 1,
               PolarityMode.ACTIVITY_SIGN: 2}


def initial_jitter(num_vars: int, seed: int) -> list[float]:
    """Distinct pseudo-random initial scores in [0, 1e-6); slot 0 is unused.

    Drawn from ``random.Random(seed)`` (MT19937), so a seed always gives the
    same scores.
    """
    rng = random.Random(seed)
    out = [0.0]
    seen = set()
    for _ in range(num_vars):
        x = rng.random() * JITTER
        while x in seen or x >= JITTER:
            x = rng.random() * JITTER
        seen.add(x)
        out.append(x)
    return out


class VarHeap:
    """Binary max-heap of variables ordered by (score desc, index asc)."""

    def __init__(self, score: Sequence[float]):
        self.score = score
        self.heap: list[int] = []
        self.pos: dict[int, int] = {}

    def __len__(self):
        return len(self.heap)

    def __contains__(self, v):
        return v in self.pos

    def _before(self, a, b):
        sa, sb = self.score[a], self.score[b]
        return sa > sb or (sa == sb and a < b)

    def _up(self, i):
        heap, pos = self.heap, self.pos
        v = heap[i]
        while i > 0:
            parent = (i - 1) >> 1
            p = heap[parent]
            if not self._before(v, p):
                break
            heap[i] = p
            pos[p] = i
            i = parent
        heap[i] = v
        pos[v] = i

    def _down(self, i):
        heap, pos = self.heap, self.pos
        n = len(heap)
        v = heap[i]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            if child + 1 < n and self._before(heap[child + 1], heap[child]):
                child += 1
            c = heap[child]
            if not self._before(c, v):
                break
            heap[i] = c
            pos[c] = i
            i = child
        heap[i] = v
        pos[v] = i

    def insert(self, v):
        if v in self.pos:
            return
        self.heap.append(v)
        self.pos[v] = len(self.heap) - 1
        self._up(len(self.heap) - 1)

    def increased(self, v):
        i = self.pos.get(v)
        if i is not None:
            self._up(i)

    def top(self):
        return self.heap[0]

    def pop(self):
        heap = self.heap
        v = heap[0]
        last = heap.pop()
        del self.pos[v]
        if heap:
            heap[0] = last
            self.pos[last] = 0
            self._down(0)
        return v

    def rebuild(self):
        vs = sorted(self.heap)
        self.heap = []
        self.pos = {}
        for v in vs:
            self.insert(v)


class Heuristics:
    """Activity table, polarity counters and saved phases for one solver run."""

    def __init__(self, num_vars: int, mode=PolarityMode.PHASE_SAVING,
                 decay: float = DECAY, bump: float = INITIAL_BUMP):
        if not 0.0 < decay < 1.0:
            raise ValueError(f"decay must lie in (0, 1), got {decay}")
        self.num_vars = num_vars
        self.mode = PolarityMode.parse(mode)
        self.decay = decay
        self.bump_amount = bump
        self.score = [0.0] * (num_vars + 1)
        self.pos_count = [0] * (num_vars + 1)
        self.neg_count = [0] * (num_vars + 1)
        self.saved = [False] * (num_vars + 1)
        self.has_saved = [False] * (num_vars + 1)
        self.heap = VarHeap(self.score)
        for v in range(1, num_vars + 1):
            self.heap.insert(v)

    # -- activity -------------------------------------------------------
    def set_scores(self, scores: Sequence[float]):
        self.score[1:] = scores[1:self.num_vars + 1]
        self.heap.rebuild()

    def seed_perturbation(self, seed: int):
        self.set_scores(initial_jitter(self.num_vars, seed))

    def bump(self, v: int):
        score = self.score
        score[v] += self.bump_amount
        if score[v] > RESCALE_LIMIT:
            self.rescale()
        self.heap.increased(v)

    def rescale(self):
        score = self.score
        for i in range(1, self.num_vars + 1):
            score[i] *= RESCALE_FACTOR
        self.bump_amount *= RESCALE_FACTOR
        self.heap.rebuild()

    def decay_bump(self):
        self.bump_amount = self.bump_amount / self.decay

    def count_polarities(self, lits: Iterable[int]):
        """Count signs of DIMACS literals (one count per literal per conflict)."""
        for lit in lits:
            if lit > 0:
                self.pos_count[lit] += 1
            else:
                self.neg_count[-lit] += 1

    def bump_and_decay(self, vars_in_conflict: Iterable[int], lits: Iterable[int] = ()):
        for v in vars_in_conflict:
            self.bump(v)
        self.count_polarities(lits)
        self.decay_bump()

    # -- decisions ------------------------------------------------------
    def pick_branch_variable(self, assigned) -> int | None:
        """Highest-scoring variable with ``assigned[v]`` false, or None.

        Assigned variables found on top of the heap are popped; callers must
        :meth:`reinsert` them when they become free again.
        """
        heap = self.heap
        while len(heap):
            v = heap.top()
            if not assigned[v]:
                return v
            heap.pop()
        return None

    def reinsert(self, v: int):
        self.heap.insert(v)

    def pick_polarity(self, v: int, mode: PolarityMode | None = None) -> bool:
        mode = self.mode if mode is None else mode
        if mode is PolarityMode.NEGATIVE:
            return False
        if mode is PolarityMode.PHASE_SAVING:
            return self.saved[v] if self.has_saved[v] else False
        return self.pos_count[v] > self.neg_count[v]

    def save_phase(self, v: int, value: bool):
        self.saved[v] = value
        self.has_saved[v] = True
