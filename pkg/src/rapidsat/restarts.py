"""Restart policies: fixed, geometric, Luby and inner/outer geometric.

Every policy hands out conflict allowances through ``next_limit()``; the
solver restarts once the conflicts since the last restart reach it.

Config strings: ``fixed:<n>``, ``geometric:<first>,<factor>``, ``luby:<u>``,
``inout:<base>,<factor>``.
"""

from __future__ import annotations

import math

# unit runs swept in the reference experiment
LUBY_UNIT_RUNS = (1, 2, 4, 6, 8, 12, 16, 32, 64, 128, 256, 512)
DEFAULT_LUBY_UNIT = 6


def luby_term(i: int) -> int:
    """i-th term (1-based) of the Luby sequence 1,1,2,1,1,2,4,1,...

    Walks down the self-similar structure: while ``i`` is not of the form
    ``2**k - 1`` it is mapped onto the matching position of the prefix.
    """
    if i < 1:
        raise ValueError(f"Luby index must be >= 1, got {i}")
    while True:
        k = i.bit_length()          # 2**(k-1) <= i < 2**k
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


def should_restart(conflicts_since_restart: int, limit: int) -> bool:
    return conflicts_since_restart >= limit


class RestartPolicy:
    kind = ""

    def next_limit(self) -> int:
        raise NotImplementedError

    def reset(self) -> None:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    @property
    def label(self) -> str:
        raise NotImplementedError

    def fresh(self) -> "RestartPolicy":
        return parse_restart(self.spec)

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


class FixedRestarts(RestartPolicy):
    kind = "fixed"

    def __init__(self, size: int):
        if int(size) != size or size < 1:
            raise ValueError(f"fixed restart size must be a positive integer, got {size}")
        self.size = int(size)

    def next_limit(self) -> int:
        return self.size

    def reset(self):
        pass

    @property
    def spec(self):
        return f"fixed:{self.size}"

    @property
    def label(self):
        return f"Fixed-{self.size}"


class GeometricRestarts(RestartPolicy):
    """Limits ``first * factor**j``, truncated to integers.

    ``first * (factor - 1) >= 1`` is required so that truncated limits are
    strictly increasing.
    """

    kind = "geometric"

    def __init__(self, first: float = 100, factor: float = 1.5):
        _check_growth(first, factor)
        self.first = first
        self.factor = factor
        self.current = float(first)

    def next_limit(self) -> int:
        limit = int(self.current)
        self.current *= self.factor
        return limit

    def reset(self):
        self.current = float(self.first)

    @property
    def spec(self):
        return f"geometric:{_fmt(self.first)},{_fmt(self.factor)}"

    @property
    def label(self):
        return f"Geometric-{_fmt(self.first)}-{_fmt(self.factor)}"


class LubyRestarts(RestartPolicy):
    kind = "luby"

    def __init__(self, unit: int = DEFAULT_LUBY_UNIT):
        if int(unit) != unit or unit < 1:
            raise ValueError(f"Luby unit run must be a positive integer, got {unit}")
        self.unit = int(unit)
        self.index = 1

    def next_limit(self) -> int:
        limit = self.unit * luby_term(self.index)
        self.index += 1
        return limit

    def reset(self):
        self.index = 1

    @property
    def spec(self):
        return f"luby:{self.unit}"

    @property
    def label(self):
        return f"Luby-{self.unit}"


class InnerOuterRestarts(RestartPolicy):
    """Inner limit grows geometrically up to the outer bound, then drops
    back to ``base`` while the outer bound itself grows by ``factor``."""

    kind = "inout"

    def __init__(self, base: float = 100, factor: float = 1.1):
        _check_growth(base, factor)
        self.base = base
        self.factor = factor
        self.reset()

    def reset(self):
        self.inner = float(self.base)
        self.outer = float(self.base)

    def next_limit(self) -> int:
        limit = int(self.inner)
        self.inner *= self.factor
        if self.inner > self.outer:
            self.inner = float(self.base)
            self.outer *= self.factor
        return limit

    @property
    def spec(self):
        return f"inout:{_fmt(self.base)},{_fmt(self.factor)}"

    @property
    def label(self):
        return f"InOut-{_fmt(self.base)}-{_fmt(self.factor)}"


def _check_growth(first, factor):
    if not (math.isfinite(first) and math.isfinite(factor)):
        raise ValueError("restart parameters must be finite")
    if first < 1:
        raise ValueError(f"initial restart limit must be >= 1, got {first}")
    if factor <= 1:
        raise ValueError(f"growth factor must be > 1, got {factor}")
    if first * (factor - 1) < 1:
        raise ValueError(
            f"first * (factor - 1) must be >= 1 for strictly growing limits "
            f"(got first={first}, factor={factor})")


def _num(text: str, spec: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise ValueError(f"bad number {text!r} in restart spec {spec!r}") from None
    return int(x) if x.is_integer() else x


def parse_restart(spec: str) -> RestartPolicy:
    """Build a policy from a config string such as ``luby:6``.

    Bare kinds use defaults: ``luby`` = luby:6, ``geometric`` = geometric:100,1.5,
    ``inout`` = inout:100,1.1.
    """
    kind, _, args = spec.strip().partition(":")
    kind = kind.lower()
    params = [_num(a, spec) for a in args.split(",")] if args else []
    try:
        if kind == "fixed" and len(params) == 1:
            return FixedRestarts(params[0])
        if kind == "luby" and len(params) <= 1:
            return LubyRestarts(*params)
        if kind == "geometric" and len(params) in (0, 2):
            return GeometricRestarts(*params)
        if kind == "inout" and len(params) in (0, 2):
            return InnerOuterRestarts(*params)
    except ValueError as e:
        raise ValueError(f"invalid restart spec {spec!r}: {e}") from None
    raise ValueError(
        f"invalid restart spec {spec!r}; expected fixed:<n>, geometric:<first>,<factor>, "
        f"luby:<u> or inout:<base>,<factor>")


def parse_restart_list(text: str) -> list[RestartPolicy]:
    """Parse a comma-separated list of restart specs.

    Commas also separate the parameters of two-argument kinds, so a token
    without a ``:`` continues the previous spec: ``geometric:100,1.5`` stays
    whole. For one-argument kinds a bare token starts a new spec of the same
    kind, so ``luby:1,2,4`` means luby:1, luby:2, luby:4.
    """
    specs: list[str] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if ":" in tok or not specs or tok[0].isalpha():
            specs.append(tok)
            continue
        kind, _, args = specs[-1].partition(":")
        if kind.lower() in ("luby", "fixed"):
            specs.append(f"{kind}:{tok}")
        else:
            specs[-1] = f"{specs[-1]},{tok}" if args else f"{kind}:{tok}"
    return [parse_restart(s) for s in specs]


def luby_sweep(units=LUBY_UNIT_RUNS) -> list[RestartPolicy]:
    return [LubyRestarts(u) for u in units]
