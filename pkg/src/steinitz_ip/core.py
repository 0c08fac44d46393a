"""Problem data model shared by every solver.

Integer programs are kept in the form ``max c.x  s.t.  A x = b, 0 <= x (<= u)``
with Python ints everywhere, so no value is ever rounded or truncated.
Fractional quantities (LP vertices, Steinitz multipliers) use
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Rational = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class InstanceError(ValueError):
    """Raised for raw instance data that cannot form a valid program."""


class DimensionMismatch(InstanceError):
    pass


class NegativeUpperBound(InstanceError):
    pass


class EmptyInstance(InstanceError):
    pass


class PreconditionViolated(ValueError):
    """An algorithm was handed an instance outside its supported class."""


def _as_int(v):
    if isinstance(v, bool):
        raise InstanceError("booleans are not valid entries")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, str):
        return int(v)
    if isinstance(v, float) and v.is_integer():
        return int(v)
    raise InstanceError("entry %r is not an integer" % (v,))


@dataclass(frozen=True)
class IPInstance:
    """``max {c.x : A x = b, 0 <= x <= u, x integral}``; ``upper`` is optional.

    Build instances through :func:`validate`; ``delta`` is always recomputed
    from ``a``.
    """

    a: tuple
    b: tuple
    c: tuple
    upper: Optional[tuple] = None
    delta: int = field(default=0, compare=False)

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.c)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.a)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.n)]

    def residual(self, x: Sequence[int]) -> tuple:
        """``b - A x``."""
        return tuple(bi - sum(aij * xj for aij, xj in zip(row, x))
                     for row, bi in zip(self.a, self.b))

    def objective(self, x: Sequence[int]) -> int:
        return sum(ci * xi for ci, xi in zip(self.c, x))

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.n or any(xi < 0 for xi in x):
            return False
        if self.upper is not None and any(xi > ui for xi, ui in zip(x, self.upper)):
            return False
        return not any(self.residual(x))

    def with_upper(self, upper) -> "IPInstance":
        return validate(self.a, self.b, self.c, upper)

    def to_dict(self) -> dict:
        d = {"m": self.m, "n": self.n, "A": [list(r) for r in self.a],
             "b": list(self.b), "c": list(self.c)}
        if self.upper is not None:
            d["u"] = list(self.upper)
        return d


def validate(a, b=None, c=None, upper=None, m=None, n=None) -> IPInstance:
    """Check raw data and return a canonical :class:`IPInstance`.

    ``m`` and ``n`` are optional declared dimensions; when given they must
    agree with the entry lists. An existing instance is re-validated.
    """
    if isinstance(a, IPInstance):
        return validate(a.a, a.b, a.c, a.upper)
    if b is None or c is None:
        raise InstanceError("b and c are required")
    rows = [tuple(_as_int(v) for v in row) for row in a]
    if not rows or not rows[0]:
        raise EmptyInstance("A must have at least one row and one column")
    if m is not None and m != len(rows):
        raise DimensionMismatch("declared m=%d but A has %d rows" % (m, len(rows)))
    ncols = len(rows[0])
    if n is not None and n != ncols:
        raise DimensionMismatch("declared n=%d but A has %d columns" % (n, ncols))
    if any(len(r) != ncols for r in rows):
        raise DimensionMismatch("A is ragged")
    b = tuple(_as_int(v) for v in b)
    c = tuple(_as_int(v) for v in c)
    if len(b) != len(rows):
        raise DimensionMismatch("b has length %d, expected m=%d" % (len(b), len(rows)))
    if len(c) != ncols:
        raise DimensionMismatch("c has length %d, expected n=%d" % (len(c), ncols))
    if upper is not None:
        upper = tuple(_as_int(v) for v in upper)
        if len(upper) != ncols:
            raise DimensionMismatch("u has length %d, expected n=%d" % (len(upper), ncols))
        if any(v < 0 for v in upper):
            raise NegativeUpperBound("upper bounds must be nonnegative")
    delta = max(abs(v) for r in rows for v in r)
    return IPInstance(tuple(rows), b, c, upper, delta)


def from_dict(d: dict) -> IPInstance:
    """Parse the JSON instance layout (keys m, n, A, b, c and optional u)."""
    try:
        return validate(d["A"], d["b"], d["c"], d.get("u"), m=d.get("m"), n=d.get("n"))
    except KeyError as e:
        raise InstanceError("missing key %s" % e) from None


@dataclass(frozen=True)
class SolveOutcome:
    """Result of any solver: infeasible, unbounded, or optimal with ``x``."""

    status: str
    x: Optional[tuple] = None
    value: Optional[int] = None
    stats: dict = field(default_factory=dict, compare=False)

    @classmethod
    def optimal(cls, inst: IPInstance, x, stats=None) -> "SolveOutcome":
        x = tuple(int(v) for v in x)
        if not inst.is_feasible(x):
            raise AssertionError("solver produced an infeasible point %r" % (x,))
        return cls(OPTIMAL, x, inst.objective(x), dict(stats or {}))

    @classmethod
    def infeasible(cls, stats=None) -> "SolveOutcome":
        return cls(INFEASIBLE, stats=dict(stats or {}))

    @classmethod
    def unbounded(cls, stats=None) -> "SolveOutcome":
        return cls(UNBOUNDED, stats=dict(stats or {}))

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def l1_norm(v) -> int:
    return sum(abs(x) for x in v)


def linf_norm(v) -> int:
    return max((abs(x) for x in v), default=0)
