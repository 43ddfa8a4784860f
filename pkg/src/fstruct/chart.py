"""Coordinate charts, vector fields and the Lie bracket."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from fstruct.expr import Expr, as_expr

_IDENT_OK = str.isidentifier


@dataclass(frozen=True)
class ChartManifold:
    """Ordered chart variables plus expressions that must not vanish on the domain.

    ``nonvanishing`` entries may be given as strings; they are parsed against
    ``vars``.  The constraints only gate numeric sampling.
    """

    vars: tuple[str, ...]
    nonvanishing: tuple[Expr, ...] = field(default=())

    def __post_init__(self):
        names = tuple(self.vars)
        if not names:
            raise ValueError("a chart needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate chart variables in {list(names)}")
        for v in names:
            if not _IDENT_OK(v):
                raise ValueError(f"invalid variable name {v!r}")
        object.__setattr__(self, "vars", names)
        nv = tuple(as_expr(e, names) for e in self.nonvanishing)
        for e in nv:
            if e.is_zero():
                raise ValueError("a nonvanishing constraint is identically zero")
        object.__setattr__(self, "nonvanishing", nv)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def expr(self, value) -> Expr:
        return as_expr(value, self.vars)

    def zero(self) -> Expr:
        return self._constants[0]

    def one(self) -> Expr:
        return self._constants[1]

    @cached_property
    def _constants(self) -> tuple[Expr, Expr]:
        # Expr values are immutable, so these can be shared
        return Expr.constant(0, self.vars), Expr.constant(1, self.vars)

    def frame(self) -> list[VectorField]:
        return coordinate_frame(self)

    def vector(self, components) -> VectorField:
        return VectorField(self, tuple(self.expr(c) for c in components))

    def is_admissible(self, point: Sequence[Fraction], extra: Iterable[Expr] = ()) -> bool:
        """True if every constraint (and every denominator in ``extra``) is nonzero at ``point``."""
        for e in self.nonvanishing:
            if e.den.evaluate(point) == 0 or e.num.evaluate(point) == 0:
                return False
        for e in extra:
            if e.den.evaluate(point) == 0:
                return False
        return True

    def sample_points(self, count: int = 3, seed: int = 0, extra: Iterable[Expr] = (),
                      max_tries: int = 1000) -> list[tuple[Fraction, ...]]:
        """Admissible rational points found by seeded rejection sampling.

        May return fewer than ``count`` points if the domain is hard to hit.
        """
        extra = list(extra)
        rng = random.Random(seed)
        points: list[tuple[Fraction, ...]] = []
        for _ in range(max_tries):
            if len(points) == count:
                break
            pt = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in self.vars)
            if pt not in points and self.is_admissible(pt, extra):
                points.append(pt)
        return points


@dataclass(frozen=True)
class VectorField:
    """Components in the coordinate frame of ``chart``."""

    chart: ChartManifold
    components: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.components) != self.chart.dim:
            raise ValueError(
                f"vector field has {len(self.components)} components on a {self.chart.dim}-dimensional chart"
            )

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i) -> Expr:
        return self.components[i]

    def _check(self, other: VectorField):
        if not isinstance(other, VectorField):
            raise TypeError(f"expected a VectorField, got {type(other).__name__}")
        if other.chart.vars != self.chart.vars:
            raise ValueError("vector fields live on different charts")

    def __add__(self, other: VectorField) -> VectorField:
        self._check(other)
        return VectorField(self.chart, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: VectorField) -> VectorField:
        self._check(other)
        return VectorField(self.chart, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> VectorField:
        return VectorField(self.chart, tuple(-a for a in self.components))

    def __mul__(self, f) -> VectorField:
        f = self.chart.expr(f)
        return VectorField(self.chart, tuple(f * a for a in self.components))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def derive(self, f: Expr) -> Expr:
        """Directional derivative X(f) = sum_j X^j d_j f."""
        total = self.chart.zero()
        if f.is_constant():
            return total
        for j, xj in enumerate(self.components):
            if not xj.is_zero():
                dj = f.diff(j)
                if not dj.is_zero():
                    total = total + xj * dj
        return total

    def bracket(self, other: VectorField) -> VectorField:
        return lie_bracket(self, other)

    def __str__(self):
        terms = []
        for v, c in zip(self.chart.vars, self.components):
            if c.is_zero():
                continue
            s = str(c)
            if c == 1:
                terms.append(f"d_{v}")
            else:
                terms.append(f"({s})*d_{v}")
        return " + ".join(terms) if terms else "0"

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.components]


def coordinate_frame(chart: ChartManifold) -> list[VectorField]:
    n = chart.dim
    one, zero = chart.one(), chart.zero()
    return [VectorField(chart, tuple(one if i == j else zero for i in range(n))) for j in range(n)]


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i)."""
    X._check(Y)
    comps = tuple(X.derive(yi) - Y.derive(xi) for xi, yi in zip(X.components, Y.components))
    return VectorField(X.chart, comps)
