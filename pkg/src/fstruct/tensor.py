"""(1,1)-tensor fields on a chart, stored as square matrices of Expr."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from fstruct.chart import ChartManifold, VectorField
from fstruct.expr import Expr


@dataclass(frozen=True)
class TensorField11:
    """Matrix of a (1,1)-tensor in the coordinate frame; ``rows[i][j]`` is T^i_j."""

    chart: ChartManifold
    rows: tuple[tuple[Expr, ...], ...]

    def __post_init__(self):
        n = self.chart.dim
        rows = tuple(tuple(self.chart.expr(e) for e in row) for row in self.rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix for a {n}-dimensional chart")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, chart: ChartManifold, rows) -> TensorField11:
        return cls(chart, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, chart: ChartManifold) -> TensorField11:
        n = chart.dim
        return cls(chart, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, chart: ChartManifold) -> TensorField11:
        n = chart.dim
        return cls(chart, tuple((0,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return self.chart.dim

    def __getitem__(self, ij) -> Expr:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> VectorField:
        return VectorField(self.chart, tuple(r[j] for r in self.rows))

    def columns(self) -> list[VectorField]:
        return [self.column(j) for j in range(self.n)]

    def _check(self, other: TensorField11):
        if other.chart.vars != self.chart.vars:
            raise ValueError("tensors live on different charts")

    def __add__(self, other: TensorField11) -> TensorField11:
        self._check(other)
        return TensorField11(self.chart, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other: TensorField11) -> TensorField11:
        self._check(other)
        return TensorField11(self.chart, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __neg__(self) -> TensorField11:
        return TensorField11(self.chart, tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> TensorField11:
        c = self.chart.expr(c)
        return TensorField11(self.chart, tuple(tuple(c * a for a in r) for r in self.rows))

    def __matmul__(self, other):
        if isinstance(other, VectorField):
            return self.apply(other)
        self._check(other)
        n = self.n
        cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        zero = self.chart.zero()
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                new.append(acc)
            out.append(tuple(new))
        return TensorField11(self.chart, tuple(out))

    def apply(self, X: VectorField) -> VectorField:
        """(TX)^i = sum_j T^i_j X^j."""
        zero = self.chart.zero()
        comps = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, X.components):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            comps.append(acc)
        return VectorField(self.chart, tuple(comps))

    __call__ = apply

    def power(self, k: int) -> TensorField11:
        """T^k by repeated multiplication; T^0 is the identity."""
        if k < 0:
            raise ValueError("negative matrix power")
        out = TensorField11.identity(self.chart)
        for _ in range(k):
            out = out @ self
        return out

    def powers(self, k: int) -> list[TensorField11]:
        """[T^0, T^1, ..., T^k]."""
        out = [TensorField11.identity(self.chart)]
        for _ in range(k):
            out.append(out[-1] @ self)
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def is_constant(self) -> bool:
        return all(e.is_constant() for r in self.rows for e in r)

    def first_nonzero(self):
        """(i, j, entry) of the first nonzero entry in row-major order, or None."""
        for i, r in enumerate(self.rows):
            for j, e in enumerate(r):
                if not e.is_zero():
                    return i, j, e
        return None

    def evaluate(self, point) -> list[list[Fraction]]:
        return [[e.evaluate(point) for e in r] for r in self.rows]

    def entries(self):
        for r in self.rows:
            yield from r

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"
