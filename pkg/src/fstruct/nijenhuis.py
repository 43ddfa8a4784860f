"""Nijenhuis tensors and the unconditional identities relating N_F, N_l and N_m.

All three tensors are bilinear over functions, so evaluating them on the
coordinate frame (and on frame fields pushed through l, m, F) decides any
identity between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from fstruct.chart import ChartManifold, VectorField, coordinate_frame, lie_bracket
from fstruct.checks import IdentityCheck, SuiteResult
from fstruct.tensor import TensorField11


def nijenhuis_apply(T: TensorField11, X: VectorField, Y: VectorField,
                    T2: TensorField11 | None = None) -> VectorField:
    """N_T(X, Y) = [TX, TY] - T[TX, Y] - T[X, TY] + T^2[X, Y]."""
    if X.chart.vars != T.chart.vars or Y.chart.vars != T.chart.vars:
        raise ValueError("tensor and vector fields live on different charts")
    if T2 is None:
        T2 = T @ T
    TX, TY = T @ X, T @ Y
    out = lie_bracket(TX, TY) - T @ (lie_bracket(TX, Y) + lie_bracket(X, TY))
    XY = lie_bracket(X, Y)
    if not XY.is_zero():
        out = out + T2 @ XY
    return out


@dataclass(frozen=True)
class BilinearFrameTable:
    """Antisymmetric table of values on coordinate frame pairs; keys (i, j) with i < j."""

    chart: ChartManifold
    entries: dict

    def __getitem__(self, ij) -> VectorField:
        i, j = ij
        if i == j:
            return VectorField(self.chart, (self.chart.zero(),) * self.chart.dim)
        if i < j:
            return self.entries[(i, j)]
        return -self.entries[(j, i)]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def nonzero(self) -> dict:
        return {k: v for k, v in self.entries.items() if not v.is_zero()}

    def to_dict(self) -> dict:
        names = self.chart.vars
        return {f"{names[i]},{names[j]}": v.to_strings() for (i, j), v in sorted(self.entries.items())}


def nijenhuis_of(T: TensorField11) -> BilinearFrameTable:
    frame = coordinate_frame(T.chart)
    T2 = T @ T
    n = T.chart.dim
    entries = {(i, j): nijenhuis_apply(T, frame[i], frame[j], T2)
               for i in range(n) for j in range(i + 1, n)}
    return BilinearFrameTable(T.chart, entries)


class FrameCalculus:
    """Memoized brackets and Nijenhuis values for one F-structure.

    Every quantity is a pure function of its arguments, so the caches are
    invisible to callers.  Frame arguments are addressed by a (tensor name,
    index) pair, e.g. ``("l", 2)`` is l applied to the third frame field and
    ``("", 2)`` is the frame field itself.
    """

    def __init__(self, S, extra: dict | None = None):
        self.S = S
        self.chart = S.chart
        self.n = S.chart.dim
        self.tensors = {"F": S.F, "F2": S.F2, "l": S.l, "m": S.m}
        if extra:
            self.tensors.update(extra)
        self._squares: dict = {"F": S.F2, "l": S.l @ S.l, "m": S.m @ S.m}
        self.frame = coordinate_frame(S.chart)
        self._fields: dict = {}
        self._brackets: dict = {}
        self._nij: dict = {}
        self._acts: dict = {}

    def add_tensor(self, name: str, T: TensorField11):
        self.tensors[name] = T

    def field(self, name: str, i: int) -> VectorField:
        key = (name, i)
        v = self._fields.get(key)
        if v is None:
            v = self.frame[i] if name == "" else self.tensors[name] @ self.frame[i]
            self._fields[key] = v
        return v

    def bracket(self, a, b) -> VectorField:
        """Bracket of two addressed frame fields."""
        key = (a, b)
        v = self._brackets.get(key)
        if v is None:
            rkey = (b, a)
            if rkey in self._brackets:
                v = -self._brackets[rkey]
            else:
                v = lie_bracket(self.field(*a), self.field(*b))
            self._brackets[key] = v
        return v

    def act(self, name: str, X: VectorField) -> VectorField:
        key = (name, X)
        v = self._acts.get(key)
        if v is None:
            v = self.tensors[name] @ X
            self._acts[key] = v
        return v

    def square(self, name: str) -> TensorField11:
        T2 = self._squares.get(name)
        if T2 is None:
            T = self.tensors[name]
            T2 = self._squares[name] = T @ T
        return T2

    def N(self, name: str, a, b) -> VectorField:
        """N_T on addressed frame fields, T given by name."""
        key = (name, a, b)
        v = self._nij.get(key)
        if v is None:
            rkey = (name, b, a)
            if rkey in self._nij:
                v = -self._nij[rkey]
            else:
                v = nijenhuis_apply(self.tensors[name], self.field(*a), self.field(*b), self.square(name))
            self._nij[key] = v
        return v

    def pairs(self, ordered: bool = False):
        """Frame index pairs: i < j for antisymmetric maps, all (i, j) otherwise."""
        if ordered:
            return list(product(range(self.n), repeat=2))
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    def check(self, name: str, lhs, rhs=None, ordered: bool = False) -> IdentityCheck:
        """lhs(i, j) == rhs(i, j) on every frame pair (rhs omitted means zero)."""
        for i, j in self.pairs(ordered):
            d = lhs(i, j)
            if rhs is not None:
                d = d - rhs(i, j)
            if not d.is_zero():
                return IdentityCheck(name, False, (i, j), str(d))
        return IdentityCheck(name, True)

    def vanishes(self, name: str, fn, ordered: bool = False) -> IdentityCheck:
        return self.check(name, fn, None, ordered)


def nijenhuis_identity_suite(S) -> SuiteResult:
    """Unconditional identities between N_F, N_l, N_m and brackets of projected fields."""
    c = S.calc
    N, B, act = c.N, c.bracket, c.act
    L = lambda i: ("l", i)
    M = lambda i: ("m", i)
    Fi = lambda i: ("F", i)
    F2i = lambda i: ("F2", i)
    E = lambda i: ("", i)

    checks = [
        _both("N_F(mX,mY)=F^2[mX,mY]=lN_F(mX,mY)",
              c.check("", lambda i, j: N("F", M(i), M(j)), lambda i, j: act("F2", B(M(i), M(j)))),
              c.check("", lambda i, j: act("l", N("F", M(i), M(j))), lambda i, j: act("F2", B(M(i), M(j))))),
        c.check("mN_F(X,Y)=m[FX,FY]",
                lambda i, j: act("m", N("F", E(i), E(j))), lambda i, j: act("m", B(Fi(i), Fi(j)))),
        c.check("mN_F(FX,FY)=m[F^2X,F^2Y]",
                lambda i, j: act("m", N("F", Fi(i), Fi(j))), lambda i, j: act("m", B(F2i(i), F2i(j)))),
        c.check("mN_F(lX,lY)=m[FX,FY]",
                lambda i, j: act("m", N("F", L(i), L(j))), lambda i, j: act("m", B(Fi(i), Fi(j)))),
        _both("N_l(X,Y)=N_m(X,Y)=m[lX,lY]+l[mX,mY]",
              c.check("", lambda i, j: N("l", E(i), E(j)), lambda i, j: N("m", E(i), E(j))),
              c.check("", lambda i, j: N("l", E(i), E(j)),
                      lambda i, j: act("m", B(L(i), L(j))) + act("l", B(M(i), M(j))))),
        c.check("N_l(lX,lY)=m[lX,lY]",
                lambda i, j: N("l", L(i), L(j)), lambda i, j: act("m", B(L(i), L(j)))),
        c.check("N_l(mX,mY)=l[mX,mY]",
                lambda i, j: N("l", M(i), M(j)), lambda i, j: act("l", B(M(i), M(j)))),
        c.check("N_l(X,Y)=N_l(lX,lY)+N_l(mX,mY)",
                lambda i, j: N("l", E(i), E(j)), lambda i, j: N("l", L(i), L(j)) + N("l", M(i), M(j))),
        c.check("mN_F(X,Y)=N_l(FX,FY)",
                lambda i, j: act("m", N("F", E(i), E(j))), lambda i, j: N("l", Fi(i), Fi(j))),
        _both("N_l(lX,mY)=N_l(mX,lY)=0",
              c.vanishes("", lambda i, j: N("l", L(i), M(j)), ordered=True),
              c.vanishes("", lambda i, j: N("l", M(i), L(j)), ordered=True)),
        c.check("N_F(mX,mY)=F^2N_l(mX,mY)",
                lambda i, j: N("F", M(i), M(j)), lambda i, j: act("F2", N("l", M(i), M(j)))),
    ]
    return SuiteResult("Nijenhuis identities", checks)


def integrable_consequences(S) -> SuiteResult:
    """Relations that hold whenever N_F vanishes; not applicable otherwise."""
    c = S.calc
    N, B, act = c.N, c.bracket, c.act
    E = lambda i: ("", i)
    Fi = lambda i: ("F", i)
    if not c.vanishes("N_F=0", lambda i, j: N("F", E(i), E(j))).passed:
        return SuiteResult("integrable-F consequences", [], applicable=False)
    c.add_tensor("Q", S.root_factor)
    checks = [
        c.check("F[X,Y]=Q[FX,FY]+l([FX,Y]+[X,FY])",
                lambda i, j: act("F", B(E(i), E(j))),
                lambda i, j: act("Q", B(Fi(i), Fi(j))) + act("l", B(Fi(i), E(j)) + B(E(i), Fi(j)))),
        c.check("[FX,FY]=l[FX,FY]",
                lambda i, j: B(Fi(i), Fi(j)), lambda i, j: act("l", B(Fi(i), Fi(j)))),
        c.vanishes("m[FX,FY]=0", lambda i, j: act("m", B(Fi(i), Fi(j)))),
    ]
    return SuiteResult("integrable-F consequences", checks)


def _both(name, a: IdentityCheck, b: IdentityCheck) -> IdentityCheck:
    first = a if not a.passed else b
    return IdentityCheck(name, a.passed and b.passed, first.witness, first.residual)
