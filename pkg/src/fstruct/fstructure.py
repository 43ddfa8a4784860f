"""Polynomial F-structures  alpha*F^(K+1) + beta*F^K + F = 0  and their projectors.

``l = -(alpha*F^K + beta*F^(K-1))`` and ``m = I - l`` split the tangent
bundle into the complementary distributions ``D_l = Im l`` and ``D_m = Im m``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from fstruct import linalg
from fstruct.chart import ChartManifold, VectorField
from fstruct.checks import IdentityCheck, SuiteResult
from fstruct.tensor import TensorField11


class StructureError(ValueError):
    """The matrix does not satisfy the structure equation (or is otherwise invalid)."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class RankWarning(UserWarning):
    pass


def _check_params(K: int):
    if not isinstance(K, int) or isinstance(K, bool):
        raise TypeError("K must be an integer")
    if K < 3:
        raise ValueError(f"K must be at least 3, got {K}")


def _lincomb(*pairs) -> TensorField11:
    out = None
    for c, T in pairs:
        if c == 0:
            continue
        term = T if c == 1 else T.scale(c)
        out = term if out is None else out + term
    return out


def structure_residual(F: TensorField11, alpha, beta, K: int, powers=None) -> TensorField11:
    """alpha*F^(K+1) + beta*F^K + F."""
    _check_params(K)
    alpha, beta = Fraction(alpha), Fraction(beta)
    P = powers or F.powers(K + 1)
    res = _lincomb((alpha, P[K + 1]), (beta, P[K]), (1, P[1]))
    return res if res is not None else TensorField11.zero(F.chart)


def verify_structure_equation(F: TensorField11, alpha, beta, K: int) -> bool:
    if not isinstance(F, TensorField11):
        raise TypeError("F must be a TensorField11")
    return structure_residual(F, alpha, beta, K).is_zero()


@dataclass
class RankAnalysis:
    rank: int
    points: list
    numeric_ranks: list[int]
    warnings: list[str] = field(default_factory=list)


def rank_analysis(T: TensorField11, samples: int = 3, seed: int = 0) -> RankAnalysis:
    """Rank over the rational-function field, cross-checked at sample points."""
    r = linalg.rank(T.rows)
    points = T.chart.sample_points(samples, seed=seed, extra=list(T.entries()))
    notes = []
    if len(points) < samples:
        notes.append(f"only {len(points)} of {samples} admissible sample points found")
    numeric = []
    for pt in points:
        k = linalg.rank(T.evaluate(pt))
        numeric.append(k)
        if k > r:
            raise ArithmeticError(f"numeric rank {k} exceeds generic rank {r} at {pt}")
        if k < r:
            notes.append(f"rank drops to {k} at {tuple(str(c) for c in pt)} (generic rank {r})")
    return RankAnalysis(r, points, numeric, notes)


def generic_rank(T: TensorField11, samples: int = 3, seed: int = 0) -> int:
    res = rank_analysis(T, samples, seed)
    for note in res.warnings:
        warnings.warn(note, RankWarning, stacklevel=2)
    return res.rank


@dataclass(frozen=True)
class Distribution:
    chart: ChartManifold
    basis: tuple[VectorField, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: VectorField) -> bool:
        return linalg.in_span([b.components for b in self.basis], v.components)


def distribution_of(P: TensorField11) -> Distribution:
    """Image of an idempotent tensor, as a basis of independent columns."""
    if P @ P != P:
        raise ValueError("distribution_of needs an idempotent tensor (P @ P == P)")
    cols = linalg.pivot_columns(P.rows)
    return Distribution(P.chart, tuple(P.column(j) for j in cols))


@dataclass(frozen=True, eq=False)
class FStructure:
    """A verified F-structure on a chart.  Build with :meth:`from_matrix`."""

    chart: ChartManifold
    F: TensorField11
    alpha: Fraction
    beta: Fraction
    K: int
    l: TensorField11
    m: TensorField11
    r: int
    powers: tuple[TensorField11, ...] = field(repr=False)
    warnings: tuple[str, ...] = ()

    @classmethod
    def from_matrix(cls, F: TensorField11, alpha, beta, K: int, *, rank_samples: int = 3,
                    seed: int = 0, allow_zero: bool = False) -> FStructure:
        """Verify the structure equation and build l, m and the rank.

        ``allow_zero`` admits F = 0 (so l = 0, m = I); it exists only to
        exercise degenerate code paths.
        """
        _check_params(K)
        alpha, beta = Fraction(alpha), Fraction(beta)
        if F.is_zero() and not allow_zero:
            raise StructureError("F must be a nonzero tensor")
        P = F.powers(K + 1)
        res = structure_residual(F, alpha, beta, K, powers=P)
        bad = res.first_nonzero()
        if bad is not None:
            i, j, e = bad
            raise StructureError(
                f"structure equation fails: entry ({i + 1},{j + 1}) of "
                f"alpha*F^{K + 1} + beta*F^{K} + F is {e}", residual=res)
        l, m = _projectors(F, alpha, beta, K, P)
        ra = rank_analysis(F, rank_samples, seed)
        return cls(F.chart, F, alpha, beta, K, l, m, ra.rank, tuple(P), tuple(ra.warnings))

    @property
    def n(self) -> int:
        return self.chart.dim

    @property
    def F2(self) -> TensorField11:
        return self.powers[2]

    @cached_property
    def root_factor(self) -> TensorField11:
        """alpha*F^(K-1) + beta*F^(K-2); multiplying it by F gives -l."""
        P = self.powers
        out = _lincomb((self.alpha, P[self.K - 1]), (self.beta, P[self.K - 2]))
        return out if out is not None else TensorField11.zero(self.chart)

    @cached_property
    def Dl(self) -> Distribution:
        return distribution_of(self.l)

    @cached_property
    def Dm(self) -> Distribution:
        return distribution_of(self.m)

    @cached_property
    def calc(self):
        from fstruct.nijenhuis import FrameCalculus
        return FrameCalculus(self)


def _projectors(F, alpha, beta, K, P):
    a = _lincomb((alpha, P[K]), (beta, P[K - 1]))
    if a is None:
        a = TensorField11.zero(F.chart)
    l = -a
    m = TensorField11.identity(F.chart) - l
    return l, m


def build_projectors(S: FStructure) -> tuple[TensorField11, TensorField11]:
    """Recompute (l, m) from F, alpha, beta, K."""
    return _projectors(S.F, S.alpha, S.beta, S.K, S.powers)


def _matrix_check(name: str, lhs: TensorField11, rhs: TensorField11) -> IdentityCheck:
    diff = lhs - rhs
    bad = diff.first_nonzero()
    if bad is None:
        return IdentityCheck(name, True)
    i, j, e = bad
    return IdentityCheck(name, False, (i, j), str(e))


def check_projector_identities(S: FStructure) -> SuiteResult:
    I = TensorField11.identity(S.chart)
    Z = TensorField11.zero(S.chart)
    l, m, F = S.l, S.m, S.F
    lF, Fl, mF, Fm = l @ F, F @ l, m @ F, F @ m
    lm, ml = l @ m, m @ l
    checks = [
        _matrix_check("l+m=I", l + m, I),
        _matrix_check("l^2=l", l @ l, l),
        _matrix_check("m^2=m", m @ m, m),
        _both("lF=Fl=F", _matrix_check("", lF, F), _matrix_check("", Fl, F)),
        _both("mF=Fm=0", _matrix_check("", mF, Z), _matrix_check("", Fm, Z)),
        _both("lm=ml=0", _matrix_check("", lm, Z), _matrix_check("", ml, Z)),
    ]
    return SuiteResult("projector identities", checks)


def _both(name, a: IdentityCheck, b: IdentityCheck) -> IdentityCheck:
    first = a if not a.passed else b
    return IdentityCheck(name, a.passed and b.passed, first.witness, first.residual)


def check_decomposition(S: FStructure) -> SuiteResult:
    """Rank and image relations between F, l and m."""
    n, r = S.n, S.r
    rl = linalg.rank(S.l.rows)
    rm = linalg.rank(S.m.rows)
    Dl, Dm = S.Dl, S.Dm
    stacked = [b.components for b in Dl.basis + Dm.basis]
    lcols = [c.components for c in S.l.columns()]
    Fcols = [c.components for c in S.F.columns()]
    ml_zero = (S.m @ S.l).is_zero()
    lm_zero = (S.l @ S.m).is_zero()

    def chk(name, ok, detail):
        return IdentityCheck(name, ok, None, None if ok else detail)

    checks = [
        chk("rank(l)+rank(m)=n", rl + rm == n, f"{rl}+{rm} != {n}"),
        chk("rank(l)=rank(F)", rl == r, f"{rl} != {r}"),
        chk("dim D_l=r", Dl.dim == r, f"{Dl.dim} != {r}"),
        chk("dim D_m=n-r", Dm.dim == n - r, f"{Dm.dim} != {n - r}"),
        chk("Im l=ker m", ml_zero, "m l != 0"),
        chk("Im m=ker l", lm_zero, "l m != 0"),
        chk("Im l=Im F", linalg.vectors_rank(lcols + Fcols) == r, "column spans differ"),
        chk("D_l+D_m=TM", linalg.vectors_rank(stacked) == n if stacked else n == 0,
            "bases do not span"),
    ]
    return SuiteResult("decomposition", checks)


def verify_fhat(S: FStructure, Fhat: TensorField11) -> SuiteResult:
    """Check a supplied square root: Fhat^2 = -l, l Fhat = Fhat l = Fhat, m Fhat = Fhat m = 0."""
    if Fhat.chart.vars != S.chart.vars:
        raise ValueError("Fhat lives on a different chart")
    Z = TensorField11.zero(S.chart)
    l, m = S.l, S.m
    checks = [
        _matrix_check("Fhat^2=-l", Fhat @ Fhat, -l),
        _both("l Fhat=Fhat l=Fhat", _matrix_check("", l @ Fhat, Fhat), _matrix_check("", Fhat @ l, Fhat)),
        _both("m Fhat=Fhat m=0", _matrix_check("", m @ Fhat, Z), _matrix_check("", Fhat @ m, Z)),
        IdentityCheck("rank even", S.r % 2 == 0, None, None if S.r % 2 == 0 else f"r = {S.r}"),
    ]
    return SuiteResult("Fhat", checks)
