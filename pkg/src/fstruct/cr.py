"""The complex subbundle H = {X - j Fhat X : X in D_l} and its CR conditions.

Complex scalars are pairs of real rational functions; ``j`` is the
imaginary unit.
"""

from __future__ import annotations

from dataclasses import dataclass

from fstruct import linalg
from fstruct.chart import ChartManifold, VectorField, lie_bracket
from fstruct.checks import IdentityCheck, InconsistencyError, SuiteResult
from fstruct.expr import Expr
from fstruct.fstructure import Distribution, FStructure, verify_fhat
from fstruct.nijenhuis import nijenhuis_of
from fstruct.tensor import TensorField11


class ComplexExpr:
    """re + j*im with exact rational-function parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Expr, im: Expr):
        self.re = re
        self.im = im

    def _lift(self, other):
        if isinstance(other, ComplexExpr):
            return other
        return ComplexExpr(self.re * 0 + other, self.re * 0)

    def __add__(self, other):
        o = self._lift(other)
        return ComplexExpr(self.re + o.re, self.im + o.im)

    def __sub__(self, other):
        o = self._lift(other)
        return ComplexExpr(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ComplexExpr(-self.re, -self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o.im.is_zero():
            return ComplexExpr(self.re * o.re, self.im * o.re)
        if self.im.is_zero():
            return ComplexExpr(self.re * o.re, self.re * o.im)
        return ComplexExpr(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, other):
        o = self._lift(other)
        if o.im.is_zero():
            return ComplexExpr(self.re / o.re, self.im / o.re)
        # c^2 + d^2 vanishes identically only when c = d = 0
        norm = o.re * o.re + o.im * o.im
        return ComplexExpr((self.re * o.re + self.im * o.im) / norm,
                           (self.im * o.re - self.re * o.im) / norm)

    def conjugate(self) -> ComplexExpr:
        return ComplexExpr(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return self.is_zero()
        if isinstance(other, ComplexExpr):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    __hash__ = None

    def weight(self) -> int:
        return sum(len(p.terms) for p in (self.re.num, self.re.den, self.im.num, self.im.den))

    def __str__(self):
        if self.im.is_zero():
            return str(self.re)
        if self.re.is_zero():
            return f"j*({self.im})"
        return f"({self.re}) + j*({self.im})"

    __repr__ = __str__


@dataclass(frozen=True)
class ComplexVectorField:
    re: VectorField
    im: VectorField

    @property
    def chart(self) -> ChartManifold:
        return self.re.chart

    def components(self) -> list[ComplexExpr]:
        return [ComplexExpr(a, b) for a, b in zip(self.re.components, self.im.components)]

    def conjugate(self) -> ComplexVectorField:
        return ComplexVectorField(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.components()]


def complex_bracket(P: ComplexVectorField, Q: ComplexVectorField) -> ComplexVectorField:
    """Complex-bilinear extension: [A+jB, C+jD] = [A,C]-[B,D] + j([A,D]+[B,C])."""
    A, B, C, D = P.re, P.im, Q.re, Q.im
    return ComplexVectorField(lie_bracket(A, C) - lie_bracket(B, D),
                              lie_bracket(A, D) + lie_bracket(B, C))


@dataclass(frozen=True)
class ComplexFrameBundle:
    chart: ChartManifold
    basis: tuple[ComplexVectorField, ...]
    Dl: Distribution | None = None

    @property
    def complex_dim(self) -> int:
        return len(self.basis)

    def conjugate(self) -> ComplexFrameBundle:
        return ComplexFrameBundle(self.chart, tuple(b.conjugate() for b in self.basis), self.Dl)

    def contains(self, v: ComplexVectorField) -> bool:
        return linalg.in_span([b.components() for b in self.basis], v.components())


def build_H(S: FStructure, Fhat: TensorField11, Dl: Distribution | None = None) -> ComplexFrameBundle:
    """Independent generators e - j Fhat e for the basis fields e of D_l."""
    fh = verify_fhat(S, Fhat)
    if not fh.passed:
        bad = fh.failures[0]
        raise ValueError(f"Fhat fails verification ({bad.name}); cannot build H")
    if S.r % 2:
        raise ValueError(f"rank of F is odd ({S.r}); no complex structure on D_l")
    Dl = Dl or S.Dl
    gens = [ComplexVectorField(e, -(Fhat @ e)) for e in Dl.basis]
    if not gens:
        return ComplexFrameBundle(S.chart, (), Dl)
    cols = linalg.pivot_columns(linalg.columns_to_rows([g.components() for g in gens]))
    H = ComplexFrameBundle(S.chart, tuple(gens[k] for k in cols), Dl)
    if 2 * H.complex_dim != S.r:
        raise InconsistencyError(f"H has complex dimension {H.complex_dim}, expected {S.r // 2}", H)
    return H


def check_disjointness(H: ComplexFrameBundle) -> bool:
    """H and its conjugate meet only in zero; real parts span D_l when it is known."""
    stacked = [b.components() for b in H.basis] + [b.conjugate().components() for b in H.basis]
    if stacked and linalg.vectors_rank(stacked) != 2 * H.complex_dim:
        return False
    if H.Dl is not None:
        dl = [b.components for b in H.Dl.basis]
        parts = [b.re.components for b in H.basis] + [b.im.components for b in H.basis]
        if linalg.vectors_rank(parts) != H.Dl.dim if parts else H.Dl.dim != 0:
            return False
        if parts and linalg.vectors_rank(dl + parts) != H.Dl.dim:
            return False
    return True


def check_involutive(H: ComplexFrameBundle) -> bool:
    basis = [b.components() for b in H.basis]
    for a in range(len(H.basis)):
        for b in range(a, len(H.basis)):
            br = complex_bracket(H.basis[a], H.basis[b])
            if not br.is_zero() and not linalg.in_span(basis, br.components()):
                return False
    return True


def eigen_check(H: ComplexFrameBundle, Fhat: TensorField11) -> bool:
    """Every generator P satisfies Fhat P = j P."""
    for P in H.basis:
        # Fhat(A + jB) = FhatA + j FhatB must equal jA - B
        if Fhat @ P.re != -P.im or Fhat @ P.im != P.re:
            return False
    return True


def complex_structure_identities(S: FStructure, Fhat: TensorField11,
                                 Dl: Distribution | None = None) -> SuiteResult:
    """l([FhatX,Y]+[X,FhatY]) = [FhatX,Y]+[X,FhatY] and l[FhatX,FhatY] = [FhatX,FhatY] on D_l.

    Both hold whenever D_l is involutive; a failure witnesses that it is not.
    """
    Dl = Dl or S.Dl
    basis = Dl.basis
    images = [Fhat @ X for X in basis]

    def run(name, fn):
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                v = fn(a, b)
                d = S.l @ v - v
                if not d.is_zero():
                    return IdentityCheck(name, False, (a, b), str(d))
        return IdentityCheck(name, True)

    checks = [
        run("l([FhatX,Y]+[X,FhatY])=[FhatX,Y]+[X,FhatY]",
            lambda a, b: lie_bracket(images[a], basis[b]) + lie_bracket(basis[a], images[b])),
        run("l[FhatX,FhatY]=[FhatX,FhatY]", lambda a, b: lie_bracket(images[a], images[b])),
    ]
    return SuiteResult("complex structure on D_l", checks)


@dataclass
class CRResult:
    fhat: SuiteResult
    complex_dim: int
    fhat_integrable: bool
    disjoint: bool
    involutive: bool
    eigen: bool
    identities: SuiteResult
    basis: list[list[str]]

    @property
    def is_cr(self) -> bool:
        return self.disjoint and self.involutive

    def to_dict(self) -> dict:
        return {
            "fhat_checks": self.fhat.to_dict(),
            "complex_dim": self.complex_dim,
            "H_basis": self.basis,
            "fhat_integrable": self.fhat_integrable,
            "disjoint": self.disjoint,
            "involutive": self.involutive,
            "eigenbundle": self.eigen,
            "identities": self.identities.to_dict(),
            "is_cr": self.is_cr,
        }


def cr_analysis(S: FStructure, Fhat: TensorField11) -> CRResult:
    fh = verify_fhat(S, Fhat)
    H = build_H(S, Fhat)
    integrable = nijenhuis_of(Fhat).is_zero()
    involutive = check_involutive(H)
    if integrable and not involutive:
        raise InconsistencyError("N_Fhat vanishes but H is not involutive", H)
    if check_involutive(H.conjugate()) != involutive:
        raise InconsistencyError("H and its conjugate disagree on involutivity", H)
    return CRResult(
        fhat=fh,
        complex_dim=H.complex_dim,
        fhat_integrable=integrable,
        disjoint=check_disjointness(H),
        involutive=involutive,
        eigen=eigen_check(H, Fhat),
        identities=complex_structure_identities(S, Fhat),
        basis=[b.to_strings() for b in H.basis],
    )


def check_cr(S: FStructure, Fhat: TensorField11) -> bool:
    """Involutivity of H; asserts that a vanishing N_Fhat forces it."""
    return cr_analysis(S, Fhat).involutive
