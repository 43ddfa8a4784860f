"""Integrability of D_l, D_m and of the F-structure itself.

Each notion is decided by several criteria that are equivalent by theorem.
They are computed independently and must agree; any disagreement is an
implementation bug and raises :class:`~fstruct.checks.InconsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from fstruct import linalg
from fstruct.chart import lie_bracket
from fstruct.checks import IdentityCheck, InconsistencyError
from fstruct.fstructure import Distribution, FStructure


@dataclass
class Criterion:
    id: str
    verdict: bool
    witness: tuple | None = None
    residual: str | None = None

    @classmethod
    def from_check(cls, chk: IdentityCheck) -> Criterion:
        return cls(chk.name, chk.passed, chk.witness, chk.residual)

    def to_dict(self) -> dict:
        out = {"id": self.id, "verdict": self.verdict}
        if not self.verdict and self.witness is not None:
            out["witness"] = list(self.witness)
            out["residual"] = self.residual
        return out


@dataclass
class Decision:
    notion: str
    verdict: bool
    criteria: list[Criterion]
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "notion": self.notion,
            "verdict": self.verdict,
            "consistent": self.consistent,
            "criteria": [c.to_dict() for c in self.criteria],
        }


def _decide(notion: str, criteria: list[Criterion], strict: bool) -> Decision:
    verdicts = {c.verdict for c in criteria}
    consistent = len(verdicts) == 1
    d = Decision(notion, criteria[0].verdict, criteria, consistent)
    if strict and not consistent:
        raise InconsistencyError(
            f"criteria for {notion} disagree: "
            + ", ".join(f"{c.id}={c.verdict}" for c in criteria), d)
    return d


def _frame(S: FStructure):
    c = S.calc
    return c, c.N, c.bracket, c.act


L = lambda i: ("l", i)
M = lambda i: ("m", i)
Fi = lambda i: ("F", i)
E = lambda i: ("", i)


def decide_Dl(S: FStructure, strict: bool = True) -> Decision:
    """Seven equivalent tests for involutivity of D_l = Im l."""
    c, N, B, act = _frame(S)
    checks = [
        c.vanishes("m[lX,lY]=0", lambda i, j: act("m", B(L(i), L(j)))),
        c.vanishes("N_l(lX,lY)=0", lambda i, j: N("l", L(i), L(j))),
        c.vanishes("mN_F(X,Y)=0", lambda i, j: act("m", N("F", E(i), E(j)))),
        c.check("N_F(X,Y)=lN_F(X,Y)", lambda i, j: N("F", E(i), E(j)),
                lambda i, j: act("l", N("F", E(i), E(j)))),
        c.vanishes("mN_F(FX,FY)=0", lambda i, j: act("m", N("F", Fi(i), Fi(j)))),
        c.vanishes("mN_F(lX,lY)=0", lambda i, j: act("m", N("F", L(i), L(j)))),
        c.vanishes("N_l(FX,FY)=0", lambda i, j: N("l", Fi(i), Fi(j))),
    ]
    return _decide("Dl", [Criterion.from_check(k) for k in checks], strict)


def decide_Dm(S: FStructure, strict: bool = True) -> Decision:
    """Four equivalent tests for involutivity of D_m = Im m."""
    c, N, B, act = _frame(S)
    checks = [
        c.vanishes("l[mX,mY]=0", lambda i, j: act("l", B(M(i), M(j)))),
        c.vanishes("N_l(mX,mY)=0", lambda i, j: N("l", M(i), M(j))),
        c.vanishes("N_F(mX,mY)=0", lambda i, j: N("F", M(i), M(j))),
        c.vanishes("lN_F(mX,mY)=0", lambda i, j: act("l", N("F", M(i), M(j)))),
    ]
    return _decide("Dm", [Criterion.from_check(k) for k in checks], strict)


def decide_both(S: FStructure, strict: bool = True, dl: Decision | None = None,
                dm: Decision | None = None) -> Decision:
    c, N, B, act = _frame(S)
    dl = dl or decide_Dl(S, strict)
    dm = dm or decide_Dm(S, strict)
    checks = [
        c.vanishes("N_l(X,Y)=0", lambda i, j: N("l", E(i), E(j))),
        c.check("N_F(X,Y)=lN_F(lX,lY)+N_F(lX,mY)+N_F(mX,lY)",
                lambda i, j: N("F", E(i), E(j)),
                lambda i, j: act("l", N("F", L(i), L(j))) + N("F", L(i), M(j)) + N("F", M(i), L(j))),
    ]
    crits = [Criterion.from_check(k) for k in checks]
    crits.append(Criterion("Dl and Dm", dl.verdict and dm.verdict))
    return _decide("both", crits, strict)


def decide_partial(S: FStructure, strict: bool = True) -> Decision:
    c, N, B, act = _frame(S)
    checks = [
        c.vanishes("N_F(lX,lY)=0", lambda i, j: N("F", L(i), L(j))),
        c.vanishes("N_F(FX,FY)=0", lambda i, j: N("F", Fi(i), Fi(j))),
    ]
    return _decide("partial", [Criterion.from_check(k) for k in checks], strict)


def decide_complete(S: FStructure, strict: bool = True, dm: Decision | None = None,
                    partial: Decision | None = None) -> Decision:
    c, N, B, act = _frame(S)
    dm = dm or decide_Dm(S, strict)
    partial = partial or decide_partial(S, strict)
    chk = c.check("N_F(X,Y)=N_F(lX,mY)+N_F(mX,lY)", lambda i, j: N("F", E(i), E(j)),
                  lambda i, j: N("F", L(i), M(j)) + N("F", M(i), L(j)))
    crits = [Criterion.from_check(chk), Criterion("Dm and partial", dm.verdict and partial.verdict)]
    return _decide("complete", crits, strict)


def decide_full(S: FStructure, strict: bool = True, complete: Decision | None = None) -> Decision:
    c, N, B, act = _frame(S)
    complete = complete or decide_complete(S, strict)
    direct = c.vanishes("N_F(X,Y)=0", lambda i, j: N("F", E(i), E(j)))
    mixed = c.check("N_F(lX,mY)=-N_F(mX,lY)", lambda i, j: N("F", L(i), M(j)),
                    lambda i, j: -N("F", M(i), L(j)))
    crits = [
        Criterion.from_check(direct),
        Criterion("complete and N_F(lX,mY)=-N_F(mX,lY)", complete.verdict and mixed.passed,
                  mixed.witness, mixed.residual),
    ]
    return _decide("integrable", crits, strict)


def frobenius_crosscheck(D: Distribution) -> bool:
    """Direct involutivity test: every bracket of basis fields lies in the span."""
    basis = [b.components for b in D.basis]
    if linalg.vectors_rank(basis) != len(basis):
        raise ValueError("distribution basis is not linearly independent")
    for a in range(len(D.basis)):
        for b in range(a + 1, len(D.basis)):
            br = lie_bracket(D.basis[a], D.basis[b])
            if not linalg.in_span(basis, br.components):
                return False
    return True


@dataclass
class IntegrabilityReport:
    Dl_integrable: bool
    Dm_integrable: bool
    both_distributions: bool
    partially_integrable: bool
    completely_integrable: bool
    F_integrable: bool
    decisions: list[Decision]
    frobenius: dict
    consistency_ok: bool
    problems: list[str] = field(default_factory=list)

    @property
    def criteria_evidence(self) -> dict:
        return {d.notion: d.criteria for d in self.decisions}

    def flags(self) -> dict:
        return {
            "Dl_integrable": self.Dl_integrable,
            "Dm_integrable": self.Dm_integrable,
            "partially": self.partially_integrable,
            "completely": self.completely_integrable,
            "integrable": self.F_integrable,
        }

    def to_dict(self) -> dict:
        return {
            "flags": self.flags(),
            "both_distributions": self.both_distributions,
            "consistency_ok": self.consistency_ok,
            "problems": list(self.problems),
            "frobenius": dict(self.frobenius),
            "evidence": [d.to_dict() for d in self.decisions],
        }


def analyze(S: FStructure, strict: bool = True) -> IntegrabilityReport:
    """Decide every integrability notion and cross-check the results.

    With ``strict`` (the default) any disagreement raises
    :class:`InconsistencyError` carrying the partially built report.
    """
    dl = decide_Dl(S, strict=False)
    dm = decide_Dm(S, strict=False)
    both = decide_both(S, strict=False, dl=dl, dm=dm)
    partial = decide_partial(S, strict=False)
    complete = decide_complete(S, strict=False, dm=dm, partial=partial)
    full = decide_full(S, strict=False, complete=complete)
    decisions = [dl, dm, both, partial, complete, full]

    problems = [f"criteria for {d.notion} disagree" for d in decisions if not d.consistent]
    frob = {"Dl": frobenius_crosscheck(S.Dl), "Dm": frobenius_crosscheck(S.Dm)}
    if frob["Dl"] != dl.verdict:
        problems.append("direct involutivity of D_l disagrees with the projector criteria")
    if frob["Dm"] != dm.verdict:
        problems.append("direct involutivity of D_m disagrees with the projector criteria")
    implications = [
        (full.verdict, complete.verdict, "integrable => completely"),
        (complete.verdict, partial.verdict, "completely => partially"),
        (partial.verdict, dl.verdict, "partially => Dl"),
        (complete.verdict, dm.verdict, "completely => Dm"),
    ]
    for a, b, label in implications:
        if a and not b:
            problems.append(f"implication violated: {label}")

    report = IntegrabilityReport(
        Dl_integrable=dl.verdict,
        Dm_integrable=dm.verdict,
        both_distributions=both.verdict,
        partially_integrable=partial.verdict,
        completely_integrable=complete.verdict,
        F_integrable=full.verdict,
        decisions=decisions,
        frobenius=frob,
        consistency_ok=not problems,
        problems=problems,
    )
    if strict and problems:
        raise InconsistencyError("; ".join(problems), report)
    return report


# -- classification of (alpha, beta, K) ---------------------------------------


@dataclass(frozen=True)
class Classification:
    case: int | None
    label: str
    matches: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"case": self.case, "label": self.label, "matches": list(self.matches)}


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def _semiprime(k: int) -> tuple[int, int] | None:
    for p in range(2, int(k ** 0.5) + 1):
        if k % p == 0 and _is_prime(p) and _is_prime(k // p):
            return p, k // p
    return None


def _square_root(k: int) -> int | None:
    if k < 1:
        return None
    p = int(k ** 0.5)
    for q in (p - 1, p, p + 1):
        if q >= 1 and q * q == k:
            return q
    return None


def classify(alpha, beta, K: int) -> Classification:
    """Match (alpha, beta, K) against the classical special cases.

    The first matching case wins; ``matches`` lists every case that applies.
    Cases 8 and 9 read ``p1*p2`` as a product of two primes and ``p^2 + 2``
    with any integer ``p >= 1``.
    """
    if not isinstance(K, int) or K < 3:
        raise ValueError(f"K must be an integer >= 3, got {K!r}")
    a, b = Fraction(alpha), Fraction(beta)
    found: list[tuple[int, str]] = []
    if a == 0:
        if b == 1 and K == 3:
            found.append((1, "F^3+F=0"))
        if b == -1 and K == 3:
            found.append((2, "F^3-F=0"))
        if b > 0 and K == 3:
            found.append((3, f"F^3+lambda^2F=0 with lambda^2={1 / b}"))
        if b == 1 and K == 5:
            found.append((4, "F^5+F=0"))
        if b == -1 and K == 5:
            found.append((5, "F^5-F=0"))
    if a == 1 and b == 0:
        found.append((6, f"F^{{K+1}}+F=0 with K={K}"))
    if a == 0 and b == (-1) ** (K + 1):
        found.append((7, f"F^K+(-1)^{{K+1}}F=0 with K={K}"))
    if a == 0 and b == 1:
        sp = _semiprime(K)
        if sp:
            found.append((8, f"F^{{p1p2}}+F=0 with K={sp[0]}*{sp[1]}"))
        p = _square_root(K - 2)
        if p:
            found.append((9, f"F^{{p^2+2}}+F=0 with p={p}"))
    if not found:
        return Classification(None, "generic", ())
    return Classification(found[0][0], found[0][1], tuple(k for k, _ in found))
