"""Exact F-structure instances built from companion matrices.

A matrix whose minimal polynomial divides t*q(t), with
q(t) = alpha*t^K + beta*t^(K-1) + 1, satisfies the structure equation.  We
take block-diagonal matrices of companion blocks of q and zero blocks and
conjugate them by an invertible matrix P.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from fstruct.chart import ChartManifold
from fstruct.expr import Expr
from fstruct.fstructure import FStructure, StructureError, verify_structure_equation
from fstruct.tensor import TensorField11

CONJUGATIONS = ("none", "constant", "unimodular")


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    K: int
    alpha: Fraction
    beta: Fraction
    kernel_dim: int | None = None
    conjugation: str = "none"
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.K < 3:
            raise ValueError(f"K must be at least 3, got {self.K}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.conjugation not in CONJUGATIONS:
            raise ValueError(f"conjugation must be one of {CONJUGATIONS}")
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("alpha and beta are both zero: only F = 0 satisfies the equation")

    @property
    def block_size(self) -> int:
        """Degree of q, which is K unless alpha = 0."""
        return self.K if self.alpha != 0 else self.K - 1

    def layout(self) -> tuple[int, int]:
        """(number of companion blocks, kernel dimension)."""
        d = self.block_size
        if self.kernel_dim is None:
            blocks = self.n // d
            kernel = self.n - blocks * d
        else:
            kernel = self.kernel_dim
            if kernel < 0 or (self.n - kernel) % d:
                raise ValueError(
                    f"n - kernel_dim = {self.n - kernel} is not a multiple of the block size {d}")
            blocks = (self.n - kernel) // d
        if blocks < 1:
            raise ValueError(f"n = {self.n} leaves no room for a companion block of size {d}")
        return blocks, kernel


@dataclass(frozen=True)
class Instance:
    spec: GeneratorSpec
    S: FStructure
    P: TensorField11
    P_inv: TensorField11
    Fhat: TensorField11 | None


def companion(spec: GeneratorSpec) -> list[list[Fraction]]:
    """Companion matrix of q(t) divided by its leading coefficient."""
    d = spec.block_size
    # coefficients of q from t^0 up to t^d
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[0] = Fraction(1)
    coeffs[spec.K - 1] += spec.beta
    if spec.alpha != 0:
        coeffs[spec.K] += spec.alpha
    lead = coeffs[d]
    C = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = Fraction(1)
    for i in range(d):
        C[i][d - 1] = -coeffs[i] / lead
    return C


def block_matrix(spec: GeneratorSpec) -> list[list[Fraction]]:
    blocks, kernel = spec.layout()
    d = spec.block_size
    C = companion(spec)
    M = [[Fraction(0)] * spec.n for _ in range(spec.n)]
    for b in range(blocks):
        o = b * d
        for i in range(d):
            for j in range(d):
                M[o + i][o + j] = C[i][j]
    return M


def _rotation_block(n: int, r: int) -> list[list[Fraction]]:
    J = [[Fraction(0)] * n for _ in range(n)]
    for k in range(0, r, 2):
        J[k][k + 1] = Fraction(1)
        J[k + 1][k] = Fraction(-1)
    return J


def default_chart(n: int) -> ChartManifold:
    return ChartManifold(tuple(f"x{i + 1}" for i in range(n)), ())


def _invert(M: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _constant_conjugator(n: int, rng: random.Random):
    while True:
        P = [[Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(n)] for _ in range(n)]
        Pi = _invert(P)
        if Pi is not None:
            return P, Pi


def _random_poly(chart: ChartManifold, rng: random.Random) -> Expr:
    """A small polynomial in one or two chart variables, never constant."""
    names = rng.sample(chart.vars, min(len(chart.vars), rng.choice((1, 1, 2))))
    out = chart.zero()
    for name in names:
        v = chart.expr(name)
        out = out + rng.choice((1, -1, 2)) * v ** rng.choice((1, 1, 2))
    return out + rng.randint(-1, 1)


def shear_conjugator(chart: ChartManifold, shears) -> tuple[TensorField11, TensorField11]:
    """P = S_1 S_2 ... S_k for shears S = I + c*E_ij (i != j), with its exact inverse."""
    I = TensorField11.identity(chart)
    P, P_inv = I, I
    n = chart.dim
    for i, j, c in shears:
        if i == j:
            raise ValueError("a shear needs i != j")
        rows = [[chart.one() if a == b else chart.zero() for b in range(n)] for a in range(n)]
        rows[i][j] = chart.expr(c)
        S = TensorField11.from_rows(chart, rows)
        rows[i][j] = -chart.expr(c)
        S_inv = TensorField11.from_rows(chart, rows)
        P = P @ S
        P_inv = S_inv @ P_inv
    return P, P_inv


def _unimodular_conjugator(chart: ChartManifold, rng: random.Random):
    n = chart.dim
    count = rng.randint(1, 2)
    shears = []
    for _ in range(count):
        i, j = rng.sample(range(n), 2)
        shears.append((i, j, _random_poly(chart, rng)))
    return shear_conjugator(chart, shears)


def conjugate(chart: ChartManifold, M, P: TensorField11, P_inv: TensorField11) -> TensorField11:
    return P @ TensorField11.from_rows(chart, M) @ P_inv


def generate_instance(spec: GeneratorSpec, chart: ChartManifold | None = None) -> Instance:
    """Build F (and Fhat when the rank is even) for ``spec``, deterministically in the seed."""
    chart = chart or default_chart(spec.n)
    if chart.dim != spec.n:
        raise ValueError("chart dimension differs from spec.n")
    rng = random.Random(spec.seed)
    blocks, _ = spec.layout()
    r = blocks * spec.block_size
    if spec.conjugation == "none":
        P = P_inv = TensorField11.identity(chart)
    elif spec.conjugation == "constant":
        Pc, Pc_inv = _constant_conjugator(spec.n, rng)
        P, P_inv = TensorField11.from_rows(chart, Pc), TensorField11.from_rows(chart, Pc_inv)
    else:
        P, P_inv = _unimodular_conjugator(chart, rng)
    F = conjugate(chart, block_matrix(spec), P, P_inv)
    if not verify_structure_equation(F, spec.alpha, spec.beta, spec.K):
        raise StructureError("generated matrix fails the structure equation")
    S = FStructure.from_matrix(F, spec.alpha, spec.beta, spec.K, seed=spec.seed)
    Fhat = None
    if r % 2 == 0:
        Fhat = conjugate(chart, _rotation_block(spec.n, r), P, P_inv)
    return Instance(spec, S, P, P_inv, Fhat)


def generate(spec: GeneratorSpec) -> FStructure:
    return generate_instance(spec).S


def non_involutive_instance() -> Instance:
    """n = 4, K = 3, (alpha, beta) = (1, -2) conjugated by I + x2*E_41.

    D_l is spanned by d_x1 + x2 d_x4, d_x2, d_x3; the bracket of the first
    two is -d_x4, which lies outside D_l.
    """
    spec = GeneratorSpec(4, 3, 1, -2, kernel_dim=1, conjugation="unimodular")
    chart = default_chart(4)
    P, P_inv = shear_conjugator(chart, [(3, 0, "x2")])
    F = conjugate(chart, block_matrix(spec), P, P_inv)
    S = FStructure.from_matrix(F, spec.alpha, spec.beta, spec.K)
    return Instance(spec, S, P, P_inv, None)


def fuzz_specs(count: int, seed: int = 0, n_max: int = 6, Ks=(3, 4, 5),
               position_dependent: bool | None = None):
    """Deterministic stream of feasible specs with small rational parameters."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        K = rng.choice(Ks)
        alpha = Fraction(rng.choice((0, 1, -1, 2, 1)), rng.choice((1, 1, 2)))
        beta = Fraction(rng.choice((0, 1, -1, -2, 3)), rng.choice((1, 1, 2)))
        if alpha == 0 and beta == 0:
            continue
        d = K if alpha != 0 else K - 1
        if d > n_max:
            continue
        n = rng.randint(d, n_max)
        if position_dependent is None:
            conj = rng.choice(CONJUGATIONS)
        else:
            conj = "unimodular" if position_dependent else rng.choice(("none", "constant"))
        yield GeneratorSpec(n, K, alpha, beta, None, conj, rng.getrandbits(64))
        produced += 1
