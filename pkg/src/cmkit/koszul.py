"""The dictionary between CM quadruples and Koszul-type triples on the line.

A triple (X, i, Y, j(x)) with j(x) = sum_k x^k j_k a polynomial covector
satisfies the commuting square when

    I + XY - YX = sum_k X^k i j_k,

the right-hand side being the only type-correct matrix reading of "i j(X)"
through the framing map f(x) |-> f(X) i.  A homotopy h(x) acts by

    (X, Y, i, j(x))  |->  (X, Y + sum_k X^k i h_k, i, j(x) + x h(x) - h(x) X),

preserves the square, and every valid triple is homotopic to a unique
quadruple with constant j; ``normalize`` computes that representative by
top-degree-down back-substitution.

The fiber of CM points over a fixed framed sheaf (X, i) is the affine
solution set of [X, Y] - i j + I = 0 in (Y, j): a particular solution plus
the span of the homogeneous solutions [X, Y'] = i j'.  It may be empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Field, Matrix, ShapeError, commutator, solve_affine
from .adhm import CMQuadruple, cm_residual


class NotCMPoint(ValueError):
    def __init__(self, residual: Matrix) -> None:
        super().__init__(f"quadruple violates the CM relation; residual {residual}")
        self.residual = residual


class InvalidKoszulTriple(ValueError):
    def __init__(self, residual: Matrix) -> None:
        super().__init__(f"commuting square fails; residual {residual}")
        self.residual = residual


@dataclass(frozen=True)
class PolyCovector:
    """j(x) = sum_k x^k j_k with r x n matrix coefficients, trailing zeros trimmed."""

    coeffs: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ShapeError("need at least one coefficient")
        shape = (self.coeffs[0].rows, self.coeffs[0].cols)
        if any((c.rows, c.cols) != shape for c in self.coeffs):
            raise ShapeError("all coefficients must share one shape")
        if len(self.coeffs) > 1 and self.coeffs[-1].is_zero():
            raise ShapeError("leading coefficient must be nonzero (trim first)")

    @staticmethod
    def from_coeffs(coeffs: list[Matrix]) -> "PolyCovector":
        trimmed = list(coeffs)
        while len(trimmed) > 1 and trimmed[-1].is_zero():
            trimmed.pop()
        return PolyCovector(tuple(trimmed))

    @staticmethod
    def constant(j: Matrix) -> "PolyCovector":
        return PolyCovector((j,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def coeff(self, k: int) -> Matrix:
        zero = Matrix.zeros(self.coeffs[0].rows, self.coeffs[0].cols, self.coeffs[0].field)
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else zero


def framed_poly_action(X: Matrix, i: Matrix, pc: PolyCovector) -> Matrix:
    """sum_k X^k i pc_k: the n x n matrix a polynomial covector induces through the framing."""
    n = X.rows
    acc = Matrix.zeros(n, n, X.field)
    xk = Matrix.identity(n, X.field)
    for k, c in enumerate(pc.coeffs):
        if k > 0:
            xk = xk @ X
        acc = acc + xk @ i @ c
    return acc


@dataclass(frozen=True)
class KoszulTriple:
    """Diagram data (X, i, Y, j(x)); valid iff check_square vanishes."""

    X: Matrix
    i: Matrix
    Y: Matrix
    j: PolyCovector

    def __post_init__(self) -> None:
        n = self.X.rows
        if self.X.cols != n or self.Y.rows != n or self.Y.cols != n:
            raise ShapeError("X and Y must be square of equal size")
        r = self.i.cols
        if self.i.rows != n:
            raise ShapeError("framing block must be n x r")
        if self.j.coeffs[0].rows != r or self.j.coeffs[0].cols != n:
            raise ShapeError("covector coefficients must be r x n")

    @property
    def n(self) -> int:
        return self.X.rows

    @property
    def r(self) -> int:
        return self.i.cols

    @property
    def field(self) -> Field:
        return self.X.field


def from_cm(q: CMQuadruple) -> KoszulTriple:
    """A CM point becomes a triple with constant covector; raises off the CM locus."""
    res = cm_residual(q)
    if not res.is_zero():
        raise NotCMPoint(res)
    return KoszulTriple(q.X, q.i, q.Y, PolyCovector.constant(q.j))


def check_square(kt: KoszulTriple) -> Matrix:
    """I + XY - YX - sum_k X^k i j_k; zero iff the triple is valid."""
    eye = Matrix.identity(kt.n, kt.field)
    return eye + commutator(kt.X, kt.Y) - framed_poly_action(kt.X, kt.i, kt.j)


def apply_homotopy(kt: KoszulTriple, h: PolyCovector) -> KoszulTriple:
    """Act by the homotopy h: shifts Y through the framing and re-dresses j(x)."""
    if h.coeffs[0].rows != kt.r or h.coeffs[0].cols != kt.n:
        raise ShapeError("homotopy coefficients must be r x n")
    new_y = kt.Y + framed_poly_action(kt.X, kt.i, h)
    top = max(kt.j.degree, h.degree + 1)
    new_coeffs = []
    for k in range(top + 1):
        c = kt.j.coeff(k)
        if k >= 1:
            c = c + h.coeff(k - 1)
        c = c - h.coeff(k) @ kt.X
        new_coeffs.append(c)
    return KoszulTriple(kt.X, kt.i, new_y, PolyCovector.from_coeffs(new_coeffs))


def normalizing_homotopy(kt: KoszulTriple) -> PolyCovector:
    """The homotopy that kills every positive-degree coefficient of j(x).

    Back-substitution from the top: h_{d-1} = -j_d, then
    h_{k-1} = h_k X - j_k down to k = 1.  Only this order is consistent with
    the top coefficient having no successor.
    """
    d = kt.j.degree
    zero = Matrix.zeros(kt.r, kt.n, kt.field)
    if d == 0:
        return PolyCovector.constant(zero)
    hs: list[Matrix] = [zero] * d
    hs[d - 1] = -kt.j.coeff(d)
    for k in range(d - 1, 0, -1):
        hs[k - 1] = hs[k] @ kt.X - kt.j.coeff(k)
    return PolyCovector.from_coeffs(hs)


def normalize(kt: KoszulTriple) -> CMQuadruple:
    """The unique CM quadruple homotopic to a valid triple."""
    res = check_square(kt)
    if not res.is_zero():
        raise InvalidKoszulTriple(res)
    h = normalizing_homotopy(kt)
    flat = apply_homotopy(kt, h)
    if not flat.j.is_constant:
        raise AssertionError("normalizing homotopy failed to flatten j(x)")
    return CMQuadruple(flat.X, flat.Y, flat.i, flat.j.coeff(0))


@dataclass(frozen=True)
class FiberSolution:
    """The CM fiber over (X, i) as an affine space: particular + span(kernel)."""

    X: Matrix
    i: Matrix
    particular_Y: Matrix
    particular_j: Matrix
    kernel_basis: tuple[tuple[Matrix, Matrix], ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)


def _unknown_basis(n: int, r: int, field: Field) -> list[tuple[Matrix, Matrix]]:
    """Basis pairs (Y-unit, j-unit) in the fixed order: Y column-major, then j row-major."""
    out = []
    for col in range(n):
        for row in range(n):
            y = [[field.zero] * n for _ in range(n)]
            y[row][col] = field.one
            out.append((Matrix.from_rows(y, field), Matrix.zeros(r, n, field)))
    for row in range(r):
        for col in range(n):
            jm = [[field.zero] * n for _ in range(r)]
            jm[row][col] = field.one
            out.append((Matrix.zeros(n, n, field), Matrix.from_rows(jm, field)))
    return out


def solve_cm_fiber(X: Matrix, i: Matrix) -> FiberSolution | None:
    """Solve [X, Y] - i j + I = 0 for (Y, j); None when the fiber is empty.

    Emptiness is a meaningful answer: the framed sheaf then lies outside the
    support of the CM family.  The kernel basis spans the homogeneous
    solutions [X, Y'] = i j'.
    """
    n = X.rows
    if X.cols != n or i.rows != n:
        raise ShapeError("need square X and an n x r framing block")
    r = i.cols
    field = X.field
    units = _unknown_basis(n, r, field)
    ncols = len(units)
    flat = [field.zero] * (n * n * ncols)
    for cidx, (yu, ju) in enumerate(units):
        image = commutator(X, yu) - i @ ju
        for a in range(n):
            for b in range(n):
                flat[(a * n + b) * ncols + cidx] = image[a, b]
    op = Matrix(n * n, ncols, tuple(flat), field)
    rhs = Matrix.column([-v for v in Matrix.identity(n, field).entries], field)
    sol = solve_affine(op, rhs)
    if sol is None:
        return None

    def unvec(v: Matrix) -> tuple[Matrix, Matrix]:
        y = [[field.zero] * n for _ in range(n)]
        for col in range(n):
            for row in range(n):
                y[row][col] = v[col * n + row, 0]
        jm = [[field.zero] * n for _ in range(r)]
        for row in range(r):
            for col in range(n):
                jm[row][col] = v[n * n + row * n + col, 0]
        return Matrix.from_rows(y, field), Matrix.from_rows(jm, field)

    py, pj = unvec(sol.particular)
    kern = tuple(unvec(v) for v in sol.kernel_basis)
    return FiberSolution(X, i, py, pj, kern)


def torsor_action(sol: FiberSolution, coefficients: list) -> tuple[Matrix, Matrix]:
    """particular + sum_m t_m (kernel element m); always lands on the CM fiber."""
    if len(coefficients) != sol.dimension:
        raise ShapeError(f"need {sol.dimension} coefficients, got {len(coefficients)}")
    y, j = sol.particular_Y, sol.particular_j
    for t, (yk, jk) in zip(coefficients, sol.kernel_basis):
        y = y + t * yk
        j = j + t * jk
    return y, j
