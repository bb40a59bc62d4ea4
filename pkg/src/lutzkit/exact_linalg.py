"""
Exact integer and rational matrix algebra.

Everything in this module is computed over Z or Q with arbitrary-precision
arithmetic; no floating point is used anywhere.  The main entry points are
Smith normal form (with unimodular transforms), cokernels of integer
matrices, exact linear solves over Q, signatures of symmetric matrices by
congruence diagonalization, characteristic polynomials, and the congruence
operation realizing a handle slide on a linking matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class NoSolutionError(ValueError):
    """The linear system is inconsistent."""


class NonUniqueSolutionError(ValueError):
    """The linear system is consistent but has a nontrivial solution space."""


class IntMatrix:
    """An immutable integer matrix with exact entries.

    Entries are plain Python ints, so intermediate values may grow without
    bound; that is intentional.
    """

    __slots__ = ("_entries",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if entries:
            width = len(entries[0])
            if any(len(row) != width for row in entries):
                raise ValueError("rows have inconsistent lengths")
        self._entries = entries

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self._entries)

    @property
    def cols(self) -> int:
        return len(self._entries[0]) if self._entries else 0

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._entries

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        e = self._entries
        return all(e[i][j] == e[j][i] for i in range(self.rows) for j in range(i))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._entries[i]

    def to_rows(self) -> list[list[int]]:
        return [list(row) for row in self._entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._entries)) if self._entries else IntMatrix([])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.cols
        out = []
        for i in range(self.rows):
            a_row = self._entries[i]
            out.append([sum(a_row[k] * other._entries[k][j] for k in range(self.cols))
                        for j in range(cols)])
        return IntMatrix(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._entries]!r})"


class SymmetricIntMatrix(IntMatrix):
    """A square IntMatrix with entries(i,j) == entries(j,i) enforced."""

    __slots__ = ()

    def __init__(self, rows: Iterable[Iterable[int]]):
        super().__init__(rows)
        if not self.is_square:
            raise ValueError("symmetric matrix must be square")
        e = self._entries
        for i in range(self.rows):
            for j in range(i):
                if e[i][j] != e[j][i]:
                    raise ValueError(f"not symmetric at ({i},{j})")


@dataclass(frozen=True)
class SmithForm:
    """Unimodular factorization U @ A @ V = D with d1 | d2 | ... and di >= 0."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def __post_init__(self) -> None:
        if self.u.rows != self.u.cols or self.v.rows != self.v.cols:
            raise ValueError("transforms must be square")
        if (self.d.rows, self.d.cols) != (self.u.rows, self.v.rows):
            raise ValueError("shape mismatch between transforms and diagonal")
        diag = self.diagonal
        for i in range(self.d.rows):
            for j in range(self.d.cols):
                if i != j and self.d[i, j] != 0:
                    raise ValueError("D is not diagonal")
        for x in diag:
            if x < 0:
                raise ValueError("diagonal entries must be nonnegative")
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                raise ValueError("zero diagonal entry precedes a nonzero one")
            if a != 0 and b % a != 0:
                raise ValueError("divisibility chain violated")

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.rows, self.d.cols)))


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial stored by ascending-degree coefficients."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is reported as -1
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            elif k == 1:
                term = "x" if mag == 1 else f"{mag}*x"
            else:
                term = f"x^{k}" if mag == 1 else f"{mag}*x^{k}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


RationalVector = tuple[Fraction, ...]


def rational_vector(values: Sequence) -> RationalVector:
    """Coerce a sequence of ints/Fractions to a reduced rational vector."""
    return tuple(Fraction(v) for v in values)


# ---------------------------------------------------------------------------
# Smith normal form


def _find_pivot(m: list[list[int]], t: int, rows: int, cols: int):
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            e = m[i][j]
            if e != 0 and (best is None or abs(e) < abs(best[2])):
                best = (i, j, e)
    return best


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Compute U, D, V with U @ a @ V = D in Smith normal form.

    U and V are unimodular; D is diagonal with nonnegative entries
    satisfying d1 | d2 | ...  Pivots are chosen by smallest nonzero
    absolute value, which keeps intermediate growth modest and makes the
    output deterministic.
    """
    rows, cols = a.rows, a.cols
    m = a.to_rows()
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        m[dst] = [x + q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        best = _find_pivot(m, t, rows, cols)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # Clear column t with row operations, pulling smaller remainders
            # up into the pivot as they appear.
            while True:
                dirty = [i for i in range(t + 1, rows) if m[i][t] != 0]
                if not dirty:
                    break
                i_min = min(dirty, key=lambda i: abs(m[i][t]))
                if abs(m[i_min][t]) < abs(m[t][t]):
                    swap_rows(t, i_min)
                for i in range(t + 1, rows):
                    if m[i][t] != 0:
                        add_row(i, t, -(m[i][t] // m[t][t]))
            # Clear row t with column operations; a column swap here can
            # re-dirty column t, hence the outer loop.
            while True:
                dirty = [j for j in range(t + 1, cols) if m[t][j] != 0]
                if not dirty:
                    break
                j_min = min(dirty, key=lambda j: abs(m[t][j]))
                if abs(m[t][j_min]) < abs(m[t][t]):
                    swap_cols(t, j_min)
                for j in range(t + 1, cols):
                    if m[t][j] != 0:
                        add_col(j, t, -(m[t][j] // m[t][t]))
            if any(m[i][t] != 0 for i in range(t + 1, rows)):
                continue
            # Pivot must divide the remaining block for the divisibility
            # chain; if not, fold the offending row in and reduce again.
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)

    for t in range(min(rows, cols)):
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(u=IntMatrix(u), d=IntMatrix(m), v=IntMatrix(v))


# ---------------------------------------------------------------------------
# Cokernel


@dataclass(frozen=True)
class Cokernel:
    """coker(A) = Z^rows / col-span(A) as torsion plus free part.

    ``torsion`` lists the invariant factors > 1 in divisibility order and
    ``free_rank`` counts the Z summands.  ``basis_images`` gives, for each
    standard basis vector of the target Z^rows, its coordinates in the
    quotient: torsion coordinates first (reduced mod the factor), then free
    coordinates.
    """

    free_rank: int
    torsion: tuple[int, ...]
    basis_images: tuple[tuple[int, ...], ...]
    _transform: IntMatrix
    _torsion_slots: tuple[tuple[int, int], ...]
    _free_slots: tuple[int, ...]

    def reduce(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of an integer target vector in the quotient group."""
        if len(vector) != self._transform.rows:
            raise ValueError("vector length does not match the target rank")
        coords = [sum(self._transform[i, j] * vector[j] for j in range(len(vector)))
                  for i in range(self._transform.rows)]
        out = [coords[i] % d for i, d in self._torsion_slots]
        out.extend(coords[i] for i in self._free_slots)
        return tuple(out)

    def is_zero(self, element: Sequence[int]) -> bool:
        return all(x == 0 for x in element)


def cokernel(a: IntMatrix) -> Cokernel:
    """Present coker(A) and locate the standard basis vectors inside it."""
    snf = smith_normal_form(a)
    rows = a.rows
    diag = snf.diagonal
    torsion_slots = tuple((i, d) for i, d in enumerate(diag) if d > 1)
    free_slots = tuple(i for i, d in enumerate(diag) if d == 0) + tuple(range(len(diag), rows))
    cok = Cokernel(
        free_rank=len(free_slots),
        torsion=tuple(d for _, d in torsion_slots),
        basis_images=(),
        _transform=snf.u,
        _torsion_slots=torsion_slots,
        _free_slots=free_slots,
    )
    images = tuple(cok.reduce([1 if j == i else 0 for j in range(rows)]) for i in range(rows))
    object.__setattr__(cok, "basis_images", images)
    return cok


# ---------------------------------------------------------------------------
# Rational solve


def solve_rational(a: IntMatrix, b: Sequence) -> RationalVector:
    """Solve a @ x = b exactly over Q.

    Raises NoSolutionError when the system is inconsistent and
    NonUniqueSolutionError when it is consistent with a nontrivial kernel.
    """
    rows, cols = a.rows, a.cols
    rhs = rational_vector(b)
    if len(rhs) != rows:
        raise ValueError("right-hand side length does not match the matrix")
    aug = [[Fraction(a[i, j]) for j in range(cols)] + [rhs[i]] for i in range(rows)]

    pivot_cols: list[int] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == rows:
            break

    for i in range(r, rows):
        if aug[i][cols] != 0:
            raise NoSolutionError("inconsistent linear system")
    if len(pivot_cols) < cols:
        raise NonUniqueSolutionError("solution space has positive dimension")

    x = [Fraction(0)] * cols
    for k, col in enumerate(pivot_cols):
        x[col] = aug[k][cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Signature by exact congruence diagonalization


def signature_symmetric(a: IntMatrix) -> int:
    """Signature (#positive - #negative eigenvalues) of a symmetric matrix.

    Diagonalizes by congruence over Q with symmetric pivoting; when the
    active block has only zero diagonal entries but a nonzero off-diagonal
    entry, a hyperbolic 2x2 block is split off, contributing one positive
    and one negative eigenvalue.  No eigenvalues are ever computed.
    """
    if not a.is_symmetric:
        raise ValueError("matrix is not symmetric")
    n = a.rows
    m = [[Fraction(x) for x in row] for row in a.entries]
    pos = neg = 0

    def sym_swap(i: int, j: int) -> None:
        if i == j:
            return
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    def eliminate(target: int, src: int, f: Fraction) -> None:
        # row_target -= f * row_src, then the mirror column operation
        m[target] = [x - f * y for x, y in zip(m[target], m[src])]
        for row in m:
            row[target] -= f * row[src]

    t = 0
    while t < n:
        k = next((i for i in range(t, n) if m[i][i] != 0), None)
        if k is not None:
            sym_swap(t, k)
            p = m[t][t]
            if p > 0:
                pos += 1
            else:
                neg += 1
            for i in range(t + 1, n):
                if m[i][t] != 0:
                    eliminate(i, t, m[i][t] / p)
            t += 1
            continue
        pair = None
        for i in range(t, n):
            for j in range(i + 1, n):
                if m[i][j] != 0:
                    pair = (i, j)
                    break
            if pair is not None:
                break
        if pair is None:
            break
        i, j = pair
        sym_swap(t, i)
        sym_swap(t + 1, j if i != t else j)
        h = m[t][t + 1]
        pos += 1
        neg += 1
        for i2 in range(t + 2, n):
            if m[i2][t + 1] != 0:
                eliminate(i2, t, m[i2][t + 1] / h)
            if m[i2][t] != 0:
                eliminate(i2, t + 1, m[i2][t] / h)
        t += 2

    return pos - neg


# ---------------------------------------------------------------------------
# Characteristic polynomial, determinant, congruence slides


def char_poly(a: IntMatrix) -> IntPolynomial:
    """det(xI - a) with exact integer coefficients.

    Uses the trace recurrence on the adjugate sequence; every division by
    the step index is exact for an integer matrix, which is asserted.
    """
    if not a.is_square:
        raise ValueError("characteristic polynomial requires a square matrix")
    n = a.rows
    if n == 0:
        return IntPolynomial((1,))
    coeffs_desc = [1]
    mk = IntMatrix.identity(n)
    c = -sum(a[i, i] for i in range(n))
    coeffs_desc.append(c)
    for k in range(2, n + 1):
        prev = a @ mk
        mk = IntMatrix([[prev[i, j] + (c if i == j else 0) for j in range(n)] for i in range(n)])
        am = a @ mk
        trace = sum(am[i, i] for i in range(n))
        q, r = divmod(-trace, k)
        assert r == 0, "trace recurrence produced a non-integer coefficient"
        c = q
        coeffs_desc.append(c)
    return IntPolynomial(tuple(reversed(coeffs_desc)))


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not a.is_square:
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def congruence_slide(a: SymmetricIntMatrix, i: int, j: int, sign: int) -> SymmetricIntMatrix:
    """Handle slide of component i over component j on a linking matrix.

    Returns E^T a E where E adds sign * (column j) to column i; the result
    is symmetric with the same determinant and signature.
    """
    n = a.rows
    if i == j:
        raise ValueError("slide requires two distinct components")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("component index out of range")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    m = a.to_rows()
    for r in range(n):
        m[r][i] += sign * m[r][j]
    for cidx in range(n):
        m[i][cidx] += sign * m[j][cidx]
    return SymmetricIntMatrix(m)


# ---------------------------------------------------------------------------
# Interpolation (used to identify coefficient polynomials of parameterized
# matrices without symbolic entries)


def interpolate_polynomial(points: Sequence[tuple[int, int]]) -> IntPolynomial:
    """Lagrange interpolation through integer points, requiring an integer
    result.  Raises ValueError if the interpolant has a non-integer
    coefficient or if abscissae repeat.
    """
    xs = [p[0] for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated abscissa")
    acc = [Fraction(0)] * max(len(points), 1)
    for xi, yi in points:
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xj in xs:
            if xj == xi:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, cb in enumerate(basis):
                nxt[k] -= cb * xj
                nxt[k + 1] += cb
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, cb in enumerate(basis):
            acc[k] += cb * scale
    coeffs = []
    for c in acc:
        if c.denominator != 1:
            raise ValueError("interpolant is not an integer polynomial")
        coeffs.append(c.numerator)
    return IntPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# Matrix text format: first line "rows cols", then one line per row


def parse_matrix(text: str) -> IntMatrix:
    """Parse the matrix text format: a "rows cols" header, then rows of
    space-separated decimal integers."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("matrix header must be 'rows cols'")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValueError("matrix header must contain two integers") from exc
    if rows < 0 or cols < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    out = []
    for ln in body:
        parts = ln.split()
        if len(parts) != cols:
            raise ValueError(f"expected {cols} entries per row, found {len(parts)}")
        try:
            out.append([int(p) for p in parts])
        except ValueError as exc:
            raise ValueError(f"non-integer matrix entry in row: {ln!r}") from exc
    return IntMatrix(out)


def format_matrix(a: IntMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in a.entries)
    return "\n".join(lines) + "\n"
