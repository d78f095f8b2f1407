"""Dense matrix and vector algebra over an idempotent semifield.

Matrices and vectors are immutable value objects holding exact scalars
(see semifield.py).  The operator conventions follow numpy's treatment of
1-D arrays:

    A + B        entry-wise tropical addition
    A @ B        tropical matrix product, max_k(a_ik + b_kj) in max-plus
    A @ x        matrix times column vector -> vector
    x @ A        row vector times matrix   -> vector
    x @ y        tropical dot product      -> scalar
    A.conj()     multiplicative conjugate transpose A^-
    x.conj()     entry-wise conjugate x^- (orientation by usage)

Sparsity is semantic (ZERO entries), not representational; problem sizes in
this domain are tiny, so everything is dense and written for clarity.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    AllZeroMatrix,
    NotSquare,
    ShapeMismatch,
    SpectralConditionViolated,
    ZeroColumn,
    ZeroVector,
)
from .semifield import ZERO, Scalar, Semifield


def _check_same_semifield(a, b):
    if a.semifield is not b.semifield:
        raise ShapeMismatch(
            f"mixed semifields: {a.semifield.name} vs {b.semifield.name}")


class TropVector:
    __slots__ = ("semifield", "entries")

    def __init__(self, semifield: Semifield, entries: Iterable[Scalar]):
        self.semifield = semifield
        self.entries = tuple(semifield.check_value(e) for e in entries)
        if not self.entries:
            raise ShapeMismatch("vectors must have at least one component")

    @classmethod
    def ones(cls, semifield: Semifield, n: int) -> "TropVector":
        return cls(semifield, (semifield.one,) * n)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return (isinstance(other, TropVector)
                and self.semifield is other.semifield
                and self.entries == other.entries)

    def __hash__(self):
        return hash((id(self.semifield), self.entries))

    def __repr__(self):
        sf = self.semifield
        return "(" + ", ".join(sf.format_scalar(e) for e in self.entries) + ")"

    def is_zero(self) -> bool:
        return all(e is ZERO for e in self.entries)

    def is_regular(self) -> bool:
        """No zero components."""
        return all(e is not ZERO for e in self.entries)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.entries) if e is not ZERO)

    def __add__(self, other: "TropVector") -> "TropVector":
        _check_same_semifield(self, other)
        if self.dim != other.dim:
            raise ShapeMismatch(f"vector dims {self.dim} vs {other.dim}")
        add = self.semifield.add
        return TropVector(self.semifield,
                          [add(a, b) for a, b in zip(self.entries, other.entries)])

    def scale(self, c: Scalar) -> "TropVector":
        mul = self.semifield.mul
        return TropVector(self.semifield, [mul(c, e) for e in self.entries])

    def conj(self) -> "TropVector":
        """Entry-wise multiplicative conjugate; zero entries stay zero."""
        if self.is_zero():
            raise ZeroVector("conjugate of the zero vector is undefined")
        inv = self.semifield.inv
        return TropVector(self.semifield,
                          [ZERO if e is ZERO else inv(e) for e in self.entries])

    def __matmul__(self, other):
        # x @ A: row vector through a matrix; x @ y: dot product.
        if isinstance(other, TropMatrix):
            _check_same_semifield(self, other)
            if self.dim != other.rows:
                raise ShapeMismatch(f"row vector dim {self.dim} vs {other.rows} rows")
            sf = self.semifield
            out = []
            for j in range(other.cols):
                acc = ZERO
                for i, v in enumerate(self.entries):
                    if v is ZERO:
                        continue
                    w = other.entries[i][j]
                    if w is ZERO:
                        continue
                    acc = sf.add(acc, sf.mul(v, w))
                out.append(acc)
            return TropVector(sf, out)
        if isinstance(other, TropVector):
            _check_same_semifield(self, other)
            if self.dim != other.dim:
                raise ShapeMismatch(f"vector dims {self.dim} vs {other.dim}")
            sf = self.semifield
            acc = ZERO
            for v, w in zip(self.entries, other.entries):
                if v is ZERO or w is ZERO:
                    continue
                acc = sf.add(acc, sf.mul(v, w))
            return acc
        return NotImplemented

    def le(self, other: "TropVector") -> bool:
        """Entry-wise semifield order."""
        _check_same_semifield(self, other)
        if self.dim != other.dim:
            raise ShapeMismatch(f"vector dims {self.dim} vs {other.dim}")
        le = self.semifield.le
        return all(le(a, b) for a, b in zip(self.entries, other.entries))


class TropMatrix:
    __slots__ = ("semifield", "entries", "rows", "cols")

    def __init__(self, semifield: Semifield, rows: Iterable[Iterable[Scalar]]):
        self.semifield = semifield
        self.entries = tuple(tuple(semifield.check_value(e) for e in row)
                             for row in rows)
        if not self.entries or not self.entries[0]:
            raise ShapeMismatch("matrices must have at least one row and column")
        self.rows = len(self.entries)
        self.cols = len(self.entries[0])
        if any(len(row) != self.cols for row in self.entries):
            raise ShapeMismatch("ragged rows")

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, semifield: Semifield, n: int) -> "TropMatrix":
        one = semifield.one
        return cls(semifield, [[one if i == j else ZERO for j in range(n)]
                               for i in range(n)])

    @classmethod
    def zeros(cls, semifield: Semifield, rows: int, cols: int) -> "TropMatrix":
        return cls(semifield, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, semifield: Semifield,
                     columns: Sequence[TropVector]) -> "TropMatrix":
        if not columns:
            raise ShapeMismatch("at least one column required")
        dim = columns[0].dim
        if any(c.dim != dim for c in columns):
            raise ShapeMismatch("columns of unequal length")
        return cls(semifield, [[c[i] for c in columns] for i in range(dim)])

    # -- accessors -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> TropVector:
        return TropVector(self.semifield, self.entries[i])

    def col(self, j: int) -> TropVector:
        return TropVector(self.semifield, [row[j] for row in self.entries])

    def columns(self) -> list[TropVector]:
        return [self.col(j) for j in range(self.cols)]

    def __eq__(self, other):
        return (isinstance(other, TropMatrix)
                and self.semifield is other.semifield
                and self.entries == other.entries)

    def __hash__(self):
        return hash((id(self.semifield), self.entries))

    def __repr__(self):
        sf = self.semifield
        body = "\n".join(
            "[" + ", ".join(sf.format_scalar(e) for e in row) + "]"
            for row in self.entries)
        return body

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(e is ZERO for row in self.entries for e in row)

    def is_row_regular(self) -> bool:
        """Every row has at least one finite entry."""
        return all(any(e is not ZERO for e in row) for row in self.entries)

    def is_column_regular(self) -> bool:
        return all(any(row[j] is not ZERO for row in self.entries)
                   for j in range(self.cols))

    def is_regular(self) -> bool:
        return self.is_row_regular() and self.is_column_regular()

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "TropMatrix") -> "TropMatrix":
        _check_same_semifield(self, other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} vs {other.shape}")
        add = self.semifield.add
        return TropMatrix(self.semifield,
                          [[add(a, b) for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)])

    def __matmul__(self, other):
        if isinstance(other, TropMatrix):
            _check_same_semifield(self, other)
            if self.cols != other.rows:
                raise ShapeMismatch(f"inner dims {self.cols} vs {other.rows}")
            sf = self.semifield
            add, mul = sf.add, sf.mul
            out = []
            for i in range(self.rows):
                row_i = self.entries[i]
                out_row = []
                for j in range(other.cols):
                    acc = ZERO
                    for k, a in enumerate(row_i):
                        if a is ZERO:
                            continue
                        b = other.entries[k][j]
                        if b is ZERO:
                            continue
                        acc = add(acc, mul(a, b))
                    out_row.append(acc)
                out.append(out_row)
            return TropMatrix(sf, out)
        if isinstance(other, TropVector):
            _check_same_semifield(self, other)
            if self.cols != other.dim:
                raise ShapeMismatch(f"matrix cols {self.cols} vs vector dim {other.dim}")
            sf = self.semifield
            add, mul = sf.add, sf.mul
            out = []
            for row in self.entries:
                acc = ZERO
                for a, x in zip(row, other.entries):
                    if a is ZERO or x is ZERO:
                        continue
                    acc = add(acc, mul(a, x))
                out.append(acc)
            return TropVector(sf, out)
        return NotImplemented

    def scale(self, c: Scalar) -> "TropMatrix":
        mul = self.semifield.mul
        return TropMatrix(self.semifield,
                          [[mul(c, e) for e in row] for row in self.entries])

    def conj(self) -> "TropMatrix":
        """Multiplicative conjugate transpose: (A^-)_ij = inv(a_ji), zeros kept."""
        if self.is_zero():
            raise AllZeroMatrix("conjugate transpose of an all-zero matrix")
        inv = self.semifield.inv
        return TropMatrix(self.semifield,
                          [[ZERO if self.entries[i][j] is ZERO
                            else inv(self.entries[i][j])
                            for i in range(self.rows)]
                           for j in range(self.cols)])

    def le(self, other: "TropMatrix") -> bool:
        _check_same_semifield(self, other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} vs {other.shape}")
        le = self.semifield.le
        return all(le(a, b) for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))


def outer(x: TropVector, y: TropVector) -> TropMatrix:
    """Outer product (x y^T)_ij = x_i (x) y_j; pass y already conjugated for x y^-."""
    _check_same_semifield(x, y)
    mul = x.semifield.mul
    return TropMatrix(x.semifield,
                      [[mul(a, b) for b in y.entries] for a in x.entries])


def trace(matrix: TropMatrix) -> Scalar:
    if not matrix.is_square():
        raise NotSquare(f"trace of a {matrix.rows}x{matrix.cols} matrix")
    sf = matrix.semifield
    acc = ZERO
    for i in range(matrix.rows):
        acc = sf.add(acc, matrix.entries[i][i])
    return acc


def trace_closure(matrix: TropMatrix) -> Scalar:
    """Tr(A): tropical sum of the traces of A^1 .. A^n."""
    if not matrix.is_square():
        raise NotSquare(f"Tr of a {matrix.rows}x{matrix.cols} matrix")
    sf = matrix.semifield
    acc = ZERO
    power = matrix
    for k in range(matrix.rows):
        acc = sf.add(acc, trace(power))
        if k + 1 < matrix.rows:
            power = power @ matrix
    return acc


def kleene_star(matrix: TropMatrix) -> TropMatrix:
    """A* = I (+) A (+) ... (+) A^(n-1); requires Tr(A) <= one."""
    if not matrix.is_square():
        raise NotSquare(f"star of a {matrix.rows}x{matrix.cols} matrix")
    sf = matrix.semifield
    tr = trace_closure(matrix)
    if not sf.le(tr, sf.one):
        raise SpectralConditionViolated(
            f"Tr = {sf.format_scalar(tr)} exceeds the identity; "
            "A x <= x has no regular solution")
    acc = TropMatrix.identity(sf, matrix.rows)
    power = acc
    for _ in range(matrix.rows - 1):
        power = power @ matrix
        acc = acc + power
    return acc


def delta(matrix: TropMatrix, b: TropVector) -> Scalar:
    """Linear-dependence indicator (A (b^- A)^-)^- b.

    Equals the semifield one exactly when b is a tropical linear combination
    of the columns of A.  Degenerate case: when no column of A shares support
    with b the indicator is the semifield zero (b is certainly outside the
    column span).
    """
    if matrix.is_zero():
        raise AllZeroMatrix("delta requires a nonzero matrix")
    if b.is_zero():
        raise ZeroVector("delta requires a nonzero vector")
    if matrix.rows != b.dim:
        raise ShapeMismatch(f"matrix rows {matrix.rows} vs vector dim {b.dim}")
    residual = b.conj() @ matrix
    if residual.is_zero():
        return ZERO
    coeffs = residual.conj()
    image = matrix @ coeffs
    if image.is_zero():
        return ZERO
    return image.conj() @ b


def _collinear(u: TropVector, v: TropVector) -> bool:
    """True when u = c (x) v for some scalar c (identical zero patterns)."""
    sf = u.semifield
    sup = u.support()
    if sup != v.support():
        return False
    ratio = sf.mul(u[sup[0]], sf.inv(v[sup[0]]))
    return all(u[i] == sf.mul(ratio, v[i]) for i in sup)


def residuation_coefficients(matrix: TropMatrix, b: TropVector) -> TropVector:
    """Greatest x with A x <= b, for any nonzero b.

    For regular b this is exactly (b^- A)^-.  When b has zero components, a
    column whose support pokes outside the support of b is forced to the zero
    coefficient, a constraint the conjugate form is blind to because it drops
    exactly those rows; otherwise the coefficient is the order-minimum of
    b_i (x) inv(a_ij) over the column's support.
    """
    if matrix.rows != b.dim:
        raise ShapeMismatch(f"matrix rows {matrix.rows} vs vector dim {b.dim}")
    sf = matrix.semifield
    coeffs = []
    for j in range(matrix.cols):
        best = None
        for i in range(matrix.rows):
            a = matrix.entries[i][j]
            if a is ZERO:
                continue
            bi = b[i]
            if bi is ZERO:
                best = ZERO
                break
            c = sf.mul(bi, sf.inv(a))
            if best is None or sf.le(c, best):
                best = c
        coeffs.append(ZERO if best is None else best)
    return TropVector(sf, coeffs)


def depends_on(matrix: TropMatrix, b: TropVector) -> bool:
    """Whether b is a tropical combination of the columns of A.

    Checks that the greatest subsolution of A x <= b reproduces b exactly.
    Dependence here implies delta(A, b) = one; the converse can fail when b
    has zero components, in the blind spots of the conjugate form.
    """
    if matrix.is_zero() or b.is_zero():
        return False
    greatest = residuation_coefficients(matrix, b)
    if greatest.is_zero():
        return False
    return matrix @ greatest == b


def reduce_to_independent(matrix: TropMatrix) -> tuple[TropMatrix, list[int]]:
    """Drop columns that are tropical combinations of the others.

    Columns are examined left to right: first an exact collinearity pre-pass
    keeps only the first member of each ray, then each survivor is removed if
    it depends on the other current survivors (later ones included).  The
    result spans the same set as the input and is deterministic for a given
    column order.  Returns the reduced matrix and the kept column indices.
    """
    cols = matrix.columns()
    for j, c in enumerate(cols):
        if c.is_zero():
            raise ZeroColumn(f"column {j} is all-zero")
    sf = matrix.semifield
    kept: list[int] = []
    for j in range(len(cols)):
        if any(_collinear(cols[j], cols[i]) for i in kept):
            continue
        kept.append(j)
    current = list(kept)
    for j in list(current):
        others = [i for i in current if i != j]
        if not others:
            continue
        basis = TropMatrix.from_columns(sf, [cols[i] for i in others])
        if depends_on(basis, cols[j]):
            current.remove(j)
    reduced = TropMatrix.from_columns(sf, [cols[i] for i in current])
    return reduced, current
