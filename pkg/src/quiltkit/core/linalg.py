"""Exact rational matrix helpers on top of sympy.

Every matrix handled here is an ``ImmutableMatrix`` with ``Rational`` entries. Empty
shapes (zero rows or zero columns) are legal and show up for point spaces.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence

from sympy import ImmutableMatrix, Matrix, Rational, eye, zeros

from quiltkit.shared.errors import DimensionMismatch


def rational(value) -> Rational:
    """Parse an int, Fraction, Rational or "p/q" string into a sympy Rational"""
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ValueError(f"Zero denominator: {value!r}")
            return Rational(int(num), int(den))
        return Rational(int(text))
    if isinstance(value, bool):
        raise ValueError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Rational(value)
    raise ValueError(f"Not a rational: {value!r}")


def matrix(rows: Sequence[Sequence], cols: int | None = None) -> ImmutableMatrix:
    """Build an exact matrix from nested rows; ``cols`` fixes the width of empty input"""
    rows = [list(r) for r in rows]
    if not rows:
        return ImmutableMatrix.zeros(0, cols or 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("Ragged matrix rows")
    return ImmutableMatrix(len(rows), width, [rational(x) for r in rows for x in r])


def columns(vectors: Iterable[Sequence], dim: int) -> ImmutableMatrix:
    """Stack vectors as columns of a dim-row matrix"""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return ImmutableMatrix.zeros(dim, 0)
    return matrix(vectors).T


def hstack(*blocks: Matrix) -> ImmutableMatrix:
    rows = blocks[0].rows
    cols = sum(b.cols for b in blocks)
    out = zeros(rows, cols)
    offset = 0
    for b in blocks:
        if b.rows != rows:
            raise DimensionMismatch("hstack with unequal row counts")
        if b.cols:
            out[:, offset : offset + b.cols] = b
        offset += b.cols
    return ImmutableMatrix(out)


def vstack(*blocks: Matrix) -> ImmutableMatrix:
    cols = blocks[0].cols
    rows = sum(b.rows for b in blocks)
    out = zeros(rows, cols)
    offset = 0
    for b in blocks:
        if b.cols != cols:
            raise DimensionMismatch("vstack with unequal column counts")
        if b.rows:
            out[offset : offset + b.rows, :] = b
        offset += b.rows
    return ImmutableMatrix(out)


def block_diagonal(*blocks: Matrix) -> ImmutableMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        if b.rows and b.cols:
            out[r : r + b.rows, c : c + b.cols] = b
        r += b.rows
        c += b.cols
    return ImmutableMatrix(out)


def identity(n: int) -> ImmutableMatrix:
    return ImmutableMatrix(eye(n)) if n else ImmutableMatrix.zeros(0, 0)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.rank()


def nullspace(m: Matrix) -> ImmutableMatrix:
    """Basis of the right kernel, as columns"""
    if m.cols == 0:
        return ImmutableMatrix.zeros(0, 0)
    if m.rows == 0:
        return identity(m.cols)
    vectors = m.nullspace()
    if not vectors:
        return ImmutableMatrix.zeros(m.cols, 0)
    return hstack(*vectors)


def column_echelon(m: Matrix) -> ImmutableMatrix:
    """Reduced column echelon form with zero columns dropped.

    Two matrices with the same number of rows span the same column space iff their
    column echelon forms are equal.
    """
    if m.rows == 0 or m.cols == 0:
        return ImmutableMatrix.zeros(m.rows, 0)
    reduced, pivots = m.T.rref()
    return ImmutableMatrix(reduced[: len(pivots), :].T)


def same_span(a: Matrix, b: Matrix) -> bool:
    return a.rows == b.rows and column_echelon(a) == column_echelon(b)


def column_list(m: Matrix) -> List[ImmutableMatrix]:
    return [ImmutableMatrix(m[:, j]) for j in range(m.cols)]


def _sign_changes(coeffs: Sequence[Rational]) -> int:
    signs = [bool(c > 0) for c in coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def signature(form: Matrix) -> int:
    """Signature (positive minus negative inertia) of a symmetric rational matrix.

    The characteristic polynomial of a symmetric matrix has only real roots, so
    Descartes' rule counts its positive and negative roots exactly; the kernel of a
    degenerate form shows up as zero roots and contributes nothing.
    """
    if form.rows == 0:
        return 0
    coeffs = Matrix(form).charpoly().all_coeffs()
    degree = len(coeffs) - 1
    mirrored = [c if (degree - i) % 2 == 0 else -c for i, c in enumerate(coeffs)]
    return _sign_changes(coeffs) - _sign_changes(mirrored)
