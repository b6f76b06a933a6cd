"""Exact rational linear solver.

The rational entries are scaled to a common-denominator integer matrix
and eliminated with fraction-free one-step Bareiss reduction: every
division in the update is exact, so the whole elimination runs on
integers and avoids per-operation gcd normalization.
"""

from gmpy2 import lcm, mpq, mpz

from .errors import DegeneracyError
from .rational import ZERO


def solve(matrix, rhs):
    """Solve A x = b exactly over the rationals.

    Raises DegeneracyError naming the offending column when the matrix
    is singular.
    """
    n = len(matrix)
    den = mpz(1)
    for row in matrix:
        for v in row:
            den = lcm(den, v.denominator)
    for v in rhs:
        den = lcm(den, v.denominator)

    def scaled(v):
        return mpz(v.numerator) * (den // v.denominator)

    a = [
        [scaled(v) for v in row] + [scaled(rhs[i])]
        for i, row in enumerate(matrix)
    ]

    prev = mpz(1)
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot_row][col] == 0:
            raise DegeneracyError(
                f"singular system: no pivot in column {col} "
                f"(leading minor of order {col + 1} vanishes)"
            )
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        prow = a[col]
        pval = prow[col]
        for r in range(col + 1, n):
            row = a[r]
            lead = row[col]
            for c in range(col + 1, n + 1):
                # one-step Bareiss update; the division is always exact
                row[c] = (pval * row[c] - lead * prow[c]) // prev
            row[col] = mpz(0)
        prev = pval

    x = [ZERO] * n
    for row_idx in range(n - 1, -1, -1):
        acc = mpq(a[row_idx][n])
        for c in range(row_idx + 1, n):
            acc -= a[row_idx][c] * x[c]
        x[row_idx] = acc / a[row_idx][row_idx]
    return x
