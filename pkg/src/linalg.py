"""
Exact linear algebra over the rationals (and a couple of ring-generic helpers).
"""
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

Matrix = List[List[Fraction]]


def _copy(matrix: Sequence[Sequence[Any]]) -> List[List[Any]]:
    return [list(row) for row in matrix]


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of ``matrix @ x = rhs`` (free unknowns set to zero), or None if inconsistent."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        lead = aug[r][c]
        aug[r] = [v / lead for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return None
    solution = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        solution[c] = aug[i][cols]
    return solution


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(independent_rows(matrix))


def independent_rows(matrix: Sequence[Sequence[Fraction]]) -> List[int]:
    """Indices of a greedy maximal set of linearly independent rows, in input order."""
    span = IncrementalSpan()
    return [i for i, row in enumerate(matrix) if span.add(row) is None]


class IncrementalSpan:
    """Grows a basis one vector at a time and reports linear dependencies.

    ``add`` returns None when the vector is new, otherwise the coefficients
    expressing it in terms of the previously accepted vectors.
    """

    def __init__(self):
        self._rows: List[List[Fraction]] = []
        self._pivots: List[int] = []
        # combination of accepted vectors equal to each reduced row
        self._combos: List[Dict[int, Fraction]] = []
        self.size = 0

    def _reduce(self, vector: Sequence[Fraction]):
        vec = [Fraction(v) for v in vector]
        combo: Dict[int, Fraction] = {}
        for row, pivot, row_combo in zip(self._rows, self._pivots, self._combos):
            factor = vec[pivot]
            if not factor:
                continue
            vec = [a - factor * b for a, b in zip(vec, row)]
            for k, v in row_combo.items():
                combo[k] = combo.get(k, 0) + factor * v
        return vec, combo

    def express(self, vector: Sequence[Fraction]) -> Optional[List[Fraction]]:
        """Coordinates of ``vector`` on the accepted vectors, or None if outside the span."""
        vec, combo = self._reduce(vector)
        if any(vec):
            return None
        return [combo.get(k, Fraction(0)) for k in range(self.size)]

    def add(self, vector: Sequence[Fraction]) -> Optional[List[Fraction]]:
        vec, combo = self._reduce(vector)
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            return [combo.get(k, Fraction(0)) for k in range(self.size)]
        lead = vec[pivot]
        # reduced row = (new vector - combo) / lead
        new_combo = {k: -v / lead for k, v in combo.items()}
        new_combo[self.size] = 1 / lead
        self._rows.append([v / lead for v in vec])
        self._pivots.append(pivot)
        self._combos.append(new_combo)
        self.size += 1
        return None


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]], zero: Any = 0) -> List[List[Any]]:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                acc = acc + row[k] * b[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def bareiss_determinant(matrix: Sequence[Sequence[Any]], divide: Callable[[Any, Any], Any], one: Any, zero: Any) -> Any:
    """Fraction-free elimination; ``divide`` must be exact in the entry ring."""
    m = _copy(matrix)
    n = len(m)
    if n == 0:
        return one
    sign = 1
    previous = one
    for k in range(n - 1):
        if m[k][k] == zero:
            swap = next((i for i in range(k + 1, n) if m[i][k] != zero), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous)
            m[i][k] = zero
        previous = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def berkowitz_determinant(matrix: Sequence[Sequence[Any]], reduce: Callable[[Any], Any], one: Any, zero: Any) -> Any:
    """Division-free determinant; ``reduce`` is applied after every product.

    Works in any commutative ring, in particular in a quotient ring such as
    Q[T]/(q) where exact division is unavailable.
    """
    n = len(matrix)
    if n == 0:
        return one
    # characteristic polynomial coefficients of the leading principal submatrix
    vect = [one, reduce(-matrix[0][0])]
    for r in range(1, n):
        row = matrix[r][:r]
        col = [matrix[i][r] for i in range(r)]
        sub = [list(matrix[i][:r]) for i in range(r)]
        toeplitz = [one, reduce(-matrix[r][r])]
        # -row * sub^k * col for k = 0 .. r-1
        current = list(col)
        for _ in range(r):
            acc = zero
            for a, b in zip(row, current):
                acc = acc + a * b
            toeplitz.append(reduce(-acc))
            nxt = []
            for i in range(r):
                s = zero
                for a, b in zip(sub[i], current):
                    s = s + a * b
                nxt.append(reduce(s))
            current = nxt
        new_vect = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                if j < len(vect):
                    acc = acc + toeplitz[i - j] * vect[j]
            new_vect.append(reduce(acc))
        vect = new_vect
    det = vect[n]
    return det if n % 2 == 0 else reduce(-det)


def is_positive_semidefinite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Exact PSD test for a symmetric rational matrix via symmetric LDL^T pivoting."""
    q = [[Fraction(v) for v in row] for row in matrix]
    active = list(range(len(q)))
    while active:
        # a zero diagonal entry forces a zero row
        for i in active:
            if q[i][i] < 0:
                return False
            if q[i][i] == 0 and any(q[i][j] for j in active):
                return False
        pivot = next((i for i in active if q[i][i] > 0), None)
        if pivot is None:
            return True
        active.remove(pivot)
        d = q[pivot][pivot]
        for i in active:
            for j in active:
                q[i][j] -= q[i][pivot] * q[pivot][j] / d
    return True
