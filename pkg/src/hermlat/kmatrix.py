"""Small dense matrix helpers over KElem (exact field) and LocalKElem
(bounded-precision local ring).

Matrices are tuples of tuples, row-major.  Determinants over the local
rings use Bird's division-free algorithm; inverses use Gaussian
elimination with unit pivots, which always exist for invertible matrices
over a local ring.
"""

from .errors import InsufficientPrecision, SingularGram

Matrix = tuple


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def dim(m: Matrix) -> int:
    return len(m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    return mat(
        [
            [sum_cells([a[i][t] * b[t][j] for t in range(k)]) for j in range(m)]
            for i in range(n)
        ]
    )


def sum_cells(cells):
    acc = cells[0]
    for c in cells[1:]:
        acc = acc + c
    return acc


def conj_transpose(a: Matrix) -> Matrix:
    n, m = len(a), len(a[0])
    return mat([[a[j][i].conj() for j in range(n)] for i in range(m)])


def is_hermitian(g: Matrix) -> bool:
    n = len(g)
    for i in range(n):
        for j in range(n):
            if not (g[i][j] - g[j][i].conj()).is_zero():
                return False
    return True


def identity_like(g: Matrix) -> Matrix:
    n = len(g)
    one = _one_of(g[0][0])
    zero = g[0][0] - g[0][0]
    return mat([[one if i == j else zero for j in range(n)] for i in range(n)])


def _one_of(x):
    from .exactnum import KElem, k_elem
    from .padic import LocalKElem

    if isinstance(x, KElem):
        return k_elem(x.p, 1)
    if isinstance(x, LocalKElem):
        return x.alg.one()
    raise TypeError(type(x))


def gauss_det(g: Matrix):
    """Determinant by Gaussian elimination; entries must form a field
    (KElem).  Returns a KElem."""
    n = len(g)
    a = [list(r) for r in g]
    det = _one_of(g[0][0])
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return g[0][0] - g[0][0]
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            f = a[r][col] * inv
            for c in range(col, n):
                a[r][c] = a[r][c] - f * a[col][c]
    return det


def bird_det(g: Matrix):
    """Division-free determinant (Bird 2011); works over any commutative
    ring, in particular Z/l^N-coordinate rings."""
    n = len(g)
    if n == 1:
        return g[0][0]
    zero = g[0][0] - g[0][0]

    def mu(x):
        out = [[zero] * n for _ in range(n)]
        acc = zero
        diag = [zero] * n
        for i in range(n - 1, 0, -1):
            acc = acc + x[i][i]
            diag[i - 1] = -acc
        for i in range(n):
            out[i][i] = diag[i]
            for j in range(i + 1, n):
                out[i][j] = x[i][j]
        return mat(out)

    x = g
    for _ in range(n - 1):
        x = mat_mul(mu(x), g)
    top = x[0][0]
    return -top if (n - 1) % 2 else top


def field_inverse(g: Matrix) -> Matrix:
    """Inverse over a field (KElem entries)."""
    n = len(g)
    a = [list(g[i]) + list(identity_like(g)[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise SingularGram("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return mat([row[n:] for row in a])


def local_inverse(g: Matrix) -> Matrix:
    """Inverse over a local ring: pivots must be units; for an invertible
    matrix a unit pivot always exists in every remaining column."""
    n = len(g)
    a = [list(g[i]) + list(identity_like(g)[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col].is_unit()), None)
        if piv is None:
            raise SingularGram("no unit pivot; matrix not invertible at precision")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return mat([row[n:] for row in a])


def local_is_invertible(g: Matrix) -> bool:
    try:
        local_inverse(g)
        return True
    except SingularGram:
        return False
    except InsufficientPrecision:
        return False


def submatrix(g: Matrix, rows, cols) -> Matrix:
    return mat([[g[i][j] for j in cols] for i in rows])


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    first = blocks[0][0][0]
    zero = first - first
    out = [[zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return mat(out)
