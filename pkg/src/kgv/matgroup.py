"""Explicit matrices over F_p and breadth-first group machinery.

Two element encodings sit behind one interface: over F_2 a matrix is a single
integer (bit i*n+j holds entry (i,j)) and a vector is a bitmask; over odd primes
a matrix is a flat length-n*n tuple and a vector a length-n tuple.  Vector codes
(integers in [0, p^n)) index orbit arrays; code = sum(v_i * p^i).
"""

from .group_orders import sp_order
from .intmath import is_prime

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is expected to be available
    _np = None

CLOSURE_CAP = 2 * 10**6


class GroupTooLarge(ValueError):
    """Raised when a breadth-first closure would exceed its cap."""


class _F2Space:
    def __init__(self, n):
        self.p = 2
        self.n = n
        self.mask = (1 << n) - 1
        self.identity = self.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        self.vec_count = 1 << n

    def from_rows(self, rows):
        n = self.n
        m = 0
        for i, row in enumerate(rows):
            bits = 0
            for j, e in enumerate(row):
                if e % 2:
                    bits |= 1 << j
            m |= bits << (i * n)
        return m

    def to_rows(self, m):
        n, mask = self.n, self.mask
        return tuple(tuple((m >> (i * n + j)) & 1 for j in range(n)) for i in range(n))

    def row_list(self, m):
        n, mask = self.n, self.mask
        return [(m >> (i * n)) & mask for i in range(n)]

    def mul(self, a, b):
        n, mask = self.n, self.mask
        brows = self.row_list(b)
        out = 0
        for i in range(n):
            arow = (a >> (i * n)) & mask
            acc = 0
            while arow:
                low = arow & -arow
                acc ^= brows[low.bit_length() - 1]
                arow ^= low
            out |= acc << (i * n)
        return out

    def right_mul_maker(self, b):
        """A fast x -> x*b closure with b's rows precomputed."""
        n, mask = self.n, self.mask
        brows = self.row_list(b)

        def mul_by(a):
            out = 0
            for i in range(n):
                arow = (a >> (i * n)) & mask
                acc = 0
                while arow:
                    low = arow & -arow
                    acc ^= brows[low.bit_length() - 1]
                    arow ^= low
                out |= acc << (i * n)
            return out

        return mul_by

    def add(self, a, b):
        return a ^ b

    def scale(self, a, c):
        return a if c % 2 else 0

    def transpose(self, m):
        n = self.n
        rows = self.row_list(m)
        out = 0
        for i in range(n):
            for j in range(n):
                if (rows[i] >> j) & 1:
                    out |= 1 << (j * n + i)
        return out

    def inv(self, m):
        n, mask = self.n, self.mask
        rows = self.row_list(m)
        aug = [rows[i] | (1 << (n + i)) for i in range(n)]
        r = 0
        for c in range(n):
            piv = next((k for k in range(r, n) if (aug[k] >> c) & 1), None)
            if piv is None:
                raise ZeroDivisionError("matrix not invertible")
            aug[r], aug[piv] = aug[piv], aug[r]
            for k in range(n):
                if k != r and (aug[k] >> c) & 1:
                    aug[k] ^= aug[r]
            r += 1
        out = 0
        for i in range(n):
            out |= (aug[i] >> n) << (i * n)
        return out

    def rank(self, m):
        rows = [r for r in self.row_list(m) if r]
        r = 0
        for c in range(self.n):
            piv = next((k for k in range(r, len(rows)) if (rows[k] >> c) & 1), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for k in range(len(rows)):
                if k != r and (rows[k] >> c) & 1:
                    rows[k] ^= rows[r]
            r += 1
        return r

    def apply(self, vcode, m):
        n, mask = self.n, self.mask
        acc = 0
        v = vcode
        while v:
            low = v & -v
            acc ^= (m >> ((low.bit_length() - 1) * n)) & mask
            v ^= low
        return acc

    def vec_code(self, v):
        code = 0
        for i, e in enumerate(v):
            if e % 2:
                code |= 1 << i
        return code

    def vec_tuple(self, code):
        return tuple((code >> i) & 1 for i in range(self.n))


class _GenericSpace:
    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.identity = tuple(1 if i % (n + 1) == 0 else 0 for i in range(n * n))
        self.vec_count = p**n

    def from_rows(self, rows):
        p = self.p
        return tuple(int(e) % p for row in rows for e in row)

    def to_rows(self, m):
        n = self.n
        return tuple(tuple(m[i * n : (i + 1) * n]) for i in range(n))

    def mul(self, a, b):
        p, n = self.p, self.n
        cols = [b[j::n] for j in range(n)]
        out = []
        for i in range(n):
            arow = a[i * n : (i + 1) * n]
            for col in cols:
                out.append(sum(x * y for x, y in zip(arow, col)) % p)
        return tuple(out)

    def right_mul_maker(self, b):
        p, n = self.p, self.n
        cols = [b[j::n] for j in range(n)]

        def mul_by(a):
            out = []
            for i in range(n):
                arow = a[i * n : (i + 1) * n]
                for col in cols:
                    out.append(sum(x * y for x, y in zip(arow, col)) % p)
            return tuple(out)

        return mul_by

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def scale(self, a, c):
        p = self.p
        c %= p
        return tuple(x * c % p for x in a)

    def transpose(self, m):
        n = self.n
        return tuple(m[j * n + i] for i in range(n) for j in range(n))

    def inv(self, m):
        p, n = self.p, self.n
        aug = [list(m[i * n : (i + 1) * n]) + [1 if k == i else 0 for k in range(n)] for i in range(n)]
        r = 0
        for c in range(n):
            piv = next((k for k in range(r, n) if aug[k][c] % p), None)
            if piv is None:
                raise ZeroDivisionError("matrix not invertible")
            aug[r], aug[piv] = aug[piv], aug[r]
            scale = pow(aug[r][c], p - 2, p)
            aug[r] = [x * scale % p for x in aug[r]]
            for k in range(n):
                if k != r and aug[k][c]:
                    f = aug[k][c]
                    aug[k] = [(x - f * y) % p for x, y in zip(aug[k], aug[r])]
            r += 1
        return tuple(aug[i][n + j] for i in range(n) for j in range(n))

    def rank(self, m):
        p, n = self.p, self.n
        rows = [list(m[i * n : (i + 1) * n]) for i in range(n)]
        r = 0
        for c in range(n):
            piv = next((k for k in range(r, n) if rows[k][c] % p), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            scale = pow(rows[r][c], p - 2, p)
            rows[r] = [x * scale % p for x in rows[r]]
            for k in range(n):
                if k != r and rows[k][c]:
                    f = rows[k][c]
                    rows[k] = [(x - f * y) % p for x, y in zip(rows[k], rows[r])]
            r += 1
        return r

    def apply(self, vcode, m):
        p, n = self.p, self.n
        v = []
        c = vcode
        for _ in range(n):
            v.append(c % p)
            c //= p
        out = 0
        mult = 1
        for j in range(n):
            out += (sum(v[i] * m[i * n + j] for i in range(n)) % p) * mult
            mult *= p
        return out

    def vec_code(self, v):
        code = 0
        for e in reversed(list(v)):
            code = code * self.p + (e % self.p)
        return code

    def vec_tuple(self, code):
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)


def matrix_space(p, n):
    """Arithmetic context for n-by-n matrices over F_p."""
    if not is_prime(p):
        raise ValueError("characteristic must be prime")
    return _F2Space(n) if p == 2 else _GenericSpace(p, n)


def poly_eval_matrix(space, coeffs, m):
    """Evaluate a polynomial (constant term first) at a matrix."""
    acc = space.scale(space.identity, 0)
    for c in reversed(coeffs):
        acc = space.mul(acc, m)
        if c % space.p:
            acc = space.add(acc, space.scale(space.identity, c))
    return acc


class FiniteMatrixGroup:
    """A fully enumerated matrix group: element list in breadth-first order."""

    def __init__(self, space, elements, index, generators):
        self.space = space
        self.elements = elements
        self.index = index
        self.generators = generators

    @property
    def order(self):
        return len(self.elements)

    @property
    def p(self):
        return self.space.p

    @property
    def n(self):
        return self.space.n

    def __contains__(self, key):
        return key in self.index

    def _conjugation_perms(self):
        """Index permutations i -> index(g^-1 * x_i * g), one per generator."""
        space = self.space
        gens = self.generators if self.generators else [space.identity]
        if _np is not None and isinstance(space, _GenericSpace):
            n = space.n
            arr = _np.array([e for e in self.elements], dtype=_np.int64).reshape(-1, n, n)
            perms = []
            for g in gens:
                gm = _np.array(space.to_rows(g), dtype=_np.int64)
                gi = _np.array(space.to_rows(space.inv(g)), dtype=_np.int64)
                conj = _np.matmul(gi, _np.matmul(arr, gm)) % space.p
                idx = self.index
                perms.append([idx[tuple(f)] for f in conj.reshape(len(arr), n * n).tolist()])
            return perms
        perms = []
        for g in gens:
            ginv = space.inv(g)
            mul_by = space.right_mul_maker(g)
            idx = self.index
            perms.append([idx[space.mul(ginv, mul_by(x))] for x in self.elements])
        return perms

    def conjugacy_classes(self):
        """(representative, class size) in discovery order, via generator sweeps."""
        perms = self._conjugation_perms()
        seen = bytearray(len(self.elements))
        out = []
        for start in range(len(self.elements)):
            if seen[start]:
                continue
            seen[start] = 1
            orbit = [start]
            frontier = [start]
            while frontier:
                nxt = []
                for i in frontier:
                    for perm in perms:
                        j = perm[i]
                        if not seen[j]:
                            seen[j] = 1
                            orbit.append(j)
                            nxt.append(j)
                frontier = nxt
            out.append((self.elements[start], len(orbit)))
        return out

    def class_count(self):
        return len(self.conjugacy_classes())


def closure(space, generators, cap=CLOSURE_CAP):
    """Breadth-first closure of a generator list into a FiniteMatrixGroup."""
    gens = list(generators)
    if _np is not None and isinstance(space, _GenericSpace) and gens:
        return _closure_numpy(space, gens, cap)
    muls = [space.right_mul_maker(g) for g in gens]
    elements = [space.identity]
    index = {space.identity: 0}
    frontier = [space.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for mul_by in muls:
                y = mul_by(x)
                if y not in index:
                    if len(elements) >= cap:
                        raise GroupTooLarge(f"closure cap {cap} exceeded")
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    return FiniteMatrixGroup(space, elements, index, gens)


def _closure_numpy(space, gens, cap):
    p, n = space.p, space.n
    gen_arrays = [_np.array(space.to_rows(g), dtype=_np.int64) for g in gens]
    elements = [space.identity]
    index = {space.identity: 0}
    frontier = _np.array([space.to_rows(space.identity)], dtype=_np.int64)
    while len(frontier):
        fresh = []
        for g in gen_arrays:
            prods = _np.matmul(frontier, g) % p
            for flat in prods.reshape(len(prods), n * n).tolist():
                key = tuple(flat)
                if key not in index:
                    if len(elements) >= cap:
                        raise GroupTooLarge(f"closure cap {cap} exceeded")
                    index[key] = len(elements)
                    elements.append(key)
                    fresh.append(flat)
        if fresh:
            frontier = _np.array(fresh, dtype=_np.int64).reshape(len(fresh), n, n)
        else:
            frontier = _np.empty((0, n, n), dtype=_np.int64)
    return FiniteMatrixGroup(space, elements, index, gens)


def group_from_row_lists(p, n, generator_rows, cap=CLOSURE_CAP):
    space = matrix_space(p, n)
    gens = [space.from_rows(rows) for rows in generator_rows]
    for g in gens:
        space.inv(g)  # raises if a generator is singular
    return closure(space, gens, cap=cap)


# -- standard groups ------------------------------------------------------------


def symplectic_form_rows(m):
    """Gram matrix of the alternating form with B(e_i, f_j) = delta_ij."""
    n = 2 * m
    rows = [[0] * n for _ in range(n)]
    for i in range(m):
        rows[i][m + i] = 1
        rows[m + i][i] = -1
    return rows


def _transvection(space, j_rows, v, lam):
    """x -> x + lam * B(x, v) * v as a row-action matrix."""
    p, n = space.p, space.n
    jv = [sum(j_rows[i][k] * v[k] for k in range(n)) % p for i in range(n)]
    rows = [[(1 if i == j else 0) + lam * jv[i] * v[j] for j in range(n)] for i in range(n)]
    return space.from_rows(rows)


def symplectic_generators(m, q):
    """A short list of symplectic transvections (plus their product) generating Sp(2m, q).

    The generated order is asserted by symplectic_group, so the set is safe to trim.
    """
    n = 2 * m
    space = matrix_space(q, n)
    j_rows = [[e % q for e in row] for row in symplectic_form_rows(m)]
    vecs = []
    for i in range(m):
        e_i = [0] * n
        e_i[i] = 1
        f_i = [0] * n
        f_i[m + i] = 1
        vecs.extend([e_i, f_i])
    for i in range(m - 1):
        w = [0] * n
        w[i] = 1
        w[m + i + 1] = 1
        vecs.append(w)
        w2 = [0] * n
        w2[i + 1] = 1
        w2[m + i] = 1
        vecs.append(w2)
    all_t = [_transvection(space, j_rows, v, 1) for v in vecs]
    gens = all_t[:2]
    if m >= 3:
        gens.append(all_t[2 * m + 1])  # transvection at e_2 + f_1
    if m >= 2:
        prod = space.identity
        for t in all_t:
            prod = space.mul(prod, t)
        gens.append(prod)
    return space, gens


def symplectic_group(m, q, cap=CLOSURE_CAP):
    """Sp(2m, q) as an explicit group; order is checked against the closed form."""
    space, gens = symplectic_generators(m, q)
    group = closure(space, gens, cap=cap)
    expected = sp_order(m, q)
    if group.order != expected:
        raise AssertionError(f"Sp({2*m},{q}) closure gave {group.order}, expected {expected}")
    group.form_rows = symplectic_form_rows(m)
    return group


def general_linear_generators(n, q):
    """Adjacent elementary transvections plus one primitive scaling."""
    space = matrix_space(q, n)
    gens = []
    for i in range(n - 1):
        for (a, b) in ((i, i + 1), (i + 1, i)):
            rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            rows[a][b] = 1
            gens.append(space.from_rows(rows))
    g = _least_primitive_root(q)
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[0][0] = g
    gens.append(space.from_rows(rows))
    return space, gens


def general_linear_group(n, q, cap=CLOSURE_CAP):
    space, gens = general_linear_generators(n, q)
    return closure(space, gens, cap=cap)


def _least_primitive_root(p):
    from .intmath import multiplicative_order

    if p == 2:
        return 1
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise AssertionError("no primitive root")


# -- standard forms ----------------------------------------------------------------


def orthogonal_gram_rows(dim, sign, q):
    """Gram matrices of the two symmetric bilinear forms in odd characteristic.

    Odd dimension: diag-style block form, scaled by a non-square for the minus
    decoration.  Even dimension: hyperbolic planes, with the minus type ending in
    an anisotropic diag(1, -delta) block.
    """
    if q == 2:
        raise ValueError("use quadratic forms in characteristic 2")
    delta = next(d for d in range(2, q) if all(x * x % q != d for x in range(q)))
    rows = [[0] * dim for _ in range(dim)]
    if dim % 2 == 1:
        half = dim // 2
        rows[0][0] = 1
        for i in range(half):
            rows[1 + i][1 + half + i] = 1
            rows[1 + half + i][1 + i] = 1
        if sign < 0:
            rows = [[delta * e % q for e in row] for row in rows]
        return rows
    half = dim // 2
    if sign > 0:
        for i in range(half):
            rows[i][half + i] = 1
            rows[half + i][i] = 1
        return rows
    for i in range(half - 1):
        rows[i][half - 1 + i] = 1
        rows[half - 1 + i][i] = 1
    rows[dim - 2][dim - 2] = 1
    rows[dim - 1][dim - 1] = (-delta) % q
    return rows


def quadratic_form_char2(dim, sign):
    """Value/polar callables for the two quadratic forms on F_2^dim (dim even)."""
    if dim % 2:
        raise ValueError("even dimension only")
    half = dim // 2

    def value_plus(v):
        return sum(v[i] * v[half + i] for i in range(half)) % 2

    def value_minus(v):
        head = sum(v[i] * v[half + i] for i in range(half - 1))
        tail = v[half - 1] ** 2 + v[half - 1] * v[dim - 1] + v[dim - 1] ** 2
        return (head + tail) % 2

    value = value_plus if sign > 0 else value_minus

    def polar(u, v):
        s = tuple((a + b) % 2 for a, b in zip(u, v))
        return (value(s) + value(u) + value(v)) % 2

    return value, polar


def count_quadratic_isometries_char2(dim, sign):
    value, polar = quadratic_form_char2(dim, sign)
    return count_quadratic_isometries(value, polar, 2, dim)


def count_hermitian_isometries(q, n):
    """|U(n, q)| by brute force: rows over F_{q^2} hermitian-orthonormal."""
    from .intmath import prime_power
    from .polyfield import FiniteField

    p, k = prime_power(q)
    field = FiniteField(p, 2 * k)

    def conj(x):
        return field.power(x, q) if x else 0

    vectors = []
    for code in range(field.q**n):
        v = []
        c = code
        for _ in range(n):
            v.append(c % field.q)
            c //= field.q
        vectors.append(tuple(v))

    def pair(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = field.add(acc, field.mul(a, conj(b)))
        return acc

    target_pairs = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return _row_search(vectors, pair, lambda u: pair(u, u), target_pairs, [1] * n)


def count_invertible_matrices(p, n):
    """|GL(n, p)| by filtering the full matrix space (small n only)."""
    space = matrix_space(p, n)
    if p**(n * n) > 2**20:
        raise ValueError("matrix space too large to filter")
    count = 0
    if p == 2:
        for m in range(1 << (n * n)):
            if space.rank(m) == n:
                count += 1
        return count
    for code in range(p ** (n * n)):
        flat = []
        c = code
        for _ in range(n * n):
            flat.append(c % p)
            c //= p
        if space.rank(tuple(flat)) == n:
            count += 1
    return count


# -- isometry counting by constrained row search ---------------------------------


def count_bilinear_isometries(p, gram_rows):
    """Number of matrices M over F_p with M * G * M^T = G (rows = images of basis)."""
    n = len(gram_rows)
    vectors = _all_vectors(p, n)
    gram = [[e % p for e in row] for row in gram_rows]

    def b(u, v):
        return sum(u[i] * gram[i][j] * v[j] for i in range(n) for j in range(n)) % p

    target_pairs = [[gram[i][j] for j in range(n)] for i in range(n)]
    target_self = [gram[i][i] for i in range(n)]
    return _row_search(vectors, b, lambda u: b(u, u), target_pairs, target_self)


def count_quadratic_isometries(values, polar, p, n):
    """Number of matrices preserving a quadratic form given by value/polar callables."""
    vectors = _all_vectors(p, n)
    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    target_pairs = [[polar(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    target_self = [values(basis[i]) for i in range(n)]
    return _row_search(vectors, polar, values, target_pairs, target_self)


def _all_vectors(p, n):
    out = []
    for code in range(p**n):
        v = []
        c = code
        for _ in range(n):
            v.append(c % p)
            c //= p
        out.append(tuple(v))
    return out


def _row_search(vectors, pair_value, self_value, target_pairs, target_self):
    n = len(target_self)
    by_self = {}
    for v in vectors:
        by_self.setdefault(self_value(v), []).append(v)
    pair_bucket = {}
    for u in vectors:
        row = {}
        for v in vectors:
            row.setdefault(pair_value(u, v), set()).add(v)
        pair_bucket[u] = row

    count = 0
    chosen = []

    def walk(i):
        nonlocal count
        if i == n:
            count += 1
            return
        cands = set(by_self.get(target_self[i], []))
        for j in range(i):
            cands &= pair_bucket[chosen[j]].get(target_pairs[j][i], set())
            if not cands:
                return
        for v in sorted(cands):
            chosen.append(v)
            walk(i + 1)
            chosen.pop()

    walk(0)
    return count
