"""Monic polynomials over prime fields, explicit small finite fields, Zsigmondy primes.

Polynomials are stored as coefficient tuples with the constant term first and the
leading coefficient equal to 1.  Field elements are integer codes: the element
sum(c_i * x^i) has code sum(c_i * p^i).
"""

from .intmath import divisors, factorize, is_prime, multiplicative_order, prime_power

IRREDUCIBLE_ENUM_CAP = 2**20
FIELD_SIZE_CAP = 2**20


class MonicPoly:
    """A monic polynomial of degree >= 1 over F_r."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r, coeffs):
        coeffs = tuple(int(c) % r for c in coeffs)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("need a monic polynomial of degree >= 1")
        self.r = r
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def constant_term(self):
        return self.coeffs[0]

    def to_json(self):
        return list(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, MonicPoly) and self.r == other.r and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.r, self.coeffs))

    def __lt__(self, other):
        return (self.degree, self.coeffs[::-1]) < (other.degree, other.coeffs[::-1])

    def __repr__(self):
        return f"MonicPoly(r={self.r}, {poly_str(self.coeffs)})"


def poly_str(coeffs):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}t" if i == 1 else f"{head}t^{i}")
    return " + ".join(terms) if terms else "0"


def poly_mul(r, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % r
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_mod(r, a, m):
    """Remainder of a modulo the monic polynomial m, over F_r."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % r
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % r
    a = a[:dm]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(c % r for c in a) if a else (0,)


def _all_monic(r, degree):
    """All monic coefficient tuples of the given degree, lexicographic in the code."""
    out = []
    for code in range(r**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % r)
            c //= r
        coeffs.append(1)
        out.append(tuple(coeffs))
    return out


def enumerate_irreducibles(r, max_degree, cap=IRREDUCIBLE_ENUM_CAP):
    """All monic irreducibles over F_r of degree <= max_degree with nonzero constant term.

    The polynomial t itself is excluded.  Deterministic order: by degree, then by
    the base-r code of the non-leading coefficients.
    """
    if not is_prime(r):
        raise ValueError("characteristic must be prime")
    if r**max_degree > cap:
        raise ValueError(f"irreducible enumeration cap exceeded: {r}^{max_degree} > {cap}")
    by_degree = {d: _all_monic(r, d) for d in range(1, max_degree + 1)}
    reducible = set()
    irreducible = []
    for d in range(1, max_degree + 1):
        irr_d = [f for f in by_degree[d] if f not in reducible]
        irreducible.extend(MonicPoly(r, f) for f in irr_d if f[0] != 0)
        # Mark all products involving the new irreducibles so later degrees see them.
        for f in irr_d:
            for e in range(d, max_degree - d + 1):
                for g in by_degree[e]:
                    prod = poly_mul(r, f, g)
                    if len(prod) - 1 <= max_degree:
                        reducible.add(prod)
    return irreducible


def is_irreducible(poly):
    """Trial-division irreducibility for a MonicPoly (small degrees only)."""
    r, coeffs = poly.r, poly.coeffs
    d = poly.degree
    for f in enumerate_irreducibles(r, d // 2, cap=max(IRREDUCIBLE_ENUM_CAP, r ** (d // 2))):
        if poly_mod(r, coeffs, f.coeffs) == (0,):
            return False
    # Factors of the form t^k need checking separately since t is excluded above.
    return coeffs[0] != 0 or d == 1


def reciprocal_conjugate(poly):
    """The monic polynomial with reciprocal roots: a0^{-1} * t^deg * poly(1/t)."""
    r = poly.r
    a0 = poly.constant_term
    if a0 == 0:
        raise ValueError("reciprocal conjugate needs a nonzero constant term")
    inv = pow(a0, r - 2, r)
    return MonicPoly(r, tuple((inv * c) % r for c in reversed(poly.coeffs)))


class FiniteField:
    """The field F_{p^n} with explicit exp/log tables (sizes capped).

    The modulus is the lexicographically least irreducible of degree n and the
    generator is the least element code of full multiplicative order, so the
    construction is deterministic.
    """

    def __init__(self, p, n, cap=FIELD_SIZE_CAP):
        if not is_prime(p):
            raise ValueError("characteristic must be prime")
        q = p**n
        if q > cap:
            raise ValueError(f"field size cap exceeded: {p}^{n} > {cap}")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = min(
            (f for f in enumerate_irreducibles(p, n, cap=max(cap, q)) if f.degree == n),
            key=lambda f: f.coeffs,
        )
        self._build_tables()

    def _codes_mul(self, a, b):
        pa = self._decode(a)
        pb = self._decode(b)
        return self._encode(poly_mod(self.p, poly_mul(self.p, pa, pb), self.modulus.coeffs))

    def _decode(self, code):
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def _encode(self, coeffs):
        code = 0
        for c in reversed(coeffs[: self.n]):
            code = code * self.p + c
        return code

    def _build_tables(self):
        order_target = self.q - 1
        factors = factorize(order_target) if order_target > 1 else {}
        gen = None
        for cand in range(1, self.q):
            ok = True
            for prime in factors:
                if self._pow_code(cand, order_target // prime) == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        self.generator = gen if gen is not None else 1
        exp = [1] * max(order_target, 1)
        for i in range(1, order_target):
            exp[i] = self._codes_mul(exp[i - 1], self.generator)
        self.exp = exp
        self.log = {c: i for i, c in enumerate(exp)}

    def _pow_code(self, base, e):
        acc = 1
        while e:
            if e & 1:
                acc = self._codes_mul(acc, base)
            base = self._codes_mul(base, base)
            e >>= 1
        return acc

    # -- public element arithmetic on codes ------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        out = 0
        mult = 1
        for _ in range(self.n):
            out += ((a + b) % self.p) * mult
            a //= self.p
            b //= self.p
            mult *= self.p
        return out

    def neg(self, a):
        if self.p == 2:
            return a
        out = 0
        mult = 1
        for _ in range(self.n):
            out += (-a % self.p) * mult
            a //= self.p
            mult *= self.p
        return out

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def power(self, a, e):
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0**e undefined for e <= 0")
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a):
        return self.power(a, self.p) if a else 0

    def discrete_log(self, a):
        if a == 0:
            raise ValueError("discrete log of zero")
        return self.log[a]

    def element_coeffs(self, code):
        """Coefficient vector of an element over F_p, constant coordinate first."""
        return self._decode(code)

    def from_coeffs(self, coeffs):
        return self._encode(tuple(int(c) % self.p for c in coeffs))


def make_field(p, n, cap=FIELD_SIZE_CAP):
    return FiniteField(p, n, cap=cap)


def zsigmondy(p, n):
    """Largest prime dividing p^n - 1 but no p^r - 1 for 1 <= r < n; None if absent."""
    if n < 1:
        raise ValueError("need n >= 1")
    value = p**n - 1
    if value == 1:
        return None
    best = None
    for q in factorize(value):
        if multiplicative_order(p % q, q) == n:
            if best is None or q > best:
                best = q
    return best
