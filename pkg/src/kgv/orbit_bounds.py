"""Cyclic-orbit count formulas on R/Z(R) and the fixed-space ratio case constants.

All values are exact integers or Fractions; no floating point.
"""

from fractions import Fraction


def d1(r, a):
    """Orbits of a single unipotent Jordan block of size 2a on F_r^(2a)."""
    if a < 1:
        raise ValueError("need a >= 1")
    k = 1
    while r**k < 2 * a:
        k += 1
    total = Fraction(r)
    for i in range(1, k + 1):
        total += Fraction(r ** min(r**i, 2 * a) - r ** min(r ** (i - 1), 2 * a), r**i)
    if total.denominator != 1:
        raise ArithmeticError("orbit count failed to be integral")
    return int(total)


def d2(r, a):
    """Orbits of two invariant unipotent Jordan blocks of size a on F_r^(2a)."""
    if a < 1:
        raise ValueError("need a >= 1")
    ell = 1
    while r**ell < a:
        ell += 1
    total = Fraction(r**2)
    for i in range(1, ell + 1):
        total += Fraction(r ** (2 * min(r**i, a)) - r ** (2 * min(r ** (i - 1), a)), r**i)
    if total.denominator != 1:
        raise ArithmeticError("orbit count failed to be integral")
    return int(total)


def max_multiplicity(total, square_budget):
    """Largest M <= total with M^2 + (total - M) <= square_budget.

    This is the extremal eigenvalue multiplicity when the multiplicities sum to
    `total` and their squares sum to at most `square_budget` (pad with ones).
    """
    if total < 1:
        raise ValueError("need total >= 1")
    if square_budget < total:
        raise ValueError("infeasible: square budget below the multiplicity sum")
    best = None
    for m in range(total, 0, -1):
        if m * m + (total - m) <= square_budget:
            best = m
            break
    return best


def orbit_bound_from_cycles(lengths):
    """Number of orbits of a cycle decomposition (fixed points count one each)."""
    lengths = list(lengths)
    if not lengths:
        raise ValueError("need at least one cycle")
    return len(lengths)


def eigen_dim_bound(kind, r, a, m):
    """Largest eigenspace dimension for an order-m element, capped at r^a.

    kind 'irreducible': the cyclic group acts irreducibly on R/Z(R), bound
    (r^a + 1)/m.  kind 'two_blocks': two invariant halves, bound 1 + (r^a - 1)/m.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    dim = r**a
    if kind == "irreducible":
        bound = Fraction(dim + 1, m)
    elif kind == "two_blocks":
        bound = 1 + Fraction(dim - 1, m)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return min(bound, Fraction(dim))


class RdimProfile:
    """Parameters of the fixed-ratio classification: r, a and the part counts.

    Use i (and j for r = 3) for the enumerated cases; other=True for the
    complementary case.  Ranges are validated exactly as printed in the case list.
    """

    __slots__ = ("r", "a", "i", "j", "other")

    def __init__(self, r, a, i=None, j=None, other=False):
        self.r = r
        self.a = a
        self.i = i
        self.j = j
        self.other = other
        if other:
            return
        if r == 2:
            if not (i is not None and 1 <= i <= 4 and 2 * i <= a <= 8):
                raise ValueError("r=2 case needs 1 <= i <= 4 and 2i <= a <= 8")
        elif r == 3:
            jj = 0 if j is None else j
            if not (a <= 4 and 0 <= jj <= 1 and 1 <= (i or 0) + jj <= 4 and (i or 0) + jj <= a):
                raise ValueError("r=3 case needs a <= 4, j <= 1, 1 <= i+j <= min(4, a)")
        elif r == 5:
            if not (a <= 2 and i in (1, 2) and i <= a):
                raise ValueError("r=5 case needs a <= 2 and i in {1, 2}, i <= a")
        elif r == 7:
            if not (a == 1 and i == 1):
                raise ValueError("r=7 case needs a = 1 and i = 1")
        else:
            raise ValueError("enumerated cases exist for r in {2, 3, 5, 7} only")


RDIM_DEFAULTS = {2: Fraction(1, 2), 3: Fraction(5, 9), 5: Fraction(11, 25), 7: Fraction(3, 7)}
RDIM_CASE_BOUNDS = {3: Fraction(2, 3), 5: Fraction(3, 5), 7: Fraction(4, 7)}


def rdim_case(profile):
    """Exact fixed-space ratio (or its printed upper bound) for a profile."""
    r = profile.r
    if r not in (2, 3, 5, 7):
        return Fraction(r + 1, 2 * r)
    if profile.other:
        return RDIM_DEFAULTS[r]
    if r == 2:
        return Fraction(1, 2) * (1 + Fraction(1, 2**profile.i))
    return RDIM_CASE_BOUNDS[r]


def rdim_fallback(r):
    """The universal ratio bound (r+1)/2r for non-identity elements."""
    return Fraction(r + 1, 2 * r)
