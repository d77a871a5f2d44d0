"""Exact orders of the finite classical groups used throughout."""

GL = "GL"
U = "U"
SP = "Sp"
O_PLUS_EVEN = "O_plus_even"
O_MINUS_EVEN = "O_minus_even"
O_ODD = "O_odd"

FAMILIES = (GL, U, SP, O_PLUS_EVEN, O_MINUS_EVEN, O_ODD)


class GroupLabel:
    """A classical group named by family, size parameter m and field size q.

    Dimension conventions: Sp and the even orthogonal families act in dimension 2m,
    the odd orthogonal family in dimension 2m+1, GL and U in dimension m.
    """

    __slots__ = ("family", "m", "q")

    def __init__(self, family, m, q):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if m < 0 or q < 2:
            raise ValueError("need m >= 0 and q >= 2")
        self.family = family
        self.m = m
        self.q = q

    @property
    def dimension(self):
        if self.family in (SP, O_PLUS_EVEN, O_MINUS_EVEN):
            return 2 * self.m
        if self.family == O_ODD:
            return 2 * self.m + 1
        return self.m

    def __eq__(self, other):
        return (
            isinstance(other, GroupLabel)
            and (self.family, self.m, self.q) == (other.family, other.m, other.q)
        )

    def __hash__(self):
        return hash((self.family, self.m, self.q))

    def __repr__(self):
        return f"GroupLabel({self.family}, m={self.m}, q={self.q})"


def gl_order(m, q):
    """|GL(m, q)|; 1 when m = 0."""
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out


def u_order(m, q):
    """|U(m, q)|, the unitary group on F_{q^2}^m; 1 when m = 0."""
    out = q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        out *= q**i - (-1) ** i
    return out


def sp_order(m, q):
    """|Sp(2m, q)|; 1 when m = 0."""
    out = q ** (m * m)
    for i in range(1, m + 1):
        out *= q ** (2 * i) - 1
    return out


def o_even_order(m, q, sign):
    """|O^sign(2m, q)| with sign +1 or -1; 1 when m = 0."""
    if m == 0:
        return 1
    out = 2 * q ** (m * (m - 1)) * (q**m - sign)
    for i in range(1, m):
        out *= q ** (2 * i) - 1
    return out


def o_odd_order(m, q):
    """|O(2m+1, q)|, identical for both sign decorations; 2 in dimension 1."""
    out = 2 * q**m
    for i in range(m):
        out *= q ** (2 * m) - q ** (2 * i)
    return out


def classical_order(label):
    """Exact order of the group named by a GroupLabel."""
    family, m, q = label.family, label.m, label.q
    if family == GL:
        return gl_order(m, q)
    if family == U:
        return u_order(m, q)
    if family == SP:
        return sp_order(m, q)
    if family == O_PLUS_EVEN:
        return o_even_order(m, q, +1)
    if family == O_MINUS_EVEN:
        return o_even_order(m, q, -1)
    return o_odd_order(m, q)


def sp_order_dim(dim, q):
    """|Sp(dim, q)| with dim even."""
    if dim % 2:
        raise ValueError("symplectic groups need even dimension")
    return sp_order(dim // 2, q)


def o_order_dim(dim, q, sign):
    """|O^sign(dim, q)| for any dimension; sign is ignored in odd dimension."""
    if dim % 2 == 0:
        return o_even_order(dim // 2, q, sign)
    return o_odd_order((dim - 1) // 2, q)
