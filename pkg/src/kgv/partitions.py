"""Integer partitions with the statistics the class-counting formulas consume."""

from math import comb

ENUMERATION_CAP = 40

SYMPLECTIC = "symplectic"
ORTHOGONAL = "orthogonal"


class Partition:
    """A weakly decreasing tuple of positive integers; () is the empty partition."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] < 1:
            raise ValueError("partition parts must be positive integers")
        self.parts = parts

    def size(self):
        return sum(self.parts)

    def multiplicities(self):
        """Map part size -> number of parts of that size."""
        out = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def dual(self):
        """Conjugate partition: i-th part of the dual is m_i + m_{i+1} + ..."""
        if not self.parts:
            return Partition()
        return Partition(sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1))

    def odd_part_count(self):
        return sum(1 for p in self.parts if p % 2 == 1)

    def n_statistic(self):
        """Sum of binomial(dual part, 2) over the dual parts."""
        return sum(comb(d, 2) for d in self.dual().parts)

    def to_json(self):
        return list(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


PLUS = 1
MINUS = -1


class SignedPartition:
    """A partition with one sign (+1/-1) per part size required by the family rule.

    Symplectic data sign the even part sizes that occur; orthogonal data sign the
    odd part sizes that occur.
    """

    __slots__ = ("base", "signs")

    def __init__(self, base, signs=None):
        self.base = base if isinstance(base, Partition) else Partition(base)
        self.signs = {int(k): int(v) for k, v in (signs or {}).items()}
        for v in self.signs.values():
            if v not in (PLUS, MINUS):
                raise ValueError("signs must be +1 or -1")

    def sign(self, part_size):
        return self.signs[part_size]

    def __eq__(self, other):
        return (
            isinstance(other, SignedPartition)
            and self.base == other.base
            and self.signs == other.signs
        )

    def __hash__(self):
        return hash((self.base, tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return f"SignedPartition({self.base.parts}, {self.signs})"


def dual(mu):
    return _as_partition(mu).dual()


def stats(mu):
    """size, odd-part count o, n-statistic and multiplicities of a partition."""
    mu = _as_partition(mu)
    return {
        "size": mu.size(),
        "o": mu.odd_part_count(),
        "n": mu.n_statistic(),
        "multiplicities": mu.multiplicities(),
    }


def enumerate_partitions(n, cap=ENUMERATION_CAP):
    """All partitions of n in descending lexicographic order, each exactly once."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    if n > cap:
        raise ValueError(f"partition enumeration cap exceeded: {n} > {cap}")
    out = []

    def extend(prefix, remaining, largest):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(largest, remaining), 0, -1):
            prefix.append(part)
            extend(prefix, remaining - part, part)
            prefix.pop()

    extend([], n, n if n else 1)
    if n == 0:
        out = [Partition()]
    return out


def required_sign_sizes(family, mu):
    """Part sizes of mu that the family rule equips with a sign choice."""
    mu = _as_partition(mu)
    if family == SYMPLECTIC:
        return sorted(s for s in mu.multiplicities() if s % 2 == 0)
    if family == ORTHOGONAL:
        return sorted(s for s in mu.multiplicities() if s % 2 == 1)
    raise ValueError(f"unknown family {family!r}")


def parity_rule_holds(family, mu):
    """Symplectic: odd parts have even multiplicity.  Orthogonal: even parts do."""
    mu = _as_partition(mu)
    residue = 1 if family == SYMPLECTIC else 0
    if family not in (SYMPLECTIC, ORTHOGONAL):
        raise ValueError(f"unknown family {family!r}")
    return all(m % 2 == 0 for s, m in mu.multiplicities().items() if s % 2 == residue)


def validate_signed(family, sp):
    """True iff the multiplicity parity rule holds and signs cover exactly the required sizes."""
    if not isinstance(sp, SignedPartition):
        raise TypeError("expected a SignedPartition")
    if not parity_rule_holds(family, sp.base):
        return False
    return sorted(sp.signs) == required_sign_sizes(family, sp.base)


def signed_variants(family, mu):
    """All valid SignedPartitions on mu for the family, or [] if the parity rule fails."""
    mu = _as_partition(mu)
    if not parity_rule_holds(family, mu):
        return []
    sizes = required_sign_sizes(family, mu)
    out = []
    for mask in range(1 << len(sizes)):
        signs = {s: (PLUS if mask >> i & 1 == 0 else MINUS) for i, s in enumerate(sizes)}
        out.append(SignedPartition(mu, signs))
    return out


def _as_partition(mu):
    return mu if isinstance(mu, Partition) else Partition(mu)
