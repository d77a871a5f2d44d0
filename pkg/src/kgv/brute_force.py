"""Brute-force oracles: explicit class counting, k(GV) via orbit/stabilizer sums,
meta-cyclic subgroup enumeration inside GL(1,p^n).n, and Jordan-type censuses.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from math import gcd

from .group_orders import sp_order
from .intmath import divisors, is_prime, primes_up_to
from .matgroup import (
    CLOSURE_CAP,
    FiniteMatrixGroup,
    closure,
    matrix_space,
    poly_eval_matrix,
    symplectic_form_rows,
)
from .polyfield import FiniteField, enumerate_irreducibles

DIRECT_CAP = 10**5
METACYCLIC_CAP = 1024


# -- k(GV) ------------------------------------------------------------------------


def dual_action_matrices(group):
    """Matrices of the action on functionals: g acts by transpose(inverse(g))."""
    space = group.space
    return [(g, space.transpose(space.inv(g))) for g in group.generators]


def kgv_count(group, method="lgt", direct_cap=DIRECT_CAP):
    """Number of conjugacy classes of the semidirect product of group with F_p^n.

    'lgt' sums class numbers of stabilizers over orbit representatives on the
    dual space; 'direct' builds the semidirect product explicitly (capped).
    """
    if method == "lgt":
        return _kgv_lgt(group)
    if method == "direct":
        return _kgv_direct(group, direct_cap)
    raise ValueError(f"unknown method {method!r}")


def _kgv_lgt(group):
    space = group.space
    pairs = dual_action_matrices(group)
    total = group.class_count()  # stabilizer of the trivial functional is G itself
    visited = bytearray(space.vec_count)
    visited[0] = 1
    for start in range(1, space.vec_count):
        if visited[start]:
            continue
        transversal = {start: space.identity}
        order_found = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for c in frontier:
                t_c = transversal[c]
                for g, dual in pairs:
                    c2 = space.apply(c, dual)
                    if c2 not in transversal:
                        transversal[c2] = space.mul(t_c, g)
                        visited[c2] = 1
                        order_found.append(c2)
                        nxt.append(c2)
            frontier = nxt
        visited[start] = 1
        stab_order = group.order // len(transversal)
        if group.order % len(transversal):
            raise AssertionError("orbit size does not divide the group order")
        total += _stabilizer_class_count(group, pairs, transversal, order_found, stab_order)
    return total


def _stabilizer_class_count(group, pairs, transversal, order_found, stab_order):
    if stab_order == 1:
        return 1
    space = group.space
    sgens = []
    subgroup = {space.identity}
    for c in order_found:
        t_c = transversal[c]
        for g, dual in pairs:
            c2 = space.apply(c, dual)
            s = space.mul(space.mul(t_c, g), space.inv(transversal[c2]))
            if s not in subgroup:
                sgens.append(s)
                subgroup = _closure_set(space, sgens)
                if len(subgroup) == stab_order:
                    stab = closure(space, sgens, cap=stab_order)
                    return stab.class_count()
    raise AssertionError("Schreier generators did not reach the stabilizer order")


def _closure_set(space, gens):
    out = {space.identity}
    frontier = [space.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = space.mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _kgv_direct(group, cap):
    space = group.space
    size = group.order * space.vec_count
    if size > cap:
        raise ValueError(f"direct semidirect product too large: {size} > {cap}")
    p, n = space.p, space.n

    def vec_add(a, b):
        if p == 2:
            return a ^ b
        out, mult = 0, 1
        for _ in range(n):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def mul(x, y):
        (m1, v1), (m2, v2) = x, y
        return (space.mul(m1, m2), vec_add(space.apply(v1, m2), v2))

    def inv(x):
        m, v = x
        mi = space.inv(m)
        vi = space.apply(v, mi)
        neg = vi if p == 2 else space.vec_code(tuple(-c % p for c in space.vec_tuple(vi)))
        return (mi, neg)

    gens = [(g, 0) for g in group.generators]
    basis_codes = [space.vec_code(tuple(1 if k == i else 0 for k in range(n))) for i in range(n)]
    gens += [(space.identity, b) for b in basis_codes]
    identity = (space.identity, 0)
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    if len(elements) != size:
        raise AssertionError("semidirect product has unexpected order")
    pairs = [(g, inv(g)) for g in gens]
    seen = bytearray(size)
    count = 0
    for start in range(size):
        if seen[start]:
            continue
        seen[start] = 1
        count += 1
        frontier = [elements[start]]
        while frontier:
            nxt = []
            for y in frontier:
                for g, ginv in pairs:
                    z = mul(ginv, mul(y, g))
                    i = index[z]
                    if not seen[i]:
                        seen[i] = 1
                        nxt.append(z)
            frontier = nxt
    return count


def orbit_count_on_vectors(group, dual=False):
    """Number of orbits of the group on F_p^n (or on the dual space)."""
    space = group.space
    mats = [d for _, d in dual_action_matrices(group)] if dual else list(group.generators)
    if not mats:
        mats = [space.identity]
    visited = bytearray(space.vec_count)
    count = 0
    for start in range(space.vec_count):
        if visited[start]:
            continue
        count += 1
        visited[start] = 1
        frontier = [start]
        while frontier:
            nxt = []
            for c in frontier:
                for m in mats:
                    c2 = space.apply(c, m)
                    if not visited[c2]:
                        visited[c2] = 1
                        nxt.append(c2)
            frontier = nxt
    return count


# -- Jordan data ------------------------------------------------------------------


def jordan_class_datum(space, x, irreducibles=None):
    """GL rational-canonical-form label of x: sorted ((poly coeffs), (partition)) pairs.

    The partition attached to an irreducible divisor phi of the characteristic
    polynomial is recovered from the kernel dimensions of phi(x)^j.
    """
    p, n = space.p, space.n
    if irreducibles is None:
        irreducibles = enumerate_irreducibles(p, n)
    label = []
    covered = 0
    for poly in irreducibles:
        d = poly.degree
        if d > n - covered:
            continue
        fx = poly_eval_matrix(space, poly.coeffs, x)
        nullity = n - space.rank(fx)
        if nullity == 0:
            continue
        kernel_dims = [0, nullity]
        power = fx
        while True:
            power = space.mul(power, fx)
            nl = n - space.rank(power)
            if nl == kernel_dims[-1]:
                break
            kernel_dims.append(nl)
        block_counts = []
        for j in range(1, len(kernel_dims)):
            block_counts.append((kernel_dims[j] - kernel_dims[j - 1]) // d)
        # block_counts[j-1] = number of blocks of size >= j; convert to a partition.
        parts = []
        for size in range(len(block_counts), 0, -1):
            parts.extend([size] * (block_counts[size - 1] - (block_counts[size] if size < len(block_counts) else 0)))
        parts.sort(reverse=True)
        label.append((poly.coeffs, tuple(parts)))
        covered += d * sum(parts)
    if covered != n:
        raise AssertionError("Jordan datum does not cover the space")
    return tuple(sorted(label))


def type_histogram(group, cap=CLOSURE_CAP):
    """Exact census of the group by Jordan-type label, via class representatives."""
    if group.order > cap:
        raise ValueError(f"group too large for census: {group.order} > {cap}")
    space = group.space
    irreducibles = enumerate_irreducibles(space.p, space.n)
    hist = {}
    for rep, size in group.conjugacy_classes():
        label = jordan_class_datum(space, rep, irreducibles)
        hist[label] = hist.get(label, 0) + size
    return hist


def refined_involution_census(group, form_rows):
    """For p = 2: per unipotent Jordan type, split involutions (and the identity)
    by whether every size-2 block acts on a totally singular plane.

    The planes spanned by v and v(x-1) are all singular exactly when the linear
    functional v -> B(v, v(x-1)) vanishes; the image of x - 1 itself is singular
    for every symplectic involution, so that weaker test would not split anything.
    """
    space = group.space
    if space.p != 2:
        raise ValueError("refined census applies to characteristic 2 only")
    n = space.n
    gram = [[e % 2 for e in row] for row in form_rows]
    irreducibles = enumerate_irreducibles(2, n)
    out = {}
    for rep, size in group.conjugacy_classes():
        if space.mul(rep, rep) != space.identity:
            continue
        label = jordan_class_datum(space, rep, irreducibles)
        mu = label[0][1] if label else ()
        xm1 = space.add(rep, space.identity)
        singular = True
        for i in range(n):
            e_i = space.vec_code(tuple(1 if k == i else 0 for k in range(n)))
            u = space.vec_tuple(e_i)
            w = space.vec_tuple(space.apply(e_i, xm1))
            value = sum(u[s] * gram[s][t] * w[t] for s in range(n) for t in range(n)) % 2
            if value:
                singular = False
                break
        key = (mu, singular)
        out[key] = out.get(key, 0) + size
    return out


def unipotent_count(group):
    """Number of unipotent elements, from the Jordan census."""
    space = group.space
    t_minus_1 = (space.p - 1, 1)
    count = 0
    for label, size in type_histogram(group).items():
        if len(label) == 1 and label[0][0] == t_minus_1:
            count += size
    return count


# -- single-generator orbit counts (oracles for the orbit-count formulas) ----------


def jordan_block_orbit_count(r, block_sizes):
    """Orbits of the cyclic group generated by a unipotent Jordan matrix on F_r^N."""
    n = sum(block_sizes)
    space = matrix_space(r, n)
    rows = [[0] * n for _ in range(n)]
    pos = 0
    for size in block_sizes:
        for i in range(size):
            rows[pos + i][pos + i] = 1
            if i + 1 < size:
                rows[pos + i][pos + i + 1] = 1
        pos += size
    m = space.from_rows(rows)
    visited = bytearray(space.vec_count)
    count = 0
    for start in range(space.vec_count):
        if visited[start]:
            continue
        count += 1
        c = start
        while not visited[c]:
            visited[c] = 1
            c = space.apply(c, m)
    return count


# -- meta-cyclic subgroups of GL(1, p^n).n ------------------------------------------


class MetacyclicSpec:
    """A subgroup of GL(1,p^n).n: generated by a^m and a^k b^(n/d).

    a generates the Singer cycle (multiplication by a field generator), b is the
    Frobenius x -> x^p; m | p^n - 1, d | n, and 0 <= k < m with
    m | k * (p^n - 1)/(p^(n/d) - 1).
    """

    __slots__ = ("p", "n", "m", "d", "k")

    def __init__(self, p, n, m, d, k):
        self.p = p
        self.n = n
        self.m = m
        self.d = d
        self.k = k

    @property
    def group_order(self):
        return self.d * (self.p**self.n - 1) // self.m

    def key(self):
        return (self.p, self.n, self.m, self.d, self.k)

    def __repr__(self):
        return f"MetacyclicSpec(p={self.p}, n={self.n}, m={self.m}, d={self.d}, k={self.k})"


def metacyclic_enumerate(p, n, cap=METACYCLIC_CAP):
    """All subgroups of GL(1,p^n).n as canonical specs, deduplicated.

    Distinct canonical parameters give distinct element sets: m recovers the
    Singer intersection, d the Frobenius part, and k (mod m) the coset of the
    chosen complement generator.
    """
    q = p**n
    if q > cap:
        raise ValueError(f"meta-cyclic cap exceeded: {q} > {cap}")
    out = []
    for d in divisors(n):
        quotient = (q - 1) // (p ** (n // d) - 1)
        for m in divisors(q - 1):
            if d == 1:
                out.append(MetacyclicSpec(p, n, m, 1, 0))
                continue
            step = m // gcd(m, quotient)
            for k in range(0, m, step):
                out.append(MetacyclicSpec(p, n, m, d, k))
    return out


def metacyclic_matrix_group(spec, field=None):
    """The spec's group as explicit F_p matrices via the field model of V."""
    field = field or FiniteField(spec.p, spec.n)
    space = matrix_space(spec.p, spec.n)
    a_gen = _mult_matrix(field, space, field.power(field.generator, spec.m))
    gens = [a_gen]
    if spec.d > 1:
        frob = _frobenius_matrix(field, space)
        c = _mult_matrix(field, space, field.power(field.generator, spec.k)) if spec.k else space.identity
        fm = space.identity
        for _ in range(spec.n // spec.d):
            fm = space.mul(fm, frob)
        gens.append(space.mul(c, fm))
    group = closure(space, gens, cap=2 * spec.group_order)
    if group.order != spec.group_order:
        raise AssertionError(
            f"meta-cyclic group built with order {group.order}, expected {spec.group_order}"
        )
    return group


def _mult_matrix(field, space, s):
    rows = []
    for i in range(field.n):
        basis = field.from_coeffs(tuple(1 if j == i else 0 for j in range(field.n)))
        rows.append(list(field.element_coeffs(field.mul(basis, s))))
    return space.from_rows(rows)


def _frobenius_matrix(field, space):
    rows = []
    for i in range(field.n):
        basis = field.from_coeffs(tuple(1 if j == i else 0 for j in range(field.n)))
        rows.append(list(field.element_coeffs(field.frobenius(basis))))
    return space.from_rows(rows)


def _verify_prime_power(args):
    p, n = args
    field = FiniteField(p, n)
    rows = []
    for spec in metacyclic_enumerate(p, n):
        group = metacyclic_matrix_group(spec, field)
        kgv = kgv_count(group, "lgt")
        rows.append((spec.key(), kgv))
    return rows


def prime_powers_up_to(q_max, min_value=2):
    out = []
    for p in primes_up_to(q_max):
        q = p
        n = 1
        while q <= q_max:
            if q >= min_value:
                out.append((p, n))
            q *= p
            n += 1
    return sorted(out, key=lambda t: (t[0] ** t[1], t[0]))


def conjugacy_canonical_k(p, n, m, d, k):
    """Least k' with the subgroup for k' conjugate in GL(1,p^n).n to the one for k.

    Conjugating by Singer powers shifts k by multiples of p^(n/d) - 1 and
    conjugating by the Frobenius multiplies k by p, both modulo m.
    """
    if d == 1 or m == 1:
        return 0
    shift = (p ** (n // d) - 1) % m
    orbit = {k % m}
    frontier = [k % m]
    while frontier:
        nxt = []
        for x in frontier:
            for y in ((x + shift) % m, x * p % m):
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return min(orbit)


def verify_metacyclic_theorem(q_max, jobs=1):
    """Check k(GV) <= |V| over every meta-cyclic spec with p^n <= q_max.

    Violating instances are reported up to conjugacy inside GL(1,p^n).n, as dicts
    {p, n, m, d, k, kGV, V, conjugates}.
    """
    if q_max > METACYCLIC_CAP:
        raise ValueError(f"q_max above supported cap {METACYCLIC_CAP}")
    tasks = prime_powers_up_to(q_max)
    results = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for rows in pool.map(_verify_prime_power, tasks):
                results.extend(rows)
    else:
        for t in tasks:
            results.extend(_verify_prime_power(t))
    grouped = {}
    for (p, n, m, d, k), kgv in sorted(results):
        if kgv > p**n:
            canon = (p, n, m, d, conjugacy_canonical_k(p, n, m, d, k))
            entry = grouped.setdefault(canon, {"kGV": kgv, "conjugates": 0})
            entry["conjugates"] += 1
            if entry["kGV"] != kgv:
                raise AssertionError("conjugate subgroups disagree on k(GV)")
    return [
        {"p": p, "n": n, "m": m, "d": d, "k": k, "kGV": e["kGV"], "V": p**n,
         "conjugates": e["conjugates"]}
        for (p, n, m, d, k), e in sorted(grouped.items())
    ]


# -- normalizers and the small-lemma report -----------------------------------------


def normalizer_in_gl(target, ambient, cap=CLOSURE_CAP):
    """Normalizer of a target subgroup inside a fully enumerated ambient group."""
    if ambient.order > cap:
        raise ValueError(f"ambient group too large: {ambient.order} > {cap}")
    space = ambient.space
    members = set(target.elements)
    gens = target.generators or target.elements
    found = []
    for g in ambient.elements:
        ginv = space.inv(g)
        if all(space.mul(ginv, space.mul(h, g)) in members for h in gens):
            found.append(g)
    index = {g: i for i, g in enumerate(found)}
    return FiniteMatrixGroup(space, found, index, list(gens))


def verify_small_lemmas(q_max=64):
    """Instance-by-instance checks of the counting lemmas on small meta-cyclic data.

    Returns {check_name: {"instances": count, "failures": [witness, ...]}}.
    """
    report = {
        "centralizer_bound": {"instances": 0, "failures": []},
        "brauer_orbit_equality": {"instances": 0, "failures": []},
        "nagao_product": {"instances": 0, "failures": []},
        "gallagher_index": {"instances": 0, "failures": []},
        "sqrt_subgroup": {"instances": 0, "failures": []},
        "lgt_equals_direct": {"instances": 0, "failures": []},
    }
    for p, n in prime_powers_up_to(q_max):
        field = FiniteField(p, n)
        specs = metacyclic_enumerate(p, n)
        full = metacyclic_matrix_group(MetacyclicSpec(p, n, 1, n, 0), field)
        k_full = full.class_count()
        for spec in specs:
            group = metacyclic_matrix_group(spec, field)
            space = group.space
            q = p**n

            if spec.d > 1:
                least_prime = min(p_ for p_ in range(2, spec.d + 1) if spec.d % p_ == 0)
                for x in group.elements:
                    if x == space.identity:
                        continue
                    fixed_dim = n - space.rank(space.add(x, space.scale(space.identity, -1)))
                    report["centralizer_bound"]["instances"] += 1
                    if fixed_dim * least_prime > n:
                        report["centralizer_bound"]["failures"].append(
                            {"spec": spec.key(), "fixed_dim": fixed_dim}
                        )

            on_v = orbit_count_on_vectors(group)
            on_dual = orbit_count_on_vectors(group, dual=True)
            report["brauer_orbit_equality"]["instances"] += 1
            if on_v != on_dual:
                report["brauer_orbit_equality"]["failures"].append(
                    {"spec": spec.key(), "orbits_V": on_v, "orbits_dual": on_dual}
                )

            kg = group.class_count()
            kgv = kgv_count(group, "lgt")
            report["nagao_product"]["instances"] += 1
            if kgv > q * kg:
                report["nagao_product"]["failures"].append({"spec": spec.key()})

            idx = full.order // group.order
            report["gallagher_index"]["instances"] += 1
            if kg > idx * k_full:
                report["gallagher_index"]["failures"].append({"spec": spec.key()})

            report["sqrt_subgroup"]["instances"] += 1
            if kg * kg > full.order * k_full:
                report["sqrt_subgroup"]["failures"].append({"spec": spec.key()})

            if group.order * q <= DIRECT_CAP:
                report["lgt_equals_direct"]["instances"] += 1
                if kgv != kgv_count(group, "direct"):
                    report["lgt_equals_direct"]["failures"].append({"spec": spec.key()})
    return report


# -- generator-file ingestion --------------------------------------------------------


def load_generator_file(path, cap=CLOSURE_CAP):
    """Build a group from a JSON file {"p": ..., "n": ..., "generators": [[row...]...]}."""
    with open(path) as fh:
        data = json.load(fh)
    p, n = int(data["p"]), int(data["n"])
    if not is_prime(p):
        raise ValueError("p must be prime")
    space = matrix_space(p, n)
    gens = [space.from_rows(rows) for rows in data["generators"]]
    for g in gens:
        space.inv(g)
    return closure(space, gens, cap=cap)


def standard_symplectic_group(m, q, cap=CLOSURE_CAP):
    """Sp(2m, q) with its defining form attached (convenience for censuses)."""
    from .matgroup import symplectic_group

    group = symplectic_group(m, q, cap=cap)
    return group
