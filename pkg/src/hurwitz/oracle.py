"""Independent brute-force ground truth in small symmetric groups.

Everything here counts or multiplies explicit permutations; the
character machinery never enters the counting path, which is the whole
point: these are the oracles the fast character-sum engine is checked
against.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i`` (0-based).
Products are ``(p * q)(i) = p[q[i]]``, i.e. ``q`` acts first; a sequence
of factors multiplies left to right with the leftmost applied last,
which matches reading a factorization ``sigma_1 sigma_2 ... = id``.

Transposition sequences with monotone constraints compare the *larger*
moved point: for ``(a b)`` with ``a < b``, weak blocks require
``b_i <= b_{i+1}`` and strict blocks ``b_i < b_{i+1}``; the constraint
resets at every block boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, SizeLimitError
from .partitions import Partition, check_partition, class_data, enumerate_partitions

ORACLE_MAX_DEGREE = 6
ORACLE_MAX_TRANSPOSITIONS = 10

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q, q applied first."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def identity(d: int) -> Perm:
    return tuple(range(d))


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lens.append(n)
    return tuple(sorted(lens, reverse=True))


def _check_degree(d: int):
    if d < 1:
        raise DomainError(f"degree must be positive: {d}")
    if d > ORACLE_MAX_DEGREE:
        raise SizeLimitError(f"oracle degree {d} exceeds the guard {ORACLE_MAX_DEGREE}")


@lru_cache(maxsize=None)
def group(d: int) -> tuple[Perm, ...]:
    _check_degree(d)
    return tuple(itertools.permutations(range(d)))


@lru_cache(maxsize=None)
def transpositions(d: int) -> tuple[tuple[Perm, int], ...]:
    """All transpositions with their larger moved point (1-based)."""
    _check_degree(d)
    out = []
    for b in range(1, d):
        for a in range(b):
            p = list(range(d))
            p[a], p[b] = p[b], p[a]
            out.append((tuple(p), b + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def class_perms(d: int, mu: Partition) -> tuple[Perm, ...]:
    _check_degree(d)
    mu = check_partition(mu)
    if sum(mu) != d:
        raise DomainError(f"{mu} is not a partition of {d}")
    return tuple(p for p in group(d) if cycle_type(p) == mu)


def class_representative(d: int, mu) -> Perm:
    """Canonical permutation of cycle type mu: consecutive cycles."""
    mu = check_partition(mu)
    if sum(mu) != d:
        raise DomainError(f"{mu} is not a partition of {d}")
    out = list(range(d))
    start = 0
    for part in mu:
        for k in range(part):
            out[start + k] = start + (k + 1) % part
        start += part
    return tuple(out)


# ---------------------------------------------------------------------------
# Group algebra elements
# ---------------------------------------------------------------------------

class GroupAlgebraElement:
    """Sparse rational linear combination of permutations of S_d."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs=None):
        _check_degree(d)
        self.d = d
        self.coeffs: dict[Perm, Fraction] = {}
        if coeffs:
            for p, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[tuple(p)] = c

    @classmethod
    def zero(cls, d: int) -> "GroupAlgebraElement":
        return cls(d)

    @classmethod
    def identity(cls, d: int) -> "GroupAlgebraElement":
        return cls(d, {identity(d): 1})

    @classmethod
    def class_sum(cls, d: int, mu) -> "GroupAlgebraElement":
        return cls(d, {p: 1 for p in class_perms(d, check_partition(mu))})

    @classmethod
    def jucys_murphy(cls, d: int, k: int) -> "GroupAlgebraElement":
        """J_k = sum of (i k) for i < k; J_1 = 0."""
        if not 1 <= k <= d:
            raise DomainError(f"Jucys-Murphy index {k} out of range 1..{d}")
        out = cls(d)
        for p, b in transpositions(d):
            if b == k:
                out.coeffs[p] = Fraction(1)
        return out

    def _check(self, other: "GroupAlgebraElement"):
        if self.d != other.d:
            raise DomainError("degree mismatch in group algebra")

    def __add__(self, other):
        self._check(other)
        out = GroupAlgebraElement(self.d)
        out.coeffs = dict(self.coeffs)
        for p, c in other.coeffs.items():
            s = out.coeffs.get(p, Fraction(0)) + c
            if s:
                out.coeffs[p] = s
            else:
                out.coeffs.pop(p, None)
        return out

    def __neg__(self):
        out = GroupAlgebraElement(self.d)
        out.coeffs = {p: -c for p, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "GroupAlgebraElement":
        q = Fraction(q)
        out = GroupAlgebraElement(self.d)
        if q:
            out.coeffs = {p: c * q for p, c in self.coeffs.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            self._check(other)
            out = GroupAlgebraElement(self.d)
            acc = out.coeffs
            for p, cp in self.coeffs.items():
                for q, cq in other.coeffs.items():
                    r = compose(p, q)
                    s = acc.get(r, Fraction(0)) + cp * cq
                    if s:
                        acc[r] = s
                    else:
                        acc.pop(r, None)
            return out
        return self.scale(other)

    __rmul__ = __mul__

    def coefficient(self, p: Perm) -> Fraction:
        return self.coeffs.get(tuple(p), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, GroupAlgebraElement)
            and self.d == other.d
            and self.coeffs == other.coeffs
        )

    def class_coefficients(self) -> dict[Partition, Fraction]:
        """Per-class coefficient; raises if the element is not central."""
        out: dict[Partition, Fraction] = {}
        for mu in enumerate_partitions(self.d):
            vals = {self.coefficient(p) for p in class_perms(self.d, mu)}
            if len(vals) != 1:
                raise DomainError(f"element is not constant on the class {mu}")
            out[mu] = vals.pop()
        return out

    def __repr__(self):
        return f"GroupAlgebraElement(d={self.d}, {len(self.coeffs)} terms)"


# ---------------------------------------------------------------------------
# Factorization counting
# ---------------------------------------------------------------------------

CONSTRAINTS = ("none", "weak", "strict")


@dataclass(frozen=True)
class Block:
    """One run of transpositions with a monotonicity constraint."""

    count: int
    constraint: str

    def __post_init__(self):
        if self.count < 0:
            raise DomainError(f"block count must be nonnegative: {self.count}")
        if self.constraint not in CONSTRAINTS:
            raise DomainError(f"unknown constraint {self.constraint!r}")


@dataclass(frozen=True)
class FactorizationQuery:
    """Count factorizations id = sigma_1..sigma_N * (transposition blocks)."""

    d: int
    profiles: tuple[Partition, ...] = ()
    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "profiles",
                           tuple(check_partition(mu) for mu in self.profiles))
        object.__setattr__(self, "blocks", tuple(self.blocks))
        _check_degree(self.d)
        for mu in self.profiles:
            if sum(mu) != self.d:
                raise DomainError(f"profile {mu} does not partition {self.d}")
        if self.total_transpositions() > ORACLE_MAX_TRANSPOSITIONS:
            raise SizeLimitError(
                f"{self.total_transpositions()} transpositions exceed the guard "
                f"{ORACLE_MAX_TRANSPOSITIONS}"
            )

    def total_transpositions(self) -> int:
        return sum(b.count for b in self.blocks)


@lru_cache(maxsize=None)
def block_walk(d: int, blocks: tuple[Block, ...]) -> tuple[tuple[Perm, int], ...]:
    """Number of admissible transposition sequences reaching each product.

    Pure dynamic programming over literal products: states are
    (running product, larger point of the previous transposition in the
    current block); merging equal states only collects identical
    branches of the depth-first walk, so the counts are exactly the
    sequence counts.
    """
    taus = transpositions(d)
    acc: dict[Perm, int] = {identity(d): 1}
    for block in blocks:
        if block.count == 0:
            continue
        if block.constraint == "none":
            cur = acc
            for _ in range(block.count):
                nxt: dict[Perm, int] = {}
                for p, n in cur.items():
                    for tau, _b in taus:
                        q = compose(p, tau)
                        nxt[q] = nxt.get(q, 0) + n
                cur = nxt
            acc = cur
        else:
            strict = block.constraint == "strict"
            states: dict[tuple[Perm, int], int] = {(p, 0): n for p, n in acc.items()}
            for _ in range(block.count):
                nxt_states: dict[tuple[Perm, int], int] = {}
                for (p, last), n in states.items():
                    for tau, b in taus:
                        if b < last or (strict and b == last):
                            continue
                        key = (compose(p, tau), b)
                        nxt_states[key] = nxt_states.get(key, 0) + n
                states = nxt_states
            acc = {}
            for (p, _last), n in states.items():
                acc[p] = acc.get(p, 0) + n
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _profile_products(d: int, profiles: tuple[Partition, ...]
                      ) -> tuple[tuple[Perm, int], ...]:
    """#ways to write each permutation as an ordered product over the
    profile classes, by literal enumeration."""
    vec: dict[Perm, int] = {identity(d): 1}
    for mu in profiles:
        nxt: dict[Perm, int] = {}
        for p, n in vec.items():
            for sigma in class_perms(d, mu):
                q = compose(sigma, p)
                nxt[q] = nxt.get(q, 0) + n
        vec = nxt
    return tuple(vec.items())


def count_factorizations(query: FactorizationQuery) -> Fraction:
    """Normalized count: raw count / (d! * prod of class sizes).

    The identity coefficient of (prod of class sums) * (block element)
    is the convolution below; both factors come from literal
    enumeration and both are cached across queries.
    """
    d = query.d
    walk = dict(block_walk(d, query.blocks))
    raw = 0
    for p, n in _profile_products(d, query.profiles):
        w = walk.get(inverse(p))
        if w:
            raw += n * w
    denominator = math.factorial(d)
    for mu in query.profiles:
        denominator *= class_data(mu).class_size
    return Fraction(raw, denominator)


def count_factorizations_dfs(query: FactorizationQuery, *, guard: int = 6) -> Fraction:
    """Same count by raw depth-first enumeration of every tuple.

    Exponentially slow; kept as an audit path and cross-checked against
    the dynamic-programming walk in the tests.
    """
    d = query.d
    if query.total_transpositions() > guard:
        raise SizeLimitError("DFS oracle guard exceeded")
    taus = transpositions(d)
    count = 0

    def walk_blocks(prefix: Perm, blocks):
        nonlocal count
        if not blocks:
            if prefix == identity(d):
                count += 1
            return
        head, tail = blocks[0], blocks[1:]
        strict = head.constraint == "strict"

        def walk(p: Perm, remaining: int, last: int):
            if remaining == 0:
                walk_blocks(p, tail)
                return
            for tau, b in taus:
                if head.constraint != "none" and (b < last or (strict and b == last)):
                    continue
                walk(compose(p, tau), remaining - 1, b)

        walk(prefix, head.count, 0)

    def walk_profiles(p: Perm, profiles):
        if not profiles:
            walk_blocks(p, query.blocks)
            return
        for sigma in class_perms(d, profiles[0]):
            walk_profiles(compose(p, sigma), profiles[1:])

    walk_profiles(identity(d), query.profiles)
    denominator = math.factorial(d)
    for mu in query.profiles:
        denominator *= class_data(mu).class_size
    return Fraction(count, denominator)


# ---------------------------------------------------------------------------
# Jucys-Murphy elements and symmetric polynomials of them
# ---------------------------------------------------------------------------

def jm_symmetric_evaluate(kind: str, k: int, d: int) -> GroupAlgebraElement:
    """e_k or h_k of the Jucys-Murphy elements, by literal expansion.

    The elementary case multiplies out prod_i (1 + z J_i) and the
    complete-homogeneous case prod_i 1/(1 - z J_i), both truncated at
    z^k, then extracts the z^k coefficient.
    """
    if kind not in ("e", "h"):
        raise DomainError(f"kind must be 'e' or 'h', got {kind!r}")
    if k < 0 or k > 8:
        raise SizeLimitError(f"symmetric-polynomial degree {k} outside the guard 0..8")
    _check_degree(d)
    coeffs = [GroupAlgebraElement.identity(d)] + [
        GroupAlgebraElement.zero(d) for _ in range(k)
    ]
    for i in range(2, d + 1):
        j = GroupAlgebraElement.jucys_murphy(d, i)
        if kind == "e":
            for c in range(k, 0, -1):
                coeffs[c] = coeffs[c] + coeffs[c - 1] * j
        else:
            powers = [GroupAlgebraElement.identity(d)]
            for _ in range(k):
                powers.append(powers[-1] * j)
            new = []
            for c in range(k + 1):
                acc = GroupAlgebraElement.zero(d)
                for t in range(c + 1):
                    if not coeffs[c - t].is_zero():
                        acc = acc + coeffs[c - t] * powers[t]
                new.append(acc)
            coeffs = new
    return coeffs[k]


# ---------------------------------------------------------------------------
# Central idempotents and the content-eigenvalue property
# ---------------------------------------------------------------------------

def central_idempotent(lam) -> GroupAlgebraElement:
    """F_lambda = (dim/d!) sum_mu chi_lambda(mu) C_mu."""
    from . import characters  # local import keeps the counting paths character-free

    lam = check_partition(lam)
    d = sum(lam)
    _check_degree(d)
    table = characters.char_table(d)
    out = GroupAlgebraElement(d)
    scale = Fraction(characters.dim(lam), math.factorial(d))
    for mu in table.partitions:
        chi = table.value(lam, mu)
        if not chi:
            continue
        for p in class_perms(d, mu):
            out.coeffs[p] = scale * chi
    return out


def resolution_of_identity(d: int) -> bool:
    total = GroupAlgebraElement.zero(d)
    for lam in enumerate_partitions(d):
        total = total + central_idempotent(lam)
    return total == GroupAlgebraElement.identity(d)


def idempotent_check(lam, *, z_order: int = 4, literal_order: int = 1,
                     u_values=(), v_values=()) -> dict:
    """Verify idempotency, orthogonality, and the content-eigenvalue law.

    The weight function G(z) = prod (1+u z) / ((1-z)^literal_order
    prod (1-v z)) is evaluated at z * J_i for every i; acting on
    F_lambda each z-coefficient must equal the scalar obtained by
    evaluating the same product at the box contents of lambda.  All u, v
    are specialised to the supplied rationals.
    """
    from .exactnum import affine_factor, geometric_factor, geometric_power, MultiPoly
    from .partitions import contents

    lam = check_partition(lam)
    d = sum(lam)
    _check_degree(d)
    f_lam = central_idempotent(lam)

    idempotent = (f_lam * f_lam) == f_lam
    orthogonal = True
    for eta in enumerate_partitions(d):
        if eta == lam:
            continue
        if not (f_lam * central_idempotent(eta)).is_zero():
            orthogonal = False
            break

    u_values = [Fraction(u) for u in u_values]
    v_values = [Fraction(v) for v in v_values]

    def scalar_series(c: Fraction):
        s = geometric_power(c, literal_order, z_order)
        one = MultiPoly.constant(0, 1)
        for u in u_values:
            s = s.mul(affine_factor(c, one.scale(u), z_order))
        for v in v_values:
            s = s.mul(geometric_factor(c, one.scale(v), z_order))
        return [coeff.constant_value() for coeff in s.coeffs]

    # group-algebra side: product over i of G(z J_i), truncated
    series = [GroupAlgebraElement.identity(d)] + [
        GroupAlgebraElement.zero(d) for _ in range(z_order)
    ]
    for i in range(1, d + 1):
        j = GroupAlgebraElement.jucys_murphy(d, i)
        powers = [GroupAlgebraElement.identity(d)]
        for _ in range(z_order):
            powers.append(powers[-1] * j)
        g = scalar_series(Fraction(1))  # G coefficients with J_i slot marked by powers
        new = []
        for c in range(z_order + 1):
            acc = GroupAlgebraElement.zero(d)
            for t in range(c + 1):
                if g[t] and not series[c - t].is_zero():
                    acc = acc + (series[c - t] * powers[t]).scale(g[t])
            new.append(acc)
        series = new

    # scalar side: same product over the contents of lambda
    eigen = [Fraction(1)] + [Fraction(0)] * z_order
    for c in contents(lam):
        g = scalar_series(Fraction(c))
        eigen = [
            sum((eigen[t] * g[n - t] for t in range(n + 1)), Fraction(0))
            for n in range(z_order + 1)
        ]

    eigen_ok = all(
        (series[n] * f_lam) == f_lam.scale(eigen[n]) for n in range(z_order + 1)
    )
    return {
        "partition": lam,
        "idempotent": idempotent,
        "orthogonal": orthogonal,
        "eigenvalue_law": eigen_ok,
        "passed": idempotent and orthogonal and eigen_ok,
    }


# ---------------------------------------------------------------------------
# Brute-force irreducible characters from permutation modules
# ---------------------------------------------------------------------------

def _tabloids(lam: Partition, d: int):
    """Ordered set partitions of range(d) with block sizes lam."""
    def rec(remaining: frozenset, shape):
        if not shape:
            yield ()
            return
        head, *tail = shape
        for block in itertools.combinations(sorted(remaining), head):
            fs = frozenset(block)
            for rest in rec(remaining - fs, tail):
                yield (fs,) + rest

    yield from rec(frozenset(range(d)), list(lam))


def permutation_character(lam, mu) -> int:
    """Trace of a permutation of cycle type mu on the tabloid module of shape lam.

    This is an honest fixed-point count on explicitly enumerated
    tabloids, with no character theory behind it.
    """
    lam = check_partition(lam)
    mu = check_partition(mu)
    d = sum(lam)
    if sum(mu) != d:
        raise DomainError(f"size mismatch: |{lam}| != |{mu}|")
    _check_degree(d)
    sigma = class_representative(d, mu)
    fixed = 0
    for tab in _tabloids(lam, d):
        image = tuple(frozenset(sigma[x] for x in block) for block in tab)
        if image == tab:
            fixed += 1
    return fixed


def bruteforce_character_table(d: int) -> dict[Partition, dict[Partition, Fraction]]:
    """Irreducible characters from permutation characters alone.

    Young's rule makes the permutation characters unitriangular over the
    irreducibles in dominance order, so Gram-Schmidt with the class
    inner product peels them off top-down.  Independent of the
    Murnaghan-Nakayama path.
    """
    _check_degree(d)
    parts = enumerate_partitions(d)
    sizes = {mu: class_data(mu).class_size for mu in parts}
    order = math.factorial(d)

    def inner(f, g):
        return sum((sizes[mu] * f[mu] * g[mu] for mu in parts), Fraction(0)) / order

    chars: dict[Partition, dict[Partition, Fraction]] = {}
    for lam in parts:  # reverse-lex order extends dominance downward
        vec = {mu: Fraction(permutation_character(lam, mu)) for mu in parts}
        for prev in chars.values():
            c = inner(vec, prev)
            if c:
                vec = {mu: vec[mu] - c * prev[mu] for mu in parts}
        chars[lam] = vec
    return chars
