"""Finite quadratic forms on finite abelian groups (discriminant forms).

A form is presented by generators: a list of orders m_i, the values
q(g_i) in Q/2Z, and the pairings b(g_i, g_j) in Q/Z.  The presentation is
kept as given (cyclic_normalize is explicit, never implicit), and
isomorphism testing is an exhaustive search over generator images, which
is decisive for the group orders that occur here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .lattice import (
    DimensionMismatch,
    GramMatrix,
    OddLattice,
    DegenerateLattice,
    determinant,
    discriminant_group,
    pairing_modZ,
    qnorm_mod2Z,
    smith_normal_form,
)

ISO_GROUP_BOUND = 100_000


class InvalidForm(ValueError):
    """Presentation violates the finite-quadratic-form axioms."""


class TooLarge(ValueError):
    """Group order exceeds the exhaustive-search bound."""


@dataclass(frozen=True)
class FiniteQF:
    """Finite abelian group with a Q/2Z quadratic form and Q/Z pairing.

    ``orders[i]`` is the order of generator g_i, ``q[i] = q(g_i)`` in [0,2),
    and ``b[i][j] = b(g_i, g_j)`` in [0,1) with b[i][i] == q[i] mod 1.
    """

    orders: tuple[int, ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.orders)
        if len(self.q) != k or len(self.b) != k or any(len(r) != k for r in self.b):
            raise InvalidForm("inconsistent presentation sizes")
        for i, m in enumerate(self.orders):
            if m < 2:
                raise InvalidForm("generator orders must be >= 2")
            qi = self.q[i]
            if not (0 <= qi < 2):
                raise InvalidForm(f"q value {qi} outside [0, 2)")
            if (m * m * qi) % 2 != 0:
                raise InvalidForm(f"q({m}*g) = {m * m * qi} must vanish mod 2Z")
            if self.b[i][i] != qi % 1:
                raise InvalidForm("pairing diagonal must equal q mod Z")
        for i in range(k):
            for j in range(k):
                bij = self.b[i][j]
                if not (0 <= bij < 1):
                    raise InvalidForm(f"pairing {bij} outside [0, 1)")
                if bij != self.b[j][i]:
                    raise InvalidForm("pairing must be symmetric")
                if (self.orders[i] * bij) % 1 != 0 or (self.orders[j] * bij) % 1 != 0:
                    raise InvalidForm("pairing must be killed by both generator orders")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def cyclic(m: int, value) -> "FiniteQF":
        """Z_m with q(generator) = value."""
        v = Fraction(value) % 2
        return FiniteQF((m,), (v,), ((v % 1,),))

    @staticmethod
    def trivial() -> "FiniteQF":
        return FiniteQF((), (), ())

    @staticmethod
    def from_generators(orders, qvals, pairings=None) -> "FiniteQF":
        """Build from orders, q values and optional off-diagonal pairings.

        ``pairings`` maps (i, j) with i < j to b(g_i, g_j); omitted pairs are 0.
        """
        orders = tuple(int(m) for m in orders)
        q = tuple(Fraction(v) % 2 for v in qvals)
        k = len(orders)
        b = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            b[i][i] = q[i] % 1
        if pairings:
            for (i, j), v in pairings.items():
                if i == j:
                    raise InvalidForm("diagonal pairings are determined by q")
                b[i][j] = b[j][i] = Fraction(v) % 1
        return FiniteQF(orders, q, tuple(tuple(r) for r in b))

    @staticmethod
    def from_lattice(g: GramMatrix) -> "FiniteQF":
        """Discriminant form of an even nondegenerate lattice."""
        if not g.is_even():
            raise OddLattice("discriminant form requires an even lattice")
        if determinant(g) == 0:
            raise DegenerateLattice("discriminant form requires det != 0")
        factors, gens = discriminant_group(g)
        q = tuple(qnorm_mod2Z(g, v) for v in gens)
        k = len(gens)
        b = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            b[i][i] = q[i] % 1
            for j in range(i + 1, k):
                b[i][j] = b[j][i] = pairing_modZ(g, gens[i], gens[j])
        return FiniteQF(tuple(factors), q, tuple(tuple(r) for r in b))

    # -- basic algebra --------------------------------------------------

    @property
    def group_order(self) -> int:
        n = 1
        for m in self.orders:
            n *= m
        return n

    def is_orthogonal(self) -> bool:
        """True when all cross-pairings between distinct generators vanish."""
        k = len(self.orders)
        return all(self.b[i][j] == 0 for i in range(k) for j in range(i + 1, k))

    def direct_sum(self, other: "FiniteQF") -> "FiniteQF":
        """Orthogonal sum: concatenated generators, zero cross-pairings."""
        k1, k2 = len(self.orders), len(other.orders)
        b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                b[i][j] = self.b[i][j]
        for i in range(k2):
            for j in range(k2):
                b[k1 + i][k1 + j] = other.b[i][j]
        return FiniteQF(self.orders + other.orders, self.q + other.q,
                        tuple(tuple(r) for r in b))

    def negate(self) -> "FiniteQF":
        """Sign-flip: q -> (2 - q) mod 2Z, b -> (1 - b) mod Z."""
        q = tuple((2 - v) % 2 for v in self.q)
        b = tuple(tuple((1 - x) % 1 for x in row) for row in self.b)
        return FiniteQF(self.orders, q, b)

    def evaluate(self, coeffs) -> Fraction:
        """q of the combination sum(c_i * g_i), via bilinear expansion."""
        c = [int(x) for x in coeffs]
        if len(c) != len(self.orders):
            raise DimensionMismatch(
                f"expected {len(self.orders)} coefficients, got {len(c)}")
        c = [x % m for x, m in zip(c, self.orders)]
        val = sum((Fraction(ci * ci) * qi for ci, qi in zip(c, self.q)), Fraction(0))
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                val += 2 * c[i] * c[j] * self.b[i][j]
        return val % 2

    def pairing(self, coeffs1, coeffs2) -> Fraction:
        """b of two combinations, in [0, 1)."""
        c1 = [int(x) for x in coeffs1]
        c2 = [int(x) for x in coeffs2]
        val = Fraction(0)
        for i, x in enumerate(c1):
            for j, y in enumerate(c2):
                val += x * y * self.b[i][j]
        return val % 1

    def cyclic_normalize(self) -> "FiniteQF":
        """Merge coprime-order generators by CRT, then sort summands.

        Two generators of coprime order automatically pair to zero, so their
        sum generates the product cyclic group and carries q = q_i + q_j.
        Merging is leftmost-first and the result is sorted by (order, q),
        which makes the output deterministic.
        """
        orders = list(self.orders)
        q = list(self.q)
        b = [list(row) for row in self.b]
        while True:
            hit = None
            for i in range(len(orders)):
                for j in range(i + 1, len(orders)):
                    if gcd(orders[i], orders[j]) == 1:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                break
            i, j = hit
            if b[i][j] != 0:
                raise InvalidForm("coprime generators must pair to zero")
            m = orders[i] * orders[j]
            qm = (q[i] + q[j]) % 2
            cross = [(b[i][t] + b[j][t]) % 1 for t in range(len(orders))]
            orders[i] = m
            q[i] = qm
            for t in range(len(orders)):
                if t != i:
                    b[i][t] = b[t][i] = cross[t]
            b[i][i] = qm % 1
            del orders[j], q[j]
            del b[j]
            for row in b:
                del row[j]
        perm = sorted(range(len(orders)), key=lambda t: (orders[t], q[t]))
        orders = [orders[t] for t in perm]
        q = [q[t] for t in perm]
        b = [[b[s][t] for t in perm] for s in perm]
        return FiniteQF(tuple(orders), tuple(q), tuple(tuple(r) for r in b))

    # -- isomorphism ----------------------------------------------------

    def _element_order(self, x: tuple[int, ...]) -> int:
        return lcm(*(m // gcd(m, xi) for m, xi in zip(self.orders, x))) if x else 1

    def _scaled_tables(self, scale: int):
        """Integer q values (mod 2*scale) for every group element."""
        k = len(self.orders)
        qs = [int(v * scale) for v in self.q]
        bs = [[int(x * scale) for x in row] for row in self.b]
        table: dict[tuple[int, ...], tuple[int, int]] = {}
        for x in product(*(range(m) for m in self.orders)):
            val = 0
            for i in range(k):
                xi = x[i]
                if xi:
                    val += xi * xi * qs[i]
                    for j in range(i + 1, k):
                        if x[j]:
                            val += 2 * xi * x[j] * bs[i][j]
            table[x] = (self._element_order(x), val % (2 * scale))
        return table, bs

    def _generates_all(self, images: list[tuple[int, ...]], other: "FiniteQF") -> bool:
        """Do the image elements generate the whole target group?

        The cokernel of [images | diag(orders)] is trivial exactly when the
        induced map is onto, which for equal group orders means bijective.
        """
        k2 = len(other.orders)
        cols = [list(img) for img in images]
        mat = [[cols[c][r] for c in range(len(cols))] +
               [other.orders[r] if c == r else 0 for c in range(k2)]
               for r in range(k2)]
        snf = smith_normal_form(mat)
        return all(snf.D[i][i] == 1 for i in range(k2))

    def is_isomorphic(self, other: "FiniteQF") -> bool:
        """Exhaustive test for an isomorphism carrying q to q.

        It is enough to match q on generators and b on generator pairs:
        bilinear expansion then transports q everywhere, and b is determined
        by q.  Candidate images are pruned by element order and q value.
        """
        if self.group_order != other.group_order:
            return False
        if self.group_order > ISO_GROUP_BOUND:
            raise TooLarge(f"group order {self.group_order} exceeds {ISO_GROUP_BOUND}")
        if _abelian_factors(self.orders) != _abelian_factors(other.orders):
            return False
        if not self.orders:
            return True

        scale = lcm(*( [v.denominator for v in self.q + other.q]
                     + [x.denominator for row in self.b for x in row]
                     + [x.denominator for row in other.b for x in row] + [1]))
        table1, _ = self._scaled_tables(scale)
        table2, bs2 = other._scaled_tables(scale)

        counts1: dict[tuple[int, int], int] = {}
        counts2: dict[tuple[int, int], int] = {}
        for sig in table1.values():
            counts1[sig] = counts1.get(sig, 0) + 1
        for sig in table2.values():
            counts2[sig] = counts2.get(sig, 0) + 1
        if counts1 != counts2:
            return False

        by_sig: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for x, sig in table2.items():
            by_sig.setdefault(sig, []).append(x)

        k = len(self.orders)
        idx = sorted(range(k), key=lambda i: -self.orders[i])
        qs1 = [int(v * scale) for v in self.q]
        bs1 = [[int(x * scale) for x in row] for row in self.b]

        def pair2(x, y) -> int:
            val = 0
            for i in range(len(x)):
                if x[i]:
                    row = bs2[i]
                    for j in range(len(y)):
                        if y[j]:
                            val += x[i] * y[j] * row[j]
            return val % scale

        images: list[tuple[int, ...] | None] = [None] * k

        def search(pos: int) -> bool:
            if pos == k:
                return self._generates_all([images[i] for i in range(k)], other)
            i = idx[pos]
            want = (self.orders[i], qs1[i] % (2 * scale))
            for cand in by_sig.get(want, ()):
                ok = True
                for prev in idx[:pos]:
                    if pair2(cand, images[prev]) != bs1[i][prev] % scale:
                        ok = False
                        break
                if ok:
                    images[i] = cand
                    if search(pos + 1):
                        return True
                    images[i] = None
            return False

        return search(0)

    # -- text form --------------------------------------------------------

    def literal(self) -> str | None:
        """`Zm(p/q)+...` text form; None when cross-pairings are nonzero."""
        if not self.is_orthogonal():
            return None
        if not self.orders:
            return "trivial"
        return "+".join(f"Z{m}({v})" for m, v in zip(self.orders, self.q))

    def __str__(self) -> str:
        lit = self.literal()
        if lit is not None:
            return lit
        pairs = ", ".join(
            f"b(g{i + 1},g{j + 1})={self.b[i][j]}"
            for i in range(len(self.orders)) for j in range(i + 1, len(self.orders))
            if self.b[i][j] != 0)
        base = "+".join(f"Z{m}({v})" for m, v in zip(self.orders, self.q))
        return f"{base} [{pairs}]"


def _abelian_factors(orders) -> dict[int, int]:
    """Multiset of prime-power cyclic factors of a product of cyclic groups."""
    out: dict[int, int] = {}
    for m in orders:
        d = 2
        while d * d <= m:
            if m % d == 0:
                pe = 1
                while m % d == 0:
                    pe *= d
                    m //= d
                out[pe] = out.get(pe, 0) + 1
            d += 1
        if m > 1:
            out[m] = out.get(m, 0) + 1
    return out


def direct_sum(*forms: FiniteQF) -> FiniteQF:
    total = FiniteQF.trivial()
    for f in forms:
        total = total.direct_sum(f)
    return total


_TOKEN = re.compile(r"Z(\d+)\(\s*(-?\d+(?:/\d+)?)\s*\)$")


def parse_form_literal(text: str) -> FiniteQF:
    """Parse `Z2(3/2)+Z30(23/30)` style literals (orthogonal sums only)."""
    text = text.strip()
    if text in ("trivial", ""):
        return FiniteQF.trivial()
    parts = [p.strip() for p in text.split("+")]
    orders: list[int] = []
    qvals: list[Fraction] = []
    for p in parts:
        m = _TOKEN.match(p)
        if not m:
            raise ValueError(f"bad finite-form token {p!r}")
        orders.append(int(m.group(1)))
        qvals.append(Fraction(m.group(2)))
    return FiniteQF.from_generators(orders, qvals)
