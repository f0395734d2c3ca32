"""Local Artinian Q-algebras, stored through their maximal ideal."""

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import Eliminator, Q, format_rational


class ArtinError(ValueError):
    pass


def _span_basis(vectors, r):
    """Row-reduced basis (list of dicts) of the span of sparse vectors."""
    el = Eliminator(r)
    for v in vectors:
        el.add_row(v)
    return [dict(el.pivots[p][0]) for p in sorted(el.pivots)]


class ArtinAlgebra:
    """A = Q.1 + m_A with m_A given by a basis and a product table.

    `products[(i, j)]` is a dict {k: coeff} giving e_i e_j; missing pairs are 0.
    """

    def __init__(self, names, products=None):
        self.names = tuple(names)
        r = self.r = len(self.names)
        if r == 0:
            raise ArtinError("the maximal ideal needs a nonempty basis")
        table = [[{} for _ in range(r)] for _ in range(r)]
        for (i, j), v in (products or {}).items():
            if not (0 <= i < r and 0 <= j < r):
                raise ArtinError("product index out of range: %r" % ((i, j),))
            table[i][j] = {k: Q(c) for k, c in v.items() if Q(c)}
        self.table = table
        self._check_algebra()
        self.powers = self._compute_powers()
        self.nilpotency_index = len(self.powers)
        if self.nilpotency_index > r + 1:
            raise ArtinError("maximal ideal is not nilpotent")
        self.weights = self._compute_weights()

    def _check_algebra(self):
        r = self.r
        for i in range(r):
            for j in range(r):
                if self.table[i][j] != self.table[j][i]:
                    raise ArtinError("product table is not commutative at %r" % ((i, j),))
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    left = self.mul(self.mul({i: 1}, {j: 1}), {k: 1})
                    right = self.mul({i: 1}, self.mul({j: 1}, {k: 1}))
                    if left != right:
                        raise ArtinError("product table is not associative at %r"
                                         % ((i, j, k),))

    def _compute_powers(self):
        """powers[k-1] is a basis of m^k, for k = 1 .. N-1."""
        r = self.r
        cur = _span_basis([{i: Fraction(1)} for i in range(r)], r)
        powers = []
        while cur:
            powers.append(cur)
            if len(powers) > r + 1:
                raise ArtinError("maximal ideal is not nilpotent")
            nxt = [self.mul(v, {i: Fraction(1)}) for v in cur for i in range(r)]
            cur = _span_basis([v for v in nxt if v], r)
        return [None] + powers

    def _compute_weights(self):
        """Per-basis weights when the basis is graded by the m-adic filtration."""
        w = []
        for i in range(self.r):
            k = 1
            while k + 1 < self.nilpotency_index and self.in_power({i: 1}, k + 1):
                k += 1
            w.append(k)
        for i in range(self.r):
            for j in range(self.r):
                for k in self.table[i][j]:
                    if w[k] != w[i] + w[j]:
                        return None
        return tuple(w)

    def mul(self, u, v):
        """Product of two sparse vectors {basis index: coeff}."""
        out = {}
        for i, a in u.items():
            if not a:
                continue
            row = self.table[i]
            for j, b in v.items():
                if not b:
                    continue
                for k, c in row[j].items():
                    val = out.get(k, 0) + a * b * c
                    if val:
                        out[k] = val
                    else:
                        out.pop(k, None)
        return out

    def in_power(self, v, k):
        """Is the sparse vector v in m^k?"""
        if k <= 1:
            return True
        if k >= self.nilpotency_index:
            return not any(v.values())
        el = Eliminator(self.r)
        for b in self.powers[k]:
            el.add_row(b)
        row, _ = el.reduce({i: Q(c) for i, c in v.items() if c})
        return not row

    def quotient_functionals(self, k):
        """Functionals (dicts) whose common kernel is m^k."""
        if k >= self.nilpotency_index:
            return [{i: Fraction(1)} for i in range(self.r)]
        # f . b = 0 for every basis vector b of m^k
        el = Eliminator(self.r)
        for b in self.powers[k]:
            el.add_row(b)
        return el.kernel_basis()

    def power_basis(self, k):
        if k >= self.nilpotency_index:
            return []
        if k <= 1:
            return [{i: Fraction(1)} for i in range(self.r)]
        return [dict(b) for b in self.powers[k]]

    def to_json(self):
        prods = []
        for i in range(self.r):
            for j in range(self.r):
                if self.table[i][j]:
                    vec = [format_rational(self.table[i][j].get(k, 0)) for k in range(self.r)]
                    prods.append([i, j, vec])
        return {"ideal_basis": list(self.names), "products": prods}

    @classmethod
    def from_json(cls, data):
        names = data["ideal_basis"]
        prods = {}
        for i, j, vec in data.get("products", []):
            v = {k: Q(c) for k, c in enumerate(vec) if Q(c)}
            prods[(i, j)] = v
            prods.setdefault((j, i), v)
        return cls(names, prods)

    def __eq__(self, other):
        return (isinstance(other, ArtinAlgebra) and self.names == other.names
                and self.table == other.table)

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "ArtinAlgebra(%s, N=%d)" % (", ".join(self.names), self.nilpotency_index)


def make_dual_numbers(n):
    """Q[e]/(e^n), with ideal basis e, e^2, ..., e^(n-1)."""
    if n < 2:
        raise ArtinError("need n >= 2")
    names = ["e"] + ["e^%d" % k for k in range(2, n)]
    prods = {}
    for i in range(1, n):
        for j in range(1, n):
            if i + j < n:
                prods[(i - 1, j - 1)] = {i + j - 1: Fraction(1)}
    return ArtinAlgebra(names, prods)


def multiply(A, u, v):
    """Product in m_A of two coordinate vectors (lists) in the ideal basis."""
    if len(u) != A.r or len(v) != A.r:
        raise ArtinError("basis-length mismatch")
    w = A.mul({i: Q(c) for i, c in enumerate(u) if Q(c)},
              {i: Q(c) for i, c in enumerate(v) if Q(c)})
    return [w.get(k, Fraction(0)) for k in range(A.r)]


@dataclass(frozen=True)
class SmallExtension:
    """A surjection B -> A whose kernel J satisfies J . m_B = 0.

    `projection[i]` is the image (dict over A's basis) of B's i-th basis vector;
    `kernel_basis` spans J as dicts over B's basis.
    """

    total: ArtinAlgebra
    base: ArtinAlgebra
    projection: tuple
    kernel_basis: tuple

    def __post_init__(self):
        B, A = self.total, self.base
        if len(self.projection) != B.r:
            raise ArtinError("projection must give an image for every basis vector of m_B")
        for i in range(B.r):
            for j in range(B.r):
                lhs = self.project(B.mul({i: 1}, {j: 1}))
                rhs = A.mul(self.projection[i], self.projection[j])
                if lhs != rhs:
                    raise ArtinError("projection is not multiplicative")
        # surjectivity: images span m_A
        img = _span_basis([self.projection[i] for i in range(B.r)], A.r)
        if len(img) != A.r:
            raise ArtinError("projection is not surjective")
        for v in self.kernel_basis:
            if self.project(v):
                raise ArtinError("kernel_basis element does not map to zero")
            for i in range(B.r):
                if B.mul(v, {i: 1}):
                    raise ArtinError("J . m_B != 0")
        if len(_span_basis(list(self.kernel_basis), B.r)) != B.r - A.r:
            raise ArtinError("kernel_basis does not span the kernel")
        object.__setattr__(self, "_section", self._build_section())

    def project(self, v):
        out = {}
        for i, c in v.items():
            for k, a in self.projection[i].items():
                val = out.get(k, 0) + c * a
                if val:
                    out[k] = val
                else:
                    out.pop(k, None)
        return out

    def _build_section(self):
        """A linear lift m_A -> m_B with projection . section = id."""
        B, A = self.total, self.base
        sec = []
        for k in range(A.r):
            el = Eliminator(B.r)
            # unknown x in m_B with project(x) = e_k: rows indexed by A basis
            rows = [{i: self.projection[i].get(kk, 0) for i in range(B.r)
                     if self.projection[i].get(kk, 0)} for kk in range(A.r)]
            for kk, row in enumerate(rows):
                el.add_row(row, 1 if kk == k else 0)
            sec.append(el.particular())
        return sec

    def lift(self, v):
        out = {}
        for k, c in v.items():
            for i, a in self._section[k].items():
                val = out.get(i, 0) + c * a
                if val:
                    out[i] = val
                else:
                    out.pop(i, None)
        return out


def small_extension_chain(n):
    """Q[e]/e^(k+1) -> Q[e]/e^k for k = n-1 down to 2."""
    if n < 3:
        raise ArtinError("need n >= 3")
    chain = []
    for k in range(n - 1, 1, -1):
        B = make_dual_numbers(k + 1)
        A = make_dual_numbers(k)
        proj = tuple({i: Fraction(1)} if i < k - 1 else {} for i in range(B.r))
        chain.append(SmallExtension(B, A, proj, ({k - 1: Fraction(1)},)))
    return chain
