"""Finite-dimensional Z-graded spaces, graded maps and cochain cohomology."""

from fractions import Fraction

from .exactalg import Eliminator, Matrix, Q, format_rational


class NotADifferential(ValueError):
    pass


class GradedSpace:
    """Degrees with dimensions; basis vectors are flattened by increasing degree."""

    def __init__(self, dims, names=None):
        self.dims = {int(j): int(n) for j, n in dims.items() if int(n) > 0}
        if any(n < 0 for n in dims.values()):
            raise ValueError("negative dimension")
        self.degrees = sorted(self.dims)
        self.offset = {}
        k = 0
        for j in self.degrees:
            self.offset[j] = k
            k += self.dims[j]
        self.dim = k
        self.deg_of = []
        for j in self.degrees:
            self.deg_of.extend([j] * self.dims[j])
        if names is None:
            names = {j: ["v%d_%d" % (j, i) for i in range(self.dims[j])] for j in self.degrees}
        self.names = {int(j): list(v) for j, v in names.items() if int(j) in self.dims}

    def index(self, deg, i):
        if not 0 <= i < self.dims.get(deg, 0):
            raise IndexError("no basis vector %d in degree %d" % (i, deg))
        return self.offset[deg] + i

    def local(self, idx):
        j = self.deg_of[idx]
        return j, idx - self.offset[j]

    def indices(self, deg):
        o = self.offset.get(deg)
        return range(o, o + self.dims[deg]) if o is not None else range(0)

    def dim_of(self, deg):
        return self.dims.get(deg, 0)

    def to_json(self):
        return {"dims": {str(j): self.dims[j] for j in self.degrees}}

    @classmethod
    def from_json(cls, data):
        return cls({int(j): n for j, n in data["dims"].items()}, data.get("names"))

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.dims == other.dims

    def __hash__(self):
        return hash(tuple(sorted(self.dims.items())))

    def __repr__(self):
        return "GradedSpace(%r)" % (self.dims,)


class GradedMap:
    """Degree-`shift` linear map; blocks[j] is a Matrix target^(j+shift) x source^j."""

    def __init__(self, source, target, shift, blocks=None):
        self.source, self.target, self.shift = source, target, shift
        self.blocks = {}
        for j, M in (blocks or {}).items():
            j = int(j)
            if not isinstance(M, Matrix):
                M = Matrix.from_rows(M, source.dim_of(j))
            if M.nrows != target.dim_of(j + shift) or M.ncols != source.dim_of(j):
                raise ValueError("block in degree %d has shape %dx%d, expected %dx%d"
                                 % (j, M.nrows, M.ncols, target.dim_of(j + shift),
                                    source.dim_of(j)))
            if not M.is_zero():
                self.blocks[j] = M

    def block(self, j):
        M = self.blocks.get(j)
        if M is None:
            return Matrix.zero(self.target.dim_of(j + self.shift), self.source.dim_of(j))
        return M

    def sparse(self):
        """Flat sparse form: source index -> {target index: coeff}."""
        out = {}
        for j, M in self.blocks.items():
            so, to = self.source.offset[j], self.target.offset[j + self.shift]
            for c in range(M.ncols):
                col = {to + r: M.rows[r][c] for r in range(M.nrows) if M.rows[r][c]}
                if col:
                    out[so + c] = col
        return out

    @classmethod
    def from_sparse(cls, source, target, shift, sp):
        blocks = {}
        for j in source.degrees:
            if target.dim_of(j + shift) == 0:
                continue
            rows = [[Fraction(0)] * source.dims[j] for _ in range(target.dims[j + shift])]
            for c in range(source.dims[j]):
                for t, v in sp.get(source.offset[j] + c, {}).items():
                    dj, ti = target.local(t)
                    if dj != j + shift:
                        raise ValueError("map does not have the stated shift")
                    rows[ti][c] = Q(v)
            blocks[j] = Matrix.from_rows(rows, source.dims[j])
        return cls(source, target, shift, blocks)

    def compose(self, other):
        """self . other"""
        blocks = {}
        for j in other.source.degrees:
            blocks[j] = self.block(j + other.shift) @ other.block(j)
        return GradedMap(other.source, self.target, self.shift + other.shift, blocks)

    def is_zero(self):
        return not self.blocks

    def to_json(self):
        return {"shift": self.shift,
                "blocks": {str(j): [[format_rational(x) for x in row] for row in M.rows]
                           for j, M in sorted(self.blocks.items())}}

    @classmethod
    def from_json(cls, source, target, data):
        blocks = {int(j): Matrix.from_rows([[Q(x) for x in row] for row in M],
                                           source.dim_of(int(j)))
                  for j, M in data.get("blocks", {}).items()}
        return cls(source, target, int(data.get("shift", 0)), blocks)


class GradedElement:
    """Coordinates per degree; each coordinate is a scalar or an m_A vector."""

    def __init__(self, space, components, ring=None):
        self.space, self.ring = space, ring
        self.components = {}
        for j, vec in components.items():
            j = int(j)
            if len(vec) != space.dim_of(j):
                raise ValueError("component in degree %d has wrong length" % j)
            if ring is None:
                vec = [Q(x) for x in vec]
            else:
                vec = [[Q(x) for x in c] for c in vec]
                if any(len(c) != ring.r for c in vec):
                    raise ValueError("m_A coordinate of wrong length")
            self.components[j] = vec

    def degrees(self):
        out = []
        for j, vec in self.components.items():
            flat = vec if self.ring is None else [x for c in vec for x in c]
            if any(flat):
                out.append(j)
        return sorted(out)

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def to_sparse(self):
        """{(flat index, a): coeff} (a = 0 for scalar elements)."""
        out = {}
        for j, vec in self.components.items():
            o = self.space.offset.get(j)
            for i, c in enumerate(vec):
                if self.ring is None:
                    if c:
                        out[(o + i, 0)] = c
                else:
                    for a, x in enumerate(c):
                        if x:
                            out[(o + i, a)] = x
        return out

    @classmethod
    def from_sparse(cls, space, elt, ring=None):
        comps = {}
        for (idx, a), c in elt.items():
            if not c:
                continue
            j, i = space.local(idx)
            if j not in comps:
                comps[j] = ([Fraction(0)] * space.dims[j] if ring is None
                            else [[Fraction(0)] * ring.r for _ in range(space.dims[j])])
            if ring is None:
                comps[j][i] = c
            else:
                comps[j][i][a] = c
        return cls(space, comps, ring)

    def to_json(self):
        out = {}
        for j in sorted(self.components):
            vec = self.components[j]
            if self.ring is None:
                out[str(j)] = [format_rational(x) for x in vec]
            else:
                out[str(j)] = [[format_rational(x) for x in c] for c in vec]
        return out

    @classmethod
    def from_json(cls, space, data, ring=None):
        return cls(space, {int(j): v for j, v in data.items()}, ring)


def _cocycle_reps(d_in_cols, d_out_rows, n):
    """Cocycles of V_j whose classes form a basis of ker d_out / im d_in."""
    ker = Eliminator(n)
    for row in d_out_rows:
        ker.add_row(row)
    im = Eliminator(n)
    for col in d_in_cols:
        im.add_row(col)
    reps = []
    for z in ker.kernel_basis():
        if im.add_row(z):
            reps.append(z)
    return reps


def complex_cohomology(space, d):
    """{degree: (dim H, list of representative cocycles as flat sparse dicts)}."""
    if d.shift != 1:
        raise ValueError("a differential must have shift 1")
    for j in space.degrees:
        if not (d.block(j + 1) @ d.block(j)).is_zero():
            raise NotADifferential("d o d != 0 in degree %d" % j)
    out = {}
    for j in space.degrees:
        n = space.dims[j]
        Dout = d.block(j)
        Din = d.block(j - 1)
        rows = Dout.sparse_rows()
        cols = [dict(c) for c in Din.transpose().sparse_rows()]
        reps = _cocycle_reps(cols, rows, n)
        o = space.offset[j]
        out[j] = (len(reps), [{o + i: v for i, v in r.items()} for r in reps])
    return out


def tensor_artin(space, A):
    """The Q-space space (x) m_A: dims multiplied by dim m_A."""
    if A is None or A.r == 0:
        raise ValueError("m_A needs a nonempty basis")
    names = {j: ["%s*%s" % (v, e) for v in space.names.get(j, []) for e in A.names]
             for j in space.degrees}
    return GradedSpace({j: n * A.r for j, n in space.dims.items()}, names)


def euler_characteristic(dims):
    return sum((-1) ** (j % 2) * n for j, n in dims.items())
