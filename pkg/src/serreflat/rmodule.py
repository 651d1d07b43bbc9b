"""Linear algebra over the chain ring R and over its coefficient field.

Two layers:

* field layer -- a small Gaussian-elimination solver over k_E, used for
  membership questions (an R-submodule of R^n is also a k_E-subspace with
  spanning set {u^i * g_j}) and for the coboundary reductions downstream;

* ring layer -- valuation-pivot elimination over R itself.  R is a chain
  ring, so a Smith-type diagonal form exists using only divisions by units
  and exact divisions by powers of u; kernels fall out of the tracked
  column operations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chainring import ChainRing, TruncPoly


class NotInSubmoduleError(ValueError):
    """Raised when an element is not in the span it was claimed to be in."""


# ---------------------------------------------------------------------------
# field layer


class FieldSolver:
    """Row-echelon form over k_E for repeated solves against fixed columns.

    Columns are added once; `solve` then expresses targets as column
    combinations (or returns None), and `in_span` tests membership.
    """

    def __init__(self, field, dimension: int):
        self.field = field
        self.dimension = dimension
        self.columns = []
        # rows of the echelonised augmented system: (vector, combo) pairs
        # with vector the reduced column and combo its expression in inputs
        self._rows = []
        self._pivot_of_row = []

    def add_column(self, column) -> None:
        column = list(column)
        index = len(self.columns)
        self.columns.append(tuple(column))
        combo = {index: self.field.one}
        vec, combo = self._reduce(column, combo)
        pivot = _first_nonzero(vec)
        if pivot is not None:
            inv = vec[pivot].inverse()
            vec = [c * inv for c in vec]
            combo = {k: v * inv for k, v in combo.items()}
            self._rows.append((vec, combo))
            self._pivot_of_row.append(pivot)

    def _reduce(self, vec, combo):
        vec = list(vec)
        combo = dict(combo)
        for (row, rowcombo), pivot in zip(self._rows, self._pivot_of_row):
            c = vec[pivot]
            if not c.is_zero():
                for i, r in enumerate(row):
                    if not r.is_zero():
                        vec[i] = vec[i] - c * r
                for k, v in rowcombo.items():
                    combo[k] = combo.get(k, self.field.zero) - c * v
        return vec, combo

    def solve(self, target):
        """Coefficients expressing target in the added columns, or None."""
        vec, combo = self._reduce(list(target), {})
        if _first_nonzero(vec) is not None:
            return None
        coeffs = [self.field.zero] * len(self.columns)
        for k, v in combo.items():
            coeffs[k] = -v
        return coeffs

    def in_span(self, target) -> bool:
        return self.solve(target) is not None

    @property
    def rank(self) -> int:
        return len(self._rows)


def _first_nonzero(vec):
    for i, c in enumerate(vec):
        if not c.is_zero():
            return i
    return None


# ---------------------------------------------------------------------------
# ring layer


def flatten_vector(vector) -> list:
    """Concatenate the coefficient tuples of a vector of TruncPoly."""
    out = []
    for entry in vector:
        out.extend(entry.coeffs)
    return out


def vector_add(a, b):
    return tuple(x + y for x, y in zip(a, b))

def vector_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))

def vector_scale(r, a):
    return tuple(r * x for x in a)

def vector_is_zero(a) -> bool:
    return all(x.is_zero() for x in a)


@dataclass(frozen=True)
class RMap:
    """An R-linear map R^n -> R^m given by an m x n matrix over R."""

    ring: ChainRing
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of TruncPoly

    @classmethod
    def from_rows(cls, ring, rows) -> "RMap":
        entries = tuple(tuple(ring.element(e) for e in row) for row in rows)
        n_rows = len(entries)
        n_cols = len(entries[0]) if entries else 0
        if any(len(row) != n_cols for row in entries):
            raise ValueError("ragged matrix")
        return cls(ring, n_rows, n_cols, entries)

    @classmethod
    def identity(cls, ring, n: int) -> "RMap":
        return cls.from_rows(
            ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        )

    def apply(self, vector):
        vector = tuple(self.ring.element(v) for v in vector)
        if len(vector) != self.cols:
            raise ValueError("vector length does not match map source rank")
        return tuple(
            sum((row[j] * vector[j] for j in range(self.cols)), self.ring.zero)
            for row in self.entries
        )

    def compose(self, other: "RMap") -> "RMap":
        """self after other (matrix product self @ other)."""
        if other.rows != self.cols:
            raise ValueError("rank mismatch in composition")
        rows = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ring.zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return RMap.from_rows(self.ring, rows)

    def column(self, j: int):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def is_invertible(self) -> bool:
        diag, _ = smith_diagonal(self)
        return len(diag) == self.rows == self.cols and all(d == 0 for d in diag)


def smith_diagonal(rmap: RMap):
    """Valuation-pivot reduction to a diagonal of u-powers.

    Returns (diag, U) with diag the list of pivot valuations (ascending)
    and U an invertible n x n matrix of tracked column operations such
    that A*U is the diagonal matrix diag(u^d) padded with zeros.  Row
    operations are applied untracked; they do not change the kernel.
    """
    ring = rmap.ring
    m, n = rmap.rows, rmap.cols
    M = [list(row) for row in rmap.entries]
    U = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]

    def col_swap(a, b):
        for i in range(m):
            M[i][a], M[i][b] = M[i][b], M[i][a]
        for i in range(n):
            U[i][a], U[i][b] = U[i][b], U[i][a]

    def col_addmul(dst, src, q):
        for i in range(m):
            M[i][dst] = M[i][dst] + q * M[i][src]
        for i in range(n):
            U[i][dst] = U[i][dst] + q * U[i][src]

    def col_scale(j, w):
        for i in range(m):
            M[i][j] = w * M[i][j]
        for i in range(n):
            U[i][j] = w * U[i][j]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j].val()
                if v < ring.length and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        d, pi, pj = best
        if pi != t:
            M[pi], M[t] = M[t], M[pi]
        if pj != t:
            col_swap(pj, t)
        col_scale(t, M[t][t].shift_down(d).inverse())  # pivot becomes u^d exactly
        for i in range(t + 1, m):  # clear the pivot column (rows; untracked)
            if not M[i][t].is_zero():
                q = M[i][t].shift_down(d)
                for j in range(t, n):
                    M[i][j] = M[i][j] - q * M[t][j]
        for j in range(t + 1, n):  # clear the pivot row (columns; tracked)
            if not M[t][j].is_zero():
                col_addmul(j, t, -M[t][j].shift_down(d))
        diag.append(d)
        t += 1
    return diag, RMap.from_rows(ring, U)


def kernel(rmap: RMap) -> "RSubmodule":
    """Generators of {v in R^n : rmap(v) = 0}."""
    ring = rmap.ring
    diag, U = smith_diagonal(rmap)
    gens = []
    for t, d in enumerate(diag):
        if d > 0:
            gens.append(U.apply(_unit_vector(ring, rmap.cols, t, ring.length - d)))
    for t in range(len(diag), rmap.cols):
        gens.append(U.apply(_unit_vector(ring, rmap.cols, t, 0)))
    return RSubmodule(ring, rmap.cols, tuple(g for g in gens if not vector_is_zero(g)))


def _unit_vector(ring, n, index, degree):
    vec = [ring.zero] * n
    vec[index] = ring.monomial(degree)
    return tuple(vec)


class RSubmodule:
    """A finitely generated R-submodule of R^n, with decidable membership."""

    def __init__(self, ring: ChainRing, ambient_rank: int, generators):
        self.ring = ring
        self.ambient_rank = ambient_rank
        self.generators = tuple(
            tuple(ring.element(e) for e in gen) for gen in generators
        )
        for gen in self.generators:
            if len(gen) != ambient_rank:
                raise ValueError("generator rank mismatch")
        self._solver = None
        self._shifted = None

    def _field_solver(self) -> FieldSolver:
        # spanning set over k_E: u^i * g_j for all i < length
        if self._solver is None:
            solver = FieldSolver(self.ring.field, self.ambient_rank * self.ring.length)
            shifted = []
            for j, gen in enumerate(self.generators):
                for i in range(self.ring.length):
                    vec = tuple(entry.shift_up(i) for entry in gen)
                    solver.add_column(flatten_vector(vec))
                    shifted.append((j, i))
            self._solver = solver
            self._shifted = shifted
        return self._solver

    def contains(self, vector) -> bool:
        vector = tuple(self.ring.element(v) for v in vector)
        return self._field_solver().in_span(flatten_vector(vector))

    def express(self, vector):
        """Ring coefficients r with sum r_j g_j = vector, else raise."""
        vector = tuple(self.ring.element(v) for v in vector)
        coeffs = self._field_solver().solve(flatten_vector(vector))
        if coeffs is None:
            raise NotInSubmoduleError("element is not in the submodule")
        out = [self.ring.zero] * len(self.generators)
        for c, (j, i) in zip(coeffs, self._shifted):
            if not c.is_zero():
                out[j] = out[j] + self.ring.monomial(i, c)
        return out

    def same_module(self, other: "RSubmodule") -> bool:
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def echelon_generators(self):
        """A generating set in echelon form with valuation-sorted pivots."""
        rows = [list(g) for g in self.generators if not vector_is_zero(g)]
        done = []
        while rows:
            best = None
            for i, row in enumerate(rows):
                for j, entry in enumerate(row):
                    v = entry.val()
                    if v < self.ring.length and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            v, pi, pj = best
            pivot_row = rows.pop(pi)
            w = pivot_row[pj].shift_down(v)  # unit part
            pivot_row = [w.inverse() * entry for entry in pivot_row]
            for row in rows:
                if row[pj].val() >= v and not row[pj].is_zero():
                    q = row[pj].shift_down(v)
                    for j in range(len(row)):
                        row[j] = row[j] - q * pivot_row[j]
            rows = [row for row in rows if not vector_is_zero(row)]
            done.append(tuple(pivot_row))
        return tuple(done)


def contains_free_element(submodule: RSubmodule) -> bool:
    """Whether the submodule contains a generator of a free rank-1 summand.

    Over a chain ring a vector spans a free submodule exactly when some
    coordinate is a unit, and valuations of coordinates can only go up
    under R-combinations, so checking the generators suffices.
    """
    return any(
        any(entry.is_unit() for entry in gen) for gen in submodule.generators
    )


def semilinear_phi1_apply(fil_generators, phi1_images, element, ring: ChainRing):
    """Apply the semilinear map determined on generators to a filtration element.

    The element is expressed as sum r_j g_j and mapped to
    sum phi_twist(r_j) * phi1(g_j); callers guarantee the generator images
    are compatible, which makes the value independent of the expression.
    """
    ambient = len(fil_generators[0])
    sub = RSubmodule(ring, ambient, fil_generators)
    coeffs = sub.express(element)
    target_rank = len(phi1_images[0])
    out = tuple([ring.zero] * target_rank)
    for r, image in zip(coeffs, phi1_images):
        out = vector_add(out, vector_scale(r.phi_twist(), tuple(ring.element(x) for x in image)))
    return out
