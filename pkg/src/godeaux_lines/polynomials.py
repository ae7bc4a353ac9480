"""Sparse multivariate polynomials over an exact field.

Polynomials are immutable: a :class:`VarTable` (ordered variable names plus
an optional multigrading), a field, and a term dict mapping exponent tuples
to nonzero raw coefficients.  Supported operations: ring arithmetic, exact
evaluation, substitution/composition (fully expanded), partial derivatives,
multihomogeneity checks against the grading, and a bounded-degree right
kernel for matrices of polynomials.

Term output order is graded lexicographic on the variable order, so the
text form of a polynomial is deterministic and usable in certificates.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .fields import Field, FieldError
from .linalg import sparse_nullspace


class PolynomialError(ValueError):
    pass


class VarTable:
    """Ordered variable names with an optional multigrading.

    The grading maps each variable to an integer vector; when present it
    must cover every variable and all vectors must have equal length.
    """

    __slots__ = ("names", "grading", "_index")

    def __init__(self, names: Sequence[str], grading: Optional[dict] = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolynomialError("variable names must be distinct")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        if grading is not None:
            missing = [n for n in names if n not in grading]
            if missing:
                raise PolynomialError(f"grading misses variables {missing}")
            vecs = [tuple(grading[n]) for n in names]
            if len({len(v) for v in vecs}) != 1:
                raise PolynomialError("grading vectors must share one length")
            grading = tuple(vecs)
        self.grading = grading

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def multidegree(self, exponents) -> tuple:
        """Multidegree of a monomial under the grading."""
        if self.grading is None:
            raise PolynomialError("no grading on this VarTable")
        k = len(self.grading[0])
        out = [0] * k
        for e, g in zip(exponents, self.grading):
            if e:
                for i in range(k):
                    out[i] += e * g[i]
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, VarTable)
            and other.names == self.names
            and other.grading == self.grading
        )

    def __hash__(self):
        return hash((self.names, self.grading))

    def __repr__(self):
        return f"VarTable{self.names}"


def _grlex_key(expts):
    return (-sum(expts), tuple(-e for e in expts))


class Poly:
    """A sparse multivariate polynomial over a field; immutable."""

    __slots__ = ("vars", "field", "terms")

    def __init__(self, vars: VarTable, field: Field, terms: dict):
        self.vars = vars
        self.field = field
        self.terms = {
            e: c for e, c in terms.items() if not field.is_zero(c)
        }

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, vars: VarTable, field: Field) -> "Poly":
        return cls(vars, field, {})

    @classmethod
    def constant(cls, vars: VarTable, field: Field, c) -> "Poly":
        c = field.canonical(c)
        return cls(vars, field, {(0,) * vars.nvars: c})

    @classmethod
    def variable(cls, vars: VarTable, field: Field, name: str) -> "Poly":
        e = [0] * vars.nvars
        e[vars.index(name)] = 1
        return cls(vars, field, {tuple(e): field.one()})

    @classmethod
    def monomial(cls, vars: VarTable, field: Field, exponents, coeff=1) -> "Poly":
        return cls(vars, field, {tuple(exponents): field.canonical(coeff)})

    def _check(self, other: "Poly"):
        if other.vars != self.vars:
            raise PolynomialError("polynomials over different VarTables")
        if other.field != self.field:
            raise FieldError("polynomials over different fields")

    # ------------------------------------------------------------------
    # ring structure

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.vars, self.field, other)
        self._check(other)
        F = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(terms.get(e, F.zero()), c)
            if F.is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return Poly(self.vars, self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(self.vars, F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.vars, self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                s = F.add(out.get(e, F.zero()), c)
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.vars, F, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        F = self.field
        c = F.canonical(c)
        if F.is_zero(c):
            return Poly.zero(self.vars, F)
        return Poly(self.vars, F, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise PolynomialError("negative power of a polynomial")
        out = Poly.constant(self.vars, self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # ------------------------------------------------------------------
    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if self.total_degree() > 0:
                return False
            c = self.field.canonical(other)
            return self.terms.get((0,) * self.vars.nvars, self.field.zero()) == c
        return (
            other.vars == self.vars
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.vars, self.field, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # evaluation / substitution / calculus

    def __call__(self, point: Sequence):
        return self.eval(point)

    def eval(self, point: Sequence):
        """Exact evaluation at a sequence of raw scalars (one per variable)."""
        if len(point) != self.vars.nvars:
            raise PolynomialError(
                f"expected {self.vars.nvars} coordinates, got {len(point)}"
            )
        F = self.field
        point = [F.canonical(x) for x in point]
        acc = F.zero()
        powers: dict = {}
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    pw = powers.get((i, k))
                    if pw is None:
                        pw = point[i]
                        for _ in range(k - 1):
                            pw = F.mul(pw, point[i])
                        powers[(i, k)] = pw
                    t = F.mul(t, pw)
            acc = F.add(acc, t)
        return acc

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute one image polynomial per variable; fully expanded."""
        if len(images) != self.vars.nvars:
            raise PolynomialError(
                f"expected {self.vars.nvars} images, got {len(images)}"
            )
        target = images[0].vars
        field = images[0].field
        for g in images:
            if g.vars != target or g.field != field:
                raise PolynomialError("images must share a VarTable and field")
        out = Poly.zero(target, field)
        pw_cache: dict = {}
        for e, c in self.terms.items():
            term = Poly.constant(target, field, c)
            for i, k in enumerate(e):
                if k:
                    pw = pw_cache.get((i, k))
                    if pw is None:
                        pw = images[i] ** k
                        pw_cache[(i, k)] = pw
                    term = term * pw
            out = out + term
        return out

    def diff(self, name: str) -> "Poly":
        """Partial derivative with respect to one variable."""
        i = self.vars.index(name)
        F = self.field
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            k = e[i]
            ee = list(e)
            ee[i] = k - 1
            coeff = F.mul(c, F.canonical(k))
            if not F.is_zero(coeff):
                out[tuple(ee)] = coeff
        return Poly(self.vars, F, out)

    def map_field(self, field: Field) -> "Poly":
        """Reinterpret the coefficients in another field (e.g. Q -> F_p)."""
        return Poly(self.vars, field, {e: field.canonical(c) for e, c in self.terms.items()})

    # ------------------------------------------------------------------
    # grading

    def is_multihomogeneous(self):
        """(True, multidegree) if all terms share one multidegree.

        On failure returns (False, (term1, term2)) with the first offending
        pair in graded-lex order.
        """
        if self.vars.grading is None:
            raise PolynomialError("VarTable has no grading")
        expts = sorted(self.terms, key=_grlex_key)
        if not expts:
            return True, None
        deg = self.vars.multidegree(expts[0])
        for e in expts[1:]:
            d = self.vars.multidegree(e)
            if d != deg:
                return False, (expts[0], e)
        return True, deg

    # ------------------------------------------------------------------
    # text form

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e in sorted(self.terms, key=_grlex_key):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = F.format_scalar(c)
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors and cs == "-1":
                body = "-" + "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self):
        return f"Poly({self})"


def jacobian(fs: Sequence[Poly]) -> "PolyMatrix":
    """Matrix of partial derivatives d f_i / d x_j over a shared VarTable."""
    if not fs:
        raise PolynomialError("empty polynomial sequence")
    vt, field = fs[0].vars, fs[0].field
    rows = [[f.diff(name) for name in vt.names] for f in fs]
    return PolyMatrix(vt, field, rows)


class PolyMatrix:
    """A rectangular matrix of polynomials over one VarTable and field."""

    __slots__ = ("vars", "field", "entries", "nrows", "ncols")

    def __init__(self, vars: VarTable, field: Field, entries):
        self.vars = vars
        self.field = field
        self.entries = [list(row) for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.ncols:
                raise PolynomialError("ragged matrix")
            for p in row:
                if p.vars != vars or p.field != field:
                    raise PolynomialError("entries must share VarTable and field")

    def eval(self, point):
        return [[p.eval(point) for p in row] for row in self.entries]

    def apply(self, vec: Sequence[Poly]) -> list:
        """Matrix times a vector of polynomials."""
        if len(vec) != self.ncols:
            raise PolynomialError("vector length mismatch")
        out = []
        for row in self.entries:
            acc = Poly.zero(self.vars, self.field)
            for p, v in zip(row, vec):
                acc = acc + p * v
            out.append(acc)
        return out

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {self.vars.names})"


def _monomials_total(nvars: int, bound: int):
    if nvars == 0:
        yield ()
        return
    for k in range(bound + 1):
        for rest in _monomials_total(nvars - 1, bound - k):
            yield (k,) + rest


def _monomials_graded(vt: VarTable, bound):
    bound = tuple(bound)

    def rec(i, remaining):
        if i == vt.nvars:
            yield ()
            return
        g = vt.grading[i]
        k = 0
        while True:
            used = tuple(k * gi for gi in g)
            if any(u > r for u, r in zip(used, remaining)):
                break
            rest_remaining = tuple(r - u for r, u in zip(remaining, used))
            for rest in rec(i + 1, rest_remaining):
                yield (k,) + rest
            if all(gi == 0 for gi in g):
                break
            k += 1

    yield from rec(0, bound)


def monomials_up_to(vt: VarTable, bound):
    """All exponent tuples with (multi)degree <= bound.

    ``bound`` is an int (total degree) for ungraded tables, or a multidegree
    tuple compared componentwise under the grading.
    """
    if isinstance(bound, int):
        return sorted(_monomials_total(vt.nvars, bound), key=_grlex_key)
    if vt.grading is None:
        raise PolynomialError("multidegree bound needs a graded VarTable")
    return sorted(_monomials_graded(vt, bound), key=_grlex_key)


def bounded_degree_kernel(M: PolyMatrix, bound):
    """Field basis of {v : M v = 0, entries of (multi)degree <= bound}.

    Enumerates candidate monomials per slot, assembles one exact sparse
    linear system on the coefficients, and solves it over the field.  The
    returned vectors (lists of Poly) are linearly independent over the
    field; module-theoretic minimality of generators is not computed here.
    """
    vt, F = M.vars, M.field
    monos = monomials_up_to(vt, bound)
    mono_index = {m: i for i, m in enumerate(monos)}
    nmono = len(monos)
    ncols = M.ncols * nmono

    def unknown(slot, mono):
        return slot * nmono + mono_index[mono]

    equations: dict = {}
    for r in range(M.nrows):
        for slot in range(M.ncols):
            p = M.entries[r][slot]
            for e_c, coeff in p.terms.items():
                for m in monos:
                    prod = tuple(a + b for a, b in zip(e_c, m))
                    key = (r, prod)
                    row = equations.setdefault(key, {})
                    col = unknown(slot, m)
                    s = F.add(row.get(col, F.zero()), coeff)
                    if F.is_zero(s):
                        row.pop(col, None)
                    else:
                        row[col] = s
    basis = sparse_nullspace(F, [r for r in equations.values() if r], ncols)
    out = []
    for vec in basis:
        polys = []
        for slot in range(M.ncols):
            terms = {}
            for i, m in enumerate(monos):
                c = vec[slot * nmono + i]
                if not F.is_zero(c):
                    terms[m] = c
            polys.append(Poly(vt, F, terms))
        out.append(polys)
    return out
