"""Special loci on Q and per-line fiber classification.

Three coordinate P^3's (one per partition of {0,1,2,3} into two pairs)
carry all four quadrics identically to zero; lines must meet one or two of
them to produce torsion fibers.  Hyperelliptic fibers sit where the 4x6
a-matrix has rank exactly 3, detected along a line through the GCD of its
fifteen 4x4 minors (binary quartics).  :func:`classify_line` aggregates the
detectors into a :class:`FiberReport`; every reported parameter value is
re-verified against its defining condition before it is emitted.

The signed coordinate permutations preserving the quadric set form a
finite group (:func:`quadric_symmetries`) whose induced action is
transitive on the three torsion spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .certificates import Certificate
from .fields import Field, QQ
from .geometry import (
    AIDX,
    A_PATTERN,
    LineA,
    ORDER,
    PointA,
    QUADRIC_TERMS,
    ROW_TRIPLES,
    a_matrix_values,
    a_vartable,
    line_in_q,
    quadrics,
)
from .linalg import rank
from .pencil import (
    BinaryForm,
    binary_gcd,
    binary_roots,
    degeneration_profile,
    linear_form,
)
from .polynomials import Poly


class StrataError(ValueError):
    pass


# ----------------------------------------------------------------------
# the three torsion P^3's


@dataclass(frozen=True)
class TorsionSpace:
    """A coordinate P^3 on which all four quadrics vanish identically."""

    name: str
    partition: tuple  # ((i, j), (k, l))
    survivors: tuple  # ORDER indices spanning the P^3
    killed: tuple     # the complementary eight ORDER indices

    def contains(self, p: PointA) -> bool:
        F = p.field
        return all(F.is_zero(p.coords[j]) for j in self.killed)

    def random_point(self, field: Field, rng) -> PointA:
        coords = [field.zero()] * 12
        for j in self.survivors:
            coords[j] = field.random_nonzero(rng)
        return PointA(field, coords)

    def __str__(self):
        return self.name


def _build_torsion_space(pair1, pair2) -> TorsionSpace:
    (i, j), (k, l) = pair1, pair2
    surv_names = {f"a{i}{j}", f"a{j}{i}", f"a{k}{l}", f"a{l}{k}"}
    survivors = tuple(idx for idx, n in enumerate(ORDER) if n in surv_names)
    killed = tuple(idx for idx in range(12) if idx not in survivors)
    space = TorsionSpace(f"T{i}{j}|{k}{l}", (pair1, pair2), survivors, killed)
    _verify_quadrics_vanish(space)
    return space


def _verify_quadrics_vanish(space: TorsionSpace):
    vt = a_vartable()
    inclusion = []
    for idx in range(12):
        if idx in space.survivors:
            inclusion.append(Poly.variable(vt, QQ, ORDER[idx]))
        else:
            inclusion.append(Poly.zero(vt, QQ))
    for q in quadrics(QQ):
        if not q.compose(inclusion).is_zero():
            raise StrataError(f"quadrics do not vanish on {space.name}")


TORSION_SPACES = (
    _build_torsion_space((0, 1), (2, 3)),
    _build_torsion_space((0, 2), (1, 3)),
    _build_torsion_space((0, 3), (1, 2)),
)


def torsion_space(name: str) -> TorsionSpace:
    """Look up a torsion space by name; 'T01|23', '01|23' and 'T01-23' all work."""
    key = name.strip().upper().lstrip("T").replace("-", "|").replace("/", "|")
    for sp in TORSION_SPACES:
        if sp.name.lstrip("T") == key:
            return sp
    raise StrataError(f"unknown torsion space {name!r}; expected one of "
                      + ", ".join(sp.name for sp in TORSION_SPACES))


# ----------------------------------------------------------------------
# rank stratification


def rank_a(p: PointA) -> int:
    """Exact rank of the 4x6 a-matrix at the point (0..4)."""
    return rank(p.field, a_matrix_values(p.field, p.coords))


def _pp1(field: Field, s, t):
    """Canonical representative of (s : t): t = 1, or (1, 0)."""
    if field.is_zero(t):
        return (field.one(), field.zero())
    inv = field.inv(t)
    return (field.mul(s, inv), field.one())


def torsion_intersections(line: LineA):
    """Intersection points of the line with each torsion P^3.

    For a line in Q not contained in the space there is at most one point
    per space: the common root of the eight killed coordinate forms.
    Containments are reported by :func:`torsion_containments`.
    """
    _require_in_q(line)
    F = line.field
    out = []
    for space in TORSION_SPACES:
        forms = [line.restrict_coordinate(j) for j in space.killed]
        nonzero = [f for f in forms if not (F.is_zero(f[0]) and F.is_zero(f[1]))]
        if not nonzero:
            continue  # line inside the space
        a, b = nonzero[0]
        root = _pp1(F, F.neg(b), a)
        if all(
            F.is_zero(F.add(F.mul(root[0], fa), F.mul(root[1], fb)))
            for fa, fb in nonzero
        ):
            point = line.point_at(*root)
            if not space.contains(point):
                raise StrataError(f"emitted point not on {space.name}")
            out.append((root, space))
    return out


def torsion_containments(line: LineA):
    """Torsion spaces containing the whole line."""
    _require_in_q(line)
    F = line.field
    out = []
    for space in TORSION_SPACES:
        if all(
            F.is_zero(line.rows[0][j]) and F.is_zero(line.rows[1][j])
            for j in space.killed
        ):
            out.append(space)
    return out


def _require_in_q(line: LineA):
    if not line_in_q(line):
        raise StrataError("line does not lie in Q")


# ----------------------------------------------------------------------
# hyperelliptic detection via the minor GCD


def restricted_a_matrix(line: LineA):
    """The a-matrix along the line, as 4x6 linear binary forms."""
    F = line.field
    zero = BinaryForm.zero(F, 1)
    rows = []
    for pattern_row in A_PATTERN:
        rows.append([
            zero if j is None else linear_form(F, *line.restrict_coordinate(j))
            for j in pattern_row
        ])
    return rows


def _det_forms(rows, cols):
    acc = None
    for perm in permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        term = rows[0][cols[perm[0]]] * rows[1][cols[perm[1]]]
        term = term * rows[2][cols[perm[2]]]
        term = term * rows[3][cols[perm[3]]]
        term = term if sign > 0 else -term
        acc = term if acc is None else acc + term
    return acc


def quartic_minors(line: LineA):
    """All fifteen 4x4 minors of the restricted a-matrix (binary quartics)."""
    rows = restricted_a_matrix(line)
    return [_det_forms(rows, cols) for cols in combinations(range(6), 4)]


@dataclass(frozen=True)
class MinorRoot:
    point: tuple          # canonical (s, t)
    rank: int
    multiplicity: int


@dataclass(frozen=True)
class HyperellipticResult:
    gcd: BinaryForm
    roots: tuple          # of MinorRoot
    all_minors_vanish: bool


def hyperelliptic_points(line: LineA) -> HyperellipticResult:
    """GCD of the fifteen quartic minors along the line and its roots.

    Each root is reported with the exact a-matrix rank at that point;
    rank-3 roots are the hyperelliptic fibers, rank <= 2 roots belong to
    the torsion/excluded loci.
    """
    _require_in_q(line)
    F = line.field
    minors = quartic_minors(line)
    g = binary_gcd(minors)
    if g.is_zero():
        return HyperellipticResult(g, (), True)
    g = g.monic()
    roots = []
    if g.degree > 0:
        for root, mult in binary_roots(g):
            point = line.point_at(*root)
            if any(not F.is_zero(m.eval(*root)) for m in minors):
                raise StrataError("GCD root fails to kill every minor")
            roots.append(MinorRoot(root, rank_a(point), mult))
    return HyperellipticResult(g, tuple(roots), False)


def row_vanishing_points(line: LineA):
    """Points of the line where a whole a-matrix row vanishes.

    Returns ([( (s, t), row_index ), ...], [row_index contained]) where the
    second list records rows vanishing identically on the line.
    """
    _require_in_q(line)
    F = line.field
    points = []
    contained = []
    for r, triple in enumerate(ROW_TRIPLES):
        forms = [line.restrict_coordinate(j) for j in triple]
        nonzero = [f for f in forms if not (F.is_zero(f[0]) and F.is_zero(f[1]))]
        if not nonzero:
            contained.append(r)
            continue
        a, b = nonzero[0]
        root = _pp1(F, F.neg(b), a)
        if all(
            F.is_zero(F.add(F.mul(root[0], fa), F.mul(root[1], fb)))
            for fa, fb in nonzero
        ):
            points.append((root, r))
    return points, contained


# ----------------------------------------------------------------------
# per-line classification


@dataclass(frozen=True)
class FiberReport:
    """Everything the detectors know about one line in Q."""

    line: LineA
    torsion_points: tuple          # ((s, t), TorsionSpace)
    torsion_containments: tuple    # TorsionSpace
    hyperelliptic_roots: tuple     # MinorRoot with rank == 3
    low_rank_roots: tuple          # (MinorRoot, TorsionSpace or None), rank <= 2
    row_vanishing: tuple           # ((s, t), row index)
    row_containments: tuple        # row indices identically zero
    minor_gcd: BinaryForm
    all_minors_vanish: bool
    excluded_flag: bool
    kernel_degrees: tuple          # flattened sorted block generator degrees
    block_degrees: tuple
    rank_drop_points: tuple

    @property
    def is_generic(self) -> bool:
        """No special locus seen: the report of a general line."""
        return (
            not self.torsion_points
            and not self.torsion_containments
            and not self.all_minors_vanish
            and self.minor_gcd.degree == 0
        )

    def to_json(self) -> dict:
        F = self.line.field
        pt = lambda st: f"({F.format_scalar(st[0])}:{F.format_scalar(st[1])})"
        return {
            "line": self.line.to_json(),
            "torsion_points": [
                {"point": pt(root), "space": sp.name} for root, sp in self.torsion_points
            ],
            "torsion_containments": [sp.name for sp in self.torsion_containments],
            "hyperelliptic_roots": [
                {"point": pt(r.point), "rank": r.rank, "multiplicity": r.multiplicity}
                for r in self.hyperelliptic_roots
            ],
            "low_rank_roots": [
                {
                    "point": pt(r.point),
                    "rank": r.rank,
                    "multiplicity": r.multiplicity,
                    "space": sp.name if sp is not None else None,
                }
                for r, sp in self.low_rank_roots
            ],
            "row_vanishing": [
                {"point": pt(root), "row": r} for root, r in self.row_vanishing
            ],
            "row_containments": list(self.row_containments),
            "minor_gcd": str(self.minor_gcd),
            "all_minors_vanish": self.all_minors_vanish,
            "excluded": self.excluded_flag,
            "kernel_degrees": list(self.kernel_degrees),
            "block_degrees": [list(b) for b in self.block_degrees],
            "rank_drop_points": [
                {"point": pt(root) if root is not None else None, "block": b}
                for root, b in self.rank_drop_points
            ],
            "generic": self.is_generic,
        }


def classify_line(line: LineA, max_degree: int = 4) -> FiberReport:
    """Run every detector on a line of Q and aggregate the results.

    ``excluded_flag`` is a conservative proxy: it is set when some root of
    the minor GCD has a-matrix rank <= 2 yet lies on none of the three
    torsion P^3's (such lines do not lead to Godeaux surfaces).
    """
    _require_in_q(line)
    tor = tuple(torsion_intersections(line))
    tor_cont = tuple(torsion_containments(line))
    hyp = hyperelliptic_points(line)
    hyp_roots = tuple(r for r in hyp.roots if r.rank == 3)
    low = []
    excluded = False
    for r in hyp.roots:
        if r.rank <= 2:
            point = line.point_at(*r.point)
            home = next((sp for sp in TORSION_SPACES if sp.contains(point)), None)
            low.append((r, home))
            if home is None:
                excluded = True
    rows, row_cont = row_vanishing_points(line)
    profile = degeneration_profile(line, max_degree)
    return FiberReport(
        line=line,
        torsion_points=tor,
        torsion_containments=tor_cont,
        hyperelliptic_roots=hyp_roots,
        low_rank_roots=tuple(low),
        row_vanishing=tuple(rows),
        row_containments=tuple(row_cont),
        minor_gcd=hyp.gcd,
        all_minors_vanish=hyp.all_minors_vanish,
        excluded_flag=excluded,
        kernel_degrees=profile.degree_sequence,
        block_degrees=profile.block_degrees,
        rank_drop_points=profile.rank_drop_points,
    )


# ----------------------------------------------------------------------
# signed coordinate symmetries of the quadric set


@dataclass(frozen=True)
class SignedPermutation:
    """a_ij -> sign_ij * a_(perm i)(perm j), as an index map on ORDER."""

    perm: tuple   # image of (0, 1, 2, 3)
    signs: tuple  # +-1 per ORDER slot

    def index_map(self) -> tuple:
        out = []
        for name in ORDER:
            i, j = int(name[1]), int(name[2])
            out.append(AIDX[f"a{self.perm[i]}{self.perm[j]}"])
        return tuple(out)

    def apply_point(self, p: PointA) -> PointA:
        F = p.field
        tau = self.index_map()
        coords = [F.zero()] * 12
        for k in range(12):
            v = p.coords[k]
            coords[tau[k]] = F.mul(F.canonical(self.signs[k]), v)
        return PointA(F, coords)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other (apply ``other`` first)."""
        tau_other = other.index_map()
        perm = tuple(self.perm[other.perm[i]] for i in range(4))
        signs = tuple(
            other.signs[k] * self.signs[tau_other[k]] for k in range(12)
        )
        return SignedPermutation(perm, signs)

    def torsion_permutation(self) -> tuple:
        """Induced permutation of the three torsion spaces (as indices)."""
        out = []
        for sp in TORSION_SPACES:
            (i, j), (k, l) = sp.partition
            pairs = {frozenset((self.perm[i], self.perm[j])), frozenset((self.perm[k], self.perm[l]))}
            for m, other in enumerate(TORSION_SPACES):
                (a, b), (c, d) = other.partition
                if pairs == {frozenset((a, b)), frozenset((c, d))}:
                    out.append(m)
                    break
        return tuple(out)


IDENTITY_SYMMETRY = SignedPermutation((0, 1, 2, 3), (1,) * 12)

_MONO_SIGN = [
    {frozenset((u, v)): s for s, u, v in terms} for terms in QUADRIC_TERMS
]


def _solve_gf2(rows, ncols):
    """All solutions of a GF(2) system given as (bitmask, rhs) rows."""
    pivots = {}
    for mask, rhs in rows:
        while mask:
            low = mask & (-mask)
            c = low.bit_length() - 1
            if c in pivots:
                pm, pr = pivots[c]
                mask ^= pm
                rhs ^= pr
            else:
                pivots[c] = (mask, rhs)
                break
        else:
            if rhs:
                return []
    free = [c for c in range(ncols) if c not in pivots]
    sols = []
    for bits in range(1 << len(free)):
        x = 0
        for i, c in enumerate(free):
            if bits >> i & 1:
                x |= 1 << c
        for c in sorted(pivots, reverse=True):
            mask, rhs = pivots[c]
            val = rhs ^ bin(mask & x & ~(1 << c)).count("1") % 2
            if val:
                x |= 1 << c
        sols.append(x)
    return sols


def _symmetries_for_perm(perm):
    """All sign vectors making a_ij -> sign * a_(perm i)(perm j) fix {+-q_k}."""
    tau = SignedPermutation(perm, (1,) * 12).index_map()
    rows = []
    for m, terms in enumerate(QUADRIC_TERMS):
        target = perm[m]
        for s, u, v in terms:
            key = frozenset((tau[u], tau[v]))
            s_target = _MONO_SIGN[target].get(key)
            if s_target is None:
                return []
            bit = 0 if s * s_target > 0 else 1
            mask = (1 << u) | (1 << v) | (1 << (12 + m))
            rows.append((mask, bit))
    out = []
    for x in _solve_gf2(rows, 16):
        signs = tuple(-1 if x >> k & 1 else 1 for k in range(12))
        out.append(SignedPermutation(perm, signs))
    return out


@dataclass(frozen=True)
class SymmetryGroup:
    elements: tuple
    generators: tuple
    torsion_transitive: bool

    @property
    def order(self) -> int:
        return len(self.elements)


def quadric_symmetries() -> SymmetryGroup:
    """The group of signed coordinate permutations preserving {q0..q3}.

    Found by exhaustive search: for each permutation of the four indices the
    sign constraints form a GF(2) linear system whose solutions are
    enumerated.  Every element is certified by the exact polynomial
    identity (transformed q_k) = +- q_(perm k), and the induced action on
    the three torsion P^3's is reported.
    """
    elements = []
    for perm in permutations(range(4)):
        elements.extend(_symmetries_for_perm(perm))
    elements.sort(key=lambda e: (e.perm, e.signs))
    for e in elements:
        if not symmetry_fixes_quadrics(e):
            raise StrataError("sign search produced a non-symmetry")
    generators = _generating_subset(elements)
    images = {e.torsion_permutation() for e in elements}
    transitive = all(
        any(g[i] == j for g in images) for i in range(3) for j in range(3)
    )
    return SymmetryGroup(tuple(elements), tuple(generators), transitive)


def symmetry_fixes_quadrics(e: SignedPermutation) -> bool:
    """Exact polynomial check: e sends every q_k to +- q_(perm k)."""
    vt = a_vartable()
    qs = quadrics(QQ)
    tau = e.index_map()
    images = [None] * 12
    for k in range(12):
        images[k] = Poly.variable(vt, QQ, ORDER[tau[k]]).scale(e.signs[k])
    for m, q in enumerate(qs):
        img = q.compose(images)
        target = qs[e.perm[m]]
        if not (img == target or img == -target):
            return False
    return True


def _closure(gens):
    """All products of the generators (a finite group), as a key set."""
    key = lambda e: (e.perm, e.signs)
    have = {key(IDENTITY_SYMMETRY): IDENTITY_SYMMETRY}
    frontier = [IDENTITY_SYMMETRY]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = g.compose(a)
                if key(c) not in have:
                    have[key(c)] = c
                    nxt.append(c)
        frontier = nxt
    return set(have)


def _generating_subset(elements):
    gens = []
    have = _closure(gens)
    for e in elements:
        if (e.perm, e.signs) in have:
            continue
        gens.append(e)
        have = _closure(gens)
        if len(have) == len(elements):
            break
    return gens


# ----------------------------------------------------------------------
# certificates


def verify_torsion_spaces():
    """Certificate: quadrics vanish symbolically on all three torsion P^3's
    and T01|23 kills exactly the expected eight coordinates."""
    cert = Certificate("torsion-spaces")
    vt = a_vartable()
    qs = quadrics(QQ)
    for space in TORSION_SPACES:
        inclusion = [
            Poly.variable(vt, QQ, ORDER[i]) if i in space.survivors else Poly.zero(vt, QQ)
            for i in range(12)
        ]
        residuals = [q.compose(inclusion) for q in qs]
        cert.add(
            f"quadrics-vanish-on-{space.name}",
            all(r.is_zero() for r in residuals),
        )
    killed_names = sorted(ORDER[i] for i in TORSION_SPACES[0].killed)
    expected = sorted(["a31", "a30", "a21", "a20", "a13", "a12", "a03", "a02"])
    cert.add(
        "T01|23-killed-set",
        killed_names == expected,
        ", ".join(killed_names),
    )
    cert.data["spaces"] = {
        sp.name: {
            "survivors": [ORDER[i] for i in sp.survivors],
            "killed": [ORDER[i] for i in sp.killed],
        }
        for sp in TORSION_SPACES
    }
    return cert


def verify_symmetries():
    """Certificate for the signed-permutation symmetry group of the quadrics."""
    cert = Certificate("symmetries")
    group = quadric_symmetries()
    cert.add("group-nonempty", group.order > 0, f"order {group.order}")
    ident = IDENTITY_SYMMETRY
    cert.add(
        "identity-present",
        any(e.perm == ident.perm and e.signs == ident.signs for e in group.elements),
    )
    cert.add(
        "all-elements-fix-quadric-set",
        all(symmetry_fixes_quadrics(e) for e in group.generators),
        "exact polynomial identities (all elements certified at construction)",
    )
    cert.add("torsion-action-transitive", group.torsion_transitive)
    cert.add(
        "transposition-01-realized",
        any(e.perm == (1, 0, 2, 3) for e in group.elements),
    )
    cert.data["order"] = group.order
    cert.data["generators"] = [
        {"perm": list(e.perm), "signs": list(e.signs)} for e in group.generators
    ]
    cert.data["torsion_images"] = sorted(
        {e.torsion_permutation() for e in group.elements}
    )
    return cert
