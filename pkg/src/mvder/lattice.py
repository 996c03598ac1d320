"""Operator posets, derivation lattices, lattice isomorphisms and Hasse export."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .algebra import make_chain
from .derivations import (
    DEFAULT_MAX_SEARCH,
    Operator,
    _same_algebra,
    chi,
    enumerate_operators,
    ider,
    is_derivation,
    modify_at_one,
    principal,
)
from .errors import InvalidArgumentError, IsomorphismUnknown, NotMvAlgebraError
from .structure import boolean_center

ISO_SEARCH_LIMIT = 64


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite poset over ``items``; ``leq[i][j]`` means items[i] <= items[j]."""

    items: tuple
    leq: tuple
    labels: tuple = field(default=None)

    def __post_init__(self):
        n = len(self.items)
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise InvalidArgumentError("relation matrix has the wrong shape")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.items))
        up, down = self._up, self._down
        for i in range(n):
            if not self.leq[i][i]:
                raise InvalidArgumentError(f"relation is not reflexive at {self.labels[i]}")
            if up[i] & down[i] != 1 << i:
                raise InvalidArgumentError(f"relation is not antisymmetric at {self.labels[i]}")
            for j in _bits(up[i]):
                if up[j] & ~up[i]:
                    raise InvalidArgumentError("relation is not transitive")

    @classmethod
    def from_relation(cls, items, le, labels=None):
        items = tuple(items)
        matrix = tuple(tuple(bool(le(a, b)) for b in items) for a in items)
        return cls(items, matrix, None if labels is None else tuple(labels))

    def __len__(self):
        return len(self.items)

    @cached_property
    def _up(self):
        return tuple(sum(1 << j for j, v in enumerate(row) if v) for row in self.leq)

    @cached_property
    def _down(self):
        n = len(self.items)
        return tuple(sum(1 << i for i in range(n) if self.leq[i][j]) for j in range(n))

    @cached_property
    def covers(self):
        """Transitive reduction as (lower, upper) index pairs, sorted."""
        out = []
        for i, up in enumerate(self._up):
            strict_up = up & ~(1 << i)
            for j in _bits(strict_up):
                if not strict_up & self._down[j] & ~(1 << j):
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def ranks(self):
        """Length of the longest chain from a minimal element to each item."""
        below = [[] for _ in self.items]
        for i, j in self.covers:
            below[j].append(i)
        rank = [None] * len(self.items)

        def r(j):
            if rank[j] is None:
                rank[j] = 1 + max((r(i) for i in below[j]), default=-1)
            return rank[j]

        for j in range(len(self.items)):
            r(j)
        return tuple(rank)

    @property
    def height(self):
        return max(self.ranks, default=-1)

    def index(self, item):
        return self.items.index(item)

    @cached_property
    def _tables(self):
        n = len(self.items)
        by_up = {m: i for i, m in enumerate(self._up)}
        by_down = {m: i for i, m in enumerate(self._down)}
        join = [[None] * n for _ in range(n)]
        meet = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                # The lub u is exactly the element whose up-set equals the
                # common up-set of i and j.
                join[i][j] = by_up.get(self._up[i] & self._up[j])
                meet[i][j] = by_down.get(self._down[i] & self._down[j])
        ok = all(v is not None for row in join + meet for v in row)
        if not ok:
            return None
        return tuple(map(tuple, join)), tuple(map(tuple, meet))

    @property
    def is_lattice(self):
        return self._tables is not None

    @property
    def join_table(self):
        return self._tables[0] if self._tables else None

    @property
    def meet_table(self):
        return self._tables[1] if self._tables else None

    def missing_bound(self):
        """A pair without lub or glb, or None when the poset is a lattice."""
        n = len(self.items)
        by_up = set(self._up)
        by_down = set(self._down)
        for i in range(n):
            for j in range(n):
                if (self._up[i] & self._up[j]) not in by_up:
                    return ("join", i, j)
                if (self._down[i] & self._down[j]) not in by_down:
                    return ("meet", i, j)
        return None

    def fingerprint(self):
        updeg = [0] * len(self.items)
        downdeg = [0] * len(self.items)
        for i, j in self.covers:
            updeg[i] += 1
            downdeg[j] += 1
        local = sorted(zip(self.ranks, updeg, downdeg))
        return (len(self.items), len(self.covers), self.height, tuple(local))


# -- operators under the pointwise order ------------------------------------

def operator_leq(d, e):
    _same_algebra(d.algebra, e)
    le = d.algebra.leq_table
    return all(le[a][b] for a, b in zip(d.images, e.images))


def pointwise_join(d, e):
    _same_algebra(d.algebra, e)
    v = d.algebra.vee_table
    return Operator(d.algebra, [v[a][b] for a, b in zip(d.images, e.images)])


def pointwise_meet(d, e):
    """Pointwise meet and whether it is still a derivation."""
    _same_algebra(d.algebra, e)
    w = d.algebra.wedge_table
    m = Operator(d.algebra, [w[a][b] for a, b in zip(d.images, e.images)])
    return m, is_derivation(d.algebra, m)


def operator_poset(ops):
    ops = sorted(set(ops))
    return Poset.from_relation(ops, operator_leq, [d.label() for d in ops])


def derivation_poset(A, ops=None, max_search=DEFAULT_MAX_SEARCH):
    """(Der(A), pointwise order) with the lattice operations checked constructively.

    Joins must be pointwise joins; meets are the pointwise join of all common
    lower bounds inside Der(A).  Both are compared with the order-theoretic
    bounds of the poset.
    """
    if ops is None:
        ops = enumerate_operators(A, max_search)
    P = operator_poset(ops)
    at = {d: i for i, d in enumerate(P.items)}
    if P.is_lattice:
        for i, d in enumerate(P.items):
            for j, e in enumerate(P.items):
                if at.get(pointwise_join(d, e)) != P.join_table[i][j]:
                    raise NotMvAlgebraError(f"pointwise join of {d} and {e} left Der(A)")
                if at.get(constructive_meet(P, i, j)) != P.meet_table[i][j]:
                    raise NotMvAlgebraError(f"meet of {d} and {e} is inconsistent")
    return P


def constructive_meet(P, i, j):
    """Pointwise join of every item of P below both items i and j."""
    d = P.items[i]
    result = Operator(d.algebra, (0,) * d.algebra.n)
    for k in _bits(P._down[i] & P._down[j]):
        result = pointwise_join(result, P.items[k])
    return result


def meet_failures(A, ops=None):
    """Pairs of derivations whose pointwise meet is not a derivation."""
    if ops is None:
        ops = enumerate_operators(A)
    bad = []
    for i, d in enumerate(ops):
        for e in ops[i + 1:]:
            m, ok = pointwise_meet(d, e)
            if not ok:
                bad.append((d, e, m))
    return bad


def a_lattice(n):
    """Pairs (x, y) of L_n with y <= x, minus (0, 0), ordered componentwise."""
    A = make_chain(n)
    pairs = [(x, y) for x in A.elements for y in A.elements if y <= x and (x, y) != (0, 0)]
    return Poset.from_relation(
        pairs, lambda p, q: p[0] <= q[0] and p[1] <= q[1],
        [f"({A.names[x]},{A.names[y]})" for x, y in pairs])


def algebra_lattice(A):
    """The underlying lattice L(A)."""
    return Poset.from_relation(list(A.elements), A.leq, A.names)


def boolean_center_poset(A):
    B = list(boolean_center(A))
    return Poset.from_relation(B, A.leq, [A.names[x] for x in B])


# -- lattice isomorphisms ---------------------------------------------------

def is_lattice_isomorphism(P, Q, f):
    n = len(P)
    if len(Q) != n or sorted(f.get(i, -1) for i in range(n)) != list(range(n)):
        return False
    jp, mp, jq, mq = P.join_table, P.meet_table, Q.join_table, Q.meet_table
    return all(f[jp[a][b]] == jq[f[a]][f[b]] and f[mp[a][b]] == mq[f[a]][f[b]]
               for a in range(n) for b in range(n))


def find_lattice_isomorphism(P, Q, candidate=None, limit=ISO_SEARCH_LIMIT):
    """A join- and meet-preserving bijection P -> Q as a dict, or None.

    A supplied ``candidate`` map is verified first.  Otherwise a backtracking
    search matches items with equal (rank, up-degree, down-degree).  Beyond
    ``limit`` items only the invariants are compared, raising
    IsomorphismUnknown when they agree.
    """
    if not (P.is_lattice and Q.is_lattice):
        raise InvalidArgumentError("both posets must be lattices")
    if candidate is not None and is_lattice_isomorphism(P, Q, candidate):
        return dict(candidate)
    if P.fingerprint() != Q.fingerprint():
        return None
    n = len(P)
    if n > limit:
        raise IsomorphismUnknown(f"{n}-element lattices agree on all invariants")

    def local(R):
        up = [0] * len(R)
        down = [0] * len(R)
        for i, j in R.covers:
            up[i] += 1
            down[j] += 1
        return [(R.ranks[k], up[k], down[k]) for k in range(len(R))]

    lp, lq = local(P), local(Q)
    order = sorted(range(n), key=lambda k: (P.ranks[k], k))
    f = {}
    used = [False] * n

    def consistent(p, q):
        for p2, q2 in f.items():
            if P.leq[p2][p] != Q.leq[q2][q] or P.leq[p][p2] != Q.leq[q][q2]:
                return False
        return True

    def search(k):
        if k == n:
            return True
        p = order[k]
        for q in range(n):
            if not used[q] and lq[q] == lp[p] and consistent(p, q):
                f[p] = q
                used[q] = True
                if search(k + 1):
                    return True
                del f[p]
                used[q] = False
        return False

    if search(0) and is_lattice_isomorphism(P, Q, f):
        return dict(f)
    return None


def chain_der_isomorphism(n, der=None):
    """Der(L_n) -> A(L_n), trying the closed form (d_x)^y <- (x, y) first."""
    A = make_chain(n)
    D = der if der is not None else derivation_poset(A)
    Q = a_lattice(n)
    candidate = {}
    for q, (x, y) in enumerate(Q.items):
        d = modify_at_one(A, principal(A, x), y)
        if d in D.items:
            candidate[D.index(d)] = q
    return D, Q, find_lattice_isomorphism(D, Q, candidate)


# -- named families of derivations -------------------------------------------

def _check_closed(A, ops, key, what):
    """ops[u] corresponds to u; pointwise join/meet must correspond to u v w, u ^ w."""
    for u, du in ops.items():
        for w, dw in ops.items():
            if pointwise_join(du, dw) != ops.get(A.vee(u, w)):
                raise NotMvAlgebraError(f"{what} not closed under pointwise join")
            if pointwise_meet(du, dw)[0] != ops.get(A.wedge(u, w)):
                raise NotMvAlgebraError(f"{what} not closed under pointwise meet")


def pder_poset(A):
    """Principal derivations d_u, u in A."""
    fam = {u: principal(A, u) for u in A.elements}
    _check_closed(A, fam, None, "PDer(A)")
    return operator_poset(fam.values())


def chi_poset(A):
    fam = {u: chi(A, u) for u in A.elements}
    _check_closed(A, fam, None, "chi(A)")
    return operator_poset(fam.values())


def ider_poset(A):
    fam = {d(A.one): d for d in ider(A)}
    _check_closed(A, fam, None, "IDer(A)")
    return operator_poset(fam.values())


def family_isomorphism(A, family):
    """Verify PDer/chi/IDer against L(A) or B(A) via d -> d(1).

    Returns (family poset, target poset, mapping).  The mapping is None when
    the explicit map fails and no other isomorphism exists.
    """
    if family == "pder":
        P, Q = pder_poset(A), algebra_lattice(A)
    elif family == "chi":
        P, Q = chi_poset(A), algebra_lattice(A)
    elif family == "ider":
        P, Q = ider_poset(A), boolean_center_poset(A)
    else:
        raise InvalidArgumentError(f"unknown family {family!r}")
    candidate = {i: Q.index(d(A.one)) for i, d in enumerate(P.items)}
    return P, Q, find_lattice_isomorphism(P, Q, candidate)


def chi_filter_check(A, der=None):
    """Whether chi(A) is upward closed and meet-closed inside the lattice Der(A)."""
    D = der if der is not None else derivation_poset(A)
    if not D.is_lattice:
        raise InvalidArgumentError("Der(A) is not a lattice")
    members = {i for i, d in enumerate(D.items) if d in {chi(A, u) for u in A.elements}}
    if len(members) != A.n:
        return False
    for i in members:
        if any(j not in members for j in _bits(D._up[i])):
            return False
        if any(D.meet_table[i][j] not in members for j in members):
            return False
    return True


def der_lattice_coincidences(algebras, max_search=DEFAULT_MAX_SEARCH):
    """Pairs of non-isomorphic algebras whose derivation lattices are isomorphic.

    ``algebras`` should hold one representative per isomorphism class.
    Returns (i, j, status) with status "isomorphic" or "unknown".
    """
    posets = [derivation_poset(A, max_search=max_search) for A in algebras]
    out = []
    for i in range(len(posets)):
        for j in range(i + 1, len(posets)):
            P, Q = posets[i], posets[j]
            if len(P) != len(Q) or not (P.is_lattice and Q.is_lattice):
                continue
            try:
                if find_lattice_isomorphism(P, Q) is not None:
                    out.append((i, j, "isomorphic"))
            except IsomorphismUnknown:
                out.append((i, j, "unknown"))
    return out


# -- Hasse diagrams -----------------------------------------------------------

def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def peel(P, maximal=False):
    """Successive strata of minimal (or maximal) items, each in item order."""
    remaining = set(range(len(P)))
    strata = []
    while remaining:
        if maximal:
            layer = [i for i in sorted(remaining)
                     if not any(j != i and P.leq[i][j] for j in remaining)]
        else:
            layer = [i for i in sorted(remaining)
                     if not any(j != i and P.leq[j][i] for j in remaining)]
        strata.append(layer)
        remaining -= set(layer)
    return strata


def export_hasse(P, fmt="dot"):
    if fmt == "dot":
        lines = ["digraph {", "  rankdir=BT;"]
        layers = {}
        for i, r in enumerate(P.ranks):
            layers.setdefault(r, []).append(i)
        for r in sorted(layers):
            nodes = " ".join(_quote(P.labels[i]) + ";" for i in layers[r])
            lines.append(f"  {{ rank=same; {nodes} }}")
        for i, j in P.covers:
            lines.append(f"  {_quote(P.labels[i])} -> {_quote(P.labels[j])};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "layers":
        up = [", ".join(P.labels[i] for i in layer) for layer in peel(P)]
        down = [", ".join(P.labels[i] for i in layer) for layer in peel(P, maximal=True)]
        return "\n".join(up) + "\n\n" + "\n".join(down) + "\n"
    raise InvalidArgumentError(f"unknown format {fmt!r}")
