"""Boolean center, ideals, chain decomposition and isomorphism classes."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FiniteMvAlgebra, make_chain, make_product, max_elements
from .errors import InvalidSizeError, NotMvAlgebraError, ResourceLimitError


@dataclass(frozen=True)
class Subset:
    """A subset of a carrier, stored as a bitmask over element indices."""

    algebra: FiniteMvAlgebra = field(compare=False, repr=False)
    mask: int

    @classmethod
    def of(cls, A, members):
        mask = 0
        for x in members:
            mask |= 1 << x
        return cls(A, mask)

    def __contains__(self, x):
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return (x for x in range(self.algebra.n) if self.mask >> x & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    @property
    def elements(self):
        return tuple(self)

    def names(self):
        return [self.algebra.names[x] for x in self]

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


def boolean_center(A):
    """Idempotent elements, i.e. {x : x + x = x}."""
    return Subset.of(A, (x for x in A.elements if A.oplus[x][x] == x))


def is_downset(A, S):
    le = A.leq_table
    return all(y in S for x in S for y in range(A.n) if le[y][x])


def _closure(A, start, join):
    """Smallest subset containing ``start``, downward closed and closed under ``join``."""
    members = set(start)
    frontier = list(members)
    down = A.downsets
    while frontier:
        x = frontier.pop()
        new = set(down[x])
        for y in list(members):
            new.add(join[x][y])
        new -= members
        members |= new
        frontier.extend(new)
    return Subset.of(A, members)


def _generated(A, join):
    seen = {}
    for a in A.elements:
        S = _closure(A, A.downsets[a] + (0,), join)
        seen.setdefault(S.mask, S)
    return sorted(seen.values(), key=lambda S: (len(S), S.mask))


def ideals(A):
    """Downsets containing 0 that are closed under oplus, smallest first."""
    return _generated(A, A.oplus)


def lattice_ideals(A):
    """Downsets containing 0 that are closed under the lattice join."""
    return _generated(A, A.vee_table)


def atoms(A, S=None):
    """Minimal nonzero elements of ``S`` (default: the whole carrier)."""
    le = A.leq_table
    pool = [x for x in (S if S is not None else A.elements) if x != 0]
    return [a for a in pool if not any(b != a and le[b][a] for b in pool)]


@dataclass(frozen=True)
class Decomposition:
    chains: tuple
    iso: tuple

    def to_dict(self):
        return {"chains": list(self.chains), "iso": [list(t) for t in self.iso]}


def decompose(A):
    """Write A as L_{d1} x ... x L_{du} with d1 <= ... <= du.

    Each Boolean-center atom a gives the factor [0, a] with x +' y = (x + y) ^ a
    and x*' = x* ^ a.  The induced map x -> (x ^ a_1, ..., x ^ a_u) is checked
    to be a bijective homomorphism onto the product of chains.
    """
    if A.n == 1:
        return Decomposition((), ((),))
    B = boolean_center(A)
    le, wedge = A.leq_table, A.wedge_table
    intervals = []
    for a in atoms(A, B):
        interval = [x for x in A.elements if le[x][a]]
        for x in interval:
            for y in interval:
                if not (le[x][y] or le[y][x]):
                    raise NotMvAlgebraError(f"interval below atom {A.names[a]} is not a chain")
        # height of x inside the interval; sorted() keeps `members` readable
        members = tuple(interval)
        interval = sorted(members, key=lambda x: sum(le[y][x] for y in members))
        intervals.append((a, interval))
    intervals.sort(key=lambda t: len(t[1]))
    chains = tuple(len(iv) for _, iv in intervals)
    if any(d < 2 for d in chains):
        raise NotMvAlgebraError("degenerate factor in decomposition")

    position = [{x: k for k, x in enumerate(iv)} for _, iv in intervals]
    iso = []
    for x in A.elements:
        coords = []
        for (a, _), pos in zip(intervals, position):
            c = pos.get(wedge[x][a])
            if c is None:
                raise NotMvAlgebraError(f"{A.names[x]} ^ {A.names[a]} left the interval")
            coords.append(c)
        iso.append(tuple(coords))

    P = make_product([make_chain(d) for d in chains], max_size=max(A.n, 1))
    phi = [P.from_tuple(c) for c in iso]
    if len(set(phi)) != A.n or P.n != A.n:
        raise NotMvAlgebraError("coordinate map is not a bijection")
    for x in A.elements:
        if phi[A.neg[x]] != P.neg[phi[x]]:
            raise NotMvAlgebraError(f"coordinate map does not preserve * at {A.names[x]}")
        for y in A.elements:
            if phi[A.oplus[x][y]] != P.oplus[phi[x]][phi[y]]:
                raise NotMvAlgebraError(
                    f"coordinate map does not preserve + at ({A.names[x]}, {A.names[y]})")
    return Decomposition(chains, tuple(iso))


def is_isomorphic(A, B):
    return A.n == B.n and decompose(A).chains == decompose(B).chains


def factorizations(m, smallest=2):
    """Non-decreasing tuples of integers >= ``smallest`` whose product is m."""
    if m == 1:
        return [()]
    out = []
    d = smallest
    while d * d <= m:
        if m % d == 0:
            out.extend((d,) + rest for rest in factorizations(m // d, d))
        d += 1
    if m >= smallest:
        out.append((m,))
    return out


def algebra_from_chains(chains):
    if len(chains) == 1:
        return make_chain(chains[0])
    return make_product([make_chain(d) for d in chains])


def all_algebras_of_size(m, max_size=None):
    """One representative per isomorphism class of m-element MV-algebras.

    Ordered by number of factors, then lexicographically on the chain lengths.
    """
    if m < 2:
        raise InvalidSizeError(f"need m >= 2, got {m}")
    cap = max_elements(max_size)
    if m > cap:
        raise ResourceLimitError(f"size {m} exceeds cap {cap}")
    shapes = sorted(factorizations(m), key=lambda t: (len(t), t))
    return [algebra_from_chains(t) for t in shapes]
