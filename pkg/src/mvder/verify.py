"""Exhaustive property suite over one finite MV-algebra and its derivations.

Each check is a generator yielding human-readable witnesses of failure; a
check passes when it yields nothing.  ``run_suite`` collects the results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian

from .algebra import check_axioms
from .errors import MvError, ResourceLimitError
from .derivations import (
    DEFAULT_MAX_SEARCH,
    Operator,
    chi,
    chain_count,
    chain_derivations,
    classify,
    enumerate_operators,
    factorizes,
    identity,
    ider,
    is_derivation,
    is_idempotent,
    is_isotone,
    is_lattice_ideal,
    modify_at_one,
    principal,
    principal_witness,
    product_derivation,
    project_derivation,
    embed,
    zero_map,
)
from .lattice import (
    chain_der_isomorphism,
    chi_filter_check,
    derivation_poset,
    family_isomorphism,
    operator_leq,
    pointwise_join,
    pointwise_meet,
)
from .structure import (
    algebra_from_chains,
    boolean_center,
    decompose,
    ideals,
    lattice_ideals,
)

MAX_WITNESSES = 5
# Checks that range over every self-map of a carrier are skipped above this.
ALL_MAPS_LIMIT = 5000


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    violations: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status != "fail"

    def to_dict(self):
        return {"check": self.name, "status": self.status,
                "violations": self.violations, "witnesses": self.witnesses}


class Context:
    """Everything the checks need, computed lazily and shared."""

    def __init__(self, A, ders=None, max_search=DEFAULT_MAX_SEARCH):
        self.A = A
        self.max_search = max_search
        if ders is not None:
            self.ders = list(ders)

    @cached_property
    def ders(self):
        return enumerate_operators(self.A, self.max_search)

    @cached_property
    def der_set(self):
        return set(self.ders)

    @cached_property
    def B(self):
        return list(boolean_center(self.A))

    @cached_property
    def poset(self):
        return derivation_poset(self.A, self.ders)

    @property
    def is_chain(self):
        return self.A.is_chain()

    @property
    def is_boolean(self):
        return len(self.B) == self.A.n

    @property
    def is_product(self):
        return len(self.A.factors) >= 2

    def s(self, *xs):
        return ", ".join(self.A.names[x] for x in xs)


_CHECKS = []


def check(name, when=None):
    def register(fn):
        _CHECKS.append((name, fn, when))
        return fn
    return register


def all_maps(F):
    return (Operator(F, imgs) for imgs in cartesian(range(F.n), repeat=F.n))


# -- the algebra itself --------------------------------------------------------

@check("order chain x.y <= x^y <= x <= xvy <= x+y")
def _(c):
    A = c.A
    le = A.leq_table
    for x, y in cartesian(A.elements, A.elements):
        seq = [A.odot(x, y), A.wedge(x, y), x, A.vee(x, y), A.add(x, y)]
        if not all(le[a][b] for a, b in zip(seq, seq[1:])):
            yield f"x, y = {c.s(x, y)}"


@check("natural order is a bounded partial order")
def _(c):
    A = c.A
    le = A.leq_table
    for x in A.elements:
        if not (le[x][x] and le[0][x] and le[x][A.one]):
            yield f"bounds or reflexivity fail at {c.s(x)}"
        for y in A.elements:
            if x != y and le[x][y] and le[y][x]:
                yield f"antisymmetry fails at {c.s(x, y)}"
            for z in A.elements:
                if le[x][y] and le[y][z] and not le[x][z]:
                    yield f"transitivity fails at {c.s(x, y, z)}"


@check("join and meet distribute", when=lambda c: c.A.n <= 12)
def _(c):
    A = c.A
    for x, y, z in cartesian(A.elements, repeat=3):
        if A.wedge(x, A.vee(y, z)) != A.vee(A.wedge(x, y), A.wedge(x, z)):
            yield f"x, y, z = {c.s(x, y, z)}"


@check("order characterisations: x <= y iff x.y* = 0 iff x + z = y for some z")
def _(c):
    A = c.A
    for x, y in cartesian(A.elements, A.elements):
        a = A.leq(x, y)
        b = A.odot(x, A.star(y)) == 0
        e = any(A.add(x, z) == y for z in A.elements)
        if not a == b == e:
            yield f"x, y = {c.s(x, y)}"


@check("odot distributes over join and meet")
def _(c):
    A = c.A
    for x, y, z in cartesian(A.elements, repeat=3):
        if A.odot(x, A.vee(y, z)) != A.vee(A.odot(x, y), A.odot(x, z)) or \
                A.odot(x, A.wedge(y, z)) != A.wedge(A.odot(x, y), A.odot(x, z)):
            yield f"x, y, z = {c.s(x, y, z)}"


@check("residuation: x.y <= z iff x <= y* + z")
def _(c):
    A = c.A
    for x, y, z in cartesian(A.elements, repeat=3):
        if A.leq(A.odot(x, y), z) != A.leq(x, A.add(A.star(y), z)):
            yield f"x, y, z = {c.s(x, y, z)}"


@check("on chains x + y = x iff x = 1 or y = 0", when=lambda c: c.is_chain)
def _(c):
    A = c.A
    for x, y in cartesian(A.elements, A.elements):
        if (A.add(x, y) == x) != (x == A.one or y == 0):
            yield f"x, y = {c.s(x, y)}"


# -- structure -------------------------------------------------------------------

@check("Boolean center is a subalgebra")
def _(c):
    A, B = c.A, set(c.B)
    if 0 not in B or A.one not in B:
        yield "missing 0 or 1"
    for x in B:
        if A.star(x) not in B:
            yield f"{c.s(x)}* not idempotent"
        for y in B:
            if A.add(x, y) not in B:
                yield f"{c.s(x)} + {c.s(y)} not idempotent"


@check("on the Boolean center + is join and . is meet")
def _(c):
    A = c.A
    for x in c.B:
        for y in A.elements:
            if A.add(x, y) != A.vee(x, y) or A.odot(x, y) != A.wedge(x, y):
                yield f"x, y = {c.s(x, y)}"


@check("ideals are lattice ideals")
def _(c):
    lat = {S.mask for S in lattice_ideals(c.A)}
    for S in ideals(c.A):
        if S.mask not in lat:
            yield f"ideal {S!r}"


@check("decomposition into chains round-trips")
def _(c):
    D = decompose(c.A)
    again = decompose(algebra_from_chains(D.chains)) if D.chains else D
    prod = 1
    for k in D.chains:
        prod *= k
    if again.chains != D.chains or prod != c.A.n:
        yield f"chains {D.chains} rebuild to {again.chains}"


# -- every derivation --------------------------------------------------------------

@check("d(0) = 0 and d(x) <= x")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            if d(0) != 0 or not A.leq(d(x), x):
                yield f"d = {d}, x = {c.s(x)}"


@check("d(x^k) = x^(k-1) . d(x)")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            for k in range(1, A.n + 1):
                if d(A.power(x, k)) != A.odot(A.power(x, k - 1), d(x)):
                    yield f"d = {d}, x = {c.s(x)}, k = {k}"


@check("d(x) . x* = x . d(x*) = 0")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            if A.odot(d(x), A.star(x)) != 0 or A.odot(x, d(A.star(x))) != 0:
                yield f"d = {d}, x = {c.s(x)}"


@check("d(x) = d(x) v (x . d(1))")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            if d(x) != A.vee(d(x), A.odot(x, d(A.one))):
                yield f"d = {d}, x = {c.s(x)}"


@check("d(x*) <= x* <= d(x)*")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            xs = A.star(x)
            if not (A.leq(d(xs), xs) and A.leq(xs, A.star(d(x)))):
                yield f"d = {d}, x = {c.s(x)}"


@check("d(x).d(y) <= d(x.y) <= d(x) v d(y) <= d(x) + d(y)")
def _(c):
    A = c.A
    for d in c.ders:
        for x, y in cartesian(A.elements, A.elements):
            seq = [A.odot(d(x), d(y)), d(A.odot(x, y)), A.vee(d(x), d(y)), A.add(d(x), d(y))]
            if not all(A.leq(a, b) for a, b in zip(seq, seq[1:])):
                yield f"d = {d}, x, y = {c.s(x, y)}"


@check("d(x)^k <= d(x^k)")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            for k in range(1, A.n + 1):
                if not A.leq(A.power(d(x), k), d(A.power(x, k))):
                    yield f"d = {d}, x = {c.s(x)}, k = {k}"


@check("downsets are mapped into themselves")
def _(c):
    A = c.A
    downs = [set(A.downsets[a]) for a in A.elements]
    downs += [set(S) for S in lattice_ideals(A)]
    for d in c.ders:
        for I in downs:
            if any(d(x) not in I for x in I):
                yield f"d = {d}, downset {sorted(I)}"


@check("fixed points form a downset")
def _(c):
    A = c.A
    for d in c.ders:
        for x in A.elements:
            if d(x) == x:
                for y in A.downsets[x]:
                    if d(y) != y:
                        yield f"d = {d}, x, y = {c.s(x, y)}"


@check("identity criteria: d = Id iff d(1) = 1 iff d hits 1 iff onto iff (+, ^)-law")
def _(c):
    A = c.A
    ident = identity(A)
    for d in c.ders:
        law = all(d(A.add(x, y)) == A.wedge(A.add(d(x), y), A.add(x, d(y)))
                  for x, y in cartesian(A.elements, A.elements))
        flags = [d == ident, d(A.one) == A.one, A.one in d.images,
                 len(set(d.images)) == A.n, law]
        if len(set(flags)) != 1:
            yield f"d = {d}: {flags}"


@check("on Boolean elements d(x^y) = (d(x)^y) v (x^d(y)) and d(x) = x.d(x)")
def _(c):
    A = c.A
    for d in c.ders:
        for x in c.B:
            if d(x) != A.odot(x, d(x)):
                yield f"d = {d}, x = {c.s(x)}"
            for y in c.B:
                if d(A.wedge(x, y)) != A.vee(A.wedge(d(x), y), A.wedge(x, d(y))):
                    yield f"d = {d}, x, y = {c.s(x, y)}"


def _lattice_law(A, d):
    return all(d(A.wedge(x, y)) == A.vee(A.wedge(d(x), y), A.wedge(x, d(y)))
               for x, y in cartesian(A.elements, A.elements))


@check("on Boolean algebras derivations satisfy the lattice-derivation law",
       when=lambda c: c.is_boolean)
def _(c):
    for d in c.ders:
        if not _lattice_law(c.A, d):
            yield f"d = {d}"


@check("on Boolean algebras every lattice derivation is a derivation",
       when=lambda c: c.is_boolean and c.A.n ** c.A.n <= ALL_MAPS_LIMIT)
def _(c):
    for f in all_maps(c.A):
        if _lattice_law(c.A, f) and f not in c.der_set:
            yield f"f = {f}"


@check("d(a) Boolean implies d(d(a)) = d(a)")
def _(c):
    B = set(c.B)
    for d in c.ders:
        for a in c.A.elements:
            if d(a) in B and d(d(a)) != d(a):
                yield f"d = {d}, a = {c.s(a)}"


@check("patching d at 1 below d(1) stays a derivation")
def _(c):
    A = c.A
    for d in c.ders:
        for u in A.downsets[d(A.one)]:
            if modify_at_one(A, d, u) not in c.der_set:
                yield f"d = {d}, u = {c.s(u)}"


@check("every chi(u) and every d_a is a derivation")
def _(c):
    for u in c.A.elements:
        if chi(c.A, u) not in c.der_set:
            yield f"chi({c.s(u)})"
        if principal(c.A, u) not in c.der_set:
            yield f"d_{c.s(u)}"


@check("chi(0) differs from d when d(1) != 0; chi(u) != d_v off {0, 1}")
def _(c):
    A = c.A
    mid = [u for u in A.elements if u not in (0, A.one)]
    for d in c.ders:
        if d(A.one) != 0 and d == chi(A, 0):
            yield f"d = {d}"
    for u in mid:
        for v in mid:
            if chi(A, u) == principal(A, v):
                yield f"u, v = {c.s(u, v)}"


@check("with d(1) Boolean: isotone iff d <= d(1) iff d = d_(d(1)) iff meets iff joins kept")
def _(c):
    A = c.A
    B = set(c.B)
    E = A.elements
    for d in c.ders:
        top = d(A.one)
        if top not in B:
            continue
        flags = [
            is_isotone(A, d),
            all(A.leq(d(x), top) for x in E),
            d == principal(A, top),
            all(d(A.wedge(x, y)) == A.wedge(d(x), d(y)) for x, y in cartesian(E, E)),
            all(d(A.vee(x, y)) == A.vee(d(x), d(y)) for x, y in cartesian(E, E)),
        ]
        if len(set(flags)) != 1:
            yield f"d = {d}: {flags}"


@check("IDer membership iff + preserved iff . preserved")
def _(c):
    A = c.A
    E = A.elements
    B = set(c.B)
    for d in c.ders:
        flags = [
            is_isotone(A, d) and d(A.one) in B,
            all(d(A.add(x, y)) == A.add(d(x), d(y)) for x, y in cartesian(E, E)),
            all(d(A.odot(x, y)) == A.odot(d(x), d(y)) for x, y in cartesian(E, E)),
        ]
        if len(set(flags)) != 1:
            yield f"d = {d}: {flags}"


@check("IDer is {d_a : a Boolean} and d -> d(1) is a bijection onto B(A)")
def _(c):
    A = c.A
    B = set(c.B)
    found = sorted(d for d in c.ders if is_isotone(A, d) and d(A.one) in B)
    if found != ider(A):
        yield f"{len(found)} isotone derivations with Boolean d(1), {len(B)} Boolean elements"
    if sorted(d(A.one) for d in found) != sorted(B):
        yield "d -> d(1) is not a bijection"


@check("IDer members are idempotent")
def _(c):
    for d in ider(c.A):
        if not is_idempotent(d):
            yield f"d = {d}"


@check("fixed points of principal derivations form a lattice ideal")
def _(c):
    A = c.A
    for a in A.elements:
        d = principal(A, a)
        fix = [x for x in A.elements if d(x) == x]
        if not is_lattice_ideal(A, fix):
            yield f"a = {c.s(a)}"


@check("classification flags agree with their definitions")
def _(c):
    A = c.A
    for d in c.ders:
        r = classify(A, d)
        w = principal_witness(A, d)
        if r.is_principal != (w is not None) or \
                (w is not None and principal(A, w) != d) or \
                r.is_chi != (d == chi(A, d(A.one))):
            yield f"d = {d}"


# -- cardinalities -------------------------------------------------------------------

@check("cardinality floors 5, 7, 13 for |A| >= 3, 4, 5")
def _(c):
    n, k = c.A.n, len(c.ders)
    for size, floor in ((3, 5), (4, 7), (5, 13)):
        if n >= size and k < floor:
            yield f"|A| = {n} but |Der(A)| = {k}"


@check("|Der(A)| is 2, 5, 9 exactly when |A| is 2, 3, 4")
def _(c):
    n, k = c.A.n, len(c.ders)
    for size, count in ((2, 2), (3, 5), (4, 9)):
        if (n == size) != (k == count):
            yield f"|A| = {n}, |Der(A)| = {k}"


@check("chains: |Der| = (n-1)(n+2)/2 and Der = {(d_x)^y}", when=lambda c: c.is_chain)
def _(c):
    n = c.A.n
    if len(c.ders) != chain_count(n):
        yield f"|Der(L{n})| = {len(c.ders)}, expected {chain_count(n)}"
    if sorted(chain_derivations(n)) != sorted(c.ders):
        yield "derivation set differs from the closed form"


@check("chains: characterisation through the powers of the coatom",
       when=lambda c: c.is_chain and c.A.n ** c.A.n <= ALL_MAPS_LIMIT)
def _(c):
    A = c.A
    n = A.n
    v = n - 2
    for f in all_maps(A):
        if not A.leq(f(v), v):
            continue
        ok = all(f(A.power(v, m)) == A.odot(A.power(v, m - 1), f(v)) for m in range(1, n)) \
            and A.leq(A.odot(v, f(A.one)), f(v))
        if ok != (f in c.der_set):
            yield f"f = {f}"


# -- direct products --------------------------------------------------------------------

def _factor_ops(c):
    total = 1
    for F in c.A.factors:
        total *= F.n ** F.n
    return total


@check("product operators: projection, Der, isotone, PDer and embedding laws",
       when=lambda c: c.is_product and _factor_ops(c) <= ALL_MAPS_LIMIT)
def _(c):
    P = c.A
    F = P.factors
    for ds in cartesian(*(list(all_maps(f)) for f in F)):
        d = product_derivation(P, ds)
        for i, di in enumerate(ds):
            if project_derivation(P, d, i) != di:
                yield f"(1) pi d rho at factor {i} for {d}"
            if any(P.to_tuple(d(x))[i] != di(P.to_tuple(x)[i]) for x in P.elements):
                yield f"(1) pi d at factor {i} for {d}"
        in_der = [is_derivation(f, di) for f, di in zip(F, ds)]
        prod_der = d in c.der_set
        if prod_der != all(in_der):
            yield f"(2) {d}"
        iso = [a and is_isotone(f, di) for a, f, di in zip(in_der, F, ds)]
        if (prod_der and is_isotone(P, d)) != all(iso):
            yield f"(3) {d}"
        pder = [principal_witness(f, di) is not None for f, di in zip(F, ds)]
        if (principal_witness(P, d) is not None) != all(pder):
            yield f"(4) {d}"
        if all(di(0) == 0 for di in ds):
            for i, di in enumerate(ds):
                if any(d(embed(P, i, x)) != embed(P, i, di(x)) for x in F[i].elements):
                    yield f"(5) at factor {i} for {d}"


@check("projections of derivations are derivations, isotone and principal when d is",
       when=lambda c: c.is_product)
def _(c):
    P = c.A
    for d in c.ders:
        for i, F in enumerate(P.factors):
            p = project_derivation(P, d, i)
            if not is_derivation(F, p):
                yield f"{d} at factor {i}"
            elif is_isotone(P, d) and not is_isotone(F, p):
                yield f"{d} isotone at factor {i}"
            elif principal_witness(P, d) is not None and principal_witness(F, p) is None:
                yield f"{d} principal at factor {i}"


def _factor_products(c, family):
    P = c.A
    pools = [family(F) for F in P.factors]
    return {product_derivation(P, ds) for ds in cartesian(*pools)}


@check("d is a product of factor derivations iff it equals the product of its projections",
       when=lambda c: c.is_product)
def _(c):
    prods = _factor_products(c, enumerate_operators)
    for d in c.ders:
        if (d in prods) != factorizes(c.A, d):
            yield f"d = {d}"


@check("principal derivations of a product are products of principal ones",
       when=lambda c: c.is_product)
def _(c):
    P = c.A
    prods = _factor_products(c, lambda F: [principal(F, a) for a in F.elements])
    if prods != {principal(P, a) for a in P.elements}:
        yield "PDer of the product differs from the product of PDer"


@check("chi(a) for a != 1 does not factor", when=lambda c: c.is_product)
def _(c):
    P = c.A
    for a in P.elements:
        if a != P.one and factorizes(P, chi(P, a)):
            yield f"a = {c.s(a)}"


# -- derivation lattice --------------------------------------------------------------------

@check("0 <= d <= Id for every derivation")
def _(c):
    z, i = zero_map(c.A), identity(c.A)
    for d in c.ders:
        if not (operator_leq(z, d) and operator_leq(d, i)):
            yield f"d = {d}"


@check("pointwise joins of derivations are derivations")
def _(c):
    for i, d in enumerate(c.ders):
        for e in c.ders[i:]:
            if pointwise_join(d, e) not in c.der_set:
                yield f"{d} v {e}"


@check("Der(A) is a lattice with glb = join of common lower bounds")
def _(c):
    # derivation_poset raises if either bound disagrees with its construction
    if not c.poset.is_lattice:
        yield f"missing bound {c.poset.missing_bound()}"


@check("chains: (d_x)^y v (d_z)^w and ^ follow the pairs", when=lambda c: c.is_chain)
def _(c):
    A = c.A
    P = c.poset
    pairs = [(x, y) for x in A.elements for y in A.elements if y <= x and (x, y) != (0, 0)]
    op = {p: modify_at_one(A, principal(A, p[0]), p[1]) for p in pairs}
    for (x, y), (z, w) in cartesian(pairs, pairs):
        j = op[(max(x, z), max(y, w))]
        if pointwise_join(op[(x, y)], op[(z, w)]) != j:
            yield f"join of {(x, y)}, {(z, w)}"
        m = (min(x, z), min(y, w))
        i1, i2 = P.index(op[(x, y)]), P.index(op[(z, w)])
        got = P.items[P.meet_table[i1][i2]]
        want = op[m] if m != (0, 0) else zero_map(A)
        if got != want:
            yield f"meet of {(x, y)}, {(z, w)}"


@check("chains: Der(L_n) is isomorphic to the lattice of pairs", when=lambda c: c.is_chain)
def _(c):
    _, _, f = chain_der_isomorphism(c.A.n, c.poset)
    if f is None:
        yield "no isomorphism"


@check("PDer(A) and chi(A) are isomorphic to L(A), IDer(A) to B(A)")
def _(c):
    for fam in ("pder", "chi", "ider"):
        P, Q, f = family_isomorphism(c.A, fam)
        if f is None:
            yield f"{fam}: no isomorphism"
        elif any(Q.items[f[i]] != d(c.A.one) for i, d in enumerate(P.items)):
            yield f"{fam}: d -> d(1) is not the isomorphism"


@check("chi(A) is closed under pointwise meet")
def _(c):
    A = c.A
    for u, v in cartesian(A.elements, A.elements):
        if pointwise_meet(chi(A, u), chi(A, v))[0] != chi(A, A.wedge(u, v)):
            yield f"u, v = {c.s(u, v)}"


@check("chi(A) is a filter of Der(A)", when=lambda c: c.poset.is_lattice)
def _(c):
    if not chi_filter_check(c.A, c.poset):
        yield "not a filter"


# -----------------------------------------------------------------------------------------

def check_names():
    return [name for name, _, _ in _CHECKS]


def run_suite(A, ders=None, max_search=DEFAULT_MAX_SEARCH):
    """Run every check on A.  Axiom failures stop the suite after reporting them."""
    axioms = check_axioms(A)
    head = CheckResult("MV axioms", "pass" if axioms.passed else "fail",
                       len(axioms.violations),
                       [f"{ax} at {tuple(A.names[x] for x in w)}" for ax, w in axioms.violations])
    if not axioms.passed:
        return [head] + [CheckResult(name, "skip") for name, _, _ in _CHECKS]
    c = Context(A, ders, max_search)
    results = [head]
    for name, fn, when in _CHECKS:
        count, witnesses = 0, []
        try:
            if when is not None and not when(c):
                results.append(CheckResult(name, "skip"))
                continue
            for w in fn(c):
                count += 1
                if len(witnesses) < MAX_WITNESSES:
                    witnesses.append(w)
        except ResourceLimitError:
            raise
        except (MvError, ValueError, KeyError, IndexError) as exc:
            # a check that cannot even run on the given data counts as a failure
            count += 1
            witnesses.append(f"error: {exc}")
        results.append(CheckResult(name, "fail" if count else "pass", count, witnesses))
    return results
