"""Finite groups as multiplication tables, homomorphisms and actions.

Element ``0`` is always the identity.  Groups here are small (a few hundred
elements at most), so everything is exhaustive.

>>> D8, _, _, _ = semidirect_product(FiniteGroup.cyclic(4), FiniteGroup.cyclic(2),
...     GroupAction.from_function(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4), lambda g, t: t if g == 0 else (-t) % 4))
>>> sorted(D8.element_order(x) for x in D8.elements()).count(4)
2
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Iterable, Sequence

from ..errors import InvalidGroup, NotAHomomorphism


class FiniteGroup:
    """A group given by its full multiplication table."""

    __slots__ = ("table", "order", "inverse", "name", "_gens", "_hash")

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None, check: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name
        self._gens = None
        self._hash = None
        n = self.order
        if n == 0 or any(len(r) != n for r in self.table):
            raise InvalidGroup("table must be a non-empty square")
        inv = [None] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == 0:
                    inv[a] = b
                    break
        if check:
            self._validate(inv)
        self.inverse = tuple(inv)

    def _validate(self, inv) -> None:
        n, t = self.order, self.table
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise InvalidGroup(f"element 0 is not an identity (fails at {a})")
            if sorted(t[a]) != list(range(n)):
                raise InvalidGroup(f"row {a} is not a permutation")
            if inv[a] is None or t[inv[a]][a] != 0:
                raise InvalidGroup(f"element {a} has no two-sided inverse")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise InvalidGroup(f"associativity fails at ({a}, {b}, {c})")

    # constructors

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}", check=False)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], name="1", check=False)

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        """Element ``(g, h)`` has index ``g + |G| * h``."""
        n, m = G.order, H.order
        table = [
            [G.table[g1][g2] + n * H.table[h1][h2] for h2 in range(m) for g2 in range(n)]
            for h1 in range(m)
            for g1 in range(n)
        ]
        return cls(table, name=f"{G.name}x{H.name}" if G.name and H.name else None, check=False)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], name: str | None = None) -> "FiniteGroup":
        """The group of the given permutations (must be closed, identity first)."""
        perms = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(perms)}
        ident = tuple(range(len(perms[0])))
        if perms[0] != ident:
            raise InvalidGroup("first permutation must be the identity")
        table = []
        for p in perms:
            row = []
            for q in perms:
                pq = tuple(p[q[i]] for i in range(len(q)))  # p after q
                if pq not in index:
                    raise InvalidGroup("permutations not closed under composition")
                row.append(index[pq])
            table.append(row)
        return cls(table, name=name)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = sorted(permutations(range(n)))
        return cls.from_permutations(perms, name=f"S{n}")

    @classmethod
    def abelian(cls, orders: Sequence[int]) -> "FiniteGroup":
        """``Z/o_1 x ... x Z/o_k``; element index is mixed radix with the first factor fastest."""
        G = cls.trivial()
        for o in orders:
            G = cls.direct_product(G, cls.cyclic(o))
        G.name = "x".join(f"C{o}" for o in orders) if orders else "1"
        return G

    # element arithmetic

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, xs: Iterable[int]) -> int:
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^{-1}``."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(a) for a in self.elements()))

    # subgroups

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def generators(self) -> tuple[int, ...]:
        """A deterministic small generating set."""
        if self._gens is None:
            gens: list[int] = []
            span = {0}
            while len(span) < self.order:
                # the element outside the span generating the largest new subgroup
                best = max(
                    (x for x in self.elements() if x not in span),
                    key=lambda x: (len(self.closure(gens + [x])), -x),
                )
                gens.append(best)
                span = set(self.closure(gens))
            self._gens = tuple(gens)
        return self._gens

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return 0 in s and all(self.table[a][self.inverse[b]] in s for a in s for b in s)

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return self.is_subgroup(s) and all(self.conj(g, x) in s for g in self.elements() for x in s)

    def subgroup(self, elems: Iterable[int], name: str | None = None) -> tuple["FiniteGroup", "GroupHom"]:
        """The subgroup on ``elems`` (re-indexed in increasing order) with its inclusion."""
        elems = sorted(set(elems))
        if not self.is_subgroup(elems):
            raise InvalidGroup("not a subgroup")
        pos = {x: i for i, x in enumerate(elems)}
        table = [[pos[self.table[a][b]] for b in elems] for a in elems]
        H = FiniteGroup(table, name=name, check=False)
        return H, GroupHom(H, self, elems, check=False)

    def cosets(self, normal: Iterable[int]) -> list[list[int]]:
        normal = sorted(set(normal))
        seen, out = set(), []
        for g in self.elements():
            if g in seen:
                continue
            c = sorted(self.table[g][n] for n in normal)
            seen.update(c)
            out.append(c)
        return out

    def quotient(self, normal: Iterable[int], name: str | None = None) -> tuple["FiniteGroup", "GroupHom"]:
        """``G/N`` with its projection; cosets are numbered by their smallest element."""
        normal = sorted(set(normal))
        if not self.is_normal(normal):
            raise InvalidGroup("quotient by a non-normal subgroup")
        cosets = self.cosets(normal)
        which = {}
        for i, c in enumerate(cosets):
            for g in c:
                which[g] = i
        reps = [c[0] for c in cosets]
        table = [[which[self.table[a][b]] for b in reps] for a in reps]
        Q = FiniteGroup(table, name=name, check=False)
        return Q, GroupHom(self, Q, [which[g] for g in self.elements()], check=False)

    def center(self) -> list[int]:
        t = self.table
        return [z for z in self.elements() if all(t[z][g] == t[g][z] for g in self.elements())]

    def commutator_subgroup(self) -> list[int]:
        comms = {self.table[self.table[a][b]][self.inverse[self.table[b][a]]] for a in self.elements() for b in self.elements()}
        return self.closure(comms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.table)
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


class GroupHom:
    """Homomorphism given by the image of every element."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int], check: bool = True):
        self.source, self.target = source, target
        self.images = tuple(int(x) for x in images)
        if len(self.images) != source.order:
            raise NotAHomomorphism("one image per source element required")
        if check:
            bad = self.first_failure()
            if bad is not None:
                raise NotAHomomorphism(f"f(xy) != f(x)f(y) at {bad}")

    def first_failure(self):
        f, s, t = self.images, self.source.table, self.target.table
        if f[0] != 0:
            return (0, 0)
        for x in self.source.elements():
            for y in self.source.elements():
                if f[s[x][y]] != t[f[x]][f[y]]:
                    return (x, y)
        return None

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupHom":
        return cls(G, G, list(G.elements()), check=False)

    @classmethod
    def trivial(cls, G: FiniteGroup, H: FiniteGroup) -> "GroupHom":
        return cls(G, H, [0] * G.order, check=False)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def then(self, other: "GroupHom") -> "GroupHom":
        """``other o self``."""
        return GroupHom(self.source, other.target, [other.images[y] for y in self.images], check=False)

    def kernel(self) -> list[int]:
        return [x for x in self.source.elements() if self.images[x] == 0]

    def image(self) -> list[int]:
        return sorted(set(self.images))

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def section(self) -> list[int]:
        """Smallest preimage of each image element (``-1`` outside the image)."""
        s = [-1] * self.target.order
        for x in reversed(range(self.source.order)):
            s[self.images[x]] = x
        return s

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupHom) and self.images == other.images and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"GroupHom({self.source!r} -> {self.target!r}, {list(self.images)})"


class GroupAction:
    """Left action of ``actor`` on ``carrier`` by automorphisms."""

    __slots__ = ("actor", "carrier", "maps")

    def __init__(self, actor: FiniteGroup, carrier: FiniteGroup, maps: Sequence[Sequence[int]], check: bool = True):
        self.actor, self.carrier = actor, carrier
        self.maps = tuple(tuple(int(x) for x in m) for m in maps)
        if check:
            self.validate()

    def validate(self) -> None:
        A, C = self.actor, self.carrier
        if len(self.maps) != A.order or any(len(m) != C.order for m in self.maps):
            raise InvalidGroup("one carrier permutation per actor element required")
        for g, m in enumerate(self.maps):
            if sorted(m) != list(C.elements()):
                raise InvalidGroup(f"action of {g} is not a permutation")
            for x in C.elements():
                for y in C.elements():
                    if m[C.table[x][y]] != C.table[m[x]][m[y]]:
                        raise InvalidGroup(f"action of {g} is not an automorphism at ({x}, {y})")
        if self.maps[0] != tuple(C.elements()):
            raise InvalidGroup("identity must act trivially")
        for g in A.elements():
            for h in A.elements():
                gh = self.maps[A.table[g][h]]
                mg, mh = self.maps[g], self.maps[h]
                if any(gh[x] != mg[mh[x]] for x in C.elements()):
                    raise InvalidGroup(f"action is not multiplicative at ({g}, {h})")

    @classmethod
    def trivial(cls, actor: FiniteGroup, carrier: FiniteGroup) -> "GroupAction":
        ident = tuple(carrier.elements())
        return cls(actor, carrier, [ident] * actor.order, check=False)

    @classmethod
    def from_function(cls, actor: FiniteGroup, carrier: FiniteGroup, fn: Callable[[int, int], int], check: bool = True) -> "GroupAction":
        return cls(actor, carrier, [[fn(g, x) for x in carrier.elements()] for g in actor.elements()], check=check)

    @classmethod
    def conjugation(cls, group: FiniteGroup, sub: GroupHom | None = None) -> "GroupAction":
        """``group`` acting by conjugation on itself or on a normal subgroup given by its inclusion."""
        if sub is None:
            return cls(group, group, [[group.conj(g, x) for x in group.elements()] for g in group.elements()], check=False)
        pos = {y: i for i, y in enumerate(sub.images)}
        maps = [[pos[group.conj(g, y)] for y in sub.images] for g in group.elements()]
        return cls(group, sub.source, maps, check=False)

    def pullback(self, f: GroupHom) -> "GroupAction":
        """The action of ``f.source`` through ``f``."""
        return GroupAction(f.source, self.carrier, [self.maps[f.images[x]] for x in f.source.elements()], check=False)

    def act(self, g: int, x: int) -> int:
        return self.maps[g][x]

    def is_trivial(self) -> bool:
        ident = tuple(self.carrier.elements())
        return all(m == ident for m in self.maps)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAction) and self.maps == other.maps

    def __hash__(self) -> int:
        return hash(self.maps)


def semidirect_product(T: FiniteGroup, G: FiniteGroup, act: GroupAction):
    """``T x| G`` with ``(t,g)(t',g') = (t * g.t', g g')``.

    Element ``(t, g)`` has index ``t + |T| * g``.  Returns the group, the
    injections of ``T`` and ``G`` and the projection onto ``G``.
    """
    nT, nG = T.order, G.order
    tt, gt, m = T.table, G.table, act.maps
    table = []
    for g in range(nG):
        mg = m[g]
        for t in range(nT):
            row = []
            tr = tt[t]
            for g2 in range(nG):
                base = nT * gt[g][g2]
                for t2 in range(nT):
                    row.append(tr[mg[t2]] + base)
            table.append(row)
    H = FiniteGroup(table, check=False)
    inj_T = GroupHom(T, H, list(T.elements()), check=False)
    inj_G = GroupHom(G, H, [nT * g for g in G.elements()], check=False)
    proj = GroupHom(H, G, [x // nT for x in H.elements()], check=False)
    return H, inj_T, inj_G, proj


# homomorphism and isomorphism search

def extend_homomorphism(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Extend generator images to a homomorphism ``G -> H`` or return ``None``."""
    f = [-1] * G.order
    f[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, fs in zip(gens, images):
                y = G.table[x][s]
                fy = H.table[f[x]][fs]
                if f[y] == -1:
                    f[y] = fy
                    nxt.append(y)
                elif f[y] != fy:
                    return None
        frontier = nxt
    if -1 in f:
        raise InvalidGroup("generators do not generate")
    return f


def homomorphisms(
    G: FiniteGroup,
    H: FiniteGroup,
    candidates: Callable[[int], Iterable[int]] | None = None,
    bijective: bool = False,
):
    """Yield all homomorphisms ``G -> H`` as image lists.

    ``candidates(s)`` restricts the images of generator ``s``; element orders
    always prune the search.
    """
    gens = G.generators()
    Hord = [H.element_order(y) for y in H.elements()]
    choices = []
    for s in gens:
        o = G.element_order(s)
        pool = candidates(s) if candidates is not None else H.elements()
        if bijective:
            choices.append([y for y in pool if Hord[y] == o])
        else:
            choices.append([y for y in pool if o % Hord[y] == 0])
    for imgs in product(*choices):
        f = extend_homomorphism(G, H, gens, imgs)
        if f is None:
            continue
        if bijective and len(set(f)) != H.order:
            continue
        yield f


def order_profile(G: FiniteGroup) -> tuple:
    return tuple(sorted(G.element_order(x) for x in G.elements()))


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, candidates=None) -> GroupHom | None:
    if G.order != H.order or order_profile(G) != order_profile(H):
        return None
    for f in homomorphisms(G, H, candidates, bijective=True):
        return GroupHom(G, H, f, check=False)
    return None


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def automorphisms(G: FiniteGroup) -> list[list[int]]:
    return list(homomorphisms(G, G, bijective=True))
