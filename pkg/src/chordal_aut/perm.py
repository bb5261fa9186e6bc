"""Permutations, permutation groups and cosets.

Groups are represented by a base and strong generating set (deterministic
Schreier-Sims).  Composition is read left to right: ``(p * q)[a] == q[p[a]]``,
so ``a ** (p * q) == (a ** p) ** q``.

Cosets are either empty or of the form ``group * rep``; for isomorphism
cosets between two different vertex sets the representative is the
domain-alignment bijection and the group acts on the source side.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .errors import StructuralError


_IDENTITY_CACHE: dict[int, tuple] = {}


def _identity_images(n: int) -> tuple:
    out = _IDENTITY_CACHE.get(n)
    if out is None:
        out = tuple(range(n))
        _IDENTITY_CACHE[n] = out
    return out


class Perm:
    """A permutation of 0..n-1 stored as an image array."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        if set(self.images) != set(range(len(self.images))):
            raise ValueError(f"not a permutation: {images!r}")

    @staticmethod
    def _raw(images: tuple) -> "Perm":
        # internal fast path: trusted image tuples skip validation
        p = object.__new__(Perm)
        p.images = images
        return p

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm._raw(tuple(range(n)))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return Perm(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __mul__(self, other: "Perm") -> "Perm":
        # left-to-right: apply self first, then other
        return Perm._raw(tuple(map(other.images.__getitem__, self.images)))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for a, b in enumerate(self.images):
            inv[b] = a
        return Perm._raw(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == _identity_images(len(self.images))

    def apply_set(self, points: Iterable[int]) -> frozenset:
        return frozenset(self.images[p] for p in points)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def cycle_string(self) -> str:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) if out else "()"


class _Level:
    """One level of a stabilizer chain: a base point, its orbit transversal
    (with cached inverses) and the strong generators at this level."""

    __slots__ = ("point", "transversal", "inv", "gens")

    def __init__(self, point: int, degree: int):
        self.point = point
        ident = Perm.identity(degree)
        self.transversal: dict[int, Perm] = {point: ident}
        self.inv: dict[int, Perm] = {point: ident}
        self.gens: list[Perm] = []


class PermGroup:
    """Permutation group on 0..degree-1 with a stabilizer chain."""

    def __init__(self, degree: int, generators: Iterable[Perm] = (),
                 base_hint: Sequence[int] = ()):
        self.degree = degree
        self._levels: list[_Level] = []
        for b in base_hint:
            self._levels.append(_Level(b, degree))
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            self._add_generator(g, 0)

    # -- construction -----------------------------------------------------

    def _add_generator(self, g: Perm, level: int = 0) -> None:
        queue: list[tuple[Perm, int]] = [(g, level)]
        while queue:
            h, lvl = queue.pop()
            residue, at = self._sift(h, lvl)
            if residue.is_identity():
                continue
            if at == len(self._levels):
                # new base point: first point moved by the residue
                for b in range(self.degree):
                    if residue(b) != b:
                        self._levels.append(_Level(b, self.degree))
                        break
            self._levels[at].gens.append(residue)
            # extend every level whose orbit can see the new generator,
            # deepest first; new Schreier generators go back on the queue
            for j in range(at, -1, -1):
                for sg in self._extend_level(j, residue):
                    queue.append((sg, j + 1))

    def _extend_level(self, level: int, new_gen: Perm) -> list[Perm]:
        """Extend one level's orbit by a new generator, returning exactly
        the Schreier generators not emitted before: old points paired with
        the new generator plus new points paired with every generator."""
        lv = self._levels[level]
        gens = [g for l in self._levels[level:] for g in l.gens]
        old_points = list(lv.transversal)
        new_points: list[int] = []

        def reach(a: int, s: Perm) -> None:
            b = s(a)
            if b not in lv.transversal:
                u = lv.transversal[a] * s
                lv.transversal[b] = u
                lv.inv[b] = u.inverse()
                new_points.append(b)

        for a in old_points:
            reach(a, new_gen)
        i = 0
        while i < len(new_points):
            a = new_points[i]
            i += 1
            for s in gens:
                reach(a, s)
        schreier: list[Perm] = []
        for a in old_points:
            sg = lv.transversal[a] * new_gen * lv.inv[new_gen(a)]
            if not sg.is_identity():
                schreier.append(sg)
        for a in new_points:
            u_a = lv.transversal[a]
            for s in gens:
                sg = u_a * s * lv.inv[s(a)]
                if not sg.is_identity():
                    schreier.append(sg)
        return schreier

    def _sift(self, g: Perm, level: int = 0) -> tuple[Perm, int]:
        for lvl in range(level, len(self._levels)):
            lv = self._levels[lvl]
            target = g(lv.point)
            if target == lv.point:
                continue
            u_inv = lv.inv.get(target)
            if u_inv is None:
                return g, lvl
            g = g * u_inv
        return g, len(self._levels)

    # -- queries -----------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    def generators(self) -> list[Perm]:
        return [g for lv in self._levels for g in lv.gens]

    def order(self) -> int:
        out = 1
        for lv in self._levels:
            out *= len(lv.transversal)
        return out

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._sift(g)
        return residue.is_identity()

    def __contains__(self, g: Perm) -> bool:
        return self.contains(g)

    def elements(self, limit: int = 10 ** 7) -> Iterator[Perm]:
        """Iterate all elements; guarded against huge groups."""
        if self.order() > limit:
            raise ValueError(f"group too large to enumerate: {self.order()}")

        def rec(level: int) -> Iterator[Perm]:
            if level == len(self._levels):
                yield Perm.identity(self.degree)
                return
            for rest in rec(level + 1):
                for u in self._levels[level].transversal.values():
                    yield rest * u

        return rec(0)

    def orbit(self, point: int) -> frozenset:
        seen = {point}
        queue = [point]
        gens = self.generators()
        while queue:
            a = queue.pop()
            for g in gens:
                b = g(a)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    def transversal_to(self, point: int, target: int) -> Optional[Perm]:
        """Some group element mapping ``point`` to ``target``, or None."""
        seen = {point: Perm.identity(self.degree)}
        queue = [point]
        gens = self.generators()
        while queue:
            a = queue.pop()
            for g in gens:
                b = g(a)
                if b not in seen:
                    seen[b] = seen[a] * g
                    if b == target:
                        return seen[b]
                    queue.append(b)
        return seen.get(target)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        """Subgroup fixing every point in ``points``."""
        rebuilt = PermGroup(self.degree, self.generators(),
                            base_hint=list(points))
        gens = [g for lv in rebuilt._levels[len(points):] for g in lv.gens]
        return PermGroup(self.degree, gens)

    def conjugate(self, w: Perm) -> "PermGroup":
        """The group w^-1 * G * w (acting on relabelled points)."""
        w_inv = w.inverse()
        return PermGroup(self.degree,
                         [w_inv * g * w for g in self.generators()])


def group_from_generators(gens: Sequence[Perm],
                          degree: Optional[int] = None) -> PermGroup:
    """Build a permutation group (BSGS) from a generating set."""
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required for the trivial group")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators act on different domains")
    return PermGroup(degree, gens)


def restriction(group: PermGroup, points: Sequence[int]
                ) -> tuple[PermGroup, PermGroup]:
    """Image and kernel of the restriction of ``group`` to ``points``.

    ``points`` must be invariant under the group (verified).  The image acts
    on 0..len(points)-1 via the sorted order of ``points``; the kernel is the
    pointwise stabilizer inside the original domain.
    """
    pts = sorted(points)
    pset = frozenset(pts)
    index = {p: i for i, p in enumerate(pts)}
    image_gens = []
    for g in group.generators():
        if g.apply_set(pset) != pset:
            raise ValueError("point set is not invariant under the group")
        image_gens.append(Perm(tuple(index[g(p)] for p in pts)))
    image = PermGroup(len(pts), image_gens)
    kernel = group.pointwise_stabilizer(pts)
    if image.order() * kernel.order() != group.order():
        raise StructuralError("restriction order identity violated")
    return image, kernel


# -- cosets ----------------------------------------------------------------


class Coset:
    """Either empty, or the set ``{g * rep : g in group}``.

    The group acts on the source domain; ``rep`` maps source to target
    points (both domains are 0..n-1 of the same size).
    """

    __slots__ = ("group", "rep")

    def __init__(self, group: Optional[PermGroup], rep: Optional[Perm]):
        if (group is None) != (rep is None):
            raise ValueError("group and rep must both be set or both None")
        self.group = group
        self.rep = rep

    @staticmethod
    def empty() -> "Coset":
        return Coset(None, None)

    @staticmethod
    def from_elements(elements: Sequence[Perm]) -> "Coset":
        elems = list(elements)
        if not elems:
            return Coset.empty()
        rep = elems[0]
        rep_inv = rep.inverse()
        group = group_from_generators([x * rep_inv for x in elems],
                                      degree=rep.degree)
        return Coset(group, rep)

    @property
    def is_empty(self) -> bool:
        return self.group is None

    def size(self) -> int:
        return 0 if self.is_empty else self.group.order()

    def contains(self, x: Perm) -> bool:
        if self.is_empty:
            return False
        return self.group.contains(x * self.rep.inverse())

    def __contains__(self, x: Perm) -> bool:
        return self.contains(x)

    def members(self, limit: int = 10 ** 6) -> Iterator[Perm]:
        if self.is_empty:
            return iter(())
        rep = self.rep
        return (g * rep for g in self.group.elements(limit))

    def element_set(self, limit: int = 10 ** 6) -> frozenset:
        return frozenset(self.members(limit))

    def inverse(self) -> "Coset":
        """The coset of inverses (a coset from the target side back)."""
        if self.is_empty:
            return self
        rep_inv = self.rep.inverse()
        conj = self.group.conjugate(self.rep)
        return Coset(conj, rep_inv)

    def __repr__(self) -> str:
        if self.is_empty:
            return "Coset.empty()"
        return f"Coset(order={self.group.order()}, rep={self.rep!r})"


def _common_base_groups(g1: PermGroup, g2: PermGroup
                        ) -> tuple[PermGroup, PermGroup, list[int]]:
    """Rebuild both groups over one shared base order.

    The base merges both groups' bases, so fixing it pointwise forces the
    identity in either group; chains stay short (no padding with fixed
    points)."""
    base = list(dict.fromkeys(g1.base + g2.base))
    h1 = PermGroup(g1.degree, g1.generators(), base_hint=base)
    h2 = PermGroup(g2.degree, g2.generators(), base_hint=base)
    # generators may move points outside the merged base; extend it
    extra = [lv.point for lv in h1._levels[len(base):]]
    extra += [lv.point for lv in h2._levels[len(base):]]
    if extra:
        base = list(dict.fromkeys(base + extra))
        h1 = PermGroup(g1.degree, g1.generators(), base_hint=base)
        h2 = PermGroup(g2.degree, g2.generators(), base_hint=base)
        if len(h1._levels) > len(base) or len(h2._levels) > len(base):
            raise StructuralError("base merge failed to stabilize")
    return h1, h2, base


def _search_intersection_element(g1: PermGroup, g2: PermGroup,
                                 base: Sequence[int],
                                 rho: Optional[Perm],
                                 fixed_prefix: int = 0,
                                 forced_image: Optional[tuple[int, int]] = None
                                 ) -> Optional[Perm]:
    """First element y of ``g1`` with ``y * rho^-1 in g2`` (DFS).

    With ``rho`` None the condition is ``y in g2``.  ``fixed_prefix`` forces
    y to fix base[0..fixed_prefix-1] pointwise; ``forced_image=(i, t)``
    forces y(base[i]) == t.  Both groups must be built over ``base``; the
    g2-side feasibility is tracked incrementally via a correction
    permutation per search node.
    """
    rho_inv = rho.inverse() if rho is not None else None
    n_levels = len(g1._levels)
    g2_levels = g2._levels
    if len(g2_levels) != len(base) or any(
            g2_levels[j].point != base[j] for j in range(len(base))):
        raise ValueError("g2 chain must follow the common base")

    def dfs(level: int, partial: Perm, corr: Optional[Perm]
            ) -> Optional[Perm]:
        if level == n_levels:
            # residue of the g2-side sift must be the identity
            z = partial * rho_inv if rho_inv is not None else partial
            r = z * corr if corr is not None else z
            return partial if r.is_identity() else None
        lv = g1._levels[level]
        b = lv.point
        pos = level  # chains follow the common base order
        if lv.point != base[level]:
            raise ValueError("g1 chain must follow the common base")
        for gamma in sorted(lv.transversal):
            img = partial(gamma)
            if pos < fixed_prefix and img != b:
                continue
            if forced_image is not None and pos == forced_image[0] \
                    and img != forced_image[1]:
                continue
            z_img = rho_inv(img) if rho_inv is not None else img
            target = corr(z_img) if corr is not None else z_img
            u_inv = g2_levels[level].inv.get(target)
            if u_inv is None:
                continue
            child_corr = u_inv if corr is None else corr * u_inv
            cand = lv.transversal[gamma] * partial
            found = dfs(level + 1, cand, child_corr)
            if found is not None:
                return found
        return None

    return dfs(0, Perm.identity(g1.degree), None)


def _orbit_under(point: int, gens: Sequence[Perm]) -> set:
    seen = {point}
    queue = [point]
    while queue:
        a = queue.pop()
        for g in gens:
            b = g(a)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def intersect_groups(g1: PermGroup, g2: PermGroup) -> PermGroup:
    """Exact intersection of two permutation groups on the same domain."""
    if g1.degree != g2.degree:
        raise ValueError("domain mismatch")
    if g1.is_trivial() or g2.is_trivial():
        return PermGroup(g1.degree)
    h1, h2, base = _common_base_groups(g1, g2)
    gens: list[Perm] = []
    # walk the base top-down collecting transversal witnesses of the
    # intersection's own stabilizer chain; pruning uses the orbit of the
    # already-found prefix-fixing witnesses, which is sound (skipped images
    # are certified reachable inside the intersection)
    for i, b in enumerate(base):
        lv = h1._levels[i] if i < len(h1._levels) else None
        if lv is None or lv.point != b:
            break
        if len(lv.transversal) == 1:
            continue
        fixing = [h for h in gens
                  if all(h(p) == p for p in base[:i])]
        reached = _orbit_under(b, fixing)
        for gamma in sorted(lv.transversal):
            if gamma == b or gamma in reached:
                continue
            h = _search_intersection_element(
                h1, h2, base, rho=None, fixed_prefix=i,
                forced_image=(i, gamma))
            if h is not None:
                gens.append(h)
                fixing.append(h)
                reached = _orbit_under(b, fixing)
    return PermGroup(g1.degree, gens)


def coset_intersection(c1: Coset, c2: Coset, classes=None) -> Coset:
    """Exact intersection of two cosets (possibly empty).

    ``classes`` (a coloring of the domain) is optional; when given, both
    cosets are verified to respect it: every element maps each class onto
    the class of the same color.  The bounded class sizes are what keeps
    the backtracking affordable; the result is exact either way.
    """
    if c1.is_empty or c2.is_empty:
        return Coset.empty()
    if c1.rep.degree != c2.rep.degree or c1.group.degree != c2.group.degree:
        raise ValueError("domain mismatch")
    if classes is not None:
        for c in (c1, c2):
            for p in [c.rep] + c.group.generators():
                for cls in classes.classes:
                    image = p.apply_set(cls)
                    if not any(image == other for other in classes.classes):
                        raise ValueError(
                            "coset does not respect the class partition")
    # shortcut: same underlying group
    if c1.group is c2.group or (
            len(c1.group.generators()) == len(c2.group.generators())
            and c1.group.order() == c2.group.order()
            and all(c2.group.contains(g) for g in c1.group.generators())):
        return c1 if c1.contains(c2.rep) else Coset.empty()
    rho = c2.rep * c1.rep.inverse()  # source -> source
    h1, h2, base = _common_base_groups(c1.group, c2.group)
    y0 = _search_intersection_element(h1, h2, base, rho=rho)
    if y0 is None:
        return Coset.empty()
    h = intersect_groups(c1.group, c2.group)
    return Coset(h, y0 * c1.rep)


def coset_union_as_coset(parts: Sequence[Coset]) -> Coset:
    """Combine cosets whose union is known to form a single coset.

    Picks the first non-empty part's representative; the group is generated
    by all parts' groups together with the cross representatives.
    """
    nonempty = [c for c in parts if not c.is_empty]
    if not nonempty:
        return Coset.empty()
    rep0 = nonempty[0].rep
    rep0_inv = rep0.inverse()
    gens: list[Perm] = []
    for c in nonempty:
        gens.extend(c.group.generators())
        cross = c.rep * rep0_inv
        if not cross.is_identity():
            gens.append(cross)
    return Coset(group_from_generators(gens, degree=rep0.degree), rep0)
