"""Cayley-table groups, subgroups, automorphisms and products.

Every group is a dense multiplication table over element indices with the
identity at index 0.  Tables are numpy arrays and are never mutated after
construction, so groups can be shared freely.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 10000
FULL_ASSOC_LIMIT = 256
ASSOC_SAMPLES = 100_000
_TWIST_MAX = 64
_TWIST_CELLS = 2_000_000


class GroupError(ValueError):
    pass


class TooLarge(GroupError):
    pass


def max_order() -> int:
    return int(os.environ.get("CLTLAB_MAX_ORDER", DEFAULT_MAX_ORDER))


def _check_bound(n: int) -> None:
    bound = max_order()
    if n > bound:
        raise TooLarge(f"group order {n} exceeds bound {bound} (set CLTLAB_MAX_ORDER)")


def _table_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    inv: np.ndarray
    labels: tuple[str, ...]
    spec_tag: str = ""
    named: dict[str, int] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self):
        return len(self.mul)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, spec_tag={self.spec_tag!r})"

    def __getitem__(self, name: str) -> int:
        return self.named[name]

    def op(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.mul[out, x])
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out, base = 0, x
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def commutator(self, x: int, y: int) -> int:
        return self.op(int(self.inv[x]), int(self.inv[y]), x, y)

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.op(g, x, int(self.inv[g]))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = idx.copy()
        k = 1
        while (orders == 0).any():
            k += 1
            cur = self.mul[cur, idx]
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        return _frozen(orders)

    @cached_property
    def centralizer_sizes(self) -> np.ndarray:
        return _frozen((self.mul == self.mul.T).sum(axis=1).astype(np.int64))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return tuple(greedy_generators(self))

    def element_keys(self) -> list[tuple[int, int]]:
        """Isomorphism-invariant per-element key: (order, centralizer size)."""
        return list(zip(self.element_orders.tolist(), self.centralizer_sizes.tolist()))

    @cached_property
    def twisted_counts(self) -> np.ndarray:
        """Row x, column k: number of y with x y x^-1 = y^k, for k < min(exponent, 64).

        An isomorphism-invariant refinement of the element keys that separates
        semidirect products whose actions differ only in their eigenvalues.
        """
        n = self.order
        ar = np.arange(n)
        K = min(self.exponent, _TWIST_MAX)
        powers = np.zeros((K, n), dtype=self.mul.dtype)
        for k in range(1, K):
            powers[k] = self.mul[powers[k - 1], ar]
        out = np.zeros((n, K), dtype=np.int64)
        step = max(1, _TWIST_CELLS // n)
        for s in range(0, n, step):
            xs = ar[s : s + step]
            conj = self.mul[self.mul[xs][:, ar], self.inv[xs][:, None]]
            for k in range(K):
                out[xs, k] = (conj == powers[k]).sum(axis=1)
        return _frozen(out)

    def refined_keys(self) -> list[tuple]:
        tw = self.twisted_counts.tolist()
        return [k + tuple(t) for k, t in zip(self.element_keys(), tw)]

    @cached_property
    def refined_signature(self) -> tuple:
        return tuple(sorted(Counter(self.refined_keys()).items()))

    @cached_property
    def signature(self) -> tuple:
        keys = sorted(self.element_keys())
        counts: dict = {}
        for k in keys:
            counts[k] = counts.get(k, 0) + 1
        return (
            self.order,
            tuple(sorted(counts.items())),
            len(center(self)),
            len(derived_subgroup(self)),
        )


# --- construction -----------------------------------------------------------


def group_from_table(mul, labels=None, spec_tag: str = "", named=None) -> FiniteGroup:
    """Wrap a table whose identity is already at index 0."""
    mul = np.asarray(mul)
    n = len(mul)
    _check_bound(n)
    mul = mul.astype(_table_dtype(n), copy=False)
    if not (mul[0] == np.arange(n)).all() or not (mul[:, 0] == np.arange(n)).all():
        raise GroupError("index 0 is not the identity")
    rows, cols = np.nonzero(mul == 0)
    if len(rows) != n or len(np.unique(rows)) != n:
        raise GroupError("some element has no inverse")
    inv = np.empty(n, dtype=mul.dtype)
    inv[rows] = cols
    if labels is None:
        labels = [str(i) for i in range(n)]
    return FiniteGroup(_frozen(mul), _frozen(inv), tuple(labels), spec_tag, dict(named or {}))


def build_from_model(
    elements: Sequence[Hashable],
    multiply: Callable[[Hashable, Hashable], Hashable],
    label: Callable[[Hashable], str] = str,
    spec_tag: str = "",
    named: dict[str, Hashable] | None = None,
) -> FiniteGroup:
    """Build a group from a faithful model: distinct elements and a product rule.

    Indices follow the given order except that the identity is swapped to 0.
    """
    elements = list(elements)
    n = len(elements)
    if n == 0:
        raise GroupError("empty element list")
    _check_bound(n)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != n:
        raise GroupError("elements are not pairwise distinct")
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            c = multiply(a, b)
            k = index.get(c)
            if k is None:
                raise GroupError(f"product {a!r}*{b!r} = {c!r} leaves the element set")
            mul[i, j] = k
    ident = [i for i in range(n) if (mul[i] == np.arange(n)).all() and (mul[:, i] == np.arange(n)).all()]
    if not ident:
        raise GroupError("no identity element")
    e = ident[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0  # new index -> old index
    old_to_new = np.argsort(perm)
    mul = old_to_new[mul[np.ix_(perm, perm)]]
    ordered = [elements[i] for i in perm]
    names = {k: int(old_to_new[index[v]]) for k, v in (named or {}).items()}
    return group_from_table(mul, [label(x) for x in ordered], spec_tag, names)


@dataclass
class ValidationReport:
    order: int
    violations: list[str]
    associativity: str
    triples_checked: int

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_group(G: FiniteGroup, seed: int = 0) -> ValidationReport:
    mul = np.asarray(G.mul, dtype=np.int64)
    n = len(mul)
    ar = np.arange(n)
    bad = []
    if not (np.sort(mul, axis=1) == ar).all():
        bad.append("latin square: some row is not a permutation")
    if not (np.sort(mul, axis=0) == ar[:, None]).all():
        bad.append("latin square: some column is not a permutation")
    if not ((mul[0] == ar).all() and (mul[:, 0] == ar).all()):
        bad.append("identity: index 0 is not a two-sided identity")
    inv = np.asarray(G.inv, dtype=np.int64)
    if not ((mul[ar, inv] == 0).all() and (mul[inv, ar] == 0).all()):
        bad.append("inverse table inconsistent")
    if n <= FULL_ASSOC_LIMIT:
        lhs = mul[mul]  # (ab)c indexed [a, b, c]
        rhs = mul[ar[:, None, None], mul[None, :, :]]
        mode, checked = "full", n**3
        ok = (lhs == rhs).all()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
        mode, checked = "sampled", ASSOC_SAMPLES
        ok = (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    if not ok:
        bad.append("associativity violated")
    return ValidationReport(n, bad, mode, checked)


# --- elements and subgroups -------------------------------------------------


def element_order(G: FiniteGroup, x: int) -> int:
    if not 0 <= x < G.order:
        raise IndexError(f"element index {x} out of range for order {G.order}")
    return int(G.element_orders[x])


def generate(G: FiniteGroup, gens, limit: int | None = None) -> np.ndarray | None:
    """Sorted members of <gens>; None as soon as the closure exceeds ``limit``."""
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    gens = gens[gens != 0]
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    count = 1
    frontier = np.zeros(1, dtype=np.int64)
    if len(gens):
        while len(frontier):
            nxt = G.mul[np.ix_(frontier, gens)].ravel()
            nxt = np.unique(nxt[~mask[nxt]])
            mask[nxt] = True
            count += len(nxt)
            if limit is not None and count > limit:
                return None
            frontier = nxt
    return np.flatnonzero(mask)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: np.ndarray
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        m = np.asarray(self.members, dtype=np.int64)
        object.__setattr__(self, "members", _frozen(np.sort(m)))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __iter__(self):
        return iter(self.members.tolist())

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.members] = True
        return _frozen(m)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    @cached_property
    def generators(self) -> tuple[int, ...]:
        if self.gens:
            return tuple(self.gens)
        return tuple(greedy_generators(self.parent, self.members))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other: Subgroup) -> bool:
        return bool((other.mask[self.members]).all())

    def __repr__(self):
        return f"Subgroup(order={self.order}, of {self.parent.order})"

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup (indices renumbered in order)."""
        m = self.members
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[m] = np.arange(len(m))
        table = pos[self.parent.mul[np.ix_(m, m)]]
        return group_from_table(table, [self.parent.labels[i] for i in m])


def subgroup(G: FiniteGroup, gens) -> Subgroup:
    gens = tuple(int(g) for g in gens)
    return Subgroup(G, generate(G, gens), gens)


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, np.arange(G.order))


def trivial(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, np.zeros(1, dtype=np.int64))


def center(G: FiniteGroup) -> Subgroup:
    comm = G.mul == G.mul.T
    return Subgroup(G, np.flatnonzero(comm.all(axis=1)))


def commutator_table(G: FiniteGroup) -> np.ndarray:
    inv = np.asarray(G.inv, dtype=np.int64)
    left = G.mul[inv[:, None], inv[None, :]]  # x^-1 y^-1
    return G.mul[left, G.mul]  # x^-1 y^-1 x y


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    comms = np.unique(commutator_table(G))
    return Subgroup(G, generate(G, comms))


def greedy_generators(G: FiniteGroup, within=None) -> list[int]:
    """Greedy small generating set of G (or of the subgroup with members ``within``).

    Each step adds the element whose join with the current subgroup is largest,
    ties broken by lowest index; one candidate per coset is evaluated.
    """
    if within is None:
        within = np.arange(G.order)
    within = np.asarray(within, dtype=np.int64)
    target = len(within)
    if target == 1:
        return []
    orders = G.element_orders[within]
    first = int(within[int(np.argmax(orders))])
    gens = [first]
    current = generate(G, gens)
    while len(current) < target:
        covered = np.zeros(G.order, dtype=bool)
        covered[current] = True
        best, best_size = None, 0
        for x in within.tolist():
            if covered[x]:
                continue
            covered[G.mul[current, x]] = True
            size = len(generate(G, gens + [x]))
            if size > best_size:
                best, best_size = x, size
                if size == target:
                    break
        gens.append(best)
        current = generate(G, gens)
    return gens


# --- automorphisms ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Automorphism:
    parent: FiniteGroup
    image: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "image", _frozen(np.asarray(self.image, dtype=np.int64).copy()))

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __eq__(self, other):
        return isinstance(other, Automorphism) and other.parent is self.parent and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(self.image.tobytes())

    def compose(self, other: Automorphism) -> Automorphism:
        """self after other."""
        return Automorphism(self.parent, self.image[other.image])

    def __pow__(self, k: int) -> Automorphism:
        perm = np.arange(self.parent.order)
        base = self.image if k >= 0 else np.argsort(self.image)
        k = abs(k)
        while k:
            if k & 1:
                perm = base[perm]
            base = base[base]
            k >>= 1
        return Automorphism(self.parent, perm)

    def is_identity(self) -> bool:
        return bool((self.image == np.arange(self.parent.order)).all())

    @property
    def order(self) -> int:
        perm, k = self.image, 1
        ident = np.arange(self.parent.order)
        while not (perm == ident).all():
            perm = self.image[perm]
            k += 1
        return k

    def is_valid(self) -> bool:
        G, f = self.parent, self.image
        n = G.order
        if f[0] != 0 or len(np.unique(f)) != n:
            return False
        return bool((f[G.mul] == G.mul[f[:, None], f[None, :]]).all())


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, np.arange(G.order))


def inner_automorphism(G: FiniteGroup, g: int) -> Automorphism:
    ar = np.arange(G.order)
    return Automorphism(G, G.mul[G.mul[g, ar], G.inv[g]])


# --- products ---------------------------------------------------------------


def direct_product(G: FiniteGroup, H: FiniteGroup, spec_tag: str | None = None) -> FiniteGroup:
    n, m = G.order, H.order
    _check_bound(n * m)
    a = np.asarray(G.mul, dtype=np.int32)
    b = np.asarray(H.mul, dtype=np.int32)
    table = (a[:, None, :, None] * m + b[None, :, None, :]).reshape(n * m, n * m)
    labels = [f"({x},{y})" for x in G.labels for y in H.labels]
    if spec_tag is None:
        spec_tag = f"dp({G.spec_tag},{H.spec_tag})"
    named = {f"{k}1": v * m for k, v in G.named.items()}
    named.update({f"{k}2": v for k, v in H.named.items()})
    return group_from_table(table, labels, spec_tag, named)


def semidirect_by_action(N: FiniteGroup, K: FiniteGroup, action: np.ndarray, spec_tag: str = "",
                         check: bool = True) -> FiniteGroup:
    """N x| K on pairs (n, k) with (n1,k1)(n2,k2) = (n1 * action[k1](n2), k1 k2).

    ``action`` has shape (|K|, |N|); row k is the automorphism of N by which k acts.
    """
    nN, nK = N.order, K.order
    _check_bound(nN * nK)
    action = np.asarray(action, dtype=np.int64)
    if action.shape != (nK, nN):
        raise GroupError("action must have shape (|K|, |N|)")
    if check:
        if not (action[0] == np.arange(nN)).all():
            raise GroupError("identity of K must act trivially")
        composed = action[np.arange(nK)[:, None, None], action[None, :, :]]
        if not (composed == action[K.mul]).all():
            raise GroupError("action is not a homomorphism K -> Aut(N)")
        if nK * nN * nN <= 50_000_000:
            mulN = np.asarray(N.mul, dtype=np.int64)
            for k in range(nK):
                f = action[k]
                if not (f[mulN] == mulN[f[:, None], f[None, :]]).all():
                    raise GroupError("action contains a non-automorphism")
    first = np.asarray(N.mul, dtype=np.int32)[np.arange(nN)[:, None, None], action[None, :, :]]
    kmul = np.asarray(K.mul, dtype=np.int32)
    table = first[:, :, :, None] * nK + kmul[None, :, None, :]
    n = nN * nK
    labels = [f"({a},{b})" for a in N.labels for b in K.labels]
    named = {f"{k}N": v * nK for k, v in N.named.items()}
    named.update({f"{k}K": v for k, v in K.named.items()})
    return group_from_table(table.reshape(n, n), labels, spec_tag, named)


def automorphism_powers(alpha: Automorphism, m: int) -> np.ndarray:
    rows = [np.arange(alpha.parent.order)]
    for _ in range(m - 1):
        rows.append(alpha.image[rows[-1]])
    return np.array(rows)


def semidirect_product(H: FiniteGroup, m: int, alpha: Automorphism, spec_tag: str | None = None) -> FiniteGroup:
    """H x| Z_m where the generator of Z_m acts by alpha (requires alpha^m = 1)."""
    from .constructors import cyclic_table  # local: avoids a cycle

    if m < 1:
        raise GroupError("m must be positive")
    if not isinstance(alpha, Automorphism):
        alpha = Automorphism(H, alpha)
    if not (alpha ** m).is_identity():
        raise GroupError(f"automorphism order {alpha.order} does not divide {m}")
    K = cyclic_table(m)
    if spec_tag is None:
        spec_tag = f"sdp({H.spec_tag},{m},img:[{','.join(str(alpha(g)) for g in H.generators)}])"
    G = semidirect_by_action(H, K, automorphism_powers(alpha, m), spec_tag, check=False)
    named = dict(G.named)
    named["a"] = 1  # (identity of H, generator of Z_m)
    return FiniteGroup(G.mul, G.inv, G.labels, G.spec_tag, named)


def embedded_normal(G: FiniteGroup, n_normal: int) -> Subgroup:
    """The copy of N inside a semidirect/direct product built by this module."""
    k = G.order // n_normal
    return Subgroup(G, np.arange(n_normal) * k)


def embedded_complement(G: FiniteGroup, n_normal: int) -> Subgroup:
    k = G.order // n_normal
    return Subgroup(G, np.arange(k))
