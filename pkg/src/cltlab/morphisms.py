"""Generator-image backtracking for homomorphisms, isomorphisms and automorphisms.

A candidate map is given by the images of a generating sequence g_1..g_k.
It is extended along a breadth-first spanning tree of the Cayley graph of
<g_1..g_j> and accepted when every edge x -> x g_i is respected.  The last
generator's candidates are checked as one vectorised batch.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .group import Automorphism, FiniteGroup, TooLarge, generate

DEFAULT_AUT_BOUND = 512
_BATCH_CELLS = 2_000_000


class _Tree:
    """Spanning tree of <gens> by right multiplication, grouped into BFS levels."""

    def __init__(self, G: FiniteGroup, gens):
        self.G = G
        self.gens = list(gens)
        n = G.order
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = np.zeros(1, dtype=np.int64)
        g = np.asarray(self.gens, dtype=np.int64)
        self.levels = []
        while len(frontier):
            prod = G.mul[np.ix_(frontier, g)]  # [parent, gen]
            par = np.repeat(frontier, len(g))
            gi = np.tile(np.arange(len(g)), len(frontier))
            nodes = prod.ravel().astype(np.int64)
            fresh = ~seen[nodes]
            nodes, par, gi = nodes[fresh], par[fresh], gi[fresh]
            nodes, first = np.unique(nodes, return_index=True)
            par, gi = par[first], gi[first]
            if not len(nodes):
                break
            seen[nodes] = True
            self.levels.append((nodes, par, gi))
            frontier = nodes
        self.members = np.flatnonzero(seen)
        self.edges = [np.asarray(G.mul[self.members, x], dtype=np.int64) for x in self.gens]

    def evaluate(self, T: FiniteGroup, imgs: np.ndarray) -> np.ndarray:
        F = np.zeros((len(imgs), self.G.order), dtype=np.int64)
        for nodes, par, gi in self.levels:
            F[:, nodes] = T.mul[F[:, par], imgs[:, gi]]
        return F

    def accept(self, T: FiniteGroup, F: np.ndarray, imgs: np.ndarray, injective: bool) -> np.ndarray:
        ok = np.ones(len(F), dtype=bool)
        Fm = F[:, self.members]
        for i, edge in enumerate(self.edges):
            ok &= (T.mul[Fm, imgs[:, i : i + 1]] == F[:, edge]).all(axis=1)
        if injective:
            s = np.sort(Fm, axis=1)
            ok &= (np.diff(s, axis=1) != 0).all(axis=1)
        return ok


def search_homomorphisms(
    G: FiniteGroup,
    T: FiniteGroup,
    gens,
    candidates,
    injective: bool = True,
    full_maps: bool = False,
) -> Iterator[tuple[np.ndarray, np.ndarray | None]]:
    """Yield batches (generator images, full maps or None) of valid homomorphisms G -> T.

    ``candidates[j]`` lists the allowed images of ``gens[j]``.
    """
    gens = list(gens)
    k = len(gens)
    if k == 0:
        imgs = np.zeros((1, 0), dtype=np.int64)
        yield imgs, (np.zeros((1, G.order), dtype=np.int64) if full_maps else None)
        return
    trees = [_Tree(G, gens[: j + 1]) for j in range(k)]
    cands = [np.asarray(c, dtype=np.int64) for c in candidates]
    chunk = max(1, _BATCH_CELLS // max(1, G.order))

    def rec(j, prefix):
        if j == k - 1:
            last = cands[j]
            tree = trees[j]
            for s in range(0, len(last), chunk):
                part = last[s : s + chunk]
                imgs = np.empty((len(part), k), dtype=np.int64)
                imgs[:, :j] = prefix
                imgs[:, j] = part
                F = tree.evaluate(T, imgs)
                ok = tree.accept(T, F, imgs, injective)
                if ok.any():
                    yield imgs[ok], (F[ok] if full_maps else None)
            return
        for c in cands[j].tolist():
            pre = prefix + [c]
            if j > 0:
                imgs = np.asarray([pre], dtype=np.int64)
                F = trees[j].evaluate(T, imgs)
                if not trees[j].accept(T, F, imgs, injective)[0]:
                    continue
            yield from rec(j + 1, pre)

    yield from rec(0, [])


def _matching_candidates(G: FiniteGroup, T: FiniteGroup, gens):
    tkeys = T.refined_keys()
    by_key: dict = {}
    for i, key in enumerate(tkeys):
        by_key.setdefault(key, []).append(i)
    gkeys = G.refined_keys()
    return [by_key.get(gkeys[g], []) for g in gens]


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, witness: bool = False):
    """Decide G ~= H.  With ``witness`` returns (flag, map array or None)."""
    if G.order != H.order or G.signature != H.signature or G.refined_signature != H.refined_signature:
        return (False, None) if witness else False
    gens = list(G.generators)
    cands = _matching_candidates(G, H, gens)
    for imgs, F in search_homomorphisms(G, H, gens, cands, injective=True, full_maps=True):
        return (True, F[0]) if witness else True
    return (False, None) if witness else False


def isomorphism(G: FiniteGroup, H: FiniteGroup) -> np.ndarray | None:
    return is_isomorphic(G, H, witness=True)[1]


def iter_automorphism_images(G: FiniteGroup, full_maps: bool = False):
    """Batches of automorphisms of G as images of ``G.generators``."""
    gens = list(G.generators)
    cands = _matching_candidates(G, G, gens)
    yield from search_homomorphisms(G, G, gens, cands, injective=True, full_maps=full_maps)


def automorphism_count(G: FiniteGroup, bound: int = DEFAULT_AUT_BOUND) -> int:
    if G.order > bound:
        raise TooLarge(f"automorphism enumeration limited to order <= {bound}")
    return sum(len(imgs) for imgs, _ in iter_automorphism_images(G))


def automorphisms(G: FiniteGroup, bound: int = DEFAULT_AUT_BOUND) -> list[Automorphism]:
    if G.order > bound:
        raise TooLarge(f"automorphism enumeration limited to order <= {bound}")
    out = []
    for _, F in iter_automorphism_images(G, full_maps=True):
        out.extend(Automorphism(G, f) for f in F)
    return out


def extend_images(G: FiniteGroup, T: FiniteGroup, gens, images, injective: bool = False) -> np.ndarray:
    """Full map of the homomorphism sending gens -> images; ValueError if none exists."""
    gens = list(gens)
    if len(generate(G, gens)) != G.order:
        raise ValueError("gens do not generate G")
    tree = _Tree(G, gens)
    imgs = np.asarray([list(images)], dtype=np.int64)
    F = tree.evaluate(T, imgs)
    if not tree.accept(T, F, imgs, injective)[0]:
        raise ValueError("images do not define a homomorphism")
    return F[0]


def automorphism_from_images(G: FiniteGroup, images, gens=None) -> Automorphism:
    gens = list(G.generators if gens is None else gens)
    f = extend_images(G, G, gens, images, injective=True)
    return Automorphism(G, f)


def homomorphisms_to(G: FiniteGroup, T: FiniteGroup) -> np.ndarray:
    """All homomorphisms G -> T as rows of generator images (for G.generators)."""
    gens = list(G.generators)
    t_orders = T.element_orders
    cands = [np.flatnonzero(G.element_orders[g] % t_orders == 0) for g in gens]
    rows = [imgs for imgs, _ in search_homomorphisms(G, T, gens, cands, injective=False)]
    if not rows:
        return np.zeros((0, len(gens)), dtype=np.int64)
    return np.concatenate(rows)
