"""Subgroup lattices, the CLT decision, Sylow statistics and normalizers."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .gf import divisors, prime_factors
from .group import FiniteGroup, GroupError, Subgroup, generate, trivial, whole

TARGETED_ABOVE = 1500
CACHE_VERSION = 1


def _factor(n: int) -> dict[int, int]:
    out = {}
    for r in prime_factors(n):
        e = 0
        while n % r == 0:
            n //= r
            e += 1
        out[r] = e
    return out


def _check_parent(G: FiniteGroup, H: Subgroup):
    if H.parent is not G:
        raise GroupError("subgroup belongs to a different group")


def _check_divisor(G: FiniteGroup, d: int):
    if d < 1 or G.order % d:
        raise ValueError(f"{d} does not divide |G| = {G.order}")


def element_powers(G: FiniteGroup, g: int) -> np.ndarray:
    out = [0]
    x = g
    while x != 0:
        out.append(x)
        x = int(G.mul[x, g])
    return np.asarray(out, dtype=np.int64)


def normalizes(G: FiniteGroup, g: int, H: Subgroup) -> bool:
    gens = np.asarray(H.generators, dtype=np.int64)
    if not len(gens):
        return True
    conj = G.mul[G.mul[g, gens], G.inv[g]]
    return bool(H.mask[conj].all())


def join(G: FiniteGroup, S: Subgroup, g: int, limit: int | None = None) -> Subgroup | None:
    """<S, g>; None when it exceeds ``limit``."""
    if normalizes(G, g, S):
        members = np.unique(G.mul[np.ix_(S.members, element_powers(G, g))])
        if limit is not None and len(members) > limit:
            return None
    else:
        members = generate(G, S.generators + (g,), limit)
        if members is None:
            return None
    return Subgroup(G, members, S.generators + (g,))


def cyclic_subgroups(G: FiniteGroup, within=None, prime_power: bool = True) -> list[tuple[int, Subgroup]]:
    """Distinct cyclic subgroups <g> (g of prime-power order by default), lowest generator first."""
    elems = np.arange(G.order) if within is None else np.asarray(within, dtype=np.int64)
    orders = G.element_orders
    seen = set()
    out = []
    for g in elems.tolist():
        if g == 0:
            continue
        o = int(orders[g])
        if prime_power and len(prime_factors(o)) != 1:
            continue
        C = Subgroup(G, element_powers(G, g), (g,))
        if C.key in seen:
            continue
        seen.add(C.key)
        out.append((g, C))
    return out


@dataclass
class SubgroupLattice:
    parent: FiniteGroup
    subgroups: list[Subgroup]
    by_order: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.subgroups.sort(key=lambda S: (S.order, S.members.tolist()))
        self.by_order = {}
        for S in self.subgroups:
            self.by_order[S.order] = self.by_order.get(S.order, 0) + 1

    def __len__(self):
        return len(self.subgroups)

    def of_order(self, d: int) -> list[Subgroup]:
        return [S for S in self.subgroups if S.order == d]

    def has_order(self, d: int) -> bool:
        return self.by_order.get(d, 0) > 0

    def maximal(self) -> list[Subgroup]:
        n = self.parent.order
        proper = [S for S in self.subgroups if S.order < n]
        return [S for S in proper if not any(S.order < T.order and S <= T for T in proper)]


def is_solvable(G: FiniteGroup) -> bool:
    """Derived series reaches the trivial group (used only to pick the lattice algorithm)."""
    D = np.arange(G.order)
    while len(D) > 1:
        comm = G.mul[G.mul[np.ix_(G.inv[D], G.inv[D])], G.mul[np.ix_(D, D)]]
        nxt = generate(G, np.unique(comm))
        if len(nxt) == len(D):
            return False
        D = nxt
    return True


def all_subgroups(G: FiniteGroup, within: Subgroup | None = None, method: str = "auto") -> SubgroupLattice:
    """Every subgroup of G (or of ``within``).

    ``method="joins"`` closes the trivial subgroup under joins with cyclic subgroups of
    prime-power order, which is complete for any group.  ``method="extension"`` only
    adjoins elements normalizing S of prime order modulo S; this reaches every subgroup
    when the group is solvable and is much cheaper.  ``auto`` picks extension for
    solvable groups.
    """
    if method == "auto":
        host = G if within is None else within.as_group()
        method = "extension" if is_solvable(host) else "joins"
    if method == "joins":
        subs = _join_closure(G, within)
    elif method == "extension":
        subs = _cyclic_extension(G, within)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SubgroupLattice(G, subs)


def _join_closure(G, within):
    cyc = cyclic_subgroups(G, None if within is None else within.members)
    start = trivial(G)
    found = {start.key: start}
    work = [start]
    while work:
        S = work.pop()
        for g, _ in cyc:
            if S.mask[g]:
                continue
            J = join(G, S, g)
            if J.key not in found:
                found[J.key] = J
                work.append(J)
    return list(found.values())


def _cyclic_extension(G, within):
    host = None if within is None else within.mask
    start = trivial(G)
    found = {start.key: start}
    work = [start]
    while work:
        S = work.pop()
        N = normalizer(G, S)
        cand = N.members if host is None else N.members[host[N.members]]
        covered = S.mask.copy()
        for g in cand.tolist():
            if covered[g]:
                continue
            pw = element_powers(G, g)
            k = int(np.argmax(S.mask[pw[1:]])) + 1 if S.mask[pw[1:]].any() else len(pw)
            if prime_factors(k) != [k]:
                covered[G.mul[g, S.members]] = True
                continue
            # every non-trivial power of g generates the same extension
            coset_block = G.mul[np.ix_(pw[:k], S.members)]
            covered[coset_block[1:].ravel()] = True
            U = Subgroup(G, np.unique(coset_block), S.generators + (g,))
            if U.key not in found:
                found[U.key] = U
                work.append(U)
    return list(found.values())


# --- normalizers and Sylow ----------------------------------------------------


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    _check_parent(G, H)
    gens = np.asarray(H.generators, dtype=np.int64)
    if not len(gens):
        return whole(G)
    ar = np.arange(G.order)
    conj = G.mul[G.mul[np.ix_(ar, gens)], G.inv[ar][:, None]]
    return Subgroup(G, np.flatnonzero(H.mask[conj].all(axis=1)))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return normalizer(G, H).order == G.order


def conjugate(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    members = G.mul[G.mul[g, H.members], G.inv[g]]
    gens = tuple(int(x) for x in G.mul[G.mul[g, list(H.generators)], G.inv[g]]) if H.generators else ()
    return Subgroup(G, members, gens)


def sylow_subgroup(G: FiniteGroup, r: int) -> Subgroup:
    """A Sylow r-subgroup grown from the trivial group inside successive normalizers."""
    fac = _factor(G.order)
    if r not in fac:
        raise ValueError(f"{r} does not divide |G| = {G.order}")
    full = r ** fac[r]
    orders = G.element_orders
    r_elem = np.array([len(prime_factors(int(o))) == 1 and int(o) % r == 0 for o in orders])
    P = trivial(G)
    while P.order < full:
        N = normalizer(G, P)
        cand = N.members[r_elem[N.members] & ~P.mask[N.members]]
        g = int(cand[0])
        members = np.unique(G.mul[np.ix_(P.members, element_powers(G, g))])
        P = Subgroup(G, members, P.generators + (g,))
    return P


@dataclass
class SylowInfo:
    prime: int
    n_r: int
    normal: bool
    order: int


def sylow_analysis(G: FiniteGroup, r: int) -> tuple[Subgroup, int, bool]:
    P = sylow_subgroup(G, r)
    n_r = G.order // normalizer(G, P).order
    return P, n_r, n_r == 1


def conjugates(G: FiniteGroup, H: Subgroup) -> list[Subgroup]:
    """All distinct conjugates of H, in order of first appearance over g = 0, 1, ..."""
    N = normalizer(G, H)
    target = G.order // N.order
    seen = {H.key: H}
    covered = np.zeros(G.order, dtype=bool)
    for g in range(G.order):
        if len(seen) == target:
            break
        if covered[g]:
            continue
        covered[G.mul[g, N.members]] = True  # the coset gN gives the same conjugate
        C = conjugate(G, H, g)
        seen.setdefault(C.key, C)
    return list(seen.values())


def sylow_subgroups(G: FiniteGroup, r: int) -> list[Subgroup]:
    return conjugates(G, sylow_subgroup(G, r))


# --- existence of subgroups of a given order -----------------------------------


def _subgroups_of_order_in(G: FiniteGroup, P: Subgroup, d: int) -> list[Subgroup]:
    if d == P.order:
        return [P]
    if d == 1:
        return [trivial(G)]
    return all_subgroups(G, within=P).of_order(d)


def _targeted_exists(G: FiniteGroup, d: int) -> bool:
    n = G.order
    if d in (1, n):
        return True
    dfac = _factor(d)
    if len(dfac) == 1:
        return True  # Sylow
    if len(dfac) > 2:
        return all_subgroups(G).has_order(d)
    nfac = _factor(n)
    r, s = sorted(dfac, key=lambda x: (dfac[x] != nfac[x], x))
    ra, sb = r ** dfac[r], s ** dfac[s]
    # up to conjugacy the s-part lies in a fixed Sylow s-subgroup
    Ss = sylow_subgroup(G, s)
    lefts = _subgroups_of_order_in(G, Ss, sb)
    if dfac[r] == nfac[r]:
        rights = sylow_subgroups(G, r)
    else:
        pool = {}
        for Sr in sylow_subgroups(G, r):
            for T in _subgroups_of_order_in(G, Sr, ra):
                pool.setdefault(T.key, T)
        rights = list(pool.values())
    for R in lefts:
        for T in rights:
            if all(normalizes(G, g, R) for g in T.generators) or all(normalizes(G, g, T) for g in R.generators):
                return True
            J = generate(G, R.generators + T.generators, limit=d)
            if J is not None and len(J) == d:
                return True
    return False


def has_subgroup_of_order(G: FiniteGroup, d: int, lattice: SubgroupLattice | None = None) -> bool:
    _check_divisor(G, d)
    if lattice is not None:
        return lattice.has_order(d)
    return _targeted_exists(G, d)


def count_subgroups_of_order(G: FiniteGroup, m: int, lattice: SubgroupLattice | None = None) -> int:
    _check_divisor(G, m)
    lattice = lattice or all_subgroups(G)
    return lattice.by_order.get(m, 0)


def frattini_subgroup(G: FiniteGroup, lattice: SubgroupLattice | None = None) -> Subgroup:
    if G.order == 1:
        return whole(G)
    lattice = lattice or all_subgroups(G)
    mask = np.ones(G.order, dtype=bool)
    for M in lattice.maximal():
        mask &= M.mask
    return Subgroup(G, np.flatnonzero(mask))


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def conjugacy_classes_of_subgroups(
    G: FiniteGroup, m: int, lattice: SubgroupLattice | None = None, subgroups: list[Subgroup] | None = None
) -> list[list[Subgroup]]:
    """Partition the order-m subgroups into conjugation orbits."""
    _check_divisor(G, m)
    if subgroups is None:
        subgroups = (lattice or all_subgroups(G)).of_order(m)
    pool = {S.key: S for S in subgroups}
    keys = list(pool)
    index = {k: i for i, k in enumerate(keys)}
    uf = _UF(len(keys))
    i = 0
    while i < len(keys):
        S = pool[keys[i]]
        for g in G.generators:
            C = conjugate(G, S, g)
            if C.key not in index:  # orbit leaves the supplied family
                pool[C.key] = C
                index[C.key] = len(keys)
                keys.append(C.key)
                uf.p.append(len(uf.p))
            uf.union(i, index[C.key])
        i += 1
    classes: dict[int, list[Subgroup]] = {}
    for k in keys:
        classes.setdefault(uf.find(index[k]), []).append(pool[k])
    out = [sorted(c, key=lambda S: S.members.tolist()) for c in classes.values()]
    return sorted(out, key=lambda c: c[0].members.tolist())


# --- reports ----------------------------------------------------------------------


@dataclass
class CltReport:
    spec_tag: str
    order: int
    divisors: list[int]
    present_orders: list[int]
    missing_orders: list[int]
    is_clt: bool
    sylow: list[SylowInfo]
    mode: str
    timing: float  # milliseconds

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d["timing"] = None
        return d


def clt_report(G: FiniteGroup, mode: str = "auto", lattice: SubgroupLattice | None = None) -> CltReport:
    """Divisor coverage and Sylow statistics.

    ``mode``: "lattice" (full lattice), "targeted" (per-divisor search) or "auto"
    (lattice up to order 1500, targeted above).
    """
    t0 = time.perf_counter()
    n = G.order
    if mode == "auto":
        mode = "lattice" if lattice is not None or n <= TARGETED_ABOVE else "targeted"
    if mode == "lattice":
        lattice = lattice or all_subgroups(G)
    elif mode != "targeted":
        raise ValueError(f"unknown mode {mode!r}")
    divs = divisors(n)
    present = [d for d in divs if has_subgroup_of_order(G, d, lattice if mode == "lattice" else None)]
    missing = [d for d in divs if d not in present]
    syl = []
    for r in prime_factors(n):
        P, n_r, normal = sylow_analysis(G, r)
        syl.append(SylowInfo(r, n_r, normal, P.order))
    ms = (time.perf_counter() - t0) * 1000
    return CltReport(G.spec_tag, n, divs, present, missing, not missing, syl, mode, round(ms, 3))


def is_clt(G: FiniteGroup, mode: str = "auto") -> bool:
    return clt_report(G, mode).is_clt


@dataclass
class MSetReport:
    p: int
    q: int
    sylow_q_order: int
    M_size: int
    k: int
    normalizer_orders: list[int]
    normalizers_equal_sylow: bool
    p_divides_M: bool
    group_is_clt: bool


def verify_m_set_claim(G: FiniteGroup, p: int, q: int, check_precondition: bool = True) -> MSetReport:
    """Order-q^2 subgroups M of a Sylow q-subgroup: class normalizers and p | |M|."""
    if G.order != p * q**3:
        raise ValueError(f"|G| = {G.order} is not p q^3 = {p * q**3}")
    clt = clt_report(G).is_clt
    if check_precondition and clt:
        raise ValueError("precondition violated: G is CLT")
    S = sylow_subgroup(G, q)
    M = all_subgroups(G, within=S).of_order(q * q)
    classes = conjugacy_classes_of_subgroups(G, q * q, subgroups=M)
    reps = [next(H for H in c if H <= S) if any(H <= S for H in c) else c[0] for c in classes]
    norms = [normalizer(G, H) for H in reps]
    return MSetReport(
        p=p,
        q=q,
        sylow_q_order=S.order,
        M_size=len(M),
        k=len(reps),
        normalizer_orders=[N.order for N in norms],
        normalizers_equal_sylow=all(N == S for N in norms),
        p_divides_M=len(M) % p == 0,
        group_is_clt=clt,
    )


# --- lattice cache ------------------------------------------------------------------


def _cache_path(cache_dir, spec_tag: str) -> Path:
    h = hashlib.sha256(spec_tag.encode()).hexdigest()[:24]
    return Path(cache_dir) / f"lattice-{h}.json"


def save_lattice(cache_dir, lattice: SubgroupLattice) -> Path:
    G = lattice.parent
    path = _cache_path(cache_dir, G.spec_tag)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {
        "version": CACHE_VERSION,
        "spec_tag": G.spec_tag,
        "order": G.order,
        "subgroups": [S.members.tolist() for S in lattice.subgroups],
    }
    path.write_text(json.dumps(doc, separators=(",", ":")))
    return path


def load_lattice(cache_dir, G: FiniteGroup) -> SubgroupLattice | None:
    path = _cache_path(cache_dir, G.spec_tag)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if doc.get("version") != CACHE_VERSION or doc.get("spec_tag") != G.spec_tag or doc.get("order") != G.order:
        return None
    return SubgroupLattice(G, [Subgroup(G, np.asarray(m, dtype=np.int64)) for m in doc["subgroups"]])


def lattice_cached(G: FiniteGroup, cache_dir=None) -> SubgroupLattice:
    if cache_dir is None:
        return all_subgroups(G)
    lat = load_lattice(cache_dir, G)
    if lat is None:
        lat = all_subgroups(G)
        save_lattice(cache_dir, lat)
    return lat
