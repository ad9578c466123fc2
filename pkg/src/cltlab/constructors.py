"""Named group families and the exhaustive generator of groups of order p q^3."""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass

import numpy as np

from . import gf
from .gf import GFMatrix, NoSuchElement, is_prime
from .group import (
    Automorphism,
    FiniteGroup,
    GroupError,
    build_from_model,
    direct_product,
    group_from_table,
    semidirect_by_action,
    semidirect_product,
)
from .morphisms import (
    automorphism_from_images,
    extend_images,
    homomorphisms_to,
    is_isomorphic,
    iter_automorphism_images,
)

log = logging.getLogger(__name__)

NORMAL_SYLOW_ASSUMPTION = (
    "groups of order pq^3 other than 24 have a normal Sylow q-subgroup or a normal Sylow p-subgroup; "
    "enumeration is complete relative to this assumption"
)


def _require_prime(*ns):
    for n in ns:
        if not is_prime(n):
            raise ValueError(f"{n} is not prime")


# --- elementary families ----------------------------------------------------


def cyclic_table(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    ar = np.arange(n)
    return group_from_table((ar[:, None] + ar[None, :]) % n, None, f"cyclic:{n}", {"x": 1 % n})


def cyclic(n: int) -> FiniteGroup:
    return cyclic_table(n)


def elementary_abelian(q: int, k: int) -> FiniteGroup:
    _require_prime(q)
    if k < 1:
        raise ValueError("rank must be positive")
    G = cyclic(q)
    for _ in range(k - 1):
        G = direct_product(G, cyclic(q))
    labels = ["".join(str(d) for d in v) for v in itertools.product(range(q), repeat=k)]
    return FiniteGroup(G.mul, G.inv, tuple(labels), f"elemab:{q},{k}", {})


def vector_index(v, q: int) -> int:
    out = 0
    for d in v:
        out = out * q + d
    return out


def matrix_action(M: GFMatrix) -> np.ndarray:
    """Permutation of elementary_abelian(q, dim) induced by v -> M v."""
    q, k = M.q, M.dim
    vecs = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)
    A = np.array(M.rows, dtype=np.int64)
    img = (vecs @ A.T) % q
    weights = q ** np.arange(k - 1, -1, -1)
    return img @ weights


def heisenberg(q: int) -> FiniteGroup:
    """E(q^3): upper unitriangular 3x3 matrices [[1,a,c],[0,1,b],[0,0,1]] over GF(q)."""
    _require_prime(q)
    if q == 2:
        raise ValueError("heisenberg(q) needs an odd prime q")
    # row-major lexicographic order on entries is lexicographic on (a, c, b)
    a, c, b = (x.ravel() for x in np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij"))
    A = (a[:, None] + a[None, :]) % q
    B = (b[:, None] + b[None, :]) % q
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % q
    table = A * q * q + C * q + B
    labels = [f"[1,{x},{z};0,1,{y};0,0,1]" for x, z, y in zip(a, c, b)]
    named = {"x": q * q, "y": 1, "z": q}
    return group_from_table(table, labels, f"heis:{q}", named)


def modular_group(q: int) -> FiniteGroup:
    """M(q^3) = <x, y | x^(q^2) = y^q = 1, y^-1 x y = x^(q+1)>."""
    _require_prime(q)
    if q == 2:
        raise ValueError("modular_group(q) needs an odd prime q")
    n = q * q
    u = pow(q + 1, -1, n)  # y x y^-1 = x^u
    alpha = Automorphism(cyclic(n), (np.arange(n) * u) % n)
    G = semidirect_product(cyclic(n), q, alpha, spec_tag=f"mod:{q}")
    labels = [f"x^{i}y^{j}" for i in range(n) for j in range(q)]
    return FiniteGroup(G.mul, G.inv, tuple(labels), G.spec_tag, {"x": q, "y": 1})


def _quat_mul(u, v):
    a1, b1, c1, d1 = u
    a2, b2, c2, d2 = v
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quaternion8() -> FiniteGroup:
    units = sorted(
        tuple(s if k == i else 0 for k in range(4)) for i in range(4) for s in (1, -1)
    )
    names = ["1", "i", "j", "k"]

    def label(u):
        i = next(k for k in range(4) if u[k])
        return ("-" if u[i] < 0 else "") + names[i]

    return build_from_model(units, _quat_mul, label, "q8", {"i": (0, 1, 0, 0), "j": (0, 0, 1, 0)})


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order n (symmetries of the n/2-gon)."""
    if n < 4 or n % 2:
        raise ValueError("dihedral(n) needs an even n >= 4")
    m = n // 2
    elems = [(i, j) for i in range(m) for j in range(2)]
    return build_from_model(
        elems,
        lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % m, (x[1] + y[1]) % 2),
        lambda x: f"r^{x[0]}s^{x[1]}",
        f"dih:{n}",
        {"r": (1 % m, 0), "s": (0, 1)},
    )


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order n = 4m: <a, x | a^2m = 1, x^2 = a^m, x^-1 a x = a^-1>."""
    if n < 8 or n % 4:
        raise ValueError("dicyclic(n) needs n a multiple of 4, n >= 8")
    m = n // 4

    def mul(x, y):
        (i, j), (k, l) = x, y
        if j == 0:
            return ((i + k) % (2 * m), l)
        if l == 0:
            return ((i - k) % (2 * m), 1)
        return ((i - k + m) % (2 * m), 0)

    elems = [(i, j) for i in range(2 * m) for j in range(2)]
    return build_from_model(elems, mul, lambda x: f"a^{x[0]}x^{x[1]}", f"dic:{n}", {"a": (1, 0), "x": (0, 1)})


def sl2_3() -> FiniteGroup:
    q = 3
    elems = [
        m for m in itertools.product(range(q), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % q == 1
    ]

    def mul(A, B):
        a, b, c, d = A
        e, f, g, h = B
        return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)

    return build_from_model(elems, mul, lambda m: f"[{m[0]},{m[1]};{m[2]},{m[3]}]", "sl23")


def symmetric(n: int, even_only: bool = False) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ValueError("symmetric(n) supported for 1 <= n <= 6")

    def sign(p):
        s = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    s = -s
        return s

    perms = [p for p in itertools.permutations(range(n)) if not even_only or sign(p) == 1]
    tag = f"alt:{n}" if even_only else f"sym:{n}"
    return build_from_model(perms, lambda s, t: tuple(s[t[i]] for i in range(n)), lambda p: "".join(map(str, p)), tag)


def alternating(n: int) -> FiniteGroup:
    return symmetric(n, even_only=True)


# --- semidirect products with named actions ---------------------------------


def lift_to_heisenberg(H: FiniteGroup, M: GFMatrix) -> Automorphism:
    """Automorphism of E(q^3) acting on the Frattini quotient by M (columns = images of x, y)."""
    q = M.q
    if M.dim != 2 or gf.mat_det(M).value == 0:
        raise ValueError("need an invertible 2x2 matrix")
    x, y = H["x"], H["y"]
    img_x = H.op(H.power(x, M[0, 0]), H.power(y, M[1, 0]))
    img_y = H.op(H.power(x, M[0, 1]), H.power(y, M[1, 1]))
    return automorphism_from_images(H, [img_x, img_y], gens=[x, y])


def zq3_semi_zp(p: int, q: int, M: GFMatrix | None = None) -> FiniteGroup:
    """Z_q^3 x| Z_p with the generator acting by an order-p matrix (default from GL search)."""
    _require_prime(p, q)
    if M is None:
        M = gf.find_gl_element_of_order(3, q, p)
    H = elementary_abelian(q, 3)
    G = semidirect_product(H, p, Automorphism(H, matrix_action(M)), spec_tag=f"zq3xzp:{p},{q}")
    return G


def eq3_semi_zp(p: int, q: int) -> FiniteGroup:
    """E(q^3) x| Z_p, the generator acting with determinant 1 so [x, y] is fixed."""
    _require_prime(p, q)
    if q == 2:
        raise ValueError("eq3_semi_zp needs an odd prime q")
    M = gf.find_sl2_element_of_order(q, p)
    H = heisenberg(q)
    G = semidirect_product(H, p, lift_to_heisenberg(H, M), spec_tag=f"eq3xzp:{p},{q}")
    k = p
    named = dict(G.named)
    named.update({"x": H["x"] * k, "y": H["y"] * k, "z": H["z"] * k})
    return FiniteGroup(G.mul, G.inv, G.labels, G.spec_tag, named)


def units_group(p: int) -> FiniteGroup:
    """Multiplicative group of GF(p); element index u - 1 stands for the unit u."""
    ar = np.arange(1, p)
    table = (ar[:, None] * ar[None, :]) % p - 1
    return group_from_table(table, [str(u) for u in ar], f"units:{p}")


def cyclic_by_group(p: int, K: FiniteGroup, units, spec_tag: str | None = None) -> FiniteGroup:
    """Z_p x| K where K.generators[i] acts on Z_p as multiplication by units[i]."""
    _require_prime(p)
    U = units_group(p)
    chi = extend_images(K, U, K.generators, [u % p - 1 for u in units]) + 1
    action = (chi[:, None] * np.arange(p)[None, :]) % p
    if spec_tag is None:
        spec_tag = f"csdp({p},{K.spec_tag},[{','.join(str(u % p) for u in units)}])"
    return semidirect_by_action(cyclic(p), K, action, spec_tag)


# --- GroupSpec DSL ------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    name: str
    params: tuple[int, ...] = ()
    children: tuple["GroupSpec", ...] = ()
    action: tuple[str, object] | None = None

    def __str__(self) -> str:
        if self.name == "dp":
            return f"dp({self.children[0]},{self.children[1]})"
        if self.name == "sdp":
            kind, val = self.action
            if kind == "matrix":
                body = ";".join(",".join(str(v) for v in row) for row in val)
                act = f"matrix:[{body}]"
            elif kind == "img":
                act = f"img:[{','.join(map(str, val))}]"
            else:
                act = f"{kind}:{val}"
            return f"sdp({self.children[0]},{self.params[0]},{act})"
        if self.name == "csdp":
            return f"csdp({self.params[0]},{self.children[0]},[{','.join(map(str, self.action[1]))}])"
        if not self.params:
            return self.name
        return f"{self.name}:{','.join(map(str, self.params))}"


_ATOMS = {
    "cyclic": 1, "elemab": 2, "heis": 1, "mod": 1, "q8": 0, "sl23": 0, "dih": 1, "dic": 1,
    "zq3xzp": 2, "eq3xzp": 2, "sym": 1, "alt": 1,
}


class SpecSyntaxError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def error(self, msg):
        raise SpecSyntaxError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self, lit):
        return self.s.startswith(lit, self.i)

    def expect(self, lit):
        if not self.peek(lit):
            self.error(f"expected {lit!r}")
        self.i += len(lit)

    def ident(self):
        m = re.compile(r"[a-z][a-z0-9]*").match(self.s, self.i)
        if not m:
            self.error("expected a name")
        self.i = m.end()
        return m.group()

    def int_(self):
        m = re.compile(r"-?\d+").match(self.s, self.i)
        if not m:
            self.error("expected an integer")
        self.i = m.end()
        return int(m.group())

    def ints(self, sep=","):
        out = [self.int_()]
        while self.peek(sep):
            self.i += len(sep)
            out.append(self.int_())
        return out

    def spec(self) -> GroupSpec:
        name = self.ident()
        if name == "dp":
            self.expect("(")
            a = self.spec()
            self.expect(",")
            b = self.spec()
            self.expect(")")
            return GroupSpec("dp", (), (a, b))
        if name == "sdp":
            self.expect("(")
            h = self.spec()
            self.expect(",")
            m = self.int_()
            self.expect(",")
            kind = self.ident()
            self.expect(":")
            if kind in ("glorder", "slorder"):
                val = self.int_()
            elif kind == "matrix":
                self.expect("[")
                rows = [tuple(self.ints())]
                while self.peek(";"):
                    self.i += 1
                    rows.append(tuple(self.ints()))
                self.expect("]")
                val = tuple(rows)
            elif kind == "img":
                self.expect("[")
                val = tuple(self.ints())
                self.expect("]")
            else:
                self.error(f"unknown action {kind!r}")
            self.expect(")")
            return GroupSpec("sdp", (m,), (h,), (kind, val))
        if name == "csdp":
            self.expect("(")
            p = self.int_()
            self.expect(",")
            k = self.spec()
            self.expect(",[")
            units = tuple(self.ints())
            self.expect("])")
            return GroupSpec("csdp", (p,), (k,), ("units", units))
        if name not in _ATOMS:
            self.error(f"unknown constructor {name!r}")
        params = ()
        if _ATOMS[name]:
            self.expect(":")
            vals = [self.int_()]
            for _ in range(_ATOMS[name] - 1):
                self.expect(",")
                vals.append(self.int_())
            params = tuple(vals)
        return GroupSpec(name, params)


def parse_spec(text: str) -> GroupSpec:
    p = _Parser(text)
    spec = p.spec()
    if p.i != len(text):
        p.error("trailing input")
    return spec


def build(spec: GroupSpec | str) -> FiniteGroup:
    """Construct the group described by a GroupSpec or DSL string."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    tag = str(spec)
    name, ps = spec.name, spec.params
    if name == "cyclic":
        return cyclic(*ps)
    if name == "elemab":
        return elementary_abelian(*ps)
    if name == "heis":
        return heisenberg(*ps)
    if name == "mod":
        return modular_group(*ps)
    if name == "q8":
        return quaternion8()
    if name == "sl23":
        return sl2_3()
    if name == "dih":
        return dihedral(*ps)
    if name == "dic":
        return dicyclic(*ps)
    if name == "sym":
        return symmetric(*ps)
    if name == "alt":
        return alternating(*ps)
    if name == "zq3xzp":
        return zq3_semi_zp(*ps)
    if name == "eq3xzp":
        return eq3_semi_zp(*ps)
    if name == "dp":
        return direct_product(build(spec.children[0]), build(spec.children[1]), spec_tag=tag)
    if name == "csdp":
        return cyclic_by_group(ps[0], build(spec.children[0]), spec.action[1], spec_tag=tag)
    if name == "sdp":
        H = build(spec.children[0])
        m = ps[0]
        kind, val = spec.action
        hspec = spec.children[0]
        if kind == "img":
            alpha = automorphism_from_images(H, val)
        elif kind in ("glorder", "matrix") and hspec.name == "elemab":
            q, k = hspec.params
            M = gf.find_gl_element_of_order(k, q, val) if kind == "glorder" else GFMatrix(q, val)
            if M.dim != k or gf.mat_det(M).value == 0:
                raise GroupError(f"matrix must be an invertible {k}x{k} matrix over GF({q})")
            alpha = Automorphism(H, matrix_action(M))
        elif kind in ("slorder", "matrix") and hspec.name == "heis":
            q = hspec.params[0]
            M = gf.find_sl2_element_of_order(q, val) if kind == "slorder" else GFMatrix(q, val)
            alpha = lift_to_heisenberg(H, M)
        else:
            raise GroupError(f"action {kind!r} not defined for {hspec}")
        return semidirect_product(H, m, alpha, spec_tag=tag)
    raise GroupError(f"cannot build {tag}")  # pragma: no cover


# --- catalogues ---------------------------------------------------------------


def _z3_by_d8_tag() -> str:
    D = dihedral(8)
    # D8 -> {+-1} with kernel the Klein four-group {r^even s^j}; r^i s^j has index 2i + j
    units = [2 if (g // 2) % 2 else 1 for g in D.generators]
    return f"csdp(3,dih:8,[{','.join(map(str, units))}])"


def order24_specs() -> list[str]:
    return [
        "cyclic:24",
        "dp(cyclic:2,cyclic:12)",
        "dp(elemab:2,2,cyclic:6)",
        "sl23",
        "sym:4",
        "dp(cyclic:2,alt:4)",
        "dih:24",
        "dic:24",
        "dp(cyclic:3,dih:8)",
        "dp(cyclic:3,q8)",
        "sdp(elemab:3,1,8,matrix:[2])",
        "dp(cyclic:4,dih:6)",
        "dp(elemab:2,2,dih:6)",
        _z3_by_d8_tag(),
        "dp(cyclic:2,dic:12)",
    ]


def pairwise_non_isomorphic(groups) -> bool:
    for i, G in enumerate(groups):
        for H in groups[i + 1 :]:
            if is_isomorphic(G, H):
                return False
    return True


def order24_catalog(verify: bool = True) -> list[FiniteGroup]:
    groups = [build(s) for s in order24_specs()]
    if verify:
        reps = dedupe(groups)
        if len(reps) != 15:
            raise AssertionError(f"order-24 catalogue has {len(reps)} isomorphism types, expected 15")
    return groups


def order_q3_specs(q: int) -> list[str]:
    _require_prime(q)
    if q == 2:
        return ["cyclic:8", "dp(cyclic:2,cyclic:4)", "elemab:2,3", "dih:8", "q8"]
    return [f"cyclic:{q**3}", f"dp(cyclic:{q},cyclic:{q*q})", f"elemab:{q},3", f"mod:{q}", f"heis:{q}"]


def dedupe(groups) -> list[FiniteGroup]:
    """Keep the first representative of each isomorphism type, comparing within signatures."""
    kept: list[FiniteGroup] = []
    by_sig: dict = {}
    for G in groups:
        bucket = by_sig.setdefault(G.signature, [])
        if any(is_isomorphic(G, R) for R in bucket):
            continue
        bucket.append(G)
        kept.append(G)
    return kept


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class AutData:
    """All automorphisms of a group as generator images, plus a few full permutations."""

    group: FiniteGroup
    images: np.ndarray  # (N, k)
    sample_perms: np.ndarray  # (s, n) automorphisms used as conjugating generators


def automorphism_data(H: FiniteGroup, n_samples: int = 8, seed: int = 0) -> AutData:
    batches = [imgs for imgs, _ in iter_automorphism_images(H)]
    images = np.concatenate(batches)
    rng = np.random.default_rng(seed)
    pick = rng.choice(len(images), size=min(n_samples, len(images)), replace=False)
    perms = np.array([extend_images(H, H, H.generators, images[i], injective=True) for i in sorted(pick)])
    return AutData(H, images, perms)


def order_p_automorphism_classes(H: FiniteGroup, p: int, data: AutData | None = None) -> list[tuple[int, ...]]:
    """Generator images of one automorphism per class of order-p cyclic subgroups of Aut(H).

    Classes are orbits under conjugation by sampled automorphisms and under taking
    powers; sampled automorphisms may generate a proper subgroup of Aut(H), in which
    case some classes are split and the caller's isomorphism dedup merges them.
    """
    data = data or automorphism_data(H)
    gens = list(H.generators)
    ident = np.arange(H.order)
    keep_imgs, keep_perms = [], []
    for imgs, F in iter_automorphism_images(H, full_maps=True):
        Fp = F.copy()
        for _ in range(p - 1):
            Fp = np.take_along_axis(F, Fp, axis=1)
        ok = (Fp == ident).all(axis=1) & ~(F == ident).all(axis=1)
        if ok.any():
            keep_imgs.append(imgs[ok])
            keep_perms.append(F[ok])
    if not keep_imgs:
        return []
    S_imgs = np.concatenate(keep_imgs)
    S_perms = np.concatenate(keep_perms)
    keys = [tuple(r) for r in S_imgs.tolist()]
    index = {k: i for i, k in enumerate(keys)}
    uf = _UnionFind(len(keys))
    g = np.asarray(gens)
    # powers sigma^j
    cur = S_imgs
    for _ in range(p - 2):
        cur = np.take_along_axis(S_perms, cur, axis=1)
        for i, row in enumerate(cur.tolist()):
            uf.union(i, index[tuple(row)])
    for tau in data.sample_perms:
        tau_inv = np.argsort(tau)
        conj = tau[S_perms[:, tau_inv[g]]]  # tau sigma tau^-1 on generators
        for i, row in enumerate(conj.tolist()):
            uf.union(i, index[tuple(row)])
    roots = sorted({uf.find(i) for i in range(len(keys))})
    return [keys[r] for r in roots]


def _power_class_key(M: GFMatrix, p: int):
    return min(gf.char_poly(gf.mat_pow(M, k)) for k in range(1, p))


def all_pq3_candidate_specs(p: int, q: int) -> list[str]:
    """Spec strings of candidate groups of order p q^3 (before isomorphism dedup)."""
    _require_prime(p, q)
    if p == q:
        raise ValueError("p and q must be distinct")
    specs = []
    units = units_group(p)
    for hspec in order_q3_specs(q):
        H = build(hspec)
        specs.append(f"dp({hspec},cyclic:{p})")
        data = None
        if hspec.startswith("elemab"):
            seen = set()
            for M in gf.order_p_action_representatives(3, q, p):
                key = _power_class_key(M, p)
                if key in seen:
                    continue
                seen.add(key)
                body = ";".join(",".join(map(str, r)) for r in M.rows)
                specs.append(f"sdp({hspec},{p},matrix:[{body}])")
        else:
            data = automorphism_data(H)
            classes = order_p_automorphism_classes(H, p, data) if len(data.images) % p == 0 else []
            for imgs in classes:
                specs.append(f"sdp({hspec},{p},img:[{','.join(map(str, imgs))}])")
        if (p - 1) % q == 0:
            specs.extend(_cyclic_normal_specs(p, q, hspec, H, units, data))
    return specs


def _cyclic_normal_specs(p, q, hspec, H, units, data):
    """Z_p x| H for nontrivial H -> Aut(Z_p), one per orbit under Aut(H)."""
    if hspec.startswith("elemab"):
        # GL(3,q) is transitive on nonzero functionals: a single nontrivial action
        u = next(int(x) + 1 for x in range(p - 1) if units.element_orders[x] == q)
        imgs = [u] + [1] * (len(H.generators) - 1)
        return [f"csdp({p},{hspec},[{','.join(map(str, imgs))}])"]
    homs = homomorphisms_to(H, units)
    if data is None:
        data = automorphism_data(H)
    seen = set()
    out = []
    for row in homs.tolist():
        if all(v == 0 for v in row):
            continue
        if tuple(row) in seen:
            continue
        chi = extend_images(H, units, H.generators, row)
        orbit = {tuple(r) for r in chi[data.images].tolist()}
        seen |= orbit
        rep = min(orbit)
        out.append(f"csdp({p},{hspec},[{','.join(str(v + 1) for v in rep)}])")
    return out


def all_pq3_groups(p: int, q: int) -> list[FiniteGroup]:
    """Pairwise non-isomorphic groups of order p q^3, sorted by spec_tag.

    Order 24 returns the order-24 catalogue; otherwise the groups with a normal
    Sylow q-subgroup (H x| Z_p) or a normal Sylow p-subgroup (Z_p x| H).
    """
    _require_prime(p, q)
    if p == q:
        raise ValueError("p and q must be distinct")
    if p * q**3 == 24:
        return sorted(order24_catalog(), key=lambda G: G.spec_tag)
    groups = [build(s) for s in all_pq3_candidate_specs(p, q)]
    return sorted(dedupe(groups), key=lambda G: G.spec_tag)
