import itertools

import pytest

from cltlab import constructors as C
from cltlab.group import TooLarge, center, direct_product, generate
from cltlab.morphisms import (
    automorphism_count,
    automorphism_from_images,
    automorphisms,
    extend_images,
    homomorphisms_to,
    is_isomorphic,
)

from conftest import FIXTURE_SPECS, fixture_group


def presentation_count(G, gens_orders, relation):
    """Count generating pairs (a, b) with the given orders satisfying ``relation``."""
    orders = G.element_orders
    A = [g for g in range(G.order) if orders[g] == gens_orders[0]]
    B = [g for g in range(G.order) if orders[g] == gens_orders[1]]
    count = 0
    for a, b in itertools.product(A, B):
        if relation(G, a, b) and len(generate(G, [a, b])) == G.order:
            count += 1
    return count


def test_isomorphism_examples():
    assert is_isomorphic(C.cyclic(6), direct_product(C.cyclic(2), C.cyclic(3)))
    assert not is_isomorphic(C.quaternion8(), C.dihedral(8))
    G = C.sl2_3()
    ok, f = is_isomorphic(G, G, witness=True)
    assert ok and len(set(f.tolist())) == G.order


def test_different_orders_not_isomorphic():
    assert not is_isomorphic(C.cyclic(8), C.cyclic(9))


def test_involution_counts_separate_q8_and_d8():
    inv = lambda G: int((G.element_orders == 2).sum())
    assert (inv(C.quaternion8()), inv(C.dihedral(8))) == (1, 5)


def test_aut_count_examples():
    assert automorphism_count(C.elementary_abelian(2, 3)) == 168
    assert automorphism_count(C.heisenberg(3)) == 432
    assert automorphism_count(C.cyclic(7)) == 6


def test_aut_heisenberg5():
    assert automorphism_count(C.heisenberg(5)) == 12000


def test_aut_modular_matches_presentation_count():
    # independent oracle: pairs (x', y') satisfying the defining relations and generating
    M = C.modular_group(3)
    rel = lambda G, x, y: G.op(int(G.inv[y]), x, y) == G.power(x, 4)
    assert automorphism_count(M) == presentation_count(M, (9, 3), rel) == 54


def test_aut_z3_z9_matches_presentation_count():
    G = direct_product(C.cyclic(3), C.cyclic(9))
    # a of order 9, b of order 3, commuting; generation forces b outside <a>
    rel = lambda G, a, b: G.op(a, b) == G.op(b, a)
    assert automorphism_count(G) == presentation_count(G, (9, 3), rel) == 108


def test_aut_bound():
    with pytest.raises(TooLarge):
        automorphism_count(C.cyclic(600))


@pytest.mark.parametrize("spec", [s for s in FIXTURE_SPECS if fixture_group(s).order <= 60])
def test_aut_count_divisible_by_inner(spec):
    G = fixture_group(spec)
    assert automorphism_count(G) % (G.order // len(center(G))) == 0


@pytest.mark.parametrize("spec", ["q8", "dih:8", "sym:4", "cyclic:12"])
def test_automorphisms_are_valid_and_distinct(spec):
    G = C.build(spec)
    auts = automorphisms(G)
    assert all(a.is_valid() for a in auts)
    assert len({a.image.tobytes() for a in auts}) == len(auts)


def test_isomorphism_symmetric_on_fixtures():
    groups = [fixture_group(s) for s in FIXTURE_SPECS]
    for G, H in itertools.combinations(groups, 2):
        a, b = is_isomorphic(G, H), is_isomorphic(H, G)
        assert a == b
        if a:
            assert G.signature == H.signature and G.is_abelian == H.is_abelian


def test_extend_images_rejects_non_homomorphism():
    G = C.cyclic(6)
    with pytest.raises(ValueError):
        extend_images(G, C.cyclic(4), [1], [1])


def test_automorphism_from_images():
    G = C.cyclic(7)
    a = automorphism_from_images(G, [3])
    assert a(1) == 3 and a.is_valid()


def test_homomorphisms_count():
    # Hom(Z_6, Z_4) has gcd(6, 4) = 2 elements
    assert len(homomorphisms_to(C.cyclic(6), C.cyclic(4))) == 2
