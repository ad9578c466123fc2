import itertools
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cltlab import constructors as C
from cltlab.gf import divisors, prime_factors
from cltlab.group import Subgroup, generate, whole
from cltlab.subgroups import (
    all_subgroups,
    clt_report,
    conjugacy_classes_of_subgroups,
    count_subgroups_of_order,
    frattini_subgroup,
    has_subgroup_of_order,
    is_solvable,
    lattice_cached,
    load_lattice,
    normalizer,
    save_lattice,
    sylow_analysis,
    sylow_subgroup,
    sylow_subgroups,
    verify_m_set_claim,
)

from conftest import FIXTURE_SPECS, fixture_group

ORACLE_SPECS = FIXTURE_SPECS + [
    "heis:5",
    "zq3xzp:13,3",
    "eq3xzp:3,5",
    "dp(heis:3,cyclic:2)",
    "dih:30",
    "alt:5",
] + C.order24_specs()


@lru_cache(maxsize=None)
def lattice(spec):
    return all_subgroups(fixture_group(spec))


def brute_force_subgroups(G):
    """Every subgroup as the closure of a subset of at most two generators (fine for tiny groups)."""
    found = set()
    for a, b in itertools.combinations_with_replacement(range(G.order), 2):
        found.add(tuple(generate(G, [a, b]).tolist()))
    return found


def test_trivial_lattice():
    assert len(all_subgroups(C.cyclic(1))) == 1


def test_lattice_examples():
    assert len(all_subgroups(C.quaternion8())) == 6
    assert len(all_subgroups(C.elementary_abelian(2, 3))) == 16


@pytest.mark.parametrize("spec", ["q8", "dih:8", "sym:4", "sl23", "cyclic:12", "dic:12", "dp(cyclic:3,q8)"])
def test_lattice_matches_two_generator_brute_force(spec):
    # every subgroup of these groups is generated by two elements
    G = fixture_group(spec)
    assert {tuple(S.members.tolist()) for S in lattice(spec).subgroups} == brute_force_subgroups(G)


@pytest.mark.parametrize("spec", FIXTURE_SPECS + ["alt:5", "dih:30", "dp(elemab:2,2,dih:6)"])
def test_extension_and_join_closure_agree(spec):
    G = C.build(spec)
    a = {S.key for S in all_subgroups(G, method="joins").subgroups}
    if is_solvable(G):
        assert a == {S.key for S in all_subgroups(G, method="extension").subgroups}
    assert a == {S.key for S in all_subgroups(G).subgroups}


def test_solvability():
    assert is_solvable(C.sl2_3()) and is_solvable(C.symmetric(4))
    assert not is_solvable(C.alternating(5))


@pytest.mark.parametrize("spec", FIXTURE_SPECS)
def test_lattice_invariants(spec):
    G = fixture_group(spec)
    L = lattice(spec)
    keys = {S.key for S in L.subgroups}
    assert sum(L.by_order.values()) == len(L)
    assert all(G.order % S.order == 0 for S in L.subgroups)
    assert L.has_order(1) and L.has_order(G.order)
    for g in range(G.order):
        assert Subgroup(G, generate(G, [g])).key in keys


def test_lattice_rejects_unknown_method():
    with pytest.raises(ValueError):
        all_subgroups(C.cyclic(4), method="magic")


@pytest.mark.parametrize("spec", [s for s in dict.fromkeys(ORACLE_SPECS) if fixture_group(s).order <= 400])
def test_targeted_matches_lattice(spec):
    G = fixture_group(spec)
    L = lattice(spec)
    for d in divisors(G.order):
        assert has_subgroup_of_order(G, d) == L.has_order(d), d


def test_has_subgroup_examples():
    S = C.sl2_3()
    assert not has_subgroup_of_order(S, 12)
    assert has_subgroup_of_order(S, 8)
    assert has_subgroup_of_order(S, 1)
    with pytest.raises(ValueError):
        has_subgroup_of_order(S, 5)


def test_clt_report_examples():
    assert clt_report(C.sl2_3()).missing_orders == [12]
    rep = clt_report(C.zq3_semi_zp(7, 2))
    assert rep.missing_orders == [14, 28]


def test_clt_report_eq3_2_3():
    # the lattice shows subgroups of every order dividing 54
    rep = clt_report(C.eq3_semi_zp(2, 3), mode="lattice")
    assert rep.missing_orders == [] and rep.is_clt


@pytest.mark.parametrize("spec", ["sl23", "zq3xzp:7,2", "zq3xzp:13,3", "eq3xzp:3,5"])
def test_clt_modes_agree(spec):
    G = fixture_group(spec)
    a = clt_report(G, mode="lattice")
    b = clt_report(G, mode="targeted")
    assert a.missing_orders == b.missing_orders
    assert a.missing_orders == [d for d in a.divisors if d not in a.present_orders]
    assert a.is_clt == (not a.missing_orders)


def test_clt_report_bad_mode():
    with pytest.raises(ValueError):
        clt_report(C.cyclic(4), mode="guess")


def test_sylow_examples():
    G = C.zq3_semi_zp(7, 2)
    P, n7, normal = sylow_analysis(G, 7)
    assert (P.order, n7, normal) == (7, 8, False)
    S, n2, normal2 = sylow_analysis(G, 2)
    assert (n2, normal2) == (1, True)
    assert S.as_group().is_abelian and S.as_group().exponent == 2
    assert sylow_analysis(C.sl2_3(), 3)[1] == 4
    with pytest.raises(ValueError):
        sylow_subgroup(G, 3)


@pytest.mark.parametrize("spec", ORACLE_SPECS[:24])
def test_sylow_counts(spec):
    G = fixture_group(spec)
    n = G.order
    for r in prime_factors(n):
        P, n_r, normal = sylow_analysis(G, r)
        k = 0
        while n % r ** (k + 1) == 0:
            k += 1
        assert P.order == r**k
        assert n_r % r == 1 and (n // r**k) % n_r == 0
        assert len(sylow_subgroups(G, r)) == n_r
        assert normal == (n_r == 1)


def test_normalizer_examples():
    G = C.eq3_semi_zp(2, 3)
    S = sylow_subgroup(G, 3)
    assert normalizer(G, S) == whole(G)
    G7 = C.zq3_semi_zp(7, 2)
    P = sylow_subgroup(G7, 7)
    N = normalizer(G7, P)
    assert N.order == 7 and G7.order // N.order == 8


def test_normalizer_order9_in_eq3_2_3():
    # the involution acts as -1 on the Frattini quotient, so it normalizes every order-9 subgroup
    G = C.eq3_semi_zp(2, 3)
    S = sylow_subgroup(G, 3)
    M = all_subgroups(G, within=S).of_order(9)
    assert len(M) == 4
    assert all(normalizer(G, H).order == 54 for H in M)


def test_count_examples():
    assert count_subgroups_of_order(C.heisenberg(3), 9) == 4
    assert count_subgroups_of_order(C.elementary_abelian(3, 3), 9) == 13
    assert count_subgroups_of_order(C.elementary_abelian(2, 3), 4) == 7


def test_frattini_examples():
    assert frattini_subgroup(C.elementary_abelian(2, 3)).order == 1
    F = frattini_subgroup(C.cyclic(8))
    assert F.order == 4
    E = C.heisenberg(3)
    Phi = frattini_subgroup(E)
    assert Phi.order == 3 and E.commutator(E["x"], E["y"]) in Phi


def test_conjugacy_classes():
    G = C.zq3_semi_zp(7, 2)
    classes = conjugacy_classes_of_subgroups(G, 7)
    assert [len(c) for c in classes] == [8]
    Z = conjugacy_classes_of_subgroups(C.dihedral(8), 2)
    assert sorted(len(c) for c in Z) == [1, 2, 2]


@pytest.mark.parametrize("spec", ["sym:4", "sl23", "zq3xzp:7,2", "heis:3", "dih:30"])
def test_class_sizes_are_normalizer_indices(spec):
    G = fixture_group(spec)
    L = lattice(spec)
    for m in divisors(G.order):
        classes = conjugacy_classes_of_subgroups(G, m, L)
        assert sum(len(c) for c in classes) == L.by_order.get(m, 0)
        for c in classes:
            assert len(c) == G.order // normalizer(G, c[0]).order


def test_m_set_zq3():
    rep = verify_m_set_claim(C.zq3_semi_zp(7, 2), 7, 2)
    assert rep.M_size == 7 and rep.p_divides_M and rep.normalizers_equal_sylow
    rep = verify_m_set_claim(C.zq3_semi_zp(13, 3), 13, 3)
    assert rep.M_size == 13 and rep.p_divides_M and rep.normalizers_equal_sylow


def test_m_set_precondition():
    with pytest.raises(ValueError):
        verify_m_set_claim(C.eq3_semi_zp(2, 3), 2, 3)
    with pytest.raises(ValueError):
        verify_m_set_claim(C.cyclic(8), 7, 2)
    rep = verify_m_set_claim(C.eq3_semi_zp(2, 3), 2, 3, check_precondition=False)
    assert rep.group_is_clt and rep.M_size == 4 and not rep.normalizers_equal_sylow


def test_lattice_cache_round_trip(tmp_path):
    G = C.zq3_semi_zp(7, 2)
    L = all_subgroups(G)
    path = save_lattice(tmp_path, L)
    assert path.exists()
    back = load_lattice(tmp_path, G)
    assert [S.key for S in back.subgroups] == [S.key for S in L.subgroups]
    assert load_lattice(tmp_path, C.cyclic(56)) is None
    assert len(lattice_cached(G, tmp_path)) == len(L)


def test_lattice_cache_rejects_mismatch(tmp_path):
    G = C.sl2_3()
    path = save_lattice(tmp_path, all_subgroups(G))
    path.write_text(path.read_text().replace('"version":1', '"version":99'))
    assert load_lattice(tmp_path, G) is None


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(FIXTURE_SPECS), st.data())
def test_join_of_random_pair_is_in_lattice(spec, data):
    G = fixture_group(spec)
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    J = Subgroup(G, generate(G, [a, b]))
    assert J.key in {S.key for S in lattice(spec).subgroups}
    assert np.all(G.order % J.order == 0)
