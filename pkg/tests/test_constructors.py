import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cltlab import constructors as C
from cltlab import gf
from cltlab.gf import NoSuchElement
from cltlab.group import GroupError, TooLarge, center, embedded_complement, validate_group
from cltlab.morphisms import is_isomorphic
from cltlab.subgroups import clt_report, count_subgroups_of_order, sylow_analysis, sylow_subgroup


def test_cyclic_examples():
    assert C.cyclic(1).order == 1
    assert C.cyclic(27).exponent == 27
    assert clt_report(C.cyclic(24)).is_clt
    with pytest.raises(ValueError):
        C.cyclic(0)


def test_elementary_abelian_examples():
    assert count_subgroups_of_order(C.elementary_abelian(2, 3), 4) == 7
    assert count_subgroups_of_order(C.elementary_abelian(3, 3), 9) == 13
    with pytest.raises(ValueError):
        C.elementary_abelian(4, 3)
    assert C.elementary_abelian(5, 2).exponent == 5


@pytest.mark.parametrize("q", [3, 5, 7])
def test_heisenberg_invariants(q):
    E = C.heisenberg(q)
    assert E.order == q**3 and not E.is_abelian and E.exponent == q
    assert len(center(E)) == q
    assert E.commutator(E["x"], E["y"]) == E["z"]


@pytest.mark.parametrize("q", [3, 5, 7])
def test_modular_invariants(q):
    M = C.modular_group(q)
    x, y = M["x"], M["y"]
    assert M.order == q**3 and M.exponent == q * q and len(center(M)) == q
    assert M.element_orders[x] == q * q
    assert M.op(int(M.inv[y]), x, y) == M.power(x, q + 1)


def test_q2_rejected():
    with pytest.raises(ValueError):
        C.heisenberg(2)
    with pytest.raises(ValueError):
        C.modular_group(2)


def test_small_named_groups():
    Q = C.quaternion8()
    assert int((Q.element_orders == 2).sum()) == 1
    assert not is_isomorphic(C.dihedral(8), Q)
    S = C.sl2_3()
    assert S.order == 24
    assert is_isomorphic(sylow_subgroup(S, 2).as_group(), Q)
    assert C.dicyclic(12).order == 12 and C.dihedral(12).order == 12
    with pytest.raises(ValueError):
        C.dihedral(5)
    with pytest.raises(ValueError):
        C.dicyclic(6)


def test_zq3_semi_zp_examples():
    assert C.zq3_semi_zp(7, 2).order == 56
    G = C.zq3_semi_zp(13, 3)
    assert G.order == 351 and not clt_report(G).is_clt
    with pytest.raises(NoSuchElement):
        C.zq3_semi_zp(5, 3)


def test_eq3_semi_zp_examples():
    G = C.eq3_semi_zp(2, 3)
    assert G.order == 54
    assert G.conj(G["a"], G["z"]) == G["z"]
    big = C.eq3_semi_zp(3, 5)
    assert big.order == 375 and validate_group(big).ok
    with pytest.raises(NoSuchElement):
        C.eq3_semi_zp(5, 3)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 5), (2, 5)])
def test_eq3_semi_zp_fixes_embedded_center(p, q):
    G = C.eq3_semi_zp(p, q)
    a = G["a"]
    z = G["z"]
    assert G.conj(a, z) == z
    assert G.element_orders[a] == p
    assert embedded_complement(G, q**3).order == p


def test_order24_catalog():
    cat = C.order24_catalog()
    assert len(cat) == 15
    assert C.pairwise_non_isomorphic(cat)
    assert sum(G.is_abelian for G in cat) == 3
    bad = [G for G in cat if not clt_report(G).is_clt]
    assert len(bad) == 1 and is_isomorphic(bad[0], C.sl2_3())


@pytest.mark.parametrize(
    "p,q,count",
    # reference counts of groups of order p q^3 from the literature on small groups
    [(5, 3, 5), (7, 2, 13), (5, 2, 14), (2, 3, 15), (11, 2, 12), (13, 2, 14), (7, 3, 13), (13, 3, 14)],
)
def test_all_pq3_counts(p, q, count):
    assert len(C.all_pq3_groups(p, q)) == count


def test_all_pq3_53_all_direct_and_clt():
    groups = C.all_pq3_groups(5, 3)
    assert all(G.spec_tag.startswith("dp(") for G in groups)
    assert all(clt_report(G).is_clt for G in groups)


def test_all_pq3_72_unique_non_normal_sylow7():
    groups = C.all_pq3_groups(7, 2)
    odd = [G for G in groups if not sylow_analysis(G, 7)[2]]
    assert len(odd) == 1 and is_isomorphic(odd[0], C.zq3_semi_zp(7, 2))


def test_all_pq3_32_is_catalog():
    assert sorted(G.spec_tag for G in C.all_pq3_groups(3, 2)) == sorted(C.order24_specs())


@pytest.mark.parametrize("p,q", [(7, 2), (13, 3), (2, 3)])
def test_all_pq3_members(p, q):
    groups = C.all_pq3_groups(p, q)
    assert [G.spec_tag for G in groups] == sorted(G.spec_tag for G in groups)
    for G in groups:
        assert G.order == p * q**3
        assert sylow_analysis(G, q)[2] or sylow_analysis(G, p)[2]
        assert validate_group(G).ok


@pytest.mark.parametrize("q", [3, 5])
def test_prime_power_groups_are_clt(q):
    for spec in C.order_q3_specs(q):
        assert clt_report(C.build(spec)).is_clt


def test_errors_for_equal_primes():
    with pytest.raises(ValueError):
        C.all_pq3_groups(3, 3)


# --- DSL ------------------------------------------------------------------------


ATOMS = st.one_of(
    st.integers(1, 30).map(lambda n: f"cyclic:{n}"),
    st.sampled_from(["elemab:2,3", "elemab:3,2", "heis:3", "mod:3", "q8", "sl23", "dih:8", "dic:12"]),
    st.sampled_from(["zq3xzp:7,2", "eq3xzp:2,3", "sym:3", "alt:4"]),
)
ACTIONS = st.sampled_from(
    [
        "sdp(elemab:2,3,7,glorder:7)",
        "sdp(heis:3,2,slorder:2)",
        "sdp(elemab:3,1,8,matrix:[2])",
        "sdp(elemab:2,3,7,matrix:[0,0,1;1,0,1;0,1,0])",
        "sdp(heis:3,2,img:[18,9])",
        "csdp(3,dih:8,[2,1])",
    ]
)
SPECS = st.recursive(
    st.one_of(ATOMS, ACTIONS), lambda inner: st.tuples(inner, inner).map(lambda t: f"dp({t[0]},{t[1]})"), max_leaves=3
)


@given(SPECS)
def test_spec_round_trip(text):
    assert str(C.parse_spec(text)) == text


@settings(max_examples=30, deadline=None)
@given(SPECS)
def test_built_spec_tag_round_trips(text):
    try:
        G = C.build(text)
    except TooLarge:
        return
    assert G.spec_tag == text
    assert validate_group(G).ok


@pytest.mark.parametrize(
    "bad", ["", "cyclic", "cyclic:", "cyclic:3,4", "Cyclic:3", "dp(cyclic:2)", "dp(cyclic:2, cyclic:3)", "foo:1", "sdp(heis:3,2,bogus:1)"]
)
def test_spec_syntax_errors(bad):
    with pytest.raises(C.SpecSyntaxError):
        C.parse_spec(bad)


def test_build_rejects_mismatched_action():
    with pytest.raises(GroupError):
        C.build("sdp(cyclic:7,3,slorder:3)")


def test_glorder_matches_default_matrix():
    M = gf.find_gl_element_of_order(3, 2, 7)
    G = C.build("sdp(elemab:2,3,7,glorder:7)")
    H = C.zq3_semi_zp(7, 2, M)
    assert is_isomorphic(G, H)
