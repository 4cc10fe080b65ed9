from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iotacx.chain import FreeUComplex, cancel_reduce
from iotacx.equivalence import (
    SearchBounds,
    StandardParams,
    b_order_key,
    candidate_params,
    iota_k_equivalent,
    iota_k_local_map_search,
    is_equivalent,
    local_map_search,
    params_order_key,
    standard_complex,
    standard_rep_search,
    verify_certificate,
    verify_iota_k_certificate,
)
from iotacx.equivalence import _SortedCandidates
from iotacx.involutive import IotaComplex, tensor_iota, trivial_iota
from iotacx.knots import en_complex, trefoil
from iotacx.ring import InvalidInputError

DATA = Path(__file__).parent / "data"


def P(text):
    return StandardParams.parse(text)


def S(text):
    return standard_complex(P(text))


def test_params_validation():
    with pytest.raises(InvalidInputError):
        StandardParams(("+",))
    with pytest.raises(InvalidInputError):
        StandardParams(("+", 0))
    with pytest.raises(InvalidInputError):
        StandardParams(("x", 1))
    with pytest.raises(InvalidInputError):
        StandardParams((1, "+"))
    with pytest.raises(InvalidInputError):
        P("+,a")


def test_params_parse_and_print():
    p = P("+,-1,+,-2")
    assert p.entries == ("+", -1, "+", -2) and str(p) == "+,-1,+,-2"
    assert P("(+, -1)") == StandardParams(("+", -1))
    assert P("").m == 0


def test_trivial_standard_complex():
    c = S("")
    assert c.n == 1 and not c.complex.d.any() and c.iota.tolist() == [[1]]


def test_plus_minus_one_arrows():
    c = S("+,-1")
    w = c.iota ^ np.eye(3, dtype=np.uint8)
    assert w[0, 1] == 1 and w.sum() == 1  # omega t1 = t0
    assert c.complex.d[2, 1] == 1 and c.complex.d.sum() == 1  # d t1 = U t2
    assert c.complex.exponents(-1)[0][2, 1] == 1


def test_minus_plus_one_arrows():
    c = S("-,1")
    w = c.iota ^ np.eye(3, dtype=np.uint8)
    assert w[1, 0] == 1 and w.sum() == 1  # omega t0 = t1
    assert c.complex.d[1, 2] == 1 and c.complex.d.sum() == 1  # d t2 = U t1


def test_identity_is_a_strict_local_map():
    c = en_complex(3)
    cert = local_map_search(c, c, "strict")
    assert cert is not None and verify_certificate(c, c, cert)


def test_en3_equivalent_to_c2_both_ways():
    e, s = en_complex(3), S("+,-1,+,-2")
    fwd, bwd = local_map_search(e, s), local_map_search(s, e)
    assert fwd is not None and bwd is not None
    assert verify_certificate(e, s, fwd) and verify_certificate(s, e, bwd)


def test_opposite_one_step_complexes_not_equivalent():
    a, b = S("+,-1"), S("-,1")
    assert local_map_search(a, b) is None or local_map_search(b, a) is None
    assert not is_equivalent(a, b)


def test_distinct_weights_not_equivalent():
    assert not is_equivalent(S("+,-1,+,-2"), S("+,-1,+,-3"), "almost")


def test_equivalence_is_reflexive():
    c = S("-,2,+,-1")
    res = is_equivalent(c, c)
    assert res and res.forward is not None and res.backward is not None


def test_mod_u_chain_maps_keep_true_equivalence():
    e, s = en_complex(3), S("+,-1,+,-2")
    fwd = local_map_search(e, s, chain_map="mod_u")
    bwd = local_map_search(s, e, chain_map="mod_u")
    assert verify_certificate(e, s, fwd) and verify_certificate(s, e, bwd)


def test_mod_u_chain_maps_break_uniqueness():
    # relaxing dF = Fd to hold only mod U makes E_3 equivalent to several
    # distinct standard complexes, so strict chain maps are the default
    e = en_complex(3)
    loose = [q for q in ("+,-1,+,-2", "+,-1,+,-3", "+,-1") if is_equivalent(e, S(q), chain_map="mod_u")]
    strict = [q for q in ("+,-1,+,-2", "+,-1,+,-3", "+,-1") if is_equivalent(e, S(q))]
    assert loose == ["+,-1,+,-2", "+,-1,+,-3", "+,-1"]
    assert strict == ["+,-1,+,-2"]


def test_unknown_modes_rejected():
    c = S("")
    with pytest.raises(ValueError):
        local_map_search(c, c, "weird")
    with pytest.raises(ValueError):
        local_map_search(c, c, chain_map="weird")
    with pytest.raises(ValueError):
        standard_rep_search(c, SearchBounds(1, 1), strategy="weird")


def test_tampered_certificate_rejected():
    e, s = en_complex(3), S("+,-1,+,-2")
    cert = local_map_search(e, s)
    cert.map = np.zeros_like(cert.map)
    assert not verify_certificate(e, s, cert)


def test_iota_k_identity_map():
    k = trefoil()
    cert = iota_k_local_map_search(k, k)
    assert cert is not None and verify_iota_k_certificate(k, k, cert)


def test_iota_k_tensor_square_of_c3_matches_fixture(x3, y3):
    res = iota_k_equivalent(x3, y3)
    assert res
    assert verify_iota_k_certificate(x3, y3, res.forward)
    assert verify_iota_k_certificate(y3, x3, res.backward)


# ordering of standard complexes


def test_weight_order():
    ws = sorted([-3, -2, -1, 1, 2, 3], key=b_order_key)
    assert ws == [-1, -2, -3, 3, 2, 1]


def test_params_order_end_between_signs():
    assert params_order_key(P("-,1")) < params_order_key(P("")) < params_order_key(P("+,1"))
    assert params_order_key(P("+,-1")) < params_order_key(P("+,-1,+,-1"))


def _table():
    rows = []
    for line in (DATA / "standard_local_maps.txt").read_text().splitlines():
        if line.startswith("#"):
            continue
        p, q, bit = (s.strip() for s in line.split(";"))
        rows.append((P(p), P(q), bit == "1"))
    return rows


def test_frozen_local_map_table_matches_search():
    cache = {}
    for p, q, exists in _table():
        for r in (p, q):
            cache.setdefault(r, standard_complex(r))
        assert (local_map_search(cache[p], cache[q]) is not None) == exists, (p, q)


def test_frozen_local_map_table_follows_order():
    rows = _table()
    assert len(rows) == 625
    for p, q, exists in rows:
        assert exists == (params_order_key(p) <= params_order_key(q)), (p, q)


params_small = st.integers(0, 3).flatmap(
    lambda m: st.tuples(*([st.sampled_from("+-"), st.sampled_from([-3, -2, -1, 1, 2, 3])] * m))
).map(StandardParams)


@settings(max_examples=60, deadline=None)
@given(params_small, params_small)
def test_local_maps_follow_order_and_reverify(p, q):
    a, b = standard_complex(p), standard_complex(q)
    cert = local_map_search(a, b)
    assert (cert is not None) == (params_order_key(p) <= params_order_key(q))
    if cert is not None:
        assert verify_certificate(a, b, cert)


def test_sorted_candidates_enumerate_everything_in_order():
    b = SearchBounds(2, 2)
    cands = _SortedCandidates(b)
    listed = [cands[i] for i in range(len(cands))]
    assert listed == sorted(candidate_params(b), key=params_order_key)
    with pytest.raises(IndexError):
        cands[len(cands)]


def test_candidate_order_increasing_steps():
    ms = [p.m for p in candidate_params(SearchBounds(3, 2))]
    assert ms == sorted(ms)
    assert len(ms) == 1 + 8 + 64 + 512


# standard representatives


def test_trivial_complex_has_empty_params():
    assert standard_rep_search(trivial_iota(), SearchBounds(2, 2)) == P("")


def test_en3_representative():
    assert standard_rep_search(en_complex(3), SearchBounds(3, 3)) == P("+,-1,+,-2")


def test_tensor_of_standard_complexes():
    t = tensor_iota(S("+,-1,+,-3"), S("-,1,-,2"))
    assert t.n == 25
    assert standard_rep_search(t, SearchBounds(4, 3)) == P("+,-1,+,-3,-,1,-,2")


@pytest.mark.parametrize("strategy", ["auto", "bisect", "enumerate"])
def test_strategies_agree(strategy):
    rep = standard_rep_search(en_complex(3), SearchBounds(3, 3), strategy=strategy, report=True)
    assert rep.params == P("+,-1,+,-2")
    res = rep.certificates
    s = S("+,-1,+,-2")
    assert verify_certificate(en_complex(3), s, res.forward)
    assert verify_certificate(s, en_complex(3), res.backward)


def test_not_found_when_bounds_too_small():
    rep = standard_rep_search(en_complex(3), SearchBounds(1, 3), report=True)
    assert rep.params is None
    assert rep.strategy == "enumerate"


def test_representative_stable_under_reduction_and_unit():
    e = en_complex(3)
    c, (iota,) = cancel_reduce(e.complex, [e.iota])
    b = SearchBounds(3, 3)
    want = standard_rep_search(e, b)
    assert standard_rep_search(IotaComplex(c, iota), b) == want
    assert standard_rep_search(tensor_iota(e, trivial_iota()), b) == want


def _with_acyclic_pair(c: IotaComplex) -> IotaComplex:
    n = c.n
    gr = np.concatenate([c.complex.gr, [5, 4]])
    d = np.zeros((n + 2, n + 2), dtype=np.uint8)
    d[:n, :n] = c.complex.d
    d[n + 1, n] = 1
    iota = np.eye(n + 2, dtype=np.uint8)
    iota[:n, :n] = c.iota
    return IotaComplex(FreeUComplex(list(c.names) + ["extra_a", "extra_b"], gr, d), iota)


@pytest.mark.parametrize("q", ["+,-1,+,-2", "+,-1,+,-3", "+,-1", "-,1,-,2", ""])
def test_acyclic_summand_changes_nothing(q):
    e, s = en_complex(3), S(q)
    e2 = _with_acyclic_pair(e)
    assert (local_map_search(e, s) is None) == (local_map_search(e2, s) is None)
    assert (local_map_search(s, e) is None) == (local_map_search(s, e2) is None)


ALL_SMALL = [p for p in candidate_params(SearchBounds(2, 3))]


def test_every_small_standard_complex_recognizes_itself():
    b = SearchBounds(2, 3)
    assert len(ALL_SMALL) == 1 + 12 + 144
    for p in ALL_SMALL:
        rep = standard_rep_search(standard_complex(p), b, report=True)
        assert rep.params == p
        s = standard_complex(p)
        assert verify_certificate(s, s, rep.certificates.forward)
