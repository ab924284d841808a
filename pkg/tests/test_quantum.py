from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from metacirc.addcode import AdditiveCode, code_from_graph
from metacirc.metacirculant import MetacirculantSpec, build_graph
from metacirc.quantum import (
    PropagationError,
    QuantumParams,
    Rule,
    apply_rules,
    derive_table78,
    from_self_dual_code,
    parse_rules,
    propagate,
)

SEED = QuantumParams(78, 0, 20)


def test_from_self_dual_code(fx):
    code = code_from_graph(build_graph(MetacirculantSpec.make(2, 6, 5, [{3}, {0, 3, 4, 5}])))
    q = from_self_dual_code(code, 6, verified=True)
    assert q.triple == (12, 0, 6) and "verified" in q.provenance[0]
    q78 = from_self_dual_code(code_from_graph(fx.preset("g78").graph()), 20)
    assert str(q78) == "[[78,0,20]]" and "asserted" in q78.provenance[0]
    q27 = from_self_dual_code(code_from_graph(fx.preset("g27_1").graph()), 9)
    assert q27.triple == (27, 0, 9)
    bad = AdditiveCode(np.zeros((3, 3), np.uint8), np.zeros((3, 3), np.uint8))
    with pytest.raises(PropagationError):
        from_self_dual_code(bad, 1)


def test_rule_examples():
    assert propagate(SEED, Rule("shorten")).triple == (77, 1, 19)
    assert propagate(SEED, Rule("puncture")).triple == (77, 0, 19)
    assert propagate(QuantumParams(76, 2, 18), Rule("subcode", 1)).triple == (76, 1, 18)


def test_guards():
    with pytest.raises(PropagationError, match="d > 1"):
        propagate(QuantumParams(5, 0, 1), Rule("puncture"))
    with pytest.raises(PropagationError, match="k >= 1"):
        propagate(SEED, Rule("subcode", 0))
    with pytest.raises(PropagationError, match="k >= 1"):
        propagate(SEED, Rule("lengthen", 80))
    with pytest.raises(PropagationError):
        propagate(QuantumParams(10, 2, 4), Rule("lengthen", 9))
    with pytest.raises(PropagationError):
        propagate(QuantumParams(10, 2, 4), Rule("subcode", 3))
    with pytest.raises(PropagationError):
        propagate(QuantumParams(10, 0, 3), Rule("shorten", 3))
    with pytest.raises(ValueError):
        QuantumParams(3, 4, 1)


def test_table_replay(fx):
    _, rows = fx.table7()
    derived = derive_table78()
    assert [q.triple for q in derived] == [r[1].triple for r in rows]
    assert derived[3].triple == (76, 2, 18)
    assert derived[2].triple == (78, 1, 19)
    assert derived[7].triple == (76, 3, 17)
    assert all("table-derived" in q.provenance[-1] for q in (derived[1], derived[3], derived[6]))


def test_repeated_shorten_matches_multi():
    chain = apply_rules(SEED, parse_rules("shorten,shorten,shorten"))
    assert chain[-1].triple == (75, 3, 17) == propagate(SEED, Rule("shorten", 3)).triple


def test_parse_rules():
    rules = parse_rules("shorten, lengthen:77 ,subcode:1,puncture,shorten:2")
    assert [(r.name, r.arg) for r in rules] == [
        ("shorten", None), ("lengthen", 77), ("subcode", 1), ("puncture", None), ("shorten", 2)
    ]
    for bad in ("twist", "puncture:3", "lengthen", "subcode:x"):
        with pytest.raises(PropagationError):
            parse_rules(bad)


def test_error_names_rule_index():
    with pytest.raises(PropagationError, match="rule 2"):
        apply_rules(QuantumParams(5, 0, 2), parse_rules("puncture,puncture"))


def test_json_round_trip():
    q = derive_table78()[4]
    obj = q.to_json()
    assert set(obj) == {"l", "k", "d", "provenance"}
    assert QuantumParams.from_json(obj) == q


rule_strategy = st.one_of(
    st.just(Rule("puncture")),
    st.integers(1, 4).map(lambda c: Rule("shorten", c)),
    st.integers(0, 5).map(lambda x: Rule("lengthen", x)),
    st.integers(1, 5).map(lambda x: Rule("subcode", x)),
)


@given(st.integers(1, 100), st.integers(0, 10), st.integers(1, 30), rule_strategy)
def test_propagation_monotone(length, k, d, rule):
    if k > length:
        return
    p = QuantumParams(length, k, d)
    if rule.name == "lengthen":
        rule = Rule("lengthen", length + rule.arg)
    try:
        q = propagate(p, rule)
    except PropagationError:
        return
    assert q.d <= p.d
    if rule.name in ("puncture", "shorten"):
        count = 1 if rule.name == "puncture" else rule.arg
        assert q.length == p.length - count
    if rule.name == "lengthen":
        assert (q.k, q.d) == (p.k, p.d)
