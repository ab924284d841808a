from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metacirc.addcode import code_from_graph, min_distance, truncated_weight_counts
from metacirc.invariants import clique_number
from metacirc.metacirculant import MetacirculantSpec, build_graph, validate_spec
from metacirc.search import (
    SearchHit,
    SearchTask,
    class_by_enumerator,
    count_specs,
    enumerate_specs,
    evaluate_spec,
    exhaustive_search,
    random_search,
    sample_spec,
    units,
)

G12 = MetacirculantSpec.make(2, 6, 5, [{3}, {0, 3, 4, 5}])


def brute_force_specs(m, n, alpha):
    """Every tuple of subsets of Z_n that passes validation, in lexicographic order."""
    subsets = sorted(
        (frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)),
        key=lambda s: sorted(s),
    )
    out = []
    for sets in itertools.product(subsets, repeat=m // 2 + 1):
        spec = MetacirculantSpec(m, n, alpha, sets)
        if validate_spec(spec).ok:
            out.append(spec)
    return out


SMALL = [(m, n, a) for m, n in [(2, 2), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 4), (5, 3)] for a in units(n)]


@pytest.mark.parametrize("m,n,alpha", SMALL)
def test_enumeration_matches_brute_force(m, n, alpha):
    got = list(enumerate_specs(m, n, alpha))
    assert got == brute_force_specs(m, n, alpha)
    assert len(set(got)) == len(got) == count_specs(m, n, alpha)


def test_enumeration_counts():
    assert count_specs(3, 9, 4) == 8192
    assert count_specs(3, 9, 2) == 512
    assert len(list(enumerate_specs(2, 2, 1))) == 8
    assert sum(1 for _ in enumerate_specs(3, 9, 2)) == 512


def test_non_unit_alpha():
    with pytest.raises(ValueError):
        list(enumerate_specs(3, 9, 3))


@settings(max_examples=200)
@given(st.integers(2, 7), st.integers(1, 20), st.integers(0, 2**32 - 1), st.data())
def test_samples_are_valid(m, n, seed, data):
    alpha = data.draw(st.sampled_from(units(n)))
    spec = sample_spec(m, n, alpha, np.random.default_rng(seed))
    assert validate_spec(spec).ok


def test_sampling_is_uniform_on_small_space():
    rng = np.random.default_rng(7)
    space = list(enumerate_specs(2, 5, 2))
    hist = {s.key(): 0 for s in space}
    draws = 400 * len(space)
    for _ in range(draws):
        hist[sample_spec(2, 5, 2, rng).key()] += 1
    counts = np.array(list(hist.values()))
    # chi-square with len(space)-1 dof; 0.1% critical value is far below this bound
    expected = draws / len(space)
    chi2 = ((counts - expected) ** 2 / expected).sum()
    assert chi2 < 3 * len(space)


def test_task_validation():
    with pytest.raises(ValueError):
        SearchTask(3, 9, 0)
    with pytest.raises(ValueError):
        SearchTask(3, 9, 9, mode="random")
    with pytest.raises(ValueError):
        SearchTask(3, 9, 9, alphas=(3,))


def test_dodecacode_found():
    hits = exhaustive_search(SearchTask(2, 6, 6))
    assert G12.key() in {h.spec.key() for h in hits}
    assert all(h.distance >= 6 and h.exact for h in hits)


def test_hits_reproduce_standalone():
    task = SearchTask(3, 5, 4)
    hits = exhaustive_search(task)
    assert hits
    for h in hits:
        code = code_from_graph(build_graph(h.spec))
        assert min_distance(code).weight == h.distance >= 4
        assert h.index >= 0


def test_worker_count_and_resume_invariance(tmp_path):
    task = SearchTask(3, 6, 4)
    serial = exhaustive_search(task, chunk_size=17)
    parallel = exhaustive_search(task, workers=2, chunk_size=17)
    assert [h.to_json() for h in serial] == [h.to_json() for h in parallel]

    results, ckpt = tmp_path / "hits.ndjson", tmp_path / "ckpt.json"
    exhaustive_search(task, results_path=results, checkpoint_path=ckpt, chunk_size=17)
    # pretend the run stopped halfway: keep only the prefix and a stale line
    mid = serial[len(serial) // 2].index
    ckpt.write_text(json.dumps({"last_index": mid}))
    lines = [ln for ln in results.read_text().splitlines() if json.loads(ln)["index"] <= mid]
    stale = dict(json.loads(results.read_text().splitlines()[-1]), index=10**6)
    results.write_text("\n".join(lines + [json.dumps(stale)]) + "\n")
    resumed = exhaustive_search(task, results_path=results, checkpoint_path=ckpt, chunk_size=17)
    assert [h.to_json() for h in resumed] == [h.to_json() for h in serial]
    on_disk = sorted((SearchHit.from_json(json.loads(x)) for x in results.read_text().splitlines()), key=lambda h: h.index)
    assert [h.to_json() for h in on_disk] == [h.to_json() for h in serial]


def test_random_search_contracts():
    assert random_search(SearchTask(3, 9, 9, mode="random", seed=1, iterations=0)) == []
    task = SearchTask(3, 6, 4, mode="random", seed=11, iterations=80)
    a, b = random_search(task), random_search(task)
    assert [h.to_json() for h in a] == [h.to_json() for h in b]
    assert a
    exhaustive = {h.spec.key(): h.distance for h in exhaustive_search(SearchTask(3, 6, 4))}
    for h in a:
        assert exhaustive[h.spec.key()] == h.distance


def test_filters():
    task = SearchTask(2, 6, 1, type_filter="TypeII", fingerprint=None)
    hits = exhaustive_search(task)
    assert hits and all((len(h.spec.s_sets[0]) + len(h.spec.s_sets[1])) % 2 == 1 for h in hits)
    task = SearchTask(2, 6, 1, valence_min=4, valence_max=4, fingerprint=None)
    assert all(sum(len(s) for s in h.spec.s_sets) == 4 for h in exhaustive_search(task))


def test_g78_passes_screen(fx):
    p = fx.preset("g78")
    task = SearchTask(6, 13, 20, mode="random", seed=0, iterations=1)
    hit = evaluate_spec(task, p.spec)
    assert hit is not None and not hit.exact and hit.distance >= 20


def test_class_by_enumerator_basics():
    hits = exhaustive_search(SearchTask(2, 6, 6))
    classes = class_by_enumerator(hits)
    assert sum(len(c) for c in classes) == len(hits)
    for c in classes:
        assert len({h.weight_distribution for h in c}) == 1
    assert [len(c) for c in class_by_enumerator(hits[:1])] == [1]
    with pytest.raises(ValueError):
        class_by_enumerator([SearchHit(G12, 6)])


def test_no_hits_above_nine():
    hits = exhaustive_search(SearchTask(3, 9, 10, fingerprint=None))
    assert hits == []


def test_length36_families(fx):
    """Clique number splits all 72 listed graphs; enumerators agree on a sample."""
    fams = fx.families()
    for fam, want in (("f36_1", 6), ("f36_2", 4)):
        assert len(fams[fam]) == 36
        assert {clique_number(build_graph(s).neighbor_masks()) for s in fams[fam]} == {want}
    sample = [
        SearchHit(s, 12, weight_distribution=truncated_weight_counts(code_from_graph(build_graph(s)), 12))
        for fam in ("f36_1", "f36_2")
        for s in (fams[fam][0], fams[fam][-1])
    ]
    classes = class_by_enumerator(sample)
    assert sorted(len(c) for c in classes) == [2, 2]
    assert {frozenset(h.spec.key() for h in c) for c in classes} == {
        frozenset(s.key() for s in (fams[f][0], fams[f][-1])) for f in ("f36_1", "f36_2")
    }
