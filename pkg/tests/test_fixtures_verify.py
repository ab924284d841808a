from __future__ import annotations

import json
import shutil
from importlib import resources
from pathlib import Path

import pytest

from metacirc.fixtures import PRESET_NAMES, FixtureSet
from metacirc.metacirculant import validate_spec
from metacirc.verify import DISCREPANCY, FAIL, PASS, check_code, check_edges, verify


@pytest.fixture
def scratch(tmp_path) -> Path:
    src = Path(str(resources.files("metacirc") / "data"))
    dst = tmp_path / "data"
    shutil.copytree(src, dst)
    return dst


def test_bundled_data_intact(fx):
    assert fx.checksum_mismatches() == []
    assert set(fx.presets) == set(PRESET_NAMES)
    for p in fx.presets.values():
        assert validate_spec(p.spec).ok


@pytest.mark.parametrize(
    "name,count",
    [("petersen", 15), ("g78", 1599), ("g90", 1890), ("g91", 2002), ("g93", 1302), ("g96", 1680),
     ("g27_1", 216), ("g27_2", 135), ("g36_1", 234), ("g36_2", 234)],
)
def test_edge_tables(fx, name, count):
    assert len(fx.edges(name)) == count
    assert set(fx.preset(name).graph().edges()) == fx.edges(name)


def test_weight_tables_sum(fx):
    for key, length in (("c12", 12), ("c27_1", 27), ("c27_2", 27), ("c36_1", 36), ("c36_2", 36)):
        wd = fx.weights(key)
        assert wd.length == length and wd.total == 2**length
    assert fx.weight_anomalies("c36_2")[12]["printed"] == "208,44"


def test_families_listed(fx):
    fams = fx.families()
    assert {k: len(v) for k, v in fams.items()} == {"f27_1": 108, "f27_2": 108, "f36_1": 36, "f36_2": 36}
    for specs in fams.values():
        assert len({s.key() for s in specs}) == len(specs)


def test_missing_edge_reports_pair(scratch):
    path = scratch / "g78.edges"
    lines = path.read_text().splitlines()
    dropped = lines.pop(100)
    path.write_text("\n".join(lines) + "\n")
    fx = FixtureSet(scratch)
    c = check_edges(fx, "g78")
    assert c.status == FAIL
    u, v = map(int, dropped.split())
    assert f"({u}, {v})" in c.detail and "built only" in c.detail
    assert fx.checksum_mismatches() == ["g78.edges"]


def test_swapped_edge_reports_both_pairs(scratch):
    path = scratch / "g93.edges"
    lines = path.read_text().splitlines()
    lines[0] = "1 2" if lines[0] != "1 2" else "1 3"
    path.write_text("\n".join(lines) + "\n")
    c = check_edges(FixtureSet(scratch), "g93")
    assert c.status == FAIL and "in table only" in c.detail


def test_anomaly_reported_not_failed(scratch):
    weights = json.loads((scratch / "weights.json").read_text())
    weights["c12"]["anomalies"] = {"6": {"printed": "39,6", "stored": "396"}}
    (scratch / "weights.json").write_text(json.dumps(weights))
    checks = check_code(FixtureSet(scratch), "g12", "c12")
    flagged = [c for c in checks if "printed cell" in c.claim]
    assert [c.status for c in flagged] == [DISCREPANCY]
    assert "396" in flagged[0].detail
    assert all(c.status == PASS for c in checks if c not in flagged)


def test_wrong_table_value_fails(scratch):
    weights = json.loads((scratch / "weights.json").read_text())
    weights["c12"]["counts"]["6"] = "395"
    (scratch / "weights.json").write_text(json.dumps(weights))
    checks = check_code(FixtureSet(scratch), "g12", "c12")
    bad = [c for c in checks if c.status == FAIL]
    assert len(bad) == 1 and "wt 6: computed 396 vs table 395" in bad[0].detail


def test_quick_scope_passes():
    report = verify("quick")
    assert report.ok, report.format()
    assert len(report.checks) > 90
    claims = " ".join(c.claim for c in report.checks)
    for token in ("petersen", "g12", "g27_1", "g78", "g96", "Q78,9", "f36_2"):
        assert token in claims


def test_quick_scope_flags_corruption(scratch):
    path = scratch / "g91.edges"
    path.write_text(path.read_text().replace("1 14\n", "", 1))
    report = verify("quick", FixtureSet(scratch))
    assert not report.ok
    names = [c.claim for c in report.failures()]
    assert "fixture checksums" in names and "g91: edge set equals table" in names


def test_unknown_scope():
    with pytest.raises(ValueError):
        verify("everything")
