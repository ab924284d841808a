"""Bundled reference data: named specs, edge tables, enumerators, parameter rows."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .addcode import WeightDistribution
from .metacirculant import BitGraph, MetacirculantSpec, build_graph, parse_edges
from .quantum import QuantumParams

PRESET_NAMES = (
    "petersen", "g12", "g27_1", "g27_2", "g36_1", "g36_2",
    "g78", "g90", "g91", "g93", "g96",
)


@dataclass(frozen=True)
class Preset:
    name: str
    spec: MetacirculantSpec
    labeling: str = "layer"
    exponent_offset: int = 0
    edges_file: str | None = None
    type: str | None = None
    d: int | None = None

    def graph(self) -> BitGraph:
        return build_graph(self.spec, labeling=self.labeling, exponent_offset=self.exponent_offset)


@dataclass
class FixtureSet:
    """All reference data below one directory.

    ``root`` defaults to the copy shipped inside the package; tests point it
    at a scratch copy to inject faults.
    """

    root: Path | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def _dir(self):
        return self.root if self.root is not None else resources.files("metacirc") / "data"

    def read_text(self, name: str) -> str:
        return (self._dir() / name).read_text()

    def _json(self, name: str):
        if name not in self._cache:
            self._cache[name] = json.loads(self.read_text(name))
        return self._cache[name]

    @property
    def presets(self) -> dict[str, Preset]:
        out = {}
        for name, p in self._json("presets.json").items():
            out[name] = Preset(
                name,
                MetacirculantSpec.from_json(p["spec"]),
                p.get("labeling", "layer"),
                p.get("exponent_offset", 0),
                p.get("edges"),
                p.get("type"),
                p.get("d"),
            )
        return out

    def preset(self, name: str) -> Preset:
        try:
            return self.presets[name]
        except KeyError:
            raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None

    def edges(self, name: str) -> set[tuple[int, int]]:
        p = self.preset(name)
        if p.edges_file is None:
            raise KeyError(f"preset {name!r} has no edge table")
        return parse_edges(self.read_text(p.edges_file))

    def weights(self, name: str) -> WeightDistribution:
        return WeightDistribution.from_json(self._json("weights.json")[name])

    def weight_anomalies(self, name: str) -> dict[int, dict]:
        raw = self._json("weights.json")[name].get("anomalies", {})
        return {int(w): v for w, v in raw.items()}

    def table6(self) -> dict[str, dict[str, int]]:
        return self._json("table6.json")

    def table7(self) -> tuple[QuantumParams, list[tuple[str, QuantumParams, str]]]:
        t = self._json("table7.json")
        seed = QuantumParams(t["seed"]["l"], t["seed"]["k"], t["seed"]["d"])
        rows = [(r["name"], QuantumParams(r["l"], r["k"], r["d"]), r["rule"]) for r in t["rows"]]
        return seed, rows

    def families(self) -> dict[str, list[MetacirculantSpec]]:
        return {k: [MetacirculantSpec.from_json(s) for s in v] for k, v in self._json("families.json").items()}

    def checksum_mismatches(self) -> list[str]:
        """Files whose sha256 differs from the manifest (missing files included)."""
        bad = []
        for line in self.read_text("SHA256SUMS").splitlines():
            if not line.strip():
                continue
            digest, name = line.split(maxsplit=1)
            try:
                data = (self._dir() / name).read_bytes()
            except FileNotFoundError:
                bad.append(name)
                continue
            if hashlib.sha256(data).hexdigest() != digest:
                bad.append(name)
        return bad


_default = FixtureSet()


def default_fixtures() -> FixtureSet:
    return _default


def preset(name: str) -> Preset:
    return _default.preset(name)


__all__ = ["PRESET_NAMES", "FixtureSet", "Preset", "default_fixtures", "preset"]
