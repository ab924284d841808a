"""[[l, k, d]] qubit parameters and secondary-construction bookkeeping.

Only parameters are tracked; no stabilizer groups are materialised.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .addcode import AdditiveCode, is_symplectic_self_dual


class PropagationError(ValueError):
    pass


@dataclass(frozen=True)
class QuantumParams:
    length: int
    k: int
    d: int
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.length < 1 or self.k < 0 or self.d < 1 or self.k > self.length:
            raise ValueError(f"invalid parameters [[{self.length},{self.k},{self.d}]]")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.length, self.k, self.d)

    def __str__(self) -> str:
        return f"[[{self.length},{self.k},{self.d}]]"

    def to_json(self) -> dict:
        return {"l": self.length, "k": self.k, "d": self.d, "provenance": list(self.provenance)}

    @classmethod
    def from_json(cls, obj: dict) -> QuantumParams:
        return cls(obj["l"], obj["k"], obj["d"], tuple(obj.get("provenance", ())))


def from_self_dual_code(
    code: AdditiveCode, d: int, *, verified: bool = False, name: str = "graph code"
) -> QuantumParams:
    """A self-dual (l, 2^l, d) code gives an [[l, 0, d]] code."""
    if not is_symplectic_self_dual(code):
        raise PropagationError("code is not symplectic self-dual")
    how = "verified" if verified else "asserted"
    return QuantumParams(code.length, 0, d, (f"graph-code seed {name} (d {how})",))


@dataclass(frozen=True)
class Rule:
    """One propagation step.

    subcode: arg = new k. lengthen: arg = new length. puncture: no arg.
    shorten: arg = number of coordinates removed.
    """

    name: str
    arg: int | None = None
    label: str | None = None

    def __str__(self) -> str:
        if self.label:
            return self.label
        return self.name if self.arg is None else f"{self.name}:{self.arg}"


def propagate(p: QuantumParams, rule: Rule) -> QuantumParams:
    name, arg = rule.name, rule.arg
    if name == "subcode":
        if p.k < 1:
            raise PropagationError("subcode requires k >= 1")
        if arg is None or not 1 <= arg <= p.k:
            raise PropagationError(f"subcode requires 1 <= k' <= {p.k}")
        out = (p.length, arg, p.d)
    elif name == "lengthen":
        if p.k < 1:
            raise PropagationError("lengthen requires k >= 1")
        if arg is None or arg < p.length:
            raise PropagationError(f"lengthen requires new length >= {p.length}")
        out = (arg, p.k, p.d)
    elif name == "puncture":
        if p.d <= 1:
            raise PropagationError("puncture requires d > 1")
        if p.length <= 1 or p.k > p.length - 1:
            raise PropagationError("puncture would leave no room for k logical qubits")
        out = (p.length - 1, p.k, p.d - 1)
    elif name == "shorten":
        count = 1 if arg is None else arg
        if count < 1:
            raise PropagationError("shorten requires at least one coordinate")
        if p.d <= count:
            raise PropagationError(f"shorten requires d > {count}")
        if p.k + count > p.length - count:
            raise PropagationError(f"shorten by {count} would give k > length")
        # read off published parameter tables, not a proved general rule
        out = (p.length - count, p.k + count, p.d - count)
    else:
        raise PropagationError(f"unknown rule {name!r}")
    note = str(rule) + (" (table-derived)" if name == "shorten" else "")
    return QuantumParams(*out, provenance=p.provenance + (note,))


def parse_rules(text: str) -> list[Rule]:
    """Comma-separated rules such as ``shorten,lengthen:77,subcode:1,puncture``."""
    rules = []
    for i, part in enumerate(filter(None, (s.strip() for s in text.split(","))), 1):
        name, _, arg = part.partition(":")
        name = name.strip().lower()
        if name not in ("subcode", "lengthen", "puncture", "shorten"):
            raise PropagationError(f"rule {i}: unknown rule {name!r}")
        if name == "puncture" and arg:
            raise PropagationError(f"rule {i}: puncture takes no argument")
        if name in ("subcode", "lengthen") and not arg:
            raise PropagationError(f"rule {i}: {name} needs an argument")
        try:
            value = int(arg) if arg else None
        except ValueError:
            raise PropagationError(f"rule {i}: bad argument {arg!r}") from None
        rules.append(Rule(name, value))
    return rules


def apply_rules(p: QuantumParams, rules: list[Rule]) -> list[QuantumParams]:
    chain = []
    for i, rule in enumerate(rules, 1):
        try:
            p = propagate(p, rule)
        except PropagationError as exc:
            raise PropagationError(f"rule {i} ({rule}): {exc}") from None
        chain.append(p)
    return chain


def derive_table78(seed: QuantumParams | None = None) -> list[QuantumParams]:
    """Nine codes derived from the [[78, 0, 20]] seed."""
    q = seed or QuantumParams(78, 0, 20, ("graph-code seed G78 (d asserted)",))
    L = q.length
    q1 = propagate(q, Rule("puncture", label=f"puncture at {{{L}}}"))
    q2 = propagate(q, Rule("shorten", 1, f"shorten at {{{L}}}"))
    q3 = propagate(q2, Rule("lengthen", q2.length + 1, "lengthen by 1"))
    q4 = propagate(q, Rule("shorten", 2, f"shorten at {{{L - 1}, {L}}}"))
    q5 = propagate(q4, Rule("subcode", q4.k - 1))
    q6 = propagate(q4, Rule("lengthen", q4.length + 1, "lengthen by 1"))
    q7 = propagate(q, Rule("shorten", 3, f"shorten at {{{L - 2}, {L - 1}, {L}}}"))
    q8 = propagate(q7, Rule("lengthen", q7.length + 1, "lengthen by 1"))
    q9 = propagate(q7, Rule("subcode", q7.k - 1))
    return [q1, q2, q3, q4, q5, q6, q7, q8, q9]


__all__ = [
    "PropagationError",
    "QuantumParams",
    "Rule",
    "apply_rules",
    "derive_table78",
    "from_self_dual_code",
    "parse_rules",
    "propagate",
]
