"""Sweep reports shared by the theorem checks and the lattice oracle."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SweepReport:
    name: str
    ell: int
    bound: int
    pairs_checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    # per-branch tallies, informational only
    tallies: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def tally(self, key: str, n: int = 1):
        self.tallies[key] = self.tallies.get(key, 0) + n

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "ell": self.ell,
            "bound": self.bound,
            "pairs_checked": self.pairs_checked,
            "counterexamples": self.counterexamples,
            "tallies": dict(sorted(self.tallies.items())),
        }
