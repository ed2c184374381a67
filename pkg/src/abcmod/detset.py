"""The set D(A) of absolute maximal minors, with row witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class DetSet:
    """Absolute n x n minors of an m x n matrix.

    ``witnesses[v]`` is a sorted tuple of 0-based row indices whose minor has
    absolute value v.
    """

    values: frozenset
    witnesses: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_witnesses(cls, witnesses):
        witnesses = {int(v): tuple(sorted(r)) for v, r in witnesses.items()}
        return cls(frozenset(witnesses), witnesses)

    def __contains__(self, v):
        return v in self.values

    def __len__(self):
        return len(self.values)

    def sorted_values(self):
        return sorted(self.values)

    def witnesses_json(self):
        return {str(v): [i + 1 for i in self.witnesses[v]] for v in sorted(self.witnesses)}

    def to_json(self, variant="computed"):
        return {"variant": variant, "values": self.sorted_values(), "witnesses": self.witnesses_json()}
