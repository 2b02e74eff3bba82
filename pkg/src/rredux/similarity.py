"""Similarity factors between condition attributes.

The similarity factor of attribute A toward attribute B measures how well
the decision-refined partition of A nests inside that of B: each block of
A's partition contributes the fraction of its objects captured by the
best-overlapping block of B's partition, and the factor is the mean
contribution.  It is asymmetric, lies in (0, 1], and equals 1 exactly
when every block of A's partition fits inside one block of B's.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .partition import relative_blocks
from .table import DecisionTable

Blocks = tuple[tuple[int, ...], ...]


def factor(source: Blocks, target: Blocks) -> float:
    """Similarity factor of the source partition toward the target.

    Both arguments must partition the same universe.  Computed in exact
    rational arithmetic so 1.0 is returned iff source refines target.
    """
    if not source or not target:
        raise ValueError("similarity factor needs non-empty partitions")
    universe = {x for block in source for x in block}
    if {x for block in target for x in block} != universe:
        raise ValueError("partitions cover different universes")
    target_sets = [frozenset(block) for block in target]
    total = Fraction(0)
    for block in source:
        members = frozenset(block)
        best = max(len(members & t) for t in target_sets)
        total += Fraction(best, len(block))
    return float(total / len(source))


@dataclass(frozen=True)
class SimilarityMatrix:
    """All pairwise similarity factors over a table's condition attributes.

    ``values[i][j]`` is the factor of ``attrs[i]`` toward ``attrs[j]``;
    the diagonal is fixed at 1.0.  ``relative`` keeps the per-attribute
    decision-refined partitions the factors were computed from.
    """

    attrs: tuple[str, ...]
    relative: dict[str, Blocks]
    values: tuple[tuple[float, ...], ...]

    def index(self, attr: str) -> int:
        try:
            return self.attrs.index(attr)
        except ValueError:
            raise ValueError(f"unknown attribute {attr!r}") from None

    def factor(self, source: str, target: str) -> float:
        return self.values[self.index(source)][self.index(target)]


def matrix(table: DecisionTable) -> SimilarityMatrix:
    """Pairwise similarity factors, one relative partition per attribute."""
    attrs = table.condition_attrs
    relative = {a: relative_blocks(table, a) for a in attrs}
    values = tuple(
        tuple(
            1.0 if a == b else factor(relative[a], relative[b])
            for b in attrs
        )
        for a in attrs
    )
    return SimilarityMatrix(attrs, relative, values)
