"""Single-reduct generation from pairwise attribute similarity.

Three stages over the similarity matrix:

1. For every unordered attribute pair keep the stronger direction, then
   drop every kept element whose factor does not strictly exceed the
   average (``ass_gen``).
2. Merge elements sharing a left attribute into one compound element
   (``comp_sim``).
3. Greedily select the compound element with the largest right-hand side,
   add its left to the reduct, and delete every element whose left sits
   in that right-hand side; repeat until empty (``sin_red_gen``).

Attributes that never entered the compound set are appended to the
reduct: an attribute similar to nothing carries information no selected
attribute can stand in for.  The full run is recorded in a trace dict so
every stage can be audited or serialized.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import similarity
from .partition import blocks, decision_blocks
from .similarity import SimilarityMatrix
from .table import DecisionTable

SELECTED = "selected"
FILTERED = "filtered"
COMPOUND = "compound"


@dataclass(frozen=True)
class SimilarityElement:
    """One similarity edge: ``left`` is similar to the attributes in ``right``.

    Simple elements (stages selected/filtered) have a singleton right and
    carry their factor; compound elements may have several rights and no
    factor.
    """

    left: str
    right: tuple[str, ...]
    factor: float | None = None

    def __post_init__(self):
        if not self.right:
            raise ValueError("similarity element needs a non-empty right side")
        if self.left in self.right:
            raise ValueError(f"attribute {self.left!r} cannot be similar to itself")
        if len(set(self.right)) != len(self.right):
            raise ValueError("right side contains duplicates")


@dataclass(frozen=True)
class SimilaritySet:
    """An ordered similarity set at one pipeline stage."""

    elements: tuple[SimilarityElement, ...]
    stage: str
    avg_factor: float | None = None

    def __post_init__(self):
        if self.stage not in (SELECTED, FILTERED, COMPOUND):
            raise ValueError(f"unknown stage {self.stage!r}")
        if self.stage in (SELECTED, FILTERED):
            pairs = set()
            for el in self.elements:
                if len(el.right) != 1 or el.factor is None:
                    raise ValueError(f"stage {self.stage}: elements must be simple")
                pair = frozenset((el.left, el.right[0]))
                if pair in pairs:
                    raise ValueError(f"pair {set(pair)} appears twice")
                pairs.add(pair)
        else:
            lefts = [el.left for el in self.elements]
            if len(set(lefts)) != len(lefts):
                raise ValueError("compound stage: lefts must be distinct")


@dataclass(frozen=True)
class ReductResult:
    """The reduct plus the complete stage-by-stage trace."""

    reduct: tuple[str, ...]
    isolated: tuple[str, ...]
    trace: dict

    def __post_init__(self):
        if len(set(self.reduct)) != len(self.reduct):
            raise ValueError("reduct contains duplicates")


def select_pairs(mat: SimilarityMatrix) -> SimilaritySet:
    """Keep the stronger direction of each unordered attribute pair.

    On a tie the earlier-indexed attribute stays the source.  The
    average of the kept factors is attached for the next stage.
    """
    attrs = mat.attrs
    elements = []
    for i in range(len(attrs)):
        for j in range(i + 1, len(attrs)):
            if mat.values[i][j] >= mat.values[j][i]:
                elements.append(SimilarityElement(attrs[i], (attrs[j],), mat.values[i][j]))
            else:
                elements.append(SimilarityElement(attrs[j], (attrs[i],), mat.values[j][i]))
    avg = sum(el.factor for el in elements) / len(elements) if elements else None
    return SimilaritySet(tuple(elements), SELECTED, avg)


def _filter_above_average(selected: SimilaritySet) -> SimilaritySet:
    kept = tuple(el for el in selected.elements if el.factor > selected.avg_factor)
    return SimilaritySet(kept, FILTERED, selected.avg_factor)


def ass_gen(mat: SimilarityMatrix) -> SimilaritySet:
    """Build the attribute similarity set: select directions, filter by average.

    Only elements whose factor strictly exceeds the average survive.
    With fewer than two attributes the result is empty.
    """
    if len(mat.attrs) < 2:
        return SimilaritySet((), FILTERED, None)
    return _filter_above_average(select_pairs(mat))


def comp_sim(ass: SimilaritySet) -> SimilaritySet:
    """Merge elements sharing a left into compound elements.

    Lefts keep their first-occurrence order; each merged right-hand side
    is the union of the originals, in first-occurrence order.  Factors
    are dropped.
    """
    if ass.stage != FILTERED:
        raise ValueError(f"comp_sim expects a filtered set, got {ass.stage!r}")
    rights: dict[str, list[str]] = {}
    for el in ass.elements:
        merged = rights.setdefault(el.left, [])
        for attr in el.right:
            if attr not in merged:
                merged.append(attr)
    elements = tuple(
        SimilarityElement(left, tuple(right)) for left, right in rights.items()
    )
    return SimilaritySet(elements, COMPOUND)


def sin_red_gen(ass: SimilaritySet, all_attrs: tuple[str, ...]) -> ReductResult:
    """Greedy single-reduct selection over a compound similarity set.

    Each round selects the element with the largest right-hand side
    (ties go to the left that comes first in ``all_attrs``), admits its
    left to the reduct, and deletes every element whose left appears in
    the selected right-hand side.  Attributes mentioned nowhere in the
    compound set are appended afterwards as isolated attributes.
    """
    if ass.stage != COMPOUND:
        raise ValueError(f"sin_red_gen expects a compound set, got {ass.stage!r}")
    order = {a: k for k, a in enumerate(all_attrs)}
    for el in ass.elements:
        for attr in (el.left, *el.right):
            if attr not in order:
                raise ValueError(f"unknown attribute {attr!r}")

    remaining = list(ass.elements)
    reduct: list[str] = []
    iterations = []
    while remaining:
        chosen = max(remaining, key=lambda el: (len(el.right), -order[el.left]))
        reduct.append(chosen.left)
        deleted = [el.left for el in remaining if el is not chosen and el.left in chosen.right]
        remaining = [
            el for el in remaining if el is not chosen and el.left not in chosen.right
        ]
        iterations.append({"selected": chosen.left, "deleted": deleted})

    mentioned = {a for el in ass.elements for a in (el.left, *el.right)}
    isolated = tuple(a for a in all_attrs if a not in mentioned)
    reduct.extend(isolated)

    trace = {
        "ass_compound": [_element_json(el) for el in ass.elements],
        "iterations": iterations,
        "reduct": list(reduct),
        "isolated": list(isolated),
    }
    return ReductResult(tuple(reduct), isolated, trace)


def _element_json(el: SimilarityElement) -> dict:
    entry = {"left": el.left, "right": list(el.right)}
    if el.factor is not None:
        entry["factor"] = el.factor
    return entry


def _blocks_json(table: DecisionTable, blks) -> list[list[str]]:
    return [[table.object_ids[i] for i in block] for block in blks]


def run_pipeline(table: DecisionTable) -> ReductResult:
    """Full run: similarity matrix, selection, compounding, reduction.

    The trace records the decision partition, the plain and
    decision-refined partition of every condition attribute, every
    pairwise factor in row-major order, each similarity-set stage, the
    per-iteration selections and deletions, and the final reduct.
    """
    mat = similarity.matrix(table)
    if len(mat.attrs) < 2:
        selected = SimilaritySet((), SELECTED, None)
        filtered = SimilaritySet((), FILTERED, None)
    else:
        selected = select_pairs(mat)
        filtered = _filter_above_average(selected)
    compound = comp_sim(filtered)
    result = sin_red_gen(compound, table.condition_attrs)

    delta = [
        {"source": a, "target": b, "factor": mat.factor(a, b)}
        for a in mat.attrs
        for b in mat.attrs
        if a != b
    ]
    trace = {
        "partitions": {
            "decision": _blocks_json(table, decision_blocks(table)),
            "plain": {
                a: _blocks_json(table, blocks(table, [a])) for a in mat.attrs
            },
            "relative": {
                a: _blocks_json(table, mat.relative[a]) for a in mat.attrs
            },
        },
        "delta": delta,
        "ass_selected": [_element_json(el) for el in selected.elements],
        "avg_factor": selected.avg_factor,
        "ass_filtered": [_element_json(el) for el in filtered.elements],
    }
    trace.update(result.trace)
    return replace(result, trace=trace)
