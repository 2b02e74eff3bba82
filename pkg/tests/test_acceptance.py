"""Acceptance checks for the whole package.

Each test prints a single PASS/FAIL line to the real stdout so the suite
doubles as a checklist when run under ``pytest tests/test_acceptance.py``.

The end-to-end check compares the pipeline against a recorded set of
reference figures for the bundled admissions sample.  Those figures embed
a mixed-decision block inside a decision-refined partition, which no
consistent refinement rule can reproduce, so the sub-checks downstream of
that block are expected to fail; the assertion message itemizes exactly
which ones.  The mathematically consistent results are pinned in the unit
suites instead.
"""

import contextlib
import io
import itertools
import random
import sys
import time
from collections import Counter
from fractions import Fraction

from rredux.cli import main
from rredux.discretize import chi_square, chimerge
from rredux.evaluate import compare, nb_train, nb_predict, stratified_folds
from rredux.jsonout import canonical
from rredux.partition import blocks, decision_blocks, relative_blocks
from rredux.reduct import comp_sim, run_pipeline, select_pairs, sin_red_gen, ass_gen
from rredux.similarity import factor, matrix
from rredux.table import RawColumn, from_columns

import json
from pathlib import Path

DATA = Path(__file__).parent / "data"


def _report(name: str, ok: bool) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"[{verdict}] {name}", file=sys.__stdout__, flush=True)


def _run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def _as_sets(labelled_blocks):
    return {frozenset(block) for block in labelled_blocks}


REFERENCE_PARTITIONS = (
    ("U/D", ("decision",), [{"x1", "x4", "x7"}, {"x2", "x3", "x5", "x6", "x8"}]),
    ("U/i", ("plain", "i"), [{"x1", "x2", "x7"}, {"x3", "x8"}, {"x4", "x5", "x6"}]),
    ("U/e", ("plain", "e"), [{"x1", "x5"}, {"x2", "x3", "x8"}, {"x4", "x6", "x7"}]),
    ("U/f", ("plain", "f"), [{"x1", "x2", "x3", "x4", "x5", "x6"}, {"x7", "x8"}]),
    ("U/r", ("plain", "r"), [{"x1", "x6", "x8"}, {"x2", "x4", "x5"}, {"x3", "x7"}]),
    ("U_D/i", ("relative", "i"),
     [{"x1", "x7"}, {"x2"}, {"x3", "x8"}, {"x4"}, {"x5", "x6"}]),
    ("U_D/e", ("relative", "e"),
     [{"x1"}, {"x5"}, {"x2", "x3", "x8"}, {"x4", "x7"}, {"x6"}]),
    ("U_D/f", ("relative", "f"),
     [{"x1", "x4"}, {"x2", "x3", "x5", "x6"}, {"x7"}, {"x8"}]),
    ("U_D/r", ("relative", "r"),
     [{"x1"}, {"x6", "x8"}, {"x2", "x5"}, {"x4"}, {"x3", "x7"}]),
)

REFERENCE_DELTA = {
    ("i", "e"): 0.8, ("i", "f"): 0.8, ("i", "r"): 0.7,
    ("e", "i"): 0.83, ("e", "f"): 0.83, ("e", "r"): 0.76,
    ("f", "i"): 0.75, ("f", "e"): 0.75, ("f", "r"): 0.75,
    ("r", "i"): 0.7, ("r", "e"): 0.7, ("r", "f"): 0.8,
}

REFERENCE_SELECTED = {("i", "f"), ("i", "r"), ("e", "i"),
                      ("e", "f"), ("e", "r"), ("r", "f")}
REFERENCE_AVG = 0.786
REFERENCE_FILTERED = {("i", "f"), ("e", "i"), ("e", "f"), ("r", "f")}
REFERENCE_COMPOUND = {"i": {"f"}, "e": {"i", "f"}, "r": {"f"}}
REFERENCE_REDUCT = {"e", "r"}


def test_end_to_end_reference_figures(admissions):
    failures = []
    start = time.perf_counter()
    result = run_pipeline(admissions)
    elapsed = time.perf_counter() - start
    trace = result.trace

    for name, path, expected in REFERENCE_PARTITIONS:
        node = trace["partitions"]
        for key in path:
            node = node[key]
        actual = _as_sets(node)
        if actual != {frozenset(b) for b in expected}:
            failures.append(f"partition {name}: got {sorted(map(sorted, node))}")

    mat = matrix(admissions)
    for (src, dst), figure in REFERENCE_DELTA.items():
        actual = mat.factor(src, dst)
        if abs(actual - figure) > 0.005:
            failures.append(
                f"delta {src}->{dst}: got {actual:.6f}, reference {figure}"
            )

    selected = select_pairs(mat)
    edges = {(el.left, el.right[0]) for el in selected.elements}
    if edges != REFERENCE_SELECTED:
        failures.append(f"selected edges: got {sorted(edges)}")
    if abs(selected.avg_factor - REFERENCE_AVG) > 0.001:
        failures.append(
            f"avg factor: got {selected.avg_factor:.6f}, reference {REFERENCE_AVG}"
        )

    filtered = {(el.left, el.right[0]) for el in ass_gen(mat).elements}
    if filtered != REFERENCE_FILTERED:
        failures.append(f"filtered set: got {sorted(filtered)}")

    compound = {el.left: set(el.right)
                for el in comp_sim(ass_gen(mat)).elements}
    if compound != REFERENCE_COMPOUND:
        failures.append(f"compound set: got {compound}")

    if set(result.reduct) != REFERENCE_REDUCT:
        failures.append(f"reduct: got {sorted(result.reduct)}")

    if elapsed >= 1.0:
        failures.append(f"runtime: {elapsed:.3f}s, limit 1s")

    ok = not failures
    _report("end-to-end reference figures (admissions sample)", ok)
    assert ok, (
        "reference-figure mismatches (the recorded figures keep objects with "
        "different decisions in one decision-refined block, which a consistent "
        "refinement cannot reproduce):\n  " + "\n  ".join(failures)
    )


def test_oracle_equivalence_on_random_tables(random_tables):
    def pairwise_relative(table, attr):
        pos_a = table.attr_position(attr)
        pos_d = table.attr_position(table.decision_attr)

        def related(i, j):
            return (table.values[i][pos_a] == table.values[j][pos_a]
                    and table.values[i][pos_d] == table.values[j][pos_d])

        found = []
        for i in range(table.m):
            for block in found:
                if related(i, block[0]):
                    block.append(i)
                    break
            else:
                found.append([i])
        return {frozenset(b) for b in found}

    def overlap_factor(source, target):
        total = Fraction(0)
        for block in source:
            best = max(len(set(block) & set(other)) for other in target)
            total += Fraction(best, len(block))
        return total / len(source)

    ok = True
    detail = ""
    checked = 0
    for table in random_tables(200):
        mat = matrix(table)
        for attr in table.condition_attrs:
            got = {frozenset(b) for b in relative_blocks(table, attr)}
            want = pairwise_relative(table, attr)
            if got != want:
                ok, detail = False, f"relative partition of {attr!r} diverges"
                break
        for src, dst in itertools.permutations(table.condition_attrs, 2):
            oracle = overlap_factor(mat.relative[src], mat.relative[dst])
            if mat.factor(src, dst) != float(oracle):
                ok, detail = False, f"factor {src}->{dst} diverges from oracle"
                break
        if not ok:
            break
        checked += 1
    ok = ok and checked == 200
    _report("oracle equivalence on 200 random tables", ok)
    assert ok, detail or f"only {checked} tables checked"


def test_property_suite_on_random_tables(random_tables):
    failures = []
    rng = random.Random(424242)
    for table in random_tables(150, seed=987):
        n = len(table.condition_attrs)
        subset = rng.sample(table.condition_attrs, rng.randint(1, n))
        parts = blocks(table, subset)
        seen = [i for block in parts for i in block]
        if sorted(seen) != list(range(table.m)):
            failures.append("partition does not cover the universe exactly once")
        if any(not block for block in parts):
            failures.append("empty partition block")

        mat = matrix(table)
        for src in table.condition_attrs:
            if factor(mat.relative[src], mat.relative[src]) != 1.0:
                failures.append("self similarity below one")
        for src, dst in itertools.permutations(table.condition_attrs, 2):
            value = mat.factor(src, dst)
            if not 0.0 < value <= 1.0:
                failures.append(f"factor {value} outside (0, 1]")
            refines = all(
                any(set(b) <= set(other) for other in mat.relative[dst])
                for b in mat.relative[src]
            )
            if (value == 1.0) != refines:
                failures.append("factor 1.0 does not coincide with refinement")

        selected = select_pairs(mat)
        if len(selected.elements) != n * (n - 1) // 2:
            failures.append("selected set is not one element per unordered pair")

        filtered = ass_gen(mat)
        compound = comp_sim(filtered)
        flat = Counter(
            (el.left, right) for el in compound.elements for right in el.right
        )
        original = Counter((el.left, el.right[0]) for el in filtered.elements)
        if flat != original:
            failures.append("compound merge changed the edge multiset")

        first = sin_red_gen(compound, table.condition_attrs)
        second = sin_red_gen(compound, table.condition_attrs)
        if first != second:
            failures.append("reduct generation is not deterministic")
        if not first.reduct or not set(first.reduct) <= set(table.condition_attrs):
            failures.append("reduct empty or not a subset of the conditions")
        if failures:
            break

    ok = not failures
    _report("pipeline property suite on random tables", ok)
    assert ok, "; ".join(sorted(set(failures)))


def test_chimerge_discretization():
    failures = []
    if chi_square([3, 1], [3, 1]) != 0.0:
        failures.append("identical class distributions should give chi-square 0")
    if chi_square([2, 4], [1, 2]) != 0.0:
        failures.append("proportional class distributions should give chi-square 0")

    imap = chimerge([1.0, 2.0, 7.0, 8.0], ["A", "A", "B", "B"])
    if imap.cut_points != (4.5,):
        failures.append(f"two-cluster case: got cuts {imap.cut_points}")

    rng = random.Random(31)
    for trial in range(100):
        values = [rng.uniform(0, 10) for _ in range(rng.randint(2, 40))]
        labels = [rng.choice("pqr") for _ in values]
        cap = rng.randint(1, 5)
        imap = chimerge(values, labels, max_intervals=cap)
        if len(imap.cut_points) + 1 > cap:
            failures.append(f"trial {trial}: interval cap {cap} exceeded")
        observed = sorted(set(values))
        for cut in imap.cut_points:
            inside = any(
                lo < cut < hi for lo, hi in zip(observed, observed[1:])
            )
            if not inside:
                failures.append(f"trial {trial}: cut {cut} not between observed values")

    ok = not failures
    _report("chimerge discretization behaviour", ok)
    assert ok, "; ".join(failures)


def test_evaluation_harness(admissions, random_tables):
    failures = []
    rng = random.Random(77)
    for table in random_tables(60, seed=5150):
        if table.m < 2:
            continue
        k = rng.randint(2, table.m)
        plan = stratified_folds(table, k, rng.randint(0, 999))
        sizes = Counter(plan.assignments)
        if max(sizes.values()) - min(sizes[f] for f in range(k)) > 1:
            failures.append("fold sizes differ by more than one")
        decision = table.column(table.decision_attr)
        for cls in set(decision):
            per_fold = Counter(
                plan.assignments[i] for i, d in enumerate(decision) if d == cls
            )
            counts = [per_fold.get(f, 0) for f in range(k)]
            if max(counts) - min(counts) > 1:
                failures.append("class spread across folds exceeds one")
        if failures:
            break

    once = compare(admissions, ("r", "i"), 4, 9, "nb")
    twice = compare(admissions, ("r", "i"), 4, 9, "nb")
    render = lambda pair: canonical(
        [{"attrs": list(r.attrs), "folds": list(r.fold_accuracies),
          "mean": r.mean_accuracy, "delta": r.delta} for r in pair]
    )
    if render(once) != render(twice):
        failures.append("fixed seed does not give byte-identical reports")

    full, reduced = compare(admissions, admissions.condition_attrs, 4, 3, "nb")
    if full.delta != 0.0 or reduced.delta != 0.0:
        failures.append("reduct equal to C must give delta exactly 0")

    columns = [
        RawColumn("a", "categorical", ("u", "u", "v", "v", "u")),
        RawColumn("b", "categorical", ("p", "q", "p", "q", "p")),
        RawColumn("d", "categorical", ("yes", "yes", "no", "no", "no")),
    ]
    tiny = from_columns(columns, "d")
    model = nb_train(tiny)

    def posterior(cls, query):
        decision = tiny.column("d")
        rows = [r for r in tiny.values if r[-1] == cls]
        score = Fraction(len(rows), tiny.m)
        for pos, attr in enumerate(tiny.condition_attrs):
            hits = sum(1 for r in rows if r[pos] == query[pos])
            score *= Fraction(hits + 1, len(rows) + len(tiny.domains[attr]))
        return score

    for query in itertools.product((0, 1), repeat=2):
        scores = [posterior(cls, query) for cls in (0, 1)]
        want = max((0, 1), key=lambda cls: (scores[cls], -cls))
        if nb_predict(model, query) != want:
            failures.append(f"nb prediction for {query} disagrees with the oracle")

    ok = not failures
    _report("evaluation harness: stratification, determinism, oracles", ok)
    assert ok, "; ".join(failures)


def test_numeric_csv_end_to_end_both_classifiers():
    failures = []
    for classifier in ("nb", "1nn"):
        code, out, err = _run_cli(
            "evaluate", "--input", str(DATA / "numeric_sample.csv"),
            "--folds", "3", "--seed", "11", "--classifier", classifier,
            "--output", "json",
        )
        if code != 0:
            failures.append(f"{classifier}: exit code {code}, stderr {err!r}")
            continue
        report = json.loads(out)
        n_conditions = 4
        shrunk = len(report["reduct"]) < n_conditions
        if not (shrunk or report["isolated"]):
            failures.append(f"{classifier}: no reduction and no isolated flag")
        for side in ("full", "reduced"):
            acc = report[side]["mean_accuracy"]
            if not 0.0 <= acc <= 1.0:
                failures.append(f"{classifier}: {side} accuracy {acc} out of range")

    ok = not failures
    _report("numeric CSV end to end with both classifiers", ok)
    assert ok, "; ".join(failures)
