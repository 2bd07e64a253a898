"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py) and, with
``-s``, as each test runs.
"""
import io
import json
import subprocess
import sys
import time

import pytest

from hrvir.cli import main

RESULTS = {}


def record(n, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}  {title}" + (f"  ({detail})" if detail else "")
    RESULTS[n] = line
    print(line)
    return ok


@pytest.fixture(scope="module")
def full_run(tmp_path_factory):
    """Two default full-suite runs through the CLI."""
    d = tmp_path_factory.mktemp("acceptance")
    runs = []
    for name in ("first.json", "second.json"):
        path = d / name
        t0 = time.perf_counter()
        code = main(["check", "all", "--output", str(path), "-q"], out=io.StringIO(), err=io.StringIO())
        runs.append((code, time.perf_counter() - t0, path.read_bytes()))
    doc = json.loads(runs[0][2])
    reports = {r["id"]: r for r in doc["reports"]}
    # per-check runtime bounds, measured cold in a fresh interpreter
    timed = {}
    for cid in ("ID-316-DET", "ID-317-SOLVE"):
        timed_path = d / "timed.json"
        subprocess.run([sys.executable, "-m", "hrvir", "check", cid, "--timing", "-q",
                        "--output", str(timed_path)], capture_output=True)
        timed[cid] = json.loads(timed_path.read_text(encoding="utf-8"))["reports"][0]["elapsed_ms"]
    return {"runs": runs, "reports": reports, "timed": timed, "doc": doc}


def status(full_run, *ids):
    bad = [f"{i}: {full_run['reports'][i]['status']}" for i in ids
           if full_run["reports"][i]["status"] != "pass"]
    return not bad, "; ".join(bad)


def test_criterion_01_determinant(full_run):
    ok, why = status(full_run, "ID-316-DET")
    ms = full_run["timed"]["ID-316-DET"]
    ok = ok and ms <= 10_000
    assert record(1, "ID-316-DET determinant identity, runtime ≤ 10 s", ok, why or f"{ms} ms")


def test_criterion_02_solution_list(full_run):
    ok, why = status(full_run, "ID-317-SOLVE")
    ms = full_run["timed"]["ID-317-SOLVE"]
    ok = ok and ms <= 30_000
    assert record(2, "ID-317-SOLVE sufficiency and necessity, runtime ≤ 30 s", ok, why or f"{ms} ms")


def test_criterion_03_operator_identity(full_run):
    ok, why = status(full_run, "ID-311-PBW", "ID-312", "ID-313")
    assert record(3, "ID-311-PBW / ID-312 / ID-313 identity chain", ok, why)


def test_criterion_04_ansatz(full_run):
    ok, why = status(full_run, "ID-310-ANSATZ")
    assert record(4, "ID-310-ANSATZ both branches plus nonvacuity", ok, why)


def test_criterion_05_derived_relations(full_run):
    ok, why = status(full_run, "ID-322/324-DERIVE", "ID-323-OPS")
    assert record(5, "ID-322/324-DERIVE four relations reproduced", ok, why)


@pytest.mark.xfail(strict=True, reason="the quotient's leading coefficient is 4(b+b″)(b+b″−1) and "
                                       "(b,b″)=(−1/2,3/2) is an unlisted zero")
def test_criterion_06_factorization(full_run):
    ok, why = status(full_run, "ID-331-FACTOR", "ID-331-ROOTS", "ID-331-ORACLE")
    assert record(6, "ID-331-FACTOR factors, leading coefficient, case list, oracle", ok, why)


def test_criterion_07_closed_forms(full_run):
    ok, why = status(full_run, "ID-333-CLOSED")
    assert record(7, "ID-333-CLOSED closed forms under their hypotheses", ok, why)


def test_criterion_08_lemma34(full_run):
    ok, why = status(full_run, "ID-335-LEMMA34", "ID-336-VARIANT", "ID-337-NU0", "ID-340-MATRIX")
    assert record(8, "ID-335-LEMMA34 variant relations, p ≢ 0, exceptional index, matrix ansatz", ok, why)


def test_criterion_09_jacobi(full_run):
    ok, why = status(full_run, "ALG-JACOBI")
    notes = " ".join(full_run["reports"]["ALG-JACOBI"]["notes"])
    ok = ok and "100 random triples at ranks 2 and 3" in notes
    assert record(9, "ALG-JACOBI symbolic plus 100 random triples at ranks 2 and 3", ok, why)


def test_criterion_10_module_axiom(full_run):
    ok, why = status(full_run, "MOD-AXIOM", "MOD-SIMPLE", "MOD-ISO")
    assert record(10, "MOD-AXIOM symbolic and box, simplicity, intertwiner", ok, why)


@pytest.mark.xfail(strict=True, reason="rank one gives determinant k+1 for k ≥ 1")
def test_criterion_11_lattice(full_run):
    ok, why = status(full_run, "LAT-BASIS")
    witness = full_run["reports"]["LAT-BASIS"]["witness"] or ""
    assert record(11, "LAT-BASIS determinants for ranks 1–5, unimodularity, product formula", ok,
                  why + (f"; {witness}" if witness else ""))


def test_criterion_12_cli_determinism(full_run):
    (c1, t1, b1), (c2, t2, b2) = full_run["runs"]
    summary = full_run["doc"]["summary"]
    expected = 0 if summary["fail"] == summary["undecidable"] == 0 else 1
    ok = b1 == b2 and c1 == c2 == expected and max(t1, t2) <= 60
    assert record(12, "CLI-DETERMINISM identical reports, exit contract, full suite ≤ 60 s", ok,
                  f"exit {c1}, {max(t1, t2):.1f} s, {summary['pass']} pass entries")
