import random
import subprocess
import sys

from functor_homology import runner
from functor_homology.dsl import parse, print_doc

FIXTURE_TOR = """\
ring Z
module M over Z = coker [[2]]
module N over Z = coker [[4]]
morphism q : N -> M = [[1]]
task derive F=tensor(M) A=M n=1
"""

FIXTURE_GROUP = """\
ring R4 = group_algebra p=2 table [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]
ring R2 = group_algebra p=2 table [[0,1],[1,0]]
module T over R4 = trivial
functor F = base_change(R4 -> R2, images=[0,1,0,1])
functor G = coinvariants(R2)
task ss F=F G=G A=T n=2
"""

FIXTURE_DIAGRAM = """\
ring Z
module Z4 over Z = coker [[4]]
module Z2 over Z = coker [[2]]
morphism q : Z4 -> Z2 = [[1]]
category I = standard arrow
diagram D over I = { 0: Z4, 1: Z2; a: q }
task validate X=D
task homology f=q g=q
"""

FIXTURE_LES = """\
ring Z
module Zfree over Z = free 1
module Z2 over Z = coker [[2]]
morphism x2 : Zfree -> Zfree = [[2]]
morphism q : Zfree -> Z2 = [[1]]
ses S = (x2, q)
task les F=tensor(Z2) S=S n=2
"""

FIXTURE_CATS = """\
ring Z
module M over Z = coker [[2]]
morphism idm : M -> M = [[1]]
category A = standard arrow
category P = product(A, A)
category O = opposite(A)
category W = objects [x, y] arrows [f: x -> y, g: x -> y]
category Mo = monoid table [[0, 1], [1, 0]]
diagram D over W = { x: M, y: M; f: idm, g: idm }
task v = validate X=P
task w = validate X=D
"""


def _roundtrip(text):
    doc, diags = parse(text)
    assert not diags, diags
    printed = print_doc(doc)
    doc2, diags2 = parse(printed)
    assert not diags2, diags2
    assert doc2 == doc
    assert print_doc(doc2) == printed
    return doc


def test_round_trip_on_fixtures():
    for fixture in (FIXTURE_TOR, FIXTURE_GROUP, FIXTURE_DIAGRAM, FIXTURE_LES,
                    FIXTURE_CATS):
        _roundtrip(fixture)


def test_explicit_and_monoid_categories_build():
    doc, diags = parse(FIXTURE_CATS)
    assert not diags
    report = runner.run(doc)
    assert report.ok(), [(r.name, r.rows) for r in report.results]
    env, build_diags = runner.build_environment(doc)
    assert not build_diags
    assert len(env.categories["P"].mor_names) == 9
    assert len(env.categories["W"].mor_names) == 4
    assert len(env.categories["Mo"].mor_names) == 2


def test_three_declaration_example():
    doc, diags = parse(
        "ring Z; module M over Z = coker [[2]]; "
        "task derive F=tensor(M) A=M n=1")
    assert not diags and len(doc.decls) == 3


def test_empty_document():
    doc, diags = parse("")
    assert not diags and doc.decls == []


def test_unresolved_name_diagnostic():
    doc, diags = parse("module M over Nowhere = coker [[2]]")
    assert doc is None
    assert any("Nowhere" in d.message for d in diags)
    assert diags[0].line == 1 and diags[0].col >= 1


def test_duplicate_name_diagnostic():
    doc, diags = parse("ring Z\nring Z")
    assert doc is None and any("duplicate" in d.message for d in diags)


def test_syntax_error_has_position():
    doc, diags = parse("ring Z\nmodule M over Z = coker [[2")
    assert doc is None
    assert diags[0].line == 2


def test_fuzz_never_crashes_smoke():
    rng = random.Random(99)
    for _ in range(500):
        blob = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 60)))
        doc, diags = parse(blob)
        assert doc is not None or diags


def test_run_tor_task():
    doc, _ = parse(FIXTURE_TOR)
    report = runner.run(doc)
    assert report.ok()
    rows = dict(report.results[0].rows)
    assert rows["n=1"] == "Z/2"


def test_run_les_task():
    doc, _ = parse(FIXTURE_LES)
    report = runner.run(doc)
    assert report.ok()
    rows = dict(report.results[0].rows)
    assert rows["exact"] == "yes"


def test_run_group_ss_task():
    doc, _ = parse(FIXTURE_GROUP)
    report = runner.run(doc)
    assert report.ok()
    rows = dict(report.results[0].rows)
    assert rows["E2 q=0"] == "1 1 1"
    assert rows["abutment"] == "1 1 1"


def test_emit_determinism():
    doc, _ = parse(FIXTURE_DIAGRAM)
    r1 = runner.emit(runner.run(doc), fmt="text")
    r2 = runner.emit(runner.run(doc), fmt="text")
    assert r1 == r2
    j1 = runner.emit(runner.run(doc), fmt="json")
    j2 = runner.emit(runner.run(doc), fmt="json")
    assert j1 == j2
    assert j1.startswith(b"{")


def test_verify_task_requires_seed():
    doc, _ = parse("ring Z\ntask verify suite=les cases=2")
    report = runner.run(doc)
    assert not report.ok()
    assert "seed" in dict(report.results[0].rows)["error"]
    report2 = runner.run(doc, seed=5)
    assert report2.ok()


def test_invariant_factor_rendering():
    doc, _ = parse("ring Z\nmodule M over Z = coker [[2,0],[0,6]]\n"
                   "task validate X=M")
    report = runner.run(doc)
    assert dict(report.results[0].rows)["module"] == "Z/2 ⊕ Z/6"


def test_cli_subprocess(tmp_path):
    f = tmp_path / "doc.wb"
    f.write_text(FIXTURE_TOR)
    out1 = subprocess.run(
        [sys.executable, "-m", "functor_homology.cli", "run", str(f)],
        capture_output=True)
    assert out1.returncode == 0
    out2 = subprocess.run(
        [sys.executable, "-m", "functor_homology.cli", "run", str(f)],
        capture_output=True)
    assert out1.stdout == out2.stdout  # byte-identical reports
    chk = subprocess.run(
        [sys.executable, "-m", "functor_homology.cli", "check", str(f)],
        capture_output=True)
    assert chk.returncode == 0
    vp = subprocess.run(
        [sys.executable, "-m", "functor_homology.cli", "verify-paper", str(f),
         "--suite", "kernel", "--seed", "3", "--cases", "3"],
        capture_output=True)
    assert vp.returncode == 0 and b"3/3 pass" in vp.stdout


def test_cli_reports_failure_exit_code(tmp_path):
    f = tmp_path / "bad.wb"
    f.write_text("module M over Zoo = coker [[2]]\n")
    out = subprocess.run(
        [sys.executable, "-m", "functor_homology.cli", "check", str(f)],
        capture_output=True)
    assert out.returncode == 1
    assert b"Zoo" in out.stdout
