import json

import pytest

from hdaccs.cli import main
from hdaccs.document import Document, DocumentError, dumps, from_json, load, loads, save, to_dot, to_json
from hdaccs.precubical import EMPTY, boundary, standard_cube
from helpers import compiled


@pytest.mark.parametrize("text", ["nil", "a.nil || ~a.nil", "(nu a) (a.nil || ~a.nil)", "rec x . a.x"])
def test_round_trip_keeps_ids(text):
    K = compiled(text)
    doc = Document.from_pointed(K, term=text)
    back = loads(dumps(doc))
    assert back.lps == K.lps and back.initial == K.initial and back.decoration == K.decoration
    assert back.meta["term"] == text and back.pointed().approximate == K.approximate


def test_round_trip_keeps_coords(tmp_path):
    doc = Document(standard_cube(2, "ab"), 0)
    save(doc, tmp_path / "c.json")
    assert load(tmp_path / "c.json").lps.coords == doc.lps.coords


def test_bad_documents():
    good = to_json(Document(standard_cube(1, "a"), 0))
    with pytest.raises(DocumentError):
        loads("{")
    with pytest.raises(DocumentError):
        from_json({**good, "format": "other"})
    with pytest.raises(DocumentError):
        from_json({**good, "meta": {"schema_version": 99}})
    with pytest.raises(DocumentError):
        from_json({**good, "initial": 5})
    broken = json.loads(json.dumps(good))
    broken["cubes"][1][0]["faces"] = [[0, 7]]
    with pytest.raises(DocumentError):
        from_json(broken)
    with pytest.raises(DocumentError):
        Document(standard_cube(1, "a")).pointed()


def _dot_counts(text):
    lines = text.splitlines()
    nodes = [l for l in lines if l.strip().startswith("v") and "->" not in l]
    edges = [l for l in lines if "->" in l and not l.strip().startswith("//")]
    return len(nodes), len(edges), sum("dashed" in l for l in edges)


def test_dot_examples():
    assert _dot_counts(to_dot(Document.from_pointed(compiled("a.nil")))) == (2, 1, 0)
    text = to_dot(Document.from_pointed(compiled("a.nil || ~a.nil")))
    assert _dot_counts(text) == (4, 5, 1)
    assert "// square 0" in text
    assert to_dot(Document(EMPTY)) == "digraph lps {\n}\n"


# -- command line --------------------------------------------------------------

def _write(tmp_path, name, *argv):
    path = tmp_path / name
    assert main([*argv, "--out", str(path)]) == 0
    return str(path)


def test_compile_summaries(tmp_path, capsys):
    _write(tmp_path, "ab.json", "compile", "a.nil || b.nil")
    assert "cubes 4/4/1" in capsys.readouterr().out
    _write(tmp_path, "nil.json", "compile", "nil")
    assert "cubes 1" in capsys.readouterr().out
    path = _write(tmp_path, "rec.json", "compile", "rec x . a.x", "--rec-depth", "3")
    out = capsys.readouterr().out
    assert "cubes 4/3" in out and "approximation" in out
    assert load(path).meta["approximation"] is True


def test_compile_to_stdout(capsys):
    assert main(["compile", "a.nil", "--no-decorate"]) == 0
    captured = capsys.readouterr()
    doc = loads(captured.out)
    assert doc.decoration is None and "cubes 2/1" in captured.err


def test_compile_user_errors(capsys):
    assert main(["compile", "a.("]) == 1
    assert "column" in capsys.readouterr().err
    assert main(["compile", "rec x . x"]) == 1
    assert main(["compile", "a.nil", "--rec-depth", "-1"]) == 1


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as info:
        main(["compile"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_paths_on_cubes(tmp_path, capsys):
    sq = _write(tmp_path, "sq.json", "cube", "2")
    bd = _write(tmp_path, "bd.json", "cube", "2", "--boundary")
    capsys.readouterr()
    assert main(["paths", sq, "--from", "0", "--to", "3"]) == 0
    out = capsys.readouterr().out
    assert "1 class" in out and "length=2" in out
    assert main(["paths", bd, "--from", "initial", "--to", "3"]) == 0
    assert "2 classes" in capsys.readouterr().out
    assert main(["paths", sq, "--to", "9"]) == 1
    assert main(["paths", str(tmp_path / "missing.json")]) == 1


def test_paths_on_sync(tmp_path, capsys):
    path = _write(tmp_path, "s.json", "compile", "a.nil || ~a.nil")
    capsys.readouterr()
    assert main(["paths", path]) == 0
    out = capsys.readouterr().out
    last = [l for l in out.splitlines() if "2 classes" in l]
    assert len(last) == 1
    assert "length=2" in out and "length=1 label=tau" in out


def test_iso_command(tmp_path, capsys):
    sq = _write(tmp_path, "sq.json", "cube", "2")
    bd = _write(tmp_path, "bd.json", "cube", "2", "--boundary")
    ab = _write(tmp_path, "ab.json", "compile", "a.nil || b.nil")
    ba = _write(tmp_path, "ba.json", "compile", "b.nil || a.nil")
    capsys.readouterr()
    assert main(["iso", sq, sq]) == 0
    assert "isomorphic" in capsys.readouterr().out
    assert main(["iso", sq, bd]) == 2
    assert "not isomorphic" in capsys.readouterr().out
    assert main(["iso", ab, ba, "--pointed"]) == 0


def test_dot_and_analyze_commands(tmp_path, capsys):
    path = _write(tmp_path, "d.json", "compile", "(nu a) a.nil")
    capsys.readouterr()
    assert main(["dot", path]) == 0
    assert capsys.readouterr().out.startswith("digraph lps {")
    assert main(["analyze", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["states"] == 2 and report["deadlocks"] == [report["initial"]]


@pytest.mark.parametrize("n, counts", [(2, [4, 4, 1]), (3, [8, 12, 6, 1]), (4, [16, 32, 24, 8, 1])])
def test_hda_check_command(n, counts, capsys):
    assert main(["hda-check", str(n)]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("pass")
    rows = [l.split() for l in out.splitlines()[1:n + 2]]
    assert [int(r[1]) for r in rows] == counts and [int(r[2]) for r in rows] == counts


def test_hda_check_options(capsys):
    assert main(["hda-check", "3", "--uniform"]) == 0
    assert main(["hda-check", "2", "--labels", "x,y"]) == 0
    assert main(["hda-check", "6"]) == 1
    assert main(["hda-check", "3", "--labels", "x"]) == 1


def test_cube_command(tmp_path):
    path = _write(tmp_path, "c.json", "cube", "3", "--labels", "c,a,b")
    doc = load(path)
    assert doc.lps.counts() == (8, 12, 6, 1) and doc.lps.labels[3] == (("a", "b", "c"),)
    assert load(_write(tmp_path, "b.json", "cube", "3", "--boundary")).lps == boundary(3, "abc")
