import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidkit import io
from rigidkit.cli import main
from rigidkit.errors import DomainError
from rigidkit.io import Document, Slider

from .conftest import K4_EDGES, TRIANGLE, looped_graphs

rationals = st.fractions(max_denominator=1000)


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


@pytest.fixture
def docs(tmp_path):
    out = {
        "k4": {"graph": {"n": 4, "edges": [list(e) for e in K4_EDGES]}},
        "remark": {
            "graph": {"n": 3, "edges": [list(e) for e in TRIANGLE]},
            "directions": [["1", "0"], ["1", "0"], ["0", "1"]],
        },
        "k3": {
            "graph": {"n": 3, "edges": [list(e) for e in TRIANGLE]},
            "directions": [["1", "0"], ["0", "1"], ["1", "1"]],
        },
        "looped": {"graph": {"n": 3, "edges": [list(e) for e in TRIANGLE], "loops": [{"v": 1}, {"v": 2}, {"v": 3}]}},
        "vertex": {"graph": {"n": 1, "edges": [], "loops": [{"v": 1}, {"v": 1}]}},
    }
    return {k: _write(tmp_path, k + ".json", v) for k, v in out.items()}


def test_rationals_parse_exactly():
    assert io.parse_rational("3/4") == Fraction(3, 4)
    assert io.parse_rational(0.1) == Fraction(1, 10)
    assert io.parse_rational("-0.25") == Fraction(-1, 4)
    assert io.format_rational(Fraction(-6, 4)) == "-3/2"
    with pytest.raises(DomainError):
        io.parse_rational("1/0")
    with pytest.raises(DomainError):
        io.parse_rational(True)


def test_length_mismatch_rejected():
    with pytest.raises(DomainError):
        io.document_from_json({"graph": {"n": 2, "edges": [[1, 2]]}, "directions": []})
    with pytest.raises(DomainError):
        io.loads('{"graph": {"n": 1, "loops": [{"v": 1, "color": "green"}]}}')


@settings(max_examples=80, deadline=None)
@given(looped_graphs(max_n=5, colored=True), st.data())
def test_round_trip(g, data):
    pair = st.tuples(rationals, rationals)
    dirs = tuple(data.draw(pair.filter(lambda p: p != (0, 0))) for _ in g.edges)
    sliders = tuple(Slider(data.draw(rationals), data.draw(st.none() | pair)) for _ in g.loops)
    points = tuple(data.draw(pair) for _ in g.vertices)
    doc = Document(g, dirs, sliders, points, tuple(g.edges[:1]), False, True, True, "p1=(0,0), x2=1")
    assert io.loads(io.dumps(doc)) == doc


def test_check_command(docs, capsys):
    assert main(["check", "--model", "tight22", docs["k4"]]) == 0
    assert main(["check", "--model", "laman", docs["k4"]]) == 1
    out = capsys.readouterr().out
    assert '"witness"' in out


def test_check_malformed(tmp_path):
    assert main(["check", "--model", "laman", _write(tmp_path, "bad.json", "{oops")]) == 2
    assert main(["check", "--model", "nope", _write(tmp_path, "x.json", "{}")]) == 2


def test_realize_explicit(docs, tmp_path):
    out = tmp_path / "r.json"
    assert main(["realize", docs["k3"], "-o", str(out)]) == 0
    doc = io.load(out)
    assert doc.points == ((0, 0), (1, 0), (0, -1)) and doc.faithful


def test_realize_remark(docs, tmp_path):
    out = tmp_path / "r.json"
    assert main(["realize", docs["remark"], "-o", str(out)]) == 0
    doc = io.load(out)
    assert doc.collapsed == ((2, 3),) and doc.faithful is False


def test_realize_slider_seed(docs, tmp_path):
    out = tmp_path / "r.json"
    assert main(["realize", docs["looped"], "--slider", "--seed", "7", "-o", str(out)]) == 0
    doc = io.load(out)
    assert doc.faithful and doc.unique and len(doc.sliders) == 3


def test_realize_errors(docs):
    assert main(["realize", docs["k4"]]) == 2
    assert main(["realize", docs["k4"], "--seed", "1"]) == 3


def test_rank_command(docs, tmp_path, capsys):
    assert main(["rank", "--pattern", "m22", docs["k4"]]) == 0
    assert json.loads(capsys.readouterr().out)["rank"] == 6
    assert main(["rank", "--pattern", "m202", docs["vertex"]]) == 0
    assert json.loads(capsys.readouterr().out)["rank"] == 2
    realized = tmp_path / "lr.json"
    main(["realize", docs["looped"], "--slider", "--seed", "7", "-o", str(realized)])
    assert main(["rank", "--pattern", "m203", str(realized)]) == 0
    assert json.loads(capsys.readouterr().out) == {"pattern": "m203", "rank": 6, "exact": True}
    assert main(["rank", "--pattern", "m23", docs["k4"]]) == 2
    assert main(["rank", "--pattern", "m22", docs["looped"]]) == 2


def test_svg_command(docs, tmp_path):
    realized = tmp_path / "t.json"
    main(["realize", docs["k3"], "-o", str(realized)])
    svg = tmp_path / "t.svg"
    assert main(["svg", str(realized), "-o", str(svg)]) == 0
    text = svg.read_text()
    assert text.count('class="vertex"') == 3 and text.count('class="edge"') == 3

    main(["realize", docs["remark"], "-o", str(realized)])
    main(["svg", str(realized), "-o", str(svg)])
    assert svg.read_text().count('class="collapsed"') == 1

    main(["realize", docs["looped"], "--slider", "--seed", "2", "-o", str(realized)])
    main(["svg", str(realized), "-o", str(svg)])
    assert svg.read_text().count("stroke-dasharray") == 3

    assert main(["svg", docs["k4"], "-o", str(svg)]) == 2


def test_oracle_command(capsys, monkeypatch):
    assert main(["oracle", "--suite", "sparsity", "--max-n", "5"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["failed"] == 0 and report["passed"] == report["cases"]
    assert main(["oracle", "--suite", "decomposition", "--max-n", "4"]) == 0
    assert main(["oracle", "--suite", "decomposition", "--max-n", "20"]) == 2
    monkeypatch.setenv("RIGIDKIT_JOBS", "2")
    assert main(["oracle", "--suite", "realization", "--max-n", "4"]) == 0
