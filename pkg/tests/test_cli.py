import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import jsonschema
import numpy as np
import pytest

from ldaroc import cli
from ldaroc.documents import (
    REPORT_SCHEMA,
    DocumentError,
    dumps_curve,
    dumps_model,
    loads_curve,
    loads_model,
    model_to_dict,
)
from ldaroc.empirical import empirical_roc, score_dataset, trapezoid_auc
from ldaroc.gaussnum import std_normal_cdf
from ldaroc.lda import model_from_params
from ldaroc.roc import auc, confusion_at, sample_roc, youden
from ldaroc.svgplot import MARGIN, SIZE


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def golden_path(tmp_path, golden):
    p = tmp_path / "golden.json"
    p.write_text(dumps_model(golden))
    return p


class TestModelDocument:
    def test_round_trip(self, make_model):
        for _ in range(10):
            m = make_model()
            back = loads_model(dumps_model(m))
            assert auc(back) == auc(m)
            assert youden(back) == youden(m)
            assert confusion_at(back, 0.3) == confusion_at(m, 0.3)

    def test_derived_block_checked(self, golden):
        doc = model_to_dict(golden)
        doc["derived"]["delta"] = 2.1
        with pytest.raises(DocumentError):
            loads_model(json.dumps(doc))

    def test_derived_block_optional(self):
        m = loads_model('{"schema_version": "1", "mu0": [0], "mu1": [2], "sigma": [[1]]}')
        assert m.delta == 2.0 and m.p0 == 0.5

    def test_bad_documents(self):
        with pytest.raises(DocumentError):
            loads_model("{not json")
        with pytest.raises(DocumentError):
            loads_model('{"schema_version": "2", "mu0": [0], "mu1": [2], "sigma": [[1]]}')
        with pytest.raises(DocumentError):
            loads_model('{"schema_version": "1", "mu0": [0]}')


class TestCurveDocument:
    def test_round_trip_exact(self, golden):
        c = sample_roc(golden, 17)
        text = dumps_curve(c)
        assert text.splitlines()[0] == "theta,fpr,tpr"
        assert text.splitlines()[1].startswith("inf,") and text.splitlines()[-1].startswith("-inf,")
        back = loads_curve(text)
        for a, b in ((c.theta, back.theta), (c.fpr, back.fpr), (c.tpr, back.tpr)):
            np.testing.assert_array_equal(a, b)

    def test_unsorted_rejected(self):
        with pytest.raises(DocumentError):
            loads_curve("theta,fpr,tpr\n1,0.5,0.5\n0,0.2,0.3\n")

    def test_bad_header(self):
        with pytest.raises(DocumentError):
            loads_curve("a,b,c\n1,0,0\n0,1,1\n")


class TestFit:
    def test_recovers_delta(self, tmp_path, golden_path, capsys):
        data = tmp_path / "data.csv"
        assert run("simulate", golden_path, "--count", 100_000, "--seed", 3, "-o", data) == 0
        model = tmp_path / "model.json"
        assert run("fit", data, "-o", model) == 0
        out = capsys.readouterr().out
        assert "n=1 m=100000" in out and "delta=" in out
        assert abs(loads_model(model.read_text()).delta - 2.0) < 0.04

    def test_json_summary(self, tmp_path, capsys):
        data = tmp_path / "d.csv"
        data.write_text("a,b,label\n0,1,0\n1,0,0\n0.5,0.2,0\n3,3,1\n2,4,1\n4,2.5,1\n")
        assert run("fit", data, "--json", "-o", tmp_path / "m.json") == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["class0"] == 3 and summary["class1"] == 3 and summary["n"] == 2

    def test_custom_label_column(self, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("y,x\n0,0\n0,1\n0,0.4\n1,3\n1,2\n1,2.2\n")
        assert run("fit", data, "--label-column", "y", "-o", tmp_path / "m.json") == 0

    def test_parse_error_names_row(self, tmp_path, capsys):
        data = tmp_path / "d.csv"
        data.write_text("x,label\n1,0\n2,0\nabc,1\n4,1\n")
        assert run("fit", data, "-o", tmp_path / "m.json") == cli.EXIT_PARSE
        assert "row 3" in capsys.readouterr().err

    def test_label_domain(self, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("x,label\n1,0\n2,2\n")
        assert run("fit", data, "-o", tmp_path / "m.json") == cli.EXIT_PARSE

    def test_missing_class(self, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("x,label\n1,0\n2,0\n3,0\n")
        assert run("fit", data, "-o", tmp_path / "m.json") == cli.EXIT_DATA

    def test_not_positive_definite(self, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("a,b,label\n1,1,0\n2,2,0\n3,3,1\n4,4,1\n5,5,1\n")
        assert run("fit", data, "-o", tmp_path / "m.json") == cli.EXIT_NUMERIC

    def test_distinct_codes(self):
        assert len({cli.EXIT_PARSE, cli.EXIT_DATA, cli.EXIT_NUMERIC, cli.EXIT_IO, cli.EXIT_USAGE}) == 5


class TestRoc:
    def test_rows(self, tmp_path, golden_path):
        out = tmp_path / "c.csv"
        assert run("roc", golden_path, "--points", 256, "-o", out) == 0
        c = loads_curve(out.read_text())
        assert len(c) == 258
        assert np.all(np.diff(c.fpr) >= 0) and np.all(np.diff(c.tpr) >= 0)

    def test_median_row(self, tmp_path, golden_path):
        out = tmp_path / "c.csv"
        assert run("roc", golden_path, "--points", 257, "-o", out) == 0
        c = loads_curve(out.read_text())
        k = int(np.flatnonzero(c.fpr == 0.5)[0])
        assert c.tpr[k] == pytest.approx(std_normal_cdf(2.0), abs=1e-15)

    def test_missing_model(self, tmp_path):
        assert run("roc", tmp_path / "nope.json") == cli.EXIT_IO

    def test_degenerate(self, tmp_path):
        p = tmp_path / "deg.json"
        p.write_text('{"schema_version": "1", "mu0": [1, 1], "mu1": [1, 1], "sigma": [[1, 0], [0, 1]]}')
        with pytest.warns(UserWarning):
            assert run("roc", p) == cli.EXIT_NUMERIC

    def test_bad_points(self, golden_path):
        assert run("roc", golden_path, "--points", 1) == cli.EXIT_USAGE

    def test_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run("roc")
        assert exc.value.code == cli.EXIT_USAGE


class TestScalars:
    def test_auc(self, golden_path, capsys):
        assert run("auc", golden_path, "--json") == 0
        assert json.loads(capsys.readouterr().out)["auc"] == pytest.approx(0.9213504, abs=1e-7)

    def test_youden(self, golden_path, capsys):
        assert run("youden", golden_path, "--json") == 0
        y = json.loads(capsys.readouterr().out)
        assert y["theta_star"] == 0.0 and y["j_max"] == pytest.approx(0.6826895, abs=1e-7)

    def test_confusion(self, golden_path, capsys):
        assert run("confusion", golden_path, "--theta", 0.5) == 0
        assert capsys.readouterr().out.startswith("theta=0.5")


class TestReport:
    def test_analytic_only(self, golden_path, capsys, monkeypatch):
        def boom(*a, **k):
            raise AssertionError("RNG touched")
        monkeypatch.setattr(cli, "mc_confusion", boom)
        assert run("report", golden_path, "--json") == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["monte_carlo"] is None
        jsonschema.validate(rep, REPORT_SCHEMA)

    def test_monte_carlo(self, golden_path, capsys):
        assert run("report", golden_path, "--theta", 0, "--samples", 10**6, "--seed", 42, "--json") == 0
        rep = json.loads(capsys.readouterr().out)
        jsonschema.validate(rep, REPORT_SCHEMA)
        assert rep["youden"]["j_max"] == pytest.approx(0.6826895, abs=1e-7)
        assert rep["monte_carlo"]["max_abs_gap"] < 2e-3

    def test_text(self, golden_path, capsys):
        assert run("report", golden_path, "--samples", 1000) == 0
        out = capsys.readouterr().out
        for word in ("confusion", "youden", "auc", "max_abs_gap"):
            assert word in out

    def test_schema_verb(self, capsys):
        assert run("schema") == 0
        assert json.loads(capsys.readouterr().out) == json.loads(json.dumps(REPORT_SCHEMA))

    def test_degenerate_report(self, tmp_path, capsys):
        p = tmp_path / "deg.json"
        p.write_text('{"schema_version": "1", "mu0": [0], "mu1": [0], "sigma": [[1]]}')
        with pytest.warns(UserWarning):
            assert run("report", p, "--json") == 0
        rep = json.loads(capsys.readouterr().out)
        jsonschema.validate(rep, REPORT_SCHEMA)
        assert rep["rates"] is None and rep["auc"] == 0.5 and rep["youden"]["degenerate"]


def test_byte_identical_outputs(tmp_path, golden_path):
    outputs = []
    for tag in ("a", "b"):
        d = tmp_path / tag
        d.mkdir()
        run("simulate", golden_path, "--count", 5000, "--seed", 9, "-o", d / "data.csv")
        run("fit", d / "data.csv", "-o", d / "model.json")
        run("roc", d / "model.json", "--points", 99, "-o", d / "curve.csv")
        run("report", d / "model.json", "--samples", 20_000, "--seed", 9, "--json", "-o", d / "rep.json")
        outputs.append([(d / f).read_bytes() for f in ("data.csv", "model.json", "curve.csv", "rep.json")])
    assert outputs[0] == outputs[1]


def test_pipeline_closure(tmp_path, golden_path, capsys):
    run("simulate", golden_path, "--count", 20_000, "--seed", 1, "-o", tmp_path / "d.csv")
    run("fit", tmp_path / "d.csv", "-o", tmp_path / "m.json")
    run("roc", tmp_path / "m.json", "--points", 10_000, "-o", tmp_path / "c.csv")
    capsys.readouterr()
    run("report", tmp_path / "m.json", "--json")
    rep = json.loads(capsys.readouterr().out)
    assert abs(trapezoid_auc(loads_curve((tmp_path / "c.csv").read_text())) - rep["auc"]) < 1e-3


class TestPlot:
    def _polyline(self, svg_path):
        root = ET.parse(svg_path).getroot()
        ns = {"s": "http://www.w3.org/2000/svg"}
        pts = root.find("s:polyline", ns).get("points").split()
        return root, np.array([[float(v) for v in p.split(",")] for p in pts])

    def test_golden_above_chance(self, tmp_path, golden_path):
        run("roc", golden_path, "--points", 101, "-o", tmp_path / "c.csv")
        assert run("plot", tmp_path / "c.csv", "--youden-model", golden_path, "-o", tmp_path / "r.svg") == 0
        root, xy = self._polyline(tmp_path / "r.svg")
        interior = xy[1:-1]
        # Canvas y grows downward; the chance line is y = 2*MARGIN + SIZE - x.
        assert np.all(interior[:, 1] < 2 * MARGIN + SIZE - interior[:, 0])
        assert root.find("{http://www.w3.org/2000/svg}circle") is not None

    def test_diagonal_on_chance_line(self, tmp_path):
        t = np.linspace(0, 1, 11)
        (tmp_path / "c.csv").write_text("theta,fpr,tpr\n" + "".join(f"0,{v:.17g},{v:.17g}\n" for v in t))
        assert run("plot", tmp_path / "c.csv", "-o", tmp_path / "r.svg") == 0
        _, xy = self._polyline(tmp_path / "r.svg")
        np.testing.assert_allclose(xy[:, 1], 2 * MARGIN + SIZE - xy[:, 0], atol=1e-9)

    def test_malformed(self, tmp_path):
        (tmp_path / "c.csv").write_text("theta,fpr,tpr\n0,zero,1\n")
        assert run("plot", tmp_path / "c.csv", "-o", tmp_path / "r.svg") == cli.EXIT_PARSE


def test_console_script(tmp_path, golden_path):
    out = subprocess.run([sys.executable, "-m", "ldaroc.cli", "auc", str(golden_path)],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("auc=0.92135")
