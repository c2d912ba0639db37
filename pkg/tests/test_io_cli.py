import json
import math

import numpy as np
import pytest

from oracles import TEST_IMAGE, TEST_SERIES
from qencode.circuit import Circuit, simulate
from qencode.cli import run
from qencode.errors import FormatError, GraphFormatError
from qencode.image import Image
from qencode.io import format_pgm, parse_csv_table, parse_csv_vector, parse_edge_list, parse_pgm
from qencode.result import EncodingResult
from qencode.statevec import fidelity

PGM = "P2\n# test image\n2 2\n255\n0 85\n170 255\n"
EDGES = "3\n1 2\n2 3\n"


# --- parsers --------------------------------------------------------------------


def test_parse_pgm():
    img = parse_pgm(PGM)
    assert img.depth == 8
    np.testing.assert_array_equal(img.pixels, TEST_IMAGE)
    one = parse_pgm("P2 4 2 1 0 1 1 0 1 1 0 0")
    assert one.depth == 1 and one.pixels.shape == (2, 4)
    np.testing.assert_array_equal(parse_pgm(format_pgm(img)).pixels, img.pixels)


@pytest.mark.parametrize("text", [
    "P5\n2 2\n255\n",
    "P2\n2 2\n200\n0 0 0 0\n",
    "P2\n2 2\n255\n0 0 0\n",
    "P2\n2 2\n255\n0 0 0 256\n",
    "P2\n2 x\n255\n0 0 0 0\n",
    "",
])
def test_parse_pgm_rejects(text):
    with pytest.raises(FormatError):
        parse_pgm(text)


def test_format_pgm():
    assert format_pgm(Image(np.array(TEST_IMAGE), 8)) == "P2\n2 2\n255\n0 85\n170 255\n"


def test_parse_csv():
    t = parse_csv_table("# series\n0.5, 0.8\n0.3,0.8\n\n0.5,0.9\n0.45,0.95\n")
    np.testing.assert_array_equal(t, TEST_SERIES)
    np.testing.assert_array_equal(parse_csv_vector("1,3,0,1\n"), [1, 3, 0, 1])
    np.testing.assert_array_equal(parse_csv_vector("1\n3\n0\n1\n"), [1, 3, 0, 1])
    for bad in ("1,2\n3\n", "a,b\n", "# nothing\n", "1,2\n3,4\n"):
        with pytest.raises(FormatError):
            parse_csv_vector(bad)


def test_parse_edge_list():
    g = parse_edge_list("# path\n3\n1 2\n2 3\n")
    assert g.n_vertices == 3 and g.edges == ((0, 1), (1, 2)) and not g.weighted
    w = parse_edge_list("2\n2 1 0.5\n")
    assert w.weights == {(0, 1): 0.5}
    for bad in ("", "3\n1\n", "3\n1 4\n", "3\n1 1\n", "x\n", "3\n1 2 3 4\n"):
        with pytest.raises(GraphFormatError):
            parse_edge_list(bad)


# --- CLI ------------------------------------------------------------------------


@pytest.fixture
def files(tmp_path):
    paths = {
        "pgm": tmp_path / "img.pgm",
        "pgm3": tmp_path / "img3.pgm",
        "vec": tmp_path / "vec.csv",
        "ts": tmp_path / "ts.csv",
        "graph": tmp_path / "g.txt",
        "wgraph": tmp_path / "wg.txt",
    }
    paths["pgm"].write_text(PGM)
    paths["pgm3"].write_text("P2\n3 3\n255\n0 85 0\n170 255 0\n0 0 0\n")
    paths["vec"].write_text("1,3,0,1\n")
    paths["ts"].write_text("\n".join(",".join(map(str, r)) for r in TEST_SERIES) + "\n")
    paths["graph"].write_text(EDGES)
    paths["wgraph"].write_text("2\n1 2 0.785\n")
    return tmp_path, {k: str(v) for k, v in paths.items()}


def run_json(argv, capsys):
    assert run(argv) == 0
    out = capsys.readouterr().out
    return json.loads(out), out


def check_unit(doc):
    amps = np.array(doc["amplitudes"])
    assert abs(np.sum(amps**2) - 1) <= 1e-12
    assert len(amps) == math.prod(doc["local_dims"])
    assert len(doc["labels"]) == len(doc["local_dims"])


ENCODE_CASES = [
    ["encode", "number", "--basis", "5", "--bits", "3"],
    ["encode", "number", "--angle", "42", "--unit", "degrees"],
    ["encode", "number", "--complex", "42", "21", "--unit", "degrees"],
    ["encode", "number", "--fixed", "2.75", "--int-bits", "2", "--frac-bits", "2"],
    ["encode", "vector", "--method", "amplitude", "{vec}"],
    ["encode", "vector", "--method", "angle", "{vec}"],
    ["encode", "timeseries", "{ts}"],
    ["encode", "graph", "{graph}"],
    ["encode", "graph", "{wgraph}"],
] + [["encode", "image", "--method", m, "{pgm}"] for m in
     ("frqi", "neqr", "gneqr", "qpie", "brqi")] + [
    ["encode", "image", "--method", m, "{pgm3}"] for m in ("qutrit-frqi", "qutrit-neqr")]


@pytest.mark.parametrize("argv", ENCODE_CASES, ids=lambda a: "-".join(a[1:4]))
def test_encode_outputs_unit_norm_and_deterministic(argv, files, capsys):
    _, p = files
    argv = [a.format(**p) for a in argv]
    doc, first = run_json(argv, capsys)
    check_unit(doc)
    _, second = run_json(argv, capsys)
    assert first == second


@pytest.mark.parametrize("argv", [a for a in ENCODE_CASES if "qutrit" not in " ".join(a)
                                  and "{wgraph}" not in a
                                  and not ("--method" in a and "angle" in a and "vector" in a)],
                         ids=lambda a: "-".join(a[1:4]))
def test_emitted_circuit_matches_state(argv, files, capsys):
    tmp, p = files
    qc = tmp / "out.qc"
    argv = [a.format(**p) for a in argv] + ["--circuit", str(qc)]
    doc, _ = run_json(argv, capsys)
    state = EncodingResult.from_dict(doc).state
    circ = Circuit.from_text(qc.read_text())
    assert fidelity(simulate(circ), state) >= 1 - 1e-9


def test_number_values(capsys):
    doc, _ = run_json(["encode", "number", "--angle", "42", "--unit", "degrees"], capsys)
    np.testing.assert_allclose(np.array(doc["amplitudes"])[:, 0], [0.743, 0.669], atol=5e-3)
    doc, _ = run_json(["encode", "number", "--basis", "5", "--bits", "3"], capsys)
    assert np.array(doc["amplitudes"])[:, 0].tolist() == [0, 0, 0, 0, 0, 1, 0, 0]


def test_output_file(files, capsys):
    tmp, p = files
    out = tmp / "o.json"
    assert run(["encode", "graph", p["graph"], "-o", str(out)]) == 0
    assert capsys.readouterr().out == ""
    check_unit(json.loads(out.read_text()))


def test_no_circuit_for_qutrits(files, capsys):
    tmp, p = files
    rc = run(["encode", "image", "--method", "qutrit-frqi", p["pgm3"], "--circuit", str(tmp / "c.qc")])
    assert rc == 1
    assert capsys.readouterr().err.startswith("DomainError:")


@pytest.mark.parametrize("method", ["neqr", "frqi"])
def test_decode_exact_round_trip(method, files, capsys):
    tmp, p = files
    enc = tmp / "e.json"
    assert run(["encode", "image", "--method", method, p["pgm"], "-o", str(enc)]) == 0
    assert run(["decode", "image", "--method", method, str(enc)]) == 0
    assert capsys.readouterr().out == "P2\n2 2\n255\n0 85\n170 255\n"


def test_decode_neqr_sampled(files, capsys):
    tmp, p = files
    enc = tmp / "e.json"
    assert run(["encode", "image", "--method", "neqr", p["pgm"], "-o", str(enc)]) == 0
    argv = ["decode", "image", "--method", "neqr", "--shots", "100000", "--seed", "7", str(enc)]
    assert run(argv) == 0
    first = capsys.readouterr()
    assert first.out == PGM.replace("# test image\n", "")
    assert first.err.startswith("shots: ")
    assert run(argv) == 0
    assert capsys.readouterr() == first


def test_decode_frqi_sampled_deterministic(files, capsys):
    tmp, p = files
    enc = tmp / "e.json"
    assert run(["encode", "image", "--method", "frqi", p["pgm"], "-o", str(enc)]) == 0
    argv = ["decode", "image", "--method", "frqi", "--shots", "50000", "--seed", "3", str(enc)]
    assert run(argv) == 0
    first = capsys.readouterr()
    assert run(argv) == 0
    assert capsys.readouterr() == first
    assert first.err == "shots: 50000\n"


def test_compose(files, capsys):
    tmp, p = files
    g, i = tmp / "g.json", tmp / "i.json"
    run(["encode", "graph", p["graph"], "-o", str(g)])
    run(["encode", "image", "--method", "frqi", p["pgm"], "-o", str(i)])
    doc, _ = run_json(["compose", "product", str(g), str(i)], capsys)
    check_unit(doc)
    assert len(doc["amplitudes"]) == 64
    doc, _ = run_json(["compose", "sum", "--weights", "1,3", str(g), str(i)], capsys)
    check_unit(doc)
    assert doc["labels"][0] == "tag"
    assert doc["layout"]["weights"] == [0.25, 0.75]


def test_transform_qft2d(files, capsys):
    tmp, p = files
    enc = tmp / "q.json"
    run(["encode", "image", "--method", "qpie", p["pgm"], "-o", str(enc)])
    doc, _ = run_json(["transform", "qft2d", str(enc)], capsys)
    check_unit(doc)
    amps = np.array(doc["amplitudes"])
    assert amps[0, 0] == pytest.approx((0.267 + 0.534 + 0.801) / 2, abs=5e-3)


def test_exit_codes(files, capsys):
    tmp, p = files
    bad = tmp / "bad.pgm"
    bad.write_text("P2\n2 2\n255\n1 2 3\n")
    assert run(["encode", "image", "--method", "frqi", str(bad)]) == 1
    assert capsys.readouterr().err.startswith("FormatError:")
    assert run(["encode", "image", "--method", "frqi", str(tmp / "missing.pgm")]) == 1
    assert run(["encode", "number", "--basis", "9", "--bits", "3"]) == 1
    assert run(["encode", "image", "--method", "neqr", p["pgm3"]]) == 1
    junk = tmp / "junk.json"
    junk.write_text("{not json")
    assert run(["transform", "qft2d", str(junk)]) == 1
    capsys.readouterr()
    for argv in (
        [],
        ["encode", "image", "--method", "nope", p["pgm"]],
        ["encode", "number", "--basis", "3"],
        ["encode", "number", "--angle", "1", "--basis", "2", "--bits", "2"],
        ["decode", "image", "--method", "neqr", "--shots", "10", p["pgm"]],
        ["compose", "sum", "--weights", "a,b", p["pgm"], p["pgm"]],
    ):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 2
