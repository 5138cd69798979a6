"""Command-line front end."""

import csv
import io
import json
import math

import pytest

from multiphoton.cli import run

BETA = f"{3 * math.sqrt(2):.9f}"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def split(text):
    head, _, body = text.partition("\n")
    assert head.startswith("# ")
    return json.loads(head[2:]), body


def rows(body):
    lines = [ln for ln in body.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def test_expand_symbolic_has_four_photon_term():
    code, out, _ = call("expand", "--variant", "II", "--F", "X2^2", "--symbolic")
    assert code == 0
    table = {(r["daggers"], r["annihilators"]): r["coefficient"] for r in rows(split(out)[1])}
    assert table[("4", "0")] == "1/4*gt^2"
    assert table[("0", "4")] == "1/4*gt^2"


def test_expand_numeric_json():
    code, out, _ = call("expand", "--F", "X2^2", "--r", "0.8", "--gamma-tilde", "0.14", "--format", "json")
    assert code == 0
    terms = json.loads(split(out)[1])["terms"]
    aa = next(t for t in terms if t["daggers"] == 1 and t["annihilators"] == 1)
    assert aa["coefficient"][0] == pytest.approx(math.cosh(1.6) + 3 * 0.14**2, rel=1e-11)


def test_coherent_moments():
    code, out, _ = call("moments", "--family", "tpss", "--r", "0", "--beta-re", "4.242640687", "--beta-im", "0")
    assert code == 0
    header, body = split(out)
    (rec,) = rows(body)
    assert float(rec["g2"]) == pytest.approx(1.0, abs=1e-8)
    assert header["config"]["beta"] == [4.242640687, 0.0]


def test_check_canonical_residuals():
    code, out, _ = call("check-canonical", "--mu-re", str(math.cosh(0.8)), "--nu-re", str(math.sinh(0.8)),
                        "--gamma-im", "0.14", "--variant", "II")
    assert code == 0
    (rec,) = rows(split(out)[1])
    assert float(rec["gamma_residual"]) == pytest.approx(-0.14 * math.exp(0.8), abs=1e-10)


def test_state_output_is_deterministic(tmp_path):
    argv = ["state", "--family", "fpss2", "--r", "0.8", "--gamma-tilde", "0.14", "--beta-re", BETA]
    a = tmp_path / "a.csv"
    assert call(*argv, "--out", str(a))[0] == 0
    first_run = a.read_bytes()
    assert call(*argv, "--out", str(a))[0] == 0
    assert a.read_bytes() == first_run
    header, body = split(a.read_text())
    assert header["config"]["family"] == "fpss2"
    first = rows(body)[0]
    assert set(first) == {"x", "re", "im", "density"}


def test_pnd_sums_to_one():
    code, out, _ = call("pnd", "--family", "fpss1", "--r", "0.8", "--gamma-tilde", "0.05", "--beta-re", BETA)
    assert code == 0
    header, body = split(out)
    total = sum(float(r["P"]) for r in rows(body))
    assert total + header["tail_mass"] == pytest.approx(1.0, abs=1e-9)


def test_wigner_subcommand():
    code, out, _ = call("wigner", "--family", "tpss", "--r", "0", "--x-axis=-2:2:5", "--p-axis=-2:2:5")
    assert code == 0
    header, body = split(out)
    assert len(rows(body)) == 25
    assert header["diagnostics"]["max_abs"] == pytest.approx(1 / math.pi, abs=1e-8)


def test_sweep_orders_rows_and_matches_parallel():
    argv = ["sweep", "--family", "fpss2", "--gamma-tilde", "0.1", "--beta-re", BETA, "--param", "r",
            "--start", "0", "--stop", "0.4", "--step", "0.2", "--quantity", "g2,mean_n"]
    code, serial, _ = call(*argv)
    assert code == 0
    table = rows(split(serial)[1])
    assert [float(r["r"]) for r in table] == [0.0, 0.2, 0.4]
    assert float(table[0]["g2"]) == pytest.approx(1.0, abs=0.05)
    code, parallel, _ = call(*argv, "--jobs", "2")
    assert code == 0
    assert split(parallel)[1] == split(serial)[1]


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# moments of a coherent state\nfamily = tpss\nr = 0.5\nbeta-re = 1.0\n")
    code, out, _ = call("moments", "--config", str(cfg), "--r", "0")
    assert code == 0
    header, body = split(out)
    assert header["config"]["r"] == 0.0
    assert float(rows(body)[0]["g2"]) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["moments", "--alpha-re", "1", "--beta-re", "1"],
        ["state", "--grid", "1:2"],
        ["moments", "--family", "nonsense"],
        ["expand", "--F", "X1*X2", "--symbolic"],
        ["sweep", "--quantity", "g3"],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert call("moments", "--config", str(cfg))[0] == 2


def test_numerical_failure_exit_code():
    code, _, err = call("moments", "--family", "fpss2", "--r", "0.8", "--gamma-tilde", "0.1", "--beta-re", BETA, "--N", "5")
    assert code == 3
    assert "tail mass" in err


@pytest.fixture(scope="module")
def figures(tmp_path_factory):
    out = tmp_path_factory.mktemp("figdata")
    code, _, err = call("figures", "--out", str(out))
    assert code == 0, err
    return out


def test_figures_files(figures):
    names = sorted(p.name for p in figures.iterdir())
    assert names == ["fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv", "fig5.csv", "fig6.csv", "manifest.json"]
    manifest = json.loads((figures / "manifest.json").read_text())
    assert set(manifest["files"]) == {f"fig{k}" for k in range(1, 7)}
    for k in range(1, 7):
        header, _ = split((figures / f"fig{k}.csv").read_text())
        assert header["preset"] == f"fig{k}"


def test_fig5_fpss2_crosses_one(figures):
    table = rows(split((figures / "fig5.csv").read_text())[1])
    g2 = {round(float(r["r"]), 2): float(r["fpss2_g2"]) for r in table}
    assert len(g2) == 101
    assert g2[0.8] < 1 < g2[1.0]


def test_fig3_diagnostics_in_manifest(figures):
    manifest = json.loads((figures / "manifest.json").read_text())
    assert manifest["files"]["fig3"]["diagnostics"]["min_value"] < 0
