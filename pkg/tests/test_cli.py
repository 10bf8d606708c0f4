import json

import pytest
from click.testing import CliRunner

from costaslab.cli import main

SANDBOX = {
    "symbols": [{"id": 0, "radicand": 2}, {"id": 1, "radicand": 3}],
    "perm": [1, 0],
    "scale": ["1/1", "1/1"],
}


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    result = runner.invoke(main, args)
    return result


def envelope(result):
    obj = json.loads(result.output)
    assert set(obj) == {"version", "command", "seed", "payload", "exit_code"}
    assert obj["exit_code"] == result.exit_code
    return obj


def test_costas_welch(runner):
    result = invoke(runner, ["costas", "welch", "--p", "5", "--alpha", "2"])
    assert result.exit_code == 0
    assert envelope(result)["payload"] == {"n": 4, "values": [1, 2, 4, 3]}


def test_costas_welch_csv(runner):
    result = invoke(runner, ["costas", "welch", "--p", "5", "--alpha", "2", "--format", "csv"])
    assert result.exit_code == 0
    assert result.output.strip() == "1,2,4,3"


def test_costas_welch_bad_params(runner):
    result = invoke(runner, ["costas", "welch", "--p", "5", "--alpha", "4"])
    assert result.exit_code == 2
    assert "error" in envelope(result)["payload"]


def test_costas_golomb(runner):
    result = invoke(runner, ["costas", "golomb", "--p", "2", "--m", "2"])
    assert result.exit_code == 0
    payload = envelope(result)["payload"]
    assert payload["values"] == [2, 1]
    assert payload["field"] == {"p": 2, "m": 2, "modulus": [1, 1, 1]}


def test_costas_verify_exit_codes(runner):
    good = invoke(runner, ["costas", "verify", "--perm", "1,2,4,3"])
    assert good.exit_code == 0
    assert envelope(good)["payload"]["ok"] is True
    bad = invoke(runner, ["costas", "verify", "--perm", "1,2,3"])
    assert bad.exit_code == 1
    assert envelope(bad)["payload"]["violations"] == [[1, 1, 2]]


def test_costas_enumerate(runner):
    result = invoke(runner, ["costas", "enumerate", "--n", "3", "--count-only"])
    assert envelope(result)["payload"] == {"n": 3, "count": 4}
    full = invoke(runner, ["costas", "enumerate", "--n", "3"])
    assert envelope(full)["payload"]["permutations"] == [
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
    ]


def test_threads_flag_does_not_change_output(runner):
    a = invoke(runner, ["costas", "enumerate", "--n", "4"])
    b = invoke(runner, ["costas", "enumerate", "--n", "4", "--threads", "8"])
    assert json.loads(a.output)["payload"] == json.loads(b.output)["payload"]


def test_ruler_constructions(runner):
    et = invoke(runner, ["ruler", "et", "--p", "3"])
    assert envelope(et)["payload"]["marks"] == [0, 7, 13]
    rl = invoke(runner, ["ruler", "rl", "--p", "5", "--g", "2"])
    payload = envelope(rl)["payload"]
    assert payload["marks"] == [4, 6, 7, 13]
    assert payload["optimality"]["m"] == 4
    bc = invoke(runner, ["ruler", "bc", "--p", "2", "--check-differences"])
    payload = envelope(bc)["payload"]
    assert payload["marks"] == [1, 2]
    assert payload["difference_set_ok"] is True
    quad = invoke(runner, ["ruler", "quad", "--n", "3", "--a", "1"])
    assert envelope(quad)["payload"]["marks"] == [0, 4, 14]


def test_ruler_verify(runner):
    good = invoke(runner, ["ruler", "verify", "--marks", "0,1,3"])
    assert good.exit_code == 0
    bad = invoke(runner, ["ruler", "verify", "--marks", "0,1/2,1"])
    assert bad.exit_code == 1
    conflict = envelope(bad)["payload"]["conflict"]
    assert len(conflict) == 4


def test_ruler_greedy_with_log_and_plot(runner, tmp_path):
    log_path = tmp_path / "log.csv"
    plot_path = tmp_path / "ruler.png"
    result = invoke(
        runner,
        [
            "ruler", "greedy", "--count", "4",
            "--log", str(log_path), "--plot", str(plot_path),
        ],
    )
    assert result.exit_code == 0
    assert envelope(result)["payload"]["marks"] == ["0/1", "1/1", "1/3", "1/4"]
    log_lines = log_path.read_text().strip().splitlines()
    assert log_lines[0] == "candidate,accepted,conflict,interval"
    assert any(line.startswith("1/2,0,") for line in log_lines)
    assert plot_path.stat().st_size > 0


def test_indicator_scan(runner):
    result = invoke(
        runner,
        ["indicator", "scan", "--c", "2", "--trials", "200", "--seed", "42"],
    )
    assert result.exit_code == 0
    obj = envelope(result)
    assert obj["seed"] == 42
    assert obj["payload"]["violations"] == 0
    again = invoke(
        runner,
        ["indicator", "scan", "--c", "2", "--trials", "200", "--seed", "42"],
    )
    assert again.output == result.output  # byte-identical


def test_indicator_witness(runner):
    result = invoke(
        runner, ["indicator", "witness", "--x", "1", "--z", "1", "--c", "2"]
    )
    witness = envelope(result)["payload"]["witness"]
    assert witness["y"] == {"a": "-1/2", "b": "1/6", "d": 669}
    assert witness["difference_rational_side"] == "56/1"


def test_cauchy_check_and_probe(runner, tmp_path):
    sandbox_path = tmp_path / "sandbox.json"
    sandbox_path.write_text(json.dumps(SANDBOX))
    check = invoke(
        runner,
        ["cauchy", "check", "--sandbox", str(sandbox_path), "--trials", "50", "--seed", "1"],
    )
    assert check.exit_code == 0
    payload = envelope(check)["payload"]
    assert payload["failures"] == 0
    assert payload["is_scalar"] is False

    probe = invoke(
        runner,
        ["cauchy", "probe", "--sandbox", str(sandbox_path), "--target", "1,1.5"],
    )
    assert probe.exit_code == 0
    payload = envelope(probe)["payload"]
    assert payload["found"] is True
    assert "/" in payload["r1"]


def test_cauchy_sample_csv(runner, tmp_path):
    sandbox_path = tmp_path / "sandbox.json"
    sandbox_path.write_text(json.dumps(SANDBOX))
    out_path = tmp_path / "sample.csv"
    result = invoke(
        runner,
        [
            "cauchy", "sample", "--sandbox", str(sandbox_path),
            "--count", "10", "--seed", "3", "--transform", "strip",
            "--out", str(out_path),
        ],
    )
    assert result.exit_code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x_embed,y_embed,x_exact,y_exact"
    assert len(lines) == 11
    for line in lines[1:]:
        # exp(-exp(f)) can underflow the float cast; stay within [0, 1)
        y = float(line.split(",")[1])
        assert 0 <= y < 1


def test_cloud_build_verify_roundtrip(runner, tmp_path):
    build = invoke(runner, ["cloud", "build", "--stages", "2"])
    assert build.exit_code == 0
    out_path = tmp_path / "cloud.json"
    out_path.write_text(build.output)
    verify = invoke(runner, ["cloud", "verify", "--file", str(out_path)])
    assert verify.exit_code == 0
    assert envelope(verify)["payload"]["ok"] is True


def test_cloud_build_determinism_and_files(runner, tmp_path):
    svg_path = tmp_path / "cloud.svg"
    png_path = tmp_path / "cloud.png"
    a = invoke(
        runner,
        ["cloud", "build", "--stages", "1", "--svg", str(svg_path), "--plot", str(png_path)],
    )
    b = invoke(runner, ["cloud", "build", "--stages", "1"])
    assert json.loads(a.output)["payload"] == json.loads(b.output)["payload"]
    svg = svg_path.read_text()
    assert svg.startswith("<svg")
    assert svg.count("<circle") == 4
    assert png_path.stat().st_size > 0


def test_cloud_verify_reports_collision(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "points": [
                    {"x": "0/1", "y": "0/1"},
                    {"x": "1/1", "y": "1/1"},
                    {"x": "2/1", "y": "2/1"},
                ]
            }
        )
    )
    result = invoke(runner, ["cloud", "verify", "--file", str(path)])
    assert result.exit_code == 1
    payload = envelope(result)["payload"]
    assert not payload["ok"]
    assert payload["collisions"][0]["vector"] == ["1/1", "1/1"]
