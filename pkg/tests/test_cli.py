import io

from toughham.cli import main
from toughham.generators import complete_split_join
from toughham.graph import Graph
from toughham.graph6 import write_graph6


def run_cli(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def write_inputs(tmp_path, graphs, name="in.g6"):
    path = tmp_path / name
    path.write_text("".join(write_graph6(g) + "\n" for g in graphs))
    return str(path)


def test_run_and_check_round_trip(tmp_path):
    graphs = [complete_split_join(22, 2), Graph.cycle(5),
              Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])]
    inp = write_inputs(tmp_path, graphs)
    cert_path = str(tmp_path / "certs.txt")
    code, _ = run_cli(["run", "--t", "11", "--input", inp, "--out", cert_path])
    assert code == 0
    code, report = run_cli(["check", "--graph", inp, "--cert", cert_path])
    assert code == 0
    assert report.count("result=pass") == 3


def test_check_flags_corrupted_cycle(tmp_path):
    inp = write_inputs(tmp_path, [Graph.cycle(5)])
    cert_path = tmp_path / "certs.txt"
    cert_path.write_text("graph index=0 n=5 t=11/1\n"
                         "cert kind=hamilton-cycle -- 0 2 4 1 3\n")
    code, report = run_cli(["check", "--graph", inp, "--cert", str(cert_path)])
    assert code == 1
    assert "edge-0-2-missing" in report


def test_check_missing_certificate(tmp_path):
    inp = write_inputs(tmp_path, [Graph.cycle(5), Graph.cycle(6)])
    cert_path = tmp_path / "certs.txt"
    cert_path.write_text("graph index=0 n=5 t=11/1\n"
                         "cert kind=hamilton-cycle -- 0 1 2 3 4\n")
    code, report = run_cli(["check", "--graph", inp, "--cert", str(cert_path)])
    assert code == 1
    assert "result=missing" in report


def test_metrics_line_format(tmp_path):
    inp = write_inputs(tmp_path, [Graph.complete(5)])
    code, out = run_cli(["metrics", "--input", inp])
    assert code == 0
    assert out == "tau=inf kappa=4 alpha=1 delta=4 s=inf\n"


def test_metrics_noncomplete(tmp_path):
    inp = write_inputs(tmp_path, [Graph.cycle(6)])
    code, out = run_cli(["metrics", "--input", inp])
    assert code == 0
    assert out == "tau=1/1 kappa=2 alpha=3 delta=2 s=0\n"


def test_metrics_reports_caps(tmp_path):
    # noncomplete, not multipartite, 27 vertices: exact toughness and
    # scattering exceed the default enumeration cap
    from toughham.generators import case1_synthetic
    inp = write_inputs(tmp_path, [case1_synthetic([2, 1, 2], 6, [2] * 8)])
    code, out = run_cli(["metrics", "--input", inp])
    assert code == 3
    assert "tau=limit" in out and "s=limit" in out and "kappa=6" in out


def test_usage_errors_exit_two(tmp_path):
    code, _ = run_cli(["run", "--input", str(tmp_path / "nope.g6")])
    assert code == 2
    code, _ = run_cli(["frobnicate"])
    assert code == 2
    bad = tmp_path / "bad.g6"
    bad.write_text("C~~\n")
    code, _ = run_cli(["metrics", "--input", str(bad)])
    assert code == 2


def test_oracle_limit_exit_code(tmp_path):
    # pattern-free, min degree above the gate threshold but below n/2, and
    # too many vertices for the default oracle cap: the run is inconclusive
    from toughham.generators import generate
    g = generate("complete_multipartite", {"parts": [30, 10]})
    inp = write_inputs(tmp_path, [g])
    cert_path = str(tmp_path / "certs.txt")
    code, _ = run_cli(["run", "--input", inp, "--out", cert_path])
    assert code == 3
    assert "oracle-limit" in (tmp_path / "certs.txt").read_text()


def test_survey_is_deterministic():
    args = ["survey", "--t-grid", "9/4,5,8,11", "--gen", "random_in_class",
            "--n", "8", "--count", "12", "--seed", "3"]
    code1, out1 = run_cli(args)
    code2, out2 = run_cli(args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.count("survey t=") == 4
