"""CLI behavior: exit codes, artifacts, manifests, reproducibility."""

import json
import os
import subprocess
import sys

from gadgetforge.cli import run


def invoke(args, cwd=None, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "gadgetforge.cli", *args],
                          capture_output=True, text=True, cwd=cwd, env=env)


def test_bound_prints_tabulated_value(capsys):
    assert run(["bound", "--q-bits", "300", "--n-bits", "50"]) == 0
    assert capsys.readouterr().out.strip() == "12.5"


def test_bound_inapplicable(capsys):
    assert run(["bound", "--q-bits", "100", "--n-bits", "50"]) == 0
    assert capsys.readouterr().out.strip() == "NONE"


def test_hitdist_bound_variants(capsys):
    assert run(["hitdist", "bound", "--gamma", "8.673617379884035e-19"]) == 0  # 2^-60
    assert capsys.readouterr().out.strip() == "20"
    assert run(["hitdist", "bound", "--h", "60", "--eps", "0.1", "--n-bits", "54"]) == 0
    assert capsys.readouterr().out.strip() == "1.5"


def test_gadget_writes_artifacts_and_manifest(tmp_path, capsys):
    out = tmp_path / "g.txt"
    rc = run(["gadget", "ap", "--q", "3", "--color", "sqr", "--out", str(out),
              "--coloring-out", str(tmp_path / "c.txt")])
    assert rc == 0
    manifest = json.loads((tmp_path / "g.txt.manifest.json").read_text())
    assert manifest["params"]["q"] == 3
    assert str(out) in manifest["outputs"]
    header = out.read_text().splitlines()[0]
    assert header == "GADGET 9 9"


def test_gadget_reproducible_bytes(tmp_path):
    for name in ("a", "b"):
        rc = run(["gadget", "ap", "--q", "5", "--color", "sqr",
                  "--out", str(tmp_path / f"{name}.txt")])
        assert rc == 0
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_spectral_json(capsys):
    assert run(["spectral", "--q", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["m"] == 9 and payload["multiplicity_of_d"] == 1
    assert payload["gamma_hat"] <= 3 ** -0.5 + 1e-6


def test_spectral_from_graph_file(tmp_path, capsys):
    assert run(["gadget", "ap", "--q", "3", "--out", str(tmp_path / "g.txt"),
                "--graph-out", str(tmp_path / "graph.txt")]) == 0
    capsys.readouterr()
    assert run(["spectral", "--graph", str(tmp_path / "graph.txt"), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["d"] == 3 and payload["m"] == 9


def test_verify_all_q5():
    result = invoke(["verify-all", "--q", "5", "--seed", "1"])
    assert result.returncode == 0, result.stdout + result.stderr


def test_hitdist_build_and_test(tmp_path, capsys):
    out = tmp_path / "d.txt"
    assert run(["hitdist", "build", "--q", "3", "--b", "1", "--out", str(out)]) == 0
    capsys.readouterr()
    assert out.read_text().startswith("HITDIST color=1 mode=EXACT")
    assert run(["hitdist", "test", "--q", "3", "--b", "1", "--t", "4"]) == 0
    assert "0/1" in capsys.readouterr().out


def test_hitdist_curve_deterministic_across_workers(tmp_path):
    args = ["hitdist", "test", "--q", "3", "--b", "0", "--h", "1,2",
            "--trials", "1000", "--seed", "5"]
    r1 = invoke(args, env_extra={"GADGETFORGE_THREADS": "1"})
    r4 = invoke(args, env_extra={"GADGETFORGE_THREADS": "4"})
    assert r1.returncode == 0 and r4.returncode == 0
    assert r1.stdout == r4.stdout
    assert r1.stdout.startswith("h,t_left,t_right,trials,hits,delta")


def test_verify_all_passes():
    result = invoke(["verify-all", "--q", "3", "--seed", "42", "--json"])
    assert result.returncode == 0, result.stdout + result.stderr
    payload = json.loads(result.stdout)
    assert payload["ok"] and all(c["ok"] for c in payload["checks"])


def test_usage_error_exit_code():
    result = invoke(["frobnicate"])
    assert result.returncode == 2
    result = invoke(["spectral"])  # needs --q or --graph
    assert result.returncode == 2
    result = invoke(["spectral", "--q", "3"], env_extra={"GADGETFORGE_THREADS": "lots"})
    assert result.returncode == 2


def test_domain_error_is_machine_readable():
    result = invoke(["spectral", "--q", "4"])  # not prime
    assert result.returncode == 1
    payload = json.loads(result.stderr.strip().splitlines()[-1])
    assert "4" in payload["detail"]


def test_manifest_replay_reproduces_bytes(tmp_path):
    out = tmp_path / "g.txt"
    assert invoke(["gadget", "ap", "--q", "3", "--out", str(out)],
                  cwd=tmp_path).returncode == 0
    manifest = json.loads((tmp_path / "g.txt.manifest.json").read_text())
    first_hash = manifest["outputs"][str(out)]
    out.unlink()
    assert invoke(manifest["argv"], cwd=tmp_path).returncode == 0
    replay = json.loads((tmp_path / "g.txt.manifest.json").read_text())
    assert replay["outputs"][str(out)] == first_hash


def test_thickness_cli_pipeline(tmp_path, capsys):
    x_path = tmp_path / "x.txt"
    assert run(["thickness", "build", "--n", "2", "--m", "3", "--out", str(x_path)]) == 0
    assert run(["thickness", "stats", "--in", str(x_path)]) == 0
    assert "avg=5/3" in capsys.readouterr().out
    assert run(["thickness", "peel", "--in", str(x_path), "--threshold", "2",
                "--out", str(tmp_path / "core.txt")]) == 0
    assert (tmp_path / "core.txt").read_text().startswith("GRIDSET 2 3 0")
    assert run(["thickness", "verify", "--n", "2", "--s", "1", "--eps", "0.5"]) == 0


def test_disj_cli(tmp_path, capsys):
    assert run(["disj", "build0", "--m", "5", "--k", "2", "--out",
                str(tmp_path / "d0.txt")]) == 0
    capsys.readouterr()
    assert (tmp_path / "d0.txt").read_text().startswith("HITDIST color=0")
    assert run(["disj", "sample1", "--m", "24", "--k", "2", "--seed", "3"]) == 0
    assert "side_size = 66" in capsys.readouterr().out
    assert run(["disj", "bound", "--m", "1048576", "--k", "20",
                "--h", "3", "--t", "8"]) == 0
    assert "distance_term = 5600/262139" in capsys.readouterr().out


def test_sampler_only_listing_fails_cleanly(capsys):
    rc = run(["hitdist", "build", "--q", "3", "--b", "1", "--mode", "POLY10WISE",
              "--out", "/tmp/should_not_exist_dist.txt"])
    assert rc == 1


def test_hitdist_sample_and_sparsify(tmp_path, capsys):
    assert run(["hitdist", "sample", "--q", "3", "--b", "1", "--seed", "7",
                "--count", "3"]) == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.strip()]
    assert len(lines) == 3 and all("|" in ln for ln in lines)
    out = tmp_path / "sparse.txt"
    assert run(["hitdist", "sparsify", "--q", "3", "--b", "0", "--c", "8",
                "--seed", "3", "--out", str(out)]) == 0
    assert out.read_text().startswith("HITDIST color=0 mode=EXACT")
    assert (tmp_path / "sparse.txt.manifest.json").exists()
