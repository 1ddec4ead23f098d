from __future__ import annotations

import csv
import io
import json
import math

import pytest

from diffprobe.cli import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED, EXIT_USAGE, main
from diffprobe.config import ProbeConfig, load_config_file
from diffprobe.criteria import Verdict
from diffprobe.report import (Combined, UsageError, combine, emit_report, load_report, run_corpus, run_probe,
                              surface_csv)

CFG = ProbeConfig()


@pytest.fixture(scope="module")
def g2_report():
    return run_probe("g2", cfg=CFG, timestamp=False)


class TestCombine:
    def test_rules(self):
        C, R, I, N = Verdict.CONSISTENT, Verdict.REFUTED, Verdict.INCONCLUSIVE, Verdict.CONDITIONS_NOT_MET
        assert combine([C, I, N])[0] is Combined.CONSISTENT
        assert combine([R, I])[0] is Combined.REFUTED
        assert combine([I, N])[0] is Combined.INCONCLUSIVE
        combined, diagnostics = combine([C, R])
        assert combined is Combined.CONFLICTING and diagnostics


class TestRunProbe:
    def test_examples(self, g2_report):
        assert g2_report.combined is Combined.REFUTED
        assert run_probe("linear_23", cfg=CFG).combined is Combined.CONSISTENT
        with pytest.raises(UsageError):
            run_probe("nope", cfg=CFG)

    def test_point_dimension_checked(self):
        with pytest.raises(UsageError):
            run_probe("g2", (1.0, 2.0, 3.0), cfg=CFG)

    def test_empty_or_foreign_criteria(self):
        with pytest.raises(UsageError):
            run_probe("g2", criteria=[], cfg=CFG)
        with pytest.raises(UsageError):
            run_probe("g2", criteria=["cauchy_riemann"], cfg=CFG)

    def test_translated_points(self):
        # away from the origin these functions are smooth
        for fn, p in (("g2", (1.0, 1.0)), ("euclid_norm", (1.0, -0.5)), ("prod_xy", (1.0, 2.0))):
            assert run_probe(fn, p, ["cauchy_like", "determinant", "geo"], CFG).combined is Combined.CONSISTENT
        assert run_probe("conj", (0.5, 0.5), cfg=CFG).combined is Combined.REFUTED
        assert run_probe("z2", (0.5, 0.5), cfg=CFG).combined is Combined.CONSISTENT

    def test_block_and_complex(self):
        r = run_probe("block_crossnorm", criteria=["block_cauchy_like"], cfg=CFG, timestamp=False)
        assert r.combined is Combined.CONSISTENT and r.block_dims == (2, 3)
        assert run_probe("conj", cfg=CFG).combined is Combined.REFUTED

    def test_config_echo_and_seed(self, g2_report):
        assert g2_report.seed == 0
        assert g2_report.config["rho0"] == 0.5 and "workers" not in g2_report.config
        assert g2_report.timestamp is None


class TestCorpus:
    def test_default_all_match(self):
        s = run_corpus(CFG)
        assert s.all_match and s.strict_ok
        assert s.totals["mismatched"] == 0

    @pytest.mark.parametrize("overrides", [dict(rho0=0.25, lam=0.6, count=24, seed=5), dict(count=12),
                                           dict(lam=0.8, count=30, seed=1), dict(rho0=1.0, extra_dirs=32, seed=2)])
    def test_labels_hold_on_other_schedules(self, overrides):
        s = run_corpus(CFG.replace(**overrides))
        assert s.strict_ok, s.mismatches

    def test_absurd_ratio_floor(self):
        s = run_corpus(CFG.replace(ratio_floor=10.0))
        g2 = next(e for e in s.entries if e.function == "g2")
        assert g2.combined is Combined.INCONCLUSIVE
        assert not g2.match and "g2" in s.mismatches


class TestEmit:
    def test_json_round_trip(self, g2_report):
        data = emit_report(g2_report, "json")
        assert load_report(data) == g2_report
        doc = json.loads(data)
        for key in ("function", "point", "seed", "config", "criteria", "combined"):
            assert key in doc
        for c in doc["criteria"]:
            assert set(c["evidence_summary"]) == {"slope", "fit_quality", "ratio_tail"}
            assert {"name", "verdict", "worst_direction"} <= set(c)

    def test_csv_has_g2_diagonal_ratio(self, g2_report):
        rows = list(csv.DictReader(io.StringIO(emit_report(g2_report, "csv-evidence").decode())))
        assert list(rows[0]) == ["criterion", "context", "rho", "value", "ratio"]
        smallest = min(float(r["rho"]) for r in rows)
        hits = [r for r in rows if float(r["rho"]) == smallest and abs(float(r["ratio"]) - 1 / (2 * math.sqrt(2))) < 1e-6]
        assert hits

    def test_unsupported_format(self, g2_report):
        with pytest.raises(UsageError):
            emit_report(g2_report, "xml")

    def test_byte_stable(self):
        a = emit_report(run_probe("h_osc2", cfg=CFG, timestamp=False))
        b = emit_report(run_probe("h_osc2", cfg=CFG.replace(workers=3), timestamp=False))
        assert a == b


def test_surface():
    rows = surface_csv("g2", grid=3, extent=2.0).decode().splitlines()
    assert rows[0] == "x,y,f" and len(rows) == 10
    assert rows[-1] == "2.0,2.0,1.0"
    with pytest.raises(UsageError):
        surface_csv("h_osc3")
    with pytest.raises(UsageError):
        surface_csv("g2", grid=1)


class TestCli:
    def test_probe_exit_codes(self, capsys):
        assert main(["probe", "--fn", "linear_23", "--no-timestamp"]) == EXIT_OK
        assert main(["probe", "--fn", "g2", "--no-timestamp"]) == EXIT_REFUTED
        assert main(["probe", "--fn", "g2", "--criteria", "relaxed", "--no-timestamp"]) == EXIT_INCONCLUSIVE
        assert main(["probe", "--fn", "nope"]) == EXIT_USAGE
        assert main(["probe", "--fn", "g2", "--format", "xml"]) == EXIT_USAGE
        assert main(["probe", "--fn", "g2", "--criteria", ","]) == EXIT_USAGE
        capsys.readouterr()

    def test_parse_errors_are_usage(self, capsys):
        for argv in ([], ["probe"], ["probe", "--fn", "g2", "--count", "x"], ["frobnicate"]):
            with pytest.raises(SystemExit) as info:
                main(argv)
            assert info.value.code == EXIT_USAGE
        capsys.readouterr()

    def test_corpus(self, capsys):
        assert main(["corpus"]) == EXIT_OK
        assert "16/16" in capsys.readouterr().out
        assert main(["corpus", "--strict", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["totals"]["mismatched"] == 0
        assert main(["corpus", "--ratio-floor", "10"]) == EXIT_REFUTED
        capsys.readouterr()

    def test_list_and_surface(self, capsys):
        assert main(["list"]) == EXIT_OK
        assert "dirichlet_G" in capsys.readouterr().out
        assert main(["surface", "--fn", "g2", "--grid", "2"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("x,y,f")
        assert main(["surface", "--fn", "h_osc3"]) == EXIT_USAGE

    def test_block_probe(self, capsys):
        assert main(["block-probe", "--fn", "block_crosssqrt", "--criteria", "block_cauchy_like"]) == EXIT_REFUTED
        assert main(["block-probe", "--fn", "g2"]) == EXIT_USAGE
        capsys.readouterr()

    def test_json_output_matches_library(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        main(["probe", "--fn", "g2", "--no-timestamp", "-o", str(out)])
        assert out.read_bytes() == emit_report(run_probe("g2", cfg=CFG, timestamp=False))

    def test_config_file_and_env_precedence(self, capsys, tmp_path, monkeypatch):
        cfg_file = tmp_path / "probe.cfg"
        cfg_file.write_text("# overrides\nrho0 = 0.25\nseed = 5\nlambda = 0.6\n")
        assert load_config_file(cfg_file) == {"rho0": "0.25", "seed": "5", "lambda": "0.6"}
        monkeypatch.setenv("DIFFPROBE_SEED", "9")
        main(["probe", "--fn", "prod_xy", "--no-timestamp", "--criteria", "geo"])
        assert json.loads(capsys.readouterr().out)["seed"] == 9
        main(["probe", "--fn", "prod_xy", "--no-timestamp", "--criteria", "geo", "--config", str(cfg_file)])
        doc = json.loads(capsys.readouterr().out)
        assert doc["seed"] == 5 and doc["config"]["rho0"] == 0.25 and doc["config"]["lam"] == 0.6
        main(["probe", "--fn", "prod_xy", "--no-timestamp", "--criteria", "geo", "--config", str(cfg_file),
              "--seed", "3", "--rho0", "0.125"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["seed"] == 3 and doc["config"]["rho0"] == 0.125

    def test_bad_config(self, capsys, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("no equals sign here\n")
        assert main(["probe", "--fn", "g2", "--config", str(bad)]) == EXIT_USAGE
        bad.write_text("warp = 9\n")
        assert main(["probe", "--fn", "g2", "--config", str(bad)]) == EXIT_USAGE
        assert main(["probe", "--fn", "g2", "--config", str(tmp_path / "missing.cfg")]) == EXIT_USAGE
        capsys.readouterr()


def test_config_from_mapping():
    cfg = ProbeConfig.from_mapping({"lambda": "0.25", "diagonals": "no", "count": "12"})
    assert cfg.lam == 0.25 and cfg.diagonals is False and cfg.count == 12
    with pytest.raises(KeyError):
        ProbeConfig.from_mapping({"bogus": "1"})
    assert cfg.schedule().count == 12
