import dataclasses
import json
import shutil
import subprocess

import pytest

import fmnet.cli as cli
from fmnet.fixtures import coreboot_graphics_text

GOOD_DIMACS = "p cnf 2 1\n1 2 0\n"
VOID_DIMACS = "p cnf 1 2\n1 0\n-1 0\n"


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "coreboot_graphics.fm"
    path.write_text(coreboot_graphics_text(), "utf-8")
    return path


class TestAnalyze:
    def test_prints_summary(self, fixture_file, capsys):
        assert cli.main(["analyze", str(fixture_file)]) == cli.EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["model_id"] == "coreboot_graphics"
        assert payload["num_vars"] == 15

    def test_writes_artifacts(self, fixture_file, tmp_path, capsys):
        out = tmp_path / "artifacts"
        assert cli.main(["analyze", str(fixture_file), "--out", str(out)]) == cli.EXIT_OK
        assert (out / "coreboot_graphics" / "graphs.json").is_file()

    def test_format_override(self, tmp_path, capsys):
        path = tmp_path / "model.txt"
        path.write_text(GOOD_DIMACS, "utf-8")
        assert cli.main(["analyze", str(path), "--format", "dimacs"]) == cli.EXIT_OK

    def test_missing_file_is_input_error(self, tmp_path, capsys):
        missing = tmp_path / "nope.cnf"
        assert cli.main(["analyze", str(missing)]) == cli.EXIT_INPUT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_bad_syntax_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "bad.cnf"
        path.write_text("p cnf x\n", "utf-8")
        assert cli.main(["analyze", str(path)]) == cli.EXIT_INPUT_ERROR

    def test_void_model_exit_code(self, tmp_path, capsys):
        path = tmp_path / "void.cnf"
        path.write_text(VOID_DIMACS, "utf-8")
        assert cli.main(["analyze", str(path)]) == cli.EXIT_VOID_MODEL


class TestCorpus:
    def test_corpus_run(self, fixture_file, tmp_path, capsys):
        manifest = tmp_path / "manifest.csv"
        manifest.write_text(
            "id,path,format,domain\n"
            f"coreboot,{fixture_file.name},fm,systems\n",
            "utf-8",
        )
        out = tmp_path / "corpus-out"
        code = cli.main(["corpus", str(manifest), "--out", str(out)])
        assert code == cli.EXIT_OK
        assert (out / "corpus.csv").is_file()
        assert (out / "coreboot" / "summary.json").is_file()
        assert "analyzed 1 of 1" in capsys.readouterr().err

    def test_bad_manifest(self, tmp_path, capsys):
        manifest = tmp_path / "manifest.csv"
        manifest.write_text("id,path,format,domain\nx,ghost.fm,fm,d\n", "utf-8")
        assert cli.main(["corpus", str(manifest)]) == cli.EXIT_INPUT_ERROR


class TestExport:
    def test_rerenders_dot(self, fixture_file, tmp_path, capsys):
        out = tmp_path / "artifacts"
        cli.main(["analyze", str(fixture_file), "--out", str(out)])
        capsys.readouterr()
        code = cli.main([
            "export", str(out / "coreboot_graphics"), "--format", "dot"
        ])
        assert code == cli.EXIT_OK
        assert capsys.readouterr().out.startswith("digraph strong_graphs {")

    def test_missing_artifact_dir(self, tmp_path, capsys):
        assert (
            cli.main(["export", str(tmp_path), "--format", "dot"])
            == cli.EXIT_INPUT_ERROR
        )


class TestValidate:
    def test_clean_model_passes(self, fixture_file, capsys):
        assert cli.main(["validate", str(fixture_file)]) == cli.EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True
        assert payload["discrepancies"] == []
        assert payload["model_id"] == "coreboot_graphics"

    def test_void_model_exit_code(self, tmp_path, capsys):
        path = tmp_path / "void.cnf"
        path.write_text(VOID_DIMACS, "utf-8")
        assert cli.main(["validate", str(path)]) == cli.EXIT_VOID_MODEL

    def test_disagreement_exit_code(self, fixture_file, capsys, monkeypatch):
        # Corrupt the rebuilt artifact to exercise the failure path.
        real = cli.compute_strong_graphs

        def corrupted(formula):
            graphs = real(formula)
            victim = sorted(graphs.dep_arcs)[0]
            return dataclasses.replace(graphs, dep_arcs=graphs.dep_arcs - {victim})

        monkeypatch.setattr(cli, "compute_strong_graphs", corrupted)
        assert cli.main(["validate", str(fixture_file)]) == cli.EXIT_DISAGREEMENT
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is False
        assert len(payload["discrepancies"]) == 1


class TestOracle:
    def test_agreement(self, fixture_file, capsys):
        assert cli.main(["oracle", str(fixture_file)]) == cli.EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["agrees_with_extraction"] is True
        assert ["NO_GFX_INIT", "HAVE_VBE_LINEAR_FRAMEBUFFER"] in payload["arcs"]
        assert sorted(payload["core"]) == [
            "FRAMEBUFFER_MODE", "GFX_INITIALIZATION", "GRAPHICS"
        ]

    def test_var_limit(self, fixture_file, capsys):
        code = cli.main(["oracle", str(fixture_file), "--var-limit", "5"])
        assert code == cli.EXIT_INPUT_ERROR

    def test_disagreement_exit_code(self, fixture_file, capsys, monkeypatch):
        real = cli.extract_strong_relations

        def corrupted(formula):
            classification, relations = real(formula)
            return classification, {}

        monkeypatch.setattr(cli, "extract_strong_relations", corrupted)
        assert cli.main(["oracle", str(fixture_file)]) == cli.EXIT_DISAGREEMENT


class TestEntryPoint:
    def test_console_script_installed(self, fixture_file):
        executable = shutil.which("fmnet")
        assert executable, "console script should be on PATH after install"
        completed = subprocess.run(
            [executable, "analyze", str(fixture_file)],
            capture_output=True, text=True, timeout=60,
        )
        assert completed.returncode == 0
        assert json.loads(completed.stdout)["num_vars"] == 15
