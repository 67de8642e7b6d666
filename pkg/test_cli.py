#!/usr/bin/env python3
"""
Tests for run manifests and the command-line surface: exit codes, report
files and reproducible archives.
"""

import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from src.cli.manifest import parse_manifest
from src.instances import INF, Elementary
from src.main import cli
from src.utils.errors import ManifestError

AMALGAM_MANIFEST = """\
# two embeddings E_1 -> E_6 with no amalgam among embeddings
command amalgamate
category e_inf_embeddings
depth 0
bound 12
object A elementary n=1
morphism alpha1 elementary n=1 m=6 k=4
morphism alpha2 elementary n=1 m=6 k=5
param m_max 12
"""


@pytest.fixture
def runner(quiet_env):
    return CliRunner()


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


# ===== Manifests =====

def test_manifest_declarations():
    manifest = parse_manifest(
        "command amalgamate\n"
        "category s_p p=3\n"
        "seed 2\n"
        "object A elementary n=1\n"
        "morphism a1 elementary n=1 m=6 k=4   # embedding\n"
        "set F A 0 1 inf\n"
        "param eps 1/4\n"
    )
    assert manifest.command == "amalgamate"
    assert manifest.category_params == {"p": 3}
    assert manifest.seed == 2
    assert manifest.objects["A"] == Elementary(1)
    assert manifest.morphism("a1").k == 4
    assert set(manifest.sets["F"]) == {0, 1, INF}
    assert manifest.param("eps") == Fraction(1, 4)
    assert manifest.build_category().name == "s_3"


def test_unknown_statement_points_at_its_head():
    with pytest.raises(ManifestError) as info:
        parse_manifest("command fraisse\ncategory e_inf\n  bogus 1\n")
    assert (info.value.line, info.value.column) == (3, 3)


def test_bad_option_value_points_at_the_value():
    with pytest.raises(ManifestError) as info:
        parse_manifest("object A elementary n=x\n")
    assert (info.value.line, info.value.column) == (1, 23)


def test_undeclared_references_are_rejected():
    with pytest.raises(ManifestError):
        parse_manifest("morphism i identity object=B\n")
    with pytest.raises(ManifestError):
        parse_manifest("command teleport\n")
    with pytest.raises(ManifestError):
        parse_manifest("object A extnat\nobject A extnat\n")


# ===== Exit codes =====

def test_bad_manifest_is_an_input_error(runner, quiet_env):
    path = _write(quiet_env / "bad.manifest", "command check\nbogus\n")
    result = runner.invoke(cli, ["run", "--manifest", path])
    assert result.exit_code == 3
    assert result.output.startswith("== run: input error")


def test_manifest_without_a_command_cannot_run(runner, quiet_env):
    path = _write(quiet_env / "empty.manifest", "category e_inf\n")
    assert runner.invoke(cli, ["run", "--manifest", path]).exit_code == 3


def test_malformed_param_flag_is_an_input_error(runner):
    result = runner.invoke(cli, ["enumerate", "--param", "n"])
    assert result.exit_code == 3


def test_check_passes_and_fails(runner, quiet_env):
    good = _write(quiet_env / "good.manifest", "object A extnat\n")
    assert runner.invoke(cli, ["check", "--manifest", good, "--depth", "1"]).exit_code == 0
    bad = _write(quiet_env / "bad.manifest", "morphism b elementary n=1 m=2 k=1\n")
    result = runner.invoke(cli, ["check", "--manifest", bad, "--depth", "0"])
    assert result.exit_code == 1
    assert result.output.startswith("== check: fail")


def test_enumerate_agrees_with_brute_force(runner, quiet_env):
    result = runner.invoke(cli, ["enumerate", "--param", "n=1", "--param", "m=2", "--param", "up_to=3"])
    assert result.exit_code == 0
    data = json.loads((quiet_env / "runs" / "enumerate.json").read_text())
    assert data["discrepancies"] == []
    assert data["images"] == [0, 2, "inf"]


def test_run_dispatches_on_the_manifest_command(runner, quiet_env):
    path = _write(quiet_env / "enum.manifest", "command enumerate\nparam n 1\nparam m 2\n")
    result = runner.invoke(cli, ["run", "--manifest", path])
    assert result.exit_code == 0
    assert (quiet_env / "runs" / "enumerate.txt").exists()


def test_exhausted_amalgam_carries_a_certificate(runner, quiet_env):
    path = _write(quiet_env / "amalgam.manifest", AMALGAM_MANIFEST)
    result = runner.invoke(cli, ["amalgamate", "--manifest", path])
    assert result.exit_code == 2
    assert result.output.startswith("== amalgamate: exhausted")
    data = json.loads((quiet_env / "runs" / "amalgamate.json").read_text())
    assert data["certificate"]["passed"] is True
    assert data["certificate"]["holds_for_all"] is True


def test_counterexample_metric(runner, quiet_env):
    result = runner.invoke(cli, ["metric", "--param", "n_max=64", "--depth", "1"])
    assert result.exit_code == 0
    data = json.loads((quiet_env / "runs" / "metric.json").read_text())
    assert data["constant_half"] is True
    assert data["compares_from"] == 2
    assert len(data["table"]) == 63


def test_soft_geometric_limit(runner, quiet_env):
    result = runner.invoke(cli, ["limit", "--param", "sequence=soft_geometric", "--depth", "1"])
    assert result.exit_code == 0
    assert result.output.startswith("== limit: pass")


def test_unknown_example_is_an_input_error(runner):
    assert runner.invoke(cli, ["metric", "--param", "example=zeta"]).exit_code == 3


# ===== Archives =====

def _fraisse(runner, out):
    return runner.invoke(
        cli,
        ["fraisse", "--category", "e_inf", "--param", "steps=6", "--depth", "1", "--bound", "8", "--out", str(out)],
    )


def test_fraisse_archive_replays(runner, quiet_env):
    out = quiet_env / "first"
    result = _fraisse(runner, out)
    assert result.exit_code == 0
    archive = out / "prefix.json"
    assert json.loads(archive.read_text())["bound"] == 8
    replayed = runner.invoke(cli, ["replay", "--replay", str(archive), "--out", str(quiet_env / "replay")])
    assert replayed.exit_code == 0
    assert replayed.output.startswith("== replay: pass")
    assert json.loads((quiet_env / "replay" / "replay.json").read_text())["replay"]["matches_rebuild"] is None
    rebuilt = runner.invoke(cli, ["replay", "--replay", str(archive), "--rebuild", "--out", str(quiet_env / "rebuilt")])
    assert rebuilt.exit_code == 0
    assert json.loads((quiet_env / "rebuilt" / "replay.json").read_text())["replay"]["matches_rebuild"] is True


def test_identical_runs_write_identical_reports(runner, quiet_env):
    first, second = quiet_env / "a", quiet_env / "b"
    assert _fraisse(runner, first).exit_code == 0
    assert _fraisse(runner, second).exit_code == 0
    for name in ("fraisse.json", "prefix.json", "fraisse.txt"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
