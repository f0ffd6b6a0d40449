"""Command-line interface: exit codes, outputs, config precedence."""

import json
import subprocess
import sys

import pytest

from interset import __version__
from interset.cli import main


def _scores_by_metric(path):
    lines = path.read_text().splitlines()[1:]
    return {tuple(l.split(",")[:2]): l.split(",")[2] for l in lines}


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == f"interset {__version__}"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "interset", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert __version__ in proc.stdout


def test_usage_errors_exit_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["score", "--out", str(tmp_path)])  # missing --input
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["score", "--input", "x", "--out", "y", "--membership", "bogus"])
    assert exc.value.code == 2


def test_missing_dataset_exit_1(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code = main(["link", "--input", str(empty), "--out", str(tmp_path / "out")])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "users_a.jsonl" in err


def test_link_command(a1_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["link", "--input", str(a1_dir), "--out", str(out)]) == 0
    assert (out / "links.csv").read_text().splitlines() == [
        "dev_id,a_user_id,b_user_id",
        "d000000,gh1,so1",
    ]
    assert (out / "ambiguities.csv").read_text().splitlines() == [
        "email_md5,a_user_ids,b_user_ids"
    ]


def test_extract_command(a1_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["extract", "--input", str(a1_dir), "--out", str(out)]) == 0
    rows = [json.loads(l) for l in (out / "interests.jsonl").read_text().splitlines()]
    assert rows[0] == {"item_id": "A", "platform": "a", "tags": ["android", "java"]}
    assert len(rows) == 6


def test_score_selection(a1_dir, tmp_path):
    full, cross_only = tmp_path / "full", tmp_path / "cross"
    assert main(["score", "--input", str(a1_dir), "--out", str(full)]) == 0
    assert main(["score", "cross", "--input", str(a1_dir), "--out", str(cross_only)]) == 0
    all_rows = _scores_by_metric(full / "scores.csv")
    cross_rows = _scores_by_metric(cross_only / "scores.csv")
    assert len(all_rows) == 19
    assert set(cross_rows) == {("d000000", "cross")}
    assert cross_rows[("d000000", "cross")] == "0.666667"
    assert all_rows[("d000000", "cross")] == "0.666667"


def test_config_precedence(a1_dir, tmp_path, capsys):
    key = ("d000000", "pair:watch:ask")
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"empty_pair_policy": "zero"}))

    o1 = tmp_path / "o1"
    assert main(["score", "--input", str(a1_dir), "--out", str(o1)]) == 0
    assert _scores_by_metric(o1 / "scores.csv")[key] == "undefined"

    o2 = tmp_path / "o2"
    assert main(["score", "--input", str(a1_dir), "--out", str(o2), "--config", str(cfg)]) == 0
    assert _scores_by_metric(o2 / "scores.csv")[key] == "0.000000"

    o3 = tmp_path / "o3"
    code = main(
        [
            "score",
            "--input",
            str(a1_dir),
            "--out",
            str(o3),
            "--config",
            str(cfg),
            "--empty-pair-policy",
            "undefined",
        ]
    )
    assert code == 0
    assert _scores_by_metric(o3 / "scores.csv")[key] == "undefined"


@pytest.mark.parametrize(
    "content,message",
    [
        ("{not json", "malformed JSON"),
        ('{"memberships": "subset"}', "unknown config keys"),
        ('["list"]', "must be a JSON object"),
    ],
)
def test_bad_config_exit_1(a1_dir, tmp_path, capsys, content, message):
    cfg = tmp_path / "config.json"
    cfg.write_text(content)
    code = main(
        ["score", "--input", str(a1_dir), "--out", str(tmp_path / "out"), "--config", str(cfg)]
    )
    assert code == 1
    assert message in capsys.readouterr().err


def test_missing_config_exit_1(a1_dir, tmp_path, capsys):
    code = main(
        [
            "score",
            "--input",
            str(a1_dir),
            "--out",
            str(tmp_path / "out"),
            "--config",
            str(tmp_path / "nope.json"),
        ]
    )
    assert code == 1
    assert "file not found" in capsys.readouterr().err


def test_threads_flag_does_not_change_output(a1_dir, tmp_path):
    o1, o4 = tmp_path / "t1", tmp_path / "t4"
    assert main(["score", "--input", str(a1_dir), "--out", str(o1)]) == 0
    assert main(["score", "--input", str(a1_dir), "--out", str(o4), "--threads", "4"]) == 0
    assert (o1 / "scores.csv").read_bytes() == (o4 / "scores.csv").read_bytes()


def test_report_command(a1_dir, tmp_path):
    scored = tmp_path / "scored"
    assert main(["score", "--input", str(a1_dir), "--out", str(scored)]) == 0
    out = tmp_path / "report"
    assert main(["report", "--scores", str(scored / "scores.csv"), "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["cross"]["n_defined"] == 1
    assert (out / "plotdata" / "hist_cross.csv").exists()
    assert (out / "plotdata" / "box_cross.csv").exists()
    # no defined co scores for a single developer: histogram only
    assert not (out / "plotdata" / "box_co_watch.csv").exists()


def test_report_missing_scores_exit_1(tmp_path, capsys):
    code = main(["report", "--scores", str(tmp_path / "none.csv"), "--out", str(tmp_path)])
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")


def test_all_matches_composed_stages(a1_dir, tmp_path):
    one = tmp_path / "one"
    assert main(["all", "--input", str(a1_dir), "--out", str(one)]) == 0

    staged = tmp_path / "staged"
    assert main(["link", "--input", str(a1_dir), "--out", str(staged)]) == 0
    assert main(["extract", "--input", str(a1_dir), "--out", str(staged)]) == 0
    assert main(["score", "--input", str(a1_dir), "--out", str(staged)]) == 0
    assert (
        main(["report", "--scores", str(staged / "scores.csv"), "--out", str(staged)]) == 0
    )

    for name in ("links.csv", "ambiguities.csv", "interests.jsonl", "scores.csv", "summary.json"):
        assert (one / name).read_bytes() == (staged / name).read_bytes(), name
    plots_one = sorted(p.name for p in (one / "plotdata").iterdir())
    plots_staged = sorted(p.name for p in (staged / "plotdata").iterdir())
    assert plots_one == plots_staged
    for name in plots_one:
        assert (one / "plotdata" / name).read_bytes() == (
            staged / "plotdata" / name
        ).read_bytes(), name


def test_all_is_idempotent(a1_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["all", "--input", str(a1_dir), "--out", str(out)]) == 0
    first = {
        p.relative_to(out): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()
    }
    assert main(["all", "--input", str(a1_dir), "--out", str(out)]) == 0
    second = {
        p.relative_to(out): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()
    }
    assert first == second


def test_oracle_check_command(a1_dir, capsys):
    assert main(["oracle-check", "--input", str(a1_dir)]) == 0
    assert capsys.readouterr().out.strip() == "0 mismatches across 19 scores"


def test_oracle_check_cap_error(a1_dir, capsys):
    code = main(["oracle-check", "--input", str(a1_dir), "--max-developers", "0"])
    assert code == 1
    assert "oracle cap" in capsys.readouterr().err


def test_generate_command(tmp_path, capsys):
    spec = {
        "n_developers": 6,
        "n_repos": 12,
        "n_questions": 12,
        "vocab_size": 8,
        "tags_per_item": [1, 2],
        "activities_per_dev": {"fork": [1, 2], "answer": [1, 2]},
        "overlap_p": 0.5,
        "seed": 4,
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    out = tmp_path / "ds"
    assert main(["generate", "--spec", str(spec_path), "--out", str(out)]) == 0
    assert main(["oracle-check", "--input", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "0 mismatches across 114 scores"

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({**spec, "vocab_size": 1}))
    code = main(["generate", "--spec", str(bad), "--out", str(tmp_path / "ds2")])
    assert code == 1
    assert "vocab_size" in capsys.readouterr().err
