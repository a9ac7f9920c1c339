import json
import shlex
import sys

import pytest

from biosimplify.cli import main

HEADLINE = ("The Huntington's disease protein interacts with p53 and CREB-binding protein "
            "and represses transcription.")


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "in.txt"
    path.write_text(HEADLINE + "\n\nRESULTS: p53 binds (Fig. 2).\n", encoding="utf-8")
    return path


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]


def test_simplify_writes_records_and_manifest(tmp_path, corpus, headline_gazetteer):
    out = tmp_path / "out.jsonl"
    assert main(["simplify", "--in", str(corpus), "--out", str(out),
                 "--gazetteer", str(headline_gazetteer)]) == 0
    recs = read_jsonl(out)
    assert [r["text"] for r in recs] == [
        "GENE1 interacts with GENE2 and GENE3 and represses transcription.", "GENE1 binds."]
    assert [r["id"] for r in recs] == ["L1.1", "L3.1"]
    manifest = json.loads((tmp_path / "out.jsonl.manifest.json").read_text())
    assert manifest["input_sentences"] == 2 and manifest["output_sentences"] == 2
    assert manifest["stage_counts"]["ENTITY"] == 2 and manifest["stage_counts"]["PREPROCESS"] == 1


def test_simplify_flags(tmp_path, corpus, capsys):
    assert main(["simplify", "--in", str(corpus), "--no-entities", "--keep-parens",
                 "--no-np", "--no-split"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert lines[1]["text"] == "p53 binds (Fig. 2)."


def test_simplify_needs_gazetteer(corpus, capsys):
    assert main(["simplify", "--in", str(corpus)]) == 2
    assert "gazetteer" in capsys.readouterr().err
    assert main(["simplify", "--in", str(corpus), "--gazetteer", "/no/such"]) == 2


def test_usage_errors(tmp_path):
    assert main([]) == 2
    assert main(["simplify", "--bogus"]) == 2
    assert main(["simplify", "--in", str(tmp_path / "missing.txt"), "--no-entities"]) == 2
    assert main(["simplify", "--in", "x", "--no-entities", "--split-threshold", "0"]) == 2


def test_strict_and_lenient_jsonl(tmp_path, capsys):
    path = tmp_path / "in.jsonl"
    path.write_text('{"id": "a", "text": "p53 binds."}\nnot json\n{"id": 3}\n', encoding="utf-8")
    assert main(["simplify", "--in", str(path), "--no-entities"]) == 2
    assert "in.jsonl:2" in capsys.readouterr().err
    out = tmp_path / "out.jsonl"
    assert main(["simplify", "--in", str(path), "--no-entities", "--lenient", "--out", str(out)]) == 0
    assert [r["id"] for r in read_jsonl(out)] == ["a.1"]
    assert json.loads((tmp_path / "out.jsonl.manifest.json").read_text())["skipped_lines"] == 2


def test_config_file(tmp_path, corpus, headline_gazetteer):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"gazetteer_path = {headline_gazetteer}\nnoun_phrases = no\n"
                   "oracle = heuristic\nsplit_threshold_words = 40\n", encoding="utf-8")
    out = tmp_path / "o.jsonl"
    assert main(["simplify", "--in", str(corpus), "--config", str(cfg), "--out", str(out)]) == 0
    assert read_jsonl(out)[0]["text"].startswith("GENE1 interacts")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n", encoding="utf-8")
    assert main(["simplify", "--in", str(corpus), "--config", str(bad)]) == 2


def test_stats_before_after(tmp_path, corpus, headline_gazetteer, capsys):
    out = tmp_path / "out.jsonl"
    main(["simplify", "--in", str(corpus), "--out", str(out), "--gazetteer", str(headline_gazetteer)])
    js = tmp_path / "stats.json"
    assert main(["stats", "--before", str(corpus), "--after", str(out), "--json", str(js)]) == 0
    text = capsys.readouterr().out
    assert "Words/sentence" in text and "% drop" in text
    data = json.loads(js.read_text())
    assert data["before"]["word_count"] > data["after"]["word_count"]
    assert main(["stats", "--in", str(corpus)]) == 0
    assert main(["stats", "--before", str(corpus)]) == 2
    empty = tmp_path / "empty.txt"
    empty.write_text("\n", encoding="utf-8")
    assert main(["stats", "--in", str(empty)]) == 2


def test_restore(tmp_path, corpus, headline_gazetteer):
    out = tmp_path / "out.jsonl"
    main(["simplify", "--in", str(corpus), "--out", str(out), "--gazetteer", str(headline_gazetteer),
          "--no-preprocess"])
    restored = tmp_path / "r.txt"
    assert main(["restore", "--in", str(out), "--out", str(restored)]) == 0
    assert restored.read_text().splitlines()[0] == HEADLINE
    broken = tmp_path / "broken.jsonl"
    broken.write_text('{"id": "a.1", "text": "GENE7 binds."}\n', encoding="utf-8")
    assert main(["restore", "--in", str(broken)]) == 2


def test_eval(tmp_path, capsys):
    gold = tmp_path / "gold.tsv"
    gold.write_text("# id\ttype\thead\thtext\tdep\tdtext\n"
                    "S1\tS\t1\tbinds\t0\tp53\nS1\tO\t1\tbinds\t2\tDNA\n", encoding="utf-8")
    pred = tmp_path / "pred.tsv"
    pred.write_text("S1\tS\t1\tbinds\t0\tp53\n", encoding="utf-8")
    js = tmp_path / "e.json"
    assert main(["eval", "--gold", str(gold), "--pred", str(pred), "--json", str(js),
                 "--system", "CM"]) == 0
    out = capsys.readouterr().out
    assert "100.00%" in out and "50.00%" in out and "66.67%" in out
    assert json.loads(js.read_text())["macro_recall"] == 0.5
    pred.write_text("S1\tS\tx\tbinds\t0\tp53\n", encoding="utf-8")
    assert main(["eval", "--gold", str(gold), "--pred", str(pred)]) == 2
    pred.write_text("S9\tS\t1\tbinds\t0\tp53\n", encoding="utf-8")
    assert main(["eval", "--gold", str(gold), "--pred", str(pred)]) == 2
    assert main(["eval", "--gold", str(gold), "--pred", str(pred), "--lenient"]) == 0


def test_eval_with_alignment(tmp_path, headline_gazetteer, capsys):
    corpus = tmp_path / "in.jsonl"
    corpus.write_text(json.dumps({"id": "S1", "text": HEADLINE}) + "\n", encoding="utf-8")
    out = tmp_path / "out.jsonl"
    main(["simplify", "--in", str(corpus), "--out", str(out), "--gazetteer", str(headline_gazetteer)])
    gold = tmp_path / "gold.tsv"
    gold.write_text("S1\tS\t4\tinteracts\t3\tprotein\nS1\tD\t3\tprotein\t0\tThe\n", encoding="utf-8")
    pred = tmp_path / "pred.tsv"
    pred.write_text("S1.1\tS\t1\tinteracts\t0\tGENE1\n", encoding="utf-8")
    assert main(["eval", "--gold", str(gold), "--pred", str(pred), "--align", str(out)]) == 0
    assert capsys.readouterr().out.count("100.00%") == 3
    pred.write_text("S1.1\tS\t40\tinteracts\t0\tGENE1\n", encoding="utf-8")
    assert main(["eval", "--gold", str(gold), "--pred", str(pred), "--align", str(out)]) == 2


def test_external_oracle_flag(tmp_path, corpus, capsys):
    script = tmp_path / "o.py"
    script.write_text("import sys\nfor l in sys.stdin:\n    print('1', flush=True)\n", encoding="utf-8")
    cmd = f"{shlex.quote(sys.executable)} {shlex.quote(str(script))}"
    src = tmp_path / "long.txt"
    src.write_text("a b, c d, e f.\n", encoding="utf-8")
    assert main(["simplify", "--in", str(src), "--no-entities", "--no-np", "--oracle", "external",
                 "--oracle-cmd", cmd, "--split-threshold", "1", "--split-min-commas", "1"]) == 0
    texts = [json.loads(x)["text"] for x in capsys.readouterr().out.splitlines()]
    assert texts == ["a b.", "c d.", "e f."]
    assert main(["simplify", "--in", str(src), "--no-entities", "--oracle", "external",
                 "--oracle-cmd", str(tmp_path / "nope")]) == 2
