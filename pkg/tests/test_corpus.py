import pytest

from biosimplify.corpus import (
    InputError,
    JsonlReport,
    guess_format,
    parse_config,
    read_corpus,
    read_link_file,
)


def test_text_corpus_ids(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("first.\n\n  \nsecond.\n", encoding="utf-8")
    assert [(s.id, s.text) for s in read_corpus(path)] == [("L1", "first."), ("L4", "second.")]


def test_guess_format():
    assert guess_format("a.jsonl") == "jsonl" and guess_format("a.txt") == "text"
    assert guess_format("a.txt", "jsonl") == "jsonl"


def test_jsonl_lenient_counts(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"id": "a", "text": "x."}\n[1]\n{"text": "y"}\n', encoding="utf-8")
    report = JsonlReport()
    assert [s.id for s in read_corpus(path, strict=False, report=report)] == ["a"]
    assert report.skipped == 2
    with pytest.raises(InputError) as err:
        read_corpus(path)
    assert err.value.line == 2


def test_link_file(tmp_path):
    path = tmp_path / "l.tsv"
    path.write_text("# header\nS1\tS\t1\tbinds\t0\tp53\n\nS1\tO\t1\tbinds\t2\tDNA\n", encoding="utf-8")
    rows = read_link_file(path)["S1"]
    assert [(r.link_type, r.head_index, r.dep_index, r.line) for r in rows] == [
        ("S", 1, 0, 2), ("O", 1, 2, 4)]
    for bad in ("S1\tS\t1\tbinds\t0\n", "S1\tS\tx\tb\t0\td\n", "S1\t\t1\tb\t0\td\n", "S1\tS\t-1\tb\t0\td\n"):
        path.write_text(bad, encoding="utf-8")
        with pytest.raises(InputError):
            read_link_file(path)


def test_parse_config(tmp_path):
    (tmp_path / "ind.txt").write_text("summary\n", encoding="utf-8")
    path = tmp_path / "run.cfg"
    path.write_text("# comment\nsplit_threshold_words = 20  # inline\nstrip_parentheticals = off\n"
                    "section_indicator_file = ind.txt\noracle = external\noracle_cmd = cat\n"
                    "oracle_timeout = 2.5\nentity_prefix = PROT\n", encoding="utf-8")
    cfg = parse_config(path)
    assert cfg.split_threshold_words == 20 and not cfg.strip_parentheticals
    assert cfg.section_indicator_list == ("SUMMARY",)
    assert (cfg.oracle.kind, cfg.oracle.command, cfg.oracle.timeout) == ("external", "cat", 2.5)
    assert cfg.entity_prefix == "PROT"
    for bad in ("nonsense\n", "split_threshold_words = many\n", "preprocess = maybe\n",
                "split_min_commas = 0\n", "unknown = 1\n"):
        path.write_text(bad, encoding="utf-8")
        with pytest.raises(InputError):
            parse_config(path)
