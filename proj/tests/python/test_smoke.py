import os
import subprocess

import pytest

import biomine


def page(title, wpid, text):
    return (
        f"<page><title>{title}</title><ns>0</ns><id>{wpid}</id>"
        f'<revision><text xml:space="preserve">{text}</text></revision></page>\n'
    )


def dump(pages):
    return "<mediawiki>\n<siteinfo><sitename>T</sitename></siteinfo>\n" + "".join(pages) + "</mediawiki>\n"


EN = [
    "Ada Lovelace was an English mathematician and writer.",
    "She worked on the Analytical Engine of Charles Babbage.",
    "Her notes contain the first published algorithm for a machine.",
]
ES = [
    "Ada Lovelace fue una matemática y escritora inglesa.",
    "Ella trabajó en la máquina analítica de Charles Babbage.",
    "Sus notas contienen el primer algoritmo publicado para una máquina.",
]


def test_embed_is_unit_norm_and_deterministic():
    v = biomine.embed("Ada Lovelace", 256)
    assert len(v) == 256
    assert abs(sum(x * x for x in v) - 1.0) < 1e-9
    assert v == biomine.embed("Ada Lovelace", 256)


def test_mine_pairs_recovers_identity():
    vectors = [biomine.embed(s, 512) for s in EN]
    pairs = biomine.mine_pairs(vectors, vectors, k=2, threshold=0.0)
    assert sorted((s, t) for s, t, _, _ in pairs) == [(0, 0), (1, 1), (2, 2)]


def test_gender_and_length_filter():
    text = ("She teaches classics at the University of Bayonne; she was co-founder "
            "of the literary magazine and a new newspaper.")
    assert biomine.classify_gender(text, "en") == biomine.Gender.FEMALE
    assert biomine.classify_gender("No pronouns here.", "en") == biomine.Gender.UNKNOWN
    assert biomine.length_filter(["a" * 100, "b" * 120]) == "keep"
    assert biomine.length_filter(["a" * 100, "b" * 121]) == "length_ratio"
    with pytest.raises(biomine.InvalidArgument):
        biomine.classify_gender(text, "xx")


def test_corpus_round_trip_and_balance():
    docs = []
    for i, (gender, n) in enumerate([(biomine.Gender.MALE, 5), (biomine.Gender.FEMALE, 2)]):
        d = biomine.Document()
        d.docid = f"Doc {i}"
        d.wpid = i + 1
        d.language = "en"
        d.gender = gender
        d.title = d.docid
        d.segments = [biomine.Segment(j + 1, f"Sentence {j}.") for j in range(n)]
        docs.append(d)
    xml = biomine.corpus_xml_string(docs, "en")
    assert biomine.read_corpus_xml_string(xml) == docs
    balanced = biomine.balance(docs)
    stats = biomine.compute_stats(balanced, "en")
    assert stats.at(biomine.Gender.MALE).sentences == 2
    assert stats.at(biomine.Gender.FEMALE).sentences == 2
    assert "Documents" in biomine.format_stats_report([stats])
    with pytest.raises(biomine.ParseError):
        biomine.read_corpus_xml_string("<corpus><doc docid='x'></corpus>")


def test_segment_and_strip():
    assert biomine.strip_markup("'''Ada''' met [[Charles Babbage|Babbage]].") == "Ada met Babbage."
    assert biomine.segment("Dr. Smith left. He came back.", "en") == ["Dr. Smith left.", "He came back."]


def write_fixture(tmp_path):
    en_text = " ".join(EN) + " [[es:Ada Lovelace]]"
    es_text = " ".join(ES)
    (tmp_path / "en.xml").write_text(dump([page("Ada Lovelace", 1, en_text)]), encoding="utf-8")
    (tmp_path / "es.xml").write_text(dump([page("Ada Lovelace", 2, es_text)]), encoding="utf-8")
    (tmp_path / "titles.txt").write_text("Ada Lovelace\n", encoding="utf-8")


def test_run_pipeline(tmp_path):
    write_fixture(tmp_path)
    summary = biomine.run_pipeline(
        ["en", "es"],
        {"en": tmp_path / "en.xml", "es": tmp_path / "es.xml"},
        tmp_path / "out",
        titles=tmp_path / "titles.txt",
        dimension=512,
        threshold=0.0,
        balance="off",  # a single biography cannot be gender balanced
        workers=1,
    )
    assert summary["complete_entries"] == 1
    en_docs = biomine.read_corpus_xml(summary["corpus_files"]["en"])
    es_docs = biomine.read_corpus_xml(summary["corpus_files"]["es"])
    assert [d.docid for d in en_docs] == [d.docid for d in es_docs] == ["Ada Lovelace"]
    assert len(en_docs[0].segments) == len(es_docs[0].segments) > 0
    assert en_docs[0].gender == biomine.Gender.FEMALE


@pytest.mark.skipif(not os.environ.get("BIOMINE_CLI"), reason="CLI path not provided")
def test_cli_extract(tmp_path):
    write_fixture(tmp_path)
    cli = os.environ["BIOMINE_CLI"]
    run = subprocess.run(
        [cli, "extract", "--languages", "en,es", "--dump", f"en={tmp_path / 'en.xml'}",
         "--dump", f"es={tmp_path / 'es.xml'}", "--titles", str(tmp_path / "titles.txt"),
         "--threshold", "0", "--balance", "off", "--dim", "512", "-o", str(tmp_path / "cli")],
        capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    assert (tmp_path / "cli" / "corpus.es.xml").exists()
    bad = subprocess.run([cli, "extract", "--languages", "en"], capture_output=True)
    assert bad.returncode == 1
