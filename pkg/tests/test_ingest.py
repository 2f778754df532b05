import pytest
from hypothesis import given, strategies as st

from entiscope.ingest import (
    Document,
    IngestError,
    RawCorpus,
    html_to_text,
    normalize_whitespace,
    read_document,
    segment_sentences,
    text_document,
    write_document,
)


def segmented(text: str) -> Document:
    return segment_sentences(text_document("t", text))


class TestHtmlToText:
    def test_concatenates_pages_with_space(self):
        doc = html_to_text(RawCorpus("d", ["<p>Hello</p>", "<p>world</p>"]))
        assert doc.text == "Hello world"

    def test_strip_page_numbers_drops_bare_integer_lines(self):
        page = "<div>Some text</div>\n417\n<div>More text</div>"
        doc = html_to_text(RawCorpus("d", [page]), strip_page_numbers=True)
        assert "417" not in doc.text
        assert doc.text == "Some text More text"

    def test_page_numbers_kept_without_flag(self):
        page = "<div>Some text</div>\n417\n<div>More text</div>"
        doc = html_to_text(RawCorpus("d", [page]), strip_page_numbers=False)
        assert "417" in doc.text

    def test_tag_removal_only(self):
        doc = html_to_text(RawCorpus("d", ["<b>A</b>"]), strip_page_numbers=False)
        assert doc.text == "A"

    def test_script_and_style_content_removed(self):
        page = "<script>var x = 1;</script><style>p {}</style><p>kept</p>"
        doc = html_to_text(RawCorpus("d", [page]))
        assert doc.text == "kept"

    def test_unbalanced_markup_tolerated(self):
        doc = html_to_text(RawCorpus("d", ["<p>open <b>bold<p>next"]))
        assert "open" in doc.text and "bold" in doc.text and "next" in doc.text

    def test_no_angle_brackets_from_tags(self):
        page = "<div class='x'><span>a</span> &lt;escaped&gt; b</div>"
        doc = html_to_text(RawCorpus("d", [page]))
        # Entity-escaped brackets in content survive; tag syntax does not.
        assert doc.text == "a <escaped> b"

    def test_empty_corpus_rejected(self):
        with pytest.raises(IngestError, match="empty input"):
            html_to_text(RawCorpus("d", []))

    def test_undecodable_bytes_error_names_page(self):
        with pytest.raises(IngestError, match="page 1"):
            html_to_text(RawCorpus("d", ["<p>ok</p>", b"\xff\xfe\x9d"]))

    @given(st.lists(st.tuples(
        st.sampled_from(["p", "div", "b", "li", "span", "h1"]),
        st.text(alphabet="abc 12\n", max_size=20),
    ), min_size=1, max_size=10))
    def test_tag_syntax_never_leaks(self, parts):
        page = "".join(f"<{tag}>{content}</{tag}>" for tag, content in parts)
        doc = html_to_text(RawCorpus("d", [page]))
        assert "<" not in doc.text and ">" not in doc.text

    def test_wrong_source_kind_rejected(self):
        with pytest.raises(IngestError):
            html_to_text(RawCorpus("d", ["text"], source_kind="plain_text"))


class TestNormalizeWhitespace:
    def test_collapses_mixed_whitespace(self):
        assert normalize_whitespace("a\n\nb\tc") == "a b c"

    def test_identity_on_normal_text(self):
        assert normalize_whitespace("abc") == "abc"

    def test_trims_ends(self):
        assert normalize_whitespace("  x  ") == "x"

    @given(st.text())
    def test_idempotent(self, text):
        once = normalize_whitespace(text)
        assert normalize_whitespace(once) == once

    @given(st.text())
    def test_no_double_spaces_or_newlines(self, text):
        out = normalize_whitespace(text)
        assert "  " not in out and "\n" not in out and "\t" not in out


class TestSegmentSentences:
    def test_canonical_split(self):
        doc = segmented("A fell. B rose.")
        assert [s.text for s in doc.sentences] == ["A fell.", "B rose."]

    def test_abbreviation_guard(self):
        # Hand-checked against the default abbreviation list: "Mr" guards
        # the period, so this stays one sentence.
        doc = segmented("Mr. Smith spoke.")
        assert len(doc.sentences) == 1

    def test_empty_text(self):
        assert segmented("").sentences == []

    def test_initial_guard(self):
        doc = segmented("John F. Kennedy spoke. He left.")
        assert [s.text for s in doc.sentences] == ["John F. Kennedy spoke.", "He left."]

    def test_dotted_abbreviation(self):
        doc = segmented("The U.S. Senate met.")
        assert len(doc.sentences) == 1

    def test_split_before_digit(self):
        doc = segmented("It fell. 2008 was worse.")
        assert len(doc.sentences) == 2

    def test_question_and_exclamation(self):
        doc = segmented("What happened? Markets fell! Then silence.")
        assert len(doc.sentences) == 3

    def test_offsets_cover_text(self):
        doc = segmented("A fell. B rose. C stayed.")
        for s in doc.sentences:
            assert doc.text[s.start_char : s.end_char] == s.text
            assert s.start_char < s.end_char
        starts = [s.start_char for s in doc.sentences]
        assert starts == sorted(starts)

    def test_rejoin_equals_document_text(self):
        for text in [
            "A fell. B rose.",
            "One sentence only",
            "Mr. Smith spoke. Then Dr. Jones replied! Done?",
            "Numbers like 2008 appear. 1999 too.",
        ]:
            doc = segmented(text)
            assert " ".join(s.text for s in doc.sentences) == doc.text

    @given(st.lists(st.sampled_from(
        ["Alpha fell.", "Beta rose!", "Gamma stayed?", "Mr. Smith spoke.",
         "It was 2008.", "The U.S. Senate met."]), min_size=0, max_size=8))
    def test_rejoin_property(self, parts):
        doc = segmented(" ".join(parts))
        assert " ".join(s.text for s in doc.sentences) == doc.text

    @given(st.text(alphabet="abcXY .!?\n\t20", max_size=120))
    def test_rejoin_property_on_arbitrary_text(self, raw):
        doc = segmented(raw)
        assert " ".join(s.text for s in doc.sentences) == doc.text
        for a, b in zip(doc.sentences, doc.sentences[1:]):
            assert a.end_char < b.start_char


class TestDocumentRoundTrip:
    def test_write_read(self, tmp_path):
        doc = segmented("A fell. B rose.")
        write_document(doc, tmp_path / "d.txt", tmp_path / "d.tsv")
        loaded = read_document("t", tmp_path / "d.txt", tmp_path / "d.tsv")
        assert loaded.text == doc.text
        assert loaded.sentences == doc.sentences
