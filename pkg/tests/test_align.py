import random
import string

import pytest

import helpers
from ecokg import align
from ecokg.graph import Triple, TripleStore, iri, literal
from ecokg.ns import OWL_SAMEAS, RDFS_LABEL
from ecokg.align import (
    EmptyReferenceError,
    Mapping,
    MappingSet,
    align_lexical,
    block_candidates,
    disagreement,
    evaluate,
    intersect,
    levenshtein,
    normalize_label,
    similarity,
)


class TestNormalization:
    def test_lowercase_and_punctuation(self):
        assert normalize_label("Daphnia-Magna (Straus)") == ["daphnia", "magna", "straus"]

    def test_stop_and_rank_words_removed(self):
        assert normalize_label("the Daphniidae genus") == ["daphniidae"]
        assert normalize_label("Daphnia sp.") == ["daphnia"]

    def test_all_stop_words_empty(self):
        assert normalize_label("of the sp.") == []


class TestLevenshtein:
    def test_known_pairs(self):
        assert levenshtein("kitten", "sitting") == 3
        assert levenshtein("", "") == 0
        assert levenshtein("abc", "") == 3
        assert levenshtein("abc", "abc") == 0
        assert levenshtein("flaw", "lawn") == 2

    def test_against_full_matrix_oracle(self):
        rng = random.Random(29)
        alphabet = "abcde"
        for _ in range(300):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randrange(9)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randrange(9)))
            assert levenshtein(a, b) == helpers.dp_levenshtein(a, b)

    def test_metric_properties(self):
        rng = random.Random(31)
        pool = string.ascii_lowercase[:6]
        for _ in range(500):
            a, b, c = (
                "".join(rng.choice(pool) for _ in range(rng.randrange(7))) for _ in range(3)
            )
            assert levenshtein(a, b) == 0 if a == b else levenshtein(a, b) > 0
            assert levenshtein(a, b) == levenshtein(b, a)
            assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


class TestSimilarity:
    def test_bounds_and_edges(self):
        assert similarity("", "") == 1.0
        assert similarity("abc", "abc") == 1.0
        assert similarity("abc", "xyz") == 0.0
        assert similarity("kitten", "sitting") == pytest.approx(1 - 3 / 7)

    def test_range_on_random_strings(self):
        rng = random.Random(37)
        for _ in range(200):
            a = "".join(rng.choice("abcd") for _ in range(rng.randrange(8)))
            b = "".join(rng.choice("abcd") for _ in range(rng.randrange(8)))
            assert 0.0 <= similarity(a, b) <= 1.0


class TestBlocking:
    def test_requires_shared_token(self):
        pairs = block_candidates(
            {"s1": {"daphnia", "magna"}, "s2": {"danio"}},
            {"t1": {"daphnia"}, "t2": {"rasbora"}},
        )
        assert pairs == {("s1", "t1")}

    def test_no_tokens_no_pairs(self):
        assert block_candidates({"s": set()}, {"t": {"x"}}) == set()


class TestMappingSet:
    def test_keyed_by_pair(self):
        ms = MappingSet()
        ms.add(Mapping("a", "b", 0.9, "m"))
        ms.add(Mapping("a", "b", 0.7, "m2"))
        assert len(ms) == 1
        assert ms.get("a", "b").score == 0.7
        assert ("a", "b") in ms

    def test_iteration_sorted(self):
        ms = MappingSet(mappings=[Mapping("b", "x", 0.9, "m"), Mapping("a", "y", 0.9, "m")])
        assert [(m.source, m.target) for m in ms] == [("a", "y"), ("b", "x")]

    def test_score_bounds(self):
        with pytest.raises(ValueError):
            Mapping("a", "b", 1.5, "m")


class TestAlignLexical:
    def test_exact_match_scores_one(self):
        out = align_lexical({"s": ["Danio rerio"]}, {"t": ["Danio rerio"]})
        assert out.get("s", "t").score == 1.0

    def test_threshold_excludes_weak(self):
        out = align_lexical({"s": ["Daphnia hirta"]}, {"t": ["Daphnia magna"]})
        assert len(out) == 0

    def test_best_target_kept(self):
        out = align_lexical(
            {"s": ["Eisenia fetida"]},
            {"t1": ["Eisenia fetida"], "t2": ["Eisenia feta"]},
        )
        assert out.pairs() == {("s", "t1")}

    def test_tie_breaks_to_smaller_target(self):
        out = align_lexical({"s": ["same name"]}, {"t/b": ["same name"], "t/a": ["same name"]})
        assert out.pairs() == {("s", "t/a")}

    def test_multi_label_entities_use_best_label(self):
        out = align_lexical(
            {"s": ["totally different", "Rasbora heteromorpha"]},
            {"t": ["Rasbora heteromorpha"]},
        )
        assert out.get("s", "t").score == 1.0

    def test_rank_words_ignored_in_comparison(self):
        out = align_lexical({"s": ["Daphnia sp."]}, {"t": ["Daphnia"]})
        assert out.get("s", "t").score == 1.0

    def test_planted_noise_recovered(self):
        # Binomial-style names: one edit hits one word, the other still
        # shares a token so blocking keeps the pair.
        rng = random.Random(41)

        def word():
            return "".join(rng.choice(string.ascii_lowercase) for _ in range(9))

        names = [f"{word()} {word()}" for _ in range(60)]
        source = {}
        target = {f"t/{i}": [name] for i, name in enumerate(names)}
        expected = set()
        for i, name in enumerate(names[:30]):
            noisy = list(name)
            pos = rng.randrange(len(noisy))
            if noisy[pos] != " ":
                noisy[pos] = rng.choice(string.ascii_lowercase.replace(noisy[pos], ""))
            source[f"s/{i}"] = ["".join(noisy)]
            expected.add((f"s/{i}", f"t/{i}"))
        out = align_lexical(source, target, threshold=0.8)
        hits = out.pairs() & expected
        assert len(hits) / len(expected) >= 0.95


class TestSetOperations:
    def a(self):
        return MappingSet(
            "m",
            [Mapping("s1", "t1", 1.0, "m"), Mapping("s2", "t2", 0.9, "m"),
             Mapping("s3", "t3", 0.8, "m")],
        )

    def b(self):
        return MappingSet(
            "m",
            [Mapping("s1", "t1", 0.6, "m"), Mapping("s2", "tX", 0.9, "m")],
        )

    def test_evaluate_recall(self):
        assert evaluate(self.a(), self.b()) == 0.5
        assert evaluate(self.a(), self.a()) == 1.0

    def test_evaluate_superset_is_one(self):
        small = MappingSet("m", [Mapping("s1", "t1", 1.0, "m")])
        assert evaluate(self.a(), small) == 1.0

    def test_evaluate_disjoint_is_zero(self):
        other = MappingSet("m", [Mapping("x", "y", 1.0, "m")])
        assert evaluate(self.a(), other) == 0.0

    def test_empty_reference_rejected(self):
        with pytest.raises(EmptyReferenceError):
            evaluate(self.a(), MappingSet())

    def test_disagreement_not_symmetric(self):
        assert disagreement(self.a(), self.b()) == 2
        assert disagreement(self.b(), self.a()) == 1

    def test_intersect_averages_scores(self):
        out = intersect(self.a(), self.b())
        assert out.pairs() == {("s1", "t1")}
        assert out.get("s1", "t1").score == pytest.approx(0.8)
        assert out.method == "consensus"

    def test_intersect_needs_two_sets(self):
        with pytest.raises(ValueError):
            intersect(self.a())

    def test_set_arithmetic_against_oracle(self):
        rng = random.Random(43)
        for _ in range(50):
            def rand_set():
                ms = MappingSet("m")
                for _ in range(rng.randrange(12)):
                    ms.add(Mapping(f"s{rng.randrange(8)}", f"t{rng.randrange(8)}", 1.0, "m"))
                return ms

            x, y = rand_set(), rand_set()
            if len(y):
                assert evaluate(x, y) == len(x.pairs() & y.pairs()) / len(y.pairs())
            assert disagreement(x, y) == len(x.pairs() - y.pairs())
            assert intersect(x, y).pairs() == (x.pairs() & y.pairs())


class TestInterchange:
    def test_write_read_round_trip(self):
        ms = MappingSet("m", [Mapping("s", "t", 0.875, "m")])
        again = align.read_mappings(align.write_mappings(ms))
        assert again.pairs() == ms.pairs()
        assert again.get("s", "t").score == 0.875
        assert again.method == "m"

    def test_mixed_methods_detected(self):
        text = "s\tt\t1.000000\tlex\ns2\tt2\t1.000000\tref\n"
        assert align.read_mappings(text).method == "mixed"

    def test_column_count_enforced(self):
        with pytest.raises(ValueError, match="line 1"):
            align.read_mappings("a\tb\tc\n")

    def test_sameas_emission(self):
        ms = MappingSet("m", [Mapping("http://x.org/a", "http://y.org/b", 1.0, "m")])
        store = TripleStore()
        assert align.add_sameas(ms, store) == 1
        assert store.match(iri("http://x.org/a"), OWL_SAMEAS, iri("http://y.org/b"))

    def test_labels_by_prefix(self):
        store = TripleStore()
        store.add(Triple(iri("http://x.org/t/1"), RDFS_LABEL, literal("one")))
        store.add(Triple(iri("http://x.org/t/1"), RDFS_LABEL, literal("uno")))
        store.add(Triple(iri("http://y.org/t/2"), RDFS_LABEL, literal("two")))
        out = align.labels_by_prefix(store, "http://x.org/t/")
        assert out == {"http://x.org/t/1": ["one", "uno"]}
