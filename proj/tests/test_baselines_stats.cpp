#include <doctest.h>

#include <cmath>
#include <limits>

#include "archipelago/baselines.hpp"
#include "archipelago/stats.hpp"

using namespace archipelago;

TEST_SUITE("baselines") {
  TEST_CASE("tfidf uses raw counts and log2 idf") {
    CorpusIndex corpus;
    const auto doc = Document::from_tokens({{"rare", "rare", "common"}, {"rare", "common"}});
    corpus.add(doc);
    for (int i = 0; i < 3; ++i) corpus.add(Document::from_tokens({{"common", "other"}}));
    const auto ranked = tfidf_keywords(doc, corpus, 5);
    REQUIRE(ranked.words.size() == 2);
    CHECK(doc.word(ranked.words[0].word) == "rare");
    // Frozen from tests/oracles/derived_values.py: 3 * log2(4 / 1).
    CHECK(ranked.words[0].score == doctest::Approx(6.0));
    CHECK(ranked.words[1].score == 0.0);
  }

  TEST_CASE("tfidf rejects documents outside the corpus") {
    CorpusIndex corpus;
    corpus.add(Document::from_tokens({{"x"}}));
    CHECK_THROWS_AS(tfidf_keywords(Document::from_tokens({{"y"}}), corpus, 1), std::invalid_argument);
  }

  TEST_CASE("textrank on a star converges to the closed-form fixed point") {
    const auto doc = Document::from_tokens({{"hub", "a"}, {"hub", "b"}, {"hub", "c"}, {"hub", "d"}});
    const auto scores = textrank_scores(doc);
    // Hub h and leaves l satisfy h = 0.15 + 3.4 l and l = 0.15 + 0.2125 h.
    const double hub = 0.66 / 0.2775;
    const double leaf = 0.15 + 0.2125 * hub;
    CHECK(scores[doc.require("hub")] == doctest::Approx(hub).epsilon(1e-5));
    CHECK(scores[doc.require("a")] == doctest::Approx(leaf).epsilon(1e-5));
    const auto top = textrank_keywords(doc, 1);
    CHECK(doc.word(top.words[0].word) == "hub");
  }

  TEST_CASE("textrank ignores self loops and crosses no sentence boundary") {
    const auto doc = Document::from_tokens({{"a", "a"}, {"b"}});
    const auto scores = textrank_scores(doc);
    CHECK(scores[0] == doctest::Approx(0.15));
    CHECK(scores[1] == doctest::Approx(0.15));
  }

  TEST_CASE("rake scores degree over frequency") {
    const Stoplist stop({"is", "and"});
    const auto doc = Document::from_tokens({{"deep", "learning", "is", "fun"}});
    const auto scores = rake_scores(doc, stop);
    CHECK(scores[doc.require("deep")] == 2.0);
    CHECK(scores[doc.require("learning")] == 2.0);
    CHECK(scores[doc.require("fun")] == 1.0);
    CHECK(scores[doc.require("is")] == 0.0);
    const auto ranked = rake_keywords(doc, 10, stop);
    CHECK(ranked.words.size() == 3);
    CHECK(doc.word(ranked.words[0].word) == "deep");  // tie broken by id
  }

  TEST_CASE("bundled stoplist") {
    const auto stop = Stoplist::bundled();
    CHECK(stop.size() > 300);
    CHECK(stop.contains("the"));
    CHECK_FALSE(stop.contains("archipelago"));
  }

  TEST_CASE("random keywords are deterministic, distinct and sorted") {
    std::vector<std::vector<std::string>> sentences(1);
    for (int i = 0; i < 50; ++i) sentences[0].push_back("w" + std::to_string(i));
    const auto doc = Document::from_tokens(sentences);
    const auto a = random_keywords(doc, 10, 42).ids();
    CHECK(a == random_keywords(doc, 10, 42).ids());
    CHECK(a != random_keywords(doc, 10, 43).ids());
    CHECK(a.size() == 10);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    CHECK(random_keywords(doc, 500, 1).words.size() == 50);
    CHECK_THROWS_AS(random_keywords(doc, 0, 1), std::invalid_argument);
  }

  TEST_CASE("random draws are roughly uniform") {
    const auto doc = Document::from_tokens({{"a", "b", "c", "d"}});
    std::vector<int> hits(4, 0);
    for (std::uint64_t seed = 0; seed < 4000; ++seed) hits[random_keywords(doc, 1, seed).words[0].word]++;
    for (int h : hits) CHECK(std::abs(h - 1000) < 150);
  }
}

TEST_SUITE("stats") {
  TEST_CASE("paired t-test matches frozen values") {
    const std::vector<double> a{0, 0, 0, 0, 0};
    const std::vector<double> b{1, 2, 1, 3, 2};
    const auto r = paired_t_test(a, b);
    // Frozen from tests/oracles/derived_values.py (scipy.stats).
    CHECK(std::abs(r.t - -4.81070235442364) < 1e-12);
    CHECK(std::abs(r.p - 0.004290459360962386) < 1e-12);
    CHECK(r.df == 4);
    CHECK(r.mean_difference == doctest::Approx(-1.8));
  }

  TEST_CASE("identical samples") {
    const std::vector<double> a{0.3, 0.1, 0.7};
    const auto r = paired_t_test(a, a);
    CHECK(r.t == 0.0);
    CHECK(r.p == 0.5);
  }

  TEST_CASE("constant nonzero differences") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{2, 3, 4};
    auto r = paired_t_test(a, b);
    CHECK(r.t == -std::numeric_limits<double>::infinity());
    CHECK(r.p == 0.0);
    r = paired_t_test(b, a);
    CHECK(r.t == std::numeric_limits<double>::infinity());
    CHECK(r.p == 1.0);
  }

  TEST_CASE("swapping samples negates t and complements p") {
    const std::vector<double> a{0.1, 0.5, 0.2, 0.9};
    const std::vector<double> b{0.4, 0.4, 0.6, 1.0};
    const auto ab = paired_t_test(a, b);
    const auto ba = paired_t_test(b, a);
    CHECK(ab.t == doctest::Approx(-ba.t));
    CHECK(ab.p + ba.p == doctest::Approx(1.0));
  }

  TEST_CASE("input validation") {
    const std::vector<double> one{1};
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS(paired_t_test(one, one), std::invalid_argument);
    CHECK_THROWS_AS(paired_t_test(two, one), std::invalid_argument);
  }

  TEST_CASE("mean and sd") {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(v) == 5.0);
    CHECK(sample_sd(v) == doctest::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(sample_sd(std::vector<double>{3}) == 0.0);
  }
}
