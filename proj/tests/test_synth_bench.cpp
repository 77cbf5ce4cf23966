#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "archipelago/bench.hpp"
#include "archipelago/report.hpp"
#include "archipelago/synth.hpp"

using namespace archipelago;

namespace {

const std::filesystem::path kGoldenDir = ARCHIPELAGO_TEST_DIR "/golden";

// Compares against a stored file. ARCHIPELAGO_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& actual) {
  const auto path = kGoldenDir / name;
  if (std::getenv("ARCHIPELAGO_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path.string());
  std::stringstream expected;
  expected << in.rdbuf();
  CHECK(expected.str() == actual);
}

SyntheticSpec noisy_spec(std::size_t i) {
  SyntheticSpec spec;
  spec.id = "synthetic_" + std::to_string(i);
  spec.sentences = 60 + 7 * i;
  spec.filler_vocabulary = 40 + 5 * i;
  spec.sentence_length = 6;
  spec.seed = 1000 + i;
  const std::size_t n = spec.sentences;
  spec.planted = {
      {"alpha", Pattern::double_island, {{2, 6}, {n / 2, n / 2 + 4}}},
      {"beta", Pattern::double_island, {{3, 7}, {n / 2 + 1, n / 2 + 5}}},
      {"gamma", Pattern::single_island, {{n - 15, n - 5}}},
      {"delta", Pattern::single_island, {{n - 14, n - 6}}},
      {"common", Pattern::uniform, {}},
      {"lonely", Pattern::single_occurrence, {{n / 3, n / 3}}},
  };
  return spec;
}

std::vector<LabeledDocument> synthetic_collection() {
  std::vector<LabeledDocument> docs;
  for (std::size_t i = 0; i < 10; ++i) {
    docs.push_back({i < 5 ? "first" : "second", synth_document(noisy_spec(i))});
  }
  return docs;
}

}  // namespace

TEST_SUITE("synth") {
  TEST_CASE("planted words occur exactly where requested") {
    const auto spec = planted_fixture();
    const auto doc = synth_document(spec);
    CHECK(doc.sentence_count() == 64);
    const auto arch = occurrence_vector(doc, "archipelago");
    for (std::size_t s = 0; s < 64; ++s) {
      const bool inside = s <= 3 || (s >= 40 && s <= 43);
      CHECK(arch.counts[s] == (inside ? 1u : 0u));
    }
    CHECK(occurrence_vector(doc, "uniform").total() == 64);
    CHECK(occurrence_vector(doc, "once").total() == 1);
    CHECK(occurrence_vector(doc, "once").counts[30] == 1);
    CHECK(occurrence_vector(doc, "island").total() == 16);
    for (std::size_t s = 0; s < 64; ++s) CHECK(doc.sentence(s).size() >= 3);
  }

  TEST_CASE("generation is deterministic in the seed") {
    CHECK(render_text(synth_document(planted_fixture(1))) == render_text(synth_document(planted_fixture(1))));
    CHECK(render_text(synth_document(planted_fixture(1))) != render_text(synth_document(planted_fixture(2))));
  }

  TEST_CASE("rendered text reads back as the same document") {
    const auto doc = synth_document(planted_fixture());
    const auto back = build_document({render_text(doc), "planted"});
    REQUIRE(back.sentence_count() == doc.sentence_count());
    for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
      const auto a = doc.sentence(s);
      const auto b = back.sentence(s);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(doc.word(a[i]) == back.word(b[i]));
    }
  }

  TEST_CASE("spec validation") {
    auto spec = planted_fixture();
    spec.planted[0].islands = {{0, 3}, {2, 5}};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = planted_fixture();
    spec.planted[1].islands = {{20, 64}};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = planted_fixture();
    spec.planted[2].word = "f12";
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = planted_fixture();
    spec.planted.push_back(spec.planted[0]);
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = planted_fixture();
    spec.planted[3].islands = {{30, 31}};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  }

  TEST_CASE("json round trip") {
    const auto spec = planted_fixture(9);
    const auto back = spec_from_json(to_json(spec));
    CHECK(to_json(back) == to_json(spec));
    const auto many = specs_from_json({{"documents", {to_json(spec), to_json(planted_fixture(3))}}});
    CHECK(many.size() == 2);
    CHECK_THROWS_AS(spec_from_json(nlohmann::json{{"id", "x"}}), std::invalid_argument);
    const auto positioned = spec_from_json(
        {{"n", 10}, {"planted", {{{"word", "solo"}, {"pattern", "single_occurrence"}, {"position", 4}}}}});
    CHECK(positioned.planted[0].islands[0].first == 4);
  }
}

TEST_SUITE("bench") {
  TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(validate(c));
    c.taus = {0};
    c.reference_tau = 0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = {};
    c.rho = 0.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = {};
    c.reference_tau = 7;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = {};
    c.reps = 0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
  }

  TEST_CASE("empty keyword sets are skipped, not scored") {
    // Every word occurs once: no curve has an event.
    const auto doc = Document::from_tokens({{"a", "b"}, {"c", "d"}, {"e", "f"}, {"g", "h"}}, "flat");
    CorpusIndex corpus;
    corpus.add(doc);
    const auto run = run_document(doc, "c", corpus, Stoplist{}, DetectionMode::drop_magnitude, {});
    for (const auto& r : run.results) {
      CHECK(r.status == ResultStatus::skipped_empty_k);
      CHECK_FALSE(r.h_b.has_value());
    }
    const auto table = run_collection({run}, "c", {});
    for (const auto& cell : table.cells) {
      CHECK(cell.documents == 0);
      CHECK(cell.excluded == 1);
      CHECK_FALSE(cell.mean_h_b.has_value());
    }
  }

  TEST_CASE("planted fixture scores at or below random") {
    const auto doc = synth_document(planted_fixture());
    CorpusIndex corpus;
    corpus.add(doc);
    const auto run = run_document(doc, "synthetic", corpus, Stoplist::bundled(),
                                  DetectionMode::drop_magnitude, {});
    const auto* entropy = run.find("entropy@10");
    const auto* random = run.find("random@10");
    REQUIRE(entropy);
    REQUIRE(random);
    REQUIRE(entropy->h_b);
    REQUIRE(random->h_b);
    CHECK(*entropy->h_b <= *random->h_b);
    CHECK(random->k == entropy->k);
    REQUIRE(run.find("tfidf"));
    CHECK(run.find("tfidf")->k == entropy->k);
  }

  TEST_CASE("collection means over hand-built runs") {
    auto make = [](double e, double r, bool tfidf_scored) {
      DocumentRun run;
      MethodResult entropy{"entropy", 10, 3, ResultStatus::ok, e, 0.0, {}};
      MethodResult random{"random", 10, 3, ResultStatus::ok, r, 0.0, {}};
      MethodResult tfidf{"tfidf", 10, 3, ResultStatus::ok, std::nullopt, 0.0, {}};
      if (tfidf_scored) tfidf.h_b = 0.5;
      else tfidf.status = ResultStatus::unscorable;
      run.results = {entropy, random, tfidf};
      return run;
    };
    ExperimentConfig config;
    config.taus = {10};
    const auto table = run_collection({make(0.2, 1.0, true), make(0.4, 1.2, false), make(1.5, 1.0, true)},
                                      "toy", config);
    const auto& e = table.cells[0];
    CHECK(e.column == "entropy@10");
    CHECK(e.documents == 3);
    CHECK(*e.mean_h_b == doctest::Approx(0.7));
    CHECK(*e.mean_random_h_b == doctest::Approx(3.2 / 3));
    CHECK(*e.percent_below_random == doctest::Approx(200.0 / 3));
    REQUIRE(e.t_test);
    CHECK(e.t_test->df == 2);
    const auto& t = table.cells[1];
    CHECK(t.column == "tfidf");
    CHECK(t.random_column == "random@10");
    CHECK(t.documents == 2);
    CHECK(t.excluded == 1);
    CHECK(*t.mean_random_h_b == doctest::Approx(1.0));
  }

  TEST_CASE("mode report flags the uniform word") {
    const auto report = mode_report({planted_fixture()}, {10});
    CHECK(report.entries.size() == 12);
    check_golden("mode_report.json", to_json(report).dump(2) + "\n");
    bool uniform_flagged = false;
    for (const auto& f : report.flags) uniform_flagged |= f.word == "uniform";
    CHECK(uniform_flagged);
    for (const auto& e : report.entries) {
      if (e.word == "once") CHECK_FALSE(e.is_keyword);
      if (e.word == "archipelago") CHECK(e.is_keyword);
    }
  }

  TEST_CASE("ten-document synthetic comparison matches the stored table") {
    ExperimentConfig config;
    config.modes = {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                    DetectionMode::plateau_then_drop};
    config.seed = 17;
    const auto result = run_experiment(synthetic_collection(), config, Stoplist::bundled());
    check_golden("synthetic_comparison.csv", comparison_csv(result));
    CHECK(to_json(result).dump() == to_json(run_experiment(synthetic_collection(), config,
                                                           Stoplist::bundled())).dump());
    REQUIRE(result.tables.size() == 3);
    CHECK(result.tables[0].collections.size() == 2);
    CHECK(result.runs.size() == 30);
  }
}
