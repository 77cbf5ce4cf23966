#include <doctest.h>

#include <cmath>
#include <random>

#include "archipelago/synth.hpp"
#include "archipelago/window_entropy.hpp"
#include "oracles/entropy_oracle.hpp"

using namespace archipelago;

namespace {

OccurrenceVector ones_at(std::size_t n, std::initializer_list<std::size_t> positions) {
  OccurrenceVector occ{0, std::vector<std::uint32_t>(n, 0)};
  for (auto p : positions) occ.counts[p] += 1;
  return occ;
}

OccurrenceVector double_island() {
  OccurrenceVector occ{0, std::vector<std::uint32_t>(64, 0)};
  for (std::size_t s = 0; s <= 3; ++s) occ.counts[s] = 1;
  for (std::size_t s = 40; s <= 43; ++s) occ.counts[s] = 1;
  return occ;
}

Document document_of(const OccurrenceVector& occ) {
  std::vector<std::vector<std::string>> sentences(occ.counts.size());
  for (std::size_t s = 0; s < occ.counts.size(); ++s) {
    sentences[s].push_back("pad" + std::to_string(s));
    for (std::uint32_t c = 0; c < occ.counts[s]; ++c) sentences[s].push_back("w");
  }
  return Document::from_tokens(sentences);
}

OccurrenceVector random_occurrences(std::mt19937_64& rng, std::size_t n) {
  OccurrenceVector occ{0, std::vector<std::uint32_t>(n, 0)};
  const double density = std::uniform_real_distribution<double>(0.01, 0.6)(rng);
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<std::uint32_t> mult(1, 3);
  for (auto& c : occ.counts) {
    if (present(rng)) c = mult(rng);
  }
  if (occ.total() == 0) occ.counts[rng() % n] = 1;
  return occ;
}

}  // namespace

TEST_SUITE("window_entropy") {
  TEST_CASE("window_counts uses half-open windows anchored at sentence 0") {
    OccurrenceVector five{0, {1, 1, 1, 1, 1}};
    CHECK(window_counts(five, 2) == std::vector<std::uint64_t>{2, 2, 1});
    CHECK(window_counts(ones_at(8, {1, 5}), 4) == std::vector<std::uint64_t>{1, 1});
    CHECK(window_counts(five, 5) == std::vector<std::uint64_t>{5});
    CHECK_THROWS_AS(window_counts(five, 0), std::invalid_argument);
    CHECK_THROWS_AS(window_counts(five, 6), std::invalid_argument);
  }

  TEST_CASE("entropy_a values") {
    CHECK(entropy_a(ones_at(8, {3}), 1) == 0.0);
    CHECK(entropy_a(ones_at(8, {3}), 5) == 0.0);
    CHECK(entropy_a(ones_at(8, {1, 5}), 4) == doctest::Approx(1.0).epsilon(1e-12));
    // Frozen from tests/oracles/derived_values.py.
    OccurrenceVector mixed{0, {2, 1, 0, 0, 0, 1, 0, 0}};
    CHECK(std::abs(entropy_a(mixed, 1) - 1.5) < 1e-9);
    CHECK_THROWS_AS(entropy_a(OccurrenceVector{0, {0, 0, 0}}, 1), DataError);
  }

  TEST_CASE("frequency-1 word has an all-zero curve") {
    const auto curve = entropy_curve(ones_at(30, {7}));
    CHECK(curve.max_width() == 29);
    for (double v : curve.values) CHECK(v == 0.0);
  }

  TEST_CASE("uniform word, n = 64: curve never increases") {
    OccurrenceVector uniform{0, std::vector<std::uint32_t>(64, 1)};
    const auto curve = entropy_curve(uniform);
    CHECK(curve.at(1) == doctest::Approx(6.0));
    for (std::size_t dt = 2; dt <= curve.max_width(); ++dt) {
      CHECK(curve.at(dt) <= curve.at(dt - 1) + 1e-12);
    }
  }

  TEST_CASE("double island: non-nested widths can increase H_A") {
    const auto curve = entropy_curve(double_island());
    CHECK(std::abs(curve.at(4) - 1.0) < 1e-12);
    CHECK(std::abs(curve.at(5) - 1.0) < 1e-12);
    CHECK(std::abs(curve.at(6) - 1.5) < 1e-12);
    CHECK(curve.at(6) > curve.at(5));
    CHECK(std::abs(curve.at(43) - 0.5435644431995964) < 1e-12);
    CHECK(curve.at(44) == 0.0);
  }

  TEST_CASE("detect_events per mode on the double island") {
    const auto curve = entropy_curve(double_island());
    const double theta = word_threshold(curve);
    CHECK(theta == doctest::Approx(3.0 / 64.0));

    auto widths = [&](DetectionMode m) {
      std::vector<std::size_t> out;
      for (const auto& e : detect_events(curve, theta, m)) out.push_back(e.delta_t);
      return out;
    };
    // Frozen from tests/oracles/derived_values.py.
    CHECK(widths(DetectionMode::drop_magnitude) ==
          std::vector<std::size_t>{3, 4, 8, 15, 22, 42, 43, 44});
    CHECK(widths(DetectionMode::literal_increase) == std::vector<std::size_t>{6, 14, 21});
    CHECK(widths(DetectionMode::plateau_then_drop) == std::vector<std::size_t>{8, 42});
    CHECK(delta_t_max_bound(curve, theta, DetectionMode::drop_magnitude) == 44u);

    const auto increase = detect_events(curve, theta, DetectionMode::literal_increase);
    CHECK(increase.front().signed_delta == doctest::Approx(0.5));
    for (const auto& e : detect_events(curve, theta, DetectionMode::drop_magnitude)) {
      CHECK(e.signed_delta < -theta);
      CHECK(e.delta_t >= 3);
    }
  }

  TEST_CASE("no events without a signal") {
    const auto flat = entropy_curve(ones_at(40, {12}));
    for (auto m : {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                   DetectionMode::plateau_then_drop}) {
      CHECK(detect_events(flat, 0.0, m).empty());
      CHECK_FALSE(delta_t_max_bound(flat, 0.0, m).has_value());
      CHECK_FALSE(judge(flat, 1, m).is_keyword);
    }
    CHECK_THROWS_AS(detect_events(flat, -1.0, DetectionMode::drop_magnitude), std::invalid_argument);
  }

  TEST_CASE("events require delta_t > 2") {
    // H_A drops from dt=1 to dt=2 only.
    OccurrenceVector pair{0, {1, 1, 0, 0}};
    const auto curve = entropy_curve(pair);
    CHECK(curve.at(1) == doctest::Approx(1.0));
    CHECK(curve.at(2) == 0.0);
    CHECK(detect_events(curve, 0.0, DetectionMode::drop_magnitude).empty());
  }

  TEST_CASE("verdict invariant: keyword iff bound exceeds tau") {
    const auto curve = entropy_curve(double_island());
    for (std::size_t tau : {1, 10, 43, 44, 100}) {
      const auto v = judge(curve, tau, DetectionMode::drop_magnitude);
      CHECK(v.is_keyword == (v.delta_t_max_bound && *v.delta_t_max_bound > tau));
    }
    CHECK(judge(curve, 43, DetectionMode::drop_magnitude).is_keyword);
    CHECK_FALSE(judge(curve, 44, DetectionMode::drop_magnitude).is_keyword);
  }

  TEST_CASE("property: bounds, nested coarsening, tail zeros on 1000 random vectors") {
    std::mt19937_64 rng(20240611);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + rng() % 199;
      const auto occ = random_occurrences(rng, n);
      const auto curve = entropy_curve(occ);
      std::size_t last = 0;
      for (std::size_t s = 0; s < n; ++s) {
        if (occ.counts[s]) last = s;
      }
      for (std::size_t dt = 1; dt < n; ++dt) {
        const double h = curve.at(dt);
        const double cap = std::log2(static_cast<double>((n + dt - 1) / dt));
        if (h < 0.0 || h > cap + 1e-12) ++violations;
        if (dt > last && h != 0.0) ++violations;
        for (std::size_t k = 2; k * dt < n; ++k) {
          if (curve.at(k * dt) > h + 1e-12) ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }

  TEST_CASE("property: curve matches the brute-force oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + rng() % 120;
      const auto occ = random_occurrences(rng, n);
      const auto curve = entropy_curve(occ);
      for (std::size_t dt = 1; dt < n; ++dt) {
        CHECK(std::abs(curve.at(dt) - oracle::window_entropy(occ.counts, dt)) < 1e-9);
      }
    }
  }

  TEST_CASE("posting kernel is bitwise equal to the dense reference") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + rng() % 200;
      const auto occ = random_occurrences(rng, n);
      const auto doc = document_of(occ);
      for (auto base : {LogBase::bits, LogBase::nats}) {
        const auto dense = entropy_curve(occ, base);
        const auto fast = entropy_curve(doc, doc.require("w"), base);
        REQUIRE(dense.values.size() == fast.values.size());
        CHECK(dense.values == fast.values);
      }
    }
  }

  TEST_CASE("parallel extraction equals serial reference") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<std::string>> sentences(20 + rng() % 150);
      for (auto& s : sentences) {
        const auto len = 3 + rng() % 10;
        for (std::size_t i = 0; i < len; ++i) s.push_back("w" + std::to_string(rng() % 60));
      }
      const auto doc = Document::from_tokens(sentences);
      for (auto mode : {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                        DetectionMode::plateau_then_drop}) {
        for (std::size_t tau : {1, 5, 10}) {
          const auto par = extract_keywords(doc, tau, mode);
          const auto ser = extract_keywords_serial(doc, tau, mode);
          CHECK(par.words == ser.words);
          REQUIRE(par.verdicts.size() == ser.verdicts.size());
          for (std::size_t w = 0; w < par.verdicts.size(); ++w) {
            CHECK(par.verdicts[w].theta == ser.verdicts[w].theta);
            CHECK(par.verdicts[w].delta_t_max_bound == ser.verdicts[w].delta_t_max_bound);
          }
        }
      }
    }
  }

  TEST_CASE("keyword sets agree between bits and nats") {
    const auto doc = synth_document(planted_fixture());
    for (auto mode : {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                      DetectionMode::plateau_then_drop}) {
      CHECK(extract_keywords(doc, 10, mode, LogBase::bits).words ==
            extract_keywords(doc, 10, mode, LogBase::nats).words);
    }
  }

  TEST_CASE("extract_keywords edge cases") {
    const auto once = Document::from_tokens({{"a", "b"}, {"c", "d"}, {"e"}, {"f", "g"}});
    CHECK(extract_keywords(once, 1).words.empty());
    CHECK_THROWS_AS(extract_keywords(once, 0), std::invalid_argument);

    const auto single = Document::from_tokens({{"a", "a"}});
    CHECK(extract_keywords(single, 1).words.empty());
    CHECK(entropy_curve(single, 0).empty());
  }

  TEST_CASE("planted double-island word is extracted at tau 10") {
    const auto doc = synth_document(planted_fixture());
    const auto k = extract_keywords(doc, 10, DetectionMode::drop_magnitude);
    const auto id = doc.require("archipelago");
    CHECK(std::find(k.words.begin(), k.words.end(), id) != k.words.end());
    CHECK(k.verdicts[id].delta_t_max_bound == 44u);
    CHECK(std::is_sorted(k.words.begin(), k.words.end()));
    CHECK_FALSE(k.verdicts[doc.require("once")].is_keyword);
  }

  TEST_CASE("mode names round-trip") {
    for (auto m : {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                   DetectionMode::plateau_then_drop}) {
      CHECK(parse_mode(to_string(m)) == m);
      CHECK(parse_mode(short_name(m)) == m);
    }
    CHECK_FALSE(parse_mode("sideways").has_value());
  }
}
