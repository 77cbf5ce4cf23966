#include "archipelago/synth.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace archipelago {

namespace {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Pattern parse_pattern(const std::string& name) {
  for (auto p : {Pattern::double_island, Pattern::single_island, Pattern::uniform,
                 Pattern::single_occurrence}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown pattern: " + name);
}

bool covers(const PlantedWord& w, std::size_t s) {
  if (w.pattern == Pattern::uniform) return true;
  return std::any_of(w.islands.begin(), w.islands.end(),
                     [s](const Island& i) { return s >= i.first && s <= i.last; });
}

}  // namespace

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::double_island: return "double_island";
    case Pattern::single_island: return "single_island";
    case Pattern::uniform: return "uniform";
    case Pattern::single_occurrence: return "single_occurrence";
  }
  return "?";
}

void validate(const SyntheticSpec& spec) {
  if (spec.sentences < 1) throw std::invalid_argument("synthetic spec needs n >= 1");
  if (spec.sentence_length < 1) throw std::invalid_argument("sentence_length must be >= 1");
  std::set<std::string> names;
  for (const auto& w : spec.planted) {
    if (w.word.empty() || tokenize(w.word) != std::vector<std::string>{w.word}) {
      throw std::invalid_argument("planted word must be a single lowercase token: " + w.word);
    }
    if (!names.insert(w.word).second) {
      throw std::invalid_argument("planted word listed twice: " + w.word);
    }
    if (w.word.size() > 1 && w.word[0] == 'f' &&
        std::all_of(w.word.begin() + 1, w.word.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("planted word collides with filler names: " + w.word);
    }
    std::size_t expected = 0;
    switch (w.pattern) {
      case Pattern::double_island: expected = 2; break;
      case Pattern::single_island: expected = 1; break;
      case Pattern::uniform: expected = 0; break;
      case Pattern::single_occurrence: expected = 1; break;
    }
    if (w.islands.size() != expected) {
      throw std::invalid_argument("wrong island count for " + std::string(to_string(w.pattern)) +
                                  " word " + w.word);
    }
    if (w.pattern == Pattern::single_occurrence && w.islands[0].first != w.islands[0].last) {
      throw std::invalid_argument("single_occurrence island must be one sentence: " + w.word);
    }
    for (const auto& isl : w.islands) {
      if (isl.first > isl.last || isl.last >= spec.sentences) {
        throw std::invalid_argument("island outside [0, n) for " + w.word);
      }
    }
    if (w.islands.size() == 2) {
      const auto& a = w.islands[0];
      const auto& b = w.islands[1];
      if (!(a.last < b.first || b.last < a.first)) {
        throw std::invalid_argument("overlapping islands for " + w.word);
      }
    }
  }
  if (spec.filler_vocabulary == 0) {
    for (std::size_t s = 0; s < spec.sentences; ++s) {
      const auto planted = std::count_if(spec.planted.begin(), spec.planted.end(),
                                         [s](const PlantedWord& w) { return covers(w, s); });
      if (planted == 0) throw std::invalid_argument("sentence without words and no fillers");
    }
  }
}

Document synth_document(const SyntheticSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<std::string>> sentences(spec.sentences);
  for (std::size_t s = 0; s < spec.sentences; ++s) {
    auto& tokens = sentences[s];
    for (const auto& w : spec.planted) {
      if (covers(w, s)) tokens.push_back(w.word);
    }
    while (spec.filler_vocabulary > 0 && tokens.size() < spec.sentence_length) {
      const auto f = draw_below(rng, spec.filler_vocabulary);
      tokens.push_back("f" + std::to_string(f));
    }
    // Fisher-Yates so planted words are not always sentence-initial.
    for (std::size_t i = tokens.size(); i > 1; --i) {
      std::swap(tokens[i - 1], tokens[draw_below(rng, i)]);
    }
  }
  return Document::from_tokens(sentences, spec.id);
}

std::string render_text(const Document& doc) {
  std::string out;
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    const auto tokens = doc.sentence(s);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out += ' ';
      out += doc.word(tokens[i]);
    }
    out += ".\n";
  }
  return out;
}

SyntheticSpec spec_from_json(const nlohmann::json& j) {
  SyntheticSpec spec;
  try {
    spec.id = j.value("id", spec.id);
    spec.sentences = j.at("n").get<std::size_t>();
    spec.filler_vocabulary = j.value("filler_vocabulary", spec.filler_vocabulary);
    spec.sentence_length = j.value("sentence_length", spec.sentence_length);
    spec.seed = j.value("seed", spec.seed);
    for (const auto& pj : j.value("planted", nlohmann::json::array())) {
      PlantedWord w;
      w.word = pj.at("word").get<std::string>();
      w.pattern = parse_pattern(pj.at("pattern").get<std::string>());
      for (const auto& range : pj.value("islands", nlohmann::json::array())) {
        w.islands.push_back({range.at(0).get<std::size_t>(), range.at(1).get<std::size_t>()});
      }
      if (w.pattern == Pattern::single_occurrence && pj.contains("position")) {
        const auto p = pj.at("position").get<std::size_t>();
        w.islands = {{p, p}};
      }
      spec.planted.push_back(std::move(w));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad synthetic spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

nlohmann::json to_json(const SyntheticSpec& spec) {
  nlohmann::json planted = nlohmann::json::array();
  for (const auto& w : spec.planted) {
    nlohmann::json islands = nlohmann::json::array();
    for (const auto& i : w.islands) islands.push_back({i.first, i.last});
    planted.push_back({{"word", w.word}, {"pattern", to_string(w.pattern)}, {"islands", islands}});
  }
  return {{"id", spec.id},
          {"n", spec.sentences},
          {"filler_vocabulary", spec.filler_vocabulary},
          {"sentence_length", spec.sentence_length},
          {"seed", spec.seed},
          {"planted", planted}};
}

std::vector<SyntheticSpec> specs_from_json(const nlohmann::json& j) {
  std::vector<SyntheticSpec> specs;
  if (j.is_object() && j.contains("documents")) {
    for (const auto& d : j.at("documents")) specs.push_back(spec_from_json(d));
  } else {
    specs.push_back(spec_from_json(j));
  }
  return specs;
}

SyntheticSpec planted_fixture(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.id = "planted";
  spec.sentences = 64;
  spec.filler_vocabulary = 200;
  spec.sentence_length = 3;
  spec.seed = seed;
  spec.planted = {
      {"archipelago", Pattern::double_island, {{0, 3}, {40, 43}}},
      {"island", Pattern::single_island, {{20, 35}}},
      {"uniform", Pattern::uniform, {}},
      {"once", Pattern::single_occurrence, {{30, 30}}},
  };
  return spec;
}

}  // namespace archipelago
