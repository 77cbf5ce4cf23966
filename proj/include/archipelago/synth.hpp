#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "archipelago/corpus.hpp"

namespace archipelago {

/// Occurrence signatures that can be planted into a synthetic document.
enum class Pattern { double_island, single_island, uniform, single_occurrence };

std::string_view to_string(Pattern p);

/// Inclusive sentence range.
struct Island {
  std::size_t first = 0;
  std::size_t last = 0;
};

struct PlantedWord {
  std::string word;
  Pattern pattern = Pattern::uniform;
  std::vector<Island> islands;  // 2 / 1 / none / one single-sentence island
};

struct SyntheticSpec {
  std::string id = "synthetic";
  std::size_t sentences = 64;
  std::vector<PlantedWord> planted;
  std::size_t filler_vocabulary = 200;
  std::size_t sentence_length = 3;  // minimum tokens per sentence
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for ranges outside [0, n), island counts
/// that do not fit the pattern, overlapping islands, duplicate planted
/// words, or planted words that collide with filler names.
void validate(const SyntheticSpec& spec);

/// Planted words appear exactly once in every sentence their pattern
/// covers. Filler words ("f0", "f1", ...) pad each sentence to
/// sentence_length tokens. Deterministic in spec.seed.
Document synth_document(const SyntheticSpec& spec);

/// One sentence per line, tokens separated by spaces, ending with ".".
/// Reading it back with build_document gives the same Document.
std::string render_text(const Document& doc);

SyntheticSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SyntheticSpec& spec);

/// Accepts either one spec object or {"documents": [spec, ...]}.
std::vector<SyntheticSpec> specs_from_json(const nlohmann::json& j);

/// The four-pattern n = 64 fixture: double island over sentences 0-3 and
/// 40-43, a single island, a uniform word and a single occurrence.
SyntheticSpec planted_fixture(std::uint64_t seed = 7);

}  // namespace archipelago
