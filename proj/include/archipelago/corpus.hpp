#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace archipelago {

using WordId = std::uint32_t;

/// Raised for problems with the input data itself (empty text, unknown
/// words, unreadable files), as opposed to bad parameters, which use
/// std::invalid_argument.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawText {
  std::string content;
  std::string source_id;
};

/// Occurrences of one word in one sentence.
struct Posting {
  std::uint32_t sentence;
  std::uint32_t count;
};

/// Ordered sentences of word ids over a vocabulary assigned in
/// first-occurrence order. Immutable once built.
class Document {
 public:
  /// Builds from tokenized sentences. Sentences that contain no tokens are
  /// dropped; throws DataError("empty document") if nothing remains.
  static Document from_tokens(const std::vector<std::vector<std::string>>& sentences,
                              std::string id = {});

  const std::string& id() const { return id_; }
  std::size_t sentence_count() const { return offsets_.size() - 1; }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  std::size_t token_count() const { return tokens_.size(); }

  std::span<const WordId> sentence(std::size_t i) const {
    return {tokens_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  const std::string& word(WordId w) const { return vocabulary_[w]; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  std::optional<WordId> find(std::string_view word) const;
  /// Like find() but throws DataError("word not in document: ...").
  WordId require(std::string_view word) const;

  /// Sentences containing `w`, ascending, with per-sentence multiplicity.
  std::span<const Posting> postings(WordId w) const {
    return {postings_.data() + posting_offsets_[w],
            posting_offsets_[w + 1] - posting_offsets_[w]};
  }
  /// Number of distinct sentences containing `w`.
  std::size_t support_size(WordId w) const { return postings(w).size(); }
  std::size_t frequency(WordId w) const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::string id_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, WordId, StringHash, std::equal_to<>> index_;
  std::vector<WordId> tokens_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Posting> postings_;
  std::vector<std::size_t> posting_offsets_;
};

struct OccurrenceVector {
  WordId word = 0;
  std::vector<std::uint32_t> counts;  // one entry per sentence

  std::uint64_t total() const;
};

/// Splits at '.', '!' or '?' (optionally followed by closing quotes or
/// brackets) when followed by whitespace or end of text. Common
/// abbreviations do not end a sentence. Throws DataError("no sentences").
std::vector<std::string> segment_sentences(const RawText& raw);

/// Lowercased maximal runs of Unicode letters and digits, with every other
/// character deleted (not treated as a separator) inside a
/// whitespace-delimited chunk, so "d'Andrezy" -> "dandrezy".
std::vector<std::string> tokenize(std::string_view sentence);

/// segment_sentences + tokenize + Document::from_tokens.
Document build_document(const RawText& raw);

OccurrenceVector occurrence_vector(const Document& doc, WordId word);
OccurrenceVector occurrence_vector(const Document& doc, std::string_view word);

/// Reads a UTF-8 text file; throws DataError naming the path on failure.
RawText read_text_file(const std::filesystem::path& path);

/// Document frequencies over a set of documents (for idf).
class CorpusIndex {
 public:
  CorpusIndex() = default;
  explicit CorpusIndex(std::vector<Document> documents);

  void add(Document doc);
  std::size_t size() const { return documents_.size(); }
  const std::vector<Document>& documents() const { return documents_; }
  /// 0 for words never seen.
  std::size_t doc_frequency(std::string_view word) const;

 private:
  std::vector<Document> documents_;
  std::unordered_map<std::string, std::size_t> doc_frequency_;
};

struct CollectionEntry {
  std::filesystem::path path;
  std::string label;
};

/// Lists the .txt files of a directory in name order. Labels come from an
/// optional manifest.json (file name -> label); otherwise the directory
/// name is used.
std::vector<CollectionEntry> list_collection(const std::filesystem::path& dir);

}  // namespace archipelago
