#include "archipelago/corpus.hpp"

#include <algorithm>
#include <array>
#include <clocale>
#include <cwctype>
#include <fstream>
#include <locale.h>
#include <sstream>

#include <json.hpp>

namespace archipelago {

namespace {

// Decodes one UTF-8 code point starting at text[i]; advances i. Malformed
// sequences yield U+FFFD and consume a single byte.
char32_t decode_utf8(std::string_view text, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  const unsigned char lead = byte(i);
  if (lead < 0x80) {
    ++i;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > text.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char c = byte(i + k);
    if ((c & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  static constexpr std::array<char32_t, 5> kMin{0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return 0xFFFD;
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool valid_utf8(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t start = i;
    if (decode_utf8(text, i) == 0xFFFD) {
      // A literal U+FFFD is three bytes; a decoding failure consumes one.
      if (i - start != 3) return false;
    }
  }
  return true;
}

// Unicode classification from the C.UTF-8 locale, independent of the
// process-global locale.
class UnicodeClasses {
 public:
  UnicodeClasses() : loc_(newlocale(LC_CTYPE_MASK, "C.UTF-8", nullptr)) {}
  ~UnicodeClasses() {
    if (loc_) freelocale(loc_);
  }
  UnicodeClasses(const UnicodeClasses&) = delete;
  UnicodeClasses& operator=(const UnicodeClasses&) = delete;

  bool is_alnum(char32_t cp) const {
    if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) != 0;
    return loc_ && iswalnum_l(static_cast<wint_t>(cp), loc_) != 0;
  }
  bool is_space(char32_t cp) const {
    if (cp < 0x80) return std::isspace(static_cast<int>(cp)) != 0;
    return cp == 0x85 || cp == 0xA0 ||
           (loc_ && iswspace_l(static_cast<wint_t>(cp), loc_) != 0);
  }
  char32_t to_lower(char32_t cp) const {
    if (cp < 0x80) return static_cast<char32_t>(std::tolower(static_cast<int>(cp)));
    return loc_ ? static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc_)) : cp;
  }

 private:
  locale_t loc_;
};

const UnicodeClasses& unicode() {
  static const UnicodeClasses classes;
  return classes;
}

bool is_dash_separator(char32_t cp) { return cp >= 0x2012 && cp <= 0x2015; }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Closing quotes and brackets that may follow a terminator. Returns the byte
// length of the closer at text[i], or 0.
std::size_t closer_length(std::string_view text, std::size_t i) {
  const char c = text[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') return 1;
  static constexpr std::array<std::string_view, 4> kMultiByte{
      "\xE2\x80\x99", "\xE2\x80\x9D", "\xC2\xBB", "\xE2\x80\xBA"};  // ’ ” » ›
  for (auto closer : kMultiByte) {
    if (text.substr(i, closer.size()) == closer) return closer.size();
  }
  return 0;
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// The whitespace-delimited chunk ending at `end` (exclusive), and the one
// before it.
std::pair<std::string_view, std::string_view> trailing_chunks(std::string_view text,
                                                              std::size_t end) {
  auto chunk_before = [&](std::size_t stop) {
    std::size_t b = stop;
    while (b > 0 && !is_ascii_space(text[b - 1])) --b;
    return b;
  };
  const std::size_t last_begin = chunk_before(end);
  std::string_view last = text.substr(last_begin, end - last_begin);
  std::size_t k = last_begin;
  while (k > 0 && is_ascii_space(text[k - 1])) --k;
  const std::size_t prev_begin = chunk_before(k);
  return {last, text.substr(prev_begin, k - prev_begin)};
}

bool is_abbreviation(std::string_view text, std::size_t period_end) {
  auto [last, prev] = trailing_chunks(text, period_end);
  std::string word = lowercase_ascii(last);
  const auto first = word.find_first_not_of("\"'([{`");
  word = first == std::string::npos ? std::string{} : word.substr(first);
  static constexpr std::array<std::string_view, 7> kGuard{"mr.",  "mrs.", "dr.", "st.",
                                                          "vs.",  "e.g.", "i.e."};
  if (std::find(kGuard.begin(), kGuard.end(), word) != kGuard.end()) return true;
  return word == "al." && lowercase_ascii(prev) == "et";
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::optional<WordId> Document::find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordId Document::require(std::string_view word) const {
  if (auto id = find(word)) return *id;
  throw DataError("word not in document: " + std::string(word));
}

std::size_t Document::frequency(WordId w) const {
  std::size_t total = 0;
  for (const auto& p : postings(w)) total += p.count;
  return total;
}

Document Document::from_tokens(const std::vector<std::vector<std::string>>& sentences,
                               std::string id) {
  Document doc;
  doc.id_ = std::move(id);
  for (const auto& sentence : sentences) {
    if (sentence.empty()) continue;
    for (const auto& token : sentence) {
      if (token.empty()) throw std::invalid_argument("empty token in sentence");
      auto [it, inserted] =
          doc.index_.try_emplace(token, static_cast<WordId>(doc.vocabulary_.size()));
      if (inserted) doc.vocabulary_.push_back(token);
      doc.tokens_.push_back(it->second);
    }
    doc.offsets_.push_back(doc.tokens_.size());
  }
  if (doc.tokens_.empty()) throw DataError("empty document");

  // Counting sort into per-word postings; sentence order is preserved.
  const std::size_t vocab = doc.vocabulary_.size();
  std::vector<std::size_t> distinct(vocab + 1, 0);
  std::vector<std::uint32_t> last_seen(vocab, UINT32_MAX);
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    for (WordId w : doc.sentence(s)) {
      if (last_seen[w] != s) {
        last_seen[w] = static_cast<std::uint32_t>(s);
        ++distinct[w + 1];
      }
    }
  }
  for (std::size_t w = 0; w < vocab; ++w) distinct[w + 1] += distinct[w];
  doc.posting_offsets_ = distinct;
  doc.postings_.assign(distinct.back(), Posting{0, 0});
  std::vector<std::size_t> cursor(distinct.begin(), distinct.end() - 1);
  std::fill(last_seen.begin(), last_seen.end(), UINT32_MAX);
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    for (WordId w : doc.sentence(s)) {
      if (last_seen[w] != s) {
        last_seen[w] = static_cast<std::uint32_t>(s);
        doc.postings_[cursor[w]++] = Posting{static_cast<std::uint32_t>(s), 1};
      } else {
        ++doc.postings_[cursor[w] - 1].count;
      }
    }
  }
  return doc;
}

std::uint64_t OccurrenceVector::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::vector<std::string> segment_sentences(const RawText& raw) {
  const std::string_view text = raw.content;
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    auto s = trim(text.substr(start, end - start));
    if (!s.empty()) sentences.emplace_back(s);
    start = end;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_terminator(text[j])) ++j;
    const std::size_t terminators_end = j;
    while (j < text.size()) {
      const std::size_t len = closer_length(text, j);
      if (len == 0) break;
      j += len;
    }
    const bool at_boundary = j == text.size() || is_ascii_space(text[j]);
    const bool single_period = terminators_end - i == 1 && text[i] == '.';
    if (at_boundary && !(single_period && is_abbreviation(text, terminators_end))) {
      emit(j);
    }
    i = j;
  }
  emit(text.size());
  if (sentences.empty()) throw DataError("no sentences");
  return sentences;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  const auto& uc = unicode();
  std::vector<std::string> tokens;
  std::string current;
  std::size_t hyphen_run = 0;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < sentence.size();) {
    const char32_t cp = decode_utf8(sentence, i);
    if (cp == U'-') {
      // "--" is a typewriter dash and separates words; a single hyphen joins.
      if (++hyphen_run == 2) flush();
      continue;
    }
    hyphen_run = 0;
    if (uc.is_space(cp) || is_dash_separator(cp)) {
      flush();
    } else if (uc.is_alnum(cp)) {
      append_utf8(current, uc.to_lower(cp));
    }
  }
  flush();
  return tokens;
}

Document build_document(const RawText& raw) {
  std::vector<std::vector<std::string>> tokenized;
  for (const auto& s : segment_sentences(raw)) tokenized.push_back(tokenize(s));
  return Document::from_tokens(tokenized, raw.source_id);
}

OccurrenceVector occurrence_vector(const Document& doc, WordId word) {
  if (word >= doc.vocabulary_size()) throw DataError("word not in document");
  OccurrenceVector occ{word, std::vector<std::uint32_t>(doc.sentence_count(), 0)};
  for (const auto& p : doc.postings(word)) occ.counts[p.sentence] = p.count;
  return occ;
}

OccurrenceVector occurrence_vector(const Document& doc, std::string_view word) {
  return occurrence_vector(doc, doc.require(word));
}

RawText read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  RawText raw{buffer.str(), path.filename().string()};
  if (!valid_utf8(raw.content)) throw DataError("not valid UTF-8: " + path.string());
  return raw;
}

CorpusIndex::CorpusIndex(std::vector<Document> documents) {
  for (auto& d : documents) add(std::move(d));
}

void CorpusIndex::add(Document doc) {
  for (const auto& w : doc.vocabulary()) ++doc_frequency_[w];
  documents_.push_back(std::move(doc));
}

std::size_t CorpusIndex::doc_frequency(std::string_view word) const {
  auto it = doc_frequency_.find(std::string(word));
  return it == doc_frequency_.end() ? 0 : it->second;
}

std::vector<CollectionEntry> list_collection(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("not a directory: " + dir.string());

  nlohmann::json manifest = nlohmann::json::object();
  const auto manifest_path = dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    try {
      manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("bad manifest " + manifest_path.string() + ": " + e.what());
    }
  }
  auto label_for = [&](const std::string& name) {
    if (manifest.contains(name) && manifest[name].is_string()) {
      return manifest[name].get<std::string>();
    }
    auto folder = fs::absolute(dir).lexically_normal();
    if (folder.filename().empty()) folder = folder.parent_path();
    return folder.filename().string();
  };

  std::vector<CollectionEntry> entries;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") {
      entries.push_back({e.path(), label_for(e.path().filename().string())});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.path.filename() < b.path.filename(); });
  if (entries.empty()) throw DataError("no .txt files in " + dir.string());
  return entries;
}

}  // namespace archipelago
