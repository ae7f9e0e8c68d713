#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ate/abbreviations_data.hpp"
#include "ate/corpus.hpp"
#include "ate/decode.hpp"
#include "ate/detail/utf8.hpp"
#include "ate/error.hpp"
#include "ate/token.hpp"

namespace ate {

/// Lowercase words after which a period never ends a sentence.
class AbbreviationSet {
 public:
  AbbreviationSet() = default;
  explicit AbbreviationSet(std::set<std::string> words) : words_(std::move(words)) {}

  bool contains(std::string_view lowercase_word) const {
    return words_.count(std::string(lowercase_word)) != 0;
  }
  void insert(std::string word) { words_.insert(std::move(word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

/// Parses "<language>\t<abbreviation>" lines; '#' starts a comment line.
inline std::map<std::string, AbbreviationSet> parse_abbreviation_table(std::string_view tsv) {
  std::map<std::string, AbbreviationSet> out;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    std::size_t eol = tsv.find('\n', pos);
    if (eol == std::string_view::npos) eol = tsv.size();
    std::string_view line = tsv.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    out[std::string(line.substr(0, tab))].insert(normalize_term(line.substr(tab + 1)));
  }
  return out;
}

/// The shipped abbreviation list for a language (empty for unknown languages).
inline const AbbreviationSet& abbreviations_for(const std::string& language) {
  static const std::map<std::string, AbbreviationSet> table =
      parse_abbreviation_table(detail::kAbbreviationsTsv);
  static const AbbreviationSet empty;
  auto it = table.find(language);
  return it == table.end() ? empty : it->second;
}

/// Every knob of the text-to-IOB alignment policy lives here.
struct LabelingOptions {
  /// Match n-grams on normalized (lowercased) forms. When false the joined
  /// surface must equal the gold entry byte for byte.
  bool case_insensitive = true;
  /// Upper bound on matched n-gram length; 0 derives it from the term list.
  std::size_t max_term_tokens = 0;
  /// Replaces the shipped abbreviation list when set.
  std::optional<AbbreviationSet> abbreviations;
};

struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

namespace detail {

inline bool is_terminator(UChar32 c) { return c == '.' || c == '!' || c == '?'; }

inline bool is_closer(UChar32 c) {
  return c == ')' || c == ']' || c == '"' || c == '\'' || c == 0x00BB || c == 0x201D || c == 0x2019;
}

inline bool starts_sentence(UChar32 c) {
  return c >= 0 && (u_isupper(c) || u_istitle(c) || u_isdigit(c));
}

/// The whitespace-delimited word ending at byte `end`, leading punctuation stripped.
inline std::string_view word_before(std::string_view text, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0) {
    auto cp = decode_before(text, begin);
    if (is_space(cp.value)) break;
    begin = cp.begin;
  }
  while (begin < end) {
    auto cp = decode_at(text, begin);
    if (!is_punct(cp.value)) break;
    begin = cp.end;
  }
  return text.substr(begin, end - begin);
}

inline bool is_abbreviation(std::string_view word, const AbbreviationSet& abbreviations) {
  if (word.empty()) return false;
  try {
    return abbreviations.contains(normalize_term(word));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace detail

/// Rule-based splitter: a sentence ends after a run of . ! ? (plus closing
/// quotes or brackets) when whitespace and then an uppercase letter or a digit
/// follow, unless the period closes a listed abbreviation. Spans are trimmed.
inline std::vector<SentenceSpan> sentence_split(std::string_view text,
                                                const AbbreviationSet& abbreviations = {}) {
  using namespace detail;
  std::vector<SentenceSpan> spans;
  constexpr std::size_t npos = std::string_view::npos;
  std::size_t start = npos;
  std::size_t last_nonspace_end = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    auto cp = decode_at(text, pos);
    if (is_space(cp.value)) {
      pos = cp.end;
      continue;
    }
    if (start == npos) start = cp.begin;
    last_nonspace_end = cp.end;
    pos = cp.end;
    if (!is_terminator(cp.value)) continue;

    // Absorb the rest of the terminator run and any closers.
    const std::size_t first_terminator = cp.begin;
    UChar32 last_terminator = cp.value;
    std::size_t end = cp.end;
    while (end < text.size()) {
      auto next = decode_at(text, end);
      if (is_terminator(next.value)) {
        last_terminator = next.value;
      } else if (!is_closer(next.value)) {
        break;
      }
      end = next.end;
    }
    last_nonspace_end = end;
    pos = end;

    if (end >= text.size() || !is_space(decode_at(text, end).value)) continue;
    std::size_t look = end;
    while (look < text.size() && is_space(decode_at(text, look).value)) look = decode_at(text, look).end;
    if (look >= text.size() || !starts_sentence(decode_at(text, look).value)) continue;
    if (last_terminator == '.' && end == first_terminator + 1 &&
        is_abbreviation(word_before(text, first_terminator), abbreviations)) {
      continue;
    }

    spans.push_back({start, end});
    start = npos;
  }
  if (start != npos) spans.push_back({start, last_nonspace_end});
  return spans;
}

/// Whitespace tokenization with leading and trailing punctuation detached one
/// character at a time; inner punctuation (hyphens, apostrophes) stays put.
inline std::vector<Token> tokenize(std::string_view sentence_text, std::size_t base_offset = 0) {
  using namespace detail;
  std::vector<Token> tokens;
  auto emit = [&](std::size_t begin, std::size_t end) {
    tokens.push_back({std::string(sentence_text.substr(begin, end - begin)), base_offset + begin,
                      base_offset + end});
  };

  std::size_t pos = 0;
  while (pos < sentence_text.size()) {
    auto cp = decode_at(sentence_text, pos);
    if (is_space(cp.value)) {
      pos = cp.end;
      continue;
    }
    std::size_t begin = pos;
    std::size_t end = pos;
    while (end < sentence_text.size()) {
      auto next = decode_at(sentence_text, end);
      if (is_space(next.value)) break;
      end = next.end;
    }
    pos = end;

    while (begin < end) {
      auto lead = decode_at(sentence_text, begin);
      if (!is_punct(lead.value)) break;
      emit(lead.begin, lead.end);
      begin = lead.end;
    }
    std::vector<std::pair<std::size_t, std::size_t>> trailing;
    while (end > begin) {
      auto trail = decode_before(sentence_text, end);
      if (!is_punct(trail.value)) break;
      trailing.emplace_back(trail.begin, trail.end);
      end = trail.begin;
    }
    if (begin < end) emit(begin, end);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) emit(it->first, it->second);
  }
  return tokens;
}

/// Greedy longest-leftmost matcher over a term list.
class TermMatcher {
 public:
  TermMatcher(const TermSet& terms, const LabelingOptions& options = {})
      : case_insensitive_(options.case_insensitive) {
    std::size_t longest = 0;
    for (const auto& term : terms.entries) {
      terms_.insert(term);
      longest = std::max<std::size_t>(longest, std::count(term.begin(), term.end(), ' ') + 1);
    }
    max_tokens_ = options.max_term_tokens ? std::min(options.max_term_tokens, longest) : longest;
  }

  Labels label(const std::vector<std::string>& words) const {
    Labels labels(words.size(), Label::O);
    std::size_t i = 0;
    while (i < words.size()) {
      std::size_t matched = 0;
      const std::size_t limit = std::min(max_tokens_, words.size() - i);
      for (std::size_t len = limit; len >= 1; --len) {
        if (terms_.count(key(words, i, len))) {
          matched = len;
          break;
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      labels[i] = Label::B;
      for (std::size_t k = 1; k < matched; ++k) labels[i + k] = Label::I;
      i += matched;
    }
    return labels;
  }

  Labels label(const std::vector<Token>& tokens) const { return label(surfaces(tokens)); }

  std::size_t max_tokens() const { return max_tokens_; }

 private:
  std::string key(const std::vector<std::string>& words, std::size_t begin, std::size_t len) const {
    std::string joined = words[begin];
    for (std::size_t k = 1; k < len; ++k) {
      joined += ' ';
      joined += words[begin + k];
    }
    return case_insensitive_ ? normalize_term(joined) : joined;
  }

  std::unordered_set<std::string> terms_;
  std::size_t max_tokens_ = 0;
  bool case_insensitive_ = true;
};

inline LabeledSequence annotate_iob(const std::vector<Token>& tokens, const TermSet& gold,
                                    const LabelingOptions& options = {}) {
  TermMatcher matcher(gold, options);
  return {{}, tokens, matcher.label(tokens)};
}

/// Sentences of all documents in (doc id, sentence index) order, labeled
/// against one gold list. Terms never match across sentence boundaries.
inline std::vector<LabeledSequence> compile_dataset(std::vector<Document> docs, const GoldStandard& gold,
                                                    const LabelingOptions& options = {}) {
  std::sort(docs.begin(), docs.end(), [](const Document& a, const Document& b) { return a.id < b.id; });
  const TermMatcher matcher(gold.terms, options);
  std::vector<LabeledSequence> out;
  for (const auto& doc : docs) {
    if (doc.language != gold.language) {
      throw Error(ErrorKind::LanguageMismatch,
                  "document " + doc.id + " is " + doc.language + ", gold is " + gold.language);
    }
    const AbbreviationSet& abbreviations =
        options.abbreviations ? *options.abbreviations : abbreviations_for(doc.language);
    for (const auto& span : sentence_split(doc.text, abbreviations)) {
      std::string_view sentence = std::string_view(doc.text).substr(span.begin, span.end - span.begin);
      auto tokens = tokenize(sentence, span.begin);
      if (tokens.empty()) continue;
      Labels labels = matcher.label(tokens);
      out.push_back({doc.id, std::move(tokens), std::move(labels)});
    }
  }
  return out;
}

/// Fixed [begin, end) windows of at most `max_tokens` with no overlap.
inline std::vector<std::pair<std::size_t, std::size_t>> fixed_chunks(std::size_t length, std::size_t max_tokens) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (max_tokens == 0) max_tokens = length;
  for (std::size_t begin = 0; begin < length; begin += max_tokens) {
    out.emplace_back(begin, std::min(length, begin + max_tokens));
  }
  return out;
}

/// Splits a training sequence into chunks of at most `max_tokens`, moving
/// each cut left so it never lands inside a B..I span. A span longer than
/// `max_tokens` is cut hard and its continuation relabeled to start with B.
inline std::vector<LabeledSequence> chunk_for_training(const LabeledSequence& seq, std::size_t max_tokens) {
  std::vector<LabeledSequence> out;
  const std::size_t n = seq.tokens.size();
  if (max_tokens == 0 || n <= max_tokens) {
    out.push_back(seq);
    return out;
  }
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = std::min(n, begin + max_tokens);
    if (end < n) {
      std::size_t cut = end;
      while (cut > begin && seq.labels[cut] == Label::I) --cut;
      if (cut > begin) end = cut;
    }
    LabeledSequence chunk;
    chunk.doc_id = seq.doc_id;
    chunk.tokens.assign(seq.tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                        seq.tokens.begin() + static_cast<std::ptrdiff_t>(end));
    chunk.labels = repair_labels(Labels(seq.labels.begin() + static_cast<std::ptrdiff_t>(begin),
                                        seq.labels.begin() + static_cast<std::ptrdiff_t>(end)));
    out.push_back(std::move(chunk));
    begin = end;
  }
  return out;
}

inline nlohmann::json to_json(const LabeledSequence& seq) {
  nlohmann::json labels = nlohmann::json::array();
  for (Label l : seq.labels) labels.push_back(std::string(1, to_char(l)));
  return {{"doc_id", seq.doc_id}, {"tokens", surfaces(seq.tokens)}, {"labels", labels}};
}

/// Offsets are not serialized; decoded tokens get single-space offsets.
inline LabeledSequence sequence_from_json(const nlohmann::json& j) {
  LabeledSequence seq;
  seq.doc_id = j.value("doc_id", "");
  seq.tokens = tokens_from_surfaces(j.at("tokens").get<std::vector<std::string>>());
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) seq.labels.push_back(label_from_string(l.get<std::string>()));
    if (seq.labels.size() != seq.tokens.size()) {
      throw Error(ErrorKind::LengthMismatch, "record for " + seq.doc_id + " has mismatched labels");
    }
  } else {
    seq.labels.assign(seq.tokens.size(), Label::O);
  }
  return seq;
}

inline void write_dataset_jsonl(const std::filesystem::path& path, const std::vector<LabeledSequence>& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  for (const auto& seq : data) out << to_json(seq).dump() << '\n';
}

inline std::vector<LabeledSequence> read_dataset_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::vector<LabeledSequence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(sequence_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::InvalidArgument,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ate
