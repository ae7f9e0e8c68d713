#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "ate/detail/utf8.hpp"
#include "ate/error.hpp"
#include "ate/token.hpp"

namespace ate {

/// NFC, lowercase, whitespace runs collapsed to one space, trimmed.
inline std::string normalize_term(std::string_view raw) {
  if (!detail::is_valid_utf8(raw)) {
    throw Error(ErrorKind::EncodingError, "term is not valid UTF-8");
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::Io, std::string("ICU NFC unavailable: ") + u_errorName(status));
  }

  icu::UnicodeString text =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text.toLower(icu::Locale::getRoot());
  icu::UnicodeString composed = nfc->normalize(text, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::EncodingError, std::string("normalization failed: ") + u_errorName(status));
  }

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < composed.length();) {
    UChar32 c = composed.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<UChar>(u' '));
      pending_space = false;
    }
    collapsed.append(c);
  }
  if (collapsed.isEmpty()) throw Error(ErrorKind::EmptyTerm, "term is empty after trimming");

  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

inline bool is_normalized_term(std::string_view term) {
  try {
    return normalize_term(term) == term;
  } catch (const Error&) {
    return false;
  }
}

/// Set of normalized terms. Entries iterate in code point order since UTF-8
/// byte order and code point order agree.
struct TermSet {
  std::set<std::string> entries;
  std::string provenance;
  /// "<language>/<test_domain>/<variant>" when known; empty means unchecked.
  std::string split_key;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  bool contains(const std::string& term) const { return entries.count(term) != 0; }

  /// Normalizes before inserting.
  void add(std::string_view raw) { entries.insert(normalize_term(raw)); }

  friend bool operator==(const TermSet& a, const TermSet& b) { return a.entries == b.entries; }
};

inline TermSet make_termset(const std::vector<std::string>& raw, std::string provenance = {}) {
  TermSet set;
  set.provenance = std::move(provenance);
  for (const auto& r : raw) set.add(r);
  return set;
}

/// Rewrites every orphan I (first position or after O) to B.
inline Labels repair_labels(Labels labels) {
  Label previous = Label::O;
  for (auto& label : labels) {
    if (label == Label::I && previous == Label::O) label = Label::B;
    previous = label;
  }
  return labels;
}

/// One term per maximal B I* run after repair.
inline std::vector<std::string> decode_terms(const std::vector<Token>& tokens, const Labels& labels) {
  if (tokens.size() != labels.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(tokens.size()) + " tokens vs " +
                                               std::to_string(labels.size()) + " labels");
  }
  const Labels repaired = repair_labels(labels);
  std::vector<std::string> terms;
  std::string current;
  bool open = false;
  auto close = [&] {
    if (open) terms.push_back(normalize_term(current));
    current.clear();
    open = false;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    switch (repaired[i]) {
      case Label::B:
        close();
        current = tokens[i].surface;
        open = true;
        break;
      case Label::I:
        current += ' ';
        current += tokens[i].surface;
        break;
      case Label::O:
        close();
        break;
    }
  }
  close();
  return terms;
}

inline TermSet aggregate(const std::vector<std::vector<std::string>>& per_sequence_terms,
                         std::string provenance) {
  TermSet set;
  set.provenance = std::move(provenance);
  for (const auto& terms : per_sequence_terms) {
    for (const auto& t : terms) set.entries.insert(t);
  }
  return set;
}

inline std::string render_termset(const TermSet& set) {
  std::string out;
  for (const auto& term : set.entries) {
    out += term;
    out += '\n';
  }
  return out;
}

/// Writes `<term>\n` per entry, sorted. Goes through a temporary file so a
/// failed run never leaves a truncated term list behind.
inline void write_termset_file(const std::filesystem::path& path, const TermSet& set) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << render_termset(set);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Parses a term list leniently: first TAB column of each non-blank line,
/// normalized. Used for gold annotations and user-supplied candidate lists.
inline TermSet parse_term_list(std::string_view content, std::string provenance = {}) {
  if (!detail::is_valid_utf8(content)) {
    throw Error(ErrorKind::EncodingError, "term list '" + provenance + "' is not valid UTF-8");
  }
  TermSet set;
  set.provenance = std::move(provenance);
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    if (auto tab = line.find('\t'); tab != std::string_view::npos) line = line.substr(0, tab);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = std::all_of(line.begin(), line.end(),
                             [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
    if (!blank) {
      try {
        set.add(line);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyTerm) throw;
      }
    }
    pos = eol + 1;
  }
  return set;
}

inline TermSet load_term_list(const std::filesystem::path& path) {
  return parse_term_list(read_file(path), path.string());
}

/// Reads a file in the TermSet format and rejects anything that is not
/// byte-for-byte what write_termset_file would produce.
inline TermSet read_termset_file(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  TermSet set = parse_term_list(content, path.string());
  if (render_termset(set) != content) {
    throw Error(ErrorKind::InvalidArgument,
                path.string() + " is not a canonical term set file (normalized, sorted, unique, LF)");
  }
  return set;
}

}  // namespace ate
