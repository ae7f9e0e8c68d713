#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ate/error.hpp"

namespace ate {

enum class Label : unsigned char { B, I, O };

inline char to_char(Label label) {
  switch (label) {
    case Label::B: return 'B';
    case Label::I: return 'I';
    case Label::O: return 'O';
  }
  return 'O';
}

inline Label label_from_string(std::string_view s) {
  if (s == "B") return Label::B;
  if (s == "I") return Label::I;
  if (s == "O") return Label::O;
  throw Error(ErrorKind::InvalidArgument, "unknown IOB label '" + std::string(s) + "'");
}

using Labels = std::vector<Label>;

/// A token of a document. Offsets are UTF-8 byte offsets into the document
/// text, end exclusive, so `surface == text.substr(char_start, char_end - char_start)`.
struct Token {
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct LabeledSequence {
  std::string doc_id;
  std::vector<Token> tokens;
  Labels labels;

  friend bool operator==(const LabeledSequence&, const LabeledSequence&) = default;
};

inline std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

/// Builds tokens with synthetic offsets (single-space joined) from bare surfaces.
inline std::vector<Token> tokens_from_surfaces(const std::vector<std::string>& words) {
  std::vector<Token> out;
  out.reserve(words.size());
  std::size_t offset = 0;
  for (const auto& w : words) {
    out.push_back({w, offset, offset + w.size()});
    offset += w.size() + 1;
  }
  return out;
}

}  // namespace ate
