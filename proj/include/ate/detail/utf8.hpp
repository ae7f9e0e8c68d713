#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace ate::detail {

struct CodePoint {
  UChar32 value;
  std::size_t begin;
  std::size_t end;
};

/// Decodes the code point starting at byte `pos`. Ill-formed sequences decode
/// to a negative value and advance by one byte.
inline CodePoint decode_at(std::string_view text, std::size_t pos) {
  auto length = static_cast<int32_t>(text.size());
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(text.data(), i, length, c);
  return {c, pos, static_cast<std::size_t>(i)};
}

/// Decodes the code point that ends right before byte `pos`.
inline CodePoint decode_before(std::string_view text, std::size_t pos) {
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_PREV(text.data(), 0, i, c);
  return {c, static_cast<std::size_t>(i), pos};
}

inline bool is_valid_utf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto cp = decode_at(text, pos);
    if (cp.value < 0) return false;
    pos = cp.end;
  }
  return true;
}

inline bool is_space(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }
inline bool is_punct(UChar32 c) { return c >= 0 && u_ispunct(c); }

}  // namespace ate::detail
