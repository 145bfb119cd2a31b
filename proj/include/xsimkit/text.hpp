#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace xsimkit {

// Byte-offset token. Offsets always index the original sentence so spans
// survive reconstruction exactly.
struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;
};

inline bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c >= 0x80;  // keep UTF-8 continuation/start bytes inside tokens
}

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

// Whitespace + punctuation splitting: tokens are maximal runs of word bytes.
std::vector<Token> tokenize(std::string_view text);

std::string lower_ascii(std::string_view s);
bool iequals_ascii(std::string_view a, std::string_view b);

std::string_view trim(std::string_view s);
bool valid_utf8(std::string_view s);

// Uppercases the replacement's first letter when the original starts with an
// uppercase letter, so "Good" -> "Bad" instead of "Good" -> "bad".
std::string match_capitalization(std::string_view original, std::string replacement);

std::string replace_range(std::string_view s, std::size_t begin, std::size_t end,
                          std::string_view replacement);

// True when [begin,end) sits on word boundaries (neighbouring bytes are not
// word bytes).
bool on_word_boundary(std::string_view s, std::size_t begin, std::size_t end);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace xsimkit
