#include "xsimkit/text.hpp"

namespace xsimkit {

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        tokens.push_back({begin, i});
    }
    return tokens;
}

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool iequals_ascii(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        char x = a[i], y = b[i];
        if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
        if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
        if (x != y) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return s.substr(b, e - b);
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        unsigned cp_min;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xe0) == 0xc0) {
            len = 2;
            cp_min = 0x80;
        } else if ((c & 0xf0) == 0xe0) {
            len = 3;
            cp_min = 0x800;
        } else if ((c & 0xf8) == 0xf0) {
            len = 4;
            cp_min = 0x10000;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        unsigned cp = c & (0xff >> (len + 1));
        for (std::size_t j = 1; j < len; ++j) {
            unsigned char cc = static_cast<unsigned char>(s[i + j]);
            if ((cc & 0xc0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3f);
        }
        if (cp < cp_min) return false;                    // overlong
        if (cp > 0x10ffff) return false;                  // out of range
        if (cp >= 0xd800 && cp <= 0xdfff) return false;   // surrogate
        i += len;
    }
    return true;
}

std::string match_capitalization(std::string_view original, std::string replacement) {
    if (!original.empty() && !replacement.empty() && is_ascii_upper(original.front()) &&
        replacement.front() >= 'a' && replacement.front() <= 'z') {
        replacement.front() = static_cast<char>(replacement.front() - 'a' + 'A');
    }
    return replacement;
}

std::string replace_range(std::string_view s, std::size_t begin, std::size_t end,
                          std::string_view replacement) {
    std::string out;
    out.reserve(s.size() - (end - begin) + replacement.size());
    out.append(s.substr(0, begin));
    out.append(replacement);
    out.append(s.substr(end));
    return out;
}

bool on_word_boundary(std::string_view s, std::size_t begin, std::size_t end) {
    if (begin > 0 && is_word_byte(static_cast<unsigned char>(s[begin - 1]))) return false;
    if (end < s.size() && is_word_byte(static_cast<unsigned char>(s[end]))) return false;
    return true;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

}  // namespace xsimkit
