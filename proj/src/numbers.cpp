#include <algorithm>
#include <array>
#include <set>
#include <string>

#include "xsimkit/augment.hpp"
#include "xsimkit/text.hpp"

namespace xsimkit {

namespace {

constexpr std::array<std::string_view, 10> kSpelledOrdinals = {
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"};

std::size_t digit_run(std::string_view s, std::size_t pos) {
    std::size_t n = 0;
    while (pos + n < s.size() && is_ascii_digit(s[pos + n])) ++n;
    return n;
}

int parse_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

struct PatternMatch {
    std::size_t length = 0;
    SpanLabel label = SpanLabel::Cardinal;
};

// TIME: H:MM / HH:MM with valid hour and minute
bool match_time(std::string_view s, std::size_t pos, PatternMatch& m) {
    const std::size_t h = digit_run(s, pos);
    if (h == 0 || h > 2) return false;
    if (pos + h >= s.size() || s[pos + h] != ':') return false;
    const std::size_t mstart = pos + h + 1;
    if (digit_run(s, mstart) != 2) return false;
    if (mstart + 2 < s.size() && (is_ascii_digit(s[mstart + 2]) || s[mstart + 2] == ':')) return false;
    if (parse_int(s.substr(pos, h)) > 23) return false;
    if (parse_int(s.substr(mstart, 2)) > 59) return false;
    m = {h + 1 + 2, SpanLabel::Time};
    return true;
}

// DATE: three digit groups joined by the same '/' or '-' separator
bool match_date(std::string_view s, std::size_t pos, PatternMatch& m) {
    const std::size_t a = digit_run(s, pos);
    if (a == 0 || a > 4) return false;
    std::size_t p = pos + a;
    if (p >= s.size() || (s[p] != '/' && s[p] != '-')) return false;
    const char sep = s[p];
    const std::size_t b = digit_run(s, p + 1);
    if (b == 0 || b > 2) return false;
    p += 1 + b;
    if (p >= s.size() || s[p] != sep) return false;
    const std::size_t c = digit_run(s, p + 1);
    if (c == 0 || c > 4) return false;
    p += 1 + c;
    if (p < s.size() && (is_ascii_digit(s[p]) || s[p] == sep)) return false;
    m = {p - pos, SpanLabel::Date};
    return true;
}

// PERCENT: digits with optional decimal part, '%' suffix
bool match_percent(std::string_view s, std::size_t pos, PatternMatch& m) {
    std::size_t n = digit_run(s, pos);
    if (n == 0) return false;
    std::size_t p = pos + n;
    if (p + 1 < s.size() && s[p] == '.' && is_ascii_digit(s[p + 1])) p += 1 + digit_run(s, p + 1);
    if (p >= s.size() || s[p] != '%') return false;
    m = {p + 1 - pos, SpanLabel::Percent};
    return true;
}

// ORDINAL: digits with st/nd/rd/th suffix
bool match_digit_ordinal(std::string_view s, std::size_t pos, PatternMatch& m) {
    const std::size_t n = digit_run(s, pos);
    if (n == 0 || pos + n + 2 > s.size()) return false;
    std::string suffix = lower_ascii(s.substr(pos + n, 2));
    if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") return false;
    if (pos + n + 2 < s.size() && is_word_byte(static_cast<unsigned char>(s[pos + n + 2])))
        return false;
    m = {n + 2, SpanLabel::Ordinal};
    return true;
}

// NUMBER: decimal form, not a percent
bool match_decimal(std::string_view s, std::size_t pos, PatternMatch& m) {
    const std::size_t a = digit_run(s, pos);
    if (a == 0) return false;
    std::size_t p = pos + a;
    if (p + 1 >= s.size() || s[p] != '.' || !is_ascii_digit(s[p + 1])) return false;
    p += 1 + digit_run(s, p + 1);
    if (p < s.size() && (s[p] == '%' || s[p] == '.')) return false;
    m = {p - pos, SpanLabel::Number};
    return true;
}

// CARDINAL: plain digits or comma-grouped thousands
bool match_cardinal(std::string_view s, std::size_t pos, PatternMatch& m) {
    const std::size_t a = digit_run(s, pos);
    if (a == 0) return false;
    std::size_t p = pos + a;
    if (a <= 3) {
        std::size_t grouped = p;
        while (grouped + 3 < s.size() && s[grouped] == ',' && digit_run(s, grouped + 1) == 3)
            grouped += 4;
        if (grouped > p && !(grouped < s.size() && is_ascii_digit(s[grouped]))) p = grouped;
    }
    if (p < s.size() && (s[p] == '%' || s[p] == '.') && p + 1 < s.size() && is_ascii_digit(s[p + 1]))
        return false;
    m = {p - pos, SpanLabel::Cardinal};
    return true;
}

}  // namespace

std::vector<SpanAnnotation> detect_numbers(std::string_view sentence, std::size_t sentence_index) {
    std::vector<SpanAnnotation> spans;
    std::size_t pos = 0;
    while (pos < sentence.size()) {
        if (!is_ascii_digit(sentence[pos]) ||
            (pos > 0 && is_word_byte(static_cast<unsigned char>(sentence[pos - 1])))) {
            ++pos;
            continue;
        }
        PatternMatch best{};
        PatternMatch m{};
        // longest match wins; on ties the earlier pattern in this order does
        if (match_time(sentence, pos, m) && m.length > best.length) best = m;
        if (match_date(sentence, pos, m) && m.length > best.length) best = m;
        if (match_percent(sentence, pos, m) && m.length > best.length) best = m;
        if (match_digit_ordinal(sentence, pos, m) && m.length > best.length) best = m;
        if (match_decimal(sentence, pos, m) && m.length > best.length) best = m;
        if (match_cardinal(sentence, pos, m) && m.length > best.length) best = m;
        if (best.length == 0) {
            pos += digit_run(sentence, pos);
            continue;
        }
        spans.push_back({sentence_index, pos, pos + best.length, best.label});
        pos += best.length;
    }

    // spelled ordinals, token pass
    for (const Token& t : tokenize(sentence)) {
        std::string word = lower_ascii(sentence.substr(t.begin, t.end - t.begin));
        bool is_ordinal = false;
        for (std::string_view o : kSpelledOrdinals)
            if (word == o) is_ordinal = true;
        if (!is_ordinal) continue;
        bool overlap = false;
        for (const SpanAnnotation& s : spans)
            if (t.begin < s.end && s.begin < t.end) overlap = true;
        if (!overlap) spans.push_back({sentence_index, t.begin, t.end, SpanLabel::Ordinal});
    }

    std::sort(spans.begin(), spans.end(),
              [](const SpanAnnotation& a, const SpanAnnotation& b) { return a.begin < b.begin; });
    return spans;
}

namespace {

// Digit-randomizing rewrite that keeps every non-digit byte (commas, dots,
// separators) in place. The first digit of the surface stays nonzero when the
// surface has more than one digit, so digit counts survive.
std::string randomize_digits(std::string_view original, Rng& rng) {
    std::string out(original);
    std::size_t digits = 0;
    std::size_t first = out.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (is_ascii_digit(out[i])) {
            if (digits == 0) first = i;
            ++digits;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!is_ascii_digit(out[i])) continue;
        const bool keep_nonzero = i == first && digits > 1;
        out[i] = static_cast<char>('0' + (keep_nonzero ? 1 + rng.below(9) : rng.below(10)));
    }
    return out;
}

// Deterministic fallback when random draws keep colliding with the original.
std::string bump_last_digit(std::string_view original) {
    std::string out(original);
    for (std::size_t i = out.size(); i > 0; --i) {
        char& c = out[i - 1];
        if (!is_ascii_digit(c)) continue;
        const bool leading = (i - 1 == 0 || !is_ascii_digit(out[i - 2])) && i < out.size() &&
                             is_ascii_digit(out[i]);
        int d = c - '0';
        d = leading ? (d % 9) + 1 : (d + 1) % 10;
        c = static_cast<char>('0' + d);
        return out;
    }
    return out;
}

std::string_view ordinal_suffix(int value) {
    const int mod100 = value % 100;
    if (mod100 >= 11 && mod100 <= 13) return "th";
    switch (value % 10) {
        case 1: return "st";
        case 2: return "nd";
        case 3: return "rd";
        default: return "th";
    }
}

std::string pad2(std::uint64_t v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

std::string replace_percent(std::string_view original, Rng& rng) {
    std::string_view number = original.substr(0, original.size() - 1);
    auto dot = number.find('.');
    for (int tries = 0; tries < 64; ++tries) {
        std::string out;
        if (dot == std::string_view::npos) {
            out = std::to_string(rng.below(101)) + "%";
        } else {
            out = std::to_string(rng.below(100)) + ".";
            for (std::size_t i = dot + 1; i < number.size(); ++i)
                out.push_back(static_cast<char>('0' + rng.below(10)));
            out += "%";
        }
        if (out != original) return out;
    }
    return bump_last_digit(original);
}

std::string replace_ordinal(std::string_view original, Rng& rng) {
    std::string lower = lower_ascii(original);
    for (std::size_t i = 0; i < kSpelledOrdinals.size(); ++i) {
        if (lower != kSpelledOrdinals[i]) continue;
        std::uint64_t pick = rng.below(kSpelledOrdinals.size() - 1);
        if (pick >= i) ++pick;
        return match_capitalization(original, std::string(kSpelledOrdinals[pick]));
    }
    // digit style: randomize the numeral, recompute the suffix
    std::string_view numeral = original.substr(0, original.size() - 2);
    const bool upper_suffix = is_ascii_upper(original[original.size() - 2]);
    for (int tries = 0; tries < 64; ++tries) {
        std::string digits = randomize_digits(numeral, rng);
        if (digits == numeral) continue;
        std::string suffix(ordinal_suffix(parse_int(digits)));
        if (upper_suffix)
            for (char& c : suffix) c = static_cast<char>(c - 'a' + 'A');
        return digits + suffix;
    }
    std::string digits = bump_last_digit(numeral);
    return digits + std::string(ordinal_suffix(parse_int(digits)));
}

std::string replace_time(std::string_view original, Rng& rng) {
    const bool two_digit_hour = original.find(':') == 2;
    for (int tries = 0; tries < 64; ++tries) {
        std::string hour =
            two_digit_hour ? pad2(rng.below(24)) : std::to_string(rng.below(10));
        std::string out = hour + ":" + pad2(rng.below(60));
        if (out != original) return out;
    }
    return bump_last_digit(original);
}

std::string replace_date(std::string_view original, char sep, Rng& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        std::string out;
        std::size_t i = 0;
        while (i < original.size()) {
            if (original[i] == sep) {
                out.push_back(sep);
                ++i;
                continue;
            }
            const std::size_t len = digit_run(original, i);
            std::uint64_t v = 0;
            switch (len) {
                case 1: v = 1 + rng.below(9); break;
                case 2: v = 1 + rng.below(28); break;
                case 3: v = 100 + rng.below(900); break;
                default: v = 1900 + rng.below(200); break;
            }
            std::string group = std::to_string(v);
            while (group.size() < len) group.insert(group.begin(), '0');
            out += group;
            i += len;
        }
        if (out != original) return out;
    }
    return bump_last_digit(original);
}

std::string replace_numeric_span(std::string_view surface, SpanLabel label, Rng& rng) {
    switch (label) {
        case SpanLabel::Percent: return replace_percent(surface, rng);
        case SpanLabel::Ordinal: return replace_ordinal(surface, rng);
        case SpanLabel::Time: return replace_time(surface, rng);
        case SpanLabel::Date:
            return replace_date(surface, surface.find('/') != std::string_view::npos ? '/' : '-', rng);
        case SpanLabel::Cardinal:
        case SpanLabel::Number:
        default: {
            for (int tries = 0; tries < 64; ++tries) {
                std::string out = randomize_digits(surface, rng);
                if (out != surface) return out;
            }
            return bump_last_digit(surface);
        }
    }
}

}  // namespace

namespace detail {

std::vector<std::string> transform_numbers_seeded(std::string_view sentence,
                                                  std::span<const SpanAnnotation> spans,
                                                  std::size_t cap, Rng& rng) {
    std::vector<std::string> outputs;
    if (spans.empty() || cap == 0) return outputs;

    std::vector<SpanAnnotation> ordered(spans.begin(), spans.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const SpanAnnotation& a, const SpanAnnotation& b) { return a.begin < b.begin; });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (ordered[i].begin >= ordered[i].end || ordered[i].end > sentence.size() ||
            (i > 0 && ordered[i].begin < ordered[i - 1].end))
            throw InvariantViolation("numeric spans must be in-bounds and non-overlapping");
    }

    std::set<std::string> seen;
    const std::uint64_t budget = 8 * static_cast<std::uint64_t>(cap) + 64;
    for (std::uint64_t attempt = 0; attempt < budget && outputs.size() < cap; ++attempt) {
        std::string out;
        std::size_t cursor = 0;
        bool changed = false;
        for (const SpanAnnotation& span : ordered) {
            out.append(sentence.substr(cursor, span.begin - cursor));
            std::string_view surface = sentence.substr(span.begin, span.end - span.begin);
            // keep roughly a quarter of the spans untouched per output
            if (ordered.size() > 1 && rng.below(4) == 0) {
                out.append(surface);
            } else {
                std::string replacement = replace_numeric_span(surface, span.label, rng);
                if (replacement != surface) changed = true;
                out.append(replacement);
            }
            cursor = span.end;
        }
        out.append(sentence.substr(cursor));
        if (!changed || out == sentence) continue;
        if (seen.insert(out).second) outputs.push_back(std::move(out));
    }
    return outputs;
}

}  // namespace detail

std::vector<std::string> transform_numbers(std::string_view sentence,
                                           std::span<const SpanAnnotation> spans,
                                           const AugmentConfig& config) {
    Rng rng = rng_for(config, spans.empty() ? 0 : spans.front().sentence_index,
                      TransformCategory::Number);
    return detail::transform_numbers_seeded(sentence, spans, config.cap_per_category, rng);
}

}  // namespace xsimkit
