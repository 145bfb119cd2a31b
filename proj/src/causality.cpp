#include <algorithm>

#include "xsimkit/augment.hpp"
#include "xsimkit/text.hpp"

namespace xsimkit {

namespace {

bool gap_is_space(std::string_view s, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
        if (s[i] != ' ') return false;
    }
    return from < to;
}

// Byte ranges where `phrase` (space-separated words) matches a run of
// consecutive tokens, case-insensitively, with space-only gaps.
std::vector<std::pair<std::size_t, std::size_t>> match_phrase(std::string_view sentence,
                                                              const std::vector<Token>& tokens,
                                                              std::string_view phrase) {
    std::vector<std::string> words = split(phrase, ' ');
    std::vector<std::pair<std::size_t, std::size_t>> matches;
    if (words.empty() || tokens.size() < words.size()) return matches;
    for (std::size_t i = 0; i + words.size() <= tokens.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < words.size() && ok; ++j) {
            const Token& t = tokens[i + j];
            std::string_view text = sentence.substr(t.begin, t.end - t.begin);
            if (!iequals_ascii(text, words[j])) ok = false;
            if (ok && j + 1 < words.size() && !gap_is_space(sentence, t.end, tokens[i + j + 1].begin))
                ok = false;
        }
        if (ok) matches.emplace_back(tokens[i].begin, tokens[i + words.size() - 1].end);
    }
    return matches;
}

bool overlaps(std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
    return a.first < b.second && b.first < a.second;
}

void push_unique(std::vector<std::string>& outputs, std::string candidate, std::string_view input) {
    if (candidate == input) return;
    if (std::find(outputs.begin(), outputs.end(), candidate) != outputs.end()) return;
    outputs.push_back(std::move(candidate));
}

}  // namespace

std::vector<std::string> transform_causality(std::string_view sentence, const Lexicons& lexicons,
                                             const AugmentConfig& config) {
    std::vector<std::string> outputs;
    const std::vector<Token> tokens = tokenize(sentence);
    if (tokens.empty()) return outputs;

    // (1) one antonym substitution per output
    for (const Token& t : tokens) {
        std::string_view text = sentence.substr(t.begin, t.end - t.begin);
        auto it = lexicons.antonym_index.find(lower_ascii(text));
        if (it == lexicons.antonym_index.end()) continue;
        for (const std::string& antonym : lexicons.antonyms[it->second].second) {
            push_unique(outputs,
                        replace_range(sentence, t.begin, t.end, match_capitalization(text, antonym)),
                        sentence);
        }
    }

    // (2) one negation removal or insertion per output
    for (const auto& [negated, plain] : lexicons.negation_pairs) {
        auto removals = match_phrase(sentence, tokens, negated);
        for (auto [begin, end] : removals) {
            std::string_view original = sentence.substr(begin, end - begin);
            push_unique(outputs,
                        replace_range(sentence, begin, end, match_capitalization(original, plain)),
                        sentence);
        }
        // insertion: matches of the plain form that are not part of a negated form
        for (auto range : match_phrase(sentence, tokens, plain)) {
            bool inside = false;
            for (auto rem : removals) {
                if (overlaps(range, rem)) inside = true;
            }
            if (inside) continue;
            std::string_view original = sentence.substr(range.first, range.second - range.first);
            push_unique(outputs,
                        replace_range(sentence, range.first, range.second,
                                      match_capitalization(original, negated)),
                        sentence);
        }
    }

    // (3) one strengthener substitution per output
    for (const Token& t : tokens) {
        std::string_view text = sentence.substr(t.begin, t.end - t.begin);
        auto it = lexicons.strengthener_index.find(lower_ascii(text));
        if (it == lexicons.strengthener_index.end()) continue;
        push_unique(outputs,
                    replace_range(sentence, t.begin, t.end,
                                  match_capitalization(text, lexicons.strengtheners[it->second].second)),
                    sentence);
    }

    if (outputs.size() > config.cap_per_category) outputs.resize(config.cap_per_category);
    return outputs;
}

}  // namespace xsimkit
