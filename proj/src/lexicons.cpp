#include "xsimkit/lexicons.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "xsimkit/errors.hpp"
#include "xsimkit/text.hpp"

namespace xsimkit {

std::string_view to_token(SpanLabel label) {
    switch (label) {
        case SpanLabel::Person: return "PERSON";
        case SpanLabel::Org: return "ORG";
        case SpanLabel::Gpe: return "GPE";
        case SpanLabel::Other: return "OTHER";
        case SpanLabel::Date: return "DATE";
        case SpanLabel::Ordinal: return "ORDINAL";
        case SpanLabel::Cardinal: return "CARDINAL";
        case SpanLabel::Time: return "TIME";
        case SpanLabel::Number: return "NUMBER";
        case SpanLabel::Percent: return "PERCENT";
    }
    return "";
}

std::optional<SpanLabel> span_label_from_token(std::string_view token) {
    for (SpanLabel l : {SpanLabel::Person, SpanLabel::Org, SpanLabel::Gpe, SpanLabel::Other,
                        SpanLabel::Date, SpanLabel::Ordinal, SpanLabel::Cardinal, SpanLabel::Time,
                        SpanLabel::Number, SpanLabel::Percent}) {
        if (token == to_token(l)) return l;
    }
    return std::nullopt;
}

bool is_entity_label(SpanLabel label) {
    return label == SpanLabel::Person || label == SpanLabel::Org || label == SpanLabel::Gpe ||
           label == SpanLabel::Other;
}

bool is_numeric_label(SpanLabel label) { return !is_entity_label(label); }

const std::vector<std::string>* Lexicons::pool_for(SpanLabel label) const {
    for (const auto& [cls, surfaces] : entity_pool) {
        if (cls == label) return &surfaces;
    }
    return nullptr;
}

namespace {

// Rows: key<TAB>value[,value...]. '#' comments and blank lines skipped.
void parse_pair_rows(std::string_view content, const std::string& what,
                     const std::function<void(std::string, std::vector<std::string>)>& sink) {
    std::size_t lineno = 0;
    for (const std::string& raw : split(content, '\n')) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty())
            throw FormatError(what + " line " + std::to_string(lineno) + ": expected key<TAB>value");
        std::vector<std::string> values;
        for (const std::string& v : split(fields[1], ',')) {
            std::string t(trim(v));
            if (!t.empty()) values.push_back(std::move(t));
        }
        if (values.empty())
            throw FormatError(what + " line " + std::to_string(lineno) + ": no replacement values");
        sink(std::string(trim(fields[0])), std::move(values));
    }
}

std::string read_optional_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Lexicons parse_lexicons(std::string_view antonyms_tsv, std::string_view negations_tsv,
                        std::string_view strengtheners_tsv, std::string_view entities_tsv) {
    Lexicons lex;

    parse_pair_rows(antonyms_tsv, "antonyms", [&](std::string key, std::vector<std::string> values) {
        std::string k = lower_ascii(key);
        auto [it, inserted] = lex.antonym_index.try_emplace(k, lex.antonyms.size());
        if (inserted) lex.antonyms.emplace_back(k, std::move(values));
        else
            for (std::string& v : values) lex.antonyms[it->second].second.push_back(std::move(v));
    });

    parse_pair_rows(negations_tsv, "negations", [&](std::string key, std::vector<std::string> values) {
        lex.negation_pairs.emplace_back(std::move(key), values.front());
    });

    parse_pair_rows(strengtheners_tsv, "strengtheners",
                    [&](std::string key, std::vector<std::string> values) {
                        std::string k = lower_ascii(key);
                        auto [it, inserted] = lex.strengthener_index.try_emplace(k, lex.strengtheners.size());
                        if (inserted) lex.strengtheners.emplace_back(k, values.front());
                    });

    parse_pair_rows(entities_tsv, "entities", [&](std::string key, std::vector<std::string> values) {
        auto label = span_label_from_token(key);
        if (!label || !is_entity_label(*label))
            throw FormatError("entities: unknown entity class '" + key + "'");
        std::vector<std::string>* pool = nullptr;
        for (auto& [cls, surfaces] : lex.entity_pool) {
            if (cls == *label) pool = &surfaces;
        }
        if (!pool) {
            lex.entity_pool.emplace_back(*label, std::vector<std::string>{});
            pool = &lex.entity_pool.back().second;
        }
        for (std::string& v : values) {
            bool dup = false;
            for (const std::string& existing : *pool) {
                if (existing == v) dup = true;
            }
            if (!dup) pool->push_back(std::move(v));
        }
    });

    validate(lex);
    return lex;
}

void validate(const Lexicons& lex) {
    for (const auto& [word, antonyms] : lex.antonyms) {
        for (const std::string& a : antonyms) {
            if (iequals_ascii(a, word))
                throw InvariantViolation("antonym maps '" + word + "' to itself");
        }
    }
    for (const auto& [weak, strong] : lex.strengtheners) {
        if (iequals_ascii(weak, strong))
            throw InvariantViolation("strengthener maps '" + weak + "' to itself");
        auto it = lex.strengthener_index.find(lower_ascii(strong));
        if (it != lex.strengthener_index.end() &&
            iequals_ascii(lex.strengtheners[it->second].second, weak))
            throw InvariantViolation("strengthener pair '" + weak + "'/'" + strong +
                                     "' maps in both directions");
    }
    for (const auto& [cls, surfaces] : lex.entity_pool) {
        if (surfaces.empty())
            throw InvariantViolation("entity pool for class " + std::string(to_token(cls)) +
                                     " is empty");
    }
    for (const auto& [neg, plain] : lex.negation_pairs) {
        if (neg == plain) throw InvariantViolation("negation pair maps '" + neg + "' to itself");
    }
}

Lexicons load_lexicons(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw Error("lexicon directory " + dir.string() + " does not exist");
    return parse_lexicons(read_optional_file(dir / "antonyms.tsv"),
                          read_optional_file(dir / "negations.tsv"),
                          read_optional_file(dir / "strengtheners.tsv"),
                          read_optional_file(dir / "entities.tsv"));
}

}  // namespace xsimkit
