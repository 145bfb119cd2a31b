#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <regex>
#include <set>

#include <omp.h>

#include "testutil.hpp"
#include "xsimkit/augment.hpp"
#include "xsimkit/errors.hpp"
#include "xsimkit/text.hpp"

using namespace xsimkit;

namespace {

Lexicons table1_lexicons() {
    return parse_lexicons("good\tbad\n",
                          "did not\tdid\nwas not\twas\nis not\tis\n",
                          "may\twill\n",
                          "PERSON\tCharles\nPERSON\tM. Smith\n"
                          "ORG\tthe British Royal Family\nORG\tThe University\n");
}

SpanAnnotation find_span(const std::vector<SpanAnnotation>& spans, std::string_view sentence,
                         std::string_view surface) {
    const std::size_t begin = sentence.find(surface);
    REQUIRE(begin != std::string_view::npos);
    for (const SpanAnnotation& s : spans) {
        if (s.begin == begin && s.end == begin + surface.size()) return s;
    }
    FAIL("no span covering '", surface, "'");
    return {};
}

}  // namespace

TEST_CASE("causality alternation swaps an adjective for its antonym") {
    const std::string sentence =
        "Apart from the fever and a sore throat, I feel well and in good shape to carry out my "
        "work by telecommuting.";
    auto outputs = transform_causality(sentence, table1_lexicons(), {});
    const std::string expected =
        "Apart from the fever and a sore throat, I feel well and in bad shape to carry out my "
        "work by telecommuting.";
    CHECK(std::find(outputs.begin(), outputs.end(), expected) != outputs.end());
}

TEST_CASE("causality with no applicable rule returns nothing") {
    CHECK(transform_causality("It is cold.", Lexicons{}, {}).empty());
}

TEST_CASE("strengthener substitution") {
    Lexicons lex = parse_lexicons("", "", "may\twill\n", "");
    auto outputs = transform_causality("It may rain.", lex, {});
    REQUIRE(outputs.size() == 1);
    CHECK(outputs[0] == "It will rain.");
}

TEST_CASE("negation removal and insertion") {
    Lexicons lex = parse_lexicons("", "did not\tdid\n", "", "");
    SUBCASE("removal") {
        auto outputs = transform_causality("She did not arrive.", lex, {});
        REQUIRE(outputs.size() == 1);  // insertion on "did" is suppressed inside "did not"
        CHECK(outputs[0] == "She did arrive.");
    }
    SUBCASE("insertion") {
        auto outputs = transform_causality("She did arrive.", lex, {});
        REQUIRE(outputs.size() == 1);
        CHECK(outputs[0] == "She did not arrive.");
    }
    SUBCASE("capitalization carries over") {
        auto outputs = transform_causality("Did not work.", lex, {});
        REQUIRE(outputs.size() == 1);
        CHECK(outputs[0] == "Did work.");
    }
}

TEST_CASE("causality respects the per-category cap") {
    Lexicons lex = parse_lexicons("good\tbad,poor,awful,dreadful\n", "", "", "");
    AugmentConfig config;
    config.cap_per_category = 2;
    CHECK(transform_causality("A good day.", lex, config).size() == 2);
}

TEST_CASE("entity detection matches the gazetteer and capitalized sequences") {
    const std::string sentence =
        "Charles was the first member of the British Royal Family to be awarded a degree.";
    auto spans = detect_entities(sentence, table1_lexicons());
    REQUIRE(spans.size() == 2);
    CHECK(find_span(spans, sentence, "Charles").label == SpanLabel::Person);
    CHECK(find_span(spans, sentence, "the British Royal Family").label == SpanLabel::Org);
}

TEST_CASE("entity detection negative and boundary cases") {
    Lexicons lex = table1_lexicons();
    CHECK(detect_entities("hello world", lex).empty());

    // a sentence equal to a single pooled entity string, at position 0
    auto spans = detect_entities("Charles", lex);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].begin == 0);
    CHECK(spans[0].end == 7);

    // capitalized multi-token sequence away from sentence start
    auto other = detect_entities("We toured the Grand Palace yesterday.", Lexicons{});
    REQUIRE(other.size() == 1);
    CHECK(other[0].label == SpanLabel::Other);
    CHECK(other[0].begin == std::string("We toured the ").size());

    // sentence-initial capitalized runs and single capitalized tokens do not count
    CHECK(detect_entities("Grand Palace is big.", Lexicons{}).empty());
    CHECK(detect_entities("We toured Paris yesterday.", Lexicons{}).empty());
}

TEST_CASE("entity replacement combines spans and exhausts small pools") {
    const std::string sentence =
        "Charles was the first member of the British Royal Family to be awarded a degree.";
    Lexicons lex = table1_lexicons();
    auto spans = detect_entities(sentence, lex);
    auto outputs = transform_entities(sentence, spans, lex, {});
    // one alternative per span: exactly the three non-identity combinations
    REQUIRE(outputs.size() == 3);
    CHECK(std::find(outputs.begin(), outputs.end(),
                    "M. Smith was the first member of The University to be awarded a degree.") !=
          outputs.end());
    for (const std::string& out : outputs) CHECK(out != sentence);
}

TEST_CASE("entity replacement edge cases") {
    Lexicons lex = parse_lexicons("", "", "", "GPE\tFrance\nGPE\tTokyo\nGPE\tOslo\nGPE\tLima\n");
    CHECK(transform_entities("No entities here.", {}, lex, {}).empty());

    // 1 span, pool of 3 distinct alternatives, cap far above: exhaustion
    const std::string sentence = "They flew to France today.";
    auto spans = detect_entities(sentence, lex);
    REQUIRE(spans.size() == 1);
    auto outputs = transform_entities(sentence, spans, lex, {});
    CHECK(outputs.size() == 3);
    std::set<std::string> unique(outputs.begin(), outputs.end());
    CHECK(unique.size() == 3);
    CHECK(unique.contains("They flew to Tokyo today."));
    CHECK(unique.contains("They flew to Oslo today."));
    CHECK(unique.contains("They flew to Lima today."));
}

TEST_CASE("entity replacement respects the cap and is deterministic") {
    Lexicons lex = parse_lexicons(
        "", "", "",
        "PERSON\tAda\nPERSON\tBo\nPERSON\tCy\nPERSON\tDee\nPERSON\tEli\nPERSON\tFay\n"
        "PERSON\tGus\nPERSON\tHal\nPERSON\tIvy\nPERSON\tJo\n");
    const std::string sentence = "Ada met Bo and Cy at noon.";
    auto spans = detect_entities(sentence, lex);
    REQUIRE(spans.size() == 3);
    AugmentConfig config;
    config.cap_per_category = 5;
    config.seed = 99;
    auto a = transform_entities(sentence, spans, lex, config);
    auto b = transform_entities(sentence, spans, lex, config);
    CHECK(a == b);
    CHECK(a.size() == 5);
    config.seed = 100;
    CHECK(transform_entities(sentence, spans, lex, config) != a);
}

TEST_CASE("number detection labels percents, cardinals and ordinals") {
    const std::string sentence =
        "Nadal bagged 88% net points in the match winning 76 points in the first serve.";
    auto spans = detect_numbers(sentence);
    REQUIRE(spans.size() == 3);
    CHECK(find_span(spans, sentence, "88%").label == SpanLabel::Percent);
    CHECK(find_span(spans, sentence, "76").label == SpanLabel::Cardinal);
    CHECK(find_span(spans, sentence, "first").label == SpanLabel::Ordinal);
}

TEST_CASE("number detection pattern classes") {
    CHECK(detect_numbers("no digits here").empty());

    auto time_spans = detect_numbers("meet at 10:30");
    REQUIRE(time_spans.size() == 1);
    CHECK(time_spans[0].label == SpanLabel::Time);

    const std::string mixed = "On 2021-03-04 the 3rd quarter grew 3.76 times, about 1,250 units.";
    auto spans = detect_numbers(mixed);
    CHECK(find_span(spans, mixed, "2021-03-04").label == SpanLabel::Date);
    CHECK(find_span(spans, mixed, "3rd").label == SpanLabel::Ordinal);
    CHECK(find_span(spans, mixed, "3.76").label == SpanLabel::Number);
    CHECK(find_span(spans, mixed, "1,250").label == SpanLabel::Cardinal);
    CHECK(spans.size() == 4);

    // invalid clock values fall back to cardinals
    auto not_time = detect_numbers("score was 10:99");
    for (const auto& s : not_time) CHECK(s.label == SpanLabel::Cardinal);
    CHECK(not_time.size() == 2);
}

TEST_CASE("number replacement preserves class and format") {
    AugmentConfig config;
    config.seed = 7;

    SUBCASE("percent stays a percent in range") {
        const std::string sentence = "Turnout was 50% overall.";
        auto spans = detect_numbers(sentence);
        REQUIRE(spans.size() == 1);
        auto outputs = transform_numbers(sentence, spans, config);
        REQUIRE(!outputs.empty());
        const std::regex pct("^Turnout was (\\d{1,3})% overall\\.$");
        for (const std::string& out : outputs) {
            std::smatch m;
            REQUIRE(std::regex_match(out, m, pct));
            CHECK(m[1].str() != "50");
            CHECK(std::stoi(m[1].str()) <= 100);
        }
    }
    SUBCASE("ordinals keep their style") {
        const std::string sentence = "the first serve and the 2nd set";
        auto spans = detect_numbers(sentence);
        REQUIRE(spans.size() == 2);
        auto outputs = transform_numbers(sentence, spans, config);
        REQUIRE(!outputs.empty());
        const std::regex shape(
            "^the (first|second|third|fourth|fifth|sixth|seventh|eighth|ninth|tenth) serve and "
            "the (\\d)(st|nd|rd|th) set$");
        for (const std::string& out : outputs) {
            std::smatch m;
            REQUIRE(std::regex_match(out, m, shape));
            const int v = std::stoi(m[2].str());
            const char* want = (v == 1) ? "st" : (v == 2) ? "nd" : (v == 3) ? "rd" : "th";
            CHECK(m[3].str() == want);
        }
    }
    SUBCASE("times stay valid clock values") {
        const std::string sentence = "meet at 09:45 sharp";
        auto spans = detect_numbers(sentence);
        auto outputs = transform_numbers(sentence, spans, config);
        REQUIRE(!outputs.empty());
        const std::regex shape("^meet at (\\d{2}):(\\d{2}) sharp$");
        for (const std::string& out : outputs) {
            std::smatch m;
            REQUIRE(std::regex_match(out, m, shape));
            CHECK(out != sentence);
            CHECK(std::stoi(m[1].str()) <= 23);
            CHECK(std::stoi(m[2].str()) <= 59);
        }
    }
    SUBCASE("cardinals keep digit count and grouping") {
        const std::string sentence = "sold 1,250 units in 76 towns";
        auto spans = detect_numbers(sentence);
        auto outputs = transform_numbers(sentence, spans, config);
        REQUIRE(!outputs.empty());
        const std::regex shape("^sold [1-9],\\d{3} units in \\d{2} towns$");
        for (const std::string& out : outputs) CHECK(std::regex_match(out, shape));
    }
    SUBCASE("no numeric spans") {
        CHECK(transform_numbers("plain words only", {}, config).empty());
    }
}

TEST_CASE("build_candidate_set on inert input returns originals only") {
    EvalSet eval;
    eval.direction = "xx-eng";
    eval.sources = {"src a", "src b"};
    eval.references = {"plain words here", "more plain words"};
    CandidateSet set = build_candidate_set(eval, Lexicons{}, {});
    CHECK(set.num_originals == 2);
    CHECK(set.size() == 2);
    CHECK(set.candidates[0].text == "plain words here");
}

TEST_CASE("build_candidate_set ordering, caps and determinism") {
    EvalSet eval;
    eval.direction = "xx-eng";
    eval.references = {
        "The good doctor saw Charles at 10:30.",
        "It may rain over the British Royal Family estate on 2021-03-04.",
        "She did not sell 1,250 units, a 50% drop.",
    };
    eval.sources = {"s1", "s2", "s3"};
    Lexicons lex = table1_lexicons();
    AugmentConfig config;
    config.seed = 4242;

    CandidateSet set = build_candidate_set(eval, lex, config);
    CHECK(set.num_originals == 3);
    CHECK(set.size() > 3);
    validate(set);

    // grouped by origin, then category in declaration order
    for (std::size_t i = set.num_originals + 1; i < set.size(); ++i) {
        const Candidate& prev = set.candidates[i - 1];
        const Candidate& cur = set.candidates[i];
        const bool ordered =
            prev.origin < cur.origin ||
            (prev.origin == cur.origin &&
             static_cast<int>(*prev.transform) <= static_cast<int>(*cur.transform));
        CHECK(ordered);
    }

    // determinism across thread counts
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    CandidateSet serial = build_candidate_set(eval, lex, config);
    omp_set_num_threads(saved > 1 ? saved : 2);
    CandidateSet parallel = build_candidate_set(eval, lex, config);
    omp_set_num_threads(saved);
    CHECK(serial == set);
    CHECK(parallel == set);

    // caps hold at 1 and 3
    for (std::size_t cap : {std::size_t(1), std::size_t(3)}) {
        AugmentConfig capped = config;
        capped.cap_per_category = cap;
        CandidateSet small = build_candidate_set(eval, lex, capped);
        std::map<std::pair<std::size_t, TransformCategory>, std::size_t> counts;
        for (std::size_t i = small.num_originals; i < small.size(); ++i)
            ++counts[{small.candidates[i].origin, *small.candidates[i].transform}];
        for (const auto& [key, count] : counts) CHECK(count <= cap);
    }

    // categories can be disabled
    AugmentConfig only_causality = config;
    only_causality.categories = {TransformCategory::Causality};
    for (const Candidate& c : build_candidate_set(eval, lex, only_causality).candidates)
        CHECK((c.is_original() || c.transform == TransformCategory::Causality));
}

TEST_CASE("external annotations inject spans") {
    EvalSet eval;
    eval.direction = "xx-eng";
    eval.sources = {"s1"};
    eval.references = {"the committee met quietly"};
    Lexicons lex = parse_lexicons("", "", "", "ORG\tthe committee\nORG\tthe board\n");
    // without annotations the lowercase phrase is found by the gazetteer, so
    // drop it from the pool used for detection but keep replacement targets
    Lexicons detect_free = parse_lexicons("", "", "", "ORG\tthe board\nORG\tthe panel\n");
    AugmentConfig config;

    CandidateSet plain = build_candidate_set(eval, detect_free, config);
    CHECK(plain.size() == 1);  // nothing detected

    std::vector<SpanAnnotation> spans = {{0, 0, std::string("the committee").size(), SpanLabel::Org}};
    CandidateSet augmented = build_candidate_set(eval, detect_free, config, spans);
    CHECK(augmented.size() == 3);
    CHECK(augmented.candidates[1].text == "the board met quietly");
    CHECK(augmented.candidates[2].text == "the panel met quietly");

    SUBCASE("out-of-range annotations are rejected") {
        std::vector<SpanAnnotation> bad = {{5, 0, 3, SpanLabel::Org}};
        CHECK_THROWS_AS(build_candidate_set(eval, lex, config, bad), InvariantViolation);
    }
}

TEST_CASE("annotation files parse and reject malformed rows") {
    testutil::TempDir tmp("spans");
    testutil::write_file(tmp.file("spans.tsv"), "# comment\n0\t5\t9\tPERSON\n2\t0\t4\tCARDINAL\n");
    auto spans = load_annotations(tmp.file("spans.tsv"));
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].sentence_index == 0);
    CHECK(spans[0].begin == 5);
    CHECK(spans[0].end == 9);
    CHECK(spans[0].label == SpanLabel::Person);
    CHECK(spans[1].label == SpanLabel::Cardinal);

    testutil::write_file(tmp.file("bad.tsv"), "0\t5\t9\tNOPE\n");
    CHECK_THROWS_AS(load_annotations(tmp.file("bad.tsv")), FormatError);
    testutil::write_file(tmp.file("swap.tsv"), "0\t9\t5\tPERSON\n");
    CHECK_THROWS_AS(load_annotations(tmp.file("swap.tsv")), FormatError);
}

TEST_CASE("lexicon invariants") {
    CHECK_THROWS_AS(parse_lexicons("good\tgood\n", "", "", ""), InvariantViolation);
    CHECK_THROWS_AS(parse_lexicons("", "", "may\twill\nwill\tmay\n", ""), InvariantViolation);
    CHECK_THROWS_AS(parse_lexicons("", "", "", "NOPE\tsomething\n"), FormatError);
    CHECK_NOTHROW(parse_lexicons("good\tbad\nbad\tgood\n", "", "", ""));
    CHECK_THROWS_AS(load_lexicons("/nonexistent/lexicon/dir"), Error);
}

TEST_CASE("augment config validation") {
    EvalSet eval;
    eval.sources = {"s"};
    eval.references = {"r words"};
    AugmentConfig config;
    config.categories = {};
    CHECK_THROWS_AS(build_candidate_set(eval, Lexicons{}, config), ConfigError);
}
