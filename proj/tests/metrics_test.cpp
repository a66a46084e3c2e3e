// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <httplib.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <thread>

#include "foodkg/common/io.hpp"
#include "foodkg/metrics/external_scorer.hpp"
#include "foodkg/metrics/metrics.hpp"
#include "foodkg/metrics/report.hpp"
#include "support/gestalt_oracle.hpp"
#include "support/symbol_strings.hpp"

namespace fm = foodkg::metrics;
namespace ft = foodkg::testing;

namespace {

std::u32string random_string(std::mt19937& rng, std::size_t max_len, char32_t alphabet)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<char32_t> sym(0, alphabet - 1);
    std::u32string s(len(rng), U'a');
    for (auto& c : s)
        c = U'a' + sym(rng);
    return s;
}

std::string ascii(const std::u32string& s)
{
    return std::string(s.begin(), s.end());
}

} // namespace

TEST(Gestalt, IdenticalStringsScoreOne)
{
    EXPECT_EQ(fm::gestalt_similarity("kitchen", "kitchen"), 1.0);
}

TEST(Gestalt, DisjointStringsScoreZero)
{
    EXPECT_EQ(fm::gestalt_similarity("abc", "xyz"), 0.0);
}

TEST(Gestalt, AppleApples)
{
    EXPECT_EQ(ft::oracle_matches("apple", "apples"), 5u);
    EXPECT_EQ(fm::gestalt_similarity("apple", "apples"), 10.0 / 11.0);
}

TEST(Gestalt, EmptyStrings)
{
    EXPECT_EQ(fm::gestalt_similarity("", ""), 1.0);
    EXPECT_EQ(fm::gestalt_similarity("", "a"), 0.0);
    EXPECT_EQ(fm::gestalt_similarity("a", ""), 0.0);
}

TEST(Gestalt, CountsCodePointsNotBytes)
{
    // Four of five code points shared: 2 * 4 / 10.
    EXPECT_EQ(fm::gestalt_similarity("Rösti", "Rosti"), 0.8);
}

TEST(Gestalt, TieBreakPrefersLeftmostInAThenB)
{
    // Matching a[0] to b[0] leaves "aa" against "ba" for one more match;
    // matching it to b[2] would leave nothing on the right.
    EXPECT_EQ(fm::gestalt_matches(U"aaa", U"aba"), 2u);
    EXPECT_EQ(ft::oracle_matches("aaa", "aba"), 2u);
}

TEST(Gestalt, DirectionCanMatterAndSimilarityTakesTheMax)
{
    std::mt19937 rng(7);
    bool found = false;
    for (int trial = 0; trial < 200000 && !found; ++trial) {
        const auto a = random_string(rng, 7, 3);
        const auto b = random_string(rng, 7, 3);
        const auto ab = fm::gestalt_matches(a, b);
        const auto ba = fm::gestalt_matches(b, a);
        if (ab == ba)
            continue;
        found = true;
        const double expected = 2.0 * static_cast<double>(std::max(ab, ba)) / static_cast<double>(a.size() + b.size());
        EXPECT_EQ(fm::gestalt_similarity(a, b), expected);
        EXPECT_EQ(fm::gestalt_similarity(b, a), expected);
    }
    EXPECT_TRUE(found);
}

TEST(Gestalt, AgreesWithOracleOnAllPairsUpToLengthFive)
{
    const auto strings = ft::all_symbol_strings(3, 5);
    std::size_t mismatches = 0;
    for (const auto& a : strings) {
        for (const auto& b : strings) {
            mismatches += fm::gestalt_similarity(a.text, b.text) != ft::oracle_similarity(a.packed, b.packed);
            mismatches += fm::gestalt_matches(a.text, b.text) != ft::oracle_matches(a.packed, b.packed);
        }
    }
    EXPECT_EQ(mismatches, 0u);
}

TEST(Gestalt, PackedOracleAgreesWithStringOracle)
{
    const auto strings = ft::all_symbol_strings(3, 4);
    for (const auto& a : strings)
        for (const auto& b : strings)
            ASSERT_EQ(ft::oracle_matches(a.packed, b.packed), ft::oracle_matches(ascii(a.text), ascii(b.text)));
}

TEST(Gestalt, PairRepresentativesCoverEveryPairOnce)
{
    // A pair is identified by its relabelled concatenation plus where it splits.
    using Key = std::pair<ft::SymbolSequence, std::uint32_t>;
    const auto strings = ft::all_symbol_strings(3, 4);
    std::set<Key> enumerated;
    std::size_t calls = 0;
    ft::for_each_pair_representative(strings, [&](const ft::SymbolString& a, const ft::SymbolString& b) {
        ++calls;
        ASSERT_LE(a.packed.size, b.packed.size);
        enumerated.insert({ft::canonical_concat(a.packed, b.packed), a.packed.size});
        EXPECT_EQ(ft::pair_representative(a.packed, b.packed), ft::canonical_concat(a.packed, b.packed));
    });
    EXPECT_EQ(enumerated.size(), calls);
    std::set<Key> required;
    for (std::size_t i = 0; i < strings.size(); ++i)
        for (std::size_t j = i; j < strings.size(); ++j)
            required.insert({ft::pair_representative(strings[i].packed, strings[j].packed),
                             std::min(strings[i].packed.size, strings[j].packed.size)});
    EXPECT_EQ(required, enumerated);
}

TEST(Gestalt, InvariantUnderRenamingSymbols)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        auto a = random_string(rng, 30, 5);
        auto b = random_string(rng, 30, 5);
        const double before = fm::gestalt_similarity(a, b);
        std::array<char32_t, 5> perm{U'q', U'ü', U'z', U'€', U'1'};
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto& c : a)
            c = perm[c - U'a'];
        for (auto& c : b)
            c = perm[c - U'a'];
        ASSERT_EQ(fm::gestalt_similarity(a, b), before);
    }
}

TEST(Gestalt, BitParallelPathAgreesWithTable)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 3000; ++trial) {
        const char32_t alphabet = trial % 2 == 0 ? 2 : 26;
        const auto a = random_string(rng, 64, alphabet);
        const auto b = random_string(rng, 64, alphabet);
        ASSERT_EQ(fm::gestalt_matches(a, b), fm::gestalt_matches_dp(a, b));
        ASSERT_EQ(fm::gestalt_matches(a, b), ft::oracle_matches(ascii(a), ascii(b)));
    }
}

TEST(Gestalt, LongStringsUseTableAndMatchOracle)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_string(rng, 150, 4) + U"abcdabcd";
        const auto b = random_string(rng, 150, 4) + U"dcbadcba";
        ASSERT_EQ(fm::gestalt_matches(a, b), ft::oracle_matches(ascii(a), ascii(b)));
    }
}

TEST(Gestalt, SymmetricBoundedAndOneOnlyForEqualStrings)
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 5000; ++trial) {
        const auto a = random_string(rng, 12, 3);
        const auto b = random_string(rng, 12, 3);
        const double s = fm::gestalt_similarity(a, b);
        ASSERT_EQ(s, fm::gestalt_similarity(b, a));
        ASSERT_GE(s, 0.0);
        ASSERT_LE(s, 1.0);
        ASSERT_EQ(s == 1.0, a == b);
    }
}

TEST(SetF1, TabulatedCases)
{
    EXPECT_EQ(fm::set_f1({}, {}), 1.0);
    EXPECT_EQ(fm::set_f1({"1"}, {"2"}), 0.0);
    EXPECT_EQ(fm::set_f1({"1", "7"}, {"7"}), 2.0 / 3.0);
}

TEST(SetF1, OneOnlyForEqualSets)
{
    std::mt19937 rng(17);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 2000; ++trial) {
        fm::LabelSet t;
        fm::LabelSet p;
        for (int label = 0; label < 6; ++label) {
            if (coin(rng))
                t.insert(std::to_string(label));
            if (coin(rng))
                p.insert(std::to_string(label));
        }
        const double f = fm::set_f1(t, p);
        ASSERT_EQ(f == 1.0, t == p);
        ASSERT_GE(f, 0.0);
        ASSERT_LE(f, 1.0);
    }
}

TEST(SetF1, AddingCorrectLabelNeverHurtsSubsetPrediction)
{
    const fm::LabelSet truth{"a", "b", "c", "d"};
    fm::LabelSet predicted;
    double last = fm::set_f1(truth, predicted);
    for (const auto& label : truth) {
        predicted.insert(label);
        const double f = fm::set_f1(truth, predicted);
        EXPECT_GE(f, last);
        last = f;
    }
    EXPECT_EQ(last, 1.0);
}

TEST(BinaryF1, TabulatedCases)
{
    EXPECT_EQ(fm::binary_f1({5, 0, 0, 0}).value, 1.0);
    EXPECT_FALSE(fm::binary_f1({5, 0, 0, 0}).degenerate);
    EXPECT_EQ(fm::binary_f1({1, 0, 1, 0}).value, 2.0 / 3.0);
    const auto zero = fm::binary_f1({0, 0, 0, 0});
    EXPECT_EQ(zero.value, 0.0);
    EXPECT_TRUE(zero.degenerate);
}

TEST(BinaryF1, TrueNegativesDoNotMatter)
{
    EXPECT_EQ(fm::binary_f1({3, 1, 2, 0}).value, fm::binary_f1({3, 1, 2, 900}).value);
}

TEST(MeanLabelF1, UnweightedMeanWithDegenerateFlags)
{
    const std::vector<std::string> labels{"vegan", "halal", "kosher"};
    const std::map<std::string, fm::BinaryConfusion> confusions{
        {"vegan", {5, 0, 0, 1}}, {"halal", {1, 0, 1, 3}}, {"kosher", {0, 0, 0, 6}}};
    const auto result = fm::mean_label_f1(confusions, labels);
    EXPECT_DOUBLE_EQ(result.mean, (1.0 + 2.0 / 3.0 + 0.0) / 3.0);
    EXPECT_EQ(result.degenerate_labels, std::vector<std::string>{"kosher"});
    EXPECT_EQ(result.per_label.size(), 3u);
}

TEST(MeanLabelF1, PermutationInvariant)
{
    std::vector<std::string> labels;
    std::map<std::string, fm::BinaryConfusion> confusions;
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> count(0, 9);
    for (int i = 0; i < 18; ++i) {
        labels.push_back("label" + std::to_string(i));
        confusions[labels.back()] = {static_cast<std::uint64_t>(count(rng)), static_cast<std::uint64_t>(count(rng)),
                                     static_cast<std::uint64_t>(count(rng)), static_cast<std::uint64_t>(count(rng))};
    }
    const double reference = fm::mean_label_f1(confusions, labels).mean;
    for (int trial = 0; trial < 50; ++trial) {
        std::shuffle(labels.begin(), labels.end(), rng);
        EXPECT_NEAR(fm::mean_label_f1(confusions, labels).mean, reference, 1e-12);
    }
}

TEST(MeanLabelF1, MissingLabelThrows)
{
    const std::vector<std::string> labels{"vegan", "halal"};
    const std::map<std::string, fm::BinaryConfusion> confusions{{"vegan", {1, 0, 0, 0}}};
    EXPECT_THROW(fm::mean_label_f1(confusions, labels), foodkg::InvalidArgumentError);
    EXPECT_THROW(fm::mean_label_f1(confusions, {}), foodkg::InvalidArgumentError);
}

TEST(MeanLabelF1, TallyConfusions)
{
    const std::vector<std::string> labels{"vegan", "halal"};
    const std::vector<std::map<std::string, bool>> truth{{{"vegan", true}}, {{"halal", true}}, {}};
    const std::vector<std::map<std::string, bool>> predicted{{{"vegan", true}, {"halal", true}}, {}, {}};
    const auto c = fm::tally_confusions(truth, predicted, labels);
    EXPECT_EQ(c.at("vegan"), (fm::BinaryConfusion{1, 0, 0, 2}));
    EXPECT_EQ(c.at("halal"), (fm::BinaryConfusion{0, 1, 1, 1}));
    EXPECT_THROW(fm::tally_confusions(truth, {}, labels), foodkg::InvalidArgumentError);
}

TEST(RetrievalAccuracy, Cases)
{
    const std::vector<fm::RetrievalOutcome> all_correct{{{"a"}, "a"}, {{"b"}, "b"}};
    EXPECT_EQ(fm::retrieval_accuracy(all_correct), 1.0);
    const std::vector<fm::RetrievalOutcome> two_of_three{{{"a"}, "a"}, {{"b"}, "c"}, {{"d"}, "d"}};
    EXPECT_NEAR(fm::retrieval_accuracy(two_of_three), 0.6667, 1e-4);
    const std::vector<fm::RetrievalOutcome> tie{{{"x", "y"}, "y"}};
    EXPECT_EQ(fm::retrieval_accuracy(tie), 1.0);
    EXPECT_THROW(fm::retrieval_accuracy({}), foodkg::InvalidArgumentError);
}

TEST(Containment, Cases)
{
    EXPECT_TRUE(fm::contains_expected("There are 584 vegetarian recipes.", "584"));
    EXPECT_FALSE(fm::contains_expected("I don't know.", "584"));
    EXPECT_TRUE(fm::contains_expected("  584\n", "584"));
    EXPECT_TRUE(fm::contains_expected("Use  BUTTER\tand flour", "butter and"));
    // Decomposed e + combining grave against the precomposed form.
    EXPECT_TRUE(fm::contains_expected("Cre\xcc\x80me fraîche", "crème"));
    const std::vector<fm::ResponsePair> pairs{{"584 recipes", "584"}, {"none", "584"}};
    EXPECT_EQ(fm::containment_accuracy(pairs), 0.5);
    EXPECT_THROW(fm::containment_accuracy({}), foodkg::InvalidArgumentError);
}

TEST(Containment, AppendingTextNeverLowersAccuracy)
{
    std::mt19937 rng(23);
    const std::vector<std::string> words{"584", "apple", "milk", "vegan", "the", "Swiss", "none"};
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<fm::ResponsePair> pairs;
        for (int i = 0; i < 5; ++i)
            pairs.push_back({words[pick(rng)] + " " + words[pick(rng)], words[pick(rng)]});
        const double before = fm::containment_accuracy(pairs);
        ASSERT_GE(before, 0.0);
        ASSERT_LE(before, 1.0);
        for (auto& p : pairs)
            p.response += " " + words[pick(rng)];
        ASSERT_GE(fm::containment_accuracy(pairs), before);
    }
}

TEST(MetricReport, TextFormatAndAggregate)
{
    fm::MetricReport report("containment");
    report.add("q01", 1.0);
    report.add("q02", 0.0, {"fallback"});
    report.add("q03", 0.5, {"degenerate", "low_confidence"});
    EXPECT_EQ(report.n(), 3u);
    EXPECT_DOUBLE_EQ(report.aggregate(), 0.5);
    EXPECT_EQ(report.to_text(), "# task\tcontainment\n"
                                "id\tscore\tflags\n"
                                "q01\t1\t-\n"
                                "q02\t0\tfallback\n"
                                "q03\t0.5\tdegenerate,low_confidence\n"
                                "# aggregate\tmean=0.5\tn=3\n");
    EXPECT_EQ(fm::MetricReport("empty").aggregate(), 0.0);
}

TEST(MetricReport, WritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "foodkg_metric_report.tsv";
    fm::MetricReport report("split");
    report.add("r1", 0.25);
    report.write(path);
    EXPECT_EQ(foodkg::read_file(path), report.to_text());
    std::filesystem::remove(path);
}

TEST(HttpScorer, PostsTripleAndReadsScore)
{
    httplib::Server server;
    nlohmann::json seen;
    server.Post("/score", [&](const httplib::Request& req, httplib::Response& res) {
        seen = nlohmann::json::parse(req.body);
        const double score = seen["translation"] == seen["reference"] ? 0.9 : 0.4;
        res.set_content(nlohmann::json{{"score", score}}.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    fm::HttpScorer scorer("http://127.0.0.1:" + std::to_string(port) + "/score");
    const std::vector<fm::TranslationSample> samples{{"r1", "Apfel", "apple", "apple"},
                                                     {"r2", "Birne", "bear", "pear"}};
    const auto report = fm::score_translations("translation", samples, scorer);
    server.stop();
    thread.join();

    EXPECT_EQ(seen["source"], "Birne");
    ASSERT_EQ(report.n(), 2u);
    EXPECT_EQ(report.rows()[0].score, 0.9);
    EXPECT_EQ(report.rows()[1].score, 0.4);
    EXPECT_DOUBLE_EQ(report.aggregate(), 0.65);
}

TEST(HttpScorer, UnreachableAndBadUrl)
{
    EXPECT_THROW(fm::HttpScorer("not a url"), foodkg::InvalidArgumentError);
    fm::HttpScorer scorer("http://127.0.0.1:1/score", std::chrono::seconds(1));
    EXPECT_THROW(scorer.score({"x", "a", "b", "c"}), foodkg::Error);
}
