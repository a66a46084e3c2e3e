// SPDX-License-Identifier: Apache-2.0

#include "foodkg/metrics/metrics.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "foodkg/common/text.hpp"

namespace foodkg::metrics {

namespace {

struct Block {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t size = 0;
};

// Longest common block of a[alo, ahi) and b[blo, bhi). `prev` and `cur`
// each hold at least bhi - blo + 1 run lengths.
Block longest_block(std::u32string_view a, std::u32string_view b, std::size_t alo, std::size_t ahi,
                    std::size_t blo, std::size_t bhi, std::uint32_t* prev, std::uint32_t* cur)
{
    std::size_t best_size = 0;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    const std::size_t width = bhi - blo;
    std::fill_n(prev, width + 1, 0u);
    cur[0] = 0;
    for (std::size_t i = alo; i < ahi; ++i) {
        const char32_t ca = a[i];
        for (std::size_t j = 0; j < width; ++j) {
            const std::uint32_t run = ca == b[blo + j] ? prev[j] + 1 : 0;
            cur[j + 1] = run;
            // Strictly longer only: the first hit in (a, b) scan order wins ties.
            const bool longer = run > best_size;
            best_size = longer ? run : best_size;
            best_i = longer ? i : best_i;
            best_j = longer ? j : best_j;
        }
        std::swap(prev, cur);
    }
    if (best_size == 0)
        return Block{alo, blo, 0};
    Block best{best_i + 1 - best_size, blo + best_j + 1 - best_size, best_size};
    return best;
}

std::size_t matches_in(std::u32string_view a, std::u32string_view b, std::size_t alo, std::size_t ahi,
                       std::size_t blo, std::size_t bhi, std::uint32_t* prev, std::uint32_t* cur)
{
    if (alo >= ahi || blo >= bhi)
        return 0;
    const Block block = longest_block(a, b, alo, ahi, blo, bhi, prev, cur);
    if (block.size == 0)
        return 0;
    return block.size + matches_in(a, b, alo, block.a, blo, block.b, prev, cur) +
           matches_in(a, b, block.a + block.size, ahi, block.b + block.size, bhi, prev, cur);
}

// Bit-parallel variant for strings of at most 64 code points. eq[i] has bit
// j set when a[i] == b[j]; a run of length k ending at (i, j) exists when bit
// j of level k at row i is set.
constexpr std::size_t kWordBits = 64;

std::size_t matches_bitwise(const std::uint64_t* eq, std::size_t alo, std::size_t ahi, std::size_t blo,
                            std::size_t bhi, std::uint64_t* cur, std::uint64_t* next)
{
    if (alo >= ahi || blo >= bhi)
        return 0;
    const std::uint64_t hi_mask = bhi == kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << bhi) - 1;
    const std::uint64_t range = hi_mask & ~((std::uint64_t{1} << blo) - 1);
    std::uint64_t any = 0;
    for (std::size_t i = alo; i < ahi; ++i) {
        cur[i] = eq[i] & range;
        any |= cur[i];
    }
    if (any == 0)
        return 0;
    std::size_t k = 1;
    for (;;) {
        any = 0;
        for (std::size_t i = alo + k; i < ahi; ++i) {
            next[i] = eq[i] & range & (cur[i - 1] << 1);
            any |= next[i];
        }
        if (any == 0)
            break;
        std::swap(cur, next);
        ++k;
    }
    std::size_t end_i = alo + k - 1;
    while (cur[end_i] == 0)
        ++end_i;
    const auto end_j = static_cast<std::size_t>(std::countr_zero(cur[end_i]));
    const std::size_t block_a = end_i + 1 - k;
    const std::size_t block_b = end_j + 1 - k;
    return k + matches_bitwise(eq, alo, block_a, blo, block_b, cur, next) +
           matches_bitwise(eq, block_a + k, ahi, block_b + k, bhi, cur, next);
}

// Match masks for both directions of a short pair, built from the distinct
// code points of a and b: eq_ab[i] has bit j set when a[i] == b[j], eq_ba is
// the transpose.
struct ShortPair {
    std::array<std::uint64_t, kWordBits> eq_ab;
    std::array<std::uint64_t, kWordBits> eq_ba;

    ShortPair(std::u32string_view a, std::u32string_view b)
    {
        std::array<char32_t, 2 * kWordBits> symbols;
        std::array<std::uint64_t, 2 * kWordBits> in_a;
        std::array<std::uint64_t, 2 * kWordBits> in_b;
        std::array<std::uint8_t, kWordBits> class_a;
        std::array<std::uint8_t, kWordBits> class_b;
        std::size_t distinct = 0;
        const auto classify = [&](char32_t c) {
            std::size_t k = 0;
            while (k < distinct && symbols[k] != c)
                ++k;
            if (k == distinct) {
                symbols[distinct++] = c;
                in_a[k] = 0;
                in_b[k] = 0;
            }
            return static_cast<std::uint8_t>(k);
        };
        for (std::size_t j = 0; j < b.size(); ++j) {
            class_b[j] = classify(b[j]);
            in_b[class_b[j]] |= std::uint64_t{1} << j;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            class_a[i] = classify(a[i]);
            in_a[class_a[i]] |= std::uint64_t{1} << i;
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            eq_ab[i] = in_b[class_a[i]];
        for (std::size_t j = 0; j < b.size(); ++j)
            eq_ba[j] = in_a[class_b[j]];
    }
};

bool fits_word(std::u32string_view a, std::u32string_view b)
{
    return a.size() <= kWordBits && b.size() <= kWordBits;
}

std::size_t short_matches(const std::uint64_t* eq, std::size_t n, std::size_t m)
{
    std::array<std::uint64_t, kWordBits> cur;
    std::array<std::uint64_t, kWordBits> next;
    return matches_bitwise(eq, 0, n, 0, m, cur.data(), next.data());
}

} // namespace

std::size_t gestalt_matches(std::u32string_view a, std::u32string_view b)
{
    if (!fits_word(a, b))
        return gestalt_matches_dp(a, b);
    const ShortPair pair(a, b);
    return short_matches(pair.eq_ab.data(), a.size(), b.size());
}

std::size_t gestalt_matches_dp(std::u32string_view a, std::u32string_view b)
{
    std::vector<std::uint32_t> rows(2 * (b.size() + 1));
    return matches_in(a, b, 0, a.size(), 0, b.size(), rows.data(), rows.data() + b.size() + 1);
}

double gestalt_similarity(std::u32string_view a, std::u32string_view b)
{
    const std::size_t total = a.size() + b.size();
    if (total == 0)
        return 1.0;
    std::size_t m = 0;
    if (fits_word(a, b)) {
        const ShortPair pair(a, b);
        m = std::max(short_matches(pair.eq_ab.data(), a.size(), b.size()),
                     short_matches(pair.eq_ba.data(), b.size(), a.size()));
    } else {
        m = std::max(gestalt_matches_dp(a, b), gestalt_matches_dp(b, a));
    }
    return 2.0 * static_cast<double>(m) / static_cast<double>(total);
}

double gestalt_similarity(std::string_view a, std::string_view b)
{
    return gestalt_similarity(text::to_code_points(a), text::to_code_points(b));
}

double set_f1(const LabelSet& truth, const LabelSet& predicted)
{
    if (truth.empty() && predicted.empty())
        return 1.0;
    std::size_t common = 0;
    for (const auto& label : predicted)
        common += truth.contains(label);
    if (common == 0)
        return 0.0;
    const double p = static_cast<double>(common) / static_cast<double>(predicted.size());
    const double r = static_cast<double>(common) / static_cast<double>(truth.size());
    return 2.0 * p * r / (p + r);
}

F1Result binary_f1(const BinaryConfusion& c)
{
    const double p = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    const double r = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (p + r == 0.0)
        return F1Result{0.0, true};
    return F1Result{2.0 * p * r / (p + r), false};
}

MeanF1Result mean_label_f1(const std::map<std::string, BinaryConfusion>& confusions,
                           std::span<const std::string> labels)
{
    if (labels.empty())
        throw InvalidArgumentError("mean_label_f1 needs at least one label");
    MeanF1Result result;
    double sum = 0.0;
    for (const auto& label : labels) {
        const auto it = confusions.find(label);
        if (it == confusions.end())
            throw InvalidArgumentError("no confusion counts for label '" + label + "'");
        const F1Result f1 = binary_f1(it->second);
        if (f1.degenerate)
            result.degenerate_labels.push_back(label);
        result.per_label[label] = f1;
        sum += f1.value;
    }
    result.mean = sum / static_cast<double>(labels.size());
    return result;
}

std::map<std::string, BinaryConfusion> tally_confusions(std::span<const std::map<std::string, bool>> truth,
                                                        std::span<const std::map<std::string, bool>> predicted,
                                                        std::span<const std::string> labels)
{
    if (truth.size() != predicted.size())
        throw InvalidArgumentError("truth and prediction counts differ");
    const auto flag = [](const std::map<std::string, bool>& m, const std::string& k) {
        const auto it = m.find(k);
        return it != m.end() && it->second;
    };
    std::map<std::string, BinaryConfusion> out;
    for (const auto& label : labels) {
        BinaryConfusion& c = out[label];
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const bool t = flag(truth[i], label);
            const bool p = flag(predicted[i], label);
            c.tp += t && p;
            c.fp += !t && p;
            c.fn += t && !p;
            c.tn += !t && !p;
        }
    }
    return out;
}

double retrieval_accuracy(std::span<const RetrievalOutcome> outcomes)
{
    if (outcomes.empty())
        throw InvalidArgumentError("retrieval_accuracy needs at least one query");
    std::size_t hits = 0;
    for (const auto& o : outcomes)
        hits += std::find(o.predicted.begin(), o.predicted.end(), o.truth) != o.predicted.end();
    return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

std::string normalize_for_containment(std::string_view s)
{
    return text::collapse_whitespace(text::to_lower(text::nfc(s)));
}

bool contains_expected(std::string_view response, std::string_view expected)
{
    return normalize_for_containment(response).find(normalize_for_containment(expected)) != std::string::npos;
}

double containment_accuracy(std::span<const ResponsePair> pairs)
{
    if (pairs.empty())
        throw InvalidArgumentError("containment_accuracy needs at least one pair");
    std::size_t hits = 0;
    for (const auto& p : pairs)
        hits += contains_expected(p.response, p.expected);
    return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

} // namespace foodkg::metrics
