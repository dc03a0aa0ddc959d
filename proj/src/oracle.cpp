#include "freespectra/oracle.hpp"

namespace freespectra::oracle {

GroupSpec::GroupSpec(std::vector<int> n) : orders(std::move(n)) {
    if (orders.empty()) throw InvalidInput("group needs at least one factor");
    for (int m : orders)
        if (m < 2) throw InvalidInput("cyclic factor order must be >= 2");
}

bool WordOrder::operator()(const GroupWord& a, const GroupWord& b) const {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
}

namespace {

// Appends one letter with reduction against the current tail.
void push_letter(const GroupSpec& group, std::vector<std::pair<int, int>>& letters, int factor,
                 int exponent) {
    const int order = group.orders.at(factor);
    exponent %= order;
    if (exponent < 0) exponent += order;
    if (exponent == 0) return;
    if (!letters.empty() && letters.back().first == factor) {
        const int merged = (letters.back().second + exponent) % order;
        letters.pop_back();
        if (merged != 0) letters.emplace_back(factor, merged);
        return;
    }
    letters.emplace_back(factor, exponent);
}

}  // namespace

GroupWord word_concat(const GroupSpec& group, const GroupWord& w1, const GroupWord& w2) {
    GroupWord out = w1;
    for (const auto& [factor, exponent] : w2.letters)
        push_letter(group, out.letters, factor, exponent);
    return out;
}

BigInt trace_moment(const GroupSpec& group, int p) {
    if (p < 0) throw InvalidInput("trace_moment: order must be >= 0");
    if (p > kTraceMomentCap)
        throw CapacityError("trace_moment: order exceeds cap " + std::to_string(kTraceMomentCap));
    AlgebraElement<BigInt> generators;
    for (int i = 0; i < group.factors(); ++i)
        generators += AlgebraElement<BigInt>::word(GroupWord{{{i, 1}}});
    AlgebraElement<BigInt> power = AlgebraElement<BigInt>::unit();
    for (int k = 0; k < p; ++k) power = algebra_mul(group, power, generators);
    return power.trace();
}

std::vector<GroupWord> ball_words(const GroupSpec& group, int max_length, std::size_t cap) {
    std::vector<GroupWord> words{GroupWord{}};
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_length; ++len) {
        const std::size_t level_end = words.size();
        for (std::size_t k = level_begin; k < level_end; ++k) {
            for (int factor = 0; factor < group.factors(); ++factor) {
                if (!words[k].letters.empty() && words[k].letters.back().first == factor) continue;
                for (int e = 1; e < group.orders[factor]; ++e) {
                    GroupWord w = words[k];
                    w.letters.emplace_back(factor, e);
                    words.push_back(std::move(w));
                    if (words.size() > cap)
                        throw CapacityError("ball_words: ball size exceeds cap");
                }
            }
        }
        level_begin = level_end;
    }
    std::sort(words.begin(), words.end(),
              [](const GroupWord& a, const GroupWord& b) { return WordOrder{}(a, b); });
    return words;
}

Eigen::MatrixXcd ball_operator(const GroupSpec& group, const std::vector<Complex>& weights,
                               int max_length) {
    if (static_cast<int>(weights.size()) != group.factors())
        throw InvalidInput("ball_operator: one weight per group factor required");
    const auto words = ball_words(group, max_length);
    std::map<GroupWord, int, WordOrder> index;
    for (std::size_t k = 0; k < words.size(); ++k) index[words[k]] = static_cast<int>(k);
    const int n = static_cast<int>(words.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int col = 0; col < n; ++col) {
        for (int factor = 0; factor < group.factors(); ++factor) {
            const GroupWord image =
                word_concat(group, GroupWord{{{factor, 1}}}, words[col]);
            auto it = index.find(image);
            if (it != index.end()) m(it->second, col) += weights[factor];
        }
    }
    return m;
}

}  // namespace freespectra::oracle
