#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "freespectra/errors.hpp"

namespace freespectra::oracle {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;

/// Free product of finite cyclic groups Z_{n_1} * ... * Z_{n_k}.
struct GroupSpec {
    std::vector<int> orders;  // each >= 2

    explicit GroupSpec(std::vector<int> n);
    int factors() const { return static_cast<int>(orders.size()); }
};

/// Reduced word: alternating letters (factor index, exponent), exponents in
/// [1, n_factor - 1].  The empty word is the identity.
struct GroupWord {
    std::vector<std::pair<int, int>> letters;

    bool operator==(const GroupWord& other) const = default;
    bool is_identity() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }
};

/// Ordering by length, then lexicographically on letters; used for
/// deterministic term storage.
struct WordOrder {
    bool operator()(const GroupWord& a, const GroupWord& b) const;
};

/// Concatenation with cascading reduction at the seam.
GroupWord word_concat(const GroupSpec& group, const GroupWord& w1, const GroupWord& w2);

/// Finitely supported element of the group algebra.  Words form an
/// orthonormal basis for the trace inner product, so ||A||_2^2 is the sum
/// of squared coefficient moduli and the trace is the identity coefficient.
template <typename Coeff>
struct AlgebraElement {
    std::map<GroupWord, Coeff, WordOrder> terms;

    static AlgebraElement unit() {
        AlgebraElement e;
        e.terms[GroupWord{}] = Coeff(1);
        return e;
    }
    static AlgebraElement word(GroupWord w, Coeff c = Coeff(1)) {
        AlgebraElement e;
        e.terms[std::move(w)] = c;
        return e;
    }

    Coeff trace() const {
        auto it = terms.find(GroupWord{});
        return it == terms.end() ? Coeff(0) : it->second;
    }

    AlgebraElement& operator+=(const AlgebraElement& other) {
        for (const auto& [w, c] : other.terms) {
            auto [it, fresh] = terms.emplace(w, c);
            if (!fresh) {
                it->second += c;
                if (it->second == Coeff(0)) terms.erase(it);
            }
        }
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& other) {
        for (const auto& [w, c] : other.terms) {
            auto [it, fresh] = terms.emplace(w, -c);
            if (!fresh) {
                it->second -= c;
                if (it->second == Coeff(0)) terms.erase(it);
            }
        }
        return *this;
    }
    AlgebraElement& operator*=(const Coeff& scalar) {
        if (scalar == Coeff(0)) {
            terms.clear();
            return *this;
        }
        for (auto& [w, c] : terms) c *= scalar;
        return *this;
    }
};

constexpr std::size_t kAlgebraTermCap = 10'000'000;

template <typename Coeff>
AlgebraElement<Coeff> algebra_mul(const GroupSpec& group, const AlgebraElement<Coeff>& a,
                                  const AlgebraElement<Coeff>& b) {
    AlgebraElement<Coeff> out;
    for (const auto& [wa, ca] : a.terms) {
        for (const auto& [wb, cb] : b.terms) {
            const Coeff c = ca * cb;
            if (c == Coeff(0)) continue;
            GroupWord w = word_concat(group, wa, wb);
            auto [it, fresh] = out.terms.emplace(std::move(w), c);
            if (!fresh) {
                it->second += c;
                if (it->second == Coeff(0)) out.terms.erase(it);
            }
            if (out.terms.size() > kAlgebraTermCap)
                throw CapacityError("algebra_mul: term count exceeds cap");
        }
    }
    return out;
}

constexpr int kTraceMomentCap = 24;

/// Exact trace of (sum of generators)^p; the coefficient of the identity
/// word after p-fold multiplication.
BigInt trace_moment(const GroupSpec& group, int p);

/// Matrix of left multiplication by sum w_i u_i on the span of words with at
/// most max_length letters; images that leave the ball are truncated.
Eigen::MatrixXcd ball_operator(const GroupSpec& group, const std::vector<Complex>& weights,
                               int max_length);

/// Words of at most max_length letters, in (length, lex) order.
std::vector<GroupWord> ball_words(const GroupSpec& group, int max_length,
                                  std::size_t cap = 4000);

}  // namespace freespectra::oracle
