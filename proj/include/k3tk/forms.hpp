#pragma once

// Sparse exact forms: ternary (sextics, lines) and binary (the unigonal
// normal-form data), one-parameter subgroups, weight multisets, and the
// Hilbert-Mumford weight function mu.

#include "k3tk/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace k3tk::git {

struct TernaryForm {
    int degree = 0;
    std::map<std::array<int, 3>, Rat> terms;  // exponents -> nonzero coefficient

    void insert(std::array<int, 3> exp, const Rat& c) {
        if (exp[0] < 0 || exp[1] < 0 || exp[2] < 0 || exp[0] + exp[1] + exp[2] != degree)
            throw domain_error("exponent triple does not match the degree");
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(exp, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

struct BinaryForm {
    int degree = 0;
    std::map<std::array<int, 2>, Rat> terms;

    void insert(std::array<int, 2> exp, const Rat& c) {
        if (exp[0] < 0 || exp[1] < 0 || exp[0] + exp[1] != degree)
            throw domain_error("exponent pair does not match the degree");
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(exp, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

inline TernaryForm ternary(int degree, std::vector<std::pair<std::array<int, 3>, Rat>> t) {
    TernaryForm f;
    f.degree = degree;
    for (auto& [e, c] : t) f.insert(e, c);
    return f;
}

inline BinaryForm binary(int degree, std::vector<std::pair<std::array<int, 2>, Rat>> t) {
    BinaryForm f;
    f.degree = degree;
    for (auto& [e, c] : t) f.insert(e, c);
    return f;
}

inline TernaryForm multiply(const TernaryForm& a, const TernaryForm& b) {
    TernaryForm f;
    f.degree = a.degree + b.degree;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            f.insert({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return f;
}

inline TernaryForm power(const TernaryForm& a, int k) {
    TernaryForm f = ternary(0, {{{0, 0, 0}, Rat(1)}});
    for (int i = 0; i < k; ++i) f = multiply(f, a);
    return f;
}

/// Substitution x_i -> sum_j m[i][j] y_j (rows of m are the images).
inline TernaryForm substitute(const TernaryForm& f, const std::vector<std::vector<Rat>>& m) {
    if (m.size() != 3 || m[0].size() != 3) throw domain_error("frame must be a 3x3 matrix");
    std::array<TernaryForm, 3> lin;
    for (int i = 0; i < 3; ++i)
        lin[i] = ternary(1, {{{1, 0, 0}, m[i][0]}, {{0, 1, 0}, m[i][1]}, {{0, 0, 1}, m[i][2]}});
    TernaryForm out;
    out.degree = f.degree;
    for (const auto& [e, c] : f.terms) {
        TernaryForm mono = ternary(0, {{{0, 0, 0}, c}});
        for (int v = 0; v < 3; ++v)
            if (e[v] > 0) mono = multiply(mono, power(lin[v], e[v]));
        for (const auto& [me, mc] : mono.terms) out.insert(me, mc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// One-parameter subgroups and mu.

struct OnePS {
    std::vector<long long> weights;  // length 2 or 3, sums to zero, not all zero
};

inline OnePS one_ps(std::vector<long long> w) {
    long long sum = 0;
    bool nonzero = false;
    for (long long x : w) {
        sum += x;
        nonzero |= (x != 0);
    }
    if (w.size() != 2 && w.size() != 3) throw domain_error("1-PS weight vector length must be 2 or 3");
    if (sum != 0) throw domain_error("1-PS weights must sum to zero");
    if (!nonzero) throw domain_error("1-PS must be nontrivial");
    return {std::move(w)};
}

/// mu = max over the support of <weights, exponents>.
inline long long mu(const TernaryForm& f, const OnePS& lam) {
    if (lam.weights.size() != 3) throw domain_error("ternary mu needs a 3-weight 1-PS");
    if (f.terms.empty()) throw domain_error("mu of the zero form");
    bool first = true;
    long long best = 0;
    for (const auto& [e, c] : f.terms) {
        long long w = lam.weights[0] * e[0] + lam.weights[1] * e[1] + lam.weights[2] * e[2];
        if (first || w > best) best = w;
        first = false;
    }
    return best;
}

inline long long mu(const BinaryForm& f, const OnePS& lam) {
    if (lam.weights.size() != 2) throw domain_error("binary mu needs a 2-weight 1-PS");
    if (f.terms.empty()) throw domain_error("mu of the zero form");
    bool first = true;
    long long best = 0;
    for (const auto& [e, c] : f.terms) {
        long long w = lam.weights[0] * e[0] + lam.weights[1] * e[1];
        if (first || w > best) best = w;
        first = false;
    }
    return best;
}

/// mu^eps for a (sextic, line) pair.
inline Rat mu_pair(const TernaryForm& c, const TernaryForm& l, const OnePS& lam, const Rat& eps) {
    if (eps <= 0) throw domain_error("epsilon must be positive");
    return Rat(mu(c, lam)) + eps * Rat(mu(l, lam));
}

/// The unigonal numerical function for the O(3,2,eps) linearization.
inline Rat unigonal_mu(const BinaryForm& p12, const BinaryForm& p8, const BinaryForm& l2,
                       const OnePS& lam, const Rat& eps) {
    if (p12.degree != 12 || p8.degree != 8 || l2.degree != 2)
        throw domain_error("unigonal data must have degrees 12, 8, 2");
    if (eps <= 0) throw domain_error("epsilon must be positive");
    return Rat(3 * mu(p12, lam)) + Rat(2 * mu(p8, lam)) + eps * Rat(mu(l2, lam));
}

// ---------------------------------------------------------------------------
// Weight multisets (Luna slice calculus).

using WeightMultiset = std::map<long long, long long>;  // weight -> multiplicity >= 0

inline long long total_multiplicity(const WeightMultiset& w) {
    long long n = 0;
    for (const auto& [k, m] : w) n += m;
    return n;
}

inline WeightMultiset merge(const std::vector<WeightMultiset>& parts) {
    WeightMultiset out;
    for (const auto& p : parts)
        for (const auto& [w, m] : p) {
            if (m < 0) throw domain_error("negative multiplicity");
            if (m > 0) out[w] += m;
        }
    return out;
}

/// Multiset difference: the normal-slice weights of a Luna slice.
inline WeightMultiset luna_normal_weights(const std::vector<WeightMultiset>& ambient,
                                          const WeightMultiset& orbit) {
    WeightMultiset out = merge(ambient);
    for (const auto& [w, m] : orbit) {
        if (m < 0) throw domain_error("negative multiplicity");
        auto it = out.find(w);
        long long have = (it == out.end()) ? 0 : it->second;
        if (have < m)
            throw domain_error("orbit weights exceed ambient at weight " + std::to_string(w));
        if (it != out.end()) {
            it->second -= m;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

struct WpFiber {
    std::vector<long long> positive;  // sorted signature of the positive side
    std::vector<long long> negative;  // sorted signature (absolute weights) of the negative side
    long long zero_multiplicity = 0;
};

/// Splits a weight multiset into the two weighted projective signatures.
inline WpFiber wp_fiber(const WeightMultiset& w, bool allow_asymmetric = false) {
    WpFiber out;
    for (const auto& [wt, m] : w) {
        if (m < 0) throw domain_error("negative multiplicity");
        for (long long i = 0; i < m; ++i) {
            if (wt > 0) out.positive.push_back(wt);
            else if (wt < 0) out.negative.push_back(-wt);
            else ++out.zero_multiplicity;
        }
    }
    std::sort(out.positive.begin(), out.positive.end());
    std::sort(out.negative.begin(), out.negative.end());
    if (out.positive != out.negative && !allow_asymmetric)
        throw domain_error("weight multiset is not symmetric about 0 (pass the override to split anyway)");
    return out;
}

}  // namespace k3tk::git
