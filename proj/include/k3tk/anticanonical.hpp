#pragma once

// Numerical intersection theory for polarized anticanonical pairs (V,D;L):
// profile validators, Riemann-Roch dimensions, twisting, relative
// minimalization by contracting (-1)-classes orthogonal to L, the six-case
// degree-2 classification, charge bookkeeping, and pullback coefficients on
// resolutions.

#include "k3tk/linalg.hpp"
#include "k3tk/rational.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace k3tk::acs {

struct NumericalProfile {
    long long l2 = 0;
    long long ld = 0;
    std::optional<long long> d2;
};

struct PairModel {
    IMat gram;  // ambient lattice, signature (1,n)
    IVec K, D, L;

    int rank() const { return static_cast<int>(gram.size()); }
    long long inner(const IVec& u, const IVec& v) const { return dot_gram(gram, u, v); }
    NumericalProfile profile() const {
        return {inner(L, L), inner(L, D), inner(D, D)};
    }
};

/// Standard model: P^2 blown up n times, orthogonal basis h,e1..en,
/// K = -3h + sum e_i, D = -K, L given in the same coordinates.
inline PairModel standard_model(int blowups, IVec L) {
    const int n = blowups + 1;
    if (static_cast<int>(L.size()) != n) throw domain_error("L length must be rank");
    PairModel m;
    m.gram = IMat(n, IVec(n, 0));
    m.gram[0][0] = 1;
    for (int i = 1; i < n; ++i) m.gram[i][i] = -1;
    m.K = IVec(n, 1);
    m.K[0] = -3;
    m.D.resize(n);
    for (int i = 0; i < n; ++i) m.D[i] = -m.K[i];
    m.L = std::move(L);
    return m;
}

inline PairModel make_model(IMat gram, IVec K, IVec D, IVec L) {
    if (!is_symmetric(gram)) throw domain_error("gram matrix is not symmetric");
    const size_t n = gram.size();
    if (K.size() != n || D.size() != n || L.size() != n)
        throw domain_error("vector length does not match rank");
    PairModel m{std::move(gram), std::move(K), std::move(D), std::move(L)};
    if (m.inner(m.D, m.K) != -m.inner(m.D, m.D))
        throw domain_error("D is not anticanonical: D.K != -D^2");
    if (((m.inner(m.L, m.D) - m.inner(m.L, m.L)) % 2) != 0)
        throw domain_error("parity violation: L.D != L^2 mod 2");
    return m;
}

/// Blow up a point on D: appends an exceptional direction, D drops by it,
/// L pulls back unchanged.
inline PairModel blow_up_on_D(const PairModel& m) {
    const size_t n = m.gram.size();
    PairModel out;
    out.gram = IMat(n + 1, IVec(n + 1, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.gram[i][j] = m.gram[i][j];
    out.gram[n][n] = -1;
    out.K = m.K;
    out.K.push_back(1);
    out.D = m.D;
    out.D.push_back(-1);
    out.L = m.L;
    out.L.push_back(0);
    return out;
}

// ---------------------------------------------------------------------------
// Profile validation and Riemann-Roch.

inline std::vector<std::string> validate_profile(const NumericalProfile& p,
                                                 bool l_equals_d = false) {
    std::vector<std::string> violations;
    if (((p.l2 - p.ld) % 2) != 0)
        violations.push_back("parity: L^2 = " + std::to_string(p.l2) + " and L.D = " +
                             std::to_string(p.ld) + " differ mod 2");
    if (p.ld < 0) violations.push_back("L.D < 0");
    if (p.ld > p.l2 + 2)
        violations.push_back("L.D = " + std::to_string(p.ld) + " exceeds L^2 + 2 = " +
                             std::to_string(p.l2 + 2));
    if (p.ld <= p.l2 && p.d2) {
        long long d2 = *p.d2;
        if (2 * p.ld - p.l2 > d2)
            violations.push_back("D^2 = " + std::to_string(d2) + " below 2 L.D - L^2 = " +
                                 std::to_string(2 * p.ld - p.l2));
        if (d2 > p.ld)
            violations.push_back("D^2 = " + std::to_string(d2) + " exceeds L.D = " +
                                 std::to_string(p.ld));
        else if (d2 == p.ld && !l_equals_d)
            violations.push_back("D^2 = L.D requires L ~ D (flag not set)");
    }
    return violations;
}

/// h^0 of a nef class from its profile. The reduced-connected flag selects the
/// L.D = 0 branch; without it that branch is not asserted.
inline long long riemann_roch_dim(const NumericalProfile& p, bool reduced_connected = false) {
    if (p.ld > 0) return (p.l2 + p.ld) / 2 + 1;
    if (p.ld == 0) {
        if (!reduced_connected)
            throw domain_error("L.D = 0 needs the reduced-connected flag; no formula otherwise");
        return p.l2 / 2 + 2;
    }
    throw domain_error("L.D < 0 is outside the nef range");
}

// ---------------------------------------------------------------------------
// Twist: L -> L - D, allowed iff L.D <= L^2.

struct TwistResult {
    PairModel model;
    NumericalProfile profile;
    bool exhausted = false;  // L - D == 0, polarization gone
};

inline TwistResult twist(const PairModel& m) {
    NumericalProfile p = m.profile();
    if (p.ld > p.l2) {
        std::ostringstream os;
        os << "twist refused: L.D = " << p.ld << " > L^2 = " << p.l2
           << " (L - D is not effective)";
        throw domain_error(os.str());
    }
    TwistResult out{m, {}, false};
    for (size_t i = 0; i < m.L.size(); ++i) out.model.L[i] = m.L[i] - m.D[i];
    out.profile = out.model.profile();
    out.exhausted = true;
    for (long long c : out.model.L)
        if (c != 0) out.exhausted = false;
    return out;
}

// ---------------------------------------------------------------------------
// Relative minimalization: contract classes E with E^2 = -1, E.D = 1, E.L = 0.

inline std::vector<IVec> exceptional_classes(const PairModel& m, int rank_cap = 24) {
    if (m.rank() > rank_cap)
        throw domain_error("enumeration bound exceeded: rank " + std::to_string(m.rank()) +
                           " > cap " + std::to_string(rank_cap));
    if (m.inner(m.L, m.L) <= 0)
        throw domain_error("class search needs L big (L^2 >= 1)");
    const size_t n = m.gram.size();
    // linear conditions: E.L = 0, E.D = 1
    IMat a(2, IVec(n, 0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) {
            a[0][j] += m.gram[j][i] * m.L[i];
            a[1][j] += m.gram[j][i] * m.D[i];
        }
    auto part = solve_integer(a, {0, 1});
    if (!part) return {};
    std::vector<IVec> ker = kernel_basis(a);
    const size_t k = ker.size();
    // E = E0 + W t; E^2 = -1 becomes a definite quadric in t (W spans a
    // sublattice of L-perp, negative definite since L^2 > 0).
    std::vector<IVec> found;
    if (k == 0) {
        if (dot_gram(m.gram, *part, *part) == -1) found.push_back(*part);
        std::sort(found.begin(), found.end());
        return found;
    }
    RMat q(k, RVec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) q[i][j] = Rat(-dot_gram(m.gram, ker[i], ker[j]));
    RVec b(k);
    for (size_t i = 0; i < k; ++i) b[i] = Rat(dot_gram(m.gram, ker[i], *part));
    // -(E0 + Wt)^2 = 1: t^T q t - 2 b.t - E0^2 = 1, complete the square
    RVec mu;
    if (!solve_rational(q, b, mu)) throw domain_error("degenerate definite part");
    Rat r = Rat(1) + Rat(dot_gram(m.gram, *part, *part));
    for (size_t i = 0; i < k; ++i) r += mu[i] * b[i];
    if (r < 0) return {};
    for (const IVec& t : enumerate_quadric(q, mu, r)) {
        IVec e = *part;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < n; ++j) e[j] += t[i] * ker[i][j];
        if (dot_gram(m.gram, e, e) == -1) found.push_back(e);
    }
    std::sort(found.begin(), found.end());
    return found;
}

/// Contract a single (-1)-class: the new lattice is E-perp, with
/// K -> K - E, D -> D + E, L unchanged.
inline PairModel contract(const PairModel& m, const IVec& e,
                          std::vector<IVec>* basis_out = nullptr) {
    if (dot_gram(m.gram, e, e) != -1 || dot_gram(m.gram, e, m.D) != 1 ||
        dot_gram(m.gram, e, m.L) != 0)
        throw domain_error("class is not contractible");
    const size_t n = m.gram.size();
    IMat row(1, IVec(n, 0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) row[0][j] += m.gram[j][i] * e[i];
    std::vector<IVec> basis = kernel_basis(row);
    if (basis.size() != n - 1) throw domain_error("contraction failed: E-perp has wrong rank");
    RMat bmat(n, RVec(basis.size()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < basis.size(); ++j) bmat[i][j] = Rat(basis[j][i]);
    auto express = [&](const IVec& v) {
        RVec rhs(n), sol;
        for (size_t i = 0; i < n; ++i) rhs[i] = Rat(v[i]);
        if (!solve_rational(bmat, rhs, sol)) throw domain_error("vector not in E-perp");
        IVec c(basis.size());
        for (size_t i = 0; i < basis.size(); ++i) {
            if (rat_den(sol[i]) != 1) throw domain_error("non-integral E-perp coordinates");
            c[i] = static_cast<long long>(rat_num(sol[i]));
        }
        return c;
    };
    PairModel out;
    out.gram = IMat(basis.size(), IVec(basis.size(), 0));
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j)
            out.gram[i][j] = dot_gram(m.gram, basis[i], basis[j]);
    IVec kNew(n), dNew(n);
    for (size_t i = 0; i < n; ++i) {
        kNew[i] = m.K[i] - e[i];
        dNew[i] = m.D[i] + e[i];
    }
    out.K = express(kNew);
    out.D = express(dNew);
    out.L = express(m.L);
    if (basis_out) *basis_out = basis;
    return out;
}

struct MinimalizeResult {
    PairModel model;
    std::vector<IVec> contracted;  // contracted classes, in the original coordinates
};

inline MinimalizeResult relative_minimalize(PairModel m, int rank_cap = 24,
                                            size_t pick_index = 0) {
    MinimalizeResult out{std::move(m), {}};
    // cumulative basis mapping current coordinates back to the original ones
    std::vector<IVec> chain;  // as a matrix (original-rank x current-rank), column list
    {
        const size_t n = out.model.gram.size();
        chain.resize(n, IVec(n, 0));
        for (size_t i = 0; i < n; ++i) chain[i][i] = 1;
    }
    while (true) {
        std::vector<IVec> classes = exceptional_classes(out.model, rank_cap);
        if (classes.empty()) break;
        const IVec& e = classes[std::min(pick_index, classes.size() - 1)];
        IVec e_orig(chain.size(), 0);
        for (size_t i = 0; i < chain.size(); ++i)
            for (size_t j = 0; j < e.size(); ++j) e_orig[i] += chain[i][j] * e[j];
        out.contracted.push_back(e_orig);
        std::vector<IVec> basis;
        out.model = contract(out.model, e, &basis);
        std::vector<IVec> next(chain.size(), IVec(basis.size(), 0));
        for (size_t i = 0; i < chain.size(); ++i)
            for (size_t c = 0; c < basis.size(); ++c)
                for (size_t j = 0; j < basis[c].size(); ++j)
                    next[i][c] += chain[i][j] * basis[c][j];
        chain = std::move(next);
    }
    std::sort(out.contracted.begin(), out.contracted.end());
    return out;
}

// ---------------------------------------------------------------------------
// The six-case degree-2 classification.

struct ZeroSurfaceCase {
    int case_id = 0;
    std::string description;
    std::string constraints;
    bool l_equals_d = false;
    // cusp parameter ranges for cases 5 and 6
    std::optional<std::pair<int, int>> cusp_r_range;  // T_{2,3,r}
    bool cusp_qr = false;                             // T_{2,q,r}, q>=4, r>=5, q+r<=19
};

inline ZeroSurfaceCase classify_zero_surface(const NumericalProfile& p) {
    ZeroSurfaceCase c;
    if (p.l2 == 1 && p.ld == 3) {
        c = {1, "plane with L a line", "(1,3,.)"};
    } else if (p.l2 == 1 && p.ld == 1) {
        c = {2, "degree 1 del Pezzo, L ~ D ~ -K", "(1,1,.)"};
        c.l_equals_d = true;
    } else if (p.l2 == 2 && p.ld == 4) {
        c = {3, "irreducible quadric with L a hyperplane section", "(2,4,.)"};
    } else if (p.l2 == 2 && p.ld == 2) {
        c = {4, "degree 2 del Pezzo, L ~ D ~ -K", "(2,2,.)"};
        c.l_equals_d = true;
    } else if (p.l2 == 2 && p.ld == 0 && p.d2 && *p.d2 == -1) {
        c = {5, "resolution of a rational surface with one E8-tilde or T_{2,3,r} point",
             "(2,0,-1)"};
        c.cusp_r_range = {7, 16};
    } else if (p.l2 == 2 && p.ld == 0 && p.d2 && *p.d2 == -2) {
        c = {6, "resolution of a rational surface with one E7-tilde or T_{2,q,r} point",
             "(2,0,-2)"};
        c.cusp_qr = true;
    } else {
        throw domain_error("profile outside degree-2 classification");
    }
    auto violations = validate_profile(p, c.l_equals_d);
    if (!violations.empty())
        throw domain_error("profile outside degree-2 classification: " + violations.front());
    return c;
}

// ---------------------------------------------------------------------------
// Charge and cusp bounds.

struct ChargeReport {
    long long value = 0;
    std::vector<std::string> warnings;
};

inline ChargeReport charge(long long d2, long long cycle_length) {
    if (cycle_length < 1) throw domain_error("cycle length must be positive");
    ChargeReport rep;
    rep.value = 12 - d2 - cycle_length;
    if (rep.value < 0 || rep.value > 24)
        rep.warnings.push_back("charge " + std::to_string(rep.value) +
                               " outside the Type III range [0, 24]");
    return rep;
}

inline ChargeReport cusp_charge(long long p, long long q, long long r) {
    ChargeReport rep;
    rep.value = p + q + r;
    if (rep.value > 21)
        rep.warnings.push_back("cusp charge " + std::to_string(rep.value) +
                               " exceeds the rational-surface bound 21");
    return rep;
}

// ---------------------------------------------------------------------------
// Pullback coefficients on a resolution.

struct ResolutionConfig {
    IMat exceptional_gram;
    IVec strict_transform_incidence;
    long long strict_multiplicity = 1;
};

struct PullbackResult {
    RVec coefficients;
    Rat max_coefficient = 0;
    std::optional<Rat> reciprocal;  // "paper-example critical alpha"; absent when max = 0
};

inline PullbackResult pullback_coefficients(const ResolutionConfig& cfg) {
    const size_t n = cfg.exceptional_gram.size();
    PullbackResult out;
    if (n == 0) return out;
    if (!is_symmetric(cfg.exceptional_gram))
        throw domain_error("exceptional gram is not symmetric");
    if (!is_negative_definite(cfg.exceptional_gram))
        throw domain_error("exceptional configuration is not negative definite");
    if (cfg.strict_transform_incidence.size() != n)
        throw domain_error("incidence vector length mismatch");
    if (cfg.strict_multiplicity < 1) throw domain_error("strict multiplicity must be positive");
    RMat a = to_rmat(cfg.exceptional_gram);
    RVec b(n);
    for (size_t i = 0; i < n; ++i)
        b[i] = Rat(-cfg.strict_multiplicity * cfg.strict_transform_incidence[i]);
    if (!solve_rational(a, b, out.coefficients))
        throw domain_error("singular exceptional gram");  // excluded by definiteness
    for (const Rat& c : out.coefficients)
        if (c > out.max_coefficient) out.max_coefficient = c;
    if (out.max_coefficient > 0) out.reciprocal = Rat(1) / out.max_coefficient;
    return out;
}

// ---------------------------------------------------------------------------
// Unigonal fixed-part recognizer on class data.

inline bool unigonal_pattern(const PairModel& m, const IVec& e, const IVec& r) {
    long long e2 = m.inner(e, e), ed = m.inner(e, m.D), er = m.inner(e, r),
              r2 = m.inner(r, r);
    return e2 == 0 && ed == 0 && er == 1 && (r2 == -1 || r2 == -2);
}

}  // namespace k3tk::acs
