#pragma once

// Exact linear algebra over Z and Q, sized for the small lattices this
// toolkit works with (rank <= ~24). No floating point anywhere.

#include "k3tk/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace k3tk {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

inline bool is_symmetric(const IMat& m) {
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) return false;
        for (size_t j = 0; j < i; ++j)
            if (m[i][j] != m[j][i]) return false;
    }
    return true;
}

inline long long dot_gram(const IMat& gram, const IVec& u, const IVec& v) {
    long long acc = 0;
    for (size_t i = 0; i < gram.size(); ++i) {
        if (u[i] == 0) continue;
        long long row = 0;
        for (size_t j = 0; j < gram.size(); ++j) row += gram[i][j] * v[j];
        acc += u[i] * row;
    }
    return acc;
}

inline RMat to_rmat(const IMat& m) {
    RMat r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i].assign(m[i].begin(), m[i].end());
    return r;
}

// ---------------------------------------------------------------------------
// Symmetric decomposition, Cohen's form: A = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
// Succeeds iff A is positive definite.
struct QuadDecomp {
    bool pos_def = false;
    RMat q;  // q[i][i] pivots, q[i][j] (j>i) completion coefficients
};

inline QuadDecomp quad_decompose(RMat a) {
    const size_t n = a.size();
    QuadDecomp out;
    out.q = RMat(n, RVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        if (a[i][i] <= 0) return out;
        out.q[i][i] = a[i][i];
        for (size_t j = i + 1; j < n; ++j) out.q[i][j] = a[i][j] / a[i][i];
        for (size_t k = i + 1; k < n; ++k)
            for (size_t l = k; l < n; ++l)
                a[k][l] = a[k][l] - a[i][k] * a[i][l] / a[i][i];
        for (size_t k = i + 1; k < n; ++k)
            for (size_t l = i + 1; l < k; ++l) a[k][l] = a[l][k];
    }
    out.pos_def = true;
    return out;
}

inline bool is_positive_definite(const IMat& m) {
    return quad_decompose(to_rmat(m)).pos_def;
}

inline IMat negate(const IMat& m) {
    IMat r = m;
    for (auto& row : r)
        for (auto& x : row) x = -x;
    return r;
}

inline bool is_negative_definite(const IMat& m) { return is_positive_definite(negate(m)); }

// ---------------------------------------------------------------------------
// Fraction-free determinant (Bareiss).
inline Int bareiss_det(const IMat& m) {
    const size_t n = m.size();
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return n == 0 ? Int(1) : Int(sign) * a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Rational Gaussian elimination: solves A x = b, returns false when singular
// or inconsistent. A is n x m (m unknowns).
inline bool solve_rational(RMat a, RVec b, RVec& x) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return false;
    x.assign(cols, Rat(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    // Reject underdetermined systems only when a caller needs uniqueness;
    // here any solution is acceptable (free variables pinned to zero).
    return true;
}

// ---------------------------------------------------------------------------
// Integer column reduction. Brings A (m x n) to column echelon form H = A * U
// with U unimodular. Kernel and particular-solution routines build on it.
struct ColumnReduction {
    IMat h;  // m x n, echelon by columns
    IMat u;  // n x n unimodular with h = a * u
};

inline void add_col(IMat& m, size_t dst, size_t src, long long f) {
    for (size_t i = 0; i < m.size(); ++i) m[i][dst] += f * m[i][src];
}
inline void swap_col(IMat& m, size_t aCol, size_t bCol) {
    for (size_t i = 0; i < m.size(); ++i) std::swap(m[i][aCol], m[i][bCol]);
}
inline void neg_col(IMat& m, size_t c) {
    for (size_t i = 0; i < m.size(); ++i) m[i][c] = -m[i][c];
}

inline ColumnReduction column_reduce(IMat a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    IMat u(cols, IVec(cols, 0));
    for (size_t i = 0; i < cols; ++i) u[i][i] = 1;
    size_t lead = 0;
    for (size_t r = 0; r < rows && lead < cols; ++r) {
        // gcd-reduce row r across columns lead..cols-1
        while (true) {
            size_t nz = cols;
            for (size_t c = lead; c < cols; ++c)
                if (a[r][c] != 0 && (nz == cols || std::llabs(a[r][c]) < std::llabs(a[r][nz])))
                    nz = c;
            if (nz == cols) break;  // row all zero from lead on
            if (nz != lead) {
                swap_col(a, lead, nz);
                swap_col(u, lead, nz);
            }
            if (a[r][lead] < 0) {
                neg_col(a, lead);
                neg_col(u, lead);
            }
            bool clean = true;
            for (size_t c = lead + 1; c < cols; ++c) {
                long long f = a[r][c] / a[r][lead];
                if (f != 0) {
                    add_col(a, c, lead, -f);
                    add_col(u, c, lead, -f);
                }
                if (a[r][c] != 0) clean = false;
            }
            if (clean) {
                ++lead;
                break;
            }
        }
    }
    return {std::move(a), std::move(u)};
}

/// Basis of {x : A x = 0} over Z, saturated. Returned as a list of vectors.
inline std::vector<IVec> kernel_basis(const IMat& a) {
    if (a.empty()) return {};
    ColumnReduction cr = column_reduce(a);
    const size_t cols = a[0].size();
    std::vector<IVec> out;
    for (size_t c = 0; c < cols; ++c) {
        bool zero = true;
        for (size_t r = 0; r < a.size(); ++r)
            if (cr.h[r][c] != 0) zero = false;
        if (!zero) continue;
        IVec v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = cr.u[i][c];
        out.push_back(std::move(v));
    }
    return out;
}

/// One integer solution of A x = b, if any.
inline std::optional<IVec> solve_integer(const IMat& a, const IVec& b) {
    if (a.empty()) return IVec{};
    ColumnReduction cr = column_reduce(a);
    const size_t rows = a.size(), cols = a[0].size();
    IVec y(cols, 0);
    IVec resid = b;
    size_t c = 0;
    for (size_t r = 0; r < rows; ++r) {
        if (c < cols) {
            // find the column whose leading row is r (echelon: first nonzero at/after r)
            bool use = cr.h[r][c] != 0;
            if (use) {
                if (resid[r] % cr.h[r][c] != 0) {
                    // not divisible -> maybe later columns? echelon says no
                    return std::nullopt;
                }
                long long f = resid[r] / cr.h[r][c];
                y[c] = f;
                for (size_t i = 0; i < rows; ++i) resid[i] -= f * cr.h[i][c];
                ++c;
                continue;
            }
        }
        if (resid[r] != 0) return std::nullopt;
    }
    for (size_t r = 0; r < rows; ++r)
        if (resid[r] != 0) return std::nullopt;
    IVec x(cols, 0);
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = 0; j < cols; ++j) x[i] += cr.u[i][j] * y[j];
    return x;
}

// ---------------------------------------------------------------------------
// Unimodular basis completion: given k primitive, jointly saturated columns
// c_1..c_k in Z^n, produce W unimodular whose first k columns are c_1..c_k.
// Returns nullopt when the columns do not span a saturated sublattice.
inline std::optional<IMat> complete_to_basis(const std::vector<IVec>& cols) {
    if (cols.empty()) return std::nullopt;
    const size_t n = cols[0].size(), k = cols.size();
    // Row-reduce C with row ops, tracking the inverse transform.
    IMat c(n, IVec(k));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) c[i][j] = cols[j][i];
    IMat rinv(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) rinv[i][i] = 1;
    auto row_add = [&](size_t dst, size_t src, long long f) {
        for (size_t j = 0; j < k; ++j) c[dst][j] += f * c[src][j];
        // rinv <- rinv * E^{-1}: column op col_src -= f * col_dst
        for (size_t i = 0; i < n; ++i) rinv[i][src] -= f * rinv[i][dst];
    };
    auto row_swap = [&](size_t x, size_t y) {
        std::swap(c[x], c[y]);
        for (size_t i = 0; i < n; ++i) std::swap(rinv[i][x], rinv[i][y]);
    };
    auto row_neg = [&](size_t x) {
        for (size_t j = 0; j < k; ++j) c[x][j] = -c[x][j];
        for (size_t i = 0; i < n; ++i) rinv[i][x] = -rinv[i][x];
    };
    size_t lead = 0;
    for (size_t col = 0; col < k; ++col) {
        while (true) {
            size_t best = n;
            for (size_t r = lead; r < n; ++r)
                if (c[r][col] != 0 && (best == n || std::llabs(c[r][col]) < std::llabs(c[best][col])))
                    best = r;
            if (best == n) return std::nullopt;  // dependent columns
            if (best != lead) row_swap(lead, best);
            if (c[lead][col] < 0) row_neg(lead);
            bool clean = true;
            for (size_t r = 0; r < n; ++r) {
                if (r == lead) continue;
                long long f = c[r][col] / c[lead][col];
                if (f != 0) row_add(r, lead, -f);
                if (r > lead && c[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (c[lead][col] != 1) return std::nullopt;  // not saturated
        ++lead;
    }
    // R * C = [I_k; 0]; W = R^{-1} * [e_1..e_n] has first k columns = C.
    return rinv;
}

inline long long vec_gcd(const IVec& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, std::llabs(x));
    return g;
}

// ---------------------------------------------------------------------------
// Fincke-Pohst style enumeration: all integer x with
// (x - center)^T Q (x - center) == value, Q positive definite (exact).
// The search tree is pruned by exact rational inequalities; integer sqrt is
// only used for a safe over-approximation of coordinate ranges.
inline void enumerate_quadric_rec(const QuadDecomp& qd, const RVec& center, const Rat& value,
                                  size_t level, RVec& offset, Rat used, IVec& x,
                                  std::vector<IVec>& out) {
    const size_t n = center.size();
    const Rat budget = value - used;
    if (budget < 0) return;
    const Rat& q = qd.q[level][level];
    // |y + offset| <= sqrt(budget/q) with y = x_level - center_level
    Rat bound2 = budget / q;
    Int radius = isqrt(floor_rat(bound2)) + 1;
    Rat center_shift = center[level] - offset[level];
    Int lo = ceil_rat(center_shift) - radius;
    Int hi = floor_rat(center_shift) + radius;
    for (Int xv = lo; xv <= hi; ++xv) {
        Rat y = Rat(xv) - center_shift;  // x - center + offset
        Rat term = q * y * y;
        if (term > budget) continue;
        x[level] = static_cast<long long>(xv);
        if (level == 0) {
            if (used + term == value) out.push_back(x);
        } else {
            for (size_t j = 0; j < level; ++j)
                offset[j] += qd.q[j][level] * (Rat(xv) - center[level]);
            enumerate_quadric_rec(qd, center, value, level - 1, offset, used + term, x, out);
            for (size_t j = 0; j < level; ++j)
                offset[j] -= qd.q[j][level] * (Rat(xv) - center[level]);
        }
    }
}

inline std::vector<IVec> enumerate_quadric(const RMat& qmat, const RVec& center, const Rat& value) {
    const size_t n = qmat.size();
    std::vector<IVec> out;
    if (n == 0) return out;
    QuadDecomp qd = quad_decompose(qmat);
    if (!qd.pos_def) throw domain_error("enumeration requires a positive definite form");
    if (value < 0) return out;
    RVec offset(n, Rat(0));
    IVec x(n, 0);
    enumerate_quadric_rec(qd, center, value, n - 1, offset, Rat(0), x, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace k3tk
