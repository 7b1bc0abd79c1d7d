#pragma once

// Integer lattices with exact Gram arithmetic: root enumeration by bounded
// search, ADE identification of negative definite lattices, and the
// isotropic-quotient construction that labels Type II boundary components.

#include "k3tk/linalg.hpp"
#include "k3tk/rational.hpp"

#include <cstdlib>
#include <future>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace k3tk::lattice {

enum class Definiteness { NegativeDefinite, PositiveDefinite, Other };

struct IntegerLattice {
    int rank = 0;
    IMat gram;
    std::vector<std::string> labels;

    long long inner(const IVec& u, const IVec& v) const {
        if (static_cast<int>(u.size()) != rank || static_cast<int>(v.size()) != rank)
            throw domain_error("vector length does not match lattice rank");
        return dot_gram(gram, u, v);
    }

    Definiteness definiteness() const {
        if (is_negative_definite(gram)) return Definiteness::NegativeDefinite;
        if (is_positive_definite(gram)) return Definiteness::PositiveDefinite;
        return Definiteness::Other;
    }
};

inline IntegerLattice make_lattice(IMat gram, std::vector<std::string> labels = {}) {
    if (!is_symmetric(gram)) throw domain_error("gram matrix is not symmetric");
    if (!labels.empty() && labels.size() != gram.size())
        throw domain_error("label count does not match rank");
    IntegerLattice lat;
    lat.rank = static_cast<int>(gram.size());
    lat.gram = std::move(gram);
    lat.labels = std::move(labels);
    return lat;
}

// --- standard block grams (negative definite convention, roots have norm -2)

inline IMat gram_a(int n) {
    IMat g(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) {
        g[i][i] = -2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = 1;
    }
    return g;
}

inline IMat gram_d(int n) {
    if (n < 4) throw domain_error("D_n requires n >= 4");
    // chain 0..n-3, with both n-2 and n-1 attached to node n-3
    IMat g(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = -2;
    for (int i = 0; i + 1 < n - 2; ++i) g[i][i + 1] = g[i + 1][i] = 1;
    g[n - 3][n - 2] = g[n - 2][n - 3] = 1;
    g[n - 3][n - 1] = g[n - 1][n - 3] = 1;
    return g;
}

inline IMat gram_e(int n) {
    if (n < 6 || n > 8) throw domain_error("E_n requires n in {6,7,8}");
    // chain 0-1-2-3-...-(n-2), branch node index 2 carries the extra vertex n-1
    IMat g(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = -2;
    for (int i = 0; i + 1 < n - 1; ++i) g[i][i + 1] = g[i + 1][i] = 1;
    g[2][n - 1] = g[n - 1][2] = 1;
    return g;
}

inline IMat gram_u() { return {{0, 1}, {1, 0}}; }

inline IMat block_diagonal(const std::vector<IMat>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    IMat g(n, IVec(n, 0));
    int off = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) g[off + i][off + j] = b[i][j];
        off += static_cast<int>(b.size());
    }
    return g;
}

/// Expands the block shorthand: "E8", "E7", "E6", "An", "Dn", "U", or an
/// integer literal m meaning the rank-1 gram (m).
inline IMat gram_from_block_name(const std::string& name) {
    if (name == "U") return gram_u();
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E')) {
        int n = std::atoi(name.c_str() + 1);
        if (n > 0) {
            if (name[0] == 'A') return gram_a(n);
            if (name[0] == 'D') return gram_d(n);
            return gram_e(n);
        }
    }
    try {
        return IMat{{static_cast<long long>(std::stoll(name))}};
    } catch (...) {
        throw parse_error("unknown block name '" + name + "'");
    }
}

inline IntegerLattice lattice_from_blocks(const std::vector<std::string>& names) {
    std::vector<IMat> blocks;
    blocks.reserve(names.size());
    for (const auto& n : names) blocks.push_back(gram_from_block_name(n));
    return make_lattice(block_diagonal(blocks));
}

// ---------------------------------------------------------------------------
// Root enumeration: all v with v.v == -2, negative definite lattices only.
// Positive definite input is negated internally and flagged.

inline int thread_cap() {
    if (const char* env = std::getenv("K3TK_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

namespace detail {

inline void root_walk(const QuadDecomp& qd, size_t level, long long first_lo, long long first_hi,
                      RVec& offset, Rat used, IVec& x, std::vector<IVec>& out) {
    const Rat budget = Rat(2) - used;
    const Rat& q = qd.q[level][level];
    Int radius = isqrt(floor_rat(budget / q)) + 1;
    Int lo = ceil_rat(-offset[level]) - radius;
    Int hi = floor_rat(-offset[level]) + radius;
    if (level + 1 == x.size()) {  // top coordinate: honor the assigned slice
        if (lo < first_lo) lo = first_lo;
        if (hi > first_hi) hi = first_hi;
    }
    for (Int xv = lo; xv <= hi; ++xv) {
        Rat y = Rat(xv) + offset[level];
        Rat term = q * y * y;
        if (term > budget) continue;
        x[level] = static_cast<long long>(xv);
        if (level == 0) {
            if (used + term == 2) out.push_back(x);
        } else {
            for (size_t j = 0; j < level; ++j) offset[j] += qd.q[j][level] * Rat(xv);
            root_walk(qd, level - 1, first_lo, first_hi, offset, used + term, x, out);
            for (size_t j = 0; j < level; ++j) offset[j] -= qd.q[j][level] * Rat(xv);
        }
    }
}

}  // namespace detail

struct RootEnumeration {
    std::vector<IVec> roots;
    bool negated_input = false;  // positive definite gram negated internally
};

inline RootEnumeration enumerate_roots(const IntegerLattice& lat) {
    RootEnumeration out;
    IMat g = lat.gram;
    switch (lat.definiteness()) {
        case Definiteness::NegativeDefinite:
            break;
        case Definiteness::PositiveDefinite:
            g = negate(g);
            out.negated_input = true;
            break;
        default:
            throw domain_error("root enumeration requires a definite lattice");
    }
    const size_t n = g.size();
    if (n == 0) return out;
    QuadDecomp qd = quad_decompose(to_rmat(negate(g)));
    // Bound for the top coordinate, used to slice work across threads.
    Int radius = isqrt(floor_rat(Rat(2) / qd.q[n - 1][n - 1])) + 1;
    long long lo = -static_cast<long long>(radius), hi = static_cast<long long>(radius);
    int threads = std::min<int>(thread_cap(), static_cast<int>(hi - lo + 1));
    if (threads <= 1 || n == 1) {
        RVec offset(n, Rat(0));
        IVec x(n, 0);
        detail::root_walk(qd, n - 1, lo, hi, offset, Rat(0), x, out.roots);
    } else {
        std::vector<std::future<std::vector<IVec>>> parts;
        long long span = (hi - lo + 1 + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            long long a = lo + t * span;
            long long b = std::min(hi, a + span - 1);
            if (a > b) break;
            parts.push_back(std::async(std::launch::async, [&qd, n, a, b] {
                std::vector<IVec> local;
                RVec offset(n, Rat(0));
                IVec x(n, 0);
                detail::root_walk(qd, n - 1, a, b, offset, Rat(0), x, local);
                return local;
            }));
        }
        for (auto& p : parts) {
            auto part = p.get();
            out.roots.insert(out.roots.end(), part.begin(), part.end());
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

// ---------------------------------------------------------------------------
// ADE identification.

struct RootSystemComponent {
    std::string label;  // "A7", "D10", "E8", ...
    int rank = 0;
    long long root_count = 0;
    std::vector<size_t> simple_indices;  // indices into the simple-root list
};

struct RootSystemReport {
    std::vector<std::pair<std::string, int>> components;  // sorted multiset (label, rank)
    long long root_count = 0;
    bool negated_input = false;
    std::vector<IVec> simple_roots;
};

inline long long expected_root_count(char family, int n) {
    switch (family) {
        case 'A': return static_cast<long long>(n) * (n + 1);
        case 'D': return 2LL * n * (n - 1);
        case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    }
    throw domain_error("unknown family");
}

namespace detail {

// Positive roots via a generic lexicographic functional N^{rank-1},...,N,1
// with N past twice the largest coordinate, so no root is orthogonal to it.
inline Int generic_functional(const IVec& v, const Int& big) {
    Int acc = 0;
    for (long long c : v) acc = acc * big + c;
    return acc;
}

inline std::string classify_component_graph(const std::vector<size_t>& nodes,
                                            const std::vector<std::vector<size_t>>& adj) {
    const size_t n = nodes.size();
    size_t edge_twice = 0;
    std::vector<size_t> deg(n, 0);
    std::map<size_t, size_t> local;
    for (size_t i = 0; i < n; ++i) local[nodes[i]] = i;
    for (size_t i = 0; i < n; ++i) {
        for (size_t g : adj[nodes[i]])
            if (local.count(g)) ++deg[i];
        edge_twice += deg[i];
    }
    if (edge_twice != 2 * (n - 1)) throw domain_error("non-ADE graph: cycle detected");
    size_t branch = 0, branch_at = n;
    for (size_t i = 0; i < n; ++i) {
        if (deg[i] > 3) throw domain_error("non-ADE graph: vertex of degree > 3");
        if (deg[i] == 3) {
            ++branch;
            branch_at = i;
        }
    }
    if (branch > 1) throw domain_error("non-ADE graph: two branch vertices");
    if (branch == 0) return "A" + std::to_string(n);
    // arm lengths from the unique branch vertex
    std::vector<int> arms;
    for (size_t g : adj[nodes[branch_at]]) {
        if (!local.count(g)) continue;
        int len = 1;
        size_t prev = nodes[branch_at], cur = g;
        while (true) {
            size_t next = n;
            bool found = false;
            for (size_t h : adj[cur]) {
                if (h != prev && local.count(h)) {
                    prev = cur;
                    cur = h;
                    found = true;
                    break;
                }
            }
            if (!found) break;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms.size() != 3) throw domain_error("non-ADE graph");
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
        return "E" + std::to_string(n);
    throw domain_error("non-ADE graph: affine or wilder arm pattern");
}

}  // namespace detail

/// The fixed ADE template table used for matching (ranks <= 18 suffice here).
inline const std::map<std::string, IMat>& ade_templates() {
    static const std::map<std::string, IMat> table = [] {
        std::map<std::string, IMat> t;
        for (int n = 1; n <= 18; ++n) t["A" + std::to_string(n)] = gram_a(n);
        for (int n = 4; n <= 18; ++n) t["D" + std::to_string(n)] = gram_d(n);
        for (int n = 6; n <= 8; ++n) t["E" + std::to_string(n)] = gram_e(n);
        return t;
    }();
    return table;
}

inline RootSystemReport identify_root_system(const IntegerLattice& lat) {
    RootEnumeration en = enumerate_roots(lat);
    RootSystemReport rep;
    rep.negated_input = en.negated_input;
    rep.root_count = static_cast<long long>(en.roots.size());
    if (en.roots.empty()) return rep;

    long long maxc = 0;
    for (const auto& r : en.roots)
        for (long long c : r) maxc = std::max(maxc, std::llabs(c));
    const Int big = 2 * Int(maxc) + 2;

    std::set<IVec> positive;
    for (const auto& r : en.roots)
        if (detail::generic_functional(r, big) > 0) positive.insert(r);
    if (2 * positive.size() != en.roots.size())
        throw domain_error("root set is not symmetric");  // cannot happen for valid gram

    // simple roots: positive roots that are not sums of two positive roots
    std::vector<IVec> simple;
    for (const auto& r : positive) {
        bool decomposable = false;
        for (const auto& p : positive) {
            IVec q(r.size());
            for (size_t i = 0; i < r.size(); ++i) q[i] = r[i] - p[i];
            if (q != p && positive.count(q)) {
                decomposable = true;
                break;
            }
            if (decomposable) break;
        }
        if (!decomposable) simple.push_back(r);
    }
    std::sort(simple.begin(), simple.end());
    rep.simple_roots = simple;

    const size_t k = simple.size();
    std::vector<std::vector<size_t>> adj(k);
    const IMat neg = negate(lat.gram);
    const bool flip = en.negated_input;
    auto pairing = [&](const IVec& u, const IVec& v) {
        return dot_gram(flip ? lat.gram : neg, u, v);  // positive definite pairing
    };
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            long long p = pairing(simple[i], simple[j]);
            if (p == 0) continue;
            if (p != -1) throw domain_error("non-ADE graph: simple-root pairing out of range");
            adj[i].push_back(j);
            adj[j].push_back(i);
        }

    // connected components
    std::vector<int> comp(k, -1);
    int ncomp = 0;
    for (size_t i = 0; i < k; ++i) {
        if (comp[i] != -1) continue;
        std::vector<size_t> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (size_t w : adj[v])
                if (comp[w] == -1) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }

    // coordinates of every positive root in the simple basis (must be integral)
    RMat sys(k, RVec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) sys[i][j] = Rat(pairing(simple[i], simple[j]));
    std::vector<long long> comp_count(ncomp, 0);
    for (const auto& r : positive) {
        RVec rhs(k), coeff;
        for (size_t i = 0; i < k; ++i) rhs[i] = Rat(pairing(simple[i], r));
        if (!solve_rational(sys, rhs, coeff))
            throw domain_error("simple roots do not span the root sublattice");
        int at = -1;
        for (size_t i = 0; i < k; ++i) {
            if (coeff[i] == 0) continue;
            if (rat_den(coeff[i]) != 1 || coeff[i] < 0)
                throw domain_error("root has non-integral or negative simple coordinates");
            if (at == -1) at = comp[i];
            else if (at != comp[i])
                throw domain_error("root spans two components");
        }
        comp_count[at] += 2;  // the root and its negative
    }

    for (int c = 0; c < ncomp; ++c) {
        std::vector<size_t> nodes;
        for (size_t i = 0; i < k; ++i)
            if (comp[i] == c) nodes.push_back(i);
        std::string label = detail::classify_component_graph(nodes, adj);
        if (!ade_templates().count(label))
            throw domain_error("component outside the ADE template table: " + label);
        long long expected = expected_root_count(label[0], std::atoi(label.c_str() + 1));
        if (expected != comp_count[c])
            throw domain_error("component " + label + " has root count " +
                               std::to_string(comp_count[c]) + ", expected " +
                               std::to_string(expected));
        rep.components.emplace_back(label, static_cast<int>(nodes.size()));
    }
    std::sort(rep.components.begin(), rep.components.end());
    long long total = 0;
    for (int c = 0; c < ncomp; ++c) total += comp_count[c];
    if (total != rep.root_count)
        throw domain_error("component root counts do not add up");
    return rep;
}

// ---------------------------------------------------------------------------
// Quotient E^perp / <e1,e2> for a rank-2 isotropic, mutually orthogonal,
// primitive pair. The result must come out negative definite.

inline bool is_primitive(const IVec& v) { return vec_gcd(v) == 1; }

inline IntegerLattice isotropic_quotient(const IntegerLattice& lat, const IVec& e1,
                                         const IVec& e2) {
    if (static_cast<int>(e1.size()) != lat.rank || static_cast<int>(e2.size()) != lat.rank)
        throw domain_error("vector length does not match lattice rank");
    if (lat.inner(e1, e1) != 0 || lat.inner(e2, e2) != 0)
        throw domain_error("non-isotropic input");
    if (lat.inner(e1, e2) != 0) throw domain_error("isotropic vectors are not orthogonal");
    if (!is_primitive(e1) || !is_primitive(e2)) throw domain_error("non-primitive input");

    const size_t n = lat.rank;
    IMat pairing_rows(2, IVec(n, 0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) {
            pairing_rows[0][j] += lat.gram[j][i] * e1[i];
            pairing_rows[1][j] += lat.gram[j][i] * e2[i];
        }
    std::vector<IVec> perp = kernel_basis(pairing_rows);
    if (perp.size() != n - 2) throw domain_error("isotropic pair is degenerate");

    // coordinates of e1, e2 in the kernel basis
    RMat bmat(n, RVec(perp.size()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < perp.size(); ++j) bmat[i][j] = Rat(perp[j][i]);
    auto coords_of = [&](const IVec& v) {
        RVec rhs(n), sol;
        for (size_t i = 0; i < n; ++i) rhs[i] = Rat(v[i]);
        if (!solve_rational(bmat, rhs, sol)) throw domain_error("vector not in E-perp");
        IVec c(perp.size());
        for (size_t i = 0; i < perp.size(); ++i) {
            if (rat_den(sol[i]) != 1) throw domain_error("vector not in E-perp over Z");
            c[i] = static_cast<long long>(rat_num(sol[i]));
        }
        return c;
    };
    IVec c1 = coords_of(e1), c2 = coords_of(e2);
    auto completion = complete_to_basis({c1, c2});
    if (!completion) throw domain_error("non-primitive input: span(e1,e2) is not saturated");

    // quotient basis: ambient images of the completed basis vectors 3..n-2
    const size_t qrank = perp.size() - 2;
    std::vector<IVec> qbasis(qrank, IVec(n, 0));
    for (size_t c = 0; c < qrank; ++c)
        for (size_t i = 0; i < perp.size(); ++i)
            for (size_t a = 0; a < n; ++a)
                qbasis[c][a] += (*completion)[i][c + 2] * perp[i][a];
    IMat qgram(qrank, IVec(qrank, 0));
    for (size_t i = 0; i < qrank; ++i)
        for (size_t j = 0; j < qrank; ++j) qgram[i][j] = dot_gram(lat.gram, qbasis[i], qbasis[j]);
    IntegerLattice out = make_lattice(qgram);
    if (out.definiteness() != Definiteness::NegativeDefinite)
        throw domain_error("quotient is not negative definite");
    return out;
}

// ---------------------------------------------------------------------------
// Highest-root coefficients, computed from the enumerated root system.

inline std::vector<long long> highest_root_coefficients(const std::string& label) {
    if (!ade_templates().count(label)) throw domain_error("unsupported ADE label: " + label);
    IntegerLattice lat = make_lattice(ade_templates().at(label));
    RootEnumeration en = enumerate_roots(lat);
    const size_t k = lat.rank;
    // In the template gram the standard basis vectors are simple roots for the
    // positive system selected by the generic functional built from them.
    // Coordinates of a root are just its components; pick the maximal height.
    IVec best;
    long long best_height = -1;
    for (const auto& r : en.roots) {
        long long h = 0;
        bool nonneg = true;
        for (long long c : r) {
            if (c < 0) nonneg = false;
            h += c;
        }
        if (!nonneg) continue;
        if (h > best_height) {
            best_height = h;
            best = r;
        }
    }
    if (best.empty()) throw domain_error("no positive roots found");
    std::vector<long long> coeffs(best.begin(), best.end());
    std::sort(coeffs.begin(), coeffs.end());
    return coeffs;
}

}  // namespace k3tk::lattice
