#pragma once

// Combinatorics of Kulikov central fibers: Type II chains with double-curve
// bookkeeping, Type III triangulations of the 2-sphere, base change
// (insertion of ruled components / edgewise subdivision), polarization twists
// along a chain, and extraction of the 0-surface classification.

#include "k3tk/anticanonical.hpp"
#include "k3tk/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace k3tk::degen {

struct ChainComponent {
    enum class Kind { RationalEnd, EllipticRuled } kind;
    long long l2 = 0;
};

struct DoubleCurve {
    long long a = 0;        // self-intersection on the left component
    long long a_prime = 0;  // self-intersection on the right component
    long long ldeg = 0;     // degree of the polarization on the curve
};

struct ComponentProfile {
    long long l2 = 0;
    long long ld = 0;
    std::optional<long long> d2;
};

struct KulikovModel {
    enum class Kind { TypeII, TypeIII } kind = Kind::TypeII;
    long long total_degree = 2;
    // Type II
    std::vector<ChainComponent> chain;
    std::vector<DoubleCurve> curves;  // size = chain.size() - 1
    // Type III
    int vertices = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<ComponentProfile> profiles;  // per vertex
};

inline size_t component_count(const KulikovModel& m) {
    return m.kind == KulikovModel::Kind::TypeII ? m.chain.size()
                                                : static_cast<size_t>(m.vertices);
}

inline std::vector<ComponentProfile> component_profiles(const KulikovModel& m) {
    if (m.kind == KulikovModel::Kind::TypeIII) return m.profiles;
    std::vector<ComponentProfile> out(m.chain.size());
    for (size_t i = 0; i < m.chain.size(); ++i) {
        out[i].l2 = m.chain[i].l2;
        long long ld = 0, d2 = 0;
        if (i > 0) {
            ld += m.curves[i - 1].ldeg;
            d2 += m.curves[i - 1].a_prime;
        }
        if (i + 1 < m.chain.size()) {
            ld += m.curves[i].ldeg;
            d2 += m.curves[i].a;
        }
        out[i].ld = ld;
        out[i].d2 = d2;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation.

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void flag(std::string v) {
        ok = false;
        violations.push_back(std::move(v));
    }
};

inline std::map<std::pair<int, int>, int> edge_incidence(const KulikovModel& m) {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& t : m.triangles) {
        for (int e = 0; e < 3; ++e) {
            int u = t[e], v = t[(e + 1) % 3];
            if (u > v) std::swap(u, v);
            ++edges[{u, v}];
        }
    }
    return edges;
}

inline ValidationReport validate(const KulikovModel& m) {
    ValidationReport rep;
    if (m.kind == KulikovModel::Kind::TypeII) {
        const size_t n = m.chain.size();
        if (n < 2) rep.flag("Type II chain needs at least two components");
        if (m.curves.size() + 1 != n) rep.flag("double-curve count must be components - 1");
        for (size_t i = 0; i < n; ++i) {
            bool end = (i == 0 || i + 1 == n);
            if (end && m.chain[i].kind != ChainComponent::Kind::RationalEnd)
                rep.flag("chain end " + std::to_string(i + 1) + " is not a rational surface");
            if (!end && m.chain[i].kind != ChainComponent::Kind::EllipticRuled)
                rep.flag("interior component " + std::to_string(i + 1) + " is not elliptic ruled");
        }
        for (size_t i = 0; i < m.curves.size(); ++i)
            if (m.curves[i].a + m.curves[i].a_prime != 0)
                rep.flag("triple point formula fails on curve " + std::to_string(i + 1) + ": " +
                         std::to_string(m.curves[i].a) + " + " +
                         std::to_string(m.curves[i].a_prime) + " != 0");
        long long total = 0;
        for (const auto& c : m.chain) total += c.l2;
        if (total != m.total_degree)
            rep.flag("polarization degrees sum to " + std::to_string(total) + ", expected " +
                     std::to_string(m.total_degree));
    } else {
        if (m.vertices <= 0) rep.flag("no vertices");
        if (static_cast<int>(m.profiles.size()) != m.vertices)
            rep.flag("profile count must equal vertex count");
        for (const auto& t : m.triangles) {
            if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
                rep.flag("degenerate triangle");
            for (int v : t)
                if (v < 0 || v >= m.vertices) rep.flag("triangle vertex out of range");
        }
        // A vertex pair may carry several parallel edges (the subdivided
        // two-triangle pillow does this), so edges are counted by incidence:
        // each edge cell lies in two triangles, hence every pair's incidence
        // count must be even, and the edge count is half the total.
        auto edges = edge_incidence(m);
        long long incidences = 0;
        for (const auto& [e, cnt] : edges) {
            incidences += cnt;
            if (cnt % 2 != 0 || cnt == 0)
                rep.flag("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                         ") lies in " + std::to_string(cnt) + " triangles, expected two per edge cell");
        }
        long long chi = m.vertices - incidences / 2 + static_cast<long long>(m.triangles.size());
        if (chi != 2) rep.flag("Euler characteristic is " + std::to_string(chi) + ", expected 2");
        long long total = 0;
        for (const auto& p : m.profiles) total += p.l2;
        if (total != m.total_degree)
            rep.flag("polarization degrees sum to " + std::to_string(total) + ", expected " +
                     std::to_string(m.total_degree));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Base change of order k.

inline KulikovModel base_change(const KulikovModel& m, long long k) {
    if (k < 2) throw domain_error("base change order must be at least 2");
    KulikovModel out;
    out.kind = m.kind;
    out.total_degree = m.total_degree;
    if (m.kind == KulikovModel::Kind::TypeII) {
        for (size_t i = 0; i < m.chain.size(); ++i) {
            out.chain.push_back(m.chain[i]);
            if (i + 1 == m.chain.size()) break;
            const DoubleCurve& c = m.curves[i];
            // k-1 ruled components with section pairs (-a, a), pulled-back
            // polarization of fiber degree zero
            out.curves.push_back({c.a, -c.a, c.ldeg});
            for (long long j = 0; j + 1 < k; ++j) {
                out.chain.push_back({ChainComponent::Kind::EllipticRuled, 0});
                out.curves.push_back({c.a, j + 2 == k ? c.a_prime : -c.a, c.ldeg});
            }
        }
        return out;
    }
    // Type III: k-fold edgewise subdivision of every triangle.
    using Key = std::tuple<int, long long, long long, long long>;
    std::map<Key, int> ids;
    auto intern = [&](Key key) {
        auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
        return it->second;
    };
    for (int v = 0; v < m.vertices; ++v) intern({0, v, 0, 0});
    auto vertex_at = [&](size_t tri, long long i, long long j) {
        const auto& t = m.triangles[tri];
        long long rem = k - i - j;
        if (i == 0 && j == 0) return intern({0, t[0], 0, 0});
        if (i == k) return intern({0, t[1], 0, 0});
        if (j == k) return intern({0, t[2], 0, 0});
        auto edge_key = [&](int u, int v, long long from_u) {
            return u < v ? Key{1, u, v, from_u} : Key{1, v, u, k - from_u};
        };
        if (j == 0) return intern(edge_key(t[0], t[1], i));
        if (i == 0) return intern(edge_key(t[0], t[2], j));
        if (rem == 0) return intern(edge_key(t[1], t[2], j));
        return intern({2, static_cast<long long>(tri), i, j});
    };
    for (size_t tri = 0; tri < m.triangles.size(); ++tri) {
        for (long long i = 0; i + 0 <= k - 1; ++i)
            for (long long j = 0; i + j <= k - 1; ++j) {
                out.triangles.push_back({vertex_at(tri, i, j), vertex_at(tri, i + 1, j),
                                         vertex_at(tri, i, j + 1)});
                if (i + j <= k - 2)
                    out.triangles.push_back({vertex_at(tri, i + 1, j), vertex_at(tri, i, j + 1),
                                             vertex_at(tri, i + 1, j + 1)});
            }
    }
    out.vertices = static_cast<int>(ids.size());
    out.profiles.assign(out.vertices, ComponentProfile{0, 0, std::nullopt});
    for (int v = 0; v < m.vertices; ++v) out.profiles[v] = m.profiles[v];
    return out;
}

// ---------------------------------------------------------------------------
// Twist: push the polarization from component i across one of its double
// curves (L_i drops by the curve, the neighbor gains it).

enum class TwistDirection { Right, Left };

inline KulikovModel twist_profile(const KulikovModel& m, size_t component,
                                  TwistDirection dir = TwistDirection::Right) {
    if (m.kind != KulikovModel::Kind::TypeII)
        throw domain_error("twist redistribution is defined on Type II chains");
    const size_t n = m.chain.size();
    if (component < 1 || component > n) throw domain_error("component index out of range");
    size_t i = component - 1;
    size_t curve;
    if (dir == TwistDirection::Right) {
        if (i + 1 >= n) throw domain_error("no double curve to the right of the last component");
        curve = i;
    } else {
        if (i == 0) throw domain_error("no double curve to the left of the first component");
        curve = i - 1;
    }
    auto prof = component_profiles(m);
    if (prof[i].ld > prof[i].l2)
        throw domain_error("twist refused on component " + std::to_string(component) +
                           ": L.D = " + std::to_string(prof[i].ld) + " > L^2 = " +
                           std::to_string(prof[i].l2) + " (L - D is not effective)");
    KulikovModel out = m;
    DoubleCurve& c = out.curves[curve];
    size_t j = (dir == TwistDirection::Right) ? i + 1 : i - 1;  // receiving side
    long long a_give = (dir == TwistDirection::Right) ? c.a : c.a_prime;
    long long a_recv = (dir == TwistDirection::Right) ? c.a_prime : c.a;
    out.chain[i].l2 = m.chain[i].l2 - 2 * c.ldeg + a_give;
    out.chain[j].l2 = m.chain[j].l2 + 2 * c.ldeg + a_recv;
    c.ldeg = c.ldeg - a_give;
    if (out.chain[i].l2 < 0 || out.chain[j].l2 < 0 || c.ldeg < 0)
        throw domain_error("twist refused: redistribution would make a degree negative");
    return out;
}

// ---------------------------------------------------------------------------
// Relative log-canonical profile: classify the 0-surfaces, mark the rest
// contracted.

struct LogCanonicalEntry {
    size_t component = 0;
    bool contracted = false;
    std::optional<acs::ZeroSurfaceCase> surface;
};

struct LogCanonicalProfile {
    std::vector<LogCanonicalEntry> entries;
    std::string descriptor;
};

inline LogCanonicalProfile log_canonical_profile(const KulikovModel& m) {
    LogCanonicalProfile out;
    auto prof = component_profiles(m);
    std::vector<std::string> names;
    std::vector<int> cases;
    for (size_t i = 0; i < prof.size(); ++i) {
        LogCanonicalEntry e;
        e.component = i + 1;
        if (prof[i].l2 <= 0) {
            e.contracted = true;
        } else {
            acs::NumericalProfile p{prof[i].l2, prof[i].ld, prof[i].d2};
            try {
                e.surface = acs::classify_zero_surface(p);
            } catch (const domain_error& err) {
                throw domain_error("0-surface " + std::to_string(i + 1) +
                                   " fails classification: " + err.what());
            }
            names.push_back("V" + std::to_string(i + 1));
            cases.push_back(e.surface->case_id);
        }
        out.entries.push_back(std::move(e));
    }
    for (size_t i = 0; i < names.size(); ++i)
        out.descriptor += (i ? std::string("∪_E ") : std::string()) + names[i];
    if (cases.size() == 2 && cases[0] == 1 && cases[1] == 1)
        out.descriptor += " (two planes glued along a cubic)";
    if (cases.size() == 2 && cases[0] == 2 && cases[1] == 2)
        out.descriptor += " (two degree 1 del Pezzos glued along E)";
    return out;
}

}  // namespace k3tk::degen
