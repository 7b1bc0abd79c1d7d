#pragma once

// GIT stability engine. Everything reduces to exact 2D convex geometry on
// exponent supports: a diagonal 1-PS with weights summing to zero is a linear
// functional on the plane of exponents, and mu is its support-function value
// relative to the barycenter. Pair verdicts treat epsilon as an infinitesimal:
// sign of mu(C) first, mu(L) as tiebreaker.

#include "k3tk/forms.hpp"
#include "k3tk/linalg.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace k3tk::git {

using P2 = std::array<long long, 2>;

inline long long cross(const P2& a, const P2& b) { return a[0] * b[1] - a[1] * b[0]; }
inline long long cross3(const P2& o, const P2& a, const P2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}
inline long long dot(const P2& a, const P2& b) { return a[0] * b[0] + a[1] * b[1]; }

/// Exponents scaled so the barycenter sits at the origin: (3i - d, 3j - d).
inline std::vector<P2> support_points(const TernaryForm& f) {
    if (f.terms.empty()) throw domain_error("empty form");
    std::set<P2> pts;
    for (const auto& [e, c] : f.terms)
        pts.insert({3LL * e[0] - f.degree, 3LL * e[1] - f.degree});
    return {pts.begin(), pts.end()};
}

inline std::vector<P2> convex_hull(std::vector<P2> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    const size_t n = p.size();
    if (n <= 2) return p;
    std::vector<P2> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross3(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross3(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    if (h.size() == 1 && n > 1) {  // all collinear: keep the two extremes
        return {p.front(), p.back()};
    }
    return h;
}

enum class HullPosition { Interior, Boundary, Outside };

inline HullPosition origin_position(const std::vector<P2>& hull) {
    const P2 o{0, 0};
    if (hull.size() == 1) return hull[0] == o ? HullPosition::Boundary : HullPosition::Outside;
    if (hull.size() == 2) {
        if (cross3(hull[0], hull[1], o) != 0) return HullPosition::Outside;
        P2 da{-hull[0][0], -hull[0][1]}, db{-hull[1][0], -hull[1][1]};
        return dot(da, db) <= 0 ? HullPosition::Boundary : HullPosition::Outside;
    }
    bool boundary = false;
    for (size_t i = 0; i < hull.size(); ++i) {
        long long c = cross3(hull[i], hull[(i + 1) % hull.size()], o);
        if (c < 0) return HullPosition::Outside;
        if (c == 0) boundary = true;
    }
    return boundary ? HullPosition::Boundary : HullPosition::Interior;
}

enum class TorusStability { Stable, StrictlySemistable, Unstable };

/// Torus stability relative to the given coordinate frame: barycenter
/// membership in the weight polytope, by exact arithmetic.
inline TorusStability torus_stability(const TernaryForm& f) {
    switch (origin_position(convex_hull(support_points(f)))) {
        case HullPosition::Interior: return TorusStability::Stable;
        case HullPosition::Boundary: return TorusStability::StrictlySemistable;
        default: return TorusStability::Unstable;
    }
}

// ---------------------------------------------------------------------------
// Direction handling. A plane functional (u, v) corresponds to the integral
// 1-PS (2u - v, 2v - u, -u - v); mu values agree on the nose.

inline P2 reduce_dir(P2 d) {
    long long g = std::gcd(std::llabs(d[0]), std::llabs(d[1]));
    if (g > 1) {
        d[0] /= g;
        d[1] /= g;
    }
    return d;
}

inline std::vector<long long> to_weights(const P2& d) {
    std::vector<long long> w{2 * d[0] - d[1], 2 * d[1] - d[0], -d[0] - d[1]};
    long long g = std::gcd(std::gcd(std::llabs(w[0]), std::llabs(w[1])), std::llabs(w[2]));
    if (g > 1)
        for (auto& x : w) x /= g;
    return w;
}

inline long long support_value(const std::vector<P2>& pts, const P2& dir) {
    long long best = dot(dir, pts[0]);
    for (const auto& p : pts) best = std::max(best, dot(dir, p));
    return best;
}

/// Candidate ray directions sufficient to decide the sign pattern of any
/// function that is piecewise linear with breaks along pairwise-difference
/// perpendiculars of the given point sets.
inline std::vector<P2> candidate_rays(const std::vector<std::vector<P2>>& families) {
    std::set<P2> dirs{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    auto add = [&dirs](P2 d) {
        if (d[0] == 0 && d[1] == 0) return;
        dirs.insert(reduce_dir(d));
    };
    for (const auto& pts : families) {
        for (size_t a = 0; a < pts.size(); ++a) {
            P2 p = pts[a];
            add({-p[0], -p[1]});
            add({-p[1], p[0]});
            add({p[1], -p[0]});
            for (size_t b = a + 1; b < pts.size(); ++b) {
                P2 d{pts[b][0] - p[0], pts[b][1] - p[1]};
                add({-d[1], d[0]});
                add({d[1], -d[0]});
            }
        }
    }
    return {dirs.begin(), dirs.end()};
}

// ---------------------------------------------------------------------------
// Verdicts.

struct FrameOutcome {
    enum class Kind { Stable, StrictlySemistable, Unstable } kind;
    std::optional<std::vector<long long>> witness;  // 1-PS weights when unstable
    std::vector<std::vector<long long>> zero_ps;    // 1-PS with mu-pair exactly zero
};

/// Decides the epsilon->0+ pair verdict in one coordinate frame: mu(C) sign
/// first, mu(L) as tiebreaker, over all diagonal 1-PS of that frame.
inline FrameOutcome frame_pair_outcome(const TernaryForm& c, const TernaryForm& l) {
    std::vector<P2> pc = support_points(c);
    std::vector<P2> pl = support_points(l);
    std::vector<P2> hull = convex_hull(pc);
    FrameOutcome out{FrameOutcome::Kind::Stable, std::nullopt, {}};

    HullPosition pos = origin_position(hull);
    if (pos == HullPosition::Outside) {
        // a separating direction with mu(C) < 0 exists; scan candidates
        std::vector<long long> best;
        for (const P2& d : candidate_rays({pc})) {
            if (support_value(pc, d) < 0) {
                auto w = to_weights(d);
                if (best.empty() || w < best) best = w;
            }
        }
        out.kind = FrameOutcome::Kind::Unstable;
        out.witness = best;
        return out;
    }
    if (pos == HullPosition::Interior) return out;  // mu(C) > 0 off the origin

    // Origin on the hull boundary: restrict to the cone N = {mu_C = 0} and
    // examine mu(L) there.
    std::vector<long long> neg_witness;
    for (const P2& d : candidate_rays({pc, pl})) {
        if (support_value(pc, d) != 0) continue;  // outside N
        long long ml = support_value(pl, d);
        if (ml < 0) {
            auto w = to_weights(d);
            if (neg_witness.empty() || w < neg_witness) neg_witness = w;
        } else if (ml == 0) {
            out.zero_ps.push_back(to_weights(d));
        }
    }
    if (!neg_witness.empty()) {
        out.kind = FrameOutcome::Kind::Unstable;
        out.witness = neg_witness;
        return out;
    }
    if (!out.zero_ps.empty()) {
        out.kind = FrameOutcome::Kind::StrictlySemistable;
        return out;
    }
    return out;  // mu(L) > 0 wherever mu(C) = 0: stable for small eps
}

/// Same decision with a numeric epsilon (used for the constancy checks).
inline FrameOutcome frame_pair_outcome_at_eps(const TernaryForm& c, const TernaryForm& l,
                                              const Rat& eps) {
    std::vector<P2> pc = support_points(c);
    std::vector<P2> pl = support_points(l);
    FrameOutcome out{FrameOutcome::Kind::Stable, std::nullopt, {}};
    std::vector<long long> neg_witness;
    for (const P2& d : candidate_rays({pc, pl})) {
        Rat v = Rat(support_value(pc, d)) + eps * Rat(support_value(pl, d));
        if (v < 0) {
            auto w = to_weights(d);
            if (neg_witness.empty() || w < neg_witness) neg_witness = w;
        } else if (v == 0) {
            out.zero_ps.push_back(to_weights(d));
        }
    }
    if (!neg_witness.empty()) {
        out.kind = FrameOutcome::Kind::Unstable;
        out.witness = neg_witness;
    } else if (!out.zero_ps.empty()) {
        out.kind = FrameOutcome::Kind::StrictlySemistable;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimal-orbit pattern recognition (frame-local). The conic-pencil forms
// prod (x0 x2 - a_i x1^2) are cubics in u = x0 x2, v = x1^2.

inline std::optional<std::array<Rat, 4>> conic_pencil_coefficients(const TernaryForm& c) {
    if (c.degree != 6) return std::nullopt;
    std::array<Rat, 4> coeff{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (const auto& [e, val] : c.terms) {
        if (e[0] != e[2] || e[1] != 6 - 2 * e[0]) return std::nullopt;
        coeff[e[0]] = val;  // coefficient of u^k v^{3-k}
    }
    return coeff;
}

inline bool is_line_x1(const TernaryForm& l) {
    return l.degree == 1 && l.terms.size() == 1 && l.terms.begin()->first == std::array<int, 3>{0, 1, 0};
}

/// Classifies the pencil cubic by its root pattern; empty string = no match.
inline std::string minimal_orbit_id(const TernaryForm& c, const TernaryForm& l) {
    if (!is_line_x1(l)) return "";
    auto co = conic_pencil_coefficients(c);
    if (!co) return "";
    const auto& cf = *co;
    if (cf[3] == 0) return "";  // x1^2 divides: not one of the pencil orbits
    Rat a = cf[2] / cf[3], b = cf[1] / cf[3], cc = cf[0] / cf[3];
    Rat disc = Rat(18) * a * b * cc - Rat(4) * a * a * a * cc + a * a * b * b -
               Rat(4) * b * b * b - Rat(27) * cc * cc;
    if (disc != 0) {
        // three distinct conics; the named orbit needs them all smooth
        return cc != 0 ? "Z1" : "";
    }
    if (b == a * a / 3 && cc == a * a * a / 27) {
        Rat rho = -a / 3;
        return rho != 0 ? "triple-conic" : "";
    }
    // double root of the cubic: linear remainder of gcd(p, p')
    Rat lead = Rat(2) * b / 3 - Rat(2) * a * a / 9;
    Rat cons = cc - a * b / 9;
    Rat rho = -cons / lead;
    if (rho == 0) return "Z2-tangent";
    // third root: product of roots rho^2 * s = -cc
    Rat s = -cc / (rho * rho);
    return s != 0 ? "tau" : "";
}

// ---------------------------------------------------------------------------
// Pair verdict over supplied coordinate frames.

inline RMat identity_frame() {
    return {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
}

struct PairVerdict {
    enum class Kind { Stable, StrictlySemistable, Unstable, Undetermined } kind;
    std::optional<std::vector<long long>> witness;
    std::optional<size_t> frame_index;
    std::string orbit_id;
    std::string detail;
};

inline PairVerdict pair_verdict(const TernaryForm& c, const TernaryForm& l,
                                std::vector<RMat> frames = {}, bool coverage_certified = false) {
    if (c.degree != 6 || l.degree != 1)
        throw domain_error("pair verdict expects a sextic and a line");
    if (frames.empty()) frames.push_back(identity_frame());
    std::vector<FrameOutcome> outcomes;
    std::vector<TernaryForm> cs, ls;
    for (const auto& fr : frames) {
        cs.push_back(substitute(c, fr));
        ls.push_back(substitute(l, fr));
        outcomes.push_back(frame_pair_outcome(cs.back(), ls.back()));
    }
    PairVerdict v{PairVerdict::Kind::Undetermined, std::nullopt, std::nullopt, "", ""};
    for (size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].kind != FrameOutcome::Kind::Unstable) continue;
        if (!v.witness || *outcomes[i].witness < *v.witness) {
            v.kind = PairVerdict::Kind::Unstable;
            v.witness = outcomes[i].witness;
            v.frame_index = i;
        }
    }
    if (v.kind == PairVerdict::Kind::Unstable) {
        v.detail = "destabilizing 1-PS found";
        return v;
    }
    for (size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].kind != FrameOutcome::Kind::StrictlySemistable) continue;
        std::string id = minimal_orbit_id(cs[i], ls[i]);
        if (!id.empty()) {
            v.kind = PairVerdict::Kind::StrictlySemistable;
            v.orbit_id = id;
            v.frame_index = i;
            v.detail = "mu-pair vanishes on an adapted 1-PS; minimal-orbit pattern matched";
            return v;
        }
        v.kind = PairVerdict::Kind::Undetermined;
        v.detail = "mu-pair vanishes but no recognized minimal-orbit pattern";
    }
    if (v.kind == PairVerdict::Kind::Undetermined && !v.detail.empty()) return v;
    if (coverage_certified) {
        v.kind = PairVerdict::Kind::Stable;
        v.detail = "strictly positive in every supplied frame; coverage certified by caller";
    } else {
        v.kind = PairVerdict::Kind::Undetermined;
        v.detail = "strictly positive in every supplied frame; frame coverage not certified";
    }
    return v;
}

// ---------------------------------------------------------------------------
// slc double-cover test.

enum class SlcVerdict { Slc, NotSlc, Undetermined };
enum class Certificate { None, Semistable, Stable };

struct SlcReport {
    SlcVerdict verdict;
    std::string reason;
};

/// Triple-conic degeneration test in the given frame: the (1,0,-1)-weight-zero
/// leading part must be a cube c (x0 x2 + beta x1^2)^3 with beta != 0 and all
/// remaining terms of negative weight.
inline bool triple_conic_degeneration(const TernaryForm& c) {
    if (c.degree != 6) throw domain_error("sextic expected");
    long long maxw = 0;
    bool first = true;
    for (const auto& [e, v] : c.terms) {
        long long w = e[0] - e[2];
        if (first || w > maxw) maxw = w;
        first = false;
    }
    if (maxw != 0) return false;
    std::array<Rat, 4> cf{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (const auto& [e, v] : c.terms) {
        if (e[0] - e[2] != 0) continue;
        if (e[0] != e[2] || e[1] != 6 - 2 * e[0]) return false;  // weight-0 but off the pencil
        cf[e[0]] = v;
    }
    if (cf[3] == 0) return false;
    Rat beta = cf[2] / (Rat(3) * cf[3]);
    if (beta == 0) return false;
    return cf[1] == Rat(3) * cf[3] * beta * beta && cf[0] == cf[3] * beta * beta * beta;
}

inline SlcReport slc_double_cover_test(const TernaryForm& c, std::vector<RMat> frames = {},
                                       Certificate cert = Certificate::None) {
    if (frames.empty()) frames.push_back(identity_frame());
    for (const auto& fr : frames) {
        TernaryForm cf = substitute(c, fr);
        if (triple_conic_degeneration(cf))
            return {SlcVerdict::NotSlc, "orbit closure contains the triple conic"};
        if (torus_stability(cf) == TorusStability::Unstable)
            return {SlcVerdict::NotSlc, "GIT unstable: destabilizing diagonal 1-PS in a supplied frame"};
    }
    if (cert != Certificate::None)
        return {SlcVerdict::Slc,
                "certified semistable; triple-conic degeneration test negative in all supplied frames"};
    return {SlcVerdict::Undetermined,
            "no instability or triple-conic degeneration found, but semistability is not certified"};
}

}  // namespace k3tk::git
