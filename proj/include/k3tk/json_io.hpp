#pragma once

// Readers and writers for the toolkit's JSON surface. Rationals cross the
// boundary as "p/q" strings so nothing is rounded.

#include "k3tk/anticanonical.hpp"
#include "k3tk/degeneration.hpp"
#include "k3tk/elliptic.hpp"
#include "k3tk/forms.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace k3tk::io {

using nlohmann::json;

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw parse_error("expected a rational as integer or \"p/q\" string");
}

inline json rat_to_json(const Rat& r) { return format_rational(r); }

// --- lattices ---------------------------------------------------------------

inline lattice::IntegerLattice lattice_from_json(const json& j) {
    if (j.contains("blocks")) {
        std::vector<std::string> names;
        for (const auto& b : j.at("blocks")) names.push_back(b.get<std::string>());
        return lattice::lattice_from_blocks(names);
    }
    if (!j.contains("gram")) throw parse_error("lattice JSON needs \"gram\" or \"blocks\"");
    IMat gram;
    for (const auto& row : j.at("gram")) {
        IVec r;
        for (const auto& x : row) r.push_back(x.get<long long>());
        gram.push_back(std::move(r));
    }
    if (j.contains("rank") && j.at("rank").get<size_t>() != gram.size())
        throw parse_error("declared rank does not match the gram matrix");
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
    return lattice::make_lattice(std::move(gram), std::move(labels));
}

inline json lattice_to_json(const lattice::IntegerLattice& lat) {
    json j;
    j["rank"] = lat.rank;
    j["gram"] = lat.gram;
    if (!lat.labels.empty()) j["labels"] = lat.labels;
    return j;
}

inline IVec ivec_from_json(const json& j) {
    IVec v;
    for (const auto& x : j) v.push_back(x.get<long long>());
    return v;
}

// --- forms ------------------------------------------------------------------

inline git::TernaryForm ternary_from_json(const json& j) {
    git::TernaryForm f;
    f.degree = j.at("degree").get<int>();
    for (const auto& t : j.at("terms")) {
        const auto& e = t.at("exp");
        if (e.size() != 3) throw parse_error("ternary exponent must have 3 entries");
        f.insert({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}, rat_from_json(t.at("coef")));
    }
    return f;
}

inline git::BinaryForm binary_from_json(const json& j) {
    git::BinaryForm f;
    f.degree = j.at("degree").get<int>();
    for (const auto& t : j.at("terms")) {
        const auto& e = t.at("exp");
        if (e.size() != 2) throw parse_error("binary exponent must have 2 entries");
        f.insert({e[0].get<int>(), e[1].get<int>()}, rat_from_json(t.at("coef")));
    }
    return f;
}

inline json ternary_to_json(const git::TernaryForm& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms)
        terms.push_back({{"exp", {e[0], e[1], e[2]}}, {"coef", rat_to_json(c)}});
    return {{"degree", f.degree}, {"terms", terms}};
}

inline RMat frame_from_json(const json& j) {
    RMat m;
    for (const auto& row : j) {
        RVec r;
        for (const auto& x : row) r.push_back(rat_from_json(x));
        m.push_back(std::move(r));
    }
    if (m.size() != 3 || m[0].size() != 3) throw parse_error("frame must be a 3x3 matrix");
    return m;
}

// --- anticanonical pairs ----------------------------------------------------

inline acs::PairModel pair_from_json(const json& j) {
    IVec L = ivec_from_json(j.at("L"));
    IVec D = ivec_from_json(j.at("D"));
    const size_t n = L.size();
    if (j.contains("rank") && j.at("rank").get<size_t>() != n)
        throw parse_error("declared rank does not match vector length");
    IMat gram;
    if (j.contains("gram")) {
        for (const auto& row : j.at("gram")) gram.push_back(ivec_from_json(row));
    } else {
        gram = IMat(n, IVec(n, 0));
        gram[0][0] = 1;
        for (size_t i = 1; i < n; ++i) gram[i][i] = -1;
    }
    IVec K;
    if (j.contains("K")) {
        K = ivec_from_json(j.at("K"));
    } else {
        K = IVec(n, 1);
        K[0] = -3;
    }
    return acs::make_model(std::move(gram), std::move(K), std::move(D), std::move(L));
}

inline acs::ResolutionConfig resolution_from_json(const json& j) {
    acs::ResolutionConfig cfg;
    for (const auto& row : j.at("gram")) cfg.exceptional_gram.push_back(ivec_from_json(row));
    cfg.strict_transform_incidence = ivec_from_json(j.at("incidence"));
    cfg.strict_multiplicity = j.at("mult").get<long long>();
    return cfg;
}

// --- Kulikov models ----------------------------------------------------------

inline degen::KulikovModel model_from_json(const json& j) {
    degen::KulikovModel m;
    std::string kind = j.at("kind").get<std::string>();
    m.total_degree = j.value("d", 2LL);
    if (kind == "II") {
        m.kind = degen::KulikovModel::Kind::TypeII;
        for (const auto& c : j.at("chain")) {
            std::string k = c.at("kind").get<std::string>();
            degen::ChainComponent comp;
            if (k == "rational-end") comp.kind = degen::ChainComponent::Kind::RationalEnd;
            else if (k == "elliptic-ruled") comp.kind = degen::ChainComponent::Kind::EllipticRuled;
            else throw parse_error("unknown chain component kind: " + k);
            comp.l2 = c.value("l2", 0LL);
            m.chain.push_back(comp);
        }
        for (const auto& c : j.at("curves"))
            m.curves.push_back({c.at("a").get<long long>(), c.at("a_prime").get<long long>(),
                                c.value("ldeg", 0LL)});
        if (j.contains("profile")) {  // cross-check the redundant encoding
            auto prof = degen::component_profiles(m);
            size_t i = 0;
            for (const auto& p : j.at("profile")) {
                if (i >= prof.size()) throw parse_error("profile longer than the chain");
                if (p[0].get<long long>() != prof[i].l2 || p[1].get<long long>() != prof[i].ld)
                    throw parse_error("profile entry " + std::to_string(i + 1) +
                                      " disagrees with the chain data");
                ++i;
            }
        }
    } else if (kind == "III") {
        m.kind = degen::KulikovModel::Kind::TypeIII;
        for (const auto& t : j.at("triangles")) {
            if (t.size() != 3) throw parse_error("triangles must have 3 vertices");
            m.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
            for (const auto& v : t) m.vertices = std::max(m.vertices, v.get<int>() + 1);
        }
        if (j.contains("vertices")) m.vertices = j.at("vertices").get<int>();
        if (j.contains("profile")) {
            for (const auto& p : j.at("profile")) {
                degen::ComponentProfile cp;
                cp.l2 = p[0].get<long long>();
                cp.ld = p[1].get<long long>();
                if (p.size() > 2) cp.d2 = p[2].get<long long>();
                m.profiles.push_back(cp);
            }
        }
        if (m.profiles.empty()) m.profiles.assign(m.vertices, degen::ComponentProfile{});
    } else {
        throw parse_error("model kind must be \"II\" or \"III\"");
    }
    return m;
}

inline json model_to_json(const degen::KulikovModel& m) {
    json j;
    j["d"] = m.total_degree;
    if (m.kind == degen::KulikovModel::Kind::TypeII) {
        j["kind"] = "II";
        json chain = json::array(), curves = json::array(), profile = json::array();
        for (const auto& c : m.chain)
            chain.push_back({{"kind", c.kind == degen::ChainComponent::Kind::RationalEnd
                                          ? "rational-end"
                                          : "elliptic-ruled"},
                             {"l2", c.l2}});
        for (const auto& c : m.curves)
            curves.push_back({{"a", c.a}, {"a_prime", c.a_prime}, {"ldeg", c.ldeg}});
        for (const auto& p : degen::component_profiles(m)) profile.push_back({p.l2, p.ld});
        j["chain"] = chain;
        j["curves"] = curves;
        j["profile"] = profile;
    } else {
        j["kind"] = "III";
        j["vertices"] = m.vertices;
        j["triangles"] = m.triangles;
        json profile = json::array();
        for (const auto& p : m.profiles) {
            if (p.d2) profile.push_back({p.l2, p.ld, *p.d2});
            else profile.push_back({p.l2, p.ld});
        }
        j["profile"] = profile;
    }
    return j;
}

// --- elliptic ----------------------------------------------------------------

inline ell::ConicTriple triple_from_json(const json& j) {
    const auto& a = j.at("alpha");
    if (a.size() != 3) throw parse_error("alpha must have three entries");
    return {{rat_from_json(a[0]), rat_from_json(a[1]), rat_from_json(a[2])}};
}

inline json invariants_to_json(const ell::EllipticInvariants& inv) {
    json j;
    j["lambda"] = inv.lambda ? json(format_rational(*inv.lambda)) : json("infinite");
    j["discriminant"] = format_rational(inv.discriminant);
    j["j"] = inv.j ? json(format_rational(*inv.j)) : json("infinite");
    j["degenerate"] = inv.degenerate;
    return j;
}

}  // namespace k3tk::io
