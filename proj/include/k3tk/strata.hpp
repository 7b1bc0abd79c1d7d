#pragma once

// The boundary stratification database: the two classification tables as
// versioned static data, descriptor matching, Baily-Borel targets, closure
// posets for both the GIT and pair compactifications, and the dimension
// audit that recomputes every tabulated dimension from its constituents.

#include "k3tk/forms.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace k3tk::strata {

enum class Space { Pairs, Git };

struct StratumRecord {
    std::string id;
    Space space = Space::Pairs;
    std::string description;
    int dim = 0;
    std::string bb_target;                   // one of the four Type II labels or "TypeIII-point"
    std::vector<std::string> contained_in;   // strict closure relations (immediate)
    std::vector<std::string> component_of;   // irreducible-component relations (same dim)
    std::string table_ref;
    std::string note;
};

inline const std::vector<StratumRecord>& records() {
    static const std::vector<StratumRecord> db = [] {
        std::vector<StratumRecord> r;
        auto add = [&r](StratumRecord rec) { r.push_back(std::move(rec)); };
        // --- pair-space Type II strata (table 1)
        add({"II1", Space::Pairs, "two planes glued along a smooth elliptic curve", 3,
             "II_A17", {}, {}, "table1:1", ""});
        add({"II2", Space::Pairs,
             "two degree 1 del Pezzo surfaces glued along a smooth elliptic curve", 19,
             "II_2E8+A1", {}, {}, "table1:2", "flip locus: replaces the strictly semistable surface"});
        add({"II3", Space::Pairs,
             "normalization an irreducible quadric in P3, smooth elliptic double curve", 4,
             "II_D16+A1", {}, {}, "table1:3", ""});
        add({"II4", Space::Pairs,
             "normalization a degree 2 del Pezzo, smooth elliptic double curve", 10,
             "II_E7+D10", {}, {}, "table1:4", ""});
        add({"II5", Space::Pairs, "rational surface with one E8-tilde singularity", 12,
             "II_2E8+A1", {}, {}, "table1:5", ""});
        add({"II6", Space::Pairs, "rational surface with one E7-tilde singularity", 13,
             "II_E7+D10", {}, {}, "table1:6", ""});
        // --- pair-space Type III strata (table 1, last column; dims drop by one)
        add({"III1", Space::Pairs, "two planes glued along a nodal cubic", 2, "TypeIII-point",
             {"II1"}, {}, "table1:1", ""});
        add({"III2", Space::Pairs, "two degree 1 del Pezzos glued along a nodal anticanonical curve",
             18, "TypeIII-point", {"II2"}, {}, "table1:2", ""});
        add({"III3", Space::Pairs,
             "quadric normalization with degenerate double curve; two irreducible components", 3,
             "TypeIII-point", {"II3"}, {}, "table1:3", "reducible: IIIgamma u IIIdelta"});
        add({"III4", Space::Pairs,
             "degree 2 del Pezzo with nodal double curve (quartic plus tangent double line)", 9,
             "TypeIII-point", {"II4"}, {}, "table1:4", ""});
        add({"III5", Space::Pairs, "rational surface with a T_{2,3,r} cusp (generically T_{2,3,7})",
             11, "TypeIII-point", {"II5"}, {}, "table1:5", ""});
        add({"III6", Space::Pairs,
             "rational surface with a T_{2,q,r} cusp, q >= 4 (generically T_{2,4,5})", 12,
             "TypeIII-point", {"II6"}, {}, "table1:6", ""});
        // --- pair-space incidence strata (table 2)
        add({"IIIalpha", Space::Pairs,
             "two planes glued along a reducible anticanonical cycle of length 2", 1,
             "TypeIII-point", {"III1", "IIIbeta", "IIIdelta"}, {}, "table2:alpha", ""});
        add({"IIIbeta", Space::Pairs, "degree 2 del Pezzo with an A1 point on the double curve", 8,
             "TypeIII-point", {"III4", "III6"}, {}, "table2:beta", ""});
        add({"IIIgamma", Space::Pairs, "quadric normalization, double curve a union of two conics",
             3, "TypeIII-point", {"II3", "IIIbeta"}, {"III3"}, "table2:gamma", ""});
        add({"IIIdelta", Space::Pairs, "quadric normalization, double curve a nodal quartic", 3,
             "TypeIII-point", {"II3", "III5"}, {"III3"}, "table2:delta", ""});
        add({"IIIepsilon", Space::Pairs,
             "quadric normalization, double curve a conic and two lines (cycle of length 3)", 2,
             "TypeIII-point", {"IIIgamma", "IIIdelta"}, {}, "table2:epsilon", ""});
        add({"IIIphi", Space::Pairs,
             "degree 1 del Pezzo glued to a cone over a nodal curve (normalization a plane)", 9,
             "TypeIII-point", {"III2", "III5"}, {}, "table2:phi", ""});
        add({"IIIzeta_prime", Space::Pairs, "two cones over a nodal curve (normalizations planes)",
             0, "TypeIII-point", {"IIIphi"}, {}, "table2:zeta_prime",
             "dim stored verbatim; positive-dimensional stabilizer caveat"});
        add({"IIIzeta", Space::Pairs, "two planes glued along a triangle of lines", 0,
             "TypeIII-point", {"IIIalpha", "IIIepsilon"}, {}, "table2:zeta",
             "dim stored verbatim; positive-dimensional stabilizer caveat"});
        // --- GIT strata (sextic quotient and its blow-up)
        add({"Z1", Space::Git,
             "sextics with a simple elliptic E8-tilde point; minimal orbits are three conics of a pencil",
             2, "II_2E8+A1", {}, {}, "git:Z1", "strictly semistable; C* stabilizer on minimal orbits"});
        add({"Z2", Space::Git, "sextics with a double line or an E7-tilde point", 1, "II_E7+D10",
             {}, {}, "git:Z2", "C* stabilizer on minimal orbits"});
        add({"Z3", Space::Git, "double conic plus a transversal conic", 2, "II_D16+A1", {}, {},
             "git:Z3", "stable points"});
        add({"Z4", Space::Git, "double cubics", 1, "II_A17", {}, {}, "git:Z4", "stable points"});
        add({"tau", Space::Git, "two tangent conics, one doubled", 1, "TypeIII-point",
             {"Z1", "Z3"}, {}, "git:tau", ""});
        add({"zeta", Space::Git, "the double triangle (x0 x1 x2)^2", 0, "TypeIII-point",
             {"Z1", "Z2", "Z3", "Z4", "tau"}, {}, "git:zeta", "2-torus stabilizer"});
        add({"omega", Space::Git, "the triple conic orbit, replaced by the unigonal divisor", 0,
             "TypeIII-point", {"tau"}, {}, "git:omega", "SL(2) stabilizer; blown up"});
        add({"U1", Space::Git,
             "unigonal: three quartic hyperplane sections tangent at two points (two E8-tilde points)",
             1, "II_2E8+A1", {"Z1"}, {}, "git:U1", "exceptional stratum over omega"});
        add({"U3", Space::Git,
             "unigonal: doubled quartic curve plus a transversal quartic (stable)", 1,
             "II_D16+A1", {"Z3"}, {}, "git:U3", "exceptional stratum over omega"});
        add({"xi", Space::Git, "unigonal: doubled quartic tangent to the residual quartic twice", 0,
             "TypeIII-point", {"U1", "U3", "tau"}, {}, "git:xi", ""});
        return r;
    }();
    return db;
}

inline const StratumRecord& record(const std::string& id) {
    for (const auto& r : records())
        if (r.id == id) return r;
    throw domain_error("unknown stratum id: " + id);
}

inline std::string bb_target(const std::string& id) { return record(id).bb_target; }

// ---------------------------------------------------------------------------
// Closure poset.

struct Poset {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;  // (smaller, larger)

    bool leq(const std::string& a, const std::string& b) const {
        if (a == b) return true;
        std::set<std::string> seen{a};
        std::vector<std::string> stack{a};
        while (!stack.empty()) {
            std::string v = stack.back();
            stack.pop_back();
            for (const auto& [x, y] : edges)
                if (x == v && !seen.count(y)) {
                    if (y == b) return true;
                    seen.insert(y);
                    stack.push_back(y);
                }
        }
        return false;
    }
};

inline Poset adjacency_graph(Space space) {
    Poset p;
    for (const auto& r : records()) {
        if (r.space != space) continue;
        p.nodes.push_back(r.id);
        for (const auto& up : r.contained_in) p.edges.emplace_back(r.id, up);
    }
    std::sort(p.nodes.begin(), p.nodes.end());
    std::sort(p.edges.begin(), p.edges.end());
    return p;
}

// ---------------------------------------------------------------------------
// Descriptor classification.

struct PairDescriptor {
    int components = 1;
    std::vector<std::string> kinds;  // plane | quadric | dP1 | dP2 | scroll | elliptic-ruled | cone
    std::string double_curve = "none";  // smooth-elliptic | nodal | cycle | none
    int cycle_length = 0;
    std::string singularity = "none";  // none | E7~ | E8~ | T | degenerate-cusp
    std::array<int, 3> tpqr{0, 0, 0};
};

inline void check_descriptor(const PairDescriptor& d) {
    if (d.components < 1 || d.components > 2)
        throw domain_error("descriptor components must be 1 or 2");
    if (static_cast<int>(d.kinds.size()) != d.components)
        throw domain_error("descriptor needs one kind per component");
    static const std::set<std::string> kinds{"plane", "quadric", "dP1",
                                             "dP2",   "scroll",  "elliptic-ruled", "cone"};
    for (const auto& k : d.kinds)
        if (!kinds.count(k)) throw domain_error("unknown component kind: " + k);
    static const std::set<std::string> dcs{"smooth-elliptic", "nodal", "cycle", "none"};
    if (!dcs.count(d.double_curve)) throw domain_error("unknown double-curve kind");
    if (d.double_curve == "cycle" && d.cycle_length < 2)
        throw domain_error("cycle double curve needs a length >= 2");
    static const std::set<std::string> sings{"none", "E7~", "E8~", "T", "degenerate-cusp"};
    if (!sings.count(d.singularity)) throw domain_error("unknown singularity kind");
    if (d.double_curve == "smooth-elliptic" &&
        (d.singularity == "T" || d.singularity == "degenerate-cusp"))
        throw domain_error("inconsistent descriptor: Type II needs a smooth double curve and no cusp");
}

inline const StratumRecord& stratum_of(const PairDescriptor& d) {
    check_descriptor(d);
    auto kindset = [&] {
        std::multiset<std::string> s(d.kinds.begin(), d.kinds.end());
        return s;
    }();
    auto is = [&](std::initializer_list<const char*> ks) {
        std::multiset<std::string> want;
        for (const char* k : ks) want.insert(k);
        return kindset == want;
    };
    const std::string& dc = d.double_curve;
    if (d.singularity == "E8~" && d.components == 1) return record("II5");
    if (d.singularity == "E7~" && d.components == 1) return record("II6");
    if (d.singularity == "T" && d.components == 1) {
        auto [p, q, r] = d.tpqr;
        if (p == 2 && q == 3 && r >= 7 && r <= 16) return record("III5");
        if (p == 2 && q >= 4 && r >= 5 && q + r <= 19) return record("III6");
        throw domain_error("cusp type outside the degree-2 range");
    }
    if (d.singularity == "degenerate-cusp" && is({"dP2"})) return record("IIIbeta");
    if (is({"plane", "plane"})) {
        if (dc == "smooth-elliptic") return record("II1");
        if (dc == "nodal") return record("III1");
        if (dc == "cycle" && d.cycle_length == 2) return record("IIIalpha");
        if (dc == "cycle" && d.cycle_length == 3) return record("IIIzeta");
    }
    if (is({"dP1", "dP1"})) {
        if (dc == "smooth-elliptic") return record("II2");
        if (dc == "nodal") return record("III2");
    }
    if (is({"dP1", "cone"}) && dc == "nodal") return record("IIIphi");
    if (is({"cone", "cone"}) && dc == "nodal") return record("IIIzeta_prime");
    if (is({"quadric"})) {
        if (dc == "smooth-elliptic") return record("II3");
        if (dc == "nodal") return record("IIIdelta");
        if (dc == "cycle" && d.cycle_length == 2) return record("IIIgamma");
        if (dc == "cycle" && d.cycle_length == 3) return record("IIIepsilon");
    }
    if (is({"dP2"})) {
        if (dc == "smooth-elliptic") return record("II4");
        if (dc == "nodal") return record("III4");
    }
    throw domain_error("descriptor matches no boundary stratum of the pair space");
}

// ---------------------------------------------------------------------------
// Weighted projective signatures delegated to the lattice module.

inline std::vector<long long> wp_moduli_signature(const std::string& label,
                                                  bool with_section = false) {
    if (label != "E7" && label != "E8")
        throw domain_error("wp_moduli_signature supports E7 and E8 only");
    std::vector<long long> sig = lattice::highest_root_coefficients(label);
    sig.insert(sig.begin(), 1);
    if (with_section) sig.insert(sig.begin(), 1);
    std::sort(sig.begin(), sig.end());
    return sig;
}

// ---------------------------------------------------------------------------
// Dimension audit.

struct AuditLine {
    std::string id;
    int expected = 0;
    int computed = 0;
    std::vector<std::pair<std::string, int>> constituents;
    bool ok = false;
};

struct AuditReport {
    std::vector<AuditLine> lines;
    std::vector<std::string> failures;
    bool ok = true;
};

inline git::WeightMultiset versal_e8_tilde_weights() {
    return {{0, 1}, {-1, 1}, {-2, 2}, {-3, 2}, {-4, 2}, {-5, 1}, {-6, 1}};
}

inline AuditReport dimension_audit() {
    AuditReport rep;
    auto line = [&rep](const std::string& id, std::vector<std::pair<std::string, int>> parts) {
        AuditLine l;
        l.id = id;
        l.expected = record(id).dim;
        l.constituents = std::move(parts);
        for (const auto& [name, v] : l.constituents) l.computed += v;
        l.ok = (l.computed == l.expected);
        if (!l.ok) {
            rep.ok = false;
            rep.failures.push_back(id + " (" + record(id).table_ref + "): recomputed " +
                                   std::to_string(l.computed) + " != tabulated " +
                                   std::to_string(l.expected));
        }
        rep.lines.push_back(std::move(l));
    };
    const int e8 = static_cast<int>(lattice::highest_root_coefficients("E8").size());
    const int e7 = static_cast<int>(lattice::highest_root_coefficients("E7").size());
    const int versal_neg =
        static_cast<int>(git::wp_fiber(versal_e8_tilde_weights(), true).negative.size());
    line("II1", {{"elliptic modulus (j-line)", 1}, {"choice of line (P2)", 2}});
    line("II2", {{"elliptic modulus (j-line)", 1},
                 {"del Pezzo 1 moduli (E8 root count per surface)", e8},
                 {"del Pezzo 2 moduli", e8},
                 {"polarizing section on V1", 1},
                 {"polarizing section on V2", 1}});
    line("II3", {{"elliptic modulus (j-line)", 1}, {"P2 x P1 fiber", 3}});
    line("II4", {{"elliptic modulus (j-line)", 1},
                 {"degree 2 del Pezzo moduli (E7)", e7},
                 {"polarizing divisor", 2}});
    line("II5", {{"elliptic modulus (j-line)", 1},
                 {"E8-tilde sextic moduli at fixed j (versal negative weights)", versal_neg},
                 {"line avoiding the singular point", 2}});
    line("II6", {{"elliptic modulus (j-line)", 1}, {"E7-tilde stratum fiber", 12}});
    for (int i = 1; i <= 6; ++i) {
        std::string ii = "II" + std::to_string(i);
        line("III" + std::to_string(i),
             {{"Type II dimension", record(ii).dim}, {"nodal degeneration", -1}});
    }
    // fiber cross-checks against the Baily-Borel targets
    auto cross = [&rep](const std::string& what, long long got, long long want) {
        if (got != want) {
            rep.ok = false;
            rep.failures.push_back(what + ": " + std::to_string(got) + " != " +
                                   std::to_string(want));
        }
    };
    cross("fiber of II2 over II_2E8+A1", record("II2").dim - 1, 18);
    cross("fiber of II5 over II_2E8+A1", record("II5").dim - 1, 11);
    cross("fiber of II4 over II_E7+D10", record("II4").dim - 1, 9);
    cross("fiber of II6 over II_E7+D10", record("II6").dim - 1, 12);
    cross("II2 fiber vs two weighted projective spaces of pair moduli",
          record("II2").dim - 1,
          2 * (static_cast<long long>(wp_moduli_signature("E8", true).size()) - 1));
    cross("II5 fiber vs versal negative weights plus line choice", record("II5").dim - 1,
          versal_neg + 2);
    return rep;
}

// ---------------------------------------------------------------------------
// Table and graph exports (deterministic byte-for-byte).

inline std::string csv_escape(const std::string& s) {
    bool need = s.find_first_of(",\"\n") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string table1_csv() {
    std::ostringstream os;
    os << "row,id,description,dim,type_II_label,bb_target,type_III_id,type_III_description,type_III_dim\n";
    const char* labels[6] = {"A17", "2E8+A1 (A)", "D16+A1", "E7+D10 (A)", "2E8+A1 (B)",
                             "E7+D10 (B)"};
    for (int i = 1; i <= 6; ++i) {
        const auto& ii = record("II" + std::to_string(i));
        const auto& iii = record("III" + std::to_string(i));
        os << i << ',' << ii.id << ',' << csv_escape(ii.description) << ',' << ii.dim << ','
           << csv_escape(labels[i - 1]) << ',' << csv_escape(ii.bb_target) << ',' << iii.id << ','
           << csv_escape(iii.description) << ',' << iii.dim << '\n';
    }
    return os.str();
}

inline std::string table2_csv() {
    std::ostringstream os;
    os << "id,description,dim,contained_in\n";
    for (const char* id : {"IIIalpha", "IIIbeta", "IIIgamma", "IIIdelta", "IIIepsilon", "IIIphi",
                           "IIIzeta_prime", "IIIzeta"}) {
        const auto& r = record(id);
        std::string rel;
        for (const auto& c : r.component_of) rel += (rel.empty() ? "" : ";") + ("comp. of " + c);
        for (const auto& c : r.contained_in) rel += (rel.empty() ? "" : ";") + c;
        os << r.id << ',' << csv_escape(r.description) << ',' << r.dim << ',' << csv_escape(rel)
           << '\n';
    }
    return os.str();
}

inline std::string adjacency_dot(Space space) {
    Poset p = adjacency_graph(space);
    std::ostringstream os;
    os << "digraph " << (space == Space::Pairs ? "pairs" : "git") << " {\n";
    for (const auto& n : p.nodes)
        os << "  \"" << n << "\" [label=\"" << n << " (dim " << record(n).dim << ")\"];\n";
    for (const auto& [a, b] : p.edges) os << "  \"" << a << "\" -> \"" << b << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace k3tk::strata
