#include "k3tk/git.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace k3tk;
using namespace k3tk::git;

namespace {

TernaryForm mono(int d, int i, int j, int k, Rat c = Rat(1)) {
    return ternary(d, {{{i, j, k}, c}});
}

TernaryForm fermat6() {
    return ternary(6, {{{6, 0, 0}, Rat(1)}, {{0, 6, 0}, Rat(1)}, {{0, 0, 6}, Rat(1)}});
}

TernaryForm conic(const Rat& a) {  // x0 x2 - a x1^2
    return ternary(2, {{{1, 0, 1}, Rat(1)}, {{0, 2, 0}, -a}});
}

TernaryForm line_x1() { return mono(1, 0, 1, 0); }

TernaryForm z1_curve(const Rat& a1, const Rat& a2, const Rat& a3) {
    return multiply(multiply(conic(a1), conic(a2)), conic(a3));
}

TernaryForm mult4_curve() {  // multiplicity 4 at (1:0:0)
    TernaryForm f;
    f.degree = 6;
    f.insert({2, 4, 0}, Rat(1));
    f.insert({2, 0, 4}, Rat(1));
    f.insert({0, 6, 0}, Rat(1));
    f.insert({0, 0, 6}, Rat(1));
    return f;
}

TernaryForm double_line_curve() {  // x2^2 (x0^4 + x1^4 + x0^2 x1^2)
    TernaryForm f;
    f.degree = 6;
    f.insert({4, 0, 2}, Rat(1));
    f.insert({0, 4, 2}, Rat(1));
    f.insert({2, 2, 2}, Rat(1));
    return f;
}

// Brute-force oracle, independent of the hull machinery: scan every integral
// 1-PS in a box that is wide enough for degree-6 supports and read off mu.
TorusStability brute_torus(const TernaryForm& f, long long bound) {
    bool zero_seen = false;
    for (long long w0 = -bound; w0 <= bound; ++w0)
        for (long long w1 = -bound; w1 <= bound; ++w1) {
            long long w2 = -w0 - w1;
            if (w0 == 0 && w1 == 0) continue;
            long long best = 0;
            bool first = true;
            for (const auto& [e, c] : f.terms) {
                long long v = w0 * e[0] + w1 * e[1] + w2 * e[2];
                if (first || v > best) best = v;
                first = false;
            }
            if (best < 0) return TorusStability::Unstable;
            if (best == 0) zero_seen = true;
        }
    return zero_seen ? TorusStability::StrictlySemistable : TorusStability::Stable;
}

}  // namespace

TEST_CASE("mu on the calibration cases") {
    CHECK(mu(mono(6, 6, 0, 0), one_ps({1, 0, -1})) == 6);
    CHECK(mu(power(conic(Rat(1)), 3), one_ps({1, 0, -1})) == 0);
    CHECK(mu(mono(6, 0, 6, 0), one_ps({2, -1, -1})) == -6);
    CHECK(mu(binary(12, {{{12, 0}, Rat(1)}}), one_ps({1, -1})) == 12);
    CHECK_THROWS_AS(mu(TernaryForm{6, {}}, one_ps({1, 0, -1})), domain_error);
    CHECK_THROWS_AS(mu(fermat6(), one_ps({1, -1})), domain_error);
    CHECK_THROWS_AS(one_ps({1, 1, 1}), domain_error);
    CHECK_THROWS_AS(one_ps({0, 0, 0}), domain_error);
}

TEST_CASE("mu-pair on the adapted normal forms") {
    Rat eps(1, 10);
    CHECK(mu_pair(mult4_curve(), line_x1(), one_ps({2, -1, -1}), eps) == -eps);
    CHECK(mu_pair(double_line_curve(), mono(1, 0, 0, 1), one_ps({1, 1, -2}), eps) == -2 * eps);
    for (Rat e : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)})
        CHECK(mu_pair(z1_curve(1, 2, 3), line_x1(), one_ps({1, 0, -1}), e) == 0);
}

TEST_CASE("mu positive homogeneity") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        TernaryForm f;
        f.degree = 6;
        while (f.terms.empty()) {
            for (int t = 0; t < 4; ++t) {
                int i = pick(rng), j = pick(rng) % (7 - i);
                f.insert({i, j, 6 - i - j}, Rat(1 + (trial % 3)));
            }
        }
        long long a = static_cast<long long>(rng() % 9) - 4;
        long long b = static_cast<long long>(rng() % 9) - 4;
        if (a == 0 && b == 0) a = 1;
        long long base = mu(f, one_ps({a, b, -a - b}));
        for (long long k : {2LL, 5LL})
            CHECK(mu(f, one_ps({k * a, k * b, k * (-a - b)})) == k * base);
    }
}

TEST_CASE("mu frame equivariance under coordinate permutations") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> pick(0, 6);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int trial = 0; trial < 1000; ++trial) {
        TernaryForm f;
        f.degree = 6;
        while (f.terms.empty()) {
            int i = pick(rng), j = pick(rng) % (7 - i);
            f.insert({i, j, 6 - i - j}, Rat(1));
            i = pick(rng), j = pick(rng) % (7 - i);
            f.insert({i, j, 6 - i - j}, Rat(2));
        }
        long long a = static_cast<long long>(rng() % 7) - 3;
        long long b = static_cast<long long>(rng() % 7) - 3;
        if (a == 0 && b == 0) a = 2;
        const long long w[3] = {a, b, -a - b};
        long long base = mu(f, one_ps({w[0], w[1], w[2]}));
        for (const auto& p : perms) {
            TernaryForm g;
            g.degree = 6;
            for (const auto& [e, c] : f.terms) {
                std::array<int, 3> pe{};
                for (int v = 0; v < 3; ++v) pe[p[v]] = e[v];
                g.insert(pe, c);
            }
            std::vector<long long> pw(3);
            for (int v = 0; v < 3; ++v) pw[p[v]] = w[v];
            CHECK(mu(g, one_ps(pw)) == base);
        }
    }
}

TEST_CASE("mu subadditivity, equality without cancellation") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        TernaryForm f, g;
        f.degree = 3;
        g.degree = 3;
        while (f.terms.empty() || g.terms.empty()) {
            int i = pick(rng), j = pick(rng) % (4 - i);
            f.insert({i, j, 3 - i - j}, Rat(1 + pick(rng)));  // positive coefficients
            i = pick(rng), j = pick(rng) % (4 - i);
            g.insert({i, j, 3 - i - j}, Rat(1 + pick(rng)));
        }
        long long a = static_cast<long long>(rng() % 7) - 3;
        long long b = static_cast<long long>(rng() % 7) - 3;
        if (a == 0 && b == 0) b = 1;
        OnePS lam = one_ps({a, b, -a - b});
        CHECK(mu(multiply(f, g), lam) == mu(f, lam) + mu(g, lam));
    }
}

TEST_CASE("torus stability of the named forms") {
    CHECK(torus_stability(fermat6()) == TorusStability::Stable);
    CHECK(torus_stability(mono(6, 6, 0, 0)) == TorusStability::Unstable);
    CHECK(torus_stability(power(conic(Rat(1)), 3)) == TorusStability::StrictlySemistable);
    CHECK(torus_stability(z1_curve(1, 2, 3)) == TorusStability::StrictlySemistable);
}

TEST_CASE("torus stability agrees with the bounded brute force") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> pick(0, 6), sz(1, 8);
    auto check_form = [](const TernaryForm& f) {
        CHECK(torus_stability(f) == brute_torus(f, 110));
    };
    check_form(fermat6());
    check_form(mono(6, 6, 0, 0));
    check_form(power(conic(Rat(1)), 3));
    for (int trial = 0; trial < 60; ++trial) {
        TernaryForm f;
        f.degree = 6;
        int target = sz(rng);
        while (static_cast<int>(f.terms.size()) < target) {
            int i = pick(rng), j = pick(rng) % (7 - i);
            f.insert({i, j, 6 - i - j}, Rat(1));
        }
        check_form(f);
    }
}

TEST_CASE("pair verdicts on the classification normal forms") {
    SECTION("multiplicity-4 point with incident line") {
        auto v = pair_verdict(mult4_curve(), line_x1());
        CHECK(v.kind == PairVerdict::Kind::Unstable);
        REQUIRE(v.witness.has_value());
        CHECK(*v.witness == std::vector<long long>{2, -1, -1});
    }
    SECTION("double line taken as the section") {
        auto v = pair_verdict(double_line_curve(), mono(1, 0, 0, 1));
        CHECK(v.kind == PairVerdict::Kind::Unstable);
        REQUIRE(v.witness.has_value());
        CHECK(*v.witness == std::vector<long long>{1, 1, -2});
    }
    SECTION("triple-conic pencil with transverse section") {
        auto v = pair_verdict(z1_curve(1, 2, 3), line_x1());
        CHECK(v.kind == PairVerdict::Kind::StrictlySemistable);
        CHECK(v.orbit_id == "Z1");
    }
    SECTION("tangent configuration x0^2 x2^2 (x0 x2 - x1^2)") {
        TernaryForm c = multiply(multiply(mono(2, 2, 0, 0), mono(2, 0, 0, 2)), conic(Rat(1)));
        auto v = pair_verdict(c, line_x1());
        CHECK(v.kind == PairVerdict::Kind::StrictlySemistable);
        CHECK(v.orbit_id == "Z2-tangent");
    }
    SECTION("doubled conic in the pencil") {
        TernaryForm c = multiply(power(conic(Rat(1)), 2), conic(Rat(3)));
        auto v = pair_verdict(c, line_x1());
        CHECK(v.kind == PairVerdict::Kind::StrictlySemistable);
        CHECK(v.orbit_id == "tau");
    }
    SECTION("triple conic") {
        auto v = pair_verdict(power(conic(Rat(1)), 3), line_x1());
        CHECK(v.kind == PairVerdict::Kind::StrictlySemistable);
        CHECK(v.orbit_id == "triple-conic");
    }
    SECTION("smooth sextic with a generic line") {
        TernaryForm l =
            ternary(1, {{{1, 0, 0}, Rat(1)}, {{0, 1, 0}, Rat(1)}, {{0, 0, 1}, Rat(1)}});
        auto open = pair_verdict(fermat6(), l);
        CHECK(open.kind == PairVerdict::Kind::Undetermined);
        auto certified = pair_verdict(fermat6(), l, {}, true);
        CHECK(certified.kind == PairVerdict::Kind::Stable);
    }
}

TEST_CASE("verdicts are constant over the epsilon sweep") {
    std::vector<std::pair<TernaryForm, TernaryForm>> pairs{
        {mult4_curve(), line_x1()},
        {double_line_curve(), mono(1, 0, 0, 1)},
        {z1_curve(1, 2, 3), line_x1()},
        {multiply(multiply(mono(2, 2, 0, 0), mono(2, 0, 0, 2)), conic(Rat(1))), line_x1()},
        {fermat6(), line_x1()}};
    for (const auto& [c, l] : pairs) {
        auto symbolic = frame_pair_outcome(c, l);
        for (Rat e : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)}) {
            auto numeric = frame_pair_outcome_at_eps(c, l, e);
            CHECK(numeric.kind == symbolic.kind);
        }
    }
}

TEST_CASE("slc double-cover test") {
    auto fermat_cert = slc_double_cover_test(fermat6(), {}, Certificate::Stable);
    CHECK(fermat_cert.verdict == SlcVerdict::Slc);
    auto fermat_open = slc_double_cover_test(fermat6());
    CHECK(fermat_open.verdict == SlcVerdict::Undetermined);

    // (x0 x2 + x1^2)^3 + x2^6: the triple-conic degeneration support test fires
    TernaryForm plus_conic = ternary(2, {{{1, 0, 1}, Rat(1)}, {{0, 2, 0}, Rat(1)}});
    TernaryForm c = power(plus_conic, 3);
    c.insert({0, 0, 6}, Rat(5));
    CHECK(slc_double_cover_test(c).verdict == SlcVerdict::NotSlc);
    CHECK(slc_double_cover_test(power(plus_conic, 3)).verdict == SlcVerdict::NotSlc);
    CHECK(slc_double_cover_test(mono(6, 6, 0, 0)).verdict == SlcVerdict::NotSlc);
}

TEST_CASE("unigonal numerical function") {
    BinaryForm p12 = binary(12, {{{6, 6}, Rat(1)}});
    BinaryForm p8 = binary(8, {{{4, 4}, Rat(1)}});
    BinaryForm balanced = binary(2, {{{1, 1}, Rat(1)}});
    BinaryForm vsq = binary(2, {{{0, 2}, Rat(1)}});
    OnePS lam = one_ps({1, -1});
    for (Rat e : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)}) {
        CHECK(unigonal_mu(p12, p8, balanced, lam, e) == 0);
        CHECK(unigonal_mu(p12, p8, vsq, lam, e) == -2 * e);
    }
    BinaryForm u12 = binary(12, {{{12, 0}, Rat(1)}});
    CHECK(unigonal_mu(u12, p8, balanced, lam, Rat(1, 10)) == 36);
    CHECK_THROWS_AS(unigonal_mu(p8, p8, balanced, lam, Rat(1, 10)), domain_error);
}

TEST_CASE("luna slice weights") {
    WeightMultiset sextic{{6, 1}, {-6, 1}, {5, 1}, {-5, 1}, {4, 2}, {-4, 2},
                          {3, 2}, {-3, 2}, {2, 3}, {-2, 3}, {1, 3}, {-1, 3}, {0, 3}};
    WeightMultiset line{{1, 1}, {-1, 1}};
    WeightMultiset orbit{{2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {0, 1}};
    WeightMultiset normal = luna_normal_weights({sextic, line}, orbit);
    WeightMultiset expect{{6, 1}, {-6, 1}, {5, 1}, {-5, 1}, {4, 2}, {-4, 2},
                          {3, 2}, {-3, 2}, {2, 2}, {-2, 2}, {1, 2}, {-1, 2}, {0, 2}};
    CHECK(normal == expect);
    CHECK(total_multiplicity(normal) == 22);

    CHECK(luna_normal_weights({sextic}, {}) == sextic);
    CHECK_THROWS_AS(luna_normal_weights({line}, orbit), domain_error);

    WeightMultiset versal{{0, 1}, {-1, 1}, {-2, 2}, {-3, 2}, {-4, 2}, {-5, 1}, {-6, 1}};
    CHECK(luna_normal_weights({versal}, {}) == versal);
}

TEST_CASE("weighted projective fiber signatures") {
    WeightMultiset slice{{6, 1}, {-6, 1}, {5, 1}, {-5, 1}, {4, 2}, {-4, 2},
                         {3, 2}, {-3, 2}, {2, 2}, {-2, 2}, {1, 2}, {-1, 2}, {0, 2}};
    auto fib = wp_fiber(slice);
    std::vector<long long> expect{1, 1, 2, 2, 3, 3, 4, 4, 5, 6};
    CHECK(fib.positive == expect);
    CHECK(fib.negative == expect);
    CHECK(fib.zero_multiplicity == 2);

    auto small = wp_fiber({{1, 3}, {-1, 3}});
    CHECK(small.positive == std::vector<long long>{1, 1, 1});
    CHECK(small.negative == std::vector<long long>{1, 1, 1});

    WeightMultiset versal{{0, 1}, {-1, 1}, {-2, 2}, {-3, 2}, {-4, 2}, {-5, 1}, {-6, 1}};
    CHECK_THROWS_AS(wp_fiber(versal), domain_error);
    auto v = wp_fiber(versal, true);
    CHECK(v.negative == std::vector<long long>{1, 2, 2, 3, 3, 4, 4, 5, 6});
    CHECK(v.positive.empty());
    CHECK(v.zero_multiplicity == 1);
}
