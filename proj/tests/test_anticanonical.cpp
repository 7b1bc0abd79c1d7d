#include "k3tk/anticanonical.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace k3tk;
using namespace k3tk::acs;

TEST_CASE("profile validation") {
    CHECK(validate_profile({1, 3, 9}).empty());
    CHECK(validate_profile({2, 4, 8}).empty());
    CHECK(validate_profile({1, 1, 1}, true).empty());
    CHECK(validate_profile({2, 2, 2}, true).empty());
    CHECK(validate_profile({2, 0, -1}).empty());
    CHECK(validate_profile({2, 0, -2}).empty());

    CHECK_FALSE(validate_profile({1, 2, std::nullopt}).empty());  // parity
    CHECK_FALSE(validate_profile({2, 6, std::nullopt}).empty());  // L.D > L^2 + 2
    CHECK_FALSE(validate_profile({2, 0, -3}).empty());            // below 2 L.D - L^2
    CHECK_FALSE(validate_profile({1, 1, 1}, false).empty());      // d2 = L.D needs the flag
    CHECK_FALSE(validate_profile({2, -2, 0}).empty());            // negative L.D
}

TEST_CASE("riemann-roch dimensions") {
    CHECK(riemann_roch_dim({1, 3, std::nullopt}) == 3);
    CHECK(riemann_roch_dim({2, 2, std::nullopt}) == 3);
    CHECK(riemann_roch_dim({2, 0, std::nullopt}, true) == 3);
    CHECK(riemann_roch_dim({2, 4, std::nullopt}) == 4);
    CHECK_THROWS_AS(riemann_roch_dim({2, 0, std::nullopt}, false), domain_error);
}

TEST_CASE("twist bilinear identities on random models") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> small(-3, 3);
    int tested = 0;
    while (tested < 60) {
        int n = 3 + static_cast<int>(rng() % 6);
        IVec L(n + 1);
        L[0] = 1 + static_cast<long long>(rng() % 5);
        for (int i = 1; i <= n; ++i) L[i] = small(rng);
        PairModel m = standard_model(n, L);
        auto p = m.profile();
        if (p.ld > p.l2) {
            CHECK_THROWS_AS(twist(m), domain_error);
        } else {
            auto tw = twist(m);
            CHECK(tw.profile.l2 == p.l2 - 2 * p.ld + *p.d2);
            CHECK(tw.profile.ld == p.ld - *p.d2);
            CHECK(*tw.profile.d2 == *p.d2);
        }
        ++tested;
    }
}

TEST_CASE("twist of the (2,0,-1) model") {
    // ten blow-ups, L = 6h - 2(e1+...+e8) - e9 - e10
    IVec L{6, -2, -2, -2, -2, -2, -2, -2, -2, -1, -1};
    PairModel m = standard_model(10, L);
    auto p = m.profile();
    REQUIRE(p.l2 == 2);
    REQUIRE(p.ld == 0);
    REQUIRE(*p.d2 == -1);
    auto tw = twist(m);
    CHECK(tw.profile.l2 == 1);
    CHECK(tw.profile.ld == 1);
    CHECK_FALSE(tw.exhausted);
}

TEST_CASE("twist exhausts a degree-1 del Pezzo polarization") {
    PairModel dp1 = standard_model(8, IVec{3, -1, -1, -1, -1, -1, -1, -1, -1});
    auto p = dp1.profile();
    REQUIRE(p.l2 == 1);
    REQUIRE(p.ld == 1);
    auto t = twist(dp1);
    CHECK(t.exhausted);
    CHECK(t.profile.l2 == 0);
}

TEST_CASE("twist refusal on the quadric profile") {
    // P1 x P1 with L the (1,1)-class: L^2 = 2, L.D = 4
    IMat u{{0, 1}, {1, 0}};
    PairModel q = make_model(u, IVec{-2, -2}, IVec{2, 2}, IVec{1, 1});
    auto p = q.profile();
    REQUIRE(p.l2 == 2);
    REQUIRE(p.ld == 4);
    CHECK_THROWS_WITH(twist(q), Catch::Matchers::ContainsSubstring("not effective"));
}

TEST_CASE("exceptional class search and contraction") {
    PairModel m = standard_model(1, IVec{1, 0});
    auto classes = exceptional_classes(m);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0] == IVec{0, 1});
    auto res = relative_minimalize(m);
    CHECK(res.model.gram.size() == 1);
    auto p = res.model.profile();
    CHECK(p.l2 == 1);
    CHECK(p.ld == 3);
    CHECK(*p.d2 == 9);
    REQUIRE(res.contracted.size() == 1);
    CHECK(res.contracted[0] == IVec{0, 1});
}

TEST_CASE("relative minimalization is the identity on minimal pairs") {
    PairModel dp1 = standard_model(8, IVec{3, -1, -1, -1, -1, -1, -1, -1, -1});
    auto res = relative_minimalize(dp1);
    CHECK(res.contracted.empty());
    CHECK(res.model.gram.size() == 9);
}

TEST_CASE("confluence of contraction order on two blow-ups") {
    PairModel m = standard_model(2, IVec{1, 0, 0});
    auto first = relative_minimalize(m, 24, 0);
    auto last = relative_minimalize(m, 24, 99);
    auto pf = first.model.profile();
    auto pl = last.model.profile();
    CHECK(pf.l2 == pl.l2);
    CHECK(pf.ld == pl.ld);
    CHECK(*pf.d2 == *pl.d2);
    CHECK(first.contracted == last.contracted);  // sorted, in original coordinates
    CHECK(first.contracted.size() == 2);
    auto again = relative_minimalize(first.model);  // idempotence
    CHECK(again.contracted.empty());
}

TEST_CASE("minimalization across all two-blow-up polarizations") {
    std::vector<IVec> ls{{1, 0, 0}, {2, -1, 0}, {2, 0, -1}, {3, -1, -1}, {2, -1, -1}};
    for (const auto& L : ls) {
        PairModel m = standard_model(2, L);
        if (m.profile().l2 <= 0) continue;
        auto a = relative_minimalize(m, 24, 0);
        auto b = relative_minimalize(m, 24, 99);
        CHECK(a.contracted == b.contracted);
        CHECK(a.model.profile().l2 == b.model.profile().l2);
        CHECK(a.model.profile().ld == b.model.profile().ld);
    }
}

TEST_CASE("rank cap on class enumeration") {
    PairModel m = standard_model(2, IVec{1, 0, 0});
    CHECK_THROWS_AS(exceptional_classes(m, 2), domain_error);
}

TEST_CASE("zero-surface classification") {
    CHECK(classify_zero_surface({1, 3, 9}).case_id == 1);
    CHECK(classify_zero_surface({1, 3, std::nullopt}).case_id == 1);
    CHECK(classify_zero_surface({1, 1, 1}).case_id == 2);
    CHECK(classify_zero_surface({2, 4, 8}).case_id == 3);
    CHECK(classify_zero_surface({2, 2, 2}).case_id == 4);
    auto c5 = classify_zero_surface({2, 0, -1});
    CHECK(c5.case_id == 5);
    REQUIRE(c5.cusp_r_range.has_value());
    CHECK(c5.cusp_r_range->first == 7);
    CHECK(c5.cusp_r_range->second == 16);
    auto c6 = classify_zero_surface({2, 0, -2});
    CHECK(c6.case_id == 6);
    CHECK(c6.cusp_qr);
    CHECK_THROWS_WITH(classify_zero_surface({2, 0, 0}),
                      Catch::Matchers::ContainsSubstring("outside degree-2"));
    CHECK_THROWS_AS(classify_zero_surface({3, 3, 3}), domain_error);
}

TEST_CASE("L.D = L^2 forces the del Pezzo cases") {
    for (long long l2 : {1LL, 2LL}) {
        NumericalProfile p{l2, l2, l2};
        CHECK(validate_profile(p, true).empty());
        auto c = classify_zero_surface(p);
        CHECK(c.l_equals_d);
        CHECK((c.case_id == 2 || c.case_id == 4));
    }
}

TEST_CASE("charge bookkeeping") {
    auto plane_triangle = charge(9, 3);
    CHECK(plane_triangle.value == 0);
    CHECK(plane_triangle.warnings.empty());
    auto t237 = cusp_charge(2, 3, 7);
    CHECK(t237.value == 12);
    CHECK(t237.warnings.empty());
    CHECK(charge(-1, 1).value == 12);  // the case-5 pair carrying T_{2,3,7}
    auto over = charge(-15, 2);
    CHECK(over.value == 25);
    CHECK_FALSE(over.warnings.empty());
    CHECK_FALSE(cusp_charge(2, 9, 11).warnings.empty());
    CHECK_THROWS_AS(charge(0, 0), domain_error);
}

TEST_CASE("pullback coefficients of the T_{2,3,8} configuration") {
    // D10 fork: chain E1..E8, E9 and E10 both attached to E8, strict transform at E10
    IMat gram(10, IVec(10, 0));
    for (int i = 0; i < 10; ++i) gram[i][i] = -2;
    for (int i = 0; i + 1 < 8; ++i) gram[i][i + 1] = gram[i + 1][i] = 1;
    gram[7][8] = gram[8][7] = 1;
    gram[7][9] = gram[9][7] = 1;
    ResolutionConfig cfg{gram, IVec{0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 2};
    auto res = pullback_coefficients(cfg);
    RVec expect{Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6), Rat(7), Rat(8), Rat(4), Rat(5)};
    CHECK(res.coefficients == expect);
    CHECK(res.max_coefficient == 8);
    REQUIRE(res.reciprocal.has_value());
    CHECK(*res.reciprocal == Rat(1, 8));
    for (size_t j = 0; j < 10; ++j) {  // (pullback).E_j = 0, re-checked by substitution
        Rat acc = Rat(2 * cfg.strict_transform_incidence[j]);
        for (size_t i = 0; i < 10; ++i) acc += Rat(gram[i][j]) * res.coefficients[i];
        CHECK(acc == 0);
    }
}

TEST_CASE("pullback corner cases") {
    auto empty = pullback_coefficients({IMat{}, IVec{}, 1});
    CHECK(empty.coefficients.empty());
    CHECK(empty.max_coefficient == 0);
    CHECK_FALSE(empty.reciprocal.has_value());

    auto a1 = pullback_coefficients({IMat{{-2}}, IVec{1}, 2});
    REQUIRE(a1.coefficients.size() == 1);
    CHECK(a1.coefficients[0] == 1);

    CHECK_THROWS_AS(pullback_coefficients({IMat{{2}}, IVec{1}, 2}), domain_error);
    CHECK_THROWS_AS(pullback_coefficients({IMat{{-2}}, IVec{1}, 0}), domain_error);
}

TEST_CASE("unigonal fixed-part recognizer") {
    // nine blow-ups at base points of a cubic pencil: the fiber class is -K
    IVec L{6, -2, -2, -2, -2, -2, -2, -2, -2, -1};  // 2E + R
    PairModel m = standard_model(9, L);
    IVec E{3, -1, -1, -1, -1, -1, -1, -1, -1, -1};
    IVec R{0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
    CHECK(unigonal_pattern(m, E, R));
    IVec badE{1, -1, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_FALSE(unigonal_pattern(m, badE, R));
    IVec badR{1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_FALSE(unigonal_pattern(m, E, badR));
}
