#include "k3tk/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace k3tk;
using namespace k3tk::lattice;

namespace {

// brute-force oracle for small grams: scan a coordinate box for norm -2 vectors
long long count_roots_box(const IntegerLattice& lat, long long box) {
    IVec v(lat.rank, -box);
    long long count = 0;
    while (true) {
        if (dot_gram(lat.gram, v, v) == -2) ++count;
        int i = 0;
        while (i < lat.rank && v[i] == box) v[i++] = -box;
        if (i == lat.rank) break;
        ++v[i];
    }
    return count;
}

IMat random_unimodular_conjugate(const IMat& gram, std::mt19937_64& rng, int ops) {
    const int n = static_cast<int>(gram.size());
    IMat u(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    std::uniform_int_distribution<int> pick(0, n - 1), coin(0, 1);
    for (int k = 0; k < ops; ++k) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        long long f = coin(rng) ? 1 : -1;
        for (int r = 0; r < n; ++r) u[r][j] += f * u[r][i];
    }
    IMat g(n, IVec(n, 0));  // u^T gram u
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IVec ci(n), cj(n);
            for (int r = 0; r < n; ++r) {
                ci[r] = u[r][i];
                cj[r] = u[r][j];
            }
            g[i][j] = dot_gram(gram, ci, cj);
        }
    return g;
}

}  // namespace

TEST_CASE("inner products") {
    IntegerLattice e8 = make_lattice(gram_e(8));
    IVec simple(8, 0);
    simple[0] = 1;
    CHECK(e8.inner(simple, simple) == -2);
    IVec zero(8, 0);
    CHECK(e8.inner(zero, simple) == 0);
    IntegerLattice u = make_lattice(gram_u());
    CHECK(u.inner({1, 0}, {0, 1}) == 1);
    CHECK_THROWS_AS(e8.inner({1, 0}, simple), domain_error);
}

TEST_CASE("root enumeration on rank 1") {
    IntegerLattice a1 = make_lattice(IMat{{-2}});
    auto en = enumerate_roots(a1);
    REQUIRE(en.roots.size() == 2);
    CHECK(en.roots[0] == IVec{-1});
    CHECK(en.roots[1] == IVec{1});
}

TEST_CASE("root counts match the classical numbers") {
    CHECK(enumerate_roots(make_lattice(gram_e(8))).roots.size() == 240);
    CHECK(enumerate_roots(make_lattice(gram_a(17))).roots.size() == 306);
    CHECK(enumerate_roots(make_lattice(gram_d(10))).roots.size() == 180);
    // cross-check the enumerator against the box oracle on small cases
    for (int n = 1; n <= 4; ++n) {
        IntegerLattice an = make_lattice(gram_a(n));
        CHECK(count_roots_box(an, 2) ==
              static_cast<long long>(enumerate_roots(an).roots.size()));
    }
    IntegerLattice d4 = make_lattice(gram_d(4));
    CHECK(count_roots_box(d4, 2) == static_cast<long long>(enumerate_roots(d4).roots.size()));
}

TEST_CASE("roots come in opposite pairs") {
    auto en = enumerate_roots(make_lattice(gram_e(6)));
    CHECK(en.roots.size() % 2 == 0);
    std::set<IVec> all(en.roots.begin(), en.roots.end());
    for (const auto& r : en.roots) {
        IVec neg(r.size());
        for (size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        CHECK(all.count(neg) == 1);
    }
}

TEST_CASE("positive definite input is negated internally") {
    IMat g = negate(gram_a(2));
    auto en = enumerate_roots(make_lattice(g));
    CHECK(en.negated_input);
    CHECK(en.roots.size() == 6);
}

TEST_CASE("root enumeration rejects indefinite lattices") {
    CHECK_THROWS_AS(enumerate_roots(make_lattice(gram_u())), domain_error);
}

TEST_CASE("identify block sums") {
    auto rep = identify_root_system(make_lattice(block_diagonal({gram_e(7), gram_d(10)})));
    REQUIRE(rep.components.size() == 2);
    CHECK(rep.components[0] == std::pair<std::string, int>{"D10", 10});
    CHECK(rep.components[1] == std::pair<std::string, int>{"E7", 7});
    CHECK(rep.root_count == 126 + 180);

    auto rep2 = identify_root_system(make_lattice(block_diagonal({gram_d(16), gram_a(1)})));
    REQUIRE(rep2.components.size() == 2);
    CHECK(rep2.components[0] == std::pair<std::string, int>{"A1", 1});
    CHECK(rep2.components[1] == std::pair<std::string, int>{"D16", 16});
    CHECK(rep2.root_count == 480 + 2);

    auto rep3 = identify_root_system(make_lattice(IMat{{-2}}));
    REQUIRE(rep3.components.size() == 1);
    CHECK(rep3.components[0] == std::pair<std::string, int>{"A1", 1});
    CHECK(rep3.root_count == 2);
}

TEST_CASE("identification is a multiset union over blocks") {
    auto whole = identify_root_system(
        make_lattice(block_diagonal({gram_a(3), gram_a(1), gram_d(4)})));
    std::vector<std::pair<std::string, int>> expect{{"A1", 1}, {"A3", 3}, {"D4", 4}};
    CHECK(whole.components == expect);
    CHECK(whole.root_count == 12 + 2 + 24);
}

TEST_CASE("identification is invariant under unimodular base change") {
    std::mt19937_64 rng(20240811);
    std::vector<IMat> grams{gram_a(3), block_diagonal({gram_a(2), gram_a(1)}), gram_d(4),
                            block_diagonal({gram_a(1), gram_a(1)})};
    for (const auto& g : grams) {
        auto base = identify_root_system(make_lattice(g));
        for (int trial = 0; trial < 5; ++trial) {
            IMat conj = random_unimodular_conjugate(g, rng, 12);
            auto rep = identify_root_system(make_lattice(conj));
            CHECK(rep.components == base.components);
            CHECK(rep.root_count == base.root_count);
        }
    }
}

TEST_CASE("isotropic quotient of the degree-2 lattice") {
    IntegerLattice lam2 = lattice_from_blocks({"-2", "E8", "E8", "U", "U"});
    REQUIRE(lam2.rank == 21);
    IVec e1(21, 0), e2(21, 0);
    e1[17] = 1;  // first U block, first basis vector
    e2[19] = 1;  // second U block, first basis vector
    IntegerLattice q = isotropic_quotient(lam2, e1, e2);
    CHECK(q.rank == 17);
    CHECK(bareiss_det(q.gram) == bareiss_det(block_diagonal({IMat{{-2}}, gram_e(8), gram_e(8)})));
    auto rep = identify_root_system(q);
    std::vector<std::pair<std::string, int>> expect{{"A1", 1}, {"E8", 8}, {"E8", 8}};
    CHECK(rep.components == expect);
    CHECK(rep.root_count == 482);
}

TEST_CASE("isotropic quotient is stable under a different isotropic choice") {
    IntegerLattice lam2 = lattice_from_blocks({"-2", "E8", "E8", "U", "U"});
    // e + f in a U block is not isotropic; e1, e1 + (e of other block) is fine
    IVec e1(21, 0), e2(21, 0);
    e1[17] = 1;
    e2[17] = 1;
    e2[19] = 1;  // still isotropic, orthogonal to e1, and primitive
    IntegerLattice q = isotropic_quotient(lam2, e1, e2);
    CHECK(q.rank == 17);
    auto rep = identify_root_system(q);
    std::vector<std::pair<std::string, int>> expect{{"A1", 1}, {"E8", 8}, {"E8", 8}};
    CHECK(rep.components == expect);
}

TEST_CASE("isotropic quotient rejects bad input") {
    IntegerLattice lam2 = lattice_from_blocks({"-2", "E8", "E8", "U", "U"});
    IVec e1(21, 0), bad(21, 0), nonprim(21, 0);
    e1[17] = 1;
    bad[19] = 1;
    bad[18] = 1;  // pairs with e1: not orthogonal... e1.bad = gram[17][18] = 1
    CHECK_THROWS_AS(isotropic_quotient(lam2, e1, bad), domain_error);
    nonprim[19] = 2;
    CHECK_THROWS_AS(isotropic_quotient(lam2, e1, nonprim), domain_error);
    IVec notiso(21, 0);
    notiso[0] = 1;  // norm -2
    CHECK_THROWS_AS(isotropic_quotient(lam2, notiso, e1), domain_error);
}

TEST_CASE("highest root coefficients") {
    CHECK(highest_root_coefficients("E8") == std::vector<long long>{2, 2, 3, 3, 4, 4, 5, 6});
    CHECK(highest_root_coefficients("E7") == std::vector<long long>{1, 2, 2, 2, 3, 3, 4});
    CHECK(highest_root_coefficients("A1") == std::vector<long long>{1});
    CHECK(highest_root_coefficients("D10") ==
          std::vector<long long>{1, 1, 1, 2, 2, 2, 2, 2, 2, 2});
    CHECK_THROWS_AS(highest_root_coefficients("F4"), domain_error);
}

TEST_CASE("block shorthand") {
    CHECK(lattice_from_blocks({"U"}).gram == gram_u());
    CHECK(lattice_from_blocks({"-2"}).gram == IMat{{-2}});
    CHECK_THROWS_AS(lattice_from_blocks({"Q5"}), parse_error);
}
