#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "triavg/la.hpp"

#include <random>

using namespace triavg;

namespace {

RatMatrix make(std::initializer_list<std::initializer_list<int>> rows) {
    std::size_t nr = rows.size(), nc = rows.begin()->size();
    RatMatrix m(nr, nc);
    std::size_t r = 0;
    for (auto& row : rows) {
        std::size_t c = 0;
        for (int v : row) m.at(r, c++) = Rat(v);
        ++r;
    }
    return m;
}

} // namespace

TEST_CASE("rank basics") {
    CHECK(rank(RatMatrix::identity(2)) == 2);
    CHECK(rank(RatMatrix(3, 4)) == 0);
    CHECK(rank(make({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(RatMatrix::identity(2)).empty());
    auto z = kernel_basis(RatMatrix(2, 2));
    REQUIRE(z.size() == 2);
    CHECK(z[0] == RatVector{Rat(1), Rat(0)});
    CHECK(z[1] == RatVector{Rat(0), Rat(1)});
    auto k = kernel_basis(make({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == RatVector{Rat(-1), Rat(1)});
}

TEST_CASE("rank equals rank of transpose; rank-nullity") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 8), val(-3, 3), den(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t nr = dim(rng), nc = dim(rng);
        RatMatrix m(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c)
                if (val(rng) > 0) m.at(r, c) = Rat(val(rng), den(rng));
        std::size_t rk = rank(m);
        CHECK(rk == rank(m.transpose()));
        CHECK(nc == rk + kernel_basis(m).size());
        // kernel vectors actually lie in the kernel
        for (const auto& v : kernel_basis(m)) {
            RatVector y = m.apply(v);
            for (const Rat& x : y) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("sparse and dense paths agree") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    // a half-full matrix goes through the fraction-free dense branch; the
    // same columns embedded in a wide zero matrix go through the sparse
    // branch, and RREF uniqueness forces identical leading blocks
    for (int trial = 0; trial < 20; ++trial) {
        RatMatrix m(6, 5);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 5; ++c)
                if (coin(rng)) m.at(r, c) = Rat(val(rng), den(rng));
        Rref r1 = rref(m);
        RatMatrix wide(6, 60);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 5; ++c) wide.at(r, c) = m.at(r, c);
        Rref r2 = rref(wide);
        CHECK(r1.pivots == r2.pivots);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 5; ++c) CHECK(r1.mat.at(r, c) == r2.mat.at(r, c));
        // RREF shape: unit pivots, zeros above and below
        for (std::size_t p = 0; p < r1.pivots.size(); ++p) {
            CHECK(r1.mat.at(p, r1.pivots[p]) == Rat(1));
            for (std::size_t r = 0; r < 6; ++r)
                if (r != p) CHECK(r1.mat.at(r, r1.pivots[p]).is_zero());
        }
    }
}

TEST_CASE("solve and inverse") {
    RatMatrix m = make({{2, 1}, {1, 1}});
    RatVector x;
    CHECK(solve(m, {Rat(3), Rat(2)}, x));
    CHECK(x == RatVector{Rat(1), Rat(1)});
    RatMatrix inv = inverse(m);
    CHECK(m.mul(inv) == RatMatrix::identity(2));
    CHECK_THROWS_AS(inverse(make({{1, 2}, {2, 4}})), std::domain_error);
    RatVector y;
    CHECK_FALSE(solve(make({{1, 1}, {1, 1}}), {Rat(0), Rat(1)}, y));
}

TEST_CASE("cokernel quotient") {
    RatVector e1{Rat(1), Rat(0), Rat(0)}, e2{Rat(0), Rat(1), Rat(0)}, e3{Rat(0), Rat(0), Rat(1)};
    SUBCASE("ker = {e1,e2}, im = {e1}") {
        auto q = cokernel_quotient({e1}, {e1, e2}, 3);
        CHECK(q.dim == 1);
        REQUIRE(q.representatives.size() == 1);
        CHECK(q.representatives[0] == e2);
    }
    SUBCASE("ker = im") {
        auto q = cokernel_quotient({e1, e2}, {e2, e1}, 3);
        CHECK(q.dim == 0);
        CHECK(q.representatives.empty());
    }
    SUBCASE("rank arithmetic inside a 3-dim kernel") {
        RatVector v{Rat(1), Rat(1), Rat(1)};
        auto q = cokernel_quotient({v}, {e1, e2, e3}, 3);
        CHECK(q.dim == 2);
    }
    SUBCASE("image outside kernel is a broken differential") {
        CHECK_THROWS_AS(cokernel_quotient({e3}, {e1, e2}, 3), std::domain_error);
    }
}

TEST_CASE("span builder") {
    SpanBuilder s(3);
    CHECK(s.add({Rat(1), Rat(1), Rat(0)}));
    CHECK_FALSE(s.add({Rat(2), Rat(2), Rat(0)}));
    CHECK(s.add({Rat(0), Rat(1), Rat(1)}));
    CHECK(s.contains({Rat(1), Rat(0), Rat(-1)}));
    CHECK_FALSE(s.contains({Rat(0), Rat(0), Rat(1)}));
}
