#include <catch2/catch_amalgamated.hpp>

#include "ncl/counting.hpp"

using namespace ncl;

TEST_CASE("projective space closed form") {
    CHECK(count_projective_space(2, 1, 1) == 3);
    CHECK(count_projective_space(2, 2, 2) == 21);
    CHECK(count_projective_space(3, 3, 1) == 40);
    CHECK_THROWS_AS(count_projective_space(2, 1, 0), usage_error);
}

static HypersurfaceSpec fermat_cubic(FieldPtr F) {
    return {F, 2, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}}};
}

TEST_CASE("hypersurface counts") {
    auto F2 = Field::prime(2);
    auto F3 = Field::prime(3);
    CHECK(count_hypersurface(fermat_cubic(F2), 1) == 3);
    HypersurfaceSpec quadric{F3, 3, {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, 2}}}; // xw - yz
    CHECK(count_hypersurface(quadric, 1) == 16);
    HypersurfaceSpec line{F2, 2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}}};
    CHECK(count_hypersurface(line, 1) == 3);

    SECTION("a hyperplane counts like P^{n-1}") {
        for (u32 m = 1; m <= 3; ++m)
            CHECK(count_hypersurface(line, m) == count_projective_space(2, 1, m));
    }
    SECTION("quadric surface is (q^m+1)^2") {
        for (u32 m = 1; m <= 3; ++m) {
            Int qm1 = ipow(Int(3), m) + 1;
            CHECK(count_hypersurface(quadric, m) == qm1 * qm1);
        }
    }
    SECTION("budget guard") {
        CHECK_THROWS_AS(count_hypersurface(quadric, 3, 10), budget_error);
    }
}

TEST_CASE("weierstrass point counts") {
    auto F5 = Field::prime(5);
    auto F3 = Field::prime(3);
    auto E = WeierstrassCoeffs::short_form(F5, 1, 1);
    CHECK(count_weierstrass_points(E, true, 1) == 9);
    auto cusp = WeierstrassCoeffs::short_form(F5, 0, 0);
    CHECK(count_weierstrass_points(cusp, false, 1) == 5);
    CHECK(count_weierstrass_points(cusp, true, 1) == 6);
    auto E3 = WeierstrassCoeffs::short_form(F3, 2, 0); // y^2 = x^3 - x
    CHECK(count_weierstrass_points(E3, true, 1) == 4);

    SECTION("extension counts follow the trace recurrence") {
        // N_1 = 9 gives a = -3; p_m = a p_{m-1} - q p_{m-2}
        Int p1 = -3, p2 = Int(-3) * (-3) - 2 * 5;
        std::vector<Int> p{0, p1, p2};
        for (int m = 3; m <= 4; ++m) p.push_back(Int(-3) * p[m - 1] - Int(5) * p[m - 2]);
        for (u32 m = 1; m <= 4; ++m)
            CHECK(count_weierstrass_points(E, true, m) == ipow(Int(5), m) + 1 - p[m]);
    }
}

TEST_CASE("general weierstrass form in characteristic 2 and 3") {
    // y^2 + y = x^3 over F_2: supersingular, 3 points over F_2, 9 over F_4
    auto F2 = Field::prime(2);
    WeierstrassCoeffs w{F2, 0, 0, 1, 0, 0};
    CHECK(count_weierstrass_points(w, true, 1) == 3);
    CHECK(count_weierstrass_points(w, true, 2) == 9);
}

TEST_CASE("smoothness probe") {
    auto F5 = Field::prime(5);
    auto F3 = Field::prime(3);
    auto F2 = Field::prime(2);
    CHECK(smoothness_probe(fermat_cubic(F5), 2));
    HypersurfaceSpec x2y{F3, 2, {{{2, 1, 0}, 1}}};
    CHECK_FALSE(smoothness_probe(x2y, 1));
    HypersurfaceSpec quadric{F2, 3, {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, 1}}};
    CHECK(smoothness_probe(quadric, 2));
}

TEST_CASE("spec validation") {
    auto F2 = Field::prime(2);
    HypersurfaceSpec bad{F2, 2, {{{3, 0, 0}, 1}, {{0, 1, 0}, 1}}};
    CHECK_THROWS_AS(count_hypersurface(bad, 1), usage_error); // not homogeneous
    HypersurfaceSpec zero{F2, 2, {}};
    CHECK_THROWS_AS(count_hypersurface(zero, 1), usage_error);
}
