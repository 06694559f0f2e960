#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace ncl;

namespace {

RunConfig test_cfg() {
    RunConfig cfg;
    cfg.threads = 2;
    return cfg;
}

bool same_l_functions(const NCMotive& a, const NCMotive& b, int max_deg = 3) {
    std::vector<Place> places;
    if (a.base.kind == GlobalBase::Kind::FunctionField) {
        auto F = Field::make(a.base.p, a.base.e);
        places = enumerate_places(*F, static_cast<u32>(max_deg));
    } else {
        for (u64 p : primes_up_to(static_cast<u64>(max_deg))) places.push_back(Place::number_field(p));
    }
    for (Parity parity : {Parity::Even, Parity::Odd})
        for (const auto& v : places) {
            auto lf = a.local_factor_at(parity, v);
            auto rf = b.local_factor_at(parity, v);
            if (!lf->exact || !rf->exact || !(*lf->exact == *rf->exact)) return false;
        }
    return true;
}

} // namespace

TEST_CASE("direct sums multiply local factors") {
    auto f2 = GlobalBase::function_field(2);
    auto z = zeta_atom(f2);
    auto zz = direct_sum(z, z);
    auto F2 = Field::make(2, 1);
    for (const auto& v : enumerate_places(*F2, 3)) {
        auto lf = zz.local_factor_at(Parity::Even, v);
        Poly<Rat> lin({Rat(1), Rat(-1)});
        CHECK(*lf->exact == lin * lin); // zeta_k(s)^2 locally
    }

    auto e = motive_from_variety(spec_elliptic_f5(), test_cfg(), "E");
    auto p1 = motive_from_variety(spec_p1(5), test_cfg(), "P1");
    auto sum = direct_sum(e, p1);
    auto F5 = Field::make(5, 1);
    for (const auto& v : enumerate_places(*F5, 4)) {
        for (Parity parity : {Parity::Even, Parity::Odd}) {
            auto lf = sum.local_factor_at(parity, v);
            auto le = e.local_factor_at(parity, v);
            auto lp = p1.local_factor_at(parity, v);
            CHECK(*lf->exact == *le->exact * *lp->exact);
        }
    }

    NCMotive empty;
    empty.base = GlobalBase::function_field(5);
    CHECK(same_l_functions(direct_sum(e, empty), e));

    auto f3 = GlobalBase::function_field(3);
    NCMotive other;
    other.base = f3;
    CHECK_THROWS_AS(direct_sum(e, other), base_mismatch_error);
}

TEST_CASE("L-functions are associative and commutative under direct sum") {
    auto cfg = test_cfg();
    auto a = motive_from_variety(spec_elliptic_f5(), cfg, "a");
    auto b = motive_from_variety(spec_p1(5), cfg, "b");
    auto c = zeta_atom(GlobalBase::function_field(5));
    CHECK(same_l_functions(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c))));
    CHECK(same_l_functions(direct_sum(a, b), direct_sum(b, a)));
}

TEST_CASE("gluing equals direct sum at the L-function level") {
    auto cfg = test_cfg();
    auto e = motive_from_variety(spec_elliptic_f5(), cfg, "E");
    auto point = zeta_atom(GlobalBase::function_field(5));
    CHECK(same_l_functions(gluing(e, point), direct_sum(e, point)));
    CHECK(gluing(e, point).provenance.back() == "gluing");
}

TEST_CASE("calabi-yau summand removal") {
    auto cfg = test_cfg();
    SECTION("quadric surface: removes 2 unit atoms") {
        auto q = motive_from_variety(spec_quadric_f3(), cfg, "Q");
        auto t = cy_summand(q, 3, 2);
        u32 b = 0;
        for (auto& atom : t.atoms) b += atom.even.total_beta();
        CHECK(b == 2);
        auto round = direct_sum(t, zeta_power(GlobalBase::function_field(3), 2));
        CHECK(same_l_functions(round, q));
    }
    SECTION("boundary: fermat cubic curve removes none") {
        auto m = motive_from_variety(spec_fermat_cubic_f5(), cfg, "X");
        CHECK(same_l_functions(cy_summand(m, 2, 3), m));
    }
    SECTION("not enough unit eigenvalues") {
        auto p1 = motive_from_variety(spec_p1(5), cfg, "P1");
        CHECK_THROWS_AS(cy_summand(p1, 3, 1), cannot_split_error); // wants 3, has 2
    }
}

TEST_CASE("path and group algebra atoms") {
    auto f2 = GlobalBase::function_field(2);
    CHECK(path_algebra_atom(f2, 2).atoms.size() == 2); // A_2 quiver
    CHECK(path_algebra_atom(f2, 1).atoms.size() == 1);
    CHECK(path_algebra_atom(f2, 8).atoms.size() == 8); // E_8 quiver
    CHECK(same_l_functions(path_algebra_atom(f2, 2), zeta_power(f2, 2)));
    CHECK_THROWS_AS(path_algebra_atom(f2, 0), usage_error);

    auto Q = GlobalBase::rationals();
    auto g1 = group_algebra_atom(Q, 1);
    CHECK(g1.atoms.size() == 1);
    auto g2 = group_algebra_atom(Q, 2);
    REQUIRE(g2.atoms.size() == 2);
    // Q(zeta_2) = Q: both atoms give the Riemann zeta factor at odd primes
    for (u64 p : {3, 5, 7}) {
        auto lf = g2.local_factor_at(Parity::Even, Place::number_field(p));
        Poly<Rat> lin({Rat(1), Rat(-1)});
        CHECK(*lf->exact == lin * lin);
    }
    auto g5 = group_algebra_atom(Q, 5);
    REQUIRE(g5.atoms.size() == 2); // zeta_Q and zeta_{Q(zeta_5)}
    CHECK_THROWS_AS(group_algebra_atom(f2, 2), usage_error);

    SECTION("L_odd of even-only motives is identically 1") {
        for (u64 p : primes_up_to(20)) {
            auto lf = g5.local_factor_at(Parity::Odd, Place::number_field(p));
            CHECK(lf->approx == Poly<cplx>::one());
        }
        auto h = path_algebra_atom(f2, 3).handle(Parity::Odd, 6);
        CHECK(euler_product_eval(h, cplx(2.0, 1.0)).value == cplx(1.0, 0.0));
    }
}

TEST_CASE("hpd bookkeeping") {
    auto cfg = test_cfg();
    auto f5 = GlobalBase::function_field(5);
    auto C = motive_from_variety(spec_elliptic_f5(), cfg, "C");
    auto mXL = direct_sum(C, zeta_power(f5, 2));
    auto mYL = direct_sum(C, zeta_power(f5, 4));
    auto rep = hpd_check(mXL, mYL, 2, 4, 3, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_residual == 0.0);

    auto bad = hpd_check(mXL, mYL, 4, 2, 3, 1e-9); // wrong declared ranks
    CHECK_FALSE(bad.pass);
    CHECK(!bad.failures.empty());
    CHECK(bad.failures[0].parity == Parity::Even);
}
