#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace ncl;

TEST_CASE("series log and exp basics") {
    auto geom = FormalPowerSeries::zero(8);
    for (int i = 0; i <= 8; ++i) geom.c[i] = 1; // 1/(1-t)
    auto lg = ps_log(geom);
    for (int n = 1; n <= 8; ++n) CHECK(lg.c[n] == Rat(1) / n);

    auto one_plus_t = FormalPowerSeries::zero(10);
    one_plus_t.c[0] = 1;
    one_plus_t.c[1] = 1;
    auto round = ps_exp(ps_log(one_plus_t));
    CHECK(round.c == one_plus_t.c);

    // unipotent [[1,1],[0,1]]: log(1/det(1-tf)) has coefficients 2/n
    auto det = FormalPowerSeries::zero(12);
    det.c[0] = 1;
    det.c[1] = -2;
    det.c[2] = 1;
    auto l = ps_log(ps_inverse(det));
    for (int n = 1; n <= 12; ++n) CHECK(l.c[n] == Rat(2) / n);

    CHECK_THROWS_AS(ps_log(FormalPowerSeries::zero(3)), error);
    auto bad = FormalPowerSeries::one(3);
    CHECK_THROWS_AS(ps_exp(bad), error);
}

TEST_CASE("exp and log are mutually inverse on random series") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = FormalPowerSeries::zero(10);
        f.c[0] = 1;
        for (int i = 1; i <= 10; ++i)
            f.c[i] = Rat(static_cast<long long>(rng() % 19) - 9,
                         1 + static_cast<long long>(rng() % 7));
        auto back = ps_exp(ps_log(f));
        CHECK(back.c == f.c);

        auto g = f;
        g.c[0] = 0;
        auto back2 = ps_log(ps_exp(g));
        CHECK(back2.c == g.c);
    }
}

TEST_CASE("log-det equals power traces for random integer matrices") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 1 + rng() % 4;
        ncl_test::IntMatrix M(n, std::vector<Int>(n));
        for (auto& row : M)
            for (auto& x : row) x = Int(static_cast<long long>(rng() % 7) - 3);
        auto det = ncl_test::det_one_minus_t(M);
        auto series = FormalPowerSeries::zero(12);
        for (int i = 0; i <= std::min(12, det.degree()); ++i) series.c[i] = det.coeff(i);
        auto lg = ps_log(ps_inverse(series));
        auto tr = ncl_test::power_traces(M, 12);
        for (int k = 1; k <= 12; ++k) CHECK(lg.c[k] == Rat(tr[k - 1]) / k);
    }
}

TEST_CASE("zeta series from counts") {
    CountVector p1{2, {}};
    for (int m = 1; m <= 6; ++m) p1.counts.push_back(ipow(Int(2), m) + 1);
    auto z = zeta_from_counts(p1);
    // 1/((1-T)(1-2T)): coefficients 2^{n+1} - 1
    for (int n = 0; n <= 6; ++n) CHECK(z.c[n] == ipow(Int(2), n + 1) - 1);

    CountVector empty{3, {Int(0), Int(0), Int(0)}};
    auto ze = zeta_from_counts(empty);
    CHECK(ze.c[0] == 1);
    for (int n = 1; n <= 3; ++n) CHECK(ze.c[n] == 0);

    CHECK_THROWS_AS(zeta_from_counts(CountVector{2, {}}), usage_error);
}
