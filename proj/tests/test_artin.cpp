#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace ncl;

TEST_CASE("cyclotomic splitting") {
    CHECK(cyclotomic_splitting(5, 2) == std::vector<u32>{4});
    CHECK(cyclotomic_splitting(5, 11) == std::vector<u32>(4, 1));
    CHECK(cyclotomic_splitting(4, 2) == std::vector<u32>{1}); // ramified, d' = 1
    CHECK(cyclotomic_splitting(12, 2) == cyclotomic_splitting(3, 2));
    CHECK_THROWS_AS(cyclotomic_splitting(0, 2), usage_error);
    CHECK_THROWS_AS(cyclotomic_splitting(5, 4), usage_error);

    SECTION("cycle-length oracle at unramified primes") {
        for (u32 d = 1; d <= 30; ++d)
            for (u64 p : primes_up_to(50)) {
                if (d % p == 0) continue;
                auto degs = cyclotomic_splitting(d, p);
                std::sort(degs.begin(), degs.end());
                CHECK(degs == ncl_test::splitting_cycle_oracle(d, p));
            }
    }
    SECTION("efg bookkeeping") {
        for (u32 d = 1; d <= 30; ++d)
            for (u64 p : primes_up_to(100)) {
                auto degs = cyclotomic_splitting(d, p);
                u64 dprime = d;
                u64 e = 1;
                while (dprime % p == 0) dprime /= p;
                e = totient_u64(d) / totient_u64(dprime);
                u64 fg = 0;
                for (u32 f : degs) fg += f;
                CHECK(e * fg == totient_u64(d));
            }
    }
}

TEST_CASE("dedekind local factors") {
    CHECK(dedekind_local_factor({5}, 2) ==
          Poly<Int>({Int(1), Int(0), Int(0), Int(0), Int(-1)})); // 1 - x^4
    CHECK(dedekind_local_factor({1}, 7) == Poly<Int>({Int(1), Int(-1)}));
    CHECK(dedekind_local_factor({4}, 2) == Poly<Int>({Int(1), Int(-1)}));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == Poly<Int>({Int(-1), Int(1)}));
    CHECK(cyclotomic_polynomial(4) == Poly<Int>({Int(1), Int(0), Int(1)}));
    CHECK(cyclotomic_polynomial(6) == Poly<Int>({Int(1), Int(-1), Int(1)}));
    for (u32 n = 1; n <= 30; ++n) {
        Poly<Int> prod = Poly<Int>::one();
        for (u64 d : divisors_u64(n)) prod = prod * cyclotomic_polynomial(static_cast<u32>(d));
        std::vector<Int> xn(n + 1, Int(0));
        xn[0] = -1;
        xn[n] = 1;
        CHECK(prod == Poly<Int>(std::move(xn)));
    }
}

TEST_CASE("partial zeta values over Q") {
    // s = 2, bound 1e5 vs independent partial sums of sum 1/n^2
    Kahan<double> partial;
    for (u64 n = 1; n <= 2000000; ++n) partial.add(1.0 / (static_cast<double>(n) * n));
    auto z2 = zeta_q_partial(cplx(2.0, 0.0), 100000);
    CHECK(std::abs(z2.real() - partial.value()) < 1e-4);
    CHECK(std::abs(z2.imag()) < 1e-12);

    Kahan<double> p3;
    for (u64 n = 1; n <= 300000; ++n) p3.add(1.0 / (static_cast<double>(n) * n * n));
    auto z3 = zeta_q_partial(cplx(3.0, 0.0), 10000);
    CHECK(std::abs(z3.real() - p3.value()) < 1e-6);

    auto z_single = zeta_q_partial(cplx(2.0, 0.0), 2);
    CHECK(z_single.real() == Catch::Approx(4.0 / 3.0).epsilon(1e-14));
}
