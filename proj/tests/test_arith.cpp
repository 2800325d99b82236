#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qp/arith.hpp"

using namespace qp;

TEST_CASE("p_adic_valuation on fixed values") {
    CHECK(p_adic_valuation(12, 2) == ExtNat(2));
    CHECK(p_adic_valuation(0, 7) == ExtNat::infinity());
    CHECK(p_adic_valuation(-80, 5) == ExtNat(1));
    CHECK(p_adic_valuation(1, 3) == ExtNat(0));
    CHECK(p_adic_valuation(mpz_class("-2430"), 3) == ExtNat(5));
    CHECK(p_adic_valuation(mpz_class(0), 2) == ExtNat::infinity());
    CHECK_THROWS_AS(p_adic_valuation(10, 4), std::invalid_argument);
}

TEST_CASE("p_adic_valuation is additive") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<i64> dist(-1000000, 1000000);
    for (int iter = 0; iter < 2000; ++iter) {
        i64 m = dist(rng), n = dist(rng);
        for (i64 p : {2, 3, 5, 7}) {
            ExtNat lhs = p_adic_valuation(m * n, p);
            ExtNat rhs = p_adic_valuation(m, p) + p_adic_valuation(n, p);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("legendre_symbol on fixed values") {
    CHECK(legendre_symbol(1, 5) == 1);
    CHECK(legendre_symbol(-4, 5) == 1);
    CHECK(legendre_symbol(-1, 3) == -1);
    CHECK(legendre_symbol(10, 5) == 0);
    CHECK_THROWS_AS(legendre_symbol(3, 2), std::invalid_argument);
}

TEST_CASE("legendre_symbol agrees with exhaustive squaring") {
    for (i64 p : {3, 5, 7, 11, 13, 17}) {
        for (i64 n = -30; n <= 30; ++n) {
            bool is_res = false;
            i64 r = ((n % p) + p) % p;
            for (i64 x = 0; x < p; ++x)
                if (x * x % p == r) is_res = true;
            int expected = (r == 0) ? 0 : (is_res ? 1 : -1);
            CHECK(legendre_symbol(n, p) == expected);
        }
    }
}

TEST_CASE("legendre_symbol is completely multiplicative") {
    std::mt19937_64 rng(999);
    std::uniform_int_distribution<i64> dist(-500, 500);
    for (int iter = 0; iter < 1000; ++iter) {
        i64 m = dist(rng), n = dist(rng);
        for (i64 p : {3, 7, 13})
            CHECK(legendre_symbol(m * n, p) == legendre_symbol(m, p) * legendre_symbol(n, p));
    }
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(3, 10) == 7);
    CHECK(mod_inverse(1, 97) == 1);
    CHECK(mod_inverse(5, 16) == 13);
    CHECK(mod_inverse(-3, 10) == 3);
    CHECK_THROWS_AS(mod_inverse(4, 10), std::domain_error);
    for (i64 m : {7, 16, 81, 1000}) {
        for (i64 x = 1; x < m; ++x) {
            if (std::gcd(x, m) != 1) continue;
            i64 y = mod_inverse(x, m);
            CHECK(x * y % m == 1);
            CHECK(y >= 0);
            CHECK(y < m);
        }
    }
}

TEST_CASE("sqrt_mod_prime_power on fixed values") {
    CHECK(sqrt_mod_prime_power(1, 2, 3) == std::vector<i64>{1, 3, 5, 7});
    CHECK(sqrt_mod_prime_power(2, 5, 1) == std::vector<i64>{});
    CHECK(sqrt_mod_prime_power(-4, 5, 2) == std::vector<i64>{11, 14});
    CHECK(sqrt_mod_prime_power(0, 3, 2) == std::vector<i64>{0, 3, 6});
    CHECK(sqrt_mod_prime_power(4, 2, 5) == std::vector<i64>{2, 6, 10, 14, 18, 22, 26, 30});
}

TEST_CASE("sqrt_mod_prime_power matches exhaustive enumeration") {
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        for (unsigned e = 1;; ++e) {
            i64 m = 1;
            bool fits = true;
            for (unsigned i = 0; i < e; ++i) {
                m *= p;
                if (m > 10000) fits = false;
            }
            if (!fits) break;
            for (i64 n = -100; n <= 100; ++n) {
                std::vector<i64> expected;
                i64 r = ((n % m) + m) % m;
                for (i64 x = 0; x < m; ++x)
                    if (x * x % m == r) expected.push_back(x);
                auto got = sqrt_mod_prime_power(n, p, e);
                CHECK(got == expected);
                // Negation closure: m - x (mod m) is also a root.
                for (i64 x : got) {
                    i64 nx = (m - x) % m;
                    CHECK(std::find(got.begin(), got.end(), nx) != got.end());
                }
            }
        }
    }
}

TEST_CASE("lcm_big") {
    CHECK(lcm_big({5, 16}) == 80);
    CHECK(lcm_big({-6, 4}) == 12);
    CHECK(lcm_big({5, 10, 25}) == 50);
    CHECK(lcm_big({mpz_class("123456789123456789"), 2}) == mpz_class("246913578246913578"));
    CHECK_THROWS_AS(lcm_big({3, 0, 5}), std::domain_error);
    CHECK_THROWS_AS(lcm_big({}), std::invalid_argument);
}

TEST_CASE("is_prime and factorize") {
    CHECK(is_prime(2));
    CHECK(is_prime(1000000007ull));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));  // Carmichael
    auto f = factorize(720);
    CHECK(f == std::vector<std::pair<u64, int>>{{2, 4}, {3, 2}, {5, 1}});
    CHECK(factorize(1).empty());
    auto big = factorize(999999999989ull);  // prime
    CHECK(big == std::vector<std::pair<u64, int>>{{999999999989ull, 1}});
}

TEST_CASE("ExtNat ordering and arithmetic") {
    ExtNat inf = ExtNat::infinity();
    CHECK(inf > ExtNat(1000000));
    CHECK(min(inf, ExtNat(3)) == ExtNat(3));
    CHECK(inf + ExtNat(5) == inf);
    CHECK(ExtNat(2) + ExtNat(3) == ExtNat(5));
    CHECK_THROWS_AS(inf.value(), std::logic_error);
}

TEST_CASE("ipow overflow guard") {
    CHECK(ipow(2, 10) == 1024);
    CHECK(ipow(7, 0) == 1);
    CHECK_THROWS_AS(ipow(10, 20), std::overflow_error);
}
