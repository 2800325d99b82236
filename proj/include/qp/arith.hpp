#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qp/ext_nat.hpp"

namespace qp {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;
using u128 = unsigned __int128;

// (x * y) mod m without overflow, m < 2^63.
inline u64 mulmod(u64 x, u64 y, u64 m) {
    return static_cast<u64>(static_cast<u128>(x) * y % m);
}

// (base ^ exp) mod m, m < 2^63.
inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
    }
    return r;
}

// gmpxx has no long long overloads; route i64 values through long.
inline mpz_class to_mpz(i64 v) { return mpz_class(static_cast<long>(v)); }

// p^e as a 64-bit integer; throws std::overflow_error if it does not fit.
i64 ipow(i64 p, unsigned e);

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime(u64 n);

// Prime factorization (trial division + Pollard rho), sorted by prime.
std::vector<std::pair<u64, int>> factorize(u64 n);

// Largest t with p^t | n; infinity for n = 0.  p must be prime.
ExtNat p_adic_valuation(i64 n, i64 p);
ExtNat p_adic_valuation(const mpz_class& n, i64 p);

// Legendre symbol (n/p) for odd prime p, by Euler's criterion.
int legendre_symbol(i64 n, i64 p);
int legendre_symbol(const mpz_class& n, i64 p);

// y in [0, m) with x*y == 1 (mod m); throws std::domain_error if gcd(x,m) > 1.
i64 mod_inverse(i64 x, i64 m);

// All x in [0, p^e) with x^2 == n (mod p^e), sorted ascending.
// Hensel lifting from a base solution (Tonelli-Shanks for odd p, case
// analysis mod 8 for p = 2); matches exhaustive enumeration.
std::vector<i64> sqrt_mod_prime_power(i64 n, i64 p, unsigned e);

// lcm of absolute values; throws std::domain_error on a zero element.
mpz_class lcm_big(const std::vector<mpz_class>& values);

}  // namespace qp
