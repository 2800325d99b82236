#include "qp/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qp {

namespace {

constexpr i64 kEnumerationCap = i64(1) << 22;

// Brent's variant of Pollard rho; n must be composite, odd, > 1.
u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    u64 x = 2, y = 2, c = 1, d = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (true) {
        x = 2;
        y = 2;
        d = 1;
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

// Square root of n mod odd prime p (n a nonzero quadratic residue).
u64 tonelli_shanks(u64 n, u64 p) {
    if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
    // Write p-1 = q * 2^s with q odd.
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    // Find a quadratic non-residue z.
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(n, q, p);
    u64 r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

void require_prime(i64 p) {
    if (p < 2 || !is_prime(static_cast<u64>(p)))
        throw std::invalid_argument("p must be prime");
}

}  // namespace

i64 ipow(i64 p, unsigned e) {
    i64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (i64(1) << 62) / p) throw std::overflow_error("ipow: p^e overflows");
        r *= p;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (u64 w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(w % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<u64> primes;
    for (u64 q = 2; q <= 997 && q * q <= n; q = (q == 2 ? 3 : q + 2)) {
        while (n % q == 0) {
            primes.push_back(q);
            n /= q;
        }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 q : primes) {
        if (!out.empty() && out.back().first == q)
            ++out.back().second;
        else
            out.emplace_back(q, 1);
    }
    return out;
}

ExtNat p_adic_valuation(i64 n, i64 p) {
    require_prime(p);
    if (n == 0) return ExtNat::infinity();
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    u64 t = 0;
    while (m % static_cast<u64>(p) == 0) {
        m /= static_cast<u64>(p);
        ++t;
    }
    return ExtNat(t);
}

ExtNat p_adic_valuation(const mpz_class& n, i64 p) {
    require_prime(p);
    if (n == 0) return ExtNat::infinity();
    mpz_class rem;
    mpz_class pp(static_cast<long>(p));
    mp_bitcnt_t t = mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    return ExtNat(static_cast<u64>(t));
}

int legendre_symbol(i64 n, i64 p) {
    require_prime(p);
    if (p == 2) throw std::invalid_argument("legendre_symbol: p = 2 not allowed");
    i64 r = ((n % p) + p) % p;
    if (r == 0) return 0;
    u64 s = powmod(static_cast<u64>(r), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
    return s == 1 ? 1 : -1;
}

int legendre_symbol(const mpz_class& n, i64 p) {
    mpz_class r = n % static_cast<long>(p);
    return legendre_symbol(static_cast<i64>(r.get_si()), p);
}

i64 mod_inverse(i64 x, i64 m) {
    if (m <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
    i64 a = ((x % m) + m) % m;
    i64 g = a, g1 = m, u = 1, u1 = 0;
    while (g1 != 0) {
        i64 q = g / g1;
        i64 t = g - q * g1;
        g = g1;
        g1 = t;
        t = u - q * u1;
        u = u1;
        u1 = t;
    }
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    return ((u % m) + m) % m;
}

std::vector<i64> sqrt_mod_prime_power(i64 n, i64 p, unsigned e) {
    require_prime(p);
    if (e == 0) throw std::invalid_argument("sqrt_mod_prime_power: e must be >= 1");
    const i64 m = ipow(p, e);
    i64 nn = ((n % m) + m) % m;

    std::vector<i64> out;
    if (nn == 0) {
        // Solutions are the multiples of p^ceil(e/2).
        i64 stride = ipow(p, (e + 1) / 2);
        i64 count = ipow(p, e / 2);
        if (count > kEnumerationCap)
            throw std::logic_error("sqrt_mod_prime_power: solution set too large");
        for (i64 j = 0; j < count; ++j) out.push_back(j * stride);
        return out;
    }

    unsigned t = static_cast<unsigned>(p_adic_valuation(nn, p).value());
    if (t % 2 != 0) return {};
    const i64 m2 = ipow(p, e - t);            // reduced modulus
    const i64 n2 = (nn / ipow(p, t)) % m2;    // unit part, p does not divide n2

    std::vector<i64> base;  // roots of y^2 == n2 (mod m2)
    if (p == 2) {
        unsigned l = e - t;
        if (l == 1) {
            base = {1};
        } else if (l == 2) {
            if (n2 % 4 != 1) return {};
            base = {1, 3};
        } else {
            if (n2 % 8 != 1) return {};
            // Lift y with y^2 == n2 (mod 2^j) from j=3 up to j=l.
            i64 y = 1;
            for (unsigned j = 3; j < l; ++j) {
                i128 diff = static_cast<i128>(y) * y - n2;
                i64 mod_next = ipow(2, j + 1);
                if ((diff % mod_next + mod_next) % mod_next != 0) y += ipow(2, j - 1);
            }
            i64 half = m2 / 2;
            base = {y, m2 - y, (y + half) % m2, (m2 - y + half) % m2};
        }
    } else {
        if (legendre_symbol(n2, p) == -1) return {};
        i64 r = static_cast<i64>(
            tonelli_shanks(static_cast<u64>(n2 % p), static_cast<u64>(p)));
        // Newton lifting: x -> (x + n2/x) / 2, doubling precision up to m2.
        i64 q = p;
        i64 x = r;
        while (q < m2) {
            q = (q > m2 / q) ? m2 : q * q;
            i64 inv_x = mod_inverse(x, q);
            i64 inv_2 = mod_inverse(2, q);
            i64 s = static_cast<i64>(
                (static_cast<i128>(x) + static_cast<i128>(mulmod(
                                            static_cast<u64>(n2 % q), static_cast<u64>(inv_x),
                                            static_cast<u64>(q)))) %
                q);
            x = static_cast<i64>(mulmod(static_cast<u64>(s), static_cast<u64>(inv_2),
                                        static_cast<u64>(q)));
        }
        base = {x, m2 - x};
    }

    const i64 scale = ipow(p, t / 2);
    const i64 stride = scale * m2;  // p^(e - t/2)
    if (static_cast<i128>(base.size()) * scale > kEnumerationCap)
        throw std::logic_error("sqrt_mod_prime_power: solution set too large");
    for (i64 y : base)
        for (i64 j = 0; j < scale; ++j) out.push_back(scale * y + j * stride);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

mpz_class lcm_big(const std::vector<mpz_class>& values) {
    if (values.empty()) throw std::invalid_argument("lcm_big: empty input");
    mpz_class acc = 1;
    for (const mpz_class& v : values) {
        if (v == 0) throw std::domain_error("lcm_big: zero term in lcm");
        mpz_class av = abs(v);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), av.get_mpz_t());
        acc = acc / g * av;
    }
    return acc;
}

}  // namespace qp
