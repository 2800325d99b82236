#include "qp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qp/arith.hpp"
#include "qp/period.hpp"

namespace qp {

namespace {

mpz_class mpz_from_i128(i128 v) {
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    mpz_class m = static_cast<unsigned long>(u >> 64);
    m <<= 64;
    m += static_cast<unsigned long>(u & ~u64(0));
    return neg ? mpz_class(-m) : m;
}

// g = prod |t_i| / lcm |t_i|, computed as the product of the incremental
// gcds (each new term contributes gcd(|t_i|, lcm so far) to g).
mpz_class g_from_terms(const std::vector<mpz_class>& terms) {
    mpz_class L = abs(terms[0]);
    mpz_class g = 1, gc;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        mpz_class t = abs(terms[i]);
        mpz_gcd(gc.get_mpz_t(), t.get_mpz_t(), L.get_mpz_t());
        g *= gc;
        L = L / gc * t;
    }
    return g;
}

// The window terms f(n), ..., f(n+k), shifted by a0*B_k if any vanish.
std::vector<mpz_class> window_terms(const QuadPoly& f, i64 k, i64 n) {
    bool has_zero = false;
    std::vector<mpz_class> terms;
    terms.reserve(k + 1);
    for (i64 i = 0; i <= k; ++i) {
        i128 v = f.eval(n + i);
        if (v == 0) has_zero = true;
        terms.push_back(mpz_from_i128(v));
    }
    if (!has_zero) return terms;

    if (!is_eventually_periodic(f, k))
        throw std::domain_error("g_eval: undefined (no periodic extension)");
    mpz_class B = compute_Bk(f, k);
    for (i64 a0 = 1; a0 <= 10 * (k + 2); ++a0) {
        mpz_class base = to_mpz(n) + to_mpz(a0) * B;
        terms.clear();
        bool ok = true;
        for (i64 i = 0; i <= k; ++i) {
            mpz_class v = f.eval_big(base + static_cast<long>(i));
            if (v == 0) {
                ok = false;
                break;
            }
            terms.push_back(v);
        }
        if (ok) return terms;
    }
    throw std::logic_error("g_eval: could not clear zeros with a small shift");
}

// Largest integer zero of f, or 0 if none; windows starting past it
// contain no vanishing term.
i64 largest_integer_zero(const QuadPoly& f) {
    i64 D = f.disc();
    if (D < 0) return 0;
    i64 s = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(D))));
    while (s > 0 && s * s > D) --s;
    while ((s + 1) * (s + 1) <= D) ++s;
    if (s * s != D) return 0;
    i64 best = 0;
    for (i64 sgn : {-1, 1}) {
        i64 num = -f.b + sgn * s;
        if (num % (2 * f.a) == 0) best = std::max(best, num / (2 * f.a));
    }
    return best;
}

std::vector<i64> sorted_divisors(i64 n) {
    auto fac = factorize(static_cast<u64>(n));
    std::vector<i64> divs{1};
    for (auto& [p, e] : fac) {
        std::size_t sz = divs.size();
        i64 pw = 1;
        for (int i = 0; i < e; ++i) {
            pw *= static_cast<i64>(p);
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

mpz_class g_eval(const QuadPoly& f, i64 k, i64 n) {
    if (k < 1) throw std::invalid_argument("g_eval: k must be >= 1");
    return g_from_terms(window_terms(f, k, n));
}

u64 g_p_eval(const QuadPoly& f, i64 k, i64 n, i64 p) {
    auto terms = window_terms(f, k, n);
    u64 direct = p_adic_valuation(g_from_terms(terms), p).value();

    // Independent route: excess counts per power of p (Eq. of the valuation
    // decomposition): sum over i >= 1 of max(0, #{terms divisible by p^i} - 1).
    std::vector<u64> vals;
    u64 maxv = 0;
    for (auto& t : terms) {
        u64 v = p_adic_valuation(t, p).value();
        vals.push_back(v);
        maxv = std::max(maxv, v);
    }
    u64 sum = 0;
    for (u64 i = 1; i <= maxv; ++i) {
        u64 cnt = 0;
        for (u64 v : vals)
            if (v >= i) ++cnt;
        if (cnt > 1) sum += cnt - 1;
    }
    if (sum != direct)
        throw std::logic_error("g_p_eval: valuation decomposition disagrees with direct value");
    return direct;
}

mpz_class empirical_smallest_period(const QuadPoly& f, i64 k, i64 n0, int horizon, i64 cap,
                                    std::map<mpz_class, bool>* divisor_checks) {
    if (horizon < 2) throw std::invalid_argument("empirical_smallest_period: horizon must be >= 2");
    if (!is_eventually_periodic(f, k)) {
        KfBound b = kf_bound(normalize(f));
        throw NotEventuallyPeriodic(static_cast<i64>(b.bound.value()) + 1);
    }
    mpz_class Bz = compute_Bk(f, k);
    if (Bz > to_mpz(cap))
        throw std::domain_error("empirical_smallest_period: B_k exceeds oracle cap");
    i64 B = static_cast<i64>(Bz.get_si());
    if (n0 < 0) n0 = largest_integer_zero(f) + 1;

    // Reusable temporaries for the inner g evaluation.
    mpz_class L, g, gc, t;
    auto eval_g = [&](i64 n) {
        L = mpz_from_i128(f.eval(n));
        mpz_abs(L.get_mpz_t(), L.get_mpz_t());
        g = 1;
        for (i64 i = 1; i <= k; ++i) {
            t = mpz_from_i128(f.eval(n + i));
            mpz_abs(t.get_mpz_t(), t.get_mpz_t());
            mpz_gcd(gc.get_mpz_t(), t.get_mpz_t(), L.get_mpz_t());
            g *= gc;
            L = L / gc * t;
        }
        return g;
    };

    const i64 hi = n0 + static_cast<i64>(horizon) * B;
    for (i64 d : sorted_divisors(B)) {
        bool ok = true;
        mpz_class left, right;
        for (i64 n = n0; n <= hi; ++n) {
            left = eval_g(n);
            right = eval_g(n + d);
            if (left != right) {
                ok = false;
                break;
            }
        }
        if (divisor_checks) (*divisor_checks)[to_mpz(d)] = ok;
        if (ok) return to_mpz(d);
    }
    throw std::logic_error("empirical_smallest_period: no divisor of B_k verified");
}

bool hua_check(const QuadPoly& f, i64 k, i64 n) {
    if (k > 12) throw std::invalid_argument("hua_check: k too large for subset enumeration");
    std::vector<mpz_class> terms;
    for (i64 i = 0; i <= k; ++i) {
        i128 v = f.eval(n + i);
        if (v == 0) throw std::invalid_argument("hua_check: window contains a zero of f");
        terms.push_back(abs(mpz_from_i128(v)));
    }
    mpz_class num = 1, den = 1, g;
    for (unsigned mask = 0; mask < (1u << (k + 1)); ++mask) {
        int r = __builtin_popcount(mask) - 1;
        if (r < 1) continue;
        g = 0;
        for (i64 i = 0; i <= k; ++i)
            if (mask & (1u << i)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), terms[i].get_mpz_t());
        if (r % 2 == 1)
            num *= g;  // (-1)^(r-1) = +1
        else
            den *= g;
    }
    return num == g_eval(f, k, n) * den;
}

bool gcd_divides_Bk_check(const QuadPoly& f, i64 k, i64 n) {
    mpz_class B = compute_Bk(f, k);
    std::vector<mpz_class> terms;
    for (i64 i = 0; i <= k; ++i) {
        i128 v = f.eval(n + i);
        if (v == 0) throw std::invalid_argument("gcd_divides_Bk_check: window contains a zero");
        terms.push_back(mpz_from_i128(v));
    }
    mpz_class g;
    for (i64 i = 0; i <= k; ++i)
        for (i64 j = i + 1; j <= k; ++j) {
            mpz_gcd(g.get_mpz_t(), terms[i].get_mpz_t(), terms[j].get_mpz_t());
            if (B % g != 0) return false;
        }
    return true;
}

AsymReport asymptotic_slope(const QuadPoly& f, i64 k, const std::vector<i64>& sample_points) {
    AsymReport rep;
    QuadPoly f1 = normalize(f);
    KfBound b = kf_bound(f1);
    if (ExtNat(static_cast<u64>(k)) <= b.bound)
        rep.predicted_C = 2.0 * (k + 1);
    else
        rep.predicted_C = static_cast<double>(k + (static_cast<i64>(b.bound.value()) + 1) + 1);

    for (i64 n : sample_points) {
        mpz_class L = 1, t, g;
        for (i64 i = 0; i <= k; ++i) {
            i128 v = f.eval(n + i);
            if (v == 0)
                throw std::invalid_argument("asymptotic_slope: sample point hits a zero of f");
            t = abs(mpz_from_i128(v));
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), L.get_mpz_t());
            L = L / g * t;
        }
        long exp2;
        double mant = mpz_get_d_2exp(&exp2, L.get_mpz_t());
        double log_lcm = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
        rep.samples.push_back({n, log_lcm, log_lcm / std::log(static_cast<double>(n))});
    }
    if (!rep.samples.empty())
        rep.rel_dev_at_largest =
            std::abs(rep.samples.back().ratio - rep.predicted_C) / rep.predicted_C;
    else
        rep.rel_dev_at_largest = 0.0;
    return rep;
}

std::vector<std::pair<i64, mpz_class>> unboundedness_witness(const QuadPoly& f, i64 k,
                                                             int count) {
    if (is_eventually_periodic(f, k))
        throw std::invalid_argument("unboundedness_witness: g is eventually periodic here");
    std::vector<std::pair<i64, mpz_class>> out;
    mpz_class last = 0;
    const i64 limit = 2'000'000;
    for (i64 n = 1; n <= limit && static_cast<int>(out.size()) < count; ++n) {
        bool zero = false;
        for (i64 i = 0; i <= k; ++i)
            if (f.eval(n + i) == 0) zero = true;
        if (zero) continue;
        mpz_class g = g_eval(f, k, n);
        if (g > last) {
            out.emplace_back(n, g);
            last = g;
        }
    }
    if (static_cast<int>(out.size()) < count)
        throw std::logic_error("unboundedness_witness: could not find enough increasing values");
    return out;
}

OracleReport make_oracle_report(const QuadPoly& f, i64 k, i64 n0, int horizon, i64 cap) {
    OracleReport rep{f, k, {}, 0, true, {}, n0, horizon};
    if (n0 < 0) rep.window_start = largest_integer_zero(f) + 1;
    for (i64 n = rep.window_start; n < rep.window_start + 10; ++n)
        rep.samples.emplace_back(n, g_eval(f, k, n));
    rep.empirical_period =
        empirical_smallest_period(f, k, rep.window_start, horizon, cap, &rep.divisor_checks);
    if (k <= 6) {
        for (i64 n = rep.window_start; n < rep.window_start + 5; ++n)
            if (!hua_check(f, k, n)) rep.hua_consistent = false;
    }
    return rep;
}

}  // namespace qp
