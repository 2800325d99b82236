#include "qp/period.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qp/arith.hpp"
#include "qp/distance.hpp"

namespace qp {

namespace {

mpz_class mpz_prime_pow(i64 p, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
}

// floor(log_p k), i.e. nu_p(lcm(1..k)).
unsigned nu_p_Lk(i64 k, i64 p) {
    unsigned t = 0;
    for (i64 v = p; v <= k; v *= p) {
        ++t;
        if (v > k / p) break;
    }
    return t;
}

unsigned nu_finite(i64 n, i64 p) {
    return static_cast<unsigned>(p_adic_valuation(n, p).value());
}

// k >= p^floor(nu/2) (resp. ceil) with nu possibly infinite (D = 0).
bool k_reaches(i64 k, i64 p, ExtNat half_nu) {
    if (half_nu.is_infinite()) return false;
    unsigned h = static_cast<unsigned>(half_nu.value());
    i128 pw = 1;
    for (unsigned i = 0; i < h; ++i) {
        pw *= p;
        if (pw > k) return false;
    }
    return k >= pw;
}

void check_normalized(const QuadPoly& f, const char* who) {
    if (!f.is_primitive() || f.a < 0)
        throw std::invalid_argument(std::string(who) + ": expects a primitive f with a > 0");
}

}  // namespace

NotEventuallyPeriodic::NotEventuallyPeriodic(i64 i0)
    : std::domain_error("not eventually periodic: D = a^2 * i0^2 with witness i0 = " +
                        std::to_string(i0)),
      witness_i0(i0) {}

KfBound kf_bound(const QuadPoly& f) {
    check_normalized(f, "kf_bound");
    i64 D = f.disc();
    if (D > 0 && D % (f.a * f.a) == 0) {
        i64 q = D / (f.a * f.a);
        i64 m = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(q))));
        for (i64 mm = std::max<i64>(1, m - 2); mm <= m + 2; ++mm)
            if (mm * mm == q) return {ExtNat(static_cast<u64>(mm - 1))};
    }
    return {ExtNat::infinity()};
}

bool is_eventually_periodic(const QuadPoly& f, i64 k) {
    if (k < 1) throw std::invalid_argument("is_eventually_periodic: k must be >= 1");
    return ExtNat(static_cast<u64>(k)) <= kf_bound(normalize(f)).bound;
}

mpz_class compute_Bk(const QuadPoly& f, i64 k) {
    if (k < 1) throw std::invalid_argument("compute_Bk: k must be >= 1");
    mpz_class a2 = to_mpz(f.a) * to_mpz(f.a);
    mpz_class D = to_mpz(f.b) * to_mpz(f.b) - 4 * to_mpz(f.a) * to_mpz(f.c);
    mpz_class B = 1;
    for (i64 i = 1; i <= k; ++i) {
        mpz_class ii = to_mpz(i);
        mpz_class term = ii * (a2 * ii * ii - D);
        if (term == 0) throw NotEventuallyPeriodic(i);
        mpz_class av = abs(term);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), B.get_mpz_t(), av.get_mpz_t());
        B = B / g * av;
    }
    return B;
}

unsigned nu_p_Bk(const QuadPoly& f, i64 k, i64 p) {
    mpz_class a2 = to_mpz(f.a) * to_mpz(f.a);
    mpz_class D = to_mpz(f.b) * to_mpz(f.b) - 4 * to_mpz(f.a) * to_mpz(f.c);
    unsigned best = 0;
    for (i64 i = 1; i <= k; ++i) {
        mpz_class ii = to_mpz(i);
        mpz_class term = ii * (a2 * ii * ii - D);
        if (term == 0) throw NotEventuallyPeriodic(i);
        best = std::max(best, static_cast<unsigned>(p_adic_valuation(term, p).value()));
    }
    return best;
}

std::vector<i64> primes_of_Bk(const QuadPoly& f, i64 k) {
    mpz_class a2 = to_mpz(f.a) * to_mpz(f.a);
    mpz_class D = to_mpz(f.b) * to_mpz(f.b) - 4 * to_mpz(f.a) * to_mpz(f.c);
    std::vector<i64> out;
    for (i64 i = 1; i <= k; ++i) {
        mpz_class ii = to_mpz(i);
        mpz_class term = abs(ii * (a2 * ii * ii - D));
        if (term == 0) throw NotEventuallyPeriodic(i);
        if (!term.fits_ulong_p())
            throw std::overflow_error("primes_of_Bk: lcm term too large to factor");
        for (auto& [q, ex] : factorize(term.get_ui())) out.push_back(static_cast<i64>(q));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

mpz_class local_period_p_divides_a(const QuadPoly& f, i64 p, i64 k) {
    if (f.a % p != 0) throw std::invalid_argument("local_period_p_divides_a: p does not divide a");
    unsigned nuB = nu_p_Bk(f, k, p);
    if (f.b % p != 0 && nu_finite(k + 1, p) < nuB) return mpz_prime_pow(p, nuB);
    return 1;
}

mpz_class local_period_2(const QuadPoly& f, i64 k) {
    if (f.a % 2 == 0) throw std::invalid_argument("local_period_2: a must be odd");
    const i64 D = f.disc();
    const ExtNat nu = (D == 0) ? ExtNat::infinity() : p_adic_valuation(D, 2);
    const ExtNat half_fl = nu.is_infinite() ? nu : ExtNat(nu.value() / 2);
    const unsigned nuL = nu_p_Lk(k, 2);
    const unsigned nuB = nu_p_Bk(f, k, 2);
    const unsigned nuk1 = nu_finite(k + 1, 2);

    if (!k_reaches(k, 2, half_fl)) {
        if (nuk1 < nuL) return mpz_prime_pow(2, nuB - 2 * nuL);
        return 1;
    }
    // Here nu is finite (D != 0) and k >= 2^floor(nu/2).
    const unsigned nv = static_cast<unsigned>(nu.value());
    const i64 D4 = D / ipow(4, nv / 2);
    if (((D4 % 8) + 8) % 8 == 1) return mpz_prime_pow(2, nuB - nv - 1);
    if (nuk1 < nv / 2) return mpz_prime_pow(2, nv / 2);
    return 1;
}

mpz_class local_period_odd_p(const QuadPoly& f, i64 p, i64 k) {
    if (p == 2 || f.a % p == 0)
        throw std::invalid_argument("local_period_odd_p: need odd p not dividing a");
    const i64 D = f.disc();
    const ExtNat nu = (D == 0) ? ExtNat::infinity() : p_adic_valuation(D, p);
    const ExtNat half_ceil = nu.is_infinite() ? nu : ExtNat((nu.value() + 1) / 2);
    const unsigned nuL = nu_p_Lk(k, p);
    const unsigned nuB = nu_p_Bk(f, k, p);
    const unsigned nuk1 = nu_finite(k + 1, p);

    if (!k_reaches(k, p, half_ceil)) {
        if (nuk1 < nuL) return mpz_prime_pow(p, nuB - 2 * nuL);
        return 1;
    }
    const unsigned nv = static_cast<unsigned>(nu.value());
    const i64 Dp = D / ipow(p, nv);
    const bool residue = (nv % 2 == 0) && legendre_symbol(Dp, p) == 1;
    if (!residue) {
        if (nuk1 < (nv + 1) / 2) return mpz_prime_pow(p, (nv + 1) / 2);
        return 1;
    }
    if (nuk1 < nuB - nv) return mpz_prime_pow(p, nuB - nv);
    return 1;
}

mpz_class local_period_via_bracket(const QuadPoly& f, i64 p, i64 k) {
    if (f.a % p == 0) throw std::invalid_argument("local_period_via_bracket: p divides a");
    const unsigned e = e_bracket(f, p, k);
    if (e == 0) return 1;
    const i64 D = f.disc();
    const unsigned nuk1 = nu_finite(k + 1, p);

    if (p == 2) {
        if (D == 0) {
            if (nuk1 < (e + 1) / 2) return mpz_prime_pow(2, (e + 1) / 2);
            return 1;
        }
        const unsigned nv = static_cast<unsigned>(p_adic_valuation(D, 2).value());
        const i64 D4 = D / ipow(4, nv / 2);
        const i64 two_fl = 2 * (nv / 2);
        if ((e == nv && ((D4 % 4) + 4) % 4 == 1) || static_cast<i64>(e) <= two_fl - 1) {
            if (nuk1 < (e + 1) / 2) return mpz_prime_pow(2, (e + 1) / 2);
            return 1;
        }
        if (e > nv && ((D4 % 8) + 8) % 8 == 1) return mpz_prime_pow(2, e - nv / 2);
        throw std::logic_error("local_period_via_bracket: bracket landed in an empty-set case");
    }

    const ExtNat nu = (D == 0) ? ExtNat::infinity() : p_adic_valuation(D, p);
    if (ExtNat(e) <= nu) {
        if (nuk1 < (e + 1) / 2) return mpz_prime_pow(p, (e + 1) / 2);
        return 1;
    }
    const unsigned nv = static_cast<unsigned>(nu.value());
    if (nuk1 < e - nv / 2) return mpz_prime_pow(p, e - nv / 2);
    return 1;
}

mpz_class xi2_factor(const QuadPoly& f, i64 k) {
    const i64 D = f.disc();
    const unsigned nuB = nu_p_Bk(f, k, 2);
    const unsigned nuL = nu_p_Lk(k, 2);
    const unsigned nuk1 = nu_finite(k + 1, 2);
    if (f.a % 2 == 0) {
        if (f.b % 2 != 0 && nuk1 < nuB) return 1;
        return mpz_prime_pow(2, nuB);
    }
    const ExtNat nu = (D == 0) ? ExtNat::infinity() : p_adic_valuation(D, 2);
    const ExtNat half_fl = nu.is_infinite() ? nu : ExtNat(nu.value() / 2);
    if (!k_reaches(k, 2, half_fl)) {
        if (nuk1 < nuL) return mpz_prime_pow(2, 2 * nuL);
        return mpz_prime_pow(2, nuB);
    }
    const unsigned nv = static_cast<unsigned>(nu.value());
    const i64 D4 = D / ipow(4, nv / 2);
    if (((D4 % 8) + 8) % 8 != 1) {
        if (nuk1 < nv / 2) return mpz_prime_pow(2, nuB - nv / 2);
        return mpz_prime_pow(2, nuB);
    }
    return mpz_prime_pow(2, nv + 1);
}

mpz_class eta_factor(const QuadPoly& f, i64 p, i64 k) {
    if (p == 2 || f.a % p == 0)
        throw std::invalid_argument("eta_factor: need odd p not dividing a");
    const i64 D = f.disc();
    if (D != 0 && D % p != 0) throw std::invalid_argument("eta_factor: p must divide D");
    const ExtNat nu = (D == 0) ? ExtNat::infinity() : p_adic_valuation(D, p);
    const ExtNat half_ceil = nu.is_infinite() ? nu : ExtNat((nu.value() + 1) / 2);
    const unsigned nuB = nu_p_Bk(f, k, p);
    const unsigned nuL = nu_p_Lk(k, p);
    const unsigned nuk1 = nu_finite(k + 1, p);

    if (!k_reaches(k, p, half_ceil)) {
        if (nuk1 < nuL) return mpz_prime_pow(p, 2 * nuL);
        return mpz_prime_pow(p, nuB);
    }
    const unsigned nv = static_cast<unsigned>(nu.value());
    const i64 Dp = D / ipow(p, nv);
    const bool bad = (nv % 2 != 0) || legendre_symbol(Dp, p) == -1;
    if (nuk1 < (nv + 1) / 2 && bad) return mpz_prime_pow(p, nuB - (nv + 1) / 2);
    if (nuk1 < nuB - nv && nv % 2 == 0 && legendre_symbol(Dp, p) == 1)
        return mpz_prime_pow(p, nv);
    return mpz_prime_pow(p, nuB);
}

mpz_class compute_Ak(const QuadPoly& f, i64 k) {
    check_normalized(f, "compute_Ak");
    const i64 D = f.disc();
    mpz_class B = compute_Bk(f, k);
    mpz_class denom = xi2_factor(f, k);
    for (i64 p : primes_of_Bk(f, k)) {
        if (p == 2) continue;
        if (f.a % p == 0) {
            if (f.b % p == 0) denom *= mpz_prime_pow(p, nu_p_Bk(f, k, p));
        } else if (D == 0 || D % p == 0) {
            denom *= eta_factor(f, p, k);
        } else if (legendre_symbol(D, p) == -1) {
            denom *= mpz_prime_pow(p, nu_p_Bk(f, k, p));
        }
    }
    if (B % denom != 0)
        throw std::logic_error("compute_Ak: correction factor does not divide B_k");
    return B / denom;
}

PeriodReport smallest_period(const QuadPoly& f, i64 k) {
    QuadPoly f1 = normalize(f);
    KfBound bound = kf_bound(f1);
    if (ExtNat(static_cast<u64>(k)) > bound.bound)
        throw NotEventuallyPeriodic(static_cast<i64>(bound.bound.value()) + 1);

    PeriodReport rep{f1, k, compute_Bk(f1, k), 1, 1, {}, 0, {}, std::nullopt, 0};
    for (i64 i = 2; i <= k; ++i)
        mpz_lcm_ui(rep.L_k.get_mpz_t(), rep.L_k.get_mpz_t(), static_cast<unsigned long>(i));
    rep.xi2 = xi2_factor(f1, k);

    const i64 D = f1.disc();
    mpz_class product = 1;
    for (i64 p : primes_of_Bk(f1, k)) {
        mpz_class lp;
        if (f1.a % p == 0)
            lp = local_period_p_divides_a(f1, p, k);
        else if (p == 2)
            lp = local_period_2(f1, k);
        else
            lp = local_period_odd_p(f1, p, k);
        rep.local_periods[p] = lp;
        product *= lp;
        if (p != 2 && f1.a % p != 0 && (D == 0 || D % p == 0))
            rep.eta[p] = eta_factor(f1, p, k);
    }

    rep.A_k = compute_Ak(f1, k);
    mpz_class corrected = rep.A_k;
    int n_exceptional = 0;
    for (auto& [q_u, ex] : factorize(static_cast<u64>(k + 1))) {
        i64 q = static_cast<i64>(q_u);
        if (q == 2) continue;
        unsigned nuA = static_cast<unsigned>(p_adic_valuation(rep.A_k, q).value());
        if (nuA < 1 || static_cast<unsigned>(ex) < nuA) continue;
        bool cond = (f1.a % q == 0 && f1.b % q != 0) ||
                    (D != 0 && D % q != 0 && f1.a % q != 0 && legendre_symbol(D, q) == 1);
        if (!cond) continue;
        ++n_exceptional;
        rep.exceptional_prime = {q, nuA};
        mpz_class divisor = mpz_prime_pow(q, nuA);
        corrected /= divisor;
    }
    if (n_exceptional > 1)
        throw std::logic_error("smallest_period: multiple exceptional primes (uniqueness violated)");

    if (corrected != product)
        throw std::logic_error(
            "smallest_period: route disagreement (A_k-corrected != product of local periods)");
    rep.P = product;
    return rep;
}

}  // namespace qp
