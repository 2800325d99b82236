#include "qp/distance.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace qp {

namespace {

unsigned nu_i128(i128 n, i64 p) {
    if (n < 0) n = -n;
    unsigned t = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++t;
    }
    return t;
}

QuadPoly aux_poly(const QuadPoly& f) {
    i128 a2 = static_cast<i128>(f.a) * f.a;
    if (a2 > (i64(1) << 62)) throw std::overflow_error("min_distance_closed: a^2 overflows");
    return QuadPoly(static_cast<i64>(a2), 0, -f.disc());
}

// Smallest positive root of the set, with residue 0 standing for the modulus.
ExtNat smallest_positive_root(const SolutionSet& s) {
    if (s.residues.empty())
        throw std::logic_error("min_distance_closed: expected nonempty root set");
    i64 best = s.modulus;
    for (i64 r : s.residues) best = std::min(best, r == 0 ? s.modulus : r);
    return ExtNat(static_cast<u64>(best));
}

}  // namespace

i64 pair_distance(i64 x1, i64 x2, i64 modulus) {
    if (x1 < 0 || x1 >= modulus || x2 < 0 || x2 >= modulus)
        throw std::invalid_argument("pair_distance: residues out of range");
    if (x1 == x2) return modulus;
    i64 diff = std::abs(x1 - x2);
    return std::min(diff, modulus - diff);
}

MinimalDistance min_distance_from_set(const SolutionSet& s) {
    if (s.e == 0) return {s.p, 0, ExtNat(1)};
    if (s.residues.empty()) return {s.p, s.e, ExtNat::infinity()};
    if (s.residues.size() == 1) return {s.p, s.e, ExtNat(static_cast<u64>(s.modulus))};
    // residues sorted: minimum over adjacent gaps plus the wraparound gap.
    i64 best = s.modulus;
    for (std::size_t i = 0; i + 1 < s.residues.size(); ++i)
        best = std::min(best, s.residues[i + 1] - s.residues[i]);
    best = std::min(best, s.modulus - (s.residues.back() - s.residues.front()));
    return {s.p, s.e, ExtNat(static_cast<u64>(best))};
}

MinimalDistance min_distance_closed(const QuadPoly& f, i64 p, unsigned e) {
    if (!f.is_primitive()) throw std::invalid_argument("min_distance_closed: reduce by content first");
    if (e == 0) return {p, 0, ExtNat(1)};
    const i64 D = f.disc();

    if (f.a % p == 0) {
        if (f.b % p == 0) return {p, e, ExtNat::infinity()};
        return {p, e, ExtNat(static_cast<u64>(ipow(p, e)))};
    }

    if (p == 2) {
        if (D == 0) return {p, e, ExtNat(static_cast<u64>(ipow(2, (e + 1) / 2)))};
        const unsigned nu = static_cast<unsigned>(p_adic_valuation(D, 2).value());
        const i64 D4 = D / ipow(4, nu / 2);
        const i64 two_fl = 2 * (nu / 2);
        const i64 ee = e;
        const i64 d4m4 = ((D4 % 4) + 4) % 4;
        const i64 d4m8 = ((D4 % 8) + 8) % 8;
        if ((ee == static_cast<i64>(nu) && d4m4 == 1) || ee <= two_fl - 1)
            return {p, e, ExtNat(static_cast<u64>(ipow(2, (e + 1) / 2)))};
        if ((ee == two_fl && d4m4 != 1) || (ee > two_fl && d4m8 != 1))
            return {p, e, ExtNat::infinity()};
        // e > nu with D4 == 1 (mod 8): smallest positive root of
        // a^2 x^2 - D == 0 (mod 2^(e+1)).
        return {p, e, smallest_positive_root(solve_odd_a_mod_2(aux_poly(f), e + 1))};
    }

    if (D == 0) return {p, e, ExtNat(static_cast<u64>(ipow(p, (e + 1) / 2)))};
    const ExtNat nu = p_adic_valuation(D, p);
    if (ExtNat(e) <= nu) return {p, e, ExtNat(static_cast<u64>(ipow(p, (e + 1) / 2)))};
    const unsigned nv = static_cast<unsigned>(nu.value());
    const i64 Dp = D / ipow(p, nv);
    if (nv % 2 != 0 || legendre_symbol(Dp, p) == -1) return {p, e, ExtNat::infinity()};
    // Smallest positive root of a^2 x^2 - D == 0 (mod p^e).
    return {p, e, smallest_positive_root(solve_odd_p(aux_poly(f), p, e))};
}

unsigned e_bracket(const QuadPoly& f, i64 p, i64 k) {
    if (k < 1) throw std::invalid_argument("e_bracket: k must be >= 1");
    const i64 D = f.disc();
    // Gate: k must lie in K_f, i.e. D != a^2 i^2 for 1 <= i <= k.
    for (i64 i = 1; i <= k; ++i) {
        i128 t = static_cast<i128>(f.a) * f.a * i * i;
        if (t == D) throw std::domain_error("e_bracket: not eventually periodic at this k");
        if (t > D) break;
    }

    // Ceiling for the ascending scan, from the bracketing lemma's bound:
    // past max(nu_p(D), max_i nu_p(a^2 i^2 - D), ceil(log_p(a^2 k^2 + |D|)))
    // the minimal distance exceeds k.  Two extra levels of slack.
    unsigned ceiling = 2;
    if (D != 0) ceiling = std::max(ceiling, static_cast<unsigned>(p_adic_valuation(D, p).value()) + 2);
    i128 bound = static_cast<i128>(f.a) * f.a * k * k + (D < 0 ? -static_cast<i128>(D) : D);
    unsigned lg = 0;
    for (i128 v = 1; v < bound; v *= p) ++lg;
    ceiling = std::max(ceiling, lg + 2);
    for (i64 i = 1; i <= std::min<i64>(k, 4096); ++i) {
        i128 term = static_cast<i128>(f.a) * f.a * i * i - D;
        ceiling = std::max(ceiling, nu_i128(term, p) + 2);
    }

    ExtNat d_cur = min_distance_closed(f, p, 0).d;  // = 1
    for (unsigned e = 0; e <= ceiling; ++e) {
        ExtNat d_next = min_distance_closed(f, p, e + 1).d;
        if (d_cur <= ExtNat(static_cast<u64>(k)) && ExtNat(static_cast<u64>(k)) < d_next)
            return e;
        d_cur = d_next;
    }
    throw std::logic_error("e_bracket: scan exceeded the proven ceiling (solver bug)");
}

}  // namespace qp
