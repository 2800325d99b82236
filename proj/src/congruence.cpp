#include "qp/congruence.hpp"

#include <algorithm>
#include <stdexcept>

namespace qp {

namespace {

constexpr i64 kCosetCap = i64(1) << 22;

i64 mod_reduce(i128 v, i64 m) {
    i64 r = static_cast<i64>(v % m);
    return r < 0 ? r + m : r;
}

// Lifts a simple root r of f mod p (f'(r) a unit mod p) to a root mod p^e
// by Newton iteration with doubling precision.
i64 hensel_lift(const QuadPoly& f, i64 p, unsigned e, i64 r) {
    const i64 m = ipow(p, e);
    i64 q = p;
    r %= q;
    while (q < m) {
        q = (q > m / q) ? m : q * q;
        i64 fr = mod_reduce(f.eval(r), q);
        i64 fpr = mod_reduce(static_cast<i128>(2) * f.a * r + f.b, q);
        i64 inv = mod_inverse(fpr, q);
        r = mod_reduce(static_cast<i128>(r) - static_cast<i128>(fr) * inv, q);
    }
    return r;
}

// Appends the coset family { (base mod spacing) + m*spacing : 0 <= m < count }.
void add_coset(SolutionSet& s, i128 base, i64 spacing, i64 count) {
    if (count > kCosetCap) throw std::logic_error("solution set too large to enumerate");
    i64 b = mod_reduce(base, spacing);
    for (i64 m = 0; m < count; ++m) s.residues.push_back(b + m * spacing);
}

void finalize(SolutionSet& s) {
    std::sort(s.residues.begin(), s.residues.end());
    s.residues.erase(std::unique(s.residues.begin(), s.residues.end()), s.residues.end());
}

}  // namespace

SolutionSet solve_p_divides_a(const QuadPoly& f, i64 p, unsigned e) {
    if (f.a % p != 0) throw std::invalid_argument("solve_p_divides_a: wrong case, p does not divide a");
    if (e == 0) throw std::invalid_argument("solve_p_divides_a: e must be >= 1");
    SolutionSet s{p, e, ipow(p, e), {}};
    if (f.b % p == 0) return s;
    // f == b*x + c (mod p) has the unique simple root -c/b; lift it.
    i64 r0 = mod_reduce(-static_cast<i128>(f.c) * mod_inverse(f.b, p), p);
    s.residues.push_back(hensel_lift(f, p, e, r0));
    return s;
}

SolutionSet solve_odd_a_mod_2(const QuadPoly& f, unsigned e) {
    if (f.a % 2 == 0) throw std::invalid_argument("solve_odd_a_mod_2: wrong case, a is even");
    if (e == 0) throw std::invalid_argument("solve_odd_a_mod_2: e must be >= 1");
    const i64 D = f.disc();
    SolutionSet s{2, e, ipow(2, e), {}};

    if (D == 0) {
        // nu_2(D) = infinity: the "e small against nu_2(D)" family applies for
        // every e.  (a odd and b^2 = 4ac force b even.)
        i64 spacing = ipow(2, (e + 1) / 2);
        i64 inv_a = mod_inverse(f.a, spacing);
        add_coset(s, -static_cast<i128>(inv_a) * (f.b / 2), spacing, ipow(2, e / 2));
        finalize(s);
        return s;
    }

    const unsigned nu = static_cast<unsigned>(p_adic_valuation(D, 2).value());
    const i64 D4 = D / ipow(4, nu / 2);
    const i64 two_fl = 2 * (nu / 2);  // 2*floor(nu/2)
    const i64 ee = e;

    if ((ee == two_fl - 1 && ((D4 % 4) + 4) % 4 == 2) || ee <= two_fl - 2) {
        // Family at spacing 2^ceil(e/2) around -b/(2a).
        i64 spacing = ipow(2, (e + 1) / 2);
        i64 inv_a = mod_inverse(f.a, spacing);
        add_coset(s, -static_cast<i128>(inv_a) * (f.b / 2), spacing, ipow(2, e / 2));
    } else if ((ee == two_fl - 1 && ((D4 % 4) + 4) % 4 != 2) ||
               (ee == two_fl && ((D4 % 4) + 4) % 4 == 1)) {
        // Here nu is even; family at spacing 2^(nu/2).
        i64 spacing = ipow(2, nu / 2);
        i64 inv_a = mod_inverse(f.a, spacing == 1 ? 2 : spacing);
        add_coset(s, static_cast<i128>(inv_a) * (ipow(2, nu / 2 - 1) - f.b / 2), spacing,
                  ipow(2, e / 2));
    } else if ((ee == two_fl && ((D4 % 4) + 4) % 4 != 1) ||
               (ee > two_fl && ((D4 % 8) + 8) % 8 != 1)) {
        // No solutions.
    } else {
        // D4 == 1 (mod 8) and e > nu (nu even).
        if (nu == 0) {
            // b odd, c even: both residues mod 2 are simple roots; lift each.
            s.residues.push_back(hensel_lift(f, 2, e, 0));
            s.residues.push_back(hensel_lift(f, 2, e, 1));
        } else {
            // X = 2^(nu/2-1) * y1 with y1 the smallest root of
            // y^2 == D4 (mod 2^(e+2-nu)).
            auto roots = sqrt_mod_prime_power(D4, 2, e + 2 - nu);
            if (roots.empty()) throw std::logic_error("solve_odd_a_mod_2: expected square root");
            i64 X = ipow(2, nu / 2 - 1) * roots.front();
            i64 spacing = ipow(2, e - nu / 2);
            i64 inv_a = mod_inverse(f.a, spacing);
            i64 count = ipow(2, nu / 2);
            add_coset(s, static_cast<i128>(inv_a) * (X - f.b / 2), spacing, count);
            add_coset(s, static_cast<i128>(inv_a) * (-X - f.b / 2), spacing, count);
        }
    }
    finalize(s);
    return s;
}

SolutionSet solve_odd_p(const QuadPoly& f, i64 p, unsigned e) {
    if (p == 2) throw std::invalid_argument("solve_odd_p: wrong case, p = 2");
    if (f.a % p == 0) throw std::invalid_argument("solve_odd_p: wrong case, p divides a");
    if (e == 0) throw std::invalid_argument("solve_odd_p: e must be >= 1");
    const i64 D = f.disc();
    SolutionSet s{p, e, ipow(p, e), {}};

    const ExtNat nu = (D == 0) ? ExtNat::infinity() : p_adic_valuation(D, p);
    if (ExtNat(e) <= nu) {
        // Family at spacing p^ceil(e/2) around -b/(2a).
        i64 spacing = ipow(p, (e + 1) / 2);
        i64 inv_2a = mod_inverse(mod_reduce(static_cast<i128>(2) * f.a, spacing), spacing);
        add_coset(s, -static_cast<i128>(inv_2a) * f.b, spacing, ipow(p, e / 2));
        finalize(s);
        return s;
    }

    const unsigned nv = static_cast<unsigned>(nu.value());
    const i64 Dp = D / ipow(p, nv);
    if (nv % 2 != 0 || legendre_symbol(Dp, p) == -1) return s;  // empty

    // X is the smallest positive root of x^2 == D (mod p^e).
    auto roots = sqrt_mod_prime_power(D, p, e);
    if (roots.empty()) throw std::logic_error("solve_odd_p: expected square root");
    i64 X = roots.front() == 0 ? roots[1] : roots.front();
    i64 spacing = ipow(p, e - nv / 2);
    i64 inv_2a = mod_inverse(mod_reduce(static_cast<i128>(2) * f.a, spacing), spacing);
    i64 count = ipow(p, nv / 2);
    add_coset(s, static_cast<i128>(inv_2a) * (X - f.b), spacing, count);
    add_coset(s, static_cast<i128>(inv_2a) * (-X - f.b), spacing, count);
    finalize(s);
    return s;
}

SolutionSet solve(const QuadPoly& f, i64 p, unsigned e) {
    if (!f.is_primitive()) throw std::invalid_argument("solve: reduce by content first");
    if (e == 0) return SolutionSet{p, 0, 1, {0}};
    if (f.a % p == 0) return solve_p_divides_a(f, p, e);
    if (p == 2) return solve_odd_a_mod_2(f, e);
    return solve_odd_p(f, p, e);
}

SolutionSet solve_brute(const QuadPoly& f, i64 p, unsigned e, i64 cap) {
    i64 m = ipow(p, e);
    if (m > cap) throw std::invalid_argument("solve_brute: modulus exceeds oracle cap");
    SolutionSet s{p, e, m, {}};
    for (i64 x = 0; x < m; ++x)
        if (mod_reduce(f.eval(x), m) == 0) s.residues.push_back(x);
    return s;
}

}  // namespace qp
