#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "qp/ext_nat.hpp"
#include "qp/poly.hpp"

namespace qp {

// The set K_f of window sizes k for which g_{k,f} is eventually periodic:
// all of N* (bound = infinity) unless D = a^2 m^2 for some m >= 1, in which
// case K_f = {1, ..., m-1} (bound = m-1; 0 encodes the empty set).
struct KfBound {
    ExtNat bound;
};

// Thrown when a period computation is requested outside K_f; carries the
// witness i0 with D = a^2 i0^2.
struct NotEventuallyPeriodic : std::domain_error {
    i64 witness_i0;
    explicit NotEventuallyPeriodic(i64 i0);
};

// Everything Theorem-1.1-shaped about one instance (f, k): the guaranteed
// period B_k, the correction factors, the candidate A_k, the per-prime local
// periods, the exceptional prime (if any), and the smallest period P.
struct PeriodReport {
    QuadPoly f;  // normalized primitive form actually analyzed
    i64 k;
    mpz_class B_k;
    mpz_class L_k;
    mpz_class xi2;
    std::map<i64, mpz_class> eta;            // odd p with p∤2a, p|D
    mpz_class A_k;
    std::map<i64, mpz_class> local_periods;  // p | B_k -> P_{p,k,f}
    std::optional<std::pair<i64, unsigned>> exceptional_prime;  // (q, nu_q(A_k))
    mpz_class P;
};

KfBound kf_bound(const QuadPoly& f);

// True iff k <= kf_bound(normalize(f)).
bool is_eventually_periodic(const QuadPoly& f, i64 k);

// B_k = lcm_{1<=i<=k} i*(a^2 i^2 - D); throws NotEventuallyPeriodic if a
// term vanishes.
mpz_class compute_Bk(const QuadPoly& f, i64 k);

// nu_p(B_k), computed as the max valuation over the lcm terms.
unsigned nu_p_Bk(const QuadPoly& f, i64 k, i64 p);

// The distinct primes dividing B_k, ascending.
std::vector<i64> primes_of_Bk(const QuadPoly& f, i64 k);

// Local smallest period of n -> nu_p(g_{k,f}(n)), closed forms:
//   - p | a (two-way split on p|b and nu_p(k+1));
//   - p = 2, a odd (four-way split);
//   - odd p∤a (four-way split).
mpz_class local_period_p_divides_a(const QuadPoly& f, i64 p, i64 k);
mpz_class local_period_2(const QuadPoly& f, i64 k);
mpz_class local_period_odd_p(const QuadPoly& f, i64 p, i64 k);

// Independent route for p∤a: the local period derived from the distance
// bracket e with d_{p^e} <= k < d_{p^(e+1)}.  Must agree with the closed
// forms above.
mpz_class local_period_via_bracket(const QuadPoly& f, i64 p, i64 k);

// The correction factors of the A_k formula (exposed for the CLI report).
mpz_class xi2_factor(const QuadPoly& f, i64 k);
mpz_class eta_factor(const QuadPoly& f, i64 p, i64 k);

// A_k = B_k / (xi2 * [odd p | gcd(a,b)] * [p∤2aD with (D/p) = -1] * eta_p).
mpz_class compute_Ak(const QuadPoly& f, i64 k);

// The headline computation.  P is computed BOTH as A_k with the
// exceptional-prime correction AND as the product of local periods; the two
// routes must agree (std::logic_error otherwise).
PeriodReport smallest_period(const QuadPoly& f, i64 k);

}  // namespace qp
