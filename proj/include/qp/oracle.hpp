#pragma once

#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qp/poly.hpp"

namespace qp {

// Ground-truth report for one instance (f, k): sampled g-values, the
// empirically detected smallest period, and consistency flags.  The
// empirical check is a falsifier, not a verifier: the theory gives no bound
// on where eventual periodicity starts, so a pass is evidence, not proof.
struct OracleReport {
    QuadPoly f;
    i64 k;
    std::vector<std::pair<i64, mpz_class>> samples;  // (n, g_{k,f}(n))
    mpz_class empirical_period;
    bool hua_consistent;
    std::map<mpz_class, bool> divisor_checks;  // candidate divisor of B_k -> verified
    i64 window_start;
    int horizon;
};

// g_{k,f}(n) = prod |f(n+i)| / lcm |f(n+i)|, i = 0..k.  When some window
// term vanishes (n in Z_{k,f}), evaluates at n + a0*B_k with a0 the least
// positive shift clearing all zeros; that extension requires eventual
// periodicity.
mpz_class g_eval(const QuadPoly& f, i64 k, i64 n);

// nu_p(g_{k,f}(n)), computed both directly and as the excess-count sum
// sum_i max(0, #{m in window : p^i | m} - 1); the two must agree.
u64 g_p_eval(const QuadPoly& f, i64 k, i64 n, i64 p);

// Least divisor t of B_k with g(n+t) = g(n) for all n in
// [n0, n0 + horizon*B_k].  Pass n0 < 0 to start just past the zeros of f.
// Requires B_k <= cap.  Optionally records each tried divisor's verdict.
mpz_class empirical_smallest_period(const QuadPoly& f, i64 k, i64 n0, int horizon, i64 cap,
                                    std::map<mpz_class, bool>* divisor_checks = nullptr);

// Alternating gcd-product identity: over all subsets of {0..k} of size
// r+1 >= 2, the product of gcd^((-1)^(r-1)) equals g_{k,f}(n) exactly.
bool hua_check(const QuadPoly& f, i64 k, i64 n);

// gcd(f(n+i), f(n+j)) divides B_k for all 0 <= i < j <= k.
bool gcd_divides_Bk_check(const QuadPoly& f, i64 k, i64 n);

// Measured slope of log lcm of the window against log n, with the predicted
// limit slope C: 2(k+1) in the eventually periodic case, k + i0 + 1 when
// D = a^2 i0^2.
struct AsymSample {
    i64 n;
    double log_lcm;
    double ratio;  // log_lcm / log n
};
struct AsymReport {
    std::vector<AsymSample> samples;
    double predicted_C;
    double rel_dev_at_largest;
};
AsymReport asymptotic_slope(const QuadPoly& f, i64 k, const std::vector<i64>& sample_points);

// For instances that are NOT eventually periodic: sample points with
// strictly increasing g, witnessing unboundedness.
std::vector<std::pair<i64, mpz_class>> unboundedness_witness(const QuadPoly& f, i64 k,
                                                             int count);

// Full oracle run used by the CLI.
OracleReport make_oracle_report(const QuadPoly& f, i64 k, i64 n0, int horizon, i64 cap);

}  // namespace qp
