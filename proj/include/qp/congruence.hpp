#pragma once

#include <vector>

#include "qp/poly.hpp"

namespace qp {

// The full solution set of f(x) == 0 (mod p^e), as canonical residues in
// [0, p^e), sorted ascending and duplicate-free.  For e = 0 the set is the
// singleton {0} with modulus 1.
struct SolutionSet {
    i64 p;
    unsigned e;
    i64 modulus;  // p^e
    std::vector<i64> residues;
};

// Case p | a: empty if p | b, otherwise a single Hensel-lifted root of the
// (linear mod p) congruence.  Requires p | a.
SolutionSet solve_p_divides_a(const QuadPoly& f, i64 p, unsigned e);

// Case p = 2 with a odd: four-way split on e against nu_2(D) and on
// D_4 mod 4 / mod 8.  Requires a odd, e >= 1.
SolutionSet solve_odd_a_mod_2(const QuadPoly& f, unsigned e);

// Case p odd with p not dividing a: three-way split on e against nu_p(D)
// and the Legendre symbol (D_p / p).  Requires p odd, p not dividing a.
SolutionSet solve_odd_p(const QuadPoly& f, i64 p, unsigned e);

// Dispatcher: e = 0 returns {0}; otherwise selects the case operation by
// (p | a, p = 2).  Requires primitive f.
SolutionSet solve(const QuadPoly& f, i64 p, unsigned e);

// Exhaustive scan of all residues mod p^e; the independent oracle.
// Requires p^e <= cap.
SolutionSet solve_brute(const QuadPoly& f, i64 p, unsigned e, i64 cap);

}  // namespace qp
