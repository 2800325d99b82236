#pragma once

#include "qp/congruence.hpp"
#include "qp/ext_nat.hpp"
#include "qp/poly.hpp"

namespace qp {

// Minimal circular distance among the roots of f(x) == 0 (mod p^e):
// infinity when the solution set is empty, p^e for singletons, 1 at e = 0.
struct MinimalDistance {
    i64 p;
    unsigned e;
    ExtNat d;
};

// Circular distance between two residues mod p^e; equal residues give p^e.
i64 pair_distance(i64 x1, i64 x2, i64 modulus);

// Direct evaluation over all pairs of the solution set.
MinimalDistance min_distance_from_set(const SolutionSet& s);

// Closed-form minimal distance, case split on (p | a, p = 2).  The
// "smallest positive root" cases reuse the congruence solver on the
// auxiliary polynomial a^2 x^2 - D.  Requires primitive f.
MinimalDistance min_distance_closed(const QuadPoly& f, i64 p, unsigned e);

// The unique e with d_{p^e} <= k < d_{p^(e+1)}, by ascending scan of
// min_distance_closed.  Requires k in K_f (the eventual-periodicity gate);
// throws std::domain_error otherwise.
unsigned e_bracket(const QuadPoly& f, i64 p, i64 k);

}  // namespace qp
