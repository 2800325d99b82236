#pragma once

#include <stdexcept>

#include <gmpxx.h>

#include "qp/arith.hpp"
#include "qp/ext_nat.hpp"

namespace qp {

// A quadratic polynomial a*x^2 + b*x + c with integer coefficients, a != 0.
// The discriminant and content are always recomputed from (a, b, c).
struct QuadPoly {
    i64 a;
    i64 b;
    i64 c;

    QuadPoly(i64 a_, i64 b_, i64 c_) : a(a_), b(b_), c(c_) {
        if (a == 0) throw std::invalid_argument("QuadPoly: a must be nonzero");
    }

    // Discriminant b^2 - 4ac; throws std::overflow_error if it exceeds i64.
    i64 disc() const;

    // gcd(|a|, |b|, |c|), always positive.
    i64 content() const;

    bool is_primitive() const { return content() == 1; }

    i128 eval(i64 x) const {
        i128 xx = x;
        return (static_cast<i128>(a) * xx + b) * xx + c;
    }

    mpz_class eval_big(const mpz_class& x) const {
        return (static_cast<long>(a) * x + static_cast<long>(b)) * x + static_cast<long>(c);
    }

    friend bool operator==(const QuadPoly& f, const QuadPoly& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
};

// Divides out the content, then flips signs so the leading coefficient is
// positive.  Both steps leave the smallest period of g_{k,f} unchanged.
QuadPoly normalize(const QuadPoly& f);

// The p-local discriminant data: nu_p(D) together with the stripped part
// (D / p^{nu_p(D)} for odd p; D / 4^{floor(nu_2(D)/2)} for p = 2).
// Not constructible for D = 0; callers branch on that case separately.
struct DiscriminantParts {
    i64 p;
    ExtNat nu_D;
    i64 part;

    DiscriminantParts(const QuadPoly& f, i64 p_);
};

}  // namespace qp
