#include "qp/poly.hpp"

#include <limits>
#include <numeric>

namespace qp {

i64 QuadPoly::disc() const {
    i128 d = static_cast<i128>(b) * b - static_cast<i128>(4) * a * c;
    if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
        throw std::overflow_error("QuadPoly: discriminant exceeds 64 bits");
    return static_cast<i64>(d);
}

i64 QuadPoly::content() const {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

QuadPoly normalize(const QuadPoly& f) {
    i64 d = f.content();
    i64 a = f.a / d, b = f.b / d, c = f.c / d;
    if (a < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    return QuadPoly(a, b, c);
}

DiscriminantParts::DiscriminantParts(const QuadPoly& f, i64 p_) : p(p_), nu_D(0), part(0) {
    i64 D = f.disc();
    if (D == 0)
        throw std::invalid_argument(
            "DiscriminantParts: D = 0 has no stripped part (handle degenerate "
            "discriminants at the call site)");
    nu_D = p_adic_valuation(D, p);
    unsigned t = static_cast<unsigned>(nu_D.value());
    if (p == 2) {
        part = D / ipow(4, t / 2);  // D_4
    } else {
        part = D / ipow(p, t);  // D_p
    }
}

}  // namespace qp
