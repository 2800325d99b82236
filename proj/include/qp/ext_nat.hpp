#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace qp {

// A nonnegative integer extended with infinity.
//
// Used for p-adic valuations (nu_p(0) = infinity) and for minimal distances
// of empty solution sets (d = infinity).  Infinity compares strictly greater
// than every finite value, absorbs addition, and min(inf, n) = n.
class ExtNat {
public:
    constexpr ExtNat() : v_(0), inf_(false) {}
    constexpr ExtNat(std::uint64_t v) : v_(v), inf_(false) {}

    static constexpr ExtNat infinity() {
        ExtNat x;
        x.inf_ = true;
        return x;
    }

    constexpr bool is_infinite() const { return inf_; }
    constexpr bool is_finite() const { return !inf_; }

    std::uint64_t value() const {
        if (inf_) throw std::logic_error("ExtNat: value() called on infinity");
        return v_;
    }

    friend constexpr bool operator==(ExtNat a, ExtNat b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend constexpr bool operator!=(ExtNat a, ExtNat b) { return !(a == b); }
    friend constexpr bool operator<(ExtNat a, ExtNat b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(ExtNat a, ExtNat b) { return b < a; }
    friend constexpr bool operator<=(ExtNat a, ExtNat b) { return !(b < a); }
    friend constexpr bool operator>=(ExtNat a, ExtNat b) { return !(a < b); }

    friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtNat(a.v_ + b.v_);
    }

    friend constexpr ExtNat min(ExtNat a, ExtNat b) { return a < b ? a : b; }
    friend constexpr ExtNat max(ExtNat a, ExtNat b) { return a < b ? b : a; }

    friend std::ostream& operator<<(std::ostream& os, ExtNat x) {
        if (x.inf_) return os << "inf";
        return os << x.v_;
    }

private:
    std::uint64_t v_;
    bool inf_;
};

}  // namespace qp
