#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qp/congruence.hpp"

using namespace qp;

namespace {
constexpr i64 kCap = 1 << 20;
std::vector<i64> residues(const SolutionSet& s) { return s.residues; }
}  // namespace

TEST_CASE("solve_p_divides_a fixed values") {
    CHECK(residues(solve_p_divides_a(QuadPoly(2, 2, 1), 2, 3)).empty());
    CHECK(residues(solve_p_divides_a(QuadPoly(2, 1, 1), 2, 1)) == std::vector<i64>{1});
    // 2x^2 + x + 1 mod 16: exhaustive scan gives the single root 13.
    CHECK(residues(solve_p_divides_a(QuadPoly(2, 1, 1), 2, 4)) == std::vector<i64>{13});
    CHECK_THROWS_AS(solve_p_divides_a(QuadPoly(1, 1, 1), 2, 1), std::invalid_argument);
}

TEST_CASE("solve_odd_a_mod_2 fixed values") {
    // x^2 + x + 1 is odd everywhere.
    CHECK(residues(solve_odd_a_mod_2(QuadPoly(1, 1, 1), 1)).empty());
    // x(x+1) mod 8: roots 0 and 7 (two lifted simple roots).
    CHECK(residues(solve_odd_a_mod_2(QuadPoly(1, 1, 0), 3)) == std::vector<i64>{0, 7});
    // x^2 - 4 mod 8: D = 16.
    CHECK(residues(solve_odd_a_mod_2(QuadPoly(1, 0, -4), 3)) == std::vector<i64>{2, 6});
    CHECK_THROWS_AS(solve_odd_a_mod_2(QuadPoly(2, 1, 1), 1), std::invalid_argument);
}

TEST_CASE("solve_odd_p fixed values") {
    CHECK(residues(solve_odd_p(QuadPoly(1, 0, 1), 5, 1)) == std::vector<i64>{2, 3});
    CHECK(residues(solve_odd_p(QuadPoly(1, 0, 1), 3, 1)).empty());
    CHECK(residues(solve_odd_p(QuadPoly(1, 0, -9), 3, 2)) == std::vector<i64>{0, 3, 6});
    CHECK_THROWS_AS(solve_odd_p(QuadPoly(3, 1, 1), 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(solve_odd_p(QuadPoly(1, 0, 1), 2, 1), std::invalid_argument);
}

TEST_CASE("solve dispatcher") {
    SolutionSet s0 = solve(QuadPoly(1, 0, 1), 7, 0);
    CHECK(s0.modulus == 1);
    CHECK(s0.residues == std::vector<i64>{0});
    CHECK(residues(solve(QuadPoly(1, 0, 1), 2, 1)) == std::vector<i64>{1});
    CHECK(residues(solve(QuadPoly(3, 1, 1), 3, 2)) == std::vector<i64>{5});
    CHECK_THROWS_AS(solve(QuadPoly(2, 4, 6), 3, 1), std::invalid_argument);
}

TEST_CASE("solve_brute fixed values") {
    CHECK(residues(solve_brute(QuadPoly(1, 0, 1), 5, 2, kCap)) == std::vector<i64>{7, 18});
    CHECK(residues(solve_brute(QuadPoly(1, 1, 1), 2, 5, kCap)).empty());
    CHECK(residues(solve_brute(QuadPoly(1, 2, 3), 3, 0, kCap)) == std::vector<i64>{0});
    CHECK_THROWS_AS(solve_brute(QuadPoly(1, 0, 1), 2, 30, kCap), std::invalid_argument);
}

TEST_CASE("solve equals solve_brute on a sample grid") {
    long checks = 0;
    for (i64 a = -5; a <= 5; ++a)
        for (i64 b = -5; b <= 5; ++b)
            for (i64 c = -5; c <= 5; ++c) {
                if (a == 0) continue;
                QuadPoly f(a, b, c);
                if (!f.is_primitive()) continue;
                for (i64 p : {2, 3, 5, 7}) {
                    for (unsigned e = 0; ipow(p, e) <= 2000; ++e) {
                        auto closed = solve(f, p, e);
                        auto brute = solve_brute(f, p, e, kCap);
                        REQUIRE_MESSAGE(closed.residues == brute.residues,
                                        "f=(" << a << "," << b << "," << c << ") p=" << p
                                              << " e=" << e);
                        ++checks;
                    }
                }
            }
    CHECK(checks > 10000);
}

TEST_CASE("roots really solve the congruence and lift compatibly") {
    for (i64 a = -4; a <= 4; ++a)
        for (i64 b = -4; b <= 4; ++b)
            for (i64 c = -4; c <= 4; ++c) {
                if (a == 0) continue;
                QuadPoly f(a, b, c);
                if (!f.is_primitive()) continue;
                for (i64 p : {2, 3, 5}) {
                    SolutionSet prev = solve(f, p, 1);
                    for (unsigned e = 1; ipow(p, e) <= 1000; ++e) {
                        SolutionSet s = solve(f, p, e);
                        for (i64 r : s.residues) {
                            i128 v = f.eval(r);
                            CHECK(((v % s.modulus) + s.modulus) % s.modulus == 0);
                        }
                        if (e >= 2) {
                            // Every root mod p^e reduces to a root mod p^(e-1).
                            for (i64 r : s.residues) {
                                i64 rr = r % prev.modulus;
                                CHECK(std::find(prev.residues.begin(), prev.residues.end(), rr) !=
                                      prev.residues.end());
                            }
                        }
                        prev = s;
                    }
                }
            }
}

TEST_CASE("asserted cardinalities") {
    // Family case for odd p, e <= nu_p(D): p^floor(e/2) residues.
    // f = x^2 - 9, p = 3, nu_3(D) = 2 (D = 36).
    CHECK(solve(QuadPoly(1, 0, -9), 3, 2).residues.size() == 3);  // 3^1
    CHECK(solve(QuadPoly(1, 0, -9), 3, 1).residues.size() == 1);  // 3^0
    // Residue case for odd p, e > nu_p(D): 2 * p^(nu/2) residues.
    // f = x^2 - 9: nu_3(D) = 2, e = 3 gives 2*3 = 6 roots mod 27.
    CHECK(solve(QuadPoly(1, 0, -9), 3, 3).residues.size() == 6);
    // p = 2 residue case with nu_2(D) = 0: exactly two Hensel roots.
    CHECK(solve(QuadPoly(1, 1, 0), 2, 5).residues.size() == 2);
}

TEST_CASE("(2ar + b)^2 == D (mod p^e) for every root") {
    for (auto& [f, p, e] : std::vector<std::tuple<QuadPoly, i64, unsigned>>{
             {QuadPoly(1, 0, -9), 3, 3},
             {QuadPoly(1, 1, 0), 2, 4},
             {QuadPoly(3, 1, 1), 3, 2},
             {QuadPoly(1, 0, 1), 5, 3}}) {
        SolutionSet s = solve(f, p, e);
        i64 D = f.disc();
        for (i64 r : s.residues) {
            i128 t = static_cast<i128>(2) * f.a * r + f.b;
            i128 v = t * t - D;
            CHECK(((v % s.modulus) + s.modulus) % s.modulus == 0);
        }
    }
}
