#include "doctest.h"

#include <cmath>

#include "qtheta/errors.hpp"
#include "qtheta/qseries.hpp"
#include "test_support.hpp"

using namespace qtheta;
using qtheta::test::close;

TEST_CASE("nome constructor rejects everything outside the punctured disk") {
    CHECK_THROWS_AS(Nome(Complex(0, 0)), std::domain_error);
    CHECK_THROWS_AS(Nome(Complex(1, 0)), std::domain_error);
    CHECK_THROWS_AS(Nome(Complex(0.6, 0.8)), std::domain_error); // |q| = 1
    CHECK_THROWS_AS(Nome(Complex(-1.5, 0)), std::domain_error);
    const Nome nome(Complex(0.3, -0.4));
    CHECK(nome.modulus() == doctest::Approx(0.5));
}

TEST_CASE("finite pochhammer products agree with hand expansion") {
    const Nome half(Complex(0.5, 0));
    // (1/2; 1/2)_3 = (1 - 1/2)(1 - 1/4)(1 - 1/8)
    CHECK(close(pochhammer_n(Complex(0.5, 0), half, 3), Complex(0.328125, 0), 1e-15));
    CHECK(pochhammer_n(Complex(0.7, 0), half, 0) == Complex(1, 0));
    CHECK_THROWS_AS(pochhammer_n(Complex(0.5, 0), half, -1), std::domain_error);
}

TEST_CASE("infinite pochhammer product matches the frozen reference value") {
    // (1/2; 1/2)_inf, 22 digits, frozen from an independent high-precision
    // evaluation of the defining product.
    const Real reference = 0.2887880950866024212789;
    const Evaluated result = pochhammer_inf(Complex(0.5, 0), Nome(Complex(0.5, 0)));
    CHECK(close(result.value, Complex(reference, 0), 1e-14));
    // the reported certificate must cover the actual error
    CHECK(std::abs(result.value - Complex(reference, 0)) <= result.error_bound);
    CHECK(result.terms_used > 0);
}

TEST_CASE("pochhammer fast path at a = 0") {
    const Evaluated result = pochhammer_inf(Complex(0, 0), Nome(Complex(0.9, 0)));
    CHECK(result.value == Complex(1, 0));
    CHECK(result.terms_used == 0);
    CHECK(result.error_bound == 0);
}

TEST_CASE("pochhammer square split (a;q)(-a;q) = (a^2;q^2)") {
    const Complex a(0.8, 0.3);
    const Nome nome(Complex(0.35, 0.2));
    const Nome nome2(nome.q() * nome.q());
    const Complex lhs =
        pochhammer_inf(a, nome).value * pochhammer_inf(-a, nome).value;
    const Complex rhs = pochhammer_inf(a * a, nome2).value;
    CHECK(close(lhs, rhs, 1e-13));
}

TEST_CASE("pochhammer base split (a;q^2)(aq;q^2) = (a;q)") {
    const Complex a(-0.6, 0.4);
    const Nome nome(Complex(0.28, -0.33));
    const Nome nome2(nome.q() * nome.q());
    const Complex lhs =
        pochhammer_inf(a, nome2).value * pochhammer_inf(a * nome.q(), nome2).value;
    const Complex rhs = pochhammer_inf(a, nome).value;
    CHECK(close(lhs, rhs, 1e-13));
}

TEST_CASE("tail bound closed form and validity gate") {
    // a_mod = 1, q_mod = 1/2, n = 60: bound = 2 * 2^-60 / (1/2) = 2^-58
    CHECK(tail_bound(1.0, 0.5, 60) == doctest::Approx(std::ldexp(1.0, -58)));
    CHECK(tail_bound(0.0, 0.5, 0) == 0.0);
    // head term not below 1/2: the geometric comparison does not apply
    CHECK_THROWS_AS(tail_bound(1.0, 0.9, 0), BoundUnavailable);
    CHECK_THROWS_AS(tail_bound(8.0, 0.5, 3), BoundUnavailable);
}

TEST_CASE("terms_for_target achieves the requested tail") {
    TruncationPolicy policy;
    policy.target_abs_error = 1e-12;
    const long n = terms_for_target(1.5, 0.7, policy);
    CHECK(tail_bound(1.5, 0.7, n) <= policy.target_abs_error);
    CHECK(n > 0);
    // one term fewer must not suffice (n is the crossing point)
    if (n > 1) {
        bool looser = false;
        try {
            looser = tail_bound(1.5, 0.7, n - 1) > policy.target_abs_error;
        } catch (const BoundUnavailable&) {
            looser = true;
        }
        CHECK(looser);
    }
}

TEST_CASE("truncation budget is enforced") {
    TruncationPolicy tiny;
    tiny.target_abs_error = 1e-14;
    tiny.max_terms = 3;
    CHECK_THROWS_AS(pochhammer_inf(Complex(1.2, 0), Nome(Complex(0.9, 0)), tiny),
                    TruncationBudgetExceeded);
}

TEST_CASE("pochhammer converges in the small-q limit") {
    // as q -> 0, (a; q)_inf -> 1 - a
    const Complex a(0.3, 0);
    const Evaluated result = pochhammer_inf(a, Nome(Complex(1e-12, 0)));
    CHECK(close(result.value, Complex(0.7, 0), 1e-11));
}

TEST_CASE("partial products approach the infinite product") {
    const Complex a(1.1, -0.7);
    const Nome nome(Complex(0.4, 0.25));
    const Evaluated full = pochhammer_inf(a, nome);
    CHECK(close(pochhammer_n(a, nome, 60), full.value, 1e-13));
}
