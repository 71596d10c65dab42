#include "doctest.h"

#include <cmath>

#include "qtheta/errors.hpp"
#include "qtheta/identities.hpp"
#include "test_support.hpp"

using namespace qtheta;
using qtheta::test::close;

namespace {

const Nome kNome(Complex(0.32, 0.29));
const TruncationPolicy kPolicy;

bool small(const ResidualValue& rv, Real tol = 1e-12) {
    return std::abs(rv.residual) <= tol * rv.scale;
}

} // namespace

TEST_CASE("three-term relation holds at a generic point") {
    const ResidualValue rv = residual_first_fundamental(Complex(1.3, -0.4), Complex(0.8, 0.35),
                                                        Complex(-0.6, 0.9), Complex(1.1, 0.2),
                                                        kNome, kPolicy);
    CHECK(small(rv));
    CHECK(rv.scale > 0);
}

TEST_CASE("three-term relation collapses termwise at u = y") {
    // u = y makes the middle term vanish on the theta zero set and the two
    // outer terms coincide, so the residual is zero to rounding.
    const Complex x(1.2, 0.3), y(0.7, -0.5), v(1.4, 0.1);
    const ResidualValue rv = residual_first_fundamental(x, y, y, v, kNome, kPolicy);
    CHECK(small(rv, 1e-13));
}

TEST_CASE("three-term relation in theta_1 form holds at a generic point") {
    const ResidualValue rv = residual_first_fundamental_theta1(
        Complex(0.31, 0.07), Complex(-0.12, 0.22), Complex(0.4, -0.1), Complex(0.05, 0.18),
        Complex(0.25, 0.8), kPolicy);
    CHECK(small(rv));
}

TEST_CASE("homogeneous three-term form delegates to the n-term sum") {
    const Complex a1(1.4, 0.2), a2(0.6, -0.7), a3(-1.1, 0.4), b1(0.9, 0.3), b2(1.2, -0.25);
    const ResidualValue direct = residual_homogeneous_29(a1, a2, a3, b1, b2, kNome, kPolicy);
    CHECK(small(direct));
    const Complex a[] = {a1, a2, a3};
    const Complex b[] = {b1, b2};
    const ResidualValue general = residual_an_identity(a, b, kNome, kPolicy);
    CHECK(direct.residual == general.residual);
    CHECK(direct.scale == general.scale);
}

TEST_CASE("difference form holds and matches the three-term specialization") {
    // With u = -1, v = 1 the three-term relation divided by
    // theta(-1)^2 theta(x)^2 theta(y)^2 / y is exactly the difference form.
    const Complex s(0.4, 0.25); // theta base for the three-term side
    const Nome nome_s(s);
    const Nome nome_q(s * s); // the difference form lives at q = s^2
    const Complex x(1.25, -0.3), y(0.85, 0.4);

    const ResidualValue diff = residual_difference_30(x, y, nome_q, kPolicy);
    CHECK(small(diff));

    const ResidualValue three =
        residual_first_fundamental(x, y, Complex(-1, 0), Complex(1, 0), nome_s, kPolicy);
    const Complex theta_m1 = theta_product(Complex(-1, 0), nome_q, kPolicy).value;
    const Complex theta_x = theta_product(x, nome_q, kPolicy).value;
    const Complex theta_y = theta_product(y, nome_q, kPolicy).value;
    const Complex bridge = theta_m1 * theta_m1 * theta_x * theta_x * theta_y * theta_y / y;
    CHECK(std::abs(three.residual - diff.residual * bridge) <= 1e-10 * three.scale);
}

TEST_CASE("difference form rejects arguments on the theta zero set") {
    CHECK_THROWS_AS(residual_difference_30(kNome.q(), Complex(0.8, 0.1), kNome, kPolicy),
                    DegenerateDenominator);
}

TEST_CASE("five-term relation holds at a generic point") {
    const ResidualValue rv = residual_second_fundamental(Complex(0.9, 0.6), Complex(1.3, -0.2),
                                                         Complex(-0.75, 0.5), Complex(0.6, 0.8),
                                                         kNome, kPolicy);
    CHECK(small(rv));
}

TEST_CASE("five-term relation in additive form holds at a generic point") {
    const ResidualValue rv = residual_second_fundamental_additive(
        Complex(0.21, 0.05), Complex(-0.33, 0.14), Complex(0.08, -0.26), Complex(0.4, 0.11),
        Complex(0.3, 0.85), kPolicy);
    CHECK(small(rv));
}

TEST_CASE("all ten theta_a system lines hold at a generic point") {
    const Complex w(0.17, 0.09), x(-0.28, 0.21), y(0.35, -0.12), z(0.06, 0.3);
    const Complex tau(-0.15, 0.7);
    CHECK(theta_a_doubling_variants().size() == 4);
    CHECK(theta_a_pair_variants().size() == 6);
    for (const std::string& variant : theta_a_doubling_variants())
        CHECK(small(residual_theta_a_system(variant, w, x, y, z, tau, kPolicy)));
    for (const std::string& variant : theta_a_pair_variants())
        CHECK(small(residual_theta_a_system(variant, w, x, y, z, tau, kPolicy)));
}

TEST_CASE("unknown theta_a system lines are rejected") {
    CHECK_THROWS_AS(residual_theta_a_system("2[5]", Complex(0.1, 0), Complex(0.2, 0),
                                            Complex(0.3, 0), Complex(0.4, 0), Complex(0, 1),
                                            kPolicy),
                    UnknownVariant);
}

TEST_CASE("four three-term relations assemble into the five-term relation") {
    const ResidualValue rv = residual_equivalence_23(Complex(1.1, 0.4), Complex(0.75, -0.3),
                                                     Complex(-0.9, 0.2), Complex(1.3, 0.5),
                                                     kNome, kPolicy);
    CHECK(small(rv));
}

TEST_CASE("two five-term relations assemble into twice the three-term relation") {
    const ResidualValue rv = residual_equivalence_25(Complex(1.1, 0.4), Complex(0.75, -0.3),
                                                     Complex(-0.9, 0.2), Complex(1.3, 0.5),
                                                     kNome, kPolicy);
    CHECK(small(rv));
}

TEST_CASE("five-minus-five combination collapses termwise at u = y") {
    // at u = y the two five-term evaluations coincide and the three-term
    // residual loses its middle term
    const Complex x(1.2, 0.3), y(0.7, -0.5), v(1.4, 0.1);
    CHECK(small(residual_equivalence_25(x, y, y, v, kNome, kPolicy), 1e-13));
}

TEST_CASE("squared-factor link holds for generic z and reduces to the quartic at z = 1") {
    const ResidualValue generic = residual_square_link_20(Complex(1.6, -0.7), kNome, kPolicy);
    CHECK(small(generic));
    const ResidualValue at_one = residual_square_link_20(Complex(1, 0), kNome, kPolicy);
    const ResidualValue quartic = residual_quartic_nome_21(kNome, kPolicy);
    CHECK(close(at_one.residual, quartic.residual, 1e-15));
    CHECK(at_one.scale == doctest::Approx(quartic.scale));
}

TEST_CASE("quartic nome identity holds across the disk") {
    for (Complex q : {Complex(0.05, 0), Complex(0.6, 0.5), Complex(-0.2, -0.73), Complex(0.89, 0)})
        CHECK(small(residual_quartic_nome_21(Nome(q), kPolicy)));
}

TEST_CASE("degenerate collapse of the five-term relation") {
    CHECK(small(residual_degenerate_40(Complex(1.35, 0.55), kNome, kPolicy)));
}

TEST_CASE("raw five-term form degenerates to the two-term collapse") {
    // The unsymmetrized five-term relation at
    // (w, x, y, z) = (i/z0, 1/(sqrt(q) z0), -i sqrt(q)/z0, z0)
    // loses three of its five terms; what survives is the two-term collapse.
    const Real q = 0.3;
    const Nome nome(Complex(q, 0));
    const Nome nome2(Complex(q * q, 0));
    const Complex z0(1.2, 0.45);
    const Real sq = std::sqrt(q);
    const Complex w = Complex(0, 1) / z0;
    const Complex x = Complex(1 / sq, 0) / z0;
    const Complex y = Complex(0, -sq) / z0;
    const Complex z = z0;

    const auto raw16 = [&](Complex a, Complex b, Complex c, Complex d) {
        const Complex ap = b * c * d / a, bp = a * c * d / b, cp = a * b * d / c,
                      dp = a * b * c / d;
        const Complex lhs =
            Real(2) * theta_multi({a * a, b * b, c * c, d * d}, nome2, kPolicy).value;
        const Complex rhs =
            theta_multi({ap, bp, cp, dp}, nome2, kPolicy).value
            + theta_multi({-ap, -bp, -cp, -dp}, nome2, kPolicy).value
            + a * b * c * d / Complex(q, 0)
                  * (theta_multi({q * ap, q * bp, q * cp, q * dp}, nome2, kPolicy).value
                     - theta_multi({-q * ap, -q * bp, -q * cp, -q * dp}, nome2, kPolicy).value);
        return lhs - rhs;
    };

    // generic point first
    CHECK(std::abs(raw16(Complex(1.1, 0.2), Complex(0.8, -0.3), Complex(1.3, 0.1),
                         Complex(0.7, 0.4)))
          <= 1e-12);
    // degenerate point
    CHECK(std::abs(raw16(w, x, y, z)) <= 1e-12);
    // its surviving doubled term is the left side of the two-term collapse
    const Complex doubled = Real(2) * theta_multi({w * w, x * x, y * y, z * z}, nome2, kPolicy).value;
    const Complex zi2 = Complex(1) / (z0 * z0);
    const Complex collapse_lhs =
        Real(2)
        * theta_multi({-zi2, zi2 / Complex(q, 0), -Complex(q, 0) * zi2, z0 * z0}, nome2, kPolicy)
              .value;
    CHECK(close(doubled, collapse_lhs, 1e-13));
    CHECK(small(residual_degenerate_40(z0, nome, kPolicy)));
}

TEST_CASE("theta power identity theta_1^4 + theta_3^4 = theta_2^4 + theta_4^4") {
    CHECK(small(residual_theta_quartic(Complex(0.23, -0.11), Complex(0.2, 0.75), kPolicy)));
    CHECK(small(residual_theta_quartic(Complex(-0.4, 0.3), Complex(-0.1, 1.2), kPolicy)));
}

TEST_CASE("product-side numerator vanishes at every candidate zero") {
    const Complex y(1.15, 0.35), u(0.8, -0.45), v(1.3, 0.25);
    for (long k = -3; k <= 3; ++k)
        for (int sign : {+1, -1})
            CHECK(small(baxter_numerator_zero_check(y, u, v, k, sign, kNome, kPolicy), 1e-11));
}

TEST_CASE("numerator collapses termwise at u = v") {
    const Complex y(1.15, 0.35), u(0.8, -0.45);
    const ResidualValue rv = baxter_numerator_zero_check(y, u, u, 2, +1, kNome, kPolicy);
    CHECK(small(rv, 1e-13));
}

TEST_CASE("registry exposes all nineteen identities with callable closures") {
    CHECK(identity_registry().size() == 19);
    CHECK(find_identity("no-such-identity") == nullptr);
    CHECK_THROWS_AS(require_identity("no-such-identity"), UnknownIdentity);

    const IdentitySpec& ff = require_identity("ff-mult");
    CHECK(ff.arity() == 4);
    const Complex params[] = {Complex(1.3, -0.4), Complex(0.8, 0.35), Complex(-0.6, 0.9),
                              Complex(1.1, 0.2)};
    const std::vector<Complex> completed = ff.complete(params, kNome);
    CHECK(completed.size() == 4);
    CHECK(ff.admissible(completed, kNome));
    CHECK(small(ff.residual(completed, kNome, kPolicy)));
}

TEST_CASE("registry closures solve side conditions exactly") {
    const IdentitySpec& an = require_identity("an");
    CHECK(an.arity() == 9);
    CHECK(an.derived_names == std::vector<std::string>{"b5"});
    std::vector<Complex> params;
    for (int i = 0; i < 9; ++i)
        params.push_back(Complex(1.0 + 0.1 * i, 0.2 - 0.05 * i));
    const std::vector<Complex> completed = an.complete(params, kNome);
    REQUIRE(completed.size() == 10);
    Complex prod_a(1), prod_b(1);
    for (int i = 0; i < 5; ++i)
        prod_a *= completed[i];
    for (int i = 5; i < 10; ++i)
        prod_b *= completed[i];
    CHECK(close(prod_a, prod_b, 1e-14));

    const IdentitySpec& slater = require_identity("four-slater");
    const std::vector<Complex> sl_params(6, Complex(0.9, 0.1));
    const std::vector<Complex> sl_completed = slater.complete(sl_params, kNome);
    REQUIRE(sl_completed.size() == 7);
    Complex prod(1);
    for (Complex p : sl_completed)
        prod *= p;
    CHECK(close(prod, kNome.q() * kNome.q(), 1e-14));
}

TEST_CASE("plane conversions invert each other") {
    const Complex w(1.3, -0.55);
    const Complex z = additive_from_multiplicative(w);
    CHECK(close(std::exp(Complex(0, 2 * std::acos(-1.0)) * z), w, 1e-14));
    const Complex tau = tau_from_nome(kNome);
    CHECK(tau.imag() > 0);
    CHECK(close(std::exp(Complex(0, std::acos(-1.0)) * tau), kNome.q(), 1e-14));
}
