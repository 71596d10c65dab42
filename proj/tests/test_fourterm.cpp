#include "doctest.h"

#include <cmath>

#include "qtheta/errors.hpp"
#include "qtheta/identities.hpp"
#include "test_support.hpp"

using namespace qtheta;
using qtheta::test::close;

namespace {

const Nome kNome(Complex(0.27, -0.31));
const TruncationPolicy kPolicy;

bool small(const ResidualValue& rv, Real tol = 1e-12) {
    return std::abs(rv.residual) <= tol * rv.scale;
}

} // namespace

TEST_CASE("slater four-term identity holds at generic points") {
    CHECK(small(residual_slater_43(Complex(1.2, 0.3), Complex(0.7, -0.4), Complex(1.5, 0.1),
                                   Complex(0.9, 0.6), Complex(-0.8, 0.2), Complex(1.1, -0.5),
                                   kNome, kPolicy)));
    CHECK(small(residual_slater_43(Complex(0.6, -0.7), Complex(1.4, 0.2), Complex(0.95, 0.45),
                                   Complex(-1.2, 0.1), Complex(0.85, -0.3), Complex(0.5, 0.65),
                                   Nome(Complex(0.55, 0.2)), kPolicy)));
}

TEST_CASE("slater identity fails with the widely reprinted bare-h coefficient") {
    // The corrected last term carries b*h.  Rebuilding the sum with a bare h
    // coefficient leaves an O(1) normalized residual, which is how the
    // correction was pinned down in the first place.
    const Complex b(1.2, 0.3), c(0.7, -0.4), d(1.5, 0.1), e(0.9, 0.6), f(-0.8, 0.2),
        g(1.1, -0.5);
    const Complex q = kNome.q();
    const Complex h = q * q / (b * c * d * e * f * g);
    const auto th = [&](std::initializer_list<Complex> ws) {
        return theta_multi(ws, kNome, kPolicy).value;
    };
    const Complex t1 = b * th({c * b, d * b, e * b, f * b, g, h, g / h});
    const Complex t2 = -b * th({c * h, d * h, e * h, f * h, b, g, g / b});
    const Complex t3 = -g * th({c * g, d * g, e * g, f * g, b, h, b / h});
    const Complex t4 = th({c, d, e, f, b / h, g / h, g / b});

    const Real scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
    const Complex corrected = t1 + t2 + t3 + b * h * t4;
    const Complex printed = t1 + t2 + t3 + h * t4;
    CHECK(std::abs(corrected) <= 1e-12 * scale);
    CHECK(std::abs(printed) > 1e-3 * scale);
}

TEST_CASE("slater identity collapses termwise at b = g") {
    // b = g matches the first and third terms argument for argument and puts
    // the other two on the theta zero set
    const Complex b(1.2, 0.3), c(0.7, -0.4), d(1.5, 0.1), e(0.9, 0.6), f(-0.8, 0.2);
    const ResidualValue rv = residual_slater_43(b, c, d, e, f, b, kNome, kPolicy);
    CHECK(std::abs(rv.residual) == 0.0);
}

TEST_CASE("bailey four-term identity holds at generic points") {
    CHECK(small(residual_bailey_42(Complex(1.3, 0.4), Complex(0.8, -0.3), Complex(1.1, 0.25),
                                   Complex(0.65, 0.5), Complex(-0.9, 0.15), Complex(1.25, -0.45),
                                   kNome, kPolicy)));
    CHECK(small(residual_bailey_42(Complex(-1.1, 0.2), Complex(0.75, 0.55), Complex(1.35, -0.15),
                                   Complex(0.6, -0.6), Complex(1.05, 0.35), Complex(0.9, 0.1),
                                   Nome(Complex(0.4, 0.38)), kPolicy)));
}

TEST_CASE("bailey identity survives the ef = a degeneration") {
    // ef = a puts a/(ef) on the theta zero set and drops the third term
    const Complex a(1.3, 0.4), b(0.8, -0.3), c(1.1, 0.25), d(0.65, 0.5), e(-0.9, 0.15);
    const Complex f = a / e;
    CHECK(small(residual_bailey_42(a, b, c, d, e, f, kNome, kPolicy)));
}

TEST_CASE("n-term sum vanishes for n = 2 by the inversion antisymmetry") {
    const Complex a[] = {Complex(1.3, 0.2), Complex(0.7, -0.6)};
    const Complex b[] = {Complex(1.05, 0.4)};
    CHECK(small(residual_an_identity(a, b, kNome, kPolicy), 1e-13));
}

TEST_CASE("n-term sum vanishes for n = 3, 4, 5") {
    const Complex a[] = {Complex(1.2, 0.3), Complex(0.8, -0.5), Complex(-1.05, 0.2),
                         Complex(0.65, 0.45), Complex(1.4, -0.15)};
    const Complex b[] = {Complex(0.9, 0.25), Complex(1.15, -0.35), Complex(0.7, 0.5),
                         Complex(-0.85, 0.1)};
    for (std::size_t n = 3; n <= 5; ++n)
        CHECK(small(residual_an_identity(std::span(a).first(n), std::span(b).first(n - 1), kNome,
                                         kPolicy)));
}

TEST_CASE("n-term sum validates its parameter counts") {
    const Complex a[] = {Complex(1.2, 0.3)};
    const Complex b[] = {Complex(0.9, 0.25)};
    CHECK_THROWS_AS(residual_an_identity(std::span(a).first(1), std::span(b).first(0), kNome,
                                         kPolicy),
                    std::domain_error);
    CHECK_THROWS_AS(make_an_spec(1), std::domain_error);
}

TEST_CASE("n-term sum rejects denominators on the theta zero set") {
    // a2 = q a1 puts theta(a1/a2) at a lattice zero
    const Complex a1(1.3, 0.2);
    const Complex a[] = {a1, kNome.q() * a1, Complex(0.7, -0.6)};
    const Complex b[] = {Complex(1.05, 0.4), Complex(0.8, 0.3)};
    CHECK_THROWS_AS(residual_an_identity(a, b, kNome, kPolicy), DegenerateDenominator);
}

TEST_CASE("termwise n = 4 sum agrees with the general loop pointwise") {
    const Complex a1(1.25, 0.3), a2(0.8, -0.55), a3(-1.1, 0.25), a4(0.7, 0.5);
    const Complex b1(0.95, 0.2), b2(1.3, -0.3), b3(0.6, 0.45);
    const ResidualValue termwise =
        residual_four_a4(a1, a2, a3, a4, b1, b2, b3, kNome, kPolicy);
    CHECK(small(termwise));

    const Complex a[] = {a1, a2, a3, a4};
    const Complex b[] = {b1, b2, b3};
    const ResidualValue general = residual_an_identity(a, b, kNome, kPolicy);
    // independent code paths: residuals agree absolutely, scales relatively
    CHECK(std::abs(termwise.residual - general.residual) <= 1e-12);
    CHECK(std::abs(termwise.scale - general.scale) <= 1e-12 * general.scale);
}

TEST_CASE("an spec instances expose the right shape for n = 3 and n = 8") {
    const IdentitySpec three = make_an_spec(3);
    CHECK(three.id == "an");
    CHECK(three.arity() == 5);
    CHECK(three.derived_names == std::vector<std::string>{"b3"});

    const IdentitySpec eight = make_an_spec(8);
    CHECK(eight.arity() == 15);
    std::vector<Complex> params;
    for (int i = 0; i < 15; ++i)
        params.push_back(Complex(1.0 + 0.05 * i, 0.3 - 0.04 * i));
    const std::vector<Complex> completed = eight.complete(params, kNome);
    REQUIRE(completed.size() == 16);
    const ResidualValue rv = eight.residual(completed, kNome, kPolicy);
    CHECK(std::abs(rv.residual) <= 1e-11 * rv.scale);
}
