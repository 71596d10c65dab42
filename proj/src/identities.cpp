#include "qtheta/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qtheta {

namespace {

constexpr Real kPi = 3.14159265358979323846;

// Reject sampled points whose denominator thetas sit this close to the zero
// set q^Z, and points whose termwise scale has collapsed.
constexpr Real kDenominatorMargin = 1e-6;
constexpr Real kScaleFloor = 1e-8;

Complex th(std::initializer_list<Complex> ws, const Nome& nome, const TruncationPolicy& policy) {
    return theta_multi(ws, nome, policy).value;
}

// Accumulates coef * term pairs, tracking the termwise scale.
struct TermSum {
    Complex sum{0};
    Real scale{0};

    void add(Complex coef, Complex term) {
        const Complex weighted = coef * term;
        sum += weighted;
        scale = std::max(scale, std::abs(weighted));
    }

    ResidualValue value() const { return {sum, scale}; }
};

struct FValue {
    Complex value;
    Real scale;
};

FValue eval_f1(Complex x, Complex y, Complex u, Complex v, const Nome& nome,
               const TruncationPolicy& policy) {
    const Nome base2(nome.q() * nome.q());
    TermSum s;
    s.add(Complex(1), th({x * y, x / y, u * v, u / v}, base2, policy));
    s.add(Complex(-1), th({x * v, x / v, u * y, u / y}, base2, policy));
    s.add(-(u / y), th({y * v, y / v, x * u, x / u}, base2, policy));
    return {s.sum, s.scale};
}

FValue eval_f2(Complex x, Complex y, Complex u, Complex v, const Nome& nome,
               const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Nome base2(q * q);
    TermSum s;
    s.add(Complex(2), th({x * y, x / y, u * v, u / v}, base2, policy));
    s.add(Complex(-1), th({x * v, x / v, u * y, u / y}, base2, policy));
    s.add(Complex(-1), th({-x * v, -x / v, -u * y, -u / y}, base2, policy));
    s.add(-(x * u / q), th({q * x * v, q * x / v, q * u * y, q * u / y}, base2, policy));
    s.add(x * u / q, th({-q * x * v, -q * x / v, -q * u * y, -q * u / y}, base2, policy));
    return {s.sum, s.scale};
}

Complex jacobi(int a, Complex z, Complex tau, const TruncationPolicy& policy) {
    return jacobi_theta(a, {z, tau}, policy).value;
}

// [a] = theta_a(w) theta_a(x) theta_a(y) theta_a(z)
std::array<Complex, 4> theta_a_brackets(Complex w, Complex x, Complex y, Complex z, Complex tau,
                                        const TruncationPolicy& policy) {
    std::array<Complex, 4> brackets;
    for (int a = 1; a <= 4; ++a)
        brackets[a - 1] = jacobi(a, w, tau, policy) * jacobi(a, x, tau, policy)
                          * jacobi(a, y, tau, policy) * jacobi(a, z, tau, policy);
    return brackets;
}

// 2w' = -w+x+y+z and cyclic.
std::array<Complex, 4> half_sum_arguments(Complex w, Complex x, Complex y, Complex z) {
    const Complex s = w + x + y + z;
    return {s / Real(2) - w, s / Real(2) - x, s / Real(2) - y, s / Real(2) - z};
}

struct SystemRow {
    const char* name;
    int lhs[4]; // coefficients of [1]..[4]
    int rhs[4]; // coefficients of [1]'..[4]'
};

constexpr SystemRow kSystemRows[] = {
    {"2[1]", {2, 0, 0, 0}, {1, 1, -1, 1}},
    {"2[2]", {0, 2, 0, 0}, {1, 1, 1, -1}},
    {"2[3]", {0, 0, 2, 0}, {-1, 1, 1, 1}},
    {"2[4]", {0, 0, 0, 2}, {1, -1, 1, 1}},
    {"[1]+[2]", {1, 1, 0, 0}, {1, 1, 0, 0}},
    {"[1]+[3]", {1, 0, 1, 0}, {0, 1, 0, 1}},
    {"[1]+[4]", {1, 0, 0, 1}, {1, 0, 0, 1}},
    {"[1]-[2]", {1, -1, 0, 0}, {0, 0, -1, 1}},
    {"[1]-[3]", {1, 0, -1, 0}, {1, 0, -1, 0}},
    {"[1]-[4]", {1, 0, 0, -1}, {0, 1, -1, 0}},
};

ResidualValue apply_system_row(const SystemRow& row, const std::array<Complex, 4>& plain,
                               const std::array<Complex, 4>& primed) {
    TermSum s;
    for (int a = 0; a < 4; ++a) {
        if (row.lhs[a] != 0)
            s.add(Complex(row.lhs[a]), plain[a]);
        if (row.rhs[a] != 0)
            s.add(Complex(-row.rhs[a]), primed[a]);
    }
    return s.value();
}

} // namespace

ResidualValue residual_first_fundamental(Complex x, Complex y, Complex u, Complex v,
                                         const Nome& nome, const TruncationPolicy& policy) {
    const FValue f = eval_f1(x, y, u, v, nome, policy);
    return {f.value, f.scale};
}

ResidualValue residual_first_fundamental_theta1(Complex u, Complex u1, Complex u2, Complex u3,
                                                Complex tau, const TruncationPolicy& policy) {
    TermSum s;
    s.add(Complex(1), jacobi(1, u + u1, tau, policy) * jacobi(1, u - u1, tau, policy)
                          * jacobi(1, u2 + u3, tau, policy) * jacobi(1, u2 - u3, tau, policy));
    s.add(Complex(1), jacobi(1, u + u2, tau, policy) * jacobi(1, u - u2, tau, policy)
                          * jacobi(1, u3 + u1, tau, policy) * jacobi(1, u3 - u1, tau, policy));
    s.add(Complex(1), jacobi(1, u + u3, tau, policy) * jacobi(1, u - u3, tau, policy)
                          * jacobi(1, u1 + u2, tau, policy) * jacobi(1, u1 - u2, tau, policy));
    return s.value();
}

ResidualValue residual_homogeneous_29(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                                      const Nome& nome, const TruncationPolicy& policy) {
    const std::array<Complex, 3> a{a1, a2, a3};
    const std::array<Complex, 2> b{b1, b2};
    return residual_an_identity(a, b, nome, policy);
}

ResidualValue residual_difference_30(Complex x, Complex y, const Nome& nome,
                                     const TruncationPolicy& policy) {
    const Complex theta_x = theta_product(x, nome, policy).value;
    const Complex theta_y = theta_product(y, nome, policy).value;
    if (std::abs(theta_x) < kDenominatorMargin || std::abs(theta_y) < kDenominatorMargin)
        throw DegenerateDenominator("theta(x) or theta(y) too close to the zero set q^Z");
    const Complex theta_m1 = theta_product(Complex(-1), nome, policy).value;
    const Complex theta_mx = theta_product(-x, nome, policy).value;
    const Complex theta_my = theta_product(-y, nome, policy).value;

    const Complex lhs = y * th({x * y, x / y}, nome, policy) / (theta_x * theta_x * theta_y * theta_y);
    const Complex f_y = theta_my * theta_my / (theta_m1 * theta_m1 * theta_y * theta_y);
    const Complex f_x = theta_mx * theta_mx / (theta_m1 * theta_m1 * theta_x * theta_x);
    TermSum s;
    s.add(Complex(1), lhs);
    s.add(Complex(-1), f_y);
    s.add(Complex(1), f_x);
    return s.value();
}

ResidualValue residual_second_fundamental(Complex x, Complex y, Complex u, Complex v,
                                          const Nome& nome, const TruncationPolicy& policy) {
    const FValue f = eval_f2(x, y, u, v, nome, policy);
    return {f.value, f.scale};
}

ResidualValue residual_second_fundamental_additive(Complex w, Complex x, Complex y, Complex z,
                                                   Complex tau, const TruncationPolicy& policy) {
    const auto primes = half_sum_arguments(w, x, y, z);
    const auto plain = theta_a_brackets(w, x, y, z, tau, policy);
    const auto primed = theta_a_brackets(primes[0], primes[1], primes[2], primes[3], tau, policy);
    return apply_system_row(kSystemRows[0], plain, primed); // 2[1] = [1]'+[2]'-[3]'+[4]'
}

ResidualValue residual_theta_a_system(const std::string& variant, Complex w, Complex x, Complex y,
                                      Complex z, Complex tau, const TruncationPolicy& policy) {
    for (const SystemRow& row : kSystemRows) {
        if (variant == row.name) {
            const auto primes = half_sum_arguments(w, x, y, z);
            const auto plain = theta_a_brackets(w, x, y, z, tau, policy);
            const auto primed =
                theta_a_brackets(primes[0], primes[1], primes[2], primes[3], tau, policy);
            return apply_system_row(row, plain, primed);
        }
    }
    throw UnknownVariant("no theta_a system line named '" + variant + "'");
}

const std::vector<std::string>& theta_a_pair_variants() {
    static const std::vector<std::string> names{"[1]+[2]", "[1]+[3]", "[1]+[4]",
                                                "[1]-[2]", "[1]-[3]", "[1]-[4]"};
    return names;
}

const std::vector<std::string>& theta_a_doubling_variants() {
    static const std::vector<std::string> names{"2[1]", "2[2]", "2[3]", "2[4]"};
    return names;
}

ResidualValue residual_equivalence_23(Complex x, Complex y, Complex u, Complex v, const Nome& nome,
                                      const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Complex xy = x * y;
    const FValue f_pp = eval_f1(x, y, u, v, nome, policy);
    const FValue f_mm = eval_f1(-x, y, -u, v, nome, policy);
    const FValue f_qp = eval_f1(q * x, q * y, u, v, nome, policy);
    const FValue f_qm = eval_f1(-q * x, q * y, -u, v, nome, policy);
    const FValue f_two = eval_f2(x, y, u, v, nome, policy);
    const Complex residual =
        f_pp.value + f_mm.value - xy * f_qp.value - xy * f_qm.value - f_two.value;
    const Real scale = std::max({f_pp.scale, f_mm.scale, std::abs(xy) * f_qp.scale,
                                 std::abs(xy) * f_qm.scale, f_two.scale});
    return {residual, scale};
}

ResidualValue residual_equivalence_25(Complex x, Complex y, Complex u, Complex v, const Nome& nome,
                                      const TruncationPolicy& policy) {
    const Complex coef = u / y;
    const FValue f_a = eval_f2(x, y, u, v, nome, policy);
    const FValue f_b = eval_f2(x, u, y, v, nome, policy);
    const FValue f_one = eval_f1(x, y, u, v, nome, policy);
    const Complex residual = f_a.value - coef * f_b.value - Real(2) * f_one.value;
    const Real scale =
        std::max({f_a.scale, std::abs(coef) * f_b.scale, Real(2) * f_one.scale});
    return {residual, scale};
}

ResidualValue residual_an_identity(std::span<const Complex> a, std::span<const Complex> b,
                                   const Nome& nome, const TruncationPolicy& policy) {
    const std::size_t n = a.size();
    if (n < 2)
        throw std::domain_error("the n-term identity needs at least two a-parameters");
    if (b.size() != n - 1)
        throw std::domain_error("expected one fewer b-parameter than a-parameters");

    std::vector<Complex> bs(b.begin(), b.end());
    Complex prod_a(1), prod_b(1);
    for (Complex ak : a)
        prod_a *= ak;
    for (Complex bk : bs)
        prod_b *= bk;
    bs.push_back(prod_a / prod_b); // side condition prod(a) = prod(b), solved

    TermSum s;
    for (std::size_t k = 0; k < n; ++k) {
        Complex numerator(1);
        for (Complex bj : bs)
            numerator *= theta_product(a[k] / bj, nome, policy).value;
        Complex denominator(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k)
                continue;
            const Complex factor = theta_product(a[k] / a[j], nome, policy).value;
            if (std::abs(factor) < kDenominatorMargin)
                throw DegenerateDenominator("theta(a_k/a_j) too close to the zero set q^Z");
            denominator *= factor;
        }
        s.add(Complex(1), numerator / denominator);
    }
    return s.value();
}

ResidualValue residual_slater_43(Complex b, Complex c, Complex d, Complex e, Complex f, Complex g,
                                 const Nome& nome, const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Complex h = q * q / (b * c * d * e * f * g);
    TermSum s;
    s.add(b, th({c * b, d * b, e * b, f * b, g, h, g / h}, nome, policy));
    s.add(-b, th({c * h, d * h, e * h, f * h, b, g, g / b}, nome, policy));
    s.add(-g, th({c * g, d * g, e * g, f * g, b, h, b / h}, nome, policy));
    s.add(b * h, th({c, d, e, f, b / h, g / h, g / b}, nome, policy));
    return s.value();
}

ResidualValue residual_bailey_42(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f,
                                 const Nome& nome, const TruncationPolicy& policy) {
    const Complex a2 = a * a;
    const Complex a3 = a2 * a;
    const Complex bcd = b * c * d;
    const Complex bcdef = bcd * e * f;
    TermSum s;
    s.add(Complex(1),
          th({a / b, a / c, a / d, a / e, a / f, bcdef / a2, a2 / bcd}, nome, policy));
    s.add(Complex(-1), th({b, c, d, e, f, a3 / bcdef, a2 / bcd}, nome, policy));
    s.add(bcdef / a2,
          th({a, a / (e * f), a2 / (bcd * e), a2 / (bcd * f), a / b, a / c, a / d}, nome, policy));
    s.add(bcd / a,
          th({a, a / (c * d), a / (b * d), a / (b * c), e, f, a3 / bcdef}, nome, policy));
    return s.value();
}

ResidualValue residual_four_a4(Complex a1, Complex a2, Complex a3, Complex a4, Complex b1,
                               Complex b2, Complex b3, const Nome& nome,
                               const TruncationPolicy& policy) {
    const Complex b4 = a1 * a2 * a3 * a4 / (b1 * b2 * b3);
    const auto safe = [&](Complex ratio) {
        const Complex value = theta_product(ratio, nome, policy).value;
        if (std::abs(value) < kDenominatorMargin)
            throw DegenerateDenominator("theta(a_k/a_j) too close to the zero set q^Z");
        return value;
    };
    TermSum s;
    s.add(Complex(1), th({a1 / b1, a1 / b2, a1 / b3, a1 / b4}, nome, policy)
                          / (safe(a1 / a2) * safe(a1 / a3) * safe(a1 / a4)));
    s.add(Complex(1), th({a2 / b1, a2 / b2, a2 / b3, a2 / b4}, nome, policy)
                          / (safe(a2 / a1) * safe(a2 / a3) * safe(a2 / a4)));
    s.add(Complex(1), th({a3 / b1, a3 / b2, a3 / b3, a3 / b4}, nome, policy)
                          / (safe(a3 / a1) * safe(a3 / a2) * safe(a3 / a4)));
    s.add(Complex(1), th({a4 / b1, a4 / b2, a4 / b3, a4 / b4}, nome, policy)
                          / (safe(a4 / a1) * safe(a4 / a2) * safe(a4 / a3)));
    return s.value();
}

ResidualValue residual_square_link_20(Complex z, const Nome& nome, const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Nome base2(q * q);
    const auto sq = [](Complex t) { return t * t; };
    TermSum s;
    s.add(Complex(1), sq(th({q, q * z}, base2, policy)));
    s.add(Complex(-1), sq(th({-q, -q * z}, base2, policy)));
    s.add(q * z, sq(th({-q * q, -q * q * z}, base2, policy)));
    return s.value();
}

ResidualValue residual_quartic_nome_21(const Nome& nome, const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Nome base2(q * q);
    const auto fourth = [](Complex t) { return (t * t) * (t * t); };
    TermSum s;
    s.add(Complex(1), fourth(theta_product(q, base2, policy).value));
    s.add(Complex(-1), fourth(theta_product(-q, base2, policy).value));
    s.add(q, fourth(theta_product(-q * q, base2, policy).value));
    return s.value();
}

ResidualValue residual_degenerate_40(Complex z, const Nome& nome, const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Nome base2(q * q);
    const Complex zi2 = Complex(1) / (z * z);
    TermSum s;
    s.add(Complex(2), th({-zi2, zi2 / q, -q * zi2, z * z}, base2, policy));
    s.add(Complex(-1), th({Complex(-1), q, -Complex(1) / q, zi2 * zi2}, base2, policy));
    return s.value();
}

ResidualValue residual_theta_quartic(Complex z, Complex tau, const TruncationPolicy& policy) {
    const auto fourth = [](Complex t) { return (t * t) * (t * t); };
    TermSum s;
    s.add(Complex(1), fourth(jacobi(1, z, tau, policy)));
    s.add(Complex(1), fourth(jacobi(3, z, tau, policy)));
    s.add(Complex(-1), fourth(jacobi(2, z, tau, policy)));
    s.add(Complex(-1), fourth(jacobi(4, z, tau, policy)));
    return s.value();
}

ResidualValue baxter_numerator_zero_check(Complex y, Complex u, Complex v, long k, int sign,
                                          const Nome& nome, const TruncationPolicy& policy) {
    const Complex q = nome.q();
    const Nome base2(q * q);
    const Complex u_pm = sign >= 0 ? u : Complex(1) / u;
    const Complex x = power_int(q, 2 * k) * u_pm;
    TermSum s;
    s.add(y / v, th({x * y, x / y, v * u, v / u}, base2, policy));
    s.add(y / u, th({x * v, x / v, u * y, u / y}, base2, policy));
    return s.value();
}

Complex additive_from_multiplicative(Complex w) {
    return std::log(w) / Complex(0, 2 * kPi);
}

Complex tau_from_nome(const Nome& nome) {
    return std::log(nome.q()) / Complex(0, kPi);
}

// --- registry ----------------------------------------------------------------

namespace {

std::vector<ParamSlot> free_slots(std::initializer_list<const char*> names) {
    std::vector<ParamSlot> slots;
    for (const char* name : names)
        slots.push_back({name, ParamKind::FreeComplex, 0, 0});
    return slots;
}

std::vector<Complex> passthrough(std::span<const Complex> params, const Nome&) {
    return {params.begin(), params.end()};
}

// Uniform admissibility rule: the point is usable iff the residual is
// defined there (no denominator degeneracy) and its termwise scale has not
// collapsed.  Costs one extra evaluation per accepted trial, which the
// budgets absorb easily.
IdentitySpec make_spec(
    std::string id, std::initializer_list<const char*> names, std::string side_condition,
    std::string reference,
    std::function<ResidualValue(std::span<const Complex>, const Nome&, const TruncationPolicy&)>
        residual) {
    IdentitySpec spec;
    spec.id = std::move(id);
    spec.params = free_slots(names);
    spec.side_condition = std::move(side_condition);
    spec.reference = std::move(reference);
    spec.complete = passthrough;
    spec.residual = std::move(residual);
    auto residual_copy = spec.residual;
    spec.admissible = [residual_copy](std::span<const Complex> params, const Nome& nome) {
        try {
            return residual_copy(params, nome, TruncationPolicy{}).scale >= kScaleFloor;
        } catch (const DegenerateDenominator&) {
            return false;
        }
    };
    return spec;
}

std::vector<IdentitySpec> build_registry() {
    std::vector<IdentitySpec> registry;

    registry.push_back(make_spec(
        "ff-mult", {"x", "y", "u", "v"}, "",
        "Weierstrass three-term theta relation, multiplicative form",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_first_fundamental(p[0], p[1], p[2], p[3], nome, policy);
        }));

    registry.push_back(make_spec(
        "ff-theta1", {"u", "u1", "u2", "u3"}, "",
        "Weierstrass three-term relation in theta_1 form",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            const Complex tau = tau_from_nome(nome);
            return residual_first_fundamental_theta1(
                additive_from_multiplicative(p[0]), additive_from_multiplicative(p[1]),
                additive_from_multiplicative(p[2]), additive_from_multiplicative(p[3]), tau,
                policy);
        }));

    {
        IdentitySpec spec = make_spec(
            "ff-homog", {"a1", "a2", "a3", "b1", "b2"}, "a1a2a3 = b1b2b3 (b3 solved)",
            "three-term relation in homogeneous coordinates",
            [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
                return residual_homogeneous_29(p[0], p[1], p[2], p[3], p[4], nome, policy);
            });
        spec.derived_names = {"b3"};
        spec.complete = [](std::span<const Complex> p, const Nome&) {
            std::vector<Complex> out(p.begin(), p.end());
            out.push_back(p[0] * p[1] * p[2] / (p[3] * p[4]));
            return out;
        };
        registry.push_back(std::move(spec));
    }

    registry.push_back(make_spec(
        "ff-diff", {"x", "y"}, "",
        "difference form: y theta(xy,x/y)/(theta(x)^2 theta(y)^2) = f(y) - f(x)",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_difference_30(p[0], p[1], nome, policy);
        }));

    registry.push_back(make_spec(
        "sf-mult", {"x", "y", "u", "v"}, "",
        "Jacobi five-term relation (second fundamental identity), F2 form",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_second_fundamental(p[0], p[1], p[2], p[3], nome, policy);
        }));

    registry.push_back(make_spec(
        "sf-additive", {"w", "x", "y", "z"}, "",
        "five-term relation over theta_1..theta_4 at half-sum arguments",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            const Complex tau = tau_from_nome(nome);
            return residual_second_fundamental_additive(
                additive_from_multiplicative(p[0]), additive_from_multiplicative(p[1]),
                additive_from_multiplicative(p[2]), additive_from_multiplicative(p[3]), tau,
                policy);
        }));

    registry.push_back(make_spec(
        "sf-sys3", {"w", "x", "y", "z"}, "",
        "pairwise sum/difference system of theta_a products (worst of six lines)",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            const Complex tau = tau_from_nome(nome);
            const Complex zw = additive_from_multiplicative(p[0]);
            const Complex zx = additive_from_multiplicative(p[1]);
            const Complex zy = additive_from_multiplicative(p[2]);
            const Complex zz = additive_from_multiplicative(p[3]);
            ResidualValue worst{Complex(0), Real(1)};
            Real worst_normalized = -1;
            for (const std::string& variant : theta_a_pair_variants()) {
                const ResidualValue line = residual_theta_a_system(variant, zw, zx, zy, zz, tau, policy);
                const Real normalized = std::abs(line.residual) / line.scale;
                if (normalized > worst_normalized) {
                    worst_normalized = normalized;
                    worst = line;
                }
            }
            return worst;
        }));

    registry.push_back(make_spec(
        "sf-sys4", {"w", "x", "y", "z"}, "",
        "doubling system of theta_a products (worst of four lines)",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            const Complex tau = tau_from_nome(nome);
            const Complex zw = additive_from_multiplicative(p[0]);
            const Complex zx = additive_from_multiplicative(p[1]);
            const Complex zy = additive_from_multiplicative(p[2]);
            const Complex zz = additive_from_multiplicative(p[3]);
            ResidualValue worst{Complex(0), Real(1)};
            Real worst_normalized = -1;
            for (const std::string& variant : theta_a_doubling_variants()) {
                const ResidualValue line = residual_theta_a_system(variant, zw, zx, zy, zz, tau, policy);
                const Real normalized = std::abs(line.residual) / line.scale;
                if (normalized > worst_normalized) {
                    worst_normalized = normalized;
                    worst = line;
                }
            }
            return worst;
        }));

    registry.push_back(make_spec(
        "equiv-23", {"x", "y", "u", "v"}, "",
        "five-term relation assembled from four three-term relations",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_equivalence_23(p[0], p[1], p[2], p[3], nome, policy);
        }));

    registry.push_back(make_spec(
        "equiv-25", {"x", "y", "u", "v"}, "",
        "twice the three-term relation assembled from two five-term relations",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_equivalence_25(p[0], p[1], p[2], p[3], nome, policy);
        }));

    registry.push_back(make_an_spec(5));

    {
        IdentitySpec spec = make_spec(
            "four-slater", {"b", "c", "d", "e", "f", "g"}, "bcdefgh = q^2 (h solved)",
            "Slater's four-term identity (last coefficient corrected to b*h)",
            [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
                return residual_slater_43(p[0], p[1], p[2], p[3], p[4], p[5], nome, policy);
            });
        spec.derived_names = {"h"};
        spec.complete = [](std::span<const Complex> p, const Nome& nome) {
            std::vector<Complex> out(p.begin(), p.end());
            out.push_back(nome.q() * nome.q() / (p[0] * p[1] * p[2] * p[3] * p[4] * p[5]));
            return out;
        };
        registry.push_back(std::move(spec));
    }

    registry.push_back(make_spec(
        "four-bailey", {"a", "b", "c", "d", "e", "f"}, "",
        "Bailey-type four-term identity",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_bailey_42(p[0], p[1], p[2], p[3], p[4], p[5], nome, policy);
        }));

    {
        IdentitySpec spec = make_spec(
            "four-a4", {"a1", "a2", "a3", "a4", "b1", "b2", "b3"},
            "a1a2a3a4 = b1b2b3b4 (b4 solved)", "four-term n = 4 sum, written termwise",
            [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
                return residual_four_a4(p[0], p[1], p[2], p[3], p[4], p[5], p[6], nome, policy);
            });
        spec.derived_names = {"b4"};
        spec.complete = [](std::span<const Complex> p, const Nome&) {
            std::vector<Complex> out(p.begin(), p.end());
            out.push_back(p[0] * p[1] * p[2] * p[3] / (p[4] * p[5] * p[6]));
            return out;
        };
        registry.push_back(std::move(spec));
    }

    registry.push_back(make_spec(
        "sp-20", {"z"}, "",
        "squared-factor link between the theta(q;q^2) and theta(-q;q^2) families",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_square_link_20(p[0], nome, policy);
        }));

    registry.push_back(make_spec(
        "sp-21", {}, "", "quartic nome identity theta(q;q^2)^4 = theta(-q;q^2)^4 - q theta(-q^2;q^2)^4",
        [](std::span<const Complex>, const Nome& nome, const TruncationPolicy& policy) {
            return residual_quartic_nome_21(nome, policy);
        }));

    registry.push_back(make_spec(
        "sp-40", {"z"}, "", "degenerate two-term collapse of the five-term relation",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            return residual_degenerate_40(p[0], nome, policy);
        }));

    registry.push_back(make_spec(
        "sp-quartic", {"z"}, "", "theta_1^4 + theta_3^4 = theta_2^4 + theta_4^4",
        [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
            const Complex tau = tau_from_nome(nome);
            return residual_theta_quartic(additive_from_multiplicative(p[0]), tau, policy);
        }));

    {
        IdentitySpec spec = make_spec(
            "baxter-numerator", {"y", "u", "v"},
            "x = q^(2k) u^(sign), k in {-3..3}, sign in {+1,-1}",
            "numerator vanishing at the candidate zeros x = q^(2k) u^(+-1)",
            [](std::span<const Complex> p, const Nome& nome, const TruncationPolicy& policy) {
                const long k = std::lround(p[3].real());
                const int sign = p[4].real() >= 0 ? 1 : -1;
                return baxter_numerator_zero_check(p[0], p[1], p[2], k, sign, nome, policy);
            });
        spec.params.push_back({"k", ParamKind::IntegerInRange, -3, 3});
        spec.params.push_back({"sign", ParamKind::Sign, 0, 0});
        registry.push_back(std::move(spec));
    }

    return registry;
}

} // namespace

IdentitySpec make_an_spec(int n) {
    if (n < 2)
        throw std::domain_error("the n-term family needs n >= 2");
    IdentitySpec spec;
    spec.id = "an";
    for (int i = 1; i <= n; ++i)
        spec.params.push_back({"a" + std::to_string(i), ParamKind::FreeComplex, 0, 0});
    for (int i = 1; i < n; ++i)
        spec.params.push_back({"b" + std::to_string(i), ParamKind::FreeComplex, 0, 0});
    spec.derived_names = {"b" + std::to_string(n)};
    spec.side_condition = "a1...a" + std::to_string(n) + " = b1...b" + std::to_string(n) + " (b"
                          + std::to_string(n) + " solved)";
    spec.reference = "n-term theta sum (registered instance: n = " + std::to_string(n) + ")";
    const int count = n;
    spec.residual = [count](std::span<const Complex> p, const Nome& nome,
                            const TruncationPolicy& policy) {
        return residual_an_identity(p.subspan(0, count), p.subspan(count, count - 1), nome,
                                    policy);
    };
    spec.complete = [count](std::span<const Complex> p, const Nome&) {
        std::vector<Complex> out(p.begin(), p.end());
        Complex prod_a(1), prod_b(1);
        for (int i = 0; i < count; ++i)
            prod_a *= p[i];
        for (int i = count; i < 2 * count - 1; ++i)
            prod_b *= p[i];
        out.push_back(prod_a / prod_b);
        return out;
    };
    auto residual_copy = spec.residual;
    spec.admissible = [residual_copy](std::span<const Complex> params, const Nome& nome) {
        try {
            return residual_copy(params, nome, TruncationPolicy{}).scale >= kScaleFloor;
        } catch (const DegenerateDenominator&) {
            return false;
        }
    };
    return spec;
}

const std::vector<IdentitySpec>& identity_registry() {
    static const std::vector<IdentitySpec> registry = build_registry();
    return registry;
}

const IdentitySpec* find_identity(const std::string& id) {
    for (const IdentitySpec& spec : identity_registry())
        if (spec.id == id)
            return &spec;
    return nullptr;
}

const IdentitySpec& require_identity(const std::string& id) {
    const IdentitySpec* spec = find_identity(id);
    if (spec == nullptr)
        throw UnknownIdentity("no identity registered under '" + id + "'");
    return *spec;
}

} // namespace qtheta
