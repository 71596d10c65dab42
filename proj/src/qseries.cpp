#include "qtheta/qseries.hpp"

#include <cmath>

namespace qtheta {

Real tail_bound(Real a_mod, Real q_mod, long n) {
    if (a_mod < Real(0) || q_mod < Real(0) || q_mod >= Real(1))
        throw std::domain_error("tail_bound needs a_mod >= 0 and 0 <= q_mod < 1");
    if (a_mod == Real(0))
        return Real(0);
    const Real head = a_mod * std::pow(q_mod, static_cast<Real>(n));
    if (head >= Real(0.5))
        throw BoundUnavailable("tail bound invalid while |a| q^n >= 1/2; raise n");
    return Real(2) * head / (Real(1) - q_mod);
}

long terms_for_target(Real a_mod, Real q_mod, const TruncationPolicy& policy) {
    if (a_mod == Real(0))
        return 0;
    // Solve 2 a q^n / (1-q) <= target and a q^n < 1/2 for the smaller n,
    // then nudge past any rounding slack in the closed form.
    const Real target = policy.target_abs_error;
    const Real lq = std::log(q_mod);
    const Real need = std::min(target * (Real(1) - q_mod) / Real(2), Real(0.499));
    Real n_est = (std::log(need) - std::log(a_mod)) / lq;
    long n = n_est <= Real(0) ? 0 : static_cast<long>(std::ceil(n_est));
    while (n <= policy.max_terms) {
        try {
            if (tail_bound(a_mod, q_mod, n) <= target)
                return n;
        } catch (const BoundUnavailable&) {
            // not in the valid regime yet
        }
        ++n;
    }
    throw TruncationBudgetExceeded("no truncation point within max_terms meets the error target");
}

Evaluated pochhammer_inf(Complex a, const Nome& nome, const TruncationPolicy& policy) {
    if (a == Complex(0))
        return {Complex(1), 0, Real(0)};
    const long n = terms_for_target(std::abs(a), nome.modulus(), policy);
    Complex product(1);
    Complex aj = a;
    for (long j = 0; j < n; ++j) {
        product *= Complex(1) - aj;
        aj *= nome.q();
    }
    // Tail contributes a relative factor within exp(b); rounding adds about
    // one ulp per factor.
    Real b = n == 0 ? policy.target_abs_error : tail_bound(std::abs(a), nome.modulus(), n);
    const Real rounding = static_cast<Real>(n + 2) * std::numeric_limits<Real>::epsilon();
    return {product, n, std::abs(product) * (b + b * b + rounding)};
}

Complex pochhammer_n(Complex a, const Nome& nome, long n) {
    if (n < 0)
        throw std::domain_error("pochhammer_n needs n >= 0");
    Complex product(1);
    Complex aj = a;
    for (long j = 0; j < n; ++j) {
        product *= Complex(1) - aj;
        aj *= nome.q();
    }
    return product;
}

} // namespace qtheta
