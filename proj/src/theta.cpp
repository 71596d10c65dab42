#include "qtheta/theta.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>

namespace qtheta {

namespace {

constexpr Real kPi = 3.14159265358979323846;

} // namespace

ThetaArgument::ThetaArgument(Complex w, const Nome& nome) : w_(w) {
    if (w == Complex(0))
        throw std::domain_error("theta argument w must be nonzero");
    const Real log_ratio = std::log(std::abs(w)) / std::log(nome.modulus());
    shift_k_ = static_cast<long>(std::floor(log_ratio));
    reduced_w_ = w * power_int(nome.q(), -shift_k_);
    // floor() can land one off when |w| sits on an annulus boundary ulp;
    // renormalize so that |q| < |reduced_w| <= 1 really holds.
    while (std::abs(reduced_w_) > Real(1)) {
        reduced_w_ *= nome.q();
        --shift_k_;
    }
    while (std::abs(reduced_w_) <= nome.modulus()) {
        reduced_w_ /= nome.q();
        ++shift_k_;
    }
    at_zero_ = std::abs(reduced_w_ - Complex(1)) <= Real(4) * std::numeric_limits<Real>::epsilon();
}

Complex power_int(Complex base, long k) {
    if (k < 0)
        return Complex(1) / power_int(base, -k);
    Complex result(1);
    Complex acc = base;
    for (long e = k; e > 0; e >>= 1) {
        if (e & 1)
            result *= acc;
        acc *= acc;
    }
    return result;
}

Complex invert_law(Complex w) {
    if (w == Complex(0))
        throw std::domain_error("theta argument w must be nonzero");
    return -Complex(1) / w;
}

Complex shift_law(Complex w, const Nome& nome, long k) {
    if (w == Complex(0))
        throw std::domain_error("theta argument w must be nonzero");
    // (-1)^k q^(-k(k-1)/2) w^(-k)
    const Complex sign = (k % 2 == 0) ? Complex(1) : Complex(-1);
    return sign * power_int(nome.q(), -(k * (k - 1)) / 2) * power_int(w, -k);
}

Evaluated theta_product(const ThetaArgument& w, const Nome& nome, const TruncationPolicy& policy) {
    if (w.at_zero())
        return {Complex(0), 0, Real(0)};
    const Complex coefficient = shift_law(w.reduced_w(), nome, w.shift_k());
    const Evaluated head = pochhammer_inf(w.reduced_w(), nome, policy);
    const Evaluated tail = pochhammer_inf(nome.q() / w.reduced_w(), nome, policy);
    const Complex value = coefficient * head.value * tail.value;
    Real relative = 0;
    if (head.value != Complex(0))
        relative += head.error_bound / std::abs(head.value);
    if (tail.value != Complex(0))
        relative += tail.error_bound / std::abs(tail.value);
    return {value, std::max(head.terms_used, tail.terms_used), std::abs(value) * relative};
}

Evaluated theta_product(Complex w, const Nome& nome, const TruncationPolicy& policy) {
    return theta_product(ThetaArgument(w, nome), nome, policy);
}

namespace {

using QuadComplex = boost::multiprecision::cpp_complex_quad;
using QuadReal = boost::multiprecision::cpp_bin_float_quad;

QuadComplex to_quad(Complex z) {
    return {QuadReal(z.real()), QuadReal(z.imag())};
}

Complex from_quad(const QuadComplex& z) {
    return {z.real().convert_to<Real>(), z.imag().convert_to<Real>()};
}

} // namespace

Evaluated theta_series(Complex w, const Nome& nome, const TruncationPolicy& policy) {
    if (w == Complex(0))
        throw std::domain_error("theta argument w must be nonzero");
    const Real q_mod = nome.modulus();
    const Real w_mod = std::abs(w);
    const Real big = std::max(w_mod, Real(1) / w_mod);

    // Prefactor (q;q)_inf, summed-product in quad with its own (generous)
    // truncation: |q|^n below quad roundoff of the running product.
    const QuadComplex q = to_quad(nome.q());
    QuadComplex prefactor(1);
    {
        QuadComplex qj = q;
        Real qj_mod = q_mod;
        long n = 0;
        while (qj_mod > 1e-36) {
            prefactor *= QuadComplex(1) - qj;
            qj *= q;
            qj_mod *= q_mod;
            if (++n > policy.max_terms)
                throw TruncationBudgetExceeded("(q;q)_inf prefactor exceeded max_terms");
        }
    }
    const Real prefactor_mod = std::abs(from_quad(prefactor));

    // Cutoff K for the bilateral sum: the term magnitude envelope
    // |q|^(K(K-1)/2) big^K must undercut the target scaled by (1-|q|)
    // (geometric tail) and by |(q;q)_inf| (the quotient amplifies the sum's
    // error by its reciprocal).  Selected in the log domain so extreme |w|
    // cannot overflow the envelope.
    const Real target = policy.target_abs_error * (Real(1) - q_mod) * std::min(Real(1), prefactor_mod);
    const Real log_q = std::log(q_mod);
    const Real log_big = std::log(big);
    const Real log_target = std::log(target);
    long cutoff = 1;
    while (static_cast<Real>(cutoff) * static_cast<Real>(cutoff - 1) / 2 * log_q
               + static_cast<Real>(cutoff) * log_big
           > log_target) {
        if (++cutoff > policy.max_terms)
            throw TruncationBudgetExceeded("series cutoff exceeded max_terms");
    }

    // Pair k with 1-k: term(k) + term(1-k) = (-1)^k q^(k(k-1)/2) (w^k - w^(1-k)),
    // which vanishes exactly at w = 1.  Recurrences only; no pow() calls.
    const QuadComplex wq = to_quad(w);
    const QuadComplex winv = QuadComplex(1) / wq;
    QuadComplex sum(0);
    QuadComplex qpow(1);          // q^(k(k-1)/2)
    QuadComplex qstep(1);         // q^(k-1)
    QuadComplex wk = wq;          // w^k
    QuadComplex w1k(1);           // w^(1-k)
    Real sign = -1;
    for (long k = 1; k <= cutoff; ++k) {
        sum += QuadReal(sign) * qpow * (wk - w1k);
        qstep *= q;               // now q^k
        qpow *= qstep;            // now q^(k(k+1)/2)
        wk *= wq;
        w1k *= winv;
        sign = -sign;
    }

    const QuadComplex quotient = sum / prefactor;
    const Complex value = from_quad(quotient);
    // Tail of the raw sum, divided back out by the prefactor; quad roundoff
    // is negligible against it.
    const Real log_tail = std::log(Real(2)) - std::log1p(-q_mod)
                          + static_cast<Real>(cutoff) * static_cast<Real>(cutoff + 1) / 2 * log_q
                          + static_cast<Real>(cutoff + 1) * log_big;
    const Real tail = log_tail < Real(-700) ? Real(0) : std::exp(log_tail);
    return {value, 2 * cutoff, tail / prefactor_mod + std::abs(value) * Real(1e-30)};
}

Evaluated theta_multi(std::span<const Complex> ws, const Nome& nome, const TruncationPolicy& policy) {
    if (ws.empty())
        throw EmptyArgumentList("theta_multi needs at least one argument");
    Evaluated result{Complex(1), 0, Real(0)};
    Real relative = 0;
    for (Complex w : ws) {
        const Evaluated factor = theta_product(w, nome, policy);
        result.value *= factor.value;
        result.terms_used = std::max(result.terms_used, factor.terms_used);
        if (factor.value == Complex(0)) {
            relative = 0;
            result.value = Complex(0);
            break;
        }
        relative += factor.error_bound / std::abs(factor.value);
    }
    result.error_bound = std::abs(result.value) * relative;
    return result;
}

Evaluated theta_multi(std::initializer_list<Complex> ws, const Nome& nome,
                      const TruncationPolicy& policy) {
    return theta_multi(std::span<const Complex>(ws.begin(), ws.size()), nome, policy);
}

Complex AdditiveArgument::nome_q() const {
    return std::exp(Complex(0, kPi) * tau);
}

Evaluated jacobi_theta(int a, const AdditiveArgument& arg, const TruncationPolicy& policy) {
    if (!(arg.tau.imag() > Real(0)))
        throw std::domain_error("jacobi_theta needs Im(tau) > 0");
    const Complex q = arg.nome_q();
    const Nome nome2(q * q);
    const Complex phase = std::exp(Complex(0, 2) * kPi * arg.z);
    const Evaluated euler = pochhammer_inf(q * q, nome2, policy);

    Complex prefactor;
    Complex w;
    switch (a) {
    case 1:
        prefactor = Complex(0, 1) * std::exp(Complex(0, kPi / 4) * arg.tau)
                    * std::exp(Complex(0, -kPi) * arg.z);
        w = phase;
        break;
    case 2:
        prefactor = std::exp(Complex(0, kPi / 4) * arg.tau) * std::exp(Complex(0, -kPi) * arg.z);
        w = -phase;
        break;
    case 3:
        prefactor = Complex(1);
        w = -q * phase;
        break;
    case 4:
        prefactor = Complex(1);
        w = q * phase;
        break;
    default:
        throw std::domain_error("jacobi_theta index must be 1, 2, 3 or 4");
    }

    const Evaluated theta = theta_product(w, nome2, policy);
    const Complex value = prefactor * euler.value * theta.value;
    Real relative = 0;
    if (euler.value != Complex(0))
        relative += euler.error_bound / std::abs(euler.value);
    if (theta.value != Complex(0))
        relative += theta.error_bound / std::abs(theta.value);
    return {value, std::max(euler.terms_used, theta.terms_used), std::abs(value) * relative};
}

} // namespace qtheta
