// The multiplicative theta function and the Jacobi theta family.
//
//     theta(w;q) := (w;q)_inf (q/w;q)_inf,    w != 0,  0 < |q| < 1,
//
// evaluated by two deliberately independent routes:
//
//   theta_product  -- reduces w into the annulus |q| < |w'| <= 1 with the
//                     quasi-periodicity law theta(q^k w) = (-1)^k
//                     q^(-k(k-1)/2) w^(-k) theta(w), then multiplies the two
//                     Pochhammer factors;
//   theta_series   -- sums the triple-product series
//                     theta(w;q) (q;q)_inf = SUM(k in Z) (-1)^k q^(k(k-1)/2) w^k
//                     directly at the given w, with no argument reduction.
//
// Disagreement between the two is the library's primary self-check.
//
// The series route is a bilateral sum of terms that can dwarf the result:
// for q near the positive real axis with |q| -> 0.9 the prefactor
// 1/(q;q)_inf exceeds 1e6, so ~6 digits cancel and binary64 cannot deliver
// the 1e-12 cross-representation agreement we promise.  The series is
// therefore summed in quad precision internally (the value still comes back
// as a binary64 Complex), and its cutoff targets the error of the delivered
// quotient, not of the raw sum: terms run until the tail is below
// target * (1-|q|) * min(1, |(q;q)_inf|).

#ifndef QTHETA_THETA_HPP
#define QTHETA_THETA_HPP

#include <span>
#include <vector>

#include "qtheta/qseries.hpp"

namespace qtheta {

// w factored as q^shift_k * reduced_w with |q| < |reduced_w| <= 1.  The
// shift exponent is what the quasi-periodicity coefficient is built from.
class ThetaArgument {
public:
    ThetaArgument(Complex w, const Nome& nome);

    Complex w() const { return w_; }
    Complex reduced_w() const { return reduced_w_; }
    long shift_k() const { return shift_k_; }
    // True when reduced_w is 1 to within a unit of roundoff, i.e. w lies on
    // the zero set q^Z of theta.
    bool at_zero() const { return at_zero_; }

private:
    Complex w_;
    Complex reduced_w_;
    long shift_k_ = 0;
    bool at_zero_ = false;
};

// Integer power q^k by binary exponentiation (exact operation count,
// no pow() branch cuts).
Complex power_int(Complex base, long k);

// theta(1/w) = invert_law(w) * theta(w).            [inversion law]
Complex invert_law(Complex w);

// theta(q^k w) = shift_law(w, nome, k) * theta(w).  [quasi-periodicity]
Complex shift_law(Complex w, const Nome& nome, long k);

// Product-representation evaluation.  Exact 0 when w sits on the zero set.
Evaluated theta_product(const ThetaArgument& w, const Nome& nome,
                        const TruncationPolicy& policy = {});
Evaluated theta_product(Complex w, const Nome& nome, const TruncationPolicy& policy = {});

// Series-representation evaluation (independent code path; see file top).
Evaluated theta_series(Complex w, const Nome& nome, const TruncationPolicy& policy = {});

// theta(w_1,...,w_k) := theta(w_1) ... theta(w_k).  Empty input is a bug,
// not an empty product.
Evaluated theta_multi(std::span<const Complex> ws, const Nome& nome,
                      const TruncationPolicy& policy = {});
Evaluated theta_multi(std::initializer_list<Complex> ws, const Nome& nome,
                      const TruncationPolicy& policy = {});

// ---------------------------------------------------------------------------
// Jacobi theta functions theta_a(z | tau), a = 1..4, via the dictionary
//
//   theta_1(z) =  i q^(1/4) (q^2;q^2)_inf e^(-pi i z) theta(e^(2 pi i z); q^2)
//   theta_2(z) =    q^(1/4) (q^2;q^2)_inf e^(-pi i z) theta(-e^(2 pi i z); q^2)
//   theta_3(z) =            (q^2;q^2)_inf            theta(-q e^(2 pi i z); q^2)
//   theta_4(z) =            (q^2;q^2)_inf            theta( q e^(2 pi i z); q^2)
//
// with q = exp(i pi tau), Im tau > 0.  The fractional power q^(1/4) is
// exp(i pi tau / 4), computed from tau directly so there is no branch choice
// hidden in a complex root.

struct AdditiveArgument {
    Complex z;
    Complex tau; // Im(tau) > 0 enforced by jacobi_theta

    // The induced nome exp(i pi tau).
    Complex nome_q() const;
};

Evaluated jacobi_theta(int a, const AdditiveArgument& arg, const TruncationPolicy& policy = {});

} // namespace qtheta

#endif // QTHETA_THETA_HPP
