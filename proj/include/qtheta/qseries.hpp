// q-Pochhammer building blocks with explicit truncation control.
//
// Everything in this library reduces to the infinite product
//
//     (a;q)_inf = PROD(j >= 0) (1 - a q^j),   0 < |q| < 1,
//
// truncated after N factors.  The neglected tail satisfies
//
//     | log PROD(j >= N) (1 - a q^j) |  <=  2 |a| |q|^N / (1 - |q|)
//
// as soon as |a| |q|^N < 1/2 (from |log(1-x)| <= 2|x| for |x| <= 1/2), so the
// truncation error is auditable and N can be chosen ahead of time.  All
// routines are pure functions; there is no shared state.

#ifndef QTHETA_QSERIES_HPP
#define QTHETA_QSERIES_HPP

#include <complex>
#include <limits>

#include "qtheta/errors.hpp"

namespace qtheta {

// Scalar contract.  The library computes in binary64 (>= 15 significant
// decimal digits) end to end; swap these aliases to rehost on a wider
// scalar -- everything downstream is written against them.
using Real = double;
using Complex = std::complex<Real>;

inline constexpr int kPrecisionDigits = std::numeric_limits<Real>::digits10;
static_assert(kPrecisionDigits >= 15, "scalar type narrower than the precision contract");

// Validated nome: 0 < |q| < 1, with the modulus cached because every
// truncation decision is a function of it.
class Nome {
public:
    explicit Nome(Complex q) : q_(q), modulus_(std::abs(q)) {
        if (!(modulus_ > Real(0)) || !(modulus_ < Real(1)))
            throw std::domain_error("nome must satisfy 0 < |q| < 1");
    }

    Complex q() const { return q_; }
    Real modulus() const { return modulus_; }

private:
    Complex q_;
    Real modulus_;
};

// How hard to try: target truncation error and the term budget.  The
// defaults leave several digits of headroom over the 1e-9 verification
// tolerance for every |q| <= 0.9.
struct TruncationPolicy {
    Real target_abs_error = 1e-14;
    long max_terms = 1'000'000;
};

// A value plus its truncation certificate: how many terms were spent and an
// absolute error bound on the result.
struct Evaluated {
    Complex value;
    long terms_used = 0;
    Real error_bound = 0;
};

// Upper bound on |log| of the tail PROD(j >= n) (1 - a q^j), monotone
// decreasing in n.  Throws BoundUnavailable while |a| |q|^n >= 1/2, where
// the bound is not yet valid.
Real tail_bound(Real a_mod, Real q_mod, long n);

// Smallest n with tail_bound(a_mod, q_mod, n) <= target, or
// TruncationBudgetExceeded if no n <= max_terms works.
long terms_for_target(Real a_mod, Real q_mod, const TruncationPolicy& policy);

// (a;q)_inf truncated per policy.  error_bound is absolute on .value.
Evaluated pochhammer_inf(Complex a, const Nome& nome, const TruncationPolicy& policy = {});

// Exact finite product (a;q)_n = PROD(j < n) (1 - a q^j); n = 0 gives 1.
Complex pochhammer_n(Complex a, const Nome& nome, long n);

} // namespace qtheta

#endif // QTHETA_QSERIES_HPP
