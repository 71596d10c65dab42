#ifndef QTHETA_ERRORS_HPP
#define QTHETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtheta {

// Truncation control could not meet the requested error target within the
// term budget.  Usually means |q| is too close to 1 for the budget.
class TruncationBudgetExceeded : public std::runtime_error {
public:
    explicit TruncationBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// The geometric tail bound is not valid yet at the requested term index
// (|a| q^n >= 1/2); the caller must raise n before asking for a bound.
class BoundUnavailable : public std::runtime_error {
public:
    explicit BoundUnavailable(const std::string& what) : std::runtime_error(what) {}
};

// theta(w_1,...,w_k) requires at least one argument; an empty product here
// is almost always a caller bug, so it is rejected rather than defined as 1.
class EmptyArgumentList : public std::runtime_error {
public:
    explicit EmptyArgumentList(const std::string& what) : std::runtime_error(what) {}
};

// Requested a relation line that the theta_a system catalog does not define.
class UnknownVariant : public std::runtime_error {
public:
    explicit UnknownVariant(const std::string& what) : std::runtime_error(what) {}
};

// A denominator theta factor is numerically too close to its zero set q^Z
// for the residual to be meaningful; the sampler should reject the point.
class DegenerateDenominator : public std::runtime_error {
public:
    explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

// The sampler failed to find an admissible parameter set within the
// configured resample budget.
class AdmissibilityExhausted : public std::runtime_error {
public:
    explicit AdmissibilityExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Registry lookup miss.
class UnknownIdentity : public std::runtime_error {
public:
    explicit UnknownIdentity(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qtheta

#endif // QTHETA_ERRORS_HPP
