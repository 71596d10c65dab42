// The identity catalog: every displayed theta identity compiled into a
// residual functional.
//
// Each residual returns the identity's left side minus its right side (or
// the stated zero-sum) together with a scale: the maximum modulus of the
// individual terms entering the sum.  "The identity holds" then means
// |residual| <= tolerance * scale on admissible parameters, a statement
// that stays meaningful whether the terms are 1e-8 or 1e+8.
//
// Side conditions are satisfied by construction: the dependent parameter
// (b3, b_n, h, ...) is solved for exactly and never sampled, so no
// floating-point drift in the condition can contaminate a residual.
//
// Base-q conventions follow the source relations: the three- and five-term
// families couple theta(.;q^2) factors to a nome q, while the A_{n-1}
// family and the four-term identities live at base q itself.

#ifndef QTHETA_IDENTITIES_HPP
#define QTHETA_IDENTITIES_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qtheta/theta.hpp"

namespace qtheta {

// Residual plus the termwise scale it should be judged against.
struct ResidualValue {
    Complex residual;
    Real scale;
};

// How the sampler should draw one parameter.
enum class ParamKind {
    FreeComplex,    // log-uniform modulus, uniform phase
    IntegerInRange, // uniform integer in [lo, hi], stored as a real Complex
    Sign            // +1 or -1, stored as a real Complex
};

struct ParamSlot {
    std::string name;
    ParamKind kind = ParamKind::FreeComplex;
    int lo = 0;
    int hi = 0;
};

// A registered identity: parameter schema, side-condition solver,
// admissibility predicate, and the residual functional itself.
// `complete` appends the solved dependent parameters to the free ones;
// `admissible` and `residual` always receive the completed vector.
struct IdentitySpec {
    std::string id;
    std::vector<ParamSlot> params;
    std::vector<std::string> derived_names;
    std::string side_condition; // human-readable; empty if none
    std::string reference;      // classical attribution, for `list`
    std::function<std::vector<Complex>(std::span<const Complex>, const Nome&)> complete;
    std::function<bool(std::span<const Complex>, const Nome&)> admissible;
    std::function<ResidualValue(std::span<const Complex>, const Nome&, const TruncationPolicy&)>
        residual;

    int arity() const { return static_cast<int>(params.size()); }
};

// --- three-term (Weierstrass) family ---------------------------------------

// F1(x,y,u,v;q) = theta(xy,x/y,uv,u/v;q^2) - theta(xv,x/v,uy,u/y;q^2)
//                 - (u/y) theta(yv,y/v,xu,x/u;q^2)
ResidualValue residual_first_fundamental(Complex x, Complex y, Complex u, Complex v,
                                         const Nome& nome, const TruncationPolicy& policy = {});

// theta_1(u+u1)theta_1(u-u1)theta_1(u2+u3)theta_1(u2-u3) + (cyclic in 1,2,3) = 0
ResidualValue residual_first_fundamental_theta1(Complex u, Complex u1, Complex u2, Complex u3,
                                                Complex tau, const TruncationPolicy& policy = {});

// SUM(k) theta(a_k/b_1, a_k/b_2, a_k/b_3) / PROD(j != k) theta(a_k/a_j) = 0
// under a1 a2 a3 = b1 b2 b3 (b3 solved).
ResidualValue residual_homogeneous_29(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                                      const Nome& nome, const TruncationPolicy& policy = {});

// y theta(xy, x/y) / (theta(x)^2 theta(y)^2) = f(y) - f(x) with
// f(x) = theta(-x)^2 / (theta(-1)^2 theta(x)^2).
ResidualValue residual_difference_30(Complex x, Complex y, const Nome& nome,
                                     const TruncationPolicy& policy = {});

// --- five-term (Jacobi) family ----------------------------------------------

// F2(x,y,u,v;q): the five-term combination
//   2 theta(xy,x/y,uv,u/v) - theta(xv,x/v,uy,u/y) - theta(-xv,-x/v,-uy,-u/y)
//   - (xu/q) [theta(q xv, q x/v, q uy, q u/y) - theta(-q xv, -q x/v, -q uy, -q u/y)]
// (all factors at base q^2).
ResidualValue residual_second_fundamental(Complex x, Complex y, Complex u, Complex v,
                                          const Nome& nome, const TruncationPolicy& policy = {});

// 2 theta_1(w)theta_1(x)theta_1(y)theta_1(z) =
//   [1]' + [2]' - [3]' + [4]'   at   2w' = -w+x+y+z  etc.,
// where [a]' = theta_a(w')theta_a(x')theta_a(y')theta_a(z').
ResidualValue residual_second_fundamental_additive(Complex w, Complex x, Complex y, Complex z,
                                                   Complex tau,
                                                   const TruncationPolicy& policy = {});

// The ten linear relations among [a] and [a]'.  Variants: "2[1]", "2[2]",
// "2[3]", "2[4]" (doubling system) and "[1]+[2]", "[1]+[3]", "[1]+[4]",
// "[1]-[2]", "[1]-[3]", "[1]-[4]" (pairwise system).
ResidualValue residual_theta_a_system(const std::string& variant, Complex w, Complex x, Complex y,
                                      Complex z, Complex tau, const TruncationPolicy& policy = {});
const std::vector<std::string>& theta_a_pair_variants();     // the six sums/differences
const std::vector<std::string>& theta_a_doubling_variants(); // the four doublings

// --- equivalence combinators -------------------------------------------------

// F1(x,y,u,v) + F1(-x,y,-u,v) - xy F1(qx,qy,u,v) - xy F1(-qx,qy,-u,v) - F2(x,y,u,v),
// assembled termwise from the theta factors of each F.
ResidualValue residual_equivalence_23(Complex x, Complex y, Complex u, Complex v, const Nome& nome,
                                      const TruncationPolicy& policy = {});

// F2(x,y,u,v) - (u/y) F2(x,u,y,v) - 2 F1(x,y,u,v).
ResidualValue residual_equivalence_25(Complex x, Complex y, Complex u, Complex v, const Nome& nome,
                                      const TruncationPolicy& policy = {});

// --- n-term family and four-term specializations ------------------------------

// SUM(k) PROD(j) theta(a_k/b_j) / PROD(j != k) theta(a_k/a_j) = 0 under
// prod(a) = prod(b); b.size() == a.size() - 1 and the last b is solved.
ResidualValue residual_an_identity(std::span<const Complex> a, std::span<const Complex> b,
                                   const Nome& nome, const TruncationPolicy& policy = {});

// Slater's four-term identity under b c d e f g h = q^2 (h solved):
//   b theta(cb,db,eb,fb,g,h,g/h) - b theta(ch,dh,eh,fh,b,g,g/b)
//   - g theta(cg,dg,eg,fg,b,h,b/h) + b h theta(c,d,e,f,b/h,g/h,g/b) = 0.
// The widely reprinted form carries a bare h on the last term; rederiving
// the identity from the n=4 term-form fixes the coefficient as b*h, and
// numerics at 40 digits confirm it, so that is what we evaluate.
ResidualValue residual_slater_43(Complex b, Complex c, Complex d, Complex e, Complex f, Complex g,
                                 const Nome& nome, const TruncationPolicy& policy = {});

// Bailey-type four-term identity (coefficients 1, -1, a^-2 bcdef, a^-1 bcd
// once everything is moved to one side).
ResidualValue residual_bailey_42(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f,
                                 const Nome& nome, const TruncationPolicy& policy = {});

// The four-term n=4 case written out termwise (independent of the
// general-n loop above; the two must agree pointwise).
ResidualValue residual_four_a4(Complex a1, Complex a2, Complex a3, Complex a4, Complex b1,
                               Complex b2, Complex b3, const Nome& nome,
                               const TruncationPolicy& policy = {});

// --- special cases -------------------------------------------------------------

// theta(q;q^2)^2 theta(qz;q^2)^2 = theta(-q;q^2)^2 theta(-qz;q^2)^2
//                                  - qz theta(-q^2;q^2)^2 theta(-q^2 z;q^2)^2
ResidualValue residual_square_link_20(Complex z, const Nome& nome,
                                      const TruncationPolicy& policy = {});

// theta(q;q^2)^4 = theta(-q;q^2)^4 - q theta(-q^2;q^2)^4
ResidualValue residual_quartic_nome_21(const Nome& nome, const TruncationPolicy& policy = {});

// 2 theta(-z^-2, q^-1 z^-2, -q z^-2, z^2; q^2) = theta(-1, q, -q^-1, z^-4; q^2)
ResidualValue residual_degenerate_40(Complex z, const Nome& nome,
                                     const TruncationPolicy& policy = {});

// theta_1(z)^4 + theta_3(z)^4 = theta_2(z)^4 + theta_4(z)^4
ResidualValue residual_theta_quartic(Complex z, Complex tau, const TruncationPolicy& policy = {});

// Numerator-vanishing step of the product-side proof of the three-term
// relation: at x = q^(2k) u^(+-1),
//   (y/v) theta(xy, x/y, vu, v/u; q^2) + (y/u) theta(xv, x/v, uy, u/y; q^2) = 0.
ResidualValue baxter_numerator_zero_check(Complex y, Complex u, Complex v, long k, int sign,
                                          const Nome& nome, const TruncationPolicy& policy = {});

// --- registry -------------------------------------------------------------------

// All registered identities, in a stable order.
const std::vector<IdentitySpec>& identity_registry();

// nullptr when the id is not registered.
const IdentitySpec* find_identity(const std::string& id);

// Throwing lookup (UnknownIdentity).
const IdentitySpec& require_identity(const std::string& id);

// The A_{n-1} spec for a given n >= 2 (the registry's "an" entry is n = 5).
IdentitySpec make_an_spec(int n);

// Conversions between the multiplicative sampling plane and the additive
// theta_a plane: z = log(w) / (2 pi i), tau = log(q) / (i pi).
Complex additive_from_multiplicative(Complex w);
Complex tau_from_nome(const Nome& nome);

} // namespace qtheta

#endif // QTHETA_IDENTITIES_HPP
