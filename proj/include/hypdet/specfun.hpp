#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hypdet/error.hpp"
#include "hypdet/mp.hpp"

namespace hypdet {

using Real = long double;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kEulerGamma = 0.577215664901532860606512090082402431L;

struct Precision {
    Real rel_tol = 1e-16L;
    Real abs_tol = 1e-4000L;
    int max_refinement_depth = 16;
};

// K_{ir}(x) = int_0^inf exp(-x cosh u) cos(r u) du.
Real bessel_k_imag(Real r, Real x, const Precision& prec = {});
// exp(pi r / 2) K_{ir}(x); O(1) in the oscillatory region r > x, used for root scans.
Real bessel_k_imag_scaled(Real r, Real x, const Precision& prec = {});
// Large-order oscillatory expansion of exp(pi r/2) K_{ir}(x), r > x.  Returns the value and the
// size of the first omitted term.
std::pair<Real, Real> bessel_k_imag_debye_scaled(Real r, Real x, int max_terms = 16);

// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du.
Real bessel_k_real(Real nu, Real x, const Precision& prec = {});
Real log_bessel_k_real(Real nu, Real x, const Precision& prec = {});

enum class DerivOrder { First, Second };
// Derivative in the order t of log K_t(x), by Richardson-extrapolated central differences.
Real dlog_bessel_k(Real t, Real x, DerivOrder order, const Precision& prec = {});

Real exp_integral_e1(Real x);
// exp(x) E_1(x), finite for large x.
Real exp_integral_e1_scaled(Real x);

// Gauss series of 2F1 for real parameters and -1 < z <= 0.
Real hyp2f1(Real a, Real b, Real c, Real z, const Precision& prec = {});

// P^{-mu}_{-1/2+ir}(cosh eta) through the hypergeometric series with the real product
// (1/2+ir)_n (1/2-ir)_n = prod_{j<n} ((1/2+j)^2 + r^2).
Real legendre_p(Real r, int mu, Real cosh_eta, const Precision& prec = {});
// The same with degree -1/2 + t for real t: product prod_{j<n} ((1/2+j)^2 - t^2).
Real legendre_p_real_degree(Real t, int mu, Real cosh_eta, const Precision& prec = {});
// F(1/2+ir, 1/2-ir; mu+1; xi) evaluated with as many digits as the cancellation requires.
Real legendre_hyp_imag(Real r, int mu, Real xi);

// Hurwitz zeta and its s-derivative by Euler-Maclaurin.  Works for Real and mpfr_float.
template <class R>
std::pair<R, R> hurwitz_zeta_with_derivative(const R& s, const R& x, int digits);
Real hurwitz_zeta(Real s, Real x);
// order 0 or 1, s0 in {0, -1}
Real riemann_zeta_derivative(int order, int s0);
mpfr_float riemann_zeta_derivative_mp(int order, int s0, int digits);

// Even-index Bernoulli numbers B_0, B_2, ..., B_{2n}, exact.
const std::vector<mpq_class>& bernoulli_even(int n);

enum class Character { Chi4, Chi3 };
int character_modulus(Character chi);
int character_value(Character chi, int a);
mpq_class dirichlet_l0(Character chi);
Real dirichlet_dl0(Character chi);
mpfr_float dirichlet_dl0_mp(Character chi, int digits);

// u_n(tau) of the uniform large-order expansion, coefficients of tau^0..tau^{3n}.
const std::vector<mpq_class>& uniform_poly(int n);
Real uniform_poly_eval(int n, Real tau);
Real uniform_poly_deriv(int n, Real tau);
// sqrt(pi/2nu) e^{-nu eta(z)} (1+z^2)^{-1/4} sum_{n<order} (-1)^n u_n(tau)/nu^n
Real bessel_uniform_asym(Real nu, Real z, int order);
// d/dnu log K_nu(x) from the same expansion, differentiated term by term.
Real dlog_bessel_k_uniform(Real nu, Real x, int order);
Real log_bessel_k_uniform(Real nu, Real x, int order);

// Half-integer anchor: a_m(nu) = prod_{j=1}^m (4nu^2-(2j-1)^2) / (m! 8^m).
Real half_integer_coeff(int m, Real nu);

}  // namespace hypdet
