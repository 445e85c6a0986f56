#pragma once

#include <utility>
#include <vector>

#include "hypdet/constfield.hpp"
#include "hypdet/spectral.hpp"

namespace hypdet {

struct ModelCusp {
    Real a = 1;
    explicit ModelCusp(Real height);
    Real x(int k) const { return 2 * kPi * k * a; }
};

struct CuspEigenvalue {
    int k = 0;
    int j = 0;
    Real r = 0;
    Real lambda() const { return 0.25L + r * r; }
    static constexpr int multiplicity = 2;
};

// Roots of r -> K_{ir}(2 pi k a) for 1 <= k <= k_max, sorted by lambda.
std::vector<CuspEigenvalue> scan_cusp_eigenvalues(const ModelCusp& cusp, int k_max, Real r_max,
                                                  Real step = 0, int jobs = 1, ScanStats* stats = nullptr);

// Counting function with multiplicity.  `k_max`, `r_max` describe the scanned window; the
// window must contain every root with lambda below the argument.
long cusp_counting(const std::vector<CuspEigenvalue>& evs, Real lambda, const ModelCusp& cusp, int k_max,
                   Real r_max);

ZetaSum cusp_zeta_direct(const ModelCusp& cusp, Real s, int k_max, Real r_max, int jobs = 1);
ZetaSum cusp_zeta_from(const std::vector<CuspEigenvalue>& evs, const ModelCusp& cusp, Real s, int k_max,
                       Real r_max);

Real cusp_f_k(Real t, int k, const ModelCusp& cusp);
Real cusp_I_k(Real s, int k, const ModelCusp& cusp, Real* err = nullptr);
std::pair<Real, Real> cusp_split_LM(Real s, int k, const ModelCusp& cusp, const SplitParams& split = {});

struct ContourSum {
    Real value = 0;
    Real error = 0;  // summed quadrature error estimates
    std::vector<Real> terms;
};
ContourSum cusp_contour_sum(const ModelCusp& cusp, Real s, int k_max, int jobs = 1);

// (pi/3) a + (1/2) log a, o(1)
SymExpr cusp_logdet_asymptotic();
Real cusp_logdet_asymptotic_value(Real a);

enum class ErrorTerm { E0, E1, E2 };
Real cusp_error_integrand(ErrorTerm which, Real u, int k, const ModelCusp& cusp);
Real cusp_error_integral(ErrorTerm which, Real s, int k, const ModelCusp& cusp, const SplitParams& split = {});

}  // namespace hypdet
