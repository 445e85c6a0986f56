#pragma once

#include <utility>
#include <vector>

#include "hypdet/constfield.hpp"
#include "hypdet/cusp.hpp"
#include "hypdet/spectral.hpp"

namespace hypdet {

// eta = 2 R^{1/omega}, taken as exact.
Real eta_from_r(int omega, Real R);
Real r_from_eta(int omega, Real eta);

struct ModelCone {
    int omega = 1;
    Real eta = 1;

    ModelCone(int omega, Real eta);
    static ModelCone from_R(int omega, Real R) { return ModelCone(omega, eta_from_r(omega, R)); }
    Real R() const { return r_from_eta(omega, eta); }
    Real xi() const;  // (1 - cosh eta)/2
};

struct ConeEigenvalue {
    int k = 0;
    int n = 0;
    Real r = 0;
    Real lambda() const { return 0.25L + r * r; }
    int multiplicity() const { return k == 0 ? 1 : 2; }
};

std::vector<ConeEigenvalue> scan_cone_eigenvalues(const ModelCone& cone, int k_max, Real r_max, Real step = 0,
                                                  int jobs = 1, ScanStats* stats = nullptr);

struct DesingReport {
    std::vector<std::pair<ConeEigenvalue, ConeEigenvalue>> pairs;  // (omega cone, omega = 1 cone)
    Real worst = 0;
};
// Each eigenvalue of cone(omega, R) against the angular index k*omega rows of cone(1, R^{1/omega}).
DesingReport cone_desingularization_check(int omega, Real R, int k_max, Real r_max, Real tol = 1e-8L,
                                          int jobs = 1);

ZetaSum cone_zeta_direct(const ModelCone& cone, Real s, int k_max, Real r_max, int jobs = 1);
ZetaSum cone_zeta_from(const std::vector<ConeEigenvalue>& evs, const ModelCone& cone, Real s, int k_max,
                       Real r_max);

Real cone_f_k(Real t, int k, const ModelCone& cone);
// d_k sin(pi s)/pi int_{1/2}^inf (t^2 - 1/4)^{-s} f_k(t) dt, split at k^delta (k >= 1) or 1 (k = 0)
Real cone_contour_term(Real s, int k, const ModelCone& cone, const SplitParams& split = {}, Real* err = nullptr);
ContourSum cone_contour_sum(const ModelCone& cone, Real s, int k_max, const SplitParams& split = {},
                            int jobs = 1);

// Closed form of log det Delta_D with log eta as a symbol, o(1).
SymExpr cone_logdet_asymptotic(int omega);

}  // namespace hypdet
