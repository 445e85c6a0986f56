#pragma once

#include <functional>
#include <vector>

#include <gmpxx.h>

#include "hypdet/specfun.hpp"

namespace hypdet {

// Shared by the cusp and cone modules.

struct SplitParams {
    mpq_class delta{1, 10};
    int order = 12;
    void validate() const;  // 0 < delta < 1/8
};

struct ZetaSum {
    Real value = 0;            // partial sum over the scanned window, tail excluded
    Real tail = 0;             // conservative r-tail estimate, counted from the last root of each k
    Real tail_best = 0;        // r-tail counted from half a spacing past the last root
    Real weyl_C = 0;           // fitted N(lambda) ~ C lambda over the window
    Real weyl_tail = 0;        // C lambda_max^{1-s}/(s-1)
    long count = 0;            // eigenvalues with multiplicity
};

struct ScanStats {
    int rescans = 0;
};

// Sign-change scan of f on (lo, hi].  `step(r)` gives the local grid width.  Roots are refined
// with TOMS 748 to `tol`.  A suspected pair of roots inside one cell makes the cell rescanned with
// halved step; after `max_halvings` the scan fails with GRID_TOO_COARSE.
std::vector<Real> scan_roots(const std::function<Real(Real)>& f, Real lo, Real hi,
                             const std::function<Real(Real)>& step, Real tol = 1e-10L,
                             ScanStats* stats = nullptr, int max_halvings = 6);

// Runs body(k) for k in [k0, k1] on up to `jobs` threads; results collected in k order by caller.
void parallel_for(int k0, int k1, int jobs, const std::function<void(int)>& body);

// int_{r0}^inf (1/4 + r^2)^{-s} density(r) dr
Real tail_integral(const std::function<Real(Real)>& density, Real r0, Real s);

}  // namespace hypdet
