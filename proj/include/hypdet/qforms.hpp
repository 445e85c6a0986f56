#pragma once

#include <array>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypdet/specfun.hpp"

namespace hypdet {

bool is_discriminant(long d);

struct PellSolution {
    mpz_class x, y;
};
// Minimal x, y > 0 with x^2 - d y^2 = 4.
PellSolution pell_fundamental(long d);
// log eps_d with eps_d = (x + y sqrt d)/2
Real log_eps(const PellSolution& p);

struct Form {
    long a, b, c;
    auto operator<=>(const Form&) const = default;
};

// Reduced primitive forms of discriminant d: 0 < b < sqrt d, sqrt d - b < 2|a| < sqrt d + b.
std::vector<Form> reduced_forms(long d);
bool is_reduced(const Form& f, long d);
// Neighbouring reduced form
Form rho(const Form& f, long d);
long class_number(long d);

struct DiscriminantRecord {
    long d = 0;
    long h = 0;
    PellSolution pell;
    Real log_eps = 0;
    Real eps() const;
    void validate() const;
};
DiscriminantRecord discriminant_record(long d);
// All discriminants in [5, d_max] in ascending order.
std::vector<DiscriminantRecord> discriminant_table(long d_max, int jobs = 1);

struct SarnakResult {
    Real value = 0;      // sum over d <= d_max, k <= k_max
    Real k_tail = 0;     // bound on the omitted k terms
    Real d_tail = 0;     // extrapolated contribution of d > d_max
    long terms = 0;
};
SarnakResult sarnak_log_z(Real s, const std::vector<DiscriminantRecord>& table, int k_max);
SarnakResult sarnak_log_z(Real s, long d_max, int k_max, int jobs = 1);

struct ZPrimeEstimate {
    Real value = 0;
    Real uncertainty = 0;       // extrapolation residual + truncation part
    Real tail_uncertainty = 0;  // truncation part: change when the norm cutoff is halved
    std::vector<Real> s_grid;
    std::vector<Real> ratios;  // Z(s)/(s-1), norm-truncated at d_max plus the prime geodesic tail
};
// Extrapolates Z(s)/(s-1) to s = 1 from a decreasing grid in (1, 1.6].
ZPrimeEstimate zprime1_estimate(const std::vector<Real>& s_grid, long d_max, int k_max = 40, int jobs = 1);
ZPrimeEstimate zprime1_estimate(const std::vector<Real>& s_grid, const std::vector<DiscriminantRecord>& table,
                                int k_max = 40);

}  // namespace hypdet
