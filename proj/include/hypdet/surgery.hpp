#pragma once

#include <string>
#include <vector>

#include "hypdet/constfield.hpp"

namespace hypdet {

// Genus plus marked points; a multiplicity of 0 stands for a cusp (m = infinity).
struct FuchsianSignature {
    int g = 0;
    std::vector<long> mult;

    static FuchsianSignature parse(const std::string& text);  // "g;m1,m2,..." with "inf"
    std::string str() const;

    int cusps() const;
    int points() const { return static_cast<int>(mult.size()); }
    std::vector<long> finite() const;
    // 2g - 2 + sum (1 - 1/m_i), cusps counting 1
    mpq_class euler_char() const;
    bool admissible() const { return euler_char() > 0; }
};

ConstExpr hyperbolic_volume(const FuchsianSignature& sig);

// log det of the flat disk of radius r: -zeta_r'(0), with log r a symbol
SymExpr disk_logdet(const Symbol& log_r);
ConstExpr anomaly_constant(const FuchsianSignature& sig);
ConstExpr mv_constant(const FuchsianSignature& sig);

// log det(Delta_hyp, Delta_a) with log Z'(1,Gamma) as the free symbol LOGZP(tag)
SymExpr selberg_relative_logdet(const FuchsianSignature& sig, const std::string& tag = "G");

long double heat_kernel_cusp(long double x, long double y, long double xp, long double yp, long double t,
                             long double a);

AsymptoticExpansion assemble_naive_logdet(const FuchsianSignature& sig, const std::string& tag = "G");
AsymptoticExpansion expected_divergence(const FuchsianSignature& sig);

// The displayed closed form of log C(Gamma).
ConstExpr cgamma_direct(const FuchsianSignature& sig);
// log C*(g) of the topological constant
ConstExpr log_cstar(const FuchsianSignature& sig);

struct ReconcileReport {
    FuchsianSignature sig;
    ConstExpr naive_L;   // divergent coefficients of the assembled expansion
    ConstExpr naive_LL;
    ConstExpr coeff_L;   // of naive - expected
    ConstExpr coeff_LL;
    ConstExpr log_deta;
    ConstExpr direct;
    ConstExpr from_assembly;
    ConstExpr difference;  // from_assembly - direct
    bool divergence_cancelled() const { return coeff_L.is_zero() && coeff_LL.is_zero(); }
    bool constants_agree() const { return difference.is_zero(); }
};

// Does not throw on a nonzero difference; throws DIVERGENCE_NOT_CANCELLED only through
// cgamma_from_assembly.
ReconcileReport reconcile(const FuchsianSignature& sig, const std::string& tag = "G");
ConstExpr cgamma_from_assembly(const FuchsianSignature& sig, const std::string& tag = "G");

}  // namespace hypdet
