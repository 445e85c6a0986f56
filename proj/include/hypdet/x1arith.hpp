#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "hypdet/constfield.hpp"
#include "hypdet/surgery.hpp"

namespace hypdet {

enum class X1Section { Infinity, I, Rho };

// The modular curve X(1) with its cusp and two elliptic points.
struct X1Data {
    FuchsianSignature signature;
    X1Data();
    // linear form a X0 + b X1 cutting out each section
    static std::array<long, 2> form(X1Section s);
    static mpq_class weight(X1Section s);  // 1 - 1/m
};

// |Res| of the two defining linear forms
long section_resultant(X1Section s, X1Section t);
std::map<std::pair<X1Section, X1Section>, ConstExpr> finite_intersections();

ConstExpr faltings_height_i();    // h_F(E_i)
ConstExpr faltings_height_rho();  // h_F(E_rho)
ConstExpr psi_degree_heights();   // height form
ConstExpr psi_degree_reduced();   // L-value form
ConstExpr psi_degree();           // height form, after checking both agree

// Bost-Kuhn input (M12, M12)_Pet
ConstExpr petersson_self_intersection();
ConstExpr omega_self_intersection();

ConstExpr l2_term();  // -12 log ||1||_{L^2}

// log Z'(1, PSL2(Z)) in the basis of the closed form:
// L'/L(chi_4), L'/L(chi_3), zeta'(0)/zeta(0), zeta'(-1)/zeta(-1), gamma, log 3, log 2, 1
struct SpecialValue {
    ConstExpr reduced;
    std::array<mpq_class, 8> coefficients;
    bool matches_paper = false;
    std::string numeric;
};

extern const std::array<const char*, 8> kSpecialValueBasis;
std::array<mpq_class, 8> expected_special_value_coefficients();

// Solves the arithmetic Riemann-Roch identity for log Z'.  `cgamma` defaults to the closed form of
// log C(PSL2(Z)); a different value can be supplied to see its effect.
SpecialValue solve_special_value(int digits = 20, const ConstExpr* cgamma = nullptr, bool check = true);

}  // namespace hypdet
