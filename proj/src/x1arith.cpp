#include "hypdet/x1arith.hpp"

#include <cstdlib>

namespace hypdet {

namespace {

ConstExpr P(const char* s) { return ConstExpr::parse(s); }

}  // namespace

const std::array<const char*, 8> kSpecialValueBasis = {"LPCHI4", "LPCHI3", "ZP0R", "ZPM1R",
                                                       "GAMMA",  "LOG3",   "LOG2", "1"};

X1Data::X1Data() : signature(FuchsianSignature::parse("0;inf,2,3")) {}

std::array<long, 2> X1Data::form(X1Section s) {
    switch (s) {
        case X1Section::Infinity: return {0, 1};  // X1 = 0
        case X1Section::I: return {1, -1728};     // X0 - 1728 X1 = 0
        case X1Section::Rho: return {1, 0};       // X0 = 0
    }
    return {0, 0};
}

mpq_class X1Data::weight(X1Section s) {
    switch (s) {
        case X1Section::Infinity: return 1;
        case X1Section::I: return mpq_class(1, 2);
        case X1Section::Rho: return mpq_class(2, 3);
    }
    return 0;
}

long section_resultant(X1Section s, X1Section t) {
    auto f = X1Data::form(s), g = X1Data::form(t);
    return std::labs(f[0] * g[1] - f[1] * g[0]);
}

std::map<std::pair<X1Section, X1Section>, ConstExpr> finite_intersections() {
    std::map<std::pair<X1Section, X1Section>, ConstExpr> m;
    const X1Section all[] = {X1Section::Infinity, X1Section::I, X1Section::Rho};
    for (X1Section s : all)
        for (X1Section t : all)
            if (s < t) m[{s, t}] = ConstExpr::log_int(section_resultant(s, t));
    if (!(m[{X1Section::I, X1Section::Rho}] == P("6*LOG2 + 3*LOG3")))
        throw Error(ErrorCode::Mismatch, "(sigma_i, sigma_rho) is not log 1728");
    return m;
}

ConstExpr faltings_height_i() { return P("HFI"); }
ConstExpr faltings_height_rho() { return P("HFRHO"); }

ConstExpr psi_degree_heights() {
    ConstExpr ir = finite_intersections()[{X1Section::I, X1Section::Rho}];
    ConstExpr log4pi = P("2*LOG2 + LOGPI");
    ConstExpr psi_inf;
    ConstExpr psi_i = mpq_class(4) * faltings_height_i() - mpq_class(2) * ir + mpq_class(2) * log4pi;
    ConstExpr psi_rho = mpq_class(6) * faltings_height_rho() - ir + mpq_class(3) * log4pi;
    return psi_inf + mpq_class(3, 4) * psi_i + mpq_class(8, 9) * psi_rho;
}

ConstExpr psi_degree_reduced() {
    return P("-3/2*LPCHI4 - 8/3*LPCHI3 + 25/6*ZP0R - 17/2*LOG3 - 15/2*LOG2");
}

ConstExpr psi_degree() {
    ConstExpr a = psi_degree_heights();
    ConstExpr b = psi_degree_reduced();
    ConstExpr diff = const_reduce(a) - const_reduce(b);
    if (!diff.is_zero()) throw Error(ErrorCode::FormsDisagree, "psi forms differ by " + diff.str());
    return a;
}

ConstExpr petersson_self_intersection() { return P("-12*ZPM1R - 6"); }

ConstExpr omega_self_intersection() {
    // 1/36 ((M12, M12)_Pet + 12 log 4 pi - 6 log 2)
    ConstExpr viaPet = mpq_class(1, 36) * (petersson_self_intersection() + P("24*LOG2 + 12*LOGPI - 6*LOG2"));
    ConstExpr stated = P("-1/3*ZPM1R - 1/6 + 1/3*LOG2 + 1/3*LOGPI + 1/6*LOG2");
    if (!(const_reduce(viaPet) == const_reduce(stated)))
        throw Error(ErrorCode::Mismatch, "self-intersection does not match the Petersson computation");
    return stated;
}

ConstExpr l2_term() {
    // ||1||^2 = vol / (2 pi)
    ConstExpr vol = hyperbolic_volume(X1Data().signature);
    mpq_class norm2 = vol.coeff(BasisId::pi_power(1)) / 2;
    if (vol.terms().size() != 1 || norm2 != mpq_class(1, 6))
        throw Error(ErrorCode::VolumeMismatch, "||1||^2 = " + rational_str(norm2) + ", expected 1/6");
    // -12 log ||1|| = -6 log ||1||^2 = 6 log 6
    return mpq_class(6) * ConstExpr::log_int(6);
}

std::array<mpq_class, 8> expected_special_value_coefficients() {
    return {mpq_class(1, 4),    mpq_class(13, 27),   mpq_class(73, 72),    mpq_class(-37, 36),
            mpq_class(-5, 36),  mpq_class(5, 12),    mpq_class(-167, 216), mpq_class(-5, 6)};
}

SpecialValue solve_special_value(int digits, const ConstExpr* cgamma, bool check) {
    X1Data x1;
    ConstExpr logc = cgamma ? *cgamma : cgamma_direct(x1.signature);
    ConstExpr ir = finite_intersections()[{X1Section::I, X1Section::Rho}];
    // cross terms: sum over ordered pairs i != j
    mpq_class w = 2 * X1Data::weight(X1Section::I) * X1Data::weight(X1Section::Rho);
    // The conductor term vanishes: P^1 over Z is smooth.
    ConstExpr delta;
    // 12 adeg H_Q = (omega, omega) - cross - psi + delta
    ConstExpr twelve_h = omega_self_intersection() - w * ir - psi_degree() + delta;
    // 12 adeg H_Q = -12 log||1|| + 6 (log C + log Z')
    ConstExpr lz = mpq_class(1, 6) * (twelve_h - l2_term()) - logc;

    SpecialValue out;
    out.reduced = const_reduce(lz);
    // back to the stated basis: log pi = ZP0R - log 2, zeta'(-1) = -ZPM1R/12
    const ConstExpr& r = out.reduced;
    mpq_class cpi = r.coeff(BasisId::logpi());
    mpq_class cz1 = r.coeff(BasisId::zp1());
    ConstExpr rebuilt = ConstExpr(BasisId::lpchi4(), r.coeff(BasisId::lpchi4())) +
                        ConstExpr(BasisId::lpchi3(), r.coeff(BasisId::lpchi3())) +
                        ConstExpr(BasisId::zp0r(), cpi) + ConstExpr(BasisId::zpm1r(), -cz1 / 12) +
                        ConstExpr(BasisId::gamma(), r.coeff(BasisId::gamma())) +
                        ConstExpr(BasisId::log3(), r.coeff(BasisId::log3())) +
                        ConstExpr(BasisId::log2(), r.coeff(BasisId::log2()) - cpi) +
                        ConstExpr::rational(r.coeff(BasisId::one()));
    if (!(const_reduce(rebuilt) == r))
        throw Error(ErrorCode::CoefficientMismatch, "log Z' has terms outside the basis: " + r.str());
    for (size_t i = 0; i < kSpecialValueBasis.size(); ++i) {
        BasisId id = i + 1 == kSpecialValueBasis.size() ? BasisId::one() : BasisId::parse(kSpecialValueBasis[i]);
        out.coefficients[i] = rebuilt.coeff(id);
    }
    auto expect = expected_special_value_coefficients();
    out.matches_paper = out.coefficients == expect;
    if (check && !out.matches_paper) {
        std::string msg;
        for (size_t i = 0; i < expect.size(); ++i)
            if (out.coefficients[i] != expect[i])
                msg += std::string(" ") + kSpecialValueBasis[i] + ": got " + rational_str(out.coefficients[i]) +
                       ", expected " + rational_str(expect[i]) + ";";
        throw Error(ErrorCode::CoefficientMismatch, msg);
    }
    out.numeric = const_eval(out.reduced, digits);
    return out;
}

}  // namespace hypdet
