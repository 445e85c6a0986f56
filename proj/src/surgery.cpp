#include "hypdet/surgery.hpp"

#include <cmath>
#include <sstream>

#include "hypdet/cone.hpp"
#include "hypdet/cusp.hpp"

namespace hypdet {

namespace {

ConstExpr q(long num, long den = 1) { return ConstExpr::rational(mpq_class(num, den)); }
ConstExpr id(const BasisId& b, const mpq_class& c = 1) { return ConstExpr(b, c); }
ConstExpr log_2pi() { return id(BasisId::log2()) + id(BasisId::logpi()); }

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// sum_{k=0}^{m-2} (2k+1-m)/m^2 log Gamma((k+1)/m)
ConstExpr gamma_block(long m) {
    ConstExpr r;
    for (long k = 0; k <= m - 2; ++k) r.add_term(BasisId::loggamma(k + 1, m), mpq_class(2 * k + 1 - m, m * m));
    return r;
}

}  // namespace

FuchsianSignature FuchsianSignature::parse(const std::string& text) {
    FuchsianSignature sig;
    size_t semi = text.find(';');
    std::string gs = trim(semi == std::string::npos ? text : text.substr(0, semi));
    try {
        size_t used = 0;
        sig.g = std::stoi(gs, &used);
        if (used != gs.size() || sig.g < 0) throw std::invalid_argument("genus");
    } catch (const std::exception&) {
        throw Error(ErrorCode::Usage, "bad genus in signature '" + text + "'");
    }
    if (semi == std::string::npos) return sig;
    std::stringstream rest(text.substr(semi + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        item = trim(item);
        if (item.empty() || item == "-") continue;
        if (item == "inf" || item == "oo" || item == "∞") {
            sig.mult.push_back(0);
            continue;
        }
        long m = 0;
        try {
            size_t used = 0;
            m = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument("m");
        } catch (const std::exception&) {
            throw Error(ErrorCode::Usage, "bad multiplicity '" + item + "'");
        }
        if (m < 2) throw Error(ErrorCode::Usage, "multiplicity must be >= 2 or inf");
        sig.mult.push_back(m);
    }
    return sig;
}

std::string FuchsianSignature::str() const {
    std::string s = std::to_string(g) + ";";
    for (size_t i = 0; i < mult.size(); ++i) {
        if (i) s += ",";
        s += mult[i] == 0 ? "inf" : std::to_string(mult[i]);
    }
    return s;
}

int FuchsianSignature::cusps() const {
    int c = 0;
    for (long m : mult) c += m == 0;
    return c;
}

std::vector<long> FuchsianSignature::finite() const {
    std::vector<long> f;
    for (long m : mult)
        if (m) f.push_back(m);
    return f;
}

mpq_class FuchsianSignature::euler_char() const {
    mpq_class x = 2 * g - 2;
    for (long m : mult) x += m == 0 ? mpq_class(1) : mpq_class(1) - mpq_class(1, m);
    x.canonicalize();
    return x;
}

ConstExpr hyperbolic_volume(const FuchsianSignature& sig) {
    mpq_class chi = sig.euler_char();
    if (chi <= 0) throw Error(ErrorCode::NotHyperbolic, "signature " + sig.str() + " has 2g-2+sum(1-1/m) <= 0");
    return ConstExpr(BasisId::pi_power(1), 2 * chi);
}

SymExpr disk_logdet(const Symbol& log_r) {
    // zeta_r'(0) = 1/3 log r - 1/3 log 2 + 1/2 log(2 pi) + 5/12 + 2 zeta'(-1)
    SymExpr d;
    d.add(log_r, q(-1, 3));
    d.add_constant(id(BasisId::log2(), mpq_class(1, 3)) - mpq_class(1, 2) * log_2pi() - q(5, 12) -
                   id(BasisId::zp1(), 2));
    return d;
}

ConstExpr anomaly_constant(const FuchsianSignature& sig) {
    mpq_class sum = sig.euler_char() - (2 * sig.g - 2);
    return sum * (id(BasisId::log2(), mpq_class(1, 6)) + q(1, 2));
}

ConstExpr mv_constant(const FuchsianSignature& sig) {
    return id(BasisId::log2(), mpq_class(sig.g + 2, 3)) + anomaly_constant(sig);
}

SymExpr selberg_relative_logdet(const FuchsianSignature& sig, const std::string& tag) {
    SymExpr r(id(BasisId::logzp(tag)));
    ConstExpr c = sig.euler_char() * (id(BasisId::zp1(), 2) - q(1, 4) + mpq_class(1, 2) * log_2pi());
    for (long m : sig.finite()) {
        c += gamma_block(m);
        mpq_class w = mpq_class(1, 6) * (1 - mpq_class(1, m * m));
        c += w * ConstExpr::log_int(m);
    }
    long cu = sig.cusps();
    if (cu) {
        // -(c/2)(log 4 - log a - 1)
        c += mpq_class(-cu, 2) * (id(BasisId::log2(), 2) - q(1));
        r.add(Symbol::log_a(), q(cu, 2));
    }
    r.add_constant(c);
    return r;
}

long double heat_kernel_cusp(long double x, long double y, long double xp, long double yp, long double t,
                             long double a) {
    (void)x;
    (void)xp;
    if (!(t > 0)) throw Error(ErrorCode::Domain, "heat kernel needs t > 0");
    if (!(a > 0) || y < a || yp < a) throw Error(ErrorCode::Domain, "heat kernel needs y, y' >= a > 0");
    long double d1 = std::log(y / yp);
    long double d2 = std::log(y * yp) - std::log(a * a);
    return std::exp(-t / 4) / std::sqrt(4 * kPi * t) * std::sqrt(y * yp) *
           (std::exp(-d1 * d1 / (4 * t)) - std::exp(-d2 * d2 / (4 * t)));
}

AsymptoticExpansion assemble_naive_logdet(const FuchsianSignature& sig, const std::string& tag) {
    hyperbolic_volume(sig);
    long c = sig.cusps();
    SymExpr total(mv_constant(sig));
    // The Dirichlet-to-Neumann factors and det' Delta_{M,hyp} cancel between the two gluing
    // formulas; only the relative determinant and the model pieces remain.
    total += selberg_relative_logdet(sig, tag);
    total -= mpq_class(c) * cusp_logdet_asymptotic();
    total += mpq_class(c) * disk_logdet(Symbol::log_r_cusp());
    for (long m : sig.finite()) {
        total += disk_logdet(Symbol::log_r(m));
        total -= cone_logdet_asymptotic(static_cast<int>(m));
    }
    AsymptoticExpansion e = asym_substitute(total);
    e.has_small_o = true;  // volume ratio and the model remainders
    return e;
}

AsymptoticExpansion expected_divergence(const FuchsianSignature& sig) {
    AsymptoticExpansion e;
    mpq_class s2 = 0;
    for (long m : sig.mult) {
        mpq_class u = m == 0 ? mpq_class(1) : mpq_class(1) - mpq_class(1, m);
        s2 += u * u;
    }
    e.coeff_L = ConstExpr::rational(-s2 / 6);
    e.coeff_LL = q(sig.cusps(), 3);
    return e;
}

ConstExpr cgamma_direct(const FuchsianSignature& sig) {
    ConstExpr r;
    mpq_class sum_m = 0, sum_inv = 0, sum_inv2 = 0;
    for (long m : sig.finite()) {
        r += gamma_block(m);
        ConstExpr lm = ConstExpr::log_int(m);
        mpq_class w = mpq_class(1, 3) - mpq_class(1, 6 * m * m) - mpq_class(1, 2 * m) - mpq_class(m, 6);
        r += w * lm;
        sum_m += m;
        sum_inv += mpq_class(1, m);
        sum_inv2 += mpq_class(1, m * m);
    }
    r -= sum_m * (id(BasisId::zp1(), 2) - q(1, 6));
    r -= sum_inv * (id(BasisId::zp1(), 2) + mpq_class(1, 2) * log_2pi() + id(BasisId::log2(), mpq_class(2, 3)) -
                    id(BasisId::gamma(), mpq_class(1, 6)) - q(1, 6));
    r -= sum_inv2 * id(BasisId::log2(), mpq_class(1, 6));
    r += mpq_class(sig.g) * (log_2pi() + id(BasisId::log2(), mpq_class(1, 3)) - q(1, 3));
    r += mpq_class(sig.points()) * (id(BasisId::log2(), mpq_class(1, 2)) - q(5, 12));
    r -= mpq_class(sig.cusps()) * (id(BasisId::log2()) - q(3, 4));
    r += -log_2pi() + id(BasisId::log2(), mpq_class(2, 3)) + q(1, 3);
    return r;
}

ConstExpr log_cstar(const FuchsianSignature& sig) {
    mpq_class e2 = -sig.cusps();
    ConstExpr r;
    for (long m : sig.finite()) {
        mpq_class u = mpq_class(1) - mpq_class(1, m);
        e2 += u;
        r += 2 * u * ConstExpr::log_int(m);
    }
    r += id(BasisId::log2(), e2);
    r += mpq_class(2 * sig.g - 2) * (id(BasisId::zpm1r()) + q(1, 2));
    return r;
}

ReconcileReport reconcile(const FuchsianSignature& sig, const std::string& tag) {
    ReconcileReport rep;
    rep.sig = sig;
    AsymptoticExpansion naive = assemble_naive_logdet(sig, tag);
    AsymptoticExpansion rest = naive - expected_divergence(sig);
    rep.naive_L = const_reduce(naive.coeff_L);
    rep.naive_LL = const_reduce(naive.coeff_LL);
    rep.coeff_L = const_reduce(rest.coeff_L);
    rep.coeff_LL = const_reduce(rest.coeff_LL);
    rep.log_deta = naive.constant;
    // log deta = log C + log Z'(1) - (1/6) log C*; see the notes in the README
    rep.from_assembly =
        const_reduce(naive.constant - id(BasisId::logzp(tag)) + mpq_class(1, 6) * log_cstar(sig));
    rep.direct = const_reduce(cgamma_direct(sig));
    rep.difference = rep.from_assembly - rep.direct;
    return rep;
}

ConstExpr cgamma_from_assembly(const FuchsianSignature& sig, const std::string& tag) {
    ReconcileReport rep = reconcile(sig, tag);
    if (!rep.coeff_L.is_zero())
        throw Error(ErrorCode::DivergenceNotCancelled, "coefficient of L is " + rep.coeff_L.str());
    if (!rep.coeff_LL.is_zero())
        throw Error(ErrorCode::DivergenceNotCancelled, "coefficient of LL is " + rep.coeff_LL.str());
    return rep.from_assembly;
}

}  // namespace hypdet
