#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hypdet/error.hpp"

namespace hypdet {

// Order of the enumerators is the canonical print order.
enum class BasisKind {
    One,
    Gamma,
    Log,  // log p, p prime
    LogPi,
    Zp1,     // zeta'(-1)
    LpChi4,  // L'(0,chi_4)/L(0,chi_4)
    LpChi3,  // L'(0,chi_3)/L(0,chi_3)
    LogZp,   // free symbol log Z'(1, Gamma)
    LogGamma,
    Hfi,
    Hfrho,
    Zp0r,   // zeta'(0)/zeta(0)
    Zpm1r,  // zeta'(-1)/zeta(-1)
};

struct BasisId {
    BasisKind kind = BasisKind::One;
    long p = 0;  // prime for Log, numerator for LogGamma
    long q = 1;  // denominator for LogGamma
    std::string tag;
    int pi = 0;  // the id stands for (named constant) * pi^pi

    static BasisId one() { return {BasisKind::One}; }
    static BasisId gamma() { return {BasisKind::Gamma}; }
    static BasisId log(long prime);
    static BasisId log2() { return log(2); }
    static BasisId log3() { return log(3); }
    static BasisId logpi() { return {BasisKind::LogPi}; }
    static BasisId zp1() { return {BasisKind::Zp1}; }
    static BasisId lpchi4() { return {BasisKind::LpChi4}; }
    static BasisId lpchi3() { return {BasisKind::LpChi3}; }
    static BasisId logzp(const std::string& tag);
    static BasisId loggamma(long num, long den);
    static BasisId hfi() { return {BasisKind::Hfi}; }
    static BasisId hfrho() { return {BasisKind::Hfrho}; }
    static BasisId zp0r() { return {BasisKind::Zp0r}; }
    static BasisId zpm1r() { return {BasisKind::Zpm1r}; }

    static BasisId pi_power(int k) { return BasisId{BasisKind::One, 0, 1, {}, k}; }
    BasisId times_pi(int k) const {
        BasisId r = *this;
        r.pi += k;
        return r;
    }
    BasisId base() const { return times_pi(-pi); }

    bool is_free_symbol() const { return kind == BasisKind::LogZp; }
    std::string name() const;
    static BasisId parse(const std::string& text);

    std::strong_ordering operator<=>(const BasisId& other) const;
    bool operator==(const BasisId& other) const { return (*this <=> other) == 0; }
};

class ConstExpr {
public:
    using Terms = std::map<BasisId, mpq_class>;

    ConstExpr() = default;
    ConstExpr(const BasisId& id, const mpq_class& coeff);

    static ConstExpr rational(const mpq_class& q) { return ConstExpr(BasisId::one(), q); }
    static ConstExpr of(const BasisId& id) { return ConstExpr(id, 1); }
    // log n for a positive integer, split over its prime factors
    static ConstExpr log_int(long n);
    static ConstExpr parse(const std::string& text);

    const Terms& terms() const { return terms_; }
    mpq_class coeff(const BasisId& id) const;
    bool is_zero() const { return terms_.empty(); }
    bool has_free_symbol() const;
    bool is_rational() const;

    ConstExpr& add_term(const BasisId& id, const mpq_class& coeff);
    ConstExpr& operator+=(const ConstExpr& other);
    ConstExpr& operator-=(const ConstExpr& other);
    ConstExpr& operator*=(const mpq_class& factor);

    friend ConstExpr operator+(ConstExpr a, const ConstExpr& b) { return a += b; }
    friend ConstExpr operator-(ConstExpr a, const ConstExpr& b) { return a -= b; }
    friend ConstExpr operator-(ConstExpr a) { return a *= -1; }
    friend ConstExpr operator*(const mpq_class& f, ConstExpr a) { return a *= f; }
    friend ConstExpr operator*(ConstExpr a, const mpq_class& f) { return a *= f; }
    bool operator==(const ConstExpr& other) const;

    std::string str() const;

private:
    Terms terms_;
};

ConstExpr const_add(const ConstExpr& a, const ConstExpr& b);

std::string rational_str(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

class RewriteRegistry {
public:
    // The rule set used throughout: Chowla-Selberg heights, zeta ratios, Gamma at 1/2, 1/3, 1/4, 1/6.
    static const RewriteRegistry& standard();

    void set_rule(const BasisId& id, const ConstExpr& rhs) { rules_[id] = rhs; }
    const ConstExpr* find(const BasisId& id) const;

private:
    std::map<BasisId, ConstExpr> rules_;
};

// Rewrites reducible ids until only irreducible ids remain.
ConstExpr const_reduce(const ConstExpr& x, const RewriteRegistry& reg = RewriteRegistry::standard());

// Value rounded to `digits` significant digits.  Reducible ids are evaluated from their own
// definitions, not through the rewrite rules, except the two heights which only have the rule.
std::string const_eval(const ConstExpr& x, int digits);
std::string basis_eval(const BasisId& id, int digits);
long double const_eval_ld(const ConstExpr& x);

struct AsymptoticExpansion {
    ConstExpr coeff_L;  // L = log(1/eps)
    ConstExpr coeff_LL;  // LL = log log(1/eps)
    ConstExpr constant;
    bool has_small_o = false;

    AsymptoticExpansion& operator+=(const AsymptoticExpansion& other);
    AsymptoticExpansion& operator-=(const AsymptoticExpansion& other);
    AsymptoticExpansion& operator*=(const mpq_class& f);
    friend AsymptoticExpansion operator+(AsymptoticExpansion a, const AsymptoticExpansion& b) { return a += b; }
    friend AsymptoticExpansion operator-(AsymptoticExpansion a, const AsymptoticExpansion& b) { return a -= b; }
    friend AsymptoticExpansion operator*(const mpq_class& f, AsymptoticExpansion a) { return a *= f; }
    bool operator==(const AsymptoticExpansion& other) const;
    std::string str() const;
};

enum class SymKind {
    A,       // horocycle height a
    LogA,    // log a
    LogEta,  // log eta_omega, param = omega
    LogR,    // log r_m, param = m, 0 for a cusp disk
    Named,   // anything else; has no substitution rule
};

struct Symbol {
    SymKind kind = SymKind::A;
    long param = 0;
    std::string name;

    static Symbol a() { return {SymKind::A}; }
    static Symbol log_a() { return {SymKind::LogA}; }
    static Symbol log_eta(long omega) { return {SymKind::LogEta, omega}; }
    static Symbol log_r(long m) { return {SymKind::LogR, m}; }
    static Symbol log_r_cusp() { return {SymKind::LogR, 0}; }
    static Symbol named(const std::string& n) { return {SymKind::Named, 0, n}; }

    std::string str() const;
    auto operator<=>(const Symbol&) const = default;
};

// ConstExpr-linear combination of symbols, each optionally carrying a power of pi
// (needed for the pi/3 * a term of the cusp determinant).
class SymExpr {
public:
    using Key = std::pair<Symbol, int>;

    SymExpr() = default;
    explicit SymExpr(const ConstExpr& constant) : constant_(constant) {}

    SymExpr& add(const Symbol& s, const ConstExpr& coeff, int pi_power = 0);
    SymExpr& add_constant(const ConstExpr& c);
    SymExpr& operator+=(const SymExpr& other);
    SymExpr& operator-=(const SymExpr& other);
    SymExpr& operator*=(const mpq_class& f);
    friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
    friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
    friend SymExpr operator*(const mpq_class& f, SymExpr a) { return a *= f; }
    bool operator==(const SymExpr& other) const;

    ConstExpr coeff(const Symbol& s, int pi_power = 0) const;
    const std::map<Key, ConstExpr>& terms() const { return terms_; }
    const ConstExpr& constant() const { return constant_; }
    bool small_o() const { return small_o_; }
    void set_small_o(bool v) { small_o_ = v; }

    // Numeric value for given symbol values; the caller supplies every symbol present.
    long double evaluate(const std::map<Symbol, long double>& values) const;
    std::string str() const;

private:
    std::map<Key, ConstExpr> terms_;
    ConstExpr constant_;
    bool small_o_ = false;
};

// eps-rules: a = log(2/eps)/(2 pi), eta_omega = 2 (eps/2)^{1/omega},
// r_m = eps^{1/m}/m (1 + o(1)), cusp disk r = 1/(2 log(1/eps)).
AsymptoticExpansion asym_substitute(const SymExpr& x);

}  // namespace hypdet
