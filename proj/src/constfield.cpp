#include "hypdet/constfield.hpp"

#include <boost/math/constants/constants.hpp>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "hypdet/mp.hpp"
#include "hypdet/specfun.hpp"

namespace hypdet {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::RewriteCycle: return "REWRITE_CYCLE";
        case ErrorCode::FreeSymbol: return "FREE_SYMBOL";
        case ErrorCode::UnknownSymbol: return "UNKNOWN_SYMBOL";
        case ErrorCode::NonConverged: return "NONCONVERGED";
        case ErrorCode::Underflow: return "UNDERFLOW";
        case ErrorCode::Overflow: return "OVERFLOW";
        case ErrorCode::NearZero: return "NEAR_ZERO";
        case ErrorCode::Pole: return "POLE";
        case ErrorCode::GridTooCoarse: return "GRID_TOO_COARSE";
        case ErrorCode::IncompleteWindow: return "INCOMPLETE_WINDOW";
        case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
        case ErrorCode::Mismatch: return "MISMATCH";
        case ErrorCode::NotHyperbolic: return "NOT_HYPERBOLIC";
        case ErrorCode::Domain: return "DOMAIN";
        case ErrorCode::DivergenceNotCancelled: return "DIVERGENCE_NOT_CANCELLED";
        case ErrorCode::VolumeMismatch: return "VOLUME_MISMATCH";
        case ErrorCode::FormsDisagree: return "FORMS_DISAGREE";
        case ErrorCode::CoefficientMismatch: return "COEFFICIENT_MISMATCH";
        case ErrorCode::NonpositiveArg: return "NONPOSITIVE_ARG";
        case ErrorCode::Unstable: return "UNSTABLE";
        case ErrorCode::Usage: return "USAGE";
    }
    return "UNKNOWN";
}

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

BasisId BasisId::log(long prime) {
    if (!is_prime(prime)) throw Error(ErrorCode::Domain, "LOG id needs a prime, got " + std::to_string(prime));
    return BasisId{BasisKind::Log, prime};
}

BasisId BasisId::logzp(const std::string& tag) {
    BasisId id{BasisKind::LogZp};
    id.tag = tag;
    return id;
}

BasisId BasisId::loggamma(long num, long den) {
    if (den <= 0 || num <= 0 || num >= den) throw Error(ErrorCode::Domain, "LOGGAMMA needs 0 < p/q < 1");
    long g = std::gcd(num, den);
    return BasisId{BasisKind::LogGamma, num / g, den / g};
}

std::strong_ordering BasisId::operator<=>(const BasisId& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (kind == BasisKind::LogGamma) {
        if (auto c = p * o.q <=> o.p * q; c != 0) return c;
    } else if (auto c = p <=> o.p; c != 0) {
        return c;
    }
    if (auto c = tag <=> o.tag; c != 0) return c;
    return pi <=> o.pi;
}

std::string BasisId::name() const {
    std::string s;
    switch (kind) {
        case BasisKind::One: s = ""; break;
        case BasisKind::Gamma: s = "GAMMA"; break;
        case BasisKind::Log: s = "LOG" + std::to_string(p); break;
        case BasisKind::LogPi: s = "LOGPI"; break;
        case BasisKind::Zp1: s = "ZP1"; break;
        case BasisKind::LpChi4: s = "LPCHI4"; break;
        case BasisKind::LpChi3: s = "LPCHI3"; break;
        case BasisKind::LogZp: s = "LOGZP(" + tag + ")"; break;
        case BasisKind::LogGamma: s = "LOGGAMMA(" + std::to_string(p) + "/" + std::to_string(q) + ")"; break;
        case BasisKind::Hfi: s = "HFI"; break;
        case BasisKind::Hfrho: s = "HFRHO"; break;
        case BasisKind::Zp0r: s = "ZP0R"; break;
        case BasisKind::Zpm1r: s = "ZPM1R"; break;
    }
    if (pi != 0) {
        std::string pp = pi == 1 ? "PI" : "PI^" + std::to_string(pi);
        s = s.empty() ? pp : s + "*" + pp;
    }
    if (s.empty()) s = "ONE";
    return s;
}

BasisId BasisId::parse(const std::string& raw) {
    std::string t;
    int pipow = 0;
    {
        std::string all = trim(raw);
        int depth = 0;
        size_t start = 0;
        std::vector<std::string> factors;
        for (size_t i = 0; i <= all.size(); ++i) {
            if (i < all.size() && all[i] == '(') ++depth;
            if (i < all.size() && all[i] == ')') --depth;
            if (i == all.size() || (all[i] == '*' && depth == 0)) {
                factors.push_back(trim(all.substr(start, i - start)));
                start = i + 1;
            }
        }
        for (const auto& f : factors) {
            if (f == "PI") {
                pipow += 1;
            } else if (f.rfind("PI^", 0) == 0) {
                pipow += std::stoi(f.substr(3));
            } else {
                if (!t.empty()) throw Error(ErrorCode::UnknownSymbol, "bad id '" + raw + "'");
                t = f;
            }
        }
        if (t.empty()) t = "ONE";
    }
    BasisId id;
    if (t == "ONE" || t == "1") id = one();
    else if (t == "GAMMA") id = gamma();
    else if (t == "LOGPI") id = logpi();
    else if (t == "ZP1") id = zp1();
    else if (t == "LPCHI4") id = lpchi4();
    else if (t == "LPCHI3") id = lpchi3();
    else if (t == "HFI") id = hfi();
    else if (t == "HFRHO") id = hfrho();
    else if (t == "ZP0R") id = zp0r();
    else if (t == "ZPM1R") id = zpm1r();
    else if (t.rfind("LOGZP(", 0) == 0 && t.back() == ')') id = logzp(t.substr(6, t.size() - 7));
    else if (t.rfind("LOGGAMMA(", 0) == 0 && t.back() == ')') {
        mpq_class v = parse_rational(t.substr(9, t.size() - 10));
        id = loggamma(v.get_num().get_si(), v.get_den().get_si());
    } else if (t.rfind("LOG", 0) == 0 && t.size() > 3 && std::isdigit(static_cast<unsigned char>(t[3]))) {
        id = log(std::stol(t.substr(3)));
    } else {
        throw Error(ErrorCode::UnknownSymbol, "unknown basis id '" + raw + "'");
    }
    id.pi = pipow;
    return id;
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& raw) {
    std::string t = trim(raw);
    mpq_class q;
    if (t.empty() || q.set_str(t, 10) != 0) throw Error(ErrorCode::Domain, "bad rational '" + raw + "'");
    if (q.get_den() == 0) throw Error(ErrorCode::Domain, "zero denominator in '" + raw + "'");
    q.canonicalize();
    return q;
}

ConstExpr::ConstExpr(const BasisId& id, const mpq_class& coeff) { add_term(id, coeff); }

ConstExpr ConstExpr::log_int(long n) {
    if (n <= 0) throw Error(ErrorCode::Domain, "log of non-positive integer");
    ConstExpr r;
    for (long p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            r.add_term(BasisId::log(p), 1);
            n /= p;
        }
    }
    if (n > 1) r.add_term(BasisId::log(n), 1);
    return r;
}

mpq_class ConstExpr::coeff(const BasisId& id) const {
    auto it = terms_.find(id);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

bool ConstExpr::has_free_symbol() const {
    for (const auto& [id, c] : terms_)
        if (id.is_free_symbol()) return true;
    return false;
}

bool ConstExpr::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == BasisId::one());
}

ConstExpr& ConstExpr::add_term(const BasisId& id, const mpq_class& coeff) {
    if (coeff == 0) return *this;
    auto [it, inserted] = terms_.emplace(id, coeff);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += coeff;
        it->second.canonicalize();
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

ConstExpr& ConstExpr::operator+=(const ConstExpr& o) {
    for (const auto& [id, c] : o.terms_) add_term(id, c);
    return *this;
}

ConstExpr& ConstExpr::operator-=(const ConstExpr& o) {
    for (const auto& [id, c] : o.terms_) add_term(id, -c);
    return *this;
}

ConstExpr& ConstExpr::operator*=(const mpq_class& f) {
    if (f == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [id, c] : terms_) {
        c *= f;
        c.canonicalize();
    }
    return *this;
}

bool ConstExpr::operator==(const ConstExpr& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (!(a->first == b->first) || a->second != b->second) return false;
    return true;
}

std::string ConstExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, c] : terms_) {
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (id == BasisId::one()) {
            os << rational_str(mag);
        } else if (mag == 1) {
            os << id.name();
        } else {
            os << rational_str(mag) << "*" << id.name();
        }
    }
    return os.str();
}

ConstExpr ConstExpr::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty() || s == "0") return {};
    ConstExpr out;
    int depth = 0;
    size_t start = 0;
    auto flush = [&](size_t end) {
        std::string term = s.substr(start, end - start);
        int sign = 1;
        while (!term.empty() && (term[0] == '+' || term[0] == '-')) {
            if (term[0] == '-') sign = -sign;
            term.erase(0, 1);
        }
        if (term.empty()) throw Error(ErrorCode::Domain, "empty term in '" + text + "'");
        mpq_class coeff = sign;
        BasisId id = BasisId::one();
        bool have_id = false;
        // split on top-level '*'
        std::vector<std::string> factors;
        int d = 0;
        size_t fs = 0;
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == '(') ++d;
            if (term[i] == ')') --d;
            if (term[i] == '*' && d == 0) {
                factors.push_back(term.substr(fs, i - fs));
                fs = i + 1;
            }
        }
        factors.push_back(term.substr(fs));
        int pipow = 0;
        for (const auto& f : factors) {
            if (!f.empty() && (std::isdigit(static_cast<unsigned char>(f[0])))) {
                coeff *= parse_rational(f);
            } else if (f == "PI" || f.rfind("PI^", 0) == 0) {
                pipow += f == "PI" ? 1 : std::stoi(f.substr(3));
            } else {
                if (have_id) throw Error(ErrorCode::Domain, "product of two ids in '" + text + "'");
                id = BasisId::parse(f);
                have_id = true;
            }
        }
        out.add_term(id.times_pi(pipow), coeff);
    };
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if ((ch == '+' || ch == '-') && depth == 0 && i > start && s[i - 1] != '^' && s[i - 1] != '*') {
            flush(i);
            start = i;
        }
    }
    flush(s.size());
    return out;
}

ConstExpr const_add(const ConstExpr& a, const ConstExpr& b) { return a + b; }

const ConstExpr* RewriteRegistry::find(const BasisId& id) const {
    auto it = rules_.find(id);
    return it == rules_.end() ? nullptr : &it->second;
}

const RewriteRegistry& RewriteRegistry::standard() {
    static const RewriteRegistry reg = [] {
        RewriteRegistry r;
        auto P = [](const std::string& s) { return ConstExpr::parse(s); };
        r.set_rule(BasisId::zp0r(), P("LOG2 + LOGPI"));
        r.set_rule(BasisId::zpm1r(), P("-12*ZP1"));
        r.set_rule(BasisId::hfi(), P("-1/2*LPCHI4"));
        r.set_rule(BasisId::hfrho(), P("-1/2*LPCHI3 - 1/4*LOG3 + 1/2*LOG2"));
        r.set_rule(BasisId::loggamma(1, 2), P("1/2*LOGPI"));
        r.set_rule(BasisId::loggamma(1, 3), P("-1/3*HFRHO + 1/2*ZP0R - 1/6*LOG3 + 1/6*LOG2"));
        r.set_rule(BasisId::loggamma(2, 3), P("LOG2 + LOGPI - 1/2*LOG3 - LOGGAMMA(1/3)"));
        r.set_rule(BasisId::loggamma(1, 4), P("1/4*LPCHI4 + 3/4*LOG2 + 1/2*LOGPI"));
        r.set_rule(BasisId::loggamma(3, 4), P("LOGPI + 1/2*LOG2 - LOGGAMMA(1/4)"));
        r.set_rule(BasisId::loggamma(1, 6), P("-1/3*LOG2 + 1/2*LOG3 - 1/2*LOGPI + 2*LOGGAMMA(1/3)"));
        r.set_rule(BasisId::loggamma(5, 6), P("LOG2 + LOGPI - LOGGAMMA(1/6)"));
        return r;
    }();
    return reg;
}

namespace {

ConstExpr reduce_id(const BasisId& id, const RewriteRegistry& reg, std::vector<BasisId>& stack) {
    BasisId base = id.base();
    const ConstExpr* rule = reg.find(base);
    if (!rule) return ConstExpr::of(id);
    for (const auto& s : stack)
        if (s == base) throw Error(ErrorCode::RewriteCycle, "rule cycle through " + base.name());
    stack.push_back(base);
    ConstExpr out;
    for (const auto& [sub, c] : rule->terms()) {
        ConstExpr part = reduce_id(sub.times_pi(id.pi), reg, stack);
        out += c * part;
    }
    stack.pop_back();
    return out;
}

mpfr_float basis_value(const BasisId& id, int digits) {
    using boost::multiprecision::log;
    const mpfr_float pi = boost::math::constants::pi<mpfr_float>();
    mpfr_float v;
    switch (id.kind) {
        case BasisKind::One: v = 1; break;
        case BasisKind::Gamma: v = boost::math::constants::euler<mpfr_float>(); break;
        case BasisKind::Log: v = log(mpfr_float(id.p)); break;
        case BasisKind::LogPi: v = log(pi); break;
        case BasisKind::Zp1: v = riemann_zeta_derivative_mp(1, -1, digits); break;
        case BasisKind::LpChi4:
            v = dirichlet_dl0_mp(Character::Chi4, digits) / mpfr_float(dirichlet_l0(Character::Chi4).get_d());
            break;
        case BasisKind::LpChi3: {
            mpq_class l0 = dirichlet_l0(Character::Chi3);
            v = dirichlet_dl0_mp(Character::Chi3, digits) * mpfr_float(l0.get_den().get_si()) /
                mpfr_float(l0.get_num().get_si());
            break;
        }
        case BasisKind::LogZp:
            throw Error(ErrorCode::FreeSymbol, id.name() + " has no numeric value");
        case BasisKind::LogGamma:
            v = boost::multiprecision::lgamma(mpfr_float(id.p) / mpfr_float(id.q));
            break;
        case BasisKind::Hfi:
        case BasisKind::Hfrho: {
            ConstExpr r = const_reduce(ConstExpr::of(id.base()));
            v = 0;
            for (const auto& [sub, c] : r.terms())
                v += basis_value(sub, digits) * mpfr_float(c.get_num().get_str()) / mpfr_float(c.get_den().get_str());
            break;
        }
        case BasisKind::Zp0r: {
            auto [z, dz] = hurwitz_zeta_with_derivative<mpfr_float>(mpfr_float(0), mpfr_float(1), digits);
            v = dz / z;
            break;
        }
        case BasisKind::Zpm1r: {
            auto [z, dz] = hurwitz_zeta_with_derivative<mpfr_float>(mpfr_float(-1), mpfr_float(1), digits);
            v = dz / z;
            break;
        }
    }
    if (id.pi != 0) v *= pow(pi, id.pi);
    return v;
}

mpfr_float eval_mp(const ConstExpr& x, int digits) {
    if (x.has_free_symbol()) throw Error(ErrorCode::FreeSymbol, "expression contains a free symbol");
    mpfr_float total = 0;
    for (const auto& [id, c] : x.terms())
        total += basis_value(id, digits) * mpfr_float(c.get_num().get_str()) / mpfr_float(c.get_den().get_str());
    return total;
}

std::string format_significant(const mpfr_float& v, int digits) {
    if (digits < 1) throw Error(ErrorCode::Domain, "digits must be positive");
    if (v == 0) return digits == 1 ? "0" : "0." + std::string(digits - 1, '0');
    using boost::multiprecision::abs;
    using boost::multiprecision::floor;
    using boost::multiprecision::log10;
    long e = static_cast<long>(floor(log10(abs(v)))) + 1;  // digits before the point
    long decimals = digits - e;
    if (decimals < 0 || e < -20) return v.str(digits, std::ios_base::scientific);
    std::string s = v.str(decimals, std::ios_base::fixed);
    // rounding up can carry into a new leading digit; trim one decimal if so
    std::string mant = s[0] == '-' ? s.substr(1) : s;
    size_t sig = 0;
    bool started = false;
    for (char ch : mant) {
        if (ch == '.') continue;
        if (ch != '0') started = true;
        if (started) ++sig;
    }
    if (static_cast<long>(sig) > digits && decimals > 0) s = v.str(decimals - 1, std::ios_base::fixed);
    return s;
}

}  // namespace

ConstExpr const_reduce(const ConstExpr& x, const RewriteRegistry& reg) {
    ConstExpr out;
    std::vector<BasisId> stack;
    for (const auto& [id, c] : x.terms()) out += c * reduce_id(id, reg, stack);
    return out;
}

std::string const_eval(const ConstExpr& x, int digits) {
    MpPrecision guard(digits + 25);
    return format_significant(eval_mp(x, digits + 20), digits);
}

std::string basis_eval(const BasisId& id, int digits) { return const_eval(ConstExpr::of(id), digits); }

long double const_eval_ld(const ConstExpr& x) {
    MpPrecision guard(40);
    return eval_mp(x, 30).convert_to<long double>();
}

AsymptoticExpansion& AsymptoticExpansion::operator+=(const AsymptoticExpansion& o) {
    coeff_L += o.coeff_L;
    coeff_LL += o.coeff_LL;
    constant += o.constant;
    has_small_o = has_small_o || o.has_small_o;
    return *this;
}

AsymptoticExpansion& AsymptoticExpansion::operator-=(const AsymptoticExpansion& o) {
    coeff_L -= o.coeff_L;
    coeff_LL -= o.coeff_LL;
    constant -= o.constant;
    has_small_o = has_small_o || o.has_small_o;
    return *this;
}

AsymptoticExpansion& AsymptoticExpansion::operator*=(const mpq_class& f) {
    coeff_L *= f;
    coeff_LL *= f;
    constant *= f;
    return *this;
}

bool AsymptoticExpansion::operator==(const AsymptoticExpansion& o) const {
    return coeff_L == o.coeff_L && coeff_LL == o.coeff_LL && constant == o.constant &&
           has_small_o == o.has_small_o;
}

std::string AsymptoticExpansion::str() const {
    std::vector<std::string> parts;
    if (!coeff_L.is_zero()) parts.push_back("(" + coeff_L.str() + ")*L");
    if (!coeff_LL.is_zero()) parts.push_back("(" + coeff_LL.str() + ")*LL");
    if (!constant.is_zero()) parts.push_back(constant.str());
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    if (s.empty()) s = "0";
    if (has_small_o) s += " + o(1)";
    return s;
}

std::string Symbol::str() const {
    switch (kind) {
        case SymKind::A: return "a";
        case SymKind::LogA: return "log a";
        case SymKind::LogEta: return "log eta_" + std::to_string(param);
        case SymKind::LogR: return param == 0 ? "log r_cusp" : "log r_" + std::to_string(param);
        case SymKind::Named: return name;
    }
    return name;
}

SymExpr& SymExpr::add(const Symbol& s, const ConstExpr& coeff, int pi_power) {
    if (coeff.is_zero()) return *this;
    Key k{s, pi_power};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

SymExpr& SymExpr::add_constant(const ConstExpr& c) {
    constant_ += c;
    return *this;
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, c, k.second);
    constant_ += o.constant_;
    small_o_ = small_o_ || o.small_o_;
    return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, -c, k.second);
    constant_ -= o.constant_;
    small_o_ = small_o_ || o.small_o_;
    return *this;
}

SymExpr& SymExpr::operator*=(const mpq_class& f) {
    if (f == 0) {
        terms_.clear();
        constant_ = ConstExpr();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= f;
    constant_ *= f;
    return *this;
}

bool SymExpr::operator==(const SymExpr& o) const {
    if (!(constant_ == o.constant_) || small_o_ != o.small_o_ || terms_.size() != o.terms_.size()) return false;
    for (const auto& [k, c] : terms_) {
        auto it = o.terms_.find(k);
        if (it == o.terms_.end() || !(it->second == c)) return false;
    }
    return true;
}

ConstExpr SymExpr::coeff(const Symbol& s, int pi_power) const {
    auto it = terms_.find({s, pi_power});
    return it == terms_.end() ? ConstExpr() : it->second;
}

long double SymExpr::evaluate(const std::map<Symbol, long double>& values) const {
    long double total = const_eval_ld(constant_);
    for (const auto& [k, c] : terms_) {
        auto it = values.find(k.first);
        if (it == values.end()) throw Error(ErrorCode::UnknownSymbol, "no value for " + k.first.str());
        total += const_eval_ld(c) * std::pow(kPi, static_cast<long double>(k.second)) * it->second;
    }
    return total;
}

std::string SymExpr::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k.second == 1) os << "*pi";
        else if (k.second != 0) os << "*pi^" << k.second;
        os << "*[" << k.first.str() << "]";
    }
    if (!constant_.is_zero() || first) {
        if (!first) os << " + ";
        os << constant_.str();
    }
    if (small_o_) os << " + o(1)";
    return os.str();
}

AsymptoticExpansion asym_substitute(const SymExpr& x) {
    AsymptoticExpansion out;
    out.constant = x.constant();
    out.has_small_o = x.small_o();
    const ConstExpr log2 = ConstExpr::of(BasisId::log2());
    for (const auto& [key, c] : x.terms()) {
        const auto& [sym, pp] = key;
        auto shift = [pp = pp](const ConstExpr& e) {
            ConstExpr r;
            for (const auto& [id, q] : e.terms()) r.add_term(id.times_pi(pp), q);
            return r;
        };
        auto prod = [&](const ConstExpr& k) {
            // c * k with k rational multiple of ONE or LOG2
            ConstExpr r;
            for (const auto& [idk, qk] : k.terms()) {
                for (const auto& [idc, qc] : c.terms()) {
                    if (!(idk.base() == BasisId::one()) && !(idc.base() == BasisId::one()))
                        throw Error(ErrorCode::Domain, "product of two transcendental constants");
                    BasisId id = idk.base() == BasisId::one() ? idc.times_pi(idk.pi) : idk.times_pi(idc.pi);
                    r.add_term(id, qk * qc);
                }
            }
            return r;
        };
        switch (sym.kind) {
            case SymKind::A: {
                // pi^pp * a = pi^{pp-1} (L + log 2) / 2
                ConstExpr half = ConstExpr(BasisId::pi_power(pp - 1), mpq_class(1, 2));
                out.coeff_L += prod(half);
                out.constant += prod(ConstExpr(BasisId::log2().times_pi(pp - 1), mpq_class(1, 2)));
                break;
            }
            case SymKind::LogA:
                out.coeff_LL += prod(shift(ConstExpr::rational(1)));
                out.has_small_o = true;
                break;
            case SymKind::LogEta: {
                long w = sym.param;
                if (w < 1) throw Error(ErrorCode::Domain, "cone angle parameter must be >= 1");
                out.coeff_L += prod(shift(ConstExpr::rational(mpq_class(-1, w))));
                out.constant += prod(shift(mpq_class(w - 1, w) * log2));
                break;
            }
            case SymKind::LogR: {
                long m = sym.param;
                if (m == 0) {
                    // cusp disk radius 1/(2 log(1/eps))
                    out.coeff_LL += prod(shift(ConstExpr::rational(-1)));
                    out.constant += prod(shift(-log2));
                } else {
                    out.coeff_L += prod(shift(ConstExpr::rational(mpq_class(-1, m))));
                    out.constant += prod(shift(-ConstExpr::log_int(m)));
                    out.has_small_o = true;
                }
                break;
            }
            case SymKind::Named:
                throw Error(ErrorCode::UnknownSymbol, "no substitution rule for " + sym.str());
        }
    }
    return out;
}

}  // namespace hypdet
