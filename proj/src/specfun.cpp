#include "hypdet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

namespace hypdet {

namespace {

template <class R>
R to_real(const mpz_class& z) {
    if constexpr (std::is_same_v<R, Real>) {
        return std::stold(z.get_str());
    } else {
        return R(z.get_str());
    }
}

template <class R>
R to_real(const mpq_class& q) {
    return to_real<R>(q.get_num()) / to_real<R>(q.get_den());
}

// Value and first s-derivative.
template <class R>
struct Dual {
    R v, d;
};

template <class R>
Dual<R> operator+(const Dual<R>& a, const Dual<R>& b) { return {a.v + b.v, a.d + b.d}; }
template <class R>
Dual<R> operator*(const Dual<R>& a, const Dual<R>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class R>
Dual<R> operator*(const R& a, const Dual<R>& b) { return {a * b.v, a * b.d}; }

// base^{-s} for real base > 0
template <class R>
Dual<R> pow_neg(const R& base, const Dual<R>& s) {
    using std::exp;
    using std::log;
    R lb = log(base);
    R v = exp(-s.v * lb);
    return {v, -lb * v * s.d};
}

std::mutex g_cache_mutex;

}  // namespace

const std::vector<mpq_class>& bernoulli_even(int n) {
    static std::vector<mpq_class> cache;  // B_0, B_2, ...
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (static_cast<int>(cache.size()) > n) return cache;
    // Akiyama-Tanigawa produces B_m with B_1 = +1/2; only even indices are kept.
    int m_max = 2 * n;
    std::vector<mpq_class> a(m_max + 1);
    std::vector<mpq_class> all(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        a[m] = mpq_class(1, m + 1);
        for (int j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        all[m] = a[0];
    }
    cache.clear();
    for (int k = 0; k <= n; ++k) cache.push_back(all[2 * k]);
    return cache;
}

template <class R>
std::pair<R, R> hurwitz_zeta_with_derivative(const R& s, const R& x, int digits) {
    using std::abs;
    using std::log;
    using std::pow;
    if (s == R(1)) throw Error(ErrorCode::Pole, "hurwitz zeta at s = 1");
    if (!(x > 0)) throw Error(ErrorCode::Domain, "hurwitz zeta needs x > 0");
    const int shift = std::max(10, digits / 2 + 4);
    const Dual<R> sd{s, R(1)};
    Dual<R> sum{R(0), R(0)};
    for (int n = 0; n < shift; ++n) sum = sum + pow_neg<R>(R(n) + x, sd);
    const R a = R(shift) + x;
    const R la = log(a);
    // a^{1-s}/(s-1)
    {
        Dual<R> p = pow_neg<R>(a, sd);
        Dual<R> q{a * p.v, a * p.d};
        R inv = R(1) / (s - R(1));
        sum = sum + Dual<R>{q.v * inv, q.d * inv - q.v * inv * inv};
        sum = sum + Dual<R>{p.v / 2, p.d / 2};
    }
    const R tol = pow(R(10), -(digits + 4));
    int jmax = digits + 40;
    const auto& bern = bernoulli_even(jmax + 1);
    // (s)_{2j-1} a^{-s-2j+1}, built incrementally
    Dual<R> poch{s, R(1)};
    Dual<R> apow = pow_neg<R>(a, Dual<R>{s + R(1), R(1)});  // a^{-s-1}
    R fact = 2;  // (2j)!
    R prev = std::numeric_limits<double>::max();
    for (int j = 1; j <= jmax; ++j) {
        R b = to_real<R>(bern[j]) / fact;
        Dual<R> term = b * (poch * apow);
        R mag = abs(term.v) + abs(term.d);
        if (mag > prev && j > 3) break;  // asymptotic series started to grow
        sum = sum + term;
        prev = mag;
        if (mag < tol * (abs(sum.v) + abs(sum.d) + R(1)) && j > 2) break;
        poch = poch * Dual<R>{s + R(2 * j - 1), R(1)};
        poch = poch * Dual<R>{s + R(2 * j), R(1)};
        R a2 = a * a;
        apow = Dual<R>{apow.v / a2, apow.d / a2};
        fact *= R(2 * j + 1) * R(2 * j + 2);
    }
    (void)la;
    return {sum.v, sum.d};
}

template std::pair<Real, Real> hurwitz_zeta_with_derivative<Real>(const Real&, const Real&, int);
template std::pair<mpfr_float, mpfr_float> hurwitz_zeta_with_derivative<mpfr_float>(const mpfr_float&,
                                                                                    const mpfr_float&, int);

Real hurwitz_zeta(Real s, Real x) { return hurwitz_zeta_with_derivative<Real>(s, x, 20).first; }

Real riemann_zeta_derivative(int order, int s0) {
    if (order < 0 || order > 1 || (s0 != 0 && s0 != -1))
        throw Error(ErrorCode::Domain, "zeta derivative supports order 0/1 at s = 0, -1");
    auto [v, d] = hurwitz_zeta_with_derivative<Real>(Real(s0), Real(1), 20);
    return order == 0 ? v : d;
}

mpfr_float riemann_zeta_derivative_mp(int order, int s0, int digits) {
    if (order < 0 || order > 1 || (s0 != 0 && s0 != -1))
        throw Error(ErrorCode::Domain, "zeta derivative supports order 0/1 at s = 0, -1");
    auto [v, d] = hurwitz_zeta_with_derivative<mpfr_float>(mpfr_float(s0), mpfr_float(1), digits);
    return order == 0 ? v : d;
}

int character_modulus(Character chi) { return chi == Character::Chi4 ? 4 : 3; }

int character_value(Character chi, int a) {
    int m = character_modulus(chi);
    int r = ((a % m) + m) % m;
    if (r == 1) return 1;
    if (r == m - 1) return -1;
    return 0;
}

mpq_class dirichlet_l0(Character chi) {
    // L(0,chi) = sum_a chi(a) zeta_H(0, a/m) and zeta_H(0, x) = 1/2 - x
    int m = character_modulus(chi);
    mpq_class total = 0;
    for (int a = 1; a < m; ++a) total += character_value(chi, a) * (mpq_class(1, 2) - mpq_class(a, m));
    total.canonicalize();
    return total;
}

Real dirichlet_dl0(Character chi) {
    int m = character_modulus(chi);
    Real total = -std::log(Real(m)) * to_real<Real>(dirichlet_l0(chi));
    for (int a = 1; a < m; ++a) total += character_value(chi, a) * std::lgamma(Real(a) / m);
    return total;
}

mpfr_float dirichlet_dl0_mp(Character chi, int digits) {
    MpPrecision guard(digits + 10);
    int m = character_modulus(chi);
    mpfr_float total = -log(mpfr_float(m)) * to_real<mpfr_float>(dirichlet_l0(chi));
    for (int a = 1; a < m; ++a)
        total += character_value(chi, a) * boost::multiprecision::lgamma(mpfr_float(a) / m);
    return total;
}

Real exp_integral_e1_scaled(Real x) {
    if (!(x > 0)) throw Error(ErrorCode::Domain, "E1 needs x > 0");
    if (x <= 1) {
        // E1(x) = -gamma - log x - sum_{n>=1} (-x)^n / (n n!)
        Real sum = 0, term = 1;
        for (int n = 1; n < 200; ++n) {
            term *= -x / n;
            Real add = term / n;
            sum += add;
            if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
        }
        return std::exp(x) * (-kEulerGamma - std::log(x) - sum);
    }
    // modified Lentz on 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    const Real tiny = 1e-4000L;
    Real b = x + 1;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (int i = 1; i < 100000; ++i) {
        Real an = -Real(i) * i;
        b += 2;
        d = 1 / (an * d + b);
        c = b + an / c;
        Real del = c * d;
        h *= del;
        if (std::fabs(del - 1) < 1e-21L) return h;
    }
    throw Error(ErrorCode::NonConverged, "E1 continued fraction");
}

Real exp_integral_e1(Real x) { return exp_integral_e1_scaled(x) * std::exp(-x); }

Real hyp2f1(Real a, Real b, Real c, Real z, const Precision& prec) {
    if (!(z > -1 && z <= 0)) throw Error(ErrorCode::NonConverged, "hyp2f1 series needs -1 < z <= 0");
    if (c <= 0 && std::floor(c) == c) throw Error(ErrorCode::Domain, "hyp2f1 with c a non-positive integer");
    Real sum = 1, term = 1;
    const int max_terms = 200000;
    for (int n = 0; n < max_terms; ++n) {
        Real num = (a + n) * (b + n);
        if (num == 0) return sum;
        Real ratio = num / ((c + n) * (n + 1)) * z;
        term *= ratio;
        sum += term;
        // geometric tail bound once the term ratio is below one for good
        Real next = std::fabs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2)) * z);
        Real lim = std::fabs(z);
        Real rho = std::max(next, lim);
        if (rho < 1 && n > std::fabs(a) + std::fabs(b) + 2) {
            Real tail = std::fabs(term) * rho / (1 - rho);
            if (tail <= prec.rel_tol * std::fabs(sum)) return sum;
        }
    }
    throw Error(ErrorCode::NonConverged, "hyp2f1 tail bound not reached");
}

namespace {

// sum_n prod_{j<n}((1/2+j)^2 + Q) xi^n / ((mu+1)_n n!), plus the sum of |terms|.
template <class R>
std::pair<R, R> legendre_series(const R& Q, int mu, const R& xi, const R& tol) {
    using std::abs;
    R sum = 1, term = 1, abs_sum = 1;
    const R peak = sqrt(abs(Q));
    for (long n = 0; n < 2000000; ++n) {
        R half = R(n) + R(1) / 2;
        R fac = half * half + Q;
        if (fac == 0) return {sum, abs_sum};
        term *= fac * xi / ((R(mu) + R(1) + R(n)) * R(n + 1));
        sum += term;
        abs_sum += abs(term);
        if (R(n) > peak + 2 && abs(term) < tol * abs_sum) return {sum, abs_sum};
    }
    throw Error(ErrorCode::NonConverged, "legendre hypergeometric series");
}

Real legendre_prefactor(int mu, Real cosh_eta) {
    Real ratio = (cosh_eta - 1) / (cosh_eta + 1);
    return std::exp(Real(mu) / 2 * std::log(ratio) - std::lgamma(Real(mu) + 1));
}

}  // namespace

Real legendre_hyp_imag(Real r, int mu, Real xi) {
    if (!(xi > -1 && xi <= 0)) throw Error(ErrorCode::NonConverged, "legendre series needs -1 < xi <= 0");
    const Real Q = r * r;
    auto [sum, abs_sum] = legendre_series<Real>(Q, mu, xi, 1e-21L);
    Real loss = std::log10(abs_sum) + (mu + 0.5L) * std::log10(1 + 2 * r * std::sqrt(-xi));
    if (loss < 3) return sum;
    if (!(loss < 5000)) throw Error(ErrorCode::NonConverged, "legendre series cancellation too severe");
    int digits = 30 + static_cast<int>(std::ceil(loss));
    MpPrecision guard(digits);
    mpfr_float Qm = mpfr_float(static_cast<double>(r)) + mpfr_float(static_cast<double>(r - Real(static_cast<double>(r))));
    Qm = Qm * Qm;
    mpfr_float xim = mpfr_float(static_cast<double>(xi)) + mpfr_float(static_cast<double>(xi - Real(static_cast<double>(xi))));
    mpfr_float tol = pow(mpfr_float(10), -(digits - 5));
    auto res = legendre_series<mpfr_float>(Qm, mu, xim, tol);
    return static_cast<Real>(res.first.convert_to<long double>());
}

Real legendre_p(Real r, int mu, Real cosh_eta, const Precision& prec) {
    if (!(cosh_eta > 1)) throw Error(ErrorCode::Domain, "legendre_p needs cosh(eta) > 1");
    if (mu < 0) throw Error(ErrorCode::Domain, "legendre_p needs mu >= 0");
    (void)prec;
    Real xi = (1 - cosh_eta) / 2;
    if (!(xi > -1)) throw Error(ErrorCode::NonConverged, "legendre_p series needs (cosh eta - 1)/2 < 1");
    return legendre_prefactor(mu, cosh_eta) * legendre_hyp_imag(std::fabs(r), mu, xi);
}

Real legendre_p_real_degree(Real t, int mu, Real cosh_eta, const Precision& prec) {
    if (!(cosh_eta > 1)) throw Error(ErrorCode::Domain, "legendre_p needs cosh(eta) > 1");
    Real xi = (1 - cosh_eta) / 2;
    if (!(xi > -1)) throw Error(ErrorCode::NonConverged, "legendre_p series needs (cosh eta - 1)/2 < 1");
    auto res = legendre_series<Real>(-t * t, mu, xi, prec.rel_tol * 1e-3L);
    return legendre_prefactor(mu, cosh_eta) * res.first;
}

const std::vector<mpq_class>& uniform_poly(int n) {
    static std::vector<std::vector<mpq_class>> cache{{mpq_class(1)}};
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    while (static_cast<int>(cache.size()) <= n) {
        const auto& u = cache.back();
        int deg = static_cast<int>(u.size()) - 1;
        std::vector<mpq_class> next(deg + 4, mpq_class(0));
        // (1/2) tau^2 (1 - tau^2) u'(tau)
        for (int k = 1; k <= deg; ++k) {
            mpq_class c = u[k] * k / 2;
            next[k + 1] += c;
            next[k + 3] -= c;
        }
        // (1/8) int_0^tau (1 - 5x^2) u(x) dx
        for (int k = 0; k <= deg; ++k) {
            next[k + 1] += u[k] / (8 * (k + 1));
            next[k + 3] -= 5 * u[k] / (8 * (k + 3));
        }
        for (auto& c : next) c.canonicalize();
        while (next.size() > 1 && next.back() == 0) next.pop_back();
        cache.push_back(next);
    }
    return cache[n];
}

namespace {

struct UniformTable {
    std::vector<std::vector<Real>> coeffs;
};

const UniformTable& uniform_table() {
    static const UniformTable table = [] {
        UniformTable t;
        for (int n = 0; n <= 24; ++n) {
            const auto& u = uniform_poly(n);
            std::vector<Real> c;
            for (const auto& q : u) c.push_back(to_real<Real>(q));
            t.coeffs.push_back(c);
        }
        return t;
    }();
    return table;
}

}  // namespace

Real uniform_poly_eval(int n, Real tau) {
    const auto& c = n <= 24 ? uniform_table().coeffs[n] : std::vector<Real>{};
    if (n > 24) {
        Real acc = 0;
        const auto& u = uniform_poly(n);
        for (int k = static_cast<int>(u.size()) - 1; k >= 0; --k) acc = acc * tau + to_real<Real>(u[k]);
        return acc;
    }
    Real acc = 0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * tau + c[k];
    return acc;
}

Real uniform_poly_deriv(int n, Real tau) {
    if (n > 24) throw Error(ErrorCode::Domain, "uniform polynomial derivative beyond cached order");
    const auto& c = uniform_table().coeffs[n];
    Real acc = 0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * tau + k * c[k];
    return acc;
}

Real log_bessel_k_uniform(Real nu, Real x, int order) {
    Real z = x / nu;
    Real w = std::sqrt(1 + z * z);
    Real eta = std::log(z / (1 + w)) + w;
    Real tau = 1 / w;
    Real sum = 0;
    Real p = 1;
    for (int n = 0; n < order; ++n) {
        sum += (n % 2 ? -1 : 1) * uniform_poly_eval(n, tau) * p;
        p /= nu;
    }
    return 0.5L * std::log(kPi / (2 * nu)) - nu * eta - 0.25L * std::log1p(z * z) + std::log(sum);
}

Real bessel_uniform_asym(Real nu, Real z, int order) {
    if (nu < 1) throw Error(ErrorCode::Domain, "uniform expansion needs nu >= 1");
    return std::exp(log_bessel_k_uniform(nu, nu * z, order));
}

Real dlog_bessel_k_uniform(Real nu, Real x, int order) {
    Real z = x / nu;
    Real w = std::sqrt(1 + z * z);
    Real tau = 1 / w;
    Real sum = 0, dsum = 0;
    Real p = 1;
    Real dtau = tau * (1 - tau * tau) / nu;
    for (int n = 0; n < order; ++n) {
        Real sgn = (n % 2 ? -1 : 1);
        Real u = uniform_poly_eval(n, tau);
        sum += sgn * u * p;
        dsum += sgn * (uniform_poly_deriv(n, tau) * dtau - n * u / nu) * p;
        p /= nu;
    }
    return std::asinh(nu / x) - 1 / (2 * nu) + z * z / (2 * nu * (1 + z * z)) + dsum / sum;
}

Real half_integer_coeff(int m, Real nu) {
    Real acc = 1;
    for (int j = 1; j <= m; ++j) acc *= (4 * nu * nu - Real(2 * j - 1) * (2 * j - 1)) / (8 * j);
    return acc;
}

namespace {

// Trapezoid rule on the whole line for g(u) = exp(phi(u) - phi_peak) * amp(u), nodes peak + j h.
// Returns h * sum, halving h until two levels agree.
template <class F>
Real trapezoid_line(F&& f, Real peak, Real h0, const Precision& prec, Real* l1 = nullptr) {
    auto sweep = [&](Real h, Real offset, Real& abs_acc) {
        Real acc = 0;
        for (int dir = -1; dir <= 1; dir += 2) {
            for (long j = (dir == 1 ? 0 : 1);; ++j) {
                Real u = peak + dir * (offset + j * h);
                Real v = f(u);
                acc += v;
                abs_acc += std::fabs(v);
                if (std::fabs(v) < 1e-30L * (abs_acc + 1e-4000L) && j > 4) break;
                if (j > 50000000) throw Error(ErrorCode::NonConverged, "trapezoid range");
            }
            if (offset == 0 && dir == -1) continue;
        }
        return acc;
    };
    Real abs_acc = 0;
    Real h = h0;
    Real sum = sweep(h, 0, abs_acc);
    // sweep(h, 0) counts the peak node once from the +1 side; dir=-1 starts at j=1
    Real value = h * sum;
    for (int depth = 0; depth < prec.max_refinement_depth; ++depth) {
        Real abs_mid = 0;
        Real mid = sweep(h, h / 2, abs_mid);
        // midpoints on both sides: the dir=-1 pass starts at j=1, add the one at -h/2
        mid += f(peak - h / 2);
        abs_acc += abs_mid;
        sum += mid;
        h /= 2;
        Real next = h * sum;
        if (std::fabs(next - value) <= prec.rel_tol * 4 * h * abs_acc) {
            if (l1) *l1 = h * abs_acc / 2;
            return next;
        }
        value = next;
    }
    throw Error(ErrorCode::NonConverged, "trapezoid refinement budget exhausted");
}

}  // namespace

Real log_bessel_k_real(Real nu, Real x, const Precision& prec) {
    if (!(x > 0)) throw Error(ErrorCode::Domain, "bessel_k_real needs x > 0");
    const Real t = std::fabs(nu);
    const Real up = std::asinh(t / x);
    const Real phi0 = -x * std::cosh(up) + t * up;
    const Real width = 1 / std::sqrt(x * std::cosh(up));
    auto f = [&](Real u) {
        Real ph = -x * std::cosh(u) + t * u - phi0;
        return ph < -11000 ? Real(0) : std::exp(ph);
    };
    Real s = trapezoid_line(f, up, std::min<Real>(0.5L, width), prec);
    return std::log(s / 2) + phi0;
}

Real bessel_k_real(Real nu, Real x, const Precision& prec) {
    Real lk = log_bessel_k_real(nu, x, prec);
    if (lk > 11000) throw Error(ErrorCode::Overflow, "bessel_k_real overflows extended precision");
    return std::exp(lk);
}

Real dlog_bessel_k(Real t, Real x, DerivOrder order, const Precision& prec) {
    Precision inner = prec;
    inner.rel_tol = std::min<Real>(prec.rel_tol, 1e-18L);
    Real lk = log_bessel_k_real(t, x, inner);
    if (lk < std::log(prec.abs_tol)) throw Error(ErrorCode::NearZero, "K_t(x) below abs_tol");
    const Real h0 = std::cbrt(prec.rel_tol) * std::max<Real>(1, std::fabs(t));
    auto lkf = [&](Real u) { return log_bessel_k_real(u, x, inner); };
    Real d[3];
    for (int i = 0; i < 3; ++i) {
        Real h = h0 / (1 << i);
        if (order == DerivOrder::First)
            d[i] = (lkf(t + h) - lkf(t - h)) / (2 * h);
        else
            d[i] = (lkf(t + h) - 2 * lk + lkf(t - h)) / (h * h);
    }
    Real r1a = (4 * d[1] - d[0]) / 3;
    Real r1b = (4 * d[2] - d[1]) / 3;
    return (16 * r1b - r1a) / 15;
}

std::pair<Real, Real> bessel_k_imag_debye_scaled(Real r, Real x, int max_terms) {
    if (!(r > x)) throw Error(ErrorCode::Domain, "oscillatory expansion needs r > x");
    Real q = x / r;
    Real w = std::sqrt((1 - q) * (1 + q));
    Real tau = 1 / w;
    Real phase = r * std::acosh(r / x) - r * w - kPi / 4;
    Real A = 0, B = 0;
    Real p = 1;
    Real best = std::numeric_limits<Real>::max();
    Real omitted = best;
    for (int k = 0; k < max_terms; ++k) {
        Real term = uniform_poly_eval(k, tau) * p;
        Real mag = std::fabs(term);
        if (k > 1 && mag > best) {
            omitted = mag;
            break;
        }
        best = std::min(best, mag);
        switch (k % 4) {
            case 0: A += term; break;
            case 1: B += term; break;
            case 2: A -= term; break;
            default: B -= term; break;
        }
        omitted = mag;  // updated below if another term follows
        p /= r;
        if (k + 1 == max_terms) omitted = std::fabs(uniform_poly_eval(k + 1 < 25 ? k + 1 : k, tau) * p);
    }
    Real amp = std::sqrt(2 * kPi / (r * w));
    return {amp * (A * std::cos(phase) - B * std::sin(phase)), amp * omitted};
}

namespace {

// exp(pi r/2) K_{ir}(x) by the trapezoid rule on the line Im u = pi/2 - delta.
Real bessel_k_imag_contour_scaled(Real r, Real x, const Precision& prec) {
    const Real c = 6;
    Real delta_saddle = r < x ? std::acos(r / x) : 0;
    Real delta = r > 0 ? std::max(delta_saddle, c / r) : kPi / 2;
    delta = std::min(delta, kPi / 2);
    const Real sd = std::sin(delta), cd = std::cos(delta);
    const Real base = r * delta - x * sd;
    auto f = [&](Real u) {
        Real ch = std::cosh(u);
        Real mag = base - x * sd * (ch - 1);
        if (mag < -11000) return Real(0);
        return std::exp(mag) * std::cos(r * u - x * cd * std::sinh(u));
    };
    // range where the envelope is still above exp(-50) of its peak
    Real chU = 1 + 50 / (x * sd);
    Real freq = std::max<Real>(std::fabs(r - x * cd * chU), r);
    Real width = 1 / std::sqrt(x * sd);
    Real h0 = std::min({Real(0.25), 1 / freq, width});
    Real s = trapezoid_line(f, 0, h0, prec);
    return s / 2;
}

}  // namespace

Real bessel_k_imag_scaled(Real r, Real x, const Precision& prec) {
    if (!(x > 0)) throw Error(ErrorCode::Domain, "bessel_k_imag needs x > 0");
    r = std::fabs(r);
    if (r > x * 1.05L && r > 8) {
        auto [v, err] = bessel_k_imag_debye_scaled(r, x);
        if (err <= std::max<Real>(prec.rel_tol, 1e-16L)) return v;
    }
    return bessel_k_imag_contour_scaled(r, x, prec);
}

Real bessel_k_imag(Real r, Real x, const Precision& prec) {
    Real s = bessel_k_imag_scaled(r, x, prec);
    Real lg = std::log(std::fabs(s)) - kPi * std::fabs(r) / 2;
    if (s != 0 && lg < std::log(prec.abs_tol))
        throw Error(ErrorCode::Underflow, "K_ir(x) below abs_tol");
    return s * std::exp(-kPi * std::fabs(r) / 2);
}

}  // namespace hypdet
