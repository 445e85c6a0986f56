#include "hypdet/cusp.hpp"

#include <array>
#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace hypdet {

ModelCusp::ModelCusp(Real height) : a(height) {
    if (!(a > 0)) throw Error(ErrorCode::Domain, "cusp height must be positive");
}

namespace {

// Root density of r -> K_{ir}(x): d/dr of (r acosh(r/x) - sqrt(r^2 - x^2))/pi.
Real cusp_density(Real r, Real x) { return r > x ? std::acosh(r / x) / kPi : 0; }

Real cusp_step(Real r, Real x) {
    Real spacing = kPi / std::acosh(std::max<Real>(r / x, 1.01L));
    return std::min<Real>(1, spacing / 8);
}

}  // namespace

std::vector<CuspEigenvalue> scan_cusp_eigenvalues(const ModelCusp& cusp, int k_max, Real r_max, Real step, int jobs,
                                                  ScanStats* stats) {
    if (k_max < 1) throw Error(ErrorCode::Domain, "k_max must be >= 1");
    if (!(r_max > 0)) throw Error(ErrorCode::Domain, "r_max must be positive");
    std::vector<std::vector<CuspEigenvalue>> per_k(k_max + 1);
    std::vector<ScanStats> per_stats(k_max + 1);
    parallel_for(1, k_max, jobs, [&](int k) {
        const Real x = cusp.x(k);
        // K_{ir}(x) > 0 for r <= x: start the scan at x
        if (r_max <= x) return;
        auto f = [x](Real r) { return bessel_k_imag_scaled(r, x); };
        auto st = [x, step](Real r) { return step > 0 ? step : cusp_step(r, x); };
        std::vector<Real> roots = scan_roots(f, x, r_max, st, 1e-10L, &per_stats[k]);
        int j = 0;
        for (Real r : roots) per_k[k].push_back({k, ++j, r});
    });
    std::vector<CuspEigenvalue> out;
    for (int k = 1; k <= k_max; ++k) {
        out.insert(out.end(), per_k[k].begin(), per_k[k].end());
        if (stats) stats->rescans += per_stats[k].rescans;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CuspEigenvalue& p, const CuspEigenvalue& q) { return p.r < q.r; });
    return out;
}

long cusp_counting(const std::vector<CuspEigenvalue>& evs, Real lambda, const ModelCusp& cusp, int k_max,
                   Real r_max) {
    if (lambda <= 0.25L) return 0;
    Real r = std::sqrt(lambda - 0.25L);
    if (r > r_max) throw Error(ErrorCode::IncompleteWindow, "lambda beyond the scanned r window");
    // roots of index k lie above 2 pi k a
    if (cusp.x(k_max + 1) < r) throw Error(ErrorCode::IncompleteWindow, "k window too small for lambda");
    long n = 0;
    for (const auto& e : evs)
        if (e.lambda() <= lambda) n += CuspEigenvalue::multiplicity;
    return n;
}

ZetaSum cusp_zeta_from(const std::vector<CuspEigenvalue>& evs, const ModelCusp& cusp, Real s, int k_max,
                       Real r_max) {
    if (!(s > 1)) throw Error(ErrorCode::Domain, "direct zeta sum needs s > 1");
    ZetaSum z;
    std::vector<Real> last(k_max + 1, 0);
    Real lambda_max = 0;
    for (const auto& e : evs) {
        z.value += CuspEigenvalue::multiplicity * std::pow(e.lambda(), -s);
        z.count += CuspEigenvalue::multiplicity;
        last[e.k] = std::max(last[e.k], e.r);
        lambda_max = std::max(lambda_max, e.lambda());
    }
    for (int k = 1; k <= k_max; ++k) {
        const Real x = cusp.x(k);
        Real r0 = std::max(last[k], x);
        if (last[k] == 0) r0 = std::max(r_max, x);
        auto dens = [x](Real r) { return cusp_density(r, x); };
        Real half = last[k] > 0 ? kPi / std::acosh(std::max<Real>(last[k] / x, 1.01L)) / 2 : 0;
        z.tail += CuspEigenvalue::multiplicity * tail_integral(dens, r0, s);
        z.tail_best += CuspEigenvalue::multiplicity * tail_integral(dens, r0 + half, s);
    }
    if (lambda_max > 0) {
        z.weyl_C = z.count / lambda_max;
        z.weyl_tail = z.weyl_C * std::pow(lambda_max, 1 - s) / (s - 1);
    }
    return z;
}

ZetaSum cusp_zeta_direct(const ModelCusp& cusp, Real s, int k_max, Real r_max, int jobs) {
    return cusp_zeta_from(scan_cusp_eigenvalues(cusp, k_max, r_max, 0, jobs), cusp, s, k_max, r_max);
}

Real cusp_f_k(Real t, int k, const ModelCusp& cusp) {
    const Real x = cusp.x(k);
    return dlog_bessel_k(t, x, DerivOrder::First) - 2 * t * exp_integral_e1_scaled(2 * x);
}

namespace {

// f_k(1/2 + h)/h without cancellation.  With C(t) = int e^{-x(cosh w - 1)} cosh(t w) dw and
// S = dC/dt, the divided differences (C(1/2+h) - C(1/2))/h and (S(1/2+h) - S(1/2))/h are integrated
// directly; C(1/2) and S(1/2) are closed forms.
Real f_over_h(Real h, Real x) {
    const Real t = 0.5L + h;
    const Real c0 = std::sqrt(kPi / (2 * x));
    const Real d0 = exp_integral_e1_scaled(2 * x);
    const Real w_peak = std::asinh(t / x);
    const Real phase0 = t * w_peak - x * (std::cosh(w_peak) - 1);
    // integrands scaled by exp(-phase0); even in w, so integrate over the whole line and halve
    auto terms = [&](Real w, std::array<Real, 3>& out) {
        Real aw = std::fabs(w);
        Real e = -x * (std::cosh(w) - 1) - phase0;
        Real sh = std::sinh(h * aw / 2) / h;  // (sinh(b/2))/h, b = h|w|
        Real a = aw / 2;
        // cosh((1/2+h)w) = e^{|w| t}(1 + e^{-2|w| t})/2, factored to avoid overflow
        Real big = std::exp(e + t * aw);
        Real ebt = std::exp(-2 * t * aw);
        Real cosh_t = big * (1 + ebt) / 2;
        // divided differences, scaled by exp(e + (a + h|w|/2))
        Real mid = a + h * aw / 2;
        Real scale = std::exp(e + mid);
        Real emid = std::exp(-2 * mid);
        Real cosh_mid = scale * (1 + emid) / 2;
        Real sinh_mid = scale * (1 - emid) / 2;
        out[0] = cosh_t;                 // C(t)
        out[1] = 2 * cosh_mid * sh * aw;  // (S(t) - S(1/2))/h, S integrand w sinh(t w) is even
        out[2] = 2 * sinh_mid * sh;      // (C(t) - C(1/2))/h
    };
    const Real width = 1 / std::sqrt(x * std::cosh(w_peak));
    Real hstep = std::min<Real>(0.25L, width / 2);
    std::array<Real, 3> sum{0, 0, 0}, abs_sum{0, 0, 0}, prev{0, 0, 0};
    auto sweep = [&](Real h0, Real offset) {
        std::array<Real, 3> acc{0, 0, 0}, v;
        for (int dir = -1; dir <= 1; dir += 2) {
            for (long j = 0;; ++j) {
                Real w = dir * (offset + j * h0);
                if (offset == 0 && j == 0 && dir == 1) continue;
                terms(w, v);
                for (int i = 0; i < 3; ++i) {
                    acc[i] += v[i];
                    abs_sum[i] += std::fabs(v[i]);
                }
                if (std::fabs(w) > w_peak + 2 * width && v[0] < 1e-24L * abs_sum[0] && v[1] < 1e-24L * abs_sum[1])
                    break;
                if (j > 10000000) throw Error(ErrorCode::NonConverged, "f_k quadrature range");
            }
        }
        return acc;
    };
    sum = sweep(hstep, 0);
    for (int i = 0; i < 3; ++i) prev[i] = hstep * sum[i];
    for (int depth = 0; depth < 20; ++depth) {
        auto mid = sweep(hstep, hstep / 2);
        for (int i = 0; i < 3; ++i) sum[i] += mid[i];
        hstep /= 2;
        bool done = true;
        std::array<Real, 3> cur;
        for (int i = 0; i < 3; ++i) {
            cur[i] = hstep * sum[i];
            if (std::fabs(cur[i] - prev[i]) > 1e-17L * hstep * abs_sum[i] * 8) done = false;
        }
        prev = cur;
        if (done && depth >= 1) break;
        if (depth == 19) throw Error(ErrorCode::NonConverged, "f_k quadrature refinement");
    }
    // all integrals carry the factor 2 (whole line) and exp(phase0)
    Real C1 = prev[0] / 2, dS = prev[1] / 2, dC = prev[2] / 2;
    // C(1/2) in the same scaling
    Real c0s = c0 * std::exp(-phase0);
    // f/h = dS/C1 - 2 d0 c0/C1 - (1 + 2h) d0 dC/C1
    return (dS - 2 * d0 * c0s - (1 + 2 * h) * d0 * dC) / C1;
}

Real large_t_threshold(Real x) { return std::max<Real>(40, 2 * x); }

// int_{lo}^{hi} (t^2 - 1/4)^{-s} f_k(t) dt with lo >= 1/2, hi possibly infinite
Real contour_integral(Real s, Real x, Real lo, Real hi, Real* err) {
    const Real T = large_t_threshold(x);
    Real total = 0, e_total = 0;
    const Real d0 = exp_integral_e1_scaled(2 * x);
    // near part: t = 1/2 + h
    Real a = std::min(lo, T), b = std::min(hi, T);
    if (b > a) {
        boost::math::quadrature::tanh_sinh<Real> ts(12);
        auto g = [&](Real h) {
            if (h <= 0) return Real(0);
            return std::pow(h, 1 - s) * std::pow(1 + h, -s) * f_over_h(h, x);
        };
        Real e = 0;
        total += ts.integrate(g, a - 0.5L, b - 0.5L, 1e-13L, &e);
        e_total += e;
    }
    // far part: t = T e^v with the large-order expansion of d/dt log K_t
    Real c = std::max(lo, T);
    if (hi > c) {
        auto g = [&](Real v) {
            Real t = c * std::exp(v);
            if (!std::isfinite(t) || t > hi) return Real(0);
            Real f = dlog_bessel_k_uniform(t, x, 12) - 2 * t * d0;
            return std::pow(t * t - 0.25L, -s) * f * t;
        };
        Real e = 0;
        if (std::isinf(hi)) {
            boost::math::quadrature::exp_sinh<Real> es(12);
            total += es.integrate(g, 1e-13L, &e);
        } else {
            boost::math::quadrature::tanh_sinh<Real> ts(12);
            total += ts.integrate(g, Real(0), std::log(hi / c), 1e-13L, &e);
        }
        e_total += e;
    }
    if (err) *err = e_total;
    return total;
}

}  // namespace

Real cusp_I_k(Real s, int k, const ModelCusp& cusp, Real* err) {
    if (!(s > 1 && s < 2)) throw Error(ErrorCode::Domain, "I_k needs 1 < s < 2");
    if (k < 1) throw Error(ErrorCode::Domain, "k must be >= 1");
    const Real pref = 2 * std::sin(kPi * s) / kPi;
    Real e = 0;
    Real v = contour_integral(s, cusp.x(k), 0.5L, INFINITY, &e);
    if (err) *err = std::fabs(pref) * e;
    return pref * v;
}

std::pair<Real, Real> cusp_split_LM(Real s, int k, const ModelCusp& cusp, const SplitParams& split) {
    split.validate();
    if (!(s > 1 && s < 2)) throw Error(ErrorCode::Domain, "split needs 1 < s < 2");
    const Real pref = 2 * std::sin(kPi * s) / kPi;
    const Real kd = std::pow(static_cast<Real>(k), static_cast<Real>(split.delta.get_d()));
    const Real x = cusp.x(k);
    Real L = kd > 0.5L ? pref * contour_integral(s, x, 0.5L, kd, nullptr) : 0;
    Real M = pref * contour_integral(s, x, std::max<Real>(kd, 0.5L), INFINITY, nullptr);
    return {L, M};
}

ContourSum cusp_contour_sum(const ModelCusp& cusp, Real s, int k_max, int jobs) {
    ContourSum out;
    out.terms.assign(k_max, 0);
    std::vector<Real> errs(k_max, 0);
    parallel_for(1, k_max, jobs, [&](int k) { out.terms[k - 1] = cusp_I_k(s, k, cusp, &errs[k - 1]); });
    for (int k = 0; k < k_max; ++k) {
        out.value += out.terms[k];
        out.error += errs[k];
    }
    return out;
}

SymExpr cusp_logdet_asymptotic() {
    // -4 pi zeta(-1) a - zeta(0) log a
    SymExpr r;
    r.add(Symbol::a(), ConstExpr::rational(mpq_class(1, 3)), 1);
    r.add(Symbol::log_a(), ConstExpr::rational(mpq_class(1, 2)));
    r.set_small_o(true);
    return r;
}

Real cusp_logdet_asymptotic_value(Real a) { return kPi * a / 3 + std::log(a) / 2; }

Real cusp_error_integrand(ErrorTerm which, Real u, int k, const ModelCusp& cusp) {
    const Real c = 2 * kPi * cusp.a;
    const Real q = u * u + c * c;
    switch (which) {
        case ErrorTerm::E0: return -0.5L * u / q;
        case ErrorTerm::E1: return k * std::log((u + std::sqrt(q)) / c);
        case ErrorTerm::E2:
            // 15 u^2 in the last factor; see the notes on the transcription
            return u * std::pow(q, -1.5L) / 24 * (13 - 15 * u * u / q) / k;
    }
    return 0;
}

Real cusp_error_integral(ErrorTerm which, Real s, int k, const ModelCusp& cusp, const SplitParams& split) {
    split.validate();
    if (!(s > 1 && s < 2)) throw Error(ErrorCode::Domain, "error integrals need 1 < s < 2");
    const Real u0 = std::pow(static_cast<Real>(k), static_cast<Real>(split.delta.get_d()) - 1);
    const Real kk = k;
    auto g = [&](Real v) {
        Real u = u0 * std::exp(v);
        if (!std::isfinite(u)) return Real(0);
        Real base = kk * kk * u * u - 0.25L;
        return std::pow(base, -s) * cusp_error_integrand(which, u, k, cusp) * u;
    };
    boost::math::quadrature::exp_sinh<Real> es(12);
    Real e = 0;
    Real v = es.integrate(g, 1e-14L, &e);
    return 2 * std::sin(kPi * s) / kPi * v;
}

}  // namespace hypdet
