#include "hypdet/cone.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace hypdet {

Real eta_from_r(int omega, Real R) {
    if (omega < 1) throw Error(ErrorCode::Domain, "cone needs omega >= 1");
    if (!(R > 0 && R < 1)) throw Error(ErrorCode::OutOfRange, "R must lie in (0, 1)");
    return 2 * std::pow(R, 1.0L / omega);
}

Real r_from_eta(int omega, Real eta) {
    if (omega < 1) throw Error(ErrorCode::Domain, "cone needs omega >= 1");
    if (!(eta > 0 && eta < 2)) throw Error(ErrorCode::OutOfRange, "eta must lie in (0, 2)");
    return std::pow(eta / 2, static_cast<Real>(omega));
}

ModelCone::ModelCone(int w, Real e) : omega(w), eta(e) {
    if (omega < 1) throw Error(ErrorCode::Domain, "cone needs omega >= 1");
    if (!(eta > 0)) throw Error(ErrorCode::Domain, "eta must be positive");
}

Real ModelCone::xi() const { return (1 - std::cosh(eta)) / 2; }

namespace {

// Zero density in r of P^{-mu}_{-1/2+ir}(cosh eta) from the WKB phase
// int sqrt(r^2 - mu^2/sinh(rho)^2) d rho over the classically allowed part of (0, eta).
Real cone_density(Real r, int mu, Real eta) {
    if (mu == 0) return eta / kPi;
    Real st = mu / r;
    if (st >= std::sinh(eta)) return 0;
    Real rho_t = std::asinh(st);
    boost::math::quadrature::tanh_sinh<Real> ts;
    auto g = [&](Real rho) {
        Real q = 1 - st * st / (std::sinh(rho) * std::sinh(rho));
        return q > 0 ? 1 / std::sqrt(q) : Real(0);
    };
    return ts.integrate(g, rho_t, eta) / kPi;
}

Real cone_spacing(Real r, int mu, Real eta) {
    Real d = cone_density(r, mu, eta);
    return d > 0 ? 1 / d : kPi / eta;
}

}  // namespace

std::vector<ConeEigenvalue> scan_cone_eigenvalues(const ModelCone& cone, int k_max, Real r_max, Real step, int jobs,
                                                  ScanStats* stats) {
    if (k_max < 0) throw Error(ErrorCode::Domain, "k_max must be >= 0");
    if (!(r_max > 0)) throw Error(ErrorCode::Domain, "r_max must be positive");
    const Real ch = std::cosh(cone.eta);
    const Real base = std::min<Real>(1, kPi / cone.eta / 8);
    std::vector<std::vector<ConeEigenvalue>> per_k(k_max + 1);
    std::vector<ScanStats> per_stats(k_max + 1);
    parallel_for(0, k_max, jobs, [&](int k) {
        const int mu = k * cone.omega;
        auto f = [mu, ch](Real r) { return legendre_p(r, mu, ch); };
        auto st = [&](Real) { return step > 0 ? step : base; };
        // no oscillation below the turning point r = mu / sinh(eta)
        Real lo = 0.5L * mu / std::sinh(cone.eta);
        if (lo >= r_max) return;
        std::vector<Real> roots = scan_roots(f, lo, r_max, st, 1e-10L, &per_stats[k]);
        int n = 0;
        for (Real r : roots)
            if (r > 0) per_k[k].push_back({k, n++, r});
    });
    std::vector<ConeEigenvalue> out;
    for (int k = 0; k <= k_max; ++k) {
        out.insert(out.end(), per_k[k].begin(), per_k[k].end());
        if (stats) stats->rescans += per_stats[k].rescans;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ConeEigenvalue& p, const ConeEigenvalue& q) { return p.r < q.r; });
    return out;
}

DesingReport cone_desingularization_check(int omega, Real R, int k_max, Real r_max, Real tol, int jobs) {
    if (omega < 2) throw Error(ErrorCode::Domain, "desingularization needs omega >= 2");
    ModelCone sing = ModelCone::from_R(omega, R);
    ModelCone flat = ModelCone::from_R(1, std::pow(R, 1.0L / omega));
    auto a = scan_cone_eigenvalues(sing, k_max, r_max, 0, jobs);
    auto b = scan_cone_eigenvalues(flat, k_max * omega, r_max, 0, jobs);
    DesingReport rep;
    for (const auto& e : a) {
        const ConeEigenvalue* hit = nullptr;
        for (const auto& f : b)
            if (f.k == e.k * omega && f.n == e.n) hit = &f;
        if (!hit)
            throw Error(ErrorCode::Mismatch, "no partner for (k, n) = (" + std::to_string(e.k) + ", " +
                                                 std::to_string(e.n) + ")");
        Real d = std::fabs(e.lambda() - hit->lambda());
        rep.worst = std::max(rep.worst, d);
        rep.pairs.emplace_back(e, *hit);
        if (d > tol)
            throw Error(ErrorCode::Mismatch, "eigenvalue mismatch at (k, n) = (" + std::to_string(e.k) + ", " +
                                                 std::to_string(e.n) + ")");
    }
    return rep;
}

ZetaSum cone_zeta_from(const std::vector<ConeEigenvalue>& evs, const ModelCone& cone, Real s, int k_max,
                       Real r_max) {
    if (!(s > 1)) throw Error(ErrorCode::Domain, "direct zeta sum needs s > 1");
    ZetaSum z;
    std::vector<Real> last(k_max + 1, 0);
    Real lambda_max = 0;
    for (const auto& e : evs) {
        if (e.k > k_max) continue;
        z.value += e.multiplicity() * std::pow(e.lambda(), -s);
        z.count += e.multiplicity();
        last[e.k] = std::max(last[e.k], e.r);
        lambda_max = std::max(lambda_max, e.lambda());
    }
    for (int k = 0; k <= k_max; ++k) {
        const int mu = k * cone.omega;
        const int d = k == 0 ? 1 : 2;
        Real r0 = last[k] > 0 ? last[k] : r_max;
        auto dens = [&](Real r) { return cone_density(r, mu, cone.eta); };
        Real half = last[k] > 0 ? cone_spacing(last[k], mu, cone.eta) / 2 : 0;
        z.tail += d * tail_integral(dens, r0, s);
        z.tail_best += d * tail_integral(dens, r0 + half, s);
    }
    if (lambda_max > 0) {
        z.weyl_C = z.count / lambda_max;
        z.weyl_tail = z.weyl_C * std::pow(lambda_max, 1 - s) / (s - 1);
    }
    return z;
}

ZetaSum cone_zeta_direct(const ModelCone& cone, Real s, int k_max, Real r_max, int jobs) {
    return cone_zeta_from(scan_cone_eigenvalues(cone, k_max, r_max, 0, jobs), cone, s, k_max, r_max);
}

namespace {

// F(1/2+t, 1/2-t; mu+1; xi) and its first three t-derivatives, term by term.
std::array<Real, 4> degree_series(Real t, int mu, Real xi) {
    // a_i = (d/dt)^i prod_{j<n}((1/2+j)^2 - t^2) * xi^n / ((mu+1)_n n!), i.e. the series terms
    Real a0 = 1, a1 = 0, a2 = 0, a3 = 0;
    std::array<Real, 4> sum{1, 0, 0, 0}, mag{1, 0, 0, 0};
    for (long n = 0; n < 10000000; ++n) {
        Real h = n + 0.5L;
        Real q = h * h - t * t, q1 = -2 * t, q2 = -2;
        Real w = xi / ((mu + 1 + n) * Real(n + 1));
        Real n3 = (a3 * q + 3 * a2 * q1 + 3 * a1 * q2) * w;
        Real n2 = (a2 * q + 2 * a1 * q1 + a0 * q2) * w;
        Real n1 = (a1 * q + a0 * q1) * w;
        a0 *= q * w;
        a1 = n1;
        a2 = n2;
        a3 = n3;
        std::array<Real, 4> term{a0, a1, a2, a3};
        bool small = true;
        for (int i = 0; i < 4; ++i) {
            sum[i] += term[i];
            mag[i] += std::fabs(term[i]);
            if (std::fabs(term[i]) > 1e-22L * mag[i]) small = false;
        }
        if (n > t + 2 && small) return sum;
    }
    throw Error(ErrorCode::NonConverged, "legendre degree series");
}

// d/dt log P^{-mu}_{-1/2+t}(cosh eta) at t = 1/2: P there is the prefactor alone.
Real dlog_half(int mu, Real xi) { return -xi / (mu + 1) * hyp2f1(1, 1, mu + 2, xi); }

Real dlog_degree(Real t, int mu, Real xi) {
    auto F = degree_series(t, mu, xi);
    if (!(F[0] > 0)) throw Error(ErrorCode::NearZero, "legendre function vanishes at real degree");
    return F[1] / F[0];
}

// f_k(1/2 + h)/h, with a Taylor expansion at small h
Real cone_f_over_h(Real h, int mu, Real xi, Real d0) {
    if (h >= 1e-4L) return (dlog_degree(0.5L + h, mu, xi) - d0) / h - 2 * d0;
    auto F = degree_series(0.5L, mu, xi);
    Real D = F[1] / F[0];
    Real D1 = F[2] / F[0] - D * D;
    Real D2 = F[3] / F[0] - 3 * F[2] * F[1] / (F[0] * F[0]) + 2 * D * D * D;
    return D1 + h * D2 / 2 - 2 * d0;
}

constexpr Real kLargeT = 1000;

}  // namespace

Real cone_f_k(Real t, int k, const ModelCone& cone) {
    if (!(t >= 0.5L)) throw Error(ErrorCode::Domain, "f_k needs t >= 1/2");
    if (k < 0) throw Error(ErrorCode::Domain, "k must be >= 0");
    const int mu = k * cone.omega;
    const Real xi = cone.xi();
    if (!(xi > -1)) throw Error(ErrorCode::NonConverged, "legendre series needs (cosh eta - 1)/2 < 1");
    const Real d0 = dlog_half(mu, xi);
    return dlog_degree(t, mu, xi) - 2 * t * d0;
}

Real cone_contour_term(Real s, int k, const ModelCone& cone, const SplitParams& split, Real* err) {
    split.validate();
    if (!(s > 1 && s < 2)) throw Error(ErrorCode::Domain, "contour needs 1 < s < 2");
    if (k < 0) throw Error(ErrorCode::Domain, "k must be >= 0");
    const int mu = k * cone.omega;
    const Real xi = cone.xi();
    if (!(xi > -1)) throw Error(ErrorCode::NonConverged, "legendre series needs (cosh eta - 1)/2 < 1");
    const Real d0 = dlog_half(mu, xi);
    const Real p = k == 0 ? 1 : std::max<Real>(1, std::pow(static_cast<Real>(k), split.delta.get_d()));
    boost::math::quadrature::tanh_sinh<Real> ts(12);
    auto near = [&](Real h) {
        if (h <= 0) return Real(0);
        return std::pow(h, 1 - s) * std::pow(1 + h, -s) * cone_f_over_h(h, mu, xi, d0);
    };
    Real e1 = 0, e2 = 0, e3 = 0;
    Real L = ts.integrate(near, Real(0), p - 0.5L, 1e-13L, &e1);
    Real M = ts.integrate(near, p - 0.5L, kLargeT - 0.5L, 1e-13L, &e2);
    // beyond kLargeT: d/dt log P = eta - (mu + 1/2)/t + O(t^{-2}) from the Bessel-type limit
    const Real eta = cone.eta;
    auto far = [&](Real v) {
        Real t = kLargeT * std::exp(v);
        if (!std::isfinite(t)) return Real(0);
        return std::pow(t * t - 0.25L, -s) * (eta - (mu + 0.5L) / t - 2 * t * d0) * t;
    };
    boost::math::quadrature::exp_sinh<Real> es(12);
    M += es.integrate(far, 1e-13L, &e3);
    const Real remainder = std::fabs(dlog_degree(kLargeT, mu, xi) - (eta - (mu + 0.5L) / kLargeT)) * kLargeT * kLargeT;
    const Real trunc = remainder * std::pow(kLargeT, -2 * s - 1) / (2 * s + 1);
    const Real pref = (k == 0 ? 1 : 2) * std::sin(kPi * s) / kPi;
    if (err) *err = std::fabs(pref) * (e1 + e2 + e3 + trunc);
    return pref * (L + M);
}

ContourSum cone_contour_sum(const ModelCone& cone, Real s, int k_max, const SplitParams& split, int jobs) {
    ContourSum out;
    out.terms.assign(k_max + 1, 0);
    std::vector<Real> errs(k_max + 1, 0);
    parallel_for(0, k_max, jobs, [&](int k) { out.terms[k] = cone_contour_term(s, k, cone, split, &errs[k]); });
    for (int k = 0; k <= k_max; ++k) {
        out.value += out.terms[k];
        out.error += errs[k];
    }
    return out;
}

SymExpr cone_logdet_asymptotic(int omega) {
    if (omega < 1) throw Error(ErrorCode::Domain, "cone needs omega >= 1");
    mpq_class w(omega), iw(1, omega);
    const ConstExpr log2 = ConstExpr::of(BasisId::log2());
    SymExpr r;
    r.add(Symbol::log_eta(omega), ConstExpr::rational(-(w / 6 + iw / 6)));
    ConstExpr c;
    c -= w * (ConstExpr(BasisId::zp1(), -2) + ConstExpr::rational(mpq_class(1, 6)) - mpq_class(1, 6) * log2);
    c -= iw * (ConstExpr::rational(mpq_class(5, 12)) - mpq_class(1, 6) * log2 +
               ConstExpr(BasisId::gamma(), mpq_class(1, 6)));
    mpq_class lw = mpq_class(1, 2) + w / 6 + iw / 6;
    lw.canonicalize();
    c += lw * ConstExpr::log_int(omega);
    c += ConstExpr::rational(mpq_class(1, 4));
    r.add_constant(c);
    r.set_small_o(true);
    return r;
}

}  // namespace hypdet
