#include "hypdet/spectral.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "hypdet/error.hpp"

namespace hypdet {

void SplitParams::validate() const {
    if (!(delta > 0 && delta < mpq_class(1, 8))) throw Error(ErrorCode::Domain, "split delta must lie in (0, 1/8)");
    if (order < 1) throw Error(ErrorCode::Domain, "expansion order must be positive");
}

void parallel_for(int k0, int k1, int jobs, const std::function<void(int)>& body) {
    if (k1 < k0) return;
    int n = k1 - k0 + 1;
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int k = k0; k <= k1; ++k) body(k);
        return;
    }
    std::atomic<int> next{k0};
    std::exception_ptr failure;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            int k = next.fetch_add(1);
            if (k > k1) return;
            try {
                body(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                next = k1 + 1;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

namespace {

struct Scanner {
    const std::function<Real(Real)>& f;
    const std::function<Real(Real)>& step;
    Real tol;
    ScanStats* stats;
    int max_halvings;
    std::vector<Real> roots;

    void refine(Real a, Real fa, Real b, Real fb) {
        if (fa == 0) {
            roots.push_back(a);
            return;
        }
        if (fb == 0) return;  // picked up as the left end of the next cell
        boost::uintmax_t iters = 200;
        auto stop = [this](Real x, Real y) { return std::fabs(y - x) <= tol; };
        auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
        roots.push_back((r.first + r.second) / 2);
    }

    // Scans [lo, hi] with the step scaled by 2^{-level}.
    void scan(Real lo, Real hi, Real flo, int level) {
        Real scale = std::ldexp(1.0L, -level);
        Real x0 = lo, f0 = flo;
        Real xm = NAN, fm = NAN;  // node before x0
        while (x0 < hi) {
            Real h = step(x0) * scale;
            if (!(h > 0)) throw Error(ErrorCode::Domain, "scan step must be positive");
            Real x1 = std::min(hi, x0 + h);
            Real f1 = f(x1);
            if ((f0 < 0) != (f1 < 0) || f0 == 0) {
                refine(x0, f0, x1, f1);
            } else if (!std::isnan(fm) && (fm < 0) == (f0 < 0) && std::fabs(f0) < std::fabs(fm) &&
                       std::fabs(f0) < std::fabs(f1)) {
                // |f| has a local minimum at x0 without a sign change: fit a parabola
                Real h0 = x0 - xm, h1 = x1 - x0;
                Real d0 = (f0 - fm) / h0, d1 = (f1 - f0) / h1;
                Real a2 = (d1 - d0) / (h0 + h1);
                Real slope = d0 + a2 * h0;  // derivative at x0
                Real vertex = a2 != 0 ? f0 - slope * slope / (4 * a2) : f0;
                if ((vertex < 0) != (f0 < 0)) {
                    if (level >= max_halvings)
                        throw Error(ErrorCode::GridTooCoarse,
                                    "possible root pair near r = " + std::to_string(static_cast<double>(x0)));
                    if (stats) ++stats->rescans;
                    scan(xm, x1, fm, level + 1);
                }
            }
            xm = x0;
            fm = f0;
            x0 = x1;
            f0 = f1;
        }
    }
};

}  // namespace

std::vector<Real> scan_roots(const std::function<Real(Real)>& f, Real lo, Real hi,
                             const std::function<Real(Real)>& step, Real tol, ScanStats* stats, int max_halvings) {
    Scanner sc{f, step, tol, stats, max_halvings, {}};
    if (hi > lo) sc.scan(lo, hi, f(lo), 0);
    std::sort(sc.roots.begin(), sc.roots.end());
    // a rescan may find a root already bracketed by the coarse grid
    std::vector<Real> out;
    for (Real r : sc.roots)
        if (out.empty() || r - out.back() > 4 * tol) out.push_back(r);
    return out;
}

Real tail_integral(const std::function<Real(Real)>& density, Real r0, Real s) {
    boost::math::quadrature::exp_sinh<Real> integrator;
    auto g = [&](Real u) { return std::pow(0.25L + (r0 + u) * (r0 + u), -s) * density(r0 + u); };
    Real err = 0;
    Real v = integrator.integrate(g, 1e-12L, &err);
    return v;
}

}  // namespace hypdet
