#include "hypdet/qforms.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

#include "hypdet/error.hpp"
#include "hypdet/spectral.hpp"

namespace hypdet {

namespace {

long isqrt(long n) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

// smallest prime factor table, grown on demand
std::mutex spf_mutex;
std::vector<int> spf_table;

const std::vector<int>& spf_upto(long n) {
    std::lock_guard<std::mutex> lock(spf_mutex);
    if (static_cast<long>(spf_table.size()) > n) return spf_table;
    long size = std::max<long>(n + 1, 2 * static_cast<long>(spf_table.size()));
    std::vector<int> t(size, 0);
    for (long i = 2; i < size; ++i) {
        if (t[i]) continue;
        for (long j = i; j < size; j += i)
            if (!t[j]) t[j] = static_cast<int>(i);
    }
    spf_table.swap(t);
    return spf_table;
}

void divisors(long n, const std::vector<int>& spf, std::vector<long>& out) {
    out.assign(1, 1);
    while (n > 1) {
        long p = spf[n], e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        size_t base = out.size();
        long pk = 1;
        for (long k = 0; k < e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
}

long gcd3(long a, long b, long c) { return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)); }

}  // namespace

bool is_discriminant(long d) {
    if (d <= 0) return false;
    long m = d % 4;
    if (m != 0 && m != 1) return false;
    long s = isqrt(d);
    return s * s != d;
}

PellSolution pell_fundamental(long d) {
    if (!is_discriminant(d)) throw Error(ErrorCode::Domain, std::to_string(d) + " is not a discriminant");
    // continued fraction of (P0 + sqrt N)/Q0, stopping at the first convergent of unit norm
    const bool odd = d % 4 == 1;
    const long N = odd ? d : d / 4;
    const long s = isqrt(N);
    long P = odd ? 1 : 0, Q = odd ? 2 : 1;
    mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    const mpz_class quarter = (d - 1) / 4;
    for (int iter = 0; iter < 1000000; ++iter) {
        long a = (P + s) / Q;
        mpz_class p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        P = a * Q - P;
        Q = (N - P * P) / Q;
        mpz_class norm = odd ? mpz_class(p * p - p * q - quarter * q * q) : mpz_class(p * p - N * q * q);
        if (norm != 1 && norm != -1) continue;
        mpz_class X = odd ? mpz_class(2 * p - q) : mpz_class(2 * p), Y = q;
        if (norm == -1) {
            mpz_class X2 = (X * X + d * Y * Y) / 2;
            Y = X * Y;
            X = X2;
        }
        PellSolution sol{X, Y};
        if (sol.x * sol.x - d * sol.y * sol.y != 4)
            throw Error(ErrorCode::Mismatch, "Pell check failed for d = " + std::to_string(d));
        return sol;
    }
    throw Error(ErrorCode::NonConverged, "continued fraction did not close for d = " + std::to_string(d));
}

Real log_eps(const PellSolution& p) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, p.x.get_mpz_t());
    Real logx = std::log(static_cast<Real>(m)) + e * std::log(2.0L);
    // eps = x (1 + sqrt(1 - 4/x^2))/2
    Real inv = std::exp(-2 * logx);
    return logx + std::log((1 + std::sqrt(1 - 4 * inv)) / 2);
}

bool is_reduced(const Form& f, long d) {
    long s = isqrt(d);
    long aa = std::labs(f.a);
    return f.b > 0 && f.b <= s && 2 * aa + f.b > s && 2 * aa - f.b <= s && f.b * f.b - 4 * f.a * f.c == d;
}

std::vector<Form> reduced_forms(long d) {
    if (!is_discriminant(d)) throw Error(ErrorCode::Domain, std::to_string(d) + " is not a discriminant");
    const long s = isqrt(d);
    const auto& spf = spf_upto(d / 4 + 1);
    std::vector<Form> out;
    std::vector<long> divs;
    for (long b = (d % 2 ? 1 : 2); b <= s; b += 2) {
        long n = (d - b * b) / 4;  // = -a c > 0
        divisors(n, spf, divs);
        for (long a : divs) {
            if (2 * a + b <= s || 2 * a - b > s) continue;
            long c = -n / a;
            if (gcd3(a, b, c) != 1) continue;
            out.push_back({a, b, c});
            out.push_back({-a, b, -c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Form rho(const Form& f, long d) {
    long s = isqrt(d);
    long m = 2 * std::labs(f.c);
    long r = ((s + f.b) % m + m) % m;
    long bp = s - r;
    return {f.c, bp, (bp * bp - d) / (4 * f.c)};
}

long class_number(long d) {
    std::vector<Form> forms = reduced_forms(d);
    std::set<Form> seen;
    long h = 0;
    for (const Form& f : forms) {
        if (seen.count(f)) continue;
        ++h;
        Form g = f;
        while (seen.insert(g).second) g = rho(g, d);
        if (!(g == f)) throw Error(ErrorCode::Mismatch, "reduction cycle did not close for d = " + std::to_string(d));
    }
    return h;
}

Real DiscriminantRecord::eps() const { return std::exp(log_eps); }

void DiscriminantRecord::validate() const {
    if (!is_discriminant(d)) throw Error(ErrorCode::Domain, "record has invalid d");
    if (pell.x * pell.x - d * pell.y * pell.y != 4) throw Error(ErrorCode::Mismatch, "record fails x^2 - d y^2 = 4");
    if (!(log_eps > 0)) throw Error(ErrorCode::NonpositiveArg, "eps_d <= 1 for d = " + std::to_string(d));
    if (h < 1) throw Error(ErrorCode::Mismatch, "class number < 1");
}

DiscriminantRecord discriminant_record(long d) {
    DiscriminantRecord r;
    r.d = d;
    r.h = class_number(d);
    r.pell = pell_fundamental(d);
    r.log_eps = log_eps(r.pell);
    r.validate();
    return r;
}

std::vector<DiscriminantRecord> discriminant_table(long d_max, int jobs) {
    std::vector<long> ds;
    for (long d = 5; d <= d_max; ++d)
        if (is_discriminant(d)) ds.push_back(d);
    spf_upto(d_max / 4 + 1);
    std::vector<DiscriminantRecord> out(ds.size());
    const int chunks = 64;
    parallel_for(0, chunks - 1, jobs, [&](int c) {
        for (size_t i = c; i < ds.size(); i += chunks) out[i] = discriminant_record(ds[i]);
    });
    return out;
}

namespace {

Real sarnak_term(Real s, const DiscriminantRecord& r, int k_max, Real* k_tail) {
    if (!(r.log_eps > 0)) throw Error(ErrorCode::NonpositiveArg, "eps_d <= 1 for d = " + std::to_string(r.d));
    Real sum = 0;
    for (int k = 0; k <= k_max; ++k) {
        Real x = std::exp(-2 * (s + k) * r.log_eps);
        sum += std::log1p(-x);
    }
    // |log(1 - x)| <= x/(1 - x), summed geometrically over k > k_max
    Real x = std::exp(-2 * (s + k_max + 1) * r.log_eps);
    Real q = std::exp(-2 * r.log_eps);
    if (k_tail) *k_tail += r.h * x / ((1 - x) * (1 - q));
    return r.h * sum;
}

}  // namespace

SarnakResult sarnak_log_z(Real s, const std::vector<DiscriminantRecord>& table, int k_max) {
    if (!(s > 1)) throw Error(ErrorCode::Domain, "sarnak product needs s > 1");
    if (k_max < 0) throw Error(ErrorCode::Domain, "k_max must be >= 0");
    SarnakResult res;
    if (table.empty()) return res;
    const long d_max = table.back().d;
    // partial sums at d_max/4, d_max/2, d_max for the tail extrapolation
    Real at_quarter = 0, at_half = 0;
    for (const auto& r : table) {
        res.value += sarnak_term(s, r, k_max, &res.k_tail);
        ++res.terms;
        if (r.d <= d_max / 4) at_quarter = res.value;
        if (r.d <= d_max / 2) at_half = res.value;
    }
    Real d1 = at_half - at_quarter, d2 = res.value - at_half;
    if (d1 < 0 && d2 < 0 && d2 / d1 < 1) {
        Real ratio = d2 / d1;
        res.d_tail = d2 * ratio / (1 - ratio);
    } else {
        res.d_tail = d2;
    }
    return res;
}

SarnakResult sarnak_log_z(Real s, long d_max, int k_max, int jobs) {
    return sarnak_log_z(s, discriminant_table(d_max, jobs), k_max);
}

namespace {

// log Z(s) over classes of norm eps^2 <= X (complete, since eps^2 > d), plus the prime geodesic
// tail -E1((s-1) log X) for the rest.
Real log_z_norm_truncated(Real s, const std::vector<DiscriminantRecord>& table, Real log_x, int k_max) {
    Real v = 0;
    for (const auto& r : table)
        if (2 * r.log_eps <= log_x) v += sarnak_term(s, r, k_max, nullptr);
    return v - exp_integral_e1((s - 1) * log_x);
}

}  // namespace

ZPrimeEstimate zprime1_estimate(const std::vector<Real>& s_grid, const std::vector<DiscriminantRecord>& table,
                                int k_max) {
    if (s_grid.size() < 2) throw Error(ErrorCode::Domain, "need at least two s values");
    for (size_t i = 0; i < s_grid.size(); ++i) {
        if (!(s_grid[i] > 1 && s_grid[i] <= 1.6L)) throw Error(ErrorCode::Domain, "s grid must lie in (1, 1.6]");
        if (i && !(s_grid[i] < s_grid[i - 1])) throw Error(ErrorCode::Domain, "s grid must be decreasing");
    }
    if (table.empty()) throw Error(ErrorCode::Domain, "empty discriminant table");
    const Real log_x = std::log(static_cast<Real>(table.back().d));
    ZPrimeEstimate est;
    est.s_grid = s_grid;
    Real spread = 0;
    for (Real s : s_grid) {
        Real full = log_z_norm_truncated(s, table, log_x, k_max);
        Real half = log_z_norm_truncated(s, table, log_x - std::log(2.0L), k_max);
        Real ratio = std::exp(full) / (s - 1);
        est.ratios.push_back(ratio);
        spread = std::max(spread, ratio * std::fabs(std::expm1(full - half)));
    }
    // Neville extrapolation to s = 1; successive estimates give the residuals
    const size_t n = s_grid.size();
    std::vector<Real> p = est.ratios, estimates;
    estimates.push_back(p[0]);
    for (size_t m = 1; m < n; ++m) {
        for (size_t i = 0; i + m < n; ++i) {
            Real xi = s_grid[i] - 1, xj = s_grid[i + m] - 1;
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
        estimates.push_back(p[0]);
    }
    est.value = estimates.back();
    std::vector<Real> resid;
    for (size_t i = 1; i < estimates.size(); ++i) resid.push_back(std::fabs(estimates[i] - estimates[i - 1]));
    for (size_t i = 2; i < resid.size(); ++i)
        if (resid[i] > resid[i - 1] && resid[i] > 10 * spread)
            throw Error(ErrorCode::Unstable, "extrapolation residuals grow");
    est.tail_uncertainty = spread;
    est.uncertainty = resid.back() + spread;
    return est;
}

ZPrimeEstimate zprime1_estimate(const std::vector<Real>& s_grid, long d_max, int k_max, int jobs) {
    return zprime1_estimate(s_grid, discriminant_table(d_max, jobs), k_max);
}

}  // namespace hypdet
