#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "hypdet/cusp.hpp"

using namespace hypdet;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// K_{ir}(x) by the trapezoid rule on int_0^inf exp(-x cosh u) cos(r u) du
long double kir_trapezoid(long double r, long double x) {
    const long double h = 0.005L;
    long double s = 0.5L * std::exp(-x);
    for (int j = 1;; ++j) {
        long double u = j * h;
        long double e = std::exp(-x * std::cosh(u));
        s += e * std::cos(r * u);
        if (e < 1e-40L) break;
    }
    return s * h;
}

template <class F>
long double bisect(F f, long double a, long double b) {
    long double fa = f(a);
    for (int i = 0; i < 100; ++i) {
        long double m = (a + b) / 2, fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return (a + b) / 2;
}

// Closed form of the E0 integral: a finite hypergeometric sum plus the pure power part.
long double e0_closed_form(double s, int k, double delta, double a) {
    const double c = 2 * M_PI * a;
    double total = 0, poch = 1, fact = 1;
    for (int j = 0; j < 40; ++j) {
        if (j > 0) {
            poch *= s + j - 1;
            fact *= j;
        }
        double coef = poch / (fact * std::pow(4.0, j));
        double z = -std::pow(c, -2) * std::pow(k, 2 * delta - 2);
        double f = boost::math::hypergeometric_pFq({1.0, 1 - s - j}, {2 - s - j}, z);
        double first = -(1 / (c * c)) * std::sin(M_PI * s) / (2 * M_PI) * coef / (s + j - 1) *
                       std::pow(k, -2 * delta * (s + j) + 2 * (delta - 1)) * f;
        double second = -(j % 2 ? -1.0 : 1.0) * poch / (fact * std::pow(2.0, 2 * j + 1)) *
                        std::pow(k * c, -2 * (s + j));
        total += first + second;
    }
    return total;
}

}  // namespace

TEST_CASE("model cusp") {
    CHECK_THROWS_AS(ModelCusp(0), Error);
    CHECK_THROWS_AS(ModelCusp(-1), Error);
    CHECK(ModelCusp(1).x(2) == doctest::Approx(4 * M_PI));
}

TEST_CASE("first cusp eigenvalue against a dense scan") {
    const long double x = 2 * kPi;
    // oracle: sign scan of the trapezoid K_{ir} at step 1e-3 from r = x, then bisection
    long double prev = kir_trapezoid(x, x), rp = x, oracle = 0;
    for (long double r = x + 1e-3L; r < 12; r += 1e-3L) {
        long double v = kir_trapezoid(r, x);
        if ((v < 0) != (prev < 0)) {
            oracle = bisect([&](long double q) { return kir_trapezoid(q, x); }, rp, r);
            break;
        }
        prev = v;
        rp = r;
    }
    const long double frozen = 9.76877008350998L;
    CHECK(std::fabs(oracle - frozen) < 1e-10L);
    auto evs = scan_cusp_eigenvalues(ModelCusp(1), 1, 12);
    REQUIRE(!evs.empty());
    CHECK(std::fabs(evs[0].r - frozen) < 1e-8L);
    CHECK(evs[0].k == 1);
    CHECK(evs[0].j == 1);
    CHECK(evs[0].lambda() > 0.25L);
}

TEST_CASE("cusp scan invariants") {
    ModelCusp c(1);
    ScanStats st;
    auto small = scan_cusp_eigenvalues(c, 3, 60, 0, 2, &st);
    auto large = scan_cusp_eigenvalues(c, 3, 120, 0, 2);
    for (const auto& e : small) {
        CHECK(e.lambda() > 0.25L);
        CHECK(std::fabs(bessel_k_imag_scaled(e.r, c.x(e.k))) < 1e-8L);
    }
    for (size_t i = 1; i < small.size(); ++i) CHECK(small[i - 1].lambda() <= small[i].lambda());
    // prefix stability
    size_t found = 0;
    for (const auto& e : small)
        for (const auto& f : large)
            if (f.k == e.k && f.j == e.j && std::fabs(f.r - e.r) < 1e-9L) {
                ++found;
                break;
            }
    CHECK(found == small.size());
    CHECK_THROWS_AS(scan_cusp_eigenvalues(c, 0, 10), Error);
    CHECK_THROWS_AS(scan_cusp_eigenvalues(c, 1, -1), Error);
}

TEST_CASE("cusp counting function") {
    ModelCusp c(1);
    auto evs = scan_cusp_eigenvalues(c, 10, 60);
    CHECK(cusp_counting(evs, 0.25L, c, 10, 60) == 0);
    long prev = 0;
    Real worst = 0;
    for (Real lam = 1; lam < 3000; lam *= 1.3L) {
        long n = cusp_counting(evs, lam, c, 10, 60);
        CHECK(n >= prev);
        CHECK(n % 2 == 0);
        prev = n;
        worst = std::max(worst, n / lam);
    }
    CHECK(worst < 1);
    CHECK_THROWS_AS(cusp_counting(evs, 0.25L + 61 * 61, c, 10, 60), Error);
    // k window: roots of index 11 start at 2 pi 11 = 69.1
    CHECK_THROWS_AS(cusp_counting(scan_cusp_eigenvalues(c, 10, 80), 0.25L + 75 * 75, c, 10, 80), Error);
}

TEST_CASE("direct cusp zeta") {
    ModelCusp c(1);
    auto evs = scan_cusp_eigenvalues(c, 3, 100);
    ZetaSum z = cusp_zeta_from(evs, c, 1.5L, 3, 100);
    CHECK(z.value > 0);
    CHECK(z.tail > z.tail_best);
    CHECK(z.weyl_C > 0);
    Real half = 0;
    for (const auto& e : evs) half += std::pow(e.lambda(), -1.5L);
    CHECK(half * 2 == doctest::Approx(static_cast<double>(z.value)).epsilon(1e-15));
    ZetaSum bigger = cusp_zeta_direct(c, 1.5L, 3, 200);
    CHECK(bigger.value > z.value);
    CHECK_THROWS_AS(cusp_zeta_from(evs, c, 1, 3, 100), Error);
}

TEST_CASE("cusp f_k") {
    ModelCusp c(1);
    for (int k : {1, 2, 5}) CHECK(std::fabs(cusp_f_k(0.5L, k, c)) < 1e-10L);
    // f_k(-t) from the defining formula is -f_k(t)
    for (Real t : {0.7L, 1.3L}) {
        Real x = c.x(1);
        Real d0 = exp_integral_e1_scaled(2 * x);
        Real minus = dlog_bessel_k(-t, x, DerivOrder::First) - 2 * (-t) * d0;
        CHECK(minus == doctest::Approx(static_cast<double>(-cusp_f_k(t, 1, c))).epsilon(1e-10));
    }
    // oracle: 50-digit central difference of log K_t and the E1 special value
    big X = 2 * boost::math::constants::pi<big>();
    big h("1e-12");
    big d = (log(boost::math::cyl_bessel_k(big(2) + h, X)) - log(boost::math::cyl_bessel_k(big(2) - h, X))) / (2 * h);
    big f = d - 4 * boost::math::expint(1, 2 * X) * exp(2 * X);
    const long double frozen = -0.0032758762798317213L;
    CHECK(std::fabs(f.convert_to<long double>() - frozen) < 1e-18L);
    CHECK(std::fabs(cusp_f_k(2, 1, c) - frozen) < 1e-13L);
}

TEST_CASE("contour integrals I_k") {
    ModelCusp c(1);
    Real err = 0;
    Real i1 = cusp_I_k(1.5L, 1, c, &err);
    CHECK(err < 1e-14L);
    // equals the direct eigenvalue sum of the k = 1 row plus its tail
    auto evs = scan_cusp_eigenvalues(c, 1, 1500);
    ZetaSum z = cusp_zeta_from(evs, c, 1.5L, 1, 1500);
    CHECK(std::fabs(i1 - z.value) <= z.tail);
    CHECK(std::fabs(i1 - z.value - z.tail_best) < 1e-10L * i1);
    // decay in k
    Real prev = i1;
    for (int k : {2, 4, 8, 16}) {
        Real v = cusp_I_k(1.5L, k, c);
        CHECK(v > 0);
        CHECK(v < prev);
        prev = v;
    }
    // continuity in s
    Real lo = cusp_I_k(1.499L, 2, c), mid = cusp_I_k(1.5L, 2, c), hi = cusp_I_k(1.501L, 2, c);
    CHECK(std::fabs((lo + hi) / 2 - mid) < 1e-4L * mid);
    CHECK(lo > mid);
    CHECK(mid > hi);
    CHECK_THROWS_AS(cusp_I_k(1, 1, c), Error);
    CHECK_THROWS_AS(cusp_I_k(2, 1, c), Error);
}

TEST_CASE("L and M split") {
    ModelCusp c(1);
    for (int k : {1, 5}) {
        auto [L, M] = cusp_split_LM(1.5L, k, c);
        Real I = cusp_I_k(1.5L, k, c);
        CHECK(std::fabs(L + M - I) < 1e-13L * I);
    }
    // k = 1: k^delta = 1
    SplitParams wide;
    wide.delta = mpq_class(1, 10);
    auto [L1, M1] = cusp_split_LM(1.5L, 1, c, wide);
    CHECK(L1 > 0);
    CHECK(M1 > 0);
    // decay exponent of L_k over k in [8, 64]
    Real l8 = cusp_split_LM(1.5L, 8, c).first, l64 = cusp_split_LM(1.5L, 64, c).first;
    Real slope = std::log(l64 / l8) / std::log(8.0L);
    MESSAGE("L_k decay exponent ", static_cast<double>(slope));
    CHECK(slope < -(2 - 4 * 0.1));
    SplitParams bad;
    bad.delta = mpq_class(1, 4);
    CHECK_THROWS_AS(cusp_split_LM(1.5L, 2, c, bad), Error);
}

TEST_CASE("error integrands and integrals") {
    ModelCusp c(1);
    const Real u = 2 * kPi;
    CHECK(cusp_error_integrand(ErrorTerm::E0, u, 3, c) == doctest::Approx(-1 / (8 * M_PI)));
    CHECK(std::fabs(cusp_error_integrand(ErrorTerm::E1, 1e-12L, 3, c)) < 1e-12L);
    // E2 at u = c: u (2c^2)^{-3/2}/24 (13 - 15/2)/k
    Real e2 = u * std::pow(2 * u * u, -1.5L) / 24 * (13 - 7.5L) / 2;
    CHECK(cusp_error_integrand(ErrorTerm::E2, u, 2, c) == doctest::Approx(static_cast<double>(e2)));
    // E0 integral against the hypergeometric closed form
    const long double frozen[] = {0.00742847222448547735L, 0.00188360559713149963L, 0.000287583748379339800L};
    int i = 0;
    for (int k : {1, 2, 5}) {
        CAPTURE(k);
        long double oracle = e0_closed_form(1.5, k, 0.1, 1);
        CHECK(std::fabs(oracle - frozen[i]) < 1e-14L);
        CHECK(std::fabs(cusp_error_integral(ErrorTerm::E0, 1.5L, k, c) - frozen[i]) < 1e-16L);
        ++i;
    }
}
