// Acceptance run: one line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hypdet/cone.hpp"
#include "hypdet/cusp.hpp"
#include "hypdet/qforms.hpp"
#include "hypdet/report.hpp"
#include "hypdet/surgery.hpp"
#include "hypdet/x1arith.hpp"

using namespace hypdet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string f(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. exact cancellation
void criterion1() {
    bool pass = true;
    std::string detail;
    for (const char* text : {"0;inf,2,3", "0;inf,inf,inf", "1;2", "2;"}) {
        auto t0 = Clock::now();
        ReconcileReport r = reconcile(FuchsianSignature::parse(text));
        double dt = seconds_since(t0);
        bool ok = r.divergence_cancelled() && r.constants_agree() && dt < 1;
        pass = pass && ok;
        detail += std::string("[") + text + ": L " + r.coeff_L.str() + ", LL " + r.coeff_LL.str() + ", difference " +
                  r.difference.str() + ", " + f(dt) + " s] ";
    }
    report(1, pass, detail);
}

// 2. special value coefficients
void criterion2() {
    auto t0 = Clock::now();
    SpecialValue sv = solve_special_value(12, nullptr, false);
    double dt = seconds_since(t0);
    const char* golden = "-0.516106111150";
    bool pass = sv.matches_paper && sv.numeric == golden && dt < 30;
    std::string coeffs;
    for (size_t i = 0; i < sv.coefficients.size(); ++i)
        coeffs += (i ? ", " : "") + rational_str(sv.coefficients[i]);
    report(2, pass, "(" + coeffs + "), log Z'(1) = " + sv.numeric + ", " + f(dt) + " s");
}

// 3. cusp representation identity
void criterion3() {
    auto t0 = Clock::now();
    ModelCusp cusp(1);
    const int K = 20;
    const Real rmax = 1500;
    auto evs = scan_cusp_eigenvalues(cusp, K, rmax);
    bool pass = true;
    std::string detail;
    for (Real s : {1.25L, 1.5L, 1.75L}) {
        ZetaSum z = cusp_zeta_from(evs, cusp, s, K, rmax);
        ContourSum cs = cusp_contour_sum(cusp, s, K);
        Real gap = std::fabs(cs.value - z.value);
        bool ok = gap <= z.tail + cs.error;
        Real rel = std::fabs(cs.value - z.value - z.tail_best) / cs.value;
        if (s == 1.5L) ok = ok && rel <= 1e-3L;
        pass = pass && ok;
        detail += "[s " + f(static_cast<double>(s)) + ": gap " + f(static_cast<double>(gap)) + " <= " +
                  f(static_cast<double>(z.tail + cs.error)) + ", rel " + f(static_cast<double>(rel)) + "] ";
    }
    report(3, pass, detail + f(seconds_since(t0)) + " s");
}

// 4. cone representation identity and spectrum
void criterion4() {
    auto t0 = Clock::now();
    ModelCone cone(2, 0.5L);
    const int K = 6;
    const Real rmax = 200;
    auto evs = scan_cone_eigenvalues(cone, K, rmax);
    ZetaSum z = cone_zeta_from(evs, cone, 1.5L, K, rmax);
    ContourSum cs = cone_contour_sum(cone, 1.5L, K);
    Real rel = std::fabs(cs.value - z.value - z.tail_best) / cs.value;
    bool pass = rel <= 1e-3L && std::fabs(cs.value - z.value) <= z.tail + cs.error;
    Real min_lambda = INFINITY;
    for (int w : {1, 2, 3, 5})
        for (Real eta : {0.2L, 0.5L, 1.0L}) {
            auto e = scan_cone_eigenvalues(ModelCone(w, eta), 1, 3 * 2.405L / eta + 5);
            if (e.empty()) {
                pass = false;
                continue;
            }
            min_lambda = std::min(min_lambda, e.front().lambda());
        }
    pass = pass && min_lambda > 0.25L;
    Real worst = 0;
    for (int w : {2, 3}) {
        try {
            worst = std::max(worst, cone_desingularization_check(w, 0.04L, 3, 60).worst);
        } catch (const Error&) {
            pass = false;
        }
    }
    pass = pass && worst <= 1e-8L;
    report(4, pass,
           "rel " + f(static_cast<double>(rel)) + ", min lambda " + f(static_cast<double>(min_lambda)) +
               ", desingularization worst " + f(static_cast<double>(worst)) + ", " + f(seconds_since(t0)) + " s");
}

// 5. transcriptions
void criterion5() {
    bool pass = true;
    SymExpr c = cusp_logdet_asymptotic();
    pass = pass && c.coeff(Symbol::a(), 1) == ConstExpr::parse("1/3") && c.coeff(Symbol::log_a()) == ConstExpr::parse("1/2") &&
           c.small_o();
    // the displayed cone formula, term by term, for a few orders
    for (int w : {1, 2, 3, 5}) {
        mpq_class W(w), I(1, w);
        auto q = [](const mpq_class& x) {
            mpq_class y = x;
            y.canonicalize();
            return rational_str(y);
        };
        std::string lw = w == 1 ? "0" : q(mpq_class(1, 2) + W / 6 + I / 6) + "*LOG" + std::to_string(w);
        if (w == 1) lw = "0";
        std::string want = q(2 * W) + "*ZP1 - " + q(W / 6) + " + " + q(W / 6) + "*LOG2 - " + q(I * 5 / 12) + " + " +
                           q(I / 6) + "*LOG2 - " + q(I / 6) + "*GAMMA + " + lw + " + 1/4";
        SymExpr e = cone_logdet_asymptotic(w);
        bool ok = e.coeff(Symbol::log_eta(w)) == ConstExpr::rational(-(W / 6 + I / 6)) &&
                  const_reduce(e.constant()) == const_reduce(ConstExpr::parse(want)) && e.small_o();
        pass = pass && ok;
    }
    report(5, pass, "cusp (pi/3, 1/2); cone term lists for omega in {1, 2, 3, 5}");
}

// brute force Pell: smallest y with d y^2 + 4 a square
long brute_pell_y(long d, long y_max, long* x_out) {
    for (long y = 1; y <= y_max; ++y) {
        __int128 x2 = static_cast<__int128>(d) * y * y + 4;
        long x = static_cast<long>(std::sqrt(static_cast<long double>(x2)));
        while (static_cast<__int128>(x) * x > x2) --x;
        while (static_cast<__int128>(x + 1) * (x + 1) <= x2) ++x;
        if (static_cast<__int128>(x) * x == x2) {
            *x_out = x;
            return y;
        }
    }
    return 0;
}

// no smaller unit of norm 1 has eps as a power
bool not_a_power(long d, const PellSolution& p) {
    using big = boost::multiprecision::cpp_bin_float_100;
    big x(p.x.get_str()), y(p.y.get_str());
    big eps = (x + y * sqrt(big(d))) / 2;
    big smallest = (big(3) + sqrt(big(5))) / 2;
    for (int k = 2; pow(smallest, k) <= eps * 1.0001; ++k) {
        big e = pow(eps, big(1) / k);
        big t = e + 1 / e;
        big tr = round(t);
        if (abs(t - tr) > 1e-40) continue;
        big qq = (tr * tr - 4) / d;
        if (qq > 0 && abs(qq - round(qq)) < 1e-40 && abs(sqrt(qq) - round(sqrt(qq))) < 1e-30) return false;
    }
    return true;
}

// classes by closure under S and T
long brute_class_number(long d) {
    using F = std::tuple<long, long, long>;
    const long B = 4 * d;
    std::vector<F> reduced;
    long s = static_cast<long>(std::sqrt(static_cast<double>(d)));
    double sd = std::sqrt(static_cast<double>(d));
    for (long b = 1; b <= s; ++b)
        for (long a = -d; a <= d; ++a) {
            if (a == 0 || (b * b - d) % (4 * a)) continue;
            long c = (b * b - d) / (4 * a);
            long aa = std::labs(a);
            if (std::gcd(std::gcd(aa, b), std::labs(c)) != 1) continue;
            if (sd - b < 2 * aa && 2 * aa < sd + b) reduced.emplace_back(a, b, c);
        }
    std::map<F, int> comp;
    int n = 0;
    for (const F& start : reduced) {
        if (comp.count(start)) continue;
        ++n;
        std::queue<F> todo;
        todo.push(start);
        comp[start] = n;
        while (!todo.empty()) {
            auto [a, b, c] = todo.front();
            todo.pop();
            for (const F& nx : {F{c, -b, a}, F{a, b + 2 * a, a + b + c}, F{a, b - 2 * a, a - b + c}}) {
                auto [x, y, z] = nx;
                if (std::labs(x) > B || std::labs(y) > B || std::labs(z) > B) continue;
                if (comp.emplace(nx, n).second) todo.push(nx);
            }
        }
    }
    std::set<int> classes;
    for (const F& fm : reduced) classes.insert(comp[fm]);
    return static_cast<long>(classes.size());
}

// 6. number theory
void criterion6() {
    auto t0 = Clock::now();
    bool oracles = true;
    int checked = 0;
    for (long d = 5; d <= 200; ++d) {
        if (!is_discriminant(d)) continue;
        ++checked;
        PellSolution p = pell_fundamental(d);
        long x = 0;
        long y = brute_pell_y(d, 10000000, &x);
        bool ok = p.x * p.x - d * p.y * p.y == 4;
        ok = ok && (y ? (p.y == y && p.x == x) : (p.y > 10000000 && not_a_power(d, p)));
        ok = ok && class_number(d) == brute_class_number(d);
        oracles = oracles && ok;
    }
    auto table = discriminant_table(100000);
    SarnakResult a = sarnak_log_z(1.5L, table, 40);
    SarnakResult b = sarnak_log_z(1.5L, table, 80);
    Real drift = std::fabs(a.value - b.value);
    ZPrimeEstimate z = zprime1_estimate({1.6L, 1.5L, 1.4L, 1.3L, 1.2L}, table, 40);
    Real closed = std::exp(std::strtold(solve_special_value(16).numeric.c_str(), nullptr));
    bool loose = z.uncertainty <= 0.25L * z.value;
    bool brackets = std::fabs(z.value - closed) <= z.uncertainty;
    bool pass = oracles && drift <= 1e-4L && loose && brackets;
    report(6, pass,
           std::string("oracles ") + (oracles ? "agree" : "disagree") + " on " + std::to_string(checked) +
               " discriminants, k doubling drift " + f(static_cast<double>(drift)) + ", Z'(1) estimate " +
               f(static_cast<double>(z.value)) + " +- " + f(static_cast<double>(z.uncertainty)) +
               " vs closed form " + f(static_cast<double>(closed)) + (brackets ? " (bracketed)" : " (not bracketed)") +
               ", " + f(seconds_since(t0)) + " s");
}

// 7. special functions
void criterion7() {
    auto t0 = Clock::now();
    Report r = run_command("specfun-selftest", RunConfig{});
    std::string detail;
    for (const auto& [name, ok] : r.assertions) detail += name + (ok ? " ok; " : " FAILED; ");
    report(7, r.ok(), detail + f(seconds_since(t0)) + " s");
}

}  // namespace

int main() {
    void (*runs[])() = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7};
    for (int i = 0; i < 7; ++i) {
        try {
            runs[i]();
        } catch (const std::exception& e) {
            report(i + 1, false, std::string("threw ") + e.what());
        }
    }
    std::printf("%d of 7 criteria failed\n", failures);
    return failures ? 1 : 0;
}
