#include "hypdet/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "hypdet/cone.hpp"
#include "hypdet/cusp.hpp"
#include "hypdet/qforms.hpp"
#include "hypdet/surgery.hpp"
#include "hypdet/x1arith.hpp"

namespace hypdet {

using nlohmann::ordered_json;

RunConfig RunConfig::from_environment() {
    RunConfig c;
    if (const char* env = std::getenv("HYPDET_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0') throw Error(ErrorCode::Usage, "HYPDET_PRECISION must be an integer");
        c.digits = static_cast<int>(v);
    }
    return c;
}

void RunConfig::validate() const {
    if (digits < 6) throw Error(ErrorCode::Usage, "digits must be >= 6");
    if (digits > 200) throw Error(ErrorCode::Usage, "digits must be <= 200");
    if (!(a > 0)) throw Error(ErrorCode::Usage, "--a must be positive");
    if (omega < 1) throw Error(ErrorCode::Usage, "--omega must be >= 1");
    if (!(eta > 0)) throw Error(ErrorCode::Usage, "--eta must be positive");
    if (k_max == 0 || k_max < -1) throw Error(ErrorCode::Usage, "--k-max must be positive");
    if (r_max == 0 || (r_max < 0 && r_max != -1)) throw Error(ErrorCode::Usage, "--r-max must be positive");
    if (d_max == 0 || d_max < -1) throw Error(ErrorCode::Usage, "--d-max must be positive");
    if (jobs < 1) throw Error(ErrorCode::Usage, "--jobs must be >= 1");
}

bool Report::ok() const {
    for (const auto& [name, pass] : assertions)
        if (!pass) return false;
    return true;
}

ordered_json Report::json() const {
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["result"] = data;
    ordered_json checks = ordered_json::array();
    ordered_json failed = ordered_json::array();
    for (const auto& [name, pass] : assertions) {
        checks.push_back({{"name", name}, {"pass", pass}});
        if (!pass) failed.push_back(name);
    }
    j["assertions"] = checks;
    j["failed"] = failed;
    j["status"] = ok() ? "ok" : "assertion_failed";
    return j;
}

std::string fmt_real(Real x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
    return buf;
}

namespace {

ordered_json num(Real x) { return ordered_json(static_cast<double>(x)); }

int pick(int v, int dflt) { return v > 0 ? v : dflt; }
Real pick(Real v, Real dflt) { return v > 0 ? v : dflt; }
long pick(long v, long dflt) { return v > 0 ? v : dflt; }

FuchsianSignature signature_of(const RunConfig& cfg) {
    if (cfg.signature.empty()) throw Error(ErrorCode::Usage, "--signature is required");
    return FuchsianSignature::parse(cfg.signature);
}

void cusp_scan(const RunConfig& cfg, Report& rep) {
    ModelCusp cusp(cfg.a);
    int k_max = pick(cfg.k_max, 5);
    Real r_max = pick(cfg.r_max, Real(100));
    ScanStats st;
    auto evs = scan_cusp_eigenvalues(cusp, k_max, r_max, 0, cfg.jobs, &st);
    rep.data["a"] = num(cfg.a);
    rep.data["k_max"] = k_max;
    rep.data["r_max"] = num(r_max);
    rep.data["count"] = evs.size();
    rep.data["rescans"] = st.rescans;
    ordered_json rows = ordered_json::array();
    rep.table.push_back({"k", "j", "r", "lambda"});
    bool above = true;
    for (const auto& e : evs) {
        rows.push_back({{"k", e.k}, {"j", e.j}, {"r", num(e.r)}, {"lambda", num(e.lambda())}});
        rep.table.push_back({std::to_string(e.k), std::to_string(e.j), fmt_real(e.r), fmt_real(e.lambda())});
        above = above && e.lambda() > 0.25L;
    }
    rep.data["eigenvalues"] = rows;
    rep.check("spectrum_above_quarter", above);
}

void cone_scan(const RunConfig& cfg, Report& rep) {
    ModelCone cone(cfg.omega, cfg.eta);
    int k_max = pick(cfg.k_max, 5);
    Real r_max = pick(cfg.r_max, Real(100));
    ScanStats st;
    auto evs = scan_cone_eigenvalues(cone, k_max, r_max, 0, cfg.jobs, &st);
    rep.data["omega"] = cfg.omega;
    rep.data["eta"] = num(cfg.eta);
    rep.data["k_max"] = k_max;
    rep.data["r_max"] = num(r_max);
    rep.data["count"] = evs.size();
    rep.data["rescans"] = st.rescans;
    ordered_json rows = ordered_json::array();
    rep.table.push_back({"omega", "k", "n", "r", "lambda"});
    bool above = true;
    for (const auto& e : evs) {
        rows.push_back({{"k", e.k}, {"n", e.n}, {"r", num(e.r)}, {"lambda", num(e.lambda())},
                        {"multiplicity", e.multiplicity()}});
        rep.table.push_back({std::to_string(cfg.omega), std::to_string(e.k), std::to_string(e.n), fmt_real(e.r),
                             fmt_real(e.lambda())});
        above = above && e.lambda() > 0.25L;
    }
    rep.data["eigenvalues"] = rows;
    rep.check("spectrum_above_quarter", above);
    if (cfg.omega >= 2 && cfg.eta < 2) {
        bool ok = true;
        Real worst = 0;
        try {
            DesingReport d = cone_desingularization_check(cfg.omega, cone.R(), k_max, r_max, 1e-8L, cfg.jobs);
            worst = d.worst;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Mismatch) throw;
            ok = false;
            rep.data["desingularization_error"] = e.what();
        }
        rep.data["desingularization_worst"] = num(worst);
        rep.check("desingularization", ok);
    }
}

void zeta_fields(Report& rep, Real s, int k_max, const ZetaSum& z, const ContourSum& cs) {
    rep.data["s"] = num(s);
    rep.data["k_max"] = k_max;
    rep.data["direct"] = num(z.value);
    rep.data["direct_tail"] = num(z.tail);
    rep.data["direct_tail_best"] = num(z.tail_best);
    rep.data["weyl_C"] = num(z.weyl_C);
    rep.data["weyl_tail"] = num(z.weyl_tail);
    rep.data["count"] = z.count;
    rep.data["contour"] = num(cs.value);
    rep.data["contour_error"] = num(cs.error);
    Real rel = std::fabs(cs.value - z.value - z.tail_best) / std::fabs(cs.value);
    rep.data["relative_difference"] = num(rel);
    rep.table.push_back({"s", "k_max", "direct", "direct_tail", "contour", "contour_error"});
    rep.table.push_back({fmt_real(s), std::to_string(k_max), fmt_real(z.value), fmt_real(z.tail),
                         fmt_real(cs.value), fmt_real(cs.error)});
    rep.check("contour_within_tails", std::fabs(cs.value - z.value) <= z.tail + cs.error);
}

void cusp_zeta(const RunConfig& cfg, Report& rep) {
    ModelCusp cusp(cfg.a);
    int k_max = pick(cfg.k_max, 20);
    Real r_max = pick(cfg.r_max, Real(1500));
    auto evs = scan_cusp_eigenvalues(cusp, k_max, r_max, 0, cfg.jobs);
    ZetaSum z = cusp_zeta_from(evs, cusp, cfg.s, k_max, r_max);
    ContourSum cs = cusp_contour_sum(cusp, cfg.s, k_max, cfg.jobs);
    rep.data["a"] = num(cfg.a);
    rep.data["r_max"] = num(r_max);
    zeta_fields(rep, cfg.s, k_max, z, cs);
}

void cone_zeta(const RunConfig& cfg, Report& rep) {
    ModelCone cone(cfg.omega, cfg.eta);
    int k_max = pick(cfg.k_max, 6);
    Real r_max = pick(cfg.r_max, Real(200));
    auto evs = scan_cone_eigenvalues(cone, k_max, r_max, 0, cfg.jobs);
    ZetaSum z = cone_zeta_from(evs, cone, cfg.s, k_max, r_max);
    ContourSum cs = cone_contour_sum(cone, cfg.s, k_max, {}, cfg.jobs);
    rep.data["omega"] = cfg.omega;
    rep.data["eta"] = num(cfg.eta);
    rep.data["r_max"] = num(r_max);
    zeta_fields(rep, cfg.s, k_max, z, cs);
}

void cusp_det(const RunConfig& cfg, Report& rep) {
    SymExpr e = cusp_logdet_asymptotic();
    rep.data["a"] = num(cfg.a);
    rep.data["expression"] = e.str();
    rep.data["coeff_a"] = e.coeff(Symbol::a(), 1).str() + "*pi";
    rep.data["coeff_log_a"] = e.coeff(Symbol::log_a()).str();
    rep.data["value"] = fmt_real(cusp_logdet_asymptotic_value(cfg.a));
    rep.data["remainder"] = "o(1)";
    rep.table.push_back({"expression", "value"});
    rep.table.push_back({e.str(), fmt_real(cusp_logdet_asymptotic_value(cfg.a))});
}

void cone_det(const RunConfig& cfg, Report& rep) {
    SymExpr e = cone_logdet_asymptotic(cfg.omega);
    rep.data["omega"] = cfg.omega;
    rep.data["eta"] = num(cfg.eta);
    rep.data["expression"] = e.str();
    rep.data["coeff_log_eta"] = e.coeff(Symbol::log_eta(cfg.omega)).str();
    rep.data["constant"] = e.constant().str();
    Real v = e.evaluate({{Symbol::log_eta(cfg.omega), std::log(cfg.eta)}});
    rep.data["value"] = fmt_real(v);
    rep.data["remainder"] = "o(1)";
    rep.table.push_back({"expression", "value"});
    rep.table.push_back({e.str(), fmt_real(v)});
}

void mv_check(const RunConfig& cfg, Report& rep) {
    FuchsianSignature sig = signature_of(cfg);
    ReconcileReport r = reconcile(sig);
    rep.data["signature"] = sig.str();
    rep.data["coeff_L"] = r.naive_L.str();
    rep.data["coeff_LL"] = r.naive_LL.str();
    rep.data["residual_L"] = r.coeff_L.str();
    rep.data["residual_LL"] = r.coeff_LL.str();
    rep.data["log_deta"] = r.log_deta.str();
    rep.data["cgamma_direct"] = r.direct.str();
    rep.data["cgamma_from_assembly"] = r.from_assembly.str();
    rep.data["difference"] = r.difference.str();
    rep.data["difference_value"] = const_eval(r.difference, cfg.digits);
    rep.table.push_back({"signature", "coeff_L", "coeff_LL", "residual_L", "residual_LL", "difference"});
    rep.table.push_back({sig.str(), r.naive_L.str(), r.naive_LL.str(), r.coeff_L.str(), r.coeff_LL.str(),
                         r.difference.str()});
    rep.check("divergence_cancelled", r.divergence_cancelled());
    rep.check("constants_agree", r.constants_agree());
}

void cgamma(const RunConfig& cfg, Report& rep) {
    FuchsianSignature sig = signature_of(cfg);
    ConstExpr c = cgamma_direct(sig);
    ConstExpr red = const_reduce(c);
    rep.data["signature"] = sig.str();
    rep.data["cgamma"] = c.str();
    rep.data["reduced"] = red.str();
    rep.data["value"] = const_eval(c, cfg.digits);
    rep.table.push_back({"signature", "cgamma", "value"});
    rep.table.push_back({sig.str(), c.str(), const_eval(c, cfg.digits)});
}

void sarnak(const RunConfig& cfg, Report& rep) {
    long d_max = pick(cfg.d_max, 100000L);
    int k_max = pick(cfg.k_max, 40);
    auto table = discriminant_table(d_max, cfg.jobs);
    SarnakResult r1 = sarnak_log_z(cfg.s, table, k_max);
    SarnakResult r2 = sarnak_log_z(cfg.s, table, 2 * k_max);
    Real drift = std::fabs(r2.value - r1.value);
    rep.data["s"] = num(cfg.s);
    rep.data["d_max"] = d_max;
    rep.data["k_max"] = k_max;
    rep.data["discriminants"] = table.size();
    rep.data["log_z"] = num(r1.value);
    rep.data["k_tail"] = num(r1.k_tail);
    rep.data["d_tail"] = num(r1.d_tail);
    rep.data["log_z_doubled_k"] = num(r2.value);
    rep.data["k_doubling_drift"] = num(drift);
    rep.table.push_back({"s", "d_max", "k_max", "log_z", "k_tail", "d_tail"});
    rep.table.push_back({fmt_real(cfg.s), std::to_string(d_max), std::to_string(k_max), fmt_real(r1.value),
                         fmt_real(r1.k_tail), fmt_real(r1.d_tail)});
    rep.check("stable_under_k_doubling", drift <= 1e-4L);
    if (cfg.zprime) {
        ZPrimeEstimate z = zprime1_estimate({1.6L, 1.5L, 1.4L, 1.3L, 1.2L}, table, k_max);
        SpecialValue sv = solve_special_value(std::max(cfg.digits, 12));
        Real closed = std::exp(std::strtold(sv.numeric.c_str(), nullptr));
        ordered_json zj;
        zj["estimate"] = num(z.value);
        zj["uncertainty"] = num(z.uncertainty);
        zj["tail_uncertainty"] = num(z.tail_uncertainty);
        zj["closed_form"] = num(closed);
        zj["closed_form_log"] = sv.numeric;
        rep.data["zprime1"] = zj;
        rep.check("uncertainty_within_25_percent", z.uncertainty <= 0.25L * z.value);
        rep.check("zprime1_brackets_closed_form", std::fabs(z.value - closed) <= z.uncertainty);
    }
}

void x1_verify(const RunConfig& cfg, Report& rep) {
    SpecialValue sv = solve_special_value(cfg.digits, nullptr, false);
    auto want = expected_special_value_coefficients();
    ordered_json coeffs = ordered_json::object();
    rep.table.push_back({"basis", "coefficient", "expected"});
    for (size_t i = 0; i < want.size(); ++i) {
        coeffs[kSpecialValueBasis[i]] = rational_str(sv.coefficients[i]);
        rep.table.push_back({kSpecialValueBasis[i], rational_str(sv.coefficients[i]), rational_str(want[i])});
    }
    rep.data["coefficients"] = coeffs;
    rep.data["log_zprime1"] = sv.reduced.str();
    rep.data["matches_paper"] = sv.matches_paper;
    rep.data["digits"] = cfg.digits;
    rep.data["value"] = sv.numeric;
    rep.check("matches_paper", sv.matches_paper);
}

void specfun_selftest(const RunConfig&, Report& rep) {
    bool k_half = true;
    for (Real x : {0.5L, 2.0L, 10.0L}) {
        Real closed = std::sqrt(kPi / (2 * x)) * std::exp(-x);
        k_half = k_half && std::fabs(bessel_k_real(0.5L, x) / closed - 1) <= 1e-10L;
    }
    rep.check("bessel_k_half_closed_form", k_half);

    bool env = true;
    for (Real x : {10.0L, 100.0L}) {
        Real v = exp_integral_e1_scaled(x);
        env = env && std::log1p(2 / x) / 2 < v && v < std::log1p(1 / x);
        rep.data["e1_scaled_" + fmt_real(x, 6)] = num(v);
    }
    rep.check("e1_envelope", env);

    bool hz = true;
    for (Real x : {0.25L, 1.0L / 3, 0.5L, 0.9L}) hz = hz && std::fabs(hurwitz_zeta(0, x) - (0.5L - x)) <= 1e-10L;
    rep.check("hurwitz_zeta_at_zero", hz);

    rep.check("l0_chi4_is_half", dirichlet_l0(Character::Chi4) == mpq_class(1, 2));
    rep.check("l0_chi3_is_third", dirichlet_l0(Character::Chi3) == mpq_class(1, 3));

    ordered_json res = ordered_json::array();
    Real prev = INFINITY;
    bool dec = true;
    for (Real nu : {5.0L, 10.0L, 20.0L}) {
        Real r = std::fabs(bessel_k_real(nu, nu) / bessel_uniform_asym(nu, 1, 3) - 1);
        res.push_back(num(r));
        dec = dec && r < prev;
        prev = r;
    }
    rep.data["uniform_residuals"] = res;
    rep.check("uniform_residuals_decreasing", dec);
    rep.table.push_back({"check", "pass"});
    for (const auto& [n, p] : rep.assertions) rep.table.push_back({n, p ? "true" : "false"});
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"cusp-scan", "cusp-zeta", "cone-scan", "cone-zeta",
                                                "cusp-det",  "cone-det",  "mv-check",  "cgamma",
                                                "sarnak",    "x1-verify", "specfun-selftest"};
    return names;
}

Report run_command(const std::string& command, const RunConfig& cfg) {
    cfg.validate();
    Report rep;
    rep.command = command;
    if (command == "cusp-scan")
        cusp_scan(cfg, rep);
    else if (command == "cusp-zeta")
        cusp_zeta(cfg, rep);
    else if (command == "cone-scan")
        cone_scan(cfg, rep);
    else if (command == "cone-zeta")
        cone_zeta(cfg, rep);
    else if (command == "cusp-det")
        cusp_det(cfg, rep);
    else if (command == "cone-det")
        cone_det(cfg, rep);
    else if (command == "mv-check")
        mv_check(cfg, rep);
    else if (command == "cgamma")
        cgamma(cfg, rep);
    else if (command == "sarnak")
        sarnak(cfg, rep);
    else if (command == "x1-verify")
        x1_verify(cfg, rep);
    else if (command == "specfun-selftest")
        specfun_selftest(cfg, rep);
    else
        throw Error(ErrorCode::Usage, "unknown command " + command);
    return rep;
}

std::string render_json(const Report& r) { return r.json().dump(2) + "\n"; }

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render_csv(const Report& r) {
    std::ostringstream os;
    for (const auto& row : r.table) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << r.command << "\n";
    for (const auto& [k, v] : r.data.items()) {
        if (v.is_array() && v.size() > 8) {
            os << "  " << k << ": " << v.size() << " entries\n";
            continue;
        }
        os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    for (const auto& [n, p] : r.assertions) os << "  [" << (p ? "pass" : "FAIL") << "] " << n << "\n";
    return os.str();
}

}  // namespace hypdet
