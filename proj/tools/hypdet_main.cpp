#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hypdet/report.hpp"

using namespace hypdet;

namespace {

int usage_error(const std::string& code, const std::string& message) {
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["status"] = "usage_error";
    j["error"] = {{"code", code}, {"message", message}};
    std::cerr << j.dump() << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Determinants of Laplacians on hyperbolic orbisurfaces"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    try {
        cfg = RunConfig::from_environment();
    } catch (const Error& e) {
        return usage_error("USAGE", e.what());
    }
    std::string format = "json", out;
    double a = 1, eta = 0.5, s = 1.5, r_max = -1;

    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--signature", cfg.signature, "g;m1,m2,... with inf for a cusp");
        sub->add_option("--a", a, "horocycle height");
        sub->add_option("--omega", cfg.omega, "cone order");
        sub->add_option("--eta", eta, "cone boundary parameter");
        sub->add_option("--s", s, "zeta argument");
        sub->add_option("--k-max", cfg.k_max, "Fourier or Pell-power window");
        sub->add_option("--r-max", r_max, "spectral window in r");
        sub->add_option("--d-max", cfg.d_max, "largest discriminant");
        sub->add_option("--digits", cfg.digits, "digits for exact constants");
        sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", out, "write the report here instead of stdout");
        sub->add_option("--jobs", cfg.jobs, "worker threads");
        if (name == "sarnak") sub->add_flag("--zprime", cfg.zprime, "also extrapolate Z'(1)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return usage_error("USAGE", e.what());
    }
    cfg.a = a;
    cfg.eta = eta;
    cfg.s = s;
    cfg.r_max = r_max;
    const std::string command = app.get_subcommands().front()->get_name();

    Report rep;
    try {
        rep = run_command(command, cfg);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Usage) return usage_error("USAGE", e.what());
        // a module refused: report it as a failed assertion named by its code
        rep.command = command;
        rep.data["error"] = e.what();
        rep.check(error_code_name(e.code()), false);
    }

    std::string text = format == "csv" ? render_csv(rep) : format == "text" ? render_text(rep) : render_json(rep);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) return usage_error("USAGE", "cannot open " + out);
        f << text;
    }
    return rep.ok() ? 0 : 2;
}
