#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypdet/specfun.hpp"

namespace hypdet {

inline constexpr const char* kSchema = "hypdet/1";

struct RunConfig {
    int digits = 20;
    Real a = 1;
    int omega = 2;
    Real eta = 0.5L;
    Real s = 1.5L;
    int k_max = -1;  // negative: command default
    Real r_max = -1;
    long d_max = -1;
    int jobs = 1;
    bool zprime = false;
    std::string signature;

    // digits from HYPDET_PRECISION when set
    static RunConfig from_environment();
    void validate() const;
};

struct Report {
    std::string command;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, bool>> assertions;
    // rows for csv output, first row is the header
    std::vector<std::vector<std::string>> table;

    void check(const std::string& name, bool ok) { assertions.emplace_back(name, ok); }
    bool ok() const;
    nlohmann::ordered_json json() const;
};

const std::vector<std::string>& command_names();
// Throws Error(Usage) for an unknown command.
Report run_command(const std::string& command, const RunConfig& cfg);

std::string render_json(const Report& r);
std::string render_csv(const Report& r);
std::string render_text(const Report& r);

// Fixed-format number used in every report.
std::string fmt_real(Real x, int digits = 17);

}  // namespace hypdet
