#pragma once

#include "rotwave/continuation.hpp"
#include "rotwave/grid.hpp"
#include "rotwave/vorticity.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rotwave {

struct GridSpec {
    int nq = 64;
    int np = 60;
};

struct OutputSpec {
    std::string dir = "out";
    int snapshot_stride = 10;
};

struct LaminarScanSpec {
    int count = 50;
    std::optional<double> lambda_max; // default: -2*Gamma_0 + max(1, 3 g |p0|)
};

/// Parsed run configuration. Deterministic by construction (no seeds).
struct RunConfig {
    VorticityModel vorticity;
    double p0 = -1.0;
    double g = 9.8;
    GridSpec grid;
    ContinuationParams continuation;
    OutputSpec outputs;
    LaminarScanSpec laminar_scan;
    std::optional<double> wave_speed; // c, only for absolute-velocity output
};

nlohmann::json vorticity_to_json(const VorticityModel& model);
VorticityModel vorticity_from_json(const nlohmann::json& spec, double p0);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
/// Throws ConfigError with a parse/field diagnostic.
RunConfig load_config(const std::string& path);

/// Height-field snapshot: a JSON header (grid, Q, g, vorticity spec, s) next
/// to a CSV matrix (rows = p-levels bottom to top, columns = q-nodes 0 to pi).
void save_snapshot(const std::string& json_path, const HeightField& h, double q_head, double g,
                   const nlohmann::json& vorticity_spec, double s);

struct Snapshot {
    HeightField h;
    double q_head = 0.0;
    double g = 0.0;
    double s = 0.0;
    nlohmann::json vorticity_spec;
};

/// Throws DataError on unreadable, malformed, or inconsistent snapshots.
Snapshot load_snapshot(const std::string& json_path);

/// Shortest-17-significant-digit decimal form (round-trips doubles exactly).
std::string fmt17(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

} // namespace rotwave
