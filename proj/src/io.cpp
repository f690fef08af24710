#include "rotwave/io.hpp"

#include "rotwave/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rotwave {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string kind_name(VorticityKind k) {
    switch (k) {
    case VorticityKind::constant: return "constant";
    case VorticityKind::affine: return "affine";
    case VorticityKind::polynomial: return "polynomial";
    case VorticityKind::tabulated: return "tabulated";
    }
    return "constant";
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad field \"") + key + "\": " + e.what());
    }
}

template <typename T>
T required_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("config: missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad field \"") + key + "\": " + e.what());
    }
}

} // namespace

json vorticity_to_json(const VorticityModel& model) {
    json j;
    j["kind"] = kind_name(model.kind());
    j["coefficients"] = model.coefficients();
    return j;
}

VorticityModel vorticity_from_json(const json& spec, double p0) {
    if (!(p0 < 0.0)) throw ConfigError("config: p0 must be negative");
    const double psi_max = -p0;
    const std::string kind = required_field<std::string>(spec, "kind");
    const auto coeffs = required_field<std::vector<double>>(spec, "coefficients");
    if (kind == "constant") {
        if (coeffs.size() != 1) throw ConfigError("config: constant vorticity takes 1 coefficient");
        return VorticityModel::constant(coeffs[0], psi_max);
    }
    if (kind == "affine") {
        if (coeffs.size() != 2) throw ConfigError("config: affine vorticity takes 2 coefficients");
        return VorticityModel::affine(coeffs[0], coeffs[1], psi_max);
    }
    if (kind == "polynomial") {
        if (coeffs.empty()) throw ConfigError("config: polynomial vorticity needs coefficients");
        return VorticityModel::polynomial(coeffs, psi_max);
    }
    if (kind == "tabulated") {
        if (coeffs.size() % 2 != 0 || coeffs.size() < 6) {
            throw ConfigError("config: tabulated vorticity takes >= 3 (psi, gamma) pairs");
        }
        std::vector<double> psi, gam;
        for (std::size_t k = 0; k < coeffs.size(); k += 2) {
            psi.push_back(coeffs[k]);
            gam.push_back(coeffs[k + 1]);
        }
        if (psi.back() < psi_max - 1e-9) {
            throw ConfigError("config: tabulated samples must cover [0, |p0|]");
        }
        try {
            return VorticityModel::tabulated(psi, gam);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    throw ConfigError("config: unknown vorticity kind \"" + kind + "\"");
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    cfg.p0 = required_field<double>(j, "p0");
    cfg.g = required_field<double>(j, "g");
    if (!(cfg.p0 < 0.0)) throw ConfigError("config: p0 must be negative");
    if (!(cfg.g > 0.0)) throw ConfigError("config: g must be positive");
    if (!j.contains("vorticity")) throw ConfigError("config: missing field \"vorticity\"");
    cfg.vorticity = vorticity_from_json(j.at("vorticity"), cfg.p0);

    if (j.contains("grid")) {
        const json& gj = j.at("grid");
        cfg.grid.nq = field_or<int>(gj, "nq", cfg.grid.nq);
        cfg.grid.np = field_or<int>(gj, "np", cfg.grid.np);
    }
    if (cfg.grid.nq < 8 || cfg.grid.np < 8) throw ConfigError("config: grid counts must be >= 8");

    if (j.contains("continuation")) {
        const json& cj = j.at("continuation");
        ContinuationParams& cp = cfg.continuation;
        cp.ds0 = field_or<double>(cj, "ds0", cp.ds0);
        cp.ds_min = field_or<double>(cj, "ds_min", cp.ds_min);
        cp.ds_max = field_or<double>(cj, "ds_max", cp.ds_max);
        cp.max_steps = field_or<int>(cj, "max_steps", cp.max_steps);
        cp.delta = field_or<double>(cj, "delta", cp.delta);
        cp.hp_cap = field_or<double>(cj, "hp_cap", cp.hp_cap);
        cp.hp_cap_factor = field_or<double>(cj, "hp_cap_factor", cp.hp_cap_factor);
        cp.newton_tol = field_or<double>(cj, "newton_tol", cp.newton_tol);
        cp.newton_max_iter = field_or<int>(cj, "newton_max_iter", cp.newton_max_iter);
        if (!(cp.ds_min <= cp.ds0 && cp.ds0 <= cp.ds_max)) {
            throw ConfigError("config: continuation steps must satisfy ds_min <= ds0 <= ds_max");
        }
    }
    if (j.contains("outputs")) {
        const json& oj = j.at("outputs");
        cfg.outputs.dir = field_or<std::string>(oj, "dir", cfg.outputs.dir);
        cfg.outputs.snapshot_stride = field_or<int>(oj, "snapshot_stride",
                                                    cfg.outputs.snapshot_stride);
        if (cfg.outputs.snapshot_stride < 1) {
            throw ConfigError("config: snapshot_stride must be >= 1");
        }
    }
    if (j.contains("laminar_scan")) {
        const json& lj = j.at("laminar_scan");
        cfg.laminar_scan.count = field_or<int>(lj, "count", cfg.laminar_scan.count);
        if (lj.contains("lambda_max")) {
            cfg.laminar_scan.lambda_max = lj.at("lambda_max").get<double>();
        }
        if (cfg.laminar_scan.count < 2) throw ConfigError("config: laminar_scan.count must be >= 2");
    }
    if (j.contains("wave_speed")) cfg.wave_speed = j.at("wave_speed").get<double>();
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["vorticity"] = vorticity_to_json(cfg.vorticity);
    j["p0"] = cfg.p0;
    j["g"] = cfg.g;
    j["grid"] = {{"nq", cfg.grid.nq}, {"np", cfg.grid.np}};
    const ContinuationParams& cp = cfg.continuation;
    j["continuation"] = {{"ds0", cp.ds0},
                         {"ds_min", cp.ds_min},
                         {"ds_max", cp.ds_max},
                         {"max_steps", cp.max_steps},
                         {"delta", cp.delta},
                         {"hp_cap", cp.hp_cap},
                         {"hp_cap_factor", cp.hp_cap_factor},
                         {"newton_tol", cp.newton_tol},
                         {"newton_max_iter", cp.newton_max_iter}};
    j["outputs"] = {{"dir", cfg.outputs.dir}, {"snapshot_stride", cfg.outputs.snapshot_stride}};
    j["laminar_scan"] = {{"count", cfg.laminar_scan.count}};
    if (cfg.laminar_scan.lambda_max) j["laminar_scan"]["lambda_max"] = *cfg.laminar_scan.lambda_max;
    if (cfg.wave_speed) j["wave_speed"] = *cfg.wave_speed;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    return config_from_json(j);
}

void save_snapshot(const std::string& json_path, const HeightField& h, double q_head, double g,
                   const json& vorticity_spec, double s) {
    const std::filesystem::path jp(json_path);
    std::filesystem::path cp = jp;
    cp.replace_extension(".csv");

    std::ofstream csv(cp);
    if (!csv) throw DataError("snapshot: cannot write \"" + cp.string() + "\"");
    const Grid& gr = h.grid();
    for (int j = 0; j <= gr.np; ++j) {
        for (int i = 0; i <= gr.nq; ++i) {
            if (i) csv << ',';
            csv << fmt17(h(i, j));
        }
        csv << '\n';
    }
    csv.close();

    json hdr;
    hdr["nq"] = gr.nq;
    hdr["np"] = gr.np;
    hdr["p0"] = gr.p0;
    hdr["q_head"] = q_head;
    hdr["g"] = g;
    hdr["s"] = s;
    hdr["vorticity"] = vorticity_spec;
    hdr["csv"] = cp.filename().string();
    std::ofstream out(jp);
    if (!out) throw DataError("snapshot: cannot write \"" + json_path + "\"");
    out << hdr.dump(2) << '\n';
}

Snapshot load_snapshot(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw DataError("snapshot: cannot open \"" + json_path + "\"");
    json hdr;
    try {
        in >> hdr;
    } catch (const json::exception& e) {
        throw DataError(std::string("snapshot: parse error: ") + e.what());
    }

    Snapshot snap;
    try {
        const int nq = hdr.at("nq").get<int>();
        const int np = hdr.at("np").get<int>();
        const double p0 = hdr.at("p0").get<double>();
        snap.q_head = hdr.at("q_head").get<double>();
        snap.g = hdr.at("g").get<double>();
        snap.s = hdr.contains("s") ? hdr.at("s").get<double>() : 0.0;
        snap.vorticity_spec = hdr.at("vorticity");

        const Grid grid(nq, np, p0);
        snap.h = HeightField(grid);

        const std::filesystem::path csv_path =
            std::filesystem::path(json_path).parent_path() / hdr.at("csv").get<std::string>();
        std::ifstream csv(csv_path);
        if (!csv) throw DataError("snapshot: cannot open \"" + csv_path.string() + "\"");
        std::string line;
        for (int j = 0; j <= np; ++j) {
            if (!std::getline(csv, line)) throw DataError("snapshot: csv truncated");
            std::stringstream ss(line);
            std::string cell;
            for (int i = 0; i <= nq; ++i) {
                if (!std::getline(ss, cell, ',')) throw DataError("snapshot: csv row too short");
                std::size_t pos = 0;
                const double v = std::stod(cell, &pos);
                if (!std::isfinite(v)) throw DataError("snapshot: non-finite value");
                snap.h.at(i, j) = v;
            }
        }
        for (int i = 0; i <= nq; ++i) {
            if (snap.h(i, 0) != 0.0) throw DataError("snapshot: bottom row is not zero");
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("snapshot: bad header: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("snapshot: ") + e.what());
    }
    return snap;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("csv: cannot write \"" + path + "\"");
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (k) out << ',';
        out << header[k];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            out << fmt17(row[k]);
        }
        out << '\n';
    }
}

} // namespace rotwave
