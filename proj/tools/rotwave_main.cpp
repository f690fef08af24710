#include "rotwave/check.hpp"
#include "rotwave/continuation.hpp"
#include "rotwave/dispersion.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/fields.hpp"
#include "rotwave/heightpde.hpp"
#include "rotwave/io.hpp"
#include "rotwave/laminar.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rotwave;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInadmissible = 2;
constexpr int kExitNoBifurcation = 3;
constexpr int kExitSolverFailure = 4;
constexpr int kExitPropertyFailure = 5;
constexpr int kExitConfigError = 64;
constexpr int kExitDataError = 65;

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

int cmd_validate(const RunConfig& cfg) {
    const VorticityReport rep = check_amplitude_condition(cfg.vorticity, cfg.p0, cfg.g);
    std::cout << "Gamma_0 = " << fmt17(rep.gamma0) << "\n"
              << "Gamma_1 = " << fmt17(rep.gamma1) << "\n"
              << "condition_lhs = " << fmt17(rep.condition_lhs) << "\n"
              << "condition_rhs = " << fmt17(rep.condition_rhs) << "\n"
              << "admissible = " << (rep.admissible ? "true" : "false") << "\n"
              << "favorable = " << (rep.favorable ? "true" : "false") << "\n";
    return rep.admissible ? kExitOk : kExitInadmissible;
}

int cmd_dispersion(const RunConfig& cfg) {
    const BifurcationPoint bp = find_lambda_star(cfg.vorticity, cfg.p0, cfg.g, cfg.grid.np);
    std::cout << "lambda_star = " << fmt17(bp.lambda_star) << "\n"
              << "q_star = " << fmt17(bp.q_star) << "\n"
              << "depth = " << fmt17(bp.depth) << "\n";
    // consistency re-check of the printed head
    const double q_re = bernoulli_head(cfg.vorticity, bp.lambda_star, cfg.p0, cfg.g);
    std::cout << "q_star_recheck = " << fmt17(q_re) << "\n";
    if (bp.extra_sign_changes > 0) {
        std::cout << "note: " << bp.extra_sign_changes
                  << " additional mismatch sign change(s) past lambda_star\n";
    }

    ensure_dir(cfg.outputs.dir);
    const std::string path = cfg.outputs.dir + "/eigenfunction.csv";
    std::ofstream out(path);
    const double dp = -cfg.p0 / cfg.grid.np;
    for (int j = 0; j <= cfg.grid.np; ++j) {
        out << fmt17(cfg.p0 + j * dp) << ',' << fmt17(bp.eigen_m[j]) << '\n';
    }
    std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_laminar(const RunConfig& cfg) {
    const auto [g0, g1] = cfg.vorticity.gamma_extrema(cfg.p0);
    (void)g1;
    const double lo = -2.0 * g0 + 1e-8;
    const double hi = cfg.laminar_scan.lambda_max
                          ? *cfg.laminar_scan.lambda_max
                          : lo + std::max(1.0, 3.0 * cfg.g * std::abs(cfg.p0));
    const int n = cfg.laminar_scan.count;

    std::vector<std::vector<double>> rows;
    for (int k = 0; k < n; ++k) {
        const double lam = lo + (hi - lo) * double(k) / (n - 1);
        const double d = laminar_height(cfg.vorticity, lam, cfg.p0, 0.0);
        rows.push_back({lam, lam + 2.0 * cfg.g * d, d});
    }
    ensure_dir(cfg.outputs.dir);
    const std::string path = cfg.outputs.dir + "/laminar_scan.csv";
    write_csv(path, {"lambda", "q_head", "depth"}, rows);
    std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int run_one_branch(const RunConfig& cfg, Nu nu, bool emit_gnuplot) {
    const BifurcationPoint bp = find_lambda_star(cfg.vorticity, cfg.p0, cfg.g, cfg.grid.np);
    const Grid grid(cfg.grid.nq, cfg.grid.np, cfg.p0);
    const Branch branch = continue_branch(cfg.vorticity, cfg.g, bp, nu, grid, cfg.continuation);

    const std::string tag = nu == Nu::plus ? "plus" : "minus";
    ensure_dir(cfg.outputs.dir);

    std::vector<std::vector<double>> rows;
    for (const BranchSummaryRow& r : branch_summary(branch)) {
        rows.push_back({r.s, r.q_head, r.amplitude, r.min_hp, r.max_hp, r.min_cu,
                        double(r.newton_iterations)});
    }
    const std::string summary_path = cfg.outputs.dir + "/branch_" + tag + ".csv";
    write_csv(summary_path, {"s", "q_head", "amplitude", "min_hp", "max_hp", "min_cu",
                             "newton_iterations"},
              rows);

    const json vort = vorticity_to_json(cfg.vorticity);
    for (std::size_t k = 0; k < branch.points.size(); k += cfg.outputs.snapshot_stride) {
        char name[64];
        std::snprintf(name, sizeof(name), "point_%s_%06zu.json", tag.c_str(), k);
        const BranchPoint& pt = branch.points[k];
        save_snapshot(cfg.outputs.dir + "/" + name, pt.h, pt.q_head, cfg.g, vort, pt.s);
    }
    // always snapshot the final state
    {
        char name[64];
        std::snprintf(name, sizeof(name), "point_%s_final.json", tag.c_str());
        const BranchPoint& pt = branch.points.back();
        save_snapshot(cfg.outputs.dir + "/" + name, pt.h, pt.q_head, cfg.g, vort, pt.s);
    }

    json term;
    term["nu"] = to_string(branch.nu);
    term["termination"] = to_string(branch.termination);
    term["steps"] = branch.points.size() - 1;
    term["final_s"] = branch.points.back().s;
    term["final_q_head"] = branch.points.back().q_head;
    term["final_amplitude"] = branch.points.back().amplitude;
    term["final_min_cu"] = branch.points.back().min_cu;
    std::ofstream tf(cfg.outputs.dir + "/termination_" + tag + ".json");
    tf << term.dump(2) << '\n';

    if (emit_gnuplot) {
        std::ofstream gp(cfg.outputs.dir + "/branch_" + tag + ".gp");
        gp << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set xlabel 'Q'\nset ylabel 'amplitude'\n"
           << "plot 'branch_" << tag << ".csv' using 2:3 with linespoints\n";
    }

    std::cout << "branch " << tag << ": " << branch.points.size() - 1 << " steps, termination "
              << to_string(branch.termination) << ", wrote " << summary_path << "\n";
    return branch.termination == Termination::solver_failure ? kExitSolverFailure : kExitOk;
}

int cmd_branch(const RunConfig& cfg, const std::string& nu_str, bool both, bool emit_gnuplot) {
    if (both) {
        int rc_plus = 0, rc_minus = 0;
        std::thread tp([&] { rc_plus = run_one_branch(cfg, Nu::plus, emit_gnuplot); });
        std::thread tm([&] { rc_minus = run_one_branch(cfg, Nu::minus, emit_gnuplot); });
        tp.join();
        tm.join();
        return rc_plus != kExitOk ? rc_plus : rc_minus;
    }
    const Nu nu = nu_str == "-" ? Nu::minus : Nu::plus;
    return run_one_branch(cfg, nu, emit_gnuplot);
}

int cmd_inspect(const std::string& snapshot_path, const std::string& out_dir, bool emit_gnuplot) {
    const Snapshot snap = load_snapshot(snapshot_path);
    VorticityModel model = [&] {
        try {
            return vorticity_from_json(snap.vorticity_spec, snap.h.grid().p0);
        } catch (const ConfigError& e) {
            throw DataError(std::string("snapshot vorticity spec: ") + e.what());
        }
    }();
    const bool favorable = check_amplitude_condition(model, snap.h.grid().p0, snap.g).favorable;

    std::vector<std::string> failures;
    json rep;
    rep["snapshot"] = snapshot_path;
    rep["s"] = snap.s;
    rep["q_head"] = snap.q_head;
    rep["favorable_vorticity"] = favorable;

    ensure_dir(out_dir);
    try {
        HeightField h = snap.h;
        bool reflected = false;
        if (h(0, h.grid().np) < h(h.grid().nq, h.grid().np)) {
            h = reflect_q(h); // phase-shifted branch: put the crest at q=0
            reflected = true;
        }
        const WaveSolution ws = reconstruct(h);
        const GeometryReport geo = surface_geometry(ws);
        const NodalReport nodal = nodal_pattern(h);

        rep["phase_reflected"] = reflected;
        rep["depth"] = ws.depth;
        rep["amplitude"] = geo.amplitude;
        rep["applicable"] = geo.applicable;
        rep["eta_monotone"] = geo.eta_monotone;
        rep["v_positive"] = geo.v_positive;
        rep["inflection_count"] = geo.inflection_count;
        rep["inflection_locations"] = geo.inflection_locations;
        rep["crest_curvature"] = geo.crest_curvature;
        rep["trough_curvature"] = geo.trough_curvature;
        rep["displacement_monotone"] = geo.displacement_monotone;
        rep["nodal"] = {{"hq_negative", nodal.hq_negative},
                        {"hqp_negative_bottom", nodal.hqp_negative_bottom},
                        {"hqq_negative_left", nodal.hqq_negative_left},
                        {"hqq_positive_right", nodal.hqq_positive_right},
                        {"corner_bottom_left", nodal.corner_bottom_left},
                        {"corner_bottom_right", nodal.corner_bottom_right},
                        {"corner_top_left", nodal.corner_top_left},
                        {"corner_top_right", nodal.corner_top_right},
                        {"trivial_input", nodal.trivial_input}};
        rep["bernoulli_surface_defect"] = bernoulli_surface_defect(ws, snap.g, snap.q_head);
        rep["min_hp"] = h.min_hp();
        rep["max_hp"] = h.max_hp();

        const Grid& gr = ws.grid;
        {
            std::vector<std::vector<double>> rows;
            for (int i = 0; i <= gr.nq; ++i) rows.push_back({gr.q(i), ws.eta[i]});
            write_csv(out_dir + "/surface_eta.csv", {"q", "eta"}, rows);
        }
        {
            std::vector<std::vector<double>> rows;
            for (int j = 0; j <= gr.np; ++j) rows.push_back({gr.p(j), ws.displacement[j]});
            write_csv(out_dir + "/displacement.csv", {"p", "L"}, rows);
        }
        for (int level = 1; level <= 4; ++level) {
            const int j = gr.np * level / 4;
            const std::vector<double> y = ws.streamline(j);
            std::vector<std::vector<double>> rows;
            for (int i = 0; i <= gr.nq; ++i) rows.push_back({gr.q(i), y[i]});
            char name[64];
            std::snprintf(name, sizeof(name), "/streamline_%02d.csv", j);
            write_csv(out_dir + name, {"q", "y"}, rows);
        }

        if (!geo.applicable) {
            rep["note"] = "amplitude too small to classify; paper properties not applicable";
        } else {
            if (!geo.eta_monotone) failures.push_back("eta_monotone");
            if (!geo.v_positive) failures.push_back("v_positive");
            if (geo.inflection_count % 2 == 0) failures.push_back("inflection_count_odd");
            if (!(geo.crest_curvature < -geo.tau)) failures.push_back("crest_concave");
            if (!(geo.trough_curvature > geo.tau)) failures.push_back("trough_convex");
            if (!nodal.all()) failures.push_back("nodal_pattern");
            if (favorable && !geo.displacement_monotone) {
                failures.push_back("displacement_monotone");
            }
        }
    } catch (const StagnationError& e) {
        failures.push_back("stagnation");
        rep["error"] = e.what();
    }

    rep["failures"] = failures;
    {
        std::ofstream out(out_dir + "/geometry.json");
        out << rep.dump(2) << '\n';
    }
    if (emit_gnuplot) {
        std::ofstream gp(out_dir + "/inspect.gp");
        gp << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "plot 'surface_eta.csv' using 1:2 with lines, \\\n"
           << "     'displacement.csv' using 2:1 with lines\n";
    }
    std::cout << rep.dump(2) << "\n";
    return failures.empty() ? kExitOk : kExitPropertyFailure;
}

int cmd_check(const RunConfig& cfg, bool break_jacobian) {
    const std::vector<CheckResult> results = run_check_suite(cfg, break_jacobian);
    bool all = true;
    for (const CheckResult& r : results) {
        std::printf("[%s] %-18s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotwave: steady periodic gravity water waves with vorticity"};
    app.require_subcommand(1);

    std::string config_path, nu_str = "+", out_override, snapshot_path;
    bool both = false, emit_gnuplot = false, break_jacobian = false;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", out_override, "override the output directory");
        sub->add_flag("--emit-gnuplot", emit_gnuplot, "write companion gnuplot scripts");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the amplitude condition");
    add_config(validate);
    CLI::App* dispersion = app.add_subcommand("dispersion", "locate the bifurcation point");
    add_config(dispersion);
    CLI::App* laminar = app.add_subcommand("laminar", "tabulate the trivial solution family");
    add_config(laminar);
    CLI::App* branch = app.add_subcommand("branch", "trace a bifurcation branch");
    add_config(branch);
    branch->add_option("--nu", nu_str, "branch orientation (+ or -)")
        ->check(CLI::IsMember({"+", "-"}));
    branch->add_flag("--both", both, "trace both branches concurrently");
    CLI::App* inspect = app.add_subcommand("inspect", "verify wave geometry on a snapshot");
    inspect->add_option("snapshot", snapshot_path, "snapshot JSON path")->required();
    inspect->add_option("--out", out_override, "output directory");
    inspect->add_flag("--emit-gnuplot", emit_gnuplot, "write companion gnuplot scripts");
    CLI::App* check = app.add_subcommand("check", "run the cross-cutting invariant suite");
    add_config(check);
    check->add_flag("--break-jacobian", break_jacobian,
                    "fault-injection hook: corrupt the Jacobian under test");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inspect->parsed()) {
            return cmd_inspect(snapshot_path, out_override.empty() ? "." : out_override,
                               emit_gnuplot);
        }
        RunConfig cfg = load_config(config_path);
        if (!out_override.empty()) cfg.outputs.dir = out_override;
        if (validate->parsed()) return cmd_validate(cfg);
        if (dispersion->parsed()) return cmd_dispersion(cfg);
        if (laminar->parsed()) return cmd_laminar(cfg);
        if (branch->parsed()) return cmd_branch(cfg, nu_str, both, emit_gnuplot);
        if (check->parsed()) return cmd_check(cfg, break_jacobian);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const NoBifurcationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoBifurcation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
