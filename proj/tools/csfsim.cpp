#include "csf/analysis.hpp"
#include "csf/csv_io.hpp"
#include "csf/errors.hpp"
#include "csf/picard.hpp"
#include "csf/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBlowup = 2;
constexpr int kExitConfig = 3;
constexpr int kExitConditions = 4;

std::vector<csf::Model> models_to_run(const csf::ScenarioConfig& sc) {
    if (sc.model) return {*sc.model};
    return {csf::Model::A1, csf::Model::A2};
}

void apply_model_flag(csf::ScenarioConfig& sc, const std::string& model) {
    if (model.empty()) return;
    if (model == "a1") sc.model = csf::Model::A1;
    else if (model == "a2") sc.model = csf::Model::A2;
    else if (model == "both") sc.model.reset();
    else throw csf::ConfigError("--model: expected a1, a2 or both");
}

std::vector<std::pair<std::string, std::string>>
existence_entries(const csf::ExistenceReport& rep) {
    using csf::format_number;
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("existence.cond_slope", rep.cond_slope.pass ? "pass" : "fail");
    e.emplace_back("existence.cond_slope_margin", format_number(rep.cond_slope.margin));
    e.emplace_back("existence.cond_pressure", rep.cond_pressure.pass ? "pass" : "fail");
    e.emplace_back("existence.cond_pressure_margin",
                   format_number(rep.cond_pressure.margin));
    e.emplace_back("existence.cond_pzz", rep.cond_pzz.pass ? "pass" : "fail");
    e.emplace_back("existence.cond_pzz_margin", format_number(rep.cond_pzz.margin));
    e.emplace_back("existence.posture", csf::to_string(rep.posture));
    e.emplace_back("existence.pressure_norm", format_number(rep.b_norm));
    e.emplace_back("existence.pressure_bound", format_number(rep.pressure_bound));
    e.emplace_back("existence.eps", format_number(rep.eps));
    e.emplace_back("existence.sup_pzz", format_number(rep.sup_pzz));
    e.emplace_back("existence.predicted_blowup",
                   rep.predicted_blowup ? format_number(*rep.predicted_blowup)
                                        : std::string("none"));
    return e;
}

int run_simulate(const csf::ScenarioConfig& sc) {
    const csf::Grid grid = csf::make_grid(sc);
    const csf::State init = csf::build_initial_state(sc, grid);
    const csf::ExistenceReport rep = csf::check_conditions(
        init.u, init.P, grid, sc.constants, sc.C_hat1, sc.stepper.t_final);

    bool blew_up = false;
    for (const csf::Model model : models_to_run(sc)) {
        const csf::Trajectory traj =
            csf::simulate(init, sc.stepper, sc.constants, model, grid);
        const std::string dir = sc.out_dir + "/" + csf::to_string(model);
        csf::emit_csv(traj, grid, dir);

        auto entries = trajectory_report_entries(traj);
        for (auto& kv : existence_entries(rep)) entries.push_back(std::move(kv));
        for (auto& kv : sc.resolved_entries())
            entries.emplace_back("config." + kv.first, kv.second);
        csf::write_report(dir + "/report.txt", entries);

        std::cout << csf::to_string(model) << ": " << csf::to_string(traj.outcome);
        if (traj.outcome != csf::Outcome::Completed)
            std::cout << " at t=" << csf::format_number(traj.event_time)
                      << " (field " << traj.event_field << ")";
        std::cout << ", output in " << dir << "\n";
        if (traj.outcome == csf::Outcome::BlowUpDetected) blew_up = true;
    }
    return blew_up ? kExitBlowup : kExitOk;
}

int run_check(const csf::ScenarioConfig& sc) {
    const csf::Grid grid = csf::make_grid(sc);
    const csf::State init = csf::build_initial_state(sc, grid);
    const csf::ExistenceReport rep = csf::check_conditions(
        init.u, init.P, grid, sc.constants, sc.C_hat1, sc.stepper.t_final);
    for (const auto& [k, v] : existence_entries(rep))
        std::cout << k << " = " << v << "\n";
    return rep.all_pass() ? kExitOk : kExitConditions;
}

int run_picard(const csf::ScenarioConfig& sc, double horizon, double tol,
               int max_iter) {
    const csf::Grid grid = csf::make_grid(sc);
    const csf::State init = csf::build_initial_state(sc, grid);
    csf::PicardConfig pc;
    pc.T = horizon;
    pc.dt = sc.stepper.dt;
    pc.a2_h_sign = sc.stepper.a2_h_sign;
    const csf::Model model = sc.model.value_or(csf::Model::A1);
    const csf::FixedPointResult res =
        csf::run_fixed_point(init, pc, tol, max_iter, sc.constants, model, grid);
    std::cout << "model " << csf::to_string(model) << ", horizon "
              << csf::format_number(horizon) << ", "
              << (res.converged ? "converged" : "not converged") << " after "
              << res.history.size() << " iterations\n";
    std::printf("%4s %13s %13s %13s %13s %13s %8s\n", "n", "diff_u", "diff_eta",
                "diff_zeta", "diff_P", "diff_A", "ratio");
    for (const csf::IterationRecord& r : res.history)
        std::printf("%4d %13.6e %13.6e %13.6e %13.6e %13.6e %8.4f\n", r.n,
                    r.diff_u, r.diff_eta, r.diff_zeta, r.diff_P, r.diff_A,
                    r.ratio);
    return kExitOk;
}

int run_blowup(const csf::ScenarioConfig& sc, double b) {
    const auto rp = csf::RiccatiParams::from_constants(sc.constants);
    const auto t0 = csf::blowup_time(b, rp);
    std::cout << "C = " << csf::format_number(rp.C)
              << ", K/(RC) = " << csf::format_number(rp.K_over_RC) << "\n";
    if (t0)
        std::cout << "blow-up time = " << csf::format_number(*t0) << "\n";
    else
        std::cout << "blow-up time = none (datum <= 0, no finite-time blow-up)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSF compartment-model simulator"};
    app.require_subcommand(1);

    std::string scenario = "caseA";
    std::string model;
    int nz = -1;
    double dt = -1.0, t_final = -1.0;
    std::string out;
    double horizon = 0.05, tol = 1e-10, b_value = 0.0;
    int max_iter = 50;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "preset name (caseA, caseB) or config file");
        cmd->add_option("--model", model, "a1, a2 or both");
        cmd->add_option("--nz", nz, "mesh interval count override");
        cmd->add_option("--dt", dt, "time step override");
        cmd->add_option("--t-final", t_final, "final time override");
    };

    CLI::App* sim = app.add_subcommand("simulate", "integrate a scenario and emit CSV");
    add_common(sim);
    sim->add_option("--out", out, "output directory override");

    CLI::App* chk = app.add_subcommand("check", "evaluate the existence conditions");
    add_common(chk);

    CLI::App* pic = app.add_subcommand("picard", "run the successive-approximation iteration");
    add_common(pic);
    pic->add_option("--horizon", horizon, "fixed-point horizon T");
    pic->add_option("--tol", tol, "convergence tolerance on diff_u");
    pic->add_option("--max-iter", max_iter, "iteration cap");

    CLI::App* blw = app.add_subcommand("blowup", "closed-form blow-up prediction");
    blw->add_option("--scenario", scenario, "constants source");
    blw->add_option("--b", b_value, "uniform initial pressure datum")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        csf::ScenarioConfig sc = csf::load_scenario(scenario);
        apply_model_flag(sc, model);
        if (nz > 0) sc.nz = nz;
        if (dt > 0.0) sc.stepper.dt = dt;
        if (t_final > 0.0) sc.stepper.t_final = t_final;
        if (!out.empty()) sc.out_dir = out;
        sc.constants.validate();
        sc.stepper.validate();

        if (sim->parsed()) return run_simulate(sc);
        if (chk->parsed()) return run_check(sc);
        if (pic->parsed()) return run_picard(sc, horizon, tol, max_iter);
        return run_blowup(sc, b_value);
    } catch (const csf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const csf::SyntaxError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const csf::InvalidParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
