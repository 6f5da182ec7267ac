// simulate: evaluate one RB-SWIPT configuration or sweep it along one axis.
//
// exit codes: 0 ok, 1 output file error, 2 config error, 3 solver failure

#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rbswipt/rbswipt.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

void print_point(const rbswipt::SystemParams& p, const rbswipt::LinkResult& r) {
    std::printf("status        = %s\n", rbswipt::to_string(r.status));
    std::printf("d             = %.6g m\n", p.geometry.d);
    std::printf("P_in          = %.6g W\n", p.P_in);
    std::printf("R_M2          = %.6g\n", p.loss.R_M2);
    std::printf("P4            = %.6g W\n", r.P4);
    std::printf("eta_SHG       = %.6g\n", r.eta_SHG);
    std::printf("Gamma_diff    = %.6g\n", r.Gamma_diff);
    std::printf("P_c           = %.6g W\n", r.P_c);
    std::printf("Gamma_PD      = %.6g\n", r.Gamma_PD);
    std::printf("P_recv_PT     = %.6g W\n", r.P_recv_PT);
    std::printf("P_recv_IT     = %.6g W\n", r.P_recv_IT);
    std::printf("P_charge      = %.6g W\n", r.P_hat_charge);
    std::printf("V_mpp         = %.6g V\n", r.V_mpp);
    std::printf("R_b           = %.6g bit/s/Hz\n", r.R_b);
    if (r.status == rbswipt::LinkStatus::ok && !r.plane_wave_valid)
        std::printf("note: SHG crystal longer than the Rayleigh range at the beam waist\n");
}

void print_safety(const rbswipt::SystemParams& p) {
    const auto s = rbswipt::safety::report(p.safety, p.P_in);
    std::printf("P_a           = %.6g W\n", s.P_a);
    std::printf("irradiance    = %.6g W/cm^2 at d_e = %.6g m\n", s.irradiance * 1e-4, p.safety.d_e);
    std::printf("alpha         = %.6g mrad\n", s.alpha * 1e3);
    std::printf("MPE           = %.6g W/cm^2\n", s.mpe * 1e-4);
    std::printf("P_a_safe      = %.6g W\n", s.limit.P_a_safe);
    std::printf("P_in_safe     = %.6g W\n", s.limit.P_in_safe);
    std::printf("within limit  = %s\n", s.within_limit() ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RB-SWIPT link simulator"};
    std::string config_path;
    std::string sweep_text;
    std::string csv_path;
    std::string svg_path;
    std::vector<std::string> output_names;
    bool print_defaults = false;
    bool safety = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--config", config_path, "configuration file (key = value unit)");
    app.add_option("--sweep", sweep_text, "<axis>:<min>:<max>:<steps>, axis one of R_M2, l_s, d, P_in");
    app.add_option("--csv", csv_path, "write results as CSV");
    app.add_option("--svg", svg_path, "write results as an SVG plot");
    app.add_option("--outputs", output_names,
                   "series to plot (P_recv_PT, P_recv_IT, P_hat_charge, R_b, eta_SHG, status)")
        ->delimiter(',');
    app.add_flag("--print-defaults", print_defaults, "print the reference configuration and exit");
    app.add_flag("--safety", safety, "print the spontaneous-emission eye-safety report");
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (print_defaults) {
        std::cout << rbswipt::config::defaults_text();
        return 0;
    }
    if (config_path.empty()) {
        std::cerr << "error: --config is required\n";
        return kExitConfig;
    }

    try {
        const auto params = rbswipt::config::load(config_path);
        params.validate();

        std::vector<rbswipt::sweep::Output> outputs;
        for (const auto& name : output_names) outputs.push_back(rbswipt::sweep::parse_output(name));
        if (outputs.empty()) outputs = rbswipt::sweep::all_outputs();

        if (safety) print_safety(params);

        std::vector<rbswipt::sweep::Row> rows;
        std::string axis = "d";
        std::string unit = "m";
        if (!sweep_text.empty()) {
            auto spec = rbswipt::sweep::parse_spec(sweep_text);
            spec.outputs = outputs;
            const auto& ax = rbswipt::sweep::find_axis(spec.axis);
            axis = ax.name;
            unit = ax.unit;
            rows = rbswipt::sweep::run_sweep(params, spec, threads);
            if (csv_path.empty() && svg_path.empty()) rbswipt::emit::emit_csv(rows, std::cout);
        } else {
            const auto r = rbswipt::evaluate_link(params);
            rows.push_back({params.geometry.d, r});
            print_point(params, r);
        }

        if (!csv_path.empty()) rbswipt::emit::write_csv(rows, csv_path);
        if (!svg_path.empty()) rbswipt::emit::write_svg(rows, svg_path, axis, unit, outputs);
    } catch (const rbswipt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const rbswipt::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const rbswipt::PhysicsError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const rbswipt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
