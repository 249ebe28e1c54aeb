// wgsim: entanglement and decoherence curves for two coupled waveguides, written as CSV.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "wg/cli.hpp"

namespace {

void add_common(CLI::App& sub, wg::RunConfig& c) {
    sub.add_option("--omega", c.omega, "mode frequency");
    sub.add_option("--J", c.J, "evanescent coupling");
    sub.add_option("--gamma", c.gamma, "loss rate per mode");
    sub.add_option("--nbar", c.nbar, "thermal occupation");
    sub.add_option("--r", c.r, "squeezing parameter");
    sub.add_option("--N", c.N, "photon number");
    sub.add_option("--cutoff", c.cutoff, "Fock cutoff on n_a + n_b");
    sub.add_option("--tmax", c.t_max, "final time t (first column is J t)");
    sub.add_option("--steps", c.steps, "number of grid points");
    sub.add_option("--input", c.input_spec, std::string(wg::kStateGrammar));
    sub.add_option("-o,--output", c.output_path, "CSV path (default: stdout)");
    sub.add_option("--loss-model", c.loss_model, "gaussian loss: pure_loss | as_printed")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, wg::LossModel>{{"pure_loss", wg::LossModel::pure_loss},
                                                 {"as_printed", wg::LossModel::as_printed}}));
    sub.add_option("--purity-variant", c.purity_variant, "closed purity: as_printed | rate_times_t")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, wg::PurityVariant>{{"as_printed", wg::PurityVariant::as_printed},
                                                     {"rate_times_t", wg::PurityVariant::rate_times_t}}));
}

/// Plain key=value lines ('#' starts a comment). A key fills the option --key of the chosen
/// subcommand unless that flag was given on the command line.
void apply_config_file(const std::string& path, CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = CLI::detail::trim_copy(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = CLI::detail::trim_copy(line.substr(0, eq));
        const std::string value = CLI::detail::trim_copy(line.substr(eq + 1));
        CLI::Option* opt = nullptr;
        try {
            opt = sub.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "' for " +
                                       sub.get_name());
        }
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-waveguide entanglement and decoherence simulator"};
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; command-line flags take precedence")
        ->check(CLI::ExistingFile);
    app.require_subcommand(1);

    wg::RunConfig cfg;
    const char* commands[][2] = {
        {"lossless", "lossless SU(2) evolution of --input"},
        {"noon", "lossless evolution of noon:--N"},
        {"thermal", "closed-form entropy for thermal inputs"},
        {"damped", "exact damped evolution of --input with closed-form curves"},
        {"gaussian", "covariance-matrix log-negativity and Simon test"},
        {"purity", "closed-form purity next to the master-equation oracle"},
        {"compare", "closed form against the master-equation oracle"},
        {"figure", "curve family for a figure id"},
    };
    for (auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(*sub, cfg);
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
        if (std::string(name) == "compare") {
            sub->add_option("--tolerance", cfg.tolerance, "max trace distance before exit code 4");
            sub->add_option("--dt", cfg.dt, "oracle step (default: automatic)");
            sub->add_option("--trajectory", cfg.trajectory_path, "dump oracle density matrices as CSV");
        }
        if (std::string(name) == "purity") sub->add_option("--dt", cfg.dt, "oracle step (default: automatic)");
        if (std::string(name) == "figure") sub->add_option("id", cfg.figure_id, "figure id, e.g. 1d")->required();
    }

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) apply_config_file(config_path, *app.get_subcommands().front());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : wg::kExitUsage;
    }
    if (auto* fig = app.get_subcommand("figure"); fig->parsed()) cfg.steps_set = fig->get_option("--steps")->count() > 0;
    return wg::run(cfg);
}
