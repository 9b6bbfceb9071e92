#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uqd/families.hpp"
#include "uqd/plot.hpp"
#include "uqd/sweep.hpp"
#include "uqd/verify.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing: " + path);
}

uqd::FamilySpec family_from_flag(const std::string& value) {
    if (value.rfind("custom:", 0) == 0) return uqd::load_custom_state(value.substr(7));
    uqd::FamilySpec spec;
    spec.family = uqd::family_from_name(value);
    if (spec.family == uqd::Family::custom)
        throw std::invalid_argument("custom family needs a file: use custom:<path>");
    return spec;
}

std::vector<Eigen::Index> parse_dims(const std::string& value) {
    std::vector<Eigen::Index> dims;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const std::size_t comma = value.find(',', pos);
        const std::string tok = value.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        long long d = 0;
        try {
            d = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad dimension list: " + value);
        }
        if (used != tok.size() || d < 1) throw std::invalid_argument("bad dimension list: " + value);
        dims.push_back(static_cast<Eigen::Index>(d));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (dims.empty()) throw std::invalid_argument("bad dimension list: " + value);
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-way unlocalizable discord toolkit"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "theta sweep of one quantity, written as CSV");
    std::string sw_family = "ghz3";
    std::string sw_quantity;
    uqd::SweepConfig sw;
    std::string sw_out;
    sweep->add_option("--family", sw_family, "ghz3|ghz4|bellmix|custom:<path>")->capture_default_str();
    sweep->add_option("--quantity", sw_quantity, "fig1a|fig1b|fig2a|fig2b or <name>:<parties>")->required();
    sweep->add_option("--theta-start", sw.theta_start, "start of theta range (radians)")->capture_default_str();
    sweep->add_option("--theta-end", sw.theta_end, "end of theta range (radians)")->capture_default_str();
    sweep->add_option("--steps", sw.steps, "grid points")->capture_default_str();
    sweep->add_option("--restarts", sw.opt.restarts, "optimizer restarts")->capture_default_str();
    sweep->add_option("--povm-outcomes", sw.opt.outcomes, "POVM outcomes; 0 = projective plus enlarged run")
        ->capture_default_str();
    sweep->add_option("--seed", sw.seed, "master seed")->capture_default_str();
    sweep->add_option("--threads", sw.threads, "worker threads")->capture_default_str();
    sweep->add_option("--out", sw_out, "output CSV path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "identity residual suite on random pure states");
    uqd::VerifyConfig vf;
    std::string vf_dims = "2,2,2";
    std::string vf_out;
    verify->add_option("--states", vf.states, "number of random states")->capture_default_str();
    verify->add_option("--dims", vf_dims, "comma-separated party dimensions")->capture_default_str();
    verify->add_option("--seed", vf.seed, "master seed")->capture_default_str();
    verify->add_option("--restarts", vf.opt.restarts, "optimizer restarts")->capture_default_str();
    verify->add_option("--povm-outcomes", vf.opt.outcomes, "POVM outcomes; 0 = projective plus enlarged run")
        ->capture_default_str();
    verify->add_option("--tol-exact", vf.tol_exact, "tolerance for measurement-free identities")
        ->capture_default_str();
    verify->add_option("--tol-opt", vf.tol_opt, "tolerance for optimized identities")->capture_default_str();
    verify->add_option("--threads", vf.threads, "worker threads")->capture_default_str();
    verify->add_option("--out", vf_out, "report path (default stdout)");

    // report
    auto* report = app.add_subcommand("report", "emit a gnuplot script for a sweep CSV");
    std::string rp_csv;
    std::string rp_out;
    report->add_option("csv", rp_csv, "sweep CSV file")->required();
    report->add_option("--out", rp_out, "script path (default <csv>.gp)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            sw.family = family_from_flag(sw_family);
            sw.quantity = sw_quantity;
            const uqd::SweepResult res = uqd::run_sweep(sw);
            write_output(sw_out, res.csv);
            return 0;
        }
        if (verify->parsed()) {
            vf.dims = parse_dims(vf_dims);
            const uqd::VerifyResult res = uqd::run_verify(vf);
            write_output(vf_out, res.report);
            if (!res.all_within_tol) {
                std::cerr << "verify: residuals above tolerance\n";
                return 1;
            }
            return 0;
        }
        const uqd::CsvSummary csv = uqd::inspect_sweep_csv(rp_csv);
        write_output(rp_out.empty() ? rp_csv + ".gp" : rp_out, uqd::gnuplot_script(csv));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
