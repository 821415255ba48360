#include "levysup/cli.hpp"

#include "levysup/errors.hpp"
#include "levysup/model.hpp"
#include "levysup/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace levysup {

namespace {

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) file_ = std::make_unique<std::ofstream>(path);
    }
    [[nodiscard]] bool ok() const { return !file_ || file_->good(); }
    std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
    std::ostream& fallback_;
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Law of the running supremum of a spectrally positive stable process"};
    app.require_subcommand(1);

    TableOptions topt;
    std::string x_range;
    std::string x_list;
    std::string out_path;
    bool normalized = false;
    double c = 0.0;
    auto* table = app.add_subcommand("table", "Tabulate a quantity over a grid of abscissae");
    table->add_option("--alpha", topt.alpha, "Stability index in (1,2)")->required();
    auto* c_opt = table->add_option("--c", c, "Levy-measure constant c > 0");
    auto* n_opt = table->add_flag("--normalized", normalized, "Use c = 1/Gamma(-alpha) (default)");
    c_opt->excludes(n_opt);
    table->add_option("--t", topt.t, "Time horizon (default 1)");
    table->add_option("--quantity", topt.quantity, "Quantity to tabulate")
        ->check(CLI::IsMember(table_quantities()));
    auto* xr = table->add_option("--x", x_range, "Abscissae start:step:stop");
    auto* xl = table->add_option("--x-list", x_list, "Abscissae v1,v2,...");
    xr->excludes(xl);
    table->add_option("--p", topt.p, "Transform variable for passage-laplace (default 1)");
    table->add_option("--format", topt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--out", out_path, "Output file (default standard output)");

    VerifyOptions vopt;
    std::string alpha_list;
    std::string level = "fast";
    std::string vformat = "json";
    std::string vout_path;
    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--alpha-list", alpha_list, "Comma-separated stability indices (default 1.3,1.5,1.8)");
    verify->add_option("--level", level, "fast or full (full adds Monte Carlo)")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--seed", vopt.seed, "Monte Carlo seed (default 42)");
    verify->add_option("--format", vformat, "json or text")->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--threads", vopt.threads, "Monte Carlo threads (default: all cores)");
    verify->add_flag("--omit-timing", vopt.omit_timing, "Report runtimes as 0 for byte-comparable output");
    verify->add_option("--mc-paths", vopt.mc_paths, "Monte Carlo paths (default 20000)")->check(CLI::PositiveNumber);
    verify->add_option("--mc-steps", vopt.mc_steps, "Monte Carlo steps per path (default 2000)")->check(CLI::PositiveNumber);
    verify->add_option("--out", vout_path, "Report file (default standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    if (*table) {
        if (*c_opt) topt.c = c;
        try {
            if (*xr) topt.xs = parse_range(x_range);
            if (*xl) topt.xs = parse_list(x_list);
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << "\n\n" << table->help();
            return kExitUsage;
        }
        try {
            validate_alpha(topt.alpha);
        } catch (const DomainError& e) {
            err << "error: " << e.what() << "\n\n" << table->help();
            return kExitUsage;
        }
        Sink sink(out_path, out);
        if (!sink.ok()) {
            err << "error: cannot open " << out_path << " for writing\n";
            return kExitUsage;
        }
        return run_table(topt, sink.stream(), err);
    }

    if (!alpha_list.empty()) {
        try {
            vopt.alphas = parse_list(alpha_list);
            for (double a : vopt.alphas) validate_alpha(a);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n\n" << verify->help();
            return kExitUsage;
        }
    }
    vopt.level = level == "full" ? VerifyLevel::full : VerifyLevel::fast;
    Sink sink(vout_path, out);
    if (!sink.ok()) {
        err << "error: cannot open " << vout_path << " for writing\n";
        return kExitUsage;
    }
    const VerificationReport report = run_checks(vopt);
    sink.stream() << (vformat == "json" ? report_json(report) : report_text(report));
    sink.stream().flush();
    return report.all_passed ? kExitOk : kExitChecksFailed;
}

}  // namespace levysup
