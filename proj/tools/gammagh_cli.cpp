/*
   Copyright 2026 The gammagh Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line driver: path simulation, figure data, experiments and
// pointwise evaluation.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
// 3 an experiment check failed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gammagh/gammagh.hpp"

namespace {

using namespace gammagh;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    double a = 1.0;
    double beta = 1.0;
    double mu = 1.0;
    double sigma = 0.5;
    double horizon = 1.0;
    std::uint64_t seed = 42;

    GammaGhParams params() const { return GammaGhParams(a, beta, mu, sigma); }
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--a", f.a, "shape rate a > 0")->capture_default_str();
    app->add_option("--b,--beta", f.beta, "mixing rate beta > 0")->capture_default_str();
    app->add_option("--mu", f.mu, "drift")->capture_default_str();
    app->add_option("--sigma", f.sigma, "scale > 0")->capture_default_str();
    app->add_option("--T", f.horizon, "horizon T > 0")->capture_default_str();
    app->add_option("--seed", f.seed, "master seed")->capture_default_str();
}

// Writes `text` to `out`, or to stdout when out is "-".
void emit(const std::string& out, const std::string& text) {
    if (out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) throw IoError("cannot write " + out);
}

void write_path(const Path& path, const std::string& out) {
    if (out == "-") {
        path.write_csv(std::cout);
    } else if (!path.write_csv(out)) {
        throw IoError("cannot write " + out);
    }
}

// --------------------------------------------------------------------------

struct SimulateFlags {
    CommonFlags common;
    std::size_t n = 500;
    bool brownian = false;
    std::string out = "path.csv";
};

int run_simulate(const SimulateFlags& f) {
    RngStream rng(f.common.seed, 0);
    Path path = f.brownian ? simulate_brownian(f.common.horizon, f.n, rng)
                           : simulate_path(f.common.params(), f.common.horizon, f.n, rng);
    write_path(path, f.out);
    const IncrementSet incr(uniform_partition(f.common.horizon, f.n),
                            std::vector<double>(path.increments().begin(), path.increments().end()));
    std::ostream& log = f.out == "-" ? std::cerr : std::cout;
    log << "terminal " << format_number(path.terminal(), 15) << '\n'
        << "total_variation " << format_number(total_variation(incr), 15) << '\n'
        << "quadratic_variation " << format_number(quadratic_variation(incr), 15) << '\n';
    return kExitOk;
}

// --------------------------------------------------------------------------

struct FiguresFlags {
    CommonFlags common;
    std::size_t n = 500;
    bool paired = false;
    std::string out = ".";
};

int run_figures(const FiguresFlags& f) {
    struct Figure {
        double a;
        const char* file;
    };
    const Figure figures[] = {
        {0.5, "fig_a0p5.csv"}, {1.0, "fig_a1.csv"}, {3.0, "fig_a3.csv"}, {10.0, "fig_a10.csv"}};
    const std::filesystem::path dir(f.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    std::uint64_t index = 0;
    for (const auto& fig : figures) {
        const GammaGhParams p(fig.a, f.common.beta, f.common.mu, f.common.sigma);
        Path path = [&] {
            if (f.paired) {
                // Common random numbers: every figure reuses the same streams.
                RngStream normals(f.common.seed, 0), mixing(f.common.seed, 1);
                return simulate_path_components(p, f.common.horizon, f.n, normals, mixing).path;
            }
            RngStream rng(f.common.seed, index);
            return simulate_path(p, f.common.horizon, f.n, rng);
        }();
        ++index;
        if (!path.write_csv((dir / fig.file).string())) {
            throw IoError("cannot write " + (dir / fig.file).string());
        }
    }
    RngStream brng(f.common.seed, f.paired ? 0 : index);
    const Path brownian = simulate_brownian(f.common.horizon, f.n, brng);
    if (!brownian.write_csv((dir / "fig_brownian.csv").string())) {
        throw IoError("cannot write " + (dir / "fig_brownian.csv").string());
    }
    return kExitOk;
}

// --------------------------------------------------------------------------

struct ExperimentFlags {
    CommonFlags common;
    std::string kind;
    std::vector<std::size_t> cells;
    std::size_t reps = 10000;
    std::size_t n = 0;
    std::size_t parts = 10;
    double t1 = 0.3;
    double t2 = 0.7;
    unsigned workers = 0;
    double var_tol = 0.0;
    std::string format = "json";
    std::string out = "-";
};

int run_experiment(const ExperimentFlags& f) {
    const auto p = f.common.params();
    MonteCarloConfig cfg;
    cfg.params = p;
    cfg.horizon = f.common.horizon;
    cfg.master_seed = f.common.seed;
    cfg.replications = f.reps;
    cfg.workers = f.workers;

    Json report;
    std::string csv;
    bool passed = false;
    if (f.kind == "variation") {
        cfg.cells = f.cells.empty() ? 4096 : f.cells.front();
        cfg.var_rel_tol = f.var_tol > 0 ? f.var_tol : 0.05;
        const auto r = run_variation_experiment(cfg);
        report = to_json(r);
        report["experiment"] = "variation";
        csv = std::string(kMomentCsvHeader) + '\n';
        std::ostringstream os;
        write_csv_row(os, r);
        csv += os.str();
        passed = r.passed();
    } else if (f.kind == "qv") {
        cfg.var_rel_tol = f.var_tol > 0 ? f.var_tol : 0.10;
        std::vector<std::size_t> ladder = f.cells;
        if (ladder.empty()) ladder = {256, 1024, 4096};
        const auto r = run_qv_experiment(cfg, ladder);
        report = to_json(r);
        std::ostringstream os;
        os << kMomentCsvHeader << '\n';
        for (const auto& m : r.gamma) write_csv_row(os, m);
        for (const auto& m : r.brownian) write_csv_row(os, m);
        csv = os.str();
        passed = r.passed();
    } else if (f.kind == "charfn") {
        cfg.replications = f.n ? f.n : 100000;
        const auto r = run_charfn_check(cfg);
        report = to_json(r);
        passed = r.passed;
    } else if (f.kind == "idecomp") {
        const auto r = run_idecomp_check(p, f.parts, f.n ? f.n : 100000, f.common.seed, f.workers);
        report = to_json(r);
        passed = r.passed;
    } else {  // fdd
        const std::size_t grid = f.n ? f.n : 500;
        const auto r = run_fdd_check(p, f.common.horizon, grid, f.t1, f.t2,
                                     f.reps, f.common.seed, f.workers);
        report = to_json(r);
        passed = r.passed();
    }

    if (f.format == "csv") {
        if (csv.empty()) throw DomainError("csv output is available for variation and qv only");
        emit(f.out, csv);
    } else {
        emit(f.out, report.dump(2) + '\n');
    }
    return passed ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------------------

struct EvalFlags {
    CommonFlags common;
    std::string what;
    std::string dist = "gamma";
    double c = 1.0;
    double u = 0.0;
};

int run_eval(const EvalFlags& f) {
    constexpr int digits = 15;
    if (f.what == "pdf") {
        double v = 0.0;
        if (f.dist == "gamma") {
            v = pdf_gamma_gh(f.common.params(), f.u);
        } else if (f.dist == "ig") {
            v = pdf_ig_gh(IgParams(f.common.a, f.common.beta), f.common.mu, f.common.sigma, f.u);
        } else {
            v = pdf_gig_gh(GigParams(f.common.a, f.common.beta, f.c), f.common.mu, f.common.sigma,
                           f.u);
        }
        std::cout << format_number(v, digits) << '\n';
        if (std::isinf(v)) {
            std::cerr << "note: the density has an integrable singularity at u = mu "
                         "(mixing shape a <= 1/2)\n";
        }
    } else if (f.what == "charfn") {
        const auto z = charfn_gamma_gh(f.common.params(), f.common.horizon, f.u);
        std::cout << format_number(z.re, digits) << ' ' << format_number(z.im, digits) << '\n';
    } else {  // constant
        const auto& k = theory_constants();
        std::cout << "I1 " << format_number(k.I1, digits) << '\n'
                  << "I2 " << format_number(k.I2, digits) << '\n'
                  << "E1 " << format_number(k.E1, digits) << '\n'
                  << "E2 " << format_number(k.E2, digits) << '\n'
                  << "C " << format_number(gig_norm_constant(GigParams(f.common.a, f.common.beta, f.c)), digits)
                  << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gamma-GH Levy process simulation and verification workbench"};
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "simulate one path of the empirical construction");
    add_common(simulate, sim.common);
    simulate->add_option("--n", sim.n, "grid size")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_flag("--brownian", sim.brownian, "simulate the Brownian comparison path");
    simulate->add_option("--out", sim.out, "CSV output file ('-' for stdout)")->capture_default_str();

    FiguresFlags figs;
    auto* figures = app.add_subcommand("figures", "write the five figure paths as CSV");
    add_common(figures, figs.common);
    figures->add_option("--n", figs.n, "grid size")->capture_default_str()->check(CLI::PositiveNumber);
    figures->add_flag("--paired", figs.paired, "share normal draws across all a values");
    figures->add_option("--out", figs.out, "output directory")->capture_default_str();

    ExperimentFlags exp;
    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment");
    add_common(experiment, exp.common);
    experiment->add_option("kind", exp.kind, "variation | qv | charfn | idecomp | fdd")
        ->required()
        ->check(CLI::IsMember({"variation", "qv", "charfn", "idecomp", "fdd"}));
    experiment->add_option("--cells", exp.cells, "cell count(s); comma-separated ladder for qv")
        ->delimiter(',');
    experiment->add_option("--reps", exp.reps, "replications")->capture_default_str();
    experiment->add_option("--n", exp.n, "sample count (charfn, idecomp) or grid size (fdd)");
    experiment->add_option("--parts", exp.parts, "summands for idecomp")->capture_default_str();
    experiment->add_option("--t1", exp.t1, "fdd first time")->capture_default_str();
    experiment->add_option("--t2", exp.t2, "fdd second time")->capture_default_str();
    experiment->add_option("--workers", exp.workers, "threads (0 = all cores)")->capture_default_str();
    experiment->add_option("--var-tol", exp.var_tol, "relative variance tolerance");
    experiment->add_option("--format", exp.format, "json | csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    experiment->add_option("--out", exp.out, "output file ('-' for stdout)")->capture_default_str();

    EvalFlags ev;
    auto* eval = app.add_subcommand("eval", "evaluate a density, the characteristic function or constants");
    add_common(eval, ev.common);
    eval->add_option("what", ev.what, "pdf | charfn | constant")
        ->required()
        ->check(CLI::IsMember({"pdf", "charfn", "constant"}));
    eval->add_option("--dist", ev.dist, "gamma | ig | gig")
        ->capture_default_str()
        ->check(CLI::IsMember({"gamma", "ig", "gig"}));
    eval->add_option("--c", ev.c, "GIG parameter c")->capture_default_str();
    eval->add_option("--u", ev.u, "evaluation point")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*simulate) return run_simulate(sim);
        if (*figures) return run_figures(figs);
        if (*experiment) return run_experiment(exp);
        return run_eval(ev);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
