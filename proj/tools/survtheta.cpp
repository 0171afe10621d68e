// survtheta: command-line front end for the weighted Kaplan-Meier area test.
//
//   survtheta estimate  data.csv -o curves/
//   survtheta test      data.csv --alpha 0.05
//   survtheta compare   data.csv
//   survtheta simulate  power|type1|sampling|mse [options]
//   survtheta fixtures
//
// Exit codes: 0 success, 1 degenerate data, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "survtheta/comparators.hpp"
#include "survtheta/csv_io.hpp"
#include "survtheta/errors.hpp"
#include "survtheta/estimators.hpp"
#include "survtheta/json_io.hpp"
#include "survtheta/simulate.hpp"
#include "survtheta/theta_test.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace survtheta;

namespace {

constexpr int kExitDegenerate = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path executable_dir() {
    std::error_code ec;
    const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    return ec ? fs::path() : exe.parent_path();
}

// Lookup order: $SURVTHETA_DATA_DIR, <prefix>/share/survtheta next to the
// installed binary, the configured install directory, then the source tree.
fs::path fixture_dir() {
    if (const char* env = std::getenv("SURVTHETA_DATA_DIR")) return env;
    std::vector<fs::path> candidates;
    if (const fs::path exe = executable_dir(); !exe.empty()) candidates.push_back(exe / ".." / "share" / "survtheta");
    candidates.emplace_back(SURVTHETA_INSTALL_DATA_DIR);
    candidates.emplace_back(SURVTHETA_SOURCE_DATA_DIR);
    for (const auto& dir : candidates) {
        if (fs::exists(dir / "lung.csv")) return fs::weakly_canonical(dir);
    }
    return SURVTHETA_INSTALL_DATA_DIR;
}

fs::path lung_fixture() { return fixture_dir() / "lung.csv"; }

// Accepts a path or the name of a bundled fixture ("lung").
fs::path resolve_input(const std::string& input) {
    if (input.empty() || input == "lung") return lung_fixture();
    return input;
}

Dataset load(const fs::path& path) {
    if (!fs::exists(path)) throw UsageError("input file not found: " + path.string());
    std::vector<std::string> warnings;
    Dataset ds = load_dataset(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return ds;
}

TauRule parse_tau_rule(const std::string& s) {
    if (s == "per_cohort" || s == "per-cohort") return TauRule::per_cohort;
    if (s == "common") return TauRule::common;
    throw UsageError("unknown tau rule '" + s + "'");
}

void emit(const json& j, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(output);
    if (!out) throw UsageError("cannot write " + output);
    out << j.dump(2) << '\n';
}

json envelope(const json& invocation) { return json{{"schema_version", kSchemaVersion}, {"invocation", invocation}}; }

void write_step_csv(const fs::path& path, const StepFunction& f) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path.string());
    out.precision(17);
    out << "t,value\n0," << f.initial_value() << '\n';
    for (std::size_t i = 0; i < f.knots().size(); ++i) out << f.knots()[i] << ',' << f.values()[i] << '\n';
}

std::string safe_name(std::string s) {
    for (auto& c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
    }
    return s;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string input;
    std::string output = ".";
    std::string format = "plotdata";
};

int cmd_estimate(const EstimateArgs& a, const json& invocation) {
    const Dataset ds = load(resolve_input(a.input));
    if (a.format != "plotdata" && a.format != "json" && a.format != "csv") {
        throw UsageError("estimate: format must be plotdata, json or csv");
    }
    fs::create_directories(a.output);

    std::map<std::string, StepFunction> curves;
    for (Population p : {Population::first, Population::second}) {
        const std::string pop = std::to_string(static_cast<int>(p));
        curves.emplace("theta_population" + pop, weighted_survival(ds, p));
        curves.emplace("km_population" + pop, km_estimate(ds.population(p)).surv);
        for (std::size_t z = 0; z < ds.cohort_count(); ++z) {
            curves.emplace("km_population" + pop + "_cohort_" + safe_name(ds.cohort_name(z)),
                           km_estimate(ds.cell(p, z)).surv);
        }
    }
    for (std::size_t z = 0; z < ds.cohort_count(); ++z) {
        curves.emplace("km_pooled_cohort_" + safe_name(ds.cohort_name(z)), pooled_cohort_km(ds, z).surv);
    }

    json index = envelope(invocation);
    index["files"] = json::array();
    for (const auto& [name, curve] : curves) {
        fs::path file = fs::path(a.output) / (name + (a.format == "csv" ? ".csv" : ".json"));
        if (a.format == "csv") {
            write_step_csv(file, curve);
        } else {
            json j = envelope(invocation);
            j["curve"] = curve;
            std::ofstream(file) << j.dump(2) << '\n';
        }
        index["files"].push_back(file.filename().string());
    }
    std::cout << index.dump(2) << '\n';
    return 0;
}

struct TestArgs {
    std::string input;
    double alpha = 0.05;
    std::string tau_rule = "per_cohort";
    std::string output;
};

int cmd_test(const TestArgs& a, const json& invocation) {
    const Dataset ds = load(resolve_input(a.input));
    const ThetaReport report = theta_test(ds, {a.alpha, parse_tau_rule(a.tau_rule)});
    json j = envelope(invocation);
    j.update(json(report));
    emit(j, a.output);
    return 0;
}

struct CompareArgs {
    std::string input;
    std::string output;
};

int cmd_compare(const CompareArgs& a, const json& invocation) {
    const fs::path path = resolve_input(a.input);
    if (!fs::exists(path)) throw UsageError("input file not found: " + path.string());
    const ParsedInput parsed = read_csv(path);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << '\n';
    std::vector<TimeEvent> g1, g2;
    for (const auto& o : parsed.observations) {
        (o.population == Population::first ? g1 : g2).push_back({o.time, o.event});
    }
    if (g1.empty() || g2.empty()) throw UsageError("compare: both populations need observations");
    json j = envelope(invocation);
    j["log_rank"] = log_rank(g1, g2);
    j["gehan_wilcoxon"] = gehan_wilcoxon(g1, g2);
    emit(j, a.output);
    return 0;
}

struct SimulateArgs {
    std::string experiment;
    std::vector<std::size_t> sizes;
    std::size_t replicates = 200;
    double alpha = 0.05;
    std::uint64_t seed = 20240601;
    unsigned threads = 0;
    std::string tau_rule = "per_cohort";
    MixtureSpec mixture;
    double reference_rate = 0.25;
    std::string membership = "binomial";
    std::string input;
    int population = 1;
    double grid_upper = 15.0;
    std::size_t grid_points = 20;
    std::string output;
    std::string format = "json";
};

void write_pvalue_csv(const fs::path& path, const Type1Result& r) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path.string());
    out.precision(17);
    out << "n,method,p_value\n";
    for (const auto& c : r.cells) {
        for (double p : c.theta_p) out << c.n << ",theta," << p << '\n';
        for (double p : c.gehan_p) out << c.n << ",gehan_wilcoxon," << p << '\n';
        for (double p : c.log_rank_p) out << c.n << ",log_rank," << p << '\n';
    }
}

void write_mse_csv(const fs::path& path, const MseResult& r) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path.string());
    out.precision(17);
    out << "n,t,truth,weighted_mean,weighted_variance,weighted_mse,km_mean,km_variance,km_mse\n";
    for (const auto& c : r.cells) {
        for (std::size_t k = 0; k < r.grid.size(); ++k) {
            out << c.n << ',' << r.grid[k] << ',' << r.truth[k] << ',' << c.weighted_mean[k] << ','
                << c.weighted_variance[k] << ',' << c.weighted_mse[k] << ',' << c.km_mean[k] << ','
                << c.km_variance[k] << ',' << c.km_mse[k] << '\n';
        }
    }
}

int cmd_simulate(SimulateArgs a, json invocation) {
    if (a.format != "json" && a.format != "csv") throw UsageError("simulate: format must be json or csv");
    if (a.format == "csv" && (a.output.empty() || a.output == "-")) {
        throw UsageError("simulate: csv output needs --output");
    }
    if (a.population != 1 && a.population != 2) throw UsageError("simulate: population must be 1 or 2");
    if (a.membership != "binomial" && a.membership != "fixed") {
        throw UsageError("simulate: membership must be binomial or fixed");
    }

    SimulationSpec spec;
    spec.replicates = a.replicates;
    spec.alpha = a.alpha;
    spec.seed = a.seed;
    spec.threads = a.threads;
    spec.tau_rule = parse_tau_rule(a.tau_rule);

    json j = envelope(invocation);
    invocation["seed"] = a.seed;
    invocation["rng"] = kRngIdentity;
    j["invocation"] = invocation;

    try {
        a.mixture.validate();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }

    if (a.experiment == "power") {
        spec.sizes = a.sizes.empty() ? std::vector<std::size_t>{100} : a.sizes;
        PowerOptions opt;
        opt.reference_rate = a.reference_rate;
        opt.membership = a.membership == "fixed" ? Membership::fixed : Membership::binomial;
        j["result"] = run_power_experiment(spec, a.mixture, opt);
    } else if (a.experiment == "type1") {
        spec.sizes = a.sizes.empty() ? std::vector<std::size_t>{40, 80, 136} : a.sizes;
        const Dataset ds = load(resolve_input(a.input));
        const auto r = run_type1_resample(ds, static_cast<Population>(a.population), spec);
        if (a.format == "csv") write_pvalue_csv(a.output, r);
        j["result"] = r;
    } else if (a.experiment == "sampling") {
        const std::size_t size = a.sizes.empty() ? 60 : a.sizes.front();
        const Dataset ds = load(resolve_input(a.input));
        j["result"] = run_sampling_distribution(ds, static_cast<Population>(a.population), size, spec.replicates,
                                                spec.seed, spec.threads, spec.tau_rule);
    } else if (a.experiment == "mse") {
        spec.sizes = a.sizes.empty() ? std::vector<std::size_t>{50, 200} : a.sizes;
        const auto r = run_estimator_mse(a.mixture, spec, linear_grid(a.grid_upper, a.grid_points));
        if (a.format == "csv") write_mse_csv(a.output, r);
        j["result"] = r;
    } else {
        throw UsageError("unknown experiment '" + a.experiment + "'");
    }
    if (a.format == "json") emit(j, a.output);
    return 0;
}

int cmd_fixtures() {
    const fs::path lung = lung_fixture();
    json j{{"schema_version", kSchemaVersion},
           {"fixtures",
            {{{"name", "lung"},
              {"path", lung.string()},
              {"exists", fs::exists(lung)},
              {"description", "NCCTG advanced lung cancer trial, ECOG 0-2; population 1 = male, 2 = female; "
                              "cohort = ECOG score; censor = 1 for censored rows"}}}}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Kaplan-Meier survival curves and the area-between-curves test"};
    app.require_subcommand(1);

    json invocation{{"argv", std::vector<std::string>(argv, argv + argc)}};

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Write weighted and per-cohort survival curves as plot data");
    estimate->add_option("input", est.input, "CSV input or 'lung'")->required();
    estimate->add_option("-o,--output", est.output, "Output directory");
    estimate->add_option("--format", est.format, "plotdata | json | csv");

    TestArgs tst;
    auto* test = app.add_subcommand("test", "Area-between-curves test; prints a JSON report");
    test->add_option("input", tst.input, "CSV input or 'lung'")->required();
    test->add_option("--alpha", tst.alpha, "Significance level for the interval")->check(CLI::Range(0.0, 1.0));
    test->add_option("--tau-rule", tst.tau_rule, "per_cohort | common");
    test->add_option("-o,--output", tst.output, "Output file (default stdout)");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Log-rank and Gehan-Wilcoxon tests ignoring cohorts");
    compare->add_option("input", cmp.input, "CSV input or 'lung'")->required();
    compare->add_option("-o,--output", cmp.output, "Output file (default stdout)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo experiments");
    simulate->add_option("experiment", sim.experiment, "power | type1 | sampling | mse")
        ->required()
        ->check(CLI::IsMember({"power", "type1", "sampling", "mse"}));
    simulate->add_option("--sizes,-n", sim.sizes, "Sample sizes");
    simulate->add_option("--replicates,-r", sim.replicates, "Replicates per size")->check(CLI::PositiveNumber);
    simulate->add_option("--alpha", sim.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--seed", sim.seed, "Master RNG seed");
    simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
    simulate->add_option("--tau-rule", sim.tau_rule, "per_cohort | common");
    simulate->add_option("--q2", sim.mixture.q2, "Weibull admixture weight");
    simulate->add_option("--exp-rate", sim.mixture.exp_rate, "Exponential component rate");
    simulate->add_option("--weibull-shape", sim.mixture.weibull_shape, "Weibull shape");
    simulate->add_option("--weibull-scale", sim.mixture.weibull_scale, "Weibull scale");
    simulate->add_option("--censor-time", sim.mixture.censor_time, "Administrative censoring horizon");
    simulate->add_option("--reference-rate", sim.reference_rate, "Population 1 exponential rate (power)");
    simulate->add_option("--membership", sim.membership, "binomial | fixed");
    simulate->add_option("--input", sim.input, "CSV input for type1/sampling (default: lung)");
    simulate->add_option("--population", sim.population, "Population to resample (type1/sampling)");
    simulate->add_option("--grid-upper", sim.grid_upper, "Upper end of the mse time grid");
    simulate->add_option("--grid-points", sim.grid_points, "Number of mse grid points");
    simulate->add_option("-o,--output", sim.output, "Output file (default stdout)");
    simulate->add_option("--format", sim.format, "json | csv");

    auto* fixtures = app.add_subcommand("fixtures", "Print bundled dataset paths");

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
        if (*estimate) {
            invocation["subcommand"] = "estimate";
            invocation["input"] = resolve_input(est.input).string();
            invocation["format"] = est.format;
            return cmd_estimate(est, invocation);
        }
        if (*test) {
            invocation["subcommand"] = "test";
            invocation["input"] = resolve_input(tst.input).string();
            invocation["alpha"] = tst.alpha;
            invocation["tau_rule"] = tst.tau_rule;
            return cmd_test(tst, invocation);
        }
        if (*compare) {
            invocation["subcommand"] = "compare";
            invocation["input"] = resolve_input(cmp.input).string();
            return cmd_compare(cmp, invocation);
        }
        if (*simulate) {
            invocation["subcommand"] = "simulate";
            invocation["experiment"] = sim.experiment;
            invocation["sizes"] = sim.sizes;
            invocation["replicates"] = sim.replicates;
            invocation["alpha"] = sim.alpha;
            invocation["tau_rule"] = sim.tau_rule;
            invocation["mixture"] = sim.mixture;
            invocation["membership"] = sim.membership;
            if (sim.experiment == "type1" || sim.experiment == "sampling") {
                invocation["input"] = resolve_input(sim.input).string();
                invocation["population"] = sim.population;
            }
            return cmd_simulate(sim, invocation);
        }
        if (*fixtures) return cmd_fixtures();
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
