// Experiment runner for the set-valued Brownian motion library.
//
// Subcommands: simulate, verify, distfn, ghdiff. Every command is seeded and
// writes byte-identical output for identical configuration. SETBM_THREADS
// caps the OpenMP worker count.
//
// Exit codes: 0 pass, 1 statistical failure, 2 usage/config error, 3 I/O.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "setbm/brownian.hpp"
#include "setbm/distribution.hpp"
#include "setbm/gh_difference.hpp"
#include "setbm/json_out.hpp"
#include "setbm/set_text.hpp"

using namespace setbm;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitStatFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct OutputTarget {
    std::string path = "-";
};

// Writes the fully rendered document in one shot; partial files would break
// the byte-identical rerun contract.
int write_output(const OutputTarget& out, const std::string& body) {
    if (out.path == "-" || out.path.empty()) {
        std::cout << body;
        return kExitPass;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << out.path << "'\n";
        return kExitIo;
    }
    f << body;
    f.flush();
    if (!f) {
        std::cerr << "error: write failed for '" << out.path << "'\n";
        return kExitIo;
    }
    return kExitPass;
}

// Flat key=value config support ('#' comments). The file's pairs are spliced
// into argv right after the subcommand, so explicitly passed flags override
// file values under the take-last policy.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string cfg_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            cfg_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            cfg_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (cfg_path.empty()) return rest;
    std::ifstream f(cfg_path);
    if (!f) throw InvalidRange("config: cannot open '" + cfg_path + "'");
    std::vector<std::string> cfg_tokens;
    std::string line;
    while (std::getline(f, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (value.find(' ') != std::string::npos) {
            // multi-value options (e.g. uniform=100 1.0)
            cfg_tokens.push_back("--" + key);
            std::stringstream ss(value);
            std::string piece;
            while (ss >> piece) cfg_tokens.push_back(piece);
        } else {
            cfg_tokens.push_back("--" + key + "=" + value);
        }
    }
    // splice after program name and subcommand token
    std::vector<std::string> out;
    std::size_t head = std::min<std::size_t>(2, rest.size());
    out.insert(out.end(), rest.begin(), rest.begin() + head);
    out.insert(out.end(), cfg_tokens.begin(), cfg_tokens.end());
    out.insert(out.end(), rest.begin() + head, rest.end());
    return out;
}

std::vector<double> parse_times_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw InvalidRange("times list is empty");
    return out;
}

struct SimulateConfig {
    std::uint64_t seed = 0;
    int n_paths = 10;
    int uniform_steps = 0;
    double uniform_t = 0.0;
    std::string times_csv;
    int dim = 1;
    int m = 0;  // 0 -> default for the dimension
    std::string format = "csv";
    bool full_vectors = false;
    OutputTarget out;
};

GridPtr make_grid(int dim, int m) {
    if (m == 0) m = (dim == 3) ? 512 : 256;
    return DirectionGrid::make(dim, m);
}

TimeGridPtr make_timegrid(const SimulateConfig& cfg) {
    if (cfg.uniform_steps > 0) return TimeGrid::uniform(cfg.uniform_steps, cfg.uniform_t);
    if (!cfg.times_csv.empty()) return TimeGrid::with_origin(parse_times_list(cfg.times_csv));
    return TimeGrid::with_origin({1.0, 2.0, 3.0});
}

int run_simulate(const SimulateConfig& cfg) {
    GridPtr grid = make_grid(cfg.dim, cfg.m);
    TimeGridPtr tg = make_timegrid(cfg);
    PathEnsemble ens = simulate_bm(tg, grid, cfg.n_paths, cfg.seed);

    if (cfg.format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = "simulate";
        doc["params"] = {{"seed", cfg.seed},
                         {"n_paths", cfg.n_paths},
                         {"dim", grid->dim()},
                         {"m", grid->size()}};
        doc["times"] = tg->times();
        if (cfg.full_vectors) {
            ordered_json gj;
            gj["dimension"] = grid->dim();
            gj["m"] = grid->size();
            ordered_json dirs = ordered_json::array();
            for (int k = 0; k < grid->size(); ++k) {
                ordered_json row = ordered_json::array();
                for (int i = 0; i < grid->dim(); ++i) row.push_back(grid->direction(k)[i]);
                dirs.push_back(std::move(row));
            }
            gj["directions"] = std::move(dirs);
            doc["grid"] = std::move(gj);
        }
        ordered_json paths = ordered_json::array();
        for (int p = 0; p < ens.n_paths(); ++p) {
            ordered_json jp;
            jp["path"] = p;
            ordered_json w = ordered_json::array();
            for (int i = 0; i < ens.n_times(); ++i) w.push_back(ens.wiener(p, i));
            jp["w"] = std::move(w);
            if (cfg.full_vectors) {
                ProcessPath path = ens.path(p);
                ordered_json values = ordered_json::array();
                for (int i = 0; i < ens.n_times(); ++i) {
                    EmbeddedElement el = path.element(i);
                    ordered_json row = ordered_json::array();
                    for (int k = 0; k < el.size(); ++k) row.push_back(el[k]);
                    values.push_back(std::move(row));
                }
                jp["values"] = std::move(values);
            }
            paths.push_back(std::move(jp));
        }
        doc["paths"] = std::move(paths);
        return write_output(cfg.out, doc.dump(2) + "\n");
    }

    std::string body;
    body.reserve(static_cast<std::size_t>(ens.n_paths()) * ens.n_times() * 32);
    body += "path,time,w";
    if (cfg.full_vectors)
        for (int k = 0; k < grid->size(); ++k) body += ",v" + std::to_string(k);
    body += "\n";
    for (int p = 0; p < ens.n_paths(); ++p) {
        for (int i = 0; i < ens.n_times(); ++i) {
            body += std::to_string(p);
            body += ',';
            body += format_double(tg->time(i));
            body += ',';
            body += format_double(ens.wiener(p, i));
            if (cfg.full_vectors) {
                EmbeddedElement el = ens.path(p).element(i);
                for (int k = 0; k < el.size(); ++k) {
                    body += ',';
                    body += format_double(el[k]);
                }
            }
            body += '\n';
        }
    }
    return write_output(cfg.out, body);
}

struct VerifyConfig {
    std::uint64_t seed = 0;
    int n_paths = 100000;
    std::string tests = "all";
    std::string times_csv = "1,2,3";
    int dim = 1;
    int m = 0;
    double sigma = 4.0;
    OutputTarget out;
};

bool wants(const std::string& tests, const std::string& name) {
    if (tests == "all") return true;
    std::stringstream ss(tests);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item == name) return true;
    return false;
}

int run_verify(const VerifyConfig& cfg) {
    GridPtr grid = make_grid(cfg.dim, cfg.m);
    TimeGridPtr tg = TimeGrid::with_origin(parse_times_list(cfg.times_csv));
    Evaluation f{0};

    ordered_json results = ordered_json::array();
    ordered_json skipped = ordered_json::array();
    bool all_pass = true;
    auto add_reports = [&](const std::string& test, const std::vector<MomentReport>& rs) {
        for (const MomentReport& r : rs) {
            results.push_back(report_to_json(test, r, cfg.sigma));
            all_pass = all_pass && r.pass(cfg.sigma);
        }
    };
    auto skip = [&](const std::string& test, const std::exception& e) {
        skipped.push_back({{"test", test}, {"reason", e.what()}});
    };

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["params"] = {{"seed", cfg.seed},     {"n_paths", cfg.n_paths},
                     {"times", tg->times()}, {"dim", grid->dim()},
                     {"m", grid->size()},    {"sigma_gate", cfg.sigma},
                     {"tests", cfg.tests}};

    PathEnsemble ens = simulate_bm(tg, grid, cfg.n_paths, cfg.seed);
    const int nt = ens.n_times();
    const int s_idx = nt >= 3 ? 1 : 0;
    const int t_idx = s_idx + 1;

    if (wants(cfg.tests, "increments")) {
        try {
            add_reports("increments", increments_test(ens, f));
        } catch (const TooFewPaths& e) {
            skip("increments", e);
        }
    }
    if (wants(cfg.tests, "covariance")) {
        try {
            CovarianceReport rep = covariance_test(ens, f);
            add_reports("covariance", rep.entries);
            ordered_json matrix = ordered_json::array();
            const int m_obs = static_cast<int>(rep.obs_times.size());
            for (int i = 0; i < m_obs; ++i) {
                ordered_json row = ordered_json::array();
                for (int j = 0; j < m_obs; ++j)
                    row.push_back(std::fmin(rep.obs_times[i], rep.obs_times[j]));
                matrix.push_back(std::move(row));
            }
            doc["covariance_theoretical_matrix"] = std::move(matrix);
        } catch (const TooFewPaths& e) {
            skip("covariance", e);
        }
    }
    if (wants(cfg.tests, "mgf")) {
        try {
            std::vector<double> u(nt - 1, 0.0);
            if (u.size() >= 1) u[0] = 0.5;
            if (u.size() >= 2) u[1] = 0.5;
            add_reports("mgf", {mgf_test(ens, f, u)});
        } catch (const TooFewPaths& e) {
            skip("mgf", e);
        } catch (const UnstableMoment& e) {
            skip("mgf", e);
        } catch (const InvalidRange& e) {
            skip("mgf", e);
        }
    }
    if (wants(cfg.tests, "martingale") && nt >= 3) {
        try {
            add_reports("martingale", martingale_sq_test(ens, f, s_idx, t_idx));
        } catch (const TooFewPaths& e) {
            skip("martingale", e);
        }
    }
    if (wants(cfg.tests, "wiener") && nt >= 3) {
        try {
            add_reports("wiener", {wiener_covariance_test(ens, f, s_idx, t_idx)});
        } catch (const TooFewPaths& e) {
            skip("wiener", e);
        }
    }
    if (wants(cfg.tests, "qv")) {
        try {
            std::vector<TimeGridPtr> parts{TimeGrid::uniform(10, 1.0),
                                           TimeGrid::uniform(100, 1.0),
                                           TimeGrid::uniform(1000, 1.0)};
            auto reports = qv_convergence_test(parts, grid, cfg.n_paths, f,
                                               derive_seed(cfg.seed, 1));
            // gate: |empirical - theoretical| within 10% relative
            for (MomentReport& r : reports) {
                bool ok = std::fabs(r.empirical - r.theoretical) <= 0.1 * r.theoretical;
                results.push_back(report_to_json("qv", r, cfg.sigma));
                results.back()["pass"] = ok;
                all_pass = all_pass && ok;
            }
        } catch (const TooFewPaths& e) {
            skip("qv", e);
        }
    }
    if (wants(cfg.tests, "ito")) {
        try {
            std::vector<int> meshes{10, 100, 1000};
            auto reports =
                ito_consistency_test(meshes, 1.0, grid, cfg.n_paths, f, derive_seed(cfg.seed, 2));
            for (MomentReport& r : reports) {
                bool ok = r.empirical <= 1.25 * r.theoretical;
                results.push_back(report_to_json("ito", r, cfg.sigma));
                results.back()["pass"] = ok;
                all_pass = all_pass && ok;
            }
            add_reports("ito", ito_martingale_test(grid, 200, 1.0, 2.0, cfg.n_paths, f,
                                                   derive_seed(cfg.seed, 3)));
        } catch (const TooFewPaths& e) {
            skip("ito", e);
        }
    }
    if (wants(cfg.tests, "riesz")) {
        try {
            add_reports("riesz", riesz_moment_test(ens, f, 0, 1));
            if (nt >= 4) add_reports("riesz", riesz_moment_test(ens, f, 1, 3));
        } catch (const TooFewPaths& e) {
            skip("riesz", e);
        }
    }

    doc["results"] = std::move(results);
    doc["skipped"] = std::move(skipped);
    doc["all_pass"] = all_pass;
    int io = write_output(cfg.out, doc.dump(2) + "\n");
    if (io != kExitPass) return io;
    return all_pass ? kExitPass : kExitStatFailure;
}

struct DistfnConfig {
    std::uint64_t seed = 0;
    double lambda = 1.0;
    double ymax = 0.0;  // 0 -> 3/lambda
    int steps = 10;
    std::uint64_t n_samples = 100000;
    OutputTarget out;
};

int run_distfn(const DistfnConfig& cfg) {
    if (!(cfg.lambda > 0.0)) throw NonPositiveLambda("distfn: lambda must be > 0");
    if (cfg.steps < 2) throw InvalidRange("distfn: steps must be >= 2");
    const double ymax = cfg.ymax > 0.0 ? cfg.ymax : 3.0 / cfg.lambda;
    SetRandomVariable g = exponential_pair_variable(cfg.lambda, cfg.seed);

    std::string body = "y1,y2,mc_estimate,half_width,analytic,abs_err\n";
    std::uint64_t cell = 0;
    for (int i = 0; i < cfg.steps; ++i) {
        for (int j = i; j < cfg.steps; ++j) {
            double y1 = ymax * i / (cfg.steps - 1);
            double y2 = ymax * j / (cfg.steps - 1);
            DistributionEstimate est = distribution_function(
                g, ConvexSet::interval(y1, y2), cfg.n_samples, derive_seed(cfg.seed, cell));
            double analytic = exponential_pair_analytic_F(cfg.lambda, y1, y2);
            body += format_double(y1);
            body += ',';
            body += format_double(y2);
            body += ',';
            body += format_double(est.value);
            body += ',';
            body += format_double(est.half_width);
            body += ',';
            body += format_double(analytic);
            body += ',';
            body += format_double(std::fabs(est.value - analytic));
            body += '\n';
            ++cell;
        }
    }
    return write_output(cfg.out, body);
}

struct GhdiffConfig {
    std::string a_spec;
    std::string b_spec;
    int m = 0;
    OutputTarget out;
};

int run_ghdiff(const GhdiffConfig& cfg) {
    ConvexSet a = parse_set(cfg.a_spec);
    ConvexSet b = parse_set(cfg.b_spec);
    if (a.dim() != b.dim()) throw DimensionMismatch("ghdiff: sets have different dimensions");
    GridPtr grid = make_grid(a.dim(), cfg.m);
    GhResult r = gh_diff(a, b, grid);

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "ghdiff";
    doc["params"] = {{"a", cfg.a_spec}, {"b", cfg.b_spec}, {"dim", a.dim()}, {"m", grid->size()}};
    ordered_json body = gh_result_to_json(r, false);
    for (auto& [key, value] : body.items()) doc[key] = value;

    ordered_json ids = ordered_json::array();
    try {
        for (const GhIdentityCheck& c : check_gh_identities(a, b, grid))
            ids.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
    } catch (const Error& e) {
        ids.push_back({{"name", "identities"}, {"pass", false}, {"reason", e.what()}});
    }
    doc["identities_report"] = std::move(ids);
    return write_output(cfg.out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"set-valued Brownian motion experiments"};
    app.require_subcommand(1);

    std::string config_path_help;
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SimulateConfig sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "sample set-valued Brownian paths");
    c_sim->add_option("--config", config_path_help, "flat key=value config file (flags override)");
    c_sim->add_option("--seed", sim.seed, "RNG seed")->required();
    c_sim->add_option("--n-paths", sim.n_paths, "number of paths");
    c_sim->add_option("--uniform", [&sim](const std::vector<std::string>& vals) {
               sim.uniform_steps = std::stoi(vals.at(0));
               sim.uniform_t = std::stod(vals.at(1));
               return true;
           },
           "uniform time grid: STEPS T_END")
        ->expected(2);
    c_sim->add_option("--times", sim.times_csv, "comma list of positive times (0 prepended)");
    c_sim->add_option("--dim", sim.dim, "ambient dimension (1..3)");
    c_sim->add_option("--m", sim.m, "direction grid size");
    c_sim->add_option("--format", sim.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c_sim->add_flag("--full-vectors", sim.full_vectors, "emit embedded vectors per time point");
    c_sim->add_option("--output", sim.out.path, "output path ('-' for stdout)");

    VerifyConfig ver;
    CLI::App* c_ver = app.add_subcommand("verify", "run the characterization test batteries");
    c_ver->add_option("--config", config_path_help, "flat key=value config file (flags override)");
    c_ver->add_option("--seed", ver.seed, "RNG seed")->required();
    c_ver->add_option("--n-paths", ver.n_paths, "number of paths");
    c_ver->add_option("--tests", ver.tests,
                      "all or a comma list of "
                      "increments,covariance,mgf,martingale,wiener,qv,ito,riesz");
    c_ver->add_option("--times", ver.times_csv, "observation times");
    c_ver->add_option("--dim", ver.dim, "ambient dimension");
    c_ver->add_option("--m", ver.m, "direction grid size");
    c_ver->add_option("--sigma", ver.sigma, "pass gate in standard errors");
    c_ver->add_option("--output", ver.out.path, "output path ('-' for stdout)");

    DistfnConfig dist;
    CLI::App* c_dist = app.add_subcommand(
        "distfn", "distribution-function surface for the exponential pair example");
    c_dist->add_option("--config", config_path_help, "flat key=value config file (flags override)");
    c_dist->add_option("--seed", dist.seed, "RNG seed")->required();
    c_dist->add_option("--lambda", dist.lambda, "exponential rate")->required();
    c_dist->add_option("--ymax", dist.ymax, "grid upper bound (default 3/lambda)");
    c_dist->add_option("--steps", dist.steps, "grid points per axis");
    c_dist->add_option("--n-samples", dist.n_samples, "Monte Carlo samples per cell");
    c_dist->add_option("--output", dist.out.path, "output path ('-' for stdout)");

    GhdiffConfig gh;
    CLI::App* c_gh = app.add_subcommand("ghdiff", "generalized Hukuhara difference of two sets");
    c_gh->add_option("--config", config_path_help, "flat key=value config file (flags override)");
    c_gh->add_option("--a", gh.a_spec, "first set, e.g. \"[1,5]\" or \"poly:0,0;1,0\"")
        ->required();
    c_gh->add_option("--b", gh.b_spec, "second set")->required();
    c_gh->add_option("--m", gh.m, "direction grid size");
    c_gh->add_option("--output", gh.out.path, "output path ('-' for stdout)");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const std::string& a : args) argv2.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_ver->parsed()) return run_verify(ver);
        if (c_dist->parsed()) return run_distfn(dist);
        if (c_gh->parsed()) return run_ghdiff(gh);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
