// Command-line front end for the truncated ideal-observer library.
// Computation goes exclusively through the C API in truncobs.h.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "truncobs.h"

namespace {

using nlohmann::json;

// exit 2
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exit 3
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MethodSpec {
    bool quadrature = false;
    long long n = 1'000'000;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

struct GridSpec {
    bool present = false;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<int> steps;
    bool shared_threshold = false;
    bool include_untruncated = true;
};

struct AppConfig {
    std::vector<double> mu0, sd0, mu1, sd1;
    double sigma = 0.0;
    std::vector<double> taus;
    bool taus_present = false;
    GridSpec grid;
    MethodSpec method;
    long long n_pairs = 1'000'000;
    bool literal_guessing = false;
    int n_thresholds = 201;
    bool incomplete = false;
    std::string out_path;
    int threads = 0;

    int dim() const { return static_cast<int>(mu0.size()); }
};

double parse_threshold(const json& v, const std::string& where) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string() && v.get<std::string>() == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError("field '" + where + "': expected a number or \"-inf\"");
}

std::vector<double> require_number_array(const json& obj, const std::string& key,
                                         const std::string& section) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].empty()) {
        throw ConfigError("field '" + section + "." + key +
                          "': required nonempty array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number()) {
            throw ConfigError("field '" + section + "." + key + "': non-numeric entry");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

AppConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    AppConfig cfg;
    if (!root.contains("model") || !root["model"].is_object()) {
        throw ConfigError("field 'model': required object");
    }
    const json& model = root["model"];
    cfg.mu0 = require_number_array(model, "mu0", "model");
    cfg.sd0 = require_number_array(model, "sd0", "model");
    cfg.mu1 = require_number_array(model, "mu1", "model");
    cfg.sd1 = require_number_array(model, "sd1", "model");
    cfg.sigma = model.value("sigma", 0.0);
    const std::size_t m = cfg.mu0.size();
    if (cfg.sd0.size() != m || cfg.mu1.size() != m || cfg.sd1.size() != m) {
        throw ConfigError("field 'model': mu0/sd0/mu1/sd1 lengths must match");
    }

    if (root.contains("taus")) {
        if (!root["taus"].is_array() || root["taus"].empty()) {
            throw ConfigError("field 'taus': expected nonempty array");
        }
        for (const auto& v : root["taus"]) {
            cfg.taus.push_back(parse_threshold(v, "taus"));
        }
        cfg.taus_present = true;
    }

    if (root.contains("grid")) {
        const json& grid = root["grid"];
        if (!grid.is_object()) {
            throw ConfigError("field 'grid': expected object");
        }
        cfg.grid.present = true;
        cfg.grid.shared_threshold = grid.value("shared_threshold", false);
        cfg.grid.include_untruncated = grid.value("include_untruncated", true);
        const auto axis_values = [&](const char* key, auto fallback) {
            std::vector<decltype(fallback)> out;
            if (!grid.contains(key)) {
                throw ConfigError(std::string("field 'grid.") + key + "': required");
            }
            const json& v = grid[key];
            if (v.is_array()) {
                for (const auto& e : v) {
                    out.push_back(e.get<decltype(fallback)>());
                }
            } else {
                out.push_back(v.get<decltype(fallback)>());
            }
            return out;
        };
        cfg.grid.lo = axis_values("lo", double{});
        cfg.grid.hi = axis_values("hi", double{});
        cfg.grid.steps = axis_values("steps", int{});
        if (cfg.grid.lo.size() != cfg.grid.hi.size() ||
            cfg.grid.lo.size() != cfg.grid.steps.size()) {
            throw ConfigError("field 'grid': lo/hi/steps lengths must match");
        }
    }

    if (root.contains("method")) {
        const json& method = root["method"];
        const std::string type = method.value("type", "monte_carlo");
        if (type == "quadrature") {
            cfg.method.quadrature = true;
        } else if (type == "monte_carlo") {
            cfg.method.quadrature = false;
        } else {
            throw ConfigError("field 'method.type': must be quadrature or monte_carlo");
        }
        cfg.method.n = method.value("n", cfg.method.n);
        if (method.contains("seed")) {
            cfg.method.seed = method["seed"].get<std::uint64_t>();
            cfg.method.seed_set = true;
        }
    }

    if (root.contains("oracle")) {
        const json& oracle = root["oracle"];
        cfg.n_pairs = oracle.value("n_pairs", cfg.n_pairs);
        cfg.literal_guessing = oracle.value("literal_guessing", false);
    }
    if (root.contains("roc")) {
        cfg.n_thresholds = root["roc"].value("n_thresholds", cfg.n_thresholds);
        cfg.incomplete = root["roc"].value("incomplete", false);
    }
    if (root.contains("output")) {
        cfg.out_path = root["output"].value("path", std::string{});
    }
    cfg.threads = root.value("threads", 0);
    return cfg;
}

std::string format9(double v) {
    if (std::isinf(v)) {
        return v < 0 ? "-inf" : "inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

json threshold_json(double tau) {
    if (std::isinf(tau) && tau < 0) {
        return json("-inf");
    }
    return json(tau);
}

// Effective-configuration digest for the reproducibility header.
std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const AppConfig& cfg) {
    json j;
    j["mu0"] = cfg.mu0;
    j["sd0"] = cfg.sd0;
    j["mu1"] = cfg.mu1;
    j["sd1"] = cfg.sd1;
    j["sigma"] = cfg.sigma;
    if (cfg.taus_present) {
        json taus = json::array();
        for (double t : cfg.taus) {
            taus.push_back(threshold_json(t));
        }
        j["taus"] = taus;
    }
    if (cfg.grid.present) {
        j["grid"] = {{"lo", cfg.grid.lo},
                     {"hi", cfg.grid.hi},
                     {"steps", cfg.grid.steps},
                     {"shared_threshold", cfg.grid.shared_threshold},
                     {"include_untruncated", cfg.grid.include_untruncated}};
    }
    j["method"] = cfg.method.quadrature ? "quadrature" : "monte_carlo";
    j["n"] = cfg.method.n;
    j["n_pairs"] = cfg.n_pairs;
    j["n_thresholds"] = cfg.n_thresholds;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a64(j.dump()));
    return buf;
}

void check(truncobs_status status) {
    if (status == TRUNCOBS_OK) {
        return;
    }
    const std::string msg = std::string(truncobs_status_name(status)) + ": " +
                            truncobs_last_error();
    if (status == TRUNCOBS_ERR_INVALID_ARGUMENT) {
        throw ConfigError(msg);
    }
    throw NumericError(msg);
}

struct ModelHandle {
    truncobs_model* ptr = nullptr;

    explicit ModelHandle(const AppConfig& cfg) {
        check(truncobs_model_create(cfg.dim(), cfg.mu0.data(), cfg.sd0.data(),
                                    cfg.mu1.data(), cfg.sd1.data(), cfg.sigma, &ptr));
    }
    ~ModelHandle() { truncobs_model_free(ptr); }
    ModelHandle(const ModelHandle&) = delete;
    ModelHandle& operator=(const ModelHandle&) = delete;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw ConfigError("cannot open output file: " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_header(std::ostream& os, const AppConfig& cfg) {
    os << "# " << truncobs_version() << "\n";
    os << "# config_hash=" << config_hash(cfg) << "\n";
    os << "# seed=" << cfg.method.seed << "\n";
}

void require_taus(const AppConfig& cfg) {
    if (!cfg.taus_present) {
        throw ConfigError("field 'taus': required for this command");
    }
    if (static_cast<int>(cfg.taus.size()) != cfg.dim()) {
        throw ConfigError("field 'taus': length must match the model dimension");
    }
}

void require_seed(const AppConfig& cfg) {
    if (!cfg.method.seed_set) {
        throw ConfigError("field 'method.seed': required for stochastic runs "
                          "(pass --seed or set it in the config)");
    }
}

truncobs_method method_kind(const AppConfig& cfg) {
    if (cfg.method.quadrature) {
        return TRUNCOBS_METHOD_QUADRATURE;
    }
    require_seed(cfg);
    return TRUNCOBS_METHOD_MONTE_CARLO;
}

int cmd_auc(const AppConfig& cfg) {
    require_taus(cfg);
    ModelHandle model(cfg);
    truncobs_auc dec{};
    check(truncobs_total_auc(model.ptr, cfg.taus.data(), method_kind(cfg),
                             cfg.method.n, cfg.method.seed, cfg.threads, &dec));
    double asym = 0.0;
    check(truncobs_asymptotic_auc(model.ptr, cfg.taus.data(), &asym));

    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    write_header(os, cfg);
    os << "az=" << format9(dec.az) << "\n";
    os << "az1=" << format9(dec.az1) << " se=" << format9(dec.az1_se) << "\n";
    os << "az2=" << format9(dec.az2) << "\n";
    os << "az3=" << format9(dec.az3) << "\n";
    os << "rej0=" << format9(dec.rej0) << " rej1=" << format9(dec.rej1) << "\n";
    os << "asymptote=" << format9(asym) << "\n";
    return 0;
}

int cmd_sweep(const AppConfig& cfg) {
    if (!cfg.grid.present) {
        throw ConfigError("field 'grid': required for the sweep command");
    }
    ModelHandle model(cfg);
    truncobs_sweep* sweep = nullptr;
    check(truncobs_sweep_run(model.ptr, cfg.grid.lo.data(), cfg.grid.hi.data(),
                             cfg.grid.steps.data(),
                             static_cast<int>(cfg.grid.lo.size()),
                             cfg.grid.shared_threshold ? 1 : 0,
                             cfg.grid.include_untruncated ? 1 : 0, method_kind(cfg),
                             cfg.method.n, cfg.method.seed, cfg.threads, &sweep));

    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    write_header(os, cfg);
    const int m = cfg.dim();
    for (int i = 0; i < m; ++i) {
        os << "tau_" << (i + 1) << ",";
    }
    os << "az,az1,az2,az3,asymptote,rej0,rej1,se\n";
    std::vector<double> taus(static_cast<std::size_t>(m));
    const long long size = truncobs_sweep_size(sweep);
    for (long long k = 0; k < size; ++k) {
        truncobs_auc dec{};
        double asym = 0.0;
        check(truncobs_sweep_record(sweep, k, taus.data(), &dec, &asym));
        for (int i = 0; i < m; ++i) {
            os << format9(taus[static_cast<std::size_t>(i)]) << ",";
        }
        os << format9(dec.az) << "," << format9(dec.az1) << "," << format9(dec.az2)
           << "," << format9(dec.az3) << "," << format9(asym) << ","
           << format9(dec.rej0) << "," << format9(dec.rej1) << ","
           << format9(dec.az1_se) << "\n";
    }
    truncobs_sweep_free(sweep);
    return 0;
}

int cmd_roc(const AppConfig& cfg) {
    require_taus(cfg);
    ModelHandle model(cfg);
    truncobs_roc* roc = nullptr;
    check(truncobs_roc_compute(model.ptr, cfg.taus.data(), method_kind(cfg),
                               cfg.method.n, cfg.method.seed, cfg.n_thresholds,
                               cfg.incomplete ? 0 : 1, &roc));

    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    write_header(os, cfg);
    os << "fpf,tpf,segment\n";
    static const char* kSegmentNames[] = {"rated", "endpoint", "gist_extension",
                                          "guess_segment"};
    const long long size = truncobs_roc_size(roc);
    for (long long k = 0; k < size; ++k) {
        double fpf = 0.0;
        double tpf = 0.0;
        int segment = 0;
        check(truncobs_roc_point(roc, k, &fpf, &tpf, &segment));
        os << format9(fpf) << "," << format9(tpf) << "," << kSegmentNames[segment]
           << "\n";
    }
    truncobs_roc_free(roc);
    return 0;
}

int cmd_oracle(const AppConfig& cfg) {
    require_taus(cfg);
    require_seed(cfg);
    ModelHandle model(cfg);
    double fc_auc = 0.0;
    double fc_se = 0.0;
    check(truncobs_forced_choice(model.ptr, cfg.taus.data(), cfg.n_pairs,
                                 cfg.method.seed, cfg.literal_guessing ? 1 : 0,
                                 cfg.threads, &fc_auc, &fc_se));
    truncobs_auc dec{};
    check(truncobs_total_auc(model.ptr, cfg.taus.data(), method_kind(cfg),
                             cfg.method.n, cfg.method.seed + 1, cfg.threads, &dec));

    const double combined_se = std::sqrt(fc_se * fc_se + dec.az1_se * dec.az1_se);
    const double z = combined_se > 0.0 ? (fc_auc - dec.az) / combined_se : 0.0;

    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    write_header(os, cfg);
    os << "forced_choice_auc=" << format9(fc_auc) << " se=" << format9(fc_se) << "\n";
    os << "total_auc=" << format9(dec.az) << " se=" << format9(dec.az1_se) << "\n";
    os << "z=" << format9(z) << "\n";
    os << "agreement=" << (std::fabs(z) <= 3.0 ? "ok" : "DISCREPANT") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal-observer ROC analysis under feature truncation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string method_override;
    std::string tau_override;
    std::string out_override;
    long long n_override = -1;
    long long seed_override = -1;
    int threads_override = -1;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "JSON configuration file")
            ->required();
        cmd->add_option("--seed", seed_override, "Override the random seed");
        cmd->add_option("--n", n_override, "Override samples per class / pairs");
        cmd->add_option("--method", method_override,
                        "Override the method (quadrature|monte_carlo)");
        cmd->add_option("--tau", tau_override,
                        "Override thresholds (comma-separated, -inf allowed)");
        cmd->add_option("-o,--out", out_override, "Write output to this file");
        cmd->add_option("--threads", threads_override, "Worker thread count");
    };

    CLI::App* auc = app.add_subcommand("auc", "Total AUC decomposition");
    CLI::App* sweep = app.add_subcommand("sweep", "Threshold sweep CSV");
    CLI::App* roc = app.add_subcommand("roc", "ROC curve CSV");
    CLI::App* oracle =
        app.add_subcommand("oracle", "Forced-choice validation report");
    for (CLI::App* cmd : {auc, sweep, roc, oracle}) {
        add_common(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        AppConfig cfg = load_config(config_path);
        if (seed_override >= 0) {
            cfg.method.seed = static_cast<std::uint64_t>(seed_override);
            cfg.method.seed_set = true;
        }
        if (n_override > 0) {
            cfg.method.n = n_override;
            cfg.n_pairs = n_override;
        }
        if (!method_override.empty()) {
            if (method_override == "quadrature") {
                cfg.method.quadrature = true;
            } else if (method_override == "monte_carlo") {
                cfg.method.quadrature = false;
            } else {
                throw ConfigError("--method must be quadrature or monte_carlo");
            }
        }
        if (!tau_override.empty()) {
            cfg.taus.clear();
            std::stringstream ss(tau_override);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item == "-inf") {
                    cfg.taus.push_back(-std::numeric_limits<double>::infinity());
                } else {
                    try {
                        cfg.taus.push_back(std::stod(item));
                    } catch (const std::exception&) {
                        throw ConfigError("--tau: cannot parse '" + item + "'");
                    }
                }
            }
            cfg.taus_present = true;
        }
        if (!out_override.empty()) {
            cfg.out_path = out_override;
        }
        if (threads_override >= 0) {
            cfg.threads = threads_override;
        }

        if (app.got_subcommand(auc)) {
            return cmd_auc(cfg);
        }
        if (app.got_subcommand(sweep)) {
            return cmd_sweep(cfg);
        }
        if (app.got_subcommand(roc)) {
            return cmd_roc(cfg);
        }
        return cmd_oracle(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
