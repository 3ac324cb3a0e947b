// Batch front end: configure an experiment, run the numeric-vs-asymptotic
// comparison, emit plot-ready tables.
//
//   landau eigs --gamma 1 --K 200 --out results/
//   landau thm2 --beta 0.5 --gamma 1 --b 1 --K 400
//   landau thm3 --rho 2 --lambda-min 1e-4 --lambda-max 1e-3
//   landau lemma-disk --radius 2 --q 1 --k-min 80 --k-max 150
//   landau sandwich --q 0 --amp 0.02 --K 40
//
// Outputs are deterministic: same config, same bytes, any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "landau/asymptotics.hpp"
#include "landau/counting.hpp"
#include "landau/galerkin.hpp"
#include "landau/quadrature.hpp"
#include "landau/special_functions.hpp"
#include "landau/toeplitz.hpp"
#include "landau/version.hpp"

using namespace landau;
using nlohmann::json;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitTruncation = 4;

struct Config {
    std::string mode;    // eigs | asymp | compare | counting | galerkin
    std::string flavor;  // subcommand that selected the mode
    double b = 1.0;
    int q = 0;
    double beta = 1.0;
    double gamma = 1.0;
    double rho = 1.0;
    double tau = 1.0;
    double radius = 1.0;
    double amp = 0.02;
    int K = 100;
    long long k_min = 0;
    long long k_max = -1;  // -1: derive from K
    double lambda_min = 1e-4;
    double lambda_max = 1e-3;
    int lambda_steps = 7;
    std::string out = ".";
    int threads = 1;
    unsigned long long seed = 0;
    json symbol;  // optional explicit symbol, in the symbol-algebra schema

    // computational parameters only: excludes out/threads so the same
    // experiment hashes (and prints) identically wherever and however it runs
    json to_json() const {
        json j{{"mode", mode},
               {"flavor", flavor},
               {"b", b},
               {"q", q},
               {"beta", beta},
               {"gamma", gamma},
               {"rho", rho},
               {"tau", tau},
               {"radius", radius},
               {"amp", amp},
               {"K", K},
               {"k_min", k_min},
               {"k_max", k_max},
               {"lambda_min", lambda_min},
               {"lambda_max", lambda_max},
               {"lambda_steps", lambda_steps},
               {"seed", seed}};
        if (!symbol.is_null()) j["symbol"] = symbol;
        return j;
    }
};

unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void load_config_file(Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("config is not valid json: ") + e.what());
    }
    static const std::vector<std::string> known{
        "mode",       "flavor",     "b",      "q",        "beta",         "gamma", "rho",
        "tau",        "radius",     "amp",    "K",        "k_min",        "k_max",
        "lambda_min", "lambda_max", "lambda_steps", "out", "threads",     "seed",  "symbol"};
    for (const auto& [key, val] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw SchemaError("unknown config key: " + key);
    }
    try {
        if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
        if (j.contains("flavor")) cfg.flavor = j["flavor"].get<std::string>();
        if (j.contains("b")) cfg.b = j["b"].get<double>();
        if (j.contains("q")) cfg.q = j["q"].get<int>();
        if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
        if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
        if (j.contains("rho")) cfg.rho = j["rho"].get<double>();
        if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
        if (j.contains("radius")) cfg.radius = j["radius"].get<double>();
        if (j.contains("amp")) cfg.amp = j["amp"].get<double>();
        if (j.contains("K")) cfg.K = j["K"].get<int>();
        if (j.contains("k_min")) cfg.k_min = j["k_min"].get<long long>();
        if (j.contains("k_max")) cfg.k_max = j["k_max"].get<long long>();
        if (j.contains("lambda_min")) cfg.lambda_min = j["lambda_min"].get<double>();
        if (j.contains("lambda_max")) cfg.lambda_max = j["lambda_max"].get<double>();
        if (j.contains("lambda_steps")) cfg.lambda_steps = j["lambda_steps"].get<int>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
        if (j.contains("symbol")) cfg.symbol = j["symbol"];
    } catch (const json::exception& e) {
        throw SchemaError(std::string("config field has the wrong type: ") + e.what());
    }
}

void validate(const Config& cfg) {
    if (cfg.mode.empty()) throw SchemaError("mode is required (subcommand or --mode)");
    static const std::vector<std::string> modes{"eigs", "asymp", "compare", "counting",
                                                "galerkin"};
    if (std::find(modes.begin(), modes.end(), cfg.mode) == modes.end())
        throw SchemaError("unknown mode: " + cfg.mode);
    if (!(cfg.b > 0.0)) throw SchemaError("b must be > 0");
    if (cfg.q < 0) throw SchemaError("q must be >= 0");
    if (!(cfg.beta > 0.0)) throw SchemaError("beta must be > 0");
    if (!(cfg.gamma > 0.0)) throw SchemaError("gamma must be > 0");
    if (!(cfg.rho > 0.0)) throw SchemaError("rho must be > 0");
    if (!(cfg.tau > 0.0)) throw SchemaError("tau must be > 0");
    if (!(cfg.radius > 0.0)) throw SchemaError("radius must be > 0");
    if (cfg.K < 1) throw SchemaError("K must be >= 1");
    if (cfg.lambda_steps < 1) throw SchemaError("lambda_steps must be >= 1");
    if (!(cfg.lambda_min > 0.0) || !(cfg.lambda_max >= cfg.lambda_min))
        throw SchemaError("need 0 < lambda_min <= lambda_max");
    if (cfg.threads < 1) throw SchemaError("threads must be >= 1");
}

// chunked parallel map over [0, n); results land by index, so output bytes
// do not depend on the schedule
void parallel_for(int threads, long long n, const std::function<void(long long)>& body) {
    if (threads <= 1 || n < 4) {
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    for (auto& th : pool) th.join();
}

std::string header_comment(const Config& cfg) {
    std::string canonical = cfg.to_json().dump();
    char buf[256];
    std::snprintf(buf, sizeof(buf), "# landau-toolkit v%s config_hash=%016llx\n", kVersion,
                  fnv1a(canonical));
    return std::string(buf) + "# config=" + canonical + "\n";
}

json meta_block(const Config& cfg) {
    return {{"version", kVersion},
            {"config_hash", fnv1a(cfg.to_json().dump())},
            {"config", cfg.to_json()}};
}

std::ofstream open_out(const Config& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out);
    std::filesystem::path p = std::filesystem::path(cfg.out) / name;
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open output file: " + p.string());
    return f;
}

RadialSymbol config_symbol(const Config& cfg) {
    if (!cfg.symbol.is_null()) return RadialSymbol::from_json(cfg.symbol);
    return RadialSymbol::gaussian(1.0, cfg.gamma, cfg.beta);
}

// capped power-law tail tau r^{-rho}, continuous at the cap radius
RadialSymbol power_tail_symbol(const Config& cfg) {
    RadialSymbol tail = RadialSymbol({{cfg.tau, -cfg.rho / 2.0, 0.0, 1.0}},
                                     {Cutoff::Kind::Outside, cfg.radius});
    RadialSymbol cap = RadialSymbol({{cfg.tau / std::pow(cfg.radius, cfg.rho), 0.0, 0.0, 1.0}},
                                    {Cutoff::Kind::Inside, cfg.radius});
    return tail + cap;
}

int run_eigs(const Config& cfg) {
    MagneticContext ctx{cfg.b};
    EigenvalueSequence seq = toeplitz_eigs_radial(ctx, config_symbol(cfg), cfg.q, cfg.K);
    auto f = open_out(cfg, "eigs.csv");
    f << header_comment(cfg);
    seq.write_csv(f);
    if (seq.truncation_warning) {
        std::fprintf(stderr, "warning: truncation floor reached inside the requested range\n");
        return kExitTruncation;
    }
    return 0;
}

int run_asymp(const Config& cfg) {
    double mu = mu_from_decay(cfg.gamma, cfg.beta, cfg.b);
    AsymptoticExpansion e = theorem2_expansion(cfg.beta, mu);
    auto f = open_out(cfg, "expansion.json");
    json out{{"meta", meta_block(cfg)}, {"mu", mu}, {"expansion", e.to_json()}};
    f << out.dump(2) << "\n";
    return 0;
}

// shared writer for the numeric-vs-predicted comparisons
int write_compare(const Config& cfg, const std::vector<long long>& ks,
                  const std::vector<double>& ln_numeric,
                  const std::function<double(double)>& prediction) {
    auto f = open_out(cfg, "compare.csv");
    f << header_comment(cfg);
    f << "k,ln_nu_numeric,ln_nu_predicted,residual,residual_over_log_k\n";
    char buf[256];
    for (std::size_t i = 0; i < ks.size(); ++i) {
        double k = static_cast<double>(ks[i]);
        double pred = prediction(k);
        double res = ln_numeric[i] - pred;
        double norm = k > 1.0 ? res / std::log(k) : 0.0;
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%.17g\n", ks[i], ln_numeric[i],
                      pred, res, norm);
        f << buf;
    }
    return 0;
}

std::vector<long long> k_grid(const Config& cfg) {
    long long lo = cfg.k_min;
    long long hi = cfg.k_max >= 0 ? cfg.k_max : cfg.K - 1;
    if (hi < lo) throw SchemaError("empty k range");
    std::vector<long long> ks;
    for (long long k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
}

int run_compare(const Config& cfg) {
    MagneticContext ctx{cfg.b};
    std::vector<long long> ks = k_grid(cfg);
    std::vector<double> ln_nu(ks.size());

    if (cfg.flavor == "thm1" || cfg.flavor == "lemma-disk") {
        double rho = cfg.b * cfg.radius * cfg.radius / 2.0;
        RadialSymbol disk =
            RadialSymbol::constant(1.0).restricted({Cutoff::Kind::Inside, cfg.radius});
        parallel_for(cfg.threads, static_cast<long long>(ks.size()), [&](long long i) {
            ln_nu[i] = matrix_element(ctx, disk, cfg.q, cfg.q, ks[i], ks[i]).log_abs();
        });
        if (cfg.flavor == "lemma-disk") {
            return write_compare(cfg, ks, ln_nu, [&](double k) {
                return disk_prediction(cfg.q, rho, k).log_abs();
            });
        }
        AsymptoticExpansion e = theorem1_disk_prediction(rho);
        return write_compare(cfg, ks, ln_nu, [&](double k) { return e.evaluate(k); });
    }

    // exponential-decay family at the target level
    RadialSymbol v = config_symbol(cfg);
    parallel_for(cfg.threads, static_cast<long long>(ks.size()), [&](long long i) {
        ln_nu[i] = matrix_element(ctx, v, cfg.q, cfg.q, ks[i], ks[i]).log_abs();
    });
    double mu = mu_from_decay(cfg.gamma, cfg.beta, cfg.b);
    AsymptoticExpansion e = theorem2_expansion(cfg.beta, mu);
    return write_compare(cfg, ks, ln_nu, [&](double k) { return e.evaluate(k); });
}

int run_counting(const Config& cfg) {
    MagneticContext ctx{cfg.b};
    RadialSymbol tq =
        cfg.symbol.is_null() ? power_tail_symbol(cfg) : RadialSymbol::from_json(cfg.symbol);
    auto nu = [&](long long k) { return matrix_element(ctx, tq, cfg.q, cfg.q, k, k); };

    CountingCurve curve;
    curve.source = "toeplitz_diagonal_lazy";
    std::vector<CountingCurve::Sample> samples(cfg.lambda_steps);
    parallel_for(cfg.threads, cfg.lambda_steps, [&](long long i) {
        double frac =
            cfg.lambda_steps == 1 ? 0.0 : static_cast<double>(i) / (cfg.lambda_steps - 1.0);
        double lambda = cfg.lambda_min * std::pow(cfg.lambda_max / cfg.lambda_min, frac);
        long long count = count_above_monotone(nu, LogScalar::from_value(lambda));
        samples[i] = {lambda, count, predicted_counts_power(tq, ctx, lambda)};
    });
    curve.samples = samples;

    auto f = open_out(cfg, "counts.csv");
    f << header_comment(cfg);
    curve.write_csv(f);

    json summary{{"meta", meta_block(cfg)},
                 {"cq_constant", cq_constant(cfg.tau, cfg.rho, ctx)},
                 {"scaled_counts", json::array()}};
    for (const auto& s : curve.samples)
        summary["scaled_counts"].push_back(std::pow(s.lambda, 2.0 / cfg.rho) *
                                           static_cast<double>(s.count));
    auto g = open_out(cfg, "counts_summary.json");
    g << summary.dump(2) << "\n";
    return 0;
}

int run_galerkin(const Config& cfg) {
    MagneticContext ctx{cfg.b};
    HermitianSymbolMatrix m =
        HermitianSymbolMatrix::scalar(RadialSymbol::gaussian(cfg.amp, cfg.gamma));
    TruncationSpec spec{cfg.q, cfg.q + 3, cfg.K};
    json reports = json::array();
    bool all_pass = true;
    for (int sign : {+1, -1}) {
        SandwichReport rep = sandwich_check(ctx, m, cfg.q, spec, sign);
        all_pass = all_pass && rep.pass;
        reports.push_back(rep.to_json());
    }
    auto f = open_out(cfg, "report.json");
    json out{{"meta", meta_block(cfg)}, {"reports", reports}, {"pass", all_pass}};
    f << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berezin-Toeplitz spectra of metrically perturbed Landau operators"};
    app.fallthrough();

    Config flags;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    app.add_option("--mode", flags.mode, "eigs | asymp | compare | counting | galerkin");
    auto* o_b = app.add_option("--b", flags.b, "magnetic field strength");
    auto* o_q = app.add_option("--q", flags.q, "Landau level index");
    auto* o_beta = app.add_option("--beta", flags.beta, "decay exponent of the profile");
    auto* o_gamma = app.add_option("--gamma", flags.gamma, "decay rate of the profile");
    auto* o_rho = app.add_option("--rho", flags.rho, "power-law tail exponent");
    auto* o_tau = app.add_option("--tau", flags.tau, "power-law tail amplitude");
    auto* o_radius = app.add_option("--radius", flags.radius, "disk or cap radius");
    auto* o_amp = app.add_option("--amp", flags.amp, "metric amplitude for galerkin runs");
    auto* o_K = app.add_option("--K", flags.K, "truncation size");
    auto* o_kmin = app.add_option("--k-min", flags.k_min, "first index of the comparison grid");
    auto* o_kmax = app.add_option("--k-max", flags.k_max, "last index of the comparison grid");
    auto* o_lmin = app.add_option("--lambda-min", flags.lambda_min, "smallest threshold");
    auto* o_lmax = app.add_option("--lambda-max", flags.lambda_max, "largest threshold");
    auto* o_lsteps =
        app.add_option("--lambda-steps", flags.lambda_steps, "number of thresholds");
    auto* o_out = app.add_option("--out", flags.out, "output directory");
    auto* o_threads =
        app.add_option("--threads", flags.threads, "worker threads (schedule-independent)");
    auto* o_seed = app.add_option("--seed", flags.seed, "seed recorded for randomized suites");

    std::string sub_mode, sub_flavor;
    auto add_sub = [&](const char* name, const char* desc, const char* mode) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->callback([&sub_mode, &sub_flavor, name, mode] {
            sub_mode = mode;
            sub_flavor = name;
        });
        return s;
    };
    add_sub("eigs", "eigenvalue sequence of a radial symbol", "eigs");
    add_sub("thm1", "compact-support decay law on the disk family", "compare");
    add_sub("thm2", "exponential-decay expansion comparison", "compare");
    add_sub("thm3", "power-law counting function", "counting");
    add_sub("lemma-disk", "disk eigenvalues against the factorial-geometric law", "compare");
    add_sub("sandwich", "full-operator cluster shifts against the Toeplitz bounds", "galerkin");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = flags;
        if (!config_path.empty()) {
            Config merged;
            load_config_file(merged, config_path);
            // flags the user actually passed override the file
            if (!flags.mode.empty()) merged.mode = flags.mode;
            if (o_b->count()) merged.b = flags.b;
            if (o_q->count()) merged.q = flags.q;
            if (o_beta->count()) merged.beta = flags.beta;
            if (o_gamma->count()) merged.gamma = flags.gamma;
            if (o_rho->count()) merged.rho = flags.rho;
            if (o_tau->count()) merged.tau = flags.tau;
            if (o_radius->count()) merged.radius = flags.radius;
            if (o_amp->count()) merged.amp = flags.amp;
            if (o_K->count()) merged.K = flags.K;
            if (o_kmin->count()) merged.k_min = flags.k_min;
            if (o_kmax->count()) merged.k_max = flags.k_max;
            if (o_lmin->count()) merged.lambda_min = flags.lambda_min;
            if (o_lmax->count()) merged.lambda_max = flags.lambda_max;
            if (o_lsteps->count()) merged.lambda_steps = flags.lambda_steps;
            if (o_out->count()) merged.out = flags.out;
            if (o_threads->count()) merged.threads = flags.threads;
            if (o_seed->count()) merged.seed = flags.seed;
            cfg = merged;
        }
        if (!sub_mode.empty()) {
            cfg.mode = sub_mode;
            cfg.flavor = sub_flavor;
        }
        if (cfg.flavor.empty()) cfg.flavor = cfg.mode;
        validate(cfg);

        if (cfg.mode == "eigs") return run_eigs(cfg);
        if (cfg.mode == "asymp") return run_asymp(cfg);
        if (cfg.mode == "compare") return run_compare(cfg);
        if (cfg.mode == "counting") return run_counting(cfg);
        return run_galerkin(cfg);
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitSchema;
    } catch (const QuadratureError& e) {
        std::fprintf(stderr, "quadrature error: %s\n", e.what());
        return kExitQuadrature;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitSchema;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
