// Command-line runner for the polymer registries: pointwise identities,
// limit probes, detailed balance, stationarity, lattice simulation, Burke
// checks, the beta-RWRE correspondence and partition-function limits.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polymer/lattice.hpp"
#include "polymer/maps.hpp"
#include "polymer/stattest.hpp"

namespace {

using nlohmann::json;
using polymer::TestReport;

constexpr const char* kOutDirEnv = "POLYMER_OUT_DIR";

std::string default_out_dir() {
    const char* env = std::getenv(kOutDirEnv);
    return env && *env ? env : ".";
}

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t prev = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t cur = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
            prev = cur;
        }
    }
    return row[b.size()];
}

[[noreturn]] void unknown_key(const std::string& key,
                              const std::vector<std::string>& keys) {
    std::vector<std::pair<std::size_t, std::string>> ranked;
    for (const auto& k : keys) ranked.emplace_back(edit_distance(key, k), k);
    std::sort(ranked.begin(), ranked.end());
    std::cerr << "unknown key '" << key << "'";
    if (!ranked.empty()) {
        std::cerr << "; did you mean:";
        for (std::size_t i = 0; i < std::min<std::size_t>(3, ranked.size());
             ++i)
            std::cerr << " " << ranked[i].second;
    }
    std::cerr << "\n";
    std::exit(2);
}

std::string reports_csv(const std::vector<TestReport>& reps) {
    std::string out = "kind,key,component,statistic,threshold,pass\n";
    char buf[256];
    for (const auto& r : reps) {
        for (const auto& c : r.components) {
            std::snprintf(buf, sizeof buf, "%s,%s,%s,%.17g,%.17g,%d\n",
                          r.kind.c_str(), r.key.c_str(), c.name.c_str(),
                          c.statistic, c.threshold, c.pass ? 1 : 0);
            out += buf;
        }
    }
    return out;
}

struct OutputOpts {
    std::string out;
    std::string format = "json";
};

void add_output_opts(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("--out", o.out,
                    "output file (default: <kind>-<case>.<format> under $" +
                        std::string(kOutDirEnv) + " or .)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int emit_reports(const std::string& kind, const std::string& label,
                 const std::vector<TestReport>& reps, const OutputOpts& o) {
    std::filesystem::path path = o.out;
    if (path.empty())
        path = std::filesystem::path(default_out_dir()) /
               (kind + "-" + label + "." + o.format);
    std::string content;
    if (o.format == "csv") {
        content = reports_csv(reps);
    } else if (reps.size() == 1) {
        content = reps.front().to_json().dump(2) + "\n";
    } else {
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(r.to_json());
        content = arr.dump(2) + "\n";
    }
    atomic_write(path, content);
    bool all_pass = true;
    for (const auto& r : reps) {
        std::cout << (r.pass() ? "PASS " : "FAIL ") << r.kind << "/" << r.key
                  << "\n";
        all_pass = all_pass && r.pass();
    }
    if (!all_pass) std::cerr << "report: " << path.string() << "\n";
    return all_pass ? 0 : 1;
}

// Runs one key or, with an empty key, the whole registry.
template <typename Keys, typename RunOne>
int run_registry(const std::string& kind, std::string key, const Keys& keys,
                 const OutputOpts& o, const RunOne& run_one) {
    std::vector<TestReport> reps;
    try {
        if (key.empty()) {
            for (const auto& k : keys) reps.push_back(run_one(k));
        } else {
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                unknown_key(key, keys);
            reps.push_back(run_one(key));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return emit_reports(kind, key.empty() ? "all" : key, reps, o);
}

polymer::lattice::Order parse_order(const std::string& s) {
    using polymer::lattice::Order;
    if (s == "rows") return Order::rows;
    if (s == "columns") return Order::columns;
    return Order::antidiagonals;
}

// Zero-temperature recursion picked by model name for degenerate runs.
polymer::lattice::LatticeModel zero_model_by_name(const std::string& name) {
    namespace maps = polymer::maps;
    polymer::lattice::LatticeModel m;
    m.key = name;
    m.zero = true;
    if (name == "r01") {
        m.R = maps::rzero_01;
        m.u = [](double a) { return a; };
        m.v = [](double a) { return a; };
    } else if (name == "r10") {
        m.R = maps::rzero_10;
        m.u = [](double a) { return a; };
        m.v = [](double) { return 0.0; };
    } else if (name == "r11") {
        m.R = maps::rzero_11;
        m.u = [](double a) { return a; };
        m.v = [](double a) { return std::min(a, 0.0); };
    } else if (name == "rt1m1") {
        m.R = maps::rtzero_1m1;
        m.u = [](double a) { return -std::min(0.0, a); };
        m.v = [](double a) { return std::max(a, 0.0); };
    } else {
        unknown_key(name, {"r01", "r10", "r11", "rt1m1"});
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    namespace lattice = polymer::lattice;
    namespace maps = polymer::maps;
    namespace stat = polymer::stat;

    CLI::App app{"beta-gamma polymer model toolkit"};
    app.require_subcommand(1);

    std::string key, model_name, order_name = "rows", schedule_csv;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::size_t N = 200, M = 200;
    double degenerate_x = 0.0;
    bool have_degenerate = false;
    OutputOpts out;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--case", key, "registry key (default: all)");
        cmd->add_option("--n", n, "sample size / probe count");
        cmd->add_option("--seed", seed, "RNG seed");
        add_output_opts(cmd, out);
    };

    CLI::App* identity = app.add_subcommand("identity", "pointwise map identities");
    CLI::App* limit = app.add_subcommand("limit", "map limit probes");
    CLI::App* db = app.add_subcommand("db", "detailed-balance suite");
    CLI::App* stationary = app.add_subcommand("stationary", "stationarity suite");
    CLI::App* dist_limit = app.add_subcommand("dist-limit", "distributional limits");
    CLI::App* simulate = app.add_subcommand("simulate", "lattice simulation + dump");
    CLI::App* burke = app.add_subcommand("burke", "Burke property field checks");
    CLI::App* rwre = app.add_subcommand("rwre", "beta-RWRE correspondence");
    CLI::App* zlimit = app.add_subcommand("zlimit", "partition-function limits");
    CLI::App* list = app.add_subcommand("list", "enumerate registry keys");

    // per-subcommand options are bound lazily in the dispatch below
    for (CLI::App* cmd : {identity, limit, db, stationary, dist_limit, zlimit})
        (void)cmd;
    add_common(identity);
    add_common(limit);
    add_common(db);
    add_common(stationary);
    add_common(dist_limit);
    add_common(zlimit);
    zlimit->add_option("--schedule", schedule_csv,
                       "comma-separated delta/tau schedule override");

    simulate->add_option("--case", key, "stationary model key");
    simulate->add_option("--model", model_name,
                         "zero-temperature recursion (r01,r10,r11,rt1m1) for "
                         "degenerate runs");
    simulate->add_option("--N", N, "grid height");
    simulate->add_option("--M", M, "grid width");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--order", order_name, "fill order")
        ->check(CLI::IsMember({"rows", "columns", "antidiagonals"}));
    simulate
        ->add_option("--degenerate-x", degenerate_x,
                     "constant disorder value (no sampling)")
        ->each([&](const std::string&) { have_degenerate = true; });
    add_output_opts(simulate, out);

    burke->add_option("--case", key, "registry key (default: all)");
    burke->add_option("--N", N, "grid height");
    burke->add_option("--M", M, "grid width");
    burke->add_option("--seed", seed, "RNG seed");
    add_output_opts(burke, out);

    rwre->add_option("--n", n, "number of environments");
    rwre->add_option("--seed", seed, "RNG seed");
    add_output_opts(rwre, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // per-subcommand sample-size defaults (only applied when --n is absent)
    if (n == 0) {
        if (app.got_subcommand(identity)) n = 10000;
        else if (app.got_subcommand(limit)) n = 500;
        else if (app.got_subcommand(rwre)) n = 5;
        else if (app.got_subcommand(zlimit)) n = 10000;
        else n = 100000;
    }

    try {
        if (app.got_subcommand(identity))
            return run_registry("identity", key, maps::identity_keys(), out,
                                [&](const std::string& k) {
                                    return maps::run_identity(k, n, seed);
                                });
        if (app.got_subcommand(limit))
            return run_registry("limit", key, maps::limit_keys(), out,
                                [&](const std::string& k) {
                                    return maps::run_limit(k, n, seed);
                                });
        if (app.got_subcommand(db))
            return run_registry("db", key, stat::db_keys(), out,
                                [&](const std::string& k) {
                                    return stat::run_db(k, n, seed);
                                });
        if (app.got_subcommand(stationary))
            return run_registry("stationary", key, stat::stationary_keys(),
                                out, [&](const std::string& k) {
                                    return stat::run_stationary(k, n, seed);
                                });
        if (app.got_subcommand(dist_limit))
            return run_registry("dist-limit", key, stat::dist_limit_keys(),
                                out, [&](const std::string& k) {
                                    return stat::run_dist_limit(k, n, seed);
                                });
        if (app.got_subcommand(burke))
            return run_registry("burke", key, lattice::burke_keys(), out,
                                [&](const std::string& k) {
                                    return lattice::run_burke(k, N, M, seed);
                                });
        if (app.got_subcommand(zlimit)) {
            std::vector<double> sched;
            if (!schedule_csv.empty()) {
                std::size_t pos = 0;
                while (pos <= schedule_csv.size()) {
                    const std::size_t next = schedule_csv.find(',', pos);
                    sched.push_back(std::stod(schedule_csv.substr(
                        pos, next == std::string::npos ? next : next - pos)));
                    if (next == std::string::npos) break;
                    pos = next + 1;
                }
            }
            return run_registry("zlimit", key, lattice::zlimit_keys(), out,
                                [&](const std::string& k) {
                                    return lattice::run_zlimit(k, n, seed,
                                                               sched);
                                });
        }
        if (app.got_subcommand(rwre)) {
            const TestReport rep = lattice::run_rwre(n, seed);
            return emit_reports("rwre", "rwre", {rep}, out);
        }
        if (app.got_subcommand(simulate)) {
            lattice::LatticeModel model;
            lattice::Grid grid;
            if (!model_name.empty()) {
                if (!have_degenerate) {
                    std::cerr << "--model requires --degenerate-x (no "
                                 "sampling laws attached)\n";
                    return 2;
                }
                model = zero_model_by_name(model_name);
                grid = lattice::constant_grid(model, N, M, degenerate_x);
            } else if (!key.empty()) {
                const auto keys = lattice::lattice_keys();
                if (std::find(keys.begin(), keys.end(), key) == keys.end())
                    unknown_key(key, keys);
                model = lattice::lattice_model(key);
                grid = lattice::simulate(model, N, M, seed,
                                         parse_order(order_name));
            } else {
                std::cerr << "simulate needs --case or --model\n";
                return 2;
            }
            const lattice::GridResiduals res =
                lattice::residuals(grid, model);
            std::filesystem::path path = out.out;
            if (path.empty())
                path = std::filesystem::path(default_out_dir()) /
                       ("simulate-" + model.key + "." + out.format);
            if (out.format == "csv") {
                atomic_write(path, lattice::grid_csv(grid));
            } else {
                const json j = {{"schema_version", 1},
                                {"kind", "simulate"},
                                {"key", model.key},
                                {"seed", seed},
                                {"N", N},
                                {"M", M},
                                {"zero_temperature", grid.zero},
                                {"corner_Z", grid.z(N, M)},
                                {"recursion_residual", res.recursion},
                                {"z_consistency", res.z_consistency}};
                atomic_write(path, j.dump(2) + "\n");
            }
            std::printf("Z(%zu,%zu) = %.17g\n", N, M, grid.z(N, M));
            return 0;
        }
        if (app.got_subcommand(list)) {
            const auto print = [](const std::string& name,
                                  const std::vector<std::string>& keys) {
                std::cout << name << ":";
                for (const auto& k : keys) std::cout << " " << k;
                std::cout << "\n";
            };
            print("identity", maps::identity_keys());
            print("limit", maps::limit_keys());
            print("db", stat::db_keys());
            print("stationary", stat::stationary_keys());
            print("dist-limit", stat::dist_limit_keys());
            print("simulate", lattice::lattice_keys());
            print("burke", lattice::burke_keys());
            print("zlimit", lattice::zlimit_keys());
            return 0;
        }
    } catch (const std::out_of_range& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
