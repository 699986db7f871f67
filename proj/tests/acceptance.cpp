// Acceptance gate: runs every primary criterion with its pinned tolerance
// and prints exactly one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "polymer/lattice.hpp"
#include "polymer/maps.hpp"
#include "polymer/rng.hpp"
#include "polymer/stattest.hpp"

using namespace polymer;

namespace {

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

struct Gate {
    int failures = 0;

    void report(int num, const std::string& name, bool pass,
                const std::string& detail) {
        std::printf("%s  %2d. %s: %s\n", pass ? "PASS" : "FAIL", num,
                    name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double rel(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

double rel2(const maps::P2& got, const maps::P2& want) {
    return std::max(rel(got.x, want.x), rel(got.y, want.y));
}

// Criterion 2 body: involutions, inverse pairs and fbar∘fbar = id.
double involution_sup(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    double sup = 0.0;
    const auto up = [&sup](double r) { sup = std::max(sup, r); };
    for (std::size_t i = 0; i < n; ++i) {
        for (const maps::Model m :
             {maps::Model::R01, maps::Model::R10, maps::Model::Rm11,
              maps::Model::R11, maps::Model::R1m1}) {
            const double a = maps::model_alpha(m), b = maps::model_beta(m);
            const maps::P2 p = maps::sample_f_domain(m, rng);
            up(rel2(maps::f_ab_inv(a, b, maps::f_ab(a, b, p)), p));
            const maps::Map2 f = [a, b](const maps::P2& q) {
                return maps::f_ab(a, b, q);
            };
            const maps::Map2 fi = [a, b](const maps::P2& q) {
                return maps::f_ab_inv(a, b, q);
            };
            const maps::T3 t = maps::sample_r_domain(m, rng);
            const maps::T3 tw = maps::fbar(f, fi, maps::fbar(f, fi, t));
            up(rel(tw.a, t.a));
            up(rel(tw.b, t.b));
            up(rel(tw.c, t.c));
        }
        const double x = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
        const double y = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
        up(rel2(maps::f_bep_bep(maps::f_bep_bep({x, y})), {x, y}));
        up(rel2(maps::f_gam_bep_inv(maps::f_gam_bep({x, y})), {x, y}));
        const double s = rng.uniform(-5.0, 5.0), t = rng.uniform(-5.0, 5.0);
        up(rel2(maps::f_al_al(maps::f_al_al({s, t})), {s, t}));
        up(rel2(maps::f_e_al_inv(maps::f_e_al({s, t})), {s, t}));
    }
    return sup;
}

} // namespace

int main() {
    Gate gate;

    { // 1: algebraic identity suite
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t cases = 0, failed = 0;
        for (const auto& key : maps::identity_keys()) {
            ++cases;
            if (!maps::run_identity(key, 10000, 1001, 1e-12).pass()) ++failed;
        }
        const double el = seconds_since(t0);
        gate.report(1, "algebraic identities",
                    failed == 0 && el < 10.0,
                    fmt("%zu cases, n=10^4 points, rel tol 1e-12, %zu failed, "
                        "%.1fs (budget 10s)",
                        cases, failed, el));
    }

    { // 2: involution / inverse suite
        const auto t0 = std::chrono::steady_clock::now();
        const double sup = involution_sup(10000, 1002);
        const double el = seconds_since(t0);
        gate.report(2, "involutions and inverse pairs",
                    sup <= 1e-12 && el < 10.0,
                    fmt("n=10^4 points, sup residual %.2e (tol 1e-12), %.1fs",
                        sup, el));
    }

    { // 3: detailed-balance suite
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<std::string> flagged;
        for (const auto& key : stat::db_keys()) {
            const auto res = stat::run_stability(
                key,
                [&key](std::uint64_t s) { return stat::run_db(key, 100000, s); },
                20, 2000);
            if (!res.pass) flagged.push_back(key);
        }
        const double el = seconds_since(t0);
        gate.report(3, "detailed balance",
                    flagged.empty() && el < 300.0,
                    fmt("%zu cases x 3 settings, n=10^5, 1%% level, 20-seed "
                        "stability, %zu flagged, %.0fs (budget 300s)",
                        stat::db_keys().size(), flagged.size(), el));
    }

    { // 4: stationarity suite
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<std::string> flagged;
        for (const auto& key : stat::stationary_keys()) {
            const auto res = stat::run_stability(
                key,
                [&key](std::uint64_t s) {
                    return stat::run_stationary(key, 100000, s);
                },
                20, 3000);
            if (!res.pass) flagged.push_back(key);
        }
        const double el = seconds_since(t0);
        gate.report(4, "stationarity (incl. t45-d-cont / t45-d-disc)",
                    flagged.empty() && el < 300.0,
                    fmt("%zu cases, n=10^5, 1%% level, 20-seed stability, %zu "
                        "flagged, %.0fs (budget 300s)",
                        stat::stationary_keys().size(), flagged.size(), el));
    }

    { // 5: zero-temperature map limits
        std::size_t failed = 0, cases = 0;
        for (const char* key :
             {"ztl-R01", "ztl-R10", "ztl-R11", "ztl-R1m1", "ztlmapmeas-a1",
              "ztlmapmeas-a2", "ztlmapmeas-a3"}) {
            ++cases;
            if (!maps::run_limit(key, 10000, 1005).pass()) ++failed;
        }
        gate.report(5, "zero-temperature map limits",
                    failed == 0,
                    fmt("%zu cases, eps {1e-1,1e-2,1e-3}, sup err <= 2*eps*"
                        "(min ops), monotone, %zu failed",
                        cases, failed));
    }

    { // 6: scaling limits (maps + distributions)
        std::size_t failed = 0, cases = 0;
        for (const char* key : {"p53a", "p53b", "p53c", "p53d", "c54a", "c54b",
                                "eqr", "ptmap1-lim", "ptmap2-lim"}) {
            ++cases;
            if (!maps::run_limit(key, 2000, 1006).pass()) ++failed;
        }
        for (const auto& key : stat::dist_limit_keys()) {
            ++cases;
            if (!stat::run_dist_limit(key, 100000, 1006).pass()) ++failed;
        }
        gate.report(6, "scaling limits",
                    failed == 0,
                    fmt("%zu cases: delta-halving on maps; KS monotone with "
                        "final <= 3x crit at n=10^5, %zu failed",
                        cases, failed));
    }

    { // 7: lattice oracles
        double zdiff = 0.0;
        for (const char* key : {"t45-a-cont", "t45-b-cont", "t45-c-disc",
                                "t45-d-cont", "t45-d-disc", "trem-a"}) {
            const lattice::LatticeModel model = lattice::lattice_model(key);
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const lattice::Grid g = lattice::simulate(model, 8, 8, seed);
                for (std::size_t n = 1; n <= 8; ++n)
                    for (std::size_t m = 1; m <= 8; ++m)
                        zdiff = std::max(
                            zdiff,
                            std::fabs(lattice::zero_path_oracle(g, model, n,
                                                                m) -
                                      g.z(n, m)));
            }
        }
        const bool rwre_ok = lattice::run_rwre(30, 1007).pass();
        double zcons = 0.0;
        for (const char* key :
             {"t42-a", "t42-b", "t42-ci", "t42-cii", "t42-d"}) {
            const lattice::LatticeModel model = lattice::lattice_model(key);
            const lattice::Grid g = lattice::simulate(model, 200, 200, 1007);
            zcons = std::max(zcons,
                             lattice::residuals(g, model).z_consistency);
        }
        gate.report(7, "lattice oracles",
                    zdiff <= 1e-12 && rwre_ok && zcons <= 1e-8,
                    fmt("min-plus 8x8 max dev %.2e (tol 1e-12); RWRE 2^m "
                        "oracle %s (tol 1e-12); logZ consistency %.2e "
                        "(tol 1e-8) at 200x200",
                        zdiff, rwre_ok ? "ok" : "FAILED", zcons));
    }

    { // 8: Burke / stationary-field checks
        std::vector<std::string> flagged;
        for (const char* key : {"t42-a", "t45-d-cont"}) {
            const std::string k = key;
            const auto res = stat::run_stability(
                k,
                [&k](std::uint64_t s) {
                    return lattice::run_burke(k, 200, 200, s);
                },
                20, 8000);
            if (!res.pass) flagged.push_back(k);
        }
        bool neg_ok = true;
        for (std::uint64_t s = 0; s < 5; ++s)
            neg_ok = neg_ok &&
                     lattice::run_burke("burke-neg", 200, 5, 8100 + s).pass();
        gate.report(8, "Burke property",
                    flagged.empty() && neg_ok,
                    fmt("t42-a and t45-d-cont at 200x200, rows/columns/"
                        "staircase at 1%%, 20-seed stability, %zu flagged; "
                        "negative control %s",
                        flagged.size(), neg_ok ? "fails as expected" : "NOT "
                                                                       "caught"));
    }

    { // 9: partition-function convergence
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t failed = 0;
        for (const auto& key : lattice::zlimit_keys())
            if (!lattice::run_zlimit(key, 10000, 1009).pass()) ++failed;
        const double el = seconds_since(t0);
        gate.report(9, "partition-function convergence",
                    failed == 0 && el < 1200.0,
                    fmt("4 experiments at (5,5), 10^4 seeds per step, KS "
                        "decreasing, %zu failed, %.0fs (budget 1200s)",
                        failed, el));
    }

    { // 10: determinism
        const auto twice_equal = [](const auto& run) {
            return run().to_json().dump() == run().to_json().dump();
        };
        std::size_t failed = 0;
        failed += !twice_equal(
            [] { return maps::run_identity("p31a", 1000, 7); });
        failed += !twice_equal([] { return maps::run_limit("p53a", 200, 7); });
        failed += !twice_equal([] { return stat::run_db("gb-a", 5000, 7); });
        failed += !twice_equal(
            [] { return stat::run_stationary("t45-d-cont", 5000, 7); });
        failed += !twice_equal(
            [] { return stat::run_dist_limit("ptmeas-1", 5000, 7); });
        failed += !twice_equal(
            [] { return lattice::run_burke("t42-a", 200, 200, 7); });
        failed += !twice_equal(
            [] { return lattice::run_zlimit("ptptrem-c", 2000, 7); });
        failed += !twice_equal([] { return lattice::run_rwre(3, 7); });
        gate.report(10, "determinism",
                    failed == 0,
                    fmt("8 representative reports rerun with fixed seeds, "
                        "byte-identical JSON, %zu mismatches",
                        failed));
    }

    if (gate.failures > 0) {
        std::printf("%d criterion(s) failed\n", gate.failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
