#pragma once
/**
 * @file sweep.hpp
 * @brief Seeded randomized sweeps over (k, D, angle) cells, emitting one CSV
 *        row per run. Distances are log-uniform, angles uniform over the
 *        full circle, and every draw comes from a per-cell substream of the
 *        master seed, so row values are independent of execution order.
 */

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "pebblehunt/cost_model.hpp"
#include "pebblehunt/placement.hpp"
#include "pebblehunt/serialize.hpp"
#include "pebblehunt/simulator.hpp"

namespace pebblehunt {

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64); identical streams on every platform.

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Substream seed for cell (k, i) of a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t k, std::uint64_t i) {
    SplitMix64 mix(master ^ (k * 0x9e3779b97f4a7c15ull) ^ (i * 0xc2b2ae3d27d4eb4full));
    return mix.next();
}

// ---------------------------------------------------------------------------

struct SweepConfig {
    std::uint64_t seed = 1;
    std::vector<int> k_set;
    double d_min = 20.0;
    double d_max = 1e5;
    int samples = 100;  ///< per k cell
    TolerancePolicy tol;

    void check() const {
        if (!(d_min >= 1.0)) throw std::invalid_argument("SweepConfig: d_min must be >= 1");
        if (!(d_max >= d_min)) throw std::invalid_argument("SweepConfig: d_max < d_min");
        if (samples < 1) throw std::invalid_argument("SweepConfig: samples must be >= 1");
        tol.check();
    }
};

struct SweepRow {
    std::uint64_t seed = 0;
    std::string case_tag;
    int k = 0;
    double d = 0.0;
    double theta = 0.0;
    RunStatus status = RunStatus::Diverged;
    double cost_total = 0.0;
    double cost_decode = 0.0;
    double cost_sector = 0.0;
    double bound = 0.0;
    double cost_over_bound = 0.0;
    bool decoded_ok = false;
};

/// Draw and run one instance for cell (k, i).
inline SweepRow sweep_one(const SweepConfig& cfg, int k, int i) {
    SplitMix64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(i)));
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double d = std::exp(rng.uniform(std::log(cfg.d_min), std::log(cfg.d_max)));
    const Point t{d * std::cos(theta), d * std::sin(theta)};

    const Instance inst(t, k);
    const Placement pl = place(inst);
    const RunResult run = execute(pl, strategy_for_budget(k), RunLimits{}, cfg.tol);

    SweepRow row;
    row.seed = cfg.seed;
    row.case_tag = case_name(pl.case_tag);
    row.k = k;
    row.d = t.norm();
    row.theta = theta;
    row.status = run.status;
    row.cost_total = run.total_cost;
    row.cost_decode = run.decode_cost;
    row.cost_sector = run.sector_cost;
    row.bound = cost_bound(row.d, k);
    row.cost_over_bound = run.total_cost / row.bound;
    if (k >= 9) {
        row.decoded_ok = run.status == RunStatus::Found && run.decoded &&
                         run.decoded->delta == sector_of(t, std::uint64_t{1} << (k - 8),
                                                         pl.sector_side());
    } else {
        row.decoded_ok = run.status == RunStatus::Found;
    }
    return row;
}

/// Run every cell; rows come out ordered by (position in k_set, sample index).
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.check();
    std::vector<SweepRow> rows;
    rows.reserve(cfg.k_set.size() * static_cast<std::size_t>(cfg.samples));
    for (int k : cfg.k_set)
        for (int i = 0; i < cfg.samples; ++i) rows.push_back(sweep_one(cfg, k, i));
    return rows;
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    using detail::num17;
    std::ostringstream os;
    os << "seed,case,k,D,theta,status,cost_total,cost_decode,cost_sector,bound,"
          "cost_over_bound,decoded_ok\n";
    for (const auto& r : rows) {
        os << r.seed << ',' << r.case_tag << ',' << r.k << ',' << num17(r.d) << ','
           << num17(r.theta) << ',' << status_name(r.status) << ',' << num17(r.cost_total) << ','
           << num17(r.cost_decode) << ',' << num17(r.cost_sector) << ',' << num17(r.bound) << ','
           << num17(r.cost_over_bound) << ',' << (r.decoded_ok ? 1 : 0) << '\n';
    }
    return os.str();
}

inline std::string ratio_to_csv(const std::vector<RatioRow>& rows) {
    using detail::num17;
    std::ostringstream os;
    os << "D,k,theta_prime,decode,sector,total,ratio\n";
    for (const auto& r : rows) {
        os << num17(r.d) << ',' << r.k << ',' << num17(r.theta_prime) << ',' << num17(r.decode)
           << ',' << num17(r.sector) << ',' << num17(r.total) << ',' << num17(r.ratio) << '\n';
    }
    return os.str();
}

}  // namespace pebblehunt
