// Acceptance suite for the treasure-hunt engine. Each criterion prints one
// pass/fail line; the exit code is the number of failed criteria. The
// thresholds and tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pebblehunt/cost_model.hpp"
#include "pebblehunt/serialize.hpp"
#include "pebblehunt/simulator.hpp"
#include "pebblehunt/sweep.hpp"
#include "pebblehunt/validate.hpp"

using namespace pebblehunt;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Sample {
    Point treasure;
    int k = 9;
    Placement placement;
    RunResult run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// The fixed 1000-instance corpus shared by criteria 1, 3 and 7:
/// k uniform in 9..24, D log-uniform in [20, 1e5], angle uniform over the
/// full circle (so both half-planes appear).
std::vector<Sample> draw_corpus(std::uint64_t seed, int count, int k_lo, int k_hi, double d_lo,
                                double d_hi) {
    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        SplitMix64 rng(substream_seed(seed, 0, static_cast<std::uint64_t>(i)));
        Sample s;
        s.k = k_lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(k_hi - k_lo + 1));
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double d = std::exp(rng.uniform(std::log(d_lo), std::log(d_hi)));
        s.treasure = Point{d * std::cos(theta), d * std::sin(theta)};
        s.placement = place(Instance(s.treasure, s.k));
        s.run = execute(s.placement, strategy_for_budget(s.k));
        out.push_back(std::move(s));
    }
    return out;
}

bool decoded_matches(const Sample& s) {
    if (s.run.status != RunStatus::Found || !s.run.decoded) return false;
    const std::uint64_t n = std::uint64_t{1} << (s.k - 8);
    return s.run.decoded->delta == sector_of(s.treasure, n, s.placement.sector_side());
}

/// Decode legs grouped into excursions: each excursion ends at the origin.
std::vector<double> excursion_costs(const RunResult& run) {
    std::vector<double> out;
    double acc = 0.0;
    for (const auto& leg : run.legs) {
        if (leg.sector_phase) break;
        acc += leg.length;
        if (leg.event.kind == SiteLabel::OriginP) {
            out.push_back(acc);
            acc = 0.0;
        }
    }
    if (acc > 0.0) out.push_back(acc);
    return out;
}

void min_separations(const Placement& pl, double& plain, double& foot) {
    for (std::size_t i = 0; i < pl.pebbles.size(); ++i)
        for (std::size_t j = i + 1; j < pl.pebbles.size(); ++j) {
            const double d = dist(pl.pebbles[i].pos, pl.pebbles[j].pos);
            const bool is_foot = pl.pebbles[i].role == PebbleRole::FootPT ||
                                 pl.pebbles[j].role == PebbleRole::FootPT;
            (is_foot ? foot : plain) = std::min(is_foot ? foot : plain, d);
        }
}

// --- criteria -------------------------------------------------------------

Outcome criterion_decode_equivalence(const std::vector<Sample>& corpus, double elapsed) {
    int found = 0, decoded = 0;
    for (const auto& s : corpus) {
        if (s.run.status == RunStatus::Found) ++found;
        if (decoded_matches(s)) ++decoded;
    }
    std::ostringstream os;
    os << found << "/" << corpus.size() << " found, " << decoded << "/" << corpus.size()
       << " decoded correctly, " << elapsed << " s";
    const bool pass = found == static_cast<int>(corpus.size()) &&
                      decoded == static_cast<int>(corpus.size()) && elapsed < 10.0;
    return {pass, os.str()};
}

Outcome criterion_two_pebble_bound() {
    const double slack_bound = std::numbers::sqrt2 + 2.0;
    int runs = 0, failures = 0;
    double worst_margin = -1e300;
    for (double d : {1.0, 10.0, 1e3, 1e6}) {
        for (int i = 0;; ++i) {
            const double theta = 1e-3 * i;
            if (theta > 2.0 * std::numbers::pi) break;
            const Point t{d * std::cos(theta), d * std::sin(theta)};
            const RunResult run = execute(place_two(Instance(t, 2)), StrategyKind::TwoPebble);
            ++runs;
            const double bound = 4.5 * d + slack_bound + 1e-6 * d;
            worst_margin = std::max(worst_margin, run.total_cost - bound);
            if (run.status != RunStatus::Found || run.total_cost > bound) ++failures;
        }
    }
    std::ostringstream os;
    os << runs << " runs, " << failures << " over bound, worst margin " << worst_margin;
    return {failures == 0, os.str()};
}

Outcome criterion_main_bound(const std::vector<Sample>& corpus) {
    int bound_failures = 0, excursion_failures = 0;
    for (const auto& s : corpus) {
        if (s.run.status != RunStatus::Found) {
            ++bound_failures;
            continue;
        }
        const double d = s.treasure.norm();
        const double theta = std::numbers::pi * std::exp2(-(s.k - 8));
        const double bound = s.k == 9
                                 ? 2.0 * s.k * s.k + std::numbers::sqrt2 * d
                                 : 2.0 * s.k * s.k + d * (std::sin(theta) + std::cos(theta));
        if (s.run.total_cost > bound) ++bound_failures;
        const auto excursions = excursion_costs(s.run);
        for (std::size_t j = 1; j <= excursions.size(); ++j)
            if (excursions[j - 1] > 4.0 * static_cast<double>(j) + 11.0) ++excursion_failures;
    }
    std::ostringstream os;
    os << bound_failures << " bound violations, " << excursion_failures
       << " excursions above 4j+11";
    return {bound_failures == 0 && excursion_failures == 0, os.str()};
}

Outcome criterion_analytic_equivalence() {
    int mismatches = 0;
    for (int i = 0; i < 500; ++i) {
        SplitMix64 rng(substream_seed(0xAC5Eu, 4, static_cast<std::uint64_t>(i)));
        const int k = 9 + static_cast<int>(rng.next() % 22);  // 9..30
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double d = std::exp(rng.uniform(std::log(20.0), std::log(1e5)));
        const Point t{d * std::cos(theta), d * std::sin(theta)};
        const RunResult run = execute(place_main(Instance(t, k)), StrategyKind::Main);
        const CostBreakdown c = analytic_cost(t, k);
        const bool ok = run.status == RunStatus::Found &&
                        std::abs(c.decode - run.decode_cost) <= 1e-6 * run.decode_cost &&
                        std::abs(c.sector - run.sector_cost) <= 1e-6 * run.sector_cost;
        if (!ok) ++mismatches;
    }
    std::ostringstream os;
    os << "500 instances, " << mismatches << " beyond 1e-6 relative";
    return {mismatches == 0, os.str()};
}

Outcome criterion_ratio_curve() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = ratio_curve({1e3, 1e4, 1e5, 1e6, 1e7, 1e8});
    const double elapsed = seconds_since(t0);
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].ratio < rows[i - 1].ratio)) decreasing = false;
    const double last = rows.back().ratio;
    std::ostringstream os;
    os << "ratio " << rows.front().ratio << " -> " << last << ", "
       << (decreasing ? "strictly decreasing" : "NOT monotone") << ", " << elapsed << " s";
    return {decreasing && last < 1.05 && elapsed < 1.0, os.str()};
}

Outcome criterion_noconflict() {
    int violations = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        SplitMix64 rng(substream_seed(0xF007u, 6, static_cast<std::uint64_t>(i)));
        const int k = 9 + static_cast<int>(rng.next() % 16);
        const double x = rng.uniform(-1.0, 1.0);
        const double y = std::exp(rng.uniform(std::log(1.0000001), std::log(1e3)));
        if (y <= 1.0) continue;
        const Placement pl = place_main(Instance(Point{x, y}, k));
        for (const auto& p : pl.pebbles)
            if (p.role == PebbleRole::FootPT && inside_square_b(p.pos)) ++violations;
    }
    std::ostringstream os;
    os << trials << " strip treasures, " << violations << " feet inside the square";
    return {violations == 0, os.str()};
}

Outcome criterion_separation(const std::vector<Sample>& corpus) {
    int plain_violations = 0, foot_violations = 0;
    for (const auto& s : corpus) {
        double plain = 1e300, foot = 1e300;
        min_separations(s.placement, plain, foot);
        if (plain < 1.0) ++plain_violations;
        if (foot < 1.0) ++foot_violations;
    }
    std::ostringstream os;
    os << plain_violations << " construction pairs below 1, " << foot_violations
       << " foot pebbles below 1";
    return {plain_violations == 0 && foot_violations == 0, os.str()};
}

Outcome criterion_deletion_robustness() {
    // Deleting a pebble the intact run visits must surface as Diverged,
    // ProtocolViolation, or a Found whose decoded sector is flagged wrong.
    // Deleting a pebble the run never visits cannot change anything (removing
    // a site only removes events), so the run must stay identical; such a
    // deletion is not a detectable corruption.
    int bad = 0, leg_limit = 0, unvisited = 0;
    for (int i = 0; i < 100; ++i) {
        SplitMix64 rng(substream_seed(0xDE1Eu, 8, static_cast<std::uint64_t>(i)));
        const int k = 9 + static_cast<int>(rng.next() % 16);
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double d = std::exp(rng.uniform(std::log(20.0), std::log(1e5)));
        const Point t{d * std::cos(theta), d * std::sin(theta)};
        const Placement intact = place_main(Instance(t, k));
        const RunResult reference = execute(intact, StrategyKind::Main);

        Placement pl = intact;
        const std::size_t victim = rng.next() % pl.pebbles.size();
        const Point victim_pos = pl.pebbles[victim].pos;
        pl.pebbles.erase(pl.pebbles.begin() + static_cast<std::ptrdiff_t>(victim));
        const RunResult run = execute(pl, StrategyKind::Main);
        if (run.status == RunStatus::LegLimit) ++leg_limit;

        // The origin marker is sensed rather than hit, yet it steers the very
        // first command, so deleting it must also be detectable.
        bool visited = victim_pos.norm() == 0.0;
        for (const auto& leg : reference.legs)
            if (leg.event.kind == SiteLabel::Pebble && dist(leg.end, victim_pos) == 0.0)
                visited = true;

        if (visited) {
            const bool flagged_found =
                run.status == RunStatus::Found &&
                (!run.decoded ||
                 run.decoded->delta !=
                     sector_of(t, std::uint64_t{1} << (k - 8), pl.sector_side()));
            const bool acceptable = run.status == RunStatus::Diverged ||
                                    run.status == RunStatus::ProtocolViolation || flagged_found;
            if (!acceptable) ++bad;
        } else {
            ++unvisited;
            const bool identical = run.status == reference.status &&
                                   run.legs.size() == reference.legs.size() &&
                                   run.total_cost == reference.total_cost;
            if (!identical) ++bad;
        }
    }
    std::ostringstream os;
    os << "100 deletions (" << unvisited << " of unvisited pebbles), " << bad << " undetected, "
       << leg_limit << " hit the leg limit";
    return {bad == 0 && leg_limit == 0, os.str()};
}

Outcome criterion_worked_example() {
    // Eleven pebbles, treasure mid-sector 5 of 8 on the left half-plane, D=50.
    const double psi = (5.5 * std::numbers::pi) / 8.0;
    const Point t{-50.0 * std::sin(psi), 50.0 * std::cos(psi)};
    const Placement pl = place_main(Instance(t, 11));
    const RunResult run = execute(pl, StrategyKind::Main);
    const bool pass = run.status == RunStatus::Found && run.decoded &&
                      run.decoded->mu == "1101" && run.decoded->travel_line == 6;
    std::ostringstream os;
    os << "status " << status_name(run.status) << ", mu "
       << (run.decoded ? run.decoded->mu : "(none)") << ", travel line L_"
       << (run.decoded ? std::to_string(run.decoded->travel_line) : "?");
    return {pass, os.str()};
}

}  // namespace

int main() {
    const auto corpus_t0 = std::chrono::steady_clock::now();
    const std::vector<Sample> corpus = draw_corpus(0xC0FFEEu, 1000, 9, 24, 20.0, 1e5);
    const double corpus_elapsed = seconds_since(corpus_t0);

    struct Row {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Row> rows = {
        {"criterion 1: decode equivalence on 1000 seeded instances",
         [&] { return criterion_decode_equivalence(corpus, corpus_elapsed); }},
        {"criterion 2: two-pebble cost bound 4.5D + sqrt(2) + 2",
         [] { return criterion_two_pebble_bound(); }},
        {"criterion 3: main bound 2k^2 + D(sin+cos) and 4j+11 excursions",
         [&] { return criterion_main_bound(corpus); }},
        {"criterion 4: analytic cost equals simulated cost (1e-6 rel)",
         [] { return criterion_analytic_equivalence(); }},
        {"criterion 5: ratio curve decreasing, < 1.05 at D=1e8",
         [] { return criterion_ratio_curve(); }},
        {"criterion 6: strip feet land outside the unit square",
         [] { return criterion_noconflict(); }},
        {"criterion 7: pebble separation across the corpus",
         [&] { return criterion_separation(corpus); }},
        {"criterion 8: single-pebble deletions are always detected",
         [] { return criterion_deletion_robustness(); }},
        {"criterion 9: eleven-pebble worked example (mu=1101, L_6)",
         [] { return criterion_worked_example(); }},
    };

    int failures = 0;
    for (const auto& row : rows) {
        Outcome out;
        try {
            out = row.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s (%s)\n", out.pass ? "PASS" : "FAIL", row.name, out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures;
}
