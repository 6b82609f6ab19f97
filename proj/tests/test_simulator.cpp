#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "pebblehunt/serialize.hpp"
#include "pebblehunt/simulator.hpp"
#include "pebblehunt/sweep.hpp"
#include "pebblehunt/validate.hpp"

using namespace pebblehunt;

namespace {

std::vector<std::string> event_names(const RunResult& r) {
    std::vector<std::string> out;
    out.reserve(r.legs.size());
    for (const auto& leg : r.legs) out.push_back(leg.event.name());
    return out;
}

}  // namespace

TEST_CASE("main run: T=(2,1), k=9, full decode and sector travel") {
    const Placement pl = place_main(Instance({2.0, 1.0}, 9));
    const RunResult run = execute(pl, StrategyKind::Main);

    REQUIRE(run.status == RunStatus::Found);
    REQUIRE(run.decoded);
    CHECK(run.decoded->mu == "10");
    CHECK(run.decoded->delta == 0);
    CHECK(run.decoded->travel_line == 1);

    const std::vector<std::string> expected = {
        // excursion 1, bit 1: P -> Bit1 -> p2 -> P
        "P1", "Bit1", "P2", "OriginP",
        // excursion 2, bit 0: P -> Bit2 -> p3 -> p1 -> P
        "P1", "Bit1", "Bit2", "P3", "P1", "OriginP",
        // termination: P -> Term2 -> Term1 -> Bit1 -> p1 -> P
        "P1", "Bit1", "Bit2", "Term2", "Term1", "Bit1", "P1", "OriginP",
        // sector travel: P -> foot -> T
        "FootPT", "Treasure"};
    CHECK(event_names(run) == expected);

    // Leg lengths are forced by the construction coordinates.
    const double decode = (3.0 + std::sqrt(5.0) + std::numbers::sqrt2) +
                          (6.0 + std::sqrt(17.0) + std::numbers::sqrt2 + 1.0) +
                          (10.0 + std::sqrt(37.0) + std::numbers::sqrt2 + 2.0 + 1.0);
    CHECK_THAT(run.decode_cost, Catch::Matchers::WithinRel(decode, 1e-9));
    CHECK_THAT(run.sector_cost, Catch::Matchers::WithinRel(3.0, 1e-9));
    CHECK_THAT(run.total_cost, Catch::Matchers::WithinRel(decode + 3.0, 1e-9));
}

TEST_CASE("two-pebble runs") {
    SECTION("first-quadrant treasure, hand-computed cost") {
        const RunResult run = execute(place_two(Instance({3.0, 1.0}, 2)), StrategyKind::TwoPebble);
        REQUIRE(run.status == RunStatus::Found);
        CHECK(event_names(run) == std::vector<std::string>{"TwoA", "TwoB", "Treasure"});
        CHECK_THAT(run.total_cost,
                   Catch::Matchers::WithinRel(4.0 * std::numbers::sqrt2 + 1.0 + 3.0, 1e-9));
    }
    SECTION("diagonal treasure found on the first leg") {
        const RunResult run = execute(place_two(Instance({1.0, 1.0}, 2)), StrategyKind::TwoPebble);
        REQUIRE(run.status == RunStatus::Found);
        CHECK(run.legs.size() == 1);
        CHECK_THAT(run.total_cost, Catch::Matchers::WithinRel(std::numbers::sqrt2, 1e-12));
    }
    SECTION("third-quadrant treasure") {
        const RunResult run =
            execute(place_two(Instance({-2.0, -3.0}, 2)), StrategyKind::TwoPebble);
        REQUIRE(run.status == RunStatus::Found);
        CHECK_THAT(run.total_cost,
                   Catch::Matchers::WithinRel(std::numbers::sqrt2 + 3.0 + 4.0, 1e-9));
    }
    SECTION("treasure below the origin passes through it") {
        const RunResult run = execute(place_two(Instance({0.0, -3.0}, 2)), StrategyKind::TwoPebble);
        REQUIRE(run.status == RunStatus::Found);
        CHECK(event_names(run) ==
              std::vector<std::string>{"TwoA", "TwoB", "OriginP", "Treasure"});
    }
    SECTION("closed form over random treasures") {
        SplitMix64 rng(41);
        for (int rep = 0; rep < 400; ++rep) {
            const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double d = std::exp(rng.uniform(std::log(0.5), std::log(1e5)));
            const Point t{d * std::cos(theta), d * std::sin(theta)};
            const RunResult run = execute(place_two(Instance(t, 2)), StrategyKind::TwoPebble);
            REQUIRE(run.status == RunStatus::Found);
            if (run.legs.size() < 3) continue;  // found early on the diagonal
            const double a = (t.x > 0.0 || t.y > 0.0)
                                 ? std::max(std::abs(t.x), std::abs(t.y)) + 1.0
                                 : 1.0;
            const double expected = a * std::numbers::sqrt2 + (a - t.x) + (a - t.y);
            CHECK_THAT(run.total_cost, Catch::Matchers::WithinRel(expected, 1e-9));
        }
    }
}

TEST_CASE("square runs") {
    SECTION("treasure found mid-diagonal, no bits completed") {
        const Placement pl = place_square({0.5, 0.5}, 9);
        const RunResult run = execute(pl, StrategyKind::Main);
        REQUIRE(run.status == RunStatus::Found);
        CHECK(event_names(run) == std::vector<std::string>{"P1", "P2", "P3", "Treasure"});
        REQUIRE_FALSE(run.decoded);
        const double expected = 5.0 + (5.0 / 3.0) * std::sqrt(5.0) +
                                (7.0 / 6.0) * std::numbers::sqrt2;
        CHECK_THAT(run.total_cost, Catch::Matchers::WithinRel(expected, 1e-9));
        CHECK(run.sector_cost == 0.0);
    }
    SECTION("treasure on the axis ends the first leg") {
        const RunResult run = execute(place_square({0.5, 0.0}, 9), StrategyKind::Main);
        REQUIRE(run.status == RunStatus::Found);
        CHECK(run.legs.size() == 1);
        CHECK_THAT(run.total_cost, Catch::Matchers::WithinAbs(0.5, 1e-12));
    }
    SECTION("left-side square run") {
        const RunResult run = execute(place_square({-0.5, 0.25}, 9), StrategyKind::Main);
        REQUIRE(run.status == RunStatus::Found);
    }
}

TEST_CASE("guards and failure statuses") {
    SECTION("deleting the far terminator diverges the termination walk") {
        Placement pl = place_main(Instance({2.0, 1.0}, 9));
        std::erase_if(pl.pebbles, [](const Pebble& p) { return p.role == PebbleRole::Term2; });
        const RunResult run = execute(pl, StrategyKind::Main);
        CHECK(run.status == RunStatus::Diverged);
        REQUIRE_FALSE(run.legs.empty());
        CHECK(run.legs.back().event.truncated);
        CHECK(run.legs.back().event.name() == "Diverged");
    }
    SECTION("leg limit is respected") {
        const Placement pl = place_main(Instance({2.0, 1.0}, 9));
        RunLimits limits;
        limits.max_legs = 3;
        const RunResult run = execute(pl, StrategyKind::Main, limits);
        CHECK(run.status == RunStatus::LegLimit);
        CHECK(run.legs.size() == 3);
    }
    SECTION("simulation refuses budgets beyond double precision sectors") {
        CHECK_THROWS_AS(execute(place_main(Instance({2.0, 1.0}, 31)), StrategyKind::Main),
                        std::invalid_argument);
    }
}

TEST_CASE("origin_has_pebble") {
    const Placement with_p0 = place_main(Instance({2.0, 1.0}, 9));
    CHECK(origin_has_pebble(with_p0));
    const Placement east = place_main(Instance({-50.0, 0.5}, 9));
    CHECK_FALSE(origin_has_pebble(east));
    Placement nudged = east;
    nudged.pebbles.push_back({Point{1e-15, 0.0}, PebbleRole::P0, 0});
    CHECK(origin_has_pebble(nudged));
}

TEST_CASE("trace invariants") {
    const Placement pl = place_main(Instance({7.0, -3.0}, 12));
    const RunResult run = execute(pl, StrategyKind::Main);
    REQUIRE(run.status == RunStatus::Found);

    SECTION("continuity and additivity") {
        Point pos{0.0, 0.0};
        double sum = 0.0;
        for (const auto& leg : run.legs) {
            CHECK(dist(leg.start, pos) <= 1e-9);
            const Point predicted{leg.start.x + leg.length * leg.heading.ux,
                                  leg.start.y + leg.length * leg.heading.uy};
            CHECK(dist(predicted, leg.end) <= 1e-6);
            CHECK(leg.length >= TolerancePolicy{}.t_min);
            sum += leg.length;
            pos = leg.end;
        }
        CHECK_THAT(run.total_cost, Catch::Matchers::WithinRel(sum, 1e-12));
        CHECK_THAT(run.total_cost,
                   Catch::Matchers::WithinRel(run.decode_cost + run.sector_cost, 1e-12));
        CHECK(dist(pos, pl.treasure) <= 1e-9);
    }
    SECTION("determinism: identical inputs give identical traces") {
        const RunResult again = execute(pl, StrategyKind::Main);
        CHECK(trace_to_csv(run) == trace_to_csv(again));
    }
}

TEST_CASE("information hygiene across treasures with identical advice") {
    // Two treasures in the same sector with the same selector produce the
    // same encoding, so the command sequences must be identical heading for
    // heading; only the sector leg lengths may differ.
    const Placement a = place_main(Instance({30.0, 10.0}, 9));
    const Placement b = place_main(Instance({40.0, 13.0}, 9));
    REQUIRE(a.encoding->mu == b.encoding->mu);
    const RunResult ra = execute(a, StrategyKind::Main);
    const RunResult rb = execute(b, StrategyKind::Main);
    REQUIRE(ra.status == RunStatus::Found);
    REQUIRE(rb.status == RunStatus::Found);
    REQUIRE(ra.legs.size() == rb.legs.size());
    for (std::size_t i = 0; i < ra.legs.size(); ++i) {
        CHECK(ra.legs[i].heading.ux == rb.legs[i].heading.ux);
        CHECK(ra.legs[i].heading.uy == rb.legs[i].heading.uy);
    }
}

TEST_CASE("validator-passing placements never diverge under sweep") {
    SweepConfig cfg;
    cfg.seed = 99;
    cfg.k_set = {2, 5, 9, 12, 17, 24, 30};
    cfg.d_min = 20.0;
    cfg.d_max = 1e5;
    cfg.samples = 40;
    for (const auto& row : run_sweep(cfg)) {
        CHECK(row.status == RunStatus::Found);
        CHECK(row.decoded_ok);
        CHECK(row.cost_over_bound <= 1.0);
    }
}
