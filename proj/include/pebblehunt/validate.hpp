#pragma once
/**
 * @file validate.hpp
 * @brief Placement validator: separation audit, budget audit, script
 *        realizability through a dry simulation, and decode correctness.
 *
 * The validator never throws on bad placements; everything is reported.
 * Foot-pebble separation shortfalls are reported separately and are not
 * fatal (the construction cannot always avoid them near the axis), while a
 * shortfall between any other pair is.
 */

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pebblehunt/placement.hpp"
#include "pebblehunt/simulator.hpp"

namespace pebblehunt {

struct SeparationIssue {
    std::string a;
    std::string b;
    double distance = 0.0;
};

struct ValidationReport {
    int pebble_count = 0;
    int budget = 0;
    bool count_ok = false;

    double min_separation = std::numeric_limits<double>::infinity();
    std::vector<SeparationIssue> pairs_below_one;         ///< fatal
    std::vector<SeparationIssue> footpt_pairs_below_one;  ///< warning only
    double footpt_min_separation = std::numeric_limits<double>::infinity();

    bool script_ok = false;
    std::string script_failure;

    bool decode_ok = false;  ///< decoded sector index equals sector_of(T)
    RunStatus run_status = RunStatus::Diverged;

    bool passed() const {
        return count_ok && script_ok && decode_ok && pairs_below_one.empty();
    }
    bool has_warnings() const { return !footpt_pairs_below_one.empty(); }

    std::string summary() const {
        std::ostringstream os;
        os << "pebbles " << pebble_count << "/" << budget << (count_ok ? " ok" : " OVER BUDGET")
           << "; min separation " << min_separation;
        if (!pairs_below_one.empty()) os << "; " << pairs_below_one.size() << " pair(s) below 1";
        if (!footpt_pairs_below_one.empty())
            os << "; foot pebble within 1 of " << footpt_pairs_below_one.size() << " pebble(s)";
        os << "; script " << (script_ok ? "ok" : ("FAILED (" + script_failure + ")"));
        os << "; decode " << (decode_ok ? "ok" : "MISMATCH");
        return os.str();
    }
};

namespace detail {

inline bool event_matches(const LegEvent& got, const ExpectedEvent& want) {
    if (got.kind != want.kind) return false;
    if (got.kind != SiteLabel::Pebble) return true;
    if (got.role != want.role) return false;
    return got.role != PebbleRole::Bit || got.bit_index == want.bit_index;
}

}  // namespace detail

/**
 * Validate a placement against its instance. The dry simulation accepts an
 * early treasure hit (the run may legitimately end before the script does);
 * any other deviation from the expected event sequence is a failure.
 */
inline ValidationReport validate(const Placement& pl,
                                 const TolerancePolicy& tol = TolerancePolicy{}) {
    ValidationReport rep;
    rep.budget = pl.k;
    rep.pebble_count = static_cast<int>(pl.pebbles.size());
    rep.count_ok = rep.pebble_count <= pl.k;

    for (std::size_t i = 0; i < pl.pebbles.size(); ++i) {
        for (std::size_t j = i + 1; j < pl.pebbles.size(); ++j) {
            const double d = dist(pl.pebbles[i].pos, pl.pebbles[j].pos);
            const bool foot = pl.pebbles[i].role == PebbleRole::FootPT ||
                              pl.pebbles[j].role == PebbleRole::FootPT;
            if (foot)
                rep.footpt_min_separation = std::min(rep.footpt_min_separation, d);
            else
                rep.min_separation = std::min(rep.min_separation, d);
            if (d < 1.0) {
                SeparationIssue issue{role_name(pl.pebbles[i]), role_name(pl.pebbles[j]), d};
                (foot ? rep.footpt_pairs_below_one : rep.pairs_below_one).push_back(issue);
            }
        }
    }

    const RunResult run = execute(pl, strategy_for_budget(pl.k), RunLimits{}, tol);
    rep.run_status = run.status;

    rep.script_ok = true;
    const auto& script = pl.expected_event_script;
    for (std::size_t i = 0; i < run.legs.size(); ++i) {
        const LegEvent& got = run.legs[i].event;
        if (got.kind == SiteLabel::Treasure) break;  // early find is fine
        if (i >= script.size() || !detail::event_matches(got, script[i])) {
            rep.script_ok = false;
            std::ostringstream os;
            os << "event " << i + 1 << " was " << got.name();
            if (i < script.size())
                os << ", expected "
                   << (script[i].kind == SiteLabel::OriginP
                           ? std::string("OriginP")
                           : script[i].kind == SiteLabel::Treasure
                                 ? std::string("Treasure")
                                 : role_name(Pebble{{}, script[i].role, script[i].bit_index}));
            rep.script_failure = os.str();
            break;
        }
    }
    if (rep.script_ok && run.status != RunStatus::Found) {
        rep.script_ok = false;
        rep.script_failure = "run ended with status " + status_name(run.status);
    }

    if (pl.case_tag == CaseTag::MainOutsideB) {
        rep.decode_ok = false;
        if (run.status == RunStatus::Found && run.decoded && pl.encoding) {
            const std::uint64_t n = std::uint64_t{1} << (pl.k - 8);
            rep.decode_ok = run.decoded->delta == sector_of(pl.treasure, n, pl.sector_side()) &&
                            run.decoded->mu == pl.encoding->mu;
        } else if (run.status == RunStatus::Found && !run.decoded) {
            // Treasure found before any decoding was needed.
            rep.decode_ok = true;
        }
    } else {
        rep.decode_ok = run.status == RunStatus::Found;
    }
    return rep;
}

}  // namespace pebblehunt
