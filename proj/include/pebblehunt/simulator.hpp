#pragma once
/**
 * @file simulator.hpp
 * @brief Executes a strategy against a placement: the event loop, cost
 *        accounting, trace recording, and divergence / step-limit guards.
 *
 * The engine owns the geometry; strategies only ever see event labels. A
 * pebble at the agent's current position is not an event for the leg just
 * starting (forward parameter must reach t_min). Geometric outcomes are
 * status-carrying, never exceptions.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pebblehunt/agent.hpp"
#include "pebblehunt/geometry.hpp"
#include "pebblehunt/placement.hpp"

namespace pebblehunt {

// ---------------------------------------------------------------------------

enum class RunStatus { Found, Diverged, ProtocolViolation, LegLimit };

inline std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Found: return "Found";
        case RunStatus::Diverged: return "Diverged";
        case RunStatus::ProtocolViolation: return "ProtocolViolation";
        case RunStatus::LegLimit: return "LegLimit";
    }
    return "?";
}

/// What ended a trace leg.
struct LegEvent {
    SiteLabel kind = SiteLabel::Pebble;
    PebbleRole role = PebbleRole::Bit;  ///< valid when kind == Pebble
    int bit_index = 0;
    bool truncated = false;  ///< synthetic endpoint of a diverged leg

    std::string name() const {
        if (truncated) return "Diverged";
        switch (kind) {
            case SiteLabel::OriginP: return "OriginP";
            case SiteLabel::Treasure: return "Treasure";
            case SiteLabel::Pebble: return role_name(Pebble{{}, role, bit_index});
        }
        return "?";
    }
};

/// One straight movement between consecutive events.
struct TraceLeg {
    Point start;
    Heading heading;
    Point end;
    LegEvent event;
    double length = 0.0;
    bool sector_phase = false;
};

struct RunLimits {
    int max_legs = 0;  ///< 0 means the default 20k + 50
    double max_coordinate = kMaxCoordinate;

    int effective_max_legs(int k) const { return max_legs > 0 ? max_legs : 20 * k + 50; }
};

struct RunResult {
    RunStatus status = RunStatus::Diverged;
    double total_cost = 0.0;
    double decode_cost = 0.0;
    double sector_cost = 0.0;
    std::vector<TraceLeg> legs;
    std::optional<DecodedAdvice> decoded;
    std::string violation;  ///< diagnostic when status == ProtocolViolation
};

// ---------------------------------------------------------------------------

/// True iff some pebble of the placement sits within eps_abs of the origin.
inline bool origin_has_pebble(const Placement& pl,
                              const TolerancePolicy& tol = TolerancePolicy{}) {
    for (const auto& p : pl.pebbles)
        if (p.pos.norm() <= tol.eps_abs) return true;
    return false;
}

enum class StrategyKind { TwoPebble, Main };

inline StrategyKind strategy_for_budget(int k) {
    return k <= 8 ? StrategyKind::TwoPebble : StrategyKind::Main;
}

namespace detail {

/// Distance from `from` along `h` to the boundary of the square |x|,|y| <= c.
inline double distance_to_guard_box(const Point& from, const Heading& h, double c) {
    double best = c;  // fallback when the start is already near the boundary
    bool found = false;
    const auto consider = [&](double t) {
        if (t > 0.0 && (!found || t < best)) {
            best = t;
            found = true;
        }
    };
    if (h.ux > 0.0) consider((c - from.x) / h.ux);
    if (h.ux < 0.0) consider((-c - from.x) / h.ux);
    if (h.uy > 0.0) consider((c - from.y) / h.uy);
    if (h.uy < 0.0) consider((-c - from.y) / h.uy);
    return best;
}

}  // namespace detail

/**
 * Run a strategy against a placement until the treasure is found or a guard
 * trips. The first observation is the start sense (is a pebble present at
 * P?); afterwards each command heading is resolved against all pebbles plus
 * the origin and the treasure with first_event. The trace leg of a diverged
 * command is truncated at the coordinate guard box.
 */
inline RunResult execute(const Placement& pl, StrategyKind strategy,
                         const RunLimits& limits = RunLimits{},
                         const TolerancePolicy& tol = TolerancePolicy{}) {
    if (strategy == StrategyKind::Main && pl.k > 30)
        throw std::invalid_argument(
            "execute: simulation supports k <= 30 (sector lines below double "
            "precision otherwise); use the cost model for larger budgets");
    tol.check();

    std::vector<Site> sites;
    sites.reserve(pl.pebbles.size() + 2);
    for (std::size_t i = 0; i < pl.pebbles.size(); ++i)
        sites.push_back({pl.pebbles[i].pos, SiteLabel::Pebble, static_cast<int>(i)});
    sites.push_back({Point{0.0, 0.0}, SiteLabel::OriginP, -1});
    sites.push_back({pl.treasure, SiteLabel::Treasure, -1});

    std::variant<TwoAgentState, MainAgentState> state =
        strategy == StrategyKind::TwoPebble
            ? std::variant<TwoAgentState, MainAgentState>{TwoAgentState{}}
            : std::variant<TwoAgentState, MainAgentState>{MainAgentState{pl.k}};

    const auto step = [&](const Observation& obs) -> StepAction {
        if (auto* two = std::get_if<TwoAgentState>(&state)) {
            auto [next, act] = strategy_two_next(*two, obs);
            state = next;
            return act;
        }
        auto [next, act] = strategy_main_next(std::get<MainAgentState>(state), obs);
        state = std::move(next);
        return act;
    };

    RunResult res;
    const int max_legs = limits.effective_max_legs(pl.k);
    Point pos{0.0, 0.0};
    Observation obs{Observation::Kind::StartSense, origin_has_pebble(pl, tol)};

    while (true) {
        const StepAction act = step(obs);
        if (act.kind == StepAction::Kind::Done) {
            res.status = RunStatus::Found;
            break;
        }
        if (act.kind == StepAction::Kind::Violation) {
            res.status = RunStatus::ProtocolViolation;
            res.violation = act.why;
            break;
        }
        if (static_cast<int>(res.legs.size()) >= max_legs) {
            res.status = RunStatus::LegLimit;
            break;
        }

        const Ray ray{pos, act.move.heading};
        const auto hit = first_event(ray, sites, tol);
        if (!hit) {
            const double t = detail::distance_to_guard_box(pos, act.move.heading,
                                                           limits.max_coordinate);
            TraceLeg leg;
            leg.start = pos;
            leg.heading = act.move.heading;
            leg.end = Point{pos.x + t * act.move.heading.ux, pos.y + t * act.move.heading.uy};
            leg.event.truncated = true;
            leg.length = t;
            leg.sector_phase = act.move.sector_phase;
            res.legs.push_back(leg);
            res.status = RunStatus::Diverged;
            break;
        }

        const Site& site = sites[hit->site];
        TraceLeg leg;
        leg.start = pos;
        leg.heading = act.move.heading;
        leg.end = site.pos;  // snap to the exact site to avoid drift
        leg.event.kind = site.label;
        if (site.label == SiteLabel::Pebble) {
            const Pebble& p = pl.pebbles[static_cast<std::size_t>(site.pebble_index)];
            leg.event.role = p.role;
            leg.event.bit_index = p.bit_index;
        }
        leg.length = hit->t;
        leg.sector_phase = act.move.sector_phase;
        res.legs.push_back(leg);
        pos = site.pos;

        switch (site.label) {
            case SiteLabel::OriginP: obs = {Observation::Kind::AtOrigin, false}; break;
            case SiteLabel::Pebble: obs = {Observation::Kind::AtPebble, false}; break;
            case SiteLabel::Treasure: obs = {Observation::Kind::AtTreasure, false}; break;
        }
    }

    for (const auto& leg : res.legs) {
        res.total_cost += leg.length;
        (leg.sector_phase ? res.sector_cost : res.decode_cost) += leg.length;
    }
    if (const auto* main = std::get_if<MainAgentState>(&state)) res.decoded = main->decoded;
    return res;
}

/// Convenience wrapper: place for the instance, pick the matching strategy, run.
inline RunResult run_instance(const Instance& inst, const RunLimits& limits = RunLimits{},
                              const TolerancePolicy& tol = TolerancePolicy{}) {
    const Placement pl = place(inst);
    return execute(pl, strategy_for_budget(inst.k), limits, tol);
}

}  // namespace pebblehunt
