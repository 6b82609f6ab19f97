#pragma once
/**
 * @file agent.hpp
 * @brief The agent's deterministic strategies as pure observation-driven
 *        state machines, blind to all coordinates.
 *
 * A strategy step consumes an immutable state and one observation and
 * returns the successor state plus an action (a heading to move along until
 * the next event, Done, or a protocol violation). The only information a
 * strategy ever receives is the budget k and the sequence of event labels;
 * commands are absolute compass headings realized from the construction
 * geometry.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pebblehunt/geometry.hpp"
#include "pebblehunt/placement.hpp"

namespace pebblehunt {

// ---------------------------------------------------------------------------
// Observations and actions

struct Observation {
    enum class Kind { StartSense, AtOrigin, AtPebble, AtTreasure };
    Kind kind = Kind::StartSense;
    bool pebble_at_start = false;  ///< meaningful for StartSense only
};

struct MoveCommand {
    Heading heading;
    bool sector_phase = false;  ///< accounting tag: sector travel vs decode
};

struct StepAction {
    enum class Kind { Move, Done, Violation };
    Kind kind = Kind::Move;
    MoveCommand move;
    std::string why;  ///< diagnostic for Kind::Violation

    static StepAction move_along(Heading h, bool sector = false) {
        return {Kind::Move, MoveCommand{h, sector}, {}};
    }
    static StepAction done() { return {Kind::Done, {}, {}}; }
    static StepAction violation(std::string why) { return {Kind::Violation, {}, std::move(why)}; }
};

// ---------------------------------------------------------------------------
// Heading table
//
// Orientation W: first leg west, decode pebbles on the negative axis,
// sectors on the right half-plane. Orientation E is the point reflection.

inline Heading axis_heading(Orientation o) {
    return o == Orientation::W ? Heading{-1.0, 0.0} : Heading{1.0, 0.0};
}

/// Heading of the j-th iteration's second leg, from the axis pebble to the
/// anchor row: slope -1/(2j) on the W side, point-reflected on the E side.
inline Heading cross_heading(std::uint64_t j, Orientation o) {
    const double s = o == Orientation::W ? 1.0 : -1.0;
    return Heading::of_vector(s * 2.0 * static_cast<double>(j), -s);
}

/// Third-leg heading: the unit diagonal back toward the axis.
inline Heading diag_heading(Orientation o) {
    const double s = o == Orientation::W ? 1.0 : -1.0;
    const double c = s / std::numbers::sqrt2;
    return Heading{c, c};
}

/// Fourth-leg heading: along the x-axis toward the origin.
inline Heading return_heading(Orientation o) {
    return o == Orientation::W ? Heading{1.0, 0.0} : Heading{-1.0, 0.0};
}

inline Heading line_heading(std::uint64_t val, std::uint64_t n, Orientation o) {
    return heading_of_line(val, n, o == Orientation::W ? HalfPlane::Right : HalfPlane::Left);
}

/// Final turn at the foot pebble: a relative quarter turn off the travel
/// line, into the sector that holds the treasure.
inline Heading final_turn(const Heading& travel, int selector, Orientation o) {
    const bool ccw = (o == Orientation::W) == (selector == 1);
    return ccw ? travel.rotated_ccw90() : travel.rotated_cw90();
}

/// Headings of one decode excursion, in order: cross leg, diagonal, return.
inline std::vector<Heading> find_bit_legs(std::uint64_t j, Orientation o) {
    if (j < 1) throw std::invalid_argument("find_bit_legs: iteration index starts at 1");
    return {cross_heading(j, o), diag_heading(o), return_heading(o)};
}

// ---------------------------------------------------------------------------
// Decoding

/**
 * Split a learned bit string into (sector index, selector). The string must
 * be exactly k-7 bits: the selector followed by the big-endian sector index.
 */
inline std::pair<std::uint64_t, int> decode_bits(const std::string& bits, int k) {
    if (k < 9) throw BudgetTooSmall("decode_bits: needs k >= 9");
    if (bits.size() != static_cast<std::size_t>(k - 7))
        throw LengthMismatch("decode_bits: expected " + std::to_string(k - 7) + " bits, got " +
                             std::to_string(bits.size()));
    std::uint64_t delta = 0;
    for (std::size_t i = 1; i < bits.size(); ++i)
        delta = (delta << 1) | (bits[i] == '1' ? 1u : 0u);
    return {delta, bits[0] == '1' ? 1 : 0};
}

// ---------------------------------------------------------------------------
// Main strategy (k >= 9)

/// What the agent decoded, exposed for run reporting once complete.
struct DecodedAdvice {
    std::string mu;
    std::uint64_t delta = 0;
    int selector = 1;
    std::uint64_t travel_line = 0;
};

struct MainAgentState {
    enum class Phase {
        Orient,          ///< waiting for StartSense
        AxisWalk,        ///< counting pebbles along the axis
        AnchorApproach,  ///< cross leg toward the anchor row
        DiagonalReturn,  ///< diagonal back toward origin / axis pebble
        AxisReturn,      ///< along the axis toward the origin
        ConfirmReturn,   ///< termination seen; finish the walk home
        SectorTravel,    ///< along the decoded sector line
        FinalApproach,   ///< perpendicular leg to the treasure
        Done
    };

    int k = 9;
    Phase phase = Phase::Orient;
    Orientation orientation = Orientation::E;
    std::uint64_t iteration = 1;   ///< 1-based decode iteration
    std::uint64_t pebbles_seen = 0;
    std::string bits;
    std::optional<DecodedAdvice> decoded;

    explicit MainAgentState(int budget) : k(budget) {
        if (budget < 9) throw BudgetTooSmall("MainAgentState: needs k >= 9");
        if (budget > 62) throw std::invalid_argument("MainAgentState: k exceeds 64-bit sectors");
    }

    std::uint64_t sector_count() const { return std::uint64_t{1} << (k - 8); }
    int expected_bits() const { return k - 7; }
};

/**
 * One step of the main strategy. Returns the successor state and the action.
 * An observation that is impossible under the state machine yields a
 * Violation action, which the engine records as a ProtocolViolation status.
 */
inline std::pair<MainAgentState, StepAction> strategy_main_next(MainAgentState s,
                                                                const Observation& obs) {
    using Phase = MainAgentState::Phase;
    using Kind = Observation::Kind;

    if (s.phase == Phase::Orient) {
        if (obs.kind != Kind::StartSense)
            return {s, StepAction::violation("expected the initial sense at P")};
        s.orientation = obs.pebble_at_start ? Orientation::W : Orientation::E;
        s.phase = Phase::AxisWalk;
        s.iteration = 1;
        s.pebbles_seen = 0;
        return {s, StepAction::move_along(axis_heading(s.orientation))};
    }
    if (obs.kind == Kind::StartSense)
        return {s, StepAction::violation("start sense repeated mid-run")};
    if (obs.kind == Kind::AtTreasure) {
        s.phase = Phase::Done;
        return {s, StepAction::done()};
    }

    const bool at_origin = obs.kind == Kind::AtOrigin;
    switch (s.phase) {
        case Phase::AxisWalk: {
            if (at_origin) return {s, StepAction::violation("origin event on the outbound axis walk")};
            ++s.pebbles_seen;
            if (s.pebbles_seen == s.iteration + 1) {
                s.phase = Phase::AnchorApproach;
                return {s, StepAction::move_along(cross_heading(s.iteration, s.orientation))};
            }
            return {s, StepAction::move_along(axis_heading(s.orientation))};
        }
        case Phase::AnchorApproach: {
            if (at_origin) return {s, StepAction::violation("origin event on the cross leg")};
            s.phase = Phase::DiagonalReturn;
            return {s, StepAction::move_along(diag_heading(s.orientation))};
        }
        case Phase::DiagonalReturn: {
            if (at_origin) {
                if (static_cast<int>(s.bits.size()) >= s.expected_bits())
                    return {s, StepAction::violation("more bits than the budget encodes")};
                s.bits.push_back('1');
                ++s.iteration;
                s.pebbles_seen = 0;
                s.phase = Phase::AxisWalk;
                return {s, StepAction::move_along(axis_heading(s.orientation))};
            }
            s.phase = Phase::AxisReturn;
            return {s, StepAction::move_along(return_heading(s.orientation))};
        }
        case Phase::AxisReturn: {
            if (at_origin) {
                if (static_cast<int>(s.bits.size()) >= s.expected_bits())
                    return {s, StepAction::violation("more bits than the budget encodes")};
                s.bits.push_back('0');
                ++s.iteration;
                s.pebbles_seen = 0;
                s.phase = Phase::AxisWalk;
                return {s, StepAction::move_along(axis_heading(s.orientation))};
            }
            // A pebble instead of the origin announces the end of the encoding.
            if (static_cast<int>(s.bits.size()) != s.expected_bits())
                return {s, StepAction::violation("termination before the encoding was complete")};
            const auto [delta, selector] = decode_bits(s.bits, s.k);
            DecodedAdvice adv;
            adv.mu = s.bits;
            adv.delta = delta;
            adv.selector = selector;
            adv.travel_line = selector ? delta + 1 : delta;
            s.decoded = adv;
            s.phase = Phase::ConfirmReturn;
            return {s, StepAction::move_along(return_heading(s.orientation))};
        }
        case Phase::ConfirmReturn: {
            if (!at_origin)  // keep walking the axis home
                return {s, StepAction::move_along(return_heading(s.orientation))};
            s.phase = Phase::SectorTravel;
            const Heading h = line_heading(s.decoded->travel_line, s.sector_count(), s.orientation);
            return {s, StepAction::move_along(h, true)};
        }
        case Phase::SectorTravel: {
            if (at_origin) return {s, StepAction::violation("origin event on the sector line")};
            s.phase = Phase::FinalApproach;
            const Heading travel =
                line_heading(s.decoded->travel_line, s.sector_count(), s.orientation);
            return {s, StepAction::move_along(
                           final_turn(travel, s.decoded->selector, s.orientation), true)};
        }
        case Phase::FinalApproach: {
            // Only the treasure ends this leg; pass through anything else.
            const Heading travel =
                line_heading(s.decoded->travel_line, s.sector_count(), s.orientation);
            return {s, StepAction::move_along(
                           final_turn(travel, s.decoded->selector, s.orientation), true)};
        }
        case Phase::Orient:
        case Phase::Done:
            break;
    }
    return {s, StepAction::violation("step after completion")};
}

// ---------------------------------------------------------------------------
// Two-pebble strategy (2 <= k <= 8)

struct TwoAgentState {
    enum class Phase { Orient, RiseLeg, WestLeg, DropLeg, Done };
    Phase phase = Phase::Orient;
};

/**
 * One step of the two-pebble strategy: northeast at pi/4 to the first
 * pebble, west to the second, then south until the treasure.
 */
inline std::pair<TwoAgentState, StepAction> strategy_two_next(TwoAgentState s,
                                                              const Observation& obs) {
    using Phase = TwoAgentState::Phase;
    using Kind = Observation::Kind;

    if (s.phase == Phase::Orient) {
        if (obs.kind != Kind::StartSense)
            return {s, StepAction::violation("expected the initial sense at P")};
        s.phase = Phase::RiseLeg;
        const double c = 1.0 / std::numbers::sqrt2;
        return {s, StepAction::move_along(Heading{c, c})};
    }
    if (obs.kind == Kind::StartSense)
        return {s, StepAction::violation("start sense repeated mid-run")};
    if (obs.kind == Kind::AtTreasure) {
        s.phase = Phase::Done;
        return {s, StepAction::done()};
    }

    switch (s.phase) {
        case Phase::RiseLeg:
            if (obs.kind == Kind::AtOrigin)
                return {s, StepAction::violation("origin event on the diagonal leg")};
            s.phase = Phase::WestLeg;
            return {s, StepAction::move_along(Heading{-1.0, 0.0})};
        case Phase::WestLeg:
            if (obs.kind == Kind::AtOrigin)
                return {s, StepAction::violation("origin event on the westbound leg")};
            s.phase = Phase::DropLeg;
            return {s, StepAction::move_along(Heading{0.0, -1.0})};
        case Phase::DropLeg:
            // Pass through anything that is not the treasure.
            return {s, StepAction::move_along(Heading{0.0, -1.0})};
        case Phase::Orient:
        case Phase::Done:
            break;
    }
    return {s, StepAction::violation("step after completion")};
}

}  // namespace pebblehunt
