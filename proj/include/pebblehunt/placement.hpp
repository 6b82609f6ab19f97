#pragma once
/**
 * @file placement.hpp
 * @brief The Oracle: given the treasure position and a pebble budget k, emit
 *        a labeled pebble placement the information-blind agent can decode.
 *
 * Three constructions are used, selected by budget and treasure position:
 *  - place_two   (2 <= k <= 8): two pebbles forming a two-turn path to T.
 *  - place_main  (k >= 9, T outside the unit square B = [-1,1]^2): the
 *    sector-number encoding on one half of the x-axis plus a foot-of-
 *    perpendicular pebble on the travel line.
 *  - place_square (k >= 9, T inside B): a three-pebble line construction
 *    whose last leg passes through T.
 *
 * All functions are pure functions of the instance and thread-safe.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pebblehunt/geometry.hpp"

namespace pebblehunt {

// ---------------------------------------------------------------------------
// Instance

/// A problem instance: treasure position and pebble budget.
struct Instance {
    Point treasure;
    int k = 2;

    Instance(Point t, int budget) : treasure(t), k(budget) {
        if (!(treasure.norm() > 0.0))
            throw std::invalid_argument("Instance: treasure must differ from the origin");
        if (!treasure.finite_in_range())
            throw std::invalid_argument("Instance: treasure coordinates out of range");
        if (k < 2) throw BudgetTooSmall("Instance: pebble budget must be >= 2");
    }

    double distance() const { return treasure.norm(); }
};

// ---------------------------------------------------------------------------
// Pebbles and encodings

enum class PebbleRole { P0, P1, P2, P3, Bit, Term1, Term2, FootPT, TwoA, TwoB };

struct Pebble {
    Point pos;
    PebbleRole role = PebbleRole::Bit;
    int bit_index = 0;  ///< 1-based index for Bit pebbles, 0 otherwise
};

inline std::string role_name(const Pebble& p) {
    switch (p.role) {
        case PebbleRole::P0: return "P0";
        case PebbleRole::P1: return "P1";
        case PebbleRole::P2: return "P2";
        case PebbleRole::P3: return "P3";
        case PebbleRole::Bit: return "Bit" + std::to_string(p.bit_index);
        case PebbleRole::Term1: return "Term1";
        case PebbleRole::Term2: return "Term2";
        case PebbleRole::FootPT: return "FootPT";
        case PebbleRole::TwoA: return "TwoA";
        case PebbleRole::TwoB: return "TwoB";
    }
    return "?";
}

/// Sector-number encoding: one selector bit followed by the (k-8)-bit
/// big-endian representation of the sector index.
struct Encoding {
    std::string mu;          ///< '0'/'1' string of length k-7
    int selector = 1;        ///< first bit of mu
    std::uint64_t delta = 0; ///< sector index encoded in mu[1..]
    int width = 0;           ///< k-8
};

/**
 * Build the encoding for sector index j under budget k. Requires k >= 9 and
 * j < 2^(k-8).
 */
inline Encoding encode_sector(std::uint64_t j, int k, int selector) {
    if (k < 9) throw BudgetTooSmall("encode_sector: needs k >= 9");
    const int width = k - 8;
    if (width < 64 && j >= (std::uint64_t{1} << width))
        throw IndexOutOfRange("encode_sector: sector index does not fit in k-8 bits");
    Encoding e;
    e.selector = selector ? 1 : 0;
    e.delta = j;
    e.width = width;
    e.mu.reserve(static_cast<std::size_t>(width) + 1);
    e.mu.push_back(e.selector ? '1' : '0');
    for (int b = width - 1; b >= 0; --b)
        e.mu.push_back(((j >> b) & 1u) ? '1' : '0');
    return e;
}

// ---------------------------------------------------------------------------
// Placement

/// Which construction produced a placement.
enum class CaseTag { TwoPebble, MainOutsideB, SquareRight, SquareLeft };

inline std::string case_name(CaseTag c) {
    switch (c) {
        case CaseTag::TwoPebble: return "TwoPebble";
        case CaseTag::MainOutsideB: return "MainOutsideB";
        case CaseTag::SquareRight: return "SquareRight";
        case CaseTag::SquareLeft: return "SquareLeft";
    }
    return "?";
}

/// The agent's first-leg direction, signaled by a pebble at the origin:
/// W (pebble present, move west) or E (no pebble, move east).
enum class Orientation { E, W };

/// One expected event of the dry-run script used by the validator.
struct ExpectedEvent {
    SiteLabel kind = SiteLabel::Pebble;
    PebbleRole role = PebbleRole::Bit;  ///< meaningful when kind == Pebble
    int bit_index = 0;
};

struct Placement {
    int k = 0;
    Point treasure;
    Orientation orientation = Orientation::E;
    CaseTag case_tag = CaseTag::TwoPebble;
    std::vector<Pebble> pebbles;
    std::optional<Encoding> encoding;
    std::optional<std::uint64_t> travel_line;  ///< index of the line the agent travels
    std::vector<ExpectedEvent> expected_event_script;

    HalfPlane sector_side() const {
        return orientation == Orientation::W ? HalfPlane::Right : HalfPlane::Left;
    }
};

/// True when T lies in the closed square B = [-1,1]^2.
inline bool inside_square_b(const Point& t) {
    return std::abs(t.x) <= 1.0 && std::abs(t.y) <= 1.0;
}

/// Selector bit: 0 iff T lies in the strip {0 <= x <= 1, y > 1} (mirrored for
/// the left half-plane), which forces the travel line to L_Delta.
inline int selector_bit(const Point& t, HalfPlane side) {
    const bool in_strip = side == HalfPlane::Right ? (t.x >= 0.0 && t.x <= 1.0 && t.y > 1.0)
                                                   : (t.x <= 0.0 && t.x >= -1.0 && t.y > 1.0);
    return in_strip ? 0 : 1;
}

namespace detail {

inline void append_axis_walk_script(std::vector<ExpectedEvent>& s, const std::string& mu,
                                    std::size_t upto_bits) {
    s.push_back({SiteLabel::Pebble, PebbleRole::P1, 0});
    for (std::size_t b = 1; b <= upto_bits && b <= mu.size(); ++b)
        s.push_back({SiteLabel::Pebble, PebbleRole::Bit, static_cast<int>(b)});
}

inline std::vector<ExpectedEvent> main_script(const Encoding& enc) {
    std::vector<ExpectedEvent> s;
    const std::size_t len = enc.mu.size();
    for (std::size_t j = 1; j <= len; ++j) {
        append_axis_walk_script(s, enc.mu, j);
        const bool one = enc.mu[j - 1] == '1';
        s.push_back({SiteLabel::Pebble, one ? PebbleRole::P2 : PebbleRole::P3, 0});
        if (one) {
            s.push_back({SiteLabel::OriginP, PebbleRole::Bit, 0});
        } else {
            s.push_back({SiteLabel::Pebble, PebbleRole::P1, 0});
            s.push_back({SiteLabel::OriginP, PebbleRole::Bit, 0});
        }
    }
    // Termination excursion: past every bit pebble to Term2, down to Term1,
    // diagonally to Bit1, along the axis to P1 (the termination signal), home.
    append_axis_walk_script(s, enc.mu, len);
    s.push_back({SiteLabel::Pebble, PebbleRole::Term2, 0});
    s.push_back({SiteLabel::Pebble, PebbleRole::Term1, 0});
    s.push_back({SiteLabel::Pebble, PebbleRole::Bit, 1});
    s.push_back({SiteLabel::Pebble, PebbleRole::P1, 0});
    s.push_back({SiteLabel::OriginP, PebbleRole::Bit, 0});
    // Sector phase.
    s.push_back({SiteLabel::Pebble, PebbleRole::FootPT, 0});
    s.push_back({SiteLabel::Treasure, PebbleRole::Bit, 0});
    return s;
}

}  // namespace detail

/**
 * Rebuild the ordered event script a valid run of this placement must
 * realize. Derivable from the placement fields alone, so deserialized
 * placements validate exactly like freshly constructed ones.
 */
inline std::vector<ExpectedEvent> build_expected_script(const Placement& pl) {
    switch (pl.case_tag) {
        case CaseTag::TwoPebble: {
            std::vector<ExpectedEvent> s = {{SiteLabel::Pebble, PebbleRole::TwoA, 0},
                                            {SiteLabel::Pebble, PebbleRole::TwoB, 0}};
            // A treasure on the negative y-axis puts the origin on the southbound leg.
            if (pl.treasure.x == 0.0 && pl.treasure.y < 0.0)
                s.push_back({SiteLabel::OriginP, PebbleRole::Bit, 0});
            s.push_back({SiteLabel::Treasure, PebbleRole::Bit, 0});
            return s;
        }
        case CaseTag::SquareRight:
        case CaseTag::SquareLeft:
            return {{SiteLabel::Pebble, PebbleRole::P1, 0},
                    {SiteLabel::Pebble, PebbleRole::P2, 0},
                    {SiteLabel::Pebble, PebbleRole::P3, 0},
                    {SiteLabel::Treasure, PebbleRole::Bit, 0}};
        case CaseTag::MainOutsideB:
            if (!pl.encoding)
                throw std::invalid_argument("build_expected_script: main placement lacks encoding");
            return detail::main_script(*pl.encoding);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Two-pebble oracle (2 <= k <= 8)

/**
 * Place two pebbles so the agent's fixed three-leg path (northeast diagonal,
 * then west, then south) ends at the treasure. Works for any treasure.
 */
inline Placement place_two(const Instance& inst) {
    const Point t = inst.treasure;
    Placement pl;
    pl.k = inst.k;
    pl.treasure = t;
    pl.case_tag = CaseTag::TwoPebble;
    pl.orientation = Orientation::E;  // no pebble at the origin
    Point a, b;
    if (t.x > 0.0 || t.y > 0.0) {
        const double z = std::max(std::abs(t.x), std::abs(t.y));
        a = Point{z + 1.0, z + 1.0};
        b = Point{t.x, z + 1.0};
    } else {
        a = Point{1.0, 1.0};
        b = Point{t.x, 1.0};
    }
    pl.pebbles.push_back({a, PebbleRole::TwoA, 0});
    pl.pebbles.push_back({b, PebbleRole::TwoB, 0});
    pl.expected_event_script = build_expected_script(pl);
    return pl;
}

// ---------------------------------------------------------------------------
// Square construction (T inside B)

/**
 * Geometry of the in-square construction. Q1 is the slope +1 line through T;
 * Q2 is the slope -1/2 line through the anchor (+-2, 0). s is their
 * intersection; when s lies too close to the x-axis the construction shifts
 * one unit along Q1 away from the axis (s_shift) and re-anchors on the
 * x-intercept h of the slope -1/2 line through s_shift, which lands at
 * (+-5, 0) identically.
 */
struct SquareConstruction {
    Point s;
    Point s_shift;
    Point h;
    bool shifted = false;
};

inline SquareConstruction square_construction(const Point& t, HalfPlane side) {
    SquareConstruction c;
    if (side == HalfPlane::Right) {
        const double sx = (2.0 / 3.0) * (1.0 + t.x - t.y);
        const double sy = (2.0 - t.x + t.y) / 3.0;
        c.s = Point{sx, sy};
        c.shifted = sy < 1.0;
        c.s_shift = Point{sx + 1.0, sy + 1.0};
        c.h = Point{5.0, 0.0};
    } else {
        const double sx = (2.0 / 3.0) * (t.x - t.y - 1.0);
        const double sy = -(2.0 + t.x - t.y) / 3.0;
        c.s = Point{sx, sy};
        c.shifted = sy > -1.0;
        c.s_shift = Point{sx - 1.0, sy - 1.0};
        c.h = Point{-5.0, 0.0};
    }
    return c;
}

/**
 * Oracle for a treasure inside the square B. Uses 3 pebbles on the right
 * side (p1, p2, p3) and 4 on the left (plus the origin marker p0).
 */
inline Placement place_square(const Point& t, int k) {
    if (k < 4) throw BudgetTooSmall("place_square: needs k >= 4");
    if (!inside_square_b(t)) throw std::invalid_argument("place_square: treasure outside B");
    if (!(t.norm() > 0.0)) throw std::invalid_argument("place_square: treasure at the origin");

    Placement pl;
    pl.k = k;
    pl.treasure = t;
    const bool right = t.x >= 0.0;
    pl.case_tag = right ? CaseTag::SquareRight : CaseTag::SquareLeft;
    pl.orientation = right ? Orientation::E : Orientation::W;

    const auto c = square_construction(t, right ? HalfPlane::Right : HalfPlane::Left);
    if (!right) pl.pebbles.push_back({Point{0.0, 0.0}, PebbleRole::P0, 0});
    pl.pebbles.push_back({Point{right ? 1.0 : -1.0, 0.0}, PebbleRole::P1, 0});
    if (c.shifted) {
        pl.pebbles.push_back({c.h, PebbleRole::P2, 0});
        pl.pebbles.push_back({c.s_shift, PebbleRole::P3, 0});
    } else {
        pl.pebbles.push_back({Point{right ? 2.0 : -2.0, 0.0}, PebbleRole::P2, 0});
        pl.pebbles.push_back({c.s, PebbleRole::P3, 0});
    }
    pl.expected_event_script = build_expected_script(pl);
    return pl;
}

// ---------------------------------------------------------------------------
// Main oracle (k >= 9, T outside B)

/**
 * Sector-encoding oracle. For x_T >= 0 the encoding lives on the negative
 * x-axis (orientation W, pebble p0 at the origin); for x_T < 0 every pebble
 * (m, n) maps to (-m, -n), p0 is omitted, and the sectors live on the left
 * half-plane. Delegates to place_square when T lies inside B.
 */
inline Placement place_main(const Instance& inst) {
    if (inst.k < 9) throw BudgetTooSmall("place_main: needs k >= 9");
    if (inst.k > 62) throw std::invalid_argument("place_main: sector index exceeds 64-bit range");
    const Point t = inst.treasure;
    if (inside_square_b(t)) return place_square(t, inst.k);

    Placement pl;
    pl.k = inst.k;
    pl.treasure = t;
    pl.case_tag = CaseTag::MainOutsideB;
    const bool right = t.x >= 0.0;
    pl.orientation = right ? Orientation::W : Orientation::E;
    const HalfPlane side = pl.sector_side();
    // Orientation W keeps the encoding on the negative axis; mirror = -1 maps
    // the construction to the positive axis for orientation E.
    const double m = right ? 1.0 : -1.0;

    const std::uint64_t n = std::uint64_t{1} << (inst.k - 8);
    const std::uint64_t delta = sector_of(t, n, side);
    const Encoding enc = encode_sector(delta, inst.k, selector_bit(t, side));
    pl.encoding = enc;
    const std::uint64_t val = enc.selector ? delta + 1 : delta;
    pl.travel_line = val;

    if (right) pl.pebbles.push_back({Point{0.0, 0.0}, PebbleRole::P0, 0});
    pl.pebbles.push_back({Point{-1.0 * m, 0.0}, PebbleRole::P1, 0});
    pl.pebbles.push_back({Point{-1.0 * m, -1.0 * m}, PebbleRole::P2, 0});
    pl.pebbles.push_back({Point{-2.0 * m, -1.0 * m}, PebbleRole::P3, 0});
    for (std::size_t l = 1; l <= enc.mu.size(); ++l) {
        const double ax = enc.mu[l - 1] == '1' ? -(2.0 * l + 1.0) : -(2.0 * l + 2.0);
        pl.pebbles.push_back({Point{ax * m, 0.0}, PebbleRole::Bit, static_cast<int>(l)});
    }
    const bool lead1 = enc.mu[0] == '1';
    pl.pebbles.push_back(
        {Point{(lead1 ? -4.0 : -5.0) * m, -1.0 * m}, PebbleRole::Term1, 0});
    const double t2x = -(2.0 * static_cast<double>(enc.mu.size()) + (lead1 ? 6.0 : 7.0));
    pl.pebbles.push_back({Point{t2x * m, 0.0}, PebbleRole::Term2, 0});

    Point foot;
    try {
        foot = foot_of_perpendicular(t, heading_of_line(val, n, side));
    } catch (const NegativeProjection&) {
        throw DegenerateSector("place_main: treasure projects behind its travel line");
    }
    pl.pebbles.push_back({foot, PebbleRole::FootPT, 0});

    pl.expected_event_script = build_expected_script(pl);
    return pl;
}

/**
 * Strategy dispatch: budgets 2..8 use the two-pebble oracle, 9 and above the
 * sector encoding (with the square construction inside B).
 */
inline Placement place(const Instance& inst) {
    if (inst.k <= 8) return place_two(inst);
    return place_main(inst);
}

}  // namespace pebblehunt
