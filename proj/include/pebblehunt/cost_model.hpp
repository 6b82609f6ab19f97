#pragma once
/**
 * @file cost_model.hpp
 * @brief Closed-form leg-length sums for the main protocol, the reference
 *        cost bounds, and the f(k)/D ratio curve.
 *
 * The analytic route is independent of the simulator: costs come from the
 * construction coordinates and the foot projection in angle space, not from
 * replaying events. Sector indices are handled as binary expansions of the
 * polar angle, so budgets far beyond the 64-bit (and the simulator's k <= 30)
 * range stay exact where doubles allow and deterministic everywhere.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pebblehunt/geometry.hpp"
#include "pebblehunt/placement.hpp"

namespace pebblehunt {

// ---------------------------------------------------------------------------
// Exact excursion lengths

/// Length of the four-leg excursion that reveals bit `b` in iteration j:
/// axis walk, cross leg, diagonal, and (for a zero bit) the unit walk home.
inline double bit_excursion_cost(std::uint64_t j, char b) {
    const double dj = static_cast<double>(j);
    const double axis = 2.0 * dj + (b == '1' ? 1.0 : 2.0);
    const double cross = std::sqrt(4.0 * dj * dj + 1.0);
    const double tail = b == '1' ? 0.0 : 1.0;
    return axis + cross + std::numbers::sqrt2 + tail;
}

/// Length of the termination excursion after |mu| bits: past every bit
/// pebble to the far terminator, down to the near one, diagonally back to
/// the first bit pebble, along the axis to p1, and home.
inline double termination_excursion_cost(std::size_t mu_len, bool lead1) {
    const double len = static_cast<double>(mu_len);
    const double jt = len + 1.0;
    const double axis = 2.0 * len + (lead1 ? 6.0 : 7.0);
    const double cross = std::sqrt(4.0 * jt * jt + 1.0);
    const double tail = (lead1 ? 2.0 : 3.0) + 1.0;
    return axis + cross + std::numbers::sqrt2 + tail;
}

/// Total decode cost of learning the string mu (all excursions plus the
/// termination detection).
inline double decode_cost_of_bits(const std::string& mu) {
    if (mu.empty()) throw std::invalid_argument("decode_cost_of_bits: empty encoding");
    double total = 0.0;
    for (std::size_t j = 1; j <= mu.size(); ++j) total += bit_excursion_cost(j, mu[j - 1]);
    total += termination_excursion_cost(mu.size(), mu[0] == '1');
    return total;
}

// ---------------------------------------------------------------------------
// Sector index as a binary expansion

/**
 * First `width` bits of the binary expansion of f in [0, 1], big-endian:
 * the sector index of a point whose half-plane angle fraction is f. Repeated
 * doubling is exact in binary floating point, so this agrees with
 * sector_of(T, 2^width, side) bit for bit. f >= 1 clamps to the last sector.
 */
inline std::string sector_index_bits(double f, int width) {
    if (width < 1) throw std::invalid_argument("sector_index_bits: width must be >= 1");
    if (f >= 1.0) return std::string(static_cast<std::size_t>(width), '1');
    std::string bits;
    bits.reserve(static_cast<std::size_t>(width));
    double x = f;
    for (int i = 0; i < width; ++i) {
        x *= 2.0;
        if (x >= 1.0) {
            bits.push_back('1');
            x -= 1.0;
        } else {
            bits.push_back('0');
        }
    }
    return bits;
}

// ---------------------------------------------------------------------------
// Analytic cost

struct CostBreakdown {
    double decode = 0.0;
    double sector = 0.0;
    double total = 0.0;
    double bound_total = 0.0;
    double theta_prime = 0.0;  ///< pi / 2^(k-8)
    std::string mu;            ///< the encoding the oracle would emit
};

/**
 * Reference cost bound. Budgets 2..8 follow the two-pebble analysis
 * (4.5 D + sqrt(2) + 2); k >= 10 follows 2k^2 + D (sin th' + cos th');
 * k = 9 uses 2k^2 + sqrt(2) D because sin+cos is only monotone up to pi/4
 * while th' is still pi/2 there.
 */
inline double cost_bound(double d, int k) {
    if (!(d > 0.0)) throw std::invalid_argument("cost_bound: D must be positive");
    if (k < 2) throw BudgetTooSmall("cost_bound: needs k >= 2");
    if (k <= 8) return 4.5 * d + std::numbers::sqrt2 + 2.0;
    const double kk = 2.0 * static_cast<double>(k) * static_cast<double>(k);
    if (k == 9) return kk + std::numbers::sqrt2 * d;
    const double theta = std::numbers::pi * std::exp2(-(k - 8));
    return kk + d * (std::sin(theta) + std::cos(theta));
}

/**
 * Exact cost of the main protocol on (T, k), without simulating: decode cost
 * from the encoding the oracle emits, sector cost from the foot projection
 * onto the travel line. Requires k >= 9 and T outside the square B.
 */
inline CostBreakdown analytic_cost(const Point& t, int k) {
    if (k < 9) throw BudgetTooSmall("analytic_cost: needs k >= 9");
    if (inside_square_b(t))
        throw std::invalid_argument("analytic_cost: treasure inside B is not covered");
    const HalfPlane side = t.x >= 0.0 ? HalfPlane::Right : HalfPlane::Left;
    const int width = k - 8;
    const double f = angle_fraction(t, side);

    CostBreakdown out;
    const std::string delta_bits = sector_index_bits(f, width);
    const int selector = selector_bit(t, side);
    out.mu.reserve(static_cast<std::size_t>(width) + 1);
    out.mu.push_back(selector ? '1' : '0');
    out.mu += delta_bits;
    out.decode = decode_cost_of_bits(out.mu);

    // Fraction of the travel line: the index truncation of f, plus one step
    // when the selector picks the far boundary.
    double line_f = 0.0;
    for (int i = 0; i < width; ++i)
        if (delta_bits[static_cast<std::size_t>(i)] == '1') line_f += std::exp2(-(i + 1));
    if (selector) line_f += std::exp2(-width);
    const double theta2 = std::abs(f - line_f) * std::numbers::pi;
    const double d = t.norm();
    out.sector = d * std::cos(theta2) + d * std::sin(theta2);

    out.total = out.decode + out.sector;
    out.theta_prime = std::numbers::pi * std::exp2(-width);
    out.bound_total = cost_bound(d, k);
    return out;
}

// ---------------------------------------------------------------------------
// Ratio curve

struct RatioRow {
    double d = 0.0;
    int k = 0;
    double theta_prime = 0.0;
    double decode = 0.0;
    double sector = 0.0;
    double total = 0.0;
    double ratio = 0.0;
};

/// k = floor(D^(1/3)), with an integer correction against cbrt rounding.
inline int cuberoot_rule(double d) {
    auto cube = [](long long v) { return static_cast<double>(v) * static_cast<double>(v) *
                                         static_cast<double>(v); };
    long long k = static_cast<long long>(std::floor(std::cbrt(d)));
    while (cube(k + 1) <= d) ++k;
    while (k > 0 && cube(k) > d) --k;
    return static_cast<int>(k);
}

/**
 * The f(k)/D curve: per distance D, the worst-case instance at that distance
 * is costed analytically and divided by D. The worst case places the
 * treasure on the sector boundary farthest from its travel line (the point
 * (D, 0), which sits on the mid line of the half-plane with selector 1), so
 * the realized foot angle is exactly theta' and the sector term meets
 * D (sin theta' + cos theta').
 */
inline std::vector<RatioRow> ratio_curve(const std::vector<double>& d_list,
                                         const std::function<int(double)>& k_rule =
                                             cuberoot_rule) {
    std::vector<RatioRow> rows;
    rows.reserve(d_list.size());
    for (double d : d_list) {
        if (!(d > 1.0))
            throw std::invalid_argument("ratio_curve: distances must exceed the unit square");
        RatioRow row;
        row.d = d;
        row.k = k_rule(d);
        const CostBreakdown c = analytic_cost(Point{d, 0.0}, row.k);
        row.theta_prime = c.theta_prime;
        row.decode = c.decode;
        row.sector = c.sector;
        row.total = c.total;
        row.ratio = c.total / d;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pebblehunt
