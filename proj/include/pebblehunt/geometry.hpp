#pragma once
/**
 * @file geometry.hpp
 * @brief Robust planar primitives used by the whole engine: points, unit
 *        headings, rays, first-event queries along a ray, perpendicular
 *        feet, and sector classification of the half-plane.
 *
 * All functions are pure and value-semantic; they are safe to call from any
 * number of threads simultaneously.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pebblehunt {

// ---------------------------------------------------------------------------
// Errors

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeProjection : DomainError {
    using DomainError::DomainError;
};
struct OutOfHalfPlane : DomainError {
    using DomainError::DomainError;
};
struct BudgetTooSmall : DomainError {
    using DomainError::DomainError;
};
struct IndexOutOfRange : DomainError {
    using DomainError::DomainError;
};
struct LengthMismatch : DomainError {
    using DomainError::DomainError;
};
struct DegenerateSector : DomainError {
    using DomainError::DomainError;
};

// ---------------------------------------------------------------------------
// Basic types

/// Engine-wide guard on coordinate magnitude.
inline constexpr double kMaxCoordinate = 1e12;

/// A point in the plane. Pebble-separation unit = 1.
struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point() = default;
    constexpr Point(double px, double py) : x(px), y(py) {}

    constexpr Point operator+(const Point& r) const { return {x + r.x, y + r.y}; }
    constexpr Point operator-(const Point& r) const { return {x - r.x, y - r.y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Point& r) const = default;

    double norm() const { return std::hypot(x, y); }

    bool finite_in_range() const {
        return std::isfinite(x) && std::isfinite(y) &&
               std::abs(x) <= kMaxCoordinate && std::abs(y) <= kMaxCoordinate;
    }
};

inline double dist(const Point& a, const Point& b) { return (a - b).norm(); }
inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the cross product; positive when b is counterclockwise of a.
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

/// A unit direction vector. |ux^2+uy^2-1| <= 1e-12 is maintained by the
/// factory functions; use those instead of aggregate-initializing.
struct Heading {
    double ux = 1.0;
    double uy = 0.0;

    static Heading from_angle(double radians) {
        return Heading{std::cos(radians), std::sin(radians)};
    }

    /// Normalize an arbitrary nonzero vector.
    static Heading of_vector(double dx, double dy) {
        const double n = std::hypot(dx, dy);
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("Heading::of_vector: zero or non-finite vector");
        return Heading{dx / n, dy / n};
    }

    double angle() const { return std::atan2(uy, ux); }
    bool is_unit() const { return std::abs(ux * ux + uy * uy - 1.0) <= 1e-12; }

    Heading rotated_ccw90() const { return Heading{-uy, ux}; }
    Heading rotated_cw90() const { return Heading{uy, -ux}; }

    constexpr bool operator==(const Heading& r) const = default;
};

struct Ray {
    Point origin;
    Heading dir;
};

/**
 * Tolerances for associating points with rays. Constructed hit points are
 * exact in closed form but computed in floating point, so the on-ray test is
 * relative with an absolute floor. t_min is the minimum forward parameter
 * that counts as leaving the current point.
 */
struct TolerancePolicy {
    double eps_rel = 1e-9;
    double eps_abs = 1e-12;
    double t_min = 1e-9;

    void check() const {
        if (!(eps_rel > 0.0) || !(eps_abs > 0.0) || !(t_min > 0.0))
            throw std::invalid_argument("TolerancePolicy: all fields must be positive");
        if (!(eps_rel < 1e-3))
            throw std::invalid_argument("TolerancePolicy: eps_rel must be < 1e-3");
    }
};

// ---------------------------------------------------------------------------
// Ray / event queries

/**
 * Forward parameter of q along the ray r, if q lies on r.
 *
 * Returns t = projection of (q - origin) on dir when t >= t_min and the
 * perpendicular distance of q from the ray line is within
 * eps_abs + eps_rel * max(1, t); empty otherwise.
 */
inline std::optional<double> on_ray(const Point& q, const Ray& r, const TolerancePolicy& tol) {
    const Point v = q - r.origin;
    const double t = v.x * r.dir.ux + v.y * r.dir.uy;
    if (t < tol.t_min) return std::nullopt;
    const double perp = std::abs(v.x * r.dir.uy - v.y * r.dir.ux);
    if (perp > tol.eps_abs + tol.eps_rel * std::max(1.0, t)) return std::nullopt;
    return t;
}

enum class SiteLabel { Pebble, OriginP, Treasure };

/// A candidate event point for first_event.
struct Site {
    Point pos;
    SiteLabel label = SiteLabel::Pebble;
    int pebble_index = -1;  ///< index into the placement's pebble list, -1 otherwise
};

struct Hit {
    std::size_t site;  ///< index into the site list passed to first_event
    double t = 0.0;
};

inline int precedence_rank(SiteLabel l) {
    switch (l) {
        case SiteLabel::Treasure: return 2;
        case SiteLabel::OriginP: return 1;
        case SiteLabel::Pebble: return 0;
    }
    return 0;
}

/**
 * Nearest on-ray site, by forward parameter. Ties within eps_abs resolve by
 * precedence Treasure > OriginP > Pebble. Empty means the ray escapes to
 * infinity (divergence in the movement model).
 */
inline std::optional<Hit> first_event(const Ray& r, const std::vector<Site>& sites,
                                      const TolerancePolicy& tol) {
    std::optional<Hit> best;
    int best_rank = -1;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto t = on_ray(sites[i].pos, r, tol);
        if (!t) continue;
        const int rank = precedence_rank(sites[i].label);
        if (!best || *t < best->t - tol.eps_abs) {
            best = Hit{i, *t};
            best_rank = rank;
        } else if (std::abs(*t - best->t) <= tol.eps_abs && rank > best_rank) {
            best = Hit{i, *t};
            best_rank = rank;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Sector decomposition
//
// A half-plane is split into n sectors by n+1 half-lines from the origin.
// On the Right side L_i has heading pi/2 - i*pi/n (North rotating toward East
// and then South); on the Left side pi/2 + i*pi/n (North toward West/South).
// Sector S_j is the half-open wedge [L_j, L_{j+1}); points exactly on the
// terminal line L_n are assigned to S_{n-1} so classification is total.

enum class HalfPlane { Right, Left };

/// Heading of the half-line L_i out of n sectors on the given side. 0 <= i <= n.
inline Heading heading_of_line(std::uint64_t i, std::uint64_t n, HalfPlane side) {
    if (n == 0) throw std::invalid_argument("heading_of_line: n must be >= 1");
    if (i > n) throw IndexOutOfRange("heading_of_line: line index exceeds sector count");
    const double step = std::numbers::pi / static_cast<double>(n);
    const double a = side == HalfPlane::Right
                         ? std::numbers::pi / 2 - static_cast<double>(i) * step
                         : std::numbers::pi / 2 + static_cast<double>(i) * step;
    return Heading::from_angle(a);
}

/**
 * Angle of T from North, swept into the given half-plane (clockwise on the
 * Right, counterclockwise on the Left), expressed as a fraction of pi.
 * Result is in [0, 1]. This single computation backs both sector_of and the
 * cost model's bit expansion, so the two always classify identically.
 */
inline double angle_fraction(const Point& t, HalfPlane side) {
    if (t.x == 0.0 && t.y == 0.0)
        throw std::invalid_argument("angle_fraction: origin has no direction");
    const double x = side == HalfPlane::Right ? t.x : -t.x;
    if (x < 0.0) throw OutOfHalfPlane("point lies outside the requested half-plane");
    const double psi = std::numbers::pi / 2 - std::atan2(t.y, x);
    double f = psi / std::numbers::pi;
    return std::clamp(f, 0.0, 1.0);
}

/**
 * Sector index of T among n sectors on the given side, by polar angle.
 * Points on L_j belong to S_j; points on the terminal line go to S_{n-1}.
 */
inline std::uint64_t sector_of(const Point& t, std::uint64_t n, HalfPlane side) {
    if (n == 0) throw std::invalid_argument("sector_of: n must be >= 1");
    const double f = angle_fraction(t, side);
    // Exact when n is a power of two: scaling a double by 2^m never rounds.
    const double scaled = f * static_cast<double>(n);
    const auto j = static_cast<std::uint64_t>(std::floor(scaled));
    return std::min<std::uint64_t>(j, n - 1);
}

/**
 * Foot of the perpendicular from T onto the half-line from the origin with
 * the given heading. Throws NegativeProjection when the foot would fall on
 * the opposite half-line, which signals a sector-classification bug upstream.
 */
inline Point foot_of_perpendicular(const Point& t, const Heading& line_heading) {
    const double s = t.x * line_heading.ux + t.y * line_heading.uy;
    if (s < 0.0)
        throw NegativeProjection("foot_of_perpendicular: treasure projects behind the half-line");
    return Point{s * line_heading.ux, s * line_heading.uy};
}

}  // namespace pebblehunt
