#pragma once
/**
 * @file serialize.hpp
 * @brief Wire formats: placement JSON (bit-exact float round-trip), run
 *        result JSON, trace CSV, and the SVG trace rendering.
 *
 * The placement writer is hand-rolled so floats are always printed with 17
 * significant digits; parsing goes through nlohmann::json. CSV uses '.' as
 * the decimal separator and LF line endings. The SVG is standalone 1.1. All
 * writers are deterministic for identical inputs.
 */

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pebblehunt/placement.hpp"
#include "pebblehunt/simulator.hpp"

namespace pebblehunt {

namespace detail {

/// 17 significant digits: enough to reproduce any double bit-exactly.
inline std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string svgnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline PebbleRole role_from_name(const std::string& name, int& bit_index) {
    bit_index = 0;
    if (name == "P0") return PebbleRole::P0;
    if (name == "P1") return PebbleRole::P1;
    if (name == "P2") return PebbleRole::P2;
    if (name == "P3") return PebbleRole::P3;
    if (name == "Term1") return PebbleRole::Term1;
    if (name == "Term2") return PebbleRole::Term2;
    if (name == "FootPT") return PebbleRole::FootPT;
    if (name == "TwoA") return PebbleRole::TwoA;
    if (name == "TwoB") return PebbleRole::TwoB;
    if (name.rfind("Bit", 0) == 0 && name.size() > 3) {
        bit_index = std::stoi(name.substr(3));
        if (bit_index >= 1) return PebbleRole::Bit;
    }
    throw std::invalid_argument("unknown pebble role: " + name);
}

inline CaseTag case_from_name(const std::string& name) {
    if (name == "TwoPebble") return CaseTag::TwoPebble;
    if (name == "MainOutsideB") return CaseTag::MainOutsideB;
    if (name == "SquareRight") return CaseTag::SquareRight;
    if (name == "SquareLeft") return CaseTag::SquareLeft;
    throw std::invalid_argument("unknown placement case: " + name);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Placement JSON

inline std::string placement_to_json(const Placement& pl) {
    using detail::num17;
    std::ostringstream os;
    os << "{\n";
    os << "  \"k\": " << pl.k << ",\n";
    os << "  \"treasure\": [" << num17(pl.treasure.x) << ", " << num17(pl.treasure.y) << "],\n";
    os << "  \"orientation\": \"" << (pl.orientation == Orientation::W ? 'W' : 'E') << "\",\n";
    os << "  \"case\": \"" << case_name(pl.case_tag) << "\",\n";
    if (pl.encoding)
        os << "  \"mu\": \"" << pl.encoding->mu << "\",\n";
    else
        os << "  \"mu\": null,\n";
    os << "  \"pebbles\": [\n";
    for (std::size_t i = 0; i < pl.pebbles.size(); ++i) {
        const Pebble& p = pl.pebbles[i];
        os << "    {\"x\": " << num17(p.pos.x) << ", \"y\": " << num17(p.pos.y)
           << ", \"role\": \"" << role_name(p) << "\"}";
        os << (i + 1 < pl.pebbles.size() ? ",\n" : "\n");
    }
    os << "  ],\n";
    if (pl.travel_line)
        os << "  \"travel_line\": " << *pl.travel_line << "\n";
    else
        os << "  \"travel_line\": null\n";
    os << "}\n";
    return os.str();
}

inline Placement placement_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Placement pl;
    pl.k = j.at("k").get<int>();
    pl.treasure = Point{j.at("treasure").at(0).get<double>(), j.at("treasure").at(1).get<double>()};
    const std::string o = j.at("orientation").get<std::string>();
    if (o != "E" && o != "W") throw std::invalid_argument("orientation must be \"E\" or \"W\"");
    pl.orientation = o == "W" ? Orientation::W : Orientation::E;
    pl.case_tag = detail::case_from_name(j.at("case").get<std::string>());
    for (const auto& pj : j.at("pebbles")) {
        Pebble p;
        p.pos = Point{pj.at("x").get<double>(), pj.at("y").get<double>()};
        p.role = detail::role_from_name(pj.at("role").get<std::string>(), p.bit_index);
        pl.pebbles.push_back(p);
    }
    if (!j.at("mu").is_null()) {
        const std::string mu = j.at("mu").get<std::string>();
        if (mu.size() != static_cast<std::size_t>(pl.k - 7))
            throw LengthMismatch("placement mu length does not match the budget");
        std::uint64_t delta = 0;
        for (std::size_t i = 1; i < mu.size(); ++i) {
            if (mu[i] != '0' && mu[i] != '1')
                throw std::invalid_argument("mu must be a binary string");
            delta = (delta << 1) | (mu[i] == '1' ? 1u : 0u);
        }
        pl.encoding = encode_sector(delta, pl.k, mu[0] == '1' ? 1 : 0);
        if (pl.encoding->mu != mu) throw std::invalid_argument("inconsistent mu encoding");
    }
    if (!j.at("travel_line").is_null())
        pl.travel_line = j.at("travel_line").get<std::uint64_t>();
    pl.expected_event_script = build_expected_script(pl);
    return pl;
}

// ---------------------------------------------------------------------------
// Run result JSON + trace CSV

inline std::string run_result_to_json(const RunResult& r) {
    using detail::num17;
    std::ostringstream os;
    os << "{\n";
    os << "  \"status\": \"" << status_name(r.status) << "\",\n";
    os << "  \"total_cost\": " << num17(r.total_cost) << ",\n";
    os << "  \"decode_cost\": " << num17(r.decode_cost) << ",\n";
    os << "  \"sector_cost\": " << num17(r.sector_cost) << ",\n";
    if (r.decoded) {
        os << "  \"mu\": \"" << r.decoded->mu << "\",\n";
        os << "  \"delta\": " << r.decoded->delta << ",\n";
        os << "  \"travel_line\": " << r.decoded->travel_line << ",\n";
    } else {
        os << "  \"mu\": null,\n  \"delta\": null,\n  \"travel_line\": null,\n";
    }
    os << "  \"legs\": " << r.legs.size() << "\n";
    os << "}\n";
    return os.str();
}

inline std::string trace_to_csv(const RunResult& r) {
    using detail::num17;
    std::ostringstream os;
    os << "start_x,start_y,heading_deg,end_x,end_y,event,length\n";
    for (const auto& leg : r.legs) {
        double deg = leg.heading.angle() * 180.0 / std::numbers::pi;
        if (deg < 0.0) deg += 360.0;
        os << num17(leg.start.x) << ',' << num17(leg.start.y) << ',' << num17(deg) << ','
           << num17(leg.end.x) << ',' << num17(leg.end.y) << ',' << leg.event.name() << ','
           << num17(leg.length) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// SVG rendering

/**
 * Render a run as a standalone SVG: legs as a polyline, pebbles as circles
 * of radius 0.15, the treasure as a cross, optionally the sector lines. The
 * view box fits the finite geometry; a diverged leg is drawn dashed and
 * leaves the canvas through a small marker at its last real event.
 */
inline std::string trace_to_svg(const Placement& pl, const RunResult& r,
                                bool draw_sectors = false) {
    using detail::svgnum;
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    const auto grow = [&](const Point& p) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    };
    for (const auto& p : pl.pebbles) grow(p.pos);
    grow(pl.treasure);
    for (const auto& leg : r.legs)
        if (!leg.event.truncated) grow(leg.end);

    const double pad = std::max(1.0, 0.05 * std::max(max_x - min_x, max_y - min_y));
    min_x -= pad;
    max_x += pad;
    min_y -= pad;
    max_y += pad;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    // SVG y grows downward; emit (x, -y) so North is up.
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
       << svgnum(min_x) << ' ' << svgnum(-max_y) << ' ' << svgnum(max_x - min_x) << ' '
       << svgnum(max_y - min_y) << "\">\n";

    if (draw_sectors && pl.case_tag == CaseTag::MainOutsideB && pl.k >= 9) {
        const std::uint64_t n = std::uint64_t{1} << (pl.k - 8);
        const double reach = std::max({std::abs(min_x), std::abs(max_x), std::abs(min_y),
                                       std::abs(max_y)});
        os << "  <g stroke=\"#cccccc\" stroke-width=\"0.03\">\n";
        for (std::uint64_t i = 0; i <= n; ++i) {
            const Heading h = heading_of_line(i, n, pl.sector_side());
            os << "    <line x1=\"0\" y1=\"0\" x2=\"" << svgnum(reach * h.ux) << "\" y2=\""
               << svgnum(-reach * h.uy) << "\"/>\n";
        }
        os << "  </g>\n";
    }

    if (!r.legs.empty()) {
        os << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.06\" points=\"";
        os << svgnum(r.legs.front().start.x) << ',' << svgnum(-r.legs.front().start.y);
        for (const auto& leg : r.legs) {
            if (leg.event.truncated) break;  // dashed tail drawn separately
            os << ' ' << svgnum(leg.end.x) << ',' << svgnum(-leg.end.y);
        }
        os << "\"/>\n";
        const auto& last = r.legs.back();
        if (last.event.truncated) {
            os << "  <line stroke=\"#1f77b4\" stroke-width=\"0.06\" stroke-dasharray=\"0.3 0.2\""
               << " x1=\"" << svgnum(last.start.x) << "\" y1=\"" << svgnum(-last.start.y)
               << "\" x2=\"" << svgnum(last.end.x) << "\" y2=\"" << svgnum(-last.end.y)
               << "\"/>\n";
            os << "  <circle cx=\"" << svgnum(last.start.x) << "\" cy=\"" << svgnum(-last.start.y)
               << "\" r=\"0.25\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.06\"/>\n";
        }
    }

    os << "  <g fill=\"none\" stroke=\"#000000\" stroke-width=\"0.05\">\n";
    for (const auto& p : pl.pebbles)
        os << "    <circle cx=\"" << svgnum(p.pos.x) << "\" cy=\"" << svgnum(-p.pos.y)
           << "\" r=\"0.15\"/>\n";
    os << "  </g>\n";

    const double c = 0.3;
    os << "  <g stroke=\"#d62728\" stroke-width=\"0.08\">\n";
    os << "    <line x1=\"" << svgnum(pl.treasure.x - c) << "\" y1=\"" << svgnum(-pl.treasure.y - c)
       << "\" x2=\"" << svgnum(pl.treasure.x + c) << "\" y2=\"" << svgnum(-pl.treasure.y + c)
       << "\"/>\n";
    os << "    <line x1=\"" << svgnum(pl.treasure.x - c) << "\" y1=\"" << svgnum(-pl.treasure.y + c)
       << "\" x2=\"" << svgnum(pl.treasure.x + c) << "\" y2=\"" << svgnum(-pl.treasure.y - c)
       << "\"/>\n";
    os << "  </g>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace pebblehunt
