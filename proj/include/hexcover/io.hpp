#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexcover/covering.hpp"
#include "hexcover/geometry.hpp"
#include "hexcover/hex_lattice.hpp"

namespace hexcover {

struct PolygonFile {
    std::string name;
    std::vector<Point2> vertices;
};

namespace detail {

// 17 significant digits round-trip IEEE doubles exactly.
inline std::string fmt_double(double v) {
    if (v == 0.0) return "0";  // JSON readers drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline double number_field(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + " must be a number");
    return j.get<double>();
}

inline Point2 point_field(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + " must be an [x, y] pair");
    return {number_field(j[0], where + "[0]"), number_field(j[1], where + "[1]")};
}

}  // namespace detail

inline PolygonFile read_polygon_file(const std::string& path) {
    const nlohmann::json j = detail::parse_json_file(path);
    if (!j.is_object()) throw ParseError("polygon file must be a JSON object");
    if (!j.contains("vertices")) throw ParseError("missing field: vertices");
    const auto& verts = j["vertices"];
    if (!verts.is_array() || verts.size() < 3) throw ParseError("vertices must be an array of at least 3 points");
    PolygonFile out;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("name must be a string");
        out.name = j["name"].get<std::string>();
    }
    for (size_t i = 0; i < verts.size(); ++i)
        out.vertices.push_back(detail::point_field(verts[i], "vertices[" + std::to_string(i) + "]"));
    return out;
}

inline void write_polygon_file(const PolygonFile& poly, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << "{\n";
    if (!poly.name.empty()) out << "  \"name\": " << nlohmann::json(poly.name).dump() << ",\n";
    out << "  \"vertices\": [\n";
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
        out << "    [" << detail::fmt_double(poly.vertices[i].x) << ", " << detail::fmt_double(poly.vertices[i].y)
            << "]" << (i + 1 < poly.vertices.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

// Covering files are written with a hand-rolled serializer so the field
// order and number formatting are fixed; write -> read -> write is
// byte-identical.
inline void write_covering_file(const Covering& cov, const std::string& path) {
    std::ostringstream out;
    const auto pt = [](Point2 p) {
        return "[" + detail::fmt_double(p.x) + ", " + detail::fmt_double(p.y) + "]";
    };
    out << "{\n";
    out << "  \"algorithm\": " << nlohmann::json(cov.algorithm).dump() << ",\n";
    out << "  \"theta\": " << detail::fmt_double(cov.theta) << ",\n";
    out << "  \"translation\": " << pt(cov.translation) << ",\n";
    out << "  \"count\": " << cov.count << ",\n";
    out << "  \"centers\": [";
    for (size_t i = 0; i < cov.centers.size(); ++i)
        out << (i ? ", " : "") << pt(cov.centers[i]);
    out << "],\n";
    out << "  \"bounds\": {\n";
    out << "    \"toth_upper\": " << cov.bounds.toth_upper << ",\n";
    out << "    \"improved_upper\": " << cov.bounds.improved_upper << ",\n";
    out << "    \"lower_asymptotic\": " << detail::fmt_double(cov.bounds.lower_asymptotic) << ",\n";
    out << "    \"lower_explicit\": " << detail::fmt_double(cov.bounds.lower_explicit) << ",\n";
    out << "    \"ratio_bound\": " << detail::fmt_double(cov.bounds.ratio_bound) << "\n";
    out << "  },\n";
    out << "  \"diagnostics\": {\n";
    out << "    \"candidates_evaluated\": " << cov.diagnostics.candidates_evaluated << ",\n";
    out << "    \"runtime_ms\": " << detail::fmt_double(cov.diagnostics.runtime_ms) << ",\n";
    out << "    \"budget_hit\": " << (cov.diagnostics.budget_hit ? "true" : "false") << "\n";
    out << "  }\n";
    out << "}\n";
    std::ofstream file(path);
    if (!file) throw ParseError("cannot write file: " + path);
    file << out.str();
}

inline Covering read_covering_file(const std::string& path) {
    const nlohmann::json j = detail::parse_json_file(path);
    if (!j.is_object()) throw ParseError("covering file must be a JSON object");
    Covering cov;
    const auto need = [&](const char* field) -> const nlohmann::json& {
        if (!j.contains(field)) throw ParseError(std::string("missing field: ") + field);
        return j[field];
    };
    if (!need("algorithm").is_string()) throw ParseError("algorithm must be a string");
    cov.algorithm = j["algorithm"].get<std::string>();
    cov.theta = detail::number_field(need("theta"), "theta");
    cov.translation = detail::point_field(need("translation"), "translation");
    if (!need("count").is_number_integer()) throw ParseError("count must be an integer");
    cov.count = j["count"].get<long long>();
    const auto& centers = need("centers");
    if (!centers.is_array()) throw ParseError("centers must be an array");
    for (size_t i = 0; i < centers.size(); ++i)
        cov.centers.push_back(detail::point_field(centers[i], "centers[" + std::to_string(i) + "]"));
    if (cov.count != static_cast<long long>(cov.centers.size()))
        throw ParseError("count does not match the number of centers");

    const auto& bounds = need("bounds");
    if (!bounds.is_object()) throw ParseError("bounds must be an object");
    const auto bnum = [&](const char* field) -> double {
        if (!bounds.contains(field)) throw ParseError(std::string("missing field: bounds.") + field);
        return detail::number_field(bounds[field], std::string("bounds.") + field);
    };
    cov.bounds.toth_upper = static_cast<long long>(bnum("toth_upper"));
    cov.bounds.improved_upper = static_cast<long long>(bnum("improved_upper"));
    cov.bounds.lower_asymptotic = bnum("lower_asymptotic");
    cov.bounds.lower_explicit = bnum("lower_explicit");
    cov.bounds.ratio_bound = bnum("ratio_bound");

    const auto& diag = need("diagnostics");
    if (!diag.is_object()) throw ParseError("diagnostics must be an object");
    if (!diag.contains("candidates_evaluated") || !diag.contains("runtime_ms") || !diag.contains("budget_hit"))
        throw ParseError("diagnostics must hold candidates_evaluated, runtime_ms, budget_hit");
    cov.diagnostics.candidates_evaluated = diag["candidates_evaluated"].get<long long>();
    cov.diagnostics.runtime_ms = detail::number_field(diag["runtime_ms"], "diagnostics.runtime_ms");
    if (!diag["budget_hit"].is_boolean()) throw ParseError("diagnostics.budget_hit must be a boolean");
    cov.diagnostics.budget_hit = diag["budget_hit"].get<bool>();
    return cov;
}

// SVG with the region outline, the chosen hexagon cells (when the
// covering is lattice-based), and one unit circle per center. The
// viewBox spans the window square around the region.
inline void render_svg(const std::vector<Point2>& polygon_vertices, const Covering& cov,
                       const std::string& path) {
    const Point2 c = detail::ring_centroid(polygon_vertices);
    double d = 0.0;
    for (const Point2& v : polygon_vertices)
        for (const Point2& w : polygon_vertices) d = std::max(d, distance(v, w));
    const double half = d + 3.0;

    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(c.x - half) << " " << num(-c.y - half)
        << " " << num(2 * half) << " " << num(2 * half) << "\">\n";
    out << "<g transform=\"scale(1,-1)\" stroke-width=\"0.03\">\n";

    // Hexagon cells, drawn only when the centers sit on the lattice.
    bool lattice = !cov.centers.empty();
    for (const Point2& center : cov.centers) {
        const Point2 in_lattice = input_to_lattice(center, cov.translation, cov.theta, c);
        if (distance(in_lattice, lattice_point(cell_containing(in_lattice))) > 1e-6) lattice = false;
    }
    if (lattice) {
        for (const Point2& center : cov.centers) {
            out << "<polygon fill=\"#fdf6e3\" stroke=\"#b58900\" points=\"";
            for (int k = 0; k < 6; ++k) {
                const Point2 v = center + rotate_point(voronoi_hexagon().vertex(k), cov.theta);
                out << num(v.x) << "," << num(v.y) << (k < 5 ? " " : "");
            }
            out << "\"/>\n";
        }
    }

    out << "<polygon fill=\"#268bd233\" stroke=\"#268bd2\" points=\"";
    for (size_t i = 0; i < polygon_vertices.size(); ++i)
        out << num(polygon_vertices[i].x) << "," << num(polygon_vertices[i].y)
            << (i + 1 < polygon_vertices.size() ? " " : "");
    out << "\"/>\n";

    for (const Point2& center : cov.centers)
        out << "<circle cx=\"" << num(center.x) << "\" cy=\"" << num(center.y)
            << "\" r=\"1\" fill=\"none\" stroke=\"#dc322f\"/>\n";

    out << "</g>\n</svg>\n";
}

}  // namespace hexcover
