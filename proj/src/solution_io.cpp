#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "circlepack/io.hpp"

namespace circlepack {

using ordered_json = nlohmann::ordered_json;

SolutionFile to_solution_file(const Pattern& pattern, std::optional<Family> family, std::uint64_t seed,
                              std::optional<double> wall_time) {
    SolutionFile s;
    s.family = family;
    s.n = static_cast<int>(pattern.size());
    s.L = pattern.side();
    s.version = CIRCLEPACK_VERSION;
    s.seed = seed;
    s.wall_time = wall_time;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const auto c = pattern.center(i);
        s.rows.push_back({static_cast<int>(i + 1), pattern.radius(i), c.x, c.y});
    }
    return s;
}

Pattern to_pattern(const SolutionFile& solution) {
    auto radii = std::make_shared<Radii>();
    std::vector<Point> centers;
    for (const auto& row : solution.rows) {
        radii->push_back(row.r);
        centers.push_back({row.x, row.y});
    }
    return Pattern(std::move(radii), centers, solution.L);
}

std::string serialize_solution(const SolutionFile& s) {
    ordered_json doc;
    doc["format"] = "circlepack-solution";
    doc["version"] = s.version;
    doc["family"] = s.family ? ordered_json(std::string(to_string(*s.family))) : ordered_json(nullptr);
    doc["n"] = s.n;
    doc["L"] = s.L;
    doc["seed"] = s.seed;
    doc["wall_time"] = s.wall_time ? ordered_json(*s.wall_time) : ordered_json(nullptr);
    auto circles = ordered_json::array();
    for (const auto& row : s.rows) {
        circles.push_back(ordered_json{{"i", row.index}, {"r", row.r}, {"x", row.x}, {"y", row.y}});
    }
    doc["circles"] = std::move(circles);
    return doc.dump(2) + "\n";
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

[[noreturn]] void schema_error(const std::string& what) { throw SolutionParseError(what, 1, 1); }

double finite_number(const ordered_json& j, const char* field) {
    if (!j.is_number()) schema_error(std::string("field '") + field + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema_error(std::string("field '") + field + "' must be finite");
    return v;
}

}  // namespace

SolutionFile parse_solution(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw SolutionParseError(fmt::format("syntax error at line {}, column {}", line, column), line, column);
    }
    if (!doc.is_object()) schema_error("solution must be a JSON object");
    for (const char* key : {"n", "L", "circles"}) {
        if (!doc.contains(key)) schema_error(std::string("missing field '") + key + "'");
    }
    SolutionFile s;
    if (doc.contains("family") && !doc["family"].is_null()) {
        if (!doc["family"].is_string()) schema_error("field 'family' must be a string");
        s.family = parse_family(doc["family"].get<std::string>());
        if (!s.family) schema_error("unknown family '" + doc["family"].get<std::string>() + "'");
    }
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) schema_error("field 'n' must be a positive integer");
    s.n = doc["n"].get<int>();
    s.L = finite_number(doc["L"], "L");
    if (s.L <= 0.0) schema_error("field 'L' must be positive");
    if (doc.contains("version") && doc["version"].is_string()) s.version = doc["version"].get<std::string>();
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
            schema_error("field 'seed' must be an unsigned integer");
        }
        s.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("wall_time") && !doc["wall_time"].is_null()) s.wall_time = finite_number(doc["wall_time"], "wall_time");

    const auto& circles = doc["circles"];
    if (!circles.is_array()) schema_error("field 'circles' must be an array");
    if (circles.size() != static_cast<std::size_t>(s.n)) {
        schema_error(fmt::format("expected {} circles, found {}", s.n, circles.size()));
    }
    std::vector<bool> seen(static_cast<std::size_t>(s.n), false);
    for (const auto& c : circles) {
        if (!c.is_object()) schema_error("circle entries must be objects");
        for (const char* key : {"i", "r", "x", "y"}) {
            if (!c.contains(key)) schema_error(std::string("circle entry missing '") + key + "'");
        }
        if (!c["i"].is_number_integer()) schema_error("circle index must be an integer");
        SolutionRow row{c["i"].get<int>(), finite_number(c["r"], "r"), finite_number(c["x"], "x"),
                        finite_number(c["y"], "y")};
        if (row.index < 1 || row.index > s.n || seen[static_cast<std::size_t>(row.index - 1)]) {
            schema_error(fmt::format("circle index {} out of range or repeated", row.index));
        }
        if (row.r <= 0.0) schema_error(fmt::format("circle {} has non-positive radius", row.index));
        seen[static_cast<std::size_t>(row.index - 1)] = true;
        s.rows.push_back(row);
    }
    std::sort(s.rows.begin(), s.rows.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return s;
}

std::string to_plain_text(const SolutionFile& s) {
    std::string out;
    for (const auto& row : s.rows) out += fmt::format("{} {:.17g} {:.17g} {:.17g}\n", row.index, row.x, row.y, row.r);
    return out;
}

VerifyReport verify_solution(const SolutionFile& s, double tol) {
    VerifyReport rep;
    if (s.family) {
        for (const auto& row : s.rows) {
            const double expect = family_radius(*s.family, row.index);
            if (std::abs(row.r - expect) > 1e-12 * expect) {
                rep.issues.push_back(fmt::format("circle {} radius {:.17g} does not match {} family value {:.17g}",
                                                 row.index, row.r, to_string(*s.family), expect));
            }
        }
    }
    const Pattern p = to_pattern(s);
    const auto report = energy(p);
    rep.energy = report.total;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == 0 || report.pain[i] > rep.max_pain) {
            rep.max_pain = report.pain[i];
            rep.max_pain_circle = static_cast<int>(i + 1);
        }
        const auto& b = report.border[i];
        if (b.vertical > rep.worst_depth) {
            rep.worst_depth = b.vertical;
            rep.worst_item = fmt::format("circle {} / vertical border", i + 1);
        }
        if (b.horizontal > rep.worst_depth) {
            rep.worst_depth = b.horizontal;
            rep.worst_item = fmt::format("circle {} / horizontal border", i + 1);
        }
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const double d = pair_depth(p.center(i), p.radius(i), p.center(j), p.radius(j));
            if (d > rep.worst_depth) {
                rep.worst_depth = d;
                rep.worst_item = fmt::format("pair {}-{}", i + 1, j + 1);
            }
        }
    }
    rep.ok = rep.worst_depth <= tol && rep.issues.empty();
    return rep;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace circlepack
