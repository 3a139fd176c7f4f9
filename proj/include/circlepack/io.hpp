#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circlepack/instance.hpp"
#include "circlepack/model.hpp"

namespace circlepack {

struct SolutionRow {
    int index = 0;  // 1-based circle number
    double r = 0.0;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const SolutionRow&, const SolutionRow&) = default;
};

/// On-disk solution: JSON header plus one row per circle.
struct SolutionFile {
    std::optional<Family> family;
    int n = 0;
    double L = 0.0;
    std::string version;
    std::uint64_t seed = 0;
    std::optional<double> wall_time;  // seconds; absent in reproducible output
    std::vector<SolutionRow> rows;

    friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

class SolutionParseError : public std::runtime_error {
public:
    SolutionParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

SolutionFile to_solution_file(const Pattern& pattern, std::optional<Family> family, std::uint64_t seed,
                              std::optional<double> wall_time);
Pattern to_pattern(const SolutionFile& solution);

std::string serialize_solution(const SolutionFile& solution);

/// Throws SolutionParseError; syntax errors carry 1-based line/column,
/// schema errors point at the start of the document.
SolutionFile parse_solution(std::string_view text);

/// One `i x y r` line per circle, 17 significant digits.
std::string to_plain_text(const SolutionFile& solution);

struct VerifyReport {
    bool ok = false;
    double worst_depth = 0.0;
    std::string worst_item;  // e.g. "pair 3-7" or "circle 5 / vertical border"
    double energy = 0.0;
    double max_pain = 0.0;
    int max_pain_circle = 0;
    std::vector<std::string> issues;  // radius mismatches and similar
};

/// Recomputes every border and pair depth; ok iff all <= tol and the radii
/// match the declared family.
VerifyReport verify_solution(const SolutionFile& solution, double tol);

/// Container outline and numbered circles in a 1000-unit view box.
std::string render_svg(const SolutionFile& solution);

std::string read_file(const std::string& path);
/// Throws std::runtime_error if the path cannot be written.
void write_file(const std::string& path, std::string_view contents);

}  // namespace circlepack
