#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace circlepack {

/// Benchmark families: r_i = i and r_i = sqrt(i).
enum class Family { Linear, Sqrt };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view text);

/// Radii of one benchmark case. radii[k] belongs to circle k+1.
struct Instance {
    Family family;
    std::vector<double> radii;

    [[nodiscard]] std::size_t size() const { return radii.size(); }
};

/// Throws std::invalid_argument when n == 0.
Instance make_instance(Family family, int n);

/// Radius of circle `index` (1-based) under the family rule.
double family_radius(Family family, int index);

enum class RecordSource { Asgo, Packomania, PasPci };

std::string_view to_string(RecordSource source);
std::optional<RecordSource> parse_record_source(std::string_view text);

struct RecordEntry {
    Family family;
    int n;
    RecordSource source;
    double L;
    std::string printed;  // digits exactly as they appear in the file
};

/// Known-best container sizes, one row per (family, n, source).
class RecordsTable {
public:
    RecordsTable() = default;

    /// Parses `family,n,source,L` CSV. Throws std::runtime_error with the
    /// offending line number on malformed input.
    static RecordsTable parse(std::string_view csv);
    static RecordsTable load(const std::filesystem::path& path);

    /// Table compiled into the library from data/records.csv.
    static const RecordsTable& builtin();

    /// $CIRCLEPACK_RECORDS when set, otherwise the built-in table.
    static RecordsTable from_environment();

    [[nodiscard]] std::optional<double> lookup(Family family, int n, RecordSource source) const;
    [[nodiscard]] std::span<const RecordEntry> entries() const { return entries_; }

private:
    std::vector<RecordEntry> entries_;
};

/// Best PAS-PCI container size for (family, n), if tabulated.
std::optional<double> known_best(Family family, int n);

}  // namespace circlepack
