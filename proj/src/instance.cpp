#include "circlepack/instance.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace circlepack {

namespace detail {
extern const std::string_view kBuiltinRecordsCsv;
}

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Linear: return "linear";
        case Family::Sqrt: return "sqrt";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view text) {
    if (text == "linear") return Family::Linear;
    if (text == "sqrt") return Family::Sqrt;
    return std::nullopt;
}

double family_radius(Family family, int index) {
    return family == Family::Linear ? static_cast<double>(index) : std::sqrt(static_cast<double>(index));
}

Instance make_instance(Family family, int n) {
    if (n < 1) throw std::invalid_argument("make_instance: n must be positive");
    Instance inst{family, {}};
    inst.radii.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) inst.radii.push_back(family_radius(family, i));
    return inst;
}

std::string_view to_string(RecordSource source) {
    switch (source) {
        case RecordSource::Asgo: return "ASGO";
        case RecordSource::Packomania: return "Packomania";
        case RecordSource::PasPci: return "PAS-PCI";
    }
    return "unknown";
}

std::optional<RecordSource> parse_record_source(std::string_view text) {
    if (text == "ASGO") return RecordSource::Asgo;
    if (text == "Packomania") return RecordSource::Packomania;
    if (text == "PAS-PCI") return RecordSource::PasPci;
    return std::nullopt;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("records line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

RecordsTable RecordsTable::parse(std::string_view csv) {
    RecordsTable table;
    std::size_t line_no = 0;
    bool seen_header = false;
    std::size_t start = 0;
    while (start < csv.size()) {
        auto end = csv.find('\n', start);
        if (end == std::string_view::npos) end = csv.size();
        auto line = trim(csv.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (!seen_header) {
            if (line != "family,n,source,L") fail(line_no, "expected header 'family,n,source,L'");
            seen_header = true;
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != 4) fail(line_no, "expected 4 columns");
        auto family = parse_family(trim(cells[0]));
        if (!family) fail(line_no, "unknown family");
        int n = 0;
        auto ncell = trim(cells[1]);
        if (auto [p, ec] = std::from_chars(ncell.data(), ncell.data() + ncell.size(), n);
            ec != std::errc{} || p != ncell.data() + ncell.size() || n < 1) {
            fail(line_no, "bad n");
        }
        auto source = parse_record_source(trim(cells[2]));
        if (!source) fail(line_no, "unknown source");
        std::string printed(trim(cells[3]));
        char* parse_end = nullptr;
        double L = std::strtod(printed.c_str(), &parse_end);
        if (parse_end != printed.c_str() + printed.size() || !std::isfinite(L) || L <= 0.0) {
            fail(line_no, "bad L");
        }
        table.entries_.push_back({*family, n, *source, L, std::move(printed)});
    }
    if (!seen_header) throw std::runtime_error("records: missing header");
    return table;
}

RecordsTable RecordsTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const RecordsTable& RecordsTable::builtin() {
    static const RecordsTable table = parse(detail::kBuiltinRecordsCsv);
    return table;
}

RecordsTable RecordsTable::from_environment() {
    if (const char* path = std::getenv("CIRCLEPACK_RECORDS"); path != nullptr && *path != '\0') {
        return load(path);
    }
    return builtin();
}

std::optional<double> RecordsTable::lookup(Family family, int n, RecordSource source) const {
    for (const auto& e : entries_) {
        if (e.family == family && e.n == n && e.source == source) return e.L;
    }
    return std::nullopt;
}

std::optional<double> known_best(Family family, int n) {
    return RecordsTable::builtin().lookup(family, n, RecordSource::PasPci);
}

}  // namespace circlepack
