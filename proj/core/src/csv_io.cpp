#include "survtheta/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <system_error>
#include <unordered_map>

namespace survtheta {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::size_t row, const char* column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(row, std::string("cannot parse ") + column + " value '" + std::string(s) + "'");
    }
    return v;
}

int parse_int(std::string_view s, std::size_t row, const char* column) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(row, std::string("cannot parse ") + column + " value '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

ParsedInput read_csv(std::istream& in) {
    ParsedInput out;
    std::string line;
    std::size_t row = 0;

    if (!std::getline(in, line)) throw ParseError(1, "missing header row");
    ++row;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split(line);
    constexpr std::string_view required[] = {"time", "censor", "cohort", "population"};
    std::size_t col[4];
    for (std::size_t k = 0; k < 4; ++k) {
        auto it = std::find(header.begin(), header.end(), required[k]);
        if (it == header.end()) throw ParseError(1, "header lacks column '" + std::string(required[k]) + "'");
        col[k] = static_cast<std::size_t>(it - header.begin());
    }
    for (auto h : header) {
        if (std::find(std::begin(required), std::end(required), h) == std::end(required)) {
            out.warnings.push_back("ignoring unknown column '" + std::string(h) + "'");
        }
    }

    std::unordered_map<std::string, int> labels;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw ParseError(row, "expected " + std::to_string(header.size()) + " fields, found " +
                                      std::to_string(fields.size()));
        }
        Observation o;
        o.time = parse_double(fields[col[0]], row, "time");
        if (!std::isfinite(o.time) || !(o.time > 0.0)) throw ParseError(row, "time must be positive");
        const int censor = parse_int(fields[col[1]], row, "censor");
        if (censor != 0 && censor != 1) throw ParseError(row, "censor must be 0 or 1");
        o.event = censor == 0;
        const std::string cohort(fields[col[2]]);
        if (cohort.empty()) throw ParseError(row, "cohort is empty");
        auto [it, inserted] = labels.try_emplace(cohort, static_cast<int>(out.cohort_names.size()));
        if (inserted) out.cohort_names.push_back(cohort);
        o.cohort = it->second;
        const int pop = parse_int(fields[col[3]], row, "population");
        if (pop != 1 && pop != 2) throw ParseError(row, "population must be 1 or 2");
        o.population = static_cast<Population>(pop);
        out.observations.push_back(o);
    }
    return out;
}

ParsedInput read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_csv(in);
}

Dataset load_dataset(std::istream& in, std::vector<std::string>* warnings) {
    ParsedInput parsed = read_csv(in);
    if (warnings) *warnings = parsed.warnings;
    return Dataset::validate(std::move(parsed.observations), std::move(parsed.cohort_names));
}

Dataset load_dataset(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load_dataset(in, warnings);
}

void write_csv(std::ostream& out, const Dataset& ds) {
    out << "time,censor,cohort,population\n";
    char buf[32];
    for (const auto& o : ds.observations()) {
        const auto res = std::to_chars(buf, buf + sizeof buf, o.time);
        out.write(buf, res.ptr - buf);
        out << ',' << (o.event ? 0 : 1) << ',';
        if (ds.cohort_names().empty()) out << o.cohort;
        else out << ds.cohort_names().at(static_cast<std::size_t>(o.cohort));
        out << ',' << static_cast<int>(o.population) << '\n';
    }
}

}  // namespace survtheta
