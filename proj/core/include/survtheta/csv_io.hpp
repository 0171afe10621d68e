#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "survtheta/dataset.hpp"

namespace survtheta {

/// Malformed input; `row()` is the 1-based line number in the file (the
/// header is row 1).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

struct ParsedInput {
    std::vector<Observation> observations;
    std::vector<std::string> cohort_names;  // index = cohort label
    std::vector<std::string> warnings;
};

// Input schema: header row with columns time, censor, cohort, population in
// any order. censor is 1 for a right-censored row and 0 for an observed
// event. Cohort values are arbitrary strings, numbered by first appearance.
// Other columns are ignored with a warning.
ParsedInput read_csv(std::istream& in);
ParsedInput read_csv(const std::filesystem::path& path);

/// Parses and validates. Throws ParseError or ValidationError.
Dataset load_dataset(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);
Dataset load_dataset(std::istream& in, std::vector<std::string>* warnings = nullptr);

/// Writes `ds` in the input schema; read_csv of the output reproduces it.
void write_csv(std::ostream& out, const Dataset& ds);

}  // namespace survtheta
