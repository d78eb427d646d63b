// output.hpp - result container and the two emission formats
//
// rows:       one line per record, columns "t index re im abs2", 17
//             significant digits, single spaces, no locale dependence.
// structured: a single JSON document mirroring the ResultSet; numbers are
//             printed with 17 significant digits so reparsing is exact.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace pathsum {

struct ResultRecord {
    double t = 0.0;
    long index = 0;
    double re = 0.0;
    double im = 0.0;

    bool operator==(const ResultRecord&) const = default;
};

struct ResultSet {
    std::string command;
    nlohmann::ordered_json meta;
    std::vector<ResultRecord> records;
    nlohmann::ordered_json summary;

    bool operator==(const ResultSet&) const = default;
};

/// Shortest-unambiguous decimal with 17 significant digits.
std::string format_double(double v);

void write_rows(const ResultSet& results, std::ostream& os);
void write_structured(const ResultSet& results, std::ostream& os);

/// Emit to a file (or stdout when path is empty); I/O failures name the path.
void write_output(const ResultSet& results, const std::string& format,
                  const std::string& out_path);

/// Inverse of write_structured; used by the round-trip checks.
ResultSet parse_structured(std::istream& is);

}  // namespace pathsum
