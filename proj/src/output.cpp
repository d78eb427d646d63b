// output.cpp - row and structured emitters

#include "pathsum/output.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include "pathsum/errors.hpp"

namespace pathsum {
namespace {

using ordered_json = nlohmann::ordered_json;

// JSON dump with floats at fixed 17-significant-digit precision; nlohmann's
// own dump prints shortest-round-trip digits, which is reparse-exact but not
// the documented format.
void dump_json(const ordered_json& j, std::ostream& os) {
    switch (j.type()) {
        case ordered_json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << ordered_json(it.key()).dump() << ':';
                dump_json(it.value(), os);
            }
            os << '}';
            break;
        }
        case ordered_json::value_t::array: {
            os << '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) os << ',';
                first = false;
                dump_json(el, os);
            }
            os << ']';
            break;
        }
        case ordered_json::value_t::number_float:
            os << format_double(j.get<double>());
            break;
        default:
            os << j.dump();
            break;
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_rows(const ResultSet& results, std::ostream& os) {
    os << "t index re im abs2\n";
    for (const ResultRecord& r : results.records) {
        os << format_double(r.t) << ' ' << r.index << ' ' << format_double(r.re) << ' '
           << format_double(r.im) << ' ' << format_double(r.re * r.re + r.im * r.im) << '\n';
    }
}

void write_structured(const ResultSet& results, std::ostream& os) {
    ordered_json doc;
    doc["command"] = results.command;
    doc["meta"] = results.meta;
    ordered_json recs = ordered_json::array();
    for (const ResultRecord& r : results.records) {
        ordered_json rec;
        rec["t"] = r.t;
        rec["index"] = r.index;
        rec["re"] = r.re;
        rec["im"] = r.im;
        recs.push_back(std::move(rec));
    }
    doc["records"] = std::move(recs);
    doc["summary"] = results.summary;
    dump_json(doc, os);
    os << '\n';
}

void write_output(const ResultSet& results, const std::string& format,
                  const std::string& out_path) {
    std::ostringstream buf;
    if (format == "rows")
        write_rows(results, buf);
    else if (format == "structured")
        write_structured(results, buf);
    else
        throw validation_error("unknown output format '" + format + "'");

    if (out_path.empty()) {
        std::cout << buf.str();
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file '" + out_path + "'");
    os << buf.str();
    if (!os) throw std::runtime_error("write failed for output file '" + out_path + "'");
}

ResultSet parse_structured(std::istream& is) {
    ordered_json doc = ordered_json::parse(is);
    ResultSet out;
    out.command = doc.at("command").get<std::string>();
    out.meta = doc.at("meta");
    for (const auto& rec : doc.at("records")) {
        out.records.push_back(ResultRecord{rec.at("t").get<double>(),
                                           rec.at("index").get<long>(),
                                           rec.at("re").get<double>(),
                                           rec.at("im").get<double>()});
    }
    out.summary = doc.at("summary");
    return out;
}

}  // namespace pathsum
