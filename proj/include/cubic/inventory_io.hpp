#pragma once

// Inventory cache: one metadata line, a CSV header, one row per class.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cubic/enumerate.hpp"

namespace cubic {

inline constexpr const char* kInventoryHeader = "a,b,c,d,disc,sig,content,aut,maximal,ntr";

struct InventoryMeta {
    i128 lo = 0, hi = 0;
    std::string filter;

    std::string line() const { return "# range=" + to_string(lo) + ".." + to_string(hi) + " filter=" + filter; }
    bool operator==(const InventoryMeta&) const = default;
};

inline void write_inventory_csv(std::ostream& os, const InventoryMeta& meta, const std::vector<ClassRecord>& rows) {
    os << meta.line() << "\n" << kInventoryHeader << "\n";
    for (const auto& r : rows) {
        os << r.form.a << "," << r.form.b << "," << r.form.c << "," << r.form.d << "," << to_string(r.disc) << ","
           << (r.sig == Signature::PositiveDisc ? "+" : "-") << "," << r.content << "," << r.aut << ","
           << (r.maximal ? 1 : 0) << "," << (r.ntr ? 1 : 0) << "\n";
    }
}

inline InventoryMeta parse_inventory_meta(const std::string& line) {
    InventoryMeta m;
    const std::string range_key = "# range=", filter_key = " filter=";
    auto fpos = line.find(filter_key);
    if (line.rfind(range_key, 0) != 0 || fpos == std::string::npos)
        throw DomainError("malformed inventory metadata line");
    std::string range = line.substr(range_key.size(), fpos - range_key.size());
    auto dots = range.find("..");
    if (dots == std::string::npos) throw DomainError("malformed inventory range");
    m.lo = parse_i128(range.substr(0, dots));
    m.hi = parse_i128(range.substr(dots + 2));
    m.filter = line.substr(fpos + filter_key.size());
    return m;
}

// Reads a cache written by write_inventory_csv; throws if its metadata
// differs from expect.
inline std::vector<ClassRecord> read_inventory_csv(std::istream& is, const InventoryMeta& expect) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("empty inventory file");
    if (!(parse_inventory_meta(line) == expect)) throw DomainError("inventory cache was built for another range or filter");
    if (!std::getline(is, line) || line != kInventoryHeader) throw DomainError("missing inventory header");
    std::vector<ClassRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 10) throw DomainError("inventory row with wrong field count");
        ClassRecord r;
        r.form = {narrow_i64(parse_i128(cells[0])), narrow_i64(parse_i128(cells[1])), narrow_i64(parse_i128(cells[2])),
                  narrow_i64(parse_i128(cells[3]))};
        r.disc = parse_i128(cells[4]);
        r.sig = cells[5] == "+" ? Signature::PositiveDisc : Signature::NegativeDisc;
        r.content = narrow_i64(parse_i128(cells[6]));
        r.aut = static_cast<int>(parse_i128(cells[7]));
        r.maximal = cells[8] == "1";
        r.ntr = cells[9] == "1";
        out.push_back(r);
    }
    return out;
}

}  // namespace cubic
