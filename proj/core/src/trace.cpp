#include "burgers/trace.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

namespace {

constexpr std::array<const char*, 8> kHeader = {
    "t", "l2_v", "h1_v", "U", "l2_z", "h1_z", "W", "control_l2"};

std::array<std::optional<std::vector<double>>*, 7> channels(Trace& tr) {
    return {&tr.l2_v, &tr.h1_v, &tr.U, &tr.l2_z, &tr.h1_z, &tr.W, &tr.control_l2};
}

std::array<const std::optional<std::vector<double>>*, 7> channels(const Trace& tr) {
    return {&tr.l2_v, &tr.h1_v, &tr.U, &tr.l2_z, &tr.h1_z, &tr.W, &tr.control_l2};
}

void format_value(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

void Trace::truncate(std::size_t n) {
    if (n >= t.size()) return;
    t.resize(n);
    for (auto* ch : channels(*this))
        if (ch->has_value()) (*ch)->resize(n);
}

void write_csv(const Trace& trace, std::ostream& os) {
    std::string line;
    for (std::size_t i = 0; i < kHeader.size(); ++i) {
        if (i) line += ',';
        line += kHeader[i];
    }
    line += '\n';
    os << line;
    const auto chans = channels(trace);
    for (std::size_t row = 0; row < trace.rows(); ++row) {
        line.clear();
        format_value(line, trace.t[row]);
        for (const auto* ch : chans) {
            line += ',';
            if (ch->has_value()) format_value(line, (**ch)[row]);
        }
        line += '\n';
        os << line;
    }
}

void write_csv(const Trace& trace, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_csv(trace, os);
}

Trace read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("trace CSV: empty stream");
    {
        std::string expected;
        for (std::size_t i = 0; i < kHeader.size(); ++i) {
            if (i) expected += ',';
            expected += kHeader[i];
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != expected)
            throw Error("trace CSV: unexpected header '" + line + "'");
    }
    Trace tr;
    std::array<std::vector<double>, 7> cols;
    std::array<bool, 7> seen{};
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int idx = 0;
        while (std::getline(ss, cell, ',')) {
            if (idx == 0) {
                tr.t.push_back(std::strtod(cell.c_str(), nullptr));
            } else if (idx <= 7) {
                if (cell.empty()) {
                    cols[static_cast<std::size_t>(idx - 1)].push_back(0.0);
                } else {
                    cols[static_cast<std::size_t>(idx - 1)].push_back(
                        std::strtod(cell.c_str(), nullptr));
                    seen[static_cast<std::size_t>(idx - 1)] = true;
                }
            }
            ++idx;
        }
        // trailing empty cells after the last comma are dropped by getline
        for (std::size_t c = 0; c < 7; ++c)
            if (cols[c].size() < tr.t.size()) cols[c].push_back(0.0);
    }
    auto chans = channels(tr);
    for (std::size_t c = 0; c < 7; ++c)
        if (seen[c]) *chans[c] = std::move(cols[c]);
    return tr;
}

Trace read_csv_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    return read_csv(is);
}

}  // namespace burgers
