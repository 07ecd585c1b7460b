#ifndef BURGERS_TRACE_HPP
#define BURGERS_TRACE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace burgers {

/// Time series of norms, scalar channels and control energy for one run.
/// CSV schema (bit-exact contract): header
///   t,l2_v,h1_v,U,l2_z,h1_z,W,control_l2
/// with empty cells for channels a system does not carry, values serialized
/// with 17 significant digits.
struct Trace {
    std::vector<double> t;
    std::optional<std::vector<double>> l2_v, h1_v, U, l2_z, h1_z, W, control_l2;

    // run fingerprint metadata (not serialized into the CSV)
    std::string system;
    double dt = 0.0;
    double horizon = 0.0;
    long long stride = 1;
    unsigned long long seed = 0;

    std::size_t rows() const { return t.size(); }
    void truncate(std::size_t n);
};

void write_csv(const Trace& trace, std::ostream& os);
void write_csv(const Trace& trace, const std::string& path);
Trace read_csv(std::istream& is);
Trace read_csv_file(const std::string& path);

}  // namespace burgers

#endif
