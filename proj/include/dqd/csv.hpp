// csv.hpp - byte-stable CSV output: 12 significant digits, '.' decimal
// separator, ',' field separator, '\n' line endings, header first.
#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <dqd/sweep.hpp>

namespace dqd {

/// Shortest of fixed/scientific with 12 significant digits, independent of
/// the global locale.
std::string format_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& columns);
    void row(std::span<const double> values);

private:
    std::ostream& os_;
};

/// Columns for a full sweep record: epsilon,t,bz,bx,T then measure columns.
std::vector<std::string> record_columns(const std::vector<Measure>& measures);
std::vector<double> record_row(const SweepRecord& r);

}  // namespace dqd
