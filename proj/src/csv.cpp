// csv.cpp
#include <dqd/csv.hpp>

#include <charconv>
#include <system_error>

namespace dqd {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    if (res.ec != std::errc{}) return "nan";
    std::string s(buf, res.ptr);
    if (s == "-0") s = "0";
    return s;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os_ << ',';
        os_ << columns[i];
    }
    os_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os_ << ',';
        os_ << format_number(values[i]);
    }
    os_ << '\n';
}

std::vector<std::string> record_columns(const std::vector<Measure>& measures) {
    std::vector<std::string> cols{"epsilon", "t", "bz", "bx", "T"};
    const auto m = measure_columns(measures);
    cols.insert(cols.end(), m.begin(), m.end());
    return cols;
}

std::vector<double> record_row(const SweepRecord& r) {
    const auto& p = r.point;
    std::vector<double> row{p.model.epsilon, p.model.t, p.model.bz, p.model.bx, p.temperature};
    row.insert(row.end(), r.values.begin(), r.values.end());
    return row;
}

}  // namespace dqd
