#include "tempdis/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tempdis {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Series read_series_csv(std::istream& in, Frequency frequency, const std::string& origin) {
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw std::runtime_error(origin + ": empty file");
    ++lineno;
    if (trim(line) != "period,value")
        fail(origin, lineno, "expected header 'period,value'");

    std::vector<double> values;
    PeriodId start{};
    PeriodId expected{};
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty()) continue;  // tolerate blank trailing lines
        const std::size_t comma = row.find(',');
        if (comma == std::string::npos) fail(origin, lineno, "expected 'period,value'");

        PeriodId p;
        Frequency f;
        try {
            std::tie(p, f) = parse_period(trim(row.substr(0, comma)));
        } catch (const std::exception& e) {
            fail(origin, lineno, e.what());
        }
        if (f != frequency) fail(origin, lineno, "period frequency does not match series");

        double v = 0.0;
        try {
            std::size_t used = 0;
            const std::string num = trim(row.substr(comma + 1));
            v = std::stod(num, &used);
            if (used != num.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            fail(origin, lineno, "malformed value");
        }

        if (values.empty()) {
            start = p;
        } else if (p != expected) {
            fail(origin, lineno,
                 "non-contiguous series: expected " + format_period(expected, frequency) +
                     ", got " + format_period(p, frequency));
        }
        expected = next_period(p, frequency);
        values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error(origin + ": no data rows");
    return Series(frequency, start, std::move(values));
}

Series load_series_csv(const std::string& path, Frequency frequency) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_series_csv(in, frequency, path);
}

void write_series_csv(std::ostream& out, const Series& s) {
    out << "period,value\n";
    char buf[64];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", s[i]);
        out << format_period(s.period_at(i), s.frequency()) << ',' << buf << '\n';
    }
}

void write_series_csv(const std::string& path, const Series& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_series_csv(out, s);
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace tempdis
