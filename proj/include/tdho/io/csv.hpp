#pragma once

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace tdho::io {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

/// Comma-separated writer with '#'-prefixed metadata lines. Optional cells
/// without a value are written empty.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(std::string_view text)
    {
        os_ << "# " << text << '\n';
    }

    void header(std::initializer_list<std::string_view> cols)
    {
        bool first = true;
        for (auto c : cols) {
            if (!first) os_ << ',';
            os_ << c;
            first = false;
        }
        os_ << '\n';
    }

    void header(const std::vector<std::string>& cols)
    {
        for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
        os_ << '\n';
    }

    void row(std::initializer_list<std::optional<double>> cells)
    {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) os_ << ',';
            if (c) os_ << format_double(*c);
            first = false;
        }
        os_ << '\n';
    }

    void row(const std::vector<double>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << format_double(cells[i]);
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

} // namespace tdho::io
