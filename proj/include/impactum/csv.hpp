#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace impactum::csv {

// RFC-4180 row reader: quoted fields, doubled quotes, LF or CRLF endings.
// Newlines inside quoted fields are preserved.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Reads one record into `out`. Returns false at end of input.
    // Throws std::runtime_error on an unterminated quoted field.
    bool next_row(std::vector<std::string>& out);

    // Physical line on which the last returned record started (1-based).
    std::int64_t row_line() const { return row_line_; }

private:
    std::istream& in_;
    std::int64_t line_ = 1;
    std::int64_t row_line_ = 0;
};

std::string escape(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

std::string fmt_int(std::int64_t v);
// Shortest round-trip formatting; parsing the result recovers the exact double.
std::string fmt_double(double v);
// Empty string for undefined values.
std::string fmt_opt(const std::optional<double>& v);

std::optional<double> parse_opt_double(std::string_view field);
std::optional<std::int64_t> parse_opt_int(std::string_view field);

} // namespace impactum::csv
