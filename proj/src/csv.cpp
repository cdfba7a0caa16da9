#include "impactum/csv.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace impactum::csv {

bool Reader::next_row(std::vector<std::string>& out) {
    out.clear();
    int c = in_.get();
    if (c == EOF) return false;
    row_line_ = line_;

    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    while (true) {
        if (c == EOF) {
            if (in_quotes) throw std::runtime_error("csv: unterminated quoted field at line " + std::to_string(row_line_));
            out.push_back(std::move(field));
            return true;
        }
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '\n') ++line_;
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (ch == ',') {
            out.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (ch == '\r' || ch == '\n') {
            if (ch == '\r' && in_.peek() == '\n') in_.get();
            ++line_;
            out.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
            field_started = true;
        }
        c = in_.get();
    }
}

std::string escape(std::string_view field) {
    bool need = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!need) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

std::string fmt_int(std::int64_t v) {
    char buf[24];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string fmt_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
}

std::optional<double> parse_opt_double(std::string_view field) {
    if (field.empty()) return std::nullopt;
    double out = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc() || p != field.data() + field.size()) return std::nullopt;
    return out;
}

std::optional<std::int64_t> parse_opt_int(std::string_view field) {
    if (field.empty()) return std::nullopt;
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc() || p != field.data() + field.size()) return std::nullopt;
    return out;
}

} // namespace impactum::csv
