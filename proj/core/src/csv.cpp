#include "powersindy/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "powersindy/errors.hpp"

namespace powersindy::csv {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << (needs_quoting(fields[i]) ? quote(fields[i]) : fields[i]);
    }
    out_ << "\r\n";
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw DataError("csv: no column named '" + name + "'");
}

Table parse(const std::string& text) {
    Table table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any_field = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        any_field = false;
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty())
            table.header = record;
        else
            table.rows.push_back(record);
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                any_field = true;
                break;
            case ',':
                end_field();
                any_field = true;  // a comma implies a following field
                break;
            case '\r':
                break;
            case '\n':
                if (!field.empty() || !record.empty() || any_field) end_record();
                break;
            default:
                field += c;
                any_field = true;
                break;
        }
    }
    if (in_quotes) throw DataError("csv: unterminated quoted field");
    if (!field.empty() || !record.empty()) end_record();
    return table;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

}  // namespace powersindy::csv
