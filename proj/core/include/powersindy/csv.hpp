#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powersindy::csv {

// Shortest round-trip representation of a double (via std::to_chars).
// "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

// RFC 4180 writer: fields quoted when they contain comma, quote or newline;
// records terminated with CRLF.
class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

  private:
    std::ostream& out_;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; throws DataError if absent.
    std::size_t column(const std::string& name) const;
};

// Parses CSV text with a header row. Accepts LF or CRLF endings and quoted
// fields with doubled quotes.
Table parse(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace powersindy::csv
