#ifndef GARFIELD_CSV_HPP
#define GARFIELD_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace garfield {

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted.
std::string csv_escape(std::string_view field);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    std::size_t width_;
};

/// Parses a whole CSV document, header included.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

}  // namespace garfield

#endif  // GARFIELD_CSV_HPP
