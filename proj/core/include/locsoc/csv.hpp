#ifndef LOCSOC_CSV_HPP_
#define LOCSOC_CSV_HPP_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace locsoc::csv {

/// Streaming RFC-4180 reader: quoted fields, doubled quotes, CRLF and
/// embedded newlines. Lenient about stray characters after a closing quote
/// (appended literally); an unterminated quote at end of input is fatal.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(&in) {}

    /// Reads one record into `fields`. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    /// 1-based index of the last record returned (header counts as record 1).
    std::size_t record_number() const { return record_; }

private:
    std::istream* in_;
    std::size_t record_ = 0;
};

/// Quotes a field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Writes one CSV record terminated by '\n'.
void write_row(std::ostream& out, std::span<const std::string> fields);

} // namespace locsoc::csv

#endif // LOCSOC_CSV_HPP_
