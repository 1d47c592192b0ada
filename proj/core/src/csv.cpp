#include "locsoc/csv.hpp"

#include "locsoc/types.hpp"

namespace locsoc::csv {

bool Reader::next(std::vector<std::string>& fields) {
    fields.clear();
    std::istream& in = *in_;
    int c = in.get();
    if (c == std::char_traits<char>::eof()) return false;

    ++record_;
    std::string field;
    bool in_quotes = false;
    bool had_any = false;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        had_any = true;
    };

    while (true) {
        if (c == std::char_traits<char>::eof()) {
            if (in_quotes) {
                throw InputError("unterminated quoted field at record " +
                                 std::to_string(record_));
            }
            end_field();
            return true;
        }
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                int peek = in.peek();
                if (peek == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            in_quotes = true;
        } else if (ch == ',') {
            end_field();
        } else if (ch == '\n') {
            end_field();
            return true;
        } else if (ch == '\r') {
            // swallow the \n of a CRLF pair; a bare \r also ends the record
            if (in.peek() == '\n') in.get();
            end_field();
            return true;
        } else {
            field.push_back(ch);
        }
        c = in.get();
    }
}

std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
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

void write_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << escape(fields[i]);
    }
    out.put('\n');
}

} // namespace locsoc::csv
