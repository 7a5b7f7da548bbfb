#include "oaclass/csv.hpp"

#include "oaclass/errors.hpp"

namespace oaclass {

std::optional<std::vector<std::string>> CsvReader::next() {
    int c = in_.get();
    if (c == EOF)
        return std::nullopt;

    record_start_line_ = current_line_;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;

    for (;; c = in_.get()) {
        if (in_quotes) {
            if (c == EOF)
                throw ParseError("unterminated quoted CSV field", record_start_line_);
            if (c == '"') {
                const int peek = in_.peek();
                if (peek == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n')
                    ++current_line_;
                field.push_back(static_cast<char>(c));
            }
            continue;
        }

        if (c == '"') {
            if (!field.empty() || field_was_quoted)
                throw ParseError("stray quote inside unquoted CSV field", current_line_);
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (c == '\r') {
            if (in_.peek() == '\n')
                in_.get();
            ++current_line_;
            break;
        } else if (c == '\n') {
            ++current_line_;
            break;
        } else if (c == EOF) {
            break;
        } else {
            if (field_was_quoted)
                throw ParseError("data after closing quote in CSV field", current_line_);
            field.push_back(static_cast<char>(c));
        }
    }

    fields.push_back(std::move(field));
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out.put(',');
        out << csv_escape(fields[i]);
    }
    out.put('\n');
}

} // namespace oaclass
