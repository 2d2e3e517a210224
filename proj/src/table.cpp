#include "dephase/table.hpp"

#include <cstdio>

#include <json.hpp>

#include "dephase/errors.hpp"

namespace dephase {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void check_shape(const Table& table) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw invalid_input("table row width does not match the header");
}

void append_csv_cell(std::string& out, const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Empty:
            break;
        case Cell::Kind::Number:
            out += format_number(cell.number);
            break;
        case Cell::Kind::Text:
            out += cell.text;
            break;
        case Cell::Kind::NumberList:
            for (std::size_t i = 0; i < cell.list.size(); ++i) {
                if (i) out += ';';
                out += format_number(cell.list[i]);
            }
            break;
    }
}

}  // namespace

std::string to_csv(const Table& table) {
    check_shape(table);
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            append_csv_cell(out, row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    check_shape(table);
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const Cell& cell = row[c];
            auto& slot = record[table.columns[c]];
            switch (cell.kind) {
                case Cell::Kind::Empty:
                    slot = nullptr;
                    break;
                case Cell::Kind::Number:
                    slot = cell.number;
                    break;
                case Cell::Kind::Text:
                    slot = cell.text;
                    break;
                case Cell::Kind::NumberList:
                    slot = cell.list;
                    break;
            }
        }
        records.push_back(std::move(record));
    }
    return records.dump(2) + "\n";
}

}  // namespace dephase
