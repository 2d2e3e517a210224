#pragma once

#include <string>
#include <vector>

namespace dephase {

// Minimal result table shared by all commands. CSV is the primary format
// (header row, comma separator, '.' decimal, 12 significant digits, empty
// fields for missing values); JSON mirrors the rows as an array of objects.

struct Cell {
    enum class Kind { Empty, Number, Text, NumberList };

    Kind kind{Kind::Empty};
    double number{0.0};
    std::string text;
    std::vector<double> list;

    static Cell empty() { return {}; }
    static Cell num(double v) {
        Cell c;
        c.kind = Kind::Number;
        c.number = v;
        return c;
    }
    static Cell str(std::string s) {
        Cell c;
        c.kind = Kind::Text;
        c.text = std::move(s);
        return c;
    }
    static Cell nums(std::vector<double> v) {
        Cell c;
        c.kind = Kind::NumberList;
        c.list = std::move(v);
        return c;
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// %.12g formatting, locale independent.
std::string format_number(double v);

std::string to_csv(const Table& table);

// Array of objects preserving column order; empty cells become null, number
// lists become arrays.
std::string to_json(const Table& table);

}  // namespace dephase
