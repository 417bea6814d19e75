#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "braidfac/words.hpp"

namespace braidfac::text {

struct Line {
    std::string_view body;
    int number;  // 1-based
};

// non-empty lines with '#' comments removed
std::vector<Line> split_lines(std::string_view text);

std::string_view trim(std::string_view s);
int column_of(std::string_view whole, std::string_view part);  // 1-based

// tokens like x3 or a2^-1
std::vector<Letter> parse_letters(std::string_view s, char prefix, int line, int col0);

long long parse_int(std::string_view s, int line, int col);

// consumes "key=" at the front of s (after spaces) and returns the value up to ';' or end
std::string_view take_field(std::string_view& s, std::string_view key, int line,
                            std::string_view whole);

std::string letters_to_string(const std::vector<Letter>& ls, char prefix);

}  // namespace braidfac::text
