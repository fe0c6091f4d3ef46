#pragma once

#include "endcb/term.hpp"

#include <stdexcept>
#include <string>

namespace endcb {

struct SourceSpan {
    std::size_t start = 0; // byte offsets into the input
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(message)), line(line), column(column) {}
    std::size_t line;   // 1-based
    std::size_t column; // 1-based
};

// Textual DSL. Whitespace-insensitive, '#' starts a line comment.
//
//   surface := "surface" "genus=" ("inf" | nat) "ends=" term
//   term    := "pt" [flag]
//            | "sum(" term ("," term)+ ")"
//            | "omega(" term ["," flag] ")"
//            | "line(" term ["," flag "," flag] ")"
//            | "cantor" [flag]
//            | "cacc(" term ["," flag] ")"
//            | "ord(" ordinal "," nat ["," gspec] ")"
//            | "fan(" "iter(" term ")" "," ("one" [flag] | "two" [flag flag])
//                     ["," "rep"] ")"
//   flag    := "g" | "!g"
//   gspec   := "none" | "all" | "ge(" ordinal ")"
//   ordinal := "0" | nat | part ("+" part)*   with part := ("w" ["^" oexp]) ["*" nat] | nat
//              and oexp := "w" | nat | "(" ordinal ")"
//
// Omitted limit flags default to the value forced by closedness of E^G.
Surface parse_surface(const std::string& text);
Term parse_term(const std::string& text);
Ordinal parse_ordinal(const std::string& text);

// Round-trip printers: parse(print(x)) is structurally equal to x.
// Limit flags equal to their closedness-forced default are elided.
std::string print(const Term& t);
std::string print(const Surface& s);

} // namespace endcb
