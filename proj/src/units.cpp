#include "tlinedce/units.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace tlinedce {

namespace {

struct UnitPrefix {
    std::string_view symbol;
    double factor;
};

// "u" and the micro sign are interchangeable spellings of 1e-6.
constexpr std::array<UnitPrefix, 10> kPrefixes{{
    {"f", 1e-15},
    {"p", 1e-12},
    {"n", 1e-9},
    {"u", 1e-6},
    {"µ", 1e-6},
    {"m", 1e-3},
    {"k", 1e3},
    {"M", 1e6},
    {"G", 1e9},
    {"T", 1e12},
}};

struct BaseUnit {
    std::string_view symbol;
    double to_si;  // extra factor on top of the SI prefix
};

// Candidate base symbols for a dimension. Angular frequencies accept both
// a literal rad/s and a cyclic-frequency Hz spelling (scaled by 2*pi).
std::array<BaseUnit, 2> base_units(Dimension dim, std::size_t& count) {
    switch (dim) {
        case Dimension::Capacitance:
            count = 1;
            return {{{"F", 1.0}, {}}};
        case Dimension::Inductance:
            count = 1;
            return {{{"H", 1.0}, {}}};
        case Dimension::Current:
            count = 1;
            return {{{"A", 1.0}, {}}};
        case Dimension::Time:
            count = 1;
            return {{{"s", 1.0}, {}}};
        case Dimension::Length:
            count = 1;
            return {{{"m", 1.0}, {}}};
        case Dimension::AngularFrequency:
            count = 2;
            return {{{"rad/s", 1.0}, {"Hz", 2.0 * std::numbers::pi}}};
    }
    count = 0;
    return {};
}

bool ends_with(std::string_view text, std::string_view suffix) {
    return text.size() >= suffix.size() &&
           text.substr(text.size() - suffix.size()) == suffix;
}

[[noreturn]] void fail(const std::string& field, Dimension dim,
                       const std::string& text) {
    std::ostringstream msg;
    msg << field << ": expected \"<number> <unit>\" with a "
        << dimension_name(dim) << " unit (e.g. \"0.4 pF\", \"12 GHz\"), got \""
        << text << "\"";
    throw std::invalid_argument(msg.str());
}

}  // namespace

const char* dimension_name(Dimension dim) {
    switch (dim) {
        case Dimension::Capacitance: return "capacitance";
        case Dimension::Inductance: return "inductance";
        case Dimension::Current: return "current";
        case Dimension::Time: return "time";
        case Dimension::Length: return "length";
        case Dimension::AngularFrequency: return "angular-frequency";
    }
    return "unknown";
}

double parse_quantity(const std::string& text, Dimension dim,
                      const std::string& field) {
    const std::string_view view(text);
    std::size_t begin = 0;
    while (begin < view.size() && std::isspace(static_cast<unsigned char>(view[begin]))) ++begin;
    std::size_t end = view.size();
    while (end > begin && std::isspace(static_cast<unsigned char>(view[end - 1]))) --end;
    const std::string_view body = view.substr(begin, end - begin);

    const std::size_t split = body.find_first_of(" \t");
    if (split == std::string_view::npos) fail(field, dim, text);  // bare number or bare unit

    const std::string number_token(body.substr(0, split));
    std::size_t unit_begin = split;
    while (unit_begin < body.size() &&
           std::isspace(static_cast<unsigned char>(body[unit_begin])))
        ++unit_begin;
    const std::string_view unit_token = body.substr(unit_begin);
    if (unit_token.empty() ||
        unit_token.find_first_of(" \t") != std::string_view::npos)
        fail(field, dim, text);

    double magnitude = 0.0;
    try {
        std::size_t consumed = 0;
        magnitude = std::stod(number_token, &consumed);
        if (consumed != number_token.size()) fail(field, dim, text);
    } catch (const std::invalid_argument&) {
        fail(field, dim, text);
    } catch (const std::out_of_range&) {
        fail(field, dim, text);
    }

    std::size_t base_count = 0;
    const auto bases = base_units(dim, base_count);
    for (std::size_t b = 0; b < base_count; ++b) {
        const BaseUnit& base = bases[b];
        if (!ends_with(unit_token, base.symbol)) continue;
        const std::string_view prefix =
            unit_token.substr(0, unit_token.size() - base.symbol.size());
        if (prefix.empty()) return magnitude * base.to_si;
        for (const UnitPrefix& entry : kPrefixes)
            if (prefix == entry.symbol)
                return magnitude * entry.factor * base.to_si;
    }
    fail(field, dim, text);
}

std::string quantity_string(double value, Dimension dim) {
    std::string_view symbol;
    switch (dim) {
        case Dimension::Capacitance: symbol = "F"; break;
        case Dimension::Inductance: symbol = "H"; break;
        case Dimension::Current: symbol = "A"; break;
        case Dimension::Time: symbol = "s"; break;
        case Dimension::Length: symbol = "m"; break;
        case Dimension::AngularFrequency: symbol = "rad/s"; break;
    }
    // Shortest representation that survives a parse round trip.
    for (int precision = 15; precision <= 17; ++precision) {
        std::ostringstream out;
        out.precision(precision);
        out << value;
        if (std::stod(out.str()) == value)
            return out.str() + ' ' + std::string(symbol);
    }
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str() + ' ' + std::string(symbol);
}

}  // namespace tlinedce
