#pragma once

#include <string>

// Unit-suffixed quantity parsing for config ingestion. Dimensioned values
// must be written as "<number> <unit>" ("0.4 pF", "60 pH", "1.25 uA",
// "12 GHz", "1 ps"); bare numbers are rejected so a config can never be
// silently misread by a factor of 10^12.

namespace tlinedce {

enum class Dimension {
    Capacitance,       // F
    Inductance,        // H
    Current,           // A
    Time,              // s
    Length,            // m
    AngularFrequency,  // rad/s; "Hz" suffixes are accepted and scaled by 2*pi
};

const char* dimension_name(Dimension dim);

// Parses "<number> <unit>" into SI base units of the expected dimension.
// Accepted unit spellings: F, H, A, s, m, rad/s, Hz, each with SI prefixes
// f, p, n, u (or µ), m, (none), k, M, G, T. Throws std::invalid_argument
// with the offending text and expected dimension on any mismatch; `field`
// names the config entry in the message.
double parse_quantity(const std::string& text, Dimension dim,
                      const std::string& field);

// Renders an SI value as a re-ingestable quantity string ("4e-13 F").
std::string quantity_string(double value, Dimension dim);

}  // namespace tlinedce
