#include "tlinedce/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tlinedce {

namespace {

constexpr double kPi = std::numbers::pi;

void check_mode_label(const CircuitSpec& spec, int j) {
    const int jmax = spec.n_cells / 2;
    if (j == 0 || j < -jmax || j > jmax) {
        std::ostringstream msg;
        msg << "mode label j = " << j << " outside the Brillouin zone; valid "
            << "labels are 1 <= |j| <= N/2 = " << jmax;
        throw std::domain_error(msg.str());
    }
}

void check_energy(double E) {
    if (!(E > 0.0) || !std::isfinite(E)) {
        std::ostringstream msg;
        msg << "Josephson energy must be strictly positive, got E = " << E;
        throw std::domain_error(msg.str());
    }
}

// sin^2(k_j dx / 2) = sin^2(pi j / N), the only way k enters any formula.
double half_wave_sin_sq(const CircuitSpec& spec, int j) {
    const double s = std::sin(kPi * static_cast<double>(j) /
                              static_cast<double>(spec.n_cells));
    return s * s;
}

}  // namespace

double wave_vector(const CircuitSpec& spec, int j) {
    check_mode_label(spec, j);
    return 2.0 * kPi * static_cast<double>(j) /
           (static_cast<double>(spec.n_cells) * spec.dx);
}

double tilde_E(const CircuitSpec& spec, double E) {
    check_energy(E);
    const double factor = 2.0 * kPi / spec.constants.phi0;
    return factor * factor * E;
}

double tilde_E0(const CircuitSpec& spec) {
    return tilde_E(spec, josephson_E0(spec));
}

double dispersion(const CircuitSpec& spec, int j, double E,
                  Rhtl2Form rhtl2_form) {
    check_mode_label(spec, j);
    check_energy(E);
    const double Et = tilde_E(spec, E);
    const double s2 = half_wave_sin_sq(spec, j);
    switch (spec.family) {
        case CircuitFamily::LHTL1:
            return std::sqrt(Et / (4.0 * spec.C * s2 + spec.C_J));
        case CircuitFamily::LHTL2:
            return std::sqrt(1.0 / (4.0 * spec.C * spec.L * s2) + Et / spec.C);
        case CircuitFamily::RHTL1:
            return std::sqrt(4.0 * s2 / (spec.L * spec.C) + Et / spec.C);
        case CircuitFamily::RHTL2: {
            const double sin_abs = std::sqrt(s2);
            const double c_eff = rhtl2_form == Rhtl2Form::Exact
                                     ? spec.C + 4.0 * spec.C_J * s2
                                     : spec.C;
            return 2.0 * sin_abs * std::sqrt(Et / c_eff);
        }
    }
    throw std::logic_error("dispersion: unhandled CircuitFamily");
}

double dispersion0(const CircuitSpec& spec, int j, Rhtl2Form rhtl2_form) {
    return dispersion(spec, j, josephson_E0(spec), rhtl2_form);
}

double group_velocity(const CircuitSpec& spec, int j, double E) {
    check_mode_label(spec, j);
    check_energy(E);
    const double Et = tilde_E(spec, E);
    const double k = wave_vector(spec, j);
    const double half = k * spec.dx / 2.0;
    const double s = std::sin(half);
    const double c = std::cos(half);
    const double s2 = s * s;
    // d(omega)/dk = d(omega)/d(s^2) * 2 s c * (dx/2) for the three families
    // written in s^2; RHTL2 is differentiated directly.
    switch (spec.family) {
        case CircuitFamily::LHTL1: {
            const double denom = 4.0 * spec.C * s2 + spec.C_J;
            const double omega = std::sqrt(Et / denom);
            // d(omega)/d(s2) = -omega * 4C / (2 denom)
            return -omega * 4.0 * spec.C / (2.0 * denom) * 2.0 * s * c *
                   (spec.dx / 2.0);
        }
        case CircuitFamily::LHTL2: {
            const double omega =
                std::sqrt(1.0 / (4.0 * spec.C * spec.L * s2) + Et / spec.C);
            // d(omega)/d(s2) = -1/(4 C L s2^2) / (2 omega)
            return -1.0 / (4.0 * spec.C * spec.L * s2 * s2) / (2.0 * omega) *
                   2.0 * s * c * (spec.dx / 2.0);
        }
        case CircuitFamily::RHTL1: {
            const double omega =
                std::sqrt(4.0 * s2 / (spec.L * spec.C) + Et / spec.C);
            return 4.0 / (spec.L * spec.C) / (2.0 * omega) * 2.0 * s * c *
                   (spec.dx / 2.0);
        }
        case CircuitFamily::RHTL2: {
            // omega = 2 |s| sqrt(Et/(C + 4 C_J s^2)); product rule in |s|,
            // then d|s|/dk = sgn(s) c dx/2 (c > 0 inside the zone), which
            // keeps d(omega)/dk odd in j like the other families.
            const double c_eff = spec.C + 4.0 * spec.C_J * s2;
            const double root = std::sqrt(Et / c_eff);
            const double domega_dsabs =
                2.0 * root * (1.0 - 4.0 * spec.C_J * s2 / c_eff);
            const double sign = j > 0 ? 1.0 : -1.0;
            return sign * domega_dsabs * c * (spec.dx / 2.0);
        }
    }
    throw std::logic_error("group_velocity: unhandled CircuitFamily");
}

InfraredLimit infrared_limit(const CircuitSpec& spec) {
    if (spec.family != CircuitFamily::LHTL1) {
        throw std::invalid_argument(
            std::string("infrared_limit is defined for LHTL1 only (the "
                        "left-handed branch saturation); got family ") +
            family_name(spec.family));
    }
    const double Et0 = tilde_E0(spec);
    return InfraredLimit{
        std::sqrt(Et0 / (4.0 * spec.C + spec.C_J)),
        std::sqrt(Et0 / (4.0 * spec.C)),
    };
}

double chi_factor(const CircuitSpec& spec, int j) {
    check_mode_label(spec, j);
    const double s2 = half_wave_sin_sq(spec, j);
    switch (spec.family) {
        case CircuitFamily::LHTL1:
            return 4.0 * s2 + spec.C_J / spec.C;
        case CircuitFamily::LHTL2:
            return 4.0 * s2;
        case CircuitFamily::RHTL1:
        case CircuitFamily::RHTL2:
            return 1.0;
    }
    throw std::logic_error("chi_factor: unhandled CircuitFamily");
}

double eigenenergy(const CircuitSpec& spec, int j, double E) {
    check_mode_label(spec, j);
    check_energy(E);
    const double hbar = spec.constants.hbar;
    const double Et = tilde_E(spec, E);
    const double chi = chi_factor(spec, j);
    switch (spec.family) {
        case CircuitFamily::LHTL1:
            return hbar * std::sqrt(chi * Et / spec.C);
        case CircuitFamily::LHTL2:
            return hbar * std::sqrt(chi * Et / spec.C) *
                   std::sqrt(chi + 1.0 / (spec.L * Et));
        case CircuitFamily::RHTL1:
        case CircuitFamily::RHTL2:
            // Standard ladder operators: one quantum costs hbar*omega.
            return hbar * dispersion(spec, j, E);
    }
    throw std::logic_error("eigenenergy: unhandled CircuitFamily");
}

}  // namespace tlinedce
