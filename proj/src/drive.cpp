#include "tlinedce/drive.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tlinedce/lattice.hpp"

namespace tlinedce {

void validate_drive(const DriveSpec& drive) {
    if (!(drive.eta > 0.0) || drive.eta > 0.1) {
        std::ostringstream msg;
        msg << "DriveSpec: eta must be in (0, 0.1], got " << drive.eta;
        throw std::invalid_argument(msg.str());
    }
    if (!(drive.Omega > 0.0)) {
        std::ostringstream msg;
        msg << "DriveSpec: Omega must be strictly positive, got "
            << drive.Omega;
        throw std::invalid_argument(msg.str());
    }
    if (!(drive.t_f > 0.0)) {
        std::ostringstream msg;
        msg << "DriveSpec: t_f must be strictly positive, got " << drive.t_f;
        throw std::invalid_argument(msg.str());
    }
    if (drive.ramp == RampKind::Cosine &&
        (!(drive.ramp_window > 0.0) ||
         drive.ramp_window > 0.5 * drive.t_f)) {
        std::ostringstream msg;
        msg << "DriveSpec: cosine ramp needs 0 < ramp_window <= t_f/2, got "
            << "ramp_window = " << drive.ramp_window << " with t_f = "
            << drive.t_f;
        throw std::invalid_argument(msg.str());
    }
}

std::vector<std::string> drive_warnings(const DriveSpec& drive) {
    std::vector<std::string> warnings;
    if (drive.eta > 0.05) {
        std::ostringstream msg;
        msg << "eta = " << drive.eta
            << " > 0.05: the first-order multiscale amplitudes are "
               "perturbative in eta and degrade at this depth";
        warnings.push_back(msg.str());
    }
    return warnings;
}

double drive_envelope(const DriveSpec& drive, double t) {
    if (t < 0.0 || t > drive.t_f) return 0.0;
    if (drive.ramp == RampKind::Hard) return 1.0;
    const double w = drive.ramp_window;
    if (t < w)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * t / w));
    if (t > drive.t_f - w)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * (drive.t_f - t) / w));
    return 1.0;
}

double drive_energy(const CircuitSpec& spec, const DriveSpec& drive,
                    double t) {
    const double E0 = josephson_E0(spec);
    const double m = 4.0 * drive.eta * drive_envelope(drive, t) *
                     std::sin(drive.Omega * t);
    return E0 * (1.0 + m);
}

double instantaneous_frequency_sq(const CircuitSpec& spec,
                                  const DriveSpec& drive, int j, double t) {
    const double omega0 = dispersion0(spec, j);
    const double m = 4.0 * drive.eta * drive_envelope(drive, t) *
                     std::sin(drive.Omega * t);
    switch (drive_class(spec.family)) {
        case DriveClass::Massless:
            // E(t) scales the whole squared dispersion.
            return omega0 * omega0 * (1.0 + m);
        case DriveClass::Massive:
            // E(t) only moves the additive Et/C (mass) term.
            return omega0 * omega0 + tilde_E0(spec) / spec.C * m;
    }
    throw std::logic_error("instantaneous_frequency_sq: unhandled DriveClass");
}

double instantaneous_frequency(const CircuitSpec& spec, const DriveSpec& drive,
                               int j, double t) {
    return std::sqrt(instantaneous_frequency_sq(spec, drive, j, t));
}

double resonance_offset(const DriveSpec& drive, double omega0_h) {
    return (drive.Omega - 2.0 * omega0_h) / (2.0 * omega0_h);
}

double default_resonance_tol(const DriveSpec& drive) { return drive.eta / 2.0; }

bool is_resonant(const DriveSpec& drive, double omega0_h, double tol_res) {
    return std::abs(resonance_offset(drive, omega0_h)) <= tol_res;
}

bool is_resonant(const DriveSpec& drive, double omega0_h) {
    return is_resonant(drive, omega0_h, default_resonance_tol(drive));
}

}  // namespace tlinedce
