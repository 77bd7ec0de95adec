#include "tlinedce/format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tlinedce {

std::string format_sci(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.11e", value);
    return buffer;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << "family,j,omega0,epsilon_over_hbar,Omega,N,log10N,E_over_hbar,"
           "method\n";
    for (const SweepRow& row : sweep.rows) {
        out << family_name(sweep.family) << ',' << row.j << ','
            << format_sci(row.omega0) << ','
            << format_sci(row.epsilon_over_hbar) << ','
            << format_sci(row.Omega) << ',' << format_sci(row.N) << ','
            << format_sci(row.log10_N) << ','
            << format_sci(row.E_over_hbar) << ',' << method_name(row.method)
            << '\n';
    }
    return out.str();
}

std::string dispersion_csv(const std::vector<DispersionTable>& tables) {
    std::ostringstream out;
    out << "family,j,k_dx,omega0,epsilon_over_hbar\n";
    for (const DispersionTable& table : tables) {
        for (const DispersionRow& row : table.rows) {
            out << family_name(table.family) << ',' << row.j << ','
                << format_sci(row.k_dx) << ',' << format_sci(row.omega0)
                << ',' << format_sci(row.epsilon_over_hbar) << '\n';
        }
    }
    return out.str();
}

std::string mode_table_csv(const ModeSet& modes) {
    std::ostringstream out;
    out << "j,k,omega0,chi,epsilon_over_hbar,amp_norm\n";
    const double hbar = modes.spec().constants.hbar;
    for (const ModeRow& row : modes.rows()) {
        out << row.j << ',' << format_sci(row.k) << ','
            << format_sci(row.omega0) << ',' << format_sci(row.chi) << ','
            << format_sci(row.epsilon / hbar) << ','
            << format_sci(row.amp_norm) << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const ModeTrajectory& traj) {
    std::ostringstream out;
    out << "t,re_Q,im_Q,re_Qdot,im_Qdot,wronskian_drift\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        out << format_sci(traj.t[i]) << ',' << format_sci(traj.Q[i].real())
            << ',' << format_sci(traj.Q[i].imag()) << ','
            << format_sci(traj.Qdot[i].real()) << ','
            << format_sci(traj.Qdot[i].imag()) << ','
            << format_sci(traj.wronskian_drift[i]) << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace tlinedce
