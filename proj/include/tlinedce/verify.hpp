#pragma once

#include <string>
#include <vector>

#include "tlinedce/circuit.hpp"

// Self-verification suite behind `tline-dce verify`: re-runs the library's
// structural identities at the configured parameters across all four
// families. Each check returns a pass flag, a one-line detail and its worst
// residual so callers can compare runs (e.g. tightening rtol must not
// degrade the unitarity residual).

namespace tlinedce {

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;  // worst deviation observed, check-specific scale
    std::string detail;
};

struct VerifyOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    // Negative-control hook: perturbs the chi weight used inside the
    // commutator evaluation by this relative amount. Any nonzero value must
    // make the commutator check fail; it exists to prove the check can fail.
    double chi_perturbation = 0.0;
    unsigned seed = 0x5eedu;
};

// Checks, in order: mode normalization (mod-N delta), ladder commutators
// (chi^-1 weighting), amplitude round-trip, Bogoliubov unitarity + Wronskian
// conservation, and multiscale-vs-oracle convergence in eta. The element
// values and N are taken from `base`; the family field is ignored (all four
// families are exercised).
std::vector<CheckResult> run_verification(const CircuitSpec& base,
                                          const VerifyOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace tlinedce
