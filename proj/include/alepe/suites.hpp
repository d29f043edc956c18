#pragma once

#include <string>
#include <vector>

#include "alepe/diagnostics.hpp"

namespace alepe {

/// Lemma laboratory and structural property checks at desk scale.
/// Gated records decide the exit status of `check`.
std::vector<LemmaCheckResult> run_check_suite(unsigned seed = 1);

/// Manufactured-solution recovery for the pressure solver and the harmonic extension.
std::vector<LemmaCheckResult> run_manufactured_suite();

/// Discrete Laplacian residual max |Delta_H phi + D2 phi| of the harmonic
/// extension of h, with spectral horizontal and finite-difference vertical derivatives.
double extension_laplacian_residual(const Field2D& h);

/// One JSON object per line: suite, params, ratio, bound, gated, pass.
std::string format_results(const std::vector<LemmaCheckResult>& results);

bool all_gated_pass(const std::vector<LemmaCheckResult>& results);

}  // namespace alepe
