#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alepe/stepper.hpp"

namespace alepe {

/// One row of the energy ledger. Vector norms sum squares over components;
/// d'' is the full horizontal Hessian (d11, d12, d21, d22).
struct EnergyReport {
  double t = 0.0;
  // Norm budget.
  double dpp_v = 0.0;     // ||d'' v||
  double dp_v = 0.0;      // ||d' v||
  double v_l2 = 0.0;      // ||v||
  double vt_l2 = 0.0;     // ||v_t||
  double htt_l2 = 0.0;    // ||h_tt||
  double ht_h2 = 0.0;     // ||h_t||_{H^2}
  double h_dev_h4 = 0.0;  // ||h - 1||_{H^4}
  // Dissipation integrands.
  double dpp_v_h1_sq = 0.0;  // ||d'' v||_{H^1}^2
  double dp_d3v_sq = 0.0;    // ||d' d3 v||^2
  double d3v_sq = 0.0;       // ||d3 v||^2
  double vt_h1_sq = 0.0;     // ||v_t||_{H^1}^2
  // Constraints and map bounds.
  double div_residual = 0.0;
  double piola_residual = 0.0;
  double plate_residual = 0.0;
  double j_min_dev = 0.0;  // 1 - min J
  double j_max_dev = 0.0;  // max J - 1
  double a_dev = 0.0;      // max_ij ||a_ij - delta_ij||_inf
  double b_dev = 0.0;
  // Pressure.
  double p_h2 = 0.0;
  double k1_gap = 0.0;
  // L2 balance terms: E, D and the right-hand side, see l2_balance_terms.
  double energy_l2 = 0.0;
  double dissipation_l2 = 0.0;
  double rhs_l2 = 0.0;
  int picard_iters = 0;
};

/// Frozen CSV column order. picard_iters is always last.
const std::vector<std::string>& report_columns();
/// Values of `r` in report_columns() order, picard_iters included.
std::vector<double> report_values(const EnergyReport& r);

/// Norm budget of one state. v_t and h_tt are supplied by the caller.
EnergyReport theorem_norms(const SimState& s, const std::array<Field3D, 2>& v_t, const Field2D& h_tt,
                           Regime regime = Regime::Full);

/// Builds reports along a run: v_t and h_tt are backward differences of
/// the previous observed state, or the instantaneous tendencies on the first call.
class LedgerRecorder {
 public:
  explicit LedgerRecorder(Regime regime = Regime::Full) : regime_(regime) {}
  EnergyReport observe(const SimState& s);

 private:
  struct Previous {
    double t;
    Field3D v1, v2;
    Field2D h_t;
  };
  Regime regime_;
  std::optional<Previous> prev_;
};

/// E = 1/2 int J |v|^2, D = int J |grad_a v|^2 and
/// RHS = (int J v.Delta_a v + D) - int J v.N + 1/2 int J_t |v|^2 - int J v.grad_H p,
/// so that dE/dt + D = RHS up to discretization error.
struct BalanceTerms {
  double energy = 0.0;
  double dissipation = 0.0;
  double rhs = 0.0;
};
BalanceTerms l2_balance_terms(const SimState& s, Regime regime = Regime::Full);

struct BalanceResidual {
  double l2 = 0.0;
  double tangential = 0.0;
  double time_derivative = 0.0;
};

/// |centered energy rate + dissipation - RHS| for X in {v, d''v, v_t},
/// maximized over the interior states of the window. Needs >= 3 states at
/// uniform spacing (WindowTooShort / InvalidInput otherwise).
BalanceResidual energy_balance_residual(std::span<const SimState> window,
                                        Regime regime = Regime::Full);

struct LemmaCheckResult {
  std::string lemma;
  std::string params;
  double ratio = 0.0;
  double bound = 0.0;
  bool gated = true;
  bool pass = false;
};

/// Coefficients of v = sum c_{k,n} e^{ik.x} sin(n pi z).
struct SineMode {
  int kx = 0;
  int ky = 0;
  int n = 1;
  double coeff = 0.0;
};

/// ||dz^{m g} d'^b v|| <= ||dz^m v||^g ||d'^{b/(1-g)} v||^{1-g} by exact
/// weighted sums. m*gamma must be an integer. pass iff ratio <= 1 + 1e-9.
LemmaCheckResult lemma43_check(std::span<const SineMode> field, int m, double beta, double gamma);

enum class AgmonVariant { Isotropic, Anisotropic };

/// Sup-norm bound with lower-order terms. Isotropic:
///   ||v||_inf / (||v||^1/4 ||d''v||^1/4 + ||v||^1/2)(||d3 v||^1/4 ||d3 d''v||^1/4 + ||d3 v||^1/2)
/// Anisotropic: || ||v||_{L^inf_z} ||_{L^4_H} /
///   (||d'^1/2 v||^1/2 + ||v||^1/2)(||d3 d'^1/2 v||^1/2 + ||d3 v||^1/2).
/// Returns [full, leading-only]; only the first is gated (ratio <= cap).
std::array<LemmaCheckResult, 2> lemma44_check(const Field3D& v, AgmonVariant variant,
                                              double cap = 10.0);

/// Extension bounds for interface h:
///   (i)   ||phi||_{H^r} / ||h||_{H^{r-1/2}},  r in {1, 1.5, 2}
///   (ii)  ||b||_{H^r} / ||h||_{H^{r+1/2}},    r in {0, 1}
///   (iii) ||d3 phi||_inf / ||h||_{H^{2.5}}
/// followed by the same ratios for the deviations phi - z, b - I, J - 1
/// against h - 1. Ungated; pass iff finite.
std::vector<LemmaCheckResult> lemma41_check(const Field2D& h);

/// Random band-limited fields used by the lemma suites.
std::vector<SineMode> random_sine_field(unsigned seed, int kmax, int nmax, int count);
Field3D random_wall_field(const Grid& g, unsigned seed);
Field2D random_interface(const Grid& g, unsigned seed, double h4_size);

}  // namespace alepe
