#include "alepe/diagnostics.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "alepe/norms.hpp"
#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"

namespace alepe {
namespace {

using Pair = std::array<Field3D, 2>;

double vec_norm(const Field3D& a, const Field3D& b, const std::function<double(const Field3D&)>& n) {
  return hypot_all({n(a), n(b)});
}

double sq(double x) { return x * x; }

Field2D minus_one(const Field2D& h) {
  Field2D d = h;
  d += -1.0;
  return d;
}

// Pieces of the momentum tendency, each 2/3-rule filtered so that
// visc - adv - grad_p reproduces the stepper's dv/dt.
struct Tendency {
  Pair visc;
  Pair adv;
  Pair grad_p;
};

Tendency tendency_parts(const SimState& s, Regime regime) {
  const Grid& g = s.grid();
  Tendency out{{Field3D(g), Field3D(g)}, {Field3D(g), Field3D(g)}, {Field3D(g), Field3D(g)}};
  const Pair adv = regime == Regime::Full ? advect(s.v, s.maps) : Pair{Field3D(g), Field3D(g)};
  const Field3D gp[2] = {extrude(dx(s.p.p)), extrude(dy(s.p.p))};
  for (int a = 0; a < 2; ++a) {
    const Field3D& u = s.v.component(a);
    out.visc[a] = laplacian_h(u) + vertical_derivative(u, 2);
    if (regime == Regime::Full) out.visc[a] += dealias(laplacian_correction(u, s.maps));
    out.adv[a] = dealias(adv[a]);
    out.grad_p[a] = dealias(gp[a]);
  }
  return out;
}

// The balanced quantity X as a list of fields built from (v1, v2).
using Lift = std::function<std::vector<Field3D>(const Field3D&, const Field3D&)>;

std::vector<Field3D> lift_identity(const Field3D& a, const Field3D& b) { return {a, b}; }

std::vector<Field3D> lift_hessian(const Field3D& a, const Field3D& b) {
  std::vector<Field3D> out;
  for (const Field3D* u : {&a, &b}) {
    const Field3D u1 = dx(*u);
    const Field3D u2 = dy(*u);
    const Field3D u12 = dy(u1);
    out.push_back(dx(u1));
    out.push_back(u12);
    out.push_back(u12);
    out.push_back(dy(u2));
  }
  return out;
}

double weighted_dot(const Field3D& J, const std::vector<Field3D>& x, const std::vector<Field3D>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += integrate(J * x[i] * y[i]);
  return s;
}

double grad_a_energy(const AleMaps& maps, const std::vector<Field3D>& xs) {
  double s = 0.0;
  for (const Field3D& x : xs) {
    const auto gh = grad_aH(x, maps);
    const Field3D g3 = maps.a(2, 2) * vertical_derivative(x, 1);
    s += integrate(maps.J * (gh[0] * gh[0] + gh[1] * gh[1] + g3 * g3));
  }
  return s;
}

Field3D jacobian_rate(const SimState& s) { return extension_dz(s.height.h_t); }

// Pieces of rate + D - RHS given X, its lifted tendency parts and J_t at one state.
double balance_rhs(const SimState& s, const std::vector<Field3D>& x, const std::vector<Field3D>& visc,
                   const std::vector<Field3D>& adv, const std::vector<Field3D>& gp,
                   const Field3D& j_t, double dissipation) {
  const double viscous = weighted_dot(s.maps.J, x, visc) + dissipation;
  const double advective = -weighted_dot(s.maps.J, x, adv);
  const double pressure = -weighted_dot(s.maps.J, x, gp);
  const double commutator = 0.5 * weighted_dot(j_t, x, x);
  return viscous + advective + pressure + commutator;
}

std::vector<Field3D> lift_pair(const Lift& lift, const Pair& p) { return lift(p[0], p[1]); }

double lifted_balance(const SimState& prev, const SimState& cur, const SimState& next, double dt,
                      Regime regime, const Lift& lift) {
  auto energy = [&](const SimState& s) {
    const auto x = lift(s.v.v1, s.v.v2);
    return 0.5 * weighted_dot(s.maps.J, x, x);
  };
  const double rate = (energy(next) - energy(prev)) / (2.0 * dt);
  const auto x = lift(cur.v.v1, cur.v.v2);
  const double d = grad_a_energy(cur.maps, x);
  const Tendency t = tendency_parts(cur, regime);
  const double rhs = balance_rhs(cur, x, lift_pair(lift, t.visc), lift_pair(lift, t.adv),
                                 lift_pair(lift, t.grad_p), jacobian_rate(cur), d);
  return std::abs(rate + d - rhs);
}

double time_derivative_balance(const SimState& prev, const SimState& cur, const SimState& next,
                               double dt, Regime regime) {
  auto diff = [&](const SimState& a, const SimState& b, double scale) {
    return std::vector<Field3D>{(b.v.v1 - a.v.v1) * scale, (b.v.v2 - a.v.v2) * scale};
  };
  const auto x_minus = diff(prev, cur, 1.0 / dt);
  const auto x_plus = diff(cur, next, 1.0 / dt);
  const Field3D j_minus = 0.5 * (prev.maps.J + cur.maps.J);
  const Field3D j_plus = 0.5 * (cur.maps.J + next.maps.J);
  const double rate =
      (0.5 * weighted_dot(j_plus, x_plus, x_plus) - 0.5 * weighted_dot(j_minus, x_minus, x_minus)) / dt;

  const double c = 1.0 / (2.0 * dt);
  const auto x = diff(prev, next, c);
  const double d = grad_a_energy(cur.maps, x);
  const Tendency tp = tendency_parts(prev, regime);
  const Tendency tn = tendency_parts(next, regime);
  auto rate_of = [&](const Pair& a, const Pair& b) {
    return std::vector<Field3D>{(b[0] - a[0]) * c, (b[1] - a[1]) * c};
  };
  const Field3D j_t = (next.maps.J - prev.maps.J) * c;
  const double rhs = balance_rhs(cur, x, rate_of(tp.visc, tn.visc), rate_of(tp.adv, tn.adv),
                                 rate_of(tp.grad_p, tn.grad_p), j_t, d);
  return std::abs(rate + d - rhs);
}

double safe_ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 0.0;
  return num / den;
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "t",           "dpp_v",        "dp_v",          "v_l2",         "vt_l2",
      "htt_l2",      "ht_h2",        "h_dev_h4",      "dpp_v_h1_sq",  "dp_d3v_sq",
      "d3v_sq",      "vt_h1_sq",     "div_residual",  "piola_residual", "plate_residual",
      "j_min_dev",   "j_max_dev",    "a_dev",         "b_dev",        "p_h2",
      "k1_gap",      "energy_l2",    "dissipation_l2", "rhs_l2",      "picard_iters"};
  return cols;
}

std::vector<double> report_values(const EnergyReport& r) {
  return {r.t,           r.dpp_v,          r.dp_v,           r.v_l2,         r.vt_l2,
          r.htt_l2,      r.ht_h2,          r.h_dev_h4,       r.dpp_v_h1_sq,  r.dp_d3v_sq,
          r.d3v_sq,      r.vt_h1_sq,       r.div_residual,   r.piola_residual, r.plate_residual,
          r.j_min_dev,   r.j_max_dev,      r.a_dev,          r.b_dev,        r.p_h2,
          r.k1_gap,      r.energy_l2,      r.dissipation_l2, r.rhs_l2,
          static_cast<double>(r.picard_iters)};
}

BalanceTerms l2_balance_terms(const SimState& s, Regime regime) {
  const std::vector<Field3D> x = {s.v.v1, s.v.v2};
  const Tendency t = tendency_parts(s, regime);
  BalanceTerms b;
  b.energy = 0.5 * weighted_dot(s.maps.J, x, x);
  b.dissipation = grad_a_energy(s.maps, x);
  b.rhs = balance_rhs(s, x, {t.visc[0], t.visc[1]}, {t.adv[0], t.adv[1]},
                      {t.grad_p[0], t.grad_p[1]}, jacobian_rate(s), b.dissipation);
  return b;
}

EnergyReport theorem_norms(const SimState& s, const std::array<Field3D, 2>& v_t, const Field2D& h_tt,
                           Regime regime) {
  const Field3D& v1 = s.v.v1;
  const Field3D& v2 = s.v.v2;
  EnergyReport r;
  r.t = s.t;
  r.dpp_v = vec_norm(v1, v2, hessian_h_norm);
  r.dp_v = vec_norm(v1, v2, gradient_h_norm);
  r.v_l2 = vec_norm(v1, v2, [](const Field3D& f) { return l2_norm(f); });
  r.vt_l2 = vec_norm(v_t[0], v_t[1], [](const Field3D& f) { return l2_norm(f); });
  r.htt_l2 = l2_norm(h_tt);
  r.ht_h2 = sobolev_norm(s.height.h_t, 2.0);
  r.h_dev_h4 = sobolev_norm(minus_one(s.height.h), 4.0);

  const Field3D d3v1 = vertical_derivative(v1, 1);
  const Field3D d3v2 = vertical_derivative(v2, 1);
  const Multiplier hess = Multiplier::abs_power(2.0);
  r.dpp_v_h1_sq = sq(sobolev_norm(apply(v1, hess), 1.0)) + sq(sobolev_norm(apply(v2, hess), 1.0));
  r.dp_d3v_sq = sq(gradient_h_norm(d3v1)) + sq(gradient_h_norm(d3v2));
  r.d3v_sq = sq(l2_norm(d3v1)) + sq(l2_norm(d3v2));
  r.vt_h1_sq = sq(sobolev_norm(v_t[0], 1.0)) + sq(sobolev_norm(v_t[1], 1.0));

  r.div_residual = divergence_residual(s.v, s.maps);
  r.piola_residual = piola_residual(s.maps);
  r.plate_residual = plate_residual(s.p, s.height, h_tt);
  const MapBounds mb = map_bounds_check(s.maps, 0.5);
  r.j_min_dev = 1.0 - mb.j_min;
  r.j_max_dev = mb.j_max - 1.0;
  r.a_dev = mb.a_dev;
  r.b_dev = mb.b_dev;

  r.p_h2 = sobolev_norm(s.p.p, 2.0);
  if (regime == Regime::Full) r.k1_gap = assemble_source(s.v, s.maps, s.height).k1_gap;
  const BalanceTerms b = l2_balance_terms(s, regime);
  r.energy_l2 = b.energy;
  r.dissipation_l2 = b.dissipation;
  r.rhs_l2 = b.rhs;
  r.picard_iters = s.p.iterations;
  return r;
}

EnergyReport LedgerRecorder::observe(const SimState& s) {
  const Grid& g = s.grid();
  std::array<Field3D, 2> v_t{Field3D(g), Field3D(g)};
  Field2D h_tt(g);
  if (prev_ && s.t > prev_->t) {
    const double inv = 1.0 / (s.t - prev_->t);
    v_t = {(s.v.v1 - prev_->v1) * inv, (s.v.v2 - prev_->v2) * inv};
    h_tt = (s.height.h_t - prev_->h_t) * inv;
  } else {
    v_t = velocity_tendency(s, regime_);
    h_tt = plate_acceleration(s.p.p, s.height.h);
  }
  EnergyReport r = theorem_norms(s, v_t, h_tt, regime_);
  prev_ = Previous{s.t, s.v.v1, s.v.v2, s.height.h_t};
  return r;
}

BalanceResidual energy_balance_residual(std::span<const SimState> window, Regime regime) {
  if (window.size() < 3) throw WindowTooShort("energy balance needs at least 3 states");
  const double dt = window[1].t - window[0].t;
  if (!(dt > 0.0)) throw InvalidInput("energy balance window must advance in time");
  for (std::size_t i = 1; i < window.size(); ++i) {
    const double step = window[i].t - window[i - 1].t;
    if (std::abs(step - dt) > 1e-9 * dt) throw InvalidInput("energy balance window must have uniform dt");
  }
  BalanceResidual out;
  for (std::size_t i = 1; i + 1 < window.size(); ++i) {
    const SimState& a = window[i - 1];
    const SimState& b = window[i];
    const SimState& c = window[i + 1];
    out.l2 = std::max(out.l2, lifted_balance(a, b, c, dt, regime, lift_identity));
    out.tangential = std::max(out.tangential, lifted_balance(a, b, c, dt, regime, lift_hessian));
    out.time_derivative = std::max(out.time_derivative, time_derivative_balance(a, b, c, dt, regime));
  }
  return out;
}

LemmaCheckResult lemma43_check(std::span<const SineMode> field, int m, double beta, double gamma) {
  if (m < 1) throw InvalidInput("m must be a positive integer");
  if (!(beta > 0.0)) throw InvalidInput("beta must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("gamma must lie in (0, 1)");
  const double alpha = m * gamma;
  if (std::abs(alpha - std::round(alpha)) > 1e-12)
    throw InvalidInput("m*gamma must be an integer");

  double lhs = 0.0;
  double vert = 0.0;
  double horiz = 0.0;
  const double b2 = beta / (1.0 - gamma);
  for (const SineMode& mode : field) {
    if (mode.n < 1) throw InvalidInput("sine modes start at n = 1");
    const double c2 = mode.coeff * mode.coeff;
    const double npi = mode.n * std::numbers::pi;
    const double k = std::hypot(mode.kx, mode.ky);
    lhs += c2 * std::pow(npi, 2.0 * alpha) * std::pow(k, 2.0 * beta);
    vert += c2 * std::pow(npi, 2.0 * m);
    horiz += c2 * std::pow(k, 2.0 * b2);
  }
  LemmaCheckResult r;
  r.lemma = "interpolation-sine";
  std::ostringstream p;
  p << "m=" << m << " beta=" << beta << " gamma=" << gamma;
  r.params = p.str();
  r.ratio = safe_ratio(std::sqrt(lhs), std::pow(vert, 0.5 * gamma) * std::pow(horiz, 0.5 * (1.0 - gamma)));
  r.bound = 1.0 + 1e-9;
  r.pass = r.ratio <= r.bound;
  return r;
}

std::array<LemmaCheckResult, 2> lemma44_check(const Field3D& v, AgmonVariant variant, double cap) {
  const Grid& g = v.grid();
  const double wall = std::max(plane_of(v, 0).max_abs(), plane_of(v, g.nz() - 1).max_abs());
  if (wall > 1e-8 * std::max(1.0, v.max_abs()))
    throw InvalidInput("field does not vanish at z = 0 and z = 1");

  const Field3D d3 = vertical_derivative(v, 1);
  const double n_v = l2_norm(v);
  const double n_d3 = l2_norm(d3);
  double lhs = 0.0;
  double full = 0.0;
  double leading = 0.0;
  if (variant == AgmonVariant::Isotropic) {
    lhs = v.max_abs();
    const double n_pp = hessian_h_norm(v);
    const double n_d3pp = hessian_h_norm(d3);
    const double a = std::pow(n_v * n_pp, 0.25);
    const double b = std::pow(n_d3 * n_d3pp, 0.25);
    full = (a + std::sqrt(n_v)) * (b + std::sqrt(n_d3));
    leading = a * b;
  } else {
    NormSpec spec;
    spec.inner = Lp::LInf;
    spec.outer = Lp::L4;
    spec.inner_axis = Axis::Vertical;
    lhs = norm(v, spec);
    const Multiplier half = Multiplier::abs_power(0.5);
    const double a = std::sqrt(l2_norm(apply(v, half)));
    const double b = std::sqrt(l2_norm(apply(d3, half)));
    full = (a + std::sqrt(n_v)) * (b + std::sqrt(n_d3));
    leading = a * b;
  }
  const std::string name = variant == AgmonVariant::Isotropic ? "sup-isotropic" : "sup-anisotropic";
  LemmaCheckResult r_full{name, "with lower-order terms", safe_ratio(lhs, full), cap, true, false};
  r_full.pass = r_full.ratio <= cap;
  LemmaCheckResult r_lead{name, "leading term only", safe_ratio(lhs, leading), cap, false, true};
  r_lead.pass = std::isfinite(r_lead.ratio);
  return {r_full, r_lead};
}

std::vector<LemmaCheckResult> lemma41_check(const Field2D& h) {
  const Grid& g = h.grid();
  const AleMaps maps = build_maps(h, Field2D(g));
  const Field3D z = sample(g, [](double, double, double zz) { return zz; });
  const Field2D dh = minus_one(h);

  auto matrix_norm = [&](double r, bool deviation) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Field3D e = maps.b(i, j);
        if (deviation && i == j) e += -1.0;
        s += sq(sobolev_norm(e, r));
      }
    return std::sqrt(s);
  };
  auto make = [](std::string params, double num, double den) {
    LemmaCheckResult r{"extension-bounds", std::move(params), safe_ratio(num, den),
                       std::numeric_limits<double>::infinity(), false, false};
    r.pass = std::isfinite(r.ratio);
    return r;
  };

  std::vector<LemmaCheckResult> out;
  for (double r : {1.0, 1.5, 2.0}) {
    std::ostringstream p;
    p << "(i) r=" << r;
    out.push_back(make(p.str(), sobolev_norm(maps.phi, r), sobolev_norm(h, r - 0.5)));
  }
  for (double r : {0.0, 1.0}) {
    std::ostringstream p;
    p << "(ii) r=" << r;
    out.push_back(make(p.str(), matrix_norm(r, false), sobolev_norm(h, r + 0.5)));
  }
  out.push_back(make("(iii) s=2", maps.J.max_abs(), sobolev_norm(h, 2.5)));

  for (double r : {1.0, 1.5, 2.0}) {
    std::ostringstream p;
    p << "(i) deviation r=" << r;
    out.push_back(make(p.str(), sobolev_norm(maps.phi - z, r), sobolev_norm(dh, r - 0.5)));
  }
  for (double r : {0.0, 1.0}) {
    std::ostringstream p;
    p << "(ii) deviation r=" << r;
    out.push_back(make(p.str(), matrix_norm(r, true), sobolev_norm(dh, r + 0.5)));
  }
  Field3D jdev = maps.J;
  jdev += -1.0;
  out.push_back(make("(iii) deviation s=2", jdev.max_abs(), sobolev_norm(dh, 2.5)));
  return out;
}

std::vector<SineMode> random_sine_field(unsigned seed, int kmax, int nmax, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kd(-kmax, kmax);
  std::uniform_int_distribution<int> nd(1, nmax);
  std::normal_distribution<double> cd(0.0, 1.0);
  std::vector<SineMode> out;
  out.reserve(count);
  // Distinct (k, n) so the list is an orthogonal expansion.
  std::set<std::tuple<int, int, int>> seen;
  const std::size_t available = static_cast<std::size_t>(2 * kmax + 1) * (2 * kmax + 1) * nmax;
  while (out.size() < static_cast<std::size_t>(count) && seen.size() < available) {
    const SineMode m{kd(rng), kd(rng), nd(rng), cd(rng)};
    if (seen.insert({m.kx, m.ky, m.n}).second) out.push_back(m);
  }
  return out;
}

Field3D random_wall_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> cd(0.0, 1.0);
  const int kmax = std::min(4, dealias_cutoff(std::min(g.nx(), g.ny())));
  struct Term {
    int kx, ky, n;
    double c, s;
  };
  std::vector<Term> terms;
  for (int kx = -kmax; kx <= kmax; ++kx)
    for (int ky = 0; ky <= kmax; ++ky)
      for (int n = 1; n <= 4; ++n) {
        const double decay = 1.0 / (1.0 + kx * kx + ky * ky + n * n);
        terms.push_back({kx, ky, n, cd(rng) * decay, cd(rng) * decay});
      }
  // Separable trig tables; direct evaluation per point is too slow for the suites.
  const int nk = 2 * kmax + 1;
  auto table = [&](int n, double step, int count, auto fn) {
    std::vector<double> out(static_cast<std::size_t>(n) * count);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < count; ++k) out[i * count + k] = fn(k, i * step);
    return out;
  };
  const double hx = 2.0 * std::numbers::pi / g.nx();
  const double hy = 2.0 * std::numbers::pi / g.ny();
  const auto cx = table(g.nx(), hx, nk, [&](int k, double x) { return std::cos((k - kmax) * x); });
  const auto sx = table(g.nx(), hx, nk, [&](int k, double x) { return std::sin((k - kmax) * x); });
  const auto cy = table(g.ny(), hy, kmax + 1, [](int k, double y) { return std::cos(k * y); });
  const auto sy = table(g.ny(), hy, kmax + 1, [](int k, double y) { return std::sin(k * y); });
  Field3D out(g);
  for (int iz = 0; iz < g.nz(); ++iz) {
    double sz[5] = {0.0};
    for (int n = 1; n <= 4; ++n) sz[n] = std::sin(n * std::numbers::pi * g.z(iz));
    auto level = out.level(iz);
    for (int ix = 0; ix < g.nx(); ++ix)
      for (int iy = 0; iy < g.ny(); ++iy) {
        double v = 0.0;
        for (const Term& t : terms) {
          const int a = ix * nk + t.kx + kmax;
          const int b = iy * (kmax + 1) + t.ky;
          const double cph = cx[a] * cy[b] - sx[a] * sy[b];
          const double sph = sx[a] * cy[b] + cx[a] * sy[b];
          v += (t.c * cph + t.s * sph) * sz[t.n];
        }
        level[ix * g.ny() + iy] = v;
      }
  }
  return out;
}

Field2D random_interface(const Grid& g, unsigned seed, double h4_size) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> cd(0.0, 1.0);
  const int kmax = std::min(4, dealias_cutoff(std::min(g.nx(), g.ny())));
  Spectrum2D s(g);
  for (int ikx = 0; ikx < g.nx(); ++ikx)
    for (int iky = 0; iky < g.nyh(); ++iky) {
      const int kx = g.kx(ikx);
      const int ky = g.ky(iky);
      if (std::abs(kx) > kmax || ky > kmax || (kx == 0 && ky == 0)) continue;
      // The ky = 0 column must stay Hermitian: keep kx > 0 and mirror.
      if (ky == 0 && kx < 0) continue;
      s.at(ikx, iky) = Complex(cd(rng), cd(rng));
      if (ky == 0) s.at((g.nx() - kx) % g.nx(), 0) = std::conj(s.at(ikx, iky));
    }
  Field2D dev = inverse(s);
  const double n = sobolev_norm(dev, 4.0);
  dev *= h4_size / n;
  dev += 1.0;
  return dev;
}

}  // namespace alepe
