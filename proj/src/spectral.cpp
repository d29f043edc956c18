#include "alepe/spectral.hpp"

#include <fftw3.h>

#include <charconv>
#include <map>
#include <mutex>
#include <tuple>

namespace alepe {
namespace {

// fftw_plan creation is not thread-safe; execution through the new-array
// interface is. Plans live for the lifetime of the process.
struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int, bool>, fftw_plan> plans;

  fftw_plan get(int nx, int ny, int howmany, bool is_forward) {
    std::lock_guard lock(mu);
    auto key = std::make_tuple(nx, ny, howmany, is_forward);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    const int n[2] = {nx, ny};
    const int real_dist = nx * ny;
    const int cplx_dist = nx * (ny / 2 + 1);
    std::vector<double> rbuf(static_cast<std::size_t>(real_dist) * howmany);
    std::vector<fftw_complex> cbuf(static_cast<std::size_t>(cplx_dist) * howmany);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = is_forward
                      ? fftw_plan_many_dft_r2c(2, n, howmany, rbuf.data(), nullptr, 1, real_dist,
                                               cbuf.data(), nullptr, 1, cplx_dist, flags)
                      : fftw_plan_many_dft_c2r(2, n, howmany, cbuf.data(), nullptr, 1, cplx_dist,
                                               rbuf.data(), nullptr, 1, real_dist, flags);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

template <class Tag>
Spectrum<Tag> forward_impl(const Field<Tag>& f) {
  const Grid& g = f.grid();
  Spectrum<Tag> out(g);
  std::vector<double> in(f.values());
  fftw_plan p = cache().get(g.nx(), g.ny(), f.levels(), true);
  fftw_execute_dft_r2c(p, in.data(), reinterpret_cast<fftw_complex*>(out.values().data()));
  const double scale = 1.0 / static_cast<double>(g.plane_size());
  out *= scale;
  return out;
}

template <class Tag>
Field<Tag> inverse_impl(const Spectrum<Tag>& s) {
  const Grid& g = s.grid();
  Field<Tag> out(g);
  std::vector<Complex> in(s.values());  // c2r overwrites its input
  fftw_plan p = cache().get(g.nx(), g.ny(), s.levels(), false);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in.data()), out.values().data());
  return out;
}

}  // namespace

Spectrum2D forward(const Field2D& f) { return forward_impl(f); }
Spectrum3D forward(const Field3D& f) { return forward_impl(f); }
Field2D inverse(const Spectrum2D& s) { return inverse_impl(s); }
Field3D inverse(const Spectrum3D& s) { return inverse_impl(s); }

Multiplier Multiplier::abs_power(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw InvalidInput("fractional order must be finite and >= 0");
  return {MultiplierKind::AbsPower, beta};
}

Multiplier Multiplier::bessel(double s) {
  if (!std::isfinite(s)) throw InvalidInput("Bessel order must be finite");
  return {MultiplierKind::Bessel, s};
}

Complex Multiplier::symbol(const Grid& g, int ikx, int iky) const noexcept {
  const double k1 = g.kx(ikx);
  const double k2 = g.ky(iky);
  const double k2sum = k1 * k1 + k2 * k2;
  switch (kind) {
    case MultiplierKind::D1:
      return (2 * ikx == g.nx()) ? Complex{} : Complex(0.0, k1);
    case MultiplierKind::D2:
      return (2 * iky == g.ny()) ? Complex{} : Complex(0.0, k2);
    case MultiplierKind::Laplacian:
      return -k2sum;
    case MultiplierKind::Bilaplacian:
      return k2sum * k2sum;
    case MultiplierKind::AbsPower:
      if (order == 0.0) return 1.0;
      return k2sum == 0.0 ? 0.0 : std::pow(k2sum, 0.5 * order);
    case MultiplierKind::Bessel:
      return std::pow(1.0 + k2sum, 0.5 * order);
  }
  return 0.0;
}

Multiplier parse_multiplier(std::string_view text) {
  auto number_after = [&](std::string_view prefix) {
    std::string_view rest = text.substr(prefix.size());
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
      throw InvalidInput("malformed multiplier order in '" + std::string(text) + "'");
    return v;
  };
  if (text == "d1") return Multiplier::d1();
  if (text == "d2") return Multiplier::d2();
  if (text == "lap") return Multiplier::laplacian();
  if (text == "bilap") return Multiplier::bilaplacian();
  if (text == "bessel") return Multiplier::bessel();
  if (text.starts_with("abs:")) return Multiplier::abs_power(number_after("abs:"));
  if (text.starts_with("bessel:")) return Multiplier::bessel(number_after("bessel:"));
  throw InvalidInput("unknown horizontal operator '" + std::string(text) + "'");
}

Field2D apply(const Field2D& f, const Multiplier& m) { return inverse(apply(forward(f), m)); }
Field3D apply(const Field3D& f, const Multiplier& m) { return inverse(apply(forward(f), m)); }

Field2D dx(const Field2D& f) { return apply(f, Multiplier::d1()); }
Field2D dy(const Field2D& f) { return apply(f, Multiplier::d2()); }
Field3D dx(const Field3D& f) { return apply(f, Multiplier::d1()); }
Field3D dy(const Field3D& f) { return apply(f, Multiplier::d2()); }
Field2D laplacian_h(const Field2D& f) { return apply(f, Multiplier::laplacian()); }
Field3D laplacian_h(const Field3D& f) { return apply(f, Multiplier::laplacian()); }

int dealias_cutoff(int n) noexcept { return n / 3; }

Field2D dealias(const Field2D& f) {
  auto s = forward(f);
  truncate(s);
  return inverse(s);
}

Field3D dealias(const Field3D& f) {
  auto s = forward(f);
  truncate(s);
  return inverse(s);
}

}  // namespace alepe
