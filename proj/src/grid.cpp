#include "phaselab/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "phaselab/error.hpp"
#include "phaselab/kernels.hpp"

namespace phaselab {

Grid2D::Grid2D(int nx, int ny, Bounds bounds) : nx_(nx), ny_(ny), bounds_(bounds) {
  require(nx >= 3 && ny >= 3, ErrorCode::InvalidConfig, "grid needs at least 3x3 nodes");
  require(bounds.x_max > bounds.x_min && bounds.y_max > bounds.y_min, ErrorCode::InvalidConfig,
          "grid bounds must satisfy max > min");
  hx_ = (bounds.x_max - bounds.x_min) / (nx - 1);
  hy_ = (bounds.y_max - bounds.y_min) / (ny - 1);
}

ScalarField2D::ScalarField2D(Grid2D grid, double z)
    : grid_(grid), values_(grid.size(), 0.0), z_(z) {}

ScalarField2D::ScalarField2D(Grid2D grid, std::vector<double> values, double z)
    : grid_(grid), values_(std::move(values)), z_(z) {
  require(values_.size() == grid_.size(), ErrorCode::DimensionMismatch,
          "field has " + std::to_string(values_.size()) + " values, grid needs " +
              std::to_string(grid_.size()));
  require(std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }),
          ErrorCode::InvalidConfig, "field values must be finite");
}

ScalarField2D ScalarField2D::sample(const Grid2D& grid, double z,
                                    const std::function<double(double, double)>& f) {
  ScalarField2D out(grid, z);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.x(i), grid.y(j));
  return out;
}

double ScalarField2D::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField2D::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField2D::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(size());
}

FieldStack::FieldStack(std::vector<ScalarField2D> slices) : slices_(std::move(slices)) {
  require(!slices_.empty(), ErrorCode::TooFewSlices, "stack needs at least one slice");
  const Grid2D& g = slices_.front().grid();
  for (const auto& s : slices_)
    require(s.grid() == g, ErrorCode::GridMismatch, "stack slices must share one grid");
  if (slices_.size() < 2) return;
  dz_ = slices_[1].z() - slices_[0].z();
  for (std::size_t k = 1; k < slices_.size(); ++k) {
    const double step = slices_[k].z() - slices_[k - 1].z();
    require(step > 0.0, ErrorCode::NonUniformZ, "stack z values must increase strictly");
    require(std::abs(step - dz_) <= 1e-12 * std::max(std::abs(dz_), 1.0), ErrorCode::NonUniformZ,
            "stack z spacing is not uniform");
  }
}

void require_same_grid(const ScalarField2D& a, const ScalarField2D& b, const char* what) {
  require(a.grid() == b.grid(), ErrorCode::GridMismatch, what);
}

namespace {

// Derivative along one axis at position `at` of a line of `n` samples
// reached by f(idx).
template <typename F>
double first_derivative(F f, int at, int n, double h) {
  if (at == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  if (at == n - 1) return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
  return (f(at + 1) - f(at - 1)) / (2.0 * h);
}

template <typename F>
double second_derivative(F f, int at, int n, double h) {
  const double h2 = h * h;
  if (at > 0 && at < n - 1) return (f(at - 1) - 2.0 * f(at) + f(at + 1)) / h2;
  if (n == 3) return (f(0) - 2.0 * f(1) + f(2)) / h2;
  if (at == 0) return (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / h2;
  return (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / h2;
}

kernels::StencilRow interior_row(const Grid2D& g, int j) {
  return {g.index(1, j), static_cast<std::size_t>(g.nx() - 2), static_cast<std::size_t>(g.nx()),
          1.0 / (g.hx() * g.hx()), 1.0 / (g.hy() * g.hy())};
}

}  // namespace

Gradient fd_gradient(const ScalarField2D& f) {
  const Grid2D& g = f.grid();
  Gradient out{ScalarField2D(g, f.z()), ScalarField2D(g, f.z())};
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      out.dx(i, j) = first_derivative([&](int a) { return f(a, j); }, i, g.nx(), g.hx());
      out.dy(i, j) = first_derivative([&](int b) { return f(i, b); }, j, g.ny(), g.hy());
    }
  }
  return out;
}

ScalarField2D fd_laplacian(const ScalarField2D& f) {
  const Grid2D& g = f.grid();
  ScalarField2D out(g, f.z());
  const auto& k = kernels::active();
  for (int j = 1; j < g.ny() - 1; ++j) k.laplacian_row(interior_row(g, j), f.data(), out.data());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.is_boundary(i, j)) continue;
      out(i, j) = second_derivative([&](int a) { return f(a, j); }, i, g.nx(), g.hx()) +
                  second_derivative([&](int b) { return f(i, b); }, j, g.ny(), g.hy());
    }
  }
  return out;
}

ScalarField2D compute_i_hat(const ScalarField2D& intensity) {
  std::vector<double> root(intensity.size());
  for (std::size_t n = 0; n < root.size(); ++n) {
    const double v = intensity.values()[n];
    require(v > 0.0, ErrorCode::NonPositiveIntensity, "intensity must be strictly positive");
    root[n] = std::sqrt(v);
  }
  const ScalarField2D amp(intensity.grid(), std::move(root), intensity.z());
  ScalarField2D out = fd_laplacian(amp);
  for (std::size_t n = 0; n < out.size(); ++n) out.values()[n] /= amp.values()[n];
  return out;
}

ScalarField2D fd_divergence_of_flux(const ScalarField2D& coef, const ScalarField2D& phi) {
  require_same_grid(coef, phi, "fd_divergence_of_flux: coefficient and phase grids differ");
  const Grid2D& g = phi.grid();
  ScalarField2D out(g, phi.z());
  const auto& k = kernels::active();
  for (int j = 1; j < g.ny() - 1; ++j)
    k.flux_divergence_row(interior_row(g, j), coef.data(), phi.data(), out.data());
  return out;
}

ScalarField2D stack_z_derivative(const FieldStack& stack, std::size_t slice_index) {
  require(stack.size() >= 3, ErrorCode::TooFewSlices, "z derivative needs at least 3 slices");
  require(slice_index < stack.size(), ErrorCode::IndexOutOfRange,
          "slice index " + std::to_string(slice_index) + " out of range");
  const Grid2D& g = stack.grid();
  const int n = static_cast<int>(stack.size());
  const int at = static_cast<int>(slice_index);
  ScalarField2D out(g, stack[slice_index].z());
  for (std::size_t m = 0; m < g.size(); ++m) {
    out.values()[m] =
        first_derivative([&](int s) { return stack[s].values()[m]; }, at, n, stack.dz());
  }
  return out;
}

ErrorNorms field_error_norms(const ScalarField2D& a, const ScalarField2D& b, NormRegion region) {
  require_same_grid(a, b, "field_error_norms: grids differ");
  const Grid2D& g = a.grid();
  double diff2 = 0.0, ref2 = 0.0, diff_inf = 0.0, ref_inf = 0.0, point_rel = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (region == NormRegion::Interior && g.is_boundary(i, j)) continue;
      const double d = std::abs(a(i, j) - b(i, j));
      const double r = std::abs(b(i, j));
      diff2 += d * d;
      ref2 += r * r;
      diff_inf = std::max(diff_inf, d);
      ref_inf = std::max(ref_inf, r);
      if (r > 0.0) point_rel = std::max(point_rel, d / r);
    }
  }
  ErrorNorms out;
  out.linf_abs = diff_inf;
  out.max_pointwise_rel = point_rel;
  if (ref2 == 0.0) {
    out.absolute_fallback = true;
    out.l2_rel = std::sqrt(diff2);
    out.linf_rel = diff_inf;
  } else {
    out.l2_rel = std::sqrt(diff2 / ref2);
    out.linf_rel = diff_inf / ref_inf;
  }
  return out;
}

double linf(const ScalarField2D& f, NormRegion region) {
  const Grid2D& g = f.grid();
  double m = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (region == NormRegion::All || !g.is_boundary(i, j)) m = std::max(m, std::abs(f(i, j)));
  return m;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), ErrorCode::Io,
          context + ": cannot parse number '" + std::string(s) + "'");
  return v;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void write_fld(const std::filesystem::path& path, const ScalarField2D& field) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path.string() + " for writing");
  const Grid2D& g = field.grid();
  const Bounds& b = g.bounds();
  os << "# nx=" << g.nx() << "\n# ny=" << g.ny() << "\n# x_min=" << format_double(b.x_min)
     << "\n# x_max=" << format_double(b.x_max) << "\n# y_min=" << format_double(b.y_min)
     << "\n# y_max=" << format_double(b.y_max) << "\n# z=" << format_double(field.z()) << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (i) os << ' ';
      os << format_double(field(i, j));
    }
    os << '\n';
  }
  require(static_cast<bool>(os), ErrorCode::Io, "write failed for " + path.string());
}

ScalarField2D read_fld(const std::filesystem::path& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorCode::Io, "cannot open " + path.string());
  const std::string ctx = path.string();
  std::map<std::string, std::string> header;
  std::vector<double> values;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.front() == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos) header[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    std::istringstream row(line);
    std::string tok;
    while (row >> tok) values.push_back(parse_double(tok, ctx));
  }
  const auto need = [&](const char* key) {
    const auto it = header.find(key);
    require(it != header.end(), ErrorCode::Io, ctx + ": missing header key '" + key + "'");
    return parse_double(it->second, ctx);
  };
  const Grid2D grid(static_cast<int>(need("nx")), static_cast<int>(need("ny")),
                    Bounds{need("x_min"), need("x_max"), need("y_min"), need("y_max")});
  require(values.size() == grid.size(), ErrorCode::Io,
          ctx + ": expected " + std::to_string(grid.size()) + " values, found " +
              std::to_string(values.size()));
  const double z = header.count("z") ? need("z") : 0.0;
  return ScalarField2D(grid, std::move(values), z);
}

}  // namespace phaselab
