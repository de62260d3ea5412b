#include "fm/projection.hpp"

#include <algorithm>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "fm/energy.hpp"
#include "fm/entropy.hpp"
#include "fm/parallel.hpp"

namespace fm {

Grid1D::Grid1D(int level, long lo, std::vector<double> mass, double total)
    : level_(level), lo_(lo), mass_(std::move(mass)), total_(total) {
  // trim zero margins
  std::size_t b = 0, e = mass_.size();
  while (b < e && mass_[b] == 0) ++b;
  while (e > b && mass_[e - 1] == 0) --e;
  lo_ += static_cast<long>(b);
  mass_.assign(mass_.begin() + static_cast<long>(b), mass_.begin() + static_cast<long>(e));
}

double Grid1D::l2_norm_sq() const {
  double acc = 0;
  for (double m : mass_) acc += m * m;
  return std::exp2(static_cast<double>(level_)) * acc;
}

double Grid1D::entropy_bits() const {
  if (std::abs(total_ - 1.0) > 1e-9)
    throw validation_error("Grid1D::entropy_bits: measure must be normalized");
  return fm::entropy_bits(mass_);
}

Grid1D Grid1D::coarsened(int coarse_level) const {
  if (coarse_level > level_) throw validation_error("Grid1D::coarsened: level above grid");
  int shift = level_ - coarse_level;
  auto floor_div = [shift](long i) { return i >= 0 ? (i >> shift) : -(((-i - 1) >> shift) + 1); };
  long clo = floor_div(lo_);
  long chi = floor_div(lo_ + static_cast<long>(mass_.size()) - 1);
  std::vector<double> out(static_cast<std::size_t>(chi - clo + 1), 0.0);
  for (std::size_t i = 0; i < mass_.size(); ++i)
    out[static_cast<std::size_t>(floor_div(lo_ + static_cast<long>(i)) - clo)] += mass_[i];
  return Grid1D(coarse_level, clo, std::move(out), total_);
}

double Grid1D::entropy_bits_at(int coarse_level) const {
  if (coarse_level == level_) return entropy_bits();
  return coarsened(coarse_level).entropy_bits();
}

LineBinner::LineBinner(int level, double tmin, double tmax) : level_(level) {
  scale_ = std::exp2(static_cast<double>(level));
  lo_ = static_cast<long>(std::floor(tmin * scale_)) - 1;
  long hi = static_cast<long>(std::floor(tmax * scale_)) + 2;
  bins_.assign(static_cast<std::size_t>(hi - lo_), 0.0);
}

Grid1D LineBinner::finish(double total) const { return Grid1D(level_, lo_, bins_, total); }

Grid1D project_grid(const GridMeasure& grid, const Direction& theta, int subdiv,
                    int out_level) {
  if (grid.dim() != 2) throw validation_error("project_grid: grid must be 2d");
  if (subdiv < 0) throw validation_error("project_grid: subdiv must be >= 0");
  int m = grid.level();
  double h = std::exp2(-m);
  LineBinner binner(out_level, -1.5, 1.5);

  int ns = 1 << subdiv;
  double sub = h / ns;
  double atom_scale = 1.0 / static_cast<double>(ns * ns);
  for (const auto& [key, mass] : grid.cells()) {
    double x0 = static_cast<double>(morton_x(2, key)) * h;
    double y0 = static_cast<double>(morton_y(2, key)) * h;
    double am = mass * atom_scale;
    for (int a = 0; a < ns; ++a) {
      double px = x0 + (a + 0.5) * sub;
      double tx = theta.ux * px;
      for (int b = 0; b < ns; ++b) {
        double py = y0 + (b + 0.5) * sub;
        binner.add(tx + theta.uy * py, am);
      }
    }
  }
  return binner.finish(grid.total());
}

Grid1D project_grid(const GridMeasure& grid, const Direction& theta, int subdiv) {
  return project_grid(grid, theta, subdiv, grid.level());
}

L2Comparison l2_comparison(const GridMeasure& grid, const Direction& theta) {
  if (grid.total() <= 0) throw validation_error("l2_comparison: zero measure");
  L2Comparison r;
  r.a = project_grid(grid, theta, 0).l2_norm_sq();
  r.b = project_grid(grid, theta, 3).l2_norm_sq();
  r.ratio = r.a / r.b;
  return r;
}

namespace {

inline double sinc(double z) { return z == 0 ? 1.0 : std::sin(z) / z; }

// |G(xi_i)|^2 at the nodes of one spectral period, G(xi) = sum_k m_k
// e^{2 pi i xi c_k}. The bin centers are equispaced by w, so |G| has period
// 1/w; with n nodes per period the values are the moduli of the zero-padded
// DFT of the mass vector (the center offset only contributes a unit phase).
// FFTW plan creation is not thread safe; execution is.
std::vector<double> spectrum_one_period(const std::vector<double>& mass, std::size_t n) {
  static std::mutex plan_mutex;
  std::vector<std::complex<double>> buf(n, 0.0);
  for (std::size_t k = 0; k < mass.size(); ++k) buf[k] = mass[k];
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(buf.data()),
                            reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  std::vector<double> gsq(n);
  for (std::size_t i = 0; i < n; ++i) gsq[i] = std::norm(buf[i]);
  return gsq;
}

}  // namespace

double sobolev_norm_sq(const Grid1D& line, double gamma, double cutoff, double quad_step) {
  if (!(gamma > -0.5) || !(gamma < 0.5))
    throw validation_error("sobolev_norm_sq: gamma must lie in (-1/2, 1/2)");
  double min_cutoff = std::exp2(static_cast<double>(line.level() + 3));
  if (cutoff < min_cutoff)
    throw validation_error("sobolev_norm_sq: cutoff below 2^{m+3}");
  if (!(quad_step > 0)) throw validation_error("sobolev_norm_sq: bad step");

  const auto& mass = line.masses();
  double w = std::exp2(static_cast<double>(-line.level()));
  std::size_t nodes = static_cast<std::size_t>(std::ceil(cutoff / quad_step));

  double period = 1.0 / w;
  double per_nodes_f = period / quad_step;
  std::size_t per_nodes = static_cast<std::size_t>(std::llround(per_nodes_f));
  bool periodic = per_nodes >= mass.size() &&
                  std::abs(per_nodes_f - static_cast<double>(per_nodes)) < 1e-9;

  std::vector<double> gsq;
  if (periodic) {
    gsq = spectrum_one_period(mass, per_nodes);
  } else {
    // direct evaluation at every node (custom steps)
    gsq.resize(nodes + 1);
    double c0 = (static_cast<double>(line.lo()) + 0.5) * w;
    for (std::size_t i = 0; i <= nodes; ++i) {
      double xi = static_cast<double>(i) * quad_step;
      double re = 0, im = 0;
      double cr = std::cos(2.0 * M_PI * xi * c0), ci = std::sin(2.0 * M_PI * xi * c0);
      double dr = std::cos(2.0 * M_PI * xi * w), di = std::sin(2.0 * M_PI * xi * w);
      for (double mk : mass) {
        re += mk * cr;
        im += mk * ci;
        double nr = cr * dr - ci * di;
        ci = cr * di + ci * dr;
        cr = nr;
      }
      gsq[i] = re * re + im * im;
    }
  }
  auto gsq_at = [&](std::size_t i) { return periodic ? gsq[i % per_nodes] : gsq[i]; };

  double ex = 2.0 * gamma + 1.0;
  auto weight = [&](double a, double b) { return (std::pow(b, ex) - std::pow(a, ex)) / ex; };

  double acc = 0;
  double f_prev = gsq_at(0);  // sinc(0)^2 = 1
  for (std::size_t i = 0; i < nodes; ++i) {
    double xi0 = static_cast<double>(i) * quad_step;
    double xi1 = std::min(cutoff, xi0 + quad_step);
    double s1 = sinc(M_PI * xi1 * w);
    double f1 = s1 * s1 * gsq_at(i + 1);
    acc += 0.5 * (f_prev + f1) * weight(xi0, xi1);
    f_prev = f1;
  }
  return 2.0 * acc;  // negative frequencies mirror
}

// Default quadrature: cutoff 2^{m+5}; step 1/8, so the Dirichlet-kernel
// features of the spectrum (width ~ 1 / support length, and the support never
// exceeds a few units) are well resolved. A step tied only to the cutoff
// undersamples those features and inflates the integral.
double sobolev_norm_sq(const Grid1D& line, double gamma) {
  double cutoff = std::exp2(static_cast<double>(line.level() + 5));
  return sobolev_norm_sq(line, gamma, cutoff, 0.125);
}

MarstrandResult marstrand_integral(const MeasureTree& tree, double gamma, int n_angles,
                                   int subdiv) {
  if (n_angles < 16) throw validation_error("marstrand_integral: need n_angles >= 16");
  double s = 1.0 + 2.0 * gamma;
  if (!(s > 0) || !(s < 2)) throw validation_error("marstrand_integral: s=1+2gamma outside (0,2)");
  auto grid = discretize(tree, tree.depth());
  auto dirs = angle_grid(n_angles);
  while (subdiv > 0 &&
         grid.size() * (std::size_t{1} << (2 * subdiv)) > (std::size_t{1} << 26)) {
    --subdiv;
  }

  auto chunk = [&](std::size_t b, std::size_t e) {
    std::vector<double> vals;
    vals.reserve(e - b);
    for (std::size_t i = b; i < e; ++i)
      vals.push_back(sobolev_norm_sq(project_grid(grid, dirs[i], subdiv), gamma));
    return vals;
  };
  std::vector<double> all;
  all = parallel_chunked<std::vector<double>>(
      dirs.size(), std::move(all), chunk,
      [](std::vector<double>& acc, std::vector<double>&& part) {
        acc.insert(acc.end(), part.begin(), part.end());
      });

  MarstrandResult r;
  r.subdiv_used = subdiv;
  for (double v : all) r.lhs += v;
  r.lhs /= static_cast<double>(n_angles);
  r.rhs = dyadic_energy(tree, FloatExponent(s, tree.dim()));
  r.ratio = r.lhs / r.rhs;
  return r;
}

std::vector<AngleSweepRow> angle_sweep(const MeasureTree& tree, double gamma, int n_angles,
                                       int subdiv) {
  auto grid = discretize(tree, tree.depth());
  auto dirs = angle_grid(n_angles);
  std::vector<AngleSweepRow> rows(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto line = project_grid(grid, dirs[i], subdiv);
    rows[i] = {dirs[i].angle, sobolev_norm_sq(line, gamma), line.l2_norm_sq()};
  }
  return rows;
}

namespace {

// Sum of column (or row) masses crossed by an axis-parallel line.
double axis_slice(const GridMeasure& grid, bool vertical, double coord) {
  int m = grid.level();
  double scale = std::exp2(static_cast<double>(m));
  if (coord < 0 || coord >= 1) return 0;
  auto fixed = static_cast<std::uint64_t>(coord * scale);
  double acc = 0;
  for (const auto& [key, mass] : grid.cells()) {
    std::uint64_t c = vertical ? morton_x(2, key) : morton_y(2, key);
    if (c == fixed) acc += mass;
  }
  // density * chord = (mass * 4^m) * 2^-m per cell
  return acc * scale;
}

}  // namespace

double slice_measure(const GridMeasure& grid, const Direction& theta,
                     std::array<double, 2> x) {
  if (grid.dim() != 2) throw validation_error("slice_measure: grid must be 2d");
  if (theta.uy == 0) return axis_slice(grid, false, x[1]);
  if (theta.ux == 0) return axis_slice(grid, true, x[0]);

  int m = grid.level();
  double scale = std::exp2(static_cast<double>(m));
  double h = 1.0 / scale;
  double density_scale = scale * scale;  // 2^{2m}

  // Clip the line x + t u to [0,1]^2.
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 2; ++axis) {
    double u = axis == 0 ? theta.ux : theta.uy;
    double p = axis == 0 ? x[0] : x[1];
    double ta = (0.0 - p) / u;
    double tb = (1.0 - p) / u;
    t0 = std::max(t0, std::min(ta, tb));
    t1 = std::min(t1, std::max(ta, tb));
  }
  if (!(t0 < t1)) return 0;

  const double eps = h * 1e-9;
  double acc = 0;
  double t = t0;
  while (t < t1 - eps) {
    double px = x[0] + t * theta.ux;
    double py = x[1] + t * theta.uy;
    auto cx = static_cast<long>(std::floor(px * scale));
    auto cy = static_cast<long>(std::floor(py * scale));
    cx = std::clamp(cx, 0L, static_cast<long>(scale) - 1);
    cy = std::clamp(cy, 0L, static_cast<long>(scale) - 1);
    // next break on each axis
    double bx = theta.ux > 0 ? (cx + 1) * h : cx * h;
    double by = theta.uy > 0 ? (cy + 1) * h : cy * h;
    double tx = (bx - x[0]) / theta.ux;
    double ty = (by - x[1]) / theta.uy;
    double tn = std::min({std::min(tx, ty), t1});
    if (tn <= t + eps) tn = t + eps;  // robust against corner grazing
    double mass = grid.mass(morton_key(2, static_cast<std::uint64_t>(cx),
                                       static_cast<std::uint64_t>(cy)));
    if (mass > 0) acc += mass * density_scale * (tn - t);
    t = tn;
  }
  return acc;
}

}  // namespace fm
