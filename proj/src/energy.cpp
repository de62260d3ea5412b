#include "fm/energy.hpp"

#include "fm/parallel.hpp"

namespace fm {

double euclidean_energy(const MeasureTree& tree, double s, int subdiv) {
  int dim = tree.dim();
  if (!(s > 0) || !(s < static_cast<double>(dim)))
    throw validation_error("euclidean_energy: s must lie in (0, dim)");
  if (subdiv < 0) throw validation_error("euclidean_energy: subdiv must be >= 0");

  int atom_level = tree.depth() + subdiv;
  double h = std::exp2(-tree.depth());
  int ns = 1 << subdiv;
  double sub = h / ns;
  double atom_scale = 1.0 / std::exp2(static_cast<double>(dim * subdiv));

  struct Atom {
    double x, y, m;
  };
  std::vector<Atom> atoms;
  atoms.reserve(tree.level(tree.depth()).size() * static_cast<std::size_t>(ns) *
                (dim == 2 ? ns : 1));
  for (const auto& [key, mass] : tree.level(tree.depth())) {
    double x0 = static_cast<double>(morton_x(dim, key)) * h;
    double y0 = dim == 2 ? static_cast<double>(morton_y(dim, key)) * h : 0.0;
    double am = mass * atom_scale;
    for (int a = 0; a < ns; ++a) {
      double px = x0 + (a + 0.5) * sub;
      if (dim == 1) {
        atoms.push_back({px, 0.0, am});
      } else {
        for (int b = 0; b < ns; ++b) atoms.push_back({px, y0 + (b + 0.5) * sub, am});
      }
    }
  }

  // Diagonal: self-energy of the uniform atom cell, c(s) * m^2 * 2^{s L}.
  double diag_c = uniform_cell_self_energy(s, dim) *
                  std::exp2(s * static_cast<double>(atom_level));
  double diag = 0;
  for (const auto& a : atoms) diag += diag_c * a.m * a.m;

  auto row_sums = [&](std::size_t b, std::size_t e) {
    double acc = 0;
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        double dx = atoms[i].x - atoms[j].x;
        double dy = atoms[i].y - atoms[j].y;
        double r = dim == 2 ? std::sqrt(dx * dx + dy * dy) : std::abs(dx);
        acc += atoms[i].m * atoms[j].m * std::pow(r, -s);
      }
    }
    return acc;
  };
  double off = parallel_chunked<double>(atoms.size(), 0.0, row_sums,
                                        [](double& a, double&& b) { a += b; });
  return diag + 2.0 * off;
}

}  // namespace fm
