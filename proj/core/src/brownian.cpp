#include "lci/brownian.hpp"

#include <cmath>
#include <random>

#include "lci/errors.hpp"

namespace lci {

double path_at(const std::vector<double>& path, double t) {
  const std::size_t n = path.size() - 1;
  if (t <= 0.0) return path.front();
  if (t >= 1.0) return path.back();
  const double pos = t * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(pos);
  if (k >= n) return path.back();
  const double frac = pos - static_cast<double>(k);
  return path[k] + frac * (path[k + 1] - path[k]);
}

std::vector<std::vector<double>> sample_brownian_side(const std::vector<double>& p,
                                                      const std::vector<bool>& wanted,
                                                      std::size_t steps, const RngConfig& rng) {
  if (steps < 2) throw Error(ErrorKind::BadInput, "a Brownian grid needs at least 2 steps");
  if (wanted.size() != p.size()) throw Error(ErrorKind::BadInput, "letter mask has wrong length");
  const std::size_t m = p.size();
  std::vector<std::size_t> letters;
  double rest = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (wanted[i]) {
      letters.push_back(i);
    } else {
      rest += p[i];
    }
  }
  std::vector<double> root(m);
  for (std::size_t i = 0; i < m; ++i) root[i] = std::sqrt(p[i]);
  const double root_rest = std::sqrt(rest);
  const double scale = 1.0 / std::sqrt(static_cast<double>(steps));

  std::vector<std::vector<double>> paths(m);
  for (std::size_t i : letters) paths[i].assign(steps + 1, 0.0);

  CounterRng gen(rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> g(letters.size());
  for (std::size_t k = 1; k <= steps; ++k) {
    double s = 0.0;
    for (std::size_t a = 0; a < letters.size(); ++a) {
      g[a] = normal(gen);
      s += root[letters[a]] * g[a];
    }
    if (rest > 0.0) s += root_rest * normal(gen);
    for (std::size_t a = 0; a < letters.size(); ++a) {
      const std::size_t i = letters[a];
      paths[i][k] = paths[i][k - 1] + root[i] * (g[a] - root[i] * s) * scale;
    }
  }
  return paths;
}

BrownianGrid sample_brownian(const Instance& inst, std::size_t steps, const RngConfig& rng) {
  const std::vector<bool> all(inst.m(), true);
  BrownianGrid grid;
  grid.steps = steps;
  grid.x = sample_brownian_side(inst.px().as_doubles(), all, steps, rng.substream(0));
  grid.y = sample_brownian_side(inst.py().as_doubles(), all, steps, rng.substream(1));
  return grid;
}

}  // namespace lci
