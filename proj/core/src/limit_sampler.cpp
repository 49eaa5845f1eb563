#include "lci/limit_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "lci/errors.hpp"
#include "lci/parallel.hpp"

namespace lci {
namespace {

// Cumulative breakpoints per side (size slots + 1); empty when the side is unused.
struct Breakpoints {
  std::vector<double> cx;
  std::vector<double> cy;
};

std::vector<double> cumulative(const std::vector<Rational>& lambda) {
  std::vector<double> c(lambda.size() + 1, 0.0);
  Rational acc = 0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    acc += lambda[k];
    c[k + 1] = to_double(acc);
  }
  return c;
}

std::vector<double> cumulative(const std::vector<double>& lambda) {
  std::vector<double> c(lambda.size() + 1, 0.0);
  for (std::size_t k = 0; k < lambda.size(); ++k) c[k + 1] = c[k] + lambda[k];
  c.back() = 1.0;
  return c;
}

class Integrand {
 public:
  explicit Integrand(const AnalysisReport& rep) : rep_(rep) {
    for (int i : rep.active) active_.push_back(static_cast<std::size_t>(i - 1));
    for (Letter a : rep.slot_letter) letter_.push_back(static_cast<std::size_t>(a - 1));
    if (rep.is_case_a()) {
      case_a_ = true;
      limiting_x_ = rep.limiting_side() == Side::X;
    } else {
      closed_.emplace(rep);
    }
  }

  bool uses_x() const { return !case_a_ || limiting_x_; }
  bool uses_y() const { return !case_a_ || !limiting_x_; }

  double operator()(const BrownianGrid& g, const Breakpoints& b, std::vector<double>& nx,
                    std::vector<double>& ny) const {
    if (case_a_) {
      const auto& paths = limiting_x_ ? g.x : g.y;
      const auto& c = limiting_x_ ? b.cx : b.cy;
      double total = 0.0;
      for (std::size_t k : active_) total += increment(paths, k, c);
      return total;
    }
    nx.assign(rep_.slots(), 0.0);
    ny.assign(rep_.slots(), 0.0);
    for (std::size_t k : active_) {
      nx[k] = increment(g.x, k, b.cx);
      ny[k] = increment(g.y, k, b.cy);
    }
    return (*closed_)(nx.data(), ny.data());
  }

 private:
  double increment(const std::vector<std::vector<double>>& paths, std::size_t k,
                   const std::vector<double>& c) const {
    const auto& path = paths[letter_[k]];
    if (path.empty()) throw Error(ErrorKind::BadInput, "path for an active letter was not generated");
    if (c[k + 1] == c[k]) return 0.0;
    return path_at(path, c[k + 1]) - path_at(path, c[k]);
  }

  const AnalysisReport& rep_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> letter_;
  bool case_a_ = false;
  bool limiting_x_ = true;
  std::optional<MClosed> closed_;
};

// Active-coordinate parametrization used by the refinement passes. lambda is
// indexed by position in report.active and lives on the primary side (the
// limiting side in Case a, X in Case b).
class Chart {
 public:
  explicit Chart(const AnalysisReport& rep) : rep_(rep) {
    const std::size_t k = rep.active.size();
    for (int i : rep.active) {
      const auto s = static_cast<std::size_t>(i - 1);
      ratio_.push_back(to_double(rep.px[s] / rep.py[s]));
    }
    if (rep.is_case_a()) {
      const bool x = rep.limiting_side() == Side::X;
      const auto& lim = x ? rep.px : rep.py;
      const auto& other = x ? rep.py : rep.px;
      bound_ = 1.0 / to_double(*std::max_element(lim.begin(), lim.end()));
      for (int i : rep.active) inv_other_.push_back(1.0 / to_double(other[static_cast<std::size_t>(i - 1)]));
    }
    if (k > 8) return;  // refinement is skipped for large active sets
    // Offsets in {-1,0,1}^k summing to zero (and, in CaseB2, keeping the
    // ratio-weighted sum fixed via two pivot coordinates).
    std::vector<int> d(k, -1);
    const bool b2 = rep.limit_case == LimitCase::CaseB2;
    std::size_t pa = 0, pb = 1;
    if (b2) {
      bool found = false;
      for (std::size_t a = 0; a < k && !found; ++a) {
        for (std::size_t b = a + 1; b < k && !found; ++b) {
          if (ratio_[a] != ratio_[b]) {
            pa = a;
            pb = b;
            found = true;
          }
        }
      }
    }
    while (true) {
      if (b2) {
        bool pivots_zero = d[pa] == -1 && d[pb] == -1;
        if (pivots_zero) {
          std::vector<double> off(k, 0.0);
          double mass = 0.0, weighted = 0.0;
          bool any = false;
          for (std::size_t a = 0; a < k; ++a) {
            if (a == pa || a == pb) continue;
            off[a] = d[a];
            mass -= d[a];
            weighted -= d[a] * ratio_[a];
            any = any || d[a] != 0;
          }
          if (any) {
            const double vb = (weighted - mass * ratio_[pa]) / (ratio_[pb] - ratio_[pa]);
            off[pa] = mass - vb;
            off[pb] = vb;
            stencil_.push_back(std::move(off));
          }
        }
      } else {
        int sum = 0;
        bool any = false;
        for (int v : d) {
          sum += v;
          any = any || v != 0;
        }
        if (sum == 0 && any) stencil_.push_back(std::vector<double>(d.begin(), d.end()));
      }
      std::size_t a = 0;
      while (a < k && d[a] == 1) d[a++] = -1;
      if (a == k) break;
      ++d[a];
    }
  }

  std::vector<double> from_point(const GridPoint& p) const {
    const auto& v = rep_.is_case_a() && rep_.limiting_side() == Side::Y ? p.y : p.x;
    std::vector<double> out;
    for (int i : rep_.active) out.push_back(to_double(v[static_cast<std::size_t>(i - 1)]));
    return out;
  }

  bool feasible(std::vector<double>& lambda) const {
    for (auto& v : lambda) {
      if (v < -1e-14) return false;
      v = std::max(v, 0.0);
    }
    if (rep_.is_case_a()) {
      double w = 0.0;
      for (std::size_t a = 0; a < lambda.size(); ++a) w += lambda[a] * inv_other_[a];
      if (w > bound_ * (1.0 + 1e-12)) return false;
    }
    return true;
  }

  Breakpoints breakpoints(const std::vector<double>& lambda) const {
    std::vector<double> full(rep_.slots(), 0.0);
    for (std::size_t a = 0; a < lambda.size(); ++a) full[static_cast<std::size_t>(rep_.active[a] - 1)] = lambda[a];
    Breakpoints b;
    if (rep_.is_case_a()) {
      (rep_.limiting_side() == Side::X ? b.cx : b.cy) = cumulative(full);
      return b;
    }
    b.cx = cumulative(full);
    if (rep_.limit_case == LimitCase::CaseB1) {
      b.cy = b.cx;
    } else {
      std::vector<double> fy(rep_.slots(), 0.0);
      for (std::size_t a = 0; a < lambda.size(); ++a) {
        fy[static_cast<std::size_t>(rep_.active[a] - 1)] = lambda[a] * ratio_[a];
      }
      b.cy = cumulative(fy);
    }
    return b;
  }

  const std::vector<std::vector<double>>& stencil() const { return stencil_; }

 private:
  const AnalysisReport& rep_;
  std::vector<double> ratio_;
  std::vector<double> inv_other_;
  double bound_ = 0.0;
  std::vector<std::vector<double>> stencil_;
};

Breakpoints to_breakpoints(const AnalysisReport& rep, const GridPoint& p) {
  Breakpoints b;
  if (!p.x.empty()) b.cx = cumulative(p.x);
  if (!p.y.empty()) b.cy = cumulative(p.y);
  (void)rep;
  return b;
}

std::vector<double> letter_masses(const AnalysisReport& rep, Side side) {
  std::vector<double> p(static_cast<std::size_t>(rep.alphabet_size), 0.0);
  const auto& w = side == Side::X ? rep.px : rep.py;
  for (std::size_t k = 0; k < rep.slots(); ++k) p[static_cast<std::size_t>(rep.slot_letter[k] - 1)] = to_double(w[k]);
  return p;
}

LimitSampleSet sample_impl(const AnalysisReport& rep, const SamplerOptions& opt, const RngConfig& rng,
                           std::vector<Letter> blocks) {
  if (opt.reps < 1) throw Error(ErrorKind::BadInput, "reps must be >= 1");
  if (opt.path_steps < 2) throw Error(ErrorKind::BadInput, "path steps must be >= 2");
  if (opt.refine_passes < 0) throw Error(ErrorKind::BadInput, "refine passes must be >= 0");

  LimitSampleSet out;
  out.limit_case = rep.limit_case;
  out.path_steps = opt.path_steps;
  out.grid_r = opt.grid_r;
  out.reps = opt.reps;
  out.refine_passes = opt.refine_passes;
  out.rng = rng;
  out.blocks = std::move(blocks);
  out.samples.assign(opt.reps, 0.0);

  const Integrand integrand(rep);
  const std::vector<double> masses_x = letter_masses(rep, Side::X);
  const std::vector<double> masses_y = letter_masses(rep, Side::Y);
  auto y_stream = [&](std::size_t i) { return opt.y_rng ? opt.y_rng->substream(i) : rng.substream(i).substream(1); };

  if (rep.active.size() == 1) {
    // Single active slot: the integrand is the endpoint of one coordinate.
    const auto k = static_cast<std::size_t>(rep.active[0] - 1);
    const double sd_x = std::sqrt(to_double(rep.px[k] * (1 - rep.px[k])));
    const double sd_y = std::sqrt(to_double(rep.py[k] * (1 - rep.py[k])));
    std::optional<MClosed> closed;
    if (!rep.is_case_a()) closed.emplace(rep);
    parallel_for(opt.reps, opt.threads, [&](std::size_t i) {
      auto draw = [](const RngConfig& c) {
        CounterRng gen(c);
        std::normal_distribution<double> normal(0.0, 1.0);
        return normal(gen);
      };
      const RngConfig xr = rng.substream(i).substream(0);
      if (rep.is_case_a()) {
        out.samples[i] = rep.limiting_side() == Side::X ? sd_x * draw(xr) : sd_y * draw(y_stream(i));
        return;
      }
      std::vector<double> nx(rep.slots(), 0.0), ny(rep.slots(), 0.0);
      nx[k] = sd_x * draw(xr);
      ny[k] = sd_y * draw(y_stream(i));
      out.samples[i] = (*closed)(nx.data(), ny.data());
    });
    return out;
  }

  const PolytopeGrid grid = sampler_grid(rep, opt.grid_r);
  std::vector<Breakpoints> points;
  points.reserve(grid.points.size());
  for (const auto& p : grid.points) points.push_back(to_breakpoints(rep, p));
  const Chart chart(rep);
  if (opt.refine_passes > 0 && chart.stencil().empty()) {
    throw Error(ErrorKind::BadInput, "refinement is not available for this active set");
  }

  std::vector<bool> wanted_x(masses_x.size(), false), wanted_y(masses_y.size(), false);
  for (int i : rep.active) {
    const auto letter = static_cast<std::size_t>(rep.slot_letter[static_cast<std::size_t>(i - 1)] - 1);
    wanted_x[letter] = true;
    wanted_y[letter] = true;
  }

  parallel_for(opt.reps, opt.threads, [&](std::size_t i) {
    BrownianGrid g;
    g.steps = opt.path_steps;
    g.x.resize(masses_x.size());
    g.y.resize(masses_y.size());
    if (integrand.uses_x()) g.x = sample_brownian_side(masses_x, wanted_x, opt.path_steps, rng.substream(i).substream(0));
    if (integrand.uses_y()) g.y = sample_brownian_side(masses_y, wanted_y, opt.path_steps, y_stream(i));
    std::vector<double> nx, ny;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const double v = integrand(g, points[p], nx, ny);
      if (v > best) {
        best = v;
        arg = p;
      }
    }
    if (opt.refine_passes > 0) {
      std::vector<double> centre = chart.from_point(grid.points[arg]);
      double h = 1.0 / opt.grid_r;
      for (int pass = 0; pass < opt.refine_passes; ++pass) {
        h /= 2.0;
        std::vector<double> next = centre;
        for (const auto& d : chart.stencil()) {
          std::vector<double> cand(centre.size());
          for (std::size_t a = 0; a < cand.size(); ++a) cand[a] = centre[a] + h * d[a];
          if (!chart.feasible(cand)) continue;
          const double v = integrand(g, chart.breakpoints(cand), nx, ny);
          if (v > best) {
            best = v;
            next = cand;
          }
        }
        centre = std::move(next);
      }
    }
    out.samples[i] = best;
  });
  return out;
}

}  // namespace

PolytopeGrid sampler_grid(const AnalysisReport& report, int r) {
  return report.is_case_a() ? grid_J(report, r) : grid_K(report, r);
}

double eval_za(const BrownianGrid& path, const AnalysisReport& report, const GridPoint& point) {
  if (!report.is_case_a()) throw Error(ErrorKind::WrongCase, "eval_za needs Case a");
  const auto& lambda = report.limiting_side() == Side::X ? point.x : point.y;
  if (!in_J(report, lambda)) throw Error(ErrorKind::PointNotInJ, "point is not in J");
  std::vector<double> nx, ny;
  return Integrand(report)(path, to_breakpoints(report, point), nx, ny);
}

double eval_zb(const BrownianGrid& path, const AnalysisReport& report, const GridPoint& point) {
  if (report.is_case_a()) throw Error(ErrorKind::WrongCase, "eval_zb needs Case b");
  if (!in_K(report, point)) throw Error(ErrorKind::PointNotInK, "point is not in K");
  std::vector<double> nx, ny;
  return Integrand(report)(path, to_breakpoints(report, point), nx, ny);
}

double grid_max(const BrownianGrid& path, const AnalysisReport& report, const PolytopeGrid& grid) {
  const Integrand integrand(report);
  std::vector<double> nx, ny;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : grid.points) best = std::max(best, integrand(path, to_breakpoints(report, p), nx, ny));
  return best;
}

LimitSampleSet sample_limit(const AnalysisReport& report, const SamplerOptions& options,
                            const RngConfig& rng) {
  return sample_impl(report, options, rng, {});
}

LimitSampleSet sample_limit_blocks(const AnalysisReport& report, const SamplerOptions& options,
                                   const RngConfig& rng) {
  return sample_impl(report, options, rng, report.slot_letter);
}

void write_csv(std::ostream& out, const LimitSampleSet& set) {
  out << "# case=" << to_string(set.limit_case) << '\n';
  out << "# path_steps=" << set.path_steps << '\n';
  out << "# grid_r=" << set.grid_r << '\n';
  out << "# reps=" << set.reps << '\n';
  out << "# refine_passes=" << set.refine_passes << '\n';
  out << "# seed=" << set.rng.seed << '\n';
  out << "# stream=" << set.rng.stream << '\n';
  if (!set.blocks.empty()) {
    out << "# blocks=";
    for (std::size_t k = 0; k < set.blocks.size(); ++k) out << (k ? "," : "") << set.blocks[k];
    out << '\n';
  }
  out << "sample\n";
  char buf[40];
  for (double v : set.samples) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

LimitSampleSet read_csv(std::istream& in) {
  LimitSampleSet set;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      if (key == "case") set.limit_case = limit_case_from_string(value);
      else if (key == "path_steps") set.path_steps = std::stoull(value);
      else if (key == "grid_r") set.grid_r = std::stoi(value);
      else if (key == "reps") set.reps = std::stoull(value);
      else if (key == "refine_passes") set.refine_passes = std::stoi(value);
      else if (key == "seed") set.rng.seed = std::stoull(value);
      else if (key == "stream") set.rng.stream = std::stoull(value);
      else if (key == "blocks") {
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) set.blocks.push_back(std::stoi(tok));
      }
      continue;
    }
    if (!header) {
      if (line != "sample") throw Error(ErrorKind::BadInput, "expected 'sample' header");
      header = true;
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) throw Error(ErrorKind::BadInput, "bad sample line '" + line + "'");
    set.samples.push_back(v);
  }
  if (set.samples.size() != set.reps) throw Error(ErrorKind::BadInput, "sample count differs from reps");
  return set;
}

void write_csv_file(const std::string& path, const LimitSampleSet& set) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadInput, "cannot open " + path);
  write_csv(out, set);
}

LimitSampleSet read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  return read_csv(in);
}

}  // namespace lci
