#include "lci/harness.hpp"

#include <algorithm>
#include <cmath>

#include "lci/analysis.hpp"
#include "lci/errors.hpp"
#include "lci/exact_lci.hpp"
#include "lci/parallel.hpp"
#include "lci/word.hpp"

namespace lci {

std::uint64_t instance_hash(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& p : inst.px().probs()) feed(to_fraction_string(p));
  feed("|");
  for (const auto& p : inst.py().probs()) feed(to_fraction_string(p));
  return h;
}

double zn_value(std::size_t length, std::size_t n, const Rational& e_max) {
  const Rational num = Rational(static_cast<long long>(length)) - Rational(static_cast<long long>(n)) * e_max;
  return to_double(num) / std::sqrt(static_cast<double>(n));
}

std::size_t replay_length(const Instance& inst, std::size_t n, const RngConfig& rng, std::size_t k) {
  const RngConfig base = rng.substream(k);
  const Word x = sample_word(inst.px(), n, base.substream(0));
  const Word y = sample_word(inst.py(), n, base.substream(1));
  return lci_length(x, y);
}

EmpiricalZSet simulate_zn(const Instance& inst, const Rational& e_max, std::size_t n, std::size_t reps,
                          const RngConfig& rng, unsigned threads) {
  if (n < 1) throw Error(ErrorKind::BadInput, "n must be >= 1");
  if (reps < 1) throw Error(ErrorKind::BadInput, "reps must be >= 1");
  EmpiricalZSet set;
  set.n = n;
  set.reps = reps;
  set.rng = rng;
  set.instance_hash = instance_hash(inst);
  set.e_max = e_max;
  set.lengths.assign(reps, 0);
  set.samples.assign(reps, 0.0);
  parallel_for(reps, threads, [&](std::size_t k) {
    set.lengths[k] = replay_length(inst, n, rng, k);
    set.samples[k] = zn_value(set.lengths[k], n, e_max);
  });
  return set;
}

EmpiricalZSet simulate_zn(const Instance& inst, std::size_t n, std::size_t reps, const RngConfig& rng,
                          unsigned threads) {
  return simulate_zn(inst, compute_emax(inst).e_max, n, reps, rng, threads);
}

double kolmogorov_q(double x) {
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::Empty, "KS needs two nonempty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.n_a = sa.size();
  r.n_b = sb.size();
  const double ne = na * nb / (na + nb);
  const double root = std::sqrt(ne);
  r.p_value = kolmogorov_q((root + 0.12 + 0.11 / root) * d);
  return r;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0) throw Error(ErrorKind::Empty, "sample sizes must be positive");
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

double mean(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorKind::Empty, "mean of an empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) throw Error(ErrorKind::Empty, "sd needs two values");
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

ConvergeReport converge(const Instance& inst, const std::vector<std::size_t>& ns, std::size_t reps,
                        const SamplerOptions& limit_options, const RngConfig& rng) {
  const AnalysisReport rep = classify_case(inst);
  ConvergeReport out;
  out.limit = sample_limit(rep, limit_options, rng.substream(0));
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const auto z = simulate_zn(inst, rep.e_max, ns[k], reps, rng.substream(k + 1), limit_options.threads);
    ConvergeRow row;
    row.n = ns[k];
    row.mean_zn = mean(z.samples);
    row.sd_zn = z.samples.size() > 1 ? sample_sd(z.samples) : 0.0;
    row.ks = ks_two_sample(z.samples, out.limit.samples);
    if (!out.rows.empty() && row.ks.statistic > out.rows.back().ks.statistic) out.nonincreasing = false;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace lci
