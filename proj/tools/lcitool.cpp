// lcitool: command-line front end for the lci library.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lci/analysis.hpp"
#include "lci/errors.hpp"
#include "lci/exact_lci.hpp"
#include "lci/harness.hpp"
#include "lci/limit_sampler.hpp"
#include "lci/m_functional.hpp"
#include "lci/report_json.hpp"
#include "lci/tolerances.hpp"
#include "lci/word.hpp"

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  bool check = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lci::Error(lci::ErrorKind::BadInput, "cannot open " + path);
  return json::parse(in);
}

std::vector<lci::Letter> parse_list(const std::string& text) {
  std::vector<lci::Letter> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

// Writes to --out when given, else stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw lci::Error(lci::ErrorKind::BadInput, "cannot write " + g.out);
  f << text << '\n';
}

int largest_letter(const std::string& text) {
  int top = 0;
  if (text.find(',') != std::string::npos) {
    for (int l : parse_list(text)) top = std::max(top, l);
  } else {
    for (char c : text) top = std::max(top, c - '0');
  }
  return top;
}

int report_violations(const std::vector<std::string>& bad) {
  for (const auto& b : bad) std::cerr << "invariant violated: " << b << '\n';
  return bad.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longest common weakly increasing subsequences: exact lengths, limit analysis, limit-law sampling"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (stdout when omitted)");
  app.add_flag("--check", g.check, "verify invariants; exit 2 on a violation");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "e_max, active set, case and constants");
  std::string instance_path, blocks_text;
  int oracle_r = 0;
  analyze->add_option("--instance", instance_path, "instance JSON {\"pX\": [...], \"pY\": [...]}")->required();
  analyze->add_option("--blocks", blocks_text, "block order, e.g. 2,1,2");
  analyze->add_option("--oracle-r", oracle_r, "cross-check e_max against the grid oracle at this resolution");

  // lci
  auto* lci_cmd = app.add_subcommand("lci", "exact LCI length of two words");
  std::string x_text, y_text;
  int alphabet = 0;
  bool random_words = false;
  std::size_t n = 0;
  lci_cmd->add_option("--x", x_text, "first word");
  lci_cmd->add_option("--y", y_text, "second word");
  lci_cmd->add_option("--m", alphabet, "alphabet size (default: largest letter seen, or 2)");
  lci_cmd->add_flag("--random", random_words, "sample both words");
  lci_cmd->add_option("--n", n, "length of sampled words");
  lci_cmd->add_option("--instance", instance_path, "instance for --random (uniform when omitted)");

  // blocks
  auto* blocks_cmd = app.add_subcommand("blocks", "block-aligned common subsequences");
  std::size_t block_count = 0;
  blocks_cmd->add_option("--x", x_text)->required();
  blocks_cmd->add_option("--y", y_text)->required();
  blocks_cmd->add_option("--m", alphabet, "alphabet size")->required();
  blocks_cmd->add_option("--alpha", blocks_text, "block order, e.g. 2,1,2");
  blocks_cmd->add_option("--b", block_count, "maximize over all onto orders with b blocks");

  // mfunc
  auto* mfunc = app.add_subcommand("mfunc", "second-order functional: closed form and LP oracle");
  std::string nu_path;
  bool use_oracle = false;
  mfunc->add_option("--instance", instance_path)->required();
  mfunc->add_option("--nu", nu_path, "JSON {\"nuX\": [...], \"nuY\": [...]}")->required();
  mfunc->add_flag("--oracle", use_oracle, "also solve the LP");

  // sample-limit
  auto* sample = app.add_subcommand("sample-limit", "Monte Carlo draws of the limit law");
  lci::SamplerOptions opt;
  sample->add_option("--instance", instance_path)->required();
  sample->add_option("--blocks", blocks_text);
  sample->add_option("--reps", opt.reps)->check(CLI::PositiveNumber);
  sample->add_option("--path-steps", opt.path_steps);
  sample->add_option("--grid-r", opt.grid_r);
  sample->add_option("--refine", opt.refine_passes, "refinement passes");

  // converge
  auto* conv = app.add_subcommand("converge", "KS distance between Z_n and the limit law");
  std::string n_list = "500,5000";
  std::size_t zn_reps = 500;
  bool gnuplot = false;
  conv->add_option("--instance", instance_path)->required();
  conv->add_option("--n", n_list, "comma-separated word lengths");
  conv->add_option("--reps", zn_reps, "word pairs per length");
  conv->add_option("--limit-reps", opt.reps, "limit-law draws");
  conv->add_option("--path-steps", opt.path_steps);
  conv->add_option("--grid-r", opt.grid_r);
  conv->add_flag("--gnuplot", gnuplot, "whitespace table: n mean sd D p");

  CLI11_PARSE(app, argc, argv);
  opt.threads = g.threads;
  const lci::RngConfig rng{g.seed, 0};

  try {
    if (*analyze) {
      const auto inst = lci::instance_from_json(read_json(instance_path));
      const auto rep = blocks_text.empty()
                           ? lci::classify_case(inst)
                           : lci::blocks_analysis(inst, lci::BlockOrder(parse_list(blocks_text), static_cast<int>(inst.m())));
      json j = lci::to_json(rep);
      std::vector<std::string> bad = g.check ? lci::check_report(rep) : std::vector<std::string>{};
      if (oracle_r > 0) {
        const double oracle = lci::emax_grid_oracle(inst, oracle_r);
        const double e = lci::to_double(rep.e_max);
        const double bound = 2.0 * static_cast<double>(inst.m()) / oracle_r;
        j["oracle"] = {{"r", oracle_r}, {"value", oracle}, {"gap", e - oracle}, {"bound", bound}};
        if (oracle > e + 1e-12 || e - oracle > bound) bad.push_back("grid oracle disagrees with e_max");
      }
      emit(g, j.dump(2));
      return report_violations(bad);
    }

    if (*lci_cmd) {
      lci::Word x, y;
      if (random_words) {
        const auto inst = instance_path.empty()
                              ? lci::Instance(lci::uniform_pmf(alphabet > 0 ? alphabet : 2),
                                              lci::uniform_pmf(alphabet > 0 ? alphabet : 2))
                              : lci::instance_from_json(read_json(instance_path));
        x = lci::sample_word(inst.px(), n, rng.substream(0));
        y = lci::sample_word(inst.py(), n, rng.substream(1));
      } else {
        const int m = alphabet > 0 ? alphabet : std::max({2, largest_letter(x_text), largest_letter(y_text)});
        x = lci::Word::parse(x_text, m);
        y = lci::Word::parse(y_text, m);
      }
      json j = {{"lci", lci::lci_length(x, y)}, {"n_x", x.size()}, {"n_y", y.size()}};
      if (x.size() <= 2000 && y.size() <= 2000) j["lcs"] = lci::lcs_length(x, y);
      if (!random_words || n <= 60) {
        j["x"] = x.to_string();
        j["y"] = y.to_string();
      }
      std::vector<std::string> bad;
      if (g.check) {
        if (x.alphabet_size() != 2 || x.size() * y.size() <= 4'000'000) {
          if (lci::lci_length_dp(x, y) != j["lci"].get<std::size_t>()) bad.push_back("DP and fast LCI disagree");
        }
        if (x.size() <= lci::kBruteForceMaxLength && y.size() <= lci::kBruteForceMaxLength &&
            lci::lci_bruteforce(x, y) != j["lci"].get<std::size_t>()) {
          bad.push_back("brute force disagrees");
        }
      }
      emit(g, j.dump(2));
      return report_violations(bad);
    }

    if (*blocks_cmd) {
      const auto x = lci::Word::parse(x_text, alphabet);
      const auto y = lci::Word::parse(y_text, alphabet);
      json j;
      if (!blocks_text.empty()) {
        const lci::BlockOrder alpha(parse_list(blocks_text), alphabet);
        j["lc_alpha"] = lci::lc_blocks_length(x, y, alpha);
      }
      if (block_count > 0) j["lc_b"] = lci::lc_b_blocks(x, y, block_count);
      j["lci"] = lci::lci_length(x, y);
      emit(g, j.dump(2));
      return 0;
    }

    if (*mfunc) {
      const auto inst = lci::instance_from_json(read_json(instance_path));
      const auto rep = lci::classify_case(inst);
      const json nu_doc = read_json(nu_path);
      lci::Perturbation nu{nu_doc.at("nuX").get<std::vector<double>>(), nu_doc.at("nuY").get<std::vector<double>>()};
      const double closed = lci::m_closed(rep, nu);
      json j = {{"case", std::string(lci::to_string(rep.limit_case))}, {"closed", closed}};
      std::vector<std::string> bad;
      if (use_oracle) {
        const auto o = lci::m_lp_oracle(rep, nu);
        j["oracle"] = o.value;
        j["gap"] = std::abs(o.value - closed);
        j["box"] = o.box;
        if (g.check && std::abs(o.value - closed) > lci::kTolerances.lp_oracle) bad.push_back("closed form and LP oracle disagree");
      }
      emit(g, j.dump(2));
      return report_violations(bad);
    }

    if (*sample) {
      const auto inst = lci::instance_from_json(read_json(instance_path));
      lci::LimitSampleSet set;
      if (blocks_text.empty()) {
        set = lci::sample_limit(lci::classify_case(inst), opt, rng);
      } else {
        const auto rep = lci::blocks_analysis(inst, lci::BlockOrder(parse_list(blocks_text), static_cast<int>(inst.m())));
        set = lci::sample_limit_blocks(rep, opt, rng);
      }
      if (g.out.empty()) {
        lci::write_csv(std::cout, set);
      } else {
        lci::write_csv_file(g.out, set);
        std::cout << lci::summary_json(set).dump(2) << '\n';
      }
      return 0;
    }

    if (*conv) {
      const auto inst = lci::instance_from_json(read_json(instance_path));
      std::vector<std::size_t> ns;
      for (int v : parse_list(n_list)) ns.push_back(static_cast<std::size_t>(v));
      const auto report = lci::converge(inst, ns, zn_reps, opt, rng);
      if (gnuplot) {
        std::ostringstream os;
        os << "# n mean_zn sd_zn D p_value\n";
        for (const auto& row : report.rows) {
          os << row.n << ' ' << row.mean_zn << ' ' << row.sd_zn << ' ' << row.ks.statistic << ' ' << row.ks.p_value << '\n';
        }
        emit(g, os.str());
      } else {
        emit(g, lci::to_json(report).dump(2));
      }
      if (g.check && !report.nonincreasing) return report_violations({"KS distance increased along the n-list"});
      return 0;
    }
  } catch (const lci::Error& e) {
    std::cerr << "error [" << lci::to_string(e.kind()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
