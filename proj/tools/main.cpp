// Command-line surface: reproducible experiments over the library, each run
// emitting a JSON manifest next to its primary output.
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumsetlab/bounds.hpp"
#include "sumsetlab/pointset.hpp"
#include "sumsetlab/search.hpp"
#include "sumsetlab/structures.hpp"

using json = nlohmann::ordered_json;
using namespace sumsetlab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitTruncated = 2;
constexpr int kExitInfeasible = 3;

std::string iso_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

/// One manifest per run: command, config, seed, timestamps, result summary.
struct Manifest {
  json j;
  std::string path;

  Manifest(const std::string& command, const std::string& output_path) {
    path = (output_path.empty() ? command : output_path) + ".manifest.json";
    j["schema"] = 1;
    j["version"] = kVersion;
    j["command"] = command;
    j["start"] = iso_now();
  }
  void write() {
    j["end"] = iso_now();
    std::ofstream os(path, std::ios::trunc);
    os << j.dump(2) << "\n";
  }
};

std::vector<int> parse_flat_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw usage_error("bad element list: " + s);
    out.push_back(v);
  }
  if (out.empty()) throw usage_error("empty element list");
  return out;
}

PointSet load_operand(const Modulus& mod, const std::string& inline_flats,
                      const std::string& file) {
  if (!inline_flats.empty()) return PointSet(mod, parse_flat_list(inline_flats));
  std::ifstream is(file);
  if (!is) throw usage_error("cannot open set file: " + file);
  PointSet ps = PointSet::read_text(is);
  if (ps.modulus() != mod)
    throw usage_error("set file modulus disagrees with --p/--r: " + file);
  return ps;
}

uint64_t resolve_seed(std::optional<uint64_t> given) {
  if (given) return *given;
  uint64_t s = std::random_device{}();
  std::cout << "seed (chosen at random): " << s << "\n";
  return s;
}

std::string flats_string(const PointSet& ps, char sep = ' ') {
  std::string out;
  for (int f : ps.elements()) {
    if (!out.empty()) out += sep;
    out += std::to_string(f);
  }
  return out;
}

int cmd_sumset(int p, int r, const std::string& a, const std::string& afile,
               const std::string& b, const std::string& bfile, bool restricted,
               const std::string& output) {
  Manifest man("sumset", output);
  Modulus mod(p, r);
  PointSet sa = load_operand(mod, a, afile);
  PointSet sb = load_operand(mod, b, bfile);
  PointSet result = restricted ? restricted_sumset(sa, sb) : sumset(sa, sb);
  std::ostringstream text;
  result.write_text(text);
  std::cout << text.str() << "cardinality " << result.size() << "\n";
  if (!output.empty()) {
    std::ofstream os(output, std::ios::trunc);
    result.write_text(os);
  }
  man.j["config"] = {{"p", p}, {"r", r}, {"a", flats_string(sa, ',')},
                     {"b", flats_string(sb, ',')}, {"restricted", restricted}};
  man.j["result"] = {{"cardinality", result.size()},
                     {"set", flats_string(result, ',')}};
  man.write();
  return 0;
}

json witness_summary(const SearchWitness& w) {
  json ws = json::array();
  for (const auto& ps : w.witnesses) ws.push_back(flats_string(ps, ','));
  return {{"best_value", w.best_value}, {"complete", w.complete},
          {"witnesses", ws}, {"nodes_visited", w.nodes_visited},
          {"pruned_count", w.pruned_count}};
}

int cmd_rho(SearchConfig cfg, const std::string& output) {
  std::string out = output.empty()
      ? "rho_p" + std::to_string(cfg.p) + "_r" + std::to_string(cfg.r) + "_m" +
            std::to_string(cfg.m) + ".witness.txt"
      : output;
  Manifest man("rho", out);
  man.j["config"] = {{"p", cfg.p}, {"r", cfg.r}, {"m", cfg.m},
                     {"strategy", to_string(cfg.strategy)},
                     {"threads", cfg.threads}};
  SearchWitness w;
  try {
    w = rho(cfg);
  } catch (const infeasible_error& e) {
    std::cout << "infeasible without --budget: about " << e.estimated_nodes
              << " candidate sets\n";
    man.j["result"] = {{"infeasible", true},
                       {"estimated_nodes", e.estimated_nodes}};
    man.write();
    return kExitInfeasible;
  }
  write_witness_file(out, cfg, w);
  std::cout << "best_value " << w.best_value << "\n"
            << "complete " << (w.complete ? "true" : "false") << "\n"
            << "witnesses " << out << "\n";
  man.j["result"] = witness_summary(w);
  man.write();
  return w.complete ? 0 : kExitTruncated;
}

int cmd_verify(int p, const VerificationOptions& opt, bool seed_given,
               const std::string& output) {
  std::string out = output.empty() ? "verify_p" + std::to_string(p) + ".json"
                                   : output;
  Manifest man("verify", out);
  VerificationOptions o = opt;
  bool sampling = p != 5 && p != 7;
  if (sampling && !seed_given) o.seed = resolve_seed(std::nullopt);
  VerificationReport rep = verify_theorem_1_4(p, o);
  json rj = {{"p", rep.p}, {"mode", rep.sampling ? "sampling" : "exact"},
             {"attainment_value", rep.attainment_value},
             {"attainment_ok", rep.attainment_ok},
             {"verified", rep.verified}};
  if (rep.sampling) {
    rj["samples"] = rep.samples;
    rj["min_sampled"] = rep.min_sampled;
    rj["seed"] = rep.seed;
  } else {
    rj["lower"] = witness_summary(rep.lower);
  }
  std::ofstream(out, std::ios::trunc) << rj.dump(2) << "\n";
  bool complete = rep.sampling || rep.lower.complete;
  std::cout << "theorem: minimum restricted-doubling size at 2p+1 points is 4p\n"
            << "p " << p << "\nattainment " << rep.attainment_value << " / "
            << 4 * p << (rep.attainment_ok ? " PASS" : " FAIL") << "\n";
  if (rep.sampling)
    std::cout << "sampling min over " << rep.samples << " sets: "
              << rep.min_sampled << " (seed " << rep.seed
              << ", no completeness claim)\n";
  else
    std::cout << "lower bound: best " << rep.lower.best_value << ", "
              << (rep.lower.complete ? "complete" : "truncated") << "\n";
  std::cout << (rep.verified ? "PASS" : (complete ? "FAIL" : "PARTIAL")) << "\n";
  man.j["config"] = {{"p", p}, {"threads", o.threads}};
  if (rep.sampling) man.j["seed"] = rep.seed;
  man.j["result"] = rj;
  man.write();
  if (!complete) return kExitTruncated;
  return rep.verified ? 0 : 1;
}

int cmd_census(int p, int m, int value, const std::string& output) {
  std::string out = output.empty() ? "census.csv" : output;
  Manifest man("census", out);
  man.j["config"] = {{"p", p}, {"m", m}, {"value", value}};
  std::vector<CensusEntry> entries;
  try {
    entries = census_minimizers(p, m, value);
  } catch (const infeasible_error& e) {
    std::cout << "infeasible: about " << e.estimated_nodes
              << " candidate sets\n";
    man.j["result"] = {{"infeasible", true},
                       {"estimated_nodes", e.estimated_nodes}};
    man.write();
    return kExitInfeasible;
  }
  std::ofstream os(out, std::ios::trunc);
  os << "canonical_set,match_conj43\n";
  for (const auto& e : entries)
    os << flats_string(e.canonical, ' ') << ","
       << (e.matches_conj43 ? "true" : "false") << "\n";
  std::cout << "minimizers " << entries.size() << "\nwritten " << out << "\n";
  man.j["result"] = {{"count", entries.size()}};
  man.write();
  return 0;
}

int cmd_construct(const std::string& tmpl, int p, const std::string& output) {
  Manifest man("construct", output);
  Modulus mod(p, 2);
  ExtremalTemplate t = tmpl == "ek" ? default_ek_template(mod)
                                    : default_conj43_template(mod);
  PointSet a = build_extremal(t);
  std::ostringstream text;
  a.write_text(text);
  std::cout << text.str() << "cardinality " << a.size() << "\n";
  if (!output.empty()) {
    std::ofstream os(output, std::ios::trunc);
    a.write_text(os);
  }
  man.j["config"] = {{"template", tmpl}, {"p", p}};
  man.j["result"] = {{"cardinality", a.size()},
                     {"set", flats_string(a, ',')}};
  man.write();
  return 0;
}

int cmd_sweep_mu(int p, const std::string& output) {
  std::string out = output.empty() ? "sweep_mu.csv" : output;
  Manifest man("sweep-mu", out);
  man.j["config"] = {{"p", p}};
  Modulus mod(p, 2);
  std::ofstream os(out, std::ios::trunc);
  os << "d,a1,mu,value\n";
  int min_v = 1 << 30, count = 0;
  for (const MuSequence& seq : enumerate_mu_sequences(mod)) {
    int v = double_restricted_size(build_mu_set(seq));
    min_v = std::min(min_v, v);
    ++count;
    os << seq.d.flat() << "," << seq.a1.flat() << ",";
    for (size_t k = 0; k < seq.mu.size(); ++k)
      os << (k ? " " : "") << seq.mu[k];
    os << "," << v << "\n";
  }
  std::cout << "sequences " << count << "\nmin value " << min_v << "\nwritten "
            << out << "\n";
  man.j["result"] = {{"count", count}, {"min_value", min_v}};
  man.write();
  return 0;
}

int cmd_bench(int p, int r, double seconds, std::optional<uint64_t> seed_opt,
              const std::string& output) {
  Manifest man("bench", output);
  uint64_t seed = resolve_seed(seed_opt);
  Modulus mod(p, r);
  std::mt19937_64 rng(seed);
  int n = mod.order(), m = std::min(n, 2 * p + 1);
  std::vector<int> deck(n);
  std::vector<PointSet> sets;
  for (int s = 0; s < 256; ++s) {
    for (int i = 0; i < n; ++i) deck[i] = i;
    for (int i = 0; i < m; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(deck[i], deck[pick(rng)]);
    }
    sets.emplace_back(mod, std::span<const int>(deck.data(), m));
  }
  auto t0 = std::chrono::steady_clock::now();
  uint64_t evals = 0;
  long long sink = 0;
  while (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
             .count() < seconds / 2) {
    for (const auto& s : sets) sink += double_restricted_size(s);
    evals += sets.size();
  }
  double kernel_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double kernel_rate = evals / kernel_secs;

  double node_rate = 0;
  if (r == 2) {
    SearchConfig cfg;
    cfg.p = p;
    cfg.r = 2;
    cfg.m = std::min(n, 2 * p + 1);
    cfg.strategy = Strategy::BnB;
    cfg.time_budget_seconds = seconds / 2;
    auto t1 = std::chrono::steady_clock::now();
    SearchWitness w = rho(cfg);
    double search_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
            .count();
    node_rate = w.nodes_visited / search_secs;
  }
  std::cout << "sumset kernel " << static_cast<uint64_t>(kernel_rate)
            << " sets/s\nsearch " << static_cast<uint64_t>(node_rate)
            << " nodes/s\n(" << sink << ")\n";
  man.j["config"] = {{"p", p}, {"r", r}, {"seconds", seconds}};
  man.j["seed"] = seed;
  man.j["result"] = {{"kernel_sets_per_s", kernel_rate},
                     {"search_nodes_per_s", node_rate}};
  man.write();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact restricted-sumset minima over Z_p^r"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int p = 5, r = 2, m = 0, value = 0;
  std::string a, afile, b, bfile, output, strategy, tmpl = "conj43";
  bool restricted = false;
  double budget = 0, seconds = 2.0;
  std::string checkpoint;
  int threads = 1;
  std::optional<int> target;
  std::optional<uint64_t> seed;
  uint64_t samples = 1'000'000;

  auto* su = app.add_subcommand("sumset", "compute A + B or A +^ B");
  su->add_option("--p", p, "prime modulus")->required();
  su->add_option("--r", r, "rank");
  su->add_option("--a", a, "first set, comma-separated flat indices");
  su->add_option("--a-file", afile, "first set, text file");
  su->add_option("--b", b, "second set, comma-separated flat indices");
  su->add_option("--b-file", bfile, "second set, text file");
  su->add_flag("--restricted", restricted, "exclude equal summands");
  su->add_option("--output", output, "write the result set here");

  auto* rh = app.add_subcommand("rho", "minimum |2^A| over m-subsets");
  rh->add_option("--p", p, "prime modulus")->required();
  rh->add_option("--r", r, "rank");
  rh->add_option("--m", m, "subset size")->required();
  rh->add_option("--strategy", strategy, "EXHAUSTIVE | ORBIT | BNB");
  rh->add_option("--target", target, "record every set at or below this value");
  rh->add_option("--budget", budget, "wall-clock seconds");
  rh->add_option("--checkpoint", checkpoint, "checkpoint file (threads=1)");
  rh->add_option("--threads", threads, "worker threads");
  rh->add_option("--output", output, "witness file path");

  auto* ve = app.add_subcommand("verify",
                                "check the 2p+1 -> 4p minimum theorem");
  ve->add_option("--p", p, "prime")->required();
  ve->add_option("--budget", budget, "wall-clock seconds");
  ve->add_option("--checkpoint", checkpoint, "checkpoint file (threads=1)");
  ve->add_option("--threads", threads, "worker threads");
  ve->add_option("--samples", samples, "sample count for large p");
  ve->add_option("--seed", seed, "RNG seed for sampling mode");
  ve->add_option("--output", output, "JSON report path");

  auto* ce = app.add_subcommand("census", "all canonical minimizers at a value");
  ce->add_option("--p", p, "prime")->required();
  ce->add_option("--m", m, "subset size")->required();
  ce->add_option("--value", value, "target |2^A|")->required();
  ce->add_option("--output", output, "CSV path");

  auto* co = app.add_subcommand("construct", "build a structured extremal set");
  co->add_option("--template", tmpl, "ek | conj43")
      ->check(CLI::IsMember({"ek", "conj43"}));
  co->add_option("--p", p, "prime")->required();
  co->add_option("--output", output, "write the set here");

  auto* sw = app.add_subcommand("sweep-mu", "evaluate the whole mu-family");
  sw->add_option("--p", p, "prime")->required();
  sw->add_option("--output", output, "CSV path");

  auto* be = app.add_subcommand("bench", "kernel and search throughput");
  be->add_option("--p", p, "prime")->required();
  be->add_option("--r", r, "rank");
  be->add_option("--seconds", seconds, "total benchmark time");
  be->add_option("--seed", seed, "RNG seed");
  be->add_option("--output", output, "manifest base path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (su->parsed()) {
      if (a.empty() == afile.empty())
        throw usage_error("give exactly one of --a / --a-file");
      if (b.empty() == bfile.empty())
        throw usage_error("give exactly one of --b / --b-file");
      return cmd_sumset(p, r, a, afile, b, bfile, restricted, output);
    }
    if (rh->parsed()) {
      SearchConfig cfg;
      cfg.p = p;
      cfg.r = r;
      cfg.m = m;
      cfg.strategy = strategy.empty()
                         ? (r == 2 ? Strategy::Orbit : Strategy::Exhaustive)
                         : strategy_from_string(strategy);
      cfg.target = target;
      if (budget > 0) cfg.time_budget_seconds = budget;
      cfg.checkpoint_path = checkpoint;
      cfg.threads = threads;
      return cmd_rho(cfg, output);
    }
    if (ve->parsed()) {
      VerificationOptions opt;
      if (budget > 0) opt.time_budget_seconds = budget;
      opt.checkpoint_path = checkpoint;
      opt.threads = threads;
      opt.samples = samples;
      if (seed) opt.seed = *seed;
      return cmd_verify(p, opt, seed.has_value(), output);
    }
    if (ce->parsed()) return cmd_census(p, m, value, output);
    if (co->parsed()) return cmd_construct(tmpl, p, output);
    if (sw->parsed()) return cmd_sweep_mu(p, output);
    if (be->parsed()) return cmd_bench(p, r, seconds, seed, output);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
