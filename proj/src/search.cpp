#include "sumsetlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <thread>

#include "sumsetlab/profiles.hpp"
#include "sumsetlab/structures.hpp"

namespace sumsetlab {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Exhaustive: return "EXHAUSTIVE";
    case Strategy::Orbit: return "ORBIT";
    case Strategy::BnB: return "BNB";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "EXHAUSTIVE" || s == "exhaustive") return Strategy::Exhaustive;
  if (s == "ORBIT" || s == "orbit") return Strategy::Orbit;
  if (s == "BNB" || s == "bnb") return Strategy::BnB;
  throw usage_error("unknown strategy: " + s);
}

std::string canonical_config_text(const SearchConfig& c) {
  std::string t = "p=" + std::to_string(c.p) + " r=" + std::to_string(c.r) +
                  " m=" + std::to_string(c.m) + " strategy=" + to_string(c.strategy) +
                  " target=";
  t += c.target ? std::to_string(*c.target) : "-";
  return t;
}

uint64_t config_hash(const SearchConfig& c) {
  std::string t = canonical_config_text(c);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : t) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

infeasible_error::infeasible_error(double est)
    : std::runtime_error("search too large without a time budget: about " +
                         std::to_string(est) + " candidate sets"),
      estimated_nodes(est) {}

namespace {

double comb(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

void validate(const SearchConfig& c) {
  Modulus mod(c.p, c.r);  // validates p prime, ranges
  if (c.m < 1 || c.m > mod.order())
    throw usage_error("m must lie in [1, p^r]");
  if (c.strategy != Strategy::Exhaustive && c.r != 2)
    throw usage_error("ORBIT and BNB require r = 2");
  if (c.strategy != Strategy::Exhaustive && c.m < 2)
    throw usage_error("ORBIT and BNB require m >= 2");
  if (c.threads < 1) throw usage_error("threads must be >= 1");
  if (!c.checkpoint_path.empty() && c.threads != 1)
    throw usage_error("checkpointing requires threads == 1");
  if (!c.checkpoint_path.empty() && c.strategy == Strategy::Exhaustive)
    throw usage_error("checkpointing requires ORBIT or BNB");
}

using Clock = std::chrono::steady_clock;

struct SharedState {
  std::atomic<int> best{std::numeric_limits<int>::max()};
  std::optional<int> target;
  bool use_budget = false;
  Clock::time_point deadline{};
  std::atomic<bool> truncated{false};

  int cap() const {
    int b = best.load(std::memory_order_relaxed);
    return target ? std::max(*target, b) : b;
  }
  void offer(int v) {
    int cur = best.load(std::memory_order_relaxed);
    while (v < cur &&
           !best.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }
};

/// One DFS worker. Owns the packed rows and per-direction coset counts of the
/// current prefix; all cross-thread state lives in SharedState.
struct Dfs {
  const SearchConfig& cfg;
  SharedState& shared;
  int p, r, n, m, nrows;
  bool prune_on;
  std::vector<uint64_t> rows;
  std::vector<int> prefix;
  // dir_coset[dir * n + flat] = coset label of flat under direction dir.
  std::vector<uint8_t> dir_coset;
  int ndirs = 0;
  std::vector<int> counts;  // ndirs * p, counts[dir * p + label]

  uint64_t nodes = 0, pruned = 0, audit_failures = 0;
  std::vector<std::pair<int, std::vector<int>>> hits;
  unsigned tick = 0;
  // resume support (single-thread checkpoint runs only)
  std::vector<int> replay_path;
  std::vector<int> saved_path;  // set when the budget expires mid-run

  Dfs(const SearchConfig& c, SharedState& sh)
      : cfg(c), shared(sh), p(c.p), r(c.r), m(c.m) {
    Modulus mod(p, r);
    n = mod.order();
    nrows = n / p;
    rows.assign(nrows, 0);
    prune_on = cfg.strategy == Strategy::BnB;
    if (prune_on) {
      auto subs = all_subgroups(mod);
      ndirs = static_cast<int>(subs.size());
      dir_coset.assign(static_cast<size_t>(ndirs) * n, 0);
      for (int d = 0; d < ndirs; ++d)
        for (int f = 0; f < n; ++f)
          dir_coset[static_cast<size_t>(d) * n + f] =
              static_cast<uint8_t>(subs[d].coset_index_flat(f));
      counts.assign(static_cast<size_t>(ndirs) * p, 0);
    }
  }

  void push(int f) {
    rows[f / p] |= 1ull << (f % p);
    prefix.push_back(f);
    if (prune_on)
      for (int d = 0; d < ndirs; ++d)
        ++counts[static_cast<size_t>(d) * p +
                 dir_coset[static_cast<size_t>(d) * n + f]];
  }
  void pop() {
    int f = prefix.back();
    prefix.pop_back();
    rows[f / p] &= ~(1ull << (f % p));
    if (prune_on)
      for (int d = 0; d < ndirs; ++d)
        --counts[static_cast<size_t>(d) * p +
                 dir_coset[static_cast<size_t>(d) * n + f]];
  }

  bool budget_expired() {
    if (!shared.use_budget) return false;
    if ((++tick & 255u) != 0) return false;
    return Clock::now() >= shared.deadline;
  }

  int completion_bound(int remaining) const {
    int best = 0;
    std::vector<int> sizes(p);
    for (int d = 0; d < ndirs; ++d) {
      std::copy_n(counts.begin() + static_cast<size_t>(d) * p, p,
                  sizes.begin());
      best = std::max(best, completion_lower_bound(p, sizes, remaining));
    }
    return best;
  }

  void evaluate_leaf() {
    int v = double_restricted_size_raw(rows, p);
    shared.offer(v);
    if (v <= shared.cap()) hits.emplace_back(v, prefix);
  }

  /// Minimum leaf value under the current prefix, no pruning. Audit helper.
  int force_min(int depth) {
    if (depth == m) return double_restricted_size_raw(rows, p);
    int lo = depth == 0 ? 0 : prefix.back() + 1;
    int best = std::numeric_limits<int>::max();
    for (int c = lo; c <= n - (m - depth); ++c) {
      push(c);
      best = std::min(best, force_min(depth + 1));
      pop();
    }
    return best;
  }

  /// depth = current prefix length; replay = prefix is a strict ancestor of
  /// the resume path (already counted before the save, so skip bookkeeping).
  void dfs(int depth, bool replay) {
    if (!replay) {
      if (budget_expired()) {
        saved_path = prefix;
        shared.truncated.store(true);
        return;
      }
      ++nodes;
      if (prune_on && depth >= 3 && depth < m) {
        int bound = completion_bound(m - depth);
        if (bound > shared.cap()) {
          ++pruned;
          if (cfg.audit_pruning && force_min(depth) < bound) ++audit_failures;
          return;
        }
      }
    }
    if (depth == m) {
      evaluate_leaf();
      return;
    }
    int lo = depth == 0 ? 0 : prefix.back() + 1;
    int hi = n - (m - depth);
    if (replay) {
      int c = replay_path[depth];
      push(c);
      dfs(depth + 1, depth + 1 < static_cast<int>(replay_path.size()));
      pop();
      if (shared.truncated.load(std::memory_order_relaxed)) return;
      lo = c + 1;
    }
    for (int c = lo; c <= hi; ++c) {
      push(c);
      dfs(depth + 1, false);
      pop();
      if (shared.truncated.load(std::memory_order_relaxed)) return;
    }
  }
};

struct RawResult {
  int best = std::numeric_limits<int>::max();
  bool complete = false;
  uint64_t nodes = 0, pruned = 0, audit_failures = 0;
  std::vector<std::pair<int, std::vector<int>>> hits;
};

void run_checkpointed(const SearchConfig& cfg, SharedState& shared,
                      RawResult& out) {
  Dfs d(cfg, shared);
  bool resumed = false;
  if (std::ifstream probe(cfg.checkpoint_path, std::ios::binary); probe) {
    probe.close();
    Checkpoint ck = checkpoint_load(cfg.checkpoint_path);
    if (ck.cfg_hash != config_hash(cfg))
      throw usage_error("checkpoint was written by a different configuration");
    shared.offer(ck.best);
    d.nodes = ck.nodes;
    d.pruned = ck.pruned;
    d.hits = std::move(ck.hits);
    d.replay_path = std::move(ck.path);
    resumed = true;
  }
  // ORBIT and BNB roots are pinned to flats {0, 1}: every affine orbit of an
  // m >= 2 set has a representative through (0,0) and (1,0).
  d.push(0);
  if (cfg.m >= 2) d.push(1);
  int fixed = static_cast<int>(d.prefix.size());
  bool replay = resumed && static_cast<int>(d.replay_path.size()) > fixed;
  d.dfs(fixed, replay);
  while (!d.prefix.empty()) d.pop();

  out.nodes = d.nodes;
  out.pruned = d.pruned;
  out.audit_failures = d.audit_failures;
  out.hits = std::move(d.hits);
  out.complete = !shared.truncated.load();
  if (!out.complete) {
    Checkpoint ck;
    ck.cfg_hash = config_hash(cfg);
    ck.best = shared.best.load();
    ck.nodes = out.nodes;
    ck.pruned = out.pruned;
    ck.path = std::move(d.saved_path);
    ck.hits = out.hits;
    checkpoint_save(cfg.checkpoint_path, ck);
  } else {
    std::remove(cfg.checkpoint_path.c_str());
  }
}

void run_parallel(const SearchConfig& cfg, SharedState& shared,
                  RawResult& out) {
  int n = cfg.p;
  for (int i = 1; i < cfg.r; ++i) n *= cfg.p;
  bool orbit = cfg.strategy != Strategy::Exhaustive;
  int fixed = orbit ? std::min(2, cfg.m) : 0;
  // Task roots: one per choice of the first free element.
  std::vector<int> roots;
  if (fixed == cfg.m) {
    roots.push_back(-1);  // single degenerate task, prefix already complete
  } else {
    for (int c = fixed; c <= n - (cfg.m - fixed); ++c) roots.push_back(c);
  }
  int nthreads = std::min<int>(cfg.threads, static_cast<int>(roots.size()));
  std::vector<RawResult> parts(roots.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    Dfs d(cfg, shared);
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= roots.size() || shared.truncated.load()) break;
      d.nodes = d.pruned = d.audit_failures = 0;
      d.hits.clear();
      for (int k = 0; k < fixed; ++k) d.push(k);
      if (roots[i] >= 0) d.push(roots[i]);
      d.dfs(static_cast<int>(d.prefix.size()), false);
      while (!d.prefix.empty()) d.pop();
      parts[i] = {0, true, d.nodes, d.pruned, d.audit_failures,
                  std::move(d.hits)};
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& part : parts) {
    out.nodes += part.nodes;
    out.pruned += part.pruned;
    out.audit_failures += part.audit_failures;
    out.hits.insert(out.hits.end(), part.hits.begin(), part.hits.end());
  }
  out.complete = !shared.truncated.load();
}

RawResult search_run(const SearchConfig& cfg) {
  validate(cfg);
  if (!cfg.time_budget_seconds && estimate_nodes(cfg) > 1e9)
    throw infeasible_error(estimate_nodes(cfg));

  SharedState shared;
  shared.target = cfg.target;
  if (cfg.time_budget_seconds) {
    shared.use_budget = true;
    shared.deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(*cfg.time_budget_seconds));
  }
  RawResult out;
  if (!cfg.checkpoint_path.empty())
    run_checkpointed(cfg, shared, out);
  else
    run_parallel(cfg, shared, out);
  out.best = shared.best.load();
  return out;
}

std::vector<PointSet> canonical_hits(const Modulus& mod,
                                     const std::vector<std::pair<int, std::vector<int>>>& hits,
                                     int value) {
  std::vector<PointSet> forms;
  for (const auto& [v, flats] : hits) {
    if (v != value) continue;
    PointSet c = canonical_form(PointSet(mod, flats));
    bool seen = false;
    for (const auto& f : forms)
      if (f == c) { seen = true; break; }
    if (!seen) forms.push_back(std::move(c));
  }
  std::sort(forms.begin(), forms.end(),
            [](const PointSet& a, const PointSet& b) { return a.lex_less(b); });
  return forms;
}

}  // namespace

double estimate_nodes(const SearchConfig& c) {
  int n = 1;
  for (int i = 0; i < c.r; ++i) n *= c.p;
  if (c.strategy == Strategy::Exhaustive) return comb(n, c.m);
  return comb(n - 2, c.m - 2);
}

SearchWitness rho(const SearchConfig& c) {
  RawResult raw = search_run(c);
  SearchWitness w;
  w.best_value = raw.best;
  w.complete = raw.complete;
  w.nodes_visited = raw.nodes;
  w.pruned_count = raw.pruned;
  w.audit_failures = raw.audit_failures;
  if (raw.best != std::numeric_limits<int>::max()) {
    Modulus mod(c.p, c.r);
    w.witnesses = canonical_hits(mod, raw.hits, raw.best);
    // Contract: every emitted witness re-verifies at best_value.
    for (const auto& ps : w.witnesses)
      if (double_restricted_size(ps) != w.best_value)
        throw std::logic_error("witness failed re-verification");
  }
  return w;
}

void checkpoint_save(const std::string& path, const Checkpoint& ck) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw usage_error("cannot write checkpoint: " + path);
  os.write("SSLB1", 5);
  auto w64 = [&](uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  auto w32 = [&](int32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
  w64(ck.cfg_hash);
  w32(ck.best);
  w64(ck.nodes);
  w64(ck.pruned);
  w32(static_cast<int32_t>(ck.path.size()));
  for (int f : ck.path) w32(f);
  w32(static_cast<int32_t>(ck.hits.size()));
  for (const auto& [v, flats] : ck.hits) {
    w32(v);
    w32(static_cast<int32_t>(flats.size()));
    for (int f : flats) w32(f);
  }
  if (!os) throw usage_error("checkpoint write failed: " + path);
}

Checkpoint checkpoint_load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw usage_error("cannot read checkpoint: " + path);
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, "SSLB1", 5) != 0)
    throw usage_error("not a checkpoint file: " + path);
  auto r64 = [&] {
    uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto r32 = [&] {
    int32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  Checkpoint ck;
  ck.cfg_hash = r64();
  ck.best = r32();
  ck.nodes = r64();
  ck.pruned = r64();
  int np = r32();
  if (np < 0 || np > 4096) throw usage_error("corrupt checkpoint: " + path);
  ck.path.resize(np);
  for (int& f : ck.path) f = r32();
  int nh = r32();
  if (nh < 0) throw usage_error("corrupt checkpoint: " + path);
  ck.hits.resize(nh);
  for (auto& [v, flats] : ck.hits) {
    v = r32();
    int len = r32();
    if (len < 0 || len > 4096) throw usage_error("corrupt checkpoint: " + path);
    flats.resize(len);
    for (int& f : flats) f = r32();
  }
  if (!is) throw usage_error("truncated checkpoint: " + path);
  return ck;
}

VerificationReport verify_theorem_1_4(int p, const VerificationOptions& opt) {
  if (!is_prime(p) || p < 5) throw usage_error("p must be a prime >= 5");
  Modulus mod(p, 2);
  VerificationReport rep;
  rep.p = p;
  PointSet extremal = build_extremal(default_conj43_template(mod));
  rep.attainment_value = double_restricted_size(extremal);
  rep.attainment_ok = rep.attainment_value == 4 * p;

  if (p == 5 || p == 7) {
    SearchConfig cfg;
    cfg.p = p;
    cfg.r = 2;
    cfg.m = 2 * p + 1;
    cfg.strategy = Strategy::BnB;
    cfg.time_budget_seconds = opt.time_budget_seconds;
    cfg.checkpoint_path = opt.checkpoint_path;
    cfg.threads = opt.threads;
    if (p == 7 && !cfg.time_budget_seconds)
      cfg.time_budget_seconds = 60.0;  // p=7 at full depth needs a budget
    rep.lower = rho(cfg);
    rep.verified = rep.attainment_ok && rep.lower.complete &&
                   rep.lower.best_value == 4 * p;
  } else {
    rep.sampling = true;
    rep.samples = opt.samples;
    rep.seed = opt.seed;
    std::mt19937_64 rng(opt.seed);
    int n = mod.order(), m = 2 * p + 1;
    std::vector<int> deck(n);
    int min_seen = std::numeric_limits<int>::max();
    for (uint64_t s = 0; s < opt.samples; ++s) {
      for (int i = 0; i < n; ++i) deck[i] = i;
      for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(deck[i], deck[pick(rng)]);
      }
      PointSet a(mod, std::span<const int>(deck.data(), m));
      min_seen = std::min(min_seen, double_restricted_size(a));
      if (min_seen < 4 * p) break;
    }
    rep.min_sampled = min_seen;
    rep.verified = rep.attainment_ok && min_seen >= 4 * p;
  }
  return rep;
}

std::vector<CensusEntry> census_minimizers(int p, int m, int value) {
  SearchConfig cfg;
  cfg.p = p;
  cfg.r = 2;
  cfg.m = m;
  cfg.strategy = m >= 2 ? Strategy::Orbit : Strategy::Exhaustive;
  cfg.target = value;
  RawResult raw = search_run(cfg);
  std::vector<CensusEntry> out;
  for (PointSet& c : canonical_hits(Modulus(p, 2), raw.hits, value)) {
    bool match = matches_conjecture_4_3(c).has_value();
    out.push_back({std::move(c), match});
  }
  return out;
}

void write_witness_file(const std::string& path, const SearchConfig& c,
                        const SearchWitness& w) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw usage_error("cannot write witness file: " + path);
  os << "# p=" << c.p << " r=" << c.r << " m=" << c.m << " value="
     << w.best_value << " complete=" << (w.complete ? "true" : "false")
     << "\n";
  for (const auto& ps : w.witnesses) {
    bool first = true;
    for (int f : ps.elements()) {
      if (!first) os << ' ';
      os << f;
      first = false;
    }
    os << "\n";
  }
}

}  // namespace sumsetlab
