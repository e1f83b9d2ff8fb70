#ifndef SUMSETLAB_SEARCH_HPP
#define SUMSETLAB_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sumsetlab/pointset.hpp"

namespace sumsetlab {

enum class Strategy { Exhaustive, Orbit, BnB };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct SearchConfig {
  int p = 5;
  int r = 2;
  int m = 0;
  Strategy strategy = Strategy::Exhaustive;
  /// When set, every set with |2^A| <= target is recorded, and branch-and-
  /// bound prunes against the target instead of the moving best.
  std::optional<int> target;
  std::optional<double> time_budget_seconds;
  std::string checkpoint_path;  // empty = no checkpointing
  int threads = 1;
  /// Re-expand every pruned prefix exhaustively and verify the bound held.
  /// Only sane on small instances.
  bool audit_pruning = false;
};

/// "p=5 r=2 m=11 strategy=BNB target=-" — the text the checkpoint hash
/// guards. Budget, threads, and paths may differ between save and resume.
std::string canonical_config_text(const SearchConfig& c);
uint64_t config_hash(const SearchConfig& c);

struct SearchWitness {
  int best_value = -1;
  std::vector<PointSet> witnesses;  // canonical forms, sorted, deduplicated
  bool complete = false;
  uint64_t nodes_visited = 0;
  uint64_t pruned_count = 0;
  uint64_t audit_failures = 0;
};

/// Raised when a request would visit too many nodes to finish unbudgeted.
struct infeasible_error : std::runtime_error {
  double estimated_nodes;
  explicit infeasible_error(double est);
};

/// Estimated node count for the configured strategy (leaf combinations).
double estimate_nodes(const SearchConfig& c);

/// Minimum |2^A| over m-subsets of Z_p^r, with every canonical minimizer.
SearchWitness rho(const SearchConfig& c);

struct Checkpoint {
  uint64_t cfg_hash = 0;
  int best = 0;
  uint64_t nodes = 0;
  uint64_t pruned = 0;
  std::vector<int> path;  // suspended prefix, processed first on resume
  std::vector<std::pair<int, std::vector<int>>> hits;  // (value, flats)
};

void checkpoint_save(const std::string& path, const Checkpoint& ck);
Checkpoint checkpoint_load(const std::string& path);

struct VerificationOptions {
  std::optional<double> time_budget_seconds;
  std::string checkpoint_path;
  int threads = 1;
  uint64_t samples = 1'000'000;  // sampling mode only (p outside {5, 7})
  uint64_t seed = 0;
};

struct VerificationReport {
  int p = 0;
  bool sampling = false;
  int attainment_value = 0;  // |2^A| of the two-coset-plus-point construction
  bool attainment_ok = false;
  SearchWitness lower;       // exact mode only
  uint64_t samples = 0;      // sampling mode only
  int min_sampled = 0;
  uint64_t seed = 0;
  /// Exact mode: search exhausted and the minimum is exactly 4p.
  /// Sampling mode: no sampled set fell below 4p (no completeness claim).
  bool verified = false;
};

/// Check ρ(Z_p^2, 2p+1) = 4p: exact for p in {5, 7} (7 may truncate under
/// budget), random sampling for larger p.
VerificationReport verify_theorem_1_4(int p, const VerificationOptions& opt = {});

struct CensusEntry {
  PointSet canonical;
  bool matches_conj43 = false;
};

/// All canonical m-subsets of Z_p^2 with |2^A| exactly `value`.
std::vector<CensusEntry> census_minimizers(int p, int m, int value);

/// Text witness file: "# p=5 r=2 m=11 value=20 complete=true" header, then
/// one set per line as space-separated sorted flat indices.
void write_witness_file(const std::string& path, const SearchConfig& c,
                        const SearchWitness& w);

}  // namespace sumsetlab

#endif
