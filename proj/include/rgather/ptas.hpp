#pragma once

#include <optional>
#include <unordered_map>

#include "rgather/instance.hpp"
#include "rgather/profile.hpp"
#include "rgather/rational.hpp"

namespace rgather {

/// Parameters of one decision-oracle call: grid unit t = b*delta/4 and
/// snapped threshold K = floor((b+2t)/t) = floor(4/delta) + 2.
struct OracleParams {
  Rational b;
  Rational delta;
  Rational unit_t;
  int threshold_k = 0;

  static OracleParams from(const Rational& b, const Rational& delta);
};

/// Optional state-space extensions for the problem variants.
struct DecisionConfig {
  int outlier_budget = 0;  // users the plan may leave unassigned
  int open_cap = -1;       // max open facilities, -1 = unconstrained
};

/// Reachable-state structure of the decision DP on a rounded tree.
///
/// A state at vertex v is a pair of profiles plus the variant counters:
///   P: users below v not yet matched to a facility, by rounded distance
///      from v (an entry beyond K would be unservable, so K+1 slots);
///   Q: users outside the subtree that facilities below v have pledged
///      to serve, by rounded distance from v.
/// Profiles are pruned to sub-multisets of the actual user census inside
/// respectively outside the subtree, which keeps the reachable sets tiny.
/// Each state remembers one witness transition for reconstruction.
class DecisionDp {
 public:
  struct Trans {
    enum class Kind : uint8_t {
      LeafEmpty,
      LeafUserPending,
      LeafUserIgnored,
      LeafFacilityClosed,
      LeafFacilityOpen,
      Merge,
    };
    Kind kind = Kind::LeafEmpty;
    std::string sx, sy;  // child state keys (Merge)
    DistProfile rx, ry;  // cross-matchings x->facilities(y), y->facilities(x)
    DistProfile w;       // pledged profile of an opened facility
  };

  DecisionDp(const RoundedTree& rounded, const Instance& instance, int threshold_k,
             const DecisionConfig& config);

  int threshold() const { return k_; }
  const std::unordered_map<std::string, Trans>& states(VertexId v) const { return states_[v]; }

  /// True when some root state has both profiles empty (variant counters
  /// already respect the config bounds by construction).
  bool root_feasible() const;

  /// Witness solution for a feasible root; call only when root_feasible().
  Solution extract_certificate() const;

 private:
  std::string state_key(const DistProfile& p, const DistProfile& q, int ignored, int opened) const;
  void build_leaf(VertexId v);
  void merge(VertexId v);
  struct Realized;
  void realize(VertexId v, const std::string& key, Realized& out, Solution& sol) const;

  const RoundedTree* rounded_;
  const Instance* instance_;
  int k_;
  DecisionConfig config_;
  std::vector<std::unordered_map<std::string, Trans>> states_;
  std::vector<DistProfile> inside_census_, outside_census_;
};

/// Memoizing decision oracle bound to one instance and slack. A single
/// rounded-DP probe at threshold tau uses grid unit tau*delta/4 and is
/// correct on its own, but its YES set need not grow with tau: the grid
/// phase moves with the threshold, so a coarser grid can stop compressing
/// a solution that a finer one certified. decide(b) therefore answers YES
/// iff some probe at a candidate distance <= b succeeds, which makes the
/// YES set an up-set in b while keeping both contract directions:
///   YES => certificate cost <= (1+delta)*candidate <= (1+delta)*b,
///   NO  => every candidate <= b refused, and the optimum is itself a
///          candidate, so OPT > b.
/// Probes run lazily from the largest admissible candidate down and are
/// cached, so a full sweep costs one DP per candidate.
class DecisionOracle {
 public:
  /// `instance` must stay alive and in normal form.
  DecisionOracle(const Instance& instance, Rational delta, DecisionConfig config = {});

  std::optional<Solution> decide(const Rational& b);

  /// Probe threshold standing in for the zero candidate: low enough that
  /// any certificate is forced to cost 0.
  const Rational& zero_threshold() const { return zero_threshold_; }
  bool has_zero_candidate() const { return has_zero_; }
  int dp_runs() const { return dp_runs_; }

 private:
  std::optional<Solution> probe(size_t rung);

  const Instance* instance_;
  Rational delta_;
  DecisionConfig config_;
  std::vector<long long> values_;      // sorted candidate values, 0 first if present
  std::vector<Rational> thresholds_;   // DP threshold per rung
  std::vector<std::optional<std::optional<Solution>>> memo_;
  Rational zero_threshold_;
  bool has_zero_ = false;
  int dp_runs_ = 0;
};

/// One-shot wrapper around DecisionOracle::decide: YES returns a
/// certificate with real cost <= (1+delta)*b, NO (nullopt) certifies the
/// optimum exceeds b, and answers are monotone in b for fixed delta.
/// Throws InfeasibleInstance when |U| minus the outlier allowance drops
/// below r or no facility exists, NonPositiveUnit when b or delta is not
/// positive.
std::optional<Solution> solve_decision(const Instance& instance, const Rational& b,
                                       const Rational& delta, const DecisionConfig& config = {});

/// Trivial certified bracket: lower = every user's nearest facility
/// maximized, upper = best single open facility. lower <= OPT <= upper.
std::pair<long long, long long> initial_bounds(const Instance& instance);

/// Reassigns the certificate's kept users optimally onto its open set
/// (threshold search plus a quota-respecting matching flow); open set and
/// ignored set are preserved, the max distance never increases.
Solution refine_certificate(const Instance& instance, const Solution& certificate);

/// Diagnostics of a driver run, mainly for tests and the bench harness.
struct PtasTrace {
  int oracle_calls = 0;
  long long final_candidate = -1;  // threshold the returned certificate came from
  std::vector<long long> probed;   // thresholds probed (numerators only when integral)
};

/// (1+epsilon)-approximate min-max r-gathering: binary search over the
/// candidate distance set with solve_decision(b, epsilon/2) probes.
Solution ptas_solve(const Instance& instance, const Rational& epsilon, PtasTrace* trace = nullptr);

/// Bracket-halving driver over [lower, upper] from initial_bounds; kept
/// alongside the candidate search for cross-checking.
Solution ptas_solve_bracket(const Instance& instance, const Rational& epsilon,
                            PtasTrace* trace = nullptr);

/// Outlier variant: up to floor(alpha*|U|) users may stay unassigned.
Solution ptas_solve_outliers(const Instance& instance, const Rational& epsilon,
                             const Rational& alpha, PtasTrace* trace = nullptr);

/// Capped variant: at most max_open facilities may be opened.
Solution ptas_solve_capped(const Instance& instance, const Rational& epsilon, int max_open,
                           PtasTrace* trace = nullptr);

}  // namespace rgather
