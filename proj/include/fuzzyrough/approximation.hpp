#ifndef FUZZYROUGH_APPROXIMATION_HPP
#define FUZZYROUGH_APPROXIMATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "fuzzyrough/partitions.hpp"

namespace fuzzyrough {

enum class ApproxKind { Lower, Upper };

/// A fuzzy incomplete lower or upper approximation for one (attribute subset,
/// class) pair. Lower entries keep only uncertain members belonging to the
/// class (an uncertain object of another class must not be imputed into this
/// class's combination); upper entries are the full classes.
struct Approximation {
  ApproxKind kind = ApproxKind::Lower;
  std::string class_label;
  std::vector<int> subset;
  std::vector<IncompleteEquivalenceClass> entries;
};

/// Entries: classes whose (nonempty) certain part is contained in the
/// partition. Classes without certain members are skipped.
Approximation lower_approximation(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition,
                                  const std::vector<int>& subset);

/// Entries: classes whose certain part intersects the partition but is not
/// contained in it. Disjoint from the lower approximation by construction.
Approximation upper_approximation(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition,
                                  const std::vector<int>& subset);

/// Membership-weighted mean of the certain members' values of `attribute`.
/// Empty when the class has no certain donor with a known value.
std::optional<double> estimate_value_lower(const std::vector<FuzzyObject>& objects,
                                           int attribute,
                                           const IncompleteEquivalenceClass& cls);

/// Same quotient with donors restricted to certain members of the partition.
std::optional<double> estimate_value_upper(const std::vector<FuzzyObject>& objects,
                                           int attribute,
                                           const IncompleteEquivalenceClass& cls,
                                           const ClassPartition& partition);

/// Membership-weighted fraction of the class's certain members that belong to
/// the partition. Throws EmptyClassError on a class without members.
double plausibility_of_class(const IncompleteEquivalenceClass& cls,
                             const ClassPartition& partition);

/// Ranking used when an uncertain object sits in several classes of one upper
/// approximation: plausibility, then number of certain members, then the
/// canonically smallest combination. Returns the index of the winner.
std::size_t resolve_uncertain(const std::vector<IncompleteEquivalenceClass>& candidates,
                              const ClassPartition& partition);

enum class Phase { LowerPass, UpperPass };

/// One accepted estimation of a missing value.
struct ImputationRecord {
  int object_id = 0;
  int attribute = 0;
  double value = 0.0;
  RegionCombination source;
  Phase phase = Phase::LowerPass;
};

/// A cell still missing when the pipeline reached its fixpoint.
struct UnresolvedCell {
  int object_id = 0;
  int attribute = 0;
  bool operator==(const UnresolvedCell&) const = default;
};

struct PipelineResult {
  std::vector<FuzzyObject> objects;
  std::vector<ImputationRecord> records;
  std::vector<UnresolvedCell> unresolved;
};

/// Runs the interleaved estimation: a lower-approximation pass over subset
/// sizes 1..m (estimating objects that are uncertain in exactly one entry
/// class), then an upper-approximation pass (estimating every remaining
/// uncertain object, most plausible class first, donors restricted to the
/// approximated class). After each accepted estimate the value is
/// re-fuzzified and every structure is rebuilt from scratch. `mfs` may be
/// null only when the dataset is complete.
PipelineResult run_imputation_pipeline(std::vector<FuzzyObject> objects,
                                       const std::vector<ClassPartition>& partitions,
                                       const MembershipFunctionSet* mfs,
                                       const RegionCatalog& catalog);

}  // namespace fuzzyrough

#endif
