#ifndef FUZZYROUGH_RULES_HPP
#define FUZZYROUGH_RULES_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyrough/approximation.hpp"

namespace fuzzyrough {

/// Misclassification tolerance. Valid range [0, 0.5): at 0.5 the possible
/// band (beta, 1-beta] collapses.
struct Beta {
  double value = 0.0;

  explicit Beta(double v) : value(v) {
    if (!(v >= 0.0 && v < 0.5))
      throw SemanticError("beta must be in [0, 0.5), got " + std::to_string(v));
  }
};

/// Membership-weighted relative misclassification of a class against a
/// partition: 1 - (sum of certain members' degrees inside) / (sum of all
/// certain members' degrees). Uncertain members are ignored; classes are
/// expected to be fully certain after imputation. Throws EmptyClassError on a
/// memberless class.
double misclassification(const IncompleteEquivalenceClass& cls, const ClassPartition& partition);

/// One entry of a beta approximation.
struct BetaEntry {
  IncompleteEquivalenceClass cls;
  double mu = 0.0;
  double misclassification = 0.0;
};

/// Classes with misclassification <= beta.
std::vector<BetaEntry> beta_lower(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition, Beta beta);

/// Classes with beta < misclassification <= 1 - beta.
std::vector<BetaEntry> beta_upper(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition, Beta beta);

enum class RuleKind { Certain, Possible };

/// A mined rule. Conditions are (attribute, region) label pairs in canonical
/// attribute order; plausibility is 1 - misclassification of the source
/// class; effectiveness is the source class's membership value.
struct FuzzyRule {
  RuleKind kind = RuleKind::Certain;
  std::vector<std::pair<std::string, std::string>> conditions;
  std::string consequent;
  double plausibility = 0.0;
  double effectiveness = 0.0;

  bool operator==(const FuzzyRule&) const = default;
};

/// Certain rules from the beta-lower entries, possible rules from the
/// beta-upper entries, for one class.
std::vector<FuzzyRule> derive_rules(const std::vector<BetaEntry>& lower,
                                    const std::vector<BetaEntry>& upper,
                                    const std::string& class_label,
                                    const RegionCatalog& catalog);

/// True iff both rules conclude the same class and r1's conditions are a
/// strict superset of r2's.
bool is_more_specific(const FuzzyRule& r1, const FuzzyRule& r2);

/// Keeps the maximally general rules: a certain rule is dropped when more
/// specific than another certain rule with effectiveness at least its own; a
/// possible rule when more specific than another possible rule with both
/// plausibility and effectiveness at least its own. Order is preserved.
std::vector<FuzzyRule> prune(const std::vector<FuzzyRule>& rules);

struct Classification {
  std::string class_label;
  double score = 0.0;
};

/// Matches the object against the rules: match degree = min over conditions
/// of the object's degree in that region; score = match degree x
/// plausibility. Certain rules are consulted first; possible rules only when
/// no certain rule matches. Best score wins, ties by higher effectiveness,
/// then rule order. Empty when no rule matches at all.
std::optional<Classification> classify(const FuzzyObject& object,
                                       const std::vector<std::string>& object_attributes,
                                       const std::vector<FuzzyRule>& rules);

/// Everything a mining run produces.
struct MiningResult {
  std::vector<FuzzyObject> objects;  // post-imputation
  std::vector<ImputationRecord> imputations;
  std::vector<UnresolvedCell> unresolved;
  std::vector<std::pair<std::vector<int>, std::vector<IncompleteEquivalenceClass>>>
      classes_by_subset;                // post-imputation, canonical order
  std::vector<FuzzyRule> derived;       // before pruning
  std::vector<FuzzyRule> rules;         // after pruning
};

/// Full run: imputation, beta approximations over every attribute subset and
/// class, rule derivation and pruning. `mfs` may be null only for complete
/// datasets.
MiningResult mine(const std::vector<FuzzyObject>& objects,
                  const std::vector<ClassPartition>& partitions, const RegionCatalog& catalog,
                  const MembershipFunctionSet* mfs, Beta beta);

/// `IF SP = H AND DP = N THEN BP = H [certain] plausibility=1.00 effectiveness=0.16`
std::string rule_to_text(const FuzzyRule& rule, const std::string& class_name);

/// `certain,SP=H&DP=N,H,1.000000,0.160000`
std::string rule_to_csv(const FuzzyRule& rule);

void write_rules_text(std::ostream& out, const std::vector<FuzzyRule>& rules,
                      const std::string& class_name);
void write_rules_csv(std::ostream& out, const std::vector<FuzzyRule>& rules);

/// Parses the machine CSV form (header line expected).
std::vector<FuzzyRule> parse_rules_csv(std::istream& in);

}  // namespace fuzzyrough

#endif
