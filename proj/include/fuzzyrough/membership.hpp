#ifndef FUZZYROUGH_MEMBERSHIP_HPP
#define FUZZYROUGH_MEMBERSHIP_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyrough/errors.hpp"

namespace fuzzyrough {

/// A fuzzy set over the linguistic terms of one attribute. Terms with zero
/// degree are never stored; iteration order is insertion order.
class FuzzyValue {
 public:
  FuzzyValue() = default;

  /// Adds a term. Zero degrees are dropped; duplicates and degrees outside
  /// (0,1] raise SemanticError.
  void set(const std::string& region, double degree);

  /// Degree of `region`, 0.0 when absent.
  double degree(const std::string& region) const;

  bool has(const std::string& region) const { return degree(region) > 0.0; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const std::vector<std::pair<std::string, double>>& terms() const { return terms_; }

  /// Order-insensitive comparison.
  bool operator==(const FuzzyValue& other) const;

 private:
  std::vector<std::pair<std::string, double>> terms_;
};

/// One piecewise-linear membership curve for a linguistic region.
/// Between defining points the degree is linearly interpolated; outside the
/// point range the boundary degree is held constant (plateau extension), so a
/// boundary degree of 0 means zero membership beyond that side.
struct MembershipFunction {
  std::string region;
  std::vector<std::pair<double, double>> points;  // (x, degree), strictly increasing x

  /// Checks the structural invariants; returns a problem description or
  /// nullopt when valid.
  std::optional<std::string> check() const;
};

/// Degree of `x` under `mf`. Total over all reals.
double evaluate_membership(const MembershipFunction& mf, double x);

/// Transforms a quantitative value into a fuzzy set over the attribute's
/// regions. Throws AllZeroMembershipError when every region evaluates to 0;
/// `attribute` is only used for that diagnostic.
FuzzyValue fuzzify(double value, const std::vector<MembershipFunction>& attribute_mfs,
                   const std::string& attribute);

/// Inverse of fuzzify: finds a quantitative value whose fuzzification equals
/// `fv` exactly. The consistency set is computed segment-by-segment; when it
/// is a half-line (plateau) the finite endpoint is returned, when a bounded
/// interval its midpoint, and the leftmost component wins when several
/// disjoint components exist. Returns nullopt when no consistent value exists.
std::optional<double> defuzzify(const FuzzyValue& fv,
                                const std::vector<MembershipFunction>& attribute_mfs);

/// Expert-supplied membership functions, one ordered region list per
/// attribute. Attribute and region order follow the config file.
struct MembershipFunctionSet {
  std::vector<std::string> attributes;  // appearance order
  std::map<std::string, std::vector<MembershipFunction>> by_attribute;

  bool has_attribute(const std::string& name) const {
    return by_attribute.count(name) != 0;
  }
  const std::vector<MembershipFunction>& functions_for(const std::string& name) const;
};

/// Lint result for a membership-function set. Empty == valid.
struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks a set against a dataset schema: every listed attribute must have
/// functions, region labels must be unique per attribute, and each curve must
/// satisfy MembershipFunction::check().
ValidationReport validate_mf_set(const MembershipFunctionSet& mfs,
                                 const std::vector<std::string>& dataset_attributes);

/// Parses the line-based config format
///   attribute,region,x1:y1;x2:y2;...;xk:yk
/// `#` lines and blank lines are skipped; CRLF accepted.
MembershipFunctionSet parse_mf_config(std::istream& in);

/// Convenience: open and parse a config file. Throws Error when the file
/// cannot be opened.
MembershipFunctionSet load_mf_config(const std::string& path);

}  // namespace fuzzyrough

#endif
