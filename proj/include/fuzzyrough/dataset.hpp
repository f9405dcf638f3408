#ifndef FUZZYROUGH_DATASET_HPP
#define FUZZYROUGH_DATASET_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyrough/membership.hpp"

namespace fuzzyrough {

/// One training object as read from a raw quantitative CSV. `values` follows
/// the dataset attribute order; nullopt marks a missing (`*`) cell.
struct RawObject {
  int id = 0;  // 1-based row order
  std::vector<std::optional<double>> values;
  std::string class_label;

  bool operator==(const RawObject&) const = default;
};

/// A raw dataset: attribute names (class column excluded) plus objects.
struct Dataset {
  std::vector<std::string> attributes;
  std::string class_name;
  std::vector<RawObject> objects;
};

/// One attribute slot of a fuzzified object. A missing cell has neither a
/// quantitative value nor a fuzzy set; a pre-fuzzified cell may carry a fuzzy
/// set without a quantitative value until recover_values() runs.
struct AttributeCell {
  std::optional<double> value;
  std::optional<FuzzyValue> fuzzy;
  bool missing() const { return !fuzzy.has_value(); }
  bool operator==(const AttributeCell&) const = default;
};

/// An object after fuzzification (or pre-fuzzified ingestion).
struct FuzzyObject {
  int id = 0;
  std::vector<AttributeCell> cells;
  std::string class_label;

  bool operator==(const FuzzyObject&) const = default;
};

/// A fuzzified dataset; attribute order matches the source.
struct FuzzyDataset {
  std::vector<std::string> attributes;
  std::string class_name;
  std::vector<FuzzyObject> objects;
};

/// The set of object ids sharing one class label.
struct ClassPartition {
  std::string class_label;
  std::vector<int> member_ids;  // ascending
  bool contains(int id) const;
  bool operator==(const ClassPartition&) const = default;
};

/// Reads the raw CSV format (header row, numeric cells, `*` or empty for
/// missing). When `class_column` is given that header names the class column,
/// otherwise the last column is the class.
Dataset load_dataset(std::istream& in, const std::optional<std::string>& class_column = {});
Dataset load_dataset_file(const std::string& path,
                          const std::optional<std::string>& class_column = {});

/// Reads the pre-fuzzified CSV format: cells are `region:degree` pairs joined
/// by `+` (e.g. `N:0.1+H:0.75`), or `*`/empty for missing.
FuzzyDataset load_fuzzy_dataset(std::istream& in,
                                const std::optional<std::string>& class_column = {});
FuzzyDataset load_fuzzy_dataset_file(const std::string& path,
                                     const std::optional<std::string>& class_column = {});

/// Groups object ids by class label, in order of first appearance. Partitions
/// are disjoint and cover all objects.
std::vector<ClassPartition> partition_by_class(const std::vector<RawObject>& objects);
std::vector<ClassPartition> partition_by_class(const std::vector<FuzzyObject>& objects);

/// Fuzzifies every present value of every object; missing cells stay missing.
/// AllZeroMembershipError is rethrown with the object id and attribute.
FuzzyDataset fuzzify_dataset(const Dataset& data, const MembershipFunctionSet& mfs);

/// Fills in quantitative values for pre-fuzzified cells by inverting the
/// membership functions. Throws SemanticError when a cell's degrees are
/// inconsistent with the curves.
void recover_values(FuzzyDataset& data, const MembershipFunctionSet& mfs);

/// Writes a dataset in raw CSV form; values at full (round-trip) precision,
/// cells without a value as `*`.
void write_raw_csv(std::ostream& out, const FuzzyDataset& data);

/// Shortest decimal string that round-trips the double.
std::string format_full(double v);

}  // namespace fuzzyrough

#endif
