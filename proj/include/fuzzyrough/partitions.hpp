#ifndef FUZZYROUGH_PARTITIONS_HPP
#define FUZZYROUGH_PARTITIONS_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyrough/dataset.hpp"

namespace fuzzyrough {

/// Attribute and region orderings used for canonical enumeration. Attribute
/// order is the dataset column order; region order per attribute comes from
/// the membership config (or first appearance in pre-fuzzified data).
struct RegionCatalog {
  std::vector<std::string> attributes;
  std::vector<std::vector<std::string>> regions;  // per attribute

  int attribute_index(const std::string& name) const;
  int region_index(int attribute, const std::string& region) const;
  const std::string& region_label(int attribute, int region) const {
    return regions[attribute][region];
  }
};

RegionCatalog catalog_from_mfs(const MembershipFunctionSet& mfs,
                               const std::vector<std::string>& dataset_attributes);
RegionCatalog catalog_from_objects(const FuzzyDataset& data);

/// An ordered assignment of one region to each attribute of a subset.
/// Items are (attribute index, region index), ascending by attribute.
struct RegionCombination {
  std::vector<std::pair<int, int>> items;

  auto operator<=>(const RegionCombination&) const = default;

  std::string label(const RegionCatalog& catalog, const std::string& sep = "&") const;
};

enum class Tag { Certain, Uncertain };

/// A member of an incomplete equivalence class. `degree` is the member's
/// membership in the class's region combination: for certain members the
/// minimum over the component degrees, for uncertain members the minimum over
/// the known components (1.0 when none is known).
struct TaggedMember {
  int object_id = 0;
  Tag tag = Tag::Certain;
  double degree = 1.0;

  bool operator==(const TaggedMember&) const = default;
};

/// The objects indiscernible on one region combination, with certain and
/// uncertain members. `mu` is the minimum over certain members' degrees and
/// is absent while the class has no certain member.
struct IncompleteEquivalenceClass {
  RegionCombination combination;
  std::vector<TaggedMember> members;  // ascending object id
  std::optional<double> mu;

  bool has_certain() const { return mu.has_value(); }
  const TaggedMember* find(int object_id) const;
  std::vector<int> certain_ids() const;
  double certain_degree_sum() const;

  bool operator==(const IncompleteEquivalenceClass&) const = default;
};

/// Recomputes `mu` as the minimum over certain members' degrees.
void recompute_mu(IncompleteEquivalenceClass& cls);

/// Fuzzy incomplete elementary sets of a single attribute: certain members
/// where the degree is positive, uncertain members in every region when the
/// attribute is missing. Classes with no members are dropped; region order
/// follows the catalog.
std::vector<IncompleteEquivalenceClass> elementary_sets(const std::vector<FuzzyObject>& objects,
                                                        int attribute,
                                                        const RegionCatalog& catalog);

/// Combines per-attribute elementary sets into classes over the attribute
/// subset: a member must be present in one region class of every component;
/// it is certain iff certain in all of them; degrees combine by minimum.
std::vector<IncompleteEquivalenceClass> combine(
    const std::vector<std::vector<IncompleteEquivalenceClass>>& per_attribute);

/// All size-q subsets of {0,...,attribute_count-1} in lexicographic order.
std::vector<std::vector<int>> enumerate_subsets(int attribute_count, int q);

/// Builds the classes for one attribute subset directly from the objects.
/// Equivalent to combine() over elementary_sets(); kept as the one-call entry
/// point for single subsets.
std::vector<IncompleteEquivalenceClass> build_classes(const std::vector<FuzzyObject>& objects,
                                                      const std::vector<int>& subset,
                                                      const RegionCatalog& catalog);

/// Debug form: `B={SP,DP} R={N,H} mu=0.200000 members=[3:c:0.400000,...]`.
std::string dump_class(const IncompleteEquivalenceClass& cls, const RegionCatalog& catalog);

}  // namespace fuzzyrough

#endif
