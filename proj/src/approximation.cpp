#include "fuzzyrough/approximation.hpp"

#include <algorithm>
#include <map>

namespace fuzzyrough {

namespace {

bool certain_part_subset_of(const IncompleteEquivalenceClass& cls,
                            const ClassPartition& partition) {
  for (const auto& m : cls.members)
    if (m.tag == Tag::Certain && !partition.contains(m.object_id)) return false;
  return true;
}

bool certain_part_intersects(const IncompleteEquivalenceClass& cls,
                             const ClassPartition& partition) {
  for (const auto& m : cls.members)
    if (m.tag == Tag::Certain && partition.contains(m.object_id)) return true;
  return false;
}

const FuzzyObject& object_by_id(const std::vector<FuzzyObject>& objects, int id) {
  for (const auto& o : objects)
    if (o.id == id) return o;
  throw Error("unknown object id " + std::to_string(id));
}

}  // namespace

Approximation lower_approximation(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition,
                                  const std::vector<int>& subset) {
  Approximation approx{ApproxKind::Lower, partition.class_label, subset, {}};
  for (const auto& cls : classes) {
    if (!cls.has_certain()) continue;
    if (!certain_part_subset_of(cls, partition)) continue;
    IncompleteEquivalenceClass entry = cls;
    entry.members.erase(std::remove_if(entry.members.begin(), entry.members.end(),
                                       [&](const TaggedMember& m) {
                                         return m.tag == Tag::Uncertain &&
                                                !partition.contains(m.object_id);
                                       }),
                        entry.members.end());
    approx.entries.push_back(std::move(entry));
  }
  return approx;
}

Approximation upper_approximation(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition,
                                  const std::vector<int>& subset) {
  Approximation approx{ApproxKind::Upper, partition.class_label, subset, {}};
  for (const auto& cls : classes) {
    if (!cls.has_certain()) continue;
    if (!certain_part_intersects(cls, partition)) continue;
    if (certain_part_subset_of(cls, partition)) continue;
    approx.entries.push_back(cls);
  }
  return approx;
}

namespace {

std::optional<double> weighted_mean(const std::vector<FuzzyObject>& objects, int attribute,
                                    const IncompleteEquivalenceClass& cls,
                                    const ClassPartition* restrict_to) {
  double num = 0.0, den = 0.0;
  for (const auto& m : cls.members) {
    if (m.tag != Tag::Certain || m.degree <= 0.0) continue;
    if (restrict_to && !restrict_to->contains(m.object_id)) continue;
    const FuzzyObject& donor = object_by_id(objects, m.object_id);
    if (!donor.cells[attribute].value) continue;
    num += *donor.cells[attribute].value * m.degree;
    den += m.degree;
  }
  if (den <= 0.0) return std::nullopt;
  return num / den;
}

}  // namespace

std::optional<double> estimate_value_lower(const std::vector<FuzzyObject>& objects,
                                           int attribute,
                                           const IncompleteEquivalenceClass& cls) {
  return weighted_mean(objects, attribute, cls, nullptr);
}

std::optional<double> estimate_value_upper(const std::vector<FuzzyObject>& objects,
                                           int attribute,
                                           const IncompleteEquivalenceClass& cls,
                                           const ClassPartition& partition) {
  return weighted_mean(objects, attribute, cls, &partition);
}

double plausibility_of_class(const IncompleteEquivalenceClass& cls,
                             const ClassPartition& partition) {
  if (cls.members.empty()) throw EmptyClassError("plausibility of a class with no members");
  double num = 0.0, den = 0.0;
  for (const auto& m : cls.members) {
    if (m.tag != Tag::Certain) continue;
    den += m.degree;
    if (partition.contains(m.object_id)) num += m.degree;
  }
  if (den <= 0.0) return 0.0;
  return num / den;
}

std::size_t resolve_uncertain(const std::vector<IncompleteEquivalenceClass>& candidates,
                              const ClassPartition& partition) {
  if (candidates.empty()) throw EmptyClassError("resolve_uncertain needs at least one candidate");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double pi = plausibility_of_class(candidates[i], partition);
    double pb = plausibility_of_class(candidates[best], partition);
    if (pi > pb) {
      best = i;
    } else if (pi == pb) {
      std::size_t ci = candidates[i].certain_ids().size();
      std::size_t cb = candidates[best].certain_ids().size();
      if (ci > cb ||
          (ci == cb && candidates[i].combination < candidates[best].combination))
        best = i;
    }
  }
  return best;
}

namespace {

struct PendingCell {
  int object_id;
  int attribute;
  bool operator<(const PendingCell& o) const {
    return object_id != o.object_id ? object_id < o.object_id : attribute < o.attribute;
  }
};

std::vector<IncompleteEquivalenceClass> classes_for_subset(
    const std::vector<FuzzyObject>& objects, const std::vector<int>& subset,
    const RegionCatalog& catalog) {
  if (subset.size() == 1) return elementary_sets(objects, subset[0], catalog);
  std::vector<std::vector<IncompleteEquivalenceClass>> per;
  per.reserve(subset.size());
  for (int j : subset) per.push_back(elementary_sets(objects, j, catalog));
  return combine(per);
}

void apply_estimate(std::vector<FuzzyObject>& objects, int object_id, int attribute,
                    double value, const MembershipFunctionSet* mfs,
                    const RegionCatalog& catalog) {
  if (!mfs)
    throw SemanticError("estimation requires membership functions");
  for (auto& obj : objects) {
    if (obj.id != object_id) continue;
    const std::string& attr = catalog.attributes[attribute];
    AttributeCell cell;
    cell.value = value;
    try {
      cell.fuzzy = fuzzify(value, mfs->functions_for(attr), attr);
    } catch (const AllZeroMembershipError& e) {
      throw AllZeroMembershipError("estimated object " + std::to_string(object_id) + ": " +
                                       e.what(),
                                   e.attribute, e.value);
    }
    obj.cells[attribute] = std::move(cell);
    return;
  }
}

// One lower-pass estimation at subset size q; true when a value was accepted.
bool lower_pass_step(std::vector<FuzzyObject>& objects,
                     const std::vector<ClassPartition>& partitions,
                     const MembershipFunctionSet* mfs, const RegionCatalog& catalog, int q,
                     std::vector<ImputationRecord>& records) {
  int m = static_cast<int>(catalog.attributes.size());
  auto subsets = enumerate_subsets(m, q);

  std::vector<std::vector<Approximation>> lowers(subsets.size());
  std::map<PendingCell, int> appearances;
  for (std::size_t si = 0; si < subsets.size(); ++si) {
    auto classes = classes_for_subset(objects, subsets[si], catalog);
    for (const auto& part : partitions) {
      Approximation lower = lower_approximation(classes, part, subsets[si]);
      for (const auto& entry : lower.entries)
        for (const auto& member : entry.members) {
          if (member.tag != Tag::Uncertain) continue;
          const FuzzyObject& obj = object_by_id(objects, member.object_id);
          for (int j : subsets[si])
            if (obj.cells[j].missing()) ++appearances[{member.object_id, j}];
        }
      lowers[si].push_back(std::move(lower));
    }
  }

  for (std::size_t si = 0; si < subsets.size(); ++si) {
    for (const auto& lower : lowers[si]) {
      for (const auto& entry : lower.entries) {
        for (const auto& member : entry.members) {
          if (member.tag != Tag::Uncertain) continue;
          const FuzzyObject& obj = object_by_id(objects, member.object_id);
          for (int j : subsets[si]) {
            if (!obj.cells[j].missing()) continue;
            if (appearances[{member.object_id, j}] != 1) continue;
            auto est = estimate_value_lower(objects, j, entry);
            if (!est) continue;
            apply_estimate(objects, member.object_id, j, *est, mfs, catalog);
            records.push_back(
                {member.object_id, j, *est, entry.combination, Phase::LowerPass});
            return true;
          }
        }
      }
    }
  }
  return false;
}

// One upper-pass estimation at subset size h; true when a value was accepted.
bool upper_pass_step(std::vector<FuzzyObject>& objects,
                     const std::vector<ClassPartition>& partitions,
                     const MembershipFunctionSet* mfs, const RegionCatalog& catalog, int h,
                     std::vector<ImputationRecord>& records) {
  int m = static_cast<int>(catalog.attributes.size());
  for (const auto& subset : enumerate_subsets(m, h)) {
    auto classes = classes_for_subset(objects, subset, catalog);
    for (const auto& part : partitions) {
      Approximation upper = upper_approximation(classes, part, subset);
      if (upper.entries.empty()) continue;

      // Only the partition's own uncertain objects are estimated here: the
      // donors of the upper-pass quotient come from this partition, so a
      // foreign object would be pulled toward the wrong class.
      std::vector<PendingCell> pending;
      for (const auto& entry : upper.entries)
        for (const auto& member : entry.members) {
          if (member.tag != Tag::Uncertain) continue;
          if (!part.contains(member.object_id)) continue;
          const FuzzyObject& obj = object_by_id(objects, member.object_id);
          for (int j : subset)
            if (obj.cells[j].missing()) pending.push_back({member.object_id, j});
        }
      std::sort(pending.begin(), pending.end());
      pending.erase(std::unique(pending.begin(), pending.end(),
                                [](const PendingCell& a, const PendingCell& b) {
                                  return a.object_id == b.object_id &&
                                         a.attribute == b.attribute;
                                }),
                    pending.end());

      for (const auto& cell : pending) {
        std::vector<IncompleteEquivalenceClass> candidates;
        for (const auto& entry : upper.entries) {
          const TaggedMember* m2 = entry.find(cell.object_id);
          if (m2 && m2->tag == Tag::Uncertain) candidates.push_back(entry);
        }
        // Most plausible class first (single-candidate case falls through).
        std::vector<IncompleteEquivalenceClass> remaining = candidates;
        std::vector<IncompleteEquivalenceClass> ranked;
        while (!remaining.empty()) {
          std::size_t pick = resolve_uncertain(remaining, part);
          ranked.push_back(remaining[pick]);
          remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        for (const auto& chosen : ranked) {
          auto est = estimate_value_upper(objects, cell.attribute, chosen, part);
          if (!est) continue;
          apply_estimate(objects, cell.object_id, cell.attribute, *est, mfs, catalog);
          records.push_back(
              {cell.object_id, cell.attribute, *est, chosen.combination, Phase::UpperPass});
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

PipelineResult run_imputation_pipeline(std::vector<FuzzyObject> objects,
                                       const std::vector<ClassPartition>& partitions,
                                       const MembershipFunctionSet* mfs,
                                       const RegionCatalog& catalog) {
  PipelineResult result;
  int m = static_cast<int>(catalog.attributes.size());

  for (int q = 1; q <= m; ++q)
    while (lower_pass_step(objects, partitions, mfs, catalog, q, result.records)) {
    }
  for (int h = 1; h <= m; ++h)
    while (upper_pass_step(objects, partitions, mfs, catalog, h, result.records)) {
    }

  for (const auto& obj : objects)
    for (int j = 0; j < m; ++j)
      if (obj.cells[j].missing()) result.unresolved.push_back({obj.id, j});

  result.objects = std::move(objects);
  return result;
}

}  // namespace fuzzyrough
