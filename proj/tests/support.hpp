// Shared test helpers: fixture loading, random dataset generation, and an
// independent direct-evaluation oracle for the set-level definitions.
#ifndef FR_TESTS_SUPPORT_HPP
#define FR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "fuzzyrough/rules.hpp"

namespace frtest {

inline std::string fixture(const std::string& name) {
  return std::string(FR_FIXTURE_DIR) + "/" + name;
}

struct Example {
  fuzzyrough::MembershipFunctionSet mfs;
  fuzzyrough::RegionCatalog catalog;
  fuzzyrough::FuzzyDataset data;
  std::vector<fuzzyrough::ClassPartition> partitions;
};

/// Pre-fuzzified blood-pressure fixture with quantitative values recovered.
inline Example load_example_prefuzzified() {
  Example ex;
  ex.mfs = fuzzyrough::load_mf_config(fixture("blood_pressure.mf"));
  ex.data = fuzzyrough::load_fuzzy_dataset_file(fixture("blood_pressure_fuzzy.csv"));
  fuzzyrough::recover_values(ex.data, ex.mfs);
  ex.catalog = fuzzyrough::catalog_from_mfs(ex.mfs, ex.data.attributes);
  ex.partitions = fuzzyrough::partition_by_class(ex.data.objects);
  return ex;
}

/// Raw blood-pressure fixture, fuzzified through the reconstructed curves.
inline Example load_example_raw() {
  Example ex;
  ex.mfs = fuzzyrough::load_mf_config(fixture("blood_pressure.mf"));
  fuzzyrough::Dataset raw = fuzzyrough::load_dataset_file(fixture("blood_pressure.csv"));
  ex.data = fuzzyrough::fuzzify_dataset(raw, ex.mfs);
  ex.catalog = fuzzyrough::catalog_from_mfs(ex.mfs, ex.data.attributes);
  ex.partitions = fuzzyrough::partition_by_class(ex.data.objects);
  return ex;
}

struct GeneratedData {
  fuzzyrough::MembershipFunctionSet mfs;
  fuzzyrough::RegionCatalog catalog;
  fuzzyrough::FuzzyDataset data;
  std::vector<fuzzyrough::ClassPartition> partitions;
  int missing_cells = 0;
};

/// Random dataset: 1-3 attributes with 2-3 regions each (overlapping
/// triangular partitions with plateau ends, so every value fuzzifies), 2-6
/// objects, 1-3 classes. With `with_missing`, roughly a quarter of the cells
/// are blanked (at least one).
inline GeneratedData random_dataset(std::mt19937& rng, bool with_missing) {
  using namespace fuzzyrough;
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto uniform_real = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  GeneratedData out;
  int m = uniform_int(1, 3);
  int n = uniform_int(2, 6);
  int c = uniform_int(1, 3);

  Dataset raw;
  raw.class_name = "CL";
  std::vector<std::vector<double>> ranges;  // per attribute: lo, hi for values
  for (int j = 0; j < m; ++j) {
    std::string attr = "A" + std::to_string(j);
    raw.attributes.push_back(attr);
    int k = uniform_int(2, 3);
    std::vector<double> breaks;
    double x = uniform_real(0.0, 50.0);
    for (int r = 0; r < k; ++r) {
      breaks.push_back(x);
      x += uniform_real(2.0, 20.0);
    }
    out.mfs.attributes.push_back(attr);
    auto& fns = out.mfs.by_attribute[attr];
    for (int r = 0; r < k; ++r) {
      MembershipFunction mf;
      mf.region = "R" + std::to_string(r);
      if (r == 0)
        mf.points = {{breaks[0], 1.0}, {breaks[1], 0.0}};
      else if (r == k - 1)
        mf.points = {{breaks[k - 2], 0.0}, {breaks[k - 1], 1.0}};
      else
        mf.points = {{breaks[r - 1], 0.0}, {breaks[r], 1.0}, {breaks[r + 1], 0.0}};
      fns.push_back(std::move(mf));
    }
    ranges.push_back({breaks.front() - 5.0, breaks.back() + 5.0});
  }

  for (int i = 0; i < n; ++i) {
    RawObject obj;
    obj.id = i + 1;
    for (int j = 0; j < m; ++j) obj.values.push_back(uniform_real(ranges[j][0], ranges[j][1]));
    obj.class_label = "C" + std::to_string(uniform_int(0, c - 1));
    raw.objects.push_back(std::move(obj));
  }

  out.data = fuzzify_dataset(raw, out.mfs);
  out.catalog = catalog_from_mfs(out.mfs, raw.attributes);

  if (with_missing) {
    for (auto& obj : out.data.objects)
      for (auto& cell : obj.cells)
        if (uniform_int(0, 3) == 0) {
          cell = AttributeCell{};
          ++out.missing_cells;
        }
    if (out.missing_cells == 0) {
      out.data.objects[0].cells[0] = AttributeCell{};
      out.missing_cells = 1;
    }
  }

  out.partitions = partition_by_class(out.data.objects);
  return out;
}

/// Direct evaluation of one region combination straight from the fuzzy
/// values, bypassing the equivalence-class machinery. Complete data only.
struct DirectClass {
  fuzzyrough::RegionCombination combo;
  std::vector<std::pair<int, double>> members;  // ascending id
  double mu = 0.0;
};

inline std::vector<DirectClass> direct_classes(
    const std::vector<fuzzyrough::FuzzyObject>& objects, const std::vector<int>& subset,
    const fuzzyrough::RegionCatalog& catalog) {
  std::vector<DirectClass> out;
  std::vector<int> counter(subset.size(), 0);
  while (true) {
    DirectClass dc;
    for (std::size_t k = 0; k < subset.size(); ++k)
      dc.combo.items.emplace_back(subset[k], counter[k]);
    for (const auto& obj : objects) {
      double degree = 0.0;
      bool member = true;
      for (std::size_t k = 0; k < subset.size(); ++k) {
        double d = obj.cells[subset[k]].fuzzy->degree(
            catalog.region_label(subset[k], counter[k]));
        if (d <= 0.0) {
          member = false;
          break;
        }
        degree = k == 0 ? d : std::min(degree, d);
      }
      if (member) dc.members.emplace_back(obj.id, degree);
    }
    if (!dc.members.empty()) {
      dc.mu = dc.members.front().second;
      for (const auto& [id, d] : dc.members) dc.mu = std::min(dc.mu, d);
      out.push_back(std::move(dc));
    }
    std::size_t k = subset.size();
    bool done = false;
    while (k > 0) {
      --k;
      if (++counter[k] < static_cast<int>(catalog.regions[subset[k]].size())) break;
      counter[k] = 0;
      if (k == 0) done = true;
    }
    if (done) break;
  }
  return out;
}

inline double direct_misclassification(const DirectClass& dc,
                                       const fuzzyrough::ClassPartition& partition) {
  double inside = 0.0, total = 0.0;
  for (const auto& [id, degree] : dc.members) {
    total += degree;
    if (partition.contains(id)) inside += degree;
  }
  return 1.0 - inside / total;
}

/// All size-q index subsets, independent of the library's enumeration.
inline std::vector<std::vector<int>> all_subsets(int m) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> subset;
    for (int j = 0; j < m; ++j)
      if (mask & (1 << j)) subset.push_back(j);
    out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

/// Random rule set for pruning properties; measures come from a small grid so
/// ties actually occur.
inline std::vector<fuzzyrough::FuzzyRule> random_rules(std::mt19937& rng) {
  using namespace fuzzyrough;
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const double grid[] = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<FuzzyRule> rules;
  int count = uniform_int(3, 10);
  for (int i = 0; i < count; ++i) {
    FuzzyRule rule;
    rule.kind = uniform_int(0, 1) == 0 ? RuleKind::Certain : RuleKind::Possible;
    int m = 3;
    for (int j = 0; j < m; ++j)
      if (uniform_int(0, 1) == 0)
        rule.conditions.emplace_back("A" + std::to_string(j),
                                     "R" + std::to_string(uniform_int(0, 1)));
    if (rule.conditions.empty())
      rule.conditions.emplace_back("A0", "R" + std::to_string(uniform_int(0, 1)));
    rule.consequent = "C" + std::to_string(uniform_int(0, 1));
    rule.plausibility = grid[uniform_int(0, 4)];
    rule.effectiveness = grid[uniform_int(0, 4)];
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace frtest

#endif
