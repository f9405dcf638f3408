#include "fuzzyrough/partitions.hpp"

#include <algorithm>
#include <cstdio>

namespace fuzzyrough {

int RegionCatalog::attribute_index(const std::string& name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i] == name) return static_cast<int>(i);
  return -1;
}

int RegionCatalog::region_index(int attribute, const std::string& region) const {
  const auto& rs = regions[attribute];
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i] == region) return static_cast<int>(i);
  return -1;
}

RegionCatalog catalog_from_mfs(const MembershipFunctionSet& mfs,
                               const std::vector<std::string>& dataset_attributes) {
  RegionCatalog catalog;
  catalog.attributes = dataset_attributes;
  for (const auto& attr : dataset_attributes) {
    std::vector<std::string> regions;
    for (const auto& mf : mfs.functions_for(attr)) regions.push_back(mf.region);
    catalog.regions.push_back(std::move(regions));
  }
  return catalog;
}

RegionCatalog catalog_from_objects(const FuzzyDataset& data) {
  RegionCatalog catalog;
  catalog.attributes = data.attributes;
  catalog.regions.resize(data.attributes.size());
  for (const auto& obj : data.objects)
    for (std::size_t j = 0; j < obj.cells.size(); ++j) {
      if (obj.cells[j].missing()) continue;
      for (const auto& [region, d] : obj.cells[j].fuzzy->terms()) {
        auto& rs = catalog.regions[j];
        if (std::find(rs.begin(), rs.end(), region) == rs.end()) rs.push_back(region);
      }
    }
  return catalog;
}

std::string RegionCombination::label(const RegionCatalog& catalog, const std::string& sep) const {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += catalog.attributes[items[i].first];
    out += '=';
    out += catalog.region_label(items[i].first, items[i].second);
  }
  return out;
}

const TaggedMember* IncompleteEquivalenceClass::find(int object_id) const {
  for (const auto& m : members)
    if (m.object_id == object_id) return &m;
  return nullptr;
}

std::vector<int> IncompleteEquivalenceClass::certain_ids() const {
  std::vector<int> out;
  for (const auto& m : members)
    if (m.tag == Tag::Certain) out.push_back(m.object_id);
  return out;
}

double IncompleteEquivalenceClass::certain_degree_sum() const {
  double sum = 0.0;
  for (const auto& m : members)
    if (m.tag == Tag::Certain) sum += m.degree;
  return sum;
}

void recompute_mu(IncompleteEquivalenceClass& cls) {
  std::optional<double> mu;
  for (const auto& m : cls.members)
    if (m.tag == Tag::Certain && (!mu || m.degree < *mu)) mu = m.degree;
  cls.mu = mu;
}

std::vector<IncompleteEquivalenceClass> elementary_sets(const std::vector<FuzzyObject>& objects,
                                                        int attribute,
                                                        const RegionCatalog& catalog) {
  return build_classes(objects, {attribute}, catalog);
}

std::vector<IncompleteEquivalenceClass> build_classes(const std::vector<FuzzyObject>& objects,
                                                      const std::vector<int>& subset,
                                                      const RegionCatalog& catalog) {
  std::vector<IncompleteEquivalenceClass> out;
  // Odometer over the region indices of each subset attribute.
  std::vector<int> counter(subset.size(), 0);
  for (int j : subset)
    if (catalog.regions[j].empty()) return out;

  while (true) {
    IncompleteEquivalenceClass cls;
    for (std::size_t k = 0; k < subset.size(); ++k)
      cls.combination.items.emplace_back(subset[k], counter[k]);

    for (const auto& obj : objects) {
      bool member = true;
      bool certain = true;
      double degree = 1.0;
      bool any_known = false;
      for (std::size_t k = 0; k < subset.size() && member; ++k) {
        const AttributeCell& cell = obj.cells[subset[k]];
        if (cell.missing()) {
          certain = false;
          continue;
        }
        double d = cell.fuzzy->degree(catalog.region_label(subset[k], counter[k]));
        if (d <= 0.0)
          member = false;
        else {
          degree = any_known ? std::min(degree, d) : d;
          any_known = true;
        }
      }
      if (member)
        cls.members.push_back({obj.id, certain ? Tag::Certain : Tag::Uncertain,
                               any_known ? degree : 1.0});
    }

    if (!cls.members.empty()) {
      recompute_mu(cls);
      out.push_back(std::move(cls));
    }

    // Advance the odometer.
    std::size_t k = subset.size();
    while (k > 0) {
      --k;
      if (++counter[k] < static_cast<int>(catalog.regions[subset[k]].size())) break;
      counter[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::vector<IncompleteEquivalenceClass> combine(
    const std::vector<std::vector<IncompleteEquivalenceClass>>& per_attribute) {
  if (per_attribute.empty()) return {};
  if (per_attribute.size() == 1) return per_attribute[0];

  std::vector<IncompleteEquivalenceClass> out;
  std::vector<std::size_t> counter(per_attribute.size(), 0);
  for (const auto& lists : per_attribute)
    if (lists.empty()) return out;

  while (true) {
    IncompleteEquivalenceClass cls;
    for (std::size_t k = 0; k < per_attribute.size(); ++k)
      for (const auto& item : per_attribute[k][counter[k]].combination.items)
        cls.combination.items.push_back(item);
    std::sort(cls.combination.items.begin(), cls.combination.items.end());

    // Intersect member lists: present in every component, certain iff certain
    // in all, degree = min over components.
    const IncompleteEquivalenceClass& first = per_attribute[0][counter[0]];
    for (const auto& m0 : first.members) {
      bool member = true;
      bool certain = m0.tag == Tag::Certain;
      double degree = m0.tag == Tag::Certain ? m0.degree : 1.0;
      for (std::size_t k = 1; k < per_attribute.size() && member; ++k) {
        const TaggedMember* mk = per_attribute[k][counter[k]].find(m0.object_id);
        if (!mk) {
          member = false;
        } else {
          if (mk->tag == Tag::Uncertain)
            certain = false;
          else
            degree = std::min(degree, mk->degree);
        }
      }
      if (member)
        cls.members.push_back({m0.object_id, certain ? Tag::Certain : Tag::Uncertain, degree});
    }

    if (!cls.members.empty()) {
      recompute_mu(cls);
      out.push_back(std::move(cls));
    }

    std::size_t k = per_attribute.size();
    while (k > 0) {
      --k;
      if (++counter[k] < per_attribute[k].size()) break;
      counter[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::vector<std::vector<int>> enumerate_subsets(int attribute_count, int q) {
  std::vector<std::vector<int>> out;
  if (q < 1 || q > attribute_count) return out;
  std::vector<int> current(q);
  for (int i = 0; i < q; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    int k = q - 1;
    while (k >= 0 && current[k] == attribute_count - q + k) --k;
    if (k < 0) break;
    ++current[k];
    for (int i = k + 1; i < q; ++i) current[i] = current[i - 1] + 1;
  }
  return out;
}

std::string dump_class(const IncompleteEquivalenceClass& cls, const RegionCatalog& catalog) {
  std::string out = "B={";
  for (std::size_t i = 0; i < cls.combination.items.size(); ++i) {
    if (i) out += ',';
    out += catalog.attributes[cls.combination.items[i].first];
  }
  out += "} R={";
  for (std::size_t i = 0; i < cls.combination.items.size(); ++i) {
    if (i) out += ',';
    out += catalog.region_label(cls.combination.items[i].first, cls.combination.items[i].second);
  }
  out += "} mu=";
  char buf[32];
  if (cls.mu) {
    std::snprintf(buf, sizeof(buf), "%.6f", *cls.mu);
    out += buf;
  } else {
    out += '-';
  }
  out += " members=[";
  for (std::size_t i = 0; i < cls.members.size(); ++i) {
    const auto& m = cls.members[i];
    if (i) out += ',';
    std::snprintf(buf, sizeof(buf), "%d:%c:%.6f", m.object_id,
                  m.tag == Tag::Certain ? 'c' : 'u', m.degree);
    out += buf;
  }
  out += ']';
  return out;
}

}  // namespace fuzzyrough
