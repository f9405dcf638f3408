#include "fuzzyrough/rules.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fuzzyrough {

double misclassification(const IncompleteEquivalenceClass& cls,
                         const ClassPartition& partition) {
  if (cls.members.empty()) throw EmptyClassError("misclassification of a class with no members");
  double inside = 0.0, total = 0.0;
  for (const auto& m : cls.members) {
    if (m.tag != Tag::Certain) continue;
    total += m.degree;
    if (partition.contains(m.object_id)) inside += m.degree;
  }
  if (total <= 0.0) return 1.0;
  return 1.0 - inside / total;
}

namespace {

std::vector<BetaEntry> beta_filter(const std::vector<IncompleteEquivalenceClass>& classes,
                                   const ClassPartition& partition, Beta beta, bool lower) {
  std::vector<BetaEntry> out;
  for (const auto& cls : classes) {
    if (!cls.has_certain()) continue;
    double c = misclassification(cls, partition);
    bool keep = lower ? c <= beta.value : (c > beta.value && c <= 1.0 - beta.value);
    if (keep) out.push_back({cls, *cls.mu, c});
  }
  return out;
}

}  // namespace

std::vector<BetaEntry> beta_lower(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition, Beta beta) {
  return beta_filter(classes, partition, beta, true);
}

std::vector<BetaEntry> beta_upper(const std::vector<IncompleteEquivalenceClass>& classes,
                                  const ClassPartition& partition, Beta beta) {
  return beta_filter(classes, partition, beta, false);
}

namespace {

FuzzyRule rule_from_entry(const BetaEntry& entry, RuleKind kind, const std::string& class_label,
                          const RegionCatalog& catalog) {
  FuzzyRule rule;
  rule.kind = kind;
  for (const auto& [attr, region] : entry.cls.combination.items)
    rule.conditions.emplace_back(catalog.attributes[attr],
                                 catalog.region_label(attr, region));
  rule.consequent = class_label;
  rule.plausibility = 1.0 - entry.misclassification;
  rule.effectiveness = entry.mu;
  return rule;
}

}  // namespace

std::vector<FuzzyRule> derive_rules(const std::vector<BetaEntry>& lower,
                                    const std::vector<BetaEntry>& upper,
                                    const std::string& class_label,
                                    const RegionCatalog& catalog) {
  std::vector<FuzzyRule> rules;
  for (const auto& entry : lower)
    rules.push_back(rule_from_entry(entry, RuleKind::Certain, class_label, catalog));
  for (const auto& entry : upper)
    rules.push_back(rule_from_entry(entry, RuleKind::Possible, class_label, catalog));
  return rules;
}

bool is_more_specific(const FuzzyRule& r1, const FuzzyRule& r2) {
  if (r1.consequent != r2.consequent) return false;
  if (r1.conditions.size() <= r2.conditions.size()) return false;
  for (const auto& cond : r2.conditions)
    if (std::find(r1.conditions.begin(), r1.conditions.end(), cond) == r1.conditions.end())
      return false;
  return true;
}

std::vector<FuzzyRule> prune(const std::vector<FuzzyRule>& rules) {
  std::vector<FuzzyRule> out;
  for (const auto& r : rules) {
    bool removed = false;
    for (const auto& s : rules) {
      if (&s == &r || !is_more_specific(r, s)) continue;
      if (r.kind == RuleKind::Certain) {
        if (s.kind == RuleKind::Certain && s.effectiveness >= r.effectiveness) removed = true;
      } else {
        if (s.kind == RuleKind::Possible && s.plausibility >= r.plausibility &&
            s.effectiveness >= r.effectiveness)
          removed = true;
      }
      if (removed) break;
    }
    if (!removed) out.push_back(r);
  }
  return out;
}

namespace {

double match_degree(const FuzzyObject& object, const std::vector<std::string>& attributes,
                    const FuzzyRule& rule) {
  double degree = 1.0;
  for (const auto& [attr, region] : rule.conditions) {
    auto it = std::find(attributes.begin(), attributes.end(), attr);
    if (it == attributes.end()) return 0.0;
    const AttributeCell& cell = object.cells[static_cast<std::size_t>(it - attributes.begin())];
    if (cell.missing()) return 0.0;
    double d = cell.fuzzy->degree(region);
    if (d <= 0.0) return 0.0;
    degree = std::min(degree, d);
  }
  return degree;
}

std::optional<Classification> best_of_kind(const FuzzyObject& object,
                                           const std::vector<std::string>& attributes,
                                           const std::vector<FuzzyRule>& rules, RuleKind kind) {
  std::optional<Classification> best;
  double best_effectiveness = 0.0;
  for (const auto& rule : rules) {
    if (rule.kind != kind) continue;
    double m = match_degree(object, attributes, rule);
    if (m <= 0.0) continue;
    double score = m * rule.plausibility;
    if (!best || score > best->score ||
        (score == best->score && rule.effectiveness > best_effectiveness)) {
      best = Classification{rule.consequent, score};
      best_effectiveness = rule.effectiveness;
    }
  }
  return best;
}

}  // namespace

std::optional<Classification> classify(const FuzzyObject& object,
                                       const std::vector<std::string>& object_attributes,
                                       const std::vector<FuzzyRule>& rules) {
  if (auto certain = best_of_kind(object, object_attributes, rules, RuleKind::Certain))
    return certain;
  return best_of_kind(object, object_attributes, rules, RuleKind::Possible);
}

MiningResult mine(const std::vector<FuzzyObject>& objects,
                  const std::vector<ClassPartition>& partitions, const RegionCatalog& catalog,
                  const MembershipFunctionSet* mfs, Beta beta) {
  MiningResult result;

  PipelineResult pipeline = run_imputation_pipeline(objects, partitions, mfs, catalog);
  result.objects = std::move(pipeline.objects);
  result.imputations = std::move(pipeline.records);
  result.unresolved = std::move(pipeline.unresolved);

  int m = static_cast<int>(catalog.attributes.size());
  for (int q = 1; q <= m; ++q)
    for (const auto& subset : enumerate_subsets(m, q))
      result.classes_by_subset.emplace_back(subset,
                                            build_classes(result.objects, subset, catalog));

  std::vector<FuzzyRule> certain, possible;
  for (const auto& part : partitions) {
    for (const auto& [subset, classes] : result.classes_by_subset) {
      auto lower = beta_lower(classes, part, beta);
      auto upper = beta_upper(classes, part, beta);
      for (const auto& rule : derive_rules(lower, upper, part.class_label, catalog))
        (rule.kind == RuleKind::Certain ? certain : possible).push_back(rule);
    }
  }
  result.derived = certain;
  result.derived.insert(result.derived.end(), possible.begin(), possible.end());
  result.rules = prune(result.derived);
  return result;
}

namespace {

std::string format_fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string rule_to_text(const FuzzyRule& rule, const std::string& class_name) {
  std::string out = "IF ";
  for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
    if (i) out += " AND ";
    out += rule.conditions[i].first + " = " + rule.conditions[i].second;
  }
  out += " THEN " + class_name + " = " + rule.consequent;
  out += rule.kind == RuleKind::Certain ? " [certain]" : " [possible]";
  out += " plausibility=" + format_fixed(rule.plausibility, 2);
  out += " effectiveness=" + format_fixed(rule.effectiveness, 2);
  return out;
}

std::string rule_to_csv(const FuzzyRule& rule) {
  std::string out = rule.kind == RuleKind::Certain ? "certain," : "possible,";
  for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
    if (i) out += '&';
    out += rule.conditions[i].first + "=" + rule.conditions[i].second;
  }
  out += ',' + rule.consequent;
  out += ',' + format_fixed(rule.plausibility, 6);
  out += ',' + format_fixed(rule.effectiveness, 6);
  return out;
}

void write_rules_text(std::ostream& out, const std::vector<FuzzyRule>& rules,
                      const std::string& class_name) {
  for (const auto& rule : rules)
    if (rule.kind == RuleKind::Certain) out << rule_to_text(rule, class_name) << '\n';
  for (const auto& rule : rules)
    if (rule.kind == RuleKind::Possible) out << rule_to_text(rule, class_name) << '\n';
}

void write_rules_csv(std::ostream& out, const std::vector<FuzzyRule>& rules) {
  out << "kind,conditions,consequent,plausibility,effectiveness\n";
  for (const auto& rule : rules)
    if (rule.kind == RuleKind::Certain) out << rule_to_csv(rule) << '\n';
  for (const auto& rule : rules)
    if (rule.kind == RuleKind::Possible) out << rule_to_csv(rule) << '\n';
}

namespace {

double parse_measure(const std::string& text, std::size_t row) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("malformed measure '" + text + "' in rules file", row, 1);
  return out;
}

}  // namespace

std::vector<FuzzyRule> parse_rules_csv(std::istream& in) {
  std::vector<FuzzyRule> rules;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("kind,", 0) == 0) continue;
    }
    std::stringstream ss(line);
    std::string kind, conditions, consequent, plaus, eff;
    if (!std::getline(ss, kind, ',') || !std::getline(ss, conditions, ',') ||
        !std::getline(ss, consequent, ',') || !std::getline(ss, plaus, ',') ||
        !std::getline(ss, eff, ','))
      throw ParseError("expected 'kind,conditions,consequent,plausibility,effectiveness'", row,
                       1);
    FuzzyRule rule;
    if (kind == "certain")
      rule.kind = RuleKind::Certain;
    else if (kind == "possible")
      rule.kind = RuleKind::Possible;
    else
      throw ParseError("unknown rule kind '" + kind + "'", row, 1);

    std::stringstream cs(conditions);
    std::string cond;
    while (std::getline(cs, cond, '&')) {
      std::size_t eq = cond.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == cond.size())
        throw ParseError("malformed condition '" + cond + "'", row, 2);
      rule.conditions.emplace_back(cond.substr(0, eq), cond.substr(eq + 1));
    }
    if (rule.conditions.empty())
      throw ParseError("rule without conditions", row, 2);
    rule.consequent = consequent;
    rule.plausibility = parse_measure(plaus, row);
    rule.effectiveness = parse_measure(eff, row);
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace fuzzyrough
