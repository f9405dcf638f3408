// fuzzyrough: mines beta-certain and beta-possible rules from incomplete
// quantitative datasets, estimating missing values along the way.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzyrough/rules.hpp"

namespace fr = fuzzyrough;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitUnresolved = 4;

struct CommonOpts {
  std::string data_path;
  std::string mf_path;
  bool prefuzzified = false;
  std::string class_column;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool data_required = true) {
  auto* data = cmd->add_option("--data", opts.data_path, "dataset CSV");
  if (data_required) data->required();
  cmd->add_option("--mf", opts.mf_path, "membership-function config");
  cmd->add_flag("--prefuzzified", opts.prefuzzified,
                "cells hold region:degree pairs instead of quantitative values");
  cmd->add_option("--class-column", opts.class_column,
                  "header name of the class column (default: last column)");
}

std::optional<std::string> class_column_of(const CommonOpts& opts) {
  if (opts.class_column.empty()) return std::nullopt;
  return opts.class_column;
}

struct LoadedData {
  fr::FuzzyDataset data;
  fr::RegionCatalog catalog;
  std::optional<fr::MembershipFunctionSet> mfs;
  bool has_missing = false;
};

LoadedData load_everything(const CommonOpts& opts, bool need_values) {
  LoadedData out;
  if (!opts.mf_path.empty()) out.mfs = fr::load_mf_config(opts.mf_path);

  if (opts.prefuzzified) {
    out.data = fr::load_fuzzy_dataset_file(opts.data_path, class_column_of(opts));
    if (out.mfs) {
      auto report = fr::validate_mf_set(*out.mfs, out.data.attributes);
      if (!report.ok()) {
        for (const auto& issue : report.issues) std::cerr << "error: " << issue << '\n';
        throw fr::SemanticError("membership-function set is invalid");
      }
      out.catalog = fr::catalog_from_mfs(*out.mfs, out.data.attributes);
      if (need_values) fr::recover_values(out.data, *out.mfs);
    } else {
      out.catalog = fr::catalog_from_objects(out.data);
    }
  } else {
    if (!out.mfs)
      throw fr::Error("usage: --mf is required for quantitative data");
    fr::Dataset raw = fr::load_dataset_file(opts.data_path, class_column_of(opts));
    auto report = fr::validate_mf_set(*out.mfs, raw.attributes);
    if (!report.ok()) {
      for (const auto& issue : report.issues) std::cerr << "error: " << issue << '\n';
      throw fr::SemanticError("membership-function set is invalid for this dataset");
    }
    out.data = fr::fuzzify_dataset(raw, *out.mfs);
    out.catalog = fr::catalog_from_mfs(*out.mfs, raw.attributes);
  }

  for (const auto& obj : out.data.objects)
    for (const auto& cell : obj.cells)
      if (cell.missing()) out.has_missing = true;

  // Pre-fuzzified degrees must only use regions the catalog knows, otherwise
  // they would silently vanish from every equivalence class.
  for (const auto& obj : out.data.objects)
    for (std::size_t j = 0; j < obj.cells.size(); ++j) {
      if (obj.cells[j].missing()) continue;
      for (const auto& [region, d] : obj.cells[j].fuzzy->terms())
        if (out.catalog.region_index(static_cast<int>(j), region) < 0)
          throw fr::SemanticError("object " + std::to_string(obj.id) + ": unknown region '" +
                                  region + "' for attribute '" + out.data.attributes[j] + "'");
    }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fr::Error("cannot write '" + path + "'");
  return out;
}

int cmd_mine(const CommonOpts& common, double beta_value, const std::string& rules_out,
             const std::string& rules_csv_out, const std::string& imputed_out,
             const std::string& imputation_log, bool dump_classes, bool strict) {
  if (!(beta_value >= 0.0 && beta_value < 0.5))
    throw CLI::ValidationError("--beta", "beta must be in [0, 0.5)");
  fr::Beta beta(beta_value);

  LoadedData loaded = load_everything(common, /*need_values=*/true);
  if (loaded.has_missing && !loaded.mfs)
    throw fr::Error("usage: --mf is required to estimate missing values");
  if (!imputed_out.empty() && !loaded.mfs)
    throw fr::Error("usage: --imputed-out requires --mf");

  auto partitions = fr::partition_by_class(loaded.data.objects);
  const fr::MembershipFunctionSet* mfs = loaded.mfs ? &*loaded.mfs : nullptr;
  fr::MiningResult result =
      fr::mine(loaded.data.objects, partitions, loaded.catalog, mfs, beta);

  for (const auto& cell : result.unresolved)
    std::cerr << "warning: object " << cell.object_id << ", attribute '"
              << loaded.catalog.attributes[cell.attribute] << "' is still uncertain\n";

  if (dump_classes)
    for (const auto& [subset, classes] : result.classes_by_subset)
      for (const auto& cls : classes)
        std::cout << fr::dump_class(cls, loaded.catalog) << '\n';

  if (!rules_out.empty()) {
    auto out = open_out(rules_out);
    fr::write_rules_text(out, result.rules, loaded.data.class_name);
  } else {
    fr::write_rules_text(std::cout, result.rules, loaded.data.class_name);
  }
  if (!rules_csv_out.empty()) {
    auto out = open_out(rules_csv_out);
    fr::write_rules_csv(out, result.rules);
  }
  if (!imputed_out.empty()) {
    fr::FuzzyDataset completed = loaded.data;
    completed.objects = result.objects;
    auto out = open_out(imputed_out);
    fr::write_raw_csv(out, completed);
  }
  if (!imputation_log.empty()) {
    auto out = open_out(imputation_log);
    for (const auto& rec : result.imputations)
      out << rec.object_id << ',' << loaded.catalog.attributes[rec.attribute] << ','
          << fr::format_full(rec.value) << ','
          << (rec.phase == fr::Phase::LowerPass ? "lower" : "upper") << ','
          << rec.source.label(loaded.catalog) << '\n';
  }

  if (strict && !result.unresolved.empty()) return kExitUnresolved;
  return kExitOk;
}

int cmd_classify(const CommonOpts& common, const std::string& rules_path) {
  std::ifstream rules_in(rules_path);
  if (!rules_in) throw fr::Error("cannot open rules '" + rules_path + "'");
  std::vector<fr::FuzzyRule> rules = fr::parse_rules_csv(rules_in);
  if (rules.empty()) throw fr::Error("usage: rules file '" + rules_path + "' has no rules");

  LoadedData loaded = load_everything(common, /*need_values=*/false);

  std::cout << "object_id,predicted_class,score\n";
  char buf[32];
  for (const auto& obj : loaded.data.objects) {
    auto res = fr::classify(obj, loaded.data.attributes, rules);
    if (res) {
      std::snprintf(buf, sizeof(buf), "%.6f", res->score);
      std::cout << obj.id << ',' << res->class_label << ',' << buf << '\n';
    } else {
      std::cout << obj.id << ",?,0.000000\n";
    }
  }
  return kExitOk;
}

int cmd_validate(const CommonOpts& common) {
  std::vector<std::string> issues;
  std::optional<fr::MembershipFunctionSet> mfs;
  if (!common.mf_path.empty()) mfs = fr::load_mf_config(common.mf_path);

  if (common.prefuzzified) {
    fr::FuzzyDataset data = fr::load_fuzzy_dataset_file(common.data_path, class_column_of(common));
    if (mfs) {
      auto report = fr::validate_mf_set(*mfs, data.attributes);
      issues = report.issues;
      if (report.ok()) {
        try {
          fr::recover_values(data, *mfs);
        } catch (const fr::SemanticError& e) {
          issues.push_back(e.what());
        }
      }
    }
  } else {
    fr::Dataset raw = fr::load_dataset_file(common.data_path, class_column_of(common));
    if (!mfs) throw fr::Error("usage: --mf is required for quantitative data");
    auto report = fr::validate_mf_set(*mfs, raw.attributes);
    issues = report.issues;
    if (report.ok()) {
      try {
        fr::fuzzify_dataset(raw, *mfs);
      } catch (const fr::AllZeroMembershipError& e) {
        issues.push_back(e.what());
      }
    }
  }

  for (const auto& issue : issues) std::cout << issue << '\n';
  return issues.empty() ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy rule mining from incomplete quantitative data"};
  app.require_subcommand(1);

  CommonOpts mine_opts;
  double beta_value = 0.0;
  std::string rules_out, rules_csv_out, imputed_out, imputation_log;
  bool dump_classes = false, strict = false;
  CLI::App* mine = app.add_subcommand("mine", "mine beta-certain and beta-possible rules");
  add_common(mine, mine_opts);
  mine->add_option("--beta", beta_value, "misclassification tolerance in [0, 0.5)")->required();
  mine->add_option("--rules-out", rules_out, "write rules in text form (default: stdout)");
  mine->add_option("--rules-csv-out", rules_csv_out, "write rules in CSV form");
  mine->add_option("--imputed-out", imputed_out, "write the completed dataset as raw CSV");
  mine->add_option("--imputation-log", imputation_log, "write one line per estimated value");
  mine->add_flag("--dump-classes", dump_classes, "dump all equivalence classes to stdout");
  mine->add_flag("--strict", strict, "exit 4 when values stay uncertain");

  CommonOpts classify_opts;
  std::string rules_path;
  CLI::App* classify = app.add_subcommand("classify", "classify objects with mined rules");
  add_common(classify, classify_opts);
  classify->add_option("--rules", rules_path, "rules CSV from mine")->required();

  CommonOpts validate_opts;
  CLI::App* validate = app.add_subcommand("validate", "lint a dataset and membership config");
  add_common(validate, validate_opts);

  try {
    app.parse(argc, argv);
    if (mine->parsed())
      return cmd_mine(mine_opts, beta_value, rules_out, rules_csv_out, imputed_out,
                      imputation_log, dump_classes, strict);
    if (classify->parsed()) return cmd_classify(classify_opts, rules_path);
    if (validate->parsed()) return cmd_validate(validate_opts);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const fr::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const fr::SemanticError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSemantic;
  } catch (const fr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
