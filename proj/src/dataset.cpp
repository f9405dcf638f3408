#include "fuzzyrough/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fuzzyrough {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_missing_cell(const std::string& cell) { return cell.empty() || cell == "*"; }

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

struct Header {
  std::vector<std::string> attributes;
  std::string class_name;
  std::size_t class_index;
};

Header read_header(std::istream& in, const std::optional<std::string>& class_column) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty input: no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  std::vector<std::string> names = split_csv_line(line);
  if (names.size() < 2)
    throw SchemaError("header must contain at least one attribute and the class column");

  Header h;
  if (class_column) {
    auto it = std::find(names.begin(), names.end(), *class_column);
    if (it == names.end())
      throw SchemaError("class column '" + *class_column + "' not found in header");
    h.class_index = static_cast<std::size_t>(it - names.begin());
  } else {
    h.class_index = names.size() - 1;
  }
  h.class_name = names[h.class_index];
  for (std::size_t i = 0; i < names.size(); ++i)
    if (i != h.class_index) h.attributes.push_back(names[i]);
  return h;
}

double parse_value(const std::string& cell, std::size_t row, std::size_t col) {
  double out = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw ParseError("malformed numeric '" + cell + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col),
                     row, col);
  return out;
}

FuzzyValue parse_fuzzy_cell(const std::string& cell, std::size_t row, std::size_t col) {
  FuzzyValue fv;
  std::stringstream ss(cell);
  std::string pair;
  while (std::getline(ss, pair, '+')) {
    pair = trim(pair);
    std::size_t colon = pair.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'region:degree' in cell '" + cell + "' at row " +
                           std::to_string(row) + ", column " + std::to_string(col),
                       row, col);
    std::string region = trim(pair.substr(0, colon));
    double degree = parse_value(trim(pair.substr(colon + 1)), row, col);
    if (region.empty())
      throw ParseError("empty region name in cell '" + cell + "'", row, col);
    if (degree < 0.0 || degree > 1.0)
      throw ParseError("degree " + std::to_string(degree) + " outside [0,1] at row " +
                           std::to_string(row) + ", column " + std::to_string(col),
                       row, col);
    if (fv.has(region))
      throw ParseError("duplicate region '" + region + "' in cell '" + cell + "'", row, col);
    fv.set(region, degree);
  }
  if (fv.empty())
    throw ParseError("cell '" + cell + "' has no region with positive degree", row, col);
  return fv;
}

template <typename RowHandler>
void read_rows(std::istream& in, const Header& h, RowHandler&& handle) {
  std::string line;
  std::size_t row = 1;  // data rows, 1-based
  while (std::getline(in, line)) {
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;  // blank line
    std::size_t expected = h.attributes.size() + 1;
    if (cells.size() != expected)
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                           " fields, expected " + std::to_string(expected),
                       row, 1);
    const std::string& cls = cells[h.class_index];
    if (is_missing_cell(cls))
      throw MissingClassLabelError("missing class label at row " + std::to_string(row), row,
                                   h.class_index + 1);
    handle(row, cells, cls);
    ++row;
  }
}

}  // namespace

bool ClassPartition::contains(int id) const {
  return std::binary_search(member_ids.begin(), member_ids.end(), id);
}

Dataset load_dataset(std::istream& in, const std::optional<std::string>& class_column) {
  Header h = read_header(in, class_column);
  Dataset data;
  data.attributes = h.attributes;
  data.class_name = h.class_name;

  read_rows(in, h, [&](std::size_t row, const std::vector<std::string>& cells,
                       const std::string& cls) {
    RawObject obj;
    obj.id = static_cast<int>(row);
    obj.class_label = cls;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == h.class_index) continue;
      if (is_missing_cell(cells[i]))
        obj.values.push_back(std::nullopt);
      else
        obj.values.push_back(parse_value(cells[i], row, i + 1));
    }
    data.objects.push_back(std::move(obj));
  });
  return data;
}

Dataset load_dataset_file(const std::string& path,
                          const std::optional<std::string>& class_column) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  return load_dataset(in, class_column);
}

FuzzyDataset load_fuzzy_dataset(std::istream& in,
                                const std::optional<std::string>& class_column) {
  Header h = read_header(in, class_column);
  FuzzyDataset data;
  data.attributes = h.attributes;
  data.class_name = h.class_name;

  read_rows(in, h, [&](std::size_t row, const std::vector<std::string>& cells,
                       const std::string& cls) {
    FuzzyObject obj;
    obj.id = static_cast<int>(row);
    obj.class_label = cls;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == h.class_index) continue;
      AttributeCell cell;
      if (!is_missing_cell(cells[i])) cell.fuzzy = parse_fuzzy_cell(cells[i], row, i + 1);
      obj.cells.push_back(std::move(cell));
    }
    data.objects.push_back(std::move(obj));
  });
  return data;
}

FuzzyDataset load_fuzzy_dataset_file(const std::string& path,
                                     const std::optional<std::string>& class_column) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  return load_fuzzy_dataset(in, class_column);
}

namespace {

std::vector<ClassPartition> partition_impl(const std::vector<std::pair<int, std::string>>& rows) {
  std::vector<ClassPartition> parts;
  std::map<std::string, std::size_t> index;
  for (const auto& [id, label] : rows) {
    auto it = index.find(label);
    if (it == index.end()) {
      index.emplace(label, parts.size());
      parts.push_back({label, {id}});
    } else {
      parts[it->second].member_ids.push_back(id);
    }
  }
  return parts;
}

}  // namespace

std::vector<ClassPartition> partition_by_class(const std::vector<RawObject>& objects) {
  std::vector<std::pair<int, std::string>> rows;
  rows.reserve(objects.size());
  for (const auto& o : objects) rows.emplace_back(o.id, o.class_label);
  return partition_impl(rows);
}

std::vector<ClassPartition> partition_by_class(const std::vector<FuzzyObject>& objects) {
  std::vector<std::pair<int, std::string>> rows;
  rows.reserve(objects.size());
  for (const auto& o : objects) rows.emplace_back(o.id, o.class_label);
  return partition_impl(rows);
}

FuzzyDataset fuzzify_dataset(const Dataset& data, const MembershipFunctionSet& mfs) {
  FuzzyDataset out;
  out.attributes = data.attributes;
  out.class_name = data.class_name;
  for (const auto& raw : data.objects) {
    FuzzyObject obj;
    obj.id = raw.id;
    obj.class_label = raw.class_label;
    for (std::size_t j = 0; j < data.attributes.size(); ++j) {
      AttributeCell cell;
      if (raw.values[j]) {
        cell.value = raw.values[j];
        try {
          cell.fuzzy = fuzzify(*raw.values[j], mfs.functions_for(data.attributes[j]),
                               data.attributes[j]);
        } catch (const AllZeroMembershipError& e) {
          throw AllZeroMembershipError("object " + std::to_string(raw.id) + ": " + e.what(),
                                       e.attribute, e.value);
        }
      }
      obj.cells.push_back(std::move(cell));
    }
    out.objects.push_back(std::move(obj));
  }
  return out;
}

void recover_values(FuzzyDataset& data, const MembershipFunctionSet& mfs) {
  for (auto& obj : data.objects) {
    for (std::size_t j = 0; j < data.attributes.size(); ++j) {
      AttributeCell& cell = obj.cells[j];
      if (cell.missing() || cell.value) continue;
      auto v = defuzzify(*cell.fuzzy, mfs.functions_for(data.attributes[j]));
      if (!v)
        throw SemanticError("object " + std::to_string(obj.id) + ", attribute '" +
                            data.attributes[j] +
                            "': degrees are inconsistent with the membership functions");
      cell.value = *v;
    }
  }
}

std::string format_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_raw_csv(std::ostream& out, const FuzzyDataset& data) {
  for (const auto& attr : data.attributes) out << attr << ',';
  out << data.class_name << '\n';
  for (const auto& obj : data.objects) {
    for (const auto& cell : obj.cells) {
      if (cell.value)
        out << format_full(*cell.value);
      else
        out << '*';
      out << ',';
    }
    out << obj.class_label << '\n';
  }
}

}  // namespace fuzzyrough
