#include "fuzzyrough/membership.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace fuzzyrough {

namespace {

constexpr double kEps = 1e-9;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, std::size_t row, std::size_t col) {
  std::string t = trim(text);
  double out = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || t.empty())
    throw ParseError("malformed numeric '" + t + "'", row, col);
  return out;
}

}  // namespace

void FuzzyValue::set(const std::string& region, double degree) {
  if (degree == 0.0) return;
  if (degree < 0.0 || degree > 1.0)
    throw SemanticError("degree " + std::to_string(degree) + " for region '" + region +
                        "' outside [0,1]");
  for (const auto& [r, d] : terms_)
    if (r == region) throw SemanticError("duplicate region '" + region + "' in fuzzy value");
  terms_.emplace_back(region, degree);
}

double FuzzyValue::degree(const std::string& region) const {
  for (const auto& [r, d] : terms_)
    if (r == region) return d;
  return 0.0;
}

bool FuzzyValue::operator==(const FuzzyValue& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (const auto& [r, d] : terms_)
    if (other.degree(r) != d) return false;
  return true;
}

std::optional<std::string> MembershipFunction::check() const {
  if (region.empty()) return "region label is empty";
  if (points.size() < 2) return "region '" + region + "' has fewer than 2 points";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].second < 0.0 || points[i].second > 1.0)
      return "region '" + region + "' has degree outside [0,1]";
    if (i > 0 && !(points[i - 1].first < points[i].first))
      return "region '" + region + "' has non-increasing x values";
  }
  return std::nullopt;
}

double evaluate_membership(const MembershipFunction& mf, double x) {
  const auto& pts = mf.points;
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (x <= pts[i].first) {
      const auto& [x0, y0] = pts[i - 1];
      const auto& [x1, y1] = pts[i];
      if (x == x1) return y1;
      return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
    }
  }
  return pts.back().second;
}

FuzzyValue fuzzify(double value, const std::vector<MembershipFunction>& attribute_mfs,
                   const std::string& attribute) {
  FuzzyValue out;
  for (const auto& mf : attribute_mfs) {
    double d = evaluate_membership(mf, value);
    if (d > 0.0) out.set(mf.region, d);
  }
  if (out.empty())
    throw AllZeroMembershipError("value " + std::to_string(value) + " of attribute '" +
                                     attribute + "' has zero membership in every region",
                                 attribute, value);
  return out;
}

namespace {

struct Interval {
  double lo, hi;  // closed; +-inf allowed
  bool empty() const { return lo > hi; }
};

// Solution set of "membership of mf at x == target" restricted to [lo, hi],
// where mf is affine on that segment.
Interval solve_on_segment(double x0, double y0, double x1, double y1, double target,
                          double lo, double hi) {
  if (std::abs(y1 - y0) < kEps) {
    if (std::abs(y0 - target) < kEps) return {lo, hi};
    return {1.0, 0.0};
  }
  // Endpoint hits first so exact config coordinates come back bit-exact.
  double x;
  if (std::abs(target - y0) < kEps)
    x = x0;
  else if (std::abs(target - y1) < kEps)
    x = x1;
  else
    x = x0 + (target - y0) * (x1 - x0) / (y1 - y0);
  if (x < lo - kEps || x > hi + kEps) return {1.0, 0.0};
  x = std::clamp(x, lo, hi);
  return {x, x};
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  // Point solutions computed from different regions carry rounding noise;
  // collapse near-misses instead of declaring them inconsistent.
  if (r.lo > r.hi && r.lo - r.hi <= kEps * std::max(1.0, std::abs(r.lo)))
    r.lo = r.hi = 0.5 * (r.lo + r.hi);
  return r;
}

}  // namespace

std::optional<double> defuzzify(const FuzzyValue& fv,
                                const std::vector<MembershipFunction>& attribute_mfs) {
  if (attribute_mfs.empty()) return std::nullopt;

  std::vector<double> breaks;
  for (const auto& mf : attribute_mfs)
    for (const auto& [x, y] : mf.points) breaks.push_back(x);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Interval> segments;
  segments.push_back({-inf, breaks.front()});
  for (std::size_t i = 1; i < breaks.size(); ++i) segments.push_back({breaks[i - 1], breaks[i]});
  segments.push_back({breaks.back(), inf});

  std::vector<Interval> solution;
  for (const auto& seg : segments) {
    Interval sol = seg;
    for (const auto& mf : attribute_mfs) {
      double target = fv.degree(mf.region);
      const auto& pts = mf.points;
      Interval part{1.0, 0.0};
      if (seg.hi <= pts.front().first) {
        // left plateau
        part = std::abs(pts.front().second - target) < kEps ? seg : Interval{1.0, 0.0};
      } else if (seg.lo >= pts.back().first) {
        // right plateau
        part = std::abs(pts.back().second - target) < kEps ? seg : Interval{1.0, 0.0};
      } else {
        for (std::size_t i = 1; i < pts.size(); ++i) {
          if (seg.lo >= pts[i - 1].first && seg.hi <= pts[i].first) {
            part = solve_on_segment(pts[i - 1].first, pts[i - 1].second, pts[i].first,
                                    pts[i].second, target, seg.lo, seg.hi);
            break;
          }
        }
      }
      sol = intersect(sol, part);
      if (sol.empty()) break;
    }
    if (!sol.empty()) {
      // Merge with the previous component when they touch.
      if (!solution.empty() && sol.lo <= solution.back().hi + kEps)
        solution.back().hi = sol.hi;
      else
        solution.push_back(sol);
    }
  }

  if (solution.empty()) return std::nullopt;

  // The constraints may leave several consistent components (the same degree
  // pattern can occur on both flanks of a peak). Prefer a component holding a
  // defining x of the curves: tables of degrees are produced by evaluating
  // the curves at measured values, and a knot is the reproducible choice.
  auto knot_in = [&](const Interval& iv) -> std::optional<double> {
    for (double b : breaks)
      if (b >= iv.lo - kEps && b <= iv.hi + kEps) return std::clamp(b, iv.lo, iv.hi);
    return std::nullopt;
  };
  for (const auto& component : solution)
    if (auto knot = knot_in(component)) return *knot;

  const Interval& first = solution.front();
  bool lo_fin = std::isfinite(first.lo);
  bool hi_fin = std::isfinite(first.hi);
  if (lo_fin && hi_fin) return first.lo == first.hi ? first.lo : 0.5 * (first.lo + first.hi);
  if (lo_fin) return first.lo;
  if (hi_fin) return first.hi;
  return std::nullopt;
}

const std::vector<MembershipFunction>& MembershipFunctionSet::functions_for(
    const std::string& name) const {
  auto it = by_attribute.find(name);
  if (it == by_attribute.end())
    throw SemanticError("no membership functions for attribute '" + name + "'");
  return it->second;
}

ValidationReport validate_mf_set(const MembershipFunctionSet& mfs,
                                 const std::vector<std::string>& dataset_attributes) {
  ValidationReport report;
  for (const auto& attr : dataset_attributes)
    if (!mfs.has_attribute(attr))
      report.issues.push_back("attribute '" + attr + "' has no membership functions");
  for (const auto& attr : mfs.attributes) {
    const auto& fns = mfs.by_attribute.at(attr);
    for (std::size_t i = 0; i < fns.size(); ++i) {
      if (auto problem = fns[i].check())
        report.issues.push_back("attribute '" + attr + "': " + *problem);
      for (std::size_t j = i + 1; j < fns.size(); ++j)
        if (fns[i].region == fns[j].region)
          report.issues.push_back("attribute '" + attr + "': duplicate region '" +
                                  fns[i].region + "'");
    }
  }
  return report;
}

MembershipFunctionSet parse_mf_config(std::istream& in) {
  MembershipFunctionSet out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;

    std::size_t c1 = t.find(',');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : t.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ParseError("expected 'attribute,region,points'", lineno, 1);
    std::string attr = trim(t.substr(0, c1));
    std::string region = trim(t.substr(c1 + 1, c2 - c1 - 1));
    std::string points_field = t.substr(c2 + 1);
    if (attr.empty() || region.empty())
      throw ParseError("empty attribute or region name", lineno, 1);

    MembershipFunction mf;
    mf.region = region;
    std::stringstream ps(points_field);
    std::string pair;
    std::size_t col = 3;
    while (std::getline(ps, pair, ';')) {
      std::size_t colon = pair.find(':');
      if (colon == std::string::npos)
        throw ParseError("expected 'x:y' pair, got '" + trim(pair) + "'", lineno, col);
      double x = parse_double(pair.substr(0, colon), lineno, col);
      double y = parse_double(pair.substr(colon + 1), lineno, col);
      mf.points.emplace_back(x, y);
      ++col;
    }
    if (auto problem = mf.check())
      throw ParseError("attribute '" + attr + "': " + *problem, lineno, 3);

    if (!out.has_attribute(attr)) out.attributes.push_back(attr);
    out.by_attribute[attr].push_back(std::move(mf));
  }
  return out;
}

MembershipFunctionSet load_mf_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open membership config '" + path + "'");
  return parse_mf_config(in);
}

}  // namespace fuzzyrough
