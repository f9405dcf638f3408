#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"

using namespace fuzzyrough;

namespace {

std::vector<int> member_ids(const IncompleteEquivalenceClass& cls) {
  std::vector<int> out;
  for (const auto& m : cls.members) out.push_back(m.object_id);
  return out;
}

const ClassPartition& partition_of(const std::vector<ClassPartition>& parts,
                                   const std::string& label) {
  for (const auto& p : parts)
    if (p.class_label == label) return p;
  throw Error("no partition " + label);
}

}  // namespace

TEST_CASE("lower approximations of the example, before estimation") {
  auto ex = frtest::load_example_prefuzzified();
  auto sp = elementary_sets(ex.data.objects, 0, ex.catalog);
  auto dp = elementary_sets(ex.data.objects, 1, ex.catalog);

  SUBCASE("SP for X_H keeps its own uncertain member") {
    auto approx = lower_approximation(sp, partition_of(ex.partitions, "H"), {0});
    REQUIRE(approx.entries.size() == 1);
    CHECK(member_ids(approx.entries[0]) == std::vector<int>{2, 5, 6});
    CHECK(approx.entries[0].find(5)->tag == Tag::Uncertain);
    CHECK(approx.entries[0].mu == 0.5);
  }
  SUBCASE("SP for X_L drops the foreign uncertain member") {
    auto approx = lower_approximation(sp, partition_of(ex.partitions, "L"), {0});
    REQUIRE(approx.entries.size() == 1);
    CHECK(member_ids(approx.entries[0]) == std::vector<int>{4, 7});
    CHECK(approx.entries[0].mu == 0.5);
  }
  SUBCASE("DP for X_H is empty") {
    CHECK(lower_approximation(dp, partition_of(ex.partitions, "H"), {1}).entries.empty());
  }
  SUBCASE("SP and DP for X_N are empty") {
    CHECK(lower_approximation(sp, partition_of(ex.partitions, "N"), {0}).entries.empty());
    CHECK(lower_approximation(dp, partition_of(ex.partitions, "N"), {1}).entries.empty());
  }
  SUBCASE("DP for X_L") {
    auto approx = lower_approximation(dp, partition_of(ex.partitions, "L"), {1});
    REQUIRE(approx.entries.size() == 1);
    CHECK(member_ids(approx.entries[0]) == std::vector<int>{4, 7});
    CHECK(approx.entries[0].find(7)->tag == Tag::Uncertain);
    CHECK(approx.entries[0].mu == 1.0);
  }
}

TEST_CASE("upper approximation") {
  SUBCASE("completed example: SP for X_N picks only the overlapping class") {
    auto ex = frtest::load_example_prefuzzified();
    PipelineResult done =
        run_imputation_pipeline(ex.data.objects, ex.partitions, &ex.mfs, ex.catalog);
    auto sp = elementary_sets(done.objects, 0, ex.catalog);
    auto approx = upper_approximation(sp, partition_of(ex.partitions, "N"), {0});
    REQUIRE(approx.entries.size() == 1);
    CHECK(member_ids(approx.entries[0]) == std::vector<int>{1, 2, 3, 5, 6, 7});
    CHECK(approx.entries[0].mu == 0.1);
  }
  SUBCASE("a partition covering every object has an empty upper approximation") {
    std::mt19937 rng(11);
    auto gen = frtest::random_dataset(rng, false);
    ClassPartition everything{"all", {}};
    for (const auto& obj : gen.data.objects) everything.member_ids.push_back(obj.id);
    for (const auto& subset : frtest::all_subsets(static_cast<int>(gen.catalog.attributes.size()))) {
      auto classes = build_classes(gen.data.objects, subset, gen.catalog);
      CHECK(upper_approximation(classes, everything, subset).entries.empty());
    }
  }
  SUBCASE("matches the set definition on random complete data") {
    std::mt19937 rng(52);
    for (int iter = 0; iter < 100; ++iter) {
      auto gen = frtest::random_dataset(rng, false);
      int m = static_cast<int>(gen.catalog.attributes.size());
      for (const auto& subset : frtest::all_subsets(m)) {
        auto classes = build_classes(gen.data.objects, subset, gen.catalog);
        auto direct = frtest::direct_classes(gen.data.objects, subset, gen.catalog);
        for (const auto& part : gen.partitions) {
          auto approx = upper_approximation(classes, part, subset);
          std::vector<RegionCombination> expect;
          for (const auto& dc : direct) {
            bool intersects = false, contained = true;
            for (const auto& [id, d] : dc.members) {
              if (part.contains(id))
                intersects = true;
              else
                contained = false;
            }
            if (intersects && !contained) expect.push_back(dc.combo);
          }
          REQUIRE(approx.entries.size() == expect.size());
          for (std::size_t k = 0; k < expect.size(); ++k)
            CHECK(approx.entries[k].combination == expect[k]);
        }
      }
    }
  }
}

TEST_CASE("lower and upper approximations never share a class") {
  std::mt19937 rng(61);
  for (int iter = 0; iter < 100; ++iter) {
    auto gen = frtest::random_dataset(rng, true);
    int m = static_cast<int>(gen.catalog.attributes.size());
    for (const auto& subset : frtest::all_subsets(m)) {
      auto classes = build_classes(gen.data.objects, subset, gen.catalog);
      for (const auto& part : gen.partitions) {
        auto lower = lower_approximation(classes, part, subset);
        auto upper = upper_approximation(classes, part, subset);
        for (const auto& le : lower.entries)
          for (const auto& ue : upper.entries) CHECK(le.combination != ue.combination);
      }
    }
  }
}

TEST_CASE("estimate_value_lower") {
  auto ex = frtest::load_example_prefuzzified();
  auto sp = elementary_sets(ex.data.objects, 0, ex.catalog);
  auto dp = elementary_sets(ex.data.objects, 1, ex.catalog);

  SUBCASE("weighted mean over the high-pressure donors is exactly 153") {
    const auto& high = sp[2];
    auto v = estimate_value_lower(ex.data.objects, 0, high);
    REQUIRE(v.has_value());
    CHECK(*v == 153.0);  // (155*0.75 + 150*0.5) / 1.25
  }
  SUBCASE("single donor returns the donor's value") {
    const auto& low = dp[0];
    auto v = estimate_value_lower(ex.data.objects, 1, low);
    REQUIRE(v.has_value());
    CHECK(*v == 68.0);  // (68*1) / 1
  }
  SUBCASE("no certain donor leaves the value uncertain") {
    IncompleteEquivalenceClass cls;
    cls.combination.items = {{0, 0}};
    cls.members = {{5, Tag::Uncertain, 1.0}};
    CHECK(!estimate_value_lower(ex.data.objects, 0, cls).has_value());
  }
}

TEST_CASE("estimate_value_upper restricts donors to the class partition") {
  std::vector<FuzzyObject> objects;
  FuzzyValue r0;
  r0.set("R0", 0.5);
  for (int i = 1; i <= 2; ++i) {
    FuzzyObject obj;
    obj.id = i;
    obj.cells = {AttributeCell{i == 1 ? 10.0 : 99.0, r0}};
    obj.class_label = i == 1 ? "in" : "out";
    objects.push_back(obj);
  }
  IncompleteEquivalenceClass cls;
  cls.combination.items = {{0, 0}};
  cls.members = {{1, Tag::Certain, 0.5}, {2, Tag::Certain, 0.9}};
  ClassPartition inside{"in", {1}};

  auto v = estimate_value_upper(objects, 0, cls, inside);
  REQUIRE(v.has_value());
  CHECK(*v == 10.0);

  SUBCASE("equal-weight mean") {
    objects[1].cells[0].value = 20.0;
    cls.members[1].degree = 0.5;
    ClassPartition both{"in", {1, 2}};
    auto mean = estimate_value_upper(objects, 0, cls, both);
    REQUIRE(mean.has_value());
    CHECK(*mean == 15.0);
  }
}

TEST_CASE("estimate_value_upper matches a hand-computed quotient") {
  // Six objects, one class containing five certain donors; donors restricted
  // to X = {2, 4}: (20*0.8 + 40*0.6) / (0.8 + 0.6).
  std::vector<FuzzyObject> objects;
  FuzzyValue r0;
  r0.set("R0", 0.5);
  double values[] = {10, 20, 30, 40, 50, 0};
  for (int i = 0; i < 6; ++i) {
    FuzzyObject obj;
    obj.id = i + 1;
    AttributeCell cell;
    if (i < 5) cell = {values[i], r0};
    obj.cells = {cell};
    obj.class_label = (i + 1) % 2 == 0 ? "even" : "odd";
    objects.push_back(obj);
  }
  IncompleteEquivalenceClass cls;
  cls.combination.items = {{0, 0}};
  double degrees[] = {0.9, 0.8, 0.7, 0.6, 0.5};
  for (int i = 0; i < 5; ++i) cls.members.push_back({i + 1, Tag::Certain, degrees[i]});
  cls.members.push_back({6, Tag::Uncertain, 1.0});

  ClassPartition even{"even", {2, 4, 6}};
  auto v = estimate_value_upper(objects, 0, cls, even);
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx((20.0 * 0.8 + 40.0 * 0.6) / (0.8 + 0.6)).epsilon(1e-12));
}

TEST_CASE("plausibility_of_class") {
  std::vector<FuzzyObject> unused;
  IncompleteEquivalenceClass cls;
  cls.combination.items = {{0, 0}};
  cls.members = {{1, Tag::Certain, 0.9}, {6, Tag::Certain, 0.3}};
  ClassPartition x{"X", {1}};
  CHECK(plausibility_of_class(cls, x) == 0.75);

  ClassPartition all{"X", {1, 6}};
  CHECK(plausibility_of_class(cls, all) == 1.0);
  ClassPartition none{"X", {9}};
  CHECK(plausibility_of_class(cls, none) == 0.0);

  IncompleteEquivalenceClass empty;
  CHECK_THROWS_AS(plausibility_of_class(empty, x), EmptyClassError);
}

TEST_CASE("resolve_uncertain ranking") {
  ClassPartition x{"X", {1, 2}};
  auto make = [](std::vector<TaggedMember> members, int attr_region) {
    IncompleteEquivalenceClass cls;
    cls.combination.items = {{0, attr_region}};
    cls.members = std::move(members);
    recompute_mu(cls);
    return cls;
  };

  SUBCASE("higher plausibility wins") {
    auto a = make({{1, Tag::Certain, 0.8}, {3, Tag::Certain, 0.2}}, 0);  // 0.8
    auto b = make({{1, Tag::Certain, 0.5}, {3, Tag::Certain, 0.5}}, 1);  // 0.5
    CHECK(resolve_uncertain({a, b}, x) == 0);
    CHECK(resolve_uncertain({b, a}, x) == 1);
  }
  SUBCASE("plausibility tie: more certain members wins") {
    auto a = make({{1, Tag::Certain, 0.5}}, 0);                          // plausibility 1
    auto b = make({{1, Tag::Certain, 0.5}, {2, Tag::Certain, 0.4}}, 1);  // plausibility 1
    CHECK(resolve_uncertain({a, b}, x) == 1);
  }
  SUBCASE("full tie: canonically first combination wins") {
    auto a = make({{1, Tag::Certain, 0.5}}, 1);
    auto b = make({{1, Tag::Certain, 0.5}}, 0);
    CHECK(resolve_uncertain({a, b}, x) == 1);  // region 0 sorts first
  }
}

TEST_CASE("imputation pipeline on the example") {
  auto ex = frtest::load_example_prefuzzified();
  PipelineResult result =
      run_imputation_pipeline(ex.data.objects, ex.partitions, &ex.mfs, ex.catalog);

  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].object_id == 5);
  CHECK(result.records[0].attribute == 0);
  CHECK(result.records[0].value == 153.0);
  CHECK(result.records[0].phase == Phase::LowerPass);
  CHECK(result.records[0].source.items ==
        std::vector<std::pair<int, int>>{{0, ex.catalog.region_index(0, "H")}});
  CHECK(result.records[1].object_id == 7);
  CHECK(result.records[1].attribute == 1);
  CHECK(result.records[1].value == 68.0);
  CHECK(result.records[1].phase == Phase::LowerPass);

  CHECK(result.unresolved.empty());
  const FuzzyObject& obj5 = result.objects[4];
  CHECK(obj5.cells[0].value == 153.0);
  CHECK(obj5.cells[0].fuzzy->degree("N") == 0.2);
  CHECK(obj5.cells[0].fuzzy->degree("H") == 0.65);
  CHECK(obj5.cells[0].fuzzy->degree("L") == 0.0);
  const FuzzyObject& obj7 = result.objects[6];
  CHECK(obj7.cells[1].value == 68.0);
  CHECK(obj7.cells[1].fuzzy->degree("L") == 1.0);
  CHECK(obj7.cells[1].fuzzy->size() == 1);

  for (int j = 0; j < 2; ++j)
    for (const auto& cls : elementary_sets(result.objects, j, ex.catalog))
      for (const auto& m : cls.members) CHECK(m.tag == Tag::Certain);
}

TEST_CASE("pipeline is the identity on complete data") {
  std::mt19937 rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    auto gen = frtest::random_dataset(rng, false);
    PipelineResult result =
        run_imputation_pipeline(gen.data.objects, gen.partitions, &gen.mfs, gen.catalog);
    CHECK(result.records.empty());
    CHECK(result.unresolved.empty());
    CHECK(result.objects == gen.data.objects);
  }
}

TEST_CASE("an object with no possible donors stays unresolved") {
  std::istringstream cfg("A,R0,0:1;10:0\nA,R1,0:0;10:1\nB,R0,0:1;10:0\nB,R1,0:0;10:1\n");
  auto mfs = parse_mf_config(cfg);
  std::istringstream csv("A,B,CL\n*,*,alone\n4,6,other\n");
  FuzzyDataset data = fuzzify_dataset(load_dataset(csv), mfs);
  auto catalog = catalog_from_mfs(mfs, data.attributes);
  auto partitions = partition_by_class(data.objects);

  PipelineResult result = run_imputation_pipeline(data.objects, partitions, &mfs, catalog);
  CHECK(result.records.empty());
  REQUIRE(result.unresolved.size() == 2);
  CHECK(result.unresolved[0] == UnresolvedCell{1, 0});
  CHECK(result.unresolved[1] == UnresolvedCell{1, 1});
}

TEST_CASE("estimates stay inside the donor hull") {
  std::mt19937 rng(8080);
  int cases = 0;
  for (int iter = 0; iter < 150; ++iter) {
    auto gen = frtest::random_dataset(rng, true);
    int m = static_cast<int>(gen.catalog.attributes.size());
    for (const auto& subset : frtest::all_subsets(m)) {
      auto classes = build_classes(gen.data.objects, subset, gen.catalog);
      for (const auto& cls : classes) {
        if (!cls.has_certain()) continue;
        for (int j : subset) {
          double lo = 1e300, hi = -1e300;
          bool any = false;
          for (const auto& member : cls.members) {
            if (member.tag != Tag::Certain) continue;
            for (const auto& obj : gen.data.objects)
              if (obj.id == member.object_id && obj.cells[j].value) {
                lo = std::min(lo, *obj.cells[j].value);
                hi = std::max(hi, *obj.cells[j].value);
                any = true;
              }
          }
          if (!any) continue;
          auto v = estimate_value_lower(gen.data.objects, j, cls);
          REQUIRE(v.has_value());
          CHECK(*v >= lo - 1e-9);
          CHECK(*v <= hi + 1e-9);
          ++cases;
        }
      }
    }
  }
  CHECK(cases >= 300);
}

TEST_CASE("pipeline reaches a stable fixpoint and is deterministic") {
  std::mt19937 rng(5150);
  for (int iter = 0; iter < 100; ++iter) {
    auto gen = frtest::random_dataset(rng, true);
    PipelineResult a =
        run_imputation_pipeline(gen.data.objects, gen.partitions, &gen.mfs, gen.catalog);
    CHECK(static_cast<int>(a.records.size()) <= gen.missing_cells);

    // Determinism: identical inputs give identical runs.
    PipelineResult b =
        run_imputation_pipeline(gen.data.objects, gen.partitions, &gen.mfs, gen.catalog);
    CHECK(a.objects == b.objects);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].object_id == b.records[i].object_id);
      CHECK(a.records[i].attribute == b.records[i].attribute);
      CHECK(a.records[i].value == b.records[i].value);
      CHECK(a.records[i].source == b.records[i].source);
    }

    // Re-running on the completed output changes nothing: the interleaved
    // rebuilds are equivalent to one recomputation from the final data.
    PipelineResult again =
        run_imputation_pipeline(a.objects, gen.partitions, &gen.mfs, gen.catalog);
    CHECK(again.records.empty());
    CHECK(again.objects == a.objects);
    CHECK(again.unresolved == a.unresolved);

    // And the structures rebuilt from scratch equal the pipeline's own.
    int m = static_cast<int>(gen.catalog.attributes.size());
    for (const auto& subset : frtest::all_subsets(m))
      CHECK(build_classes(a.objects, subset, gen.catalog) ==
            build_classes(again.objects, subset, gen.catalog));
  }
}

TEST_CASE("upper pass resolves multi-class uncertainty by plausibility") {
  // Three overlapping regions, every class mixed, so the lower pass never
  // fires; the uncertain object is placed by the upper approximation of its
  // own class. R0 and R2 tie on plausibility (0.8) and certain-member count,
  // the canonically first combination (R0) wins, and its only in-partition
  // donor is object 1.
  std::istringstream cfg(
      "A,R0,10:1;20:0\n"
      "A,R1,10:0;20:1;30:0\n"
      "A,R2,20:0;30:1\n");
  auto mfs = parse_mf_config(cfg);
  std::istringstream csv("A,CL\n12,P\n18,Q\n28,P\n22,Q\n*,P\n");
  FuzzyDataset data = fuzzify_dataset(load_dataset(csv), mfs);
  auto catalog = catalog_from_mfs(mfs, data.attributes);
  auto partitions = partition_by_class(data.objects);

  // No class has a certain part inside one partition.
  for (const auto& part : partitions)
    CHECK(lower_approximation(elementary_sets(data.objects, 0, catalog), part, {0})
              .entries.empty());

  PipelineResult result = run_imputation_pipeline(data.objects, partitions, &mfs, catalog);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].object_id == 5);
  CHECK(result.records[0].phase == Phase::UpperPass);
  CHECK(result.records[0].source.items == std::vector<std::pair<int, int>>{{0, 0}});
  CHECK(result.records[0].value == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(result.unresolved.empty());
  CHECK(result.objects[4].cells[0].fuzzy->degree("R0") == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("lower pass defers objects that are uncertain in several classes") {
  // Object 3 sits uncertainly in two lower-approximation entries of its own
  // class, so the single-class rule does not apply; with no upper entries
  // either, both incomplete objects stay unresolved.
  std::istringstream cfg("A,R0,0:1;10:0\nA,R1,0:0;10:1\n");
  auto mfs = parse_mf_config(cfg);
  std::istringstream csv("A,CL\n0,P\n10,P\n*,P\n*,Q\n");
  FuzzyDataset data = fuzzify_dataset(load_dataset(csv), mfs);
  auto catalog = catalog_from_mfs(mfs, data.attributes);
  auto partitions = partition_by_class(data.objects);

  auto classes = elementary_sets(data.objects, 0, catalog);
  auto lower = lower_approximation(classes, partitions[0], {0});
  REQUIRE(lower.entries.size() == 2);
  CHECK(lower.entries[0].find(3) != nullptr);
  CHECK(lower.entries[1].find(3) != nullptr);

  PipelineResult result = run_imputation_pipeline(data.objects, partitions, &mfs, catalog);
  CHECK(result.records.empty());
  CHECK(result.unresolved ==
        std::vector<UnresolvedCell>{UnresolvedCell{3, 0}, UnresolvedCell{4, 0}});
}

TEST_CASE("an estimate falling into a membership gap is reported") {
  // A two-humped region: the weighted mean of donors from different humps
  // can land in the dead zone between them, where no region covers it.
  std::istringstream cfg("A,R0,0:0;1:1;2:0;3:0;4:1;5:0\n");
  auto mfs = parse_mf_config(cfg);
  std::istringstream csv("A,CL\n1,P\n4.2,P\n*,P\n");
  FuzzyDataset data = fuzzify_dataset(load_dataset(csv), mfs);
  auto catalog = catalog_from_mfs(mfs, data.attributes);
  auto partitions = partition_by_class(data.objects);

  try {
    run_imputation_pipeline(data.objects, partitions, &mfs, catalog);
    FAIL("expected AllZeroMembershipError");
  } catch (const AllZeroMembershipError& e) {
    CHECK(std::string(e.what()).find("object 3") != std::string::npos);
    CHECK(e.attribute == "A");
  }
}
