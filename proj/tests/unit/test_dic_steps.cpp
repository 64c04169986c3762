#include <vector>

#include "doctest.h"
#include "dicmine/dic.hpp"
#include "dicmine/error.hpp"
#include "support.hpp"

using namespace dicmine;

namespace {

BitDatabase db_of(std::vector<Mask64> masks) { return BitDatabase(std::move(masks)); }

const CountedItemset* find(const std::vector<CountedItemset>& v, Mask64 mask) {
  for (const auto& i : v) {
    if (i.mask == mask) return &i;
  }
  return nullptr;
}

void seed_dashed(ItemsetCatalog& c, CountedItemset i) {
  c.known_masks.insert(i.mask);
  if (i.shape == Shape::DashedBox) c.box_masks.insert(i.mask);
  c.dashed.push_back(i);
}

void seed_box(ItemsetCatalog& c, Mask64 mask) {
  c.add_solid(CountedItemset{mask, cardinality(mask), 1, 1, Shape::SolidBox});
}

}  // namespace

TEST_CASE("lifecycle edges") {
  using S = Shape;
  CHECK(is_legal_transition(S::DashedCircle, S::DashedBox));
  CHECK(is_legal_transition(S::DashedCircle, S::SolidCircle));
  CHECK(is_legal_transition(S::DashedCircle, S::Nil));
  CHECK(is_legal_transition(S::DashedBox, S::SolidBox));
  CHECK(is_legal_transition(S::DashedBox, S::Nil));
  CHECK_FALSE(is_legal_transition(S::DashedBox, S::DashedCircle));
  CHECK_FALSE(is_legal_transition(S::DashedBox, S::SolidCircle));
  CHECK_FALSE(is_legal_transition(S::DashedCircle, S::SolidBox));
  CHECK_FALSE(is_legal_transition(S::SolidBox, S::Nil));
  CHECK_FALSE(is_legal_transition(S::SolidCircle, S::SolidBox));
  CHECK_FALSE(is_legal_transition(S::Nil, S::DashedCircle));
}

TEST_CASE("MiningParams derivation and validation") {
  const auto p = MiningParams::make(0.8, 50, 10);
  CHECK(p.minsup_count() == 40);
  CHECK(p.stop_max() == 5);
  CHECK(p.chunk(1) == std::pair<std::size_t, std::size_t>{0, 9});
  CHECK(p.chunk(5) == std::pair<std::size_t, std::size_t>{40, 49});

  const auto q = MiningParams::make(0.5, 7, 3);
  CHECK(q.stop_max() == 3);
  CHECK(q.chunk(3) == std::pair<std::size_t, std::size_t>{6, 6});
  CHECK(q.minsup_count() == 4);

  CHECK_THROWS_AS(MiningParams::make(0.0, 10, 5), Error);
  CHECK_THROWS_AS(MiningParams::make(1.5, 10, 5), Error);
  CHECK_THROWS_AS(MiningParams::make(0.5, 10, 0), Error);
  CHECK_THROWS_AS(MiningParams::make(0.5, 10, 11), Error);
  CHECK_THROWS_AS(MiningParams::make(0.5, 10, 5, 0), Error);
  try {
    MiningParams::make(0.5, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDatabase);
  }
}

TEST_CASE("first_pass") {
  SUBCASE("three transactions") {
    const auto db = db_of({0x1, 0x3, 0x7});
    const auto params = MiningParams::make(0.5, db.size(), 2);
    REQUIRE(params.minsup_count() == 2);
    for (bool serial : {true, false}) {
      ItemsetCatalog c;
      CHECK(first_pass(db, params, c, serial) == 1);
      REQUIRE(c.solid.size() == 3);
      CHECK(find(c.solid, 0x1)->supp == 3);
      CHECK(find(c.solid, 0x1)->shape == Shape::SolidBox);
      CHECK(find(c.solid, 0x2)->supp == 2);
      CHECK(find(c.solid, 0x2)->shape == Shape::SolidBox);
      CHECK(find(c.solid, 0x4)->supp == 1);
      CHECK(find(c.solid, 0x4)->shape == Shape::SolidCircle);
      REQUIRE(c.dashed.size() == 1);
      CHECK(c.dashed[0].mask == 0x3);
      CHECK(c.dashed[0].shape == Shape::DashedCircle);
      CHECK(c.dashed[0].stop == 0);
      CHECK(c.frequent_items == 0x3);
      CHECK(c.well_formed());
    }
  }
  SUBCASE("no frequent item") {
    const auto db = db_of({0x1, 0x2});
    const auto params = MiningParams::make(1.0, 2, 1);
    ItemsetCatalog c;
    CHECK(first_pass(db, params, c) == 0);
    CHECK(c.dashed.empty());
    CHECK(c.frequent_items == 0);
    CHECK(mine_serial(db, params).frequent.empty());
    CHECK(mine_parallel(db, params.with_threads(4)).frequent.empty());
  }
  SUBCASE("single transaction") {
    const auto db = db_of({0x3});
    const auto params = MiningParams::make(1.0, 1, 1);
    REQUIRE(params.minsup_count() == 1);
    ItemsetCatalog c;
    first_pass(db, params, c);
    CHECK(find(c.solid, 0x1)->shape == Shape::SolidBox);
    CHECK(find(c.solid, 0x2)->shape == Shape::SolidBox);
    REQUIRE(c.dashed.size() == 1);
    CHECK(c.dashed[0].mask == 0x3);
  }
}

TEST_CASE("count_support_interval") {
  const auto db = db_of({0x5, 0x7, 0x6, 0x4});
  for (int threads : {1, 2, 3, 8}) {
    std::vector<CountedItemset> d = {{0x4, 1, 0, 0, Shape::DashedCircle}};
    count_support_interval(d, db, 0, 3, threads);
    CHECK(d[0].supp == 4);
    CHECK(d[0].stop == 1);
  }
  std::vector<CountedItemset> d = {{0x4, 1, 0, 0, Shape::DashedCircle}};
  count_support_serial(d, db, 0, 3);
  CHECK(d[0].supp == 4);
  CHECK(d[0].stop == 1);

  const auto db2 = db_of({0x1, 0x2});
  std::vector<CountedItemset> e = {{0x3, 2, 1, 2, Shape::DashedCircle}};
  count_support_interval(e, db2, 0, 1, 4);
  CHECK(e[0].supp == 2);
  CHECK(e[0].stop == 2);

  std::vector<CountedItemset> none;
  CHECK(count_support_interval(none, db, 0, 3, 4) == CountMode::Sequential);
}

TEST_CASE("count modes agree with the serial loop on random chunks") {
  std::mt19937_64 rng(99);
  const auto db = testsupport::random_db(rng, 20000, 12, 0.5);
  for (std::size_t itemsets : {1u, 2u, 3u, 7u, 8u, 40u}) {
    std::vector<CountedItemset> base;
    for (std::size_t i = 0; i < itemsets; ++i) {
      const Mask64 m = (rng() & 0xFFF) | 1;
      base.push_back(CountedItemset{m, cardinality(m), 0, 0, Shape::DashedCircle});
    }
    auto reference = base;
    count_support_serial(reference, db, 1234, 19000);
    for (int threads : {1, 2, 4, 8}) {
      auto got = base;
      const CountMode mode = count_support_interval(got, db, 1234, 19000, threads);
      CHECK(got == reference);
      if (threads > 1) {
        CHECK(mode == (itemsets >= static_cast<std::size_t>(threads)
                           ? CountMode::ItemsetPartitioned
                           : CountMode::TransactionPartitioned));
      }
    }
  }
}

TEST_CASE("prune") {
  const auto params = MiningParams::make(0.8, 50, 10);

  SUBCASE("highest possible support below threshold") {
    const CountedItemset i{0x3, 2, 2, 3, Shape::DashedCircle};
    CHECK(highest_possible_support(i, params) == 33);
    ItemsetCatalog c;
    seed_dashed(c, i);
    const auto out = prune(c, params);
    CHECK(out.pruned == 1);
    CHECK(c.dashed.empty());
    CHECK(c.known_masks.contains(0x3));
  }

  SUBCASE("threshold boundary promotes") {
    ItemsetCatalog c;
    seed_dashed(c, CountedItemset{0x3, 2, 2, 40, Shape::DashedCircle});
    const auto out = prune(c, params);
    CHECK(out.promoted == 1);
    REQUIRE(c.dashed.size() == 1);
    CHECK(c.dashed[0].shape == Shape::DashedBox);
    CHECK(c.box_masks.contains(0x3));
    CHECK(c.fresh_boxes == std::vector<Mask64>{0x3});
  }

  SUBCASE("one below the boundary stays a circle") {
    ItemsetCatalog c;
    seed_dashed(c, CountedItemset{0x3, 2, 2, 39, Shape::DashedCircle});
    prune(c, params);
    REQUIRE(c.dashed.size() == 1);
    CHECK(c.dashed[0].shape == Shape::DashedCircle);
  }

  SUBCASE("supersets of a pruned itemset go too") {
    ItemsetCatalog c;
    seed_dashed(c, CountedItemset{0x3, 2, 2, 3, Shape::DashedCircle});
    seed_dashed(c, CountedItemset{0x7, 3, 2, 35, Shape::DashedCircle});
    seed_dashed(c, CountedItemset{0xB, 3, 1, 1, Shape::DashedCircle});
    seed_dashed(c, CountedItemset{0xC, 2, 2, 35, Shape::DashedCircle});
    seed_dashed(c, CountedItemset{0x13, 3, 2, 40, Shape::DashedCircle});
    testsupport::LifecycleAudit audit;
    EngineOptions opts;
    opts.on_transition = audit.observer();
    const auto out = prune(c, params, opts);
    CHECK(out.pruned == 3);
    CHECK(out.promoted == 1);
    REQUIRE(c.dashed.size() == 2);
    CHECK(find(c.dashed, 0xC)->shape == Shape::DashedCircle);
    // A superset that already reached the threshold is promoted, not pruned.
    CHECK(find(c.dashed, 0x13)->shape == Shape::DashedBox);
    CHECK(audit.illegal == 0);
    CHECK(audit.transitions == 4);
  }

  SUBCASE("disabled bound keeps the circle") {
    ItemsetCatalog c;
    seed_dashed(c, CountedItemset{0x3, 2, 2, 3, Shape::DashedCircle});
    EngineOptions opts;
    opts.prune_enabled = false;
    CHECK(prune(c, params, opts).pruned == 0);
    CHECK(c.dashed.size() == 1);
  }

  SUBCASE("boxes are never pruned") {
    ItemsetCatalog c;
    seed_dashed(c, CountedItemset{0x3, 2, 2, 3, Shape::DashedBox});
    prune(c, params);
    CHECK(c.dashed.size() == 1);
  }

  SUBCASE("parallel prune matches serial prune") {
    std::mt19937_64 rng(3);
    ItemsetCatalog a;
    for (int i = 0; i < 600; ++i) {
      const Mask64 m = rng() & 0x3FF;
      if (cardinality(m) < 2 || a.known_masks.contains(m)) continue;
      seed_dashed(a, CountedItemset{m, cardinality(m), static_cast<std::uint32_t>(1 + rng() % 4),
                                    rng() % 45, Shape::DashedCircle});
    }
    ItemsetCatalog b = a;
    prune(a, params);
    prune(b, params.with_threads(4));
    CHECK(a.dashed == b.dashed);
    CHECK(a.fresh_boxes == b.fresh_boxes);
  }
}

TEST_CASE("make_candidates") {
  SUBCASE("missing box subset blocks the join") {
    ItemsetCatalog c;
    for (Mask64 m : {0x1, 0x2, 0x3}) seed_box(c, m);
    c.frequent_items = 0x7;
    CHECK(make_candidates(c, CandidateScan::All) == 0);
    CHECK(c.dashed.empty());
  }
  SUBCASE("full box frontier yields the 3-candidate once") {
    ItemsetCatalog c;
    for (Mask64 m : {0x1, 0x2, 0x4, 0x3, 0x5, 0x6}) seed_box(c, m);
    c.frequent_items = 0x7;
    CHECK(make_candidates(c, CandidateScan::All) == 1);
    CHECK(make_candidates(c, CandidateScan::All) == 0);
    REQUIRE(c.dashed.size() == 1);
    CHECK(c.dashed[0].mask == 0x7);
    CHECK(c.dashed[0].shape == Shape::DashedCircle);
    CHECK(c.well_formed());
  }
  SUBCASE("no boxes, nothing changes") {
    ItemsetCatalog c;
    c.frequent_items = 0x7;
    CHECK(make_candidates(c, CandidateScan::All) == 0);
    CHECK(make_candidates(c) == 0);
    CHECK(c.dashed.empty());
  }
  SUBCASE("fresh frontier sees promotions from prune") {
    const auto params = MiningParams::make(0.5, 4, 2);
    ItemsetCatalog c;
    for (Mask64 m : {0x1, 0x2, 0x4, 0x3, 0x5}) seed_box(c, m);
    c.frequent_items = 0x7;
    seed_dashed(c, CountedItemset{0x6, 2, 1, 2, Shape::DashedCircle});
    prune(c, params);
    CHECK(make_candidates(c) == 1);
    CHECK(find(c.dashed, 0x7) != nullptr);
    CHECK(make_candidates(c) == 0);
  }
}

TEST_CASE("check_full_pass") {
  const auto params = MiningParams::make(0.5, 4, 2);
  REQUIRE(params.stop_max() == 2);
  REQUIRE(params.minsup_count() == 2);

  ItemsetCatalog c;
  seed_dashed(c, CountedItemset{0x3, 2, 2, 3, Shape::DashedBox});
  auto out = check_full_pass(c, params);
  CHECK(out.boxes == 1);
  CHECK(c.dashed.empty());
  REQUIRE(c.solid.size() == 1);
  CHECK(c.solid[0].shape == Shape::SolidBox);

  ItemsetCatalog d;
  seed_dashed(d, CountedItemset{0x3, 2, 2, 1, Shape::DashedCircle});
  out = check_full_pass(d, params);
  CHECK(out.circles == 1);
  CHECK(d.solid[0].shape == Shape::SolidCircle);

  ItemsetCatalog e;
  seed_dashed(e, CountedItemset{0x3, 2, 1, 1, Shape::DashedCircle});
  out = check_full_pass(e, params);
  CHECK(out.boxes + out.circles == 0);
  REQUIRE(e.dashed.size() == 1);
  CHECK(e.dashed[0] == CountedItemset{0x3, 2, 1, 1, Shape::DashedCircle});

  // A frequent circle that skipped prune still walks the legal edges.
  ItemsetCatalog f;
  seed_dashed(f, CountedItemset{0x3, 2, 2, 2, Shape::DashedCircle});
  testsupport::LifecycleAudit audit;
  EngineOptions opts;
  opts.on_transition = audit.observer();
  out = check_full_pass(f, params, opts);
  CHECK(out.boxes == 1);
  CHECK(audit.transitions == 2);
  CHECK(audit.illegal == 0);
}
