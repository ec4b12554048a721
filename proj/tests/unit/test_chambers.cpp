#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "doctest.h"
#include "rgit/chambers/chambers.hpp"
#include "rgit/common/errors.hpp"
#include "rgit/exactgeom/lp.hpp"
#include "support/generators.hpp"

using namespace rgit;
using namespace rgit::geom;
using namespace rgit::chambers;
using rgit::stability::all_set_partitions;
using rgit::testing::rats;

namespace {

// Independent strict-feasibility test for a full sign vector: maximize the
// smallest slack s with Delta box slack >= s and signed wall slacks >= s.
bool naive_feasible(int m, const std::vector<std::pair<Subset, int>>& sys) {
  const std::size_t w = static_cast<std::size_t>(m) + 1;
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < m; ++i) {
    QVec a(w), b(w);
    a[i] = 1;
    a[m] = -1;
    b[i] = -1;
    b[m] = -1;
    cons.push_back({a, Relation::GreaterEq, Rat(0)});
    cons.push_back({b, Relation::GreaterEq, Rat(-1)});
  }
  QVec sum(w);
  for (int i = 0; i < m; ++i) sum[i] = 1;
  cons.push_back({sum, Relation::Equal, Rat(2)});
  for (const auto& [j, s] : sys) {
    QVec a(w);
    for (int i : j) a[i] = s;
    a[m] = -1;
    cons.push_back({a, Relation::GreaterEq, Rat(s)});
  }
  QVec obj = QVec::unit(w, m);
  cons.push_back({obj, Relation::LessEq, Rat(1)});
  auto res = lp_maximize(obj, cons);
  return std::get<LpOptimal>(res).value.sign() > 0;
}

std::set<std::vector<int>> naive_chambers(int m) {
  const auto& rel = relevant_walls(m, 2);
  std::set<std::vector<int>> out;
  for (unsigned long mask = 0; mask < (1UL << rel.size()); ++mask) {
    std::vector<int> signs;
    std::vector<std::pair<Subset, int>> sys;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      int s = (mask >> k) & 1 ? 1 : -1;
      signs.push_back(s);
      sys.push_back({rel[k].J, s});
    }
    if (naive_feasible(m, sys)) out.insert(signs);
  }
  return out;
}

bool interior(const QVec& a) {
  for (const auto& x : a)
    if (x.sign() <= 0 || x >= Rat(1)) return false;
  return true;
}

// Points of the open chamber obtained by moving the witness toward random
// points of the hypersimplex until the signature is preserved.
std::vector<QVec> chamber_samples(const Chamber& c, std::mt19937& rng, int count) {
  std::vector<QVec> out;
  while (static_cast<int>(out.size()) < count) {
    QVec target = testing::random_delta_point(rng, c.signature.m, 2, 7);
    Rat step(1);
    for (int tries = 0; tries < 30; ++tries, step *= Rat(1, 2)) {
      QVec q = c.witness + (target - c.witness) * step;
      if (interior(q) && locate(WeightVector(q, 2)).signature == c.signature) {
        out.push_back(q);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("wall systems") {
  const auto& w4 = walls(4, 2);
  CHECK(w4.size() == 7);
  const auto& r4 = relevant_walls(4, 2);
  REQUIRE(r4.size() == 3);
  CHECK(r4[0].J == Subset{0, 1});
  CHECK(r4[1].J == Subset{0, 2});
  CHECK(r4[2].J == Subset{0, 3});
  int facets = 0;
  for (const auto& w : w4) {
    CHECK(w.d == 1);
    CHECK(w.J.front() == 0);
    facets += w.is_facet;
    CHECK(w.is_facet == (w.J.size() == 1 || w.J.size() == 3));
  }
  CHECK(facets == 4);

  CHECK(walls(5, 2).size() == 15);
  CHECK(relevant_walls(5, 2).size() == 10);
  for (const auto& w : relevant_walls(5, 2)) CHECK((w.J.size() == 2 || w.J.size() == 3));

  for (int m = 2; m <= 6; ++m) CHECK(walls(m, 1).empty());
  CHECK_THROWS_AS(walls(4, 4), InputError);
  CHECK_THROWS_AS(walls(4, 0), InputError);
}

TEST_CASE("relevance matches the combinatorial count") {
  for (int m = 3; m <= 7; ++m)
    for (int n = 2; n < m && n <= 4; ++n)
      for (const auto& w : walls(m, n)) {
        const int size = static_cast<int>(w.J.size());
        CHECK(w.is_relevant == (size > w.d && m - size > n - w.d));
      }
}

TEST_CASE("facet identification") {
  for (int m = 4; m <= 6; ++m) {
    auto delta = moment::hypersimplex(m, 2);
    std::set<Halfspace> facet_set(delta.facets().begin(), delta.facets().end());
    int upper = 0, lower = 0;
    for (const auto& f : delta.facets()) {
      // Each facet is alpha_i <= 1 or alpha_i >= 0, normal projected into the slice.
      int positive = 0;
      for (const auto& x : f.normal()) positive += x.sign() > 0;
      (positive == 1 ? upper : lower) += 1;
    }
    CHECK(upper == m);
    CHECK(lower == m);
    int facet_walls = 0;
    for (const auto& w : walls(m, 2)) {
      if (!w.is_facet) continue;
      ++facet_walls;
      // alpha_i = 1 for the singleton side; vertices on it form a simplex of m-1 points.
      int i = w.J.size() == 1 ? w.J[0] : -1;
      if (i < 0) {
        std::vector<bool> in(static_cast<std::size_t>(m), false);
        for (int j : w.J) in[j] = true;
        i = static_cast<int>(std::find(in.begin(), in.end(), false) - in.begin());
      }
      int on = 0;
      for (const auto& v : delta.vertices()) on += v[i] == Rat(1);
      CHECK(on == m - 1);
    }
    CHECK(facet_walls == m);
  }
}

TEST_CASE("locate examples") {
  auto center = locate(WeightVector(QVec::constant(4, Rat(1, 2)), 2));
  CHECK(center.on_walls.size() == 3);
  CHECK(center.signature.str() == "000");

  auto a = locate(WeightVector(rats({Rat(1, 6), Rat(1, 2), Rat(2, 3), Rat(2, 3)}), 2));
  CHECK(a.signature.str() == "---");
  CHECK(a.on_walls.empty());

  auto b = locate(WeightVector(rats({Rat(4, 5), Rat(2, 5), Rat(2, 5), Rat(2, 5)}), 2));
  CHECK(b.signature.str() == "+++");

  auto face = locate(WeightVector(rats({Rat(1), Rat(1, 3), Rat(1, 3), Rat(1, 3)}), 2));
  CHECK(face.on_boundary_walls.size() == 1);

  try {
    locate(WeightVector(rats({Rat(9, 8), Rat(1, 2), Rat(1, 8), Rat(1, 4)}), 2));
    FAIL("expected NotEffective");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::NotEffective);
  }
}

TEST_CASE("complement symmetry") {
  std::mt19937 rng(53);
  for (int t = 0; t < 50; ++t) {
    QVec a = testing::random_delta_point(rng, 5, 2, 6);
    for (const auto& w : relevant_walls(5, 2)) {
      Rat comp = -Rat(1);
      for (int i = 0; i < 5; ++i)
        if (!std::binary_search(w.J.begin(), w.J.end(), i)) comp += a[i];
      CHECK(comp == -w.value(a));
    }
  }
}

TEST_CASE("chamber enumeration agrees with the naive oracle") {
  for (int m = 4; m <= 5; ++m) {
    auto chambers = enumerate_chambers(m, 2);
    auto oracle = naive_chambers(m);
    std::set<std::vector<int>> got;
    for (const auto& c : chambers) got.insert(c.signature.signs);
    CHECK(got.size() == chambers.size());
    CHECK(got == oracle);
    for (const auto& c : chambers) {
      auto loc = locate(WeightVector(c.witness, 2));
      CHECK(loc.signature == c.signature);
      CHECK(loc.on_walls.empty());
      CHECK(interior(c.witness));
    }
  }
  CHECK(enumerate_chambers(4, 2).size() == 8);
  CHECK(enumerate_chambers(3, 2).size() == 1);
  CHECK_THROWS_AS(enumerate_chambers(8, 2), InputError);
  CHECK_THROWS_AS(enumerate_chambers(5, 3), InputError);
}

TEST_CASE("classification tables are constant on chambers") {
  std::mt19937 rng(59);
  for (int m = 4; m <= 5; ++m) {
    auto parts = all_set_partitions(m);
    for (const auto& c : enumerate_chambers(m, 2)) {
      REQUIRE(c.table.size() == parts.size());
      for (std::size_t k = 0; k < parts.size(); ++k)
        CHECK(c.table[k] == stability::sl2_classify(stability::ConfigurationP1(parts[k]), WeightVector(c.witness, 2)).cls);
      for (const auto& q : chamber_samples(c, rng, 10)) CHECK(classification_table(WeightVector(q, 2)) == c.table);
    }
  }
}

TEST_CASE("walls are exactly where strict semistability appears") {
  std::mt19937 rng(61);
  for (int m = 4; m <= 6; ++m) {
    auto parts = all_set_partitions(m);
    int on_wall = 0, off_wall = 0;
    for (int t = 0; t < 150; ++t) {
      QVec a = testing::random_delta_point(rng, m, 2, t % 2 ? 3 : 11);
      if (!interior(a)) continue;
      WeightVector w(a, 2);
      auto loc = locate(w);
      auto table = classification_table(w);
      bool any_sss = std::count(table.begin(), table.end(), StabilityClass::StrictlySemistable) > 0;
      CHECK(any_sss == !loc.on_walls.empty());
      for (const auto& wall : loc.on_walls) {
        auto p = stability::SetPartition::from_blocks(m, [&] {
          std::vector<Subset> blocks{wall.J};
          for (int i = 0; i < m; ++i)
            if (!std::binary_search(wall.J.begin(), wall.J.end(), i)) blocks.push_back({i});
          return blocks;
        }());
        CHECK(stability::sl2_class(p, w) == StabilityClass::StrictlySemistable);
      }
      (loc.on_walls.empty() ? off_wall : on_wall) += 1;
    }
    CHECK(on_wall > 0);
    CHECK(off_wall > 0);
  }
}

TEST_CASE("generic samples land in enumerated chambers") {
  std::mt19937 rng(67);
  auto chambers = enumerate_chambers(5, 2);
  std::set<ChamberSignature> sigs;
  for (const auto& c : chambers) sigs.insert(c.signature);
  int generic = 0;
  while (generic < 1000) {
    QVec a = testing::random_delta_point(rng, 5, 2, 97);
    if (!interior(a)) continue;
    auto loc = locate(WeightVector(a, 2));
    if (!loc.on_walls.empty()) continue;
    CHECK(sigs.count(loc.signature) == 1);
    ++generic;
  }
}

TEST_CASE("adjacency") {
  auto chambers = enumerate_chambers(5, 2);
  const auto& rel = relevant_walls(5, 2);
  int crossed = 0, blocked = 0;
  for (const auto& c : chambers)
    for (const auto& w : rel) {
      auto next = adjacent(c, w);
      if (!next) {
        ++blocked;
        continue;
      }
      ++crossed;
      auto back = adjacent(*next, w);
      REQUIRE(back);
      CHECK(back->signature == c.signature);
      CHECK(back->witness == c.witness);
    }
  CHECK(crossed > 0);
  CHECK(blocked > 0);

  auto c4 = enumerate_chambers(4, 2);
  auto minus = std::find_if(c4.begin(), c4.end(), [](const Chamber& c) { return c.signature.str() == "---"; });
  REQUIRE(minus != c4.end());
  auto flip = adjacent(*minus, relevant_walls(4, 2)[0]);
  REQUIRE(flip);
  CHECK(flip->signature.str() == "+--");

  const Wall& facet = walls(4, 2).front();
  CHECK(facet.is_facet);
  try {
    adjacent(*minus, facet);
    FAIL("expected NotRelevant");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::NotRelevant);
  }
}

TEST_CASE("enumeration is independent of the worker count") {
  setenv("RGIT_THREADS", "1", 1);
  auto one = enumerate_chambers(5, 2);
  setenv("RGIT_THREADS", "4", 1);
  auto four = enumerate_chambers(5, 2);
  unsetenv("RGIT_THREADS");
  REQUIRE(one.size() == four.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    CHECK(one[k].signature == four[k].signature);
    CHECK(one[k].witness == four[k].witness);
    CHECK(one[k].table == four[k].table);
  }
}
