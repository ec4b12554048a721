#include <algorithm>
#include <random>

#include "doctest.h"
#include "rgit/common/errors.hpp"
#include "rgit/exactgeom/polytope.hpp"
#include "rgit/relgit/relgit.hpp"
#include "support/generators.hpp"

using namespace rgit;
using namespace rgit::geom;
using namespace rgit::relgit;
using rgit::stability::all_set_partitions;
using rgit::testing::rats;

namespace {

using Cls = StabilityClass;

// Subset-sum class of a coincidence pattern: semistable iff every block weighs
// at most 1, stable iff every block weighs less than 1 and no weight vanishes.
Cls cluster(const SetPartition& p, const QVec& a) {
  bool tight = false;
  for (const auto& b : p.blocks()) {
    Rat s;
    for (int j : b) s += a[j];
    if (s > Rat(1)) return Cls::Unstable;
    if (s == Rat(1)) tight = true;
  }
  for (const auto& x : a) {
    if (x.sign() == 0) tight = true;
  }
  return tight ? Cls::StrictlySemistable : Cls::Stable;
}

// Restricted growth string of p with position i deleted.
std::vector<int> drop(const SetPartition& p, int i) {
  std::vector<int> rgs;
  std::vector<int> relabel(static_cast<std::size_t>(p.m()), -1);
  int next = 0;
  for (int j = 0; j < p.m(); ++j) {
    if (j == i) continue;
    int& r = relabel[static_cast<std::size_t>(p.block_of(j))];
    if (r < 0) r = next++;
    rgs.push_back(r);
  }
  return rgs;
}

bool generic(const QVec& a) {
  const int m = static_cast<int>(a.dim());
  for (const auto& x : a) {
    if (x.sign() <= 0 || x >= Rat(1)) return false;
  }
  for (unsigned long bits = 1; bits + 1 < (1UL << m); ++bits) {
    Rat s;
    for (int j = 0; j < m; ++j) {
      if (bits & (1UL << j)) s += a[j];
    }
    if (s == Rat(1)) return false;
  }
  return true;
}

QVec generic_point(std::mt19937& rng, int m) {
  while (true) {
    QVec a = testing::random_delta_point(rng, m, 2, 40);
    if (generic(a)) return a;
  }
}

QVec lift(const QVec& a, int i, const Rat& eps) {
  const int m = static_cast<int>(a.dim()) + 1;
  QVec out(static_cast<std::size_t>(m));
  for (int j = 0, s = 0; j < m; ++j) out[j] = j == i ? eps : a[s++] - eps / Rat(m - 1);
  return out;
}

// Least positive eps at which some block sum of the lift reaches 1 or an entry
// reaches 0, scanning every subset.
Rat threshold_oracle(const QVec& a, int i) {
  const int m = static_cast<int>(a.dim()) + 1;
  std::optional<Rat> best;
  auto offer = [&](const Rat& e) {
    if (e.sign() > 0 && (!best || e < *best)) best = e;
  };
  for (unsigned long bits = 1; bits + 1 < (1UL << m); ++bits) {
    Rat c0, c1;
    for (int j = 0, s = 0; j < m; ++j) {
      const bool in = bits & (1UL << j);
      if (j == i) {
        if (in) c1 += 1;
        continue;
      }
      if (in) {
        c0 += a[s];
        c1 -= Rat(1, m - 1);
      }
      ++s;
    }
    if (c1.sign() != 0) offer((Rat(1) - c0) / c1);
  }
  for (const auto& x : a) offer(x * Rat(m - 1));
  return *best;
}

std::vector<Cls> table(int m, const QVec& a) {
  std::vector<Cls> out;
  for (const auto& p : all_set_partitions(m)) out.push_back(cluster(p, a));
  return out;
}

}  // namespace

TEST_CASE("forgetful map at the three-point base") {
  const auto alpha = WeightVector(rats({Rat(2, 3), Rat(2, 3), Rat(2, 3)}), 2);
  CHECK(epsilon_threshold(alpha, 3) == Rat(1, 2));

  auto rep = forgetful_instance(4, 3, alpha, Rat(1, 4));
  CHECK(rep.lifted.alpha() == rats({Rat(7, 12), Rat(7, 12), Rat(7, 12), Rat(1, 4)}));
  CHECK(rep.equality_verified);
  CHECK(rep.violated_walls.empty());
  REQUIRE(rep.semistable.size() == 4);
  for (const auto& p : rep.semistable) {
    CHECK(!p.same_block(0, 1));
    CHECK(!p.same_block(0, 2));
    CHECK(!p.same_block(1, 2));
  }

  auto above = forgetful_instance(4, 3, alpha, Rat(3, 5));
  CHECK_FALSE(above.equality_verified);
  REQUIRE(above.violated_walls.size() == 3);
  for (const auto& w : above.violated_walls) {
    CHECK(w.is_relevant);
    CHECK(w.J.size() == 2);
    CHECK(w.d == 1);
  }
  auto at = forgetful_instance(4, 3, alpha, Rat(1, 2));
  CHECK_FALSE(at.equality_verified);
  CHECK(at.violated_walls.size() == 3);
}

TEST_CASE("threshold shrinks toward a base wall") {
  const auto far = WeightVector(rats({Rat(2, 3), Rat(2, 3), Rat(2, 3)}), 2);
  const auto near = WeightVector(rats({Rat(9, 10), Rat(1, 2), Rat(3, 5)}), 2);
  CHECK(epsilon_threshold(near, 3) < epsilon_threshold(far, 3));
  CHECK(epsilon_threshold(near, 3) == threshold_oracle(near.alpha(), 3));
}

TEST_CASE("forgetful equality below the threshold and failure above it") {
  std::mt19937 rng(11);
  for (int m : {4, 5}) {
    for (int i = 0; i < m; ++i) {
      for (int trial = 0; trial < 50; ++trial) {
        const QVec a = generic_point(rng, m - 1);
        const WeightVector alpha(a, 2);
        const Rat th = epsilon_threshold(alpha, i);
        REQUIRE(th == threshold_oracle(a, i));
        CHECK(th.sign() > 0);

        const auto base_parts = all_set_partitions(m - 1);
        const Rat eps = th * Rat(1 + static_cast<long>(rng() % 98), 100);
        auto rep = forgetful_instance(m, i, alpha, eps);
        CHECK(rep.equality_verified);
        CHECK(rep.violated_walls.empty());

        std::vector<SetPartition> pre, ss;
        for (const auto& p : all_set_partitions(m)) {
          auto img = std::find_if(base_parts.begin(), base_parts.end(),
                                  [&](const SetPartition& b) { return b.rgs() == drop(p, i); });
          REQUIRE(img != base_parts.end());
          if (cluster(*img, a) == Cls::Stable) pre.push_back(p);
          if (cluster(p, lift(a, i, eps)) != Cls::Unstable) ss.push_back(p);
        }
        CHECK(rep.preimage == pre);
        CHECK(rep.semistable == ss);

        auto at = forgetful_instance(m, i, alpha, th);
        CHECK_FALSE(at.equality_verified);
        REQUIRE_FALSE(at.violated_walls.empty());
        CHECK(at.violated_walls.front().value(at.lifted.alpha()).sign() == 0);
      }
    }
  }
}

TEST_CASE("m = 5 forgetful example") {
  const auto alpha = WeightVector(rats({Rat(3, 5), Rat(7, 10), Rat(1, 4), Rat(9, 20)}), 2);
  const Rat th = epsilon_threshold(alpha, 0);
  auto rep = forgetful_instance(5, 0, alpha, th / Rat(3));
  CHECK(rep.equality_verified);
  CHECK(rep.semistable == rep.preimage);
}

TEST_CASE("wall bases are rejected") {
  const auto wall = WeightVector(rats({Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)}), 2);
  CHECK_THROWS_AS(epsilon_threshold(wall, 0), DomainError);
  try {
    forgetful_instance(5, 2, wall, Rat(1, 10));
    FAIL("expected WallBase");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::WallBase);
  }
  const auto face = WeightVector(rats({Rat(1), Rat(1, 2), Rat(1, 2)}), 2);
  CHECK_THROWS_AS(epsilon_threshold(face, 3), DomainError);
  CHECK_THROWS_AS(forgetful_instance(4, 3, WeightVector(rats({Rat(2, 3), Rat(2, 3), Rat(2, 3)}), 2), Rat(0)),
                  InputError);
}

TEST_CASE("limit mode matches finite mode from the reported n0") {
  std::mt19937 rng(5);
  for (int m : {4, 5}) {
    for (int i = 0; i < m; ++i) {
      for (int trial = 0; trial < 10; ++trial) {
        const QVec a = generic_point(rng, m - 1);
        const WeightVector alpha(a, 2);
        const Rat mu(1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 2));
        auto model = forgetful_model(alpha, i, mu);
        REQUIRE(model.stable_from);
        const long n0 = *model.stable_from;
        const auto limit = relative_classify(model, {Limit{}});
        CHECK(limit.contract == Contract::Limit);

        // Direct evaluation of pi^*L^n (x) M: weight n*alpha on kept points, mu on point i.
        auto direct = [&](long n) {
          QVec k(static_cast<std::size_t>(m));
          for (int j = 0, s = 0; j < m; ++j) k[j] = j == i ? mu : a[s++] * Rat(n);
          Rat tot;
          for (const auto& x : k) tot += x;
          return table(m, k * (Rat(2) / tot));
        };
        std::vector<Cls> lim;
        for (const auto& v : limit.points) lim.push_back(*v.cls);
        const long top = n0 + 40;
        long least = top;
        while (least > 1 && direct(least - 1) == lim) --least;
        CHECK(direct(top) == lim);
        CHECK(least == n0);
        for (long n = n0; n < n0 + 5; ++n) {
          auto fin = relative_classify(model, {Finite{n}});
          CHECK(fin.contract == Contract::Equality);
          std::vector<Cls> got;
          for (const auto& v : fin.points) got.push_back(*v.cls);
          CHECK(got == lim);
        }
      }
    }
  }
}

TEST_CASE("boundary ambiguity exactly on walls") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const QVec a = testing::random_delta_point(rng, 4, 2, 4);
    bool on_wall = !generic(a);
    const WeightVector alpha(a, 2);
    auto model = forgetful_model(alpha, static_cast<int>(rng() % 5));
    bool threw = false;
    try {
      relative_classify(model, {Limit{}});
    } catch (const DomainError& e) {
      threw = e.kind() == ErrorKind::BoundaryAmbiguous;
    }
    CHECK(threw == on_wall);
  }
}

TEST_CASE("inclusion contract holds on walls") {
  const auto alpha = WeightVector(rats({Rat(1, 2), Rat(1, 2), Rat(3, 5), Rat(2, 5)}), 2);
  auto model = forgetful_model(alpha, 2);
  const long n0 = *model.stable_from;
  for (long n : {n0, n0 + 1, n0 + 7}) {
    auto v = relative_classify(model, {Finite{n}});
    CHECK(v.contract == Contract::InclusionOnly);
    for (const auto& p : v.points) {
      const bool fiber_ss = p.fiber_class != Cls::Unstable;
      const bool base_ss = p.base_class != Cls::Unstable;
      if (*p.cls != Cls::Unstable) CHECK((fiber_ss && base_ss));
      if (p.fiber_class == Cls::Stable && p.base_class == Cls::Stable) CHECK(*p.cls == Cls::Stable);
    }
  }

  auto combinatorial = model;
  combinatorial.total_oracle = nullptr;
  auto v = relative_classify(combinatorial, {Finite{3}});
  CHECK_FALSE(v.undetermined().empty());
  for (const auto& p : v.points) {
    if (!p.cls) {
      CHECK(p.base_class == Cls::StrictlySemistable);
      CHECK(p.fiber_class != Cls::Unstable);
    }
  }
}

TEST_CASE("trivial and rejecting fiber oracles") {
  const auto alpha = WeightVector(rats({Rat(3, 5), Rat(7, 10), Rat(1, 4), Rat(9, 20)}), 2);
  auto model = forgetful_model(alpha, 4);
  model.total_oracle = nullptr;
  auto v = relative_classify(model, {Finite{2}});
  std::vector<int> pre;
  for (int y = 0; y < model.total_count; ++y) {
    if (model.base_oracle(model.projection[static_cast<std::size_t>(y)]) == Cls::Stable) pre.push_back(y);
  }
  CHECK(v.semistable() == pre);
  CHECK(v.stable() == pre);

  model.fiber_oracle = [](int) { return Cls::Unstable; };
  CHECK(relative_classify(model, {Finite{2}}).semistable().empty());
  CHECK(relative_classify(model, {Finite{50}}).semistable().empty());
}

TEST_CASE("product action agrees with the product polytope") {
  std::mt19937 rng(21);
  // Fiber factor: torus orbits in the plane, each the hull of a few characters.
  std::vector<Polytope> orbits;
  std::vector<Cls> fiber;
  const QVec mu0 = rats({Rat(0), Rat(0)});
  std::uniform_int_distribution<long> coord(-2, 2);
  for (int k = 0; k < 6; ++k) {
    std::vector<QVec> pts;
    for (int p = 0; p < 3; ++p) pts.push_back(testing::ints({coord(rng), coord(rng)}));
    orbits.push_back(convex_hull(pts));
    fiber.push_back(stability::torus_classify(orbits.back(), mu0).cls);
  }
  // Base factor: coincidence patterns of 4 points at a wall-free weight, via
  // their matroid polytopes.
  const QVec a = rats({Rat(3, 5), Rat(7, 10), Rat(1, 4), Rat(9, 20)});
  std::vector<SetPartition> parts;
  for (const auto& p : all_set_partitions(4)) {
    if (p.block_count() > 1) parts.push_back(p);
  }
  std::vector<Polytope> base_polys;
  std::vector<Cls> base;
  for (const auto& p : parts) {
    base_polys.push_back(moment::matroid_polytope(moment::plucker(stability::ConfigurationP1(p).matrix())));
    base.push_back(stability::torus_classify(base_polys.back(), a, 3).cls);
  }

  auto model = product_model(fiber, base);
  auto v = relative_classify(model, {Finite{4}});
  CHECK(v.contract == Contract::Equality);
  const QVec mu = rats({Rat(0), Rat(0), a[0], a[1], a[2], a[3]});
  for (int y = 0; y < model.total_count; ++y) {
    const auto& f = orbits[static_cast<std::size_t>(y) / parts.size()];
    const auto& b = base_polys[static_cast<std::size_t>(y) % parts.size()];
    std::vector<QVec> pts;
    for (const auto& u : f.vertices()) {
      for (const auto& w : b.vertices()) {
        QVec c(6);
        c[0] = u[0];
        c[1] = u[1];
        for (int j = 0; j < 4; ++j) c[2 + j] = w[j];
        pts.push_back(c);
      }
    }
    const Cls expect = stability::torus_classify(convex_hull(pts), mu, 5).cls;
    CHECK(*v.points[static_cast<std::size_t>(y)].cls == expect);
  }
}

TEST_CASE("trivial base recovers the fiber oracle") {
  FiberedModel model;
  model.base_count = 1;
  model.total_count = 15;
  model.projection.assign(15, 0);
  const auto parts = all_set_partitions(4);
  const QVec a = rats({Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)});
  model.base_oracle = [](int) { return Cls::Stable; };
  model.fiber_oracle = [&](int y) { return cluster(parts[static_cast<std::size_t>(y)], a); };
  auto v = relative_classify(model, {Finite{1}});
  for (int y = 0; y < 15; ++y) CHECK(*v.points[static_cast<std::size_t>(y)].cls == model.fiber_oracle(y));
  auto lim = relative_classify(model, {Limit{}});
  CHECK(lim.semistable().size() == 15);
}

TEST_CASE("model validation") {
  FiberedModel model;
  model.base_count = 2;
  model.total_count = 2;
  model.projection = {0, 0};
  model.base_oracle = [](int) { return Cls::Stable; };
  model.fiber_oracle = [](int) { return Cls::Stable; };
  CHECK_THROWS_AS(relative_classify(model, {Limit{}}), InputError);
  model.projection = {0, 1};
  CHECK_NOTHROW(relative_classify(model, {Limit{}}));
  CHECK_THROWS_AS(relative_classify(model, {Finite{0}}), InputError);
}

TEST_CASE("facet weights collapse every partition") {
  const auto alpha = WeightVector(rats({Rat(1, 3), Rat(1, 3), Rat(1, 3), Rat(1)}), 2);
  auto rep = facet_instance(4, 3, alpha);
  REQUIRE(rep.partitions.size() == 15);
  CHECK(rep.no_stable);
  CHECK(rep.coincident_unstable);
  CHECK(rep.table.back() == Cls::StrictlySemistable);
  const auto joined = std::find(rep.partitions.begin(), rep.partitions.end(), SetPartition::parse("14|2|3"));
  REQUIRE(joined != rep.partitions.end());
  CHECK(rep.table[static_cast<std::size_t>(joined - rep.partitions.begin())] == Cls::Unstable);

  std::mt19937 rng(3);
  for (int m : {4, 5}) {
    for (int i = 0; i < m; ++i) {
      for (int trial = 0; trial < 10; ++trial) {
        QVec rest = testing::random_delta_point(rng, m - 1, 1, 20);
        bool inside = true;
        for (const auto& x : rest) inside &= x.sign() > 0;
        if (!inside) continue;
        QVec a(static_cast<std::size_t>(m));
        for (int j = 0, s = 0; j < m; ++j) a[j] = j == i ? Rat(1) : rest[s++];
        auto r = facet_instance(m, i, WeightVector(a, 2));
        CHECK(r.table == table(m, a));
        CHECK(r.no_stable);
        CHECK(r.coincident_unstable);
      }
    }
  }
  CHECK_THROWS_AS(facet_instance(4, 0, alpha), InputError);
}
