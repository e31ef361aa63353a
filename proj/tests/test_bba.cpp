#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "support.hpp"

using namespace evfusion;
using evtest::small_lattice;

namespace {

MassAssignment two_atom_bba(const Lattice& ps, double on_a, double on_b,
                            double on_top = 0.0) {
  MassAssignment bba(ps);
  if (on_a > 0) bba = add_mass(bba, ps.atom(0), on_a);
  if (on_b > 0) bba = add_mass(bba, ps.atom(1), on_b);
  if (on_top > 0) bba = add_mass(bba, disj(ps.atom(0), ps.atom(1)), on_top);
  return bba;
}

}  // namespace

TEST_CASE("add_mass accumulates and prunes") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  auto bba = add_mass(MassAssignment(ps), ps.atom(0), 0.6);
  bba = add_mass(bba, ps.atom(0), 0.1);
  CHECK(bba.mass(ps.atom(0)) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(bba.focal_count() == 1);

  CHECK_THROWS_AS(add_mass(bba, ps.zero(), 0.2), ContradictionError);
  CHECK_THROWS_AS(add_mass(bba, ps.atom(1), -0.1), DomainError);

  const auto unchanged = add_mass(bba, ps.atom(1), 0.0);
  CHECK(unchanged.focal_count() == 1);

  auto other = small_lattice(LatticeKind::Powerset, 2);
  CHECK_THROWS_AS(add_mass(bba, other.atom(0), 0.1), ContextMismatchError);
}

TEST_CASE("normalize") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  const auto even = normalize(two_atom_bba(ps, 0.5, 0.5));
  CHECK(even.mass(ps.atom(0)) == 0.5);
  CHECK(even.mass(ps.atom(1)) == 0.5);

  const auto scaled = normalize(two_atom_bba(ps, 2.0, 0.0));
  CHECK(scaled.mass(ps.atom(0)) == 1.0);

  const auto proportional = normalize(two_atom_bba(ps, 1.0, 3.0));
  CHECK(proportional.mass(ps.atom(0)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(proportional.mass(ps.atom(1)) == doctest::Approx(0.75).epsilon(1e-12));

  CHECK_THROWS_AS(normalize(MassAssignment(ps)), DomainError);
}

TEST_CASE("relax merges the two lightest focals into their disjunction") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  const auto A = ps.atom(0);
  const auto B = ps.atom(1);
  const auto top = disj(A, B);

  const auto under_cap = relax(normalize(two_atom_bba(ps, 0.6, 0.4)), 2);
  CHECK(under_cap.focal_count() == 2);
  CHECK(under_cap.mass(A) == doctest::Approx(0.6).epsilon(1e-12));

  // {A:0.5, B:0.3, top:0.2} -> B and top merge into top.
  const auto merged = relax(normalize(two_atom_bba(ps, 0.5, 0.3, 0.2)), 2);
  CHECK(merged.focal_count() == 2);
  CHECK(merged.mass(A) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(merged.mass(top) == doctest::Approx(0.5).epsilon(1e-12));

  const auto collapsed = relax(normalize(two_atom_bba(ps, 0.5, 0.3, 0.2)), 1);
  CHECK(collapsed.focal_count() == 1);
  CHECK(collapsed.mass(top) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(relax(under_cap, 0), DomainError);
  CHECK_THROWS_AS(relax(two_atom_bba(ps, 0.4, 0.4), 1), DomainError);
}

TEST_CASE("relax preserves mass and only coarsens") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto kind =
        all_lattice_kinds()[rng() % all_lattice_kinds().size()];
    auto lattice = small_lattice(kind, 1 + rng() % 3);
    const auto bba = evtest::random_bba(lattice, rng, 4);
    const std::size_t cap = 1 + rng() % 3;
    const auto coarse = relax(bba, cap);
    CHECK(coarse.focal_count() <= cap);
    CHECK(coarse.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    // Each original focal sits under one survivor that carries at least
    // its mass (a single relax moves whole entries).
    for (const auto& [prop, mass] : bba.entries()) {
      bool covered = false;
      for (const auto& [survivor, survivor_mass] : coarse.entries())
        if (leq(prop, survivor) && survivor_mass >= mass - 1e-12) covered = true;
      CHECK(covered);
    }
  }
}

TEST_CASE("sample_focal") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  const auto degenerate = normalize(two_atom_bba(ps, 1.0, 0.0));
  RandomStream rng(1);
  for (int i = 0; i < 20; ++i)
    CHECK(sample_focal(degenerate, rng) == ps.atom(0));

  CHECK_THROWS_AS(sample_focal(two_atom_bba(ps, 0.4, 0.4), rng), DomainError);

  // Empirical frequency against the law of large numbers, fixed seed.
  const auto biased = normalize(two_atom_bba(ps, 0.7, 0.3));
  RandomStream sampler(20260808);
  int hits = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    if (sample_focal(biased, sampler) == ps.atom(0)) ++hits;
  CHECK(std::abs(static_cast<double>(hits) / draws - 0.7) <= 0.01);

  // Tighter convergence over a long fixed-seed run, on every focal.
  const auto spread = normalize(two_atom_bba(ps, 0.5, 0.2, 0.3));
  RandomStream long_run(424242);
  std::map<Proposition, int, PropositionLess> counts;
  const int long_draws = 1000000;
  for (int i = 0; i < long_draws; ++i) ++counts[sample_focal(spread, long_run)];
  for (const auto& [prop, mass] : spread.entries())
    CHECK(std::abs(static_cast<double>(counts[prop]) / long_draws - mass) <=
          0.002);

  // Same seed, same draw sequence.
  RandomStream first(99), second(99);
  for (int i = 0; i < 200; ++i)
    CHECK(sample_focal(biased, first) == sample_focal(biased, second));
}

TEST_CASE("focal iteration follows canonical key order") {
  auto ps = small_lattice(LatticeKind::Powerset, 3);
  std::mt19937_64 rng(5);
  const auto bba = evtest::random_bba(ps, rng, 4);
  std::string previous;
  for (const auto& [prop, mass] : bba.entries()) {
    const std::string key = canonical_key(prop);
    CHECK(previous < key);
    previous = key;
    CHECK(mass > 0.0);
  }
}
