#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"

using namespace evfusion;
using evtest::small_lattice;

TEST_CASE("minterm space sizes per kind") {
  CHECK(small_lattice(LatticeKind::Powerset, 2).minterm_count() == 2);
  CHECK(small_lattice(LatticeKind::FreeBoolean, 2).minterm_count() == 4);
  CHECK(small_lattice(LatticeKind::Superpowerset, 3).minterm_count() == 7);
  CHECK(small_lattice(LatticeKind::OpenHyperpowerset, 2).minterm_count() == 3);
  CHECK(small_lattice(LatticeKind::ClosedHyperpowerset, 3).minterm_count() == 7);
}

TEST_CASE("frame validation") {
  CHECK_THROWS_AS(FrameSpec({}), DomainError);
  CHECK_THROWS_AS(FrameSpec({"a", "a"}), DomainError);
  CHECK_THROWS_AS(FrameSpec({"2bad"}), DomainError);
  CHECK_THROWS_AS(FrameSpec({""}), DomainError);
  CHECK_NOTHROW(FrameSpec({"theta_1", "_x9"}));
}

TEST_CASE("representation caps") {
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("x" + std::to_string(i));
  CHECK_THROWS_AS(make_lattice(LatticeKind::FreeBoolean, FrameSpec(many)),
                  CapacityError);
  CHECK_THROWS_AS(make_lattice(LatticeKind::Superpowerset, FrameSpec(many)),
                  CapacityError);
  // The powerset minterm space is linear in the atom count, so the same
  // frame is fine there; its own cap is one machine word of atoms.
  CHECK_NOTHROW(make_lattice(LatticeKind::Powerset, FrameSpec(many)));
  std::vector<std::string> word_plus_one;
  for (int i = 0; i < 65; ++i) word_plus_one.push_back("y" + std::to_string(i));
  CHECK_THROWS_AS(make_lattice(LatticeKind::Powerset, FrameSpec(word_plus_one)),
                  CapacityError);
}

TEST_CASE("atoms per kind") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  CHECK(ps.atom(0).minterms().test(0));
  CHECK_FALSE(ps.atom(0).minterms().test(1));

  auto fb = small_lattice(LatticeKind::FreeBoolean, 2);
  // Atom a holds exactly the minterms whose subset contains a: {a}, {a,b}.
  const auto a = fb.atom(0).minterms();
  CHECK(a.count() == 2);
  CHECK(a.test(fb.minterm_index(0b01)));
  CHECK(a.test(fb.minterm_index(0b11)));

  auto oh = small_lattice(LatticeKind::OpenHyperpowerset, 2);
  const auto b = oh.atom(1).minterms();
  CHECK(b.count() == 2);
  CHECK(b.test(oh.minterm_index(0b10)));
  CHECK(b.test(oh.minterm_index(0b11)));
  CHECK(oh.is_member(b));

  CHECK_THROWS_AS(ps.atom(2), DomainError);
}

TEST_CASE("conj, disj, complement basics") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  const auto A = ps.atom(0);
  const auto B = ps.atom(1);
  const auto AB = disj(A, B);

  CHECK(conj(A, AB) == A);
  CHECK(conj(A, B).is_zero());
  CHECK(disj(A, ps.zero()) == A);
  CHECK(complement(A) == B);

  auto fb = small_lattice(LatticeKind::FreeBoolean, 2);
  const auto fa = fb.atom(0);
  const auto fbm = fb.atom(1);
  const auto meet = conj(fa, fbm);
  CHECK_FALSE(meet.is_zero());
  CHECK(meet.minterms().count() == 1);
  CHECK(meet.minterms().test(fb.minterm_index(0b11)));
  // NOT of {m_a, m_ab} leaves {m_empty, m_b}.
  const auto neg = complement(fa);
  CHECK(neg.minterms().count() == 2);
  CHECK(neg.minterms().test(fb.minterm_index(0b00)));
  CHECK(neg.minterms().test(fb.minterm_index(0b10)));

  auto ch = small_lattice(LatticeKind::ClosedHyperpowerset, 2);
  CHECK_THROWS_AS(complement(ch.atom(0)), UnsupportedOperationError);

  auto oh = small_lattice(LatticeKind::OpenHyperpowerset, 2);
  const auto oa = oh.atom(0);
  const auto ob = oh.atom(1);
  CHECK(disj(conj(oa, ob), oa) == oa);  // absorption

  auto other = small_lattice(LatticeKind::Powerset, 2);
  CHECK_THROWS_AS(conj(ps.atom(0), other.atom(0)), ContextMismatchError);
}

TEST_CASE("leq is the lattice order") {
  auto ps = small_lattice(LatticeKind::Powerset, 2);
  const auto A = ps.atom(0);
  const auto B = ps.atom(1);
  CHECK(leq(ps.zero(), A));
  CHECK(leq(ps.zero(), ps.zero()));
  CHECK(leq(A, disj(A, B)));
  CHECK_FALSE(leq(A, B));

  std::mt19937_64 rng(7);
  for (LatticeKind kind : all_lattice_kinds()) {
    auto lattice = small_lattice(kind, 3);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = evtest::random_proposition(lattice, rng);
      const auto y = evtest::random_proposition(lattice, rng);
      CHECK(leq(x, y) == (conj(x, y) == x));
      CHECK(leq(x, y) == (disj(x, y) == y));
    }
  }
}

TEST_CASE("canonical keys are injective and order zero first") {
  auto ps = small_lattice(LatticeKind::Powerset, 3);
  const auto elements = enumerate_elements(ps);
  std::set<std::string> keys;
  for (const auto& element : elements) keys.insert(canonical_key(element));
  CHECK(keys.size() == elements.size());
  const std::string zero_key = canonical_key(ps.zero());
  for (const auto& element : elements)
    if (!element.is_zero()) CHECK(zero_key < canonical_key(element));

  // Sorting by key is the enumeration order and is reproducible.
  auto shuffled = elements;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(3));
  std::sort(shuffled.begin(), shuffled.end(), PropositionLess{});
  for (std::size_t i = 0; i < elements.size(); ++i)
    CHECK(shuffled[i] == elements[i]);
}

TEST_CASE("enumeration counts match the closed forms") {
  CHECK(enumerate_elements(small_lattice(LatticeKind::Powerset, 2)).size() == 4);
  CHECK(enumerate_elements(small_lattice(LatticeKind::Powerset, 3)).size() == 8);
  CHECK(enumerate_elements(small_lattice(LatticeKind::FreeBoolean, 2)).size() == 16);
  CHECK(enumerate_elements(small_lattice(LatticeKind::FreeBoolean, 3)).size() == 256);
  CHECK(enumerate_elements(small_lattice(LatticeKind::Superpowerset, 2)).size() == 8);
  CHECK(enumerate_elements(small_lattice(LatticeKind::Superpowerset, 3)).size() == 128);
}

TEST_CASE("hyperpowerset enumeration matches the brute-force up-set counter") {
  const std::size_t open_expected[] = {1, 4, 18, 166};
  for (std::size_t n = 1; n <= 4; ++n) {
    auto open = small_lattice(LatticeKind::OpenHyperpowerset, n);
    auto closed = small_lattice(LatticeKind::ClosedHyperpowerset, n);
    const auto open_size = enumerate_elements(open).size();
    const auto closed_size = enumerate_elements(closed).size();
    CHECK(open_size == evtest::count_up_sets_brute_force(open, false));
    CHECK(closed_size == evtest::count_up_sets_brute_force(closed, true));
    CHECK(open_size == open_expected[n - 1]);
    CHECK(closed_size == open_expected[n - 1] + 1);
  }
}

TEST_CASE("open hyperpowerset excludes zero, closed includes it") {
  auto open = small_lattice(LatticeKind::OpenHyperpowerset, 2);
  auto closed = small_lattice(LatticeKind::ClosedHyperpowerset, 2);
  for (const auto& element : enumerate_elements(open)) CHECK_FALSE(element.is_zero());
  const auto closed_elements = enumerate_elements(closed);
  CHECK(std::any_of(closed_elements.begin(), closed_elements.end(),
                    [](const Proposition& p) { return p.is_zero(); }));
  CHECK_FALSE(open.is_member(BitVec(open.minterm_count())));
  CHECK(closed.is_member(BitVec(closed.minterm_count())));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(
      enumerate_elements(small_lattice(LatticeKind::FreeBoolean, 3), 100),
      CapacityError);
}

TEST_CASE("lattice laws hold exhaustively on small frames") {
  for (LatticeKind kind : all_lattice_kinds()) {
    auto lattice = small_lattice(kind, 2);
    const auto elements = enumerate_elements(lattice);
    for (const auto& x : elements) {
      CHECK(conj(x, x) == x);
      CHECK(disj(x, x) == x);
      for (const auto& y : elements) {
        CHECK(conj(x, y) == conj(y, x));
        CHECK(disj(x, y) == disj(y, x));
        CHECK(conj(x, disj(x, y)) == x);
        CHECK(disj(x, conj(x, y)) == x);
        for (const auto& z : elements) {
          CHECK(conj(conj(x, y), z) == conj(x, conj(y, z)));
          CHECK(disj(disj(x, y), z) == disj(x, disj(y, z)));
          CHECK(conj(x, disj(y, z)) == disj(conj(x, y), conj(x, z)));
        }
      }
    }
    if (lattice.is_complemented()) {
      for (const auto& x : elements) {
        CHECK(conj(x, complement(x)).is_zero());
        CHECK(disj(x, complement(x)).is_one());
        for (const auto& y : elements)
          CHECK(complement(conj(x, y)) == disj(complement(x), complement(y)));
      }
    }
    if (lattice.is_hyper()) {
      for (const auto& x : elements)
        for (const auto& y : elements) {
          CHECK((lattice.is_member(conj(x, y).minterms()) ||
                 (kind == LatticeKind::OpenHyperpowerset &&
                  conj(x, y).is_zero())));
          CHECK(lattice.is_member(disj(x, y).minterms()));
        }
    }
  }
}

TEST_CASE("from_minterms validates membership") {
  auto oh = small_lattice(LatticeKind::OpenHyperpowerset, 2);
  BitVec not_closed(oh.minterm_count());
  not_closed.set(oh.minterm_index(0b01));  // {a} without {a,b}
  CHECK_THROWS_AS(oh.from_minterms(not_closed), DomainError);
  CHECK(oh.from_minterms(oh.upward_closure(not_closed)) == oh.atom(0));
}
