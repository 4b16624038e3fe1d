#include <doctest.h>

#include <bit>

#include "corpus_fixture.hpp"
#include "qs/error.hpp"
#include "qs/homology.hpp"

using namespace qs;

namespace {

HomClass hc(std::vector<int> mult) { return HomClass{std::move(mult)}; }

}  // namespace

TEST_CASE("build_summand on the single square") {
  const ArcDiagram d = test::square();
  const HomSummand sum = build_summand(d, 1, 1, hc({}));
  REQUIRE(sum.size() == 1);
  REQUIRE(sum.graded_basis.count(0) == 1);
  CHECK(sum.boundary.at(0).rows() == 0);
  CHECK(homology_dims(sum) == std::map<int, int>{{0, 1}});

  const HomSummand empty = build_summand(d, 1, 0, hc({}));
  CHECK(empty.size() == 0);
  CHECK(homology_dims(empty).empty());

  int total = 0;
  for (const auto& [key, s] : all_summands(d)) total += total_dim(homology_dims(s));
  CHECK(total == 2);
}

TEST_CASE("summands partition the basis and square to zero") {
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    std::size_t basis = 0;
    for (int i = 0; i <= d.num_pairs(); ++i) basis += enumerate_basis(d, i).size();
    std::size_t in_summands = 0;
    for (const auto& [key, sum] : all_summands(d)) {
      in_summands += sum.size();
      CHECK(std::popcount(key.s) == std::popcount(key.t));
      for (const auto& [deg, m] : sum.boundary) {
        auto below = sum.boundary.find(deg - 2);
        if (below == sum.boundary.end() || m.rows() == 0) continue;
        CHECK(gf2_multiply(below->second, m).is_zero());
      }
    }
    CHECK(in_summands == basis);
  }
}

TEST_CASE("local case examples") {
  const ArcDiagram d = test::punctured_torus();
  // Label 1 sits at places 1 and 3, label 2 at 2 and 4.
  auto c = local_case(d, hc({0, 0, 0}), 0, 0, 1);
  REQUIRE(c);
  CHECK(*c == LocalCase{PlaceClass::Out, PlaceClass::Out, Membership::Neither});

  c = local_case(d, hc({1, 1, 0}), 1, 1, 1);
  REQUIRE(c);
  CHECK(*c == LocalCase{PlaceClass::NegBdy, PlaceClass::PosBdy, Membership::Both});

  for (LabelMask s = 0; s < 4; ++s)
    for (LabelMask t = 0; t < 4; ++t) {
      const auto both_pos = classify_local(d, hc({1, 0, 1}), s, t, 2);
      CHECK(both_pos.v_class == PlaceClass::PosBdy);
      CHECK(both_pos.w_class == PlaceClass::PosBdy);
      CHECK_FALSE(local_case(d, hc({1, 0, 1}), s, t, 2));
    }
  CHECK_FALSE(local_case(d, hc({2, 0, 0}), 0, 0, 1));
  CHECK(to_string(PlaceClass::NegBdy) == "neg_bdy");
  CHECK(to_string(Membership::StartOnly) == "start_only");
}

TEST_CASE("summand_nonzero on idempotent gradings") {
  for (const auto& d : test::corpus()) {
    const HomClass zero = hc(std::vector<int>(d.num_interior_steps(), 0));
    const LabelMask n = LabelMask{1} << d.num_pairs();
    for (LabelMask s = 0; s < n; ++s)
      for (LabelMask t = 0; t < n; ++t) CHECK(summand_nonzero(d, s, t, zero) == (s == t));
  }
}

TEST_CASE("homology is one-dimensional exactly on the local table") {
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    const auto summands = all_summands(d);
    for (const auto& [key, sum] : summands) {
      const auto dims = homology_dims(sum);
      CHECK(dims.size() <= 1);
      CHECK(total_dim(dims) <= 1);
      CHECK(summand_nonzero(d, key) == (total_dim(dims) == 1));
    }
    // Triples with no generators at all must be ruled out by the table.
    const int interior = d.num_interior_steps();
    const LabelMask n = LabelMask{1} << d.num_pairs();
    for (LabelMask s = 0; s < n; ++s)
      for (LabelMask t = 0; t < n; ++t)
        for (InteriorMask u = 0; u < (InteriorMask{1} << interior); ++u) {
          HomClass h = hc(std::vector<int>(interior, 0));
          for (int i = 0; i < interior; ++i) h.mult[i] = (u >> i) & 1u;
          if (!summands.count(SummandKey{s, t, h})) CHECK_FALSE(summand_nonzero(d, s, t, h));
        }
  }
}

TEST_CASE("crossingless generators represent the homology class") {
  int interior_both = 0;
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    for (const auto& [key, sum] : all_summands(d)) {
      if (!summand_nonzero(d, key)) continue;
      const auto gens = crossingless_generators(d, sum);
      REQUIRE_FALSE(gens.empty());
      for (const auto& g : gens) CHECK_FALSE(is_boundary(sum, SymElement{g}));
      for (std::size_t i = 1; i < gens.size(); ++i) CHECK(is_boundary(sum, SymElement{gens[0], gens[i]}));
      for (Label m = 1; m <= d.num_pairs(); ++m) {
        const auto c = local_case(d, key.h, key.s, key.t, m);
        if (c && c->v_class == PlaceClass::Interior && c->w_class == PlaceClass::Interior &&
            c->membership == Membership::Both) {
          ++interior_both;
          CHECK(gens.size() >= 2);
        }
      }
    }
  }
  CHECK(interior_both > 0);
}

TEST_CASE("is_boundary") {
  const ArcDiagram d = test::punctured_torus();
  for (const auto& [key, sum] : all_summands(d)) {
    CHECK(is_boundary(sum, SymElement{}));
    for (const auto& [deg, gens] : sum.graded_basis) {
      for (const auto& g : gens) {
        const SymElement dg = diff_generator(d, g);
        CHECK(is_boundary(sum, dg));
        if (!dg.empty()) CHECK_THROWS_AS(is_boundary(sum, SymElement{g}), NotACycle);
      }
    }
    const auto rep = homology_representative(sum);
    CHECK(rep.has_value() == (total_dim(homology_dims(sum)) > 0));
    if (rep) CHECK_FALSE(is_boundary(sum, *rep));
  }
  const HomSummand idem = build_summand(d, 1, 1, hc({0, 0, 0}));
  CHECK_THROWS_AS(is_boundary(idem, SymElement{idempotent_generator(2)}), std::invalid_argument);
}

TEST_CASE("ring_product") {
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    std::vector<SummandKey> gens;
    for (const auto& [key, sum] : all_summands(d))
      if (summand_nonzero(d, key)) gens.push_back(key);
    const HomClass zero = hc(std::vector<int>(d.num_interior_steps(), 0));
    for (const auto& a : gens) {
      CHECK(ring_product(d, a, SummandKey{a.t, a.t, zero}) == a);
      CHECK(ring_product(d, SummandKey{a.s, a.s, zero}, a) == a);
      for (const auto& b : gens) {
        const auto ab = ring_product(d, a, b);
        if (a.h.support() & b.h.support()) CHECK_FALSE(ab);
        for (const auto& c : gens) {
          const auto left = ab ? ring_product(d, *ab, c) : std::nullopt;
          const auto bc = ring_product(d, b, c);
          const auto right = bc ? ring_product(d, a, *bc) : std::nullopt;
          CHECK(left == right);
        }
      }
    }
  }
}
