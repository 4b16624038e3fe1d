#include <doctest.h>

#include <bit>
#include <functional>
#include <map>
#include <set>

#include "corpus_fixture.hpp"
#include "qs/algebra.hpp"
#include "qs/error.hpp"

using namespace qs;

namespace {

// Every constrained strand diagram with i strands, each strand on its own
// segment, found by trying all sources and targets.
std::vector<StrandDiagram> constrained_diagrams(const ArcDiagram& d, int i) {
  std::vector<StrandDiagram> out;
  std::vector<Strand> cur;
  const int n = d.num_places();
  std::function<void(Place, PlaceMask, LabelMask, LabelMask)> rec = [&](Place p, PlaceMask targets,
                                                                        LabelMask s, LabelMask t) {
    if (static_cast<int>(cur.size()) == i) {
      out.push_back(StrandDiagram::from_strands(std::span<const Strand>(cur)));
      return;
    }
    if (p > n) return;
    rec(p + 1, targets, s, t);
    if (s & label_bit(d.label(p))) return;
    for (Place q = p; q <= n && d.same_segment(p, q); ++q) {
      if ((targets & place_bit(q)) || (t & label_bit(d.label(q)))) continue;
      cur.push_back({p, q});
      rec(p + 1, targets | place_bit(q), s | label_bit(d.label(p)), t | label_bit(d.label(q)));
      cur.pop_back();
    }
  };
  rec(1, 0, 0, 0);
  return out;
}

// Moves one horizontal strand to its twin.
std::vector<StrandDiagram> twin_swaps(const ArcDiagram& d, const StrandDiagram& m) {
  std::vector<StrandDiagram> out;
  const auto strands = m.strands();
  for (std::size_t j = 0; j < strands.size(); ++j) {
    if (!strands[j].horizontal()) continue;
    auto moved = strands;
    const Place q = d.twin(strands[j].from);
    moved[j] = {q, q};
    out.push_back(StrandDiagram::from_strands(std::span<const Strand>(moved)));
  }
  return out;
}

// Connected components of the twin-swap graph.
std::vector<std::set<StrandDiagram>> orbits(const ArcDiagram& d, const std::vector<StrandDiagram>& all) {
  std::set<StrandDiagram> left(all.begin(), all.end());
  std::vector<std::set<StrandDiagram>> out;
  while (!left.empty()) {
    std::set<StrandDiagram> orbit;
    std::vector<StrandDiagram> stack{*left.begin()};
    while (!stack.empty()) {
      auto m = stack.back();
      stack.pop_back();
      if (!orbit.insert(m).second) continue;
      for (auto& n : twin_swaps(d, m)) stack.push_back(n);
    }
    for (const auto& m : orbit) left.erase(m);
    out.push_back(std::move(orbit));
  }
  return out;
}

SymElement brute_product(const ArcDiagram& d, const SymGenerator& a, const SymGenerator& b) {
  Element sum;
  for (const auto& x : expand(d, a))
    for (const auto& y : expand(d, b))
      if (auto xy = multiply(x, y); xy && is_constrained(d, *xy)) sum.toggle(*xy);
  return regroup(d, sum);
}

std::vector<SymGenerator> full_basis(const ArcDiagram& d) {
  std::vector<SymGenerator> out;
  for (int i = 0; i <= d.num_pairs(); ++i)
    for (auto& g : enumerate_basis(d, i)) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("sections") {
  const ArcDiagram d = test::punctured_torus();
  CHECK(sections(d, 0) == std::vector<PlaceMask>{0});
  CHECK(sections(d, label_bit(1)) == std::vector<PlaceMask>{place_bit(1), place_bit(3)});
  CHECK(sections(d, label_bit(1) | label_bit(2)).size() == 4);
}

TEST_CASE("basis of the single square") {
  const ArcDiagram d = test::square();
  const auto b0 = enumerate_basis(d, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == idempotent_generator(0));
  const auto b1 = enumerate_basis(d, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].dotted == label_bit(1));
  CHECK(b1[0].moving.strand_count() == 0);
}

TEST_CASE("basis counts match the brute-force orbit oracle") {
  const std::map<std::vector<Label>, std::vector<std::size_t>> known{{{1, 2, 1, 2}, {1, 8, 7}}};
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    for (int i = 0; i <= d.num_pairs(); ++i) {
      const auto all = constrained_diagrams(d, i);
      const auto orbs = orbits(d, all);
      const auto basis = enumerate_basis(d, i);
      CHECK(basis.size() == orbs.size());
      // Expansions partition the constrained diagrams into exactly these orbits.
      std::set<std::set<StrandDiagram>> expected(orbs.begin(), orbs.end());
      std::set<std::set<StrandDiagram>> got;
      for (const auto& g : basis) {
        CHECK(is_valid(d, g));
        const auto e = expand(d, g);
        CHECK(e.size() == std::size_t{1} << std::popcount(g.dotted));
        for (const auto& m : e) CHECK(generator_of(d, m) == g);
        got.emplace(e.begin(), e.end());
      }
      CHECK(got == expected);
    }
  }
  const ArcDiagram torus = test::punctured_torus();
  for (int i = 0; i <= 2; ++i) CHECK(enumerate_basis(torus, i).size() == std::vector<std::size_t>{1, 8, 7}[i]);
}

TEST_CASE("gradings") {
  const ArcDiagram d = test::punctured_torus();
  CHECK(hom_grading(d, idempotent_generator(0b11)).is_zero());
  CHECK(maslov2(d, idempotent_generator(0b11)) == 0);
  const SymGenerator g{StrandDiagram::from_strands({{1, 3}}), 0};
  CHECK(hom_grading(d, g).mult == std::vector<int>{1, 1, 0});
  CHECK(maslov2(d, StrandDiagram::from_strands({{1, 2}})) == -1);

  // Twin swaps preserve both gradings.
  for (const auto& x : test::corpus()) {
    for (int i = 0; i <= x.num_pairs(); ++i) {
      for (const auto& m : constrained_diagrams(x, i)) {
        for (const auto& n : twin_swaps(x, m)) {
          CHECK(maslov2(x, m) == maslov2(x, n));
          CHECK(hom_grading(x, m) == hom_grading(x, n));
        }
      }
    }
  }
}

TEST_CASE("idempotents") {
  const ArcDiagram d = test::punctured_torus();
  for (LabelMask s = 0; s < 4; ++s) {
    for (LabelMask t = 0; t < 4; ++t) {
      const auto p = mul_generators(d, idempotent_generator(s), idempotent_generator(t));
      if (s == t) CHECK(p == SymElement{idempotent_generator(s)});
      else CHECK(p.empty());
    }
  }
  for (const auto& g : full_basis(d)) {
    CHECK(mul_generators(d, g, idempotent_generator(end_labels(d, g))) == SymElement{g});
    CHECK(mul_generators(d, idempotent_generator(start_labels(d, g)), g) == SymElement{g});
  }
}

TEST_CASE("regroup rejects partial orbits") {
  const ArcDiagram d = test::square();
  Element half{StrandDiagram::from_strands({{1, 1}})};
  CHECK_THROWS_AS(regroup(d, half), NotInSymmetrisedSpan);
  half.toggle(StrandDiagram::from_strands({{2, 2}}));
  CHECK(regroup(d, half) == SymElement{idempotent_generator(1)});
}

TEST_CASE("products, differential and gradings over the corpus") {
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    const auto basis = full_basis(d);
    for (const auto& g : basis) {
      const SymElement dg = diff_generator(d, g);
      if (crossingless(d, g)) CHECK(dg.empty());
      for (const auto& term : dg) {
        CHECK(maslov2(d, term) == maslov2(d, g) - 2);
        CHECK(hom_grading(d, term) == hom_grading(d, g));
      }
      CHECK(differential(d, dg).empty());
    }
    for (const auto& a : basis) {
      for (const auto& b : basis) {
        const SymElement ab = mul_generators(d, a, b);
        CHECK(ab == brute_product(d, a, b));
        if (!ab.empty()) CHECK(end_labels(d, a) == start_labels(d, b));
        for (const auto& term : ab) {
          CHECK(start_labels(d, term) == start_labels(d, a));
          CHECK(end_labels(d, term) == end_labels(d, b));
          CHECK(hom_grading(d, term) == hom_grading(d, a) + hom_grading(d, b));
        }
        if (end_labels(d, a) != start_labels(d, b)) continue;
        const SymElement lhs = differential(d, ab);
        const SymElement rhs = multiply(d, diff_generator(d, a), SymElement{b}) +
                               multiply(d, SymElement{a}, diff_generator(d, b));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("associativity on the punctured torus and the annulus") {
  for (const auto& d : {test::punctured_torus(), test::annulus()}) {
    const auto basis = full_basis(d);
    for (const auto& a : basis)
      for (const auto& b : basis) {
        if (end_labels(d, a) != start_labels(d, b)) continue;
        const SymElement ab = mul_generators(d, a, b);
        for (const auto& c : basis) {
          if (end_labels(d, b) != start_labels(d, c)) continue;
          CHECK(multiply(d, ab, SymElement{c}) == multiply(d, SymElement{a}, mul_generators(d, b, c)));
        }
      }
  }
}
