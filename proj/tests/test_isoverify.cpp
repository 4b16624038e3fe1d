#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>
#include <numeric>
#include <set>

#include "corpus_fixture.hpp"
#include "qs/error.hpp"
#include "qs/isoverify.hpp"

using namespace qs;

namespace {

// Equivalence-class key computed without canonical_form: the sorted list of
// per-segment label patterns, after relabelling each segment ordering.
std::vector<std::vector<Label>> class_key(const std::vector<int>& sizes, const std::vector<Label>& m) {
  std::vector<int> perm(sizes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> offset(sizes.size(), 0);
  for (std::size_t j = 1; j < sizes.size(); ++j) offset[j] = offset[j - 1] + sizes[j - 1];
  std::vector<std::vector<Label>> best;
  do {
    std::vector<Label> flat;
    std::vector<Label> shape;
    for (int j : perm) {
      shape.push_back(-sizes[j]);
      for (int i = 0; i < sizes[j]; ++i) flat.push_back(m[offset[j] + i]);
    }
    std::vector<Label> rename(flat.size() + 1, 0);
    Label next = 1;
    for (auto& x : flat) {
      if (!rename[x]) rename[x] = next++;
      x = rename[x];
    }
    std::vector<std::vector<Label>> key{shape, flat};
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Brute-force class count: every size composition and every label word.
std::size_t brute_corpus_size(int max_k, int max_l) {
  std::set<std::vector<std::vector<Label>>> classes;
  for (int k = 1; k <= max_k; ++k) {
    std::vector<Label> word;
    for (Label m = 1; m <= k; ++m) word.insert(word.end(), {m, m});
    std::vector<std::vector<Label>> words;
    do words.push_back(word);
    while (std::next_permutation(word.begin(), word.end()));
    const int n = 2 * k;
    // Compositions of n via cut masks.
    for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
      const int l = std::popcount(cuts) + 1;
      if (l > max_l) continue;
      std::vector<int> sizes;
      int run = 1;
      for (int i = 0; i < n - 1; ++i) {
        if ((cuts >> i) & 1u) {
          sizes.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      sizes.push_back(run);
      for (const auto& w : words)
        if (validate(ArcDiagram(sizes, w)).ok) classes.insert(class_key(sizes, w));
    }
  }
  return classes.size();
}

}  // namespace

TEST_CASE("verify the single square") {
  const IsoReport r = verify(test::square());
  CHECK(r.success());
  CHECK(r.contact_dim == 2);
  CHECK(r.homology_dim == 2);
  CHECK(r.product_pairs_checked == 4);
  CHECK(r.bijection.size() == 2);
}

TEST_CASE("verify the punctured torus") {
  const IsoReport r = verify(test::punctured_torus());
  CHECK(r.success());
  CHECK(r.euler_char == -1);
  CHECK(r.genus == 1);
  CHECK(r.boundary_components == 1);
  CHECK(r.num_pairs == 2);
  CHECK(r.contact_dim == 10);
  CHECK(r.homology_dim == 10);
  CHECK(r.summands.size() == 10);
  for (const auto& row : r.summands) {
    CHECK(row.agree());
    CHECK(row.contact_count == 1);
  }
  CHECK(r.strand_count_dims.at(1) == std::make_pair(8, 8));
}

TEST_CASE("invalid diagrams are rejected") {
  CHECK_THROWS_AS(verify(ArcDiagram({2}, {1, 1})), InvalidDiagram);
  CHECK_THROWS_AS(sfh_table(ArcDiagram({2}, {1, 1})), InvalidDiagram);
}

TEST_CASE("phi and phi_inv") {
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    const QuadSurface q = to_quad_surface(d);
    const int interior = d.num_interior_steps();
    for (LabelMask s = 0; s < (LabelMask{1} << d.num_pairs()); ++s) {
      const SummandKey key = phi(d, identity_structure(q, s));
      CHECK(key == SummandKey{s, s, HomClass{std::vector<int>(interior, 0)}});
      CHECK(phi_inv(q, key) == identity_structure(q, s));
    }
    std::set<SummandKey> images;
    for (const auto& x : ca_table(q).basis) {
      const SummandKey key = phi(d, x);
      CHECK(images.insert(key).second);
      CHECK(summand_nonzero(d, key));
      CHECK(phi_inv(q, key) == x);
      CHECK(phi(d, phi_inv(q, key)) == key);
    }
  }
  const ArcDiagram torus = test::punctured_torus();
  const QuadSurface q = to_quad_surface(torus);
  CHECK_THROWS_AS(phi_inv(q, SummandKey{1, 1, HomClass{{2, 0, 0}}}), NotRealizable);
  CHECK_THROWS_AS(phi_inv(q, SummandKey{1, 0, HomClass{{0, 0, 0}}}), NotRealizable);
}

TEST_CASE("sfh_table") {
  const SfhTable t1 = sfh_table(test::square());
  CHECK(t1.dims == std::vector<std::vector<int>>{{1, 0}, {0, 1}});
  CHECK(t1.consistent());
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    const SfhTable t = sfh_table(d);
    CHECK(t.consistent());
    const IsoReport r = verify(d);
    std::map<int, int> block;
    for (std::size_t s = 0; s < t.dims.size(); ++s) {
      CHECK(t.dims[s][s] >= 1);
      for (std::size_t u = 0; u < t.dims.size(); ++u) {
        if (std::popcount(s) != std::popcount(u)) CHECK(t.dims[s][u] == 0);
        block[std::popcount(s)] += t.dims[s][u];
      }
    }
    for (const auto& [i, dims] : r.strand_count_dims) CHECK(block[i] == dims.second);
  }
}

TEST_CASE("corpus generation") {
  const auto& c = test::corpus();
  CHECK(c.size() == 27);
  CHECK(c.size() == brute_corpus_size(3, 3));
  CHECK(generate_corpus(2, 2).size() == brute_corpus_size(2, 2));
  CHECK(generate_corpus(4, 2).size() == brute_corpus_size(4, 2));
  std::set<std::vector<std::vector<Label>>> keys;
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(validate(c[i]).ok);
    CHECK(canonical_form(c[i]) == c[i]);
    CHECK(keys.insert(class_key(c[i].segment_sizes(), c[i].matching())).second);
    if (i > 0) {
      const auto prev = std::make_tuple(c[i - 1].num_pairs(), c[i - 1].num_segments(), c[i - 1].segment_sizes(),
                                        c[i - 1].matching());
      const auto cur = std::make_tuple(c[i].num_pairs(), c[i].num_segments(), c[i].segment_sizes(), c[i].matching());
      CHECK(prev < cur);
    }
  }
  CHECK(std::find(c.begin(), c.end(), test::square()) != c.end());
  CHECK(std::find(c.begin(), c.end(), test::punctured_torus()) != c.end());
  CHECK(std::find(c.begin(), c.end(), canonical_form(test::annulus())) != c.end());
}

TEST_CASE("canonical_form ignores segment order and label names") {
  const ArcDiagram a({3, 1}, {1, 2, 1, 2});
  const ArcDiagram b({1, 3}, {1, 2, 1, 2});
  const ArcDiagram c({1, 3}, {2, 1, 2, 1});
  CHECK(canonical_form(b) == canonical_form(a));
  CHECK(canonical_form(c) == canonical_form(a));
  CHECK(canonical_form(ArcDiagram({4}, {2, 1, 2, 1})) == test::punctured_torus());
}

TEST_CASE("verify_all keeps order and does not depend on the job count") {
  const auto& c = test::corpus();
  const auto one = verify_all(c, 1);
  const auto three = verify_all(c, 3);
  REQUIRE(one.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(one[i].success());
    CHECK(one[i].matching == c[i].matching());
    CHECK(one[i].segment_sizes == three[i].segment_sizes);
    CHECK(one[i].matching == three[i].matching);
    CHECK(one[i].contact_dim == three[i].contact_dim);
    CHECK(one[i].product_pairs_checked == three[i].product_pairs_checked);
  }
}
