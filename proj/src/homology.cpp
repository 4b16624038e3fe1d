#include "qs/homology.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qs/error.hpp"

namespace qs {

SummandKey summand_key(const ArcDiagram& d, const SymGenerator& g) {
  return {start_labels(d, g), end_labels(d, g), hom_grading(d, g)};
}

std::size_t HomSummand::size() const {
  std::size_t n = 0;
  for (const auto& [deg, gens] : graded_basis) n += gens.size();
  return n;
}

std::optional<std::pair<int, std::size_t>> HomSummand::locate(const SymGenerator& g) const {
  for (const auto& [deg, gens] : graded_basis) {
    auto it = std::lower_bound(gens.begin(), gens.end(), g);
    if (it != gens.end() && *it == g) return std::make_pair(deg, static_cast<std::size_t>(it - gens.begin()));
  }
  return std::nullopt;
}

HomSummand make_summand(const ArcDiagram& d, SummandKey key, std::vector<SymGenerator> generators) {
  HomSummand sum;
  sum.key = std::move(key);
  for (auto& g : generators) sum.graded_basis[maslov2(d, g)].push_back(g);
  for (auto& [deg, gens] : sum.graded_basis) std::sort(gens.begin(), gens.end());

  for (const auto& [deg, gens] : sum.graded_basis) {
    auto below = sum.graded_basis.find(deg - 2);
    const std::size_t rows = below == sum.graded_basis.end() ? 0 : below->second.size();
    GF2Matrix m(rows, gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c) {
      for (const auto& term : diff_generator(d, gens[c])) {
        auto where = sum.locate(term);
        if (!where || where->first != deg - 2) {
          throw std::logic_error("differential of " + to_string(gens[c]) + " leaves its summand or degree");
        }
        m.flip(where->second, c);
      }
    }
    sum.boundary.emplace(deg, std::move(m));
  }
  return sum;
}

HomSummand build_summand(const ArcDiagram& d, LabelMask s, LabelMask t, const HomClass& h) {
  SummandKey key{s, t, h};
  std::vector<SymGenerator> gens;
  for (const auto& g : enumerate_basis(d, std::popcount(s)))
    if (summand_key(d, g) == key) gens.push_back(g);
  return make_summand(d, std::move(key), std::move(gens));
}

std::map<SummandKey, HomSummand> all_summands(const ArcDiagram& d) {
  std::map<SummandKey, std::vector<SymGenerator>> buckets;
  for (int i = 0; i <= d.num_pairs(); ++i)
    for (auto& g : enumerate_basis(d, i)) buckets[summand_key(d, g)].push_back(g);
  std::map<SummandKey, HomSummand> out;
  for (auto& [key, gens] : buckets) out.emplace(key, make_summand(d, key, std::move(gens)));
  return out;
}

std::map<int, int> homology_dims(const HomSummand& sum) {
  std::map<int, std::size_t> rank;
  for (const auto& [deg, m] : sum.boundary) rank[deg] = gf2_rank(m);
  std::map<int, int> out;
  for (const auto& [deg, gens] : sum.graded_basis) {
    std::size_t incoming = rank.count(deg + 2) ? rank[deg + 2] : 0;
    int dim = static_cast<int>(gens.size() - rank[deg] - incoming);
    if (dim != 0) out[deg] = dim;
  }
  return out;
}

int total_dim(const std::map<int, int>& dims) {
  int n = 0;
  for (const auto& [deg, dim] : dims) n += dim;
  return n;
}

namespace {

/// Coordinates of x per degree of the summand.
std::map<int, std::vector<std::uint8_t>> coordinates(const HomSummand& sum, const SymElement& x) {
  std::map<int, std::vector<std::uint8_t>> out;
  for (const auto& g : x) {
    auto where = sum.locate(g);
    if (!where) throw std::invalid_argument("element term " + to_string(g) + " outside the summand");
    auto& v = out[where->first];
    v.resize(sum.graded_basis.at(where->first).size(), 0);
    v[where->second] ^= 1;
  }
  return out;
}

}  // namespace

bool is_boundary(const HomSummand& sum, const SymElement& cycle) {
  for (const auto& [deg, v] : coordinates(sum, cycle)) {
    const GF2Matrix& out = sum.boundary.at(deg);
    for (std::size_t r = 0; r < out.rows(); ++r) {
      int bit = 0;
      for (std::size_t c = 0; c < out.cols(); ++c) bit ^= out.get(r, c) & v[c];
      if (bit) throw NotACycle("element has nonzero differential");
    }
    auto in = sum.boundary.find(deg + 2);
    if (in == sum.boundary.end()) {
      if (std::any_of(v.begin(), v.end(), [](std::uint8_t b) { return b != 0; })) return false;
      continue;
    }
    if (!gf2_in_column_space(in->second, v)) return false;
  }
  return true;
}

std::optional<SymElement> homology_representative(const HomSummand& sum) {
  for (const auto& [deg, gens] : sum.graded_basis) {
    const GF2Matrix kernel = gf2_kernel(sum.boundary.at(deg));
    auto in = sum.boundary.find(deg + 2);
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
      std::vector<std::uint8_t> v(gens.size());
      for (std::size_t c = 0; c < gens.size(); ++c) v[c] = kernel.get(r, c);
      const bool boundary = in != sum.boundary.end() && gf2_in_column_space(in->second, v);
      if (boundary) continue;
      SymElement out;
      for (std::size_t c = 0; c < gens.size(); ++c)
        if (v[c]) out.toggle(gens[c]);
      return out;
    }
  }
  return std::nullopt;
}

std::vector<SymGenerator> crossingless_generators(const ArcDiagram& d, const HomSummand& sum) {
  std::vector<SymGenerator> out;
  for (const auto& [deg, gens] : sum.graded_basis)
    for (const auto& g : gens)
      if (crossingless(d, g)) out.push_back(g);
  return out;
}

std::string_view to_string(PlaceClass c) {
  switch (c) {
    case PlaceClass::Out: return "out";
    case PlaceClass::NegBdy: return "neg_bdy";
    case PlaceClass::PosBdy: return "pos_bdy";
    case PlaceClass::Interior: return "interior";
  }
  return "?";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Both: return "both";
    case Membership::StartOnly: return "start_only";
    case Membership::EndOnly: return "end_only";
    case Membership::Neither: return "neither";
  }
  return "?";
}

PlaceClass place_class(const ArcDiagram& d, InteriorMask support, Place p) {
  auto used = [&](int i) { return i >= 0 && ((support >> i) & 1u); };
  const bool below = used(d.interior_before(p));
  const bool above = used(d.interior_after(p));
  if (below && above) return PlaceClass::Interior;
  if (above) return PlaceClass::NegBdy;
  if (below) return PlaceClass::PosBdy;
  return PlaceClass::Out;
}

Membership membership(LabelMask s, LabelMask t, Label m) {
  const bool in_s = s & label_bit(m);
  const bool in_t = t & label_bit(m);
  if (in_s && in_t) return Membership::Both;
  if (in_s) return Membership::StartOnly;
  if (in_t) return Membership::EndOnly;
  return Membership::Neither;
}

LocalCase classify_local(const ArcDiagram& d, const HomClass& h, LabelMask s, LabelMask t, Label m) {
  const InteriorMask support = h.support();
  auto [v, w] = d.places_of(m);
  return {place_class(d, support, v), place_class(d, support, w), membership(s, t, m)};
}

bool local_case_allowed(const LocalCase& c) {
  using P = PlaceClass;
  using M = Membership;
  struct Row {
    P a, b;
    M m;
  };
  static constexpr Row kAllowed[] = {
      {P::Out, P::Out, M::Both},                // dotted pair, no steps used
      {P::Out, P::Out, M::Neither},             // nothing at v, w
      {P::NegBdy, P::Out, M::StartOnly},        // strand begins at v
      {P::PosBdy, P::Out, M::EndOnly},          // strand ends at v
      {P::NegBdy, P::PosBdy, M::Both},          // begins at v, ends at w
      {P::Interior, P::Out, M::Neither},        // strand passes v
      {P::PosBdy, P::Interior, M::EndOnly},     // ends at v, passes w
      {P::NegBdy, P::Interior, M::StartOnly},   // begins at v, passes w
      {P::Interior, P::Interior, M::Neither},   // passes both
      {P::Interior, P::Interior, M::Both},      // begins and ends at one twin
  };
  for (const auto& row : kAllowed) {
    if (row.m != c.membership) continue;
    if ((row.a == c.v_class && row.b == c.w_class) || (row.a == c.w_class && row.b == c.v_class)) return true;
  }
  return false;
}

std::optional<LocalCase> local_case(const ArcDiagram& d, const HomClass& h, LabelMask s, LabelMask t, Label m) {
  if (!h.zero_one()) return std::nullopt;
  LocalCase c = classify_local(d, h, s, t, m);
  if (!local_case_allowed(c)) return std::nullopt;
  return c;
}

bool summand_nonzero(const ArcDiagram& d, LabelMask s, LabelMask t, const HomClass& h) {
  if (!h.zero_one()) return false;
  if ((s | t) >> d.num_pairs()) return false;
  for (Label m = 1; m <= d.num_pairs(); ++m)
    if (!local_case(d, h, s, t, m)) return false;
  return true;
}

std::optional<SummandKey> ring_product(const ArcDiagram& d, const SummandKey& a, const SummandKey& b) {
  if (a.t != b.s) return std::nullopt;
  if (a.h.support() & b.h.support()) return std::nullopt;
  SummandKey out{a.s, b.t, a.h + b.h};
  if (!summand_nonzero(d, out)) return std::nullopt;
  return out;
}

}  // namespace qs
