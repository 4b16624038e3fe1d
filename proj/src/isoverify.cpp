#include "qs/isoverify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

#include "qs/error.hpp"

namespace qs {

namespace {

std::string describe(const SummandKey& k) {
  std::ostringstream os;
  auto set = [&](LabelMask m) {
    os << '{';
    bool first = true;
    for (LabelMask r = m; r; r &= r - 1) {
      if (!first) os << ',';
      first = false;
      os << std::countr_zero(r) + 1;
    }
    os << '}';
  };
  os << "(s=";
  set(k.s);
  os << ", t=";
  set(k.t);
  os << ", h=[";
  for (std::size_t i = 0; i < k.h.mult.size(); ++i) os << (i ? "," : "") << k.h.mult[i];
  os << "])";
  return os.str();
}

std::string describe(const std::optional<SummandKey>& k) { return k ? describe(*k) : "0"; }

HomClass indicator(int num_interior, InteriorMask support) {
  HomClass h{std::vector<int>(num_interior, 0)};
  for (int i = 0; i < num_interior; ++i) h.mult[i] = (support >> i) & 1u;
  return h;
}

}  // namespace

SummandKey phi(const ArcDiagram& d, const ContactStructure& x) {
  return {x.bottom, x.top, indicator(d.num_interior_steps(), x.used)};
}

ContactStructure phi_inv(const QuadSurface& q, const SummandKey& key) {
  if (!key.h.zero_one()) throw NotRealizable("homological grading " + describe(key) + " is not 0/1-valued");
  auto xi = make_structure(q, key.s, key.t, key.h.support());
  if (!xi.tight) throw NotRealizable("summand " + describe(key) + " gives a non-tight cube");
  return xi;
}

IsoReport verify(const ArcDiagram& d) {
  const auto started = std::chrono::steady_clock::now();
  if (!validate(d).ok) throw InvalidDiagram("oriented surgery yields a closed circle");

  const QuadSurface q = to_quad_surface(d);
  const int k = d.num_pairs();
  const int interior = d.num_interior_steps();

  IsoReport rep;
  rep.segment_sizes = d.segment_sizes();
  rep.matching = d.matching();
  rep.num_pairs = k;
  rep.num_segments = d.num_segments();
  rep.euler_char = q.euler_char;
  rep.genus = q.genus;
  rep.boundary_components = q.boundary_components;
  auto fail = [&](std::string msg) { rep.mismatches.push_back(std::move(msg)); };

  // Chain side.
  const auto summands = all_summands(d);
  std::map<SummandKey, std::map<int, int>> chain_dims;
  std::map<SummandKey, SymElement> representatives;
  for (const auto& [key, sum] : summands) {
    auto dims = homology_dims(sum);
    const int total = total_dim(dims);
    if (total > 1 || dims.size() > 1) fail("summand " + describe(key) + " has homology beyond one dimension");
    if (total > 0) {
      auto rep_cycle = homology_representative(sum);
      if (!rep_cycle) fail("no representative found for " + describe(key));
      else representatives.emplace(key, *rep_cycle);
    }
    chain_dims.emplace(key, std::move(dims));
  }

  // Contact side.
  const CaTable table = ca_table(q);
  rep.contact_dim = static_cast<int>(table.basis.size());
  std::map<SummandKey, int> contact_count;
  for (const auto& x : table.basis) {
    const SummandKey key = phi(d, x);
    rep.bijection.emplace_back(x, key);
    if (++contact_count[key] > 1) fail("phi is not injective at " + describe(key));
    try {
      if (!(phi_inv(q, key) == x)) fail("phi_inv(phi(x)) != x at " + describe(key));
    } catch (const NotRealizable& e) {
      fail(e.what());
    }
  }

  // (a) basis: every 0/1 triple plus every summand carrying generators.
  std::set<SummandKey> triples;
  for (const auto& [key, sum] : summands) triples.insert(key);
  const LabelMask subsets = LabelMask{1} << k;
  for (LabelMask s = 0; s < subsets; ++s)
    for (LabelMask t = 0; t < subsets; ++t)
      for (InteriorMask u = 0; u < (InteriorMask{1} << interior); ++u) triples.insert({s, t, indicator(interior, u)});
  rep.triples_checked = triples.size();
  for (const auto& key : triples) {
    SummandRow row;
    row.key = key;
    if (auto it = contact_count.find(key); it != contact_count.end()) row.contact_count = it->second;
    row.local_nonzero = summand_nonzero(d, key);
    if (auto it = chain_dims.find(key); it != chain_dims.end()) {
      row.dims = it->second;
      row.chain_dim = total_dim(row.dims);
    }
    if (!row.agree()) {
      fail("basis mismatch at " + describe(key) + ": contact " + std::to_string(row.contact_count) + ", local " +
           (row.local_nonzero ? "1" : "0") + ", chain " + std::to_string(row.chain_dim));
    }
    if (row.local_nonzero) {
      try {
        if (!(phi(d, phi_inv(q, key)) == key)) fail("phi(phi_inv(k)) != k at " + describe(key));
      } catch (const NotRealizable& e) {
        fail(e.what());
      }
    }
    if (row.contact_count || row.local_nonzero || row.chain_dim) rep.summands.push_back(std::move(row));
  }
  rep.homology_dim = 0;
  for (const auto& [key, dims] : chain_dims) rep.homology_dim += total_dim(dims);

  // (b) products, three ways.
  auto chain_product = [&](const SummandKey& a, const SummandKey& b) -> std::optional<SummandKey> {
    const auto ra = representatives.find(a);
    const auto rb = representatives.find(b);
    if (ra == representatives.end() || rb == representatives.end()) {
      throw std::logic_error("missing representative");
    }
    const SymElement z = multiply(d, ra->second, rb->second);
    if (z.empty()) return std::nullopt;
    const SummandKey target = summand_key(d, *z.begin());
    for (const auto& g : z)
      if (!(summand_key(d, g) == target)) throw std::logic_error("product spans several summands");
    const auto sum = summands.find(target);
    if (sum == summands.end()) throw std::logic_error("product lands outside every summand");
    if (is_boundary(sum->second, z)) return std::nullopt;
    return target;
  };
  const std::size_t n = table.basis.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const SummandKey ka = phi(d, table.basis[a]);
      const SummandKey kb = phi(d, table.basis[b]);
      std::optional<SummandKey> via_contact;
      if (int c = table.product[a][b]; c >= 0) via_contact = phi(d, table.basis[c]);
      const auto via_ring = ring_product(d, ka, kb);
      std::optional<SummandKey> via_chain;
      try {
        via_chain = chain_product(ka, kb);
      } catch (const std::exception& e) {
        fail("chain product " + describe(ka) + " * " + describe(kb) + ": " + e.what());
        continue;
      }
      ++rep.product_pairs_checked;
      if (via_contact != via_ring || via_ring != via_chain) {
        fail("product " + describe(ka) + " * " + describe(kb) + ": contact " + describe(via_contact) + ", ring " +
             describe(via_ring) + ", chain " + describe(via_chain));
      }
    }
  }

  // (c) unit: identity structures map to idempotent classes, which are the
  // homology classes of I(s), and both sums act as two-sided units.
  for (LabelMask s = 0; s < subsets; ++s) {
    const int u = table.unit[s];
    if (u < 0) {
      fail("identity structure on dividing set " + std::to_string(s) + " is not tight");
      continue;
    }
    const SummandKey key = phi(d, table.basis[u]);
    const SummandKey idem{s, s, indicator(interior, 0)};
    if (!(key == idem)) fail("identity structure maps to " + describe(key));
    const auto sum = summands.find(idem);
    if (sum == summands.end() || is_boundary(sum->second, SymElement{idempotent_generator(s)})) {
      fail("I(s) is zero in homology for " + describe(idem));
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    int left = 0, right = 0;
    for (int u : table.unit) {
      if (u < 0) continue;
      if (table.product[u][b] == static_cast<int>(b)) ++left;
      else if (table.product[u][b] >= 0) fail("unit term maps basis element elsewhere");
      if (table.product[b][u] == static_cast<int>(b)) ++right;
      else if (table.product[b][u] >= 0) fail("unit term maps basis element elsewhere");
    }
    if (left != 1 || right != 1) fail("CA unit does not fix basis element " + describe(phi(d, table.basis[b])));
    const SummandKey kb = phi(d, table.basis[b]);
    const SummandKey left_idem{kb.s, kb.s, indicator(interior, 0)};
    const SummandKey right_idem{kb.t, kb.t, indicator(interior, 0)};
    if (ring_product(d, left_idem, kb) != kb || ring_product(d, kb, right_idem) != kb) {
      fail("homology unit does not fix " + describe(kb));
    }
  }

  // (d) Euler class against strand count.
  for (int i = 0; i <= k; ++i) rep.strand_count_dims[i] = {0, 0};
  for (const auto& x : table.basis) {
    const int e0 = DividingSetBasic{x.bottom}.euler_class(k);
    const int e1 = DividingSetBasic{x.top}.euler_class(k);
    if (e0 != e1) fail("tight structure changes Euler class");
    const int i = std::popcount(x.bottom);
    if (e0 != k - 2 * i) fail("Euler class disagrees with strand count");
    ++rep.strand_count_dims[i].first;
  }
  for (const auto& [key, dims] : chain_dims) rep.strand_count_dims[std::popcount(key.s)].second += total_dim(dims);
  for (const auto& [i, dims] : rep.strand_count_dims) {
    if (dims.first != dims.second) {
      fail("CA_e with e=" + std::to_string(k - 2 * i) + " has dimension " + std::to_string(dims.first) +
           " but H(A(Z," + std::to_string(i) + ")) has " + std::to_string(dims.second));
    }
  }
  if (rep.contact_dim != rep.homology_dim) fail("total dimensions differ");

  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

SfhTable sfh_table(const ArcDiagram& d) {
  if (!validate(d).ok) throw InvalidDiagram("oriented surgery yields a closed circle");
  const QuadSurface q = to_quad_surface(d);
  const int k = d.num_pairs();
  const std::size_t subsets = std::size_t{1} << k;
  SfhTable t;
  t.num_pairs = k;
  t.dims.assign(subsets, std::vector<int>(subsets, 0));
  t.homology_dims.assign(subsets, std::vector<int>(subsets, 0));
  for (LabelMask s = 0; s < subsets; ++s)
    for (LabelMask u = 0; u < subsets; ++u) t.dims[s][u] = static_cast<int>(enumerate_tight(q, s, u).size());
  for (const auto& [key, sum] : all_summands(d)) t.homology_dims[key.s][key.t] += total_dim(homology_dims(sum));
  return t;
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 1; a <= total - parts + 1; ++a) {
    cur.push_back(a);
    compositions(total - a, parts - 1, cur, out);
    cur.pop_back();
  }
}

/// Pairings of n places with labels in order of first occurrence.
void pairings(std::vector<Label>& labels, Label next, std::vector<std::vector<Label>>& out) {
  auto first_free = std::find(labels.begin(), labels.end(), 0);
  if (first_free == labels.end()) {
    out.push_back(labels);
    return;
  }
  *first_free = next;
  for (auto it = first_free + 1; it != labels.end(); ++it) {
    if (*it != 0) continue;
    *it = next;
    pairings(labels, next + 1, out);
    *it = 0;
  }
  *first_free = 0;
}

std::vector<Label> relabel_by_first_occurrence(const std::vector<Label>& m) {
  std::map<Label, Label> rename;
  std::vector<Label> out;
  out.reserve(m.size());
  for (Label x : m) {
    auto [it, inserted] = rename.emplace(x, static_cast<Label>(rename.size()) + 1);
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

ArcDiagram canonical_form(const ArcDiagram& d) {
  const auto& sizes = d.segment_sizes();
  std::vector<std::vector<Label>> parts;
  std::size_t offset = 0;
  for (int n : sizes) {
    parts.emplace_back(d.matching().begin() + offset, d.matching().begin() + offset + n);
    offset += n;
  }
  std::vector<int> perm(sizes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::pair<std::vector<int>, std::vector<Label>>> best;
  do {
    std::vector<int> s;
    std::vector<Label> m;
    for (int j : perm) {
      s.push_back(sizes[j]);
      m.insert(m.end(), parts[j].begin(), parts[j].end());
    }
    std::pair<std::vector<int>, std::vector<Label>> cand{std::move(s), relabel_by_first_occurrence(m)};
    if (!best || cand < *best) best = std::move(cand);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ArcDiagram(best->first, best->second);
}

std::vector<ArcDiagram> generate_corpus(int max_k, int max_l) {
  std::set<std::tuple<int, int, std::vector<int>, std::vector<Label>>> seen;
  for (int k = 1; k <= max_k; ++k) {
    std::vector<std::vector<Label>> matchings;
    std::vector<Label> labels(2 * k, 0);
    pairings(labels, 1, matchings);
    for (int l = 1; l <= std::min(max_l, 2 * k); ++l) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(2 * k, l, cur, comps);
      for (const auto& sizes : comps) {
        for (const auto& m : matchings) {
          ArcDiagram d(sizes, m);
          if (!validate(d).ok) continue;
          ArcDiagram c = canonical_form(d);
          seen.emplace(k, l, c.segment_sizes(), c.matching());
        }
      }
    }
  }
  std::vector<ArcDiagram> out;
  for (const auto& [k, l, sizes, m] : seen) out.emplace_back(sizes, m);
  return out;
}

std::vector<IsoReport> verify_all(const std::vector<ArcDiagram>& diagrams, int jobs) {
  std::vector<IsoReport> out(diagrams.size());
  jobs = std::max(1, jobs);
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < diagrams.size(); i += jobs) out[i] = verify(diagrams[i]);
    }));
  }
  for (auto& f : workers) f.get();
  return out;
}

}  // namespace qs
