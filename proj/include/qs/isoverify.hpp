#pragma once

#include <map>
#include <string>
#include <vector>

#include "qs/arc_diagram.hpp"
#include "qs/contact.hpp"
#include "qs/homology.hpp"

namespace qs {

/// Tight structure -> homology summand: s and t are the on squares at the
/// bottom and top, h is 1 on every used interior step.
SummandKey phi(const ArcDiagram& d, const ContactStructure& x);

/// Inverse of phi on nonzero summands. Throws NotRealizable if some cube of
/// the resulting structure is not tight, or if h is not 0/1-valued.
ContactStructure phi_inv(const QuadSurface& q, const SummandKey& key);

struct SummandRow {
  SummandKey key;
  int contact_count = 0;
  bool local_nonzero = false;
  int chain_dim = 0;
  std::map<int, int> dims;  // chain homology per doubled Maslov degree

  bool agree() const { return contact_count == chain_dim && local_nonzero == (chain_dim > 0); }
};

struct IsoReport {
  std::vector<int> segment_sizes;
  std::vector<Label> matching;
  int num_pairs = 0;
  int num_segments = 0;
  int euler_char = 0;
  int genus = 0;
  int boundary_components = 0;

  /// Triples where at least one of the three columns is nonzero.
  std::vector<SummandRow> summands;
  std::size_t triples_checked = 0;
  /// Tight structure and the summand it maps to, in CA basis order.
  std::vector<std::pair<ContactStructure, SummandKey>> bijection;
  std::size_t product_pairs_checked = 0;
  /// Strand count i -> (dim CA_e with e = k - 2i, dim H(A(Z, i))).
  std::map<int, std::pair<int, int>> strand_count_dims;
  int contact_dim = 0;
  int homology_dim = 0;
  std::vector<std::string> mismatches;
  double elapsed_ms = 0;

  bool success() const { return mismatches.empty(); }
};

/// Checks CA(Sigma, Q) against H(A(Z)) three ways: tight-structure counts,
/// the closed-form local table, and chain-level homology, on the basis, the
/// full multiplication table, the unit, and the Euler class / strand count
/// decomposition. Throws InvalidDiagram for a diagram whose surgery has a
/// circle.
IsoReport verify(const ArcDiagram& d);

struct SfhTable {
  int num_pairs = 0;
  /// dims[s][t] = number of tight structures on M(Gamma_s, Gamma_t), indexed
  /// by label masks.
  std::vector<std::vector<int>> dims;
  /// Total chain homology dimension of I(s) H(A(Z)) I(t).
  std::vector<std::vector<int>> homology_dims;

  bool consistent() const { return dims == homology_dims; }
};

SfhTable sfh_table(const ArcDiagram& d);

/// Every valid arc diagram with 1 <= k <= max_k pairs and 1 <= l <= max_l
/// segments, one per class under segment permutation and relabelling, sorted
/// by (k, l, segment sizes, matching).
std::vector<ArcDiagram> generate_corpus(int max_k, int max_l);

/// Canonical representative under segment permutation and relabelling by
/// first occurrence.
ArcDiagram canonical_form(const ArcDiagram& d);

/// verify() over a list of diagrams on up to `jobs` threads; results keep the
/// input order.
std::vector<IsoReport> verify_all(const std::vector<ArcDiagram>& diagrams, int jobs);

}  // namespace qs
