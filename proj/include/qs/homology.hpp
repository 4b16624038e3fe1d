#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "qs/algebra.hpp"
#include "qs/arc_diagram.hpp"
#include "qs/gf2.hpp"

namespace qs {

/// Idempotent pair and homological grading: the index of a homology summand
/// I(s) H I(t) in grading h.
struct SummandKey {
  LabelMask s = 0;
  LabelMask t = 0;
  HomClass h;

  friend auto operator<=>(const SummandKey&, const SummandKey&) = default;
};

SummandKey summand_key(const ArcDiagram& d, const SymGenerator& g);

/// Chain complex of one (s, t, h) summand, graded by doubled Maslov degree.
struct HomSummand {
  SummandKey key;
  std::map<int, std::vector<SymGenerator>> graded_basis;
  /// boundary[m] maps degree m to degree m-2: rows index graded_basis[m-2],
  /// columns index graded_basis[m]. Present for every nonempty degree m.
  std::map<int, GF2Matrix> boundary;

  std::size_t size() const;
  /// Degree and position of g in graded_basis, if g belongs here.
  std::optional<std::pair<int, std::size_t>> locate(const SymGenerator& g) const;
};

/// Builds the summand from the generators that belong to it (which must all
/// share key). Throws std::logic_error if the differential leaves the summand
/// or fails to lower the degree by exactly 2.
HomSummand make_summand(const ArcDiagram& d, SummandKey key, std::vector<SymGenerator> generators);

/// Enumerates the basis with |s| strands and keeps generators of (s, t, h).
HomSummand build_summand(const ArcDiagram& d, LabelMask s, LabelMask t, const HomClass& h);

/// Every nonempty summand of A(Z), keyed by (s, t, h).
std::map<SummandKey, HomSummand> all_summands(const ArcDiagram& d);

/// Homology dimension per degree; degrees with zero homology are omitted.
std::map<int, int> homology_dims(const HomSummand& sum);
int total_dim(const std::map<int, int>& dims);

/// Whether a cycle of the summand is a boundary. Throws NotACycle if its
/// differential is nonzero, std::invalid_argument if a term lies elsewhere.
bool is_boundary(const HomSummand& sum, const SymElement& cycle);

/// A cycle not in the image of the boundary, found by linear algebra alone;
/// nullopt when the homology is zero.
std::optional<SymElement> homology_representative(const HomSummand& sum);

/// Crossingless generators of the summand.
std::vector<SymGenerator> crossingless_generators(const ArcDiagram& d, const HomSummand& sum);

/// Position of a place relative to supp h.
enum class PlaceClass { Out, NegBdy, PosBdy, Interior };
/// Where the label sits relative to the start and end sets.
enum class Membership { Both, StartOnly, EndOnly, Neither };

std::string_view to_string(PlaceClass c);
std::string_view to_string(Membership m);

struct LocalCase {
  PlaceClass v_class = PlaceClass::Out;  // smaller twin
  PlaceClass w_class = PlaceClass::Out;
  Membership membership = Membership::Neither;

  friend bool operator==(const LocalCase&, const LocalCase&) = default;
};

PlaceClass place_class(const ArcDiagram& d, InteriorMask support, Place p);
Membership membership(LabelMask s, LabelMask t, Label m);

/// The local data of (h, s, t) at the twins of m, whether allowed or not.
LocalCase classify_local(const ArcDiagram& d, const HomClass& h, LabelMask s, LabelMask t, Label m);

/// Membership of a local configuration in the allowed table (up to v <-> w).
bool local_case_allowed(const LocalCase& c);

/// The local data of (h, s, t) at label m, or nullopt when disallowed
/// (including when h has a multiplicity outside {0, 1}).
std::optional<LocalCase> local_case(const ArcDiagram& d, const HomClass& h, LabelMask s, LabelMask t, Label m);

/// Closed-form test for a nonzero homology summand: h is 0/1-valued and every
/// label's local data is allowed.
bool summand_nonzero(const ArcDiagram& d, LabelMask s, LabelMask t, const HomClass& h);
inline bool summand_nonzero(const ArcDiagram& d, const SummandKey& k) { return summand_nonzero(d, k.s, k.t, k.h); }

/// Product of homology generators; nullopt is zero.
std::optional<SummandKey> ring_product(const ArcDiagram& d, const SummandKey& a, const SummandKey& b);

}  // namespace qs
