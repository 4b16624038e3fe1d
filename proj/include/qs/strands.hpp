#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qs/arc_diagram.hpp"
#include "qs/gf2_sum.hpp"

namespace qs {

struct Strand {
  Place from = 0;
  Place to = 0;

  bool horizontal() const { return from == to; }
  friend auto operator<=>(const Strand&, const Strand&) = default;
};

/// A strand map (S, T, phi): phi is a bijection S -> T with phi(p) >= p.
/// Stored canonically as a source mask plus per-source target, so equality of
/// diagrams is equality of values.
class StrandDiagram {
 public:
  StrandDiagram() = default;

  /// Throws std::invalid_argument unless sources and targets are distinct and
  /// every strand goes upward (to >= from).
  static StrandDiagram from_strands(std::span<const Strand> strands);
  static StrandDiagram from_strands(std::initializer_list<Strand> strands) {
    return from_strands(std::span<const Strand>(strands.begin(), strands.size()));
  }
  static StrandDiagram idempotent(PlaceMask places);

  PlaceMask sources() const { return sources_; }
  PlaceMask targets() const;
  Place target_of(Place p) const { return target_[p - 1]; }
  bool has_source(Place p) const { return (sources_ & place_bit(p)) != 0; }
  int strand_count() const;

  /// Strands sorted by source.
  std::vector<Strand> strands() const;

  /// Every strand stays on its segment of d.
  bool fits(const ArcDiagram& d) const;

  friend auto operator<=>(const StrandDiagram&, const StrandDiagram&) = default;

 private:
  PlaceMask sources_ = 0;
  std::array<std::uint8_t, kMaxPlaces> target_{};
};

using Element = Gf2Sum<StrandDiagram>;

/// Pairs of sources (i, j), i < j, with phi(i) > phi(j).
std::vector<std::pair<Place, Place>> inversions(const StrandDiagram& m);
int inversion_count(const StrandDiagram& m);

/// Concatenation m then n; nullopt (zero) when T(m) != S(n) or the composite
/// has excess inversions.
std::optional<StrandDiagram> multiply(const StrandDiagram& m, const StrandDiagram& n);
Element multiply(const Element& a, const Element& b);

/// Sum of crossing resolutions that lower the inversion count by exactly one.
Element differential(const StrandDiagram& m);
Element differential(const Element& a);

/// Interior steps swept by some strand.
InteriorMask used_steps(const ArcDiagram& d, const StrandDiagram& m);

/// `{1->3, 2->2}`
std::string to_string(const StrandDiagram& m);

}  // namespace qs
