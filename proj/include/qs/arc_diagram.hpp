#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qs {

/// Global place number, 1-based, numbered along segment 1, then segment 2, ...
using Place = int;
/// Matched-pair label in 1..k.
using Label = int;

using PlaceMask = std::uint32_t;     // bit p-1 set for place p
using LabelMask = std::uint32_t;     // bit m-1 set for label m
using InteriorMask = std::uint32_t;  // bit i set for interior step i

inline constexpr int kMaxPlaces = 32;
inline constexpr int kMaxPairs = kMaxPlaces / 2;

constexpr PlaceMask place_bit(Place p) { return PlaceMask{1} << (p - 1); }
constexpr LabelMask label_bit(Label m) { return LabelMask{1} << (m - 1); }

enum class StepKind { Interior, Exterior };

struct Step {
  int segment = 0;   // 0-based
  int position = 0;  // 0..n for a segment with n places
  StepKind kind = StepKind::Exterior;
  std::optional<Place> before;  // place immediately below the step
  std::optional<Place> after;   // place immediately above the step

  bool interior() const { return kind == StepKind::Interior; }
};

/// Oriented segments with 2k places matched in pairs. Construction checks
/// structure only (label counts, non-empty segments); surgery validity is
/// checked separately by validate().
class ArcDiagram {
 public:
  ArcDiagram(std::vector<int> segment_sizes, std::vector<Label> matching);

  const std::vector<int>& segment_sizes() const { return segment_sizes_; }
  const std::vector<Label>& matching() const { return matching_; }

  int num_places() const { return static_cast<int>(matching_.size()); }
  int num_pairs() const { return num_places() / 2; }
  int num_segments() const { return static_cast<int>(segment_sizes_.size()); }
  int num_interior_steps() const { return num_places() - num_segments(); }

  Label label(Place p) const { return matching_[p - 1]; }
  Place twin(Place p) const { return twin_[p - 1]; }
  int segment_of(Place p) const { return segment_[p - 1]; }
  bool same_segment(Place p, Place q) const { return segment_of(p) == segment_of(q); }

  /// The two places carrying label m, smaller first.
  std::array<Place, 2> places_of(Label m) const { return pairs_[m - 1]; }

  /// Interior step index of the step immediately below / above p, or -1 when
  /// that step is exterior.
  int interior_before(Place p) const { return before_[p - 1]; }
  int interior_after(Place p) const { return after_[p - 1]; }

  /// Lower place p of interior step i = [p, p+1].
  Place interior_lower_place(int i) const { return interior_lower_[i]; }

  PlaceMask places_with_labels(LabelMask labels) const;
  LabelMask labels_of(PlaceMask places) const;

  /// Canonical text form, parseable by parse_arc_diagram.
  std::string to_text() const;

  friend bool operator==(const ArcDiagram& a, const ArcDiagram& b) {
    return a.segment_sizes_ == b.segment_sizes_ && a.matching_ == b.matching_;
  }

 private:
  std::vector<int> segment_sizes_;
  std::vector<Label> matching_;
  std::vector<Place> twin_;
  std::vector<int> segment_;
  std::vector<std::array<Place, 2>> pairs_;
  std::vector<int> before_;
  std::vector<int> after_;
  std::vector<Place> interior_lower_;
};

/// Parses the two-line `segments:` / `matching:` format. '#' starts a comment.
ArcDiagram parse_arc_diagram(std::string_view text);

struct Validation {
  bool ok = true;
  /// For an invalid diagram: the places met around one closed component, in
  /// traversal order (each sub-arc contributes its start and end place).
  std::vector<Place> circle;
};

/// Oriented surgery at every matched pair; ok iff no component is a circle.
Validation validate(const ArcDiagram& d);

/// Surgery successor on sub-arcs: the sub-arc leaving place p ends at the next
/// place q on the segment, and continues out of twin(q). Returns nullopt when
/// the sub-arc runs off the end of its segment.
std::optional<Place> surgery_successor(const ArcDiagram& d, Place p);

/// All steps, segment-major then position-minor.
std::vector<Step> steps(const ArcDiagram& d);

enum class Side { AfterV = 0, BeforeW = 1, AfterW = 2, BeforeV = 3 };
inline constexpr std::array<Side, 4> kSides = {Side::AfterV, Side::BeforeW, Side::AfterW, Side::BeforeV};

std::string_view side_name(Side s);

struct SideSlot {
  Label square = 0;
  Side side = Side::AfterV;

  friend bool operator==(const SideSlot&, const SideSlot&) = default;
};

struct Square {
  Label label = 0;
  Place v = 0;  // smaller place of the pair
  Place w = 0;
  std::array<int, 4> step{};      // global index into steps(), indexed by Side
  std::array<int, 4> interior{};  // interior step index or -1, indexed by Side
};

struct QuadSurface {
  int num_interior_steps = 0;
  std::vector<Square> squares;  // squares[m-1] has label m
  std::vector<std::pair<SideSlot, SideSlot>> gluings;  // (after slot, before slot), by interior step
  int euler_char = 0;
  int boundary_components = 0;
  int genus = 0;
  int marked_points = 0;
  int index = 0;

  const Square& square(Label m) const { return squares[m - 1]; }
};

/// Thickens the tape graph of a valid diagram into its quadrangulated surface.
/// Throws InvalidDiagram when surgery produces a circle.
QuadSurface to_quad_surface(const ArcDiagram& d);

}  // namespace qs
