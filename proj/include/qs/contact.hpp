#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "qs/arc_diagram.hpp"

namespace qs {

/// Basic dividing set: the squares that carry the standard negative ("on")
/// dividing set.
struct DividingSetBasic {
  LabelMask on = 0;

  int euler_class(int num_squares) const;
  friend auto operator<=>(const DividingSetBasic&, const DividingSetBasic&) = default;
};

/// Face data of one cube of the cubulation. `used` is indexed by Side, whose
/// order after_v, before_w, after_w, before_v is the cyclic order of the side
/// faces.
struct CubeData {
  bool bottom_on = false;
  bool top_on = false;
  std::array<bool, 4> used{};

  bool is_used(Side s) const { return used[static_cast<int>(s)]; }

  /// Bit 0 bottom, bit 1 top, bits 2..5 sides; 0..63.
  int index() const;
  static CubeData from_index(int index);

  /// Exchange of the two positive vertices.
  CubeData swapped() const;

  friend bool operator==(const CubeData&, const CubeData&) = default;
};

/// Whether the rounded cube has a connected dividing set.
bool cube_tight(const CubeData& c);

/// A cubulated contact structure on Sigma x [0,1]: bottom and top basic
/// dividing sets and the used decomposing arcs (interior steps).
struct ContactStructure {
  LabelMask bottom = 0;
  LabelMask top = 0;
  InteriorMask used = 0;
  bool tight = false;

  friend bool operator==(const ContactStructure& a, const ContactStructure& b) {
    return a.bottom == b.bottom && a.top == b.top && a.used == b.used;
  }
  friend auto operator<=>(const ContactStructure& a, const ContactStructure& b) {
    return std::tie(a.bottom, a.top, a.used) <=> std::tie(b.bottom, b.top, b.used);
  }
};

CubeData cube_data(const QuadSurface& q, const ContactStructure& xi, Label square);

/// Builds the structure and fills in its tightness verdict.
ContactStructure make_structure(const QuadSurface& q, LabelMask bottom, LabelMask top, InteriorMask used);

ContactStructure identity_structure(const QuadSurface& q, LabelMask dividing);

/// Every used-arc labelling with all cubes tight, in increasing order of the
/// used mask.
std::vector<ContactStructure> enumerate_tight(const QuadSurface& q, LabelMask bottom, LabelMask top);

/// Stacks x1 on top of x0; nullopt is zero (non-composable, shared used arc,
/// or an overtwisted cube).
std::optional<ContactStructure> stack(const QuadSurface& q, const ContactStructure& x0, const ContactStructure& x1);

/// Multiplication table of the contact category algebra over its basis of
/// tight structures.
struct CaTable {
  std::vector<ContactStructure> basis;  // sorted by (bottom, top, used)
  std::vector<std::vector<int>> product;  // basis index or -1 for zero
  std::vector<int> unit;  // indices of the identity structures

  int index_of(const ContactStructure& x) const;
};

CaTable ca_table(const QuadSurface& q);

/// Face-state to matching convention for the connectivity oracle. Each face
/// of the cube carries one of the two non-crossing matchings of its four edge
/// midpoints; a swap flag exchanges which state gets which matching.
struct CubeCalibration {
  bool bottom_swap = false;
  bool top_swap = false;
  bool side_swap = false;

  friend bool operator==(const CubeCalibration&, const CubeCalibration&) = default;
};

/// Closed components of the union of the six face matchings.
int dividing_curve_components(const CubeData& c, const CubeCalibration& cal);

struct CubeAnchor {
  CubeData cube;
  bool tight = false;
};

/// (all unused, on/on) tight; (all unused, off/on) not; (after_v only, on/off) tight.
std::vector<CubeAnchor> default_cube_anchors();

/// Calibrations whose oracle reproduces every anchor. With `side_swap` set,
/// the side-face convention is fixed and only top/bottom are searched.
std::vector<CubeCalibration> anchor_consistent_calibrations(std::span<const CubeAnchor> anchors,
                                                            std::optional<bool> side_swap = std::nullopt);

/// The unique anchor-consistent calibration. With `fix_chirality`, the side
/// convention comes from the handedness of unused faces (they spiral
/// clockwise seen from above), which the anchors cannot detect because they
/// are symmetric under mirroring. Throws CalibrationUnresolved otherwise.
CubeCalibration calibrate_cube_oracle(bool fix_chirality = true);

/// Components under calibrate_cube_oracle().
int dividing_curve_components(const CubeData& c);

}  // namespace qs
