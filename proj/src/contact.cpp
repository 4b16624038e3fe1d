#include "qs/contact.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "qs/error.hpp"

namespace qs {

int DividingSetBasic::euler_class(int num_squares) const { return num_squares - 2 * std::popcount(on); }

int CubeData::index() const {
  int i = (bottom_on ? 1 : 0) | (top_on ? 2 : 0);
  for (int s = 0; s < 4; ++s)
    if (used[s]) i |= 4 << s;
  return i;
}

CubeData CubeData::from_index(int index) {
  CubeData c;
  c.bottom_on = index & 1;
  c.top_on = index & 2;
  for (int s = 0; s < 4; ++s) c.used[s] = (index >> (2 + s)) & 1;
  return c;
}

CubeData CubeData::swapped() const {
  CubeData c = *this;
  std::swap(c.used[static_cast<int>(Side::AfterV)], c.used[static_cast<int>(Side::AfterW)]);
  std::swap(c.used[static_cast<int>(Side::BeforeV)], c.used[static_cast<int>(Side::BeforeW)]);
  return c;
}

bool cube_tight(const CubeData& c) {
  const bool av = c.is_used(Side::AfterV);
  const bool bw = c.is_used(Side::BeforeW);
  const bool aw = c.is_used(Side::AfterW);
  const bool bv = c.is_used(Side::BeforeV);
  const bool bot = c.bottom_on;
  const bool top = c.top_on;
  switch (av + bw + aw + bv) {
    case 0:
    case 4:
      return bot == top;
    case 1:
      if (av || aw) return bot && !top;
      return !bot && top;
    case 2:
      if ((av && bw) || (aw && bv)) return bot && top;    // after one vertex, before the other
      if ((av && bv) || (aw && bw)) return !bot && !top;  // both sides of one vertex
      return false;                                       // opposite faces
    case 3:
      if (!av || !aw) return !bot && top;  // unused face is after a vertex
      return bot && !top;                  // unused face is before a vertex
  }
  return false;
}

CubeData cube_data(const QuadSurface& q, const ContactStructure& xi, Label square) {
  const Square& sq = q.square(square);
  CubeData c;
  c.bottom_on = xi.bottom & label_bit(square);
  c.top_on = xi.top & label_bit(square);
  for (int s = 0; s < 4; ++s) {
    const int i = sq.interior[s];
    c.used[s] = i >= 0 && ((xi.used >> i) & 1u);
  }
  return c;
}

ContactStructure make_structure(const QuadSurface& q, LabelMask bottom, LabelMask top, InteriorMask used) {
  ContactStructure xi{bottom, top, used, true};
  for (const auto& sq : q.squares) {
    if (!cube_tight(cube_data(q, xi, sq.label))) {
      xi.tight = false;
      break;
    }
  }
  return xi;
}

ContactStructure identity_structure(const QuadSurface& q, LabelMask dividing) {
  return make_structure(q, dividing, dividing, 0);
}

std::vector<ContactStructure> enumerate_tight(const QuadSurface& q, LabelMask bottom, LabelMask top) {
  std::vector<ContactStructure> out;
  const InteriorMask limit = InteriorMask{1} << q.num_interior_steps;
  for (InteriorMask used = 0; used < limit; ++used) {
    auto xi = make_structure(q, bottom, top, used);
    if (xi.tight) out.push_back(xi);
  }
  return out;
}

std::optional<ContactStructure> stack(const QuadSurface& q, const ContactStructure& x0, const ContactStructure& x1) {
  if (x0.top != x1.bottom) return std::nullopt;
  if (x0.used & x1.used) return std::nullopt;  // a face used twice gives an overtwisted disc
  auto xi = make_structure(q, x0.bottom, x1.top, x0.used | x1.used);
  if (!xi.tight) return std::nullopt;
  return xi;
}

int CaTable::index_of(const ContactStructure& x) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), x);
  if (it == basis.end() || !(*it == x)) return -1;
  return static_cast<int>(it - basis.begin());
}

CaTable ca_table(const QuadSurface& q) {
  CaTable t;
  const LabelMask subsets = LabelMask{1} << q.index;
  for (LabelMask bottom = 0; bottom < subsets; ++bottom)
    for (LabelMask top = 0; top < subsets; ++top)
      for (auto& xi : enumerate_tight(q, bottom, top)) t.basis.push_back(xi);
  std::sort(t.basis.begin(), t.basis.end());

  const std::size_t n = t.basis.size();
  t.product.assign(n, std::vector<int>(n, -1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (auto xi = stack(q, t.basis[a], t.basis[b])) t.product[a][b] = t.index_of(*xi);
  for (LabelMask s = 0; s < subsets; ++s) t.unit.push_back(t.index_of(identity_structure(q, s)));
  return t;
}

namespace {

// Edge midpoints of the cube: bottom edges 0..3, top edges 4..7, vertical
// edges 8..11. Corners of a square run v, n1, w, n2 and side j joins corner j
// to corner j+1, so Side indices double as edge indices.
constexpr int bottom_edge(int j) { return j; }
constexpr int top_edge(int j) { return 4 + j; }
constexpr int vertical_edge(int corner) { return 8 + corner % 4; }

}  // namespace

int dividing_curve_components(const CubeData& c, const CubeCalibration& cal) {
  std::array<std::vector<int>, 12> adj;
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  auto square_face = [&](auto edge, bool cut_negative_corners) {
    if (cut_negative_corners) {
      link(edge(0), edge(1));
      link(edge(2), edge(3));
    } else {
      link(edge(3), edge(0));
      link(edge(1), edge(2));
    }
  };
  square_face(bottom_edge, c.bottom_on != cal.bottom_swap);
  square_face(top_edge, c.top_on != cal.top_swap);
  for (int j = 0; j < 4; ++j) {
    if (c.used[j] != cal.side_swap) {
      link(bottom_edge(j), vertical_edge(j));
      link(top_edge(j), vertical_edge(j + 1));
    } else {
      link(bottom_edge(j), vertical_edge(j + 1));
      link(top_edge(j), vertical_edge(j));
    }
  }
  std::array<bool, 12> seen{};
  int components = 0;
  for (int start = 0; start < 12; ++start) {
    if (seen[start]) continue;
    ++components;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (seen[x]) continue;
      seen[x] = true;
      for (int y : adj[x]) stack.push_back(y);
    }
  }
  return components;
}

std::vector<CubeAnchor> default_cube_anchors() {
  CubeData on_on{true, true, {}};
  CubeData off_on{false, true, {}};
  CubeData after_v{true, false, {}};
  after_v.used[static_cast<int>(Side::AfterV)] = true;
  return {{on_on, true}, {off_on, false}, {after_v, true}};
}

std::vector<CubeCalibration> anchor_consistent_calibrations(std::span<const CubeAnchor> anchors,
                                                            std::optional<bool> side_swap) {
  std::vector<CubeCalibration> out;
  for (int bits = 0; bits < 8; ++bits) {
    CubeCalibration cal{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
    if (side_swap && cal.side_swap != *side_swap) continue;
    const bool fits = std::all_of(anchors.begin(), anchors.end(), [&](const CubeAnchor& a) {
      return (dividing_curve_components(a.cube, cal) == 1) == a.tight;
    });
    if (fits) out.push_back(cal);
  }
  return out;
}

CubeCalibration calibrate_cube_oracle(bool fix_chirality) {
  // Descending an unused side face while turning clockwise (seen from above)
  // runs from the top midpoint toward the side's starting corner, which is the
  // unswapped side matching.
  const auto anchors = default_cube_anchors();
  auto candidates =
      anchor_consistent_calibrations(anchors, fix_chirality ? std::optional<bool>(false) : std::nullopt);
  if (candidates.size() != 1) {
    throw CalibrationUnresolved(std::to_string(candidates.size()) + " calibrations fit the anchor cubes");
  }
  return candidates.front();
}

int dividing_curve_components(const CubeData& c) {
  static const CubeCalibration cal = calibrate_cube_oracle(true);
  return dividing_curve_components(c, cal);
}

}  // namespace qs
