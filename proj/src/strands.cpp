#include "qs/strands.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace qs {

StrandDiagram StrandDiagram::from_strands(std::span<const Strand> strands) {
  StrandDiagram m;
  PlaceMask targets = 0;
  for (const auto& s : strands) {
    if (s.from < 1 || s.to > kMaxPlaces || s.to < s.from) {
      throw std::invalid_argument("strand " + std::to_string(s.from) + "->" + std::to_string(s.to) +
                                  " does not go upward");
    }
    if (m.sources_ & place_bit(s.from)) throw std::invalid_argument("repeated source place");
    if (targets & place_bit(s.to)) throw std::invalid_argument("repeated target place");
    m.sources_ |= place_bit(s.from);
    targets |= place_bit(s.to);
    m.target_[s.from - 1] = static_cast<std::uint8_t>(s.to);
  }
  return m;
}

StrandDiagram StrandDiagram::idempotent(PlaceMask places) {
  StrandDiagram m;
  m.sources_ = places;
  for (Place p = 1; p <= kMaxPlaces; ++p)
    if (places & place_bit(p)) m.target_[p - 1] = static_cast<std::uint8_t>(p);
  return m;
}

PlaceMask StrandDiagram::targets() const {
  PlaceMask out = 0;
  for (PlaceMask rest = sources_; rest; rest &= rest - 1) {
    Place p = std::countr_zero(rest) + 1;
    out |= place_bit(target_of(p));
  }
  return out;
}

int StrandDiagram::strand_count() const { return std::popcount(sources_); }

std::vector<Strand> StrandDiagram::strands() const {
  std::vector<Strand> out;
  out.reserve(strand_count());
  for (PlaceMask rest = sources_; rest; rest &= rest - 1) {
    Place p = std::countr_zero(rest) + 1;
    out.push_back({p, target_of(p)});
  }
  return out;
}

bool StrandDiagram::fits(const ArcDiagram& d) const {
  for (const auto& s : strands()) {
    if (s.to > d.num_places() || !d.same_segment(s.from, s.to)) return false;
  }
  return true;
}

std::vector<std::pair<Place, Place>> inversions(const StrandDiagram& m) {
  std::vector<std::pair<Place, Place>> out;
  const auto st = m.strands();
  for (std::size_t a = 0; a < st.size(); ++a)
    for (std::size_t b = a + 1; b < st.size(); ++b)
      if (st[a].to > st[b].to) out.emplace_back(st[a].from, st[b].from);
  return out;
}

int inversion_count(const StrandDiagram& m) {
  const auto st = m.strands();
  int n = 0;
  for (std::size_t a = 0; a < st.size(); ++a)
    for (std::size_t b = a + 1; b < st.size(); ++b)
      if (st[a].to > st[b].to) ++n;
  return n;
}

std::optional<StrandDiagram> multiply(const StrandDiagram& m, const StrandDiagram& n) {
  if (m.targets() != n.sources()) return std::nullopt;
  std::vector<Strand> composite;
  for (const auto& s : m.strands()) composite.push_back({s.from, n.target_of(s.to)});
  auto out = StrandDiagram::from_strands(composite);
  if (inversion_count(out) != inversion_count(m) + inversion_count(n)) return std::nullopt;
  return out;
}

Element multiply(const Element& a, const Element& b) {
  Element out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (auto p = multiply(x, y)) out.toggle(*p);
  return out;
}

Element differential(const StrandDiagram& m) {
  Element out;
  const int inv = inversion_count(m);
  if (inv == 0) return out;
  auto st = m.strands();
  for (std::size_t a = 0; a < st.size(); ++a) {
    for (std::size_t b = a + 1; b < st.size(); ++b) {
      if (st[a].to <= st[b].to) continue;
      auto resolved = st;
      std::swap(resolved[a].to, resolved[b].to);
      auto r = StrandDiagram::from_strands(resolved);
      if (inversion_count(r) == inv - 1) out.toggle(r);
    }
  }
  return out;
}

Element differential(const Element& a) {
  Element out;
  for (const auto& x : a) out += differential(x);
  return out;
}

InteriorMask used_steps(const ArcDiagram& d, const StrandDiagram& m) {
  InteriorMask out = 0;
  for (const auto& s : m.strands())
    for (Place x = s.from; x < s.to; ++x) out |= InteriorMask{1} << d.interior_after(x);
  return out;
}

std::string to_string(const StrandDiagram& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& s : m.strands()) {
    if (!first) os << ", ";
    first = false;
    os << s.from << "->" << s.to;
  }
  os << '}';
  return os.str();
}

}  // namespace qs
