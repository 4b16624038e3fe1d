#include "qs/algebra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "qs/error.hpp"

namespace qs {

InteriorMask HomClass::support() const {
  InteriorMask out = 0;
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i] != 0) out |= InteriorMask{1} << i;
  return out;
}

bool HomClass::is_zero() const {
  return std::all_of(mult.begin(), mult.end(), [](int m) { return m == 0; });
}

bool HomClass::zero_one() const {
  return std::all_of(mult.begin(), mult.end(), [](int m) { return m == 0 || m == 1; });
}

HomClass& HomClass::operator+=(const HomClass& o) {
  if (mult.size() < o.mult.size()) mult.resize(o.mult.size(), 0);
  for (std::size_t i = 0; i < o.mult.size(); ++i) mult[i] += o.mult[i];
  return *this;
}

std::vector<PlaceMask> sections(const ArcDiagram& d, LabelMask s) {
  std::vector<Label> labels;
  for (LabelMask rest = s; rest; rest &= rest - 1) labels.push_back(std::countr_zero(rest) + 1);
  const std::size_t n = labels.size();
  std::vector<PlaceMask> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << n); ++choice) {
    PlaceMask section = 0;
    for (std::size_t j = 0; j < n; ++j) section |= place_bit(d.places_of(labels[j])[(choice >> j) & 1]);
    out.push_back(section);
  }
  return out;
}

LabelMask start_labels(const ArcDiagram& d, const SymGenerator& g) {
  return g.dotted | d.labels_of(g.moving.sources());
}

LabelMask end_labels(const ArcDiagram& d, const SymGenerator& g) {
  return g.dotted | d.labels_of(g.moving.targets());
}

int strand_count(const SymGenerator& g) { return g.moving.strand_count() + std::popcount(g.dotted); }

namespace {

bool injective_on(const ArcDiagram& d, PlaceMask places) {
  return std::popcount(d.labels_of(places)) == std::popcount(places);
}

}  // namespace

bool is_constrained(const ArcDiagram& d, const StrandDiagram& m) {
  return m.fits(d) && injective_on(d, m.sources()) && injective_on(d, m.targets());
}

bool is_valid(const ArcDiagram& d, const SymGenerator& g) {
  if (!g.moving.fits(d)) return false;
  for (const auto& s : g.moving.strands())
    if (s.horizontal()) return false;
  if (g.dotted >> d.num_pairs()) return false;
  const LabelMask starts = d.labels_of(g.moving.sources());
  const LabelMask ends = d.labels_of(g.moving.targets());
  return injective_on(d, g.moving.sources()) && injective_on(d, g.moving.targets()) &&
         (g.dotted & (starts | ends)) == 0;
}

SymGenerator idempotent_generator(LabelMask s) { return SymGenerator{StrandDiagram{}, s}; }

std::vector<StrandDiagram> expand(const ArcDiagram& d, const SymGenerator& g) {
  std::vector<StrandDiagram> out;
  const auto moving = g.moving.strands();
  for (PlaceMask section : sections(d, g.dotted)) {
    auto strands = moving;
    for (PlaceMask rest = section; rest; rest &= rest - 1) {
      Place p = std::countr_zero(rest) + 1;
      strands.push_back({p, p});
    }
    out.push_back(StrandDiagram::from_strands(strands));
  }
  return out;
}

Element expand(const ArcDiagram& d, const SymElement& x) {
  Element out;
  for (const auto& g : x)
    for (const auto& m : expand(d, g)) out.toggle(m);
  return out;
}

SymGenerator generator_of(const ArcDiagram& d, const StrandDiagram& m) {
  std::vector<Strand> moving;
  LabelMask dotted = 0;
  for (const auto& s : m.strands()) {
    if (s.horizontal())
      dotted |= label_bit(d.label(s.from));
    else
      moving.push_back(s);
  }
  return SymGenerator{StrandDiagram::from_strands(moving), dotted};
}

SymElement regroup(const ArcDiagram& d, const Element& x) {
  // A diagram's generator is determined by its moving strands and the labels
  // of its horizontal strands; the diagrams sharing a generator are exactly
  // that generator's expansion, so a complete orbit is detected by its size.
  std::map<SymGenerator, std::size_t> orbit_count;
  for (const auto& m : x) ++orbit_count[generator_of(d, m)];
  SymElement out;
  for (const auto& [g, count] : orbit_count) {
    if (count != (std::size_t{1} << std::popcount(g.dotted))) {
      throw NotInSymmetrisedSpan("partial twin-swap orbit for " + to_string(g) + " (" + std::to_string(count) +
                                 " of " + std::to_string(std::size_t{1} << std::popcount(g.dotted)) + " terms)");
    }
    out.toggle(g);
  }
  return out;
}

std::vector<SymGenerator> enumerate_basis(const ArcDiagram& d, int strands) {
  std::vector<SymGenerator> out;
  const int n = d.num_places();
  std::vector<Strand> moving;

  auto emit = [&](LabelMask starts, LabelMask ends) {
    const int dots = strands - static_cast<int>(moving.size());
    const LabelMask free = ((LabelMask{1} << d.num_pairs()) - 1) & ~(starts | ends);
    if (dots < 0 || dots > std::popcount(free)) return;
    auto mv = StrandDiagram::from_strands(moving);
    // Every subset of `free` with `dots` elements.
    for (LabelMask sub = free;; sub = (sub - 1) & free) {
      if (std::popcount(sub) == dots) out.push_back(SymGenerator{mv, sub});
      if (sub == 0) break;
    }
  };

  auto rec = [&](auto&& self, Place p, PlaceMask used_targets, LabelMask starts, LabelMask ends) -> void {
    if (p > n || static_cast<int>(moving.size()) == strands) {
      emit(starts, ends);
      return;
    }
    self(self, p + 1, used_targets, starts, ends);
    const LabelMask lp = label_bit(d.label(p));
    if (starts & lp) return;
    for (Place q = p + 1; q <= n && d.same_segment(p, q); ++q) {
      const LabelMask lq = label_bit(d.label(q));
      if ((used_targets & place_bit(q)) || (ends & lq)) continue;
      moving.push_back({p, q});
      self(self, p + 1, used_targets | place_bit(q), starts | lp, ends | lq);
      moving.pop_back();
    }
  };
  if (strands < 0 || strands > d.num_pairs()) return out;
  rec(rec, 1, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

HomClass hom_grading(const ArcDiagram& d, const StrandDiagram& m) {
  HomClass h{std::vector<int>(d.num_interior_steps(), 0)};
  for (const auto& s : m.strands())
    for (Place x = s.from; x < s.to; ++x) ++h.mult[d.interior_after(x)];
  return h;
}

HomClass hom_grading(const ArcDiagram& d, const SymGenerator& g) { return hom_grading(d, g.moving); }

int maslov2(const ArcDiagram& d, const StrandDiagram& m) {
  const HomClass h = hom_grading(d, m);
  auto at = [&](int i) { return i < 0 ? 0 : h.mult[i]; };
  int twice_m = 0;
  for (PlaceMask rest = m.sources(); rest; rest &= rest - 1) {
    Place p = std::countr_zero(rest) + 1;
    twice_m += at(d.interior_before(p)) + at(d.interior_after(p));
  }
  return 2 * inversion_count(m) - twice_m;
}

int maslov2(const ArcDiagram& d, const SymGenerator& g) { return maslov2(d, expand(d, g).front()); }

Grading grading(const ArcDiagram& d, const SymGenerator& g) { return {maslov2(d, g), hom_grading(d, g)}; }

SymElement mul_generators(const ArcDiagram& d, const SymGenerator& a, const SymGenerator& b) {
  if (end_labels(d, a) != start_labels(d, b)) return {};
  Element prod;
  const auto xs = expand(d, a);
  const auto ys = expand(d, b);
  for (const auto& x : xs)
    for (const auto& y : ys)
      if (auto p = multiply(x, y)) prod.toggle(*p);
  return regroup(d, prod);
}

SymElement multiply(const ArcDiagram& d, const SymElement& a, const SymElement& b) {
  SymElement out;
  for (const auto& x : a)
    for (const auto& y : b) out += mul_generators(d, x, y);
  return out;
}

SymElement diff_generator(const ArcDiagram& d, const SymGenerator& g) {
  Element sum;
  for (const auto& m : expand(d, g)) sum += differential(m);
  return regroup(d, sum);
}

SymElement differential(const ArcDiagram& d, const SymElement& x) {
  SymElement out;
  for (const auto& g : x) out += diff_generator(d, g);
  return out;
}

bool crossingless(const ArcDiagram& d, const SymGenerator& g) {
  for (const auto& m : expand(d, g))
    if (inversion_count(m) != 0) return false;
  return true;
}

std::string to_string(const SymGenerator& g) {
  std::ostringstream os;
  os << to_string(g.moving);
  if (g.dotted) {
    os << " dotted{";
    bool first = true;
    for (LabelMask rest = g.dotted; rest; rest &= rest - 1) {
      if (!first) os << ',';
      first = false;
      os << std::countr_zero(rest) + 1;
    }
    os << '}';
  }
  return os.str();
}

}  // namespace qs
