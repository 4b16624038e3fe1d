#pragma once

#include <compare>
#include <string>
#include <vector>

#include "qs/arc_diagram.hpp"
#include "qs/gf2_sum.hpp"
#include "qs/strands.hpp"

namespace qs {

/// Symmetrised Z-constrained strand diagram: the moving (strictly upward)
/// strands plus the labels carrying a dotted horizontal pair. It stands for
/// the sum of the 2^|dotted| diagrams obtained by putting each horizontal
/// strand at either twin.
struct SymGenerator {
  StrandDiagram moving;
  LabelMask dotted = 0;

  friend auto operator<=>(const SymGenerator&, const SymGenerator&) = default;
};

using SymElement = Gf2Sum<SymGenerator>;

/// Multiplicity of each interior step.
struct HomClass {
  std::vector<int> mult;

  InteriorMask support() const;
  bool is_zero() const;
  bool zero_one() const;
  HomClass& operator+=(const HomClass& o);
  friend HomClass operator+(HomClass a, const HomClass& b) { return a += b; }
  friend auto operator<=>(const HomClass&, const HomClass&) = default;
};

struct Grading {
  int maslov2 = 0;  // twice the Maslov grading
  HomClass hom;

  friend auto operator<=>(const Grading&, const Grading&) = default;
};

/// All 2^|s| place sets on which the matching restricts to a bijection onto s.
/// Choice bit j picks the upper twin of the j-th smallest label in s.
std::vector<PlaceMask> sections(const ArcDiagram& d, LabelMask s);

LabelMask start_labels(const ArcDiagram& d, const SymGenerator& g);
LabelMask end_labels(const ArcDiagram& d, const SymGenerator& g);
int strand_count(const SymGenerator& g);

/// The matching is injective on both the sources and the targets.
bool is_constrained(const ArcDiagram& d, const StrandDiagram& m);

/// Well-formedness of a generator against d.
bool is_valid(const ArcDiagram& d, const SymGenerator& g);

SymGenerator idempotent_generator(LabelMask s);

std::vector<StrandDiagram> expand(const ArcDiagram& d, const SymGenerator& g);
Element expand(const ArcDiagram& d, const SymElement& x);

/// The generator whose expansion contains the constrained diagram m.
SymGenerator generator_of(const ArcDiagram& d, const StrandDiagram& m);

/// Re-expresses a diagram-level sum in the symmetrised basis. Throws
/// NotInSymmetrisedSpan when some twin-swap orbit is only partly present.
SymElement regroup(const ArcDiagram& d, const Element& x);

/// Every generator with the given number of strands, sorted.
std::vector<SymGenerator> enumerate_basis(const ArcDiagram& d, int strands);

HomClass hom_grading(const ArcDiagram& d, const StrandDiagram& m);
HomClass hom_grading(const ArcDiagram& d, const SymGenerator& g);

/// 2*inv(phi) - 2*m(S, [mu]).
int maslov2(const ArcDiagram& d, const StrandDiagram& m);
int maslov2(const ArcDiagram& d, const SymGenerator& g);

Grading grading(const ArcDiagram& d, const SymGenerator& g);

SymElement mul_generators(const ArcDiagram& d, const SymGenerator& a, const SymGenerator& b);
SymElement multiply(const ArcDiagram& d, const SymElement& a, const SymElement& b);
SymElement diff_generator(const ArcDiagram& d, const SymGenerator& g);
SymElement differential(const ArcDiagram& d, const SymElement& x);

/// Every expansion term is crossingless.
bool crossingless(const ArcDiagram& d, const SymGenerator& g);

/// `{1->3; dotted 2}` style rendering for logs.
std::string to_string(const SymGenerator& g);

}  // namespace qs
