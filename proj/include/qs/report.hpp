#pragma once

#include <string>

#include <json.hpp>

#include "qs/algebra.hpp"
#include "qs/arc_diagram.hpp"
#include "qs/contact.hpp"
#include "qs/homology.hpp"
#include "qs/isoverify.hpp"

namespace qs {

/// Insertion-ordered, so field order is fixed by the renderers below.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Labels of a mask in increasing order.
Json labels_json(LabelMask m);
/// Interior steps of a mask, each named by its lower place.
Json steps_json(const ArcDiagram& d, InteriorMask used);

Json diagram_json(const ArcDiagram& d);
Json validation_json(const Validation& v);
Json surface_json(const ArcDiagram& d, const QuadSurface& q);

Json generator_json(const ArcDiagram& d, const SymGenerator& g);
/// Generator plus its gradings.
Json graded_generator_json(const ArcDiagram& d, const SymGenerator& g);

/// {"s","t","h"}.
Json key_json(const SummandKey& k);
/// {"s","t","h","dim"} plus "dims" keyed by doubled Maslov degree when given.
Json summand_json(const SummandKey& k, int dim, const std::map<int, int>* dims);

Json structure_json(const ArcDiagram& d, const ContactStructure& x);

/// Deterministic unless `timing` adds the wall-clock field.
Json iso_report_json(const ArcDiagram& d, const IsoReport& r, bool timing);
Json sfh_table_json(const SfhTable& t);

/// Parses the subset flag syntax: comma-separated labels, "-" for empty.
/// Throws std::invalid_argument on bad input or labels outside 1..k.
LabelMask parse_label_set(const std::string& text, int num_pairs);
std::string format_label_set(LabelMask m);

}  // namespace qs
