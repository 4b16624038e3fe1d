#include "qs/report.hpp"

#include <bit>
#include <stdexcept>

namespace qs {

Json labels_json(LabelMask m) {
  Json out = Json::array();
  for (LabelMask r = m; r; r &= r - 1) out.push_back(std::countr_zero(r) + 1);
  return out;
}

Json steps_json(const ArcDiagram& d, InteriorMask used) {
  Json out = Json::array();
  for (int i = 0; i < d.num_interior_steps(); ++i)
    if ((used >> i) & 1u) out.push_back(d.interior_lower_place(i));
  return out;
}

Json diagram_json(const ArcDiagram& d) {
  Json j;
  j["segments"] = d.segment_sizes();
  j["matching"] = d.matching();
  return j;
}

Json validation_json(const Validation& v) {
  Json j;
  j["valid"] = v.ok;
  if (!v.ok) j["circle"] = v.circle;
  return j;
}

Json surface_json(const ArcDiagram& d, const QuadSurface& q) {
  Json j;
  j["places"] = d.num_places();
  j["pairs"] = d.num_pairs();
  j["segments"] = d.num_segments();
  j["interior_steps"] = q.num_interior_steps;
  j["euler_char"] = q.euler_char;
  j["genus"] = q.genus;
  j["boundary_components"] = q.boundary_components;
  j["marked_points"] = q.marked_points;
  j["index"] = q.index;
  j["squares"] = q.squares.size();
  j["basic_dividing_sets"] = std::size_t{1} << d.num_pairs();
  Json squares = Json::array();
  for (const auto& sq : q.squares) {
    Json s;
    s["label"] = sq.label;
    s["v"] = sq.v;
    s["w"] = sq.w;
    Json sides;
    for (Side side : kSides) {
      const int i = sq.interior[static_cast<int>(side)];
      sides[std::string(side_name(side))] = i < 0 ? Json(nullptr) : Json(d.interior_lower_place(i));
    }
    s["sides"] = std::move(sides);
    squares.push_back(std::move(s));
  }
  j["square_sides"] = std::move(squares);
  Json gluings = Json::array();
  for (std::size_t i = 0; i < q.gluings.size(); ++i) {
    const auto& [a, b] = q.gluings[i];
    Json g;
    g["step"] = d.interior_lower_place(static_cast<int>(i));
    g["after"] = {a.square, side_name(a.side)};
    g["before"] = {b.square, side_name(b.side)};
    gluings.push_back(std::move(g));
  }
  j["gluings"] = std::move(gluings);
  return j;
}

Json generator_json(const ArcDiagram& d, const SymGenerator& g) {
  Json j;
  j["s"] = labels_json(start_labels(d, g));
  j["t"] = labels_json(end_labels(d, g));
  Json moving = Json::array();
  for (const auto& st : g.moving.strands()) moving.push_back({st.from, st.to});
  j["moving"] = std::move(moving);
  j["dotted"] = labels_json(g.dotted);
  return j;
}

Json graded_generator_json(const ArcDiagram& d, const SymGenerator& g) {
  Json j = generator_json(d, g);
  const Grading gr = grading(d, g);
  j["maslov2"] = gr.maslov2;
  j["h"] = gr.hom.mult;
  return j;
}

Json key_json(const SummandKey& k) {
  Json j;
  j["s"] = labels_json(k.s);
  j["t"] = labels_json(k.t);
  j["h"] = k.h.mult;
  return j;
}

Json summand_json(const SummandKey& k, int dim, const std::map<int, int>* dims) {
  Json j = key_json(k);
  j["dim"] = dim;
  if (dims) {
    Json by_degree = Json::object();
    for (const auto& [deg, n] : *dims) by_degree[std::to_string(deg)] = n;
    j["dims"] = std::move(by_degree);
  }
  return j;
}

Json structure_json(const ArcDiagram& d, const ContactStructure& x) {
  Json j;
  j["bottom"] = labels_json(x.bottom);
  j["top"] = labels_json(x.top);
  j["used"] = steps_json(d, x.used);
  j["tight"] = x.tight;
  return j;
}

Json iso_report_json(const ArcDiagram& d, const IsoReport& r, bool timing) {
  Json j;
  j["diagram"] = diagram_json(d);
  Json surface;
  surface["pairs"] = r.num_pairs;
  surface["segments"] = r.num_segments;
  surface["euler_char"] = r.euler_char;
  surface["genus"] = r.genus;
  surface["boundary_components"] = r.boundary_components;
  j["surface"] = std::move(surface);
  j["success"] = r.success();
  j["contact_dim"] = r.contact_dim;
  j["homology_dim"] = r.homology_dim;
  j["triples_checked"] = r.triples_checked;
  j["product_pairs_checked"] = r.product_pairs_checked;
  Json by_strands = Json::array();
  for (const auto& [i, dims] : r.strand_count_dims) {
    Json e;
    e["strands"] = i;
    e["euler_class"] = r.num_pairs - 2 * i;
    e["contact_dim"] = dims.first;
    e["homology_dim"] = dims.second;
    by_strands.push_back(std::move(e));
  }
  j["strand_count_dims"] = std::move(by_strands);
  Json rows = Json::array();
  for (const auto& row : r.summands) {
    Json e = key_json(row.key);
    e["contact"] = row.contact_count;
    e["local"] = row.local_nonzero ? 1 : 0;
    e["chain"] = row.chain_dim;
    Json by_degree = Json::object();
    for (const auto& [deg, n] : row.dims) by_degree[std::to_string(deg)] = n;
    e["dims"] = std::move(by_degree);
    rows.push_back(std::move(e));
  }
  j["summands"] = std::move(rows);
  Json bij = Json::array();
  for (const auto& [x, key] : r.bijection) {
    Json e;
    e["structure"] = structure_json(d, x);
    e["summand"] = key_json(key);
    bij.push_back(std::move(e));
  }
  j["bijection"] = std::move(bij);
  j["mismatches"] = r.mismatches;
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json sfh_table_json(const SfhTable& t) {
  Json j;
  j["pairs"] = t.num_pairs;
  Json sets = Json::array();
  for (std::size_t s = 0; s < t.dims.size(); ++s) sets.push_back(format_label_set(static_cast<LabelMask>(s)));
  j["dividing_sets"] = std::move(sets);
  j["dims"] = t.dims;
  j["homology_dims"] = t.homology_dims;
  j["consistent"] = t.consistent();
  return j;
}

LabelMask parse_label_set(const std::string& text, int num_pairs) {
  if (text == "-") return 0;
  if (text.empty()) throw std::invalid_argument("empty label set; use '-' for the empty set");
  LabelMask out = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 3) {
      throw std::invalid_argument("bad label '" + item + "' in set '" + text + "'");
    }
    const int m = std::stoi(item);
    if (m < 1 || m > num_pairs) {
      throw std::invalid_argument("label " + item + " outside 1.." + std::to_string(num_pairs));
    }
    if (out & label_bit(m)) throw std::invalid_argument("label " + item + " repeated");
    out |= label_bit(m);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_label_set(LabelMask m) {
  if (m == 0) return "-";
  std::string out;
  for (LabelMask r = m; r; r &= r - 1) {
    if (!out.empty()) out += ',';
    out += std::to_string(std::countr_zero(r) + 1);
  }
  return out;
}

}  // namespace qs
