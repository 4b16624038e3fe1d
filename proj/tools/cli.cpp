#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "qs/error.hpp"
#include "qs/report.hpp"

namespace qs::cli {

namespace {

struct Options {
  std::string file;
  bool pretty = false;
  bool timing = false;
  std::optional<int> strands;
  std::string method = "chain";
  std::string summand;
  std::string from;
  std::string to;
  int max_k = 3;
  int max_l = 3;
  int jobs = 0;
};

/// Thrown for bad flag values found after CLI11 has accepted the line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ArcDiagram load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_arc_diagram(buf.str());
}

std::string h_string(const std::vector<int>& mult) {
  std::string out;
  for (int m : mult) out += std::to_string(m);
  return out.empty() ? "-" : out;
}

std::string steps_string(const ArcDiagram& d, InteriorMask used) {
  std::string out;
  for (int i = 0; i < d.num_interior_steps(); ++i) {
    if (!((used >> i) & 1u)) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(d.interior_lower_place(i));
  }
  return out.empty() ? "-" : out;
}

std::string dims_string(const std::map<int, int>& dims) {
  std::string out;
  for (const auto& [deg, n] : dims) {
    if (!out.empty()) out += ' ';
    out += std::to_string(deg) + ":" + std::to_string(n);
  }
  return out.empty() ? "-" : out;
}

/// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::string line;
      for (std::size_t c = 0; c < rows_[i].size(); ++c) {
        line += rows_[i][c];
        if (c + 1 < rows_[i].size()) line += std::string(width[c] - rows_[i][c].size() + 2, ' ');
      }
      os << line << '\n';
      if (i == 0) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
        os << std::string(total, '-') << '\n';
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

Json envelope(const std::string& verb) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = verb;
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_validate(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  const Validation v = validate(d);
  if (o.pretty) {
    out << d.to_text();
    if (v.ok) {
      out << "valid\n";
    } else {
      out << "invalid: surgery closes a circle through places";
      for (Place p : v.circle) out << ' ' << p;
      out << '\n';
    }
  } else {
    Json j = envelope("validate");
    j["diagram"] = diagram_json(d);
    j.update(validation_json(v));
    emit(out, j);
  }
  return v.ok ? kExitOk : kExitFailure;
}

int cmd_info(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  const QuadSurface q = to_quad_surface(d);
  if (o.pretty) {
    Table t({"quantity", "value"});
    t.add({"places", std::to_string(d.num_places())});
    t.add({"pairs (squares)", std::to_string(d.num_pairs())});
    t.add({"segments", std::to_string(d.num_segments())});
    t.add({"interior steps", std::to_string(q.num_interior_steps)});
    t.add({"euler characteristic", std::to_string(q.euler_char)});
    t.add({"genus", std::to_string(q.genus)});
    t.add({"boundary components", std::to_string(q.boundary_components)});
    t.add({"marked points", std::to_string(q.marked_points)});
    t.add({"basic dividing sets", std::to_string(1u << d.num_pairs())});
    t.print(out);
    out << '\n';
    Table s({"square", "v", "w", "after_v", "before_w", "after_w", "before_v"});
    for (const auto& sq : q.squares) {
      std::vector<std::string> row{std::to_string(sq.label), std::to_string(sq.v), std::to_string(sq.w)};
      for (Side side : kSides) {
        const int i = sq.interior[static_cast<int>(side)];
        row.push_back(i < 0 ? "ext" : "step " + std::to_string(d.interior_lower_place(i)));
      }
      s.add(std::move(row));
    }
    s.print(out);
  } else {
    Json j = envelope("info");
    j["diagram"] = diagram_json(d);
    j["surface"] = surface_json(d, q);
    emit(out, j);
  }
  return kExitOk;
}

int cmd_basis(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  if (!validate(d).ok) throw InvalidDiagram("oriented surgery yields a closed circle");
  int lo = 0, hi = d.num_pairs();
  if (o.strands) {
    if (*o.strands < 0 || *o.strands > d.num_pairs()) {
      throw UsageError("--strands must lie in 0.." + std::to_string(d.num_pairs()));
    }
    lo = hi = *o.strands;
  }
  Json gens = Json::array();
  Table t({"i", "s", "t", "moving", "dotted", "maslov2", "h"});
  for (int i = lo; i <= hi; ++i) {
    for (const auto& g : enumerate_basis(d, i)) {
      if (o.pretty) {
        const Grading gr = grading(d, g);
        t.add({std::to_string(i), format_label_set(start_labels(d, g)), format_label_set(end_labels(d, g)),
               to_string(g.moving), format_label_set(g.dotted), std::to_string(gr.maslov2), h_string(gr.hom.mult)});
      } else {
        Json e = graded_generator_json(d, g);
        e["strands"] = i;
        gens.push_back(std::move(e));
      }
    }
  }
  if (o.pretty) {
    t.print(out);
  } else {
    Json j = envelope("basis");
    j["diagram"] = diagram_json(d);
    j["count"] = gens.size();
    j["generators"] = std::move(gens);
    emit(out, j);
  }
  return kExitOk;
}

std::optional<std::pair<LabelMask, LabelMask>> parse_summand_flag(const std::string& text, int k) {
  if (text.empty()) return std::nullopt;
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw UsageError("--summand expects s;t, e.g. 1,3;-");
  try {
    return std::make_pair(parse_label_set(text.substr(0, semi), k), parse_label_set(text.substr(semi + 1), k));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_homology(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  if (!validate(d).ok) throw InvalidDiagram("oriented surgery yields a closed circle");
  const int k = d.num_pairs();
  const auto only = parse_summand_flag(o.summand, k);
  auto wanted = [&](LabelMask s, LabelMask t) { return !only || (only->first == s && only->second == t); };

  // dim, and per-degree dims for the chain method.
  std::map<SummandKey, std::pair<int, std::optional<std::map<int, int>>>> table;
  if (o.method == "chain") {
    for (const auto& [key, sum] : all_summands(d)) {
      if (!wanted(key.s, key.t)) continue;
      auto dims = homology_dims(sum);
      if (const int n = total_dim(dims); n > 0) table.emplace(key, std::make_pair(n, std::move(dims)));
    }
  } else {
    const int interior = d.num_interior_steps();
    for (LabelMask s = 0; s < (LabelMask{1} << k); ++s) {
      for (LabelMask t = 0; t < (LabelMask{1} << k); ++t) {
        if (!wanted(s, t)) continue;
        for (InteriorMask u = 0; u < (InteriorMask{1} << interior); ++u) {
          HomClass h{std::vector<int>(interior, 0)};
          for (int i = 0; i < interior; ++i) h.mult[i] = (u >> i) & 1u;
          if (summand_nonzero(d, s, t, h)) table.emplace(SummandKey{s, t, h}, std::make_pair(1, std::nullopt));
        }
      }
    }
  }

  int total = 0;
  for (const auto& [key, entry] : table) total += entry.first;
  if (o.pretty) {
    Table t({"s", "t", "h", "dim", "maslov2:dim"});
    for (const auto& [key, entry] : table) {
      t.add({format_label_set(key.s), format_label_set(key.t), h_string(key.h.mult), std::to_string(entry.first),
             entry.second ? dims_string(*entry.second) : "-"});
    }
    t.print(out);
    out << "total " << total << " (" << o.method << ")\n";
  } else {
    Json j = envelope("homology");
    j["diagram"] = diagram_json(d);
    j["method"] = o.method;
    j["total_dim"] = total;
    Json rows = Json::array();
    for (const auto& [key, entry] : table) {
      rows.push_back(summand_json(key, entry.first, entry.second ? &*entry.second : nullptr));
    }
    j["summands"] = std::move(rows);
    emit(out, j);
  }
  return kExitOk;
}

int cmd_contact(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  const QuadSurface q = to_quad_surface(d);
  const int k = d.num_pairs();
  if (o.from.empty() != o.to.empty()) throw UsageError("--from and --to go together");
  std::vector<ContactStructure> structures;
  if (o.from.empty()) {
    structures = ca_table(q).basis;
  } else {
    try {
      structures = enumerate_tight(q, parse_label_set(o.from, k), parse_label_set(o.to, k));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o.pretty) {
    Table t({"bottom", "top", "used", "tight"});
    for (const auto& x : structures) {
      t.add({format_label_set(x.bottom), format_label_set(x.top), steps_string(d, x.used), x.tight ? "yes" : "no"});
    }
    t.print(out);
    out << structures.size() << " tight structures\n";
  } else {
    Json j = envelope("contact");
    j["diagram"] = diagram_json(d);
    j["count"] = structures.size();
    Json rows = Json::array();
    for (const auto& x : structures) rows.push_back(structure_json(d, x));
    j["structures"] = std::move(rows);
    emit(out, j);
  }
  return kExitOk;
}

void print_report_pretty(const ArcDiagram& d, const IsoReport& r, bool timing, std::ostream& out) {
  out << "segments " << Json(d.segment_sizes()).dump() << " matching " << Json(d.matching()).dump() << '\n';
  out << "chi " << r.euler_char << ", genus " << r.genus << ", boundary components " << r.boundary_components
      << ", squares " << r.num_pairs << '\n';
  out << "dim CA = " << r.contact_dim << ", dim H = " << r.homology_dim << ", triples " << r.triples_checked
      << ", product pairs " << r.product_pairs_checked << '\n';
  if (timing) out << "elapsed " << r.elapsed_ms << " ms\n";
  out << '\n';
  Table t({"s", "t", "h", "contact", "local", "chain", "maslov2:dim"});
  for (const auto& row : r.summands) {
    t.add({format_label_set(row.key.s), format_label_set(row.key.t), h_string(row.key.h.mult),
           std::to_string(row.contact_count), row.local_nonzero ? "1" : "0", std::to_string(row.chain_dim),
           dims_string(row.dims)});
  }
  t.print(out);
  out << '\n';
  Table e({"strands", "euler class", "dim CA_e", "dim H(A(Z,i))"});
  for (const auto& [i, dims] : r.strand_count_dims) {
    e.add({std::to_string(i), std::to_string(r.num_pairs - 2 * i), std::to_string(dims.first),
           std::to_string(dims.second)});
  }
  e.print(out);
  out << '\n';
  for (const auto& m : r.mismatches) out << "MISMATCH " << m << '\n';
  out << (r.success() ? "verified" : "FAILED") << '\n';
}

int cmd_verify(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  const IsoReport r = verify(d);
  if (o.pretty) {
    print_report_pretty(d, r, o.timing, out);
  } else {
    Json j = envelope("verify");
    j.update(iso_report_json(d, r, o.timing));
    emit(out, j);
  }
  return r.success() ? kExitOk : kExitFailure;
}

int cmd_sfh_table(const Options& o, std::ostream& out) {
  const ArcDiagram d = load(o.file);
  const SfhTable t = sfh_table(d);
  if (o.pretty) {
    std::vector<std::string> header{"bottom \\ top"};
    for (std::size_t s = 0; s < t.dims.size(); ++s) header.push_back(format_label_set(static_cast<LabelMask>(s)));
    Table table(header);
    for (std::size_t s = 0; s < t.dims.size(); ++s) {
      std::vector<std::string> row{format_label_set(static_cast<LabelMask>(s))};
      for (std::size_t u = 0; u < t.dims[s].size(); ++u) {
        std::string cell = std::to_string(t.dims[s][u]);
        if (t.dims[s][u] != t.homology_dims[s][u]) cell += "!=" + std::to_string(t.homology_dims[s][u]);
        row.push_back(std::move(cell));
      }
      table.add(std::move(row));
    }
    table.print(out);
    out << (t.consistent() ? "consistent with homology" : "INCONSISTENT with homology") << '\n';
  } else {
    Json j = envelope("sfh-table");
    j["diagram"] = diagram_json(d);
    j.update(sfh_table_json(t));
    emit(out, j);
  }
  return t.consistent() ? kExitOk : kExitFailure;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  if (o.max_k < 1 || o.max_l < 1) throw UsageError("--max-k and --max-l must be at least 1");
  if (o.max_k > 6) throw UsageError("--max-k above 6 is out of reach for the exhaustive checks");
  const auto diagrams = generate_corpus(o.max_k, o.max_l);
  const int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto reports = verify_all(diagrams, jobs);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const IsoReport& r) { return r.success(); });
  double elapsed = 0;
  for (const auto& r : reports) elapsed += r.elapsed_ms;
  if (o.pretty) {
    Table t({"segments", "matching", "chi", "genus", "dim CA", "dim H", "pairs", "status"});
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
      const auto& r = reports[i];
      t.add({Json(diagrams[i].segment_sizes()).dump(), Json(diagrams[i].matching()).dump(),
             std::to_string(r.euler_char), std::to_string(r.genus), std::to_string(r.contact_dim),
             std::to_string(r.homology_dim), std::to_string(r.product_pairs_checked), r.success() ? "ok" : "FAILED"});
    }
    t.print(out);
    out << diagrams.size() << " diagrams, " << (ok ? "all verified" : "FAILURES") << '\n';
    if (o.timing) out << "verification time " << elapsed << " ms\n";
  } else {
    Json j = envelope("corpus");
    j["max_k"] = o.max_k;
    j["max_l"] = o.max_l;
    j["count"] = diagrams.size();
    j["all_verified"] = ok;
    Json rows = Json::array();
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
      const auto& r = reports[i];
      Json e = diagram_json(diagrams[i]);
      e["euler_char"] = r.euler_char;
      e["genus"] = r.genus;
      e["boundary_components"] = r.boundary_components;
      e["contact_dim"] = r.contact_dim;
      e["homology_dim"] = r.homology_dim;
      e["product_pairs_checked"] = r.product_pairs_checked;
      e["success"] = r.success();
      e["mismatches"] = r.mismatches;
      if (o.timing) e["elapsed_ms"] = r.elapsed_ms;
      rows.push_back(std::move(e));
    }
    j["diagrams"] = std::move(rows);
    emit(out, j);
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strand algebra homology and tight cubulated structures of arc diagrams, over GF(2)", "qstrand"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Aligned tables instead of JSON");

  auto file_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", o.file, "Arc-diagram file")->required();
    return sub;
  };
  CLI::App* validate_cmd = file_cmd("validate", "Check that surgery gives no closed circle");
  CLI::App* info_cmd = file_cmd("info", "Surface invariants of the quadrangulation");
  CLI::App* basis_cmd = file_cmd("basis", "List symmetrised generators with gradings");
  basis_cmd->add_option("--strands", o.strands, "Only generators with this many strands");
  CLI::App* homology_cmd = file_cmd("homology", "Homology dimension per (s, t, h) summand");
  homology_cmd->add_option("--method", o.method, "chain or local")->check(CLI::IsMember({"chain", "local"}));
  homology_cmd->add_option("--summand", o.summand, "Restrict to s;t, e.g. 1,3;-");
  CLI::App* contact_cmd = file_cmd("contact", "Tight cubulated contact structures");
  contact_cmd->add_option("--from", o.from, "Bottom dividing set, e.g. 1,2 or -");
  contact_cmd->add_option("--to", o.to, "Top dividing set");
  CLI::App* verify_cmd = file_cmd("verify", "Check the contact category against strand homology");
  verify_cmd->add_flag("--timing", o.timing, "Include wall-clock time (output no longer deterministic)");
  CLI::App* sfh_cmd = file_cmd("sfh-table", "Tight-structure counts per pair of dividing sets");
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Verify every valid diagram up to a size bound");
  corpus_cmd->fallthrough();
  corpus_cmd->add_option("--max-k", o.max_k, "Largest number of matched pairs")->required();
  corpus_cmd->add_option("--max-l", o.max_l, "Largest number of segments")->required();
  corpus_cmd->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");
  corpus_cmd->add_flag("--timing", o.timing, "Include wall-clock time");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qstrand: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (info_cmd->parsed()) return cmd_info(o, out);
    if (basis_cmd->parsed()) return cmd_basis(o, out);
    if (homology_cmd->parsed()) return cmd_homology(o, out);
    if (contact_cmd->parsed()) return cmd_contact(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (sfh_cmd->parsed()) return cmd_sfh_table(o, out);
    if (corpus_cmd->parsed()) return cmd_corpus(o, out);
  } catch (const UsageError& e) {
    err << "qstrand: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "qstrand: " << o.file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidDiagram& e) {
    err << "qstrand: " << o.file << ": invalid diagram: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qs::cli
