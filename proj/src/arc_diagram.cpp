#include "qs/arc_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "qs/error.hpp"

namespace qs {

ArcDiagram::ArcDiagram(std::vector<int> segment_sizes, std::vector<Label> matching)
    : segment_sizes_(std::move(segment_sizes)), matching_(std::move(matching)) {
  if (segment_sizes_.empty()) throw InvalidDiagram("arc diagram needs at least one segment");
  int total = 0;
  for (int n : segment_sizes_) {
    if (n < 1) throw InvalidDiagram("segment with no places");
    total += n;
  }
  if (total != num_places()) {
    throw InvalidDiagram("segment sizes sum to " + std::to_string(total) + " but matching has " +
                         std::to_string(num_places()) + " places");
  }
  if (num_places() % 2 != 0) throw InvalidDiagram("odd number of places");
  if (num_places() > kMaxPlaces) throw InvalidDiagram("too many places (max " + std::to_string(kMaxPlaces) + ")");

  const int k = num_pairs();
  pairs_.assign(k, {0, 0});
  std::vector<int> count(k, 0);
  for (Place p = 1; p <= num_places(); ++p) {
    Label m = label(p);
    if (m < 1 || m > k) throw InvalidDiagram("label " + std::to_string(m) + " outside 1.." + std::to_string(k));
    if (count[m - 1] < 2) pairs_[m - 1][count[m - 1]] = p;
    ++count[m - 1];
  }
  for (Label m = 1; m <= k; ++m) {
    if (count[m - 1] != 2) {
      throw InvalidDiagram("label " + std::to_string(m) + " occurs " + std::to_string(count[m - 1]) + " times");
    }
  }

  twin_.resize(num_places());
  for (const auto& [v, w] : pairs_) {
    twin_[v - 1] = w;
    twin_[w - 1] = v;
  }

  segment_.reserve(num_places());
  for (int j = 0; j < num_segments(); ++j) segment_.insert(segment_.end(), segment_sizes_[j], j);

  before_.assign(num_places(), -1);
  after_.assign(num_places(), -1);
  for (Place p = 1; p < num_places(); ++p) {
    if (segment_of(p) != segment_of(p + 1)) continue;
    int i = static_cast<int>(interior_lower_.size());
    interior_lower_.push_back(p);
    after_[p - 1] = i;
    before_[p] = i;
  }
}

PlaceMask ArcDiagram::places_with_labels(LabelMask labels) const {
  PlaceMask out = 0;
  for (Place p = 1; p <= num_places(); ++p)
    if (labels & label_bit(label(p))) out |= place_bit(p);
  return out;
}

LabelMask ArcDiagram::labels_of(PlaceMask places) const {
  LabelMask out = 0;
  for (Place p = 1; p <= num_places(); ++p)
    if (places & place_bit(p)) out |= label_bit(label(p));
  return out;
}

std::string ArcDiagram::to_text() const {
  std::ostringstream os;
  os << "segments:";
  for (int n : segment_sizes_) os << ' ' << n;
  os << "\nmatching:";
  for (Label m : matching_) os << ' ' << m;
  os << '\n';
  return os.str();
}

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

std::vector<std::pair<int, int>> parse_numbers(const std::vector<Token>& tokens, std::size_t from, int line_no) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t j = from; j < tokens.size(); ++j) {
    const auto& tok = tokens[j];
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
      throw ParseError(line_no, tok.column, "expected an integer, got '" + std::string(tok.text) + "'");
    }
    out.emplace_back(value, tok.column);
  }
  return out;
}

}  // namespace

ArcDiagram parse_arc_diagram(std::string_view text) {
  struct Line {
    int number;
    std::vector<Token> tokens;
    std::string content;
  };
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}, std::string(raw)};
    line.tokens = tokenize(line.content);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }

  auto expect_header = [&](std::size_t idx, std::string_view key) -> const Line& {
    if (idx >= lines.size()) throw ParseError(number, 0, "missing '" + std::string(key) + ":' line");
    const Line& line = lines[idx];
    const std::string& head = line.tokens.front().text;
    // Accept both "key:" and "key :" spellings.
    if (head == std::string(key) + ":") return line;
    if (head == key && line.tokens.size() > 1 && line.tokens[1].text == ":") return line;
    throw ParseError(line.number, line.tokens.front().column, "expected '" + std::string(key) + ":'");
  };
  auto first_value = [](const Line& line) -> std::size_t { return line.tokens[0].text.back() == ':' ? 1 : 2; };

  const Line& seg_line = expect_header(0, "segments");
  const Line& match_line = expect_header(1, "matching");
  if (lines.size() > 2) throw ParseError(lines[2].number, lines[2].tokens.front().column, "unexpected trailing content");

  auto sizes = parse_numbers(seg_line.tokens, first_value(seg_line), seg_line.number);
  auto labels = parse_numbers(match_line.tokens, first_value(match_line), match_line.number);
  if (sizes.empty()) throw ParseError(seg_line.number, 0, "no segments given");

  std::vector<int> segment_sizes;
  int total = 0;
  for (auto [n, col] : sizes) {
    if (n < 1) throw ParseError(seg_line.number, col, "empty segment (size " + std::to_string(n) + ")");
    segment_sizes.push_back(n);
    total += n;
  }
  if (static_cast<int>(labels.size()) != total) {
    throw ParseError(match_line.number, 0,
                     "matching has " + std::to_string(labels.size()) + " labels but segments hold " +
                         std::to_string(total) + " places");
  }
  if (total % 2 != 0) throw ParseError(match_line.number, 0, "odd number of places");
  if (total > kMaxPlaces) throw ParseError(seg_line.number, 0, "too many places (max " + std::to_string(kMaxPlaces) + ")");
  const int k = total / 2;

  std::map<int, std::vector<int>> seen;  // label -> columns
  std::vector<Label> matching;
  for (auto [m, col] : labels) {
    if (m < 1 || m > k) {
      throw ParseError(match_line.number, col, "label " + std::to_string(m) + " outside 1.." + std::to_string(k));
    }
    seen[m].push_back(col);
    matching.push_back(m);
  }
  for (Label m = 1; m <= k; ++m) {
    const auto& cols = seen[m];
    if (cols.size() != 2) {
      int col = cols.size() > 2 ? cols[2] : 0;
      throw ParseError(match_line.number, col,
                       "label " + std::to_string(m) + " occurs " + std::to_string(cols.size()) + " times");
    }
  }
  return ArcDiagram(std::move(segment_sizes), std::move(matching));
}

std::optional<Place> surgery_successor(const ArcDiagram& d, Place p) {
  if (p < d.num_places() && d.same_segment(p, p + 1)) return d.twin(p + 1);
  return std::nullopt;
}

Validation validate(const ArcDiagram& d) {
  // Sub-arcs are the pieces of Z cut at every place. Those starting at a
  // segment's beginning trace out the arc components; any sub-arc never
  // reached that way lies on a circle.
  const int n = d.num_places();
  std::vector<bool> reached(n + 1, false);
  int first = 1;
  for (int j = 0; j < d.num_segments(); ++j) {
    // The initial sub-arc ends at `first`, then continues out of its twin.
    std::optional<Place> cur = d.twin(first);
    while (cur && !reached[*cur]) {
      reached[*cur] = true;
      cur = surgery_successor(d, *cur);
    }
    first += d.segment_sizes()[j];
  }
  Validation out;
  for (Place p = 1; p <= n; ++p) {
    if (reached[p]) continue;
    out.ok = false;
    Place cur = p;
    do {
      out.circle.push_back(cur);
      out.circle.push_back(cur + 1);
      cur = *surgery_successor(d, cur);
    } while (cur != p);
    break;
  }
  return out;
}

std::vector<Step> steps(const ArcDiagram& d) {
  std::vector<Step> out;
  Place first = 1;
  for (int j = 0; j < d.num_segments(); ++j) {
    const int n = d.segment_sizes()[j];
    for (int pos = 0; pos <= n; ++pos) {
      Step s;
      s.segment = j;
      s.position = pos;
      s.kind = (pos == 0 || pos == n) ? StepKind::Exterior : StepKind::Interior;
      if (pos > 0) s.before = first + pos - 1;
      if (pos < n) s.after = first + pos;
      out.push_back(s);
    }
    first += n;
  }
  return out;
}

std::string_view side_name(Side s) {
  switch (s) {
    case Side::AfterV: return "after_v";
    case Side::BeforeW: return "before_w";
    case Side::AfterW: return "after_w";
    case Side::BeforeV: return "before_v";
  }
  return "?";
}

QuadSurface to_quad_surface(const ArcDiagram& d) {
  if (auto v = validate(d); !v.ok) throw InvalidDiagram("oriented surgery yields a closed circle");

  const int k = d.num_pairs();
  QuadSurface q;
  q.num_interior_steps = d.num_interior_steps();
  q.index = k;
  q.euler_char = d.num_segments() - k;
  q.marked_points = 2 * d.num_segments();

  // Global step index of the steps just below and above each place.
  std::vector<int> step_below(d.num_places() + 1), step_above(d.num_places() + 1);
  {
    int idx = 0;
    Place first = 1;
    for (int n : d.segment_sizes()) {
      for (int pos = 0; pos < n; ++pos) {
        step_below[first + pos] = idx + pos;
        step_above[first + pos] = idx + pos + 1;
      }
      idx += n + 1;
      first += n;
    }
  }

  q.squares.resize(k);
  for (Label m = 1; m <= k; ++m) {
    auto [v, w] = d.places_of(m);
    Square& sq = q.squares[m - 1];
    sq.label = m;
    sq.v = v;
    sq.w = w;
    sq.step[static_cast<int>(Side::AfterV)] = step_above[v];
    sq.step[static_cast<int>(Side::BeforeW)] = step_below[w];
    sq.step[static_cast<int>(Side::AfterW)] = step_above[w];
    sq.step[static_cast<int>(Side::BeforeV)] = step_below[v];
    sq.interior[static_cast<int>(Side::AfterV)] = d.interior_after(v);
    sq.interior[static_cast<int>(Side::BeforeW)] = d.interior_before(w);
    sq.interior[static_cast<int>(Side::AfterW)] = d.interior_after(w);
    sq.interior[static_cast<int>(Side::BeforeV)] = d.interior_before(v);
  }

  auto after_slot = [&](Place p) {
    Label m = d.label(p);
    return SideSlot{m, q.square(m).v == p ? Side::AfterV : Side::AfterW};
  };
  auto before_slot = [&](Place p) {
    Label m = d.label(p);
    return SideSlot{m, q.square(m).v == p ? Side::BeforeV : Side::BeforeW};
  };
  for (int i = 0; i < d.num_interior_steps(); ++i) {
    Place p = d.interior_lower_place(i);
    q.gluings.emplace_back(after_slot(p), before_slot(p + 1));
  }

  // Boundary walk. Sides run around each square in the cyclic order
  // after_v, before_w, after_w, before_v; gluings reverse orientation, so the
  // corner at the start of a glued side is the corner at the end of its
  // partner, and the walk continues with the partner's successor.
  auto slot_id = [](const SideSlot& s) { return (s.square - 1) * 4 + static_cast<int>(s.side); };
  std::vector<int> partner(4 * k, -1);
  for (const auto& [a, b] : q.gluings) {
    partner[slot_id(a)] = slot_id(b);
    partner[slot_id(b)] = slot_id(a);
  }
  auto succ_in_square = [](int id) { return (id / 4) * 4 + (id % 4 + 1) % 4; };
  std::vector<int> next_boundary(4 * k, -1);
  for (int id = 0; id < 4 * k; ++id) {
    if (partner[id] >= 0) continue;
    int y = succ_in_square(id);
    while (partner[y] >= 0) y = succ_in_square(partner[y]);
    next_boundary[id] = y;
  }
  std::vector<bool> seen(4 * k, false);
  for (int id = 0; id < 4 * k; ++id) {
    if (partner[id] >= 0 || seen[id]) continue;
    ++q.boundary_components;
    for (int cur = id; !seen[cur]; cur = next_boundary[cur]) seen[cur] = true;
  }
  q.genus = (2 - q.euler_char - q.boundary_components) / 2;
  return q;
}

}  // namespace qs
