#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "corpus_fixture.hpp"
#include "qs/arc_diagram.hpp"
#include "qs/error.hpp"

using namespace qs;

namespace {

// Ribbon-graph face count: one disc per segment with its places in cyclic
// order, one untwisted band per matched pair. Boundary components are the
// orbits of rotation-after-twin.
int ribbon_faces(const ArcDiagram& d) {
  const int n = d.num_places();
  std::vector<Place> rotate(n + 1);
  Place first = 1;
  for (int size : d.segment_sizes()) {
    for (int i = 0; i < size; ++i) rotate[first + i] = first + (i + 1) % size;
    first += size;
  }
  std::vector<bool> seen(n + 1, false);
  int faces = 0;
  for (Place p = 1; p <= n; ++p) {
    if (seen[p]) continue;
    ++faces;
    for (Place x = p; !seen[x]; x = rotate[d.twin(x)]) seen[x] = true;
  }
  return faces;
}

ParseError parse_error(std::string_view text) {
  try {
    parse_arc_diagram(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("parse the two-line format") {
  CHECK(parse_arc_diagram("segments: 1 1\nmatching: 1 1\n") == test::square());
  CHECK(parse_arc_diagram("segments: 4\nmatching: 1 2 1 2") == test::punctured_torus());
  CHECK(parse_arc_diagram("# comment\n\n  segments :  3 1   # trailing\nmatching: 1 2 1 2\n") == test::annulus());
}

TEST_CASE("to_text round-trips") {
  for (const auto& d : test::corpus()) CHECK(parse_arc_diagram(d.to_text()) == d);
}

TEST_CASE("parse errors carry line and column") {
  auto e = parse_error("segments: 2\nmatching: 1 1 1");
  CHECK(e.line() == 2);
  e = parse_error("segments: 3\nmatching: 1 1 1 1");
  CHECK(e.line() == 2);
  e = parse_error("segments: 4\nmatching: 1 1 1 2");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("occurs 3 times") != std::string::npos);
  e = parse_error("segments: 2 x\nmatching: 1 1");
  CHECK(e.line() == 1);
  CHECK(e.column() == 13);
  e = parse_error("segments: 2 0\nmatching: 1 1");
  CHECK(e.column() == 13);
  e = parse_error("matching: 1 1\nsegments: 2");
  CHECK(e.line() == 1);
  e = parse_error("segments: 2\n");
  CHECK(std::string(e.what()).find("matching") != std::string::npos);
  e = parse_error("segments: 2\nmatching: 1 1\nextra");
  CHECK(e.line() == 3);
  e = parse_error("segments: 2\nmatching: 1 3");
  CHECK(e.column() == 13);
}

TEST_CASE("constructor rejects malformed structure") {
  CHECK_THROWS_AS(ArcDiagram({}, {}), InvalidDiagram);
  CHECK_THROWS_AS(ArcDiagram({2, 0}, {1, 1}), InvalidDiagram);
  CHECK_THROWS_AS(ArcDiagram({3}, {1, 1, 1}), InvalidDiagram);
  CHECK_THROWS_AS(ArcDiagram({2}, {1, 2}), InvalidDiagram);
}

TEST_CASE("validate") {
  const ArcDiagram loop({2}, {1, 1});
  const auto v = validate(loop);
  CHECK_FALSE(v.ok);
  CHECK(v.circle == std::vector<Place>{1, 2});
  CHECK(validate(test::square()).ok);
  CHECK(validate(test::punctured_torus()).ok);
  CHECK(validate(test::annulus()).ok);
  CHECK_THROWS_AS(to_quad_surface(loop), InvalidDiagram);
}

TEST_CASE("invalid witnesses replay as surgery cycles") {
  int invalid = 0;
  for (int k = 1; k <= 3; ++k) {
    // Single segment with all pairings: many close circles.
    std::vector<Label> m(2 * k);
    std::vector<int> order(2 * k);
    std::iota(order.begin(), order.end(), 0);
    do {
      for (int i = 0; i < 2 * k; ++i) m[order[i]] = i / 2 + 1;
      const ArcDiagram d({2 * k}, m);
      const auto v = validate(d);
      if (v.ok) continue;
      ++invalid;
      REQUIRE(v.circle.size() % 2 == 0);
      REQUIRE_FALSE(v.circle.empty());
      for (std::size_t i = 0; i < v.circle.size(); i += 2) {
        const Place start = v.circle[i];
        CHECK(v.circle[i + 1] == start + 1);
        const auto next = surgery_successor(d, start);
        REQUIRE(next.has_value());
        CHECK(*next == v.circle[(i + 2) % v.circle.size()]);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  CHECK(invalid > 0);
}

TEST_CASE("steps") {
  auto count = [](const ArcDiagram& d) {
    const auto all = steps(d);
    const auto interior = std::count_if(all.begin(), all.end(), [](const Step& s) { return s.interior(); });
    return std::make_pair(static_cast<int>(interior), static_cast<int>(all.size() - interior));
  };
  CHECK(count(test::square()) == std::make_pair(0, 4));
  CHECK(count(test::punctured_torus()) == std::make_pair(3, 2));
  CHECK(count(test::annulus()) == std::make_pair(2, 4));
  for (const auto& st : steps(test::punctured_torus())) {
    if (!st.interior()) continue;
    CHECK(*st.after == *st.before + 1);
  }
}

TEST_CASE("quadrangulated surfaces of the named examples") {
  const auto q1 = to_quad_surface(test::square());
  CHECK(q1.squares.size() == 1);
  CHECK(q1.gluings.empty());
  CHECK(q1.euler_char == 1);
  CHECK(q1.boundary_components == 1);
  CHECK(q1.genus == 0);
  CHECK(q1.marked_points == 4);

  const auto q2 = to_quad_surface(test::punctured_torus());
  CHECK(q2.squares.size() == 2);
  CHECK(q2.gluings.size() == 3);
  CHECK(q2.euler_char == -1);
  CHECK(q2.boundary_components == 1);
  CHECK(q2.genus == 1);

  const auto q3 = to_quad_surface(test::annulus());
  CHECK(q3.squares.size() == 2);
  CHECK(q3.gluings.size() == 2);
  CHECK(q3.euler_char == 0);
  CHECK(q3.boundary_components == ribbon_faces(test::annulus()));
  CHECK(q3.boundary_components == 2);
}

TEST_CASE("side slots of the punctured torus") {
  const ArcDiagram d = test::punctured_torus();
  const auto q = to_quad_surface(d);
  const Square& sq = q.square(1);
  CHECK(sq.v == 1);
  CHECK(sq.w == 3);
  const auto all = steps(d);
  for (Side side : kSides) {
    const Step& st = all[sq.step[static_cast<int>(side)]];
    const bool touches = (st.before && (*st.before == 1 || *st.before == 3)) ||
                         (st.after && (*st.after == 1 || *st.after == 3));
    CHECK(touches);
  }
  CHECK(sq.interior[static_cast<int>(Side::BeforeV)] == -1);
  CHECK(sq.interior[static_cast<int>(Side::AfterV)] == 0);
}

TEST_CASE("corpus surface invariants") {
  for (const auto& d : test::corpus()) {
    CAPTURE(d.to_text());
    const auto q = to_quad_surface(d);
    const int k = d.num_pairs(), l = d.num_segments();
    CHECK(q.num_interior_steps == 2 * k - l);
    CHECK(static_cast<int>(q.gluings.size()) == 2 * k - l);
    CHECK(static_cast<int>(q.gluings.size()) == q.marked_points / 2 - 2 * q.euler_char);
    CHECK(q.euler_char == l - k);
    CHECK(q.marked_points == 2 * l);
    CHECK(q.index == k);
    CHECK(q.boundary_components >= 1);
    CHECK(q.boundary_components == ribbon_faces(d));
    CHECK((2 - q.euler_char - q.boundary_components) % 2 == 0);
    CHECK(q.genus >= 0);

    // Each slot bound to one step; interior steps bind one after and one before slot.
    const auto all = steps(d);
    std::vector<int> bound(all.size(), 0);
    for (const auto& sq : q.squares)
      for (Side side : kSides) ++bound[sq.step[static_cast<int>(side)]];
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(bound[i] == (all[i].interior() ? 2 : 1));
    for (const auto& [a, b] : q.gluings) {
      CHECK((a.side == Side::AfterV || a.side == Side::AfterW));
      CHECK((b.side == Side::BeforeV || b.side == Side::BeforeW));
    }
  }
}
