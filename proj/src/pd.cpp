#include "khdetect/pd.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace kh {

namespace {

int succ(int x, int n_arcs) { return x % n_arcs + 1; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Classifies the four tuple slots of a crossing as strand entries/exits.
// Returns {entry_under=0, exit_under=2, entry_over, exit_over}.
struct Slots {
  int entry_over;
  int exit_over;
};

Slots slots_of(const CrossingOrientation& o) {
  return o.over_from_d ? Slots{3, 1} : Slots{1, 3};
}

// Local orientation analysis of one crossing; nullopt-style via bool.
bool orient_crossing(const Crossing& x, int n_arcs, CrossingOrientation& out) {
  if (succ(x.a(), n_arcs) != x.c()) return false;
  if (x.b() == succ(x.d(), n_arcs)) {
    out = {true, -1};  // over-strand d -> b
    return true;
  }
  if (x.d() == succ(x.b(), n_arcs)) {
    out = {false, +1};  // over-strand b -> d
    return true;
  }
  return false;
}

// Recomputes signs and arc count; throws ValidationError if invalid.
PlanarDiagram finalize(std::vector<Crossing> crossings) {
  PlanarDiagram d;
  d.crossings = std::move(crossings);
  d.n_arcs = d.crossings.empty() ? 1 : 2 * d.n_crossings();
  d.basepoint = 1;
  auto violations = validate(d);
  if (!violations.empty()) {
    std::string msg = "invalid diagram:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  for (const auto& o : orientations(d)) {
    (o.sign > 0 ? d.n_plus : d.n_minus)++;
  }
  return d;
}

}  // namespace

PlanarDiagram parse_pd(const std::string& text) {
  std::string s = trim(text);
  if (s == "unknot") return PlanarDiagram{};

  bool bracketed = false;
  if (s.rfind("PD[", 0) == 0 && s.back() == ']') {
    s = s.substr(3, s.size() - 4);
    for (char& c : s) {
      if (c == '[') c = '(';
      if (c == ']') c = ')';
    }
    bracketed = true;
  }

  std::vector<Crossing> crossings;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
  };
  // Separators between crossings; inside a tuple only whitespace is skipped,
  // so the bracketed form's crossing-level commas stay unambiguous.
  auto skip_sep = [&] {
    while (i < s.size() &&
           (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ';' ||
            (bracketed && s[i] == ',')))
      i++;
  };
  auto parse_int = [&]() -> int {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) i++;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) i++;
    if (i == start || (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])))) {
      size_t end = start;
      while (end < s.size() && s[end] != ',' && s[end] != ')' &&
             s[end] != ';' &&
             !std::isspace(static_cast<unsigned char>(s[end])))
        end++;
      throw ParseError("expected integer at position " + std::to_string(start) +
                       " in PD text, got '" + s.substr(start, end - start) +
                       "'");
    }
    return std::stoi(s.substr(start, i - start));
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "' at position " +
                       std::to_string(i) + " in PD text");
    i++;
  };

  skip_sep();
  while (i < s.size()) {
    if (s[i] != 'X')
      throw ParseError("malformed token at position " + std::to_string(i) +
                       ": expected 'X(a,b,c,d)'");
    i++;
    expect('(');
    Crossing x{};
    for (int k = 0; k < 4; k++) {
      if (k > 0) expect(',');
      x.arcs[k] = parse_int();
    }
    expect(')');
    crossings.push_back(x);
    skip_sep();
  }
  if (crossings.empty()) throw ParseError("empty PD text");
  return finalize(std::move(crossings));
}

std::string print_pd(const PlanarDiagram& d) {
  if (d.is_unknot()) return "unknot";
  std::ostringstream out;
  for (size_t k = 0; k < d.crossings.size(); k++) {
    const auto& x = d.crossings[k];
    if (k) out << ';';
    out << "X(" << x.a() << ',' << x.b() << ',' << x.c() << ',' << x.d() << ')';
  }
  return out.str();
}

std::vector<std::string> validate(const PlanarDiagram& d) {
  std::vector<std::string> bad;
  if (d.is_unknot()) {
    if (d.n_arcs != 1)
      bad.push_back("unknot diagram must have exactly one formal arc");
    if (d.basepoint != 1) bad.push_back("unknot basepoint must be arc 1");
    return bad;
  }
  const int n = d.n_crossings();
  const int n_arcs = 2 * n;
  if (d.n_arcs != n_arcs)
    bad.push_back("n_arcs must equal " + std::to_string(n_arcs));

  bool labels_ok = true;
  std::map<int, int> count;
  for (int k = 0; k < n; k++) {
    std::map<int, int> local;
    for (int label : d.crossings[k].arcs) {
      if (label <= 0) {
        bad.push_back("crossing " + std::to_string(k) + ": non-positive label " +
                      std::to_string(label));
        labels_ok = false;
        continue;
      }
      count[label]++;
      if (++local[label] > 2)
        bad.push_back("crossing " + std::to_string(k) + ": label " +
                      std::to_string(label) + " repeated more than twice");
    }
  }
  for (int label = 1; label <= n_arcs; label++) {
    int c = count.count(label) ? count[label] : 0;
    if (c != 2) {
      bad.push_back("arc " + std::to_string(label) + " appears " +
                    std::to_string(c) + " time(s), expected 2");
      labels_ok = false;
    }
  }
  for (const auto& [label, c] : count) {
    if (label > n_arcs)
      bad.push_back("arc " + std::to_string(label) + " out of range 1.." +
                    std::to_string(n_arcs));
  }
  if (!labels_ok) return bad;

  // Per-crossing orientation, then the global single-component condition:
  // each transition k -> k+1 must be realized by exactly one strand passage.
  std::map<int, int> sources;
  bool oriented = true;
  for (int k = 0; k < n; k++) {
    CrossingOrientation o;
    if (!orient_crossing(d.crossings[k], n_arcs, o)) {
      bad.push_back("crossing " + std::to_string(k) +
                    ": orientation inconsistency (under " +
                    std::to_string(d.crossings[k].a()) + "->" +
                    std::to_string(d.crossings[k].c()) + ", over {" +
                    std::to_string(d.crossings[k].b()) + "," +
                    std::to_string(d.crossings[k].d()) + "})");
      oriented = false;
      continue;
    }
    sources[d.crossings[k].a()]++;
    sources[o.over_from_d ? d.crossings[k].d() : d.crossings[k].b()]++;
  }
  if (oriented) {
    for (int label = 1; label <= n_arcs; label++) {
      int c = sources.count(label) ? sources[label] : 0;
      if (c != 1)
        bad.push_back("arc " + std::to_string(label) + " starts " +
                      std::to_string(c) +
                      " passage(s); diagram is not a single knot component");
    }
    if (d.n_plus != 0 || d.n_minus != 0) {
      int p = 0, m = 0;
      for (const auto& o : orientations(d)) (o.sign > 0 ? p : m)++;
      if (d.n_plus != p || d.n_minus != m)
        bad.push_back("stored crossing sign counts disagree with orientation");
    }
  }
  if (d.basepoint < 1 || d.basepoint > n_arcs)
    bad.push_back("basepoint " + std::to_string(d.basepoint) + " out of range");
  return bad;
}

std::vector<CrossingOrientation> orientations(const PlanarDiagram& d) {
  std::vector<CrossingOrientation> out;
  out.reserve(d.crossings.size());
  for (const auto& x : d.crossings) {
    CrossingOrientation o;
    if (!orient_crossing(x, d.n_arcs, o))
      throw ValidationError("orientations() on an inconsistent crossing");
    out.push_back(o);
  }
  return out;
}

PlanarDiagram mirror(const PlanarDiagram& d) {
  if (d.is_unknot()) return d;
  auto os = orientations(d);
  std::vector<Crossing> flipped;
  flipped.reserve(d.crossings.size());
  for (size_t k = 0; k < d.crossings.size(); k++) {
    const auto& t = d.crossings[k].arcs;
    if (os[k].over_from_d)
      flipped.push_back({{t[3], t[0], t[1], t[2]}});  // (d,a,b,c)
    else
      flipped.push_back({{t[1], t[2], t[3], t[0]}});  // (b,c,d,a)
  }
  auto m = finalize(std::move(flipped));
  m.basepoint = d.basepoint;
  return m;
}

PlanarDiagram connect_sum(const PlanarDiagram& d1, const PlanarDiagram& d2) {
  if (d1.is_unknot()) return d2;
  if (d2.is_unknot()) return d1;
  const int two_m = d1.n_arcs;
  const int two_n = d2.n_arcs;
  auto os1 = orientations(d1);
  auto os2 = orientations(d2);

  std::vector<Crossing> out = d1.crossings;
  // In d1, the slot where arc 2m is consumed now receives the strand
  // returning from d2, labeled 2m+2n.
  for (size_t k = 0; k < out.size(); k++) {
    Slots s = slots_of(os1[k]);
    if (d1.crossings[k].a() == two_m) out[k].arcs[0] = two_m + two_n;
    if (d1.crossings[k].arcs[s.entry_over] == two_m)
      out[k].arcs[s.entry_over] = two_m + two_n;
  }
  // d2 shifts by 2m; its old wrap arc 2n is consumed as the new arc 2m.
  for (size_t k = 0; k < d2.crossings.size(); k++) {
    Crossing x = d2.crossings[k];
    Slots s = slots_of(os2[k]);
    for (int j = 0; j < 4; j++) x.arcs[j] += two_m;
    if (d2.crossings[k].a() == two_n) x.arcs[0] = two_m;
    if (d2.crossings[k].arcs[s.entry_over] == two_n)
      x.arcs[s.entry_over] = two_m;
    out.push_back(x);
  }
  auto sum = finalize(std::move(out));
  sum.basepoint = d1.basepoint;
  return sum;
}

}  // namespace kh
