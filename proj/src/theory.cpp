#include "pegsol/theory.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"

namespace pegsol {

namespace {

int mod3(int v) { return ((v % 3) + 3) % 3; }

// Label k contributes to pair bit 0 when k in {0,1} and to bit 1 when k in {1,2}.
std::uint8_t label_bits(int label) {
  switch (label) {
    case 0: return 0b01;
    case 1: return 0b11;
    default: return 0b10;
  }
}

void require_orthogonal(const Board& board) {
  if (board.rule().diagonal) {
    throw Error("diagonal-rule", "position classes are not invariant under diagonal jumps");
  }
}

}  // namespace

PositionClass hole_class(const Board& board, int hole) {
  const Cell c = board.cell(hole);
  return {static_cast<std::uint8_t>(label_bits(mod3(c.col - c.row)) |
                                    (label_bits(mod3(c.col + c.row)) << 2))};
}

PositionClass position_class(const Board& board, const PegSet& pegs) {
  require_orthogonal(board);
  PositionClass k;
  pegs.for_each([&](int h) { k = k ^ hole_class(board, h); });
  return k;
}

bool is_null_class(const Board& board) {
  return position_class(board, board.full()) == position_class(board, PegSet{});
}

bool is_null_class_per_hole(const Board& board) {
  for (int h = 0; h < board.size(); ++h) {
    PegSet rest = board.full();
    rest.reset(h);
    if (!(position_class(board, rest) == position_class(board, PegSet::single(h)))) return false;
  }
  return true;
}

bool class_feasible(const Problem& p) {
  if (p.board->rule().diagonal) return true;
  return position_class(*p.board, p.start.pegs) == position_class(*p.board, p.finish_pegs);
}

GoldenNumber GoldenNumber::sigma_pow(int n) {
  if (n < 0) throw Error("bad-exponent", "negative powers of sigma are not supported");
  GoldenNumber g{1, 0};
  for (int i = 0; i < n; ++i) g = g.times_sigma();
  return g;
}

// a + b*s = (p + q*sqrt5) / 2 with p = 2a - b, q = b.
int GoldenNumber::sign() const {
  const __int128 p = 2 * static_cast<__int128>(a) - b;
  const __int128 q = b;
  auto sgn = [](__int128 v) { return (v > 0) - (v < 0); };
  if (sgn(p) >= 0 && sgn(q) >= 0) return (p != 0 || q != 0) ? 1 : 0;
  if (sgn(p) <= 0 && sgn(q) <= 0) return -1;
  const __int128 pp = p * p, qq = 5 * q * q;
  // Opposite signs: the larger magnitude wins; pp == qq is impossible for q != 0.
  if (p > 0) return pp > qq ? 1 : -1;
  return qq > pp ? 1 : -1;
}

double GoldenNumber::approx() const {
  return static_cast<double>(a) + static_cast<double>(b) * (std::sqrt(5.0) - 1.0) / 2.0;
}

std::string format_golden(GoldenNumber g) {
  if (g.b == 0) return std::to_string(g.a);
  std::string out;
  if (g.a != 0) out = std::to_string(g.a) + (g.b > 0 ? "+" : "-");
  else if (g.b < 0) out = "-";
  const std::int64_t mag = std::llabs(g.b);
  if (mag != 1) out += std::to_string(mag);
  return out + "s";
}

std::vector<Jump> check_resource_count(const Board& board, const ResourceCount& rc) {
  if (static_cast<int>(rc.weights.size()) != board.size()) {
    throw Error("missing-weight", "count '" + rc.name + "' does not weight every hole");
  }
  std::vector<Jump> bad;
  for (const Jump& j : board.jumps()) {
    if (rc.weights[j.from] + rc.weights[j.over] < rc.weights[j.to]) bad.push_back(j);
  }
  return bad;
}

GoldenNumber resource_value(const ResourceCount& rc, const PegSet& pegs) {
  GoldenNumber v;
  pegs.for_each([&](int h) { v += rc.weights[h]; });
  return v;
}

bool resource_infeasible(const Problem& p, const ResourceCount& rc) {
  if (!check_resource_count(*p.board, rc).empty()) {
    throw Error("invalid-count", "count '" + rc.name + "' is not a valid resource count");
  }
  return resource_value(rc, p.start.pegs) < resource_value(rc, p.finish_pegs);
}

ResourceCount golden_count(const Board& board, Cell apex) {
  ResourceCount rc;
  rc.name = "golden-" + format_cell(apex);
  for (const Cell& c : board.holes()) {
    rc.weights.push_back(GoldenNumber::sigma_pow(std::abs(c.col - apex.col) + std::abs(c.row - apex.row)));
  }
  return rc;
}

ResourceCount parse_resource_count(std::string_view text, const Board& board) {
  const SymbolGrid grid = parse_symbol_grid(text);
  ResourceCount rc;
  std::map<char, GoldenNumber> symbols{{'.', {}}};
  for (char d = '0'; d <= '9'; ++d) symbols[d] = GoldenNumber::sigma_pow(d - '0');
  for (const auto& [key, value] : grid.directives) {
    if (key == "name") {
      rc.name = value;
    } else if (key == "weight") {
      std::istringstream in(value);
      char sym = 0;
      GoldenNumber g;
      if (!(in >> sym >> g.a >> g.b)) throw Error("bad-directive", "weight takes a symbol and two integers");
      symbols[sym] = g;
    } else if (key != "board") {
      throw Error("unknown-directive", "unknown directive '" + key + "'");
    }
  }
  std::vector<bool> seen(board.size(), false);
  rc.weights.assign(board.size(), {});
  for (const auto& [cell, sym] : grid.cells) {
    auto h = board.index_of(cell);
    if (!h) throw Error("hole-mismatch", "weight given for " + format_cell(cell) + ", which is not a hole");
    auto it = symbols.find(sym);
    if (it == symbols.end()) throw Error("bad-grid", std::string("undeclared weight symbol '") + sym + "'");
    rc.weights[*h] = it->second;
    seen[*h] = true;
  }
  for (int h = 0; h < board.size(); ++h) {
    if (!seen[h]) throw Error("missing-weight", "no weight for " + format_cell(board.cell(h)));
  }
  return rc;
}

std::string format_resource_count(const Board& board, const ResourceCount& rc) {
  std::map<std::pair<std::int64_t, std::int64_t>, char> sym;
  sym[{0, 0}] = '.';
  for (int k = 0; k <= 9; ++k) {
    const GoldenNumber g = GoldenNumber::sigma_pow(k);
    sym.emplace(std::pair{g.a, g.b}, static_cast<char>('0' + k));
  }
  std::string header = "name: " + rc.name + "\n";
  char next = 'A';
  std::vector<char> glyphs;
  for (const GoldenNumber& g : rc.weights) {
    auto [it, fresh] = sym.emplace(std::pair{g.a, g.b}, next);
    if (fresh) {
      if (next > 'Z') throw Error("bad-count", "too many distinct weights to format");
      header += std::string("weight: ") + next + " " + std::to_string(g.a) + " " + std::to_string(g.b) + "\n";
      ++next;
    }
    glyphs.push_back(it->second);
  }
  return header + render_symbol_grid(board, glyphs);
}

bool RegionDecomposition::covers(const Board& board) const {
  if (static_cast<int>(region_of.size()) != board.size()) return false;
  for (int r : region_of) {
    if (r < 0) return false;
  }
  return true;
}

RegionDecomposition make_decomposition(const Board& board, std::string name,
                                       std::vector<std::string> labels,
                                       std::vector<PegSet> regions) {
  RegionDecomposition d{std::move(name), std::move(labels), std::move(regions),
                        std::vector<int>(board.size(), -1)};
  for (std::size_t r = 0; r < d.regions.size(); ++r) {
    d.regions[r].for_each([&](int h) {
      if (h >= board.size()) throw Error("bad-regions", "region outside the board");
      if (d.region_of[h] >= 0) {
        throw Error("bad-regions", "regions overlap at " + format_cell(board.cell(h)));
      }
      d.region_of[h] = static_cast<int>(r);
    });
  }
  return d;
}

void validate_decomposition(const Board& board, const RegionDecomposition& d) {
  PegSet seen;
  for (const PegSet& r : d.regions) {
    if (seen.intersects(r)) throw Error("bad-regions", "regions overlap");
    if (r.empty()) throw Error("bad-regions", "empty region");
    seen |= r;
  }
  for (const Jump& j : board.jumps()) {
    const int r = d.region_of[j.over];
    if (r < 0) continue;
    if (d.region_of[j.from] != r && d.region_of[j.to] != r) {
      throw Error("bad-regions", "region '" + d.labels[r] + "' can be opened from outside at " +
                                     format_cell(board.cell(j.over)));
    }
  }
}

int merson_bound(const Board& board, const RegionDecomposition& d, Cell vacancy) {
  auto h = board.index_of(vacancy);
  if (!h) throw Error("not-a-hole", format_cell(vacancy) + " is not a hole");
  if (!d.covers(board)) throw Error("bad-regions", "regions '" + d.name + "' do not cover the board");
  const int regions = static_cast<int>(d.regions.size());
  return d.regions[d.region_of[*h]].count() == 1 ? regions : regions - 1;
}

int merson_open_count(const RegionDecomposition& d, const PegSet& pegs, const PegSet& finish, int skip) {
  int n = 0;
  for (int r = 0; r < static_cast<int>(d.regions.size()); ++r) {
    if (r == skip) continue;
    if (pegs.contains_all(d.regions[r]) && !finish.contains_all(d.regions[r])) ++n;
  }
  return n;
}

RegionDecomposition parse_regions(std::string_view text, const Board& board) {
  const SymbolGrid grid = parse_symbol_grid(text);
  std::string name;
  for (const auto& [key, value] : grid.directives) {
    if (key == "name") name = value;
    else if (key != "board") throw Error("unknown-directive", "unknown directive '" + key + "'");
  }
  std::map<char, PegSet> by_symbol;
  for (const auto& [cell, sym] : grid.cells) {
    auto h = board.index_of(cell);
    if (!h) throw Error("hole-mismatch", "region cell " + format_cell(cell) + " is not a hole");
    if (sym != '.') by_symbol[sym].set(*h);
  }
  std::vector<std::string> labels;
  std::vector<PegSet> regions;
  for (const auto& [sym, set] : by_symbol) {
    labels.emplace_back(1, sym);
    regions.push_back(set);
  }
  RegionDecomposition d = make_decomposition(board, name, std::move(labels), std::move(regions));
  validate_decomposition(board, d);
  return d;
}

std::string format_regions(const Board& board, const RegionDecomposition& d) {
  std::vector<char> glyphs(board.size(), '.');
  for (int h = 0; h < board.size(); ++h) {
    if (d.region_of[h] >= 0) glyphs[h] = d.labels[d.region_of[h]].at(0);
  }
  return "name: " + d.name + "\n" + render_symbol_grid(board, glyphs);
}

}  // namespace pegsol
