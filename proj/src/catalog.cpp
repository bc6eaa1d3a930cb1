#include "pegsol/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

#include "catalog_data.hpp"
#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"

namespace pegsol::catalog {

namespace {

// "<dir>/<stem><ext>" entries of one directory; the stem runs to the first '.'.
std::vector<std::pair<std::string, std::string_view>> listing(std::string_view dir, std::string_view ext) {
  std::vector<std::pair<std::string, std::string_view>> out;
  for (const detail::File& f : detail::files()) {
    if (!f.path.starts_with(dir) || f.path.size() <= dir.size() || f.path[dir.size()] != '/') continue;
    if (!f.path.ends_with(ext)) continue;
    std::string_view name = f.path.substr(dir.size() + 1);
    out.emplace_back(std::string(name.substr(0, name.size() - ext.size())), f.text);
  }
  return out;
}

std::optional<std::string_view> find_file(std::string_view dir, std::string_view stem, std::string_view ext) {
  for (const auto& [name, text] : listing(dir, ext)) {
    if (name == stem) return text;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> dash_numbers(std::string_view s, char sep) {
  std::vector<int> out;
  while (true) {
    int v = 0;
    const std::size_t end = std::min(s.find(sep), s.size());
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + end, v);
    if (ec != std::errc() || ptr != s.data() + end || end == 0) return std::nullopt;
    out.push_back(v);
    if (end == s.size()) return out;
    s.remove_prefix(end + 1);
  }
}

std::string alias(std::string_view id) {
  if (id == "6x6") return "square-36";
  if (id == "8x8") return "square-64";
  return std::string(id);
}

std::shared_ptr<const Board> build_dynamic(const std::string& id) {
  if (id.starts_with("cross-")) {
    auto n = dash_numbers(std::string_view(id).substr(6), '-');
    if (n && n->size() == 4 && std::all_of(n->begin(), n->end(), [](int v) { return v >= 0 && v <= 20; })) {
      Board b = generalized_cross((*n)[0], (*n)[1], (*n)[2], (*n)[3]);
      return std::make_shared<Board>(build_board({b.holes().begin(), b.holes().end()}, b.rule(), id));
    }
  }
  if (auto n = dash_numbers(id, 'x'); n && n->size() == 2 && (*n)[0] >= 1 && (*n)[1] >= 1 &&
                                       (*n)[0] <= 22 && (*n)[0] * (*n)[1] <= kMaxHoles) {
    std::vector<Cell> holes;
    for (int r = 0; r < (*n)[1]; ++r) {
      for (int c = 0; c < (*n)[0]; ++c) holes.push_back({c, r});
    }
    return std::make_shared<Board>(build_board(holes, {}, id));
  }
  return nullptr;
}

Fixture parse_fixture(const std::string& stem, std::string_view text) {
  Fixture f;
  f.id = stem;
  std::istringstream in{std::string(text)};
  std::string line;
  bool body = false;
  bool has_moves = false;
  while (std::getline(in, line)) {
    if (body) {
      f.text += line + "\n";
      continue;
    }
    if (line.starts_with("#") || line.empty()) continue;
    if (line == "---") {
      body = true;
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw Error("bad-fixture", "fixture " + stem + ": expected a directive");
    const std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    value.erase(0, value.find_first_not_of(' '));
    if (key == "problem") {
      f.problem_id = value;
    } else if (key == "attribution") {
      f.attribution = value;
    } else if (key == "moves") {
      f.moves = std::stoi(value);
      has_moves = true;
    } else if (key == "final-sweep") {
      f.final_sweep = std::stoi(value);
    } else if (key == "complete") {
      f.complete = value != "no";
    } else {
      throw Error("bad-fixture", "fixture " + stem + ": unknown directive '" + key + "'");
    }
  }
  while (!f.text.empty() && (f.text.back() == '\n' || f.text.back() == ' ')) f.text.pop_back();
  if (f.problem_id.empty() || !has_moves || !body) {
    throw Error("bad-fixture", "fixture " + stem + " needs problem, moves and a solution");
  }
  return f;
}

std::mutex cache_mu;
std::map<std::string, std::shared_ptr<const Board>>& board_cache() {
  static std::map<std::string, std::shared_ptr<const Board>> cache;
  return cache;
}

}  // namespace

std::string TableRow::id() const {
  return "cross-" + std::to_string(n1) + "-" + std::to_string(n2) + "-" + std::to_string(n3) + "-" +
         std::to_string(n4);
}

std::vector<std::string> list_entries() {
  std::vector<std::string> out;
  for (const auto& [stem, text] : listing("boards", ".board")) out.push_back(stem);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> list_problems() {
  std::vector<std::string> out;
  for (const auto& [stem, text] : listing("problems", ".problem")) out.push_back(stem);
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const Board> get_board(std::string_view requested) {
  const std::string id = alias(requested);
  std::lock_guard lock(cache_mu);
  auto& cache = board_cache();
  if (auto it = cache.find(id); it != cache.end()) return it->second;
  std::shared_ptr<const Board> board;
  if (auto text = find_file("boards", id, ".board")) {
    ParsedBoard pb = parse_board(*text);
    board = std::make_shared<Board>(std::move(pb.board));
  } else {
    board = build_dynamic(id);
  }
  if (!board) throw Error("unknown-id", "unknown board '" + std::string(requested) + "'");
  cache.emplace(id, board);
  return board;
}

bool has_board(std::string_view id) {
  try {
    get_board(id);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string board_text(std::string_view id) {
  auto board = get_board(id);
  return format_board(*board, full_position(*board));
}

Problem get_problem(std::string_view id) {
  auto text = find_file("problems", id, ".problem");
  if (!text) throw Error("unknown-id", "unknown problem '" + std::string(id) + "'");
  Problem p = parse_problem(*text);
  p.id = std::string(id);
  return p;
}

std::string problem_text(std::string_view id) {
  auto text = find_file("problems", id, ".problem");
  if (!text) throw Error("unknown-id", "unknown problem '" + std::string(id) + "'");
  return std::string(*text);
}

std::vector<Fixture> all_fixtures() {
  std::vector<Fixture> out;
  for (const auto& [stem, text] : listing("fixtures", ".sol")) out.push_back(parse_fixture(stem, text));
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.id < b.id; });
  return out;
}

std::vector<Fixture> get_fixtures(std::string_view id) {
  const bool problem = find_file("problems", id, ".problem").has_value();
  const bool board = find_file("boards", alias(id), ".board").has_value();
  if (!problem && !board) throw Error("unknown-id", "unknown problem or board '" + std::string(id) + "'");
  std::vector<Fixture> out;
  for (Fixture& f : all_fixtures()) {
    if (f.problem_id == id || (board && get_problem(f.problem_id).board_id == alias(id))) out.push_back(std::move(f));
  }
  return out;
}

std::vector<ResourceCount> get_counts(std::string_view board_id, const Board& board) {
  std::vector<ResourceCount> out;
  const std::string prefix = alias(board_id) + ".";
  for (const auto& [stem, text] : listing("counts", ".count")) {
    if (!stem.starts_with(prefix)) continue;
    ResourceCount rc = parse_resource_count(text, board);
    if (!check_resource_count(board, rc).empty()) {
      throw Error("invalid-count", "stored count '" + stem + "' is not valid on its board");
    }
    out.push_back(std::move(rc));
  }
  return out;
}

std::optional<RegionDecomposition> get_regions(std::string_view board_id, const Board& board) {
  auto text = find_file("regions", alias(board_id), ".regions");
  if (!text) return std::nullopt;
  return parse_regions(*text, board);
}

std::vector<TableRow> everywhere_table() {
  std::vector<TableRow> out;
  auto text = find_file("tables", "everywhere-solvable", ".txt");
  if (!text) return out;
  std::istringstream in{std::string(*text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    TableRow t;
    row >> t.n1 >> t.n2 >> t.n3 >> t.n4 >> t.holes >> t.symmetry;
    if (t.symmetry == "-") t.symmetry.clear();
    out.push_back(t);
  }
  return out;
}

}  // namespace pegsol::catalog
