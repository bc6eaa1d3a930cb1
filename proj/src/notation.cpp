#include "pegsol/notation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>

#include "pegsol/error.hpp"

namespace pegsol {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("bad-directive", std::string(what) + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

enum class Hole : char { none, empty, peg };

struct GridCell {
  Cell cell;
  Hole state;
  int mark;  // 0 when unmarked
};

struct Section {
  std::vector<std::string_view> grid;
  std::vector<std::pair<std::string, std::string>> directives;
};

// Splits a file into sections at "---" lines, sorting each line into grid
// rows or directives. Blank lines are rows without holes, except before the
// first grid row of the file and at the end of a section.
std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out(1);
  for (std::string_view raw : split_lines(text)) {
    const std::string_view line = rtrim(raw);
    if (trim(line) == "---") {
      out.emplace_back();
      continue;
    }
    if (!line.empty() && trim(line).front() == '#') continue;
    if (const std::size_t colon = line.find(':'); colon != std::string_view::npos) {
      std::string key(trim(line.substr(0, colon)));
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      out.back().directives.emplace_back(key, std::string(trim(line.substr(colon + 1))));
      continue;
    }
    if (line.empty() && out.size() == 1 && out.back().grid.empty()) continue;
    out.back().grid.push_back(line);
  }
  for (Section& s : out) {
    while (!s.grid.empty() && s.grid.back().empty()) s.grid.pop_back();
  }
  return out;
}

std::vector<GridCell> read_grid(const std::vector<std::string_view>& rows, int col0, int row0) {
  std::vector<GridCell> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const char ch = rows[r][c];
      const Cell cell{col0 + static_cast<int>(c), row0 + static_cast<int>(r)};
      if (ch == ' ') continue;
      if (ch == '.') {
        out.push_back({cell, Hole::empty, 0});
      } else if (ch == 'O') {
        out.push_back({cell, Hole::peg, 0});
      } else if (ch >= '1' && ch <= '9') {
        out.push_back({cell, Hole::peg, ch - '0'});
      } else {
        throw Error("bad-grid", "unexpected character '" + std::string(1, ch) + "' in grid row " +
                                    std::to_string(r + 1));
      }
    }
  }
  return out;
}

struct Header {
  std::string name;
  std::string board_id;
  JumpRule rule;
  int col0 = 0;
  int row0 = 0;
  std::optional<int> max_moves;
  std::optional<int> min_final_sweep;
  bool marks_immobile = false;
  std::optional<std::pair<int, int>> interchange;
};

Header read_header(const std::vector<Section>& sections, bool problem) {
  Header h;
  for (const Section& s : sections) {
    for (const auto& [key, value] : s.directives) {
      if (key == "name") {
        h.name = value;
      } else if (key == "rule") {
        if (value == "diagonal") h.rule.diagonal = true;
        else if (value == "orthogonal") h.rule.diagonal = false;
        else throw Error("bad-directive", "unknown rule '" + value + "'");
      } else if (key == "origin-file") {
        if (value.size() != 1) throw Error("bad-directive", "origin-file takes one letter");
        h.col0 = file_column(value[0]);
      } else if (key == "origin-rank") {
        h.row0 = parse_int(value, "origin-rank") - 1;
      } else if (problem && key == "board") {
        h.board_id = value;
      } else if (problem && key == "max-moves") {
        h.max_moves = parse_int(value, "max-moves");
      } else if (problem && key == "min-final-sweep") {
        h.min_final_sweep = parse_int(value, "min-final-sweep");
      } else if (problem && key == "marks-immobile") {
        if (value != "yes" && value != "no") throw Error("bad-directive", "marks-immobile takes yes or no");
        h.marks_immobile = value == "yes";
      } else if (problem && key == "interchange") {
        const std::size_t sp = value.find(' ');
        if (sp == std::string::npos) throw Error("bad-directive", "interchange takes two mark ids");
        h.interchange = std::pair{parse_int(std::string_view(value).substr(0, sp), "interchange"),
                                  parse_int(std::string_view(value).substr(sp + 1), "interchange")};
      } else {
        throw Error("unknown-directive", "unknown directive '" + key + "'");
      }
    }
  }
  return h;
}

std::pair<Board, Position> build_start(const std::vector<GridCell>& cells, const Header& h) {
  std::vector<Cell> holes;
  for (const GridCell& g : cells) holes.push_back(g.cell);
  Board board = build_board(holes, h.rule, h.name);
  Position start;
  for (const GridCell& g : cells) {
    const int idx = *board.index_of(g.cell);
    if (g.state == Hole::peg) start.pegs.set(idx);
    if (g.mark != 0) {
      if (start.hole_of(g.mark)) {
        throw Error("duplicate-mark", "mark " + std::to_string(g.mark) + " appears twice");
      }
      start.marks.push_back({g.mark, idx});
    }
  }
  std::sort(start.marks.begin(), start.marks.end(),
            [](const Mark& a, const Mark& b) { return a.id < b.id; });
  return {std::move(board), std::move(start)};
}

std::string render_grid(const Board& board, const std::vector<char>& glyphs) {
  std::string out;
  for (int r = board.min_row(); r <= board.max_row(); ++r) {
    std::string line;
    for (int c = board.min_col(); c <= board.max_col(); ++c) {
      auto h = board.index_of({c, r});
      line += h ? glyphs[*h] : ' ';
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

std::string board_directives(const Board& board) {
  std::string out;
  if (!board.name().empty()) out += "name: " + board.name() + "\n";
  if (board.rule().diagonal) out += "rule: diagonal\n";
  if (board.min_col() != 0) out += std::string("origin-file: ") + column_file(board.min_col()) + "\n";
  if (board.min_row() != 0) out += "origin-rank: " + std::to_string(board.min_row() + 1) + "\n";
  return out;
}

std::vector<char> position_glyphs(const Board& board, const Position& pos) {
  std::vector<char> glyphs(board.size(), '.');
  pos.pegs.for_each([&](int h) { glyphs[h] = 'O'; });
  for (const Mark& m : pos.marks) glyphs[m.hole] = static_cast<char>('0' + m.id);
  return glyphs;
}

}  // namespace

int file_column(char file) {
  if (file >= 'a' && file <= 'v') return file - 'a';
  if (file >= 'w' && file <= 'z') return file - 'z' - 1;
  throw Error("bad-cell", "unknown file letter '" + std::string(1, file) + "'");
}

char column_file(int col) {
  if (col >= 0 && col <= 21) return static_cast<char>('a' + col);
  if (col >= -4 && col <= -1) return static_cast<char>('z' + col + 1);
  throw Error("bad-cell", "column " + std::to_string(col) + " has no file letter");
}

Cell parse_cell(std::string_view text) {
  if (text.size() < 2 || !std::islower(static_cast<unsigned char>(text[0]))) {
    throw Error("bad-cell", "malformed cell '" + std::string(text) + "'");
  }
  const int col = file_column(text[0]);
  int rank = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), rank);
  if (ec != std::errc() || ptr != text.data() + text.size() || rank < 1 || text[1] == '0') {
    throw Error("bad-cell", "malformed cell '" + std::string(text) + "'");
  }
  return {col, rank - 1};
}

std::string format_cell(Cell c) {
  if (c.row < 0) throw Error("bad-cell", "row " + std::to_string(c.row) + " has no rank");
  return column_file(c.col) + std::to_string(c.row + 1);
}

std::vector<Move> parse_solution(std::string_view text) {
  std::vector<Move> moves;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error("bad-solution", why + " at offset " + std::to_string(i));
  };
  auto read_cell = [&]() {
    const std::size_t start = i;
    if (i >= text.size() || !std::islower(static_cast<unsigned char>(text[i]))) fail("expected a cell");
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return parse_cell(text.substr(start, i - start));
  };
  bool need_separator = false;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '!') {
      ++i;
    } else if (ch == ',') {
      if (!need_separator) fail("unexpected ','");
      need_separator = false;
      ++i;
    } else if (ch == '(') {
      const std::size_t close = text.find(')', i);
      if (close == std::string_view::npos) fail("unclosed counter");
      const std::string_view digits = trim(text.substr(i + 1, close - i - 1));
      int n = -1;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("malformed counter");
      if (n != static_cast<int>(moves.size())) {
        throw Error("checksum", "counter (" + std::to_string(n) + ") follows " +
                                    std::to_string(moves.size()) + " moves");
      }
      i = close + 1;
    } else if (ch == '.') {
      if (!trim(text.substr(i + 1)).empty()) fail("unexpected '.'");
      break;
    } else {
      if (need_separator) fail("missing ','");
      Move m;
      m.path.push_back(read_cell());
      while (i < text.size() && text[i] == '-') {
        ++i;
        m.path.push_back(read_cell());
      }
      if (m.path.size() < 2) fail("a move needs at least two cells");
      moves.push_back(std::move(m));
      need_separator = true;
    }
  }
  return moves;
}

std::string format_solution(const std::vector<Move>& moves) {
  std::string out;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    if (k > 0) out += ", ";
    for (std::size_t c = 0; c < moves[k].path.size(); ++c) {
      if (c > 0) out += '-';
      out += format_cell(moves[k].path[c]);
    }
    if ((k + 1) % 5 == 0) out += " (" + std::to_string(k + 1) + ")";
  }
  return out;
}

ParsedBoard parse_board(std::string_view text) {
  const std::vector<Section> sections = split_sections(text);
  if (sections.size() != 1) throw Error("bad-grid", "a board file has a single grid");
  const Header h = read_header(sections, false);
  const auto cells = read_grid(sections[0].grid, h.col0, h.row0);
  auto [board, start] = build_start(cells, h);
  return {std::move(board), std::move(start), h.name};
}

std::string format_board(const Board& board, const Position& pos) {
  return board_directives(board) + render_grid(board, position_glyphs(board, pos));
}

Problem parse_problem(std::string_view text) {
  const std::vector<Section> sections = split_sections(text);
  if (sections.size() != 2) throw Error("bad-grid", "a problem file has a start grid, '---' and a finish grid");
  const Header h = read_header(sections, true);
  const auto start_cells = read_grid(sections[0].grid, h.col0, h.row0);
  const auto finish_cells = read_grid(sections[1].grid, h.col0, h.row0);
  auto [board, start] = build_start(start_cells, h);

  Problem p;
  p.id = h.name;
  p.board_id = h.board_id;
  p.start = std::move(start);
  p.max_moves = h.max_moves;
  p.min_final_sweep = h.min_final_sweep;
  p.marks_immobile = h.marks_immobile;
  for (const GridCell& g : finish_cells) {
    auto idx = board.index_of(g.cell);
    if (!idx) {
      throw Error("hole-mismatch", "finish cell " + format_cell(g.cell) + " is not a hole of the start grid");
    }
    if (g.state == Hole::peg) p.finish_pegs.set(*idx);
    if (g.mark != 0) {
      for (const Mark& m : p.finish_marks) {
        if (m.id == g.mark) throw Error("duplicate-mark", "finish mark " + std::to_string(g.mark) + " appears twice");
      }
      p.finish_marks.push_back({g.mark, *idx});
    }
  }
  std::sort(p.finish_marks.begin(), p.finish_marks.end(),
            [](const Mark& a, const Mark& b) { return a.id < b.id; });

  if (h.interchange) {
    const auto [a, b] = *h.interchange;
    auto ha = p.start.hole_of(a), hb = p.start.hole_of(b);
    if (!ha || !hb || a == b) throw Error("bad-directive", "interchange names unknown marks");
    std::vector<Mark> want{{a, *hb}, {b, *ha}};
    std::sort(want.begin(), want.end(), [](const Mark& x, const Mark& y) { return x.id < y.id; });
    if (p.finish_marks.empty()) {
      p.finish_marks = want;
      for (const Mark& m : want) p.finish_pegs.set(m.hole);
    } else {
      for (const Mark& m : want) {
        if (std::find(p.finish_marks.begin(), p.finish_marks.end(), m) == p.finish_marks.end()) {
          throw Error("bad-directive", "finish grid does not interchange marks " + std::to_string(a) +
                                           " and " + std::to_string(b));
        }
      }
    }
  }
  p.board = std::make_shared<const Board>(std::move(board));
  validate_problem(p);
  return p;
}

std::string format_finish(const Problem& p) {
  std::vector<char> glyphs(p.board->size(), '.');
  p.finish_pegs.for_each([&](int h) { glyphs[h] = 'O'; });
  for (const Mark& m : p.finish_marks) glyphs[m.hole] = static_cast<char>('0' + m.id);
  return render_grid(*p.board, glyphs);
}

std::string format_problem(const Problem& p) {
  const Board& b = *p.board;
  std::string out;
  if (!p.id.empty()) out += "name: " + p.id + "\n";
  if (!p.board_id.empty()) out += "board: " + p.board_id + "\n";
  if (b.rule().diagonal) out += "rule: diagonal\n";
  if (b.min_col() != 0) out += std::string("origin-file: ") + column_file(b.min_col()) + "\n";
  if (b.min_row() != 0) out += "origin-rank: " + std::to_string(b.min_row() + 1) + "\n";
  if (p.max_moves) out += "max-moves: " + std::to_string(*p.max_moves) + "\n";
  if (p.min_final_sweep) out += "min-final-sweep: " + std::to_string(*p.min_final_sweep) + "\n";
  if (p.marks_immobile) out += "marks-immobile: yes\n";
  out += render_grid(b, position_glyphs(b, p.start));
  out += "---\n";
  out += format_finish(p);
  return out;
}

SymbolGrid parse_symbol_grid(std::string_view text) {
  const std::vector<Section> sections = split_sections(text);
  if (sections.size() != 1) throw Error("bad-grid", "a data grid has a single section");
  SymbolGrid out;
  int col0 = 0, row0 = 0;
  for (const auto& [key, value] : sections[0].directives) {
    if (key == "origin-file" && value.size() == 1) col0 = file_column(value[0]);
    else if (key == "origin-rank") row0 = parse_int(value, "origin-rank") - 1;
    else out.directives.emplace_back(key, value);
  }
  const auto& rows = sections[0].grid;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == ' ') continue;
      out.cells.push_back({{col0 + static_cast<int>(c), row0 + static_cast<int>(r)}, rows[r][c]});
    }
  }
  return out;
}

std::string render_symbol_grid(const Board& board, const std::vector<char>& glyphs) {
  std::string out;
  if (board.min_col() != 0) out += std::string("origin-file: ") + column_file(board.min_col()) + "\n";
  if (board.min_row() != 0) out += "origin-rank: " + std::to_string(board.min_row() + 1) + "\n";
  return out + render_grid(board, glyphs);
}

std::vector<std::string> format_cells(const Board& board, const PegSet& pegs) {
  std::vector<std::string> out;
  pegs.for_each([&](int h) { out.push_back(format_cell(board.cell(h))); });
  return out;
}

}  // namespace pegsol
