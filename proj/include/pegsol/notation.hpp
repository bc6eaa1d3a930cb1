#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/move.hpp"
#include "pegsol/position.hpp"
#include "pegsol/problem.hpp"

namespace pegsol {

// Files a..v are columns 0..21; w, x, y, z are columns -4..-1. Rank r is row
// r-1, so rank 1 is the top row.
int file_column(char file);
char column_file(int col);

// Error("bad-cell") on malformed text or a cell without a name.
Cell parse_cell(std::string_view text);
std::string format_cell(Cell c);

// Comma-separated chains such as "c1-c3, a3-a1-c1-e1 (5), e6-e4!". A "(n)"
// counter must equal the number of moves read so far (Error("checksum")).
// '!' and a closing '.' are ignored. Error("bad-solution") otherwise.
std::vector<Move> parse_solution(std::string_view text);
// Inverse of parse_solution, with a "(n)" counter after every fifth move.
std::string format_solution(const std::vector<Move>& moves);

// Grid files. One character per lattice cell, top rank first:
//   ' ' no hole, '.' empty, 'O' peg, '1'..'9' marked peg.
// Lines holding ':' are directives, lines starting with '#' are comments.
struct ParsedBoard {
  Board board;
  Position start;
  std::string name;
};

// Directives: name, rule (orthogonal|diagonal), origin-file, origin-rank.
ParsedBoard parse_board(std::string_view text);
std::string format_board(const Board& board, const Position& pos);

// Start grid, a "---" line, finish grid. Finish cells left blank must be
// empty. Extra directives: board, max-moves, min-final-sweep,
// marks-immobile (yes|no), interchange <id> <id>.
Problem parse_problem(std::string_view text);
std::string format_problem(const Problem& p);

// Marked-peg finish grid shared by format_problem and the service.
std::string format_finish(const Problem& p);

// Any-symbol grid for data files laid over a board (counts, regions): every
// non-space character with its cell, plus the directives other than the
// origin ones.
struct SymbolGrid {
  std::vector<std::pair<Cell, char>> cells;
  std::vector<std::pair<std::string, std::string>> directives;
};
SymbolGrid parse_symbol_grid(std::string_view text);
// Origin directives plus one glyph per hole.
std::string render_symbol_grid(const Board& board, const std::vector<char>& glyphs);

std::vector<std::string> format_cells(const Board& board, const PegSet& pegs);

}  // namespace pegsol
