#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "pegsol/catalog.hpp"
#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"
#include "pegsol/solver.hpp"
#include "service.hpp"

namespace pegsol::cli {

namespace {

struct SearchFlags {
  std::optional<std::uint64_t> nodes;
  std::optional<double> seconds;
  int threads = 1;
  std::vector<std::string> no_prune;
  bool deterministic = false;
  std::string strategy = "automatic";
  bool presweep = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("unknown-id", "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

// A problem file, a catalog problem id, or a board id with --vacate/--finish.
Problem resolve(const std::string& target, const std::string& vacate, const std::string& finish) {
  if (!vacate.empty() || !finish.empty()) {
    if (vacate.empty()) throw Error("bad-request", "--finish needs --vacate");
    auto board = catalog::get_board(target);
    auto hole = [&](const std::string& name) {
      auto h = board->index_of(parse_cell(name));
      if (!h) throw Error("not-a-hole", name + " is not a hole of " + target);
      return *h;
    };
    Problem p = single_survivor_problem(board, hole(vacate), hole(finish.empty() ? vacate : finish));
    p.board_id = target;
    return p;
  }
  if (is_file(target)) return parse_problem(slurp(target));
  return catalog::get_problem(target);
}

// A solution file (fixture directives allowed before a "---" line) or a
// fixture id.
std::string solution_text(const std::string& source) {
  if (!is_file(source)) {
    for (const auto& f : catalog::all_fixtures()) {
      if (f.id == source) return f.text;
    }
    throw Error("unknown-id", "no solution file or fixture '" + source + "'");
  }
  std::string text = slurp(source);
  std::istringstream in(text);
  std::string line, body;
  bool split = false;
  while (std::getline(in, line)) {
    if (split) {
      body += line + "\n";
    } else if (line == "---") {
      split = true;
    }
  }
  return split ? body : text;
}

SolveOptions options_for(const Problem& p, const SearchFlags& f) {
  SolveOptions o;
  o.max_nodes = f.nodes;
  o.max_seconds = f.seconds;
  o.threads = f.deterministic ? 1 : f.threads;
  if (!p.board_id.empty() && catalog::has_board(p.board_id)) {
    auto stored = catalog::get_board(p.board_id);
    if (std::ranges::equal(stored->holes(), p.board->holes()) && stored->rule() == p.board->rule()) {
      o.counts = catalog::get_counts(p.board_id, *p.board);
      if (auto r = catalog::get_regions(p.board_id, *p.board)) {
        o.regions = std::move(r);
        o.use_merson = true;
      }
    }
  }
  for (const std::string& name : f.no_prune) {
    if (name == "symmetry") o.use_symmetry = false;
    else if (name == "class") o.use_class = false;
    else if (name == "resource") o.use_resource = false;
    else if (name == "table") o.use_table = false;
    else if (name == "merson") o.use_merson = false;
    else throw Error("bad-request", "unknown pruning '" + name + "'");
  }
  if (f.strategy == "jumps") o.strategy = Strategy::jumps;
  else if (f.strategy == "moves") o.strategy = Strategy::moves;
  else if (f.strategy == "bidirectional") o.strategy = Strategy::bidirectional;
  else if (f.strategy != "automatic") throw Error("bad-strategy", "unknown strategy '" + f.strategy + "'");
  o.presweep_first = f.presweep;
  return o;
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::solved: return ok;
    case Outcome::unsolvable: return failed;
    case Outcome::exhausted: return exhausted;
  }
  return failed;
}

void print_search(std::ostream& out, const SolveReport& r, bool shortest) {
  out << "outcome: " << outcome_name(r.outcome);
  if (!r.reason.empty()) out << " (" << r.reason << ")";
  out << "\n";
  if (r.outcome == Outcome::solved) {
    out << r.moves.size() << " moves";
    if (shortest) out << (r.optimal ? ", optimal" : ", not proven optimal");
    out << "\n" << format_solution(r.moves) << "\n";
  } else if (shortest) {
    out << "lower bound: " << r.lower_bound << " moves\n";
  }
  out << "nodes: " << r.stats.nodes << ", seconds: " << r.stats.seconds << "\n";
}

void print_report(std::ostream& out, const VerifyReport& r) {
  if (!r.legal) {
    out << "illegal: move " << r.illegal_move + 1 << ", jump " << r.illegal_jump + 1 << ": " << r.error << "\n";
  }
  out << r.move_count << " moves";
  if (r.move_count > 0) out << ", max sweep " << r.max_sweep << ", final sweep " << r.final_sweep;
  out << "\n";
  out << "finish: " << (r.finish_met ? "met" : "not met") << "\n";
  out << "constraints: " << (r.constraints_met ? "met" : "not met") << "\n";
  for (const std::string& v : r.violations) out << "  " << v << "\n";
  for (const auto& [id, path] : r.mark_paths) {
    out << "mark " << id << ": " << format_cell(path.front()) << " -> " << format_cell(path.back()) << "\n";
  }
}

std::string class_bits(PositionClass c) {
  std::string s;
  for (int i = 3; i >= 0; --i) s += (c.bits >> i & 1) ? '1' : '0';
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Peg solitaire boards, problems and solver"};
  app.require_subcommand(1);

  auto add_search = [](CLI::App* cmd, SearchFlags& f) {
    cmd->add_option("--budget-nodes", f.nodes, "Node budget")->check(CLI::PositiveNumber);
    cmd->add_option("--budget-seconds", f.seconds, "Time budget in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1, 256));
    cmd->add_option("--no-prune", f.no_prune, "Disable symmetry, class, resource, table or merson");
    cmd->add_flag("--deterministic", f.deterministic, "One thread, reproducible node counts");
  };

  auto* boards = app.add_subcommand("boards", "List catalog boards and problems");

  std::string show_id;
  auto* show = app.add_subcommand("show", "Print a board or problem grid");
  show->add_option("id", show_id)->required();

  std::string verify_problem, verify_solution_src;
  auto* verify = app.add_subcommand("verify", "Replay a solution against a problem");
  verify->add_option("problem", verify_problem, "Problem file or id")->required();
  verify->add_option("solution", verify_solution_src, "Solution file or fixture id")->required();

  SearchFlags sflags;
  std::string target, vacate, finish;
  auto* solve_cmd = app.add_subcommand("solve", "Find a solution");
  auto* shortest_cmd = app.add_subcommand("shortest", "Find a solution with the fewest moves");
  for (CLI::App* cmd : {solve_cmd, shortest_cmd}) {
    cmd->add_option("target", target, "Problem file, problem id, or board id with --vacate")->required();
    cmd->add_option("--vacate", vacate, "Single vacancy");
    cmd->add_option("--finish", finish, "Single survivor (default: the vacancy)");
    add_search(cmd, sflags);
  }
  solve_cmd->add_option("--strategy", sflags.strategy, "automatic, jumps, moves or bidirectional");
  solve_cmd->add_flag("--presweep", sflags.presweep, "Search final sweeps first");

  std::string board_id;
  auto* everywhere = app.add_subcommand("everywhere", "Decide every single-vacancy complement problem");
  everywhere->add_option("board", board_id)->required();
  add_search(everywhere, sflags);

  auto* classify = app.add_subcommand("classify", "Position classes of a board");
  classify->add_option("board", board_id)->required();
  classify->add_option("--vacate", vacate, "Also classify this single vacancy");

  auto* bound = app.add_subcommand("bound", "Merson lower bound on moves");
  bound->add_option("board", board_id)->required();
  bound->add_option("--vacate", vacate)->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--port", port)->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--threads", sflags.threads, "Solver workers shared by all jobs")->check(CLI::Range(1, 256));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*boards) {
      for (const std::string& id : catalog::list_entries()) {
        auto b = catalog::get_board(id);
        const std::string sym = symmetry_name(*b);
        out << id << "  " << b->size() << " holes" << (b->rule().diagonal ? ", diagonal" : "")
            << (sym.empty() ? "" : ", " + sym) << "\n";
      }
      out << "problems:";
      for (const std::string& id : catalog::list_problems()) out << " " << id;
      out << "\n";
      return ok;
    }
    if (*show) {
      if (catalog::has_board(show_id)) {
        out << catalog::board_text(show_id);
      } else {
        out << format_problem(resolve(show_id, "", ""));
      }
      return ok;
    }
    if (*verify) {
      const Problem p = resolve(verify_problem, "", "");
      const auto moves = parse_solution(solution_text(verify_solution_src));
      VerifyReport r;
      try {
        r = verify_solution(p, moves);
      } catch (const Error& e) {
        // A path off the board is a failed replay, not a usage error.
        if (e.code() != "not-a-hole") throw;
        out << "illegal: " << e.what() << "\n";
        return failed;
      }
      print_report(out, r);
      return r.legal && r.finish_met ? ok : failed;
    }
    if (*solve_cmd || *shortest_cmd) {
      const Problem p = resolve(target, vacate, finish);
      const SolveOptions o = options_for(p, sflags);
      const bool shortest = static_cast<bool>(*shortest_cmd);
      const SolveReport r = shortest ? shortest_solution(p, o) : solve(p, o);
      print_search(out, r, shortest);
      return exit_for(r.outcome);
    }
    if (*everywhere) {
      auto board = catalog::get_board(board_id);
      Problem probe;
      probe.board_id = board_id;
      probe.board = board;
      const EverywhereReport r = solvable_everywhere(board, options_for(probe, sflags));
      for (int h = 0; h < board->size(); ++h) {
        out << format_cell(board->cell(h)) << " "
            << (!r.solvable[h] ? "undecided" : *r.solvable[h] ? "solvable" : "unsolvable");
        if (r.solvable[h] != true && !r.reasons[h].empty()) out << " (" << r.reasons[h] << ")";
        out << "\n";
      }
      out << "solvable everywhere: " << (r.all_solvable() ? "yes" : r.complete() ? "no" : "undecided") << "\n";
      return r.all_solvable() ? ok : r.complete() ? failed : exhausted;
    }
    if (*classify) {
      auto board = catalog::get_board(board_id);
      if (board->rule().diagonal) {
        out << "no class invariant under the diagonal rule\n";
        return ok;
      }
      out << "full board class: " << class_bits(position_class(*board, board->full())) << "\n";
      out << "null-class: " << (is_null_class(*board) ? "yes" : "no") << "\n";
      if (!vacate.empty()) {
        auto h = board->index_of(parse_cell(vacate));
        if (!h) throw Error("not-a-hole", vacate + " is not a hole of " + board_id);
        PegSet pegs = board->full();
        pegs.reset(*h);
        out << "vacate " << vacate << ": " << class_bits(position_class(*board, pegs)) << "\n";
      }
      return ok;
    }
    if (*bound) {
      auto board = catalog::get_board(board_id);
      auto regions = catalog::get_regions(board_id, *board);
      if (!regions) throw Error("no-regions", "no region decomposition is stored for " + board_id);
      out << merson_bound(*board, *regions, parse_cell(vacate)) << "\n";
      return ok;
    }
    if (*serve) {
      service::Service svc({.workers = sflags.threads});
      httplib::Server server;
      service::mount(server, svc);
      if (!server.bind_to_port(host, port)) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return usage;
      }
      out << "listening on " << host << ":" << port << std::endl;
      return server.listen_after_bind() ? ok : failed;
    }
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace pegsol::cli
