#include "service.hpp"

#include <algorithm>

#include "pegsol/catalog.hpp"
#include "pegsol/error.hpp"
#include "pegsol/move.hpp"
#include "pegsol/notation.hpp"
#include "pegsol/solver.hpp"

namespace pegsol::service {

namespace {

Response fail(int status, const std::string& code, const std::string& message) {
  return {status, json{{"error", code}, {"message", message}}};
}

Response from_error(const Error& e) {
  json body{{"error", e.code()}, {"message", e.what()}};
  if (const auto* im = dynamic_cast<const IllegalMove*>(&e)) body["jump_index"] = im->jump_index();
  return {e.code() == "unknown-id" ? 404 : 400, std::move(body)};
}

std::string rule_name(const Board& b) { return b.rule().diagonal ? "diagonal" : "orthogonal"; }

int hole_at(const Board& b, const std::string& name) {
  const Cell c = parse_cell(name);
  auto idx = b.index_of(c);
  if (!idx) throw Error("not-a-hole", name + " is not a hole of " + b.name());
  return *idx;
}

json cells_json(const Board& b, const PegSet& pegs) { return format_cells(b, pegs); }

json marks_json(const Board& b, const Position& p) {
  json out = json::object();
  for (const Mark& m : p.marks) out[std::to_string(m.id)] = format_cell(b.cell(m.hole));
  return out;
}

json move_json(const Move& m) { return format_solution({m}); }

const json& field(const json& req, const char* name) {
  if (!req.is_object() || !req.contains(name)) throw Error("missing-field", std::string("request needs '") + name + "'");
  return req.at(name);
}

std::string text_of(const json& v, const char* what) {
  if (!v.is_string()) throw Error("bad-request", std::string(what) + " must be a string");
  return v.get<std::string>();
}

// "position": cell names; "marks": {"<id>": cell}.
Position read_position(const Board& b, const json& req) {
  const json& cells = field(req, "position");
  if (!cells.is_array()) throw Error("bad-position", "position must be a list of cell names");
  Position p;
  for (const json& c : cells) {
    const int h = hole_at(b, text_of(c, "a cell"));
    if (p.pegs.contains_all(PegSet::single(h))) throw Error("bad-position", "cell " + c.get<std::string>() + " listed twice");
    p.pegs.set(h);
  }
  if (req.contains("marks")) {
    const json& marks = req.at("marks");
    if (!marks.is_object()) throw Error("bad-position", "marks must map ids to cells");
    for (const auto& [id, cell] : marks.items()) {
      int n = 0;
      try {
        n = std::stoi(id);
      } catch (const std::exception&) {
        throw Error("bad-position", "mark id '" + id + "' is not a number");
      }
      p.marks.push_back({n, hole_at(b, text_of(cell, "a mark cell"))});
    }
    std::sort(p.marks.begin(), p.marks.end(), [](const Mark& x, const Mark& y) { return x.id < y.id; });
  }
  validate_position(b, p);
  return p;
}

Move read_move(const json& v) {
  const auto moves = parse_solution(text_of(v, "move"));
  if (moves.size() != 1) throw Error("bad-solution", "expected exactly one move");
  return moves.front();
}

// A list of moves or one solution text.
std::vector<Move> read_moves(const json& v) {
  if (v.is_string()) return parse_solution(v.get<std::string>());
  if (!v.is_array()) throw Error("bad-solution", "moves must be a list or a solution text");
  std::vector<Move> out;
  for (const json& m : v) out.push_back(read_move(m));
  return out;
}

// A catalog id, or {"text": problem file}.
Problem read_problem(const json& v) {
  if (v.is_string()) return catalog::get_problem(v.get<std::string>());
  if (v.is_object() && v.contains("text")) return parse_problem(text_of(v.at("text"), "problem text"));
  throw Error("bad-request", "problem must be an id or {\"text\": ...}");
}

// Routes that work on a bare board take "board" or "problem".
std::shared_ptr<const Board> read_board(const json& req) {
  if (req.is_object() && req.contains("board")) return catalog::get_board(text_of(req.at("board"), "board"));
  return read_problem(field(req, "problem")).board;
}

std::optional<std::uint64_t> read_count(const json& req, const char* name) {
  if (!req.is_object() || !req.contains(name) || req.at(name).is_null()) return std::nullopt;
  const json& v = req.at(name);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
    throw Error("bad-budget", std::string(name) + " must be a positive integer");
  }
  return v.get<std::uint64_t>();
}

// Merson pruning wherever the catalog has a valid decomposition.
void catalog_pruning(const Problem& p, SolveOptions& o) {
  if (p.board_id.empty() || !catalog::has_board(p.board_id)) return;
  auto stored = catalog::get_board(p.board_id);
  if (!std::ranges::equal(stored->holes(), p.board->holes()) || stored->rule() != p.board->rule()) return;
  o.counts = catalog::get_counts(p.board_id, *p.board);
  if (auto r = catalog::get_regions(p.board_id, *p.board)) {
    o.regions = std::move(r);
    o.use_merson = true;
  }
}

std::vector<std::vector<Move>> book_of(const Problem& p) {
  std::vector<std::vector<Move>> out;
  if (p.id.empty()) return out;
  try {
    for (const auto& f : catalog::get_fixtures(p.id)) {
      if (f.complete && f.problem_id == p.id) out.push_back(parse_solution(f.text));
    }
  } catch (const Error&) {
  }
  return out;
}

json report_json(const Board& b, const VerifyReport& r) {
  json paths = json::object();
  for (const auto& [id, cells] : r.mark_paths) {
    json list = json::array();
    for (const Cell& c : cells) list.push_back(format_cell(c));
    paths[std::to_string(id)] = std::move(list);
  }
  json out{{"legal", r.legal},
           {"move_count", r.move_count},
           {"sweeps", r.sweeps},
           {"max_sweep", r.max_sweep},
           {"final_sweep", r.final_sweep},
           {"finish_met", r.finish_met},
           {"constraints_met", r.constraints_met},
           {"violations", r.violations},
           {"ok", r.ok()},
           {"mark_paths", std::move(paths)},
           {"position", cells_json(b, r.final_position.pegs)},
           {"marks", marks_json(b, r.final_position)}};
  if (!r.legal) {
    out["illegal_move"] = r.illegal_move;
    out["illegal_jump"] = r.illegal_jump;
    out["error"] = r.error;
  }
  return out;
}

json solve_json(const SolveReport& r) {
  return {{"outcome", outcome_name(r.outcome)},
          {"reason", r.reason},
          {"moves", format_solution(r.moves)},
          {"move_count", r.moves.size()},
          {"optimal", r.optimal},
          {"lower_bound", r.lower_bound},
          {"nodes", r.stats.nodes},
          {"seconds", r.stats.seconds}};
}

json problem_json(const Problem& p) {
  const Board& b = *p.board;
  json holes = json::array();
  for (const Cell& c : b.holes()) holes.push_back(format_cell(c));
  json finish_marks = json::object();
  for (const Mark& m : p.finish_marks) finish_marks[std::to_string(m.id)] = format_cell(b.cell(m.hole));
  json out{{"id", p.id},
           {"board", p.board_id},
           {"rule", rule_name(b)},
           {"holes", std::move(holes)},
           {"grid", format_board(b, full_position(b))},
           {"text", format_problem(p)},
           {"start", {{"position", cells_json(b, p.start.pegs)}, {"marks", marks_json(b, p.start)}}},
           {"finish", {{"position", cells_json(b, p.finish_pegs)}, {"marks", std::move(finish_marks)}}},
           {"marks_immobile", p.marks_immobile}};
  if (p.max_moves) out["max_moves"] = *p.max_moves;
  if (p.min_final_sweep) out["min_final_sweep"] = *p.min_final_sweep;
  json fixtures = json::array();
  for (const auto& f : catalog::get_fixtures(p.id)) {
    if (f.problem_id != p.id) continue;
    fixtures.push_back({{"id", f.id}, {"attribution", f.attribution}, {"moves", f.moves}, {"text", f.text},
                        {"complete", f.complete}});
  }
  out["fixtures"] = std::move(fixtures);
  return out;
}

}  // namespace

struct Service::Job {
  std::string id;
  Problem problem;
  bool shortest = false;
  SolveOptions options;
  std::stop_source stop;
  std::string state = "queued";  // queued, running, done, cancelled
  json result;
};

Service::Service(Config config) : config_(config) {
  if (config_.workers < 1) throw Error("bad-budget", "at least one solver worker is needed");
  for (int i = 0; i < config_.workers; ++i) {
    workers_.emplace_back([this](std::stop_token st) { work(st); });
  }
}

Service::~Service() {
  {
    std::lock_guard lock(mu_);
    for (auto& [id, job] : jobs_) job->stop.request_stop();
  }
  for (auto& w : workers_) w.request_stop();
  ready_.notify_all();
}

void Service::work(std::stop_token stop) {
  while (true) {
    std::shared_ptr<Job> job;
    {
      std::unique_lock lock(mu_);
      if (!ready_.wait(lock, stop, [&] { return !queue_.empty(); })) return;
      job = queue_.front();
      queue_.pop_front();
      job->state = "running";
    }
    json result;
    try {
      const SolveReport r = job->shortest ? shortest_solution(job->problem, job->options)
                                          : solve(job->problem, job->options);
      result = solve_json(r);
    } catch (const Error& e) {
      result = from_error(e).body;
    }
    std::lock_guard lock(mu_);
    job->result = std::move(result);
    job->state = job->stop.stop_requested() ? "cancelled" : "done";
  }
}

Response Service::submit(const json& req) {
  auto job = std::make_shared<Job>();
  job->problem = read_problem(field(req, "problem"));
  validate_problem(job->problem);
  const std::string mode = req.contains("mode") ? text_of(req.at("mode"), "mode") : "solve";
  if (mode != "solve" && mode != "shortest") throw Error("bad-request", "mode is solve or shortest");
  job->shortest = mode == "shortest";
  catalog_pruning(job->problem, job->options);
  job->options.max_nodes = read_count(req, "budget_nodes");
  if (req.contains("budget_seconds")) {
    const json& v = req.at("budget_seconds");
    if (!v.is_number() || v.get<double>() <= 0) throw Error("bad-budget", "budget_seconds must be positive");
    job->options.max_seconds = v.get<double>();
  }
  job->options.stop = job->stop.get_token();
  std::lock_guard lock(mu_);
  job->id = std::to_string(next_id_++);
  jobs_.emplace(job->id, job);
  queue_.push_back(job);
  ready_.notify_one();
  return {202, json{{"job", job->id}, {"state", job->state}}};
}

Response Service::job_status(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return fail(404, "unknown-id", "no job " + id);
  json out{{"job", id}, {"state", it->second->state}};
  if (!it->second->result.is_null()) out["result"] = it->second->result;
  return {200, std::move(out)};
}

Response Service::cancel(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return fail(404, "unknown-id", "no job " + id);
  Job& job = *it->second;
  job.stop.request_stop();
  if (job.state == "queued") {
    std::erase(queue_, it->second);
    job.state = "cancelled";
  }
  return {200, json{{"job", id}, {"state", job.state}}};
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    if (method == "GET" && path == "/api/boards") {
      json out = json::array();
      for (const std::string& id : catalog::list_entries()) {
        auto b = catalog::get_board(id);
        out.push_back({{"id", id}, {"holes", b->size()}, {"rule", rule_name(*b)}, {"symmetry", symmetry_name(*b)}});
      }
      return {200, out};
    }
    if (method == "GET" && path == "/api/problems") {
      json out = json::array();
      for (const std::string& id : catalog::list_problems()) {
        const Problem p = catalog::get_problem(id);
        out.push_back({{"id", id}, {"board", p.board_id}, {"pegs", p.start.pegs.count()}});
      }
      return {200, out};
    }
    constexpr std::string_view problems = "/api/problems/";
    if (method == "GET" && path.starts_with(problems)) {
      return {200, problem_json(catalog::get_problem(path.substr(problems.size())))};
    }
    constexpr std::string_view jobs = "/api/jobs/";
    if (path.starts_with(jobs)) {
      const std::string id(path.substr(jobs.size()));
      if (method == "GET") return job_status(id);
      if (method == "DELETE") return cancel(id);
      return fail(405, "bad-method", "jobs take GET or DELETE");
    }
    if (method != "POST") return fail(404, "not-found", "no route " + std::string(path));

    const json req = json::parse(body.begin(), body.end(), nullptr, false);
    if (req.is_discarded()) return fail(400, "bad-json", "request body is not JSON");

    if (path == "/api/legal-moves") {
      auto b = read_board(req);
      const Position p = read_position(*b, req);
      json out = json::array();
      for (const Move& m : legal_moves(*b, p)) out.push_back(move_json(m));
      return {200, json{{"moves", std::move(out)}}};
    }
    if (path == "/api/apply") {
      auto b = read_board(req);
      const Position p = read_position(*b, req);
      const Move m = read_move(field(req, "move"));
      json captures = json::array();
      for (const Jump& j : move_jumps(*b, m)) captures.push_back(format_cell(b->cell(j.over)));
      const Position q = apply_move(*b, p, m);
      return {200, json{{"position", cells_json(*b, q.pegs)}, {"marks", marks_json(*b, q)},
                        {"captures", std::move(captures)}, {"sweep", m.sweep()}}};
    }
    if (path == "/api/verify") {
      const Problem p = read_problem(field(req, "problem"));
      const VerifyReport r = verify_solution(p, read_moves(field(req, "moves")));
      return {200, report_json(*p.board, r)};
    }
    if (path == "/api/hint") {
      const Problem p = read_problem(field(req, "problem"));
      const Position pos = req.contains("position") ? read_position(*p.board, req) : p.start;
      SolveOptions o;
      catalog_pruning(p, o);
      o.table_entries = std::size_t{1} << 20;
      o.max_nodes = std::min(read_count(req, "budget").value_or(config_.hint_nodes), config_.max_hint_nodes);
      const Hint h = hint(p, pos, o, book_of(p));
      if (h.move) return {200, json{{"move", move_json(*h.move)}}};
      return {200, json{{"move", nullptr}, {"reason", h.reason}}};
    }
    if (path == "/api/solve") return submit(req);
    return fail(404, "not-found", "no route " + std::string(path));
  } catch (const Error& e) {
    return from_error(e);
  } catch (const json::exception& e) {
    return fail(400, "bad-request", e.what());
  }
}

void mount(httplib::Server& server, Service& service) {
  auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    const Response r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", route);
  server.Post(R"(/api/.*)", route);
  server.Delete(R"(/api/.*)", route);
}

}  // namespace pegsol::service
