#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

// The JSON API behind `pegsol serve`. Requests are handled without touching
// the network so the routes can be tested directly; mount() puts them on
// HTTP. Apart from the job table every route is a pure function of its input.
namespace pegsol::service {

using json = nlohmann::json;

struct Response {
  int status = 200;
  json body;
};

struct Config {
  int workers = 1;  // solver threads shared by all jobs, >= 1
  std::uint64_t hint_nodes = 200'000;
  std::uint64_t max_hint_nodes = 5'000'000;
};

class Service {
 public:
  explicit Service(Config config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(std::string_view method, std::string_view path, std::string_view body);

 private:
  struct Job;

  Response submit(const json& req);
  Response job_status(const std::string& id);
  Response cancel(const std::string& id);
  void work(std::stop_token stop);

  Config config_;
  std::mutex mu_;
  std::condition_variable_any ready_;
  std::deque<std::shared_ptr<Job>> queue_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::uint64_t next_id_ = 1;
  std::vector<std::jthread> workers_;
};

// Routes every /api request of `server` to `service`.
void mount(httplib::Server& server, Service& service);

}  // namespace pegsol::service
