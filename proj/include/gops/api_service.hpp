// Copyright 2026 The GOPS Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GOPS_API_SERVICE_HPP_
#define GOPS_API_SERVICE_HPP_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "json.hpp"

#include "gops/play.hpp"
#include "gops/rng.hpp"

namespace httplib {
class Server;
}

namespace gops {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

struct ApiOptions {
  std::chrono::seconds idle_expiry{3600};
  // Injectable for tests.
  std::function<std::chrono::steady_clock::time_point()> clock = [] {
    return std::chrono::steady_clock::now();
  };
  // Seeds session ids and default game seeds; 0 draws from std::random_device.
  std::uint64_t entropy = 0;
};

// JSON facade over sessions and the value table. Routing is transport-free
// (handle) so it can be driven directly or bound to an HTTP server.
//
//   POST /api/v1/sessions              {n, seed?, hints?}  -> 201 {session}
//   GET  /api/v1/sessions/{id}                             -> {session}
//   POST /api/v1/sessions/{id}/bid     {card}              -> {round_record, session}
//   GET  /api/v1/sessions/{id}/advice                      -> {probs, value}
//   GET  /api/v1/value?v=&y=&p=                            -> {value}
//   GET  /api/v1/strategy?v=&y=&p=&upcard=                 -> {probs, value}
class ApiService {
 public:
  using Query = std::map<std::string, std::string>;

  explicit ApiService(SharedTable table, ApiOptions options = {});

  ApiResponse handle(const std::string& method, const std::string& path, const Query& query,
                     const std::string& body);

  // Registers every route on `server`.
  void bind(httplib::Server& server);

  std::size_t session_count();

  // Projection of a session onto the wire: public information only.
  static nlohmann::json session_json(const Session& s, bool hints);

 private:
  struct Entry {
    Entry(Session s, bool h, std::chrono::steady_clock::time_point t)
        : session(std::move(s)), hints(h), last_used(t) {}
    std::mutex mu;
    Session session;
    bool hints;
    std::chrono::steady_clock::time_point last_used;
  };

  ApiResponse create_session(const std::string& body);
  ApiResponse get_session(const std::string& id);
  ApiResponse bid(const std::string& id, const std::string& body);
  ApiResponse advice(const std::string& id);
  ApiResponse value(const Query& query);
  ApiResponse strategy(const Query& query);

  std::shared_ptr<Entry> find(const std::string& id);
  void expire_idle();
  std::string new_id();

  SharedTable table_;
  ApiOptions options_;
  std::mutex registry_mu_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  Rng entropy_;
};

}  // namespace gops

#endif  // GOPS_API_SERVICE_HPP_
