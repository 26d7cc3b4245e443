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

#include "gops/api_service.hpp"

#include <cstdio>
#include <random>
#include <regex>

#include "httplib.h"

#include "gops/solver.hpp"

namespace gops {
namespace {

using nlohmann::json;

ApiResponse error(int status, const std::string& message) {
  return {status, json{{"error", message}}};
}

json cards_json(CardSet s) { return s.cards(); }

json probs_json(CardSet hand, const MixedStrategy<double>& probs) {
  json out = json::array();
  const auto cards = hand.cards();
  for (std::size_t i = 0; i < cards.size(); ++i)
    out.push_back({{"card", cards[i]}, {"p", probs(static_cast<Eigen::Index>(i))}});
  return out;
}

json round_json(const RoundRecord& r, int round) {
  return {{"round", round},
          {"upcard", r.upcard},
          {"your_bid", r.human_bid},
          {"bot_bid", r.bot_bid},
          {"points_to", points_to_name(r.points_to)}};
}

// Reads v, y, p from the query string into a state.
GameState state_from(const ApiService::Query& query) {
  auto get = [&](const char* key) {
    auto it = query.find(key);
    if (it == query.end()) throw std::invalid_argument(std::string("missing parameter ") + key);
    return parse_card_list(it->second);
  };
  return GameState(get("v"), get("y"), get("p"));
}

}  // namespace

ApiService::ApiService(SharedTable table, ApiOptions options)
    : table_(std::move(table)), options_(std::move(options)), entropy_(options_.entropy) {
  if (options_.entropy == 0) {
    std::random_device rd;
    entropy_ = Rng((std::uint64_t{rd()} << 32) ^ rd());
  }
}

std::size_t ApiService::session_count() {
  std::lock_guard lock(registry_mu_);
  return sessions_.size();
}

std::string ApiService::new_id() {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(entropy_.next_u64()),
                static_cast<unsigned long long>(entropy_.next_u64()));
  return buf;
}

void ApiService::expire_idle() {
  const auto now = options_.clock();
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > options_.idle_expiry)
      it = sessions_.erase(it);
    else
      ++it;
  }
}

std::shared_ptr<ApiService::Entry> ApiService::find(const std::string& id) {
  std::lock_guard lock(registry_mu_);
  expire_idle();
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  return it->second;
}

json ApiService::session_json(const Session& s, bool hints) {
  json history = json::array();
  for (std::size_t i = 0; i < s.history().size(); ++i)
    history.push_back(round_json(s.history()[i], static_cast<int>(i) + 1));
  json out = {
      {"id", s.id()},
      {"n", s.n()},
      {"round", s.finished() ? s.n() : s.round()},
      {"upcard", s.finished() ? json(nullptr) : json(s.upcard())},
      {"your_hand", cards_json(s.human_hand())},
      {"bot_hand", cards_json(s.bot_hand())},
      {"scores", {{"you", s.human_half_points() / 2.0}, {"bot", s.bot_half_points() / 2.0}}},
      {"history", history},
      {"finished", s.finished()},
      {"hints", hints},
  };
  if (s.finished()) {
    const auto r = s.final_result();
    out["result"] = {{"winner", winner_name(r.winner)},
                     {"your_score", r.human_score()},
                     {"bot_score", r.bot_score()},
                     {"zero_sum_margin", r.zero_sum_margin()}};
  }
  return out;
}

ApiResponse ApiService::create_session(const std::string& body) {
  const json request = json::parse(body.empty() ? "{}" : body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) return error(400, "body must be a JSON object");
  if (!request.contains("n") || !request["n"].is_number_integer())
    return error(400, "field n (integer) is required");
  const int n = request["n"].get<int>();
  if (n < 1 || n > 13) return error(400, "n must be in 1..13");
  if (request.contains("seed") && !request["seed"].is_number_unsigned() &&
      !request["seed"].is_number_integer())
    return error(400, "seed must be an integer");
  if (request.contains("hints") && !request["hints"].is_boolean())
    return error(400, "hints must be a boolean");
  if (!table_ || !table_covers(*table_, n))
    return error(503, "no value table loaded for n = " + std::to_string(n));

  std::lock_guard lock(registry_mu_);
  expire_idle();
  const std::uint64_t seed =
      request.contains("seed") ? request["seed"].get<std::uint64_t>() : entropy_.next_u64();
  const bool hints = request.value("hints", false);
  std::string id = new_id();
  auto entry = std::make_shared<Entry>(
      Session::create(n, seed, BotPolicy::equilibrium(table_), id), hints, options_.clock());
  const json view = session_json(entry->session, hints);
  sessions_.emplace(std::move(id), std::move(entry));
  return {201, json{{"session", view}}};
}

ApiResponse ApiService::get_session(const std::string& id) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown session " + id);
  std::lock_guard lock(entry->mu);
  entry->last_used = options_.clock();
  return {200, json{{"session", session_json(entry->session, entry->hints)}}};
}

ApiResponse ApiService::bid(const std::string& id, const std::string& body) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown session " + id);
  const json request = json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object() || !request.contains("card") ||
      !request["card"].is_number_integer())
    return error(400, "body must be {\"card\": <integer>}");

  std::lock_guard lock(entry->mu);
  entry->last_used = options_.clock();
  Session& s = entry->session;
  try {
    const int round = s.round();
    const RoundRecord record = s.submit_bid(request["card"].get<int>());
    return {200, json{{"round_record", round_json(record, round)},
                      {"session", session_json(s, entry->hints)}}};
  } catch (const PlayError& e) {
    return error(409, e.what());
  }
}

ApiResponse ApiService::advice(const std::string& id) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown session " + id);
  std::lock_guard lock(entry->mu);
  entry->last_used = options_.clock();
  if (!entry->hints) return error(403, "hints are disabled for this session");
  const Session& s = entry->session;
  if (s.finished()) return error(409, "session finished");
  if (!table_) return error(503, "no value table loaded");
  try {
    const auto sol = s.advice(*table_);
    return {200, json{{"probs", probs_json(s.human_hand(), sol.row)}, {"value", sol.value}}};
  } catch (const PlayError& e) {
    return error(503, e.what());
  }
}

ApiResponse ApiService::value(const Query& query) {
  GameState state;
  try {
    state = state_from(query);
  } catch (const std::exception& e) {
    return error(400, e.what());
  }
  if (!table_) return error(503, "no value table loaded");
  if (state.v().max() > table_->n() || state.y().max() > table_->n() ||
      state.p().max() > table_->n())
    return error(400, "cards exceed the loaded table (n = " + std::to_string(table_->n()) + ")");
  if (table_->has_layer(state.size())) return {200, json{{"value", table_->value(state)}}};
  if (state.size() >= 1 && table_->has_layer(state.size() - 1))
    return {200, json{{"value", game_value<double>(state, table_->lookup())}}};
  return error(503, "loaded table does not cover subgames of size " + std::to_string(state.size()));
}

ApiResponse ApiService::strategy(const Query& query) {
  GameState state;
  Card upcard = 0;
  try {
    state = state_from(query);
    auto it = query.find("upcard");
    if (it == query.end()) throw std::invalid_argument("missing parameter upcard");
    upcard = std::stoi(it->second);
  } catch (const std::exception& e) {
    return error(400, e.what());
  }
  if (!state.p().contains(upcard)) return error(400, "upcard not in deck p");
  if (!table_) return error(503, "no value table loaded");
  try {
    const auto sol = strategy_for(*table_, state, upcard);
    return {200, json{{"probs", probs_json(state.v(), sol.row)}, {"value", sol.value}}};
  } catch (const std::invalid_argument& e) {
    return error(503, e.what());
  }
}

ApiResponse ApiService::handle(const std::string& method, const std::string& path,
                               const Query& query, const std::string& body) {
  static const std::regex kSession(R"(^/api/v1/sessions/([A-Za-z0-9]+)$)");
  static const std::regex kBid(R"(^/api/v1/sessions/([A-Za-z0-9]+)/bid$)");
  static const std::regex kAdvice(R"(^/api/v1/sessions/([A-Za-z0-9]+)/advice$)");
  std::smatch m;
  try {
    if (path == "/api/v1/sessions") {
      if (method == "POST") return create_session(body);
      return error(405, "method not allowed");
    }
    if (path == "/api/v1/value") {
      if (method == "GET") return value(query);
      return error(405, "method not allowed");
    }
    if (path == "/api/v1/strategy") {
      if (method == "GET") return strategy(query);
      return error(405, "method not allowed");
    }
    if (std::regex_match(path, m, kSession)) {
      if (method == "GET") return get_session(m[1]);
      return error(405, "method not allowed");
    }
    if (std::regex_match(path, m, kBid)) {
      if (method == "POST") return bid(m[1], body);
      return error(405, "method not allowed");
    }
    if (std::regex_match(path, m, kAdvice)) {
      if (method == "GET") return advice(m[1]);
      return error(405, "method not allowed");
    }
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
  return error(404, "no route for " + path);
}

void ApiService::bind(httplib::Server& server) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    Query query;
    for (const auto& [k, v] : req.params) query[k] = v;
    const ApiResponse r = handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const char* pattern = R"(/api/v1/.*)";
  server.Get(pattern, route);
  server.Post(pattern, route);
  server.Put(pattern, route);
  server.Delete(pattern, route);
}

}  // namespace gops
