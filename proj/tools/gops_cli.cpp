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

// gops: solve, verify, query, export and play the n-card Game of Pure Strategy.
//
// Machine-readable output goes to stdout, diagnostics to stderr. Exit status is
// 0 on success, 1 on domain errors, 2 on usage errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gops/api_service.hpp"
#include "gops/play.hpp"
#include "gops/solver.hpp"
#include "gops/table_io.hpp"
#include "gops/verify.hpp"
// after Eigen: resolv.h defines _res
#include "httplib.h"

namespace {

using nlohmann::json;
using namespace gops;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFlags {
  bool start = false;
  std::string v, y, p;
};

void add_state_flags(CLI::App* cmd, StateFlags& f) {
  auto* start = cmd->add_flag("--start", f.start, "the full n-card starting position");
  auto* v = cmd->add_option("--v", f.v, "player one's hand, e.g. 2,4");
  auto* y = cmd->add_option("--y", f.y, "player two's hand");
  auto* p = cmd->add_option("--p", f.p, "remaining prize cards");
  start->excludes(v, y, p);
}

GameState state_from(const StateFlags& f, int n) {
  if (f.start) return GameState::start(n);
  if (f.v.empty() || f.y.empty() || f.p.empty())
    throw UsageError("give --start or all of --v, --y, --p");
  return GameState(parse_card_list(f.v), parse_card_list(f.y), parse_card_list(f.p));
}

int highest_card(const GameState& s) {
  return std::max({s.v().max(), s.y().max(), s.p().max()});
}

json probs_json(CardSet hand, const MixedStrategy<double>& row) {
  json out = json::array();
  const auto cards = hand.cards();
  for (std::size_t i = 0; i < cards.size(); ++i)
    out.push_back({{"card", cards[i]}, {"p", row(static_cast<Eigen::Index>(i))}});
  return out;
}

json stats_json(const SolveStats& st) {
  json methods;
  for (int m = 0; m < 4; ++m) methods[method_name(static_cast<SolveMethod>(m))] = st.by_method[m];
  return {{"stage_solves", st.stage_solves},     {"states_solved", st.states_solved},
          {"states_mirrored", st.states_mirrored}, {"states_diagonal", st.states_diagonal},
          {"by_method", methods},                {"layer_seconds", st.layer_seconds},
          {"seconds", st.seconds}};
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---- solve ----------------------------------------------------------------

struct SolveFlags {
  int n = 0;
  bool exact = false;
  int workers = 1;
  bool keep_all = false;
  std::string out;
};

int run_solve(const SolveFlags& f) {
  SolveConfig config;
  config.n = f.n;
  config.workers = f.workers;
  config.keep_all_layers = f.keep_all;
  config.arithmetic = f.exact ? Arithmetic::kRational : Arithmetic::kFloat64;
  validate(config);

  GvtWriter writer(f.out, f.n);
  SolveStats stats;
  if (f.exact) {
    solve_all<Rational>(config, &stats, [&](int j, std::span<const Rational> layer) {
      std::vector<double> rounded(layer.size());
      for (std::size_t i = 0; i < layer.size(); ++i) rounded[i] = to_double(layer[i]);
      writer.append_layer(j, rounded);
    });
  } else {
    solve_all<double>(config, &stats,
                      [&](int j, std::span<const double> layer) { writer.append_layer(j, layer); });
  }
  writer.finish();

  json out = {{"n", f.n},
              {"arithmetic", arithmetic_name(config.arithmetic)},
              {"workers", f.workers},
              {"subgame_count", subgame_count(f.n)},
              {"stored_values", stored_value_count(f.n)},
              {"out", f.out}};
  out.update(stats_json(stats));
  print(out);
  return 0;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::string& path, const VerifyOptions& options) {
  const auto table = load_table(path);
  const auto report = verify_table(table, options);
  json violations = json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < 50; ++i) {
    const auto& v = report.violations[i];
    violations.push_back({{"kind", violation_name(v.kind)},
                          {"layer", v.layer},
                          {"index", v.index},
                          {"magnitude", v.magnitude},
                          {"detail", v.detail}});
  }
  print({{"n", table.n()},
         {"ok", report.ok()},
         {"entries_checked", report.entries_checked},
         {"stage_games_sampled", report.stage_games_sampled},
         {"max_antisymmetry_error", report.max_antisymmetry_error},
         {"max_exploitability", report.max_exploitability},
         {"violation_count", report.violations.size()},
         {"violations", violations}});
  if (!report.ok()) {
    std::cerr << "gops: table " << path << " failed verification\n";
    return kExitDomain;
  }
  return 0;
}

// ---- value / strategy -----------------------------------------------------

struct QueryFlags {
  std::string table;
  int n = 0;
  bool exact = false;
  int workers = 1;
  StateFlags state;
  int upcard = 0;
};

// Deck size implied by the flags: the table's n or --n.
int deck_size(const QueryFlags& f, const std::optional<ValueTable<double>>& table) {
  if (table) return table->n();
  return f.n;
}

std::optional<ValueTable<double>> maybe_load(const QueryFlags& f) {
  if (f.table.empty()) return std::nullopt;
  return load_table(f.table);
}

template <typename Scalar>
ValueTable<Scalar> solve_up_to(const QueryFlags& f, int n, int top) {
  SolveConfig c;
  c.n = n;
  c.workers = f.workers;
  c.max_layer = top;
  c.arithmetic = ScalarTraits<Scalar>::kArithmetic;
  return solve_all<Scalar>(c);
}

void check_fits(const GameState& s, int n) {
  if (highest_card(s) > n)
    throw std::invalid_argument("state uses card " + std::to_string(highest_card(s)) +
                                " but the table covers cards 1.." + std::to_string(n));
}

int run_value(const QueryFlags& f) {
  const auto table = maybe_load(f);
  const int n = deck_size(f, table);
  const GameState state = state_from(f.state, n);
  check_fits(state, n);
  json out = {{"v", state.v().cards()}, {"y", state.y().cards()}, {"p", state.p().cards()}};
  if (table) {
    out["value"] = table->value(state);
  } else if (f.exact) {
    const auto t = solve_up_to<Rational>(f, n, state.size());
    out["value"] = to_double(t.value(state));
    out["exact"] = t.value(state).str();
  } else {
    out["value"] = solve_up_to<double>(f, n, state.size()).value(state);
  }
  print(out);
  return 0;
}

int run_strategy(const QueryFlags& f) {
  const auto table = maybe_load(f);
  const int n = deck_size(f, table);
  const GameState state = state_from(f.state, n);
  check_fits(state, n);
  if (state.size() == 0) throw std::invalid_argument("the empty game has no decisions");
  if (!state.p().contains(f.upcard))
    throw std::invalid_argument("upcard " + std::to_string(f.upcard) + " is not in " +
                                state.p().to_string());

  json out = {{"upcard", f.upcard}};
  if (f.exact && !table) {
    const auto t = solve_up_to<Rational>(f, n, state.size() - 1);
    const auto sol = strategy_for(t, state, f.upcard);
    const auto matrix = payoff_matrix<Rational>(state, f.upcard, t.lookup());
    json probs = json::array(), exact = json::array();
    const auto cards = state.v().cards();
    for (std::size_t i = 0; i < cards.size(); ++i) {
      const auto& p = sol.row(static_cast<Eigen::Index>(i));
      probs.push_back({{"card", cards[i]}, {"p", to_double(p)}});
      exact.push_back(p.str());
    }
    out["probs"] = probs;
    out["exact_probs"] = exact;
    out["value"] = to_double(sol.value);
    out["exact"] = sol.value.str();
    out["method"] = method_name(sol.method);
    out["exploitability"] = to_double(exploitability(matrix, sol));
  } else {
    const auto t = table ? std::move(*table) : solve_up_to<double>(f, n, state.size() - 1);
    const auto sol = strategy_for(t, state, f.upcard);
    const auto matrix = payoff_matrix<double>(state, f.upcard, t.lookup());
    out["probs"] = probs_json(state.v(), sol.row);
    out["value"] = sol.value;
    out["method"] = method_name(sol.method);
    out["exploitability"] = exploitability(matrix, sol);
  }
  print(out);
  return 0;
}

// ---- export ---------------------------------------------------------------

std::string four_places(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p);
  if (std::string(buf) == "0.0000" || std::string(buf) == "-0.0000") return "0";
  return buf;
}

int run_export(const std::string& table_path, const std::string& out_path) {
  const auto table = load_table(table_path);
  const int n = table.n();
  const GameState start = GameState::start(n);
  std::vector<MixedStrategy<double>> columns;
  for (Card k = 1; k <= n; ++k) columns.push_back(strategy_for(table, start, k).row);

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << "card";
  for (Card k = 1; k <= n; ++k) out << ',' << k;
  out << '\n';
  for (int i = 0; i < n; ++i) {
    out << i + 1;
    for (int k = 0; k < n; ++k) out << ',' << four_places(columns[k](i));
    out << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write to " + out_path + " failed");
  print({{"n", n}, {"out", out_path}, {"rows", n}, {"columns", n}});
  return 0;
}

// ---- play -----------------------------------------------------------------

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

int run_play(const std::string& table_path, std::optional<std::uint64_t> seed_flag, bool hints) {
  const SharedTable table = std::make_shared<const ValueTable<double>>(load_table(table_path));
  const std::uint64_t seed = seed_flag ? *seed_flag : fresh_seed();
  Session s = Session::create(table->n(), seed, BotPolicy::equilibrium(table));
  std::cout << "Game of Pure Strategy, " << s.n() << " cards, seed " << seed << "\n";
  while (!s.finished()) {
    std::cout << "\nround " << s.round() << "  upcard " << s.upcard() << "   you "
              << s.human_half_points() / 2.0 << "  bot " << s.bot_half_points() / 2.0 << "\n"
              << "your hand " << s.human_hand().to_string() << "   bot hand "
              << s.bot_hand().to_string() << "\n";
    if (hints) {
      const auto sol = s.advice(*table);
      const auto cards = s.human_hand().cards();
      std::cout << "hint:";
      for (std::size_t i = 0; i < cards.size(); ++i)
        std::cout << ' ' << cards[i] << '=' << four_places(sol.row(static_cast<Eigen::Index>(i)));
      std::cout << "  value " << sol.value << "\n";
    }
    std::cout << "bid> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) {
      std::cout << "\n";
      std::cerr << "gops: input closed before the game ended\n";
      return kExitDomain;
    }
    try {
      const RoundRecord r = s.submit_bid(std::stoi(line));
      std::cout << "you " << r.human_bid << " vs bot " << r.bot_bid << ": "
                << points_to_name(r.points_to) << " takes " << r.upcard << "\n";
    } catch (const PlayError& e) {
      std::cout << e.what() << "\n";
    } catch (const std::logic_error&) {
      std::cout << "enter one of " << s.human_hand().to_string() << "\n";
    }
  }
  const auto r = s.final_result();
  std::cout << "\nfinal: you " << r.human_score() << ", bot " << r.bot_score() << " ("
            << winner_name(r.winner) << ")\n";
  return 0;
}

// ---- serve ----------------------------------------------------------------

int run_serve(const std::string& table_path, int port, const std::string& bind,
              const std::string& static_dir) {
  const SharedTable table = std::make_shared<const ValueTable<double>>(load_table(table_path));
  ApiService api(table);
  httplib::Server server;
  api.bind(server);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir))
    throw std::invalid_argument("static directory " + static_dir + " does not exist");
  std::cerr << "gops: serving n = " << table->n() << " on http://" << bind << ':' << port << "\n";
  if (!server.listen(bind, port)) throw std::runtime_error("cannot listen on " + bind);
  return 0;
}

// ---- bench ----------------------------------------------------------------

int run_bench(int n, int workers) {
  SolveConfig c;
  c.n = n;
  c.workers = workers;
  SolveStats stats;
  const auto table = solve_all<double>(c, &stats);
  json out = {{"n", n},
              {"workers", workers},
              {"subgame_count", subgame_count(n)},
              {"start_value", table.value(GameState::start(n))}};
  out.update(stats_json(stats));
  out["stage_solves_per_second"] = stats.seconds > 0 ? stats.stage_solves / stats.seconds : 0.0;
  print(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver and bot for the n-card Game of Pure Strategy"};
  app.require_subcommand(1, 1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve every subgame and write a GVT table");
  solve_cmd->add_option("--n", solve.n, "deck size")->required()->check(CLI::Range(1, 13));
  solve_cmd->add_flag("--exact", solve.exact, "rational arithmetic (n <= 5)");
  solve_cmd->add_option("--workers", solve.workers, "worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--keep-all", solve.keep_all, "keep every layer in memory");
  solve_cmd->add_option("--out", solve.out, "output .gvt path")->required();

  std::string verify_table_path;
  VerifyOptions verify_options;
  auto* verify_cmd = app.add_subcommand("verify", "check table invariants");
  verify_cmd->add_option("--table", verify_table_path)->required();
  verify_cmd->add_option("--samples", verify_options.samples, "stage games to re-solve");
  verify_cmd->add_option("--seed", verify_options.seed);

  QueryFlags value;
  auto* value_cmd = app.add_subcommand("value", "value of a position to player one");
  QueryFlags strategy;
  auto* strategy_cmd = app.add_subcommand("strategy", "equilibrium bid mixture for an upcard");
  for (auto [cmd, q] : {std::pair{value_cmd, &value}, std::pair{strategy_cmd, &strategy}}) {
    auto* t = cmd->add_option("--table", q->table, "GVT table");
    auto* n = cmd->add_option("--n", q->n, "solve on the fly for an n-card deck")
                  ->check(CLI::Range(1, 13));
    t->excludes(n);
    cmd->add_flag("--exact", q->exact, "rational arithmetic (with --n)")->needs(n);
    cmd->add_option("--workers", q->workers)->check(CLI::PositiveNumber);
    add_state_flags(cmd, q->state);
  }
  strategy_cmd->add_option("--upcard", strategy.upcard)->required();

  std::string export_table, export_out;
  bool export_start = false;
  auto* export_cmd = app.add_subcommand("export", "first-move mixtures as CSV");
  export_cmd->add_option("--table", export_table)->required();
  export_cmd->add_flag("--start", export_start)->required();
  export_cmd->add_option("--out", export_out)->required();

  std::string play_table;
  std::optional<std::uint64_t> play_seed;
  bool play_hints = false;
  auto* play_cmd = app.add_subcommand("play", "play the bot in the terminal");
  play_cmd->add_option("--table", play_table)->required();
  play_cmd->add_option("--seed", play_seed);
  play_cmd->add_flag("--hints", play_hints, "show the equilibrium mixture each round");

  std::string serve_table, serve_bind = "127.0.0.1", serve_static;
  int serve_port = 0;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP/JSON API");
  serve_cmd->add_option("--table", serve_table)->required();
  serve_cmd->add_option("--port", serve_port)->required()->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--bind", serve_bind);
  serve_cmd->add_option("--static", serve_static, "directory served at /");

  int bench_n = 0, bench_workers = 1;
  auto* bench_cmd = app.add_subcommand("bench", "time an in-memory solve");
  bench_cmd->add_option("--n", bench_n)->required()->check(CLI::Range(1, 13));
  bench_cmd->add_option("--workers", bench_workers)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*verify_cmd) return run_verify(verify_table_path, verify_options);
    if (*value_cmd || *strategy_cmd) {
      const QueryFlags& q = *value_cmd ? value : strategy;
      if (q.table.empty() && q.n == 0) throw UsageError("give --table or --n");
      return *value_cmd ? run_value(q) : run_strategy(q);
    }
    if (*export_cmd) return run_export(export_table, export_out);
    if (*play_cmd) return run_play(play_table, play_seed, play_hints);
    if (*serve_cmd) return run_serve(serve_table, serve_port, serve_bind, serve_static);
    if (*bench_cmd) return run_bench(bench_n, bench_workers);
  } catch (const UsageError& e) {
    std::cerr << "gops: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "gops: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
