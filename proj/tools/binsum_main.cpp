// binsum: evaluate binomial-coefficient sums S(a,d,r) = sum_b C(a, b*d+r)
// exactly or modulo prime powers, check the classical congruences they
// satisfy, sweep parameter grids, and benchmark the evaluators.
//
// Output is UTF-8 JSON lines on stdout (eval prints the bare value);
// diagnostics go to stderr. Exit codes: 0 all-pass, 1 any-fail, 2 usage.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <binsum/binsum.hpp>
#include <binsum/report_json.hpp>

using namespace binsum;
using ordered_json = nlohmann::ordered_json;

namespace {

struct LineSink {
  std::ofstream file;
  bool mirror = false;

  void open(const std::string& path) {
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw precondition_error("cannot open output file '" + path + "'");
    mirror = true;
  }
  void line(const std::string& s) {
    std::cout << s << '\n';
    if (mirror) file << s << '\n';
  }
};

// Range grammar: comma-separated tokens, each a decimal integer or an
// inclusive span lo..hi.
std::vector<std::int64_t> parse_axis_values(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  if (text.empty()) throw precondition_error("empty range");
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string token = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
    auto parse_int = [](const std::string& s) {
      std::size_t used = 0;
      std::int64_t v;
      try {
        v = std::stoll(s, &used);
      } catch (const std::exception&) {
        throw precondition_error("malformed range token '" + s + "'");
      }
      if (used != s.size() || s.empty())
        throw precondition_error("malformed range token '" + s + "'");
      return v;
    };
    std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(token));
    } else {
      std::int64_t lo = parse_int(token.substr(0, dots));
      std::int64_t hi = parse_int(token.substr(dots + 2));
      if (hi < lo) throw precondition_error("empty span '" + token + "'");
      if (hi - lo > 10000000) throw precondition_error("span too large '" + token + "'");
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string header_line(const std::vector<std::string>& command) {
  ordered_json j{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}};
  return j.dump();
}

std::string summary_line(std::uint64_t pass, std::uint64_t fail, std::uint64_t skip) {
  ordered_json j{{"summary", ordered_json{{"pass", pass}, {"fail", fail}, {"skip", skip}}}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::uint64_t a = 0;
  std::uint64_t d = 1;
  std::int64_t r = 0;
  std::int64_t mod_p = -1;  // absent when negative
  unsigned k = 0;
  std::string method = "auto";
  std::uint64_t brute_cutoff = 1000000;
};

// Every evaluator applicable to the query, keyed by method name.
std::map<std::string, Int> modular_values(const EvalArgs& args, std::uint64_t p) {
  std::map<std::string, Int> values;
  values["polypow"] =
      sum_mod_polypow(args.a, args.d, p, args.k).values[normalize_offset(args.r, args.d)];
  Int modulus = pow_int(Int(p), args.k + 1);
  if (args.a <= args.brute_cutoff)
    values["brute"] = mod_canon(sum_brute({args.a, args.d, args.r}), modulus);
  if (args.d % p != 0) {
    std::uint64_t f = multiplicative_order(p, args.d);
    if (f <= 16) {
      auto ctx = GrContext::make(p, static_cast<unsigned>(f), args.k);
      values["multisection"] = sum_mod_multisection({args.a, args.d, args.r}, ctx);
    }
  }
  auto pp = try_prime_power(args.d + 1);
  if (pp && pp->p == p) {
    auto pk = detail::checked_pow_u64(p, args.k);
    if (pk && args.a % *pk == 0 && args.a > 0)
      values["reduced"] = sum_mod_reduced(args.a, args.d + 1, args.r, args.k);
  }
  return values;
}

int cmd_eval(const EvalArgs& args) {
  if (args.mod_p < 0) {
    if (args.method != "auto" && args.method != "brute")
      throw precondition_error("method '" + args.method + "' requires --mod-p");
    if (args.a > args.brute_cutoff)
      throw precondition_error("exact evaluation above the brute cutoff");
    std::cout << sum_brute({args.a, args.d, args.r}).str() << '\n';
    return 0;
  }
  std::uint64_t p = static_cast<std::uint64_t>(args.mod_p);
  std::map<std::string, Int> values = modular_values(args, p);
  std::string method = args.method == "auto" ? "polypow" : args.method;
  auto it = values.find(method);
  if (it == values.end())
    throw precondition_error("method '" + method + "' is not applicable to this query");
  bool agree = true;
  for (const auto& [name, value] : values)
    if (value != it->second) agree = false;
  if (!agree) {
    std::cerr << "internal error: evaluators disagree:";
    for (const auto& [name, value] : values) std::cerr << ' ' << name << '=' << value.str();
    std::cerr << '\n';
    return 1;
  }
  std::cout << it->second.str() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// check

const std::vector<std::string>& check_param_names(Claim claim) {
  static const std::vector<std::string> k_pair = {"q", "s", "k1", "k2"};
  static std::map<Claim, std::vector<std::string>> plain;
  if (claim == Claim::sharper_k_period) return k_pair;
  auto it = plain.find(claim);
  if (it == plain.end()) it = plain.emplace(claim, claim_axes(claim)).first;
  return it->second;
}

int cmd_check(const std::string& claim_str, const std::map<std::string, std::int64_t>& given,
              std::uint64_t budget, const std::vector<std::string>& command) {
  Claim claim = claim_from_name(claim_str);
  ParamTuple tuple;
  for (const auto& name : check_param_names(claim)) {
    auto it = given.find(name);
    if (it == given.end())
      throw precondition_error("claim '" + claim_str + "' requires --" + name);
    tuple.emplace_back(name, it->second);
  }
  for (const auto& [name, value] : given) {
    if (std::find(check_param_names(claim).begin(), check_param_names(claim).end(), name) ==
        check_param_names(claim).end())
      throw precondition_error("claim '" + claim_str + "' does not take --" + name);
  }
  CheckReport report;
  if (claim == Claim::sharper) {
    report = check_sharper(detail::tuple_get_u(tuple, "p"), detail::tuple_get_u(tuple, "s"),
                           detail::tuple_get_small(tuple, "k"), budget);
  } else {
    report = run_check(claim, tuple);
  }
  LineSink sink;
  sink.line(header_line(command));
  sink.line(report_to_json(report).dump());
  std::uint64_t pass = 0, fail = 0, skip = 0;
  (report.skipped ? skip : (report.pass ? pass : fail)) += 1;
  sink.line(summary_line(pass, fail, skip));
  return fail > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& claim_str,
              const std::map<std::string, std::string>& axis_ranges, unsigned jobs,
              const std::string& out_path, const std::string& on_violation,
              const std::vector<std::string>& command) {
  Claim claim = claim_from_name(claim_str);
  SweepGrid grid;
  if (on_violation == "skip")
    grid.on_violation = SweepGrid::OnViolation::skip;
  else if (on_violation == "error")
    grid.on_violation = SweepGrid::OnViolation::error;
  else
    throw precondition_error("--on-violation must be 'skip' or 'error'");
  if (jobs == 0) throw precondition_error("--jobs must be >= 1");
  for (const auto& axis : claim_axes(claim)) {
    auto it = axis_ranges.find(axis);
    if (it == axis_ranges.end() || it->second.empty())
      throw precondition_error("claim '" + claim_str + "' requires axis --" + axis);
    std::vector<std::int64_t> values = parse_axis_values(it->second);
    if (axis == "q") {
      for (std::int64_t v : values)
        if (v < 2 || !try_prime_power(static_cast<std::uint64_t>(v)))
          throw precondition_error("q axis value " + std::to_string(v) +
                                   " is not a prime power");
    }
    grid.axes[axis] = std::move(values);
  }
  LineSink sink;
  if (!out_path.empty()) sink.open(out_path);
  sink.line(header_line(command));
  std::uint64_t pass = 0, fail = 0, skip = 0;
  run_sweep_stream(grid, claim, jobs, [&](const CheckReport& r) {
    (r.skipped ? skip : (r.pass ? pass : fail)) += 1;
    sink.line(report_to_json(r).dump());
  });
  sink.line(summary_line(pass, fail, skip));
  return fail > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::uint64_t> a_values;
  std::uint64_t d = 1;
  std::uint64_t p = 2;
  unsigned k = 0;
  std::int64_t r = 0;
  unsigned reps = 5;
  std::uint64_t brute_cutoff = 1000000;
  std::vector<std::string> methods;
};

int cmd_bench(const BenchArgs& args, const std::vector<std::string>& command) {
  if (args.reps == 0) throw precondition_error("--reps must be >= 1");
  if (args.a_values.empty()) throw precondition_error("--a requires at least one value");
  if (!is_prime(args.p)) throw precondition_error("p must be prime");
  LineSink sink;
  sink.line(header_line(command));
  std::uint64_t pass = 0, fail = 0, skip = 0;
  for (std::uint64_t a : args.a_values) {
    EvalArgs probe;
    probe.a = a;
    probe.d = args.d;
    probe.r = args.r;
    probe.k = args.k;
    probe.brute_cutoff = args.brute_cutoff;
    std::uint64_t rhat = normalize_offset(args.r, args.d);

    std::map<std::string, std::function<Int()>> runners;
    runners["polypow"] = [&] {
      return sum_mod_polypow(a, args.d, args.p, args.k).values[rhat];
    };
    if (a <= args.brute_cutoff) {
      Int modulus = pow_int(Int(args.p), args.k + 1);
      runners["brute"] = [&, modulus] {
        return mod_canon(detail::sum_row_walk(a, args.d)[rhat], modulus);
      };
    }
    if (args.d % args.p != 0) {
      std::uint64_t f = multiplicative_order(args.p, args.d);
      if (f <= 16) {
        auto ctx = GrContext::make(args.p, static_cast<unsigned>(f), args.k);
        runners["multisection"] = [&, ctx] {
          return sum_mod_multisection({a, args.d, args.r}, ctx);
        };
      }
    }
    auto pp = try_prime_power(args.d + 1);
    if (pp && pp->p == args.p) {
      auto pk = detail::checked_pow_u64(args.p, args.k);
      if (pk && a > 0 && a % *pk == 0)
        runners["reduced"] = [&] { return sum_mod_reduced(a, args.d + 1, args.r, args.k); };
    }

    std::map<std::string, Int> results;
    for (const auto& name : args.methods) {
      auto it = runners.find(name);
      if (it == runners.end()) {
        ordered_json j{{"bench", ordered_json{{"method", name},
                                              {"a", std::to_string(a)},
                                              {"skipped", "not applicable"}}}};
        sink.line(j.dump());
        continue;
      }
      std::vector<std::int64_t> times;
      Int value;
      for (unsigned rep = 0; rep < args.reps; ++rep) {
        auto start = std::chrono::steady_clock::now();
        value = it->second();
        auto stop = std::chrono::steady_clock::now();
        times.push_back(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
      }
      std::sort(times.begin(), times.end());
      std::int64_t median = times[times.size() / 2];
      results[name] = value;
      ordered_json j{{"bench", ordered_json{{"method", name},
                                            {"a", std::to_string(a)},
                                            {"d", std::to_string(args.d)},
                                            {"p", std::to_string(args.p)},
                                            {"k", args.k},
                                            {"r", std::to_string(args.r)},
                                            {"reps", args.reps},
                                            {"median_ns", median},
                                            {"value", value.str()}}}};
      sink.line(j.dump());
    }
    bool agree = true;
    for (const auto& [name, value] : results)
      if (value != results.begin()->second) agree = false;
    if (agree)
      ++pass;
    else {
      ++fail;
      std::cerr << "internal error: evaluators disagree at a=" << a << '\n';
    }
  }
  sink.line(summary_line(pass, fail, skip));
  return fail > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> command(argv + 1, argv + argc);
  CLI::App app{"exact evaluation and verification of binomial-coefficient sum congruences"};
  app.require_subcommand(1);

  // eval
  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate S(a,d,r)");
  eval_cmd->add_option("--a", eval_args.a, "upper index a")->required();
  eval_cmd->add_option("--d", eval_args.d, "step d (default 1)");
  eval_cmd->add_option("--r", eval_args.r, "offset r (default 0)");
  eval_cmd->add_option("--mod-p", eval_args.mod_p, "reduce modulo p^(k+1)");
  eval_cmd->add_option("--k", eval_args.k, "precision exponent k (default 0)");
  eval_cmd->add_option("--method", eval_args.method,
                       "brute|polypow|multisection|reduced (default: brute exact, polypow modular)");
  eval_cmd->add_option("--brute-cutoff", eval_args.brute_cutoff,
                       "largest a for brute-force cross-checks (default 10^6)");

  // check
  std::string check_claim;
  std::map<std::string, std::int64_t> check_params;
  std::uint64_t check_budget = 400;
  auto* check_cmd = app.add_subcommand("check", "run one congruence check");
  check_cmd->set_help_flag("--help", "print help");  // leave --h free for the axis
  check_cmd->add_option("claim", check_claim, "claim identifier")->required();
  for (const char* name : {"p", "q", "d", "a", "r", "s", "k", "h", "t", "k1", "k2"}) {
    check_cmd->add_option_function<std::int64_t>(
        std::string("--") + name,
        [&check_params, name](const std::int64_t& v) { check_params[name] = v; });
  }
  check_cmd->add_option("--budget", check_budget, "Bernoulli index budget (sharper)");

  // sweep
  std::string sweep_claim;
  std::map<std::string, std::string> sweep_ranges;
  unsigned sweep_jobs = 1;
  std::string sweep_out;
  std::string sweep_violation = "skip";
  auto* sweep_cmd = app.add_subcommand("sweep", "run a claim over a parameter grid");
  sweep_cmd->set_help_flag("--help", "print help");  // leave --h free for the axis
  sweep_cmd->add_option("claim", sweep_claim, "claim identifier")->required();
  for (const char* name : {"p", "q", "d", "a", "r", "s", "k", "h", "t"}) {
    sweep_cmd->add_option_function<std::string>(
        std::string("--") + name,
        [&sweep_ranges, name](const std::string& v) { sweep_ranges[name] = v; },
        "range (comma list and lo..hi spans)");
  }
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads (default 1)");
  sweep_cmd->add_option("--out", sweep_out, "mirror stdout to this file");
  sweep_cmd->add_option("--on-violation", sweep_violation, "skip|error (default skip)");

  // bench
  BenchArgs bench_args;
  std::string bench_a, bench_methods = "brute,polypow,multisection,reduced";
  auto* bench_cmd = app.add_subcommand("bench", "time the evaluators");
  bench_cmd->add_option("--a", bench_a, "comma list of a values")->required();
  bench_cmd->add_option("--d", bench_args.d, "step d (default 1)");
  bench_cmd->add_option("--p", bench_args.p, "prime p")->required();
  bench_cmd->add_option("--k", bench_args.k, "precision exponent k (default 0)");
  bench_cmd->add_option("--r", bench_args.r, "offset r (default 0)");
  bench_cmd->add_option("--reps", bench_args.reps, "repetitions per point (default 5)");
  bench_cmd->add_option("--methods", bench_methods, "comma list of evaluators");
  bench_cmd->add_option("--brute-cutoff", bench_args.brute_cutoff,
                        "largest a for the brute evaluator (default 10^6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval_args);
    if (*check_cmd) return cmd_check(check_claim, check_params, check_budget, command);
    if (*sweep_cmd)
      return cmd_sweep(sweep_claim, sweep_ranges, sweep_jobs, sweep_out, sweep_violation,
                       command);
    if (*bench_cmd) {
      for (std::int64_t v : parse_axis_values(bench_a)) {
        if (v < 0) throw precondition_error("--a values must be nonnegative");
        bench_args.a_values.push_back(static_cast<std::uint64_t>(v));
      }
      for (std::size_t pos = 0; pos <= bench_methods.size();) {
        std::size_t comma = bench_methods.find(',', pos);
        std::string tok = bench_methods.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) bench_args.methods.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return cmd_bench(bench_args, command);
    }
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
