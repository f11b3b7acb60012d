#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "ave/classify.hpp"
#include "ave/core.hpp"
#include "ave/linalg.hpp"
#include "ave/mclass.hpp"
#include "ave/oracle.hpp"
#include "ave/problems.hpp"
#include "ave/reproduce.hpp"
#include "ave/solver.hpp"

namespace ave::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Formatting

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Scientific with up to four decimals and a bare exponent: 2.6634e-14, 0.0e0.
std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  std::string s = buf;
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mant = s.substr(0, e);
  std::string ex = s.substr(e + 1);
  while (mant.size() > 1 && mant.back() == '0' && mant[mant.size() - 2] != '.') mant.pop_back();
  const bool neg = !ex.empty() && ex[0] == '-';
  if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) ex.erase(0, 1);
  const auto nz = ex.find_first_not_of('0');
  ex = nz == std::string::npos ? "0" : ex.substr(nz);
  return mant + "e" + (neg ? "-" : "") + ex;
}

std::string vec(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += num(x[i]);
  }
  return s + ")";
}

std::string pattern_str(std::span<const std::int8_t> s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i] > 0 ? '+' : '-';
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Input helpers

Vector parse_list(const std::string& text) {
  Vector out;
  std::string tok;
  auto flush = [&]() {
    if (tok.empty()) return;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) throw InvalidArgument("invalid number '" + tok + "'");
    out.push_back(v);
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') flush();
    else tok += c;
  }
  flush();
  return out;
}

/// Rows separated by ';' or newlines, entries by ',' or whitespace.
DenseMatrix parse_matrix(const std::string& text) {
  std::vector<Vector> rows;
  std::string cur;
  auto flush = [&]() {
    Vector r = parse_list(cur);
    if (!r.empty()) rows.push_back(std::move(r));
    cur.clear();
  };
  for (char c : text) {
    if (c == ';' || c == '\n') flush();
    else cur += c;
  }
  flush();
  if (rows.empty()) throw InvalidArgument("empty matrix");
  const std::size_t n = rows.front().size();
  std::vector<double> e;
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionMismatch("matrix rows have different lengths");
    e.insert(e.end(), r.begin(), r.end());
  }
  return DenseMatrix(rows.size(), n, std::move(e));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  ProblemFile file;
  std::string digest;
};

Loaded load(const std::string& path) {
  const std::string text = read_text(path);
  return {parse_problem(text), digest(text)};
}

json envelope(const std::string& command, const std::string& input, const std::string& dg) {
  return json{{"command", command}, {"input", input}, {"digest", dg}};
}

json to_json(const std::vector<Vector>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

json to_json(const ConditionReport& r) {
  json j{{"is_z", r.is_z},
         {"satisfies_3a", r.satisfies_3a},
         {"satisfies_3b", r.satisfies_3b},
         {"reason_3a", r.reason_3a},
         {"reason_3b", r.reason_3b},
         {"notes", r.notes}};
  j["v"] = r.v ? json(*r.v) : json(nullptr);
  j["norm_a_inv"] = r.norm_a_inv ? json(*r.norm_a_inv) : json(nullptr);
  j["rho_abs_a_inv"] = r.rho_abs_a_inv ? json(*r.rho_abs_a_inv) : json(nullptr);
  return j;
}

json to_json(const SolveReport& r, bool trace) {
  json j{{"status", to_string(r.status)},
         {"iterations", r.iterations},
         {"residual", r.residual},
         {"x", r.x},
         {"monotone_from_k1", r.monotone_from_k1},
         {"residual_history", r.residual_history},
         {"notes", r.notes}};
  if (trace) {
    json rows = json::array();
    for (std::size_t k = 0; k < r.iterates.size(); ++k)
      rows.push_back({{"k", k},
                      {"residual", r.residual_history[k]},
                      {"sign", r.sign_history[k].as_vector()},
                      {"x", r.iterates[k]}});
    j["trace"] = rows;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Commands

struct SolveOpts {
  std::string file;
  std::string x0;
  double tol = 1e-7;
  std::optional<std::size_t> max_iter;
  bool trace = false;
  bool json = false;
};

int cmd_solve(const SolveOpts& o, std::ostream& out) {
  const auto in = load(o.file);
  const AveProblem& p = in.file.problem;
  SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  if (!o.x0.empty()) {
    Vector x0 = parse_list(o.x0);
    if (x0.size() != p.size())
      throw DimensionMismatch("--x0 has " + std::to_string(x0.size()) + " entries, problem has n = " +
                              std::to_string(p.size()));
    cfg.x0 = std::move(x0);
  }
  const auto rep = gnm_solve(p, cfg);

  if (o.json) {
    json j = envelope("solve", o.file, in.digest);
    j["result"] = to_json(rep, o.trace);
    out << j.dump(2) << '\n';
  } else {
    if (o.trace) {
      out << "k    RES          D(x^k)\n";
      for (std::size_t k = 0; k < rep.iterates.size(); ++k)
        out << std::left << std::setw(5) << k << std::setw(13) << sci(rep.residual_history[k])
            << rep.sign_history[k].to_string() << '\n';
    }
    out << "status: " << to_string(rep.status) << '\n';
    out << "IT=" << rep.iterations << " RES=" << sci(rep.residual) << " x=" << vec(rep.x) << '\n';
    for (const auto& note : rep.notes) out << "note: " << note << '\n';
  }
  switch (rep.status) {
    case SolveStatus::SingularStep: return kSingular;
    case SolveStatus::IterationCapReached: return kIterationCap;
    default: return kOk;
  }
}

struct ClassifyOpts {
  std::string file;
  bool json = false;
  Tolerances tols;
};

int cmd_classify(const ClassifyOpts& o, std::ostream& out) {
  const auto in = load(o.file);
  const AveProblem& p = in.file.problem;
  if (p.size() > 2000)
    throw InvalidArgument("classify works on dense O(n^3) kernels; n = " + std::to_string(p.size()) +
                          " is too large");
  const auto v = classify(p, o.tols);
  const auto& c = v.conditions;

  if (o.json) {
    json j = envelope("classify", o.file, in.digest);
    j["result"] = {{"verdict", to_string(v.verdict)},
                   {"basis", to_string(v.basis)},
                   {"v_dot_b", v.v_dot_b ? json(*v.v_dot_b) : json(nullptr)},
                   {"witness", v.witness ? json(*v.witness) : json(nullptr)},
                   {"conditions", to_json(c)}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "A - I Z-matrix: " << (c.is_z ? "yes" : "no") << '\n';
  out << "3a: " << (c.satisfies_3a ? "yes" : "no (" + c.reason_3a + ")") << '\n';
  out << "3b: ";
  if (c.satisfies_3b) {
    out << "yes, v=" << vec(*c.v);
    if (v.v_dot_b) out << ", v·b=" << num(*v.v_dot_b);
  } else {
    out << "no (" << c.reason_3b << ")";
  }
  out << '\n';
  if (c.norm_a_inv) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", *c.norm_a_inv);
    out << "‖A⁻¹‖=" << buf;
    std::snprintf(buf, sizeof buf, "%.4f", *c.rho_abs_a_inv);
    out << "  ρ(|A⁻¹|)=" << buf << '\n';
  } else {
    out << "‖A⁻¹‖: A is singular\n";
  }
  out << "verdict: " << to_string(v.verdict) << " (basis: " << to_string(v.basis) << ")\n";
  if (v.witness)
    out << (v.verdict == Verdict::ExistsNotUnique ? "family anchor u=" : "solution x=")
        << vec(*v.witness) << '\n';
  for (const auto& note : c.notes) out << "note: " << note << '\n';
  return kOk;
}

struct OracleOpts {
  std::string file;
  double tol = 1e-8;
  bool json = false;
};

int cmd_oracle(const OracleOpts& o, std::ostream& out) {
  const auto in = load(o.file);
  OracleOptions opts;
  opts.verify_tol = o.tol;
  const auto set = enumerate_solutions(in.file.problem, opts);
  const auto count = count_solutions(set);

  if (o.json) {
    json branches = json::array();
    for (const auto& b : set.singular_branches)
      branches.push_back({{"pattern", std::vector<int>(b.pattern.begin(), b.pattern.end())},
                          {"consistent", b.consistent},
                          {"anchor", b.anchor ? json(*b.anchor) : json(nullptr)}});
    json j = envelope("oracle", o.file, in.digest);
    j["result"] = {{"count", to_string(count.kind)},
                   {"isolated", to_json(set.isolated)},
                   {"singular_branches", branches},
                   {"exhaustive_bound", set.exhaustive_bound}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  if (set.isolated.empty()) {
    out << "no solutions";
    if (count.kind == SolutionCount::Kind::ContinuumSuspected) out << " (isolated)";
    out << '\n';
  } else {
    out << set.isolated.size() << (set.isolated.size() == 1 ? " solution\n" : " solutions\n");
    for (const auto& x : set.isolated) out << "x=" << vec(x) << '\n';
  }
  for (const auto& b : set.singular_branches) {
    out << "singular pattern " << pattern_str(b.pattern) << ": "
        << (b.consistent ? "consistent" : "inconsistent");
    if (b.anchor) out << ", anchor " << vec(*b.anchor);
    out << '\n';
  }
  out << "count: " << to_string(count.kind) << '\n';
  return kOk;
}

struct GenerateOpts {
  std::string family;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::string output;
};

int cmd_generate(const GenerateOpts& o, std::ostream& out) {
  const auto fam = parse_family(o.family);
  if (!fam) throw InvalidArgument("unknown family '" + o.family + "'");
  const auto file = generate(*fam, o.n, o.seed);
  const std::string text = format_problem(file);
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error("cannot write '" + o.output + "'");
  f << text;
  f.close();
  out << "wrote " << o.output << " (n=" << file.problem.size() << ", digest " << digest(text)
      << ")\n";
  return kOk;
}

struct ConvertOpts {
  std::string t;
  std::string c;
  std::string output;
};

int cmd_convert(const ConvertOpts& o, std::ostream& out) {
  const std::string t_text = std::filesystem::is_regular_file(o.t) ? read_text(o.t) : o.t;
  const DenseMatrix t = parse_matrix(t_text);
  const Vector c = parse_list(o.c);
  auto conv = convert_max_form(t, c);
  ProblemFile file{std::move(conv.problem), {{"source", "max-form"}, {"recover", "x = -y"}}};
  const std::string text = format_problem(file);
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error("cannot write '" + o.output + "'");
  f << text;
  f.close();
  out << "wrote " << o.output << ": A = I + 2T, b = -2c; " << conv.note << '\n';
  return kOk;
}

struct ReproduceOpts {
  bool table1 = false;
  bool examples = false;
  bool dense = false;
  bool json = false;
  std::vector<std::size_t> sizes;
};

int cmd_reproduce(const ReproduceOpts& o, std::ostream& out) {
  if (!o.table1 && !o.examples) throw InvalidArgument("reproduce needs --table1 and/or --examples");
  bool ok = true;
  json j{{"command", "reproduce"}};

  if (o.table1) {
    std::vector<std::size_t> sizes = o.sizes;
    if (sizes.empty())
      for (const auto& row : published_table1()) sizes.push_back(row.n);
    const auto rows = run_table1(sizes, o.dense);
    json jt = json::array();
    if (!o.json) {
      out << "Example 1 (" << (o.dense ? "dense LU" : "tridiagonal") << " path)\n";
      out << std::right << std::setw(8) << "n" << std::setw(5) << "IT" << std::setw(14) << "RES"
          << "  |" << std::setw(9) << "paper IT" << std::setw(14) << "paper RES" << std::setw(10)
          << "time[s]" << '\n';
    }
    for (const auto& r : rows) {
      const bool solved =
          r.status == SolveStatus::Converged || r.status == SolveStatus::SignStabilized;
      ok = ok && solved;
      jt.push_back({{"n", r.n},
                    {"iterations", r.iterations},
                    {"residual", r.residual},
                    {"status", to_string(r.status)},
                    {"seconds", r.seconds},
                    {"paper_iterations", r.published ? json(r.published->iterations) : json(nullptr)},
                    {"paper_residual", r.published ? json(r.published->residual) : json(nullptr)}});
      if (o.json) continue;
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
      out << std::setw(8) << r.n << std::setw(5) << r.iterations << std::setw(14) << sci(r.residual)
          << "  |";
      if (r.published)
        out << std::setw(9) << r.published->iterations << std::setw(14) << sci(r.published->residual);
      else
        out << std::setw(9) << "-" << std::setw(14) << "-";
      out << std::setw(10) << secs;
      if (!solved) out << "  " << to_string(r.status);
      out << '\n';
    }
    j["table1"] = jt;
  }

  if (o.examples) {
    json je = json::array();
    for (const auto& c : run_examples()) {
      ok = ok && c.pass;
      je.push_back({{"example", c.example},
                    {"iterations", c.report.iterations},
                    {"paper_iterations", c.expected_iterations},
                    {"x", c.report.x},
                    {"paper_x", c.expected_x},
                    {"max_error", c.max_error},
                    {"pass", c.pass}});
      if (o.json) continue;
      out << "Example " << c.example << ": IT=" << c.report.iterations
          << " (paper: " << c.expected_iterations << ") x=" << vec(c.report.x)
          << " (paper: " << vec(c.expected_x) << ") " << (c.pass ? "ok" : "MISMATCH") << '\n';
    }
    j["examples"] = je;
  }
  j["pass"] = ok;
  if (o.json) out << j.dump(2) << '\n';
  return ok ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Absolute value equations A x - |x| = b: generalized Newton solver, "
               "solvability classifier and brute-force oracle",
               "ave"};
  app.require_subcommand(1);

  SolveOpts solve_o;
  auto* solve = app.add_subcommand("solve", "Run the generalized Newton method on a .ave file");
  solve->add_option("file", solve_o.file, ".ave problem file")->required();
  solve->add_option("--x0", solve_o.x0, "initial point, comma separated (default all ones)");
  solve->add_option("--tol", solve_o.tol, "residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", solve_o.max_iter, "iteration cap (default 2n+2)")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--trace", solve_o.trace, "print residual and sign pattern per iteration");
  solve->add_flag("--json", solve_o.json, "machine-readable output");

  ClassifyOpts classify_o;
  auto* classify_cmd = app.add_subcommand("classify", "Check conditions 3a/3b and solvability");
  classify_cmd->add_option("file", classify_o.file, ".ave problem file")->required();
  classify_cmd->add_flag("--json", classify_o.json, "machine-readable output");
  classify_cmd->add_option("--zero-tol", classify_o.tols.zero_tol, "Z-matrix / graph edge tolerance");
  classify_cmd->add_option("--rank-tol", classify_o.tols.rank_tol, "relative pivot threshold");
  classify_cmd->add_option("--entry-tol", classify_o.tols.entry_tol,
                           "relative tolerance for inverse nonnegativity");

  OracleOpts oracle_o;
  auto* oracle = app.add_subcommand("oracle", "Enumerate all solutions by sign patterns (n <= 20)");
  oracle->add_option("file", oracle_o.file, ".ave problem file")->required();
  oracle->add_option("--tol", oracle_o.tol, "residual bound for accepted solutions")
      ->check(CLI::PositiveNumber);
  oracle->add_flag("--json", oracle_o.json, "machine-readable output");

  GenerateOpts gen_o;
  auto* gen = app.add_subcommand("generate", "Write a problem file");
  gen->add_option("--family", gen_o.family, "ex1|ex2|ex3|ex4|ex5|rand3a|rand3b")->required();
  gen->add_option("--n", gen_o.n, "dimension");
  gen->add_option("--seed", gen_o.seed, "seed for rand3a/rand3b");
  gen->add_option("-o,--output", gen_o.output, "output path")->required();

  ConvertOpts conv_o;
  auto* conv = app.add_subcommand("convert", "Convert max{0,x} + T x = c to a .ave file");
  conv->add_option("--T", conv_o.t, "matrix file, or inline rows like '1,0;0,1'")->required();
  conv->add_option("--c", conv_o.c, "right-hand side, comma separated")->required();
  conv->add_option("-o,--output", conv_o.output, "output path")->required();

  ReproduceOpts rep_o;
  auto* rep = app.add_subcommand("reproduce", "Rerun the published experiments");
  rep->add_flag("--table1", rep_o.table1, "example 1 iteration/residual table");
  rep->add_option("--sizes", rep_o.sizes, "sizes for --table1 (default 2000..10000)")
      ->delimiter(',');
  rep->add_flag("--examples", rep_o.examples, "examples 2-5");
  rep->add_flag("--dense", rep_o.dense, "use dense LU steps instead of the tridiagonal solver");
  rep->add_flag("--json", rep_o.json, "machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_o, out);
    if (classify_cmd->parsed()) return cmd_classify(classify_o, out);
    if (oracle->parsed()) return cmd_oracle(oracle_o, out);
    if (gen->parsed()) return cmd_generate(gen_o, out);
    if (conv->parsed()) return cmd_convert(conv_o, out);
    if (rep->parsed()) return cmd_reproduce(rep_o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const DimensionTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kOracleSize;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace ave::cli
