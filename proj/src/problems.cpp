#include "ave/problems.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "ave/linalg.hpp"
#include "ave/mclass.hpp"

namespace ave {

// ---------------------------------------------------------------------------
// SplitMix64

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

// ---------------------------------------------------------------------------
// Generators

Vector example1_solution(std::size_t n) {
  if (n < 2) throw InvalidArgument("example 1 needs n >= 2");
  Vector x(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::exp(6.0 * static_cast<double>(i) / denom - 5.0) - 1.0;
  return x;
}

AveProblem gen_example1(std::size_t n) {
  const Vector xs = example1_solution(n);
  auto a = TridiagonalMatrix::toeplitz(n, -2.0, 7.0, -2.0);
  Vector b = a.multiply(xs);
  for (std::size_t i = 0; i < n; ++i) b[i] -= std::abs(xs[i]);
  return AveProblem(std::move(a), std::move(b));
}

AveProblem gen_example_k(int k) {
  switch (k) {
    case 2: return {DenseMatrix::from_rows({{1.5, -1.25}, {0.0, 1.5}}), {4.0, 16.0}};
    case 3: return {DenseMatrix::from_rows({{1.5, -3.0}, {0.0, 1.5}}), {-2.0, -3.0}};
    case 4: return {DenseMatrix::from_rows({{3.0, -2.0}, {-2.0, 3.0}}), {-4.0, -16.0}};
    case 5: return {DenseMatrix::from_rows({{3.0, -1.0}, {-4.0, 3.0}}), {-5.0, -4.0}};
    default: throw InvalidArgument("example number must be 2, 3, 4 or 5");
  }
}

AveProblem gen_random_3a(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("rand3a needs n >= 1");
  SplitMix64 rng(seed);
  DenseMatrix b_mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b_mat(i, j) = rng.uniform01();
  Vector b(n);
  for (double& v : b) v = rng.uniform(-10.0, 10.0);

  const double rho = spectral_radius_nonneg(b_mat, 1e-12).value;
  const double s = rho > 0.0 ? rho * 1.1 : 0.1;
  DenseMatrix a = add_identity((-1.0) * b_mat, 1.0 + s);
  return AveProblem(std::move(a), std::move(b));
}

AveProblem gen_random_3b(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("rand3b needs n >= 2");
  SplitMix64 rng(seed);
  DenseMatrix b_mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b_mat(i, j) = i == j ? rng.uniform01() : 1.0 - rng.uniform01();

  const auto rho = spectral_radius_nonneg(b_mat, 1e-14, 100000);
  DenseMatrix a = add_identity((-1.0) * b_mat, 1.0 + rho.value);
  const auto cert = check_condition_3b(a);
  if (!cert.satisfied)
    throw Error("rand3b construction failed the 3b check (n = " + std::to_string(n) +
                ", seed = " + std::to_string(seed) + "): " + cert.reason);

  Vector b(n);
  for (;;) {
    for (double& v : b) v = rng.uniform(-10.0, 10.0);
    const double vb = dot(*cert.v, b);
    if (vb == 0.0) continue;
    if (vb > 0.0)
      for (double& v : b) v = -v;
    break;
  }
  return AveProblem(std::move(a), std::move(b));
}

MaxFormConversion convert_max_form(const DenseMatrix& t, std::span<const double> c) {
  if (!t.is_square()) throw DimensionMismatch("convert_max_form: T is not square");
  if (t.rows() != c.size())
    throw DimensionMismatch("convert_max_form: T is " + std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()) + " but c has length " +
                            std::to_string(c.size()));
  DenseMatrix a = add_identity(2.0 * t, 1.0);
  Vector b(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) b[i] = -2.0 * c[i];
  return {AveProblem(std::move(a), std::move(b)),
          "converted from max{0,x} + T x = c; recover x = -y"};
}

// ---------------------------------------------------------------------------
// Families

std::optional<Family> parse_family(std::string_view name) {
  if (name == "ex1") return Family::ex1;
  if (name == "ex2") return Family::ex2;
  if (name == "ex3") return Family::ex3;
  if (name == "ex4") return Family::ex4;
  if (name == "ex5") return Family::ex5;
  if (name == "rand3a") return Family::rand3a;
  if (name == "rand3b") return Family::rand3b;
  return std::nullopt;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::ex1: return "ex1";
    case Family::ex2: return "ex2";
    case Family::ex3: return "ex3";
    case Family::ex4: return "ex4";
    case Family::ex5: return "ex5";
    case Family::rand3a: return "rand3a";
    case Family::rand3b: return "rand3b";
  }
  return "?";
}

ProblemFile generate(Family family, std::optional<std::size_t> n,
                     std::optional<std::uint64_t> seed) {
  const std::string name = to_string(family);
  switch (family) {
    case Family::ex2:
    case Family::ex3:
    case Family::ex4:
    case Family::ex5: {
      if (n || seed) throw InvalidArgument(name + " is fixed 2x2 data; --n/--seed not allowed");
      const int k = static_cast<int>(family) - static_cast<int>(Family::ex2) + 2;
      return {gen_example_k(k), {{"family", name}}};
    }
    case Family::ex1: {
      if (!n) throw InvalidArgument("ex1 requires --n");
      if (seed) throw InvalidArgument("ex1 is deterministic; --seed not allowed");
      if (*n < 2) throw InvalidArgument("ex1 requires n >= 2");
      return {gen_example1(*n), {{"family", name}, {"n", std::to_string(*n)}}};
    }
    case Family::rand3a:
    case Family::rand3b: {
      if (!n || !seed) throw InvalidArgument(name + " requires --n and --seed");
      if (family == Family::rand3b && *n < 2) throw InvalidArgument("rand3b requires n >= 2");
      if (*n < 1) throw InvalidArgument(name + " requires n >= 1");
      auto p = family == Family::rand3a ? gen_random_3a(*n, *seed) : gen_random_3b(*n, *seed);
      return {std::move(p),
              {{"family", name}, {"n", std::to_string(*n)}, {"seed", std::to_string(*seed)}}};
    }
  }
  throw InvalidArgument("unknown family");
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t line, std::string field, const std::string& what)
    : Error("line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") +
            ": " + what),
      line_(line),
      field_(std::move(field)) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped and trimmed, non-empty
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

Vector parse_numbers(std::string_view s, std::size_t line, const std::string& field) {
  Vector out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == ',')) ++pos;
    if (pos >= s.size()) break;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t' && s[end] != ',') ++end;
    std::string_view tok = s.substr(pos, end - pos);
    std::string_view num = tok.front() == '+' ? tok.substr(1) : tok;
    double v = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), v);
    if (num.empty() || res.ec != std::errc() || res.ptr != num.data() + num.size())
      throw ParseError(line, field, "invalid number '" + std::string(tok) + "'");
    if (!std::isfinite(v)) throw ParseError(line, field, "non-finite number '" + std::string(tok) + "'");
    out.push_back(v);
    pos = end;
  }
  return out;
}

std::size_t parse_count(std::string_view s, std::size_t line, const std::string& field) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, field, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

void expect_length(const Vector& v, std::size_t n, std::size_t line, const std::string& field) {
  if (v.size() != n)
    throw SchemaError("line " + std::to_string(line) + ", field '" + field + "': expected " +
                      std::to_string(n) + " numbers, found " + std::to_string(v.size()));
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_numbers(std::ostream& out, std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ' ';
    out << format_number(xs[i]);
  }
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  const auto lines = content_lines(text);
  std::optional<std::size_t> version, n;
  std::string convention = "minus";
  std::string structure = "dense";
  std::optional<DenseMatrix> full;
  std::optional<Vector> sub, main, super, b;
  std::map<std::string, std::string> meta;
  std::vector<std::string> seen;

  std::size_t last_line = lines.empty() ? 0 : lines.back().number;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Line& ln = lines[li];
    const auto eq = ln.text.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(ln.number, "", "expected 'key = value', got '" + std::string(ln.text) + "'");
    const std::string key(trim(ln.text.substr(0, eq)));
    const std::string_view value = trim(ln.text.substr(eq + 1));
    if (key.empty()) throw ParseError(ln.number, "", "missing key before '='");
    for (const auto& k : seen)
      if (k == key) throw ParseError(ln.number, key, "duplicate field");
    seen.push_back(key);

    if (key.rfind("meta.", 0) == 0) {
      if (key.size() == 5) throw ParseError(ln.number, key, "empty metadata key");
      meta[key.substr(5)] = std::string(value);
      continue;
    }
    if (key == "version") {
      version = parse_count(value, ln.number, key);
      if (*version != 1) throw ParseError(ln.number, key, "unsupported version " + std::string(value));
      continue;
    }
    if (!version) throw ParseError(ln.number, key, "'version' must be the first field");
    if (key == "convention") {
      if (value != "minus" && value != "plus")
        throw ParseError(ln.number, key, "expected 'minus' or 'plus'");
      convention = std::string(value);
    } else if (key == "structure") {
      if (value != "dense" && value != "tridiagonal")
        throw ParseError(ln.number, key, "expected 'dense' or 'tridiagonal'");
      structure = std::string(value);
    } else if (key == "n") {
      n = parse_count(value, ln.number, key);
      if (*n == 0) throw SchemaError("line " + std::to_string(ln.number) + ": n must be positive");
    } else if (key == "b" || key == "A" || key == "A.sub" || key == "A.main" || key == "A.super") {
      if (!n) throw ParseError(ln.number, key, "appears before 'n'");
      if (key == "A") {
        if (!value.empty()) throw ParseError(ln.number, key, "matrix rows must start on the next line");
        DenseMatrix m(*n, *n);
        for (std::size_t r = 0; r < *n; ++r) {
          if (li + 1 >= lines.size() || lines[li + 1].text.find('=') != std::string_view::npos)
            throw ParseError(li + 1 < lines.size() ? lines[li + 1].number : last_line + 1, key,
                             "expected " + std::to_string(*n) + " matrix rows, found " +
                                 std::to_string(r));
          ++li;
          const Vector row = parse_numbers(lines[li].text, lines[li].number, key);
          expect_length(row, *n, lines[li].number, key);
          std::copy(row.begin(), row.end(), m.row(r).begin());
        }
        full = std::move(m);
      } else {
        Vector v = parse_numbers(value, ln.number, key);
        expect_length(v, key == "b" || key == "A.main" ? *n : *n - 1, ln.number, key);
        if (key == "b") b = std::move(v);
        else if (key == "A.sub") sub = std::move(v);
        else if (key == "A.main") main = std::move(v);
        else super = std::move(v);
      }
    } else {
      throw ParseError(ln.number, key, "unknown field");
    }
  }

  const std::size_t eof = last_line + 1;
  if (!version) throw ParseError(eof, "version", "missing mandatory field");
  if (!n) throw ParseError(eof, "n", "missing field");
  if (!b) throw ParseError(eof, "b", "missing field");

  const bool band_given = sub || main || super;
  std::optional<AveProblem> problem;
  if (structure == "dense") {
    if (band_given) throw SchemaError("dense structure does not take A.sub/A.main/A.super");
    if (!full) throw ParseError(eof, "A", "missing field");
    problem.emplace(std::move(*full), *b);
  } else {
    if (full && band_given) throw SchemaError("give either 'A' or the three A.* diagonals, not both");
    if (full) {
      const std::size_t dim = *n;
      Vector s(dim - 1), d(dim), u(dim - 1);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          const double v = (*full)(i, j);
          const std::size_t off = i > j ? i - j : j - i;
          if (off > 1 && v != 0.0)
            throw SchemaError("tridiagonal structure but A(" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") is nonzero");
          if (i == j) d[i] = v;
          else if (i == j + 1) s[j] = v;
          else if (j == i + 1) u[i] = v;
        }
      problem.emplace(TridiagonalMatrix(std::move(s), std::move(d), std::move(u)), *b);
    } else {
      if (!sub) throw ParseError(eof, "A.sub", "missing field");
      if (!main) throw ParseError(eof, "A.main", "missing field");
      if (!super) throw ParseError(eof, "A.super", "missing field");
      problem.emplace(TridiagonalMatrix(std::move(*sub), std::move(*main), std::move(*super)), *b);
    }
  }

  if (convention == "plus") {
    // A x + |x| = b  <=>  A y - |y| = -b with y = -x
    Vector nb = problem->b();
    for (double& v : nb) v = -v;
    if (problem->is_tridiagonal())
      problem.emplace(problem->tridiagonal(), std::move(nb));
    else
      problem.emplace(problem->dense(), std::move(nb));
    meta["normalized"] = "from plus convention: y = -x, b -> -b";
  }
  return {std::move(*problem), std::move(meta)};
}

ProblemFile load_problem(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "", "cannot open '" + path + "'");
  return load_problem(in);
}

void save_problem(std::ostream& out, const ProblemFile& f) {
  const AveProblem& p = f.problem;
  const std::size_t n = p.size();
  out << "version = 1\n";
  out << "convention = minus\n";
  out << "structure = " << (p.is_tridiagonal() ? "tridiagonal" : "dense") << '\n';
  out << "n = " << n << '\n';
  if (p.is_tridiagonal()) {
    const auto& t = p.tridiagonal();
    out << "A.sub = ";
    write_numbers(out, t.sub());
    out << "\nA.main = ";
    write_numbers(out, t.main());
    out << "\nA.super = ";
    write_numbers(out, t.super());
    out << '\n';
  } else {
    out << "A =\n";
    const auto& a = p.dense();
    for (std::size_t i = 0; i < n; ++i) {
      out << "  ";
      write_numbers(out, a.row(i));
      out << '\n';
    }
  }
  out << "b = ";
  write_numbers(out, p.b());
  out << '\n';
  for (const auto& [k, v] : f.metadata) out << "meta." << k << " = " << v << '\n';
}

std::string format_problem(const ProblemFile& f) {
  std::ostringstream ss;
  save_problem(ss, f);
  return ss.str();
}

void save_problem(const std::string& path, const ProblemFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << format_problem(f);
  if (!out) throw Error("write to '" + path + "' failed");
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ave
