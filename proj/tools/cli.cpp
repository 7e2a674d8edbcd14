#include "qtc_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "qtc/covering.hpp"
#include "qtc/errors.hpp"
#include "qtc/expr.hpp"
#include "qtc/json_io.hpp"
#include "qtc/smooth.hpp"

namespace qtc::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string theta = "t";
  std::string theta_file;
  std::size_t n = 2;
  std::string M;
  std::string K = "0";
  std::string theta_prime;
  std::int64_t max_index = 4;
  std::int64_t kbound = 0;
  std::int64_t support_bound = 4;
  std::string phi;
  std::string group;
  std::string chars;
  std::string expression;
  bool pretty = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<Integer> integer_list(const std::string& s) {
  std::vector<Integer> v;
  for (const auto& p : split(s, ',')) v.push_back(parse_integer(p));
  return v;
}

// "a,b,c,d" read row-major into an n x n matrix; "0" alone is the zero matrix.
IntMatrix square_matrix(const std::string& s, std::size_t n, const char* what) {
  std::vector<Integer> v = integer_list(s);
  if (v.size() == 1 && v[0] == 0) return IntMatrix(n, n);
  if (v.size() != n * n) throw InvalidArgument(std::string(what) + " needs " + std::to_string(n * n) + " entries");
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n * n; ++i) M(i / n, i % n) = v[i];
  return M;
}

std::size_t side_of(const std::string& s) {
  std::size_t count = split(s, ',').size();
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
  if (n * n != count) throw InvalidArgument("--M must list n*n entries");
  return n;
}

json read_json_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() != '{' && arg.front() != '[') {
    std::ifstream in(arg);
    if (!in) throw InvalidArgument("cannot open " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

ThetaMatrix theta_of(const Options& o) {
  if (!o.theta_file.empty()) return io::theta_from_json(read_json_argument(o.theta_file));
  if (o.n != 2) throw InvalidArgument("--theta names theta_12 only; use --theta-file for n != 2");
  return ThetaMatrix::two(RationalPoly::parse(o.theta));
}

std::vector<GroupElement> element_list(const std::string& s) {
  std::vector<GroupElement> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ';')) {
    GroupElement g;
    for (const auto& x : integer_list(part)) g.push_back(to_int64(x));
    out.push_back(std::move(g));
  }
  return out;
}

json cmd_eval(const Options& o) {
  ThetaPtr theta = make_theta(theta_of(o));
  TorusElement a = parse_expr(o.expression, theta);
  return {{"input", o.expression}, {"result", a.to_string()}, {"terms", io::to_json(a)}};
}

json cmd_solve_theta(const Options& o) {
  std::size_t n = side_of(o.M);
  ThetaMatrix theta = theta_of(o);
  if (theta.dimension() != n) throw DimensionMismatch("--M does not match the dimension of theta");
  IntMatrix M = square_matrix(o.M, n, "--M");
  IntMatrix K = square_matrix(o.K, n, "--K");
  ThetaMatrix tp = solve_theta_prime(theta, M, K);
  json j = {{"M", io::to_json(M)}, {"K", io::to_json(K)}, {"theta_prime", io::to_json(tp)}};
  if (n == 2) j["theta_prime_12"] = tp(0, 1).to_string();
  return j;
}

json cmd_classify(const Options& o) {
  ThetaMatrix theta = theta_of(o);
  auto rows = classify_coverings(theta, o.max_index, o.kbound, o.support_bound);
  json list = json::array();
  bool all_ok = true;
  for (const auto& r : rows) {
    list.push_back(io::to_json(r));
    all_ok = all_ok && r.checks.ok();
  }
  return {{"theta", io::to_json(theta)}, {"max_index", o.max_index}, {"kbound", o.kbound},
          {"count", rows.size()}, {"all_checks_pass", all_ok}, {"rows", list}};
}

json cmd_check_covering(const Options& o) {
  std::size_t n = side_of(o.M);
  ThetaMatrix theta = theta_of(o);
  IntMatrix M = square_matrix(o.M, n, "--M");
  ThetaMatrix tp;
  if (!o.theta_prime.empty()) {
    if (n != 2) throw InvalidArgument("--theta-prime names theta'_12 only");
    tp = ThetaMatrix::two(RationalPoly::parse(o.theta_prime));
  } else {
    tp = solve_theta_prime(theta, M, square_matrix(o.K, n, "--K"));
  }
  CoveringSystem sys = build_connected_covering(theta, M, tp);
  CoveringReport r = check_connected_covering(sys, o.support_bound);
  json j = {{"M", io::to_json(M)},
            {"theta_prime", io::to_json(tp)},
            {"invariant_factors", io::to_json(sys.group().invariant_factors())},
            {"checks", io::to_json(r)}};
  if (!r.ok()) throw ConsistencyError("covering checks failed: " + j.dump());
  return j;
}

json cmd_smooth_build(const Options& o) {
  if (o.phi.empty()) throw InvalidArgument("--phi is required");
  ThetaPtr theta = make_theta(theta_of(o));
  io::PhiSpec phi = io::phi_from_json(read_json_argument(o.phi));
  SmoothBuild b = build_smooth_covering(theta, phi.group, phi.images);
  json j = io::to_json(b);
  j["theta_12"] = (*theta)(0, 1).to_string();
  return j;
}

json cmd_poset(const Options& o) { return io::to_json(profinite_tower(o.n, o.max_index)); }

json cmd_freeness(const Options& o) {
  std::vector<std::int64_t> factors;
  for (const auto& x : integer_list(o.group)) factors.push_back(to_int64(x));
  FiniteAbelianGroup G(factors);
  std::vector<GroupElement> gens = element_list(o.chars);
  for (auto& g : gens) g = G.normalize(g);
  std::vector<GroupElement> N = G.generated(gens);
  FreenessResult r = check_freeness_ergodic(N, G);
  json subgroup = json::array();
  for (const auto& g : N) subgroup.push_back(io::to_json(g));
  json j = io::to_json(r);
  j["group"] = factors;
  j["subgroup"] = subgroup;
  return j;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations for coverings of quantum tori", "qtc"};
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "Indent JSON output");

  auto theta_opts = [&o](CLI::App* sub) {
    sub->add_option("--theta", o.theta, "theta_12 as a polynomial in t")->capture_default_str();
    sub->add_option("--theta-file", o.theta_file, "Skew theta matrix as JSON (file or inline)");
    sub->add_option("--n", o.n, "Dimension")->capture_default_str();
    sub->add_flag("--pretty", o.pretty, "Indent JSON output");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate an expression in the quantum torus");
  theta_opts(eval);
  eval->add_option("expression", o.expression, "Expression, e.g. \"v*u\"")->required();

  auto* solve = app.add_subcommand("solve-theta", "theta' = M^{-1}(theta + K)M^{-T}");
  theta_opts(solve);
  solve->add_option("--M", o.M, "Row-major entries a,b,c,d")->required();
  solve->add_option("--K", o.K, "Row-major skew integer matrix, or 0")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Connected coverings up to an index bound");
  theta_opts(classify);
  classify->add_option("--max-index", o.max_index)->capture_default_str();
  classify->add_option("--kbound", o.kbound, "Bound on the entries of K")->capture_default_str();
  classify->add_option("--support-bound", o.support_bound)->capture_default_str();

  auto* check = app.add_subcommand("check-covering", "Build and verify one connected covering");
  theta_opts(check);
  check->add_option("--M", o.M)->required();
  check->add_option("--K", o.K)->capture_default_str();
  check->add_option("--theta-prime", o.theta_prime, "Use this theta'_12 instead of solving for it");
  check->add_option("--support-bound", o.support_bound)->capture_default_str();

  auto* smooth = app.add_subcommand("smooth-build", "Smooth covering from a homomorphism into Out");
  theta_opts(smooth);
  smooth->add_option("--phi", o.phi, "Homomorphism as JSON (file or inline)")->required();

  auto* poset = app.add_subcommand("poset", "Finite quotients of Z^n ordered by inclusion");
  poset->add_option("--n", o.n)->capture_default_str();
  poset->add_option("--max-index", o.max_index)->capture_default_str();
  poset->add_flag("--pretty", o.pretty, "Indent JSON output");

  auto* freeness = app.add_subcommand("freeness", "Kernel of an ergodic action with spectrum N");
  freeness->add_option("--group", o.group, "Invariant factors, e.g. 2,2")->required();
  freeness->add_option("--chars", o.chars, "Generators of N, e.g. \"1,0;0,1\"");
  freeness->add_flag("--pretty", o.pretty, "Indent JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "qtc: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  json result;
  try {
    if (*eval)
      result = cmd_eval(o);
    else if (*solve)
      result = cmd_solve_theta(o);
    else if (*classify)
      result = cmd_classify(o);
    else if (*check)
      result = cmd_check_covering(o);
    else if (*smooth)
      result = cmd_smooth_build(o);
    else if (*poset)
      result = cmd_poset(o);
    else
      result = cmd_freeness(o);
  } catch (const ParseError& e) {
    out << json{{"error", {{"kind", "parse"}, {"message", e.what()}, {"position", e.position()}}}}.dump(o.pretty ? 2 : -1)
        << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::string kind = dynamic_cast<const ObstructionError*>(&e) ? "obstruction" : "domain";
    out << json{{"error", {{"kind", kind}, {"message", e.what()}}}}.dump(o.pretty ? 2 : -1) << "\n";
    return kDomainError;
  }
  out << result.dump(o.pretty ? 2 : -1) << "\n";
  return kSuccess;
}

}  // namespace qtc::cli
