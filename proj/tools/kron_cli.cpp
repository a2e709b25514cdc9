// kron_cli: compute, verify, classify and canon commands over the kron
// library. Exit codes: 0 success or all checks pass, 1 some check failed,
// 2 bad input or configuration.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kron/kron.hpp"

using namespace kron;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitBad = 2;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

Matrix read_matrix(const std::string& path) { return matrix_from_json(read_json(path)); }

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump() + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(Errc::parse_error, "cannot write '" + out + "'");
  f << text;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("KRON_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(Errc::invalid_config, std::string("KRON_SEED is not an unsigned integer: '") + s + "'");
    }
  }
  return 0;
}

/// Canonical JSON, or a bare gamma tensor paired with upsilon = E_11.
CanonicalDifference read_difference(const Json& j) {
  if (j.is_object() && j.contains("upsilon")) return canonical_from_json(j);
  const TensorView g = tensor_from_json(j);
  return CanonicalDifference::build(reference_upsilon(g.field(), g.d2(), Reference::e11), g);
}

struct Opts {
  std::string a, b, c, out;
  std::string upsilon = "e11";
  std::size_t outer = 0;
  // verify
  std::string suite, field = "q", mode = "restricted", gamma;
  std::size_t dims = 3;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned jobs = 1;
  // classify
  std::string kind;
  std::size_t q = 2;
  // canon
  std::string reference = "e11", input;
  std::size_t m = 0;
};

Matrix split_trace(const Matrix& x, std::size_t outer, bool block) {
  x.require_square("trace split");
  if (outer == 0 || x.rows() % outer != 0)
    throw Error(Errc::dimension_mismatch, "--outer " + std::to_string(outer) + " does not divide order " + std::to_string(x.rows()));
  const std::size_t inner = x.rows() / outer;
  return block ? block_trace(x, outer, inner) : partial_trace(x, outer, inner);
}

int run_compute(const std::string& cmd, const Opts& o) {
  Matrix r;
  if (cmd == "kron") r = kron_product(read_matrix(o.a), read_matrix(o.b));
  else if (cmd == "ksum") r = kron_sum(read_matrix(o.a), read_matrix(o.b));
  else if (cmd == "kquot") r = kron_quotient(read_matrix(o.a), read_matrix(o.b));
  else if (cmd == "kdiff") {
    const Matrix mm = read_matrix(o.a), b = read_matrix(o.b);
    const std::size_t m = detail::outer_order(mm, b, "Kronecker difference");
    r = CanonicalDifference::reference(mm.field(), m, b.rows(), parse_reference(o.upsilon))(mm, b);
  } else if (cmd == "btr") r = split_trace(read_matrix(o.a), o.outer, true);
  else if (cmd == "ptr") r = split_trace(read_matrix(o.a), o.outer, false);
  else if (cmd == "sylvester") r = sylvester_solve(read_matrix(o.a), read_matrix(o.b), read_matrix(o.c));
  emit(matrix_to_json(r), o.out);
  return 0;
}

int run_verify(const Opts& o) {
  SuiteOptions so;
  so.cfg = CampaignConfig{parse_field_name(o.field), o.dims, o.trials, o.seed_set ? o.seed : default_seed()};
  so.mode = parse_dmode(o.mode);
  if (!o.gamma.empty()) so.gamma = read_difference(read_json(o.gamma));
  const Report rep = run_suites(o.suite, so, o.jobs);
  std::cout << rep.to_jsonl();
  return rep.all_passed() ? 0 : kExitFail;
}

int run_classify(const Opts& o) {
  const Field f = parse_field_name(o.field);
  const CommutingKind kind = parse_commuting_kind(o.kind);
  const auto pairs = enumerate_commuting_pairs(f, o.q, kind);
  for (const auto& p : pairs) std::cout << commuting_pair_to_json(p).dump() << "\n";
  const EnumerationSummary s = compare_with_forms(pairs, parametric_pairs(f, o.q, kind));
  Json sum = Json::object();
  sum["summary"] = o.kind;
  sum["field"] = f.name();
  sum["q"] = o.q;
  sum["enumerated"] = s.enumerated;
  sum["predicted"] = s.predicted;
  sum["classified"] = s.classified;
  sum["mismatched"] = s.mismatched;
  sum["agree"] = s.agree();
  std::cout << sum.dump() << "\n";
  return s.agree() ? 0 : kExitFail;
}

/// {"kind": "induced", "field", "m", "n"} stands for the selector-induced
/// difference; anything else is read as a canonical difference.
std::pair<BinaryOp, std::pair<Field, std::pair<std::size_t, std::size_t>>> read_stored(const Json& j) {
  if (j.is_object() && j.value("kind", "") == "induced") {
    const Field f = j.contains("field") ? field_from_json(j["field"]) : Field::rational();
    return {induced_difference_op(), {f, {detail::json_size(j, "m"), detail::json_size(j, "n")}}};
  }
  const CanonicalDifference cd = read_difference(j);
  return {cd.op(), {cd.field(), {cd.m(), cd.n()}}};
}

CanonicalDifference build_from_files(const Opts& o) {
  const Matrix u = read_matrix(o.a);
  if (!o.gamma.empty()) {
    const TensorView g = tensor_from_json(read_json(o.gamma));
    return CanonicalDifference::build(u, g, parse_upsilon_mode(o.mode));
  }
  if (o.m == 0) throw Error(Errc::invalid_config, "canon build needs --gamma or --m");
  return CanonicalDifference::build(u, TensorView::zero(u.field(), o.m, u.rows(), o.m),
                                    parse_upsilon_mode(o.mode));
}

int run_canon(const std::string& action, const Opts& o) {
  if (action == "build") {
    emit(canonical_to_json(build_from_files(o)), o.out);
    return 0;
  }
  if (action == "extract") {
    const auto [op, shape] = read_stored(read_json(o.input));
    const auto& [f, mn] = shape;
    const Decomposition d = extract_decomposition(op, f, mn.first, mn.second, reference_upsilon(f, mn.second, parse_reference(o.reference)));
    Json j = Json::object();
    j["m"] = mn.first;
    j["n"] = mn.second;
    j["upsilon"] = matrix_to_json(d.upsilon);
    j["gamma"] = tensor_to_json(d.gamma);
    j["gamma_is_zero"] = d.gamma.matrix().is_zero();
    emit(j, o.out);
    return 0;
  }
  // roundtrip: build, probe, compare parameters exactly
  const CanonicalDifference cd = build_from_files(o);
  const bool intrinsic = tr1(cd.gamma()).is_zero();
  const Decomposition d = intrinsic ? extract_uniform_decomposition(cd.op(), cd.field(), cd.m(), cd.n())
                                    : extract_decomposition(cd, cd.upsilon());
  const bool exact = d.upsilon == cd.upsilon() && d.gamma == cd.gamma();
  std::cout << (exact ? "exact" : "mismatch") << "\n";
  return exact ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kronecker sums, quotients and differences"};
  app.require_subcommand(1);
  Opts o;
  std::string compute_cmd;

  for (const char* name : {"kron", "ksum", "kquot", "kdiff", "sylvester"}) {
    auto* sub = app.add_subcommand(name, std::string("compute ") + name);
    sub->add_option("a", o.a, "first matrix JSON")->required();
    sub->add_option("b", o.b, "second matrix JSON")->required();
    if (std::string(name) == "sylvester") sub->add_option("y", o.c, "right-hand side Y (n x m)")->required();
    if (std::string(name) == "kdiff") sub->add_option("--upsilon", o.upsilon, "e11 or idn")->check(CLI::IsMember({"e11", "idn"}));
    sub->add_option("-o,--output", o.out, "output file (default stdout)");
    sub->callback([&compute_cmd, name] { compute_cmd = name; });
  }
  for (const char* name : {"btr", "ptr"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " of a matrix over F_n (x) F_m");
    sub->add_option("a", o.a, "matrix JSON")->required();
    sub->add_option("--outer", o.outer, "order n of the outer factor")->required();
    sub->add_option("-o,--output", o.out, "output file (default stdout)");
    sub->callback([&compute_cmd, name] { compute_cmd = name; });
  }

  auto* verify = app.add_subcommand("verify", "run verification suites as JSON lines");
  verify->add_option("suite", o.suite, "sums|quotients|differences|canonical|uniform|appendix|ortho|all")
      ->required()
      ->check(CLI::IsMember({"sums", "quotients", "differences", "canonical", "uniform", "appendix", "ortho", "all"}));
  verify->add_option("--field", o.field, "q, gf<p> or real64");
  verify->add_option("--dims", o.dims, "largest factor order");
  verify->add_option("--trials", o.trials, "trials per check");
  verify->add_option("--seed", o.seed, "master seed (default $KRON_SEED or 0)")->each([&o](const std::string&) { o.seed_set = true; });
  verify->add_option("--mode", o.mode, "restricted|unrestricted|zero_form");
  verify->add_option("--gamma", o.gamma, "difference file for the differences suite");
  verify->add_option("--jobs", o.jobs, "suites evaluated concurrently")->check(CLI::Range(1u, 64u));

  auto* classify = app.add_subcommand("classify", "enumerate Kronecker-commuting pairs");
  classify->add_option("kind", o.kind, "vectors|trace1")->required()->check(CLI::IsMember({"vectors", "trace1"}));
  classify->add_option("--field", o.field, "gf<p>")->required();
  classify->add_option("--q", o.q, "prime order of the second factor")->required();

  auto* canon = app.add_subcommand("canon", "build, extract or round-trip canonical differences");
  std::string canon_action;
  canon->add_option("action", canon_action, "build|extract|roundtrip")->required()->check(CLI::IsMember({"build", "extract", "roundtrip"}));
  canon->add_option("--upsilon", o.a, "upsilon matrix JSON (build, roundtrip)");
  canon->add_option("--gamma", o.gamma, "gamma tensor JSON (build, roundtrip)");
  canon->add_option("--m", o.m, "outer order when gamma is omitted");
  canon->add_option("--mode", o.mode, "unit_trace_reference|normalized_identity");
  canon->add_option("--input", o.input, "stored difference (extract)");
  canon->add_option("--reference", o.reference, "e11 or idn")->check(CLI::IsMember({"e11", "idn"}));
  canon->add_option("-o,--output", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBad;
  }

  try {
    if (!compute_cmd.empty()) return run_compute(compute_cmd, o);
    if (verify->parsed()) return run_verify(o);
    if (classify->parsed()) return run_classify(o);
    if (canon->parsed()) {
      if (canon_action == "extract" && o.input.empty()) throw Error(Errc::invalid_config, "canon extract needs --input");
      if (canon_action != "extract" && o.a.empty()) throw Error(Errc::invalid_config, "canon " + canon_action + " needs --upsilon");
      if (o.mode == "restricted") o.mode = "unit_trace_reference";
      return run_canon(canon_action, o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBad;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBad;
  }
  return kExitBad;
}
