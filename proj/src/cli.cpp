#include "qsatake/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsatake/bimodcalc.hpp"
#include "qsatake/frobhypercube.hpp"
#include "qsatake/polyring.hpp"
#include "qsatake/qarith.hpp"
#include "qsatake/report.hpp"
#include "qsatake/satake.hpp"
#include "qsatake/webs.hpp"
#include "qsatake/weylrep.hpp"

namespace qsatake {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int emit_report(const Report& rep, bool json, std::ostream& out) {
  if (json)
    out << rep.to_json() << "\n";
  else
    out << rep.to_table();
  return rep.all_pass() ? 0 : 1;
}

void emit_value(const std::string& key, const std::string& value, bool json,
                std::ostream& out) {
  if (json) {
    nlohmann::json j;
    j[key] = value;
    out << j.dump(2) << "\n";
  } else {
    out << value << "\n";
  }
}

Subset subset_arg(char c) {
  auto s = Subset::from_name(std::string(1, c));
  if (!s) throw UsageError(std::string("unknown color '") + c + "'");
  return *s;
}

P primary_arg(char c, int rank) {
  switch (c) {
    case 'b':
      return P::b;
    case 'r':
      return P::r;
    case 'y':
      if (rank == 2) return P::y;
      throw UsageError("color 'y' needs --n 3");
    default:
      throw UsageError(std::string("unknown primary color '") + c +
                       "', expected b, r, or y");
  }
}

std::vector<std::string> color_names(const std::vector<Subset>& word) {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (Subset c : word) out.push_back(c.name());
  return out;
}

// Settings gathered during parsing; one subcommand runs afterwards.
struct Options {
  bool json = false;
  std::string suite;
  int n = 3;
  int degree_cutoff = -1;  // -1 means the per-suite default
  std::uint64_t seed = 20260823;
  std::string file;
  std::string ops;
  std::string poly;
  std::string ext;
  int kernel_n = 0;
  int kernel_m = 0;
};

int run_verify(const Options& opt, std::ostream& out) {
  int rank = opt.n - 1;
  auto cutoff = [&](int dflt) {
    return opt.degree_cutoff > 0 ? opt.degree_cutoff : dflt;
  };
  Report rep;
  if (opt.suite == "frobenius")
    rep = verify_hypercube(rank, cutoff(12));
  else if (opt.suite == "relations")
    rep = verify_relations(rank, cutoff(12));
  else if (opt.suite == "functor")
    rep = verify_functor(rank, cutoff(8), opt.seed);
  else if (opt.suite == "weylrep")
    rep = check_coxeter(rank);
  else if (opt.suite == "webs")
    rep = verify_webs(rank, opt.seed);
  else
    throw UsageError("unknown suite: " + opt.suite);
  return emit_report(rep, opt.json, out);
}

int run_eval_web(const Options& opt, std::ostream& out) {
  Web w = web_from_json(read_file(opt.file));
  emit_value("value", evaluate_closed(w).to_string(), opt.json, out);
  return 0;
}

// The reduced combination as a document eval-web and reduce-web can both
// re-read: web documents per term plus a Laurent coefficient string.
int run_reduce_web(const Options& opt, std::ostream& out) {
  Web w = web_from_json(read_file(opt.file));
  WebCombo r = reduce(w);
  nlohmann::json j;
  j["n"] = w.rank + 1;
  j["source"] = color_names(r.source());
  j["target"] = color_names(r.target());
  j["terms"] = nlohmann::json::array();
  for (const auto& [term, c] : r.terms()) {
    nlohmann::json e;
    e["coeff"] = c.to_string();
    e["web"] = nlohmann::json::parse(web_to_json(term));
    j["terms"].push_back(e);
  }
  out << j.dump(2) << "\n";
  return 0;
}

int run_functor_image(const Options& opt, std::ostream& out) {
  Web w = web_from_json(read_file(opt.file));
  MorTerm img = FunctorSpec::get(w.rank).web_image(w);
  if (opt.json) {
    nlohmann::json j;
    j["source"] = img.source().to_string();
    j["target"] = img.target().to_string();
    j["degree"] = img.degree();
    j["term"] = img.to_string();
    out << j.dump(2) << "\n";
  } else {
    out << "source: " << img.source().to_string() << "\n"
        << "target: " << img.target().to_string() << "\n"
        << "degree: " << img.degree() << "\n"
        << img.to_string() << "\n";
  }
  return 0;
}

int run_demazure(const Options& opt, std::ostream& out) {
  int rank = opt.n - 1;
  const Realization& re = Realization::get(rank);
  auto f = Poly::parse(opt.poly);
  if (!f) throw UsageError("cannot parse polynomial: " + opt.poly);
  Poly acc = *f;
  for (char c : opt.ops) acc = re.demazure(primary_arg(c, rank), acc);
  emit_value("result", acc.to_string(), opt.json, out);
  return 0;
}

int run_dual_bases(const Options& opt, std::ostream& out) {
  if (opt.ext.size() != 2)
    throw UsageError("--ext needs exactly two color letters, lower then upper");
  int rank = opt.n - 1;
  Subset lower = subset_arg(opt.ext[0]);
  Subset upper = subset_arg(opt.ext[1]);
  const FrobeniusCube& cube = FrobeniusCube::get(rank);
  DualBases db = cube.dual_bases(lower, upper);
  Poly mu = cube.mu(lower, upper);
  if (opt.json) {
    nlohmann::json j;
    j["lower"] = lower.name();
    j["upper"] = upper.name();
    j["basis"] = nlohmann::json::array();
    j["dual"] = nlohmann::json::array();
    for (const Poly& b : db.basis) j["basis"].push_back(b.to_string());
    for (const Poly& d : db.dual) j["dual"].push_back(d.to_string());
    j["mu"] = mu.to_string();
    out << j.dump(2) << "\n";
  } else {
    out << "extension " << lower.name() << " -> " << upper.name() << ", rank "
        << db.basis.size() << "\n";
    for (size_t i = 0; i < db.basis.size(); ++i) {
      out << "b[" << i << "]  = " << db.basis[i].to_string() << "\n";
      out << "b*[" << i << "] = " << db.dual[i].to_string() << "\n";
    }
    out << "mu = " << mu.to_string() << "\n";
  }
  return 0;
}

int run_kernel_check(const Options& opt, std::ostream& out) {
  return emit_report(kernel_check(opt.kernel_n, opt.kernel_m), opt.json, out);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  Options opt;
  CLI::App app{
      "Exact checks for q-deformed reflection actions, Frobenius dual-basis "
      "calculus, web reduction, and the web-to-bimodule functor."};
  app.require_subcommand(1);
  auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "emit a JSON report instead of text");
  };
  add_json(&app);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", opt.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(
          {"frobenius", "relations", "functor", "weylrep", "webs"}));
  verify->add_option("--n", opt.n, "2 for the sl_2 calculus, 3 for sl_3")
      ->required()
      ->check(CLI::IsMember({2, 3}));
  verify->add_option("--degree-cutoff", opt.degree_cutoff,
                     "polynomial degree bound for identity checks "
                     "(default 12; the functor suite defaults to 8)");
  verify->add_option("--seed", opt.seed, "seed for randomized checks");
  add_json(verify);

  CLI::App* eval = app.add_subcommand("eval-web", "evaluate a closed web");
  eval->add_option("file", opt.file, "web JSON file")->required();
  add_json(eval);

  CLI::App* red = app.add_subcommand(
      "reduce-web", "rewrite a web into a combination of non-elliptic webs");
  red->add_option("file", opt.file, "web JSON file")->required();
  add_json(red);

  CLI::App* fim = app.add_subcommand(
      "functor-image", "bimodule map term assigned to a web");
  fim->add_option("file", opt.file, "web JSON file")->required();
  add_json(fim);

  CLI::App* dem = app.add_subcommand(
      "demazure", "apply divided-difference operators to a polynomial");
  dem->add_option("--ops", opt.ops,
                  "primary colors, leftmost applied first (e.g. \"ybr\")")
      ->required();
  dem->add_option("--poly", opt.poly, "polynomial in a_b, a_r, a_y")
      ->required();
  dem->add_option("--n", opt.n, "2 for the sl_2 calculus, 3 for sl_3 (default)")
      ->check(CLI::IsMember({2, 3}));
  add_json(dem);

  CLI::App* db = app.add_subcommand(
      "dual-bases", "dual bases of a Frobenius extension of invariant rings");
  db->add_option("--ext", opt.ext,
                 "two color letters, lower then upper, e.g. \"0b\" or \"bp\"")
      ->required();
  db->add_option("--n", opt.n, "2 for the sl_2 calculus, 3 for sl_3 (default)")
      ->check(CLI::IsMember({2, 3}));
  add_json(db);

  CLI::App* kc = app.add_subcommand(
      "kernel-check",
      "translation kernel of the deformed reflection action at a root of "
      "unity");
  kc->add_option("--n", opt.kernel_n,
                 "number of finite reflections (1 for sl_2, 2 for sl_3, ...)")
      ->required();
  kc->add_option("--m", opt.kernel_m, "q^2 is a primitive m-th root of unity")
      ->required();
  add_json(kc);

  std::vector<std::string> argv_store;
  argv_store.push_back("qsatake");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_store.size() + 1);
  for (std::string& s : argv_store) argv.push_back(s.data());
  argv.push_back(nullptr);

  try {
    app.parse(static_cast<int>(argv.size()) - 1, argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(opt, out);
    if (app.got_subcommand(eval)) return run_eval_web(opt, out);
    if (app.got_subcommand(red)) return run_reduce_web(opt, out);
    if (app.got_subcommand(fim)) return run_functor_image(opt, out);
    if (app.got_subcommand(dem)) return run_demazure(opt, out);
    if (app.got_subcommand(db)) return run_dual_bases(opt, out);
    if (app.got_subcommand(kc)) return run_kernel_check(opt, out);
    err << "error: no subcommand given\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qsatake
