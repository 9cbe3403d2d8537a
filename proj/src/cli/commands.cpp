#include "linsys/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "linsys/generators.hpp"
#include "linsys/io.hpp"
#include "linsys/levi.hpp"
#include "linsys/solvers.hpp"
#include "linsys/verify.hpp"

namespace linsys::cli {

using nlohmann::json;

namespace {

std::string bool_text(bool b) { return b ? "true" : "false"; }

void print_stats(const LinearSystem& ls, std::ostream& os) {
  const auto st = stats(ls);
  os << "points " << st.num_points << "\n"
     << "lines " << st.num_lines << "\n"
     << "max_degree " << st.max_degree << "\n"
     << "rank " << st.rank << "\n"
     << "uniform " << (st.uniform_r ? std::to_string(*st.uniform_r) : "none") << "\n"
     << "intersecting " << bool_text(st.is_intersecting) << "\n";
}

LinearSystem load(const std::string& path) {
  return io::parse_instance(io::read_file(path)).system;
}

struct GenArgs {
  std::string kind;
  std::string group = "z3";
  std::int64_t q = 3;
  std::uint64_t seed = 1;
  std::size_t points = 10;
  std::size_t lines = 8;
  std::size_t min_line = 2;
  std::size_t max_line = 4;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  LinearSystem ls;
  json meta{{"generator", a.kind}};
  if (a.kind == "cnn") {
    ls = cnn(AbelianGroup::parse(a.group));
    meta["group"] = a.group;
  } else if (a.kind == "pp") {
    ls = projective_plane(a.q);
    meta["q"] = a.q;
  } else if (a.kind == "chat") {
    ls = chat();
  } else if (a.kind == "c34") {
    ls = example_c34();
  } else if (a.kind == "random") {
    ls = random_linear_system(a.seed, a.points, a.lines, a.min_line, a.max_line);
    meta["seed"] = a.seed;
    meta["points"] = a.points;
    meta["lines"] = a.lines;
    meta["min_line"] = a.min_line;
    meta["max_line"] = a.max_line;
  } else {
    err << "error: unknown generator '" << a.kind << "' (cnn, pp, chat, c34, random)\n";
    return kInputError;
  }
  const auto text = io::emit_instance(ls, meta);
  if (a.out.empty()) {
    out << text;
    print_stats(ls, err);
  } else {
    io::write_file(a.out, text);
    out << "wrote " << a.out << "\n";
    print_stats(ls, out);
  }
  return kOk;
}

struct SolveArgs {
  std::string file;
  std::string which = "both";
  std::uint64_t budget = SolveOptions{}.node_budget;
  std::string cert_prefix;
  bool no_certs = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (a.which != "tau" && a.which != "nu2" && a.which != "both") {
    err << "error: expected tau, nu2 or both, got '" << a.which << "'\n";
    return kInputError;
  }
  const auto ls = load(a.file);
  SolveOptions opts;
  opts.node_budget = a.budget;
  auto prefix = a.cert_prefix;
  if (prefix.empty()) {
    std::filesystem::path p(a.file);
    prefix = (p.parent_path() / p.stem()).string();
  }
  bool all_optimal = true;
  auto report = [&](const Certificate& c) {
    out << kind_name(c.kind) << " " << c.value << " " << (c.optimal ? "optimal" : "not-optimal")
        << " nodes " << c.nodes_explored << "\n";
    all_optimal = all_optimal && c.optimal;
    if (!a.no_certs) {
      const auto path = prefix + "." + std::string(kind_name(c.kind)) + ".cert.json";
      io::write_file(path, io::emit_certificate(ls, c));
      err << "wrote " << path << "\n";
    }
  };
  if (a.which != "nu2") report(tau_exact(ls, opts));
  if (a.which != "tau") report(nu2_exact(ls, opts));
  if (!all_optimal) {
    err << "node budget exhausted; values are bounds only\n";
    return kInconclusive;
  }
  return kOk;
}

int cmd_check_cert(const std::string& instance, const std::string& cert_path, std::ostream& out) {
  const auto ls = load(instance);
  const auto cert = io::parse_certificate(io::read_file(cert_path), ls);
  const bool sound = certificate_is_sound(ls, cert);
  out << kind_name(cert.kind) << " " << cert.value << " "
      << (sound ? "certificate verifies" : "certificate does NOT verify") << "\n";
  return sound ? kOk : kVerificationFailed;
}

int cmd_check(const std::string& file, std::ostream& out) {
  LinearSystem ls;
  try {
    ls = load(file);
  } catch (const Error& e) {
    out << "invalid: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  }
  out << "valid\n";
  print_stats(ls, out);
  return kOk;
}

struct VerifyArgs {
  std::string theorem;
  std::vector<std::int64_t> n{3, 5, 7};
  std::size_t seeds = 60;
  std::uint64_t first_seed = 1;
  std::uint64_t budget = SolveOptions{}.node_budget;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  verify::VerifyOptions opts;
  opts.solve.node_budget = a.budget;
  auto lattice_candidates = [&] {
    std::vector<verify::NamedInstance> c;
    const auto members = verify::cor42_lattice(opts);
    for (std::size_t i = 0; i < members.size(); ++i) {
      c.push_back({"member-" + std::to_string(i), members[i].system});
    }
    return c;
  };
  verify::VerificationReport report;
  const auto& id = a.theorem;
  if (id == "eq1") {
    report = verify::verify_eq1(verify::random_corpus(a.first_seed, a.seeds), opts);
  } else if (id == "thm21") {
    report = verify::verify_thm21(verify::random_corpus(a.first_seed, a.seeds), opts);
  } else if (id == "prop31") {
    report = verify::verify_props_31_32(a.n, verify::PropSelection::Tau, opts);
  } else if (id == "prop32") {
    report = verify::verify_props_31_32(a.n, verify::PropSelection::Nu2, opts);
  } else if (id == "thm32") {
    report = verify::verify_thm32_minimality(a.n, opts);
  } else if (id == "lemma41") {
    report = verify::verify_lemma41(lattice_candidates(), opts);
  } else if (id == "lemmas4243") {
    report = verify::verify_lemmas_42_43(lattice_candidates(), opts);
  } else if (id == "cor42") {
    report = verify::verify_cor42(opts);
  } else {
    err << "error: unknown theorem id '" << id
        << "' (eq1, thm21, prop31, prop32, thm32, lemma41, lemmas4243, cor42)\n";
    return kInputError;
  }
  const auto text = io::emit_json(verify::report_json(report));
  std::ostream& summary = a.out.empty() ? err : out;
  if (a.out.empty()) {
    out << text;
  } else {
    io::write_file(a.out, text);
  }
  const bool inconclusive = !report.conclusive_pass() && report.passed;
  summary << report.theorem_id << ": "
          << (!report.passed ? "FAIL" : inconclusive ? "INCONCLUSIVE" : "PASS") << " (checked "
          << report.instances_checked << ", filtered " << report.instances_filtered << ")";
  if (id == "cor42") {
    summary << " members " << report.summary["members"].get<std::size_t>() << ", A "
            << report.summary["a_size"].get<std::size_t>() << ", B "
            << report.summary["b_size"].get<std::size_t>();
  }
  summary << "\n";
  if (!report.passed) return kVerificationFailed;
  return inconclusive ? kInconclusive : kOk;
}

struct LeviArgs {
  std::string file;
  std::string dot;
  bool bound = false;
};

int cmd_levi(const LeviArgs& a, std::ostream& out) {
  const auto ls = load(a.file);
  const auto g = levi_graph(ls);
  const auto r = planarity_bound(g);
  out << "vertices " << r.vertex_count << "\n"
      << "edges " << r.edge_count << "\n"
      << "girth " << (r.girth ? std::to_string(*r.girth) : "infinite") << "\n";
  if (a.bound) {
    out << "bound " << r.bound_value.str() << (r.girth ? "" : " (acyclic)") << "\n"
        << "certified_nonplanar " << bool_text(r.certified_nonplanar) << "\n";
    if (r.certified_nonplanar) {
      out << "edges " << r.edge_count << " > " << r.bound_value.str()
          << ": Levi graph is not planar, so the system is not a straight line system\n";
    } else {
      out << "bound not exceeded: nothing certified\n";
    }
  }
  if (!a.dot.empty()) {
    std::vector<std::string> line_labels;
    for (LineIndex l = 0; l < ls.num_lines(); ++l) {
      std::string s = "{";
      auto labels = ls.line_labels(l);
      for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
      line_labels.push_back(s + "}");
    }
    io::write_file(a.dot, export_dot(g, ls.labels(), line_labels));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite linear systems: constructions, exact transversal and 2-packing numbers, "
               "theorem checks"};
  app.name("linsys");
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("kind", gen_args.kind, "cnn | pp | chat | c34 | random")->required();
  gen->add_option("--group", gen_args.group, "group descriptor for cnn, e.g. z5 or z3xz3");
  gen->add_option("--q", gen_args.q, "prime order for pp");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--points", gen_args.points, "random: number of points");
  gen->add_option("--lines", gen_args.lines, "random: number of line slots");
  gen->add_option("--min", gen_args.min_line, "random: minimum line size");
  gen->add_option("--max", gen_args.max_line, "random: maximum line size");
  gen->add_option("-o,--out", gen_args.out, "output file (default: standard output)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Compute tau and/or nu2 exactly, write certificates");
  solve->add_option("file", solve_args.file, "instance file")->required();
  solve->add_option("which", solve_args.which, "tau | nu2 | both");
  solve->add_option("--budget", solve_args.budget, "branch node budget per solve");
  solve->add_option("--cert-prefix", solve_args.cert_prefix,
                    "certificate path prefix (default: instance path without extension)");
  solve->add_flag("--no-certs", solve_args.no_certs, "do not write certificate files");

  std::string cert_instance;
  std::string cert_file;
  auto* check_cert = app.add_subcommand("check-cert", "Re-verify a certificate file");
  check_cert->add_option("instance", cert_instance, "instance file")->required();
  check_cert->add_option("certificate", cert_file, "certificate file")->required();

  std::string check_file;
  auto* check = app.add_subcommand("check", "Validate an instance file and print statistics");
  check->add_option("file", check_file, "instance file")->required();

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Run a theorem check and emit a report");
  ver->add_option("theorem", verify_args.theorem,
                  "eq1 | thm21 | prop31 | prop32 | thm32 | lemma41 | lemmas4243 | cor42")
      ->required();
  ver->add_option("--n", verify_args.n, "group orders, comma separated")->delimiter(',');
  ver->add_option("--seeds", verify_args.seeds, "number of random corpus instances");
  ver->add_option("--first-seed", verify_args.first_seed, "first corpus seed");
  ver->add_option("--budget", verify_args.budget, "branch node budget per solve");
  ver->add_option("-o,--out", verify_args.out, "report file (default: standard output)");

  LeviArgs levi_args;
  auto* levi = app.add_subcommand("levi", "Levi graph statistics and planarity bound");
  levi->add_option("file", levi_args.file, "instance file")->required();
  levi->add_option("--dot", levi_args.dot, "write Graphviz DOT here");
  levi->add_flag("--bound", levi_args.bound, "evaluate the girth edge bound");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args, out, err);
    if (solve->parsed()) return cmd_solve(solve_args, out, err);
    if (check_cert->parsed()) return cmd_check_cert(cert_instance, cert_file, out);
    if (check->parsed()) return cmd_check(check_file, out);
    if (ver->parsed()) return cmd_verify(verify_args, out, err);
    if (levi->parsed()) return cmd_levi(levi_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::BudgetExhausted ? kInconclusive : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace linsys::cli
