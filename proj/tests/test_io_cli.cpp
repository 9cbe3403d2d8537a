#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "linsys/cli.hpp"
#include "linsys/core.hpp"
#include "linsys/error.hpp"
#include "linsys/generators.hpp"
#include "linsys/io.hpp"
#include "linsys/solvers.hpp"

using namespace linsys;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "linsys_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("instance round trip") {
  for (const auto& ls : {example_c34(), projective_plane(3), chat(), random_linear_system(9, 10, 8, 2, 4)}) {
    const auto text = io::emit_instance(ls, {{"source", "test"}});
    CHECK(text.back() == '\n');
    const auto parsed = io::parse_instance(text);
    CHECK(canonical_key(parsed.system) == canonical_key(ls));
    CHECK(parsed.metadata["source"] == "test");
    CHECK(io::emit_instance(parsed.system, parsed.metadata) == text);
  }
}

TEST_CASE("digest ignores metadata and ordering") {
  const auto ls = example_c34();
  CHECK(io::instance_digest(ls) == io::instance_digest(canonicalize(ls)));
  CHECK(io::instance_digest(ls).rfind("sha256:", 0) == 0);
  CHECK(io::instance_digest(ls).size() == 7 + 64);
  CHECK(io::instance_digest(ls) != io::instance_digest(delete_line(ls, 0)));
  const auto a = io::parse_instance(io::emit_instance(ls, {{"x", 1}}));
  const auto b = io::parse_instance(io::emit_instance(ls, {{"x", 2}}));
  CHECK(io::instance_digest(a.system) == io::instance_digest(b.system));
}

TEST_CASE("parse errors") {
  auto code_of = [](const std::string& text) {
    try {
      io::parse_instance(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::UnknownTheoremId;  // sentinel: nothing thrown
  };
  CHECK(code_of("{") == Errc::ParseError);
  CHECK(code_of("[]") == Errc::ParseError);
  CHECK(code_of(R"({"points":["a"],"lines":[]})") == Errc::ParseError);
  CHECK(code_of(R"({"format_version":2,"points":["a"],"lines":[]})") == Errc::ParseError);
  CHECK(code_of(R"({"format_version":1,"points":["a",1],"lines":[]})") == Errc::ParseError);
  CHECK(code_of(R"({"format_version":1,"points":["a","b","c"],"lines":[["a","b","c"],["a","b"]]})") ==
        Errc::PairwiseIntersectionViolation);
  CHECK(code_of(R"({"format_version":1,"points":["a"],"lines":[["a","z"]]})") ==
        Errc::UnknownPointInLine);
}

TEST_CASE("certificate round trip") {
  const auto ls = projective_plane(3);
  for (const auto& cert : {tau_exact(ls), nu2_exact(ls)}) {
    const auto parsed = io::parse_certificate(io::emit_certificate(ls, cert), ls);
    CHECK(parsed.kind == cert.kind);
    CHECK(parsed.value == cert.value);
    CHECK(parsed.witness == cert.witness);
    CHECK(parsed.optimal == cert.optimal);
    CHECK(certificate_is_sound(ls, parsed));
  }
  try {
    io::parse_certificate(io::emit_certificate(ls, tau_exact(ls)), chat());
    FAIL("expected DigestMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DigestMismatch);
  }
}

TEST_CASE("cli gen") {
  auto r = run({"gen", "cnn", "--group", "z4"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("not neutral-sum") != std::string::npos);
  CHECK(run({"gen", "cnn", "--group", "z2xz2"}).code == cli::kInputError);
  CHECK(run({"gen", "pp", "--q", "4"}).code == cli::kInputError);
  CHECK(run({"gen", "bogus"}).code == cli::kInputError);
  CHECK(run({"nonsense"}).code == cli::kInputError);

  const auto a = run({"gen", "cnn", "--group", "z5"});
  const auto b = run({"gen", "cnn", "--group", "z5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto parsed = io::parse_instance(a.out);
  CHECK(parsed.system.num_points() == 22);
  CHECK(parsed.system.num_lines() == 14);

  const auto r1 = run({"gen", "random", "--seed", "7", "--points", "10", "--lines", "8"});
  const auto r2 = run({"gen", "random", "--seed", "7", "--points", "10", "--lines", "8"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("cli solve, check-cert, check, levi") {
  const auto inst = scratch("c34.json");
  REQUIRE(run({"gen", "c34", "-o", inst.string()}).code == 0);

  auto r = run({"solve", inst.string(), "both"});
  CHECK(r.code == 0);
  CHECK(r.out.find("tau 4 optimal") != std::string::npos);
  CHECK(r.out.find("nu2 4 optimal") != std::string::npos);
  const auto tau_cert = scratch("c34.tau.cert.json");
  const auto nu2_cert = scratch("c34.nu2.cert.json");
  REQUIRE(fs::exists(tau_cert));
  REQUIRE(fs::exists(nu2_cert));
  const auto first = io::read_file(tau_cert.string());
  run({"solve", inst.string(), "tau"});
  CHECK(io::read_file(tau_cert.string()) == first);

  CHECK(run({"check-cert", inst.string(), tau_cert.string()}).code == 0);
  CHECK(run({"check-cert", inst.string(), nu2_cert.string()}).code == 0);

  // A witness that is one point short must not verify.
  auto doc = nlohmann::json::parse(first);
  doc["witness"].erase(doc["witness"].begin());
  doc["value"] = doc["witness"].size();
  const auto bad_cert = scratch("bad.cert.json");
  io::write_file(bad_cert.string(), doc.dump());
  r = run({"check-cert", inst.string(), bad_cert.string()});
  CHECK(r.code == cli::kVerificationFailed);
  CHECK(r.out.find("NOT verify") != std::string::npos);

  CHECK(run({"solve", inst.string(), "sideways"}).code == cli::kInputError);

  const auto big = scratch("z7.json");
  REQUIRE(run({"gen", "cnn", "--group", "z7", "-o", big.string()}).code == 0);
  CHECK(run({"solve", big.string(), "tau", "--budget", "3", "--no-certs"}).code == cli::kInconclusive);

  r = run({"check", inst.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("valid", 0) == 0);

  const auto broken = scratch("broken.json");
  io::write_file(broken.string(),
                 R"({"format_version":1,"points":["a","b","c"],"lines":[["a","b","c"],["a","b"]]})");
  r = run({"check", broken.string()});
  CHECK(r.code == cli::kInputError);
  CHECK(r.out.find("invalid") != std::string::npos);
  CHECK(run({"check", scratch("missing.json").string()}).code == cli::kInputError);

  const auto dot = scratch("c34.dot");
  r = run({"levi", inst.string(), "--bound", "--dot", dot.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("girth 6") != std::string::npos);
  CHECK(r.out.find("bound 21") != std::string::npos);
  CHECK(io::read_file(dot.string()).rfind("graph levi {", 0) == 0);
}

TEST_CASE("cli verify") {
  auto r = run({"verify", "bogus"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("unknown theorem id") != std::string::npos);

  r = run({"verify", "prop31", "--n", "3,5"});
  CHECK(r.code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["passed"] == true);
  CHECK(r.out == run({"verify", "prop31", "--n", "3,5"}).out);

  r = run({"verify", "thm32", "--n", "4"});
  CHECK(r.code == cli::kInconclusive);

  r = run({"verify", "eq1", "--seeds", "10"});
  CHECK(r.code == 0);
}
