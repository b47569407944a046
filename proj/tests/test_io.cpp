#include <doctest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "agr/errors.hpp"
#include "agr/io.hpp"
#include "agr/rees.hpp"

using namespace agr;

namespace {

namespace fs = std::filesystem;

IntVec vec(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat m;
  for (const auto& r : rows) m.push_back(vec(r));
  return m;
}

InstanceDocument doc_numerical_semigroup() {
  InstanceDocument doc;
  doc.ambient_dim = 1;
  doc.monoid_generators = mat({{2}, {3}});
  return doc;
}

InstanceDocument doc_plane_squares() {
  InstanceDocument doc;
  doc.ambient_dim = 2;
  doc.monoid_generators = mat({{1, 0}, {0, 1}});
  doc.ideal_generators = mat({{2, 0}, {0, 2}});
  doc.bounds = InstanceBounds{Int(12), Int(8), Int(6)};
  return doc;
}

bool same_verdict(const Verdict& a, const Verdict& b) {
  return a.status == b.status && a.certificate == b.certificate && a.bound == b.bound;
}

// A scratch directory per process; removed by the last test case below.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("agr_io_test_" + std::to_string(static_cast<unsigned long>(getpid())));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string cli_path() {
  if (const char* env = std::getenv("AGRCHECK_BIN")) return env;
  return "tools/agrcheck";  // running ./tests/agr_tests from the build tree
}

bool cli_available() { return fs::exists(cli_path()); }

// Runs the CLI through the shell and returns its exit code (-1 if it died
// without exiting normally).
int run_cli(const std::string& args, const std::string& stdout_path = "") {
  std::string cmd = cli_path() + " " + args;
  if (!stdout_path.empty()) cmd += " > " + stdout_path;
  cmd += " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("instance documents round-trip through canonical JSON") {
  for (const InstanceDocument& doc :
       {doc_numerical_semigroup(), doc_plane_squares()}) {
    const std::string text = emit_instance_document(doc);
    CHECK(text.back() == '\n');
    const InstanceDocument back = parse_instance_document(text);
    CHECK(back == doc);
    CHECK(emit_instance_document(back) == text);
    CHECK(instance_digest(back) == instance_digest(doc));
  }

  // The digest pins the canonical byte layout: 16 lowercase hex characters,
  // stable across runs and processes.
  CHECK(instance_digest(doc_numerical_semigroup()) == "25d88bc0546a5d6a");
  CHECK(instance_digest(doc_numerical_semigroup()) !=
        instance_digest(doc_plane_squares()));

  InstanceDocument shifted = doc_numerical_semigroup();
  shifted.characteristic = 2;
  CHECK(instance_digest(shifted) != instance_digest(doc_numerical_semigroup()));
}

TEST_CASE("instance documents parse integers given as numbers or strings") {
  const InstanceDocument a = parse_instance_document(
      R"({"ambient_dim": 1, "monoid_generators": [[2], [3]]})");
  const InstanceDocument b = parse_instance_document(
      R"({"ambient_dim": "1", "monoid_generators": [["2"], [3]], "characteristic": 0})");
  CHECK(a == b);
  CHECK(a.characteristic == 0);
  CHECK(!a.ideal_generators.has_value());
  CHECK(!a.bounds.has_value());

  // Field order in the file does not matter.
  const InstanceDocument c = parse_instance_document(
      R"({"monoid_generators": [[2], [3]], "ambient_dim": 1})");
  CHECK(c == a);

  // Coordinates beyond 53 bits survive via the string form.
  InstanceDocument big;
  big.ambient_dim = 1;
  big.monoid_generators = IntMat{{Int("90071992547409931")}, {Int(3)}};
  const std::string text = emit_instance_document(big);
  CHECK(text.find("\"90071992547409931\"") != std::string::npos);
  CHECK(parse_instance_document(text) == big);
}

TEST_CASE("instance documents reject schema violations") {
  auto reject = [](const std::string& text) {
    CHECK_THROWS_AS(parse_instance_document(text), invalid_input);
  };
  reject("{");                                                        // malformed
  reject(R"({"monoid_generators": [[2]]})");                          // missing dim
  reject(R"({"ambient_dim": 1})");                                    // missing gens
  reject(R"({"ambient_dim": 0, "monoid_generators": []})");           // dim 0
  reject(R"({"ambient_dim": 1, "monoid_generators": [[2]], "x": 1})");  // unknown
  reject(R"({"ambient_dim": 2, "monoid_generators": [[1, 0], [1]]})");  // row shape
  reject(R"({"ambient_dim": 1, "monoid_generators": [[1.5]]})");      // non-integer
  reject(R"({"ambient_dim": 1, "monoid_generators": [["2x"]]})");     // bad string
  reject(
      R"({"ambient_dim": 1, "monoid_generators": [[2]], "characteristic": 4})");
  reject(
      R"({"ambient_dim": 1, "monoid_generators": [[2]], "bounds": {"B": 1, "K": 1}})");
  reject(
      R"({"ambient_dim": 1, "monoid_generators": [[2]], "bounds": {"B": 1, "K": 1, "N_power": 1, "z": 1}})");
  reject(
      R"({"ambient_dim": 1, "monoid_generators": [[2]], "bounds": {"B": -1, "K": 1, "N_power": 1}})");

  // Structurally fine but not a pointed monoid: rejected at materialization.
  CHECK_THROWS_AS(parse_instance_document(
                      R"({"ambient_dim": 1, "monoid_generators": [[1], [-1]]})"),
                  unsupported_input);
}

TEST_CASE("materialized objects and bounds match the document") {
  const InstanceDocument doc = doc_plane_squares();
  const AffineMonoid S = monoid_from_document(doc);
  CHECK(S.ambient_dim() == 2);
  // The ideal sorts its generators; compare as sets.
  const MonomialIdeal I = ideal_from_document(doc);
  IntMat expected = *doc.ideal_generators;
  std::sort(expected.begin(), expected.end());
  IntMat got = I.generators();
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
  CHECK(bounds_from_document(doc) == *doc.bounds);

  InstanceDocument bare = doc_numerical_semigroup();
  CHECK_THROWS_AS(ideal_from_document(bare), invalid_input);
  CHECK(bounds_from_document(bare) ==
        default_bounds(monoid_from_document(bare)));  // B = 4 * weight(3)
  CHECK(bounds_from_document(bare).search_bound == 12);
}

TEST_CASE("verdict documents round-trip every status and witness kind") {
  std::vector<Verdict> verdicts;
  verdicts.push_back(Verdict::holds());
  verdicts.push_back(Verdict::unknown(Int(12)));
  verdicts.push_back(Verdict::unknown((Int(1) << 61)));
  verdicts.push_back(
      Verdict::fails(Certificate{Certificate::Kind::NotNormal, vec({0, 1}), {}, 0}));
  verdicts.push_back(Verdict::fails(
      Certificate{Certificate::Kind::NotSeminormal, vec({2}), {}, 0}));
  verdicts.push_back(Verdict::fails(
      Certificate{Certificate::Kind::NotWeaklyNormal, vec({1}), {}, 3}));
  verdicts.push_back(Verdict::fails(
      Certificate{Certificate::Kind::NotIntegrallyClosedPower, vec({1, 1}), {}, 2}));
  verdicts.push_back(
      Verdict::fails(Certificate{Certificate::Kind::GrNilpotent, vec({3}), {}, 2}));
  verdicts.push_back(Verdict::fails(
      Certificate{Certificate::Kind::GrNonAdditive, vec({1, 2}), vec({2, 1}), 0}));

  for (const Verdict& v : verdicts) {
    VerdictDocument doc{kToolVersion, "normal", v, 1.25, "25d88bc0546a5d6a"};
    const std::string text = emit_verdict_document(doc);
    const VerdictDocument back = parse_verdict_document(text);
    CHECK(back.tool_version == doc.tool_version);
    CHECK(back.property == doc.property);
    CHECK(back.input_digest == doc.input_digest);
    CHECK(back.total_ms == doctest::Approx(doc.total_ms));
    CHECK(same_verdict(back.verdict, doc.verdict));
    CHECK(emit_verdict_document(back) == text);
  }

  // 53-bit boundary: the largest exact number stays a number, one past it
  // becomes a decimal string.
  VerdictDocument at{kToolVersion, "normal", Verdict::unknown((Int(1) << 53) - 1),
                     0.0, "0"};
  CHECK(emit_verdict_document(at).find("\"bound\":9007199254740991") !=
        std::string::npos);
  VerdictDocument past{kToolVersion, "normal", Verdict::unknown(Int(1) << 53), 0.0,
                       "0"};
  CHECK(emit_verdict_document(past).find("\"bound\":\"9007199254740992\"") !=
        std::string::npos);
}

TEST_CASE("verdict documents reject inconsistent shapes") {
  auto reject = [](const std::string& text) {
    CHECK_THROWS_AS(parse_verdict_document(text), invalid_input);
  };
  const std::string head =
      R"({"tool_version": "t", "property": "normal", )";
  const std::string tail = R"(, "timings": {"total_ms": 1}, "input_digest": "d"})";
  reject(head + R"("status": "holds", "bound": 3)" + tail);
  reject(head + R"("status": "fails_with_witness")" + tail);
  reject(head + R"("status": "unknown_up_to_bound")" + tail);
  reject(head + R"("status": "maybe")" + tail);
  reject(head +
         R"("status": "fails_with_witness", "witness": {"kind": "not_normal", "a": [1], "n": 2})" +
         tail);
  reject(head +
         R"("status": "fails_with_witness", "witness": {"kind": "gr_non_additive", "a": [1]})" +
         tail);
  reject(head +
         R"("status": "fails_with_witness", "witness": {"kind": "nope", "a": [1]})" +
         tail);
  reject(head + R"("status": "holds", "extra": 1)" + tail);

  CHECK_THROWS_AS(certificate_kind_from_name("nope"), invalid_input);
  for (Certificate::Kind kind :
       {Certificate::Kind::NotNormal, Certificate::Kind::NotSeminormal,
        Certificate::Kind::NotWeaklyNormal,
        Certificate::Kind::NotIntegrallyClosedPower, Certificate::Kind::GrNilpotent,
        Certificate::Kind::GrNonAdditive})
    CHECK(certificate_kind_from_name(certificate_kind_name(kind)) == kind);
}

TEST_CASE("harness reports round-trip byte-identically") {
  const HarnessReport report = run_harness(0, 6, InstanceProfile::Tiny);
  const std::string text = emit_harness_report(report);
  const HarnessReport back = parse_harness_report(text);
  CHECK(emit_harness_report(back) == text);
  CHECK(back.profile == report.profile);
  CHECK(back.seed_begin == report.seed_begin);
  CHECK(back.seed_end == report.seed_end);
  CHECK(back.conflicts == report.conflicts);
  REQUIRE(back.instances.size() == report.instances.size());
  for (std::size_t i = 0; i < back.instances.size(); ++i) {
    CHECK(back.instances[i].seed == report.instances[i].seed);
    CHECK(back.instances[i].checks.size() == report.instances[i].checks.size());
    CHECK(back.instances[i].verdicts.size() == report.instances[i].verdicts.size());
  }

  // A conflict report (escalation lines, vacuous and conflict outcomes)
  // round-trips too.
  AffineMonoid S(mat({{2}, {3}}), 1);
  MonomialIdeal I(S, mat({{2}, {3}}));
  Instance inst{0, I, Int(0), default_bounds(S)};
  GradedModel corrupted(I, [](const IntVec& a) { return Int(a[0] % 2 == 0 ? 0 : 1); });
  HarnessReport fault;
  fault.profile = "tiny";
  fault.seed_begin = 0;
  fault.seed_end = 1;
  fault.instances.push_back(run_implications(inst, corrupted));
  fault.conflicts = fault.instances.front().surviving_conflicts();
  const std::string fault_text = emit_harness_report(fault);
  const HarnessReport fault_back = parse_harness_report(fault_text);
  CHECK(emit_harness_report(fault_back) == fault_text);
  CHECK(fault_back.conflicts == 2);
  REQUIRE(!fault_back.instances.empty());
  CHECK(!fault_back.instances.front().checks.front().escalation.empty());

  CHECK_THROWS_AS(parse_harness_report("{}"), invalid_input);
  CHECK_THROWS_AS(parse_harness_report(text + " trailing"), invalid_input);
}

TEST_CASE("question reports round-trip byte-identically") {
  const QuestionReport report =
      search_question_counterexample(12, InstanceProfile::Tiny);
  const std::string text = emit_question_report(report);
  const QuestionReport back = parse_question_report(text);
  CHECK(emit_question_report(back) == text);
  CHECK(back.budget == 12);
  CHECK(back.skipped_normal_base == report.skipped_normal_base);
  CHECK(back.skipped_ideal_witness == report.skipped_ideal_witness);
  CHECK(back.probed == report.probed);
  CHECK(back.hits == report.hits);
  REQUIRE(back.entries.size() == report.entries.size());
  for (std::size_t i = 0; i < back.entries.size(); ++i) {
    CHECK(back.entries[i].seed == report.entries[i].seed);
    CHECK(back.entries[i].base_is_normal == report.entries[i].base_is_normal);
    CHECK(back.entries[i].ideal_verdict.has_value() ==
          report.entries[i].ideal_verdict.has_value());
  }
  CHECK_THROWS_AS(parse_question_report("[]"), invalid_input);
}

TEST_CASE("atomic file writes land complete or not at all") {
  const fs::path target = scratch_dir() / "report.json";
  write_text_file_atomic(target.string(), "first\n");
  CHECK(read_text_file(target.string()) == "first\n");
  write_text_file_atomic(target.string(), "second\n");
  CHECK(read_text_file(target.string()) == "second\n");

  // No temp file is left behind next to the target.
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(scratch_dir())) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);

  CHECK_THROWS_AS(read_text_file((scratch_dir() / "absent.json").string()),
                  io_failure);
  CHECK_THROWS_AS(
      write_text_file_atomic((scratch_dir() / "no/such/dir/x.json").string(), "x"),
      io_failure);
}

TEST_CASE("command-line tool: exit codes, documents and determinism") {
  if (!cli_available()) {
    MESSAGE("agrcheck binary not found at ", cli_path(), "; skipping CLI cases");
    return;
  }
  const fs::path dir = scratch_dir();
  const std::string semigroup = (dir / "semigroup.json").string();
  const std::string plane = (dir / "plane.json").string();
  const std::string squares = (dir / "squares.json").string();
  const std::string garbage = (dir / "garbage.json").string();
  write_text_file_atomic(semigroup, emit_instance_document(doc_numerical_semigroup()));
  write_text_file_atomic(garbage, "not json\n");

  InstanceDocument plane_doc;
  plane_doc.ambient_dim = 2;
  plane_doc.monoid_generators = mat({{1, 0}, {0, 1}});
  write_text_file_atomic(plane, emit_instance_document(plane_doc));
  write_text_file_atomic(squares, emit_instance_document(doc_plane_squares()));

  const std::string out = (dir / "stdout.json").string();

  // Exit code mirrors the verdict status.
  CHECK(run_cli("check " + plane + " --property normal", out) == 0);
  CHECK(run_cli("check " + semigroup + " --property normal", out) == 1);
  VerdictDocument fails = parse_verdict_document(read_text_file(out));
  CHECK(fails.property == "normal");
  CHECK(fails.verdict.is_fails());
  CHECK(fails.verdict.certificate->kind == Certificate::Kind::NotNormal);
  CHECK(fails.verdict.certificate->vector_a == vec({1}));
  CHECK(fails.input_digest == instance_digest(doc_numerical_semigroup()));

  CHECK(run_cli("check " + semigroup + " --property seminormal --bound 12", out) == 1);
  CHECK(run_cli("check " + squares + " --property ideal-normal", out) == 1);
  VerdictDocument power = parse_verdict_document(read_text_file(out));
  CHECK(power.verdict.certificate->kind ==
        Certificate::Kind::NotIntegrallyClosedPower);

  // Bounded search with no witness: exit 2.
  InstanceDocument mixed;
  mixed.ambient_dim = 2;
  mixed.monoid_generators = mat({{1, 0}, {1, 1}, {0, 2}});
  const std::string mixed_path = (dir / "mixed.json").string();
  write_text_file_atomic(mixed_path, emit_instance_document(mixed));
  CHECK(run_cli("check " + mixed_path + " --property seminormal --bound 12", out) == 2);

  // Invalid inputs: exit 64.
  CHECK(run_cli("check " + garbage + " --property normal") == 64);
  CHECK(run_cli("check " + (dir / "missing.json").string() + " --property normal") ==
        64);
  CHECK(run_cli("check " + plane + " --property no-such-property") == 64);
  CHECK(run_cli("check " + plane + " --property gr-reduced") == 64);  // no ideal
  CHECK(run_cli("harness --seed-range 9..3 --profile tiny --out " +
                (dir / "r.json").string()) == 64);

  // Harness and question reports: written atomically, deterministic bytes.
  const std::string r1 = (dir / "h1.json").string();
  const std::string r2 = (dir / "h2.json").string();
  CHECK(run_cli("harness --seed-range 0..4 --profile tiny --out " + r1) == 0);
  CHECK(run_cli("harness --seed-range 0..4 --profile tiny --out " + r2) == 0);
  CHECK(read_text_file(r1) == read_text_file(r2));
  const HarnessReport hr = parse_harness_report(read_text_file(r1));
  CHECK(hr.instances.size() == 4);
  CHECK(hr.conflicts == 0);

  const std::string q1 = (dir / "q1.json").string();
  CHECK(run_cli("question --budget 6 --profile tiny --out " + q1) == 0);
  const QuestionReport qr = parse_question_report(read_text_file(q1));
  CHECK(qr.budget == 6);
  CHECK(qr.entries.size() == 6);

  // The corrupted-order scenario must be caught and reported as a failure.
  const std::string rf = (dir / "fault.json").string();
  CHECK(run_cli("harness --seed-range 0..1 --profile tiny --inject-fault --out " +
                rf) == 1);
  const HarnessReport fr = parse_harness_report(read_text_file(rf));
  CHECK(fr.conflicts == 2);

  // Unwritable output: exit 74.
  CHECK(run_cli("question --budget 1 --profile tiny --out /no/such/dir/q.json") ==
        74);

  fs::remove_all(dir);
}
