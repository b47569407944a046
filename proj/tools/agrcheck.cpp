// agrcheck: command-line surface for the exact monomial-scale checkers.
//
//   agrcheck check <file> --property <name> [--bound N] [--char p] [--out f]
//   agrcheck harness --seed-range A..B --profile tiny|small --out <file>
//   agrcheck question --budget N --profile tiny|small --out <file>
//
// Exit codes: 0 = holds / no conflict, 1 = fails with witness / surviving
// conflict, 2 = unknown up to the bound, 64 = invalid input, 74 = I/O
// failure.  Documents go to standard output or the --out file; wall-clock
// chatter goes to standard error so that written reports stay byte-stable.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include "agr/errors.hpp"
#include "agr/harness.hpp"
#include "agr/io.hpp"
#include "agr/rees.hpp"

namespace {

using namespace agr;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

InstanceProfile profile_from_name(const std::string& name) {
  if (name == "tiny") return InstanceProfile::Tiny;
  if (name == "small") return InstanceProfile::Small;
  throw invalid_input("unknown profile \"" + name + "\"");
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const std::size_t sep = text.find("..");
  if (sep == std::string::npos)
    throw invalid_input("seed range must look like BEGIN..END, got \"" + text + "\"");
  try {
    std::size_t used = 0;
    std::uint64_t begin = std::stoull(text.substr(0, sep), &used);
    if (used != sep) throw std::invalid_argument("trailing characters");
    const std::string rest = text.substr(sep + 2);
    std::uint64_t end = std::stoull(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing characters");
    if (begin > end)
      throw invalid_input("seed range is reversed: \"" + text + "\"");
    return {begin, end};
  } catch (const invalid_input&) {
    throw;
  } catch (const std::exception&) {
    throw invalid_input("seed range must look like BEGIN..END, got \"" + text + "\"");
  }
}

int exit_code_for(const Verdict& v) {
  switch (v.status) {
    case Verdict::Status::Holds:
      return 0;
    case Verdict::Status::FailsWithWitness:
      return 1;
    case Verdict::Status::UnknownUpToBound:
      return 2;
  }
  return 64;
}

int cmd_check(const std::string& path, const std::string& property,
              std::int64_t bound_flag, std::int64_t char_flag,
              const std::string& out_path) {
  const Clock::time_point start = Clock::now();
  // An unreadable instance file is invalid input (64), not an I/O failure:
  // 74 is reserved for failures writing results out.
  std::string text_in;
  try {
    text_in = read_text_file(path);
  } catch (const io_failure& e) {
    throw invalid_input(e.what());
  }
  const InstanceDocument doc = parse_instance_document(text_in);

  InstanceBounds bounds = bounds_from_document(doc);
  if (bound_flag >= 0) {
    bounds.search_bound = bound_flag;
    bounds.power_bound = bound_flag;
  }
  const Int characteristic = char_flag >= 0 ? Int(char_flag) : doc.characteristic;

  Verdict verdict;
  if (property == "normal") {
    verdict = is_normal(monoid_from_document(doc));
  } else if (property == "seminormal") {
    verdict = is_seminormal(monoid_from_document(doc), bounds.search_bound);
  } else if (property == "weaklynormal") {
    verdict =
        is_weakly_normal(monoid_from_document(doc), characteristic, bounds.search_bound);
  } else if (property == "ideal-normal") {
    verdict = is_normal_ideal(ideal_from_document(doc), bounds.power_bound);
  } else if (property == "rees-normal") {
    verdict = is_normal(rees_monoid(ideal_from_document(doc), ReesVariant::Plus));
  } else if (property == "gr-reduced") {
    verdict = gr_reduced(GradedModel(ideal_from_document(doc)), bounds.search_bound,
                         bounds.mult_bound);
  } else if (property == "gr-seminormal") {
    verdict = gr_seminormal(GradedModel(ideal_from_document(doc)), characteristic,
                            bounds.search_bound);
  } else {
    throw invalid_input("unknown property \"" + property + "\"");
  }

  VerdictDocument result{kToolVersion, property, verdict, ms_since(start),
                         instance_digest(doc)};
  const std::string text = emit_verdict_document(result);
  std::cout << text;
  if (!out_path.empty()) write_text_file_atomic(out_path, text);
  return exit_code_for(verdict);
}

// The canned corrupted instance: a graded model whose order data is replaced
// by the parity of the exponent.  The implication checks must flag it.
InstanceReport run_fault_injection() {
  AffineMonoid S(IntMat{{Int(2)}, {Int(3)}}, 1);
  MonomialIdeal I(S, IntMat{{Int(2)}, {Int(3)}});
  Instance inst{0, I, Int(0), default_bounds(S)};
  GradedModel corrupted(I, [](const IntVec& a) { return Int(a[0] % 2 == 0 ? 0 : 1); });
  return run_implications(inst, corrupted);
}

int cmd_harness(const std::string& range_text, const std::string& profile_name,
                const std::string& out_path, bool inject_fault) {
  const Clock::time_point start = Clock::now();

  HarnessReport report;
  if (inject_fault) {
    InstanceReport rep = run_fault_injection();
    report.profile = profile_name;
    report.seed_begin = rep.seed;
    report.seed_end = rep.seed + 1;
    report.conflicts = rep.surviving_conflicts();
    report.instances.push_back(std::move(rep));
  } else {
    const auto [begin, end] = parse_seed_range(range_text);
    report = run_harness(begin, end, profile_from_name(profile_name));
  }

  write_text_file_atomic(out_path, emit_harness_report(report));
  std::cerr << "harness: " << report.instances.size() << " instances, "
            << report.conflicts << " surviving conflicts, " << ms_since(start)
            << " ms\n";
  return report.conflicts == 0 ? 0 : 1;
}

int cmd_question(std::uint64_t budget, const std::string& profile_name,
                 const std::string& out_path) {
  const Clock::time_point start = Clock::now();
  QuestionReport report =
      search_question_counterexample(budget, profile_from_name(profile_name));
  write_text_file_atomic(out_path, emit_question_report(report));
  std::cerr << "question: " << report.entries.size() << " instances, "
            << report.probed << " probed, " << report.hits << " hits, "
            << ms_since(start) << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "agrcheck: exact checks for monomial monoid rings, monomial ideals and "
      "their graded rings"};
  app.require_subcommand(1);

  std::string check_path;
  std::string check_property;
  std::string check_out;
  std::int64_t check_bound = -1;
  std::int64_t check_char = -1;
  CLI::App* check =
      app.add_subcommand("check", "Decide one property of one instance file");
  check->add_option("path", check_path, "instance document (JSON)")->required();
  check
      ->add_option("--property", check_property,
                   "one of: normal, seminormal, weaklynormal, ideal-normal, "
                   "gr-reduced, gr-seminormal, rees-normal")
      ->required()
      ->check(CLI::IsMember({"normal", "seminormal", "weaklynormal", "ideal-normal",
                             "gr-reduced", "gr-seminormal", "rees-normal"}));
  check->add_option("--bound", check_bound,
                    "override the search bound (and power bound) from the document");
  check->add_option("--char", check_char,
                    "override the characteristic from the document");
  check->add_option("--out", check_out,
                    "also write the verdict document to this file");

  std::string harness_range;
  std::string harness_profile = "tiny";
  std::string harness_out;
  bool harness_fault = false;
  CLI::App* harness = app.add_subcommand(
      "harness", "Cross-check the graded-to-base implications over a seed range");
  harness->add_option("--seed-range", harness_range, "BEGIN..END, END exclusive")
      ->required();
  harness->add_option("--profile", harness_profile, "tiny or small")
      ->check(CLI::IsMember({"tiny", "small"}));
  harness->add_option("--out", harness_out, "report file")->required();
  harness
      ->add_flag("--inject-fault", harness_fault,
                 "replace the run with one instance whose graded order data is "
                 "deliberately corrupted (expects exit 1)")
      ->group("");

  std::uint64_t question_budget = 0;
  std::string question_profile = "tiny";
  std::string question_out;
  CLI::App* question = app.add_subcommand(
      "question",
      "Probe non-normal bases for an ideal that stops being normal after "
      "adjoining a free variable");
  question->add_option("--budget", question_budget, "number of seeds to draw")
      ->required();
  question->add_option("--profile", question_profile, "tiny or small")
      ->check(CLI::IsMember({"tiny", "small"}));
  question->add_option("--out", question_out, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (check->parsed())
      return cmd_check(check_path, check_property, check_bound, check_char, check_out);
    if (harness->parsed())
      return cmd_harness(harness_range, harness_profile, harness_out, harness_fault);
    return cmd_question(question_budget, question_profile, question_out);
  } catch (const io_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 74;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
}
