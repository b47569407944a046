#include "agr/io.hpp"

#include <json.hpp>
#include <unistd.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "agr/errors.hpp"

namespace agr {

namespace {

using Json = nlohmann::ordered_json;

// Largest magnitude a JSON number carries losslessly (IEEE double mantissa).
const Int kMaxJsonNumber = (Int(1) << 53) - 1;

[[noreturn]] void bad(const std::string& context, const std::string& what) {
  throw invalid_input(context + ": " + what);
}

bool is_prime_small(const Int& p) {
  if (p < 2) return false;
  for (Int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices.

Json int_to_json(const Int& x) {
  if (x >= -kMaxJsonNumber && x <= kMaxJsonNumber)
    return Json(x.convert_to<std::int64_t>());
  return Json(x.str());
}

Int int_from_json(const Json& j, const std::string& context) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) bad(context, "not a decimal integer: \"" + s + "\"");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        bad(context, "not a decimal integer: \"" + s + "\"");
    return Int(s);
  }
  bad(context, "expected an integer (JSON number or decimal string)");
}

std::uint64_t uint64_from_json(const Json& j, const std::string& context) {
  Int x = int_from_json(j, context);
  if (x < 0 || x > Int(std::numeric_limits<std::uint64_t>::max()))
    bad(context, "out of range for an unsigned 64-bit value");
  return x.convert_to<std::uint64_t>();
}

std::size_t count_from_json(const Json& j, const std::string& context) {
  return static_cast<std::size_t>(uint64_from_json(j, context));
}

bool bool_from_json(const Json& j, const std::string& context) {
  if (!j.is_boolean()) bad(context, "expected a boolean");
  return j.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& context) {
  if (!j.is_string()) bad(context, "expected a string");
  return j.get<std::string>();
}

Json vec_to_json(const IntVec& v) {
  Json j = Json::array();
  for (const Int& x : v) j.push_back(int_to_json(x));
  return j;
}

IntVec vec_from_json(const Json& j, const std::string& context) {
  if (!j.is_array()) bad(context, "expected an array of integers");
  IntVec v;
  v.reserve(j.size());
  for (const Json& x : j) v.push_back(int_from_json(x, context));
  return v;
}

Json mat_to_json(const IntMat& m) {
  Json j = Json::array();
  for (const IntVec& row : m) j.push_back(vec_to_json(row));
  return j;
}

IntMat mat_from_json(const Json& j, const std::string& context, std::size_t dim) {
  if (!j.is_array()) bad(context, "expected an array of integer vectors");
  IntMat m;
  m.reserve(j.size());
  for (const Json& row : j) {
    IntVec v = vec_from_json(row, context);
    if (v.size() != dim)
      bad(context, "vector has " + std::to_string(v.size()) +
                       " entries, expected " + std::to_string(dim));
    m.push_back(std::move(v));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Schema plumbing.

void require_object(const Json& j, const std::string& context) {
  if (!j.is_object()) bad(context, "expected a JSON object");
}

void require_fields(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& context) {
  require_object(j, context);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* name : allowed)
      if (it.key() == name) known = true;
    if (!known) bad(context, "unknown field \"" + it.key() + "\"");
  }
}

const Json& require_field(const Json& j, const char* name,
                          const std::string& context) {
  if (!j.contains(name)) bad(context, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Json parse_json(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    bad(context, std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Bounds.

Json bounds_to_json(const InstanceBounds& b) {
  Json j = Json::object();
  j["B"] = int_to_json(b.search_bound);
  j["K"] = int_to_json(b.mult_bound);
  j["N_power"] = int_to_json(b.power_bound);
  return j;
}

InstanceBounds bounds_from_json(const Json& j, const std::string& context) {
  require_fields(j, {"B", "K", "N_power"}, context);
  InstanceBounds b{int_from_json(require_field(j, "B", context), context + ": B"),
                   int_from_json(require_field(j, "K", context), context + ": K"),
                   int_from_json(require_field(j, "N_power", context),
                                 context + ": N_power")};
  if (b.search_bound < 0 || b.mult_bound < 0 || b.power_bound < 0)
    bad(context, "bounds must be nonnegative");
  return b;
}

// ---------------------------------------------------------------------------
// Certificates and verdicts.

bool kind_uses_scalar(Certificate::Kind kind) {
  return kind == Certificate::Kind::NotWeaklyNormal ||
         kind == Certificate::Kind::NotIntegrallyClosedPower ||
         kind == Certificate::Kind::GrNilpotent;
}

Json certificate_to_json(const Certificate& c) {
  Json j = Json::object();
  j["kind"] = certificate_kind_name(c.kind);
  j["a"] = vec_to_json(c.vector_a);
  if (c.kind == Certificate::Kind::GrNonAdditive) j["b"] = vec_to_json(c.vector_b);
  if (kind_uses_scalar(c.kind)) j["n"] = int_to_json(c.scalar_n);
  return j;
}

Certificate certificate_from_json(const Json& j, const std::string& context) {
  require_fields(j, {"kind", "a", "b", "n"}, context);
  Certificate c;
  c.kind = certificate_kind_from_name(
      string_from_json(require_field(j, "kind", context), context + ": kind"));
  c.vector_a = vec_from_json(require_field(j, "a", context), context + ": a");
  if (c.kind == Certificate::Kind::GrNonAdditive) {
    c.vector_b = vec_from_json(require_field(j, "b", context), context + ": b");
  } else if (j.contains("b")) {
    bad(context, "field \"b\" is only valid for gr_non_additive witnesses");
  }
  if (kind_uses_scalar(c.kind)) {
    c.scalar_n = int_from_json(require_field(j, "n", context), context + ": n");
  } else if (j.contains("n")) {
    bad(context, "field \"n\" is not valid for this witness kind");
  }
  return c;
}

const char* status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Holds:
      return "holds";
    case Verdict::Status::FailsWithWitness:
      return "fails_with_witness";
    case Verdict::Status::UnknownUpToBound:
      return "unknown_up_to_bound";
  }
  throw invalid_state("status_name: unreachable");
}

// Writes the status/witness/bound triple into an existing object, so verdict
// documents and report records share one layout.
void append_verdict_fields(Json& j, const Verdict& v) {
  j["status"] = status_name(v.status);
  if (v.certificate) j["witness"] = certificate_to_json(*v.certificate);
  if (v.bound) j["bound"] = int_to_json(*v.bound);
}

Verdict verdict_from_fields(const Json& j, const std::string& context) {
  const std::string status =
      string_from_json(require_field(j, "status", context), context + ": status");
  if (status == "holds") {
    if (j.contains("witness") || j.contains("bound"))
      bad(context, "\"holds\" carries no witness and no bound");
    return Verdict::holds();
  }
  if (status == "fails_with_witness") {
    if (j.contains("bound")) bad(context, "a witnessed failure carries no bound");
    return Verdict::fails(certificate_from_json(
        require_field(j, "witness", context), context + ": witness"));
  }
  if (status == "unknown_up_to_bound") {
    if (j.contains("witness")) bad(context, "an unknown verdict carries no witness");
    return Verdict::unknown(
        int_from_json(require_field(j, "bound", context), context + ": bound"));
  }
  bad(context, "unknown status \"" + status + "\"");
}

Json verdict_to_json(const Verdict& v) {
  Json j = Json::object();
  append_verdict_fields(j, v);
  return j;
}

Verdict verdict_from_json(const Json& j, const std::string& context) {
  require_fields(j, {"status", "witness", "bound"}, context);
  return verdict_from_fields(j, context);
}

// ---------------------------------------------------------------------------
// Harness report pieces.

Json record_to_json(const VerdictRecord& r) {
  Json j = Json::object();
  j["target"] = r.target;
  j["property"] = r.property;
  append_verdict_fields(j, r.verdict);
  return j;
}

VerdictRecord record_from_json(const Json& j, const std::string& context) {
  require_fields(j, {"target", "property", "status", "witness", "bound"}, context);
  VerdictRecord r;
  r.target = string_from_json(require_field(j, "target", context), context + ": target");
  r.property =
      string_from_json(require_field(j, "property", context), context + ": property");
  r.verdict = verdict_from_fields(j, context);
  return r;
}

std::vector<VerdictRecord> records_from_json(const Json& j,
                                             const std::string& context) {
  if (!j.is_array()) bad(context, "expected an array of verdict records");
  std::vector<VerdictRecord> out;
  out.reserve(j.size());
  for (const Json& r : j) out.push_back(record_from_json(r, context));
  return out;
}

Json records_to_json(const std::vector<VerdictRecord>& records) {
  Json j = Json::array();
  for (const VerdictRecord& r : records) j.push_back(record_to_json(r));
  return j;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Vacuous:
      return "vacuous";
    case Outcome::Confirmed:
      return "confirmed";
    case Outcome::Conflict:
      return "conflict";
  }
  throw invalid_state("outcome_name: unreachable");
}

Outcome outcome_from_name(const std::string& name, const std::string& context) {
  if (name == "vacuous") return Outcome::Vacuous;
  if (name == "confirmed") return Outcome::Confirmed;
  if (name == "conflict") return Outcome::Conflict;
  bad(context, "unknown outcome \"" + name + "\"");
}

Json implication_to_json(const ImplicationResult& c) {
  Json j = Json::object();
  j["check"] = c.check;
  j["outcome"] = outcome_name(c.outcome);
  j["hypothesis"] = records_to_json(c.hypothesis);
  j["conclusion"] = records_to_json(c.conclusion);
  Json esc = Json::array();
  for (const std::string& line : c.escalation) esc.push_back(line);
  j["escalation"] = esc;
  return j;
}

ImplicationResult implication_from_json(const Json& j, const std::string& context) {
  require_fields(j, {"check", "outcome", "hypothesis", "conclusion", "escalation"},
                 context);
  ImplicationResult c;
  c.check = string_from_json(require_field(j, "check", context), context + ": check");
  c.outcome = outcome_from_name(
      string_from_json(require_field(j, "outcome", context), context + ": outcome"),
      context + ": outcome");
  c.hypothesis = records_from_json(require_field(j, "hypothesis", context),
                                   context + ": hypothesis");
  c.conclusion = records_from_json(require_field(j, "conclusion", context),
                                   context + ": conclusion");
  const Json& esc = require_field(j, "escalation", context);
  if (!esc.is_array()) bad(context, "escalation: expected an array of strings");
  for (const Json& line : esc)
    c.escalation.push_back(string_from_json(line, context + ": escalation"));
  return c;
}

Json instance_report_to_json(const InstanceReport& rep) {
  Json j = Json::object();
  j["seed"] = int_to_json(Int(rep.seed));
  j["characteristic"] = int_to_json(rep.characteristic);
  j["bounds"] = bounds_to_json(rep.bounds);
  j["verdicts"] = records_to_json(rep.verdicts);
  Json checks = Json::array();
  for (const ImplicationResult& c : rep.checks) checks.push_back(implication_to_json(c));
  j["checks"] = checks;
  return j;
}

InstanceReport instance_report_from_json(const Json& j, const std::string& context) {
  require_fields(j, {"seed", "characteristic", "bounds", "verdicts", "checks"},
                 context);
  InstanceReport rep;
  rep.seed = uint64_from_json(require_field(j, "seed", context), context + ": seed");
  rep.characteristic = int_from_json(require_field(j, "characteristic", context),
                                     context + ": characteristic");
  rep.bounds =
      bounds_from_json(require_field(j, "bounds", context), context + ": bounds");
  rep.verdicts = records_from_json(require_field(j, "verdicts", context),
                                   context + ": verdicts");
  const Json& checks = require_field(j, "checks", context);
  if (!checks.is_array()) bad(context, "checks: expected an array");
  for (const Json& c : checks)
    rep.checks.push_back(implication_from_json(c, context + ": checks"));
  return rep;
}

// ---------------------------------------------------------------------------
// Question report pieces.

Json question_entry_to_json(const QuestionEntry& e) {
  Json j = Json::object();
  j["seed"] = int_to_json(Int(e.seed));
  j["base_is_normal"] = e.base_is_normal;
  if (e.ideal_verdict) j["ideal_verdict"] = verdict_to_json(*e.ideal_verdict);
  if (e.extended_verdict)
    j["extended_verdict"] = verdict_to_json(*e.extended_verdict);
  j["probed"] = e.probed;
  j["hit"] = e.hit;
  return j;
}

QuestionEntry question_entry_from_json(const Json& j, const std::string& context) {
  require_fields(j,
                 {"seed", "base_is_normal", "ideal_verdict", "extended_verdict",
                  "probed", "hit"},
                 context);
  QuestionEntry e;
  e.seed = uint64_from_json(require_field(j, "seed", context), context + ": seed");
  e.base_is_normal = bool_from_json(require_field(j, "base_is_normal", context),
                                    context + ": base_is_normal");
  if (j.contains("ideal_verdict"))
    e.ideal_verdict =
        verdict_from_json(j.at("ideal_verdict"), context + ": ideal_verdict");
  if (j.contains("extended_verdict"))
    e.extended_verdict =
        verdict_from_json(j.at("extended_verdict"), context + ": extended_verdict");
  e.probed = bool_from_json(require_field(j, "probed", context), context + ": probed");
  e.hit = bool_from_json(require_field(j, "hit", context), context + ": hit");
  return e;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface.

std::string certificate_kind_name(Certificate::Kind kind) {
  switch (kind) {
    case Certificate::Kind::NotNormal:
      return "not_normal";
    case Certificate::Kind::NotSeminormal:
      return "not_seminormal";
    case Certificate::Kind::NotWeaklyNormal:
      return "not_weakly_normal";
    case Certificate::Kind::NotIntegrallyClosedPower:
      return "not_integrally_closed_power";
    case Certificate::Kind::GrNilpotent:
      return "gr_nilpotent";
    case Certificate::Kind::GrNonAdditive:
      return "gr_non_additive";
  }
  throw invalid_state("certificate_kind_name: unreachable");
}

Certificate::Kind certificate_kind_from_name(const std::string& name) {
  if (name == "not_normal") return Certificate::Kind::NotNormal;
  if (name == "not_seminormal") return Certificate::Kind::NotSeminormal;
  if (name == "not_weakly_normal") return Certificate::Kind::NotWeaklyNormal;
  if (name == "not_integrally_closed_power")
    return Certificate::Kind::NotIntegrallyClosedPower;
  if (name == "gr_nilpotent") return Certificate::Kind::GrNilpotent;
  if (name == "gr_non_additive") return Certificate::Kind::GrNonAdditive;
  throw invalid_input("unknown certificate kind \"" + name + "\"");
}

InstanceDocument parse_instance_document(const std::string& text) {
  const std::string context = "instance document";
  Json j = parse_json(text, context);
  require_fields(
      j, {"ambient_dim", "monoid_generators", "ideal_generators", "characteristic",
          "bounds"},
      context);

  InstanceDocument doc;
  Int dim = int_from_json(require_field(j, "ambient_dim", context),
                          context + ": ambient_dim");
  if (dim < 1 || dim > 64) bad(context, "ambient_dim must be between 1 and 64");
  doc.ambient_dim = dim.convert_to<std::size_t>();

  doc.monoid_generators =
      mat_from_json(require_field(j, "monoid_generators", context),
                    context + ": monoid_generators", doc.ambient_dim);
  if (j.contains("ideal_generators"))
    doc.ideal_generators = mat_from_json(
        j.at("ideal_generators"), context + ": ideal_generators", doc.ambient_dim);
  if (j.contains("characteristic")) {
    doc.characteristic =
        int_from_json(j.at("characteristic"), context + ": characteristic");
    if (doc.characteristic != 0 && !is_prime_small(doc.characteristic))
      bad(context, "characteristic must be 0 or a prime");
  }
  if (j.contains("bounds"))
    doc.bounds = bounds_from_json(j.at("bounds"), context + ": bounds");

  // The document contract is that it describes constructible objects, so
  // materialize them once here; the constructors carry the real validation.
  monoid_from_document(doc);
  if (doc.ideal_generators) ideal_from_document(doc);
  return doc;
}

std::string emit_instance_document(const InstanceDocument& doc) {
  Json j = Json::object();
  j["ambient_dim"] = int_to_json(Int(doc.ambient_dim));
  j["monoid_generators"] = mat_to_json(doc.monoid_generators);
  if (doc.ideal_generators) j["ideal_generators"] = mat_to_json(*doc.ideal_generators);
  j["characteristic"] = int_to_json(doc.characteristic);
  if (doc.bounds) j["bounds"] = bounds_to_json(*doc.bounds);
  return j.dump() + "\n";
}

std::string instance_digest(const InstanceDocument& doc) {
  return fnv1a64_hex(emit_instance_document(doc));
}

AffineMonoid monoid_from_document(const InstanceDocument& doc) {
  return AffineMonoid(doc.monoid_generators, doc.ambient_dim);
}

MonomialIdeal ideal_from_document(const InstanceDocument& doc) {
  if (!doc.ideal_generators)
    throw invalid_input("instance document: ideal_generators is required here");
  return MonomialIdeal(monoid_from_document(doc), *doc.ideal_generators);
}

InstanceBounds bounds_from_document(const InstanceDocument& doc) {
  if (doc.bounds) return *doc.bounds;
  return default_bounds(monoid_from_document(doc));
}

std::string emit_verdict_document(const VerdictDocument& doc) {
  Json j = Json::object();
  j["tool_version"] = doc.tool_version;
  j["property"] = doc.property;
  append_verdict_fields(j, doc.verdict);
  Json timings = Json::object();
  timings["total_ms"] = doc.total_ms;
  j["timings"] = timings;
  j["input_digest"] = doc.input_digest;
  return j.dump() + "\n";
}

VerdictDocument parse_verdict_document(const std::string& text) {
  const std::string context = "verdict document";
  Json j = parse_json(text, context);
  require_fields(j,
                 {"tool_version", "property", "status", "witness", "bound",
                  "timings", "input_digest"},
                 context);
  VerdictDocument doc;
  doc.tool_version = string_from_json(require_field(j, "tool_version", context),
                                      context + ": tool_version");
  doc.property =
      string_from_json(require_field(j, "property", context), context + ": property");
  doc.verdict = verdict_from_fields(j, context);
  const Json& timings = require_field(j, "timings", context);
  require_fields(timings, {"total_ms"}, context + ": timings");
  const Json& ms = require_field(timings, "total_ms", context + ": timings");
  if (!ms.is_number()) bad(context, "timings: total_ms: expected a number");
  doc.total_ms = ms.get<double>();
  doc.input_digest = string_from_json(require_field(j, "input_digest", context),
                                      context + ": input_digest");
  return doc;
}

std::string emit_harness_report(const HarnessReport& report) {
  Json j = Json::object();
  j["tool_version"] = kToolVersion;
  j["profile"] = report.profile;
  j["seed_begin"] = int_to_json(Int(report.seed_begin));
  j["seed_end"] = int_to_json(Int(report.seed_end));
  j["conflicts"] = int_to_json(Int(report.conflicts));
  Json instances = Json::array();
  for (const InstanceReport& rep : report.instances)
    instances.push_back(instance_report_to_json(rep));
  j["instances"] = instances;
  return j.dump() + "\n";
}

HarnessReport parse_harness_report(const std::string& text) {
  const std::string context = "harness report";
  Json j = parse_json(text, context);
  require_fields(
      j, {"tool_version", "profile", "seed_begin", "seed_end", "conflicts",
          "instances"},
      context);
  HarnessReport report;
  report.profile =
      string_from_json(require_field(j, "profile", context), context + ": profile");
  report.seed_begin = uint64_from_json(require_field(j, "seed_begin", context),
                                       context + ": seed_begin");
  report.seed_end = uint64_from_json(require_field(j, "seed_end", context),
                                     context + ": seed_end");
  report.conflicts = count_from_json(require_field(j, "conflicts", context),
                                     context + ": conflicts");
  const Json& instances = require_field(j, "instances", context);
  if (!instances.is_array()) bad(context, "instances: expected an array");
  for (const Json& rep : instances)
    report.instances.push_back(instance_report_from_json(rep, context + ": instance"));
  return report;
}

std::string emit_question_report(const QuestionReport& report) {
  Json j = Json::object();
  j["tool_version"] = kToolVersion;
  j["profile"] = report.profile;
  j["budget"] = int_to_json(Int(report.budget));
  j["skipped_normal_base"] = int_to_json(Int(report.skipped_normal_base));
  j["skipped_ideal_witness"] = int_to_json(Int(report.skipped_ideal_witness));
  j["probed"] = int_to_json(Int(report.probed));
  j["hits"] = int_to_json(Int(report.hits));
  Json entries = Json::array();
  for (const QuestionEntry& e : report.entries)
    entries.push_back(question_entry_to_json(e));
  j["entries"] = entries;
  return j.dump() + "\n";
}

QuestionReport parse_question_report(const std::string& text) {
  const std::string context = "question report";
  Json j = parse_json(text, context);
  require_fields(j,
                 {"tool_version", "profile", "budget", "skipped_normal_base",
                  "skipped_ideal_witness", "probed", "hits", "entries"},
                 context);
  QuestionReport report;
  report.profile =
      string_from_json(require_field(j, "profile", context), context + ": profile");
  report.budget =
      uint64_from_json(require_field(j, "budget", context), context + ": budget");
  report.skipped_normal_base =
      count_from_json(require_field(j, "skipped_normal_base", context),
                      context + ": skipped_normal_base");
  report.skipped_ideal_witness =
      count_from_json(require_field(j, "skipped_ideal_witness", context),
                      context + ": skipped_ideal_witness");
  report.probed =
      count_from_json(require_field(j, "probed", context), context + ": probed");
  report.hits = count_from_json(require_field(j, "hits", context), context + ": hits");
  const Json& entries = require_field(j, "entries", context);
  if (!entries.is_array()) bad(context, "entries: expected an array");
  for (const Json& e : entries)
    report.entries.push_back(question_entry_from_json(e, context + ": entry"));
  return report;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_failure("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw io_failure("read error: " + path);
  return buffer.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp =
      path + ".tmp." + std::to_string(static_cast<unsigned long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_failure("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw io_failure("write error: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_failure("cannot rename " + tmp + " onto " + path);
  }
}

}  // namespace agr
