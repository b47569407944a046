#pragma once

// Serialization of instances, verdicts and reports as JSON documents, plus
// the small amount of file plumbing the command-line tool needs.
//
// Documents are UTF-8 JSON with fixed field names.  Integers are emitted as
// JSON numbers while their magnitude fits in 53 bits and as decimal strings
// beyond that; both forms parse.  Emission is canonical (fixed field order,
// fixed formatting), so equal values produce byte-identical documents, and
// every verdict document carries a digest of the instance document it
// answers so certificates can be replayed against the exact input later.
// Unknown fields are rejected on parse: a document that does not match the
// schema exactly is reported, not silently reinterpreted.

#include <optional>
#include <string>

#include "agr/bigint.hpp"
#include "agr/harness.hpp"
#include "agr/ideal.hpp"
#include "agr/monoid.hpp"

namespace agr {

inline constexpr const char* kToolVersion = "agrcheck 0.1.0";

// On-disk description of a test instance.
//
//   {
//     "ambient_dim": 2,
//     "monoid_generators": [[1, 0], [0, 1]],
//     "ideal_generators": [[2, 0], [0, 2]],        // optional
//     "characteristic": 0,                          // optional, default 0
//     "bounds": {"B": 12, "K": 8, "N_power": 6}     // optional
//   }
//
// Every generator row must have exactly ambient_dim entries; the
// characteristic must be 0 or a prime.  Absent bounds mean "derive defaults
// from the monoid" (see bounds_from_document).
struct InstanceDocument {
  std::size_t ambient_dim = 0;
  IntMat monoid_generators;
  std::optional<IntMat> ideal_generators;
  Int characteristic = 0;
  std::optional<InstanceBounds> bounds;

  bool operator==(const InstanceDocument&) const = default;
};

// Parses a document, rejecting malformed JSON, unknown fields, shape
// mismatches and composite characteristics with invalid_input.
InstanceDocument parse_instance_document(const std::string& text);

// Canonical single-line JSON (field order as documented above, absent
// optionals omitted) terminated by a newline.  parse(emit(doc)) == doc.
std::string emit_instance_document(const InstanceDocument& doc);

// 16 lowercase hex characters: a 64-bit FNV-1a hash of the canonical
// document bytes.  Two documents collide only if their canonical forms do.
std::string instance_digest(const InstanceDocument& doc);

// Materialize the algebraic objects a document describes.  Construction
// re-validates (pointedness, dimensions) and throws like the constructors
// do; ideal_from_document requires ideal_generators to be present.
AffineMonoid monoid_from_document(const InstanceDocument& doc);
MonomialIdeal ideal_from_document(const InstanceDocument& doc);

// The document's bounds, or default_bounds(monoid) when absent.
InstanceBounds bounds_from_document(const InstanceDocument& doc);

// Result of one property check, as printed by the command-line tool:
//
//   {
//     "tool_version": "agrcheck 0.1.0",
//     "property": "normal",
//     "status": "fails_with_witness",
//     "witness": {"kind": "not_normal", "a": [1]},  // only when failing
//     "bound": 12,                                  // only when bounded
//     "timings": {"total_ms": 0.173},
//     "input_digest": "9e3779b97f4a7c15"
//   }
struct VerdictDocument {
  std::string tool_version;
  std::string property;
  Verdict verdict;
  double total_ms = 0.0;
  std::string input_digest;
};

std::string emit_verdict_document(const VerdictDocument& doc);
VerdictDocument parse_verdict_document(const std::string& text);

// Names used for certificate kinds in documents: "not_normal",
// "not_seminormal", "not_weakly_normal", "not_integrally_closed_power",
// "gr_nilpotent", "gr_non_additive".
std::string certificate_kind_name(Certificate::Kind kind);
Certificate::Kind certificate_kind_from_name(const std::string& name);

// Implication-harness and question-search reports.  Deterministic inputs
// produce byte-identical report text; no wall-clock data is embedded.
std::string emit_harness_report(const HarnessReport& report);
HarnessReport parse_harness_report(const std::string& text);

std::string emit_question_report(const QuestionReport& report);
QuestionReport parse_question_report(const std::string& text);

// Whole-file reads and atomic writes (write to a sibling temp file, then
// rename over the target).  Failures throw io_failure.
std::string read_text_file(const std::string& path);
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace agr
