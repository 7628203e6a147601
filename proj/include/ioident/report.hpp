#pragma once

// End-to-end analysis of a model and its canonical serialization.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ioident/ident_fields.hpp"

namespace ioident {

struct AnalysisSettings {
  std::uint64_t seed = 0;
  std::optional<std::size_t> depth;  // default: number of states
  std::size_t series_order = 0;      // 0: automatic
  std::size_t trials = 5;
  std::size_t first_integral_degree = 3;
  std::vector<std::string> check_functions;
};

struct CertificateEntry {
  std::string coefficient;
  std::size_t equation = 0;
  bool identifiable = false;
  std::vector<std::string> witness_subset;
  std::string witness_determinant;
  std::uint64_t witness_seed = 0;
};

struct MembershipEntry {
  std::string expression;
  std::optional<bool> member;  // unset when no presentation was found
};

struct AnalysisReport {
  std::vector<std::string> params, states, inputs, outputs;
  AnalysisSettings settings;
  std::size_t depth_limit = 0;
  bool complete = false;
  std::size_t depth_used = 0;
  std::string error;
  std::vector<std::string> io_equations;
  std::vector<std::string> eliminated;  // filled only when no presentation was found
  std::vector<std::string> field_generators;
  std::vector<CertificateEntry> certificates;
  std::vector<std::string> first_integrals;
  EqualityStatus equality = EqualityStatus::Inconclusive;
  std::vector<MembershipEntry> membership_queries;
  VerificationReport verification;
};

/// Runs the whole pipeline.  A DepthExhaustedError is recorded in the report
/// (complete = false, partial equations kept) rather than thrown.  Check
/// functions are parsed over the parameters first; ParseError propagates.
AnalysisReport analyze(const Model& m, const AnalysisSettings& s);

enum class ReportFormat { Text, Json };

/// Canonical serialization: identical reports give identical bytes.
std::string emit_report(const AnalysisReport& r, ReportFormat f);

std::string equality_status_name(EqualityStatus s);

}  // namespace ioident
