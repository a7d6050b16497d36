#pragma once

// Request parsing, report assembly and serialization for the command line.

#include "primebound/errors.hpp"
#include "primebound/separable_index.hpp"
#include "primebound/torus_git.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace primebound {

enum class OutputFormat { json, csv, text };
OutputFormat parse_format(const std::string &s);

struct AnalysisRequest {
  char type = 'A';
  unsigned rank = 1;
  /// "weight", "root" or "matrix:<row-major entries>".
  std::string lattice = "weight";
  /// Representation expression (see parse_rep_expr).
  std::string rep = "standard";
  std::optional<std::uint64_t> prime;

  /// "A2", or "A2[root]" for a non-default lattice.
  std::string group_label() const;

  friend bool operator==(const AnalysisRequest &,
                         const AnalysisRequest &) = default;
};

class RequestError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Character-lattice basis from its textual form; throws RequestError.
IntMatrix parse_lattice(const std::string &text, char type, unsigned rank);

/// Datum and representation behind a request, with the expression in
/// canonical form. Throws RequestError / RepParseError.
RepSpec resolve(const AnalysisRequest &req);

struct Verdicts {
  bool low_height = false;
  bool low_separable_index = false;
  friend bool operator==(const Verdicts &, const Verdicts &) = default;
};

struct AnalysisReport {
  AnalysisRequest request;
  IndexReport index;
  /// Empty when the height is below 1 and the bound is vacuous.
  std::optional<bool> weak_bound_holds;
  std::optional<Verdicts> verdicts;

  friend bool operator==(const AnalysisReport &,
                         const AnalysisReport &) = default;
};

struct AnalyzeOptions {
  GuardCaps caps;
  unsigned threads = 1;
  /// Optional memo directory of JSON reports.
  std::optional<std::filesystem::path> cache_dir;
};

AnalysisReport analyze(const AnalysisRequest &req,
                       const AnalyzeOptions &opts = {});

using Json = nlohmann::ordered_json;

Json to_json(const AnalysisReport &r);
AnalysisReport report_from_json(const Json &j);
std::string to_text(const AnalysisReport &r);

/// Output for one report in the requested format.
std::string render(const AnalysisReport &r, OutputFormat format);

struct TableRow {
  AnalysisRequest request;
  std::optional<AnalysisReport> report;
  std::string error;
};

inline constexpr const char *kCsvHeader = "group,rep,dim,height,p_T,psi,weak_bound";

/// Evaluates every request; failures become per-row errors. Rows may be
/// computed concurrently (`jobs`), output keeps request order.
std::vector<TableRow> batch_evaluate(const std::vector<AnalysisRequest> &reqs,
                                     const AnalyzeOptions &opts = {},
                                     unsigned jobs = 1);

std::string render_table(const std::vector<TableRow> &rows,
                         OutputFormat format);

std::string batch_table(const std::vector<AnalysisRequest> &reqs,
                        OutputFormat format, const AnalyzeOptions &opts = {},
                        unsigned jobs = 1);

/// Standard and adjoint representations of A1-A4, B2, C3, G2.
std::vector<AnalysisRequest> default_catalog();

AnalysisRequest request_from_json(const Json &j);
Json to_json(const AnalysisRequest &r);

/// Splits CSV text into records (RFC 4180 quoting).
std::vector<std::vector<std::string>> parse_csv(const std::string &text);

struct WeightRow {
  Weight weight;
  std::uint64_t multiplicity = 0;
  Rational height;
  bool dominant = false;
};

/// All weights of the requested representation in lexicographic order.
std::vector<WeightRow> dump_weights(const AnalysisRequest &req,
                                    const GuardCaps &caps = {});
std::string render_weights(const std::vector<WeightRow> &rows,
                           OutputFormat format);

/// "1,0;-1,1" -> {(1,0), (-1,1)}. Throws RequestError with the position.
std::vector<Weight> parse_support(const std::string &text, std::size_t rank);

struct GitCheckResult {
  std::string group;
  std::vector<Weight> support;
  bool semistable = false;
  Stability classification = Stability::unstable;
  MinNormPoint min_norm;
  std::optional<OneParamSubgroup> kempf;
  Integer g;
  std::optional<std::uint64_t> prime;
  std::optional<bool> separable;
};

GitCheckResult git_check(const AnalysisRequest &group,
                         const std::vector<Weight> &support,
                         MinNormMethod method = MinNormMethod::faces,
                         const GuardCaps &caps = {});
std::string render_git_check(const GitCheckResult &r, OutputFormat format);

/// Stable 64-bit FNV-1a digest, rendered as 16 hex digits.
std::string cache_key(const AnalysisRequest &req);

} // namespace primebound
