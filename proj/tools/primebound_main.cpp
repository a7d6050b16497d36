// primebound: prime bounds (height, torsion primes, separable index) for
// representations of simple groups, and torus-level GIT checks.
//
// Exit codes: 0 success, 2 parse/validation error, 3 guard exceeded.

#include "primebound/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace pb = primebound;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

struct CommonOptions {
  std::string type = "A";
  unsigned rank = 1;
  std::string rep;
  std::string highest_weight;
  std::string lattice = "weight";
  std::uint64_t prime = 0;
  std::string format = "json";
  std::uint64_t cap = 0;
  std::string cache_dir;
  unsigned threads = 1;
};

void add_group_options(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--type", o.type, "Root system type letter (A-G)");
  cmd->add_option("--rank", o.rank, "Rank of the root system");
  cmd->add_option("--lattice", o.lattice,
                  "Character lattice: root | weight | matrix:<entries>");
  cmd->add_option("--prime", o.prime, "Characteristic p for the verdicts");
  cmd->add_option("--format", o.format, "json | csv | text");
  cmd->add_option("--cap", o.cap, "Cap for every enumeration guard");
}

void add_rep_options(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--rep", o.rep,
                  "Representation, e.g. adjoint, V(1,0), dual(standard), "
                  "sym(2,standard), standard * adjoint");
  cmd->add_option("--highest-weight", o.highest_weight,
                  "Irreducible with this highest weight, e.g. 1,0,2");
  cmd->add_option("--cache-dir", o.cache_dir, "Memo directory for reports");
  cmd->add_option("--threads", o.threads, "Threads for subset enumeration");
}

pb::AnalysisRequest make_request(const CommonOptions &o, bool need_rep) {
  pb::AnalysisRequest r;
  if (o.type.size() != 1)
    throw pb::RequestError("--type must be a single letter, got '" + o.type +
                           "'");
  r.type = static_cast<char>(std::toupper(static_cast<unsigned char>(o.type[0])));
  r.rank = o.rank;
  r.lattice = o.lattice;
  if (o.prime)
    r.prime = o.prime;
  if (need_rep) {
    if (!o.rep.empty() && !o.highest_weight.empty())
      throw pb::RequestError("--rep and --highest-weight are exclusive");
    if (!o.highest_weight.empty())
      r.rep = "V(" + o.highest_weight + ")";
    else if (!o.rep.empty())
      r.rep = o.rep;
  }
  return r;
}

pb::GuardCaps caps_of(const CommonOptions &o) {
  return o.cap ? pb::GuardCaps::uniform(o.cap) : pb::GuardCaps{};
}

pb::AnalyzeOptions analyze_options(const CommonOptions &o) {
  pb::AnalyzeOptions a;
  a.caps = caps_of(o);
  a.threads = o.threads;
  if (!o.cache_dir.empty())
    a.cache_dir = o.cache_dir;
  return a;
}

// "A3" or "B2[root]".
pb::AnalysisRequest parse_group_label(const std::string &label) {
  pb::AnalysisRequest r;
  if (label.size() < 2 || !std::isalpha(static_cast<unsigned char>(label[0])))
    throw pb::RequestError("bad group label '" + label + "'");
  r.type = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  std::size_t used = 0;
  try {
    r.rank = static_cast<unsigned>(std::stoul(label.substr(1), &used));
  } catch (const std::exception &) {
    throw pb::RequestError("bad group label '" + label + "'");
  }
  std::string rest = label.substr(1 + used);
  if (!rest.empty()) {
    if (rest.front() != '[' || rest.back() != ']')
      throw pb::RequestError("bad group label '" + label + "'");
    r.lattice = rest.substr(1, rest.size() - 2);
  }
  return r;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty())
      out.push_back(item);
  return out;
}

std::vector<pb::AnalysisRequest> read_requests(const std::string &path) {
  pb::Json j;
  try {
    if (path == "-") {
      j = pb::Json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in)
        throw pb::RequestError("cannot open " + path);
      j = pb::Json::parse(in);
    }
  } catch (const nlohmann::json::parse_error &e) {
    throw pb::RequestError(std::string("bad request file: ") + e.what());
  }
  if (!j.is_array())
    throw pb::RequestError("request file must hold a JSON array");
  std::vector<pb::AnalysisRequest> out;
  for (const auto &item : j)
    out.push_back(pb::request_from_json(item));
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Prime bounds for representations of simple groups"};
  app.require_subcommand(1);

  CommonOptions analyze_opts;
  auto *analyze = app.add_subcommand("analyze", "Height, torsion primes and "
                                                "separable index of a rep");
  add_group_options(analyze, analyze_opts);
  add_rep_options(analyze, analyze_opts);

  CommonOptions weights_opts;
  auto *weights = app.add_subcommand("weights", "List the weights of a rep");
  add_group_options(weights, weights_opts);
  add_rep_options(weights, weights_opts);

  CommonOptions table_opts;
  std::string requests_file, groups, reps = "standard,adjoint";
  unsigned jobs = 1;
  auto *table = app.add_subcommand(
      "table", "Batch table; defaults to the built-in catalog");
  table->add_option("--requests", requests_file,
                    "JSON array of requests ('-' for stdin)");
  table->add_option("--groups", groups, "Comma list of groups, e.g. A1,A2,B2");
  table->add_option("--reps", reps, "Comma list of catalog reps for --groups");
  table->add_option("--prime", table_opts.prime, "Prime for the verdicts");
  table->add_option("--format", table_opts.format, "json | csv | text");
  table->add_option("--cap", table_opts.cap, "Cap for every enumeration guard");
  table->add_option("--cache-dir", table_opts.cache_dir, "Memo directory");
  table->add_option("--jobs", jobs, "Rows evaluated concurrently");

  CommonOptions git_opts;
  std::string support, method = "faces";
  auto *git = app.add_subcommand("git-check",
                                 "Torus semistability and Kempf 1-PS of a "
                                 "weight support");
  add_group_options(git, git_opts);
  git->add_option("--support", support,
                  "Weights separated by ';', e.g. '1,0;-1,1'")
      ->required();
  git->add_option("--method", method, "faces | wolfe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (analyze->parsed()) {
      const auto req = make_request(analyze_opts, true);
      const auto report = pb::analyze(req, analyze_options(analyze_opts));
      std::cout << pb::render(report, pb::parse_format(analyze_opts.format));
    } else if (weights->parsed()) {
      const auto req = make_request(weights_opts, true);
      const auto fmt = pb::parse_format(weights_opts.format);
      std::cout << pb::render_weights(
          pb::dump_weights(req, caps_of(weights_opts)), fmt);
    } else if (table->parsed()) {
      const auto fmt = pb::parse_format(table_opts.format);
      std::vector<pb::AnalysisRequest> reqs;
      if (!requests_file.empty()) {
        reqs = read_requests(requests_file);
      } else if (!groups.empty()) {
        for (const auto &g : split(groups, ','))
          for (const auto &r : split(reps, ',')) {
            auto req = parse_group_label(g);
            req.rep = r;
            reqs.push_back(req);
          }
      } else {
        reqs = pb::default_catalog();
      }
      if (table_opts.prime)
        for (auto &r : reqs)
          r.prime = table_opts.prime;
      std::cout << pb::batch_table(reqs, fmt, analyze_options(table_opts),
                                   jobs);
    } else if (git->parsed()) {
      const auto req = make_request(git_opts, false);
      const auto fmt = pb::parse_format(git_opts.format);
      pb::MinNormMethod m;
      if (method == "faces")
        m = pb::MinNormMethod::faces;
      else if (method == "wolfe")
        m = pb::MinNormMethod::wolfe;
      else
        throw pb::RequestError("--method must be faces or wolfe");
      const auto sup = pb::parse_support(support, req.rank);
      std::cout << pb::render_git_check(
          pb::git_check(req, sup, m, caps_of(git_opts)), fmt);
    }
  } catch (const pb::GuardExceeded &e) {
    std::cerr << "primebound: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument &e) {
    std::cerr << "primebound: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception &e) {
    std::cerr << "primebound: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
