#include "primebound/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace primebound {

OutputFormat parse_format(const std::string &s) {
  if (s == "json")
    return OutputFormat::json;
  if (s == "csv")
    return OutputFormat::csv;
  if (s == "text")
    return OutputFormat::text;
  throw RequestError("unknown output format '" + s + "'");
}

std::string AnalysisRequest::group_label() const {
  std::string g = std::string(1, type) + std::to_string(rank);
  if (lattice != "weight")
    g += "[" + lattice + "]";
  return g;
}

IntMatrix parse_lattice(const std::string &text, char type, unsigned rank) {
  if (text == "weight")
    return IntMatrix::identity(rank);
  if (text == "root")
    return cartan_matrix(type, rank);
  const std::string prefix = "matrix:";
  if (text.rfind(prefix, 0) != 0)
    throw RequestError("lattice must be 'root', 'weight' or 'matrix:<entries>'"
                       ", got '" + text + "'");
  std::vector<std::int64_t> entries;
  std::size_t pos = prefix.size();
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos)
      end = text.size();
    const std::string tok = text.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      entries.push_back(std::stoll(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument(tok);
    } catch (const std::exception &) {
      throw RequestError("bad lattice entry '" + tok + "' at position " +
                         std::to_string(pos));
    }
    pos = end + 1;
  }
  if (entries.size() != static_cast<std::size_t>(rank) * rank)
    throw RequestError("lattice matrix needs " + std::to_string(rank * rank) +
                       " entries, got " + std::to_string(entries.size()));
  return make_int_matrix(rank, rank, entries);
}

RepSpec resolve(const AnalysisRequest &req) {
  IntMatrix basis;
  try {
    basis = parse_lattice(req.lattice, req.type, req.rank);
  } catch (const RequestError &) {
    throw;
  } catch (const std::invalid_argument &e) {
    throw RequestError(e.what());
  }
  DatumPtr datum;
  try {
    datum = share(make_datum(req.type, req.rank, std::move(basis)));
  } catch (const std::invalid_argument &e) {
    throw RequestError(e.what());
  }
  return make_rep_spec(datum, parse_rep_expr(req.rep));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json integer_json(const Integer &z) {
  if (z.fits_slong_p())
    return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Integer integer_from_json(const Json &j) {
  if (j.is_string())
    return Integer(j.get<std::string>());
  return Integer(static_cast<long>(j.get<std::int64_t>()));
}

Json group_json(const AnalysisRequest &r) {
  Json g;
  g["type"] = std::string(1, r.type);
  g["rank"] = r.rank;
  g["lattice"] = r.lattice;
  return g;
}

} // namespace

Json to_json(const AnalysisRequest &r) {
  Json j;
  j["group"] = group_json(r);
  j["rep"] = r.rep;
  j["prime"] = r.prime ? Json(*r.prime) : Json(nullptr);
  return j;
}

AnalysisRequest request_from_json(const Json &j) {
  AnalysisRequest r;
  try {
    const Json &g = j.contains("group") ? j.at("group") : j;
    const auto type = g.at("type").get<std::string>();
    if (type.size() != 1)
      throw RequestError("group type must be a single letter, got '" + type +
                         "'");
    r.type = type[0];
    r.rank = g.at("rank").get<unsigned>();
    if (g.contains("lattice"))
      r.lattice = g.at("lattice").get<std::string>();
    r.rep = j.at("rep").get<std::string>();
    if (j.contains("prime") && !j.at("prime").is_null())
      r.prime = j.at("prime").get<std::uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw RequestError(std::string("malformed request: ") + e.what());
  }
  return r;
}

Json to_json(const AnalysisReport &r) {
  Json j;
  j["group"] = group_json(r.request);
  j["rep"] = r.request.rep;
  j["prime"] = r.request.prime ? Json(*r.request.prime) : Json(nullptr);
  j["dim"] = integer_json(r.index.dimension);
  j["weights"] = r.index.distinct_weights;
  j["height"] = to_fraction_string(r.index.height);
  j["torsion_primes"] = r.index.torsion_primes;
  j["p_T"] = r.index.p_T;
  j["psi"] = to_fraction_string(r.index.psi);
  j["weak_bound"] = integer_json(r.index.weak_bound);
  j["weak_bound_holds"] =
      r.weak_bound_holds ? Json(*r.weak_bound_holds) : Json(nullptr);
  if (r.verdicts) {
    Json v;
    v["low_height"] = r.verdicts->low_height;
    v["low_separable_index"] = r.verdicts->low_separable_index;
    j["verdicts"] = v;
  }
  return j;
}

AnalysisReport report_from_json(const Json &j) {
  AnalysisReport r;
  try {
    r.request = request_from_json(j);
    r.index.rank = r.request.rank;
    r.index.dimension = integer_from_json(j.at("dim"));
    r.index.distinct_weights = j.at("weights").get<std::size_t>();
    r.index.height = parse_fraction(j.at("height").get<std::string>());
    r.index.torsion_primes =
        j.at("torsion_primes").get<std::vector<std::uint64_t>>();
    r.index.p_T = j.at("p_T").get<std::uint64_t>();
    r.index.psi = parse_fraction(j.at("psi").get<std::string>());
    r.index.weak_bound = integer_from_json(j.at("weak_bound"));
    if (!j.at("weak_bound_holds").is_null())
      r.weak_bound_holds = j.at("weak_bound_holds").get<bool>();
    if (j.contains("verdicts")) {
      Verdicts v;
      v.low_height = j.at("verdicts").at("low_height").get<bool>();
      v.low_separable_index =
          j.at("verdicts").at("low_separable_index").get<bool>();
      r.verdicts = v;
    }
  } catch (const nlohmann::json::exception &e) {
    throw RequestError(std::string("malformed report: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cache

std::string cache_key(const AnalysisRequest &req) {
  const std::string canon = std::string(1, req.type) + "|" +
                            std::to_string(req.rank) + "|" + req.lattice + "|" +
                            req.rep;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::optional<AnalysisReport> cache_lookup(const std::filesystem::path &dir,
                                           const AnalysisRequest &req) {
  std::ifstream in(dir / (cache_key(req) + ".json"));
  if (!in)
    return std::nullopt;
  try {
    AnalysisReport r = report_from_json(Json::parse(in));
    AnalysisRequest stored = r.request;
    AnalysisRequest wanted = req;
    stored.prime.reset();
    wanted.prime.reset();
    if (!(stored == wanted))
      return std::nullopt;
    return r;
  } catch (const std::exception &) {
    return std::nullopt; // unreadable entry: recompute
  }
}

void cache_store(const std::filesystem::path &dir, const AnalysisReport &r) {
  AnalysisReport core = r;
  core.request.prime.reset();
  core.verdicts.reset();
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto final_path = dir / (cache_key(core.request) + ".json");
  const auto tmp = dir / (final_path.filename().string() + ".tmp." +
                          std::to_string(::getpid()) + "." +
                          std::to_string(counter++));
  {
    std::ofstream out(tmp);
    if (!out)
      return;
    out << to_json(core).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec)
    std::filesystem::remove(tmp, ec);
}

} // namespace

// ---------------------------------------------------------------------------
// Analysis

AnalysisReport analyze(const AnalysisRequest &req, const AnalyzeOptions &opts) {
  if (req.prime && !is_prime(*req.prime))
    throw RequestError(std::to_string(*req.prime) + " is not prime");
  const RepSpec spec = resolve(req);

  AnalysisRequest canonical = req;
  canonical.rep = spec.expr.to_string();

  AnalysisReport r;
  std::optional<AnalysisReport> cached;
  if (opts.cache_dir)
    cached = cache_lookup(*opts.cache_dir, canonical);
  if (cached) {
    r = *cached;
  } else {
    r.index = separable_index(spec, opts.caps, opts.threads);
    if (r.index.height >= 1) {
      r.weak_bound_holds = check_weak_bound(r.index);
      if (!*r.weak_bound_holds)
        std::cerr << "primebound: weak bound violated for "
                  << canonical.group_label() << " " << canonical.rep
                  << " (p_T=" << r.index.p_T
                  << ", bound=" << r.index.weak_bound.get_str() << ")\n";
    }
  }
  r.request = canonical;
  if (canonical.prime) {
    Verdicts v;
    v.low_height = is_low_height(r.index.height, *canonical.prime);
    v.low_separable_index = is_low_separable_index(r.index, *canonical.prime);
    r.verdicts = v;
  } else {
    r.verdicts.reset();
  }
  if (opts.cache_dir && !cached)
    cache_store(*opts.cache_dir, r);
  return r;
}

std::string to_text(const AnalysisReport &r) {
  std::ostringstream os;
  os << "group:          " << r.request.group_label() << "\n"
     << "rep:            " << r.request.rep << "\n"
     << "dim:            " << r.index.dimension.get_str() << "\n"
     << "weights:        " << r.index.distinct_weights << "\n"
     << "height:         " << to_fraction_string(r.index.height) << "\n"
     << "torsion primes: {";
  for (std::size_t i = 0; i < r.index.torsion_primes.size(); ++i)
    os << (i ? ", " : "") << r.index.torsion_primes[i];
  os << "}\n"
     << "p_T:            " << r.index.p_T << "\n"
     << "psi:            " << to_fraction_string(r.index.psi) << "\n"
     << "weak bound:     " << r.index.weak_bound.get_str();
  if (r.weak_bound_holds)
    os << (*r.weak_bound_holds ? " (holds)" : " (VIOLATED)");
  os << "\n";
  if (r.verdicts) {
    os << "prime:          " << *r.request.prime << "\n"
       << "low height:     " << (r.verdicts->low_height ? "yes" : "no") << "\n"
       << "low sep. index: "
       << (r.verdicts->low_separable_index ? "yes" : "no") << "\n";
  }
  return os.str();
}

namespace {

std::string csv_cell(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const AnalysisReport &r) {
  return csv_cell(r.request.group_label()) + "," + csv_cell(r.request.rep) +
         "," + r.index.dimension.get_str() + "," +
         to_fraction_string(r.index.height) + "," + std::to_string(r.index.p_T) +
         "," + to_fraction_string(r.index.psi) + "," +
         r.index.weak_bound.get_str();
}

} // namespace

std::string render(const AnalysisReport &r, OutputFormat format) {
  switch (format) {
  case OutputFormat::json:
    return to_json(r).dump(2) + "\n";
  case OutputFormat::csv:
    return std::string(kCsvHeader) + "\n" + csv_row(r) + "\n";
  case OutputFormat::text:
    return to_text(r);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Batch tables

std::vector<TableRow> batch_evaluate(const std::vector<AnalysisRequest> &reqs,
                                     const AnalyzeOptions &opts,
                                     unsigned jobs) {
  std::vector<TableRow> rows(reqs.size());
  auto eval = [&](std::size_t i) {
    rows[i].request = reqs[i];
    try {
      rows[i].report = analyze(reqs[i], opts);
    } catch (const std::exception &e) {
      rows[i].error = e.what();
    }
  };
  if (jobs <= 1 || reqs.size() <= 1) {
    for (std::size_t i = 0; i < reqs.size(); ++i)
      eval(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < jobs; ++t)
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < reqs.size();)
        eval(i);
    }));
  for (auto &w : workers)
    w.get();
  return rows;
}

std::string render_table(const std::vector<TableRow> &rows,
                         OutputFormat format) {
  std::ostringstream os;
  switch (format) {
  case OutputFormat::json: {
    Json arr = Json::array();
    for (const auto &row : rows) {
      if (row.report) {
        arr.push_back(to_json(*row.report));
      } else {
        Json j;
        j["group"] = group_json(row.request);
        j["rep"] = row.request.rep;
        j["error"] = row.error;
        arr.push_back(j);
      }
    }
    os << arr.dump(2) << "\n";
    break;
  }
  case OutputFormat::csv:
    os << kCsvHeader << "\n";
    for (const auto &row : rows) {
      if (row.report)
        os << csv_row(*row.report) << "\n";
      else
        os << csv_cell(row.request.group_label()) << ","
           << csv_cell(row.request.rep) << ","
           << csv_cell("ERROR: " + row.error) << ",,,,\n";
    }
    break;
  case OutputFormat::text:
    for (const auto &row : rows) {
      if (row.report)
        os << to_text(*row.report) << "\n";
      else
        os << "group: " << row.request.group_label()
           << "\nrep:   " << row.request.rep << "\nerror: " << row.error
           << "\n\n";
    }
    break;
  }
  return os.str();
}

std::string batch_table(const std::vector<AnalysisRequest> &reqs,
                        OutputFormat format, const AnalyzeOptions &opts,
                        unsigned jobs) {
  return render_table(batch_evaluate(reqs, opts, jobs), format);
}

std::vector<AnalysisRequest> default_catalog() {
  const std::vector<std::pair<char, unsigned>> groups = {
      {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'C', 3}, {'G', 2}};
  std::vector<AnalysisRequest> out;
  for (const auto &[t, n] : groups)
    for (const char *rep : {"standard", "adjoint"}) {
      AnalysisRequest r;
      r.type = t;
      r.rank = n;
      r.rep = rep;
      out.push_back(r);
    }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Weight listings

std::vector<WeightRow> dump_weights(const AnalysisRequest &req,
                                    const GuardCaps &caps) {
  const RepSpec spec = resolve(req);
  const WeightMultiset w = expand(spec, caps);
  std::vector<WeightRow> rows;
  rows.reserve(w.distinct());
  for (const auto &[wt, m] : w.entries())
    rows.push_back({wt, m, weight_height(w.datum(), wt), is_dominant(wt)});
  return rows;
}

std::string render_weights(const std::vector<WeightRow> &rows,
                           OutputFormat format) {
  std::ostringstream os;
  switch (format) {
  case OutputFormat::json: {
    Json arr = Json::array();
    for (const auto &r : rows) {
      Json j;
      j["weight"] = r.weight.coords;
      j["multiplicity"] = r.multiplicity;
      j["height"] = to_fraction_string(r.height);
      j["dominant"] = r.dominant;
      arr.push_back(j);
    }
    os << arr.dump(2) << "\n";
    break;
  }
  case OutputFormat::csv:
    os << "weight,multiplicity,height,dominant\n";
    for (const auto &r : rows)
      os << csv_cell(to_string(r.weight)) << "," << r.multiplicity << ","
         << to_fraction_string(r.height) << ","
         << (r.dominant ? "true" : "false") << "\n";
    break;
  case OutputFormat::text:
    for (const auto &r : rows)
      os << to_string(r.weight) << "  x" << r.multiplicity
         << "  ht=" << to_fraction_string(r.height)
         << (r.dominant ? "  dominant" : "") << "\n";
    break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Torus GIT checks

std::vector<Weight> parse_support(const std::string &text, std::size_t rank) {
  std::vector<Weight> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos)
      end = text.size();
    std::string tuple = text.substr(pos, end - pos);
    std::size_t offset = pos;
    // Tolerate "(a,b)" as well as "a,b".
    auto first = tuple.find_first_not_of(" \t");
    auto last = tuple.find_last_not_of(" \t");
    if (first == std::string::npos)
      throw RequestError("empty weight in support at position " +
                         std::to_string(pos));
    tuple = tuple.substr(first, last - first + 1);
    offset += first;
    if (tuple.front() == '(' && tuple.back() == ')') {
      tuple = tuple.substr(1, tuple.size() - 2);
      ++offset;
    }
    Weight w;
    std::size_t p = 0;
    while (p <= tuple.size()) {
      std::size_t e = tuple.find(',', p);
      if (e == std::string::npos)
        e = tuple.size();
      const std::string tok = tuple.substr(p, e - p);
      try {
        std::size_t used = 0;
        w.coords.push_back(std::stoll(tok, &used));
        if (tok.find_first_not_of(" \t", used) != std::string::npos)
          throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw RequestError("bad coordinate '" + tok + "' at position " +
                           std::to_string(offset + p));
      }
      p = e + 1;
    }
    if (w.size() != rank)
      throw RequestError("weight at position " + std::to_string(offset) +
                         " has " + std::to_string(w.size()) +
                         " coordinates, expected " + std::to_string(rank));
    out.push_back(std::move(w));
    pos = end + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GitCheckResult git_check(const AnalysisRequest &group,
                         const std::vector<Weight> &support,
                         MinNormMethod method, const GuardCaps &caps) {
  if (group.prime && !is_prime(*group.prime))
    throw RequestError(std::to_string(*group.prime) + " is not prime");
  DatumPtr datum;
  try {
    datum = share(make_datum(group.type, group.rank,
                             parse_lattice(group.lattice, group.type, group.rank)));
  } catch (const RequestError &) {
    throw;
  } catch (const std::invalid_argument &e) {
    throw RequestError(e.what());
  }
  std::map<Weight, bool> coeffs;
  for (const auto &w : support)
    coeffs[w] = true;
  const SupportVector sv = support_of(datum, coeffs);

  GitCheckResult r;
  r.group = group.group_label();
  r.support = sv.characters();
  r.min_norm = minimal_norm_point(sv, method, caps.max_faces);
  r.semistable = sgn(r.min_norm.norm_squared) == 0;
  r.classification = classify_section_value(sv, method, caps.max_faces);
  r.kempf = kempf_one_ps(sv, method, caps.max_faces);
  r.g = subset_g(sv.support());
  r.prime = group.prime;
  if (group.prime)
    r.separable = is_torus_separable(sv, *group.prime);
  return r;
}

std::string render_git_check(const GitCheckResult &r, OutputFormat format) {
  Json j;
  j["group"] = r.group;
  Json sup = Json::array();
  for (const auto &w : r.support)
    sup.push_back(w.coords);
  j["support"] = sup;
  j["semistable"] = r.semistable;
  j["classification"] = to_string(r.classification);
  Json pt = Json::array();
  for (const auto &q : r.min_norm.point)
    pt.push_back(to_fraction_string(q));
  j["min_norm_point"] = pt;
  j["min_norm_squared"] = to_fraction_string(r.min_norm.norm_squared);
  j["kempf_one_ps"] = r.kempf ? Json(r.kempf->coords) : Json(nullptr);
  j["g"] = integer_json(r.g);
  j["prime"] = r.prime ? Json(*r.prime) : Json(nullptr);
  j["separable"] = r.separable ? Json(*r.separable) : Json(nullptr);

  std::ostringstream os;
  switch (format) {
  case OutputFormat::json:
    os << j.dump(2) << "\n";
    break;
  case OutputFormat::csv: {
    os << "group,semistable,classification,min_norm_squared,kempf_one_ps,g,"
          "separable\n";
    std::string kempf;
    if (r.kempf) {
      Weight w(r.kempf->coords);
      kempf = to_string(w);
    }
    os << csv_cell(r.group) << "," << (r.semistable ? "true" : "false") << ","
       << to_string(r.classification) << ","
       << to_fraction_string(r.min_norm.norm_squared) << "," << csv_cell(kempf)
       << "," << r.g.get_str() << ","
       << (r.separable ? (*r.separable ? "true" : "false") : "") << "\n";
    break;
  }
  case OutputFormat::text: {
    os << "group:            " << r.group << "\n"
       << "support size:     " << r.support.size() << "\n"
       << "classification:   " << to_string(r.classification) << "\n"
       << "min norm squared: " << to_fraction_string(r.min_norm.norm_squared)
       << "\n"
       << "kempf 1-PS:       "
       << (r.kempf ? to_string(Weight(r.kempf->coords)) : std::string("none"))
       << "\n"
       << "g:                " << r.g.get_str() << "\n";
    if (r.separable)
      os << "separable at p=" << *r.prime << ": "
         << (*r.separable ? "yes" : "no") << "\n";
    break;
  }
  }
  return os.str();
}

} // namespace primebound
