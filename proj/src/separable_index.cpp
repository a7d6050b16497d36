#include "primebound/separable_index.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <set>
#include <thread>

namespace primebound {

CharacterSupport::CharacterSupport(DatumPtr datum,
                                   std::vector<Weight> characters)
    : datum_(std::move(datum)), characters_(std::move(characters)) {
  if (!datum_)
    throw std::invalid_argument("CharacterSupport: null datum");
  for (const auto &c : characters_)
    datum_->check_weight(c);
  std::sort(characters_.begin(), characters_.end());
  if (std::adjacent_find(characters_.begin(), characters_.end()) !=
      characters_.end())
    throw std::invalid_argument("CharacterSupport: repeated character");
}

CharacterSupport CharacterSupport::of(const WeightMultiset &w) {
  std::vector<Weight> chars;
  chars.reserve(w.distinct());
  for (const auto &[wt, m] : w.entries())
    chars.push_back(wt);
  return CharacterSupport(w.datum_ptr(), std::move(chars));
}

IntMatrix character_matrix(const RootDatum &d,
                           const std::vector<Weight> &characters) {
  IntMatrix m(d.rank(), characters.size());
  for (std::size_t j = 0; j < characters.size(); ++j) {
    auto coords = d.lattice_coordinates(characters[j]);
    if (!coords)
      throw std::invalid_argument("character " + to_string(characters[j]) +
                                  " is not in the character lattice (" +
                                  d.lattice_description() + ")");
    for (std::size_t i = 0; i < d.rank(); ++i)
      m(i, j) = (*coords)[i];
  }
  return m;
}

Integer subset_g(const RootDatum &d, const std::vector<Weight> &characters) {
  return rank_minor_gcd(character_matrix(d, characters));
}

namespace {

struct Enumeration {
  const IntMatrix &columns; // rank x n, lattice coordinates
  std::uint64_t cap;
  std::atomic<std::uint64_t> &visited;

  IntMatrix select(const std::vector<std::size_t> &idx) const {
    IntMatrix m(columns.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < columns.rows(); ++i)
        m(i, j) = columns(i, idx[j]);
    return m;
  }

  // Extends `chosen` (independent) by every later column keeping
  // independence; accumulates prime divisors of each subset's g.
  void extend(std::vector<std::size_t> &chosen, std::set<std::uint64_t> &out) {
    for (std::size_t next = chosen.back() + 1; next < columns.cols(); ++next) {
      chosen.push_back(next);
      visit(chosen, out);
      chosen.pop_back();
    }
  }

  void visit(std::vector<std::size_t> &chosen, std::set<std::uint64_t> &out) {
    const IntMatrix m = select(chosen);
    if (rational_rank(m) < chosen.size())
      return;
    if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > cap)
      throw GuardExceeded("subsets", cap);
    for (const auto &q : prime_factors(rank_minor_gcd(m))) {
      if (!q.fits_ulong_p())
        throw std::overflow_error("torsion prime exceeds 64 bits");
      out.insert(q.get_ui());
    }
    if (chosen.size() < columns.rows())
      extend(chosen, out);
  }
};

} // namespace

std::vector<std::uint64_t> torsion_primes(const CharacterSupport &support,
                                          const TorsionOptions &opts) {
  const IntMatrix columns = character_matrix(support);
  std::atomic<std::uint64_t> visited{0};
  Enumeration en{columns, opts.max_subsets, visited};

  unsigned threads = opts.threads ? opts.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, columns.cols())));

  auto run_stride = [&](unsigned offset) {
    std::set<std::uint64_t> local;
    for (std::size_t first = offset; first < columns.cols(); first += threads) {
      std::vector<std::size_t> chosen{first};
      en.visit(chosen, local);
    }
    return local;
  };

  std::set<std::uint64_t> primes;
  if (threads <= 1) {
    primes = run_stride(0);
  } else {
    std::vector<std::future<std::set<std::uint64_t>>> jobs;
    for (unsigned t = 0; t < threads; ++t)
      jobs.push_back(std::async(std::launch::async, run_stride, t));
    for (auto &j : jobs) {
      auto s = j.get();
      primes.insert(s.begin(), s.end());
    }
  }
  return {primes.begin(), primes.end()};
}

namespace {

Integer ceil_nonneg(const Rational &q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

} // namespace

IndexReport separable_index(const RepSpec &spec, const GuardCaps &caps,
                            unsigned threads) {
  const WeightMultiset weights = expand(spec, caps);
  IndexReport r;
  r.height = rep_height(weights);
  r.torsion_primes = torsion_primes(CharacterSupport::of(weights),
                                    TorsionOptions{caps.max_subsets, threads});
  r.p_T = r.torsion_primes.empty() ? 1 : r.torsion_primes.back();
  const Rational pt(std::to_string(r.p_T));
  r.psi = std::max(r.height, pt);
  r.dimension = Integer(weights.dimension());
  r.distinct_weights = weights.distinct();
  r.rank = spec.datum->rank();
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), ceil_nonneg(r.height).get_mpz_t(),
             static_cast<unsigned long>(r.rank));
  r.weak_bound = factorial(static_cast<unsigned>(r.rank)) * power;
  return r;
}

bool is_low_separable_index(const IndexReport &report, std::uint64_t p) {
  if (!is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  return Rational(std::to_string(p)) > report.psi;
}

bool check_weak_bound(const IndexReport &report) {
  if (report.height < 1)
    throw std::invalid_argument("check_weak_bound: height below 1");
  return Integer(std::to_string(report.p_T)) <= report.weak_bound;
}

} // namespace primebound
