#include "primebound/root_system.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace primebound {

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](std::int64_t c) { return c == 0; });
}

Weight &Weight::operator+=(const Weight &o) {
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] += o.coords[i];
  return *this;
}

Weight &Weight::operator-=(const Weight &o) {
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] -= o.coords[i];
  return *this;
}

Weight operator-(Weight a) {
  for (auto &c : a.coords)
    c = -c;
  return a;
}

Weight operator*(std::int64_t k, Weight a) {
  for (auto &c : a.coords)
    c *= k;
  return a;
}

std::string to_string(const Weight &w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

std::size_t WeightHash::operator()(const Weight &w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto c : w.coords)
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  return h;
}

namespace {

// Symmetric form on simple roots: squared lengths on the diagonal and the
// off-diagonal bonds (alpha_i, alpha_j), short roots normalised to 2.
struct DynkinForm {
  std::vector<std::int64_t> lengths;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> bonds;
};

DynkinForm dynkin_form(char type, unsigned n) {
  DynkinForm f;
  auto bond = [&](std::size_t i, std::size_t j, std::int64_t v) {
    f.bonds[{i, j}] = v;
    f.bonds[{j, i}] = v;
  };
  auto chain = [&](std::size_t from, std::size_t to, std::int64_t v) {
    for (std::size_t i = from; i + 1 <= to; ++i)
      bond(i, i + 1, v);
  };
  switch (type) {
  case 'A':
    if (n < 1)
      break;
    f.lengths.assign(n, 2);
    chain(0, n - 1, -1);
    return f;
  case 'B':
    if (n < 2)
      break;
    f.lengths.assign(n, 4);
    f.lengths[n - 1] = 2;
    chain(0, n - 1, -2);
    return f;
  case 'C':
    if (n < 2)
      break;
    f.lengths.assign(n, 2);
    f.lengths[n - 1] = 4;
    chain(0, n - 2, -1);
    bond(n - 2, n - 1, -2);
    return f;
  case 'D':
    if (n < 3)
      break;
    f.lengths.assign(n, 2);
    chain(0, n - 2, -1);
    bond(n - 3, n - 1, -1);
    return f;
  case 'E':
    if (n < 6 || n > 8)
      break;
    // Bourbaki: 1-3-4-5-...-n with 2 attached to 4.
    f.lengths.assign(n, 2);
    bond(0, 2, -1);
    bond(1, 3, -1);
    chain(2, n - 1, -1);
    return f;
  case 'F':
    if (n != 4)
      break;
    f.lengths = {4, 4, 2, 2};
    bond(0, 1, -2);
    bond(1, 2, -2);
    bond(2, 3, -1);
    return f;
  case 'G':
    if (n != 2)
      break;
    // alpha_1 long, alpha_2 short.
    f.lengths = {6, 2};
    bond(0, 1, -3);
    return f;
  default:
    break;
  }
  throw std::invalid_argument(std::string("inadmissible root system type ") +
                              type + std::to_string(n));
}

IntMatrix cartan_from_form(const DynkinForm &f) {
  const std::size_t n = f.lengths.size();
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t ip = (i == j) ? f.lengths[i] : 0;
      if (auto it = f.bonds.find({i, j}); it != f.bonds.end())
        ip = it->second;
      // <alpha_j, alpha_i^vee> = 2 (alpha_j, alpha_i) / (alpha_i, alpha_i)
      c(i, j) = static_cast<long>(2 * ip / f.lengths[i]);
    }
  return c;
}

bool is_connected(const IntMatrix &cartan) {
  const std::size_t n = cartan.rows();
  if (n == 0)
    return false;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && sgn(cartan(i, j)) != 0) {
        seen[j] = true;
        queue.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

} // namespace

IntMatrix cartan_matrix(char type_letter, unsigned rank) {
  return cartan_from_form(dynkin_form(type_letter, rank));
}

std::vector<std::int64_t> simple_root_lengths(char type_letter, unsigned rank) {
  return dynkin_form(type_letter, rank).lengths;
}

RootDatum RootDatum::make(char type_letter, unsigned rank,
                          std::optional<IntMatrix> lattice_basis) {
  DynkinForm form = dynkin_form(type_letter, rank);
  IntMatrix basis =
      lattice_basis ? std::move(*lattice_basis) : IntMatrix::identity(rank);
  IntMatrix cartan = cartan_from_form(form);
  return RootDatum(std::string(1, type_letter) + std::to_string(rank),
                   type_letter, std::move(cartan), std::move(form.lengths),
                   std::move(basis));
}

RootDatum RootDatum::levi(const RootDatum &parent,
                          const std::vector<std::size_t> &simple_subset) {
  std::vector<std::size_t> idx = simple_subset;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.empty() || idx.size() >= parent.rank())
    throw std::invalid_argument("levi: simple subset must be nonempty and "
                                "proper");
  if (idx.back() >= parent.rank())
    throw std::invalid_argument("levi: simple root index out of range");

  const std::size_t n = idx.size();
  IntMatrix c(n, n);
  std::vector<std::int64_t> lengths(n);
  for (std::size_t a = 0; a < n; ++a) {
    lengths[a] = parent.lengths_[idx[a]];
    for (std::size_t b = 0; b < n; ++b)
      c(a, b) = parent.cartan_(idx[a], idx[b]);
  }

  std::optional<char> type;
  std::string name;
  for (char letter : std::string("ABCDEFG")) {
    try {
      if (cartan_matrix(letter, static_cast<unsigned>(n)) == c) {
        type = letter;
        name = std::string(1, letter) + std::to_string(n);
        break;
      }
    } catch (const std::invalid_argument &) {
    }
  }
  if (!type) {
    name = "Levi(" + parent.name() + ";";
    for (std::size_t a = 0; a < n; ++a)
      name += (a ? "," : "") + std::to_string(idx[a] + 1);
    name += ")";
  }
  return RootDatum(std::move(name), type, std::move(c), std::move(lengths),
                   IntMatrix::identity(n));
}

RootDatum::RootDatum(std::string name, std::optional<char> type,
                     IntMatrix cartan, std::vector<std::int64_t> lengths,
                     IntMatrix lattice_basis)
    : name_(std::move(name)), type_(type), rank_(cartan.rows()),
      cartan_(std::move(cartan)), lengths_(std::move(lengths)),
      lattice_basis_(std::move(lattice_basis)) {
  if (lattice_basis_.rows() != rank_ || lattice_basis_.cols() != rank_)
    throw std::invalid_argument("lattice basis must be " +
                                std::to_string(rank_) + "x" +
                                std::to_string(rank_));
  if (sgn(determinant(lattice_basis_)) == 0)
    throw std::invalid_argument("lattice basis is singular");

  cartan_small_.resize(rank_ * rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      cartan_small_[i * rank_ + j] = cartan_(i, j).get_si();

  inverse_cartan_ = invert_rational(cartan_);
  lattice_inverse_ = invert_rational(lattice_basis_);
  connected_ = is_connected(cartan_);

  // (omega_i, omega_j) = (C^-1)_{ji} * d_j with d_j = |alpha_j|^2 / 2.
  gram_ = RationalMatrix(rank_, rank_);
  gram_scale_ = 1;
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) {
      gram_(i, j) = inverse_cartan_(j, i) * Rational(lengths_[j]) / 2;
      mpz_lcm(gram_scale_.get_mpz_t(), gram_scale_.get_mpz_t(),
              gram_(i, j).get_den_mpz_t());
    }
  scaled_gram_.resize(rank_ * rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) {
      if (gram_(i, j) != gram_(j, i))
        throw std::logic_error("non-symmetric Gram matrix for " + name_);
      Rational s = gram_(i, j) * gram_scale_;
      scaled_gram_[i * rank_ + j] = s.get_num().get_si();
    }

  // Positive roots by increasing height: beta + alpha_i is a root iff the
  // alpha_i-string through beta extends upward, i.e. r - <beta, alpha_i^vee>
  // > 0 where r counts the downward extent.
  std::set<std::vector<std::int64_t>> known;
  std::vector<std::vector<std::int64_t>> level;
  for (std::size_t i = 0; i < rank_; ++i) {
    std::vector<std::int64_t> e(rank_, 0);
    e[i] = 1;
    known.insert(e);
    level.push_back(e);
  }
  auto to_weight = [&](const std::vector<std::int64_t> &k) {
    Weight w = Weight::zero(rank_);
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t i = 0; i < rank_; ++i)
        w[i] += cartan_small_[i * rank_ + j] * k[j];
    return w;
  };
  while (!level.empty()) {
    std::sort(level.begin(), level.end());
    std::vector<std::vector<std::int64_t>> next;
    for (const auto &beta : level) {
      positive_root_coords_.push_back(beta);
      positive_roots_.push_back(to_weight(beta));
      const Weight &bw = positive_roots_.back();
      for (std::size_t i = 0; i < rank_; ++i) {
        auto down = beta;
        std::int64_t r = 0;
        for (;;) {
          down[i] -= 1;
          if (!known.count(down))
            break;
          ++r;
        }
        if (r - bw[i] <= 0)
          continue;
        auto up = beta;
        up[i] += 1;
        if (known.insert(up).second)
          next.push_back(up);
      }
    }
    level = std::move(next);
  }
}

std::string RootDatum::lattice_description() const {
  if (lattice_basis_ == IntMatrix::identity(rank_))
    return "weight";
  if (lattice_basis_ == cartan_)
    return "root";
  std::string s = "matrix:";
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      s += (i || j ? "," : "") + lattice_basis_(i, j).get_str();
  return s;
}

Weight RootDatum::simple_root(std::size_t j) const {
  Weight w = Weight::zero(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    w[i] = cartan_small_[i * rank_ + j];
  return w;
}

Weight RootDatum::fundamental_weight(std::size_t i) const {
  Weight w = Weight::zero(rank_);
  w[i] = 1;
  return w;
}

void RootDatum::check_weight(const Weight &w) const {
  if (w.size() != rank_)
    throw std::invalid_argument("weight " + to_string(w) + " has length " +
                                std::to_string(w.size()) + ", expected " +
                                std::to_string(rank_));
}

std::vector<Rational> RootDatum::root_coordinates(const Weight &w) const {
  check_weight(w);
  std::vector<Rational> c(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      if (w[j] != 0)
        c[i] += inverse_cartan_(i, j) * static_cast<long>(w[j]);
  return c;
}

Rational RootDatum::inner_product(const Weight &a, const Weight &b) const {
  check_weight(a);
  check_weight(b);
  Rational s;
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      if (a[i] != 0 && b[j] != 0)
        s += gram_(i, j) * static_cast<long>(a[i] * b[j]);
  return s;
}

std::int64_t RootDatum::scaled_inner_product(const Weight &a,
                                             const Weight &b) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (a[i] == 0)
      continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < rank_; ++j)
      row += scaled_gram_[i * rank_ + j] * b[j];
    s += a[i] * row;
  }
  return s;
}

Weight RootDatum::reflect(const Weight &w, std::size_t i) const {
  Weight out = w;
  const std::int64_t k = w[i];
  if (k != 0)
    for (std::size_t r = 0; r < rank_; ++r)
      out[r] -= k * cartan_small_[r * rank_ + i];
  return out;
}

std::optional<std::vector<Integer>>
RootDatum::lattice_coordinates(const Weight &w) const {
  check_weight(w);
  std::vector<Integer> out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    Rational x;
    for (std::size_t j = 0; j < rank_; ++j)
      if (w[j] != 0)
        x += lattice_inverse_(i, j) * static_cast<long>(w[j]);
    if (x.get_den() != 1)
      return std::nullopt;
    out[i] = x.get_num();
  }
  return out;
}

bool RootDatum::in_character_lattice(const Weight &w) const {
  return lattice_coordinates(w).has_value();
}

Weight highest_root(const RootDatum &d) {
  if (!d.connected())
    throw std::invalid_argument("highest_root: datum " + d.name() +
                                " is not irreducible");
  return d.positive_roots().back();
}

std::int64_t coxeter_number(const RootDatum &d) {
  const auto &k = d.positive_root_coords().back();
  return 1 + std::accumulate(k.begin(), k.end(), std::int64_t{0});
}

Rational weight_height(const RootDatum &d, const Weight &w) {
  Rational h;
  for (const auto &c : d.root_coordinates(w))
    h += c;
  return h;
}

bool is_dominant(const Weight &w) {
  return std::all_of(w.coords.begin(), w.coords.end(),
                     [](std::int64_t c) { return c >= 0; });
}

Weight dominant_representative(const RootDatum &d, Weight w) {
  d.check_weight(w);
  for (;;) {
    std::size_t i = 0;
    while (i < w.size() && w[i] >= 0)
      ++i;
    if (i == w.size())
      return w;
    w = d.reflect(w, i);
  }
}

std::vector<Weight> weyl_orbit(const RootDatum &d, const Weight &w,
                               std::uint64_t cap) {
  d.check_weight(w);
  std::unordered_set<Weight, WeightHash> seen{w};
  std::deque<Weight> queue{w};
  while (!queue.empty()) {
    Weight cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < d.rank(); ++i) {
      if (cur[i] == 0)
        continue;
      Weight next = d.reflect(cur, i);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw GuardExceeded("orbit", cap);
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Weight> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool dominance_leq(const RootDatum &d, const Weight &mu,
                   const Weight &lambda) {
  for (const auto &c : d.root_coordinates(lambda - mu))
    if (c.get_den() != 1 || sgn(c) < 0)
      return false;
  return true;
}

} // namespace primebound
