#include "primebound/representation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace primebound {

WeightMultiset::WeightMultiset(DatumPtr datum) : datum_(std::move(datum)) {
  if (!datum_)
    throw std::invalid_argument("WeightMultiset: null datum");
}

void WeightMultiset::add(const Weight &w, std::uint64_t multiplicity) {
  if (multiplicity == 0)
    return;
  datum_->check_weight(w);
  entries_[w] += multiplicity;
}

std::uint64_t WeightMultiset::multiplicity(const Weight &w) const {
  auto it = entries_.find(w);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t WeightMultiset::dimension() const {
  std::uint64_t d = 0;
  for (const auto &[w, m] : entries_)
    d += m;
  return d;
}

bool WeightMultiset::is_weyl_symmetric() const {
  for (const auto &[w, m] : entries_)
    for (std::size_t i = 0; i < datum_->rank(); ++i)
      if (multiplicity(datum_->reflect(w, i)) != m)
        return false;
  return true;
}

bool WeightMultiset::has_zero_weighted_sum() const {
  std::vector<Integer> sum(datum_->rank());
  for (const auto &[w, m] : entries_)
    for (std::size_t i = 0; i < w.size(); ++i)
      sum[i] += Integer(static_cast<long>(w[i])) * Integer(m);
  return std::all_of(sum.begin(), sum.end(),
                     [](const Integer &z) { return sgn(z) == 0; });
}

// ---------------------------------------------------------------------------
// RepExpr

RepExpr RepExpr::irreducible(Weight highest_weight) {
  RepExpr e;
  e.kind_ = Kind::irreducible;
  e.weight_ = std::move(highest_weight);
  return e;
}

RepExpr RepExpr::catalog(std::string name) {
  RepExpr e;
  e.kind_ = Kind::catalog;
  e.name_ = std::move(name);
  return e;
}

RepExpr RepExpr::direct_sum(std::vector<RepExpr> parts) {
  if (parts.empty())
    throw std::invalid_argument("empty direct sum");
  RepExpr e;
  e.kind_ = Kind::direct_sum;
  e.children_ = std::move(parts);
  return e;
}

RepExpr RepExpr::tensor(std::vector<RepExpr> parts) {
  if (parts.empty())
    throw std::invalid_argument("empty tensor product");
  RepExpr e;
  e.kind_ = Kind::tensor;
  e.children_ = std::move(parts);
  return e;
}

RepExpr RepExpr::dual(RepExpr inner) {
  RepExpr e;
  e.kind_ = Kind::dual;
  e.children_.push_back(std::move(inner));
  return e;
}

RepExpr RepExpr::sym(unsigned k, RepExpr inner) {
  RepExpr e;
  e.kind_ = Kind::sym;
  e.power_ = k;
  e.children_.push_back(std::move(inner));
  return e;
}

RepExpr RepExpr::wedge(unsigned k, RepExpr inner) {
  RepExpr e;
  e.kind_ = Kind::wedge;
  e.power_ = k;
  e.children_.push_back(std::move(inner));
  return e;
}

std::string RepExpr::to_string() const {
  auto joined = [&](const char *sep, bool paren_sums, bool paren_products) {
    std::string s;
    for (std::size_t i = 0; i < children_.size(); ++i) {
      const auto &c = children_[i];
      const bool paren = (paren_sums && c.kind_ == Kind::direct_sum) ||
                         (paren_products && c.kind_ == Kind::tensor);
      if (i)
        s += sep;
      s += paren ? "(" + c.to_string() + ")" : c.to_string();
    }
    return s;
  };
  switch (kind_) {
  case Kind::irreducible: {
    std::string s = "V(";
    for (std::size_t i = 0; i < weight_.size(); ++i)
      s += (i ? "," : "") + std::to_string(weight_[i]);
    return s + ")";
  }
  case Kind::catalog:
    return name_;
  case Kind::direct_sum:
    return joined(" + ", true, false);
  case Kind::tensor:
    return joined(" * ", true, true);
  case Kind::dual:
    return "dual(" + children_[0].to_string() + ")";
  case Kind::sym:
    return "sym(" + std::to_string(power_) + "," + children_[0].to_string() +
           ")";
  case Kind::wedge:
    return "wedge(" + std::to_string(power_) + "," +
           children_[0].to_string() + ")";
  }
  return {};
}

namespace {

class RepParser {
public:
  explicit RepParser(const std::string &text) : s_(text) {}

  RepExpr parse() {
    RepExpr e = sum();
    skip_ws();
    if (pos_ != s_.size())
      throw RepParseError("unexpected '" + std::string(1, s_[pos_]) + "'",
                          pos_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw RepParseError(std::string("expected '") + c + "'", pos_);
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    const std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty() || tok == "-" || tok == "+")
      throw RepParseError("expected integer", start);
    try {
      return std::stoll(tok);
    } catch (const std::out_of_range &) {
      throw RepParseError("integer out of range", start);
    }
  }

  RepExpr sum() {
    std::vector<RepExpr> parts{product()};
    while (accept('+'))
      parts.push_back(product());
    return parts.size() == 1 ? std::move(parts[0])
                             : RepExpr::direct_sum(std::move(parts));
  }

  RepExpr product() {
    std::vector<RepExpr> parts{unary()};
    while (accept('*'))
      parts.push_back(unary());
    return parts.size() == 1 ? std::move(parts[0])
                             : RepExpr::tensor(std::move(parts));
  }

  RepExpr unary() {
    skip_ws();
    if (accept('(')) {
      RepExpr e = sum();
      expect(')');
      return e;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string word = s_.substr(start, pos_ - start);
    if (word.empty())
      throw RepParseError("expected representation", start);

    if (word == "V") {
      expect('(');
      std::vector<std::int64_t> coords{integer()};
      while (accept(','))
        coords.push_back(integer());
      expect(')');
      return RepExpr::irreducible(Weight(std::move(coords)));
    }
    if (word == "dual") {
      expect('(');
      RepExpr inner = sum();
      expect(')');
      return RepExpr::dual(std::move(inner));
    }
    if (word == "sym" || word == "wedge") {
      expect('(');
      skip_ws();
      const std::size_t kpos = pos_;
      const std::int64_t k = integer();
      if (k < 0)
        throw RepParseError("power must be nonnegative", kpos);
      expect(',');
      RepExpr inner = sum();
      expect(')');
      return word == "sym" ? RepExpr::sym(static_cast<unsigned>(k), std::move(inner))
                           : RepExpr::wedge(static_cast<unsigned>(k), std::move(inner));
    }
    if (word == "trivial" || word == "standard" || word == "adjoint")
      return RepExpr::catalog(word);
    throw RepParseError("unknown representation '" + word + "'", start);
  }

  const std::string &s_;
  std::size_t pos_ = 0;
};

} // namespace

RepExpr parse_rep_expr(const std::string &text) {
  return RepParser(text).parse();
}

// ---------------------------------------------------------------------------
// Catalog and validation

namespace {

// Highest root among those of the given squared length.
Weight highest_root_of_length(const RootDatum &d, bool short_root) {
  const auto &roots = d.positive_roots();
  Rational target;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    Rational len = d.inner_product(d.simple_root(i), d.simple_root(i));
    if (i == 0 || (short_root ? len < target : len > target))
      target = len;
  }
  for (auto it = roots.rbegin(); it != roots.rend(); ++it)
    if (d.inner_product(*it, *it) == target)
      return *it;
  throw std::logic_error("no root of requested length");
}

} // namespace

Weight catalog_highest_weight(const RootDatum &d, const std::string &name) {
  if (name == "trivial")
    return Weight::zero(d.rank());
  if (name == "adjoint")
    return highest_root(d);
  if (name == "standard") {
    if (!d.type_letter())
      throw std::invalid_argument("'standard' needs a simple type, got " +
                                  d.name());
    switch (*d.type_letter()) {
    case 'A':
    case 'B':
    case 'C':
    case 'D':
    case 'E':
      if (*d.type_letter() == 'E' && d.rank() == 8)
        return highest_root(d);
      if (*d.type_letter() == 'E' && d.rank() == 7)
        return d.fundamental_weight(6);
      return d.fundamental_weight(0);
    case 'F':
    case 'G':
      return highest_root_of_length(d, true);
    }
  }
  throw std::invalid_argument("unknown catalog representation '" + name + "'");
}

namespace {

void validate(const RootDatum &d, const RepExpr &e) {
  switch (e.kind()) {
  case RepExpr::Kind::irreducible:
    d.check_weight(e.highest_weight());
    if (!is_dominant(e.highest_weight()))
      throw std::invalid_argument("highest weight " +
                                  to_string(e.highest_weight()) +
                                  " is not dominant");
    return;
  case RepExpr::Kind::catalog:
    (void)catalog_highest_weight(d, e.catalog_name());
    return;
  default:
    if (e.children().empty())
      throw std::invalid_argument("empty " + e.to_string());
    for (const auto &c : e.children())
      validate(d, c);
  }
}

} // namespace

RepSpec make_rep_spec(DatumPtr datum, RepExpr expr) {
  if (!datum)
    throw std::invalid_argument("make_rep_spec: null datum");
  validate(*datum, expr);
  return RepSpec{std::move(datum), std::move(expr)};
}

// ---------------------------------------------------------------------------
// Weyl modules

std::vector<Weight> dominant_weights_below(const RootDatum &d,
                                           const Weight &lambda,
                                           std::uint64_t cap) {
  d.check_weight(lambda);
  if (!is_dominant(lambda))
    throw std::invalid_argument("weight " + to_string(lambda) +
                                " is not dominant");
  // Dominant weights below lambda are connected to lambda through chains of
  // dominant weights differing by positive roots.
  std::unordered_set<Weight, WeightHash> seen{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    Weight mu = std::move(queue.front());
    queue.pop_front();
    for (const auto &alpha : d.positive_roots()) {
      Weight nu = mu - alpha;
      if (!is_dominant(nu) || seen.count(nu))
        continue;
      seen.insert(nu);
      if (seen.size() > cap)
        throw GuardExceeded("orbit", cap);
      queue.push_back(std::move(nu));
    }
  }
  std::vector<std::pair<Rational, Weight>> keyed;
  keyed.reserve(seen.size());
  for (const auto &w : seen)
    keyed.emplace_back(weight_height(d, w), w);
  std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first)
      return a.first > b.first;
    return a.second > b.second;
  });
  std::vector<Weight> out;
  out.reserve(keyed.size());
  for (auto &k : keyed)
    out.push_back(std::move(k.second));
  return out;
}

std::vector<std::pair<Weight, Integer>>
dominant_character(const RootDatum &d, const Weight &lambda,
                   std::uint64_t cap) {
  const std::vector<Weight> dominant = dominant_weights_below(d, lambda, cap);
  const Weight rho = d.rho();
  const Weight lr = lambda + rho;
  const std::int64_t top = d.scaled_inner_product(lr, lr);

  std::unordered_map<Weight, Integer, WeightHash> mult;
  std::vector<std::pair<Weight, Integer>> out;
  out.reserve(dominant.size());
  auto lookup = [&](const Weight &w) -> const Integer * {
    auto it = mult.find(dominant_representative(d, w));
    return it == mult.end() ? nullptr : &it->second;
  };

  for (const auto &mu : dominant) {
    if (mu == lambda) {
      mult.emplace(mu, 1);
      out.emplace_back(mu, 1);
      continue;
    }
    // Freudenthal: (|lambda+rho|^2 - |mu+rho|^2) m(mu)
    //            = 2 sum_{alpha>0} sum_{k>=1} m(mu + k alpha)(mu + k alpha, alpha)
    Integer numerator;
    for (const auto &alpha : d.positive_roots()) {
      Weight nu = mu + alpha;
      for (;;) {
        const Integer *m = lookup(nu);
        if (!m)
          break;
        numerator += *m * Integer(static_cast<long>(d.scaled_inner_product(nu, alpha)));
        nu += alpha;
      }
    }
    numerator *= 2;
    const Weight mr = mu + rho;
    const std::int64_t denom = top - d.scaled_inner_product(mr, mr);
    if (denom <= 0)
      throw std::logic_error("Freudenthal denominator vanished at " +
                             to_string(mu));
    Integer m;
    if (!mpz_divisible_ui_p(numerator.get_mpz_t(), static_cast<unsigned long>(denom)))
      throw std::logic_error("Freudenthal multiplicity not integral at " +
                             to_string(mu));
    mpz_divexact_ui(m.get_mpz_t(), numerator.get_mpz_t(),
                    static_cast<unsigned long>(denom));
    mult.emplace(mu, m);
    out.emplace_back(mu, m);
  }
  return out;
}

Integer weyl_dimension(const RootDatum &d, const Weight &lambda) {
  d.check_weight(lambda);
  if (!is_dominant(lambda))
    throw std::invalid_argument("weight " + to_string(lambda) +
                                " is not dominant");
  const Weight rho = d.rho();
  const Weight lr = lambda + rho;
  Rational dim = 1;
  for (const auto &alpha : d.positive_roots())
    dim *= Rational(static_cast<long>(d.scaled_inner_product(lr, alpha))) /
           static_cast<long>(d.scaled_inner_product(rho, alpha));
  if (dim.get_den() != 1)
    throw std::logic_error("Weyl dimension not integral");
  return dim.get_num();
}

namespace {

std::uint64_t checked_dimension(const Integer &dim, std::uint64_t cap) {
  if (dim > Integer(std::to_string(cap)))
    throw GuardExceeded("dimension", cap);
  return static_cast<std::uint64_t>(std::stoull(dim.get_str()));
}

} // namespace

WeightMultiset weyl_module_weights(const DatumPtr &d, const Weight &lambda,
                                   const GuardCaps &caps) {
  checked_dimension(weyl_dimension(*d, lambda), caps.max_dimension);
  WeightMultiset out(d);
  for (const auto &[mu, m] : dominant_character(*d, lambda, caps.max_orbit)) {
    const auto mm = static_cast<std::uint64_t>(std::stoull(m.get_str()));
    for (const auto &w : weyl_orbit(*d, mu, caps.max_orbit))
      out.add(w, mm);
  }
  return out;
}

WeightMultiset dual(const WeightMultiset &w) {
  WeightMultiset out(w.datum_ptr());
  for (const auto &[wt, m] : w.entries())
    out.add(-wt, m);
  return out;
}

WeightMultiset tensor_product(const WeightMultiset &a, const WeightMultiset &b,
                              std::uint64_t cap) {
  if (!(a.datum() == b.datum()))
    throw std::invalid_argument("tensor_product: different root data");
  checked_dimension(Integer(a.dimension()) * Integer(b.dimension()), cap);
  WeightMultiset out(a.datum_ptr());
  for (const auto &[x, m] : a.entries())
    for (const auto &[y, n] : b.entries())
      out.add(x + y, m * n);
  return out;
}

namespace {

Integer binomial(const Integer &n, unsigned long k) {
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// Coefficient of t^k in prod over weights of (1 + t e^w)^m (exterior) or
// (1 - t e^w)^-m (symmetric).
WeightMultiset graded_power(const WeightMultiset &w, unsigned k,
                            bool symmetric, std::uint64_t cap) {
  const Integer total(w.dimension());
  checked_dimension(symmetric ? binomial(total + k - 1, k) : binomial(total, k),
                    cap);
  using Level = std::map<Weight, std::uint64_t>;
  std::vector<Level> levels(k + 1);
  levels[0][Weight::zero(w.datum().rank())] = 1;
  for (const auto &[wt, m] : w.entries()) {
    std::vector<Level> next(k + 1);
    for (unsigned j = 0; j <= k; ++j)
      for (unsigned t = 0; t <= j; ++t) {
        const Integer c = symmetric ? binomial(Integer(m) + t - 1, t)
                                    : binomial(Integer(m), t);
        if (sgn(c) == 0)
          continue;
        const auto coef = static_cast<std::uint64_t>(std::stoull(c.get_str()));
        const Weight shift = static_cast<std::int64_t>(t) * wt;
        for (const auto &[x, n] : levels[j - t])
          next[j][x + shift] += n * coef;
      }
    levels = std::move(next);
  }
  WeightMultiset out(w.datum_ptr());
  for (const auto &[x, n] : levels[k])
    out.add(x, n);
  return out;
}

} // namespace

WeightMultiset symmetric_power(const WeightMultiset &w, unsigned k,
                               std::uint64_t cap) {
  return graded_power(w, k, true, cap);
}

WeightMultiset exterior_power(const WeightMultiset &w, unsigned k,
                              std::uint64_t cap) {
  return graded_power(w, k, false, cap);
}

namespace {

WeightMultiset expand_expr(const DatumPtr &d, const RepExpr &e,
                           const GuardCaps &caps) {
  using K = RepExpr::Kind;
  switch (e.kind()) {
  case K::irreducible:
    return weyl_module_weights(d, e.highest_weight(), caps);
  case K::catalog:
    return weyl_module_weights(d, catalog_highest_weight(*d, e.catalog_name()),
                               caps);
  case K::direct_sum: {
    WeightMultiset out(d);
    std::uint64_t dim = 0;
    for (const auto &c : e.children()) {
      WeightMultiset part = expand_expr(d, c, caps);
      dim += part.dimension();
      if (dim > caps.max_dimension)
        throw GuardExceeded("dimension", caps.max_dimension);
      for (const auto &[w, m] : part.entries())
        out.add(w, m);
    }
    return out;
  }
  case K::tensor: {
    WeightMultiset out = expand_expr(d, e.children()[0], caps);
    for (std::size_t i = 1; i < e.children().size(); ++i)
      out = tensor_product(out, expand_expr(d, e.children()[i], caps),
                           caps.max_dimension);
    return out;
  }
  case K::dual:
    return dual(expand_expr(d, e.children()[0], caps));
  case K::sym:
    return symmetric_power(expand_expr(d, e.children()[0], caps), e.power(),
                           caps.max_dimension);
  case K::wedge:
    return exterior_power(expand_expr(d, e.children()[0], caps), e.power(),
                          caps.max_dimension);
  }
  throw std::logic_error("unhandled representation kind");
}

// Dominant weights occurring, computed without full expansion where the
// structure allows it.
std::set<Weight> dominant_support(const DatumPtr &d, const RepExpr &e,
                                  const GuardCaps &caps) {
  using K = RepExpr::Kind;
  switch (e.kind()) {
  case K::irreducible: {
    auto v = dominant_weights_below(*d, e.highest_weight(), caps.max_orbit);
    return {v.begin(), v.end()};
  }
  case K::catalog: {
    auto v = dominant_weights_below(
        *d, catalog_highest_weight(*d, e.catalog_name()), caps.max_orbit);
    return {v.begin(), v.end()};
  }
  case K::direct_sum: {
    std::set<Weight> out;
    for (const auto &c : e.children()) {
      auto s = dominant_support(d, c, caps);
      out.insert(s.begin(), s.end());
    }
    return out;
  }
  case K::dual: {
    std::set<Weight> out;
    for (const auto &w : dominant_support(d, e.children()[0], caps))
      out.insert(dominant_representative(*d, -w));
    return out;
  }
  default: {
    auto v = dominant_weights_occurring(expand_expr(d, e, caps));
    return {v.begin(), v.end()};
  }
  }
}

Rational max_double_height(const RootDatum &d,
                           const std::vector<Weight> &dominant) {
  if (dominant.empty())
    throw std::invalid_argument("height of an empty representation");
  Rational best = 2 * weight_height(d, dominant.front());
  for (const auto &w : dominant) {
    Rational h = 2 * weight_height(d, w);
    if (h > best)
      best = h;
  }
  return best;
}

} // namespace

WeightMultiset expand(const RepSpec &spec, const GuardCaps &caps) {
  return expand_expr(spec.datum, spec.expr, caps);
}

Rational rep_height(const WeightMultiset &w) {
  if (w.empty())
    throw std::invalid_argument("rep_height: empty multiset");
  return max_double_height(w.datum(), dominant_weights_occurring(w));
}

Rational rep_height(const RepSpec &spec, const GuardCaps &caps) {
  auto support = dominant_support(spec.datum, spec.expr, caps);
  return max_double_height(*spec.datum,
                           std::vector<Weight>(support.begin(), support.end()));
}

bool is_low_height(const Rational &height, std::uint64_t p) {
  if (!is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  return height < Rational(std::to_string(p));
}

bool is_low_height(const WeightMultiset &w, std::uint64_t p) {
  return is_low_height(rep_height(w), p);
}

std::vector<Weight> dominant_weights_occurring(const WeightMultiset &w) {
  std::vector<Weight> out;
  for (const auto &[wt, m] : w.entries())
    if (is_dominant(wt))
      out.push_back(wt);
  return out;
}

WeightMultiset restrict_to_levi(const WeightMultiset &w,
                                const std::vector<std::size_t> &simple_subset) {
  auto levi = share(RootDatum::levi(w.datum(), simple_subset));
  std::vector<std::size_t> idx = simple_subset;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  WeightMultiset out(levi);
  for (const auto &[wt, m] : w.entries()) {
    Weight r = Weight::zero(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      r[a] = wt[idx[a]];
    out.add(r, m);
  }
  return out;
}

} // namespace primebound
