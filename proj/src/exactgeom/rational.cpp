#include "rgit/exactgeom/rational.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "rgit/common/errors.hpp"

namespace rgit {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotEffective: return "NotEffective";
    case ErrorKind::WallBase: return "WallBase";
    case ErrorKind::BoundaryAmbiguous: return "BoundaryAmbiguous";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::DegenerateSlice: return "DegenerateSlice";
    case ErrorKind::NotRelevant: return "NotRelevant";
  }
  return "Unknown";
}

}  // namespace rgit

namespace rgit::geom {

Rat::Rat(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw InputError("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class n{std::string(num[0] == '+' ? num.substr(1) : num)};
  mpz_class d{std::string(den)};
  if (d == 0) throw InputError("rational with zero denominator: '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

QVec QVec::unit(std::size_t dim, std::size_t i) {
  QVec v(dim);
  v[i] = 1;
  return v;
}

QVec QVec::constant(std::size_t dim, const Rat& value) {
  return QVec(std::vector<Rat>(dim, value));
}

QVec QVec::parse_list(std::string_view text) {
  std::vector<Rat> xs;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    xs.push_back(Rat::parse(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return QVec(std::move(xs));
}

bool QVec::is_zero() const {
  for (const auto& x : c_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Rat QVec::sum() const {
  Rat s;
  for (const auto& x : c_) s += x;
  return s;
}

Rat QVec::dot(const QVec& o) const {
  if (o.dim() != dim()) throw InputError("dot: dimension mismatch");
  mpq_class s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i].raw() * o.c_[i].raw();
  return Rat(s);
}

QVec& QVec::operator+=(const QVec& o) {
  if (o.dim() != dim()) throw InputError("vector add: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

QVec& QVec::operator-=(const QVec& o) {
  if (o.dim() != dim()) throw InputError("vector subtract: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

QVec& QVec::operator*=(const Rat& k) {
  for (auto& x : c_) x *= k;
  return *this;
}

std::string QVec::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i].str();
  }
  os << ')';
  return os.str();
}

QVec primitive(const QVec& v) {
  if (v.is_zero()) return v;
  mpz_class lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, x.den());
  mpz_class g = 0;
  std::vector<mpz_class> ints;
  ints.reserve(v.dim());
  for (const auto& x : v) {
    mpz_class k = x.num() * (lcm_den / x.den());
    g = gcd(g, k);
    ints.push_back(k);
  }
  g = abs(g);
  QVec out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = Rat(mpq_class(ints[i] / g));
  return out;
}

}  // namespace rgit::geom
