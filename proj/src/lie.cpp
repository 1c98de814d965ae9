#include "antirb/lie.hpp"

#include <charconv>

#include "antirb/errors.hpp"

namespace antirb {

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::Witt:
      return "witt";
    case AlgebraKind::Virasoro:
      return "virasoro";
    case AlgebraKind::Sl2:
      return "sl2";
  }
  return "?";
}

bool BasisIndex::belongs_to(AlgebraKind algebra) const {
  switch (algebra) {
    case AlgebraKind::Witt:
      return kind == Kind::WittGen;
    case AlgebraKind::Virasoro:
      return kind == Kind::VirGen || kind == Kind::VirCentral;
    case AlgebraKind::Sl2:
      return kind == Kind::Sl2Gen && n >= 1 && n <= 3;
  }
  return false;
}

std::string BasisIndex::to_string() const {
  switch (kind) {
    case Kind::WittGen:
    case Kind::VirGen:
      return "L" + std::to_string(n);
    case Kind::VirCentral:
      return "C";
    case Kind::Sl2Gen:
      return "e" + std::to_string(n);
  }
  return "?";
}

BasisIndex parse_basis_index(AlgebraKind algebra, const std::string& text) {
  if (algebra == AlgebraKind::Virasoro && text == "C") return BasisIndex::central();
  const char expected = algebra == AlgebraKind::Sl2 ? 'e' : 'L';
  if (text.size() < 2 || text[0] != expected) {
    throw ParseError("bad basis index '" + text + "'", 0);
  }
  std::int64_t n = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("bad basis index '" + text + "'", static_cast<std::size_t>(ptr - text.data()));
  }
  BasisIndex idx = algebra == AlgebraKind::Sl2 ? BasisIndex::sl2(n) : generator(algebra, n);
  if (!idx.belongs_to(algebra)) throw ParseError("index out of range '" + text + "'", 1);
  return idx;
}

BasisIndex generator(AlgebraKind algebra, std::int64_t n) {
  switch (algebra) {
    case AlgebraKind::Witt:
      return BasisIndex::witt(n);
    case AlgebraKind::Virasoro:
      return BasisIndex::vir(n);
    case AlgebraKind::Sl2:
      break;
  }
  throw AlgebraMismatch("sl2 has no graded generators");
}

Element Element::basis(AlgebraKind algebra, BasisIndex idx, Scalar coeff) {
  Element e(algebra);
  e.add_term(idx, coeff);
  return e;
}

Scalar Element::coeff(const BasisIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Scalar() : it->second;
}

std::vector<BasisIndex> Element::support() const {
  std::vector<BasisIndex> out;
  out.reserve(terms_.size());
  for (const auto& [idx, c] : terms_) out.push_back(idx);
  return out;
}

void Element::add_term(const BasisIndex& idx, const Scalar& c) {
  if (!idx.belongs_to(algebra_)) {
    throw AlgebraMismatch(idx.to_string() + " is not a generator of " + antirb::to_string(algebra_));
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& other) {
  if (other.algebra_ != algebra_) throw AlgebraMismatch("adding elements of different algebras");
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  if (other.algebra_ != algebra_) throw AlgebraMismatch("subtracting elements of different algebras");
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

Element Element::operator-() const {
  Element out(algebra_);
  for (const auto& [idx, c] : terms_) out.terms_.emplace(idx, -c);
  return out;
}

Element operator*(const Scalar& c, const Element& x) {
  Element out(x.algebra_);
  if (c.is_zero()) return out;
  for (const auto& [idx, v] : x.terms_) out.terms_.emplace(idx, c * v);
  return out;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + "*" + idx.to_string();
  }
  return out;
}

Element add(const Element& x, const Element& y) { return x + y; }
Element scale(const Scalar& c, const Element& x) { return c * x; }
std::vector<BasisIndex> support(const Element& x) { return x.support(); }

namespace {

// Adds coeff·[x, y] into out.
void accumulate_bracket(const BasisIndex& x, const BasisIndex& y, const Scalar& coeff,
                        Element& out) {
  const AlgebraKind algebra = out.algebra();
  if (x == y || x.is_central() || y.is_central()) return;
  if (algebra == AlgebraKind::Sl2) {
    // Structure constants indexed by the ordered pair (i, j), i < j.
    auto sign = Scalar(1);
    std::int64_t i = x.n;
    std::int64_t j = y.n;
    if (i > j) {
      std::swap(i, j);
      sign = Scalar(-1);
    }
    if (i == 1 && j == 2) {
      out.add_term(BasisIndex::sl2(3), sign * coeff);
    } else if (i == 1 && j == 3) {
      out.add_term(BasisIndex::sl2(1), Scalar(2) * sign * coeff);
    } else {
      out.add_term(BasisIndex::sl2(2), Scalar(-2) * sign * coeff);
    }
    return;
  }
  const std::int64_t m = x.n;
  const std::int64_t n = y.n;
  out.add_term(generator(algebra, m + n), Scalar(m - n) * coeff);
  if (algebra == AlgebraKind::Virasoro && m + n == 0) {
    out.add_term(BasisIndex::central(), Scalar(Rational(m * m * m - m, 12)) * coeff);
  }
}

}  // namespace

Element basis_bracket(AlgebraKind algebra, const BasisIndex& x, const BasisIndex& y) {
  if (!x.belongs_to(algebra) || !y.belongs_to(algebra)) {
    throw AlgebraMismatch("bracket of foreign generators");
  }
  Element out(algebra);
  accumulate_bracket(x, y, Scalar(1), out);
  return out;
}

Element bracket(const Element& x, const Element& y) {
  if (x.algebra() != y.algebra()) throw AlgebraMismatch("bracket of elements of different algebras");
  Element out(x.algebra());
  for (const auto& [xi, xc] : x.terms()) {
    for (const auto& [yi, yc] : y.terms()) accumulate_bracket(xi, yi, xc * yc, out);
  }
  return out;
}

std::vector<BasisIndex> basis_in_window(AlgebraKind algebra, std::int64_t window) {
  std::vector<BasisIndex> out;
  if (algebra == AlgebraKind::Sl2) {
    for (std::int64_t i = 1; i <= 3; ++i) out.push_back(BasisIndex::sl2(i));
    return out;
  }
  for (std::int64_t n = -window; n <= window; ++n) out.push_back(generator(algebra, n));
  if (algebra == AlgebraKind::Virasoro) out.push_back(BasisIndex::central());
  return out;
}

}  // namespace antirb
