#pragma once

// Exact arithmetic for boundary points of the upper half-plane and for
// isometries written as (1/sqrt(d)) * M with M an integer matrix, det(M) = d.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jigsaw {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  ZeroMatrix,
  DeterminantMismatch,
  IdentityElement,
  NotBalanced,
  NotATree,
  MatchFailure,
  DuplicateSideUse,
  FixesInfinity,
  NoStripLift,
  FamilyOutOfScope,
  Parse,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::DeterminantMismatch: return "DeterminantMismatch";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::MatchFailure: return "MatchFailure";
    case ErrorKind::DuplicateSideUse: return "DuplicateSideUse";
    case ErrorKind::FixesInfinity: return "FixesInfinity";
    case ErrorKind::NoStripLift: return "NoStripLift";
    case ErrorKind::FamilyOutOfScope: return "FamilyOutOfScope";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p", "p/q" or "-p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(s.empty() || s[0] != '+' ? s : s.substr(1));
  };
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  const auto den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num_text) || !digits(den_text))
    throw Error(ErrorKind::Parse, "not a rational number: '" + std::string(text) + "'");
  Integer num(strip_plus(num_text));
  Integer den(strip_plus(den_text));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

/// A point of Q ∪ {∞}: num/den in lowest terms with den >= 0; ∞ is 1/0.
class ExtendedRational {
 public:
  ExtendedRational() : num_(0), den_(1) {}
  ExtendedRational(long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  ExtendedRational(const Rational& q)                     // NOLINT(google-explicit-constructor)
      : num_(q.get_num()), den_(q.get_den()) {}

  ExtendedRational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) {
      if (num_ == 0) throw Error(ErrorKind::InvalidArgument, "0/0 is not a point of Q ∪ {∞}");
      num_ = 1;
      return;
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static ExtendedRational infinity() { return ExtendedRational(Integer(1), Integer(0)); }

  /// Accepts "p/q", integers, and "inf" / "oo" / "1/0" for the point at infinity.
  static ExtendedRational parse(std::string_view text) {
    if (text == "inf" || text == "oo" || text == "infinity" || text == "1/0") return infinity();
    return ExtendedRational(parse_rational(text));
  }

  bool is_infinity() const { return den_ == 0; }
  bool is_integer() const { return den_ == 1; }
  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  Rational value() const {
    if (is_infinity()) throw Error(ErrorKind::InvalidArgument, "∞ has no finite value");
    return Rational(num_, den_);
  }

  std::string str() const { return num_.get_str() + "/" + den_.get_str(); }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // ∞ sorts after every finite point.
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinity() || b.is_infinity()) {
      return static_cast<int>(a.is_infinity()) <=> static_cast<int>(b.is_infinity());
    }
    const int c = cmp(Integer(a.num_ * b.den_), Integer(b.num_ * a.den_));
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) {
    return os << (x.is_infinity() ? std::string("∞") : x.str());
  }

 private:
  Integer num_;
  Integer den_;
};

enum class MobiusKind { Elliptic, Parabolic, HyperbolicRational, HyperbolicIrrational };

struct FixedPoints {
  MobiusKind kind;
  std::vector<ExtendedRational> points;  // sorted, only the rational ones
};

/// Projective isometry (1/sqrt(d)) * [[m11, m12], [m21, m22]] in canonical form:
/// the integer matrix is primitive, has determinant d > 0, and its first nonzero
/// entry is positive.
class GroupElement {
 public:
  GroupElement() : m_{Integer(1), Integer(0), Integer(0), Integer(1)}, d_(1) {}

  static GroupElement identity() { return GroupElement(); }

  /// Canonical representative of the projective class of M. Accepts any M whose
  /// determinant is a positive rational square multiple of d.
  static GroupElement normalize(Integer m11, Integer m12, Integer m21, Integer m22, const Integer& d) {
    if (m11 == 0 && m12 == 0 && m21 == 0 && m22 == 0)
      throw Error(ErrorKind::ZeroMatrix, "the zero matrix is not invertible");
    if (d <= 0) throw Error(ErrorKind::DeterminantMismatch, "scale d must be positive, got " + d.get_str());
    Integer det = m11 * m22 - m12 * m21;
    if (det <= 0)
      throw Error(ErrorKind::DeterminantMismatch,
                  "determinant " + det.get_str() + " cannot be scaled to " + d.get_str());
    Integer product = det * d;
    if (mpz_perfect_square_p(product.get_mpz_t()) == 0)
      throw Error(ErrorKind::DeterminantMismatch,
                  "determinant " + det.get_str() + " is not a square multiple of " + d.get_str());
    return from_integer_matrix(std::move(m11), std::move(m12), std::move(m21), std::move(m22));
  }

  /// Integer matrix with positive determinant, taken projectively.
  static GroupElement from_matrix(Integer m11, Integer m12, Integer m21, Integer m22) {
    if (m11 == 0 && m12 == 0 && m21 == 0 && m22 == 0)
      throw Error(ErrorKind::ZeroMatrix, "the zero matrix is not invertible");
    Integer det = m11 * m22 - m12 * m21;
    if (det <= 0)
      throw Error(ErrorKind::DeterminantMismatch, "orientation-reversing or singular matrix");
    return from_integer_matrix(std::move(m11), std::move(m12), std::move(m21), std::move(m22));
  }

  /// Rational matrix with positive determinant, taken projectively.
  static GroupElement from_rational_matrix(const Rational& a, const Rational& b, const Rational& c,
                                           const Rational& d) {
    Integer l = lcm(lcm(a.get_den(), b.get_den()), lcm(c.get_den(), d.get_den()));
    auto scaled = [&](const Rational& q) { return Integer(q.get_num() * (l / q.get_den())); };
    return from_matrix(scaled(a), scaled(b), scaled(c), scaled(d));
  }

  /// Translation x -> x + n.
  static GroupElement translation(const Integer& n) { return from_matrix(1, n, 0, 1); }
  static GroupElement translation(const Rational& t) { return from_rational_matrix(1, t, 0, 1); }

  const Integer& m11() const { return m_[0]; }
  const Integer& m12() const { return m_[1]; }
  const Integer& m21() const { return m_[2]; }
  const Integer& m22() const { return m_[3]; }
  const Integer& d() const { return d_; }

  bool is_identity() const { return m_[1] == 0 && m_[2] == 0 && m_[0] == m_[3]; }

  GroupElement inverse() const { return GroupElement(m_[3], -m_[1], -m_[2], m_[0], d_, true); }

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return from_integer_matrix(g.m_[0] * h.m_[0] + g.m_[1] * h.m_[2], g.m_[0] * h.m_[1] + g.m_[1] * h.m_[3],
                               g.m_[2] * h.m_[0] + g.m_[3] * h.m_[2], g.m_[2] * h.m_[1] + g.m_[3] * h.m_[3]);
  }

  GroupElement& operator*=(const GroupElement& h) { return *this = *this * h; }

  /// Möbius action; the scalar 1/sqrt(d) cancels.
  ExtendedRational apply(const ExtendedRational& x) const {
    if (x.is_infinity()) return ExtendedRational(m_[0], m_[2]);
    return ExtendedRational(m_[0] * x.num() + m_[1] * x.den(), m_[2] * x.num() + m_[3] * x.den());
  }

  ExtendedRational operator()(const ExtendedRational& x) const { return apply(x); }

  Integer trace() const { return m_[0] + m_[3]; }

  /// (m11 + m22)^2 / d, a conjugation invariant of the projective class.
  Rational trace_squared() const {
    Integer t = trace();
    return make_rational(t * t, d_);
  }

  /// Rational fixed points of the Möbius map together with its type.
  FixedPoints rational_fixed_points() const {
    if (is_identity()) throw Error(ErrorKind::IdentityElement, "every point is fixed by the identity");
    Integer t = trace();
    Integer disc = t * t - 4 * d_;  // equals (m11 - m22)^2 + 4 m12 m21
    FixedPoints out{};
    if (disc < 0) {
      out.kind = MobiusKind::Elliptic;
      return out;
    }
    if (disc == 0) {
      out.kind = MobiusKind::Parabolic;
      if (m_[2] == 0)
        out.points.push_back(ExtendedRational::infinity());
      else
        out.points.emplace_back(m_[0] - m_[3], Integer(2 * m_[2]));
      return out;
    }
    if (mpz_perfect_square_p(disc.get_mpz_t()) == 0) {
      out.kind = MobiusKind::HyperbolicIrrational;
      return out;
    }
    out.kind = MobiusKind::HyperbolicRational;
    if (m_[2] == 0) {
      out.points.push_back(ExtendedRational(m_[1], Integer(m_[3] - m_[0])));
      out.points.push_back(ExtendedRational::infinity());
    } else {
      Integer root = sqrt(disc);
      out.points.emplace_back(m_[0] - m_[3] - root, Integer(2 * m_[2]));
      out.points.emplace_back(m_[0] - m_[3] + root, Integer(2 * m_[2]));
      std::sort(out.points.begin(), out.points.end());
    }
    return out;
  }

  bool is_hyperbolic() const { return !is_identity() && trace_squared() > 4; }

  /// gcd of the first column: the contraction constant of the cusp g(∞).
  Integer first_column_gcd() const { return gcd(m_[0], m_[2]); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.d_ == b.d_ && a.m_ == b.m_;
  }

  std::string str() const {
    std::string s = "[[" + m_[0].get_str() + "," + m_[1].get_str() + "],[" + m_[2].get_str() + "," +
                    m_[3].get_str() + "]]";
    return d_ == 1 ? s : "(1/sqrt(" + d_.get_str() + "))" + s;
  }

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.str(); }

 private:
  GroupElement(Integer m11, Integer m12, Integer m21, Integer m22, Integer d, bool fix_sign)
      : m_{std::move(m11), std::move(m12), std::move(m21), std::move(m22)}, d_(std::move(d)) {
    if (fix_sign) normalize_sign();
  }

  static GroupElement from_integer_matrix(Integer m11, Integer m12, Integer m21, Integer m22) {
    Integer g = gcd(gcd(m11, m12), gcd(m21, m22));
    if (g != 1) {
      m11 /= g;
      m12 /= g;
      m21 /= g;
      m22 /= g;
    }
    Integer det = m11 * m22 - m12 * m21;
    return GroupElement(std::move(m11), std::move(m12), std::move(m21), std::move(m22), std::move(det), true);
  }

  void normalize_sign() {
    for (const auto& entry : m_) {
      if (entry == 0) continue;
      if (entry < 0)
        for (auto& e : m_) e = -e;
      return;
    }
  }

  std::array<Integer, 4> m_;
  Integer d_;
};

/// Möbius map sending 0, ∞, 1 to p, q, r (distinct points).
inline std::array<Integer, 4> frame_matrix(const ExtendedRational& p, const ExtendedRational& q,
                                           const ExtendedRational& r) {
  // Columns are λ·q and μ·p with λ·q + μ·p = r, scaled to clear the common denominator.
  const Integer& px = p.num();
  const Integer& py = p.den();
  const Integer& qx = q.num();
  const Integer& qy = q.den();
  const Integer& rx = r.num();
  const Integer& ry = r.den();
  Integer lambda = rx * py - px * ry;
  Integer mu = qx * ry - rx * qy;
  if (lambda == 0 || mu == 0) throw Error(ErrorKind::InvalidArgument, "frame points must be distinct");
  return {Integer(lambda * qx), Integer(mu * px), Integer(lambda * qy), Integer(mu * py)};
}

/// The unique orientation-preserving Möbius map sending src[i] to dst[i].
inline GroupElement map_triple(const std::array<ExtendedRational, 3>& src,
                               const std::array<ExtendedRational, 3>& dst) {
  auto f = frame_matrix(src[0], src[1], src[2]);
  auto g = frame_matrix(dst[0], dst[1], dst[2]);
  // g * adj(f)
  Integer a = g[0] * f[3] - g[1] * f[2];
  Integer b = -g[0] * f[1] + g[1] * f[0];
  Integer c = g[2] * f[3] - g[3] * f[2];
  Integer d = -g[2] * f[1] + g[3] * f[0];
  if (a * d - b * c <= 0)
    throw Error(ErrorKind::InvalidArgument, "triples have opposite orientations");
  return GroupElement::from_matrix(std::move(a), std::move(b), std::move(c), std::move(d));
}

/// Cyclic orientation of three distinct points of the circle Q ∪ {∞}: +1 when
/// a -> b -> c runs in the increasing direction, -1 otherwise.
inline int cyclic_orientation(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& c) {
  auto det = [](const ExtendedRational& x, const ExtendedRational& y) {
    return Integer(x.num() * y.den() - y.num() * x.den());
  };
  Integer s = det(a, b) * det(b, c) * det(c, a);
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

/// True when x lies on the open arc from a to b that avoids c.
inline bool on_arc_avoiding(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& c,
                            const ExtendedRational& x) {
  if (x == a || x == b || x == c) return false;
  return cyclic_orientation(a, x, b) == -cyclic_orientation(a, c, b);
}

/// A freely reduced word in involutive generators: letters (a1, a2, ..., ak)
/// denote the product ι_a1 · ι_a2 ··· ι_ak, so ι_ak acts first.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const int> letters) {
    for (int l : letters) push_back(l);
  }
  Word(std::initializer_list<int> letters) {
    for (int l : letters) push_back(l);
  }

  void push_back(int letter) {
    if (!letters_.empty() && letters_.back() == letter)
      letters_.pop_back();
    else
      letters_.push_back(letter);
  }

  /// this := this · other
  Word& append(const Word& other) {
    for (int l : other.letters_) push_back(l);
    return *this;
  }

  /// this := other · this
  Word& prepend(const Word& other) {
    Word w = other;
    w.append(*this);
    return *this = std::move(w);
  }

  Word inverse() const {
    Word w;
    w.letters_.assign(letters_.rbegin(), letters_.rend());
    return w;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }

  friend Word operator*(Word a, const Word& b) { return a.append(b); }
  friend bool operator==(const Word&, const Word&) = default;

  GroupElement evaluate(std::span<const GroupElement> generators) const {
    GroupElement g;
    for (int l : letters_) g = g * generators[static_cast<std::size_t>(l)];
    return g;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(letters_[i]);
    }
    return s;
  }

 private:
  std::vector<int> letters_;
};

inline std::size_t bit_length(const Integer& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace jigsaw
