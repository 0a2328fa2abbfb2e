#include "qdgeo/phase.hpp"

#include <cmath>

namespace qdgeo {

PhasePoint::PhasePoint(std::vector<double> q_, std::vector<double> p_)
    : q(std::move(q_)), p(std::move(p_)) {
  if (q.size() != p.size() || q.empty())
    throw std::invalid_argument("PhasePoint: q and p must have the same nonzero length");
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!std::isfinite(q[i]) || !std::isfinite(p[i]))
      throw std::invalid_argument("PhasePoint: non-finite coordinate");
}

std::vector<double> PhasePoint::flat() const {
  std::vector<double> x(q);
  x.insert(x.end(), p.begin(), p.end());
  return x;
}

PhasePoint PhasePoint::from_flat(std::span<const double> x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("PhasePoint::from_flat: odd length");
  auto n = x.size() / 2;
  return PhasePoint({x.begin(), x.begin() + n}, {x.begin() + n, x.end()});
}

PhaseFunction PhaseFunction::with_label(std::string label) const {
  PhaseFunction f = *this;
  f.label_ = std::move(label);
  return f;
}

double PhaseFunction::operator()(const PhasePoint& x) const {
  return (*this)(std::span<const double>(x.q), std::span<const double>(x.p));
}

double PhaseFunction::operator()(std::span<const double> q, std::span<const double> p) const {
  if (q.size() != arity_ || p.size() != arity_)
    throw std::invalid_argument("PhaseFunction '" + label_ + "': point dimension " +
                                std::to_string(q.size()) + " != arity " + std::to_string(arity_));
  return impl_->call(q, p);
}

namespace {
void require_same_arity(const PhaseFunction& a, const PhaseFunction& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("PhaseFunction arithmetic: arity mismatch");
}
}  // namespace

PhaseFunction operator+(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_arity(a, b);
  return PhaseFunction(
      a.arity(), [a, b](auto q, auto p) { return a.eval(q, p) + b.eval(q, p); },
      "(" + a.label() + "+" + b.label() + ")");
}

PhaseFunction operator-(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_arity(a, b);
  return PhaseFunction(
      a.arity(), [a, b](auto q, auto p) { return a.eval(q, p) - b.eval(q, p); },
      "(" + a.label() + "-" + b.label() + ")");
}

PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_arity(a, b);
  return PhaseFunction(
      a.arity(), [a, b](auto q, auto p) { return a.eval(q, p) * b.eval(q, p); },
      a.label() + "*" + b.label());
}

PhaseFunction operator*(double s, const PhaseFunction& a) {
  return PhaseFunction(
      a.arity(), [s, a](auto q, auto p) { return s * a.eval(q, p); }, a.label());
}

void require_arity(std::span<const PhaseFunction> funcs, std::size_t n, const char* where) {
  for (const auto& f : funcs)
    if (f.arity() != n)
      throw std::invalid_argument(std::string(where) + ": arity mismatch ('" + f.label() + "' has " +
                                  std::to_string(f.arity()) + ", expected " + std::to_string(n) + ")");
}

PhaseFunction coordinate_q(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("coordinate_q: index");
  return PhaseFunction(n, [i](auto q, auto) { return q[i]; }, "q" + std::to_string(i + 1));
}

PhaseFunction coordinate_p(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("coordinate_p: index");
  return PhaseFunction(n, [i](auto, auto p) { return p[i]; }, "p" + std::to_string(i + 1));
}

PhaseFunction constant_function(std::size_t n, double c) {
  return PhaseFunction(
      n,
      [c](auto q, auto) {
        using T = typename decltype(q)::value_type;
        return T(c);
      },
      "const");
}

}  // namespace qdgeo
