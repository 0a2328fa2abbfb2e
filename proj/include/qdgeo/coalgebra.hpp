#pragma once

// Deformed sl(2) Poisson coalgebra: N-site symplectic realizations of the
// generators, the Casimir tower, and the free Hamiltonians built on them.
//
// Abstract algebra (real deformation parameter z):
//   {J3, J+} = 2 J+ cosh(z J-),  {J3, J-} = -2 sinh(z J-)/z,  {J-, J+} = 4 J3
//   C = sinh(z J-)/z * J+ - J3^2
//
// Every function here is exact at z = 0: sinh(z x)/z is always evaluated as
// x * sinhc(z x), never by dividing by z.

#include <cstddef>
#include <memory>
#include <vector>

#include "qdgeo/phase.hpp"

namespace qdgeo {

/// sinh(x)/x, with sinhc(0) == 1 exactly.
inline double sinhc(double x) { return ad::sinhc(x); }

/// Per-site signs s_i = +-1. A negative sign realizes site i through the
/// analytic continuation q_i -> i q_i, p_i -> -i p_i, which keeps every
/// generator real and the brackets intact. All +1 is the ordinary realization.
class SiteSigns {
 public:
  SiteSigns() = default;
  explicit SiteSigns(std::vector<double> signs);
  static SiteSigns euclidean(std::size_t n) { return SiteSigns(std::vector<double>(n, 1.0)); }

  std::size_t size() const { return signs_.size(); }
  double operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<double>& values() const { return signs_; }
  SiteSigns prefix(std::size_t m) const;

 private:
  std::vector<double> signs_;
};

struct DeformedRealization {
  std::size_t n_sites = 0;
  double z = 0.0;
  SiteSigns signs;
  PhaseFunction j_minus;
  PhaseFunction j_plus;
  PhaseFunction j_three;
};

/// N-site realization obtained from the iterated coproduct:
///   J- = sum q_i^2
///   J+ = sum sinhc(z q_i^2) p_i^2 exp(-z sum_{k<i} q_k^2 + z sum_{l>i} q_l^2)
///   J3 = same with p_i^2 replaced by q_i p_i
DeformedRealization realize_generators(std::size_t n, double z);
DeformedRealization realize_generators(std::size_t n, double z, const SiteSigns& signs);

/// Casimir of the abstract algebra at generator values (j-, j+, j3).
template <class T>
T casimir_abstract(double z, const T& jm, const T& jp, const T& j3) {
  return jm * ad::sinhc(z * jm) * jp - j3 * j3;
}

/// m-site Casimir acting on the first m coordinate pairs of N-dimensional
/// phase space, by composing casimir_abstract with the m-site realization.
PhaseFunction casimir_m(std::size_t m, std::size_t n, double z);
PhaseFunction casimir_m(std::size_t m, std::size_t n, double z, const SiteSigns& signs);

/// One-site Casimir; vanishes identically.
PhaseFunction casimir_one(double z);

/// H^I = J+ / 2.
PhaseFunction hamiltonian_integrable(std::size_t n, double z);
PhaseFunction hamiltonian_integrable(std::size_t n, double z, const SiteSigns& signs);

/// H^S = J+ exp(z J-) / 2.
PhaseFunction hamiltonian_superintegrable(std::size_t n, double z);
PhaseFunction hamiltonian_superintegrable(std::size_t n, double z, const SiteSigns& signs);

/// Smooth scalar profile f used by hamiltonian_family; differentiable at
/// every supported scalar level.
class Profile {
 public:
  template <class F>
  Profile(F f, std::string name) : impl_(std::make_shared<Model<F>>(std::move(f))), name_(std::move(name)) {}

  template <class T>
  T operator()(const T& x) const {
    return impl_->call(x);
  }
  const std::string& name() const { return name_; }

  static Profile one();
  static Profile exponential();
  static Profile linear();  ///< f(x) = 1 + x

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual double call(const double&) const = 0;
    virtual D1 call(const D1&) const = 0;
    virtual D2 call(const D2&) const = 0;
    virtual D3 call(const D3&) const = 0;
  };
  template <class F>
  struct Model final : Concept {
    explicit Model(F f_) : f(std::move(f_)) {}
    double call(const double& x) const override { return f(x); }
    D1 call(const D1& x) const override { return f(x); }
    D2 call(const D2& x) const override { return f(x); }
    D3 call(const D3& x) const override { return f(x); }
    F f;
  };
  std::shared_ptr<const Concept> impl_;
  std::string name_;
};

/// H = J+ f(z J-) / 2. Rejects f unless |f(0) - 1| < 1e-12.
PhaseFunction hamiltonian_family(std::size_t n, double z, const Profile& f);

/// Extra integrals of H^S, reading only the first one / two coordinate pairs:
///   I2 = sinhc(z q1^2)/2 e^{z q1^2} p1^2
///   I3 = sinhc(z q1^2)/2 e^{z q1^2} e^{2 z q2^2} p1^2 + sinhc(z q2^2)/2 e^{z q2^2} p2^2
PhaseFunction integral_I2(std::size_t n, double z);
PhaseFunction integral_I2(std::size_t n, double z, const SiteSigns& signs);
PhaseFunction integral_I3(std::size_t n, double z);
PhaseFunction integral_I3(std::size_t n, double z, const SiteSigns& signs);

}  // namespace qdgeo
