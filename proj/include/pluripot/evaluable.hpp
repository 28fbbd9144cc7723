#pragma once

#include <functional>
#include <memory>
#include <span>

#include "pluripot/geometry.hpp"

namespace pluripot {

/// Quasi-psh function phi with respect to the reference form of kclass().
/// Subclasses evaluate in affine charts; everything else is derived.
class Evaluable {
 public:
  virtual ~Evaluable() = default;
  virtual KClass kclass() const = 0;
  Space space() const { return kclass().space; }

  /// phi at the point with affine coordinates w in the given chart; may be -inf.
  virtual double phi(int chart, std::span<const cplx> w) const = 0;

  /// Local potential u = rho_chart + phi.
  virtual double local(int chart, std::span<const cplx> w) const {
    return fs_potential(kclass(), chart, w) + phi(chart, w);
  }

  double operator()(const ProjPoint& p) const;
};

/// phi = 0: the reference form itself.
class ZeroPotential : public Evaluable {
 public:
  explicit ZeroPotential(KClass k) : k_(std::move(k)), wts_(k_.weights()) {}
  KClass kclass() const override { return k_; }
  double phi(int, std::span<const cplx>) const override { return 0.0; }
  double local(int, std::span<const cplx> w) const override { return fs_potential(k_.space, wts_, w); }

 private:
  KClass k_;
  std::vector<double> wts_;
};

/// Wraps a function of the point, for tests and ad hoc potentials.
class FunctionPotential : public Evaluable {
 public:
  FunctionPotential(KClass k, std::function<double(const ProjPoint&)> f) : k_(std::move(k)), f_(std::move(f)) {}
  KClass kclass() const override { return k_; }
  double phi(int chart, std::span<const cplx> w) const override;

 private:
  KClass k_;
  std::function<double(const ProjPoint&)> f_;
};

/// c * phi, with the class scaled accordingly.
class ScaledPotential : public Evaluable {
 public:
  ScaledPotential(std::shared_ptr<const Evaluable> base, double c) : base_(std::move(base)), c_(c) {}
  KClass kclass() const override;
  double phi(int chart, std::span<const cplx> w) const override { return c_ * base_->phi(chart, w); }
  double local(int chart, std::span<const cplx> w) const override { return c_ * base_->local(chart, w); }

 private:
  std::shared_ptr<const Evaluable> base_;
  double c_;
};

}  // namespace pluripot
