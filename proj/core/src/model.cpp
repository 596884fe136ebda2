#include "helix/model.hpp"

#include <cmath>
#include <numbers>

#include "helix/errors.hpp"

namespace helix {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string(what) + " must be finite");
}

}  // namespace

void PhysicalParams::validate() const {
  require_finite(hbar, "hbar");
  require_finite(mu, "mu");
  require_finite(e, "e");
  require_finite(k, "k");
  require_finite(omega, "omega");
  require_finite(B0, "B0");
  require_finite(PhiB, "PhiB");
  if (hbar <= 0.0) throw InvalidParameter("hbar must be > 0");
  if (mu <= 0.0) throw InvalidParameter("mu must be > 0");
}

void QuantumNumbers::validate() const {
  if (requested_levels < 1) throw InvalidParameter("requested_levels must be >= 1");
}

void Kratzer::validate() const {
  require_finite(A, "kratzer A");
  require_finite(D, "kratzer D");
  if (A <= 0.0) throw InvalidParameter("kratzer A must be > 0");
  if (D <= 0.0) throw InvalidParameter("kratzer D must be > 0");
}

void MorseSmall::validate() const {
  require_finite(D, "morse D");
  require_finite(a, "morse a");
  require_finite(r0, "morse r0");
  if (D <= 0.0) throw InvalidParameter("morse D must be > 0");
  if (a <= 0.0) throw InvalidParameter("morse a must be > 0");
  if (r0 <= 0.0) throw InvalidParameter("morse r0 must be > 0");
}

void validate(const PotentialModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Cornell>) {
          require_finite(m.a, "cornell a");
          require_finite(m.b, "cornell b");
        } else if constexpr (!std::is_same_v<T, Free>) {
          m.validate();
        }
      },
      model);
}

const char* model_name(const PotentialModel& model) {
  switch (model.index()) {
    case 0: return "free";
    case 1: return "cornell";
    case 2: return "kratzer";
    default: return "morse_small";
  }
}

double a_phi(double r, const PhysicalParams& p) {
  return -(p.B0 / 2.0) * r * r + p.PhiB / (2.0 * std::numbers::pi);
}

double external_potential(double r, const PotentialModel& model) {
  return std::visit(
      [r](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Free>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Cornell>) {
          return m.a / r + m.b * r;
        } else if constexpr (std::is_same_v<T, Kratzer>) {
          return -2.0 * m.D * (m.A / r - m.A * m.A / (2.0 * r * r));
        } else {
          return m.D * m.a * m.a * r * r - 2.0 * m.D * m.a * m.a * m.r0 * r + m.d1();
        }
      },
      model);
}

double v1(double r, const PhysicalParams& p, int m) {
  const double A = a_phi(r, p);
  const double r2 = r * r;
  const double md = static_cast<double>(m);
  return md * md / r2 + p.k * p.k * (1.0 + p.omega * p.omega) - 2.0 * md * p.omega * p.k / r +
         (2.0 * p.omega * p.k * p.e / r) * A - (2.0 * md * p.e / r2) * A +
         (p.e * p.e / r2) * A * A;
}

double v_eff(double r, const PhysicalParams& p, int m, const PotentialModel& model) {
  const double scale = p.hbar * p.hbar / (2.0 * p.mu);
  return external_potential(r, model) + scale * (v1(r, p, m) - 1.0 / (4.0 * r * r));
}

double u_of_r(double r, const PhysicalParams& p, int m, const PotentialModel& model) {
  return (2.0 * p.mu / (p.hbar * p.hbar)) * v_eff(r, p, m, model);
}

double energy_from_lambda(double lambda, const PhysicalParams& p) {
  return (p.hbar * p.hbar / (2.0 * p.mu)) * lambda;
}

double lambda_from_energy(double energy, const PhysicalParams& p) {
  return (2.0 * p.mu / (p.hbar * p.hbar)) * energy;
}

}  // namespace helix
