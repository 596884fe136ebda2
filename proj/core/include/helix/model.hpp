#pragma once

#include <variant>

namespace helix {

/// Background constants entering the universal geometric/gauge term.
/// All quantities are dimensionless; the default set hbar = mu = e = k = 1
/// matches the convention used for every bundled preset.
struct PhysicalParams {
  double hbar = 1.0;   ///< action scale, > 0
  double mu = 1.0;     ///< effective mass, > 0
  double e = 1.0;      ///< charge
  double k = 1.0;      ///< longitudinal wavenumber
  double omega = 1.0;  ///< torsion (helical twist) strength
  double B0 = 0.0;     ///< uniform magnetic field strength
  double PhiB = 0.0;   ///< Aharonov-Bohm flux

  /// Throws InvalidParameter unless hbar, mu > 0 and every field is finite.
  void validate() const;
};

/// Azimuthal quantum number and how many radial levels to extract.
struct QuantumNumbers {
  int m = 0;
  int requested_levels = 3;

  void validate() const;  // requested_levels >= 1
};

struct Free {};

/// V(r) = a/r + b r. The Coulomb part is implemented with the printed sign:
/// positive a raises the potential at short distance.
struct Cornell {
  double a = 0.0;
  double b = 0.0;
};

/// V(r) = -2D (A/r - A^2/(2 r^2)), A > 0, D > 0.
struct Kratzer {
  double A = 1.0;
  double D = 1.0;

  void validate() const;
};

/// Quadratic-plus-linear expansion of a Morse well about its minimum r0:
/// V(r) = D a^2 r^2 - 2 D a^2 r0 r + D (a^2 r0^2 - 1). Stationary at r0,
/// curvature 2 D a^2, value -D at the minimum.
struct MorseSmall {
  double D = 1.0;
  double a = 1.0;
  double r0 = 1.0;

  /// Constant term of the expansion, computed on demand from (D, a, r0).
  double d1() const { return D * (a * a * r0 * r0 - 1.0); }

  void validate() const;
};

using PotentialModel = std::variant<Free, Cornell, Kratzer, MorseSmall>;

/// Throws InvalidParameter if the active alternative violates its invariants.
void validate(const PotentialModel& model);

/// Short lowercase tag for serialization ("free", "cornell", ...).
const char* model_name(const PotentialModel& model);

/// Azimuthal vector potential A_phi(r) = -(B0/2) r^2 + PhiB/(2 pi).
double a_phi(double r, const PhysicalParams& p);

/// External model interaction V(r).
double external_potential(double r, const PotentialModel& model);

/// Universal geometric/electromagnetic term:
/// m^2/r^2 + k^2(1+omega^2) - 2 m omega k / r
///   + (2 omega k e / r) A_phi - (2 m e / r^2) A_phi + (e^2 / r^2) A_phi^2.
double v1(double r, const PhysicalParams& p, int m);

/// Effective potential V(r) + (hbar^2 / 2 mu)(v1(r) - 1/(4 r^2)).
double v_eff(double r, const PhysicalParams& p, int m, const PotentialModel& model);

/// Scaled potential entering the operator -d^2/dr^2 + U(r):
/// U(r) = (2 mu / hbar^2) V_eff(r).
double u_of_r(double r, const PhysicalParams& p, int m, const PotentialModel& model);

/// E = (hbar^2 / 2 mu) lambda.
double energy_from_lambda(double lambda, const PhysicalParams& p);

/// lambda = (2 mu / hbar^2) E.
double lambda_from_energy(double energy, const PhysicalParams& p);

}  // namespace helix
