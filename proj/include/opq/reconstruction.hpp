#ifndef OPQ_RECONSTRUCTION_HPP
#define OPQ_RECONSTRUCTION_HPP

#include <string>
#include <vector>

#include "opq/family.hpp"

namespace opq {

struct EtaClass {
  enum Tag { linear, quadratic, q_geometric, q_inverse_geometric, q_quadratic };
  Tag tag = linear;
  double q = 0.0;  // smaller characteristic root, q-classes only
  double d = 0.0;  // class parameter where applicable
  int epsilon_p = 1;
  std::string name() const;
};

enum class ReconstructionRoute { automatic, simple, general };

struct ReconstructionState {
  ClosureCoefficients coeffs;
  double eta1 = 0.0;
  double eta_minus1 = 0.0;  // r_-1^(2) - eta(1)
  double B0 = 0.0;
  EtaClass cls;
  double ri0cond_residual = 0.0;
  ReconstructionRoute route_used = ReconstructionRoute::simple;
  std::vector<double> eta_values;  // 0..x_max+1
  std::vector<double> a_values;    // 0..x_max
  std::vector<double> B_tilde, D_tilde;  // simple route only
  std::vector<double> B_values, D_values;
};

// iterates eta(x+2) = (2 + r_1^(1)) eta(x+1) - eta(x) + r_-1^(2) and
// classifies by the characteristic roots
std::pair<std::vector<double>, EtaClass> solve_eta(
    const ClosureCoefficients& r, double eta1, int x_max);

// a_x = B(x) + D(x) as a rational function of eta(x)
std::vector<double> solve_a(const ClosureCoefficients& r,
                            const std::vector<double>& eta_values,
                            double eta1, double B0);

double verify_ri0cond(const ClosureCoefficients& r, double eta1, double B0);

// fills B/D (and B~/D~ on the simple route) from the state's coefficients
void reconstruct_BD(ReconstructionState& st, int x_max,
                    ReconstructionRoute route);

ReconstructionState reconstruct(const ClosureCoefficients& r, double eta1,
                                double B0, int x_max,
                                ReconstructionRoute route);

struct RoundtripReport {
  ReconstructionState state;
  double max_deviation = 0.0;  // vs the family's own B, D
};
RoundtripReport roundtrip_catalog(const BoundFamily& f, int x_max,
                                  ReconstructionRoute route);

}  // namespace opq

#endif
