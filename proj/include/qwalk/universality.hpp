// Discrete-walk universality gadgets: perfect-transfer wires driven by the
// 4-dimensional Grover coin, the scripted 11-step phase gate, the CNOT wire
// exchange, and the partially specified degree-8 combiner experiment.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk::universality {

// Grover coin 2|s><s| - I of dimension d; entries 2/d - delta_ij.
CMatrix grover_coin(int d);

// Phase factor diag(1, 1, e^{-i pi/4}, e^{-i pi/4}) applied after the coin
// inside the phase gate.
CMatrix phase_factor_matrix();

// Amplitudes on (left arm a, left arm b, right arm a, right arm b) of one
// wire cell. Consistent duplication means both arms of a side agree.
using WireState = Eigen::Vector4cd;

// True perfect transfer needs equal amplitude and phase on the input arms.
bool is_consistent_duplication(const WireState& w, double tol = 1e-12);

// Applies the 4d Grover coin to the cell: (x, x, 0, 0) -> (0, 0, x, x).
WireState wire_step(const WireState& w);

// A scripted sequence of named operators applied to named wires, one line
// per step in the text form: "<op> <wire> [<wire>...]".
struct GateScript {
  struct Step {
    std::string op;                  // grover4 | phase4 | shift4 | swap2pair
    std::vector<std::string> wires;  // targets
  };
  std::vector<Step> steps;

  void validate() const;  // known ops, every realized operator unitary
  std::string serialize() const;
  static GateScript parse(std::istream& in);
  static GateScript phase_gate();  // the 11-step script
};

struct PhaseGateResult {
  Complex phase0;          // accumulated on the |0> wire
  Complex phase1;          // accumulated on the |1> wire
  Complex relative_phase;  // phase1 / phase0
  WireState wire0, wire1;  // final states for the supplied (alpha, beta)
  // Cell states after every time slot: index i holds the (|0> wire, |1> wire)
  // pair at time t_{i+2}, i.e. entries for t2 through t11.
  std::vector<std::array<WireState, 2>> history;
};

// Runs the 11-step script on both wires. Wire phases are input-independent;
// they are extracted from unit-amplitude runs, while the returned wire
// states carry the actual (alpha, beta).
PhaseGateResult phase_gate_run(Complex alpha, Complex beta);

// Exchanges the |10> and |11> streams; amplitudes are untouched.
struct WireStreams {
  std::array<std::string, 4> labels;  // must be {"00","01","10","11"}
  std::array<WireState, 4> states;
};
WireStreams cnot_permute(const WireStreams& in);

// Wiring of the degree-8 combiner: input_slot[i] is the coin direction fed
// by component i of (wire0 a, wire0 b, wire1 a, wire1 b); output_slot[i]
// likewise for the outputs. All eight slots must be distinct.
struct WidgetWiring {
  std::array<int, 4> input_slot{0, 1, 2, 3};
  std::array<int, 4> output_slot{4, 5, 6, 7};

  void validate() const;
};

struct WidgetResult {
  WireState wire0, wire1;   // output wires after part (c)
  Complex overlap;          // <H(alpha,beta)|normalized output qubit>
  double fidelity = 0.0;    // |overlap|
  bool matches_hadamard = false;  // fidelity within 1e-9 of 1
};

// Parts (a) and (c) apply the exact per-wire phase counts; part B applies
// the d=8 Grover coin under the supplied wiring. The outcome against the
// Hadamard action is reported, not presumed.
WidgetResult hadamard_widget_run(Complex alpha, Complex beta,
                                 const WidgetWiring& wiring);

}  // namespace qwalk::universality
