#pragma once

#include "dred/derivability.hpp"
#include "dred/spec_colimit.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dred {

// A deduction rule presented as a fraction: the denominator h : H -> P embeds
// the hypothesis into the pattern, the numerator c : C -> P the conclusion.
// The fraction is usable only when the denominator is a pleomorphism.
struct Fraction {
  SpecMorphism denominator; // h : H -> P
  SpecMorphism numerator;   // c : C -> P
  PleoVerdict denominator_verdict;

  // DenominatorNotPleo when the check refutes h; PleoUnverified when it is
  // inconclusive and assume_pleo is not set.
  static Fraction make(SpecMorphism h, SpecMorphism c,
                       const DeriveOptions &opts = {}, bool assume_pleo = false);

  const EqSpec &hypothesis() const { return denominator.dom(); }
  const EqSpec &conclusion() const { return numerator.dom(); }
  const EqSpec &pattern() const { return denominator.cod(); }
};

struct DeductionRule {
  std::string name;
  Fraction fraction;
  // Kernel span H <- K -> C when available; required for witness-based steps.
  std::optional<Span<SpecCat>> kernel;
};

// Kernel shared by name: the sorts, operations, variables, terms, and
// equations that H and C both declare, with inclusions as legs. SortMismatch
// when a shared name carries different declarations.
Span<SpecCat> kernel_from_names(const EqSpec &hypothesis,
                                const EqSpec &conclusion);

// Builds the rule whose pattern is the pushout of the kernel span.
DeductionRule rule_from_span(std::string name, const Span<SpecCat> &span,
                             const DeriveOptions &opts = {},
                             bool assume_pleo = false);

// DEDRULE blocks, either span form (K:/H:/C: with legs l:/r:) or fraction
// form (H:/P:/C: with legs h:/c:); legs default to mapping names to
// themselves. Fraction-form rules get a name-based kernel when one exists.
std::vector<DeductionRule> parse_rules(const std::string &text,
                                       const std::string &filename = "",
                                       const DeriveOptions &opts = {},
                                       bool assume_pleo = false);
std::vector<DeductionRule> load_rules(const std::string &path,
                                      const DeriveOptions &opts = {},
                                      bool assume_pleo = false);

// Applying a rule classically: push the pattern out along the hypothesis
// instance. The state embeds into the result, which also receives the
// instantiated conclusion.
struct ClassicStep {
  PushoutResult<SpecCat> pushout;   // span: state <- hypothesis -> pattern
  SpecMorphism state_inclusion;     // old state -> new state
  SpecMorphism pattern_instance;    // pattern -> new state
  SpecMorphism conclusion_instance; // conclusion -> new state
  PleoVerdict inclusion_verdict;
};

ClassicStep classic_step(const Fraction &fraction, const SpecMorphism &instance,
                         const DeriveOptions &opts = {});

// Witness for a witness-based step: a state kernel with the rule kernel's
// instance and an embedding into the current state.
struct Witness {
  EqSpec kernel;         // state kernel
  SpecMorphism instance; // rule kernel -> state kernel
  SpecMorphism to_state; // state kernel -> current state
};

// The identity witness: the state itself as kernel.
Witness full_witness(const DeductionRule &rule, const SpecMorphism &instance);

// The smallest witness this engine can certify: the state's signature, the
// instance's image, and an inclusion-minimal set of state equations keeping
// the embedding a pleomorphism.
Witness minimal_witness(const DeductionRule &rule, const SpecMorphism &instance,
                        const DeriveOptions &opts = {});

struct CubeFaceCheck {
  std::string name;
  bool commutes = false;
  // Set for the four pushout faces (top, bottom, back_right, front_left).
  std::optional<bool> pushout;
  bool ok() const { return commutes && pushout.value_or(true); }
};

struct PleoCheck {
  std::string name;
  PleoVerdict verdict;
};

// Result of a witness-based step. The conclusion state is the step's new
// state; the vertex ties the cube together and is what a classic step would
// have produced (up to isomorphism, when the witness is the identity).
struct PleoStep {
  EqSpec state_kernel;
  EqSpec state_conclusion;
  EqSpec state_vertex;
  SpecMorphism witness_instance;      // rule kernel -> state kernel
  SpecMorphism witness_to_state;      // state kernel -> old state
  SpecMorphism witness_to_conclusion; // state kernel -> conclusion state
  SpecMorphism state_to_vertex;       // old state -> vertex
  SpecMorphism conclusion_to_vertex;  // conclusion state -> vertex
  SpecMorphism pattern_instance;      // pattern -> vertex
  SpecMorphism conclusion_instance;   // conclusion -> conclusion state
  std::vector<CubeFaceCheck> faces;   // six cube faces
  std::vector<PleoCheck> pleos;       // five pleomorphism checks

  bool all_verified() const;
};

// Runs the rule through a commuting cube over the witness: the right face
// pushes the rule kernel's instance out to the conclusion state, the bottom
// face joins it with the old state, and the pattern maps into the vertex by
// the universal property. LeftSquareNotCommuting when the witness does not
// commute with the instance; NonComposable when the rule has no kernel.
PleoStep pleopushout_step(const DeductionRule &rule,
                          const SpecMorphism &instance, const Witness &witness,
                          const DeriveOptions &opts = {});

std::string cube_dot(const PleoStep &step, const std::string &rule_name);

// One zig-zag leg of a derivation: a morphism between presentations together
// with its pleomorphism verdict. `forward` legs point toward the newer state.
struct ZigZagLeg {
  SpecMorphism mor;
  bool forward = true;
  PleoVerdict verdict;
};

// Script lines:
//   step <rule> [mode=<classic|pleo|pleo-minimal>] [bind <var>=<term>]...
//   step instantiate eq=<lhs>==<rhs>
//   step declare term=<term>
// Bound terms, instance equations, and declared terms are written without
// spaces. A step without mode= takes the runner's default mode.
struct ScriptStep {
  std::string rule; // rule name, or the built-ins "instantiate" / "declare"
  std::string mode; // classic | pleo | pleo-minimal; empty = runner default
  std::vector<std::pair<std::string, std::string>> bindings;
  std::string equation; // lhs==rhs for instantiate
  std::string term;     // for declare
  int line = 0;
};

std::vector<ScriptStep> parse_script(const std::string &text,
                                     const std::string &filename = "");

// Builds the hypothesis instance a step calls for: bound variables parse as
// terms over the state, sort images are inferred from the bindings (falling
// back to same-name sorts), operations and unbound variables map by name.
// HypothesisNotPresent when the state cannot receive the hypothesis.
SpecMorphism instance_from_bindings(
    const EqSpec &hypothesis, const EqSpec &state,
    const std::vector<std::pair<std::string, std::string>> &bindings,
    const std::string &filename = "", int line = 0);

struct RunOptions {
  DeriveOptions derive;
  bool assume_pleo = false;
  std::string default_mode = "classic"; // for steps that omit mode=
};

struct RunResult {
  EqSpec initial;
  EqSpec state; // final
  std::vector<ZigZagLeg> zigzag;
  // One entry per witness-based step: rule name and the verified cube.
  std::vector<std::pair<std::string, PleoStep>> cubes;
  nlohmann::ordered_json trace;
};

// Plays a script against an initial state. Classic steps advance to the
// pushout vertex; witness-based steps advance to the conclusion state,
// leaving a cospan-shaped zig-zag; `instantiate` adds one derivable equation.
RunResult run_derivation(const EqSpec &initial,
                         const std::vector<DeductionRule> &rules,
                         const std::vector<ScriptStep> &script,
                         const RunOptions &opts = {});

std::string run_trace_text(const RunResult &run);

nlohmann::ordered_json pleo_verdict_json(const PleoVerdict &verdict,
                                         const EqSpec &onto);

} // namespace dred
