#pragma once

#include "dred/eq_spec.hpp"
#include "dred/model.hpp"
#include "dred/spec_morphism.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dred {

// Three-valued verdict: bounded search can confirm or refute, but silence is
// not a proof, so "don't know" is a first-class answer.
enum class PleoStatus { Verified, Refuted, Unknown };

const char *to_string(PleoStatus status);

// One applied axiom instance: the equation as declared plus the terms
// substituted for its variables.
struct TraceStep {
  Equation axiom;
  std::map<std::string, Term> binding;
};

struct DerivationTrace {
  Equation goal;
  std::vector<TraceStep> steps;
  int rounds = 0;
};

struct DeriveOptions {
  // Instantiation rounds; each round substitutes terms of the current
  // universe into axiom variables, then closes under congruence.
  int depth = 3;
  // Hard caps that turn runaway searches into an Unknown verdict.
  size_t max_terms = 50000;
  size_t max_instances = 200000;
};

// Result is Verified (with a trace replayable via replay_trace) or Unknown;
// a derivability search never refutes.
struct DeriveResult {
  PleoStatus status = PleoStatus::Unknown;
  DerivationTrace trace;
};

DeriveResult derivable(const EqSpec &spec, const Equation &goal,
                       const DeriveOptions &opts = {});

// Asserts exactly the recorded axiom instances, closes under congruence, and
// reports whether the goal's sides merge. Steps must instantiate equations of
// `spec` with well-sorted bindings.
bool replay_trace(const EqSpec &spec, const DerivationTrace &trace);

// nullopt when the model satisfies every equation of the spec; otherwise the
// equation and assignment where evaluation disagrees.
std::optional<std::pair<Equation, std::map<std::string, std::string>>>
model_failure(const EqSpec &spec, const Model &model);

struct RefuteResult {
  bool refuted = false;
  std::map<std::string, std::string> assignment;
};

// Searches the model for an assignment on which the goal's sides evaluate
// differently. ModelDoesNotSatisfySpec when the model fails the spec's own
// equations (such a model can refute nothing).
RefuteResult refute(const EqSpec &spec, const Model &model,
                    const Equation &goal);

struct PleoVerdict {
  PleoStatus status = PleoStatus::Unknown;
  std::string detail;
  // Verified: one derivation per codomain equation outside the image.
  std::vector<std::pair<Equation, DerivationTrace>> derivations;
  // Refuted by countermodel: the added equation and assignment that fail.
  std::optional<Equation> refuted_equation;
  std::map<std::string, std::string> refuting_assignment;
};

// A morphism is a pleomorphism when it is bijective on sorts and operations
// and every codomain equation is derivable from the images of the domain's
// equations. Bounded search yields Verified / Refuted / Unknown; an optional
// countermodel (which must satisfy the image equations) can turn an
// inconclusive search into a refutation.
PleoVerdict is_pleomorphism(const SpecMorphism &m,
                            const DeriveOptions &opts = {},
                            const Model *model = nullptr);

} // namespace dred
