#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dred/colimit.hpp"
#include "dred/match.hpp"

#include "json.hpp"

namespace dred {

// A rewrite rule L <-l- K -r-> R given by a span of graph morphisms.
struct RewriteRule {
  std::string name;
  GraphMorphism left_leg;  // K -> L
  GraphMorphism right_leg; // K -> R

  static RewriteRule make(std::string name, GraphMorphism left_leg,
                          GraphMorphism right_leg);

  const Graph &lhs() const { return left_leg.cod(); }
  const Graph &interface() const { return left_leg.dom(); }
  const Graph &rhs() const { return right_leg.cod(); }

  // One or more `RULE <name>` blocks with L:/K:/R: graph sections and l:/r:
  // morphism sections (missing entries default to the same-named item).
  static std::vector<RewriteRule> parse_file(std::string_view text,
                                             std::string_view filename = "");
  std::string to_text() const;
};

enum class RewriteMode { DPO, SqPO };

const char *to_string(RewriteMode mode);

// The full two-square diagram around one applied match:
//
//   L <--l--- K ---r--> R
//   |         |         |
// match  context_match  comatch
//   v         v         v
//   G <-to_input- D -to_result-> H
//
// In DPO mode both squares are pushouts; in SqPO mode the left square is a
// final pullback complement and the right square is a pushout.
struct RewriteDiagram {
  RewriteMode mode = RewriteMode::DPO;
  GraphMorphism left_leg, right_leg;
  GraphMorphism match, context_match, comatch;
  GraphMorphism to_input, to_result;

  const Graph &input() const { return match.cod(); }
  const Graph &context() const { return context_match.cod(); }
  const Graph &result() const { return comatch.cod(); }

  std::string to_dot(std::string_view name = "step") const;
};

RewriteDiagram dpo_step(const RewriteRule &rule, const GraphMorphism &match);
RewriteDiagram sqpo_step(const RewriteRule &rule, const GraphMorphism &match);

struct RewriteOutcome {
  GraphMorphism match;
  std::optional<RewriteDiagram> diagram;
  std::string error_kind;    // set when the step failed
  std::string error_message;

  bool ok() const { return diagram.has_value(); }
};

// Applies the rule at every match of its left-hand side in canonical match
// order, recording per-match success or applicability failure. SqPO mode
// enumerates mono matches only.
std::vector<RewriteOutcome> apply_all(const RewriteRule &rule, const Graph &host,
                                      RewriteMode mode);

nlohmann::ordered_json morphism_json(const GraphMorphism &m);
nlohmann::ordered_json rewrite_trace_json(const RewriteRule &rule,
                                          const Graph &host, RewriteMode mode,
                                          const std::vector<RewriteOutcome> &outcomes);
std::string rewrite_trace_text(const RewriteRule &rule, const Graph &host,
                               RewriteMode mode,
                               const std::vector<RewriteOutcome> &outcomes);

} // namespace dred
