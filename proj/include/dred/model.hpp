#pragma once

#include "dred/eq_spec.hpp"

#include <map>
#include <string>
#include <vector>

namespace dred {

// A finite interpretation of a signature: a carrier set per sort and a total
// operation table per operation. Used to refute equations by evaluation.
class Model {
public:
  Model() = default;

  static Model make(std::map<std::string, std::vector<std::string>> carriers,
                    std::map<std::string, std::map<std::vector<std::string>,
                                                   std::string>> tables);

  const std::map<std::string, std::vector<std::string>> &carriers() const {
    return carriers_;
  }

  const std::vector<std::string> &carrier(const std::string &sort) const;

  // Evaluates a term under an assignment of variable names to elements.
  std::string eval(const Term &t,
                   const std::map<std::string, std::string> &env) const;

  // Every operation consumes and produces elements of the right carriers,
  // and every table is total. Throws ModelDoesNotSatisfySpec on a mismatch
  // with the signature.
  void check_signature(const EqSpec &spec) const;

  // Format:
  //   SORTS
  //     N : e0 e1
  //   OPS
  //     0 = e0
  //     + e0 e1 = e1
  static Model parse(const std::string &text, const std::string &filename = "");
  static Model load(const std::string &path);
  std::string to_text() const;

private:
  std::map<std::string, std::vector<std::string>> carriers_;
  std::map<std::string, std::map<std::vector<std::string>, std::string>> tables_;
};

} // namespace dred
