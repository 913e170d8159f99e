#include "dred/model.hpp"

#include "dred/errors.hpp"
#include "dred/textio.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dred {

Model Model::make(std::map<std::string, std::vector<std::string>> carriers,
                  std::map<std::string, std::map<std::vector<std::string>,
                                                 std::string>> tables) {
  for (auto &[sort, elems] : carriers) {
    std::sort(elems.begin(), elems.end());
    for (size_t i = 1; i < elems.size(); ++i)
      if (elems[i - 1] == elems[i])
        fail(ErrorKind::Parse, "duplicate element '" + elems[i] +
                                   "' in carrier of sort '" + sort + "'");
  }
  Model m;
  m.carriers_ = std::move(carriers);
  m.tables_ = std::move(tables);
  return m;
}

const std::vector<std::string> &Model::carrier(const std::string &sort) const {
  auto it = carriers_.find(sort);
  if (it == carriers_.end())
    fail(ErrorKind::ModelDoesNotSatisfySpec,
         "model has no carrier for sort '" + sort + "'");
  return it->second;
}

std::string Model::eval(const Term &t,
                        const std::map<std::string, std::string> &env) const {
  if (t.is_var) {
    auto it = env.find(t.head);
    if (it == env.end())
      fail(ErrorKind::Internal, "unbound variable '" + t.head + "'");
    return it->second;
  }
  auto table = tables_.find(t.head);
  if (table == tables_.end())
    fail(ErrorKind::ModelDoesNotSatisfySpec,
         "model has no table for operation '" + t.head + "'");
  std::vector<std::string> args;
  args.reserve(t.args.size());
  for (const Term &a : t.args)
    args.push_back(eval(a, env));
  auto row = table->second.find(args);
  if (row == table->second.end()) {
    std::string tuple = join(args, " ");
    fail(ErrorKind::ModelDoesNotSatisfySpec,
         "operation '" + t.head + "' has no value at (" + tuple + ")");
  }
  return row->second;
}

void Model::check_signature(const EqSpec &spec) const {
  for (const std::string &s : spec.sorts())
    carrier(s);
  for (const OpDecl &o : spec.ops()) {
    auto table = tables_.find(o.name);
    if (table == tables_.end())
      fail(ErrorKind::ModelDoesNotSatisfySpec,
           "model has no table for operation '" + o.name + "'");
    // Totality: every argument tuple from the carriers must have a row whose
    // value lies in the result carrier.
    std::vector<size_t> idx(o.arg_sorts.size(), 0);
    while (true) {
      std::vector<std::string> args;
      bool done = false;
      for (size_t i = 0; i < o.arg_sorts.size(); ++i) {
        const auto &c = carrier(o.arg_sorts[i]);
        if (c.empty()) { done = true; break; }
        args.push_back(c[idx[i]]);
      }
      if (done)
        break;
      auto row = table->second.find(args);
      if (row == table->second.end())
        fail(ErrorKind::ModelDoesNotSatisfySpec,
             "operation '" + o.name + "' has no value at (" + join(args, " ") +
                 ")");
      const auto &result = carrier(o.result);
      if (std::find(result.begin(), result.end(), row->second) == result.end())
        fail(ErrorKind::ModelDoesNotSatisfySpec,
             "operation '" + o.name + "' produces '" + row->second +
                 "', which is not in the carrier of '" + o.result + "'");
      size_t i = idx.size();
      while (i > 0 && ++idx[i - 1] == carrier(o.arg_sorts[i - 1]).size())
        idx[--i] = 0;
      if (i == 0)
        break;
    }
    for (const auto &[args, value] : table->second)
      if (args.size() != o.arg_sorts.size())
        fail(ErrorKind::ModelDoesNotSatisfySpec,
             "table row for '" + o.name + "' has " +
                 std::to_string(args.size()) + " argument(s), expected " +
                 std::to_string(o.arg_sorts.size()));
  }
}

Model Model::parse(const std::string &text, const std::string &filename) {
  std::map<std::string, std::vector<std::string>> carriers;
  std::map<std::string, std::map<std::vector<std::string>, std::string>> tables;
  enum { None, Sorts, Ops } section = None;
  for (const Line &line : logical_lines(text)) {
    if (line.text == "SORTS") { section = Sorts; continue; }
    if (line.text == "OPS") { section = Ops; continue; }
    std::vector<std::string> tok = split_ws(line.text);
    if (section == None)
      parse_fail(filename, line.number, "expected SORTS or OPS section");
    if (section == Sorts) {
      // <sort> : <elements...>
      if (tok.size() < 2 || tok[1] != ":")
        parse_fail(filename, line.number, "expected '<sort> : <elements>'");
      if (carriers.count(tok[0]))
        parse_fail(filename, line.number, "duplicate carrier for '" + tok[0] + "'");
      carriers[tok[0]] = {tok.begin() + 2, tok.end()};
    } else {
      // <op> <arguments...> = <value>
      auto eq = std::find(tok.begin(), tok.end(), "=");
      if (tok.size() < 3 || eq == tok.begin() || eq + 2 != tok.end())
        parse_fail(filename, line.number, "expected '<op> <arguments> = <value>'");
      std::vector<std::string> args(tok.begin() + 1, eq);
      auto [it, fresh] = tables[tok[0]].emplace(std::move(args), *(eq + 1));
      if (!fresh)
        parse_fail(filename, line.number,
                   "duplicate table row for '" + tok[0] + "'");
    }
  }
  return make(std::move(carriers), std::move(tables));
}

Model Model::load(const std::string &path) {
  return parse(read_file(path), path);
}

std::string Model::to_text() const {
  std::ostringstream os;
  if (!carriers_.empty()) {
    os << "SORTS\n";
    for (const auto &[sort, elems] : carriers_)
      os << "  " << sort << " : " << join(elems, " ") << "\n";
  }
  if (!tables_.empty()) {
    os << "OPS\n";
    for (const auto &[op, rows] : tables_)
      for (const auto &[args, value] : rows) {
        os << "  " << op;
        for (const std::string &a : args)
          os << " " << a;
        os << " = " << value << "\n";
      }
  }
  return os.str();
}

} // namespace dred
