#include "algwit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "algwit/builders.hpp"
#include "algwit/constructions.hpp"

namespace algwit {

  namespace {
    json const& field(json const& j, char const* key, std::string const& path) {
      if (!j.is_object()) {
        throw schema_error(path, "expected an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        throw schema_error(path + "." + key, "missing");
      }
      return *it;
    }

    std::uint64_t natural(json const& j, std::string const& path) {
      if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw schema_error(path, "expected a non-negative integer");
      }
      return j.get<std::uint64_t>();
    }

    std::vector<std::string> split(std::string const& s, char sep) {
      std::vector<std::string> out;
      std::stringstream        in(s);
      std::string              part;
      while (std::getline(in, part, sep)) {
        out.push_back(part);
      }
      return out;
    }

    unsigned number(std::string const& s, std::string const& name) {
      try {
        std::size_t used = 0;
        auto        v    = std::stoul(s, &used);
        if (used != s.size()) {
          throw invalid_input("");
        }
        return static_cast<unsigned>(v);
      } catch (std::exception const&) {
        throw invalid_input("fixture '" + name + "': '" + s + "' is not a number");
      }
    }
  }  // namespace

  json algebra_to_json(finite_algebra const& alg) {
    json ops = json::array();
    for (std::size_t k = 0; k < alg.op_count(); ++k) {
      auto const& t = alg.table(k);
      ops.push_back({{"name", t.name}, {"arity", t.arity}, {"table", t.entries}});
    }
    return {{"label", alg.label()}, {"size", alg.size()}, {"ops", ops}};
  }

  finite_algebra algebra_from_json(json const& j, std::string const& path) {
    auto const& lj = field(j, "label", path);
    if (!lj.is_string()) {
      throw schema_error(path + ".label", "expected a string");
    }
    auto label = lj.get<std::string>();
    auto        size = natural(field(j, "size", path), path + ".size");
    auto const& ops  = field(j, "ops", path);
    if (!ops.is_array()) {
      throw schema_error(path + ".ops", "expected an array");
    }
    if (size == 0) {
      throw schema_error(path + ".size", "must be positive");
    }
    std::vector<operation_table> tables;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      std::string     p = path + ".ops[" + std::to_string(k) + "]";
      operation_table t;
      t.name = ops[k].contains("name") && ops[k]["name"].is_string()
                   ? ops[k]["name"].get<std::string>()
                   : "f" + std::to_string(k);
      t.arity = static_cast<unsigned>(natural(field(ops[k], "arity", p), p + ".arity"));
      if (t.arity == 0) {
        throw schema_error(p + ".arity", "must be positive");
      }
      auto const& table = field(ops[k], "table", p);
      if (!table.is_array()) {
        throw schema_error(p + ".table", "expected an array");
      }
      auto expected = table_length(size, t.arity);
      if (table.size() != expected) {
        throw schema_error(p + ".table", "length " + std::to_string(table.size())
                                             + " differs from size^arity = "
                                             + std::to_string(expected));
      }
      t.entries.reserve(table.size());
      for (std::size_t i = 0; i < table.size(); ++i) {
        auto v = natural(table[i], p + ".table[" + std::to_string(i) + "]");
        if (v >= size) {
          throw schema_error(p + ".table[" + std::to_string(i) + "]", "value outside the universe");
        }
        t.entries.push_back(static_cast<element>(v));
      }
      tables.push_back(std::move(t));
    }
    return finite_algebra(label, size, std::move(tables));
  }

  json partition_to_json(partition const& p) {
    return {{"size", p.size()}, {"blocks", p.blocks()}};
  }

  partition partition_from_json(json const& j, std::string const& path) {
    auto        size   = natural(field(j, "size", path), path + ".size");
    auto const& blocks = field(j, "blocks", path);
    if (!blocks.is_array()) {
      throw schema_error(path + ".blocks", "expected an array");
    }
    std::vector<std::vector<element>> bs;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::string p = path + ".blocks[" + std::to_string(b) + "]";
      if (!blocks[b].is_array()) {
        throw schema_error(p, "expected an array");
      }
      std::vector<element> block;
      for (std::size_t i = 0; i < blocks[b].size(); ++i) {
        block.push_back(static_cast<element>(natural(blocks[b][i], p + "[" + std::to_string(i) + "]")));
      }
      bs.push_back(std::move(block));
    }
    try {
      return partition::from_blocks(size, bs);
    } catch (invalid_input const& e) {
      throw schema_error(path + ".blocks", e.what());
    }
  }

  json term_to_json(term const& t, finite_algebra const& signature) {
    if (t.is_variable()) {
      return "x" + std::to_string(t.variable_index());
    }
    json out = json::array({signature.op_name(t.op())});
    for (auto const& a : t.args()) {
      out.push_back(term_to_json(a, signature));
    }
    return out;
  }

  term term_from_json(json const& j, finite_algebra const& signature, std::string const& path) {
    if (j.is_string()) {
      auto s = j.get<std::string>();
      if (s.size() < 2 || s[0] != 'x' || s.find_first_not_of("0123456789", 1) != std::string::npos) {
        throw schema_error(path, "variable names have the form x<index>");
      }
      return term::variable(std::stoul(s.substr(1)));
    }
    if (!j.is_array() || j.size() < 2 || !j[0].is_string()) {
      throw schema_error(path, "expected a variable or [\"op\", child, ...]");
    }
    auto        name = j[0].get<std::string>();
    std::size_t op   = signature.op_count();
    for (std::size_t k = 0; k < signature.op_count(); ++k) {
      if (signature.op_name(k) == name) {
        op = k;
        break;
      }
    }
    if (op == signature.op_count()) {
      throw schema_error(path + "[0]", "unknown operation '" + name + "'");
    }
    if (signature.arity(op) != j.size() - 1) {
      throw schema_error(path, "operation '" + name + "' has arity "
                                   + std::to_string(signature.arity(op)));
    }
    std::vector<term> args;
    for (std::size_t i = 1; i < j.size(); ++i) {
      args.push_back(term_from_json(j[i], signature, path + "[" + std::to_string(i) + "]"));
    }
    return term::apply(op, std::move(args));
  }

  json read_json_file(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw invalid_input("cannot open '" + path.string() + "'");
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw schema_error("$", std::string("not valid JSON: ") + e.what());
    }
  }

  void write_json_file(std::filesystem::path const& path, json const& j) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) {
        throw invalid_input("cannot write '" + tmp.string() + "'");
      }
      out << j.dump(2) << '\n';
      if (!out) {
        throw invalid_input("write to '" + tmp.string() + "' failed");
      }
    }
    std::filesystem::rename(tmp, path);
  }

  finite_algebra load_algebra(std::filesystem::path const& path) {
    return algebra_from_json(read_json_file(path));
  }

  void save_algebra(std::filesystem::path const& path, finite_algebra const& alg) {
    write_json_file(path, algebra_to_json(alg));
  }

  std::vector<finite_algebra> fixture(std::string const& name) {
    if (name.empty() || name.front() == '+' || name.back() == '+'
        || name.find("++") != std::string::npos) {
      throw invalid_input("fixture '" + name + "': empty component");
    }
    std::vector<finite_algebra> out;
    for (auto const& one : split(name, '+')) {
      auto parts = split(one, ':');
      if (parts.empty() || one.back() == ':') {
        throw invalid_input("fixture '" + one + "': empty parameter");
      }
      auto const& kind  = parts[0];
      auto        arity = [&](std::size_t n) {
        if (parts.size() != n + 1) {
          throw invalid_input("fixture '" + one + "': expected " + std::to_string(n)
                              + " parameters");
        }
      };
      if (kind == "N") {
        arity(2);
        out.push_back(make_ujm_reduct(2, number(parts[1], one), number(parts[2], one)));
      } else if (kind == "Nq") {
        arity(3);
        if (number(parts[3], one) < 2) {
          throw invalid_input("fixture '" + one + "': universe size must be at least 2");
        }
        out.push_back(make_ujm_reduct(number(parts[3], one), number(parts[1], one),
                                      number(parts[2], one)));
      } else if (kind == "Nm") {
        arity(1);
        for (auto& a : nm_generators(number(parts[1], one))) {
          out.push_back(std::move(a));
        }
      } else if (kind == "I") {
        arity(1);
        out.push_back(im_generator(number(parts[1], one), im_variant::i));
      } else if (kind == "If") {
        arity(1);
        out.push_back(im_generator(number(parts[1], one), im_variant::f));
      } else if (kind == "sum") {
        arity(2);
        auto n = number(parts[1], one);
        if (n < 2) {
          throw invalid_input("fixture '" + one + "': modulus must be at least 2");
        }
        std::vector<operation_table> ops;
        for (auto const& a : split(parts[2], ',')) {
          ops.push_back(make_sum_algebra(n, number(a, one)).table(0));
        }
        out.emplace_back("Z" + parts[1] + "-sum" + parts[2], n, std::move(ops));
      } else if (kind == "chain") {
        arity(1);
        out.push_back(make_chain_lattice(number(parts[1], one)));
      } else if (kind == "dissent") {
        arity(0);
        out.push_back(make_dissent_fixture());
      } else {
        throw invalid_input("unknown fixture kind '" + kind + "' in '" + one + "'");
      }
    }
    for (auto const& alg : out) {
      bool same = alg.op_count() == out.front().op_count();
      for (std::size_t k = 0; same && k < alg.op_count(); ++k) {
        same = alg.arity(k) == out.front().arity(k);
      }
      if (!same) {
        throw invalid_input("fixture '" + name + "': generators are not similar");
      }
    }
    return out;
  }

  std::vector<std::string> fixture_examples() {
    return {"N:2:4", "Nq:2:4:3", "Nm:5", "I:4", "If:5", "sum:3:4", "chain:3", "dissent",
            "N:2:5+N:3:5"};
  }

}  // namespace algwit
