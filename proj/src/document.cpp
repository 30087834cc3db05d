#include "hypinv/document.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypinv/errors.hpp"
#include "hypinv/parser.hpp"

namespace hypinv {

mpq_class parse_decimal(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --scale;
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("not a decimal number: '" + text + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t ds = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (ds == i || i - ds > 6) throw std::invalid_argument("bad exponent in '" + text + "'");
    scale += std::stol(text.substr(start, i - start));
  }
  if (i != text.size()) throw std::invalid_argument("not a decimal number: '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale < 0 ? mpq_class(num, p) : mpq_class(num * p);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

namespace {

using nlohmann::json;

Expr parse_field(const std::string& field, const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(field, e.what());
  }
}

Expr value_of(const std::string& field, const json& v) {
  if (v.is_number_integer()) return Expr::constant(mpq_class(v.dump(), 10));
  if (v.is_number()) return Expr::constant(parse_decimal(v.dump()));
  if (v.is_string()) {
    Expr e = parse_field(field, v.get<std::string>());
    if (depends_on(e, Var::t) || depends_on(e, Var::x)) throw InputError(field, "parameter value depends on t or x");
    for (const auto& k : free_symbols(e)) {
      if (k.kind == SymbolKey::Kind::function) throw InputError(field, "parameter value uses a function symbol");
    }
    return e;
  }
  throw InputError(field, "expected a number, an expression string or null");
}

Expr assumed_value(const std::string& name, const std::string& text) {
  std::string field = "assume " + name;
  try {
    return Expr::constant(parse_decimal(text));
  } catch (const std::invalid_argument&) {
  }
  json dummy = text;
  return value_of(field, dummy);
}

}  // namespace

HyperbolicEquation load_equation(const std::string& json_text, const std::map<std::string, std::string>& assume) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError("", "equation document must be a JSON object");
  for (const auto& [k, v] : doc.items()) {
    if (k != "T" && k != "X" && k != "U" && k != "params" && k != "functions") throw InputError(k, "unknown member");
  }

  Expr coeff[3];
  const char* names[3] = {"T", "X", "U"};
  for (int i = 0; i < 3; ++i) {
    if (!doc.contains(names[i])) {
      coeff[i] = Expr::integer(0);
      continue;
    }
    const json& v = doc[names[i]];
    if (v.is_number()) {
      coeff[i] = value_of(names[i], v);
    } else if (v.is_string()) {
      coeff[i] = parse_field(names[i], v.get<std::string>());
    } else {
      throw InputError(names[i], "expected an expression string");
    }
  }

  Declarations decl;
  std::map<std::string, Expr> values;
  if (doc.contains("params")) {
    const json& ps = doc["params"];
    if (!ps.is_object()) throw InputError("params", "expected an object of name -> value");
    for (const auto& [name, v] : ps.items()) {
      std::string field = "params." + name;
      if (name == "t" || name == "x" || name == "ln" || name == "exp") throw InputError(field, "reserved name");
      decl.parameters.insert(name);
      if (!v.is_null()) values[name] = value_of(field, v);
    }
  }
  std::map<std::string, Expr> definitions;
  if (doc.contains("functions")) {
    const json& fs = doc["functions"];
    if (fs.is_array()) {
      for (const auto& f : fs) {
        if (!f.is_string()) throw InputError("functions", "expected function names");
        decl.functions.insert(f.get<std::string>());
      }
    } else if (fs.is_object()) {
      for (const auto& [name, v] : fs.items()) {
        std::string field = "functions." + name;
        decl.functions.insert(name);
        if (v.is_null()) continue;
        if (!v.is_string()) throw InputError(field, "expected a definition string or null");
        definitions[name] = parse_field(field, v.get<std::string>());
      }
    } else {
      throw InputError("functions", "expected an array of names or an object of definitions");
    }
  }
  for (const auto& [name, text] : assume) {
    if (!decl.parameters.count(name)) throw InputError("assume " + name, "not a declared parameter");
    values[name] = assumed_value(name, text);
  }

  HyperbolicEquation eq;
  for (int i = 0; i < 3; ++i) {
    try {
      HyperbolicEquation probe = make_equation(coeff[i], Expr(), Expr(), decl);
      (void)probe;
    } catch (const std::invalid_argument& e) {
      throw InputError(names[i], e.what());
    }
  }
  try {
    eq = make_equation(coeff[0], coeff[1], coeff[2], decl);
    return specialize(eq, values, definitions);
  } catch (const DomainError& e) {
    throw InputError("functions", e.what());
  }
}

HyperbolicEquation load_equation_file(const std::string& path, const std::map<std::string, std::string>& assume) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_equation(ss.str(), assume);
}

}  // namespace hypinv
