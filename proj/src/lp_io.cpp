#include "pwrelax/lp_io.hpp"

#include <set>

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pwrelax/cdc.hpp"

namespace pwrelax {

namespace {

// Printed value plus the exact-value side channel.
class NumberSink {
 public:
  explicit NumberSink(char comment) : comment_(comment) {}

  std::string put(const std::string& key, const Rational& v) {
    if (auto d = v.exact_decimal()) return *d;
    exact_ << comment_ << " exact " << key << ' ' << v.str() << '\n';
    return v.approx_decimal();
  }
  std::string comments() const { return exact_.str(); }

 private:
  char comment_;
  std::ostringstream exact_;
};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Exact overrides collected from comment lines.
std::map<std::string, Rational> read_exact(const std::string& text, char comment) {
  std::map<std::string, Rational> exact;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto t = trim(line);
    if (t.empty() || t[0] != comment) continue;
    auto toks = split_ws(t.substr(1));
    if (toks.size() == 3 && toks[0] == "exact") exact[toks[1]] = Rational::parse(toks[2]);
  }
  return exact;
}

Rational number(const std::map<std::string, Rational>& exact, const std::string& key, const std::string& text) {
  auto it = exact.find(key);
  if (it != exact.end()) return it->second;
  return Rational::parse(text);
}

std::string sense_text(Sense s) { return s == Sense::Le ? "<=" : s == Sense::Ge ? ">=" : "="; }

// Partially read model; variables are created in file order and later
// re-indexed by the order of their bound declarations.
struct Draft {
  std::string name = "model";
  bool maximize = false;
  Terms objective;
  Rational constant;
  struct Row {
    std::string name;
    Terms terms;
    Sense sense;
    Rational rhs;
  };
  std::vector<Row> rows;
  std::vector<std::string> var_names;
  std::map<std::string, int> var_ids;
  std::vector<VarKind> kinds;
  std::vector<std::optional<Rational>> lb, ub;
  std::vector<int> order;  // declaration order of bounds
  std::vector<Sos2Group> sos;

  int var(const std::string& n) {
    auto it = var_ids.find(n);
    if (it != var_ids.end()) return it->second;
    int id = static_cast<int>(var_names.size());
    var_ids[n] = id;
    var_names.push_back(n);
    kinds.push_back(VarKind::Continuous);
    lb.emplace_back(Rational(0));
    ub.emplace_back(std::nullopt);
    return id;
  }

  MilpModel build() {
    std::vector<int> seq = order;
    std::vector<char> seen(var_names.size(), 0);
    for (int v : seq) seen[static_cast<std::size_t>(v)] = 1;
    for (int v = 0; v < static_cast<int>(var_names.size()); ++v)
      if (!seen[static_cast<std::size_t>(v)]) seq.push_back(v);
    std::vector<int> remap(var_names.size());
    MilpModel m(name);
    for (int v : seq) {
      auto uv = static_cast<std::size_t>(v);
      remap[uv] = m.add_variable(var_names[uv], kinds[uv], lb[uv], ub[uv]);
    }
    auto conv = [&](const Terms& t) {
      LinearExpr e;
      for (const auto& [v, c] : t) e.add(remap[static_cast<std::size_t>(v)], c);
      return e;
    };
    for (auto& r : rows) m.add_constraint(r.name, conv(r.terms), r.sense, LinearExpr(r.rhs));
    for (auto& g : sos) {
      std::vector<VarId> vars;
      for (VarId v : g.vars) vars.push_back(remap[static_cast<std::size_t>(v)]);
      m.add_sos2(g.name, vars, g.weights);
    }
    LinearExpr obj = conv(objective);
    obj.constant = constant;
    m.set_objective(maximize, obj);
    return m;
  }
};

}  // namespace

std::string write_lp(const MilpModel& model) {
  NumberSink nums('\\');
  std::ostringstream body;
  const auto& vars = model.variables();
  auto vname = [&](VarId v) { return vars[static_cast<std::size_t>(v)].name; };

  auto write_terms = [&](const std::string& key, const Terms& terms) {
    std::ostringstream os;
    std::size_t width = 0;
    if (terms.empty()) {
      if (!vars.empty()) os << "0 " << vars.front().name;
      return os.str();
    }
    bool first = true;
    for (const auto& [v, c] : terms) {
      std::ostringstream t;
      Rational mag = c.abs();
      if (first) {
        if (c.sign() < 0) t << "- ";
      } else {
        t << (c.sign() < 0 ? " - " : " + ");
      }
      if (mag != Rational(1)) t << nums.put(key + ":" + vname(v), mag) << ' ';
      t << vname(v);
      std::string s = t.str();
      if (width + s.size() > 200) {
        os << "\n  ";
        width = 0;
      }
      os << s;
      width += s.size();
      first = false;
    }
    return os.str();
  };

  body << (model.maximize() ? "Maximize\n" : "Minimize\n");
  body << " obj: " << write_terms("obj", model.objective().terms) << '\n';
  if (!model.objective().constant.is_zero())
    body << "\\ constant " << nums.put("constant", model.objective().constant) << '\n';
  body << "Subject To\n";
  for (const auto& c : model.constraints()) {
    body << ' ' << c.name << ": " << write_terms("row:" + c.name, c.terms) << ' ' << sense_text(c.sense) << ' '
         << nums.put("rhs:" + c.name, c.rhs) << '\n';
  }
  body << "Bounds\n";
  for (const auto& v : vars) {
    if (v.lower && v.upper)
      body << ' ' << nums.put("lb:" + v.name, *v.lower) << " <= " << v.name << " <= " << nums.put("ub:" + v.name, *v.upper) << '\n';
    else if (v.lower)
      body << ' ' << v.name << " >= " << nums.put("lb:" + v.name, *v.lower) << '\n';
    else if (v.upper)
      body << " -inf <= " << v.name << " <= " << nums.put("ub:" + v.name, *v.upper) << '\n';
    else
      body << ' ' << v.name << " free\n";
  }
  std::ostringstream gen, bin;
  for (const auto& v : vars) {
    if (v.kind == VarKind::Integer) gen << ' ' << v.name << '\n';
    if (v.kind == VarKind::Binary) bin << ' ' << v.name << '\n';
  }
  if (!gen.str().empty()) body << "Generals\n" << gen.str();
  if (!bin.str().empty()) body << "Binaries\n" << bin.str();
  if (!model.sos2().empty()) {
    body << "SOS\n";
    for (const auto& g : model.sos2()) {
      body << ' ' << g.name << ": S2::";
      for (std::size_t k = 0; k < g.vars.size(); ++k)
        body << ' ' << vname(g.vars[k]) << ':' << nums.put("sos:" + g.name + ":" + vname(g.vars[k]), g.weights[k]);
      body << '\n';
    }
  }
  body << "End\n";
  std::ostringstream out;
  out << "\\ Problem: " << model.name() << '\n' << nums.comments() << body.str();
  return out.str();
}

MilpModel parse_lp(const std::string& text) {
  auto exact = read_exact(text, '\\');
  Draft d;
  enum class Sec { None, Obj, Rows, Bounds, Generals, Binaries, Sos } sec = Sec::None;
  std::istringstream is(text);
  std::string line;
  std::string pending;  // accumulated row text
  std::string obj_text;

  auto parse_terms = [&](const std::string& key, const std::vector<std::string>& toks, std::size_t begin, std::size_t end) {
    Terms terms;
    int sign = 1;
    std::optional<std::string> coef;
    for (std::size_t i = begin; i < end; ++i) {
      const std::string& t = toks[i];
      if (t == "+") continue;
      if (t == "-") {
        sign = -sign;
        continue;
      }
      char c0 = t[0];
      if ((c0 >= '0' && c0 <= '9') || c0 == '.') {
        coef = t;
        continue;
      }
      Rational c = coef ? number(exact, key + ":" + t, *coef) : Rational(1);
      if (sign < 0) c = -c;
      terms.emplace_back(d.var(t), c);
      sign = 1;
      coef.reset();
    }
    return terms;
  };

  auto flush_row = [&]() {
    if (pending.empty()) return;
    auto colon = pending.find(':');
    if (colon == std::string::npos) throw UsageError("LP row without a name");
    std::string name = trim(pending.substr(0, colon));
    auto toks = split_ws(pending.substr(colon + 1));
    std::size_t op = toks.size();
    for (std::size_t i = 0; i < toks.size(); ++i)
      if (toks[i] == "<=" || toks[i] == ">=" || toks[i] == "=") op = i;
    if (op + 2 != toks.size()) throw UsageError("malformed LP row '" + name + "'");
    Draft::Row r;
    r.name = name;
    r.terms = parse_terms("row:" + name, toks, 0, op);
    r.sense = toks[op] == "<=" ? Sense::Le : toks[op] == ">=" ? Sense::Ge : Sense::Eq;
    r.rhs = number(exact, "rhs:" + name, toks[op + 1]);
    d.rows.push_back(std::move(r));
    pending.clear();
  };

  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '\\') {
      auto toks = split_ws(t.substr(1));
      if (toks.size() >= 2 && toks[0] == "Problem:") d.name = toks[1];
      if (toks.size() == 2 && toks[0] == "constant") d.constant = number(exact, "constant", toks[1]);
      continue;
    }
    std::string lt = lower(t);
    bool header = true;
    Sec next = sec;
    if (lt == "minimize" || lt == "maximize") {
      d.maximize = lt == "maximize";
      next = Sec::Obj;
    } else if (lt == "subject to") {
      next = Sec::Rows;
    } else if (lt == "bounds") {
      next = Sec::Bounds;
    } else if (lt == "generals") {
      next = Sec::Generals;
    } else if (lt == "binaries") {
      next = Sec::Binaries;
    } else if (lt == "sos") {
      next = Sec::Sos;
    } else if (lt == "end") {
      next = Sec::None;
    } else {
      header = false;
    }
    if (header) {
      flush_row();
      sec = next;
      continue;
    }
    switch (sec) {
      case Sec::Obj:
        obj_text += ' ' + t;
        break;
      case Sec::Rows:
        if (t.find(':') != std::string::npos) flush_row();
        pending += ' ' + t;
        break;
      case Sec::Bounds: {
        auto toks = split_ws(t);
        int v = -1;
        if (toks.size() == 2 && toks[1] == "free") {
          v = d.var(toks[0]);
          d.lb[static_cast<std::size_t>(v)].reset();
          d.ub[static_cast<std::size_t>(v)].reset();
        } else if (toks.size() == 3 && toks[1] == ">=") {
          v = d.var(toks[0]);
          d.lb[static_cast<std::size_t>(v)] = number(exact, "lb:" + toks[0], toks[2]);
        } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
          v = d.var(toks[2]);
          if (toks[0] == "-inf")
            d.lb[static_cast<std::size_t>(v)].reset();
          else
            d.lb[static_cast<std::size_t>(v)] = number(exact, "lb:" + toks[2], toks[0]);
          d.ub[static_cast<std::size_t>(v)] = number(exact, "ub:" + toks[2], toks[4]);
        } else {
          throw UsageError("unsupported LP bound line: " + t);
        }
        d.order.push_back(v);
        break;
      }
      case Sec::Generals:
        for (const auto& n : split_ws(t)) d.kinds[static_cast<std::size_t>(d.var(n))] = VarKind::Integer;
        break;
      case Sec::Binaries:
        for (const auto& n : split_ws(t)) d.kinds[static_cast<std::size_t>(d.var(n))] = VarKind::Binary;
        break;
      case Sec::Sos: {
        auto toks = split_ws(t);
        if (toks.size() < 2 || toks[0].back() != ':' || toks[1] != "S2::") throw UsageError("unsupported SOS line: " + t);
        Sos2Group g;
        g.name = toks[0].substr(0, toks[0].size() - 1);
        for (std::size_t i = 2; i < toks.size(); ++i) {
          auto c = toks[i].rfind(':');
          std::string vn = toks[i].substr(0, c);
          g.vars.push_back(d.var(vn));
          g.weights.push_back(number(exact, "sos:" + g.name + ":" + vn, toks[i].substr(c + 1)));
        }
        d.sos.push_back(std::move(g));
        break;
      }
      case Sec::None:
        throw UsageError("text outside any LP section: " + t);
    }
  }
  flush_row();
  auto colon = obj_text.find(':');
  auto toks = split_ws(colon == std::string::npos ? obj_text : obj_text.substr(colon + 1));
  d.objective = parse_terms("obj", toks, 0, toks.size());
  return d.build();
}

std::string write_mps(const MilpModel& model) {
  NumberSink nums('*');
  std::ostringstream body;
  const auto& vars = model.variables();
  body << "ROWS\n N obj\n";
  for (const auto& c : model.constraints()) body << ' ' << (c.sense == Sense::Le ? 'L' : c.sense == Sense::Ge ? 'G' : 'E') << ' ' << c.name << '\n';
  // column-wise entries
  std::vector<std::vector<std::pair<std::string, Rational>>> cols(vars.size());
  for (const auto& [v, c] : model.objective().terms) cols[static_cast<std::size_t>(v)].emplace_back("obj", c);
  for (const auto& con : model.constraints())
    for (const auto& [v, c] : con.terms) cols[static_cast<std::size_t>(v)].emplace_back(con.name, c);
  body << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    bool is_int = vars[j].kind == VarKind::Integer;
    if (is_int != in_int) {
      body << " MARKER" << marker++ << " 'MARKER' " << (is_int ? "'INTORG'" : "'INTEND'") << '\n';
      in_int = is_int;
    }
    if (cols[j].empty()) body << ' ' << vars[j].name << " obj 0\n";
    for (const auto& [row, c] : cols[j]) body << ' ' << vars[j].name << ' ' << row << ' ' << nums.put("row:" + row + ":" + vars[j].name, c) << '\n';
  }
  if (in_int) body << " MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  body << "RHS\n";
  if (!model.objective().constant.is_zero()) body << " rhs obj " << nums.put("rhs:obj", -model.objective().constant) << '\n';
  for (const auto& c : model.constraints())
    if (!c.rhs.is_zero()) body << " rhs " << c.name << ' ' << nums.put("rhs:" + c.name, c.rhs) << '\n';
  body << "BOUNDS\n";
  for (const auto& v : vars) {
    const std::string& n = v.name;
    if (v.kind == VarKind::Binary) {
      body << " BV bnd " << n << '\n';
    } else if (v.lower && v.upper && *v.lower == *v.upper) {
      body << " FX bnd " << n << ' ' << nums.put("lb:" + n, *v.lower) << '\n';
    } else if (!v.lower && !v.upper) {
      body << " FR bnd " << n << '\n';
    } else {
      if (v.lower)
        body << " LO bnd " << n << ' ' << nums.put("lb:" + n, *v.lower) << '\n';
      else
        body << " MI bnd " << n << '\n';
      if (v.upper)
        body << " UP bnd " << n << ' ' << nums.put("ub:" + n, *v.upper) << '\n';
      else
        body << " PL bnd " << n << '\n';
    }
  }
  if (!model.sos2().empty()) {
    body << "SOS\n";
    for (const auto& g : model.sos2()) {
      body << " S2 SOS " << g.name << " 1\n";
      for (std::size_t k = 0; k < g.vars.size(); ++k) {
        const std::string& vn = vars[static_cast<std::size_t>(g.vars[k])].name;
        body << "    " << vn << ' ' << nums.put("sos:" + g.name + ":" + vn, g.weights[k]) << '\n';
      }
    }
  }
  body << "ENDATA\n";
  std::ostringstream out;
  out << "NAME " << model.name() << '\n' << nums.comments();
  if (model.maximize()) out << "OBJSENSE\n    MAX\n";
  out << body.str();
  return out.str();
}

MilpModel parse_mps(const std::string& text) {
  auto exact = read_exact(text, '*');
  Draft d;
  std::map<std::string, Sense> row_sense;
  std::vector<std::string> row_order;
  std::map<std::string, Terms> row_terms;
  std::map<std::string, Rational> rhs;
  std::string sec;
  bool in_int = false;
  Sos2Group* cur = nullptr;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '*') continue;
    auto toks = split_ws(t);
    if (line[0] != ' ' && line[0] != '\t') {
      sec = toks[0];
      static const std::set<std::string> known = {"NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "BOUNDS", "SOS", "ENDATA"};
      if (!known.count(sec)) throw UsageError("unsupported MPS section " + sec);
      if (sec == "NAME" && toks.size() > 1) d.name = toks[1];
      continue;
    }
    if (sec == "OBJSENSE") {
      d.maximize = toks[0] == "MAX" || toks[0] == "MAXIMIZE";
    } else if (sec == "ROWS") {
      if (toks[0] == "N") continue;
      Sense s = toks[0] == "L" ? Sense::Le : toks[0] == "G" ? Sense::Ge : Sense::Eq;
      row_sense[toks[1]] = s;
      row_order.push_back(toks[1]);
    } else if (sec == "COLUMNS") {
      if (toks.size() == 3 && toks[1] == "'MARKER'") {
        in_int = toks[2] == "'INTORG'";
        continue;
      }
      int v = d.var(toks[0]);
      if (d.order.empty() || d.order.back() != v) d.order.push_back(v);
      if (in_int) d.kinds[static_cast<std::size_t>(v)] = VarKind::Integer;
      for (std::size_t i = 1; i + 1 < toks.size(); i += 2) {
        Rational c = number(exact, "row:" + toks[i] + ":" + toks[0], toks[i + 1]);
        if (toks[i] == "obj")
          d.objective.emplace_back(v, c);
        else
          row_terms[toks[i]].emplace_back(v, c);
      }
    } else if (sec == "RHS") {
      for (std::size_t i = 1; i + 1 < toks.size(); i += 2) rhs[toks[i]] = number(exact, "rhs:" + toks[i], toks[i + 1]);
    } else if (sec == "BOUNDS") {
      const std::string& type = toks[0];
      int v = d.var(toks[2]);
      auto uv = static_cast<std::size_t>(v);
      auto val = [&](const std::string& key) { return number(exact, key + ":" + toks[2], toks.at(3)); };
      if (type == "BV") {
        d.kinds[uv] = VarKind::Binary;
      } else if (type == "FX") {
        d.lb[uv] = val("lb");
        d.ub[uv] = d.lb[uv];
      } else if (type == "FR") {
        d.lb[uv].reset();
        d.ub[uv].reset();
      } else if (type == "LO") {
        d.lb[uv] = val("lb");
      } else if (type == "MI") {
        d.lb[uv].reset();
      } else if (type == "UP") {
        d.ub[uv] = val("ub");
      } else if (type == "PL") {
        d.ub[uv].reset();
      } else {
        throw UsageError("unsupported MPS bound type " + type);
      }
    } else if (sec == "SOS") {
      if (toks[0] == "S2" && toks.size() >= 3) {
        d.sos.push_back({toks[2], {}, {}});
        cur = &d.sos.back();
      } else if (cur && toks.size() == 2) {
        cur->vars.push_back(d.var(toks[0]));
        cur->weights.push_back(number(exact, "sos:" + cur->name + ":" + toks[0], toks[1]));
      } else {
        throw UsageError("malformed MPS SOS line: " + t);
      }
    } else {
      throw UsageError("unsupported MPS section " + sec);
    }
  }
  for (const auto& name : row_order) {
    Draft::Row r;
    r.name = name;
    r.terms = row_terms[name];
    r.sense = row_sense[name];
    auto it = rhs.find(name);
    if (it != rhs.end()) r.rhs = it->second;
    d.rows.push_back(std::move(r));
  }
  if (auto it = rhs.find("obj"); it != rhs.end()) d.constant = -it->second;
  return d.build();
}

}  // namespace pwrelax
