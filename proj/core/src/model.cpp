#include "cpcp/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpcp/arc_flow.hpp"
#include "cpcp/coverage.hpp"
#include "cpcp/error.hpp"
#include "cpcp/radius_ladder.hpp"

namespace cpcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string idx(int v) { return std::to_string(v + 1); }

std::string y_name(int i) { return "y_" + idx(i); }
std::string x_name(int i, int j) { return "x_" + idx(i) + "_" + idx(j); }

}  // namespace

int ModelDocument::variable(const std::string& name, VarType type,
                            double lower, double upper) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const int id = static_cast<int>(variables.size());
  variables.push_back({name, type, lower, upper});
  index_.emplace(name, id);
  return id;
}

int ModelDocument::find_variable(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

ModelRow& ModelDocument::add_row(std::string name, Sense sense, double rhs) {
  rows.push_back({std::move(name), {}, sense, rhs});
  return rows.back();
}

void ModelDocument::add_term(ModelRow& row, const std::string& var,
                             double coef) {
  if (coef == 0.0) return;
  const int id = find_variable(var);
  if (id < 0) throw ContractViolation("undeclared variable " + var);
  row.terms.emplace_back(id, coef);
}

const ModelRow* ModelDocument::find_row(std::string_view name) const {
  for (const ModelRow& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::size_t ModelDocument::count_rows_with_prefix(
    std::string_view prefix) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const ModelRow& r) {
        return r.name.starts_with(prefix);
      }));
}

void add_cut_row(ModelDocument& doc, const LinearCut& cut, std::string name) {
  ModelRow row{std::move(name), {}, cut.sense, static_cast<double>(cut.rhs)};
  for (const Term& t : cut.terms) {
    const int id = doc.find_variable(variable_name(t.var));
    if (id < 0) {
      throw ContractViolation("cut references undeclared variable " +
                              variable_name(t.var));
    }
    row.terms.emplace_back(id, static_cast<double>(t.coef));
  }
  doc.rows.push_back(std::move(row));
}

// ---------------------------------------------------------------------------
// LP text format

namespace {

void write_terms(std::ostringstream& out, const ModelDocument& doc,
                 const std::vector<std::pair<int, double>>& terms) {
  if (terms.empty()) {
    out << " 0 " << (doc.variables.empty() ? "dummy" : doc.variables[0].name);
    return;
  }
  int on_line = 0;
  bool first = true;
  for (auto [var, coef] : terms) {
    if (on_line == 8) {
      out << "\n  ";
      on_line = 0;
    }
    if (coef < 0) {
      out << " -";
    } else if (!first) {
      out << " +";
    }
    const double mag = std::fabs(coef);
    if (mag != 1.0) out << ' ' << format_number(mag);
    out << ' ' << doc.variables[var].name;
    first = false;
    ++on_line;
  }
}

}  // namespace

std::string write_lp(const ModelDocument& doc) {
  std::ostringstream out;
  for (const std::string& c : doc.comments) out << "\\ " << c << '\n';
  if (doc.trivially_infeasible) out << "\\ trivially infeasible\n";
  out << (doc.minimize ? "Minimize\n" : "Maximize\n");
  out << " obj:";
  write_terms(out, doc, doc.objective);
  out << "\nSubject To\n";
  for (const ModelRow& row : doc.rows) {
    out << ' ' << row.name << ':';
    write_terms(out, doc, row.terms);
    out << ' ' << to_string(row.sense) << ' ' << format_number(row.rhs)
        << '\n';
  }
  std::vector<const ModelVariable*> binaries;
  std::vector<const ModelVariable*> generals;
  std::ostringstream bounds;
  for (const ModelVariable& v : doc.variables) {
    if (v.type == VarType::kBinary) {
      binaries.push_back(&v);
      continue;
    }
    if (v.type == VarType::kInteger) generals.push_back(&v);
    if (v.upper == kInf) {
      if (v.lower == -kInf) {
        bounds << ' ' << v.name << " free\n";
      } else {
        bounds << ' ' << v.name << " >= " << format_number(v.lower) << '\n';
      }
    } else {
      bounds << ' '
             << (v.lower == -kInf ? std::string("-inf")
                                  : format_number(v.lower))
             << " <= " << v.name << " <= " << format_number(v.upper) << '\n';
    }
  }
  const std::string b = bounds.str();
  if (!b.empty()) out << "Bounds\n" << b;
  auto list = [&](const char* title,
                  const std::vector<const ModelVariable*>& vars) {
    if (vars.empty()) return;
    out << title << '\n';
    int on_line = 0;
    for (const ModelVariable* v : vars) {
      out << ' ' << v->name;
      if (++on_line == 10) {
        out << '\n';
        on_line = 0;
      }
    }
    if (on_line) out << '\n';
  };
  list("Binaries", binaries);
  list("Generals", generals);
  out << "End\n";
  return out.str();
}

namespace {

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries,
                     kGenerals, kEnd };

bool parse_double(std::string_view token, double& value) {
  if (token == "inf" || token == "+inf" || token == "infinity") {
    value = kInf;
    return true;
  }
  if (token == "-inf" || token == "-infinity") {
    value = -kInf;
    return true;
  }
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool parse_sense(std::string_view token, Sense& sense) {
  if (token == "<=" || token == "=<" || token == "<") {
    sense = Sense::kLessEqual;
  } else if (token == ">=" || token == "=>" || token == ">") {
    sense = Sense::kGreaterEqual;
  } else if (token == "=") {
    sense = Sense::kEqual;
  } else {
    return false;
  }
  return true;
}

// Accumulates "[+|-] [coef] var" sequences.
struct TermParser {
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;

  // Returns true when the token completed a term (name != empty).
  bool feed(std::string_view token, std::string& name, double& value) {
    if (token == "+") {
      sign = 1.0;
      return false;
    }
    if (token == "-") {
      sign = -1.0;
      return false;
    }
    double v = 0;
    if (parse_double(token, v)) {
      coef = v;
      have_coef = true;
      return false;
    }
    name = std::string(token);
    value = sign * (have_coef ? coef : 1.0);
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
    return true;
  }
};

}  // namespace

ModelDocument read_lp(std::string_view text) {
  ModelDocument doc;
  std::vector<std::pair<std::string, double>> objective;
  struct PendingRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    Sense sense = Sense::kLessEqual;
    double rhs = 0;
    bool have_sense = false;
    bool have_rhs = false;
  };
  std::vector<PendingRow> rows;
  std::vector<std::string> binaries;
  std::vector<std::string> generals;
  struct Bound {
    std::string name;
    double lower;
    double upper;
  };
  std::vector<Bound> bounds;
  std::vector<std::string> first_seen;

  Section section = Section::kNone;
  TermParser terms;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto note = [&](const std::string& name) { first_seen.push_back(name); };
  while (pos < text.size() && section != Section::kEnd) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::istringstream in{std::string(line)};
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0].front() == '\\') {
      if (tok.size() >= 3 && tok[1] == "trivially" && tok[2] == "infeasible") {
        doc.trivially_infeasible = true;
      } else if (tok[0] == "\\") {
        std::string comment(line.substr(line.find('\\') + 1));
        if (!comment.empty() && comment.front() == ' ') comment.erase(0, 1);
        doc.comments.push_back(comment);
      }
      continue;
    }
    std::string head = tok[0];
    std::transform(head.begin(), head.end(), head.begin(), ::tolower);
    if (head == "minimize" || head == "minimum" || head == "min") {
      section = Section::kObjective;
      doc.minimize = true;
      continue;
    }
    if (head == "maximize" || head == "maximum" || head == "max") {
      section = Section::kObjective;
      doc.minimize = false;
      continue;
    }
    if (head == "subject" || head == "st" || head == "s.t.") {
      section = Section::kConstraints;
      continue;
    }
    if (head == "bounds") {
      section = Section::kBounds;
      continue;
    }
    if (head == "binaries" || head == "binary" || head == "bin") {
      section = Section::kBinaries;
      continue;
    }
    if (head == "generals" || head == "general" || head == "gen") {
      section = Section::kGenerals;
      continue;
    }
    if (head == "end") {
      section = Section::kEnd;
      continue;
    }
    switch (section) {
      case Section::kObjective:
        for (const std::string& t : tok) {
          if (t.back() == ':') continue;
          std::string name;
          double value;
          if (terms.feed(t, name, value)) {
            note(name);
            objective.emplace_back(name, value);
          }
        }
        break;
      case Section::kConstraints:
        for (const std::string& t : tok) {
          if (t.size() > 1 && t.back() == ':') {
            rows.push_back({t.substr(0, t.size() - 1), {}, Sense::kLessEqual,
                            0, false, false});
            continue;
          }
          if (rows.empty()) {
            throw ParseError(line_no, "constraint without a name");
          }
          PendingRow& row = rows.back();
          Sense s;
          if (!row.have_sense && parse_sense(t, s)) {
            row.sense = s;
            row.have_sense = true;
            continue;
          }
          if (row.have_sense) {
            if (row.have_rhs || !parse_double(t, row.rhs)) {
              throw ParseError(line_no, "malformed right-hand side '" + t + "'");
            }
            row.have_rhs = true;
            continue;
          }
          std::string name;
          double value;
          if (terms.feed(t, name, value)) {
            note(name);
            row.terms.emplace_back(name, value);
          }
        }
        break;
      case Section::kBounds: {
        double a = 0;
        double b = 0;
        Sense s1;
        Sense s2;
        if (tok.size() == 2 && tok[1] == "free") {
          bounds.push_back({tok[0], -kInf, kInf});
        } else if (tok.size() == 3 && parse_sense(tok[1], s1) &&
                   parse_double(tok[2], a)) {
          if (s1 == Sense::kGreaterEqual) {
            bounds.push_back({tok[0], a, kInf});
          } else if (s1 == Sense::kLessEqual) {
            bounds.push_back({tok[0], 0.0, a});
          } else {
            bounds.push_back({tok[0], a, a});
          }
        } else if (tok.size() == 5 && parse_double(tok[0], a) &&
                   parse_sense(tok[1], s1) && parse_sense(tok[3], s2) &&
                   parse_double(tok[4], b)) {
          bounds.push_back({tok[2], a, b});
        } else {
          throw ParseError(line_no, "malformed bound");
        }
        note(bounds.back().name);
        break;
      }
      case Section::kBinaries:
        for (const std::string& t : tok) {
          binaries.push_back(t);
          note(t);
        }
        break;
      case Section::kGenerals:
        for (const std::string& t : tok) {
          generals.push_back(t);
          note(t);
        }
        break;
      case Section::kNone:
      case Section::kEnd:
        throw ParseError(line_no, "content outside of a section");
    }
  }

  for (const std::string& name : first_seen) {
    doc.variable(name, VarType::kContinuous, 0.0, kInf);
  }
  for (const Bound& b : bounds) {
    ModelVariable& v = doc.variables[doc.find_variable(b.name)];
    v.lower = b.lower;
    v.upper = b.upper;
  }
  for (const std::string& name : generals) {
    doc.variables[doc.find_variable(name)].type = VarType::kInteger;
  }
  for (const std::string& name : binaries) {
    ModelVariable& v = doc.variables[doc.find_variable(name)];
    v.type = VarType::kBinary;
    v.lower = 0.0;
    v.upper = 1.0;
  }
  for (auto& [name, value] : objective) {
    doc.objective.emplace_back(doc.find_variable(name), value);
  }
  for (PendingRow& p : rows) {
    if (!p.have_sense || !p.have_rhs) {
      throw ParseError(0, "row '" + p.name + "' is incomplete");
    }
    ModelRow row{p.name, {}, p.sense, p.rhs};
    for (auto& [name, value] : p.terms) {
      if (value != 0.0) row.terms.emplace_back(doc.find_variable(name), value);
    }
    if (row.terms.empty() && !doc.trivially_infeasible) {
      const bool violated = (row.sense == Sense::kGreaterEqual && row.rhs > 0) ||
                            (row.sense == Sense::kLessEqual && row.rhs < 0) ||
                            (row.sense == Sense::kEqual && row.rhs != 0);
      doc.trivially_infeasible = violated;
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

namespace {

std::map<std::string, double> named_terms(
    const ModelDocument& doc, const std::vector<std::pair<int, double>>& t) {
  std::map<std::string, double> out;
  for (auto [var, coef] : t) out[doc.variables[var].name] += coef;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

}  // namespace

bool equivalent(const ModelDocument& a, const ModelDocument& b) {
  if (a.minimize != b.minimize || a.rows.size() != b.rows.size()) return false;
  if (named_terms(a, a.objective) != named_terms(b, b.objective)) return false;
  std::map<std::string, const ModelRow*> rows_b;
  for (const ModelRow& r : b.rows) rows_b[r.name] = &r;
  for (const ModelRow& r : a.rows) {
    auto it = rows_b.find(r.name);
    if (it == rows_b.end()) return false;
    const ModelRow& s = *it->second;
    if (r.sense != s.sense || r.rhs != s.rhs) return false;
    if (named_terms(a, r.terms) != named_terms(b, s.terms)) return false;
  }
  std::map<std::string, const ModelVariable*> vars_b;
  for (const ModelVariable& v : b.variables) vars_b[v.name] = &v;
  if (vars_b.size() != a.variables.size()) return false;
  for (const ModelVariable& v : a.variables) {
    auto it = vars_b.find(v.name);
    if (it == vars_b.end()) return false;
    const ModelVariable& w = *it->second;
    if (v.type != w.type || v.lower != w.lower || v.upper != w.upper) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Emitters

namespace {

void require_ladder_radius(const Instance& inst, Distance r) {
  const RadiusLadder ladder(inst);
  if (ladder.index_of(r)) return;
  const std::size_t k = ladder.floor_index(r);
  std::string msg = "radius " + format_number(r) + " is not a ladder value";
  if (k >= 1) msg += "; nearest below: " + format_number(ladder[k]);
  if (k < ladder.size()) msg += "; nearest above: " + format_number(ladder[k + 1]);
  throw Error(msg);
}

void add_covering_model(ModelDocument& doc, const CoverageContext& ctx) {
  const int m = ctx.num_facilities();
  const int n = ctx.num_customers();
  for (int i = 0; i < m; ++i) {
    doc.variable(y_name(i));
    doc.objective.emplace_back(doc.find_variable(y_name(i)), 1.0);
  }
  for (int i = 0; i < m; ++i) {
    for (int j : ctx.customers_of(i)) doc.variable(x_name(i, j));
  }
  for (int j = 0; j < n; ++j) {
    ModelRow& row = doc.add_row("cover_" + idx(j), Sense::kGreaterEqual, 1.0);
    for (int i : ctx.facilities_of(j)) doc.add_term(row, x_name(i, j), 1.0);
    if (row.terms.empty()) {
      doc.trivially_infeasible = true;
      doc.comments.push_back("customer " + idx(j) +
                             " has no facility within the radius");
    }
  }
}

std::string cut_row_name(const LinearCut& cut, std::size_t serial) {
  const CutOrigin& o = cut.origin;
  switch (cut.kind) {
    case CutKind::kLinking:
      return "link_" + idx(o.facility) + "_" + idx(o.customer);
    case CutKind::kDomination:
      return "dom_" + idx(o.facility) + "_" + idx(o.other_facility);
    case CutKind::kForcing:
      return "force_" + idx(o.facility) + "_" + idx(o.customer);
    case CutKind::kSurplus:
      return "surplus_" + idx(o.facility) + "_" + idx(o.customer) + "_" +
             std::to_string(serial);
    case CutKind::kSymmetry:
      return "sym_" + idx(o.facility) + "_" + idx(o.other_facility) + "_" +
             idx(o.customer) + "_" + idx(o.other_customer);
    case CutKind::kCapacity:
      return "capcut_" + std::to_string(serial);
    case CutKind::kSspCapacity:
      return "ssp_" + idx(o.facility);
    case CutKind::kSspDemand:
      return "sspd_" + idx(o.facility) + "_" + idx(o.customer);
    case CutKind::kDisjunctiveSsp:
      return "dssp_" + idx(o.facility) + "_" + idx(o.customer);
  }
  return "cut_" + std::to_string(serial);
}

}  // namespace

ModelDocument emit_cpcp_descriptive(const Instance& inst) {
  ModelDocument doc;
  const int m = inst.num_facilities();
  const int n = inst.num_customers();
  doc.comments.push_back("CPCP descriptive model: n=" + std::to_string(n) +
                         " m=" + std::to_string(m) +
                         " p=" + std::to_string(inst.p()));
  const int z = doc.variable("z", VarType::kContinuous, 0.0, kInf);
  doc.objective.emplace_back(z, 1.0);
  for (int i = 0; i < m; ++i) doc.variable(y_name(i));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) doc.variable(x_name(i, j));
  }
  for (int j = 0; j < n; ++j) {
    ModelRow& row = doc.add_row("assign_" + idx(j), Sense::kEqual, 1.0);
    for (int i = 0; i < m; ++i) doc.add_term(row, x_name(i, j), 1.0);
  }
  ModelRow& card = doc.add_row("card", Sense::kLessEqual, inst.p());
  for (int i = 0; i < m; ++i) doc.add_term(card, y_name(i), 1.0);
  for (int j = 0; j < n; ++j) {
    ModelRow& row = doc.add_row("dist_" + idx(j), Sense::kGreaterEqual, 0.0);
    doc.add_term(row, "z", 1.0);
    for (int i = 0; i < m; ++i) {
      doc.add_term(row, x_name(i, j), -inst.distance(i, j));
    }
  }
  for (int i = 0; i < m; ++i) {
    ModelRow& row = doc.add_row("cap_" + idx(i), Sense::kLessEqual, 0.0);
    for (int j = 0; j < n; ++j) {
      doc.add_term(row, x_name(i, j), static_cast<double>(inst.demand(j)));
    }
    doc.add_term(row, y_name(i), -static_cast<double>(inst.capacity(i)));
  }
  return doc;
}

ModelDocument emit_cscp(const Instance& inst, Distance r, CscpVariant variant,
                        const CutOptions& options) {
  require_ladder_radius(inst, r);
  const CoverageContext ctx(inst, r);
  ModelDocument doc;
  doc.comments.push_back(
      std::string("CSCP-r ") +
      (variant == CscpVariant::kPlain ? "plain" : "full") +
      " model at radius " + format_number(r));
  add_covering_model(doc, ctx);
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    ModelRow& row = doc.add_row("cap_" + idx(i), Sense::kLessEqual, 0.0);
    for (int j : ctx.customers_of(i)) {
      doc.add_term(row, x_name(i, j), static_cast<double>(ctx.demand(j)));
    }
    doc.add_term(row, y_name(i), -static_cast<double>(ctx.capacity(i)));
  }
  if (variant == CscpVariant::kFull) {
    const CutSet cuts = generate_cuts(ctx, options);
    std::size_t serial = 0;
    for (const LinearCut& cut : cuts.cuts) {
      add_cut_row(doc, cut, cut_row_name(cut, ++serial));
    }
  }
  return doc;
}

ModelDocument emit_cscp_arcflow(const Instance& inst, Distance r) {
  require_ladder_radius(inst, r);
  const CoverageContext ctx(inst, r);
  ModelDocument doc;
  doc.comments.push_back("CSCP-AF-r arc-flow model at radius " +
                         format_number(r));
  add_covering_model(doc, ctx);
  for (int i = 0; i < ctx.num_facilities(); ++i) {
    const ArcFlowGraph g = build_arcflow_graph(ctx, i);
    auto arc_name = [&](Units tail, int customer) {
      return "f_" + idx(i) + "_" + std::to_string(tail) + "_" +
             std::to_string(customer + 1);
    };
    for (const CustomerArc& a : g.customer_arcs) {
      doc.variable(arc_name(a.tail, a.customer));
    }
    for (const LossArc& a : g.loss_arcs) doc.variable(arc_name(a.tail, -1));

    for (Units e : g.nodes) {
      // Inflow minus outflow: +y_i at the source 0, -y_i at the sink Q_i.
      ModelRow& row = doc.add_row(
          "flow_" + idx(i) + "_" + std::to_string(e), Sense::kEqual, 0.0);
      for (const CustomerArc& a : g.customer_arcs) {
        if (a.head == e) doc.add_term(row, arc_name(a.tail, a.customer), 1.0);
        if (a.tail == e) doc.add_term(row, arc_name(a.tail, a.customer), -1.0);
      }
      for (const LossArc& a : g.loss_arcs) {
        if (a.head == e) doc.add_term(row, arc_name(a.tail, -1), 1.0);
        if (a.tail == e) doc.add_term(row, arc_name(a.tail, -1), -1.0);
      }
      if (e == 0) doc.add_term(row, y_name(i), 1.0);
      if (e == g.capacity) doc.add_term(row, y_name(i), -1.0);
    }
    for (int j : ctx.customers_of(i)) {
      ModelRow& row =
          doc.add_row("link_" + idx(i) + "_" + idx(j), Sense::kEqual, 0.0);
      for (const CustomerArc& a : g.customer_arcs) {
        if (a.customer == j) doc.add_term(row, arc_name(a.tail, j), 1.0);
      }
      doc.add_term(row, x_name(i, j), -1.0);
    }
  }
  return doc;
}

}  // namespace cpcp
