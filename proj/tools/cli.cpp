#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "qdesign/errors.hpp"
#include "qdesign/fano.hpp"
#include "qdesign/fqoracle.hpp"
#include "qdesign/intersect.hpp"

namespace qdesign::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, csv, json, dot };

struct Settings {
  std::string q = "sym";
  std::string style = "factored";
  std::string format = "text";
};

struct DesignArgs {
  int t = -1;
  int v = -1;
  int k = -1;
  std::string lambda = "1";
};

// Column-aligned text table.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) s += "  ";
      s += r[c];
      if (c + 1 < r.size()) s += std::string(width[c] - r[c].size(), ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << r[c];
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  QMode mode() const {
    if (settings_.q == "sym") return QMode::symbolic();
    std::size_t used = 0;
    long long q0 = 0;
    try {
      q0 = std::stoll(settings_.q, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != settings_.q.size() || q0 < 1) {
      throw CLI::ValidationError("--q", "expected 'sym' or a positive integer, got '" + settings_.q + "'");
    }
    if (q0 >= 2 && !is_prime_power(q0)) {
      err_ << "warning: q = " << q0 << " is not a prime power; results are formal\n";
    }
    return QMode::numeric(q0);
  }

  QMode numeric_mode(const std::string& command) const {
    QMode m = mode();
    if (m.is_symbolic()) throw CLI::ValidationError("--q", command + " needs a numeric q");
    return m;
  }

  PolyStyle style() const { return settings_.style == "expanded" ? PolyStyle::expanded : PolyStyle::factored; }

  Format format(std::initializer_list<Format> allowed) const {
    static const std::map<std::string, Format> names{
        {"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}, {"dot", Format::dot}};
    const Format f = names.at(settings_.format);
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
      if (f == Format::dot) throw CLI::ValidationError("--format", "dot output is only available for graphs");
      throw CLI::ValidationError("--format", settings_.format + " output is not available for this command");
    }
    return f;
  }

  Scalar scalar(const QMode& m, const std::string& text) const { return m.lift(parse_polynomial(text)); }

  DesignParams params(const DesignArgs& a) const {
    const QMode m = mode();
    return {m, a.t, a.v, a.k, scalar(m, a.lambda)};
  }

  std::string str(const Scalar& s) const { return s.str(style()); }

  std::vector<std::string> strs(const IntersectionVector& v) const {
    std::vector<std::string> out;
    for (const auto& a : v.alphas) out.push_back(str(a));
    return out;
  }

  Json json_vector(const IntersectionVector& v) const {
    Json arr = Json::array();
    for (const auto& a : v.alphas) arr.push_back(str(a));
    return arr;
  }

  static std::vector<std::string> alpha_header(int k, std::vector<std::string> prefix = {}) {
    for (int j = 0; j <= k; ++j) prefix.push_back("alpha" + std::to_string(j));
    return prefix;
  }

  void add_design_options(CLI::App* sub, DesignArgs& a) {
    sub->add_option("-t", a.t, "strength t")->required();
    sub->add_option("-v", a.v, "ambient dimension v")->required();
    sub->add_option("-k", a.k, "block dimension k")->required();
    sub->add_option("-l,--lambda", a.lambda, "lambda (integer or polynomial in q)")->capture_default_str();
  }

  // subcommands
  int cmd_params(const DesignArgs& a);
  int cmd_lambda_ij(const DesignArgs& a, int order);
  int cmd_dual(const DesignArgs& a);
  int cmd_complement(const DesignArgs& a);
  int cmd_koehler(const DesignArgs& a, int s, bool via_inverse);
  int cmd_mendelsohn(const DesignArgs& a, int s, int order, const std::string& check);
  int cmd_enumerate(const DesignArgs& a, int s, bool block, std::uint64_t budget);
  int cmd_unique(const DesignArgs& a, int s, int order);
  int cmd_nonexist(const DesignArgs& a, std::uint64_t budget);
  int cmd_scan_family(const std::string& family, int from, int to);
  int cmd_fano_table();
  int cmd_fano_graph();
  int cmd_fano_derived();
  int cmd_construct(const DesignInstance& d, const std::string& path);
  int cmd_verify(const std::string& path, int t, std::uint64_t max_subspaces);
  int cmd_measure(const std::string& path, int s, int order, std::uint64_t max_subspaces);
  int cmd_bound_steiner3(int v, int k);

  std::ostream& out_;
  std::ostream& err_;
  Settings settings_;
};

// ---------------------------------------------------------------------------

int Runner::cmd_params(const DesignArgs& a) {
  const DesignParams p = params(a);
  const LambdaTable table = lambda_table(p);
  const Format f = format({Format::text, Format::csv, Format::json});
  auto value = [&](std::size_t i) { return table.values[i] ? str(*table.values[i]) : std::string(); };

  // symbolic non-admissibility says nothing about individual prime powers
  std::vector<std::pair<int, bool>> per_q;
  if (p.mode.is_symbolic() && !table.admissible) {
    for (int q0 : {2, 3, 4, 5, 7, 8, 9}) {
      const QMode m = QMode::numeric(q0);
      const DesignParams pq(m, p.t, p.v, p.k, m.lift(p.lambda.poly()));
      per_q.emplace_back(q0, lambda_table(pq).admissible);
    }
  }
  const std::string verdict = table.admissible ? (p.mode.is_symbolic() ? "admissible for all q" : "admissible")
                                               : (p.mode.is_symbolic() ? "not admissible over Z[q]" : "not admissible");

  if (f == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < table.values.size(); ++i) rows.push_back({std::to_string(i), value(i)});
    print_csv(out_, {"i", "lambda"}, rows);
  } else if (f == Format::json) {
    Json j;
    j["parameters"] = p.str(PolyStyle::expanded);
    j["q"] = p.mode.name();
    j["lambdas"] = Json::array();
    for (const auto& v : table.values) j["lambdas"].push_back(v ? Json(str(*v)) : Json(nullptr));
    j["admissible"] = table.admissible;
    if (table.fail_witness) j["fail_witness"] = *table.fail_witness;
    if (!per_q.empty()) {
      for (const auto& [q0, ok] : per_q) j["admissible_at"][std::to_string(q0)] = ok;
    }
    out_ << j.dump(2) << "\n";
  } else {
    out_ << "parameters: " << p.str(PolyStyle::expanded) << "\n";
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      out_ << "lambda_" << i << " = " << (table.values[i] ? value(i) : "not integral") << "\n";
    }
    out_ << verdict << "\n";
    for (const auto& [q0, ok] : per_q) out_ << "  at q = " << q0 << ": " << (ok ? "admissible" : "not admissible") << "\n";
  }
  return table.admissible ? kOk : kVerdict;
}

int Runner::cmd_lambda_ij(const DesignArgs& a, int order) {
  const DesignParams p = params(a);
  const LambdaIJTable table = lambda_ij(p, order);
  const Format f = format({Format::text, Format::csv, Format::json});
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i <= p.t; ++i) {
    for (int j = 0; i + j <= p.t; ++j) rows.push_back({std::to_string(i), std::to_string(j), str(table.at(i, j))});
  }
  if (f == Format::csv) {
    print_csv(out_, {"i", "j", "value"}, rows);
  } else if (f == Format::json) {
    Json j;
    j["parameters"] = p.str(PolyStyle::expanded);
    j["order"] = order;
    j["entries"] = Json::array();
    for (const auto& r : rows) j["entries"].push_back({{"i", std::stoi(r[0])}, {"j", std::stoi(r[1])}, {"value", r[2]}});
    out_ << j.dump(2) << "\n";
  } else {
    const std::string sup = order == 1 ? "" : "^(" + std::to_string(order) + ")";
    for (const auto& r : rows) out_ << "lambda" << sup << "_{" << r[0] << "," << r[1] << "} = " << r[2] << "\n";
  }
  return kOk;
}

int Runner::cmd_dual(const DesignArgs& a) {
  format({Format::text});
  out_ << dual_params(params(a)).str(style()) << "\n";
  return kOk;
}

int Runner::cmd_complement(const DesignArgs& a) {
  format({Format::text});
  out_ << complement_params(params(a)).str(style()) << "\n";
  return kOk;
}

int Runner::cmd_koehler(const DesignArgs& a, int s, bool via_inverse) {
  const DesignParams p = params(a);
  const KoehlerForm form = via_inverse ? koehler_forms_via_inverse(p, s) : koehler_forms(p, s);
  const Format f = format({Format::text, Format::csv, Format::json});
  if (f == Format::text) {
    for (int i = 0; i <= p.t; ++i) out_ << form.equation(i, style()) << "\n";
    return kOk;
  }
  std::vector<std::string> header{"i", "constant"};
  for (int j = p.t + 1; j <= p.k; ++j) header.push_back("alpha" + std::to_string(j));
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i <= p.t; ++i) {
    std::vector<std::string> r{std::to_string(i), str(form.constants[static_cast<std::size_t>(i)])};
    for (int j = p.t + 1; j <= p.k; ++j) r.push_back(str(form.coeff(i, j)));
    rows.push_back(std::move(r));
  }
  if (f == Format::csv) {
    print_csv(out_, header, rows);
  } else {
    Json j;
    j["parameters"] = p.str(PolyStyle::expanded);
    j["s"] = s;
    j["rows"] = Json::array();
    for (const auto& r : rows) {
      Json row{{"i", std::stoi(r[0])}, {"constant", r[1]}, {"coefficients", Json::object()}};
      for (std::size_t c = 2; c < r.size(); ++c) row["coefficients"][header[c]] = r[c];
      j["rows"].push_back(row);
    }
    out_ << j.dump(2) << "\n";
  }
  return kOk;
}

int Runner::cmd_mendelsohn(const DesignArgs& a, int s, int order, const std::string& check) {
  const DesignParams p = params(a);
  const MendelsohnSystem sys = mendelsohn_system(p, s, order);
  format({Format::text});
  for (int i = 0; i <= p.t; ++i) {
    std::string lhs;
    for (int j = 0; j <= p.k; ++j) {
      const Scalar& c = sys.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c.is_zero()) continue;
      if (!lhs.empty()) lhs += " + ";
      const std::string text = str(c);
      const bool compound = text.find(' ') != std::string::npos;
      if (!c.is_one()) lhs += (compound ? "(" + text + ")" : text) + "*";
      lhs += "alpha_" + std::to_string(j);
    }
    out_ << "row " << i << ": " << lhs << " = " << str(sys.rhs[static_cast<std::size_t>(i)]) << "\n";
  }
  if (check.empty()) return kOk;

  IntersectionVector vec;
  vec.s = s;
  vec.order = order;
  std::string inner = check;
  std::erase_if(inner, [](char c) { return c == '(' || c == ')'; });
  std::istringstream in(inner);
  for (std::string item; std::getline(in, item, ',');) vec.alphas.push_back(scalar(p.mode, item));
  if (vec.alphas.size() != static_cast<std::size_t>(p.k) + 1) {
    throw CLI::ValidationError("--check", "expected " + std::to_string(p.k + 1) + " entries");
  }
  if (auto bad = sys.first_violation(vec)) {
    out_ << "vector " << vec.str(style()) << " violates row " << *bad << "\n";
    return kVerdict;
  }
  out_ << "vector " << vec.str(style()) << " satisfies every row\n";
  return kOk;
}

int Runner::cmd_enumerate(const DesignArgs& a, int s, bool block, std::uint64_t budget) {
  const DesignParams p = params(a);
  if (p.mode.is_symbolic()) throw CLI::ValidationError("--q", "enumerate needs a numeric q");
  const FeasibleSet set = enumerate_feasible(p, s, {budget, block});
  const Format f = format({Format::text, Format::csv, Format::json});
  if (f == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& v : set.vectors) rows.push_back(strs(v));
    print_csv(out_, alpha_header(p.k), rows);
  } else if (f == Format::json) {
    Json j;
    j["parameters"] = p.str();
    j["s"] = s;
    j["constraints"] = set.constraints;
    j["vectors"] = Json::array();
    for (const auto& v : set.vectors) j["vectors"].push_back(json_vector(v));
    j["nodes"] = set.nodes;
    out_ << j.dump(2) << "\n";
  } else {
    for (const auto& c : set.constraints) out_ << "# " << c << "\n";
    for (const auto& v : set.vectors) out_ << v.str() << "\n";
    out_ << "# " << set.vectors.size() << " vector(s), " << set.nodes << " search nodes\n";
  }
  return kOk;
}

int Runner::cmd_unique(const DesignArgs& a, int s, int order) {
  const DesignParams p = params(a);
  const IntersectionVector v = unique_vector(p, s, order);
  const Format f = format({Format::text, Format::csv, Format::json});
  if (f == Format::csv) {
    print_csv(out_, alpha_header(p.k), {strs(v)});
  } else if (f == Format::json) {
    Json j;
    j["parameters"] = p.str(PolyStyle::expanded);
    j["s"] = s;
    j["order"] = order;
    j["vector"] = json_vector(v);
    out_ << j.dump(2) << "\n";
  } else {
    out_ << v.str(style()) << "\n";
  }
  return kOk;
}

int Runner::cmd_nonexist(const DesignArgs& a, std::uint64_t budget) {
  const DesignParams p = params(a);
  if (p.mode.is_symbolic()) throw CLI::ValidationError("--q", "nonexist needs a numeric q");
  const Format f = format({Format::text, Format::json});
  const LambdaTable table = lambda_table(p);
  if (!table.admissible) {
    if (f == Format::json) {
      out_ << Json{{"parameters", p.str()}, {"admissible", false}}.dump(2) << "\n";
    } else {
      out_ << "parameters: " << p.str() << "\nadmissible: no (lambda_" << *table.fail_witness
           << " is not integral)\n";
    }
    return kVerdict;
  }
  const NonexistenceCertificate cert = nonexistence_check(p, {budget, false});
  const bool excluded = cert.realizable_excluded();
  const bool rechecked = cert.recheck();
  std::vector<std::string> lam;
  for (const auto& l : cert.lambdas) lam.push_back(l.str());

  if (f == Format::json) {
    Json j;
    j["parameters"] = p.str();
    j["admissible"] = true;
    j["lambdas"] = lam;
    j["stage"] = to_string(cert.stage);
    j["realizable"] = excluded ? Json(false) : Json("unknown");
    if (cert.negativity) {
      const auto& w = *cert.negativity;
      j["negativity"] = {{"index", w.index},
                         {"constant", w.constant.str()},
                         {"coefficient", w.coefficient.str()},
                         {"bound", w.bound.str()}};
    }
    if (cert.forced_vector) j["forced_vector"] = json_vector(*cert.forced_vector);
    if (cert.pigeonhole_dimension) j["pigeonhole_dimension"] = *cert.pigeonhole_dimension;
    j["recheck"] = rechecked;
    out_ << j.dump(2) << "\n";
  } else {
    out_ << "parameters: " << p.str() << "\n";
    out_ << "lambdas: ";
    for (std::size_t i = 0; i < lam.size(); ++i) out_ << (i ? ", " : "") << lam[i];
    out_ << "\nadmissible: yes\nstage: " << to_string(cert.stage) << "\n";
    if (cert.negativity) {
      const auto& w = *cert.negativity;
      out_ << "block S: alpha_" << w.index << " <= " << w.constant.str() << " + (" << w.coefficient.str()
           << ")*alpha_" << p.k << " with alpha_" << p.k << " >= 1, so alpha_" << w.index << " <= " << w.bound.str()
           << " < 0\n";
    }
    if (cert.stage == CertificateStage::no_feasible_vector) {
      out_ << "block S: no nonnegative intersection vector with alpha_" << p.k << " = 1\n";
    }
    if (cert.forced_vector) {
      const int d = *cert.pigeonhole_dimension;
      out_ << "forced vector of a block: " << cert.forced_vector->str() << "\n";
      const int lo = std::max(d, 0);
      const std::string zeros = lo == p.k - 1 ? "alpha_" + std::to_string(lo) + " = 0"
                                              : "alpha_" + std::to_string(lo) + ".." + std::to_string(p.k - 1) + " are 0";
      out_ << "two blocks disjoint from a block meet in at least " << d << " points, but " << zeros << "\n";
    }
    out_ << "realizable: " << (excluded ? "no" : "unknown (no certificate)") << "\n";
    out_ << "recheck: " << (rechecked ? "ok" : "FAILED") << "\n";
  }
  if (!rechecked) throw InvariantViolation("certificate failed its recheck");
  return excluded ? kVerdict : kOk;
}

int Runner::cmd_scan_family(const std::string& family_name, int from, int to) {
  const Family family = family_name == "t4" ? Family::t4 : Family::t3;
  const Format f = format({Format::text, Format::csv, Format::json});
  const auto rows = scan_family(family, from, to);
  bool any_excluded = false;
  std::vector<std::vector<std::string>> table;
  Json arr = Json::array();
  for (const auto& r : rows) {
    const auto& m = r.member;
    if (!m.params) {
      table.push_back({std::to_string(m.n), "", "", "", "skipped: " + m.skip_reason});
      arr.push_back({{"n", m.n}, {"skipped", m.skip_reason}});
      if (f == Format::text) out_ << "n=" << m.n << ": skipped (" << m.skip_reason << ")\n";
      continue;
    }
    const bool excluded = r.certificate && r.certificate->realizable_excluded();
    any_excluded = any_excluded || excluded;
    const std::string stage = r.certificate ? to_string(r.certificate->stage) : "";
    const std::string realizable = excluded ? "no" : (r.admissible ? "unknown" : "no");
    table.push_back({std::to_string(m.n), m.params->str(), r.admissible ? "yes" : "no", realizable, stage});
    Json j{{"n", m.n}, {"parameters", m.params->str()}, {"admissible", r.admissible}, {"realizable", realizable}};
    if (!stage.empty()) j["stage"] = stage;
    if (r.certificate && r.certificate->negativity) {
      j["index"] = r.certificate->negativity->index;
      j["bound"] = r.certificate->negativity->bound.str();
    }
    arr.push_back(j);
    if (f == Format::text) {
      out_ << "n=" << m.n << ": " << m.params->str() << "  admissible: " << (r.admissible ? "yes" : "no")
           << ", realizable: " << realizable;
      if (!stage.empty()) out_ << " (" << stage;
      if (r.certificate && r.certificate->negativity) {
        out_ << " at i=" << r.certificate->negativity->index << ", bound " << r.certificate->negativity->bound.str();
      }
      if (!stage.empty()) out_ << ")";
      out_ << "\n";
    }
  }
  if (f == Format::csv) print_csv(out_, {"n", "parameters", "admissible", "realizable", "stage"}, table);
  if (f == Format::json) out_ << arr.dump(2) << "\n";
  return any_excluded ? kVerdict : kOk;
}

int Runner::cmd_fano_table() {
  const auto rows = fano_distribution(mode());
  const Format f = format({Format::text, Format::csv, Format::json});
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows) {
    std::vector<std::string> line{str(r.count), std::to_string(r.s)};
    for (const auto& a : r.vector.alphas) line.push_back(str(a));
    table.push_back(std::move(line));
  }
  const auto header = alpha_header(3, {"count", "s"});
  if (f == Format::csv) {
    print_csv(out_, header, table);
  } else if (f == Format::json) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      arr.push_back({{"type", rows[i].type_label},
                     {"count", table[i][0]},
                     {"s", rows[i].s},
                     {"vector", json_vector(rows[i].vector)}});
    }
    out_ << arr.dump(2) << "\n";
  } else {
    auto with_type = header;
    with_type.insert(with_type.begin() + 2, "type");
    for (std::size_t i = 0; i < rows.size(); ++i) table[i].insert(table[i].begin() + 2, rows[i].type_label);
    print_table(out_, with_type, table);
  }
  return kOk;
}

int Runner::cmd_fano_graph() {
  const StructureGraph g = fano_structure_graph(mode());
  const Format f = format({Format::text, Format::json, Format::dot});
  if (f == Format::dot) {
    out_ << g.to_dot(style());
  } else if (f == Format::json) {
    Json j;
    j["nodes"] = Json::array();
    for (const auto& n : g.nodes) {
      j["nodes"].push_back({{"type", n.type_label}, {"s", n.s}, {"count", str(n.count)}, {"vector", json_vector(n.vector)}});
    }
    j["edges"] = Json::array();
    for (const auto& e : g.edges) {
      j["edges"].push_back({{"lower", g.nodes[e.lower].type_label},
                            {"upper", g.nodes[e.upper].type_label},
                            {"up", str(e.up_mult)},
                            {"down", str(e.down_mult)}});
    }
    out_ << j.dump(2) << "\n";
  } else {
    for (const auto& n : g.nodes) out_ << "node " << n.type_label << ": " << n.vector.str(style()) << "^" << str(n.count) << "\n";
    for (const auto& e : g.edges) {
      out_ << "edge " << g.nodes[e.lower].type_label << " -- " << g.nodes[e.upper].type_label << ": up "
           << str(e.up_mult) << ", down " << str(e.down_mult) << "\n";
    }
    out_ << "double counting: " << (g.double_counting_holds() ? "holds" : "FAILS") << "\n";
  }
  return kOk;
}

int Runner::cmd_fano_derived() {
  const QMode m = mode();
  const FanoDerived d = fano_derived_design(m);
  const Format f = format({Format::text, Format::json});
  auto show = [&](const Scalar& s) {
    const std::string expanded = s.str(PolyStyle::expanded);
    const std::string styled = str(s);
    return styled == expanded ? expanded : expanded + " = " + styled;
  };
  if (f == Format::json) {
    Json j;
    j["steps"] = Json::array();
    for (const auto& s : d.steps) {
      j["steps"].push_back({{"description", s.description}, {"value", s.value.str(PolyStyle::expanded)}, {"check", s.check}});
    }
    j["derived"] = d.derived.str(PolyStyle::expanded);
    j["complement"] = d.complement.str(PolyStyle::expanded);
    out_ << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& s : d.steps) out_ << s.description << ": " << show(s.value) << "  [" << s.check << "]\n";
  out_ << "derived design (duals of the type 4_0 spaces): " << d.derived.str(PolyStyle::expanded) << "\n";
  out_ << "complementary pair (duals of the type 4_1 spaces): " << d.complement.str(PolyStyle::expanded) << "\n";
  out_ << "lambda sum: " << show(d.derived.lambda + d.complement.lambda) << " = [5,1]\n";
  return kOk;
}

int Runner::cmd_construct(const DesignInstance& d, const std::string& path) {
  format({Format::text});
  if (path.empty()) {
    out_ << format_design(d);
  } else {
    save_design(d, path);
    out_ << "wrote " << d.blocks.size() << " blocks to " << path << "\n";
  }
  return kOk;
}

int Runner::cmd_verify(const std::string& path, int t, std::uint64_t max_subspaces) {
  format({Format::text});
  const DesignInstance d = load_design(path);
  OracleGuards guards;
  guards.max_subspaces = max_subspaces;
  const VerifyReport r = verify_design(d, t, guards);
  if (r.is_design) {
    out_ << "design: yes, " << t << "-(" << d.v << "," << d.k << "," << *r.lambda << ")_" << d.q() << "\n";
    return kOk;
  }
  const auto& c = *r.counterexample;
  out_ << "design: no for t=" << t << "\n";
  out_ << "  " << c.first.str() << " lies in " << c.first_count << " blocks\n";
  out_ << "  " << c.second.str() << " lies in " << c.second_count << " blocks\n";
  return kVerdict;
}

int Runner::cmd_measure(const std::string& path, int s, int order, std::uint64_t max_subspaces) {
  const DesignInstance d = load_design(path);
  const Format f = format({Format::text, Format::csv, Format::json});
  OracleGuards guards;
  guards.max_subspaces = max_subspaces;
  std::map<std::vector<std::uint64_t>, std::uint64_t> hist;
  for_each_subspace(
      *d.field, d.v, s,
      [&](const SubspaceMatrix& sm) {
        std::vector<std::uint64_t> key;
        for (const auto& a : measure_alpha(d, sm, order, guards).alphas) key.push_back(a.integer().convert_to<std::uint64_t>());
        ++hist[key];
      },
      guards);
  std::vector<std::vector<std::string>> rows;
  for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
    std::vector<std::string> r{std::to_string(it->second), std::to_string(s)};
    for (auto a : it->first) r.push_back(std::to_string(a));
    rows.push_back(std::move(r));
  }
  const auto header = alpha_header(d.k, {"count", "s"});
  if (f == Format::csv) {
    print_csv(out_, header, rows);
  } else if (f == Format::json) {
    Json arr = Json::array();
    for (const auto& [vec, count] : hist) arr.push_back({{"count", count}, {"vector", vec}});
    out_ << arr.dump(2) << "\n";
  } else {
    print_table(out_, header, rows);
  }
  return kOk;
}

int Runner::cmd_bound_steiner3(int v, int k) {
  format({Format::text});
  const Steiner3Bound b = steiner3_bound_check(v, k);
  out_ << "C(v,3) = " << b.lhs.str() << "\n";
  out_ << "(v/k)(v-1)C(k,3) = " << b.rhs.str() << "\n";
  out_ << "bound " << (b.holds ? "holds" : "violated: no 3-(" + std::to_string(v) + "," + std::to_string(k) + ",1) design") << "\n";
  return b.holds ? kOk : kVerdict;
}

// ---------------------------------------------------------------------------

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Intersection numbers of subspace designs", "qdesign"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--q", settings_.q, "'sym' for symbolic q, otherwise an integer q >= 1")->capture_default_str();
  app.add_option("--style", settings_.style, "polynomial rendering")
      ->check(CLI::IsMember({"factored", "expanded"}))
      ->capture_default_str();
  app.add_option("--format", settings_.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json", "dot"}))
      ->capture_default_str();

  std::function<int()> action;
  DesignArgs d;
  int s = -1;
  int order = 1;
  std::string check;
  bool block = false;
  bool via_inverse = false;
  std::uint64_t budget = EnumerateOptions{}.node_budget;
  std::uint64_t max_subspaces = OracleGuards{}.max_subspaces;
  std::string family;
  int n_from = 0;
  int n_to = 0;
  int ov = 0;
  int ok = 0;
  std::string path;

  auto design_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_design_options(sub, d);
    return sub;
  };

  design_cmd("params", "reduced lambdas and admissibility")->callback([&] { action = [&] { return cmd_params(d); }; });
  {
    auto* sub = design_cmd("lambda-ij", "lambda_{i,j} by the recurrence");
    sub->add_option("--order", order, "order l")->check(CLI::PositiveNumber);
    sub->callback([&] { action = [&] { return cmd_lambda_ij(d, order); }; });
  }
  design_cmd("dual", "parameters of the dual design")->callback([&] { action = [&] { return cmd_dual(d); }; });
  design_cmd("complement", "parameters of the complementary design")->callback([&] {
    action = [&] { return cmd_complement(d); };
  });
  {
    auto* sub = design_cmd("koehler", "Koehler parametrization of the intersection numbers");
    sub->add_option("-s", s, "dimension of S")->required();
    sub->add_flag("--via-inverse", via_inverse, "derive through the inverse q-Pascal matrix");
    sub->callback([&] { action = [&] { return cmd_koehler(d, s, via_inverse); }; });
  }
  {
    auto* sub = design_cmd("mendelsohn", "Mendelsohn equations for an s-space");
    sub->add_option("-s", s, "dimension of S")->required();
    sub->add_option("--order", order, "order l")->check(CLI::PositiveNumber);
    sub->add_option("--check", check, "comma separated vector to substitute");
    sub->callback([&] { action = [&] { return cmd_mendelsohn(d, s, order, check); }; });
  }
  {
    auto* sub = design_cmd("enumerate", "feasible intersection vectors of an s-space");
    sub->add_option("-s", s, "dimension of S")->required();
    sub->add_flag("--block", block, "S is a block");
    sub->add_option("--budget", budget, "search node budget")->capture_default_str();
    sub->callback([&] { action = [&] { return cmd_enumerate(d, s, block, budget); }; });
  }
  {
    auto* sub = design_cmd("unique", "the forced intersection vector for s <= t or s >= v-t");
    sub->add_option("-s", s, "dimension of S")->required();
    sub->add_option("--order", order, "order l")->check(CLI::PositiveNumber);
    sub->callback([&] { action = [&] { return cmd_unique(d, s, order); }; });
  }
  {
    auto* sub = design_cmd("nonexist", "nonexistence certificate");
    sub->add_option("--budget", budget, "search node budget")->capture_default_str();
    sub->callback([&] { action = [&] { return cmd_nonexist(d, budget); }; });
  }
  {
    auto* sub = app.add_subcommand("scan-family", "scan one of the two nonexistence families");
    sub->add_option("--family", family)->required()->check(CLI::IsMember({"t4", "t3"}));
    sub->add_option("--n-from", n_from)->required();
    sub->add_option("--n-to", n_to)->required();
    sub->callback([&] { action = [&] { return cmd_scan_family(family, n_from, n_to); }; });
  }
  app.add_subcommand("fano-table", "intersection vector distribution of 2-(7,3,1)_q")->callback([&] {
    action = [&] { return cmd_fano_table(); };
  });
  app.add_subcommand("fano-graph", "intersection structure of 2-(7,3,1)_q")->callback([&] {
    action = [&] { return cmd_fano_graph(); };
  });
  app.add_subcommand("fano-derived", "the derived 2-(7,3,q^4)_q design")->callback([&] {
    action = [&] { return cmd_fano_derived(); };
  });
  for (const std::string name : {"spread", "trivial"}) {
    auto* sub = app.add_subcommand(name, name == "spread" ? "Desarguesian spread" : "all k-subspaces");
    sub->add_option("-v", ov, "ambient dimension")->required();
    sub->add_option("-k", ok, "block dimension")->required();
    sub->add_option("-o,--out", path, "write the design file here instead of stdout");
    sub->add_option("--max-subspaces", max_subspaces)->capture_default_str();
    sub->callback([&, name] {
      action = [&, name] {
        const auto q0 = numeric_mode(name).q0().convert_to<int>();
        OracleGuards guards;
        guards.max_subspaces = max_subspaces;
        return cmd_construct(name == "spread" ? spread_construct(q0, ov, ok) : trivial_design(q0, ov, ok, guards), path);
      };
    });
  }
  {
    auto* sub = app.add_subcommand("verify", "check the t-design property of a design file");
    sub->add_option("--design", path)->required();
    sub->add_option("-t,--t", s, "strength")->required();
    sub->add_option("--max-subspaces", max_subspaces)->capture_default_str();
    sub->callback([&] { action = [&] { return cmd_verify(path, s, max_subspaces); }; });
  }
  {
    auto* sub = app.add_subcommand("measure", "intersection vectors of every s-space of a design file");
    sub->add_option("--design", path)->required();
    sub->add_option("-s,--s", s, "dimension of S")->required();
    sub->add_option("--order", order, "order l")->check(CLI::PositiveNumber);
    sub->add_option("--max-subspaces", max_subspaces)->capture_default_str();
    sub->callback([&] { action = [&] { return cmd_measure(path, s, order, max_subspaces); }; });
  }
  {
    auto* sub = app.add_subcommand("bound-steiner3", "necessary condition for 3-(v,k,1) designs");
    sub->add_option("-v", ov)->required();
    sub->add_option("-k", ok)->required();
    sub->callback([&] { action = [&] { return cmd_bound_steiner3(ov, ok); }; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    return action();
  } catch (const NotAdmissible& e) {
    err_ << e.what() << "\n";
    return kVerdict;
  } catch (const CLI::Error& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    err_ << "internal error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace qdesign::cli
