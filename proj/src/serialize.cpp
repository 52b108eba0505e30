#include "heun/serialize.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "heun/perturbation.hpp"

namespace heun {

namespace {

json header(const char* schema) { return json{{"schema", schema}, {"version", kSchemaVersion}}; }

void check_header(const json& j, const char* schema) {
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw ParseError(std::string("expected a '") + schema + "' document");
  }
  if (j.value("version", 0) != kSchemaVersion) throw ParseError("unsupported schema version");
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string rational_text(const mpq_class& q) { return q.get_str(10); }

mpq_class rational_from(const json& j) {
  if (!j.is_string()) throw ParseError("rational must be a string");
  const auto q = GaussRational::parse(j.get<std::string>());
  if (!q.is_real()) throw ParseError("expected a real rational");
  return q.re;
}

GaussRational param_from(const json& j, const char* name) {
  if (!j.contains(name)) return GaussRational(0);
  const json& v = j.at(name);
  if (!v.is_string()) throw ParseError(std::string("parameter '") + name + "' must be a string");
  return GaussRational::parse(v.get<std::string>());
}

json float_spec_to_json(const FloatRecurrenceSpec& spec) {
  json j{{"family", std::string(to_string(spec.kind))}};
  j["gamma"] = complex_to_json(spec.gamma, 20);
  j["delta"] = complex_to_json(spec.delta, 20);
  if (spec.kind != FamilyKind::ReducedConfluentHeun) j["alpha"] = complex_to_json(spec.alpha, 20);
  if (spec.kind == FamilyKind::Heun) j["beta"] = complex_to_json(spec.beta, 20);
  j["s"] = complex_to_json(spec.s, 20);
  return j;
}

bool is_integral(const GaussRational& z) { return z.re.get_den() == 1 && z.im.get_den() == 1; }

std::string pad(const std::string& text, std::size_t width) {
  if (text.size() >= width) return text;
  return text + std::string(width - text.size(), ' ');
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const auto& r = rows[n];
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) line += " | ";
      line += i + 1 < r.size() ? pad(r[i], width[i]) : r[i];
    }
    os << line << '\n';
    if (n == 0) {
      std::string rule;
      for (std::size_t i = 0; i < width.size(); ++i) {
        if (i > 0) rule += "-+-";
        rule += std::string(width[i], '-');
      }
      os << rule << '\n';
    }
  }
  return os.str();
}

}  // namespace

json to_json(const RecurrenceSpec& spec) {
  json j{{"family", std::string(to_string(spec.kind))}};
  j["gamma"] = spec.gamma.to_string();
  j["delta"] = spec.delta.to_string();
  if (spec.kind != FamilyKind::ReducedConfluentHeun) j["alpha"] = spec.alpha.to_string();
  if (spec.kind == FamilyKind::Heun) j["beta"] = spec.beta.to_string();
  j["s"] = spec.s.to_string();
  return j;
}

RecurrenceSpec spec_from_json(const json& j) {
  const json& fam = field(j, "family");
  if (!fam.is_string()) throw ParseError("family must be a string");
  const FamilyKind kind = parse_family_kind(fam.get<std::string>());
  const GaussRational gamma = param_from(j, "gamma"), delta = param_from(j, "delta"), s = param_from(j, "s");
  switch (kind) {
    case FamilyKind::Heun:
      return make_heun(gamma, delta, param_from(j, "alpha"), param_from(j, "beta"), s);
    case FamilyKind::ConfluentHeun:
      return make_confluent_heun(gamma, delta, param_from(j, "alpha"), s);
    case FamilyKind::ReducedConfluentHeun:
      return make_reduced_confluent_heun(gamma, delta, s);
  }
  throw ParseError("unknown family");
}

json to_json(const PolynomialFamily<GaussRational>& family) {
  json j = header("polynomial_family");
  j["spec"] = to_json(RecurrenceSpec{family.spec});
  j["field"] = "exact";
  json coeffs = json::array();
  for (const auto& p : family.polys) {
    json row = json::array();
    for (const auto& c : p.coeffs()) row.push_back(json::array({rational_text(c.re), rational_text(c.im)}));
    coeffs.push_back(std::move(row));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

json to_json(const PolynomialFamily<BigComplex>& family) {
  json j = header("polynomial_family");
  j["spec"] = float_spec_to_json(family.spec);
  j["field"] = "bigfloat";
  j["precision_bits"] = family.polys.empty() ? working_precision()
                                             : family.polys.front().coeffs().front().re.precision();
  json coeffs = json::array();
  for (const auto& p : family.polys) {
    json row = json::array();
    for (const auto& c : p.coeffs()) row.push_back(json::array({c.re.to_hex(), c.im.to_hex()}));
    coeffs.push_back(std::move(row));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

PolynomialFamily<GaussRational> exact_family_from_json(const json& j) {
  check_header(j, "polynomial_family");
  if (field(j, "field") != "exact") throw ParseError("expected field 'exact'");
  PolynomialFamily<GaussRational> family{spec_from_json(field(j, "spec")), {}};
  for (const auto& row : field(j, "coeffs")) {
    std::vector<GaussRational> c;
    for (const auto& pair : row) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("coefficient must be [re, im]");
      c.emplace_back(rational_from(pair[0]), rational_from(pair[1]));
    }
    family.polys.emplace_back(std::move(c));
  }
  return family;
}

PolynomialFamily<BigComplex> float_family_from_json(const json& j) {
  check_header(j, "polynomial_family");
  if (field(j, "field") != "bigfloat") throw ParseError("expected field 'bigfloat'");
  const auto bits = field(j, "precision_bits").get<mpfr_prec_t>();
  const json& sj = field(j, "spec");
  PolynomialFamily<BigComplex> family;
  family.spec.kind = parse_family_kind(field(sj, "family").get<std::string>());
  auto read = [&](const char* name) { return sj.contains(name) ? complex_from_json(sj.at(name), bits) : BigComplex(); };
  family.spec.gamma = read("gamma");
  family.spec.delta = read("delta");
  family.spec.alpha = read("alpha");
  family.spec.beta = read("beta");
  family.spec.s = read("s");
  for (const auto& row : field(j, "coeffs")) {
    std::vector<BigComplex> c;
    for (const auto& pair : row) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("coefficient must be [re, im]");
      c.emplace_back(BigFloat::from_hex(pair[0].get<std::string>(), bits),
                     BigFloat::from_hex(pair[1].get<std::string>(), bits));
    }
    family.polys.emplace_back(std::move(c));
  }
  return family;
}

json complex_to_json(const BigComplex& z, int digits) {
  return json{{"re", z.re.to_string(digits)},
              {"im", z.im.to_string(digits)},
              {"re_hex", z.re.to_hex()},
              {"im_hex", z.im.to_hex()}};
}

BigComplex complex_from_json(const json& j, mpfr_prec_t bits) {
  if (j.contains("re_hex")) {
    return {BigFloat::from_hex(field(j, "re_hex").get<std::string>(), bits),
            BigFloat::from_hex(field(j, "im_hex").get<std::string>(), bits)};
  }
  PrecisionGuard guard(bits);
  return {BigFloat::parse(field(j, "re").get<std::string>()), BigFloat::parse(field(j, "im").get<std::string>())};
}

json to_json(const ZeroSet& zset, const std::vector<int>& labels, int digits) {
  json j = header("zero_set");
  j["degree"] = zset.degree;
  j["precision_bits"] = zset.precision_bits;
  j["iterations"] = zset.iterations;
  j["all_converged"] = zset.all_converged();
  json zeros = json::array();
  for (std::size_t i = 0; i < zset.size(); ++i) {
    json z = complex_to_json(zset.zeros[i], digits);
    z["display"] = format_value(zset.zeros[i], digits, zset.precision_bits);
    z["residual"] = zset.residuals[i].to_string(3);
    z["converged"] = static_cast<bool>(zset.converged[i]);
    if (!labels.empty()) z["label_k"] = labels[i];
    zeros.push_back(std::move(z));
  }
  j["zeros"] = std::move(zeros);
  return j;
}

json to_json(const ConvergenceReport& report, int digits) {
  json j = header("convergence_report");
  j["spec"] = to_json(report.spec);
  j["m_list"] = report.m_list;
  j["precision_bits"] = report.precision_bits;
  j["digits"] = digits;
  j["n_stable"] = report.n_stable(digits);
  json tracks = json::array();
  for (const auto& t : report.tracks) {
    json tj{{"label_k", t.label_k}};
    json entries = json::object();
    for (const auto& [m, z] : t.entries) {
      json e = complex_to_json(z, digits);
      e["display"] = format_value(z, digits, report.precision_bits);
      entries[std::to_string(m)] = std::move(e);
    }
    tj["entries"] = std::move(entries);
    json stab = json::array();
    for (const auto& [pair, d] : t.stabilized_digits) stab.push_back({{"m", pair.first}, {"m_next", pair.second}, {"digits", d}});
    tj["stabilized_digits"] = std::move(stab);
    tracks.push_back(std::move(tj));
  }
  j["tracks"] = std::move(tracks);
  return j;
}

json to_json(const std::vector<ApproximationRow>& rows, int index, int digits) {
  json j = header("approximation_table");
  j["index"] = index;
  json out = json::array();
  for (const auto& r : rows) {
    json rj{{"k", r.k}, {"approx0", r.approx0.to_string()}};
    rj["approx1"] = r.approx1 ? json(r.approx1->to_string()) : json(nullptr);
    rj["approx2"] = r.approx2 ? json(r.approx2->to_string()) : json(nullptr);
    rj["zero"] = complex_to_json(r.zero, digits);
    out.push_back(std::move(rj));
  }
  j["rows"] = std::move(out);
  return j;
}

json to_json(const D2Estimate& est, int digits) {
  json j = header("d2_estimate");
  j["B"] = complex_to_json(est.B, digits);
  j["K"] = est.K;
  j["estimate"] = complex_to_json(est.estimate, digits);
  j["last_term"] = complex_to_json(est.a.back(), digits);
  j["error_indicator"] = est.error_indicator.to_string(3);
  j["extrapolation_error"] = est.extrapolation_error.to_string(3);
  j["outside_known_region"] = est.outside_known_region;
  return j;
}

json to_json(const D2Zero& zero, int digits) {
  json j = header("d2_zero");
  j["B"] = complex_to_json(zero.B, digits);
  j["value"] = complex_to_json(zero.value, digits);
  j["iterations"] = zero.iterations;
  j["K"] = zero.K;
  j["extrapolation_error"] = zero.extrapolation_error.to_string(3);
  return j;
}

std::string format_value(const BigComplex& z, int digits, mpfr_prec_t bits) {
  const BigFloat floor = BigFloat::ldexp(1, -static_cast<long>(bits / 2)) * max(BigFloat(1), abs(z));
  if (abs(z.im) <= floor) return z.re.to_string(digits);
  return z.to_string(digits);
}

std::string format_value(const GaussRational& z, int digits) {
  if (is_integral(z)) return z.to_string();
  return BigComplex(z).to_string(digits);
}

std::string table_text(const std::vector<ApproximationRow>& rows, int index, int digits) {
  const mpfr_prec_t bits = rows.empty() ? working_precision() : rows.front().zero.re.precision();
  std::vector<std::vector<std::string>> cells{
      {"k", "0th approx.", "1st approx.", "2nd approx.", "zero of c_" + std::to_string(index)}};
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.k), format_value(r.approx0, digits),
                     r.approx1 ? format_value(*r.approx1, digits) : "-",
                     r.approx2 ? format_value(*r.approx2, digits) : "-", format_value(r.zero, digits, bits)});
  }
  return render_rows(cells);
}

std::string report_text(const ConvergenceReport& report, int digits) {
  const int last = report.m_list.back();
  std::vector<std::string> head{"k", "0th approx.", "1st approx.", "2nd approx.", "zero of c_" + std::to_string(last)};
  for (auto it = report.m_list.rbegin() + 1; it != report.m_list.rend(); ++it) head.push_back("zero of c_" + std::to_string(*it));
  if (report.m_list.size() > 1) head.push_back("digits");
  std::vector<std::vector<std::string>> cells{head};

  std::vector<const ZeroTrack*> order;
  for (const auto& t : report.tracks) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [](const ZeroTrack* a, const ZeroTrack* b) { return a->label_k < b->label_k; });
  const bool degenerate = is_d_degenerate(report.spec);
  const std::pair<int, int> last_pair =
      report.m_list.size() > 1 ? std::pair{report.m_list[report.m_list.size() - 2], last} : std::pair{last, last};
  for (const ZeroTrack* t : order) {
    const int k = t->label_k;
    std::vector<std::string> row{std::to_string(k), format_value(GaussRational(-d_coeff(report.spec, k)), digits)};
    if (!degenerate && k < last) {
      row.push_back(format_value(zero_estimate(report.spec, k, last - 1, 1), digits));
      row.push_back(max_order(k, last - 1) >= 2 ? format_value(zero_estimate(report.spec, k, last - 1, 2), digits)
                                                : "-");
    } else {
      row.insert(row.end(), {"-", "-"});
    }
    for (auto it = report.m_list.rbegin(); it != report.m_list.rend(); ++it) {
      const auto e = t->entries.find(*it);
      row.push_back(e == t->entries.end() ? "-" : format_value(e->second, digits, report.precision_bits));
    }
    if (report.m_list.size() > 1) {
      const auto d = t->stabilized_digits.find(last_pair);
      row.push_back(d == t->stabilized_digits.end() ? "-" : std::to_string(d->second));
    }
    cells.push_back(std::move(row));
  }
  std::ostringstream os;
  os << render_rows(cells);
  if (report.m_list.size() > 1) {
    os << "n_stable(" << digits << " digits, c_" << last_pair.first << " vs c_" << last_pair.second
       << ") = " << report.n_stable(digits) << '\n';
  }
  return os.str();
}

}  // namespace heun
