#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "heun/oracle.hpp"
#include "heun/perturbation.hpp"
#include "heun/recurrence.hpp"
#include "heun/serialize.hpp"
#include "heun/tracking.hpp"
#include "heun/verify.hpp"

namespace heun::cli {

namespace {

enum class Format { Text, Csv, Json };

struct RunConfig {
  std::string family;
  std::optional<std::string> n, s, alpha, beta, gamma, delta;
  int precision_bits = 256;
  std::optional<std::string> tol;
  int max_iterations = 2000;
  int digits = 10;
  std::string format = "text";
  std::string seeds = "auto";

  int m_max = 0;
  std::string field = "exact";
  std::string m_list;
  int k_max = 5;
  int order = 2;
  std::string B;
  int K = 500;
  bool search = false;
  bool midpoint = false;
  std::string suite = "all";
  int verify_m_max = 14;
  int verify_k_max = 10;
};

Format parse_format(const std::string& text) {
  if (text == "text") return Format::Text;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ParseError("unknown format '" + text + "'");
}

SeedPolicy parse_seeds(const std::string& text) {
  if (text == "auto") return SeedPolicy::Auto;
  if (text == "perturbative") return SeedPolicy::Perturbative;
  if (text == "circle") return SeedPolicy::Circle;
  throw ParseError("unknown seed policy '" + text + "'");
}

GaussRational number(const std::optional<std::string>& text, const GaussRational& fallback) {
  return text ? GaussRational::parse(*text) : fallback;
}

GaussRational required(const std::optional<std::string>& text, const char* name, const std::string& family) {
  if (!text) throw InvalidParameter("family " + family + " needs --" + name);
  return GaussRational::parse(*text);
}

void reject(const std::optional<std::string>& text, const char* name, const std::string& family) {
  if (text) throw InvalidParameter("--" + std::string(name) + " does not apply to family " + family);
}

RecurrenceSpec build_spec(const RunConfig& c) {
  const GaussRational half = GaussRational::ratio(1, 2);
  const GaussRational s = number(c.s, GaussRational(0));
  const std::string& f = c.family;
  if (f != "lame" && f != "mathieu" && f != "wh" && f != "heun" && f != "cheun" && f != "rcheun") {
    throw ParseError("unknown family '" + f + "'");
  }
  if (f != "lame") reject(c.n, "n", f);
  if (f == "lame" || f == "mathieu" || f == "wh") {
    reject(c.gamma, "gamma", f);
    reject(c.delta, "delta", f);
    reject(c.beta, "beta", f);
    if (f != "wh") reject(c.alpha, "alpha", f);
  }
  if (f == "lame") return from_lame({required(c.n, "n", f), s, std::nullopt}).spec;
  if (f == "mathieu") return make_reduced_confluent_heun(half, half, s);
  if (f == "wh") return make_confluent_heun(half, half, required(c.alpha, "alpha", f), s);
  const GaussRational gamma = number(c.gamma, half), delta = number(c.delta, half);
  if (f == "heun") {
    return make_heun(gamma, delta, number(c.alpha, GaussRational(0)), number(c.beta, GaussRational(0)), s);
  }
  reject(c.beta, "beta", f);
  if (f == "cheun") return make_confluent_heun(gamma, delta, number(c.alpha, GaussRational(0)), s);
  reject(c.alpha, "alpha", f);
  return make_reduced_confluent_heun(gamma, delta, s);
}

RootOptions root_options(const RunConfig& c) {
  RootOptions o;
  o.precision_bits = c.precision_bits;
  o.max_iterations = c.max_iterations;
  if (c.tol) {
    PrecisionGuard guard(c.precision_bits);
    o.tol = BigFloat::parse(*c.tol);
  }
  return o;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("malformed index list '" + text + "'");
    }
  }
  if (out.empty()) throw ParseError("empty index list");
  return out;
}

int single_index(const std::string& text) {
  const auto list = parse_int_list(text);
  if (list.size() != 1) throw ParseError("--m takes a single index here");
  if (list[0] < 1) throw InvalidParameter("--m must be at least 1");
  return list[0];
}

std::string csv_re(const BigComplex& z, int digits) { return z.re.to_string(digits); }

std::string csv_im(const BigComplex& z, int digits, mpfr_prec_t bits) {
  const std::string shown = format_value(z, digits, bits);
  return shown == z.re.to_string(digits) ? "0" : z.im.to_string(digits);
}

// --- commands -------------------------------------------------------------

int cmd_poly(const RunConfig& c, Format fmt, std::ostream& out) {
  if (c.m_max < 0) throw InvalidParameter("--m-max must be nonnegative");
  const auto spec = build_spec(c);
  if (c.field != "exact" && c.field != "bigfloat") throw ParseError("unknown field '" + c.field + "'");
  const bool exact = c.field == "exact";
  std::optional<PolynomialFamily<GaussRational>> ef;
  std::optional<PolynomialFamily<BigComplex>> ff;
  if (exact) {
    ef = build_family(spec, c.m_max);
  } else {
    ff = build_float_family(spec, c.m_max);
  }
  auto coeff_text = [&](int m, std::size_t i) {
    return exact ? (*ef)[m].coeffs()[i].to_string() : format_value((*ff)[m].coeffs()[i], c.digits, c.precision_bits);
  };
  const int count = c.m_max + 1;
  switch (fmt) {
    case Format::Json:
      out << (exact ? to_json(*ef) : to_json(*ff)).dump(2) << '\n';
      break;
    case Format::Csv:
      out << "m,power,re,im\n";
      for (int m = 0; m < count; ++m) {
        const std::size_t size = exact ? (*ef)[m].size() : (*ff)[m].size();
        for (std::size_t i = 0; i < size; ++i) {
          if (exact) {
            const auto& q = (*ef)[m].coeffs()[i];
            out << m << ',' << i << ',' << q.re.get_str() << ',' << q.im.get_str() << '\n';
          } else {
            const auto& z = (*ff)[m].coeffs()[i];
            out << m << ',' << i << ',' << z.re.to_string(c.digits) << ',' << z.im.to_string(c.digits) << '\n';
          }
        }
      }
      break;
    case Format::Text:
      for (int m = 0; m < count; ++m) {
        const std::size_t size = exact ? (*ef)[m].size() : (*ff)[m].size();
        out << "c_" << m << "(B) =";
        for (std::size_t i = size; i-- > 0;) {
          out << (i + 1 == size ? " " : " + ") << '(' << coeff_text(m, i) << ')';
          if (i > 1) out << " B^" << i;
          if (i == 1) out << " B";
        }
        out << '\n';
      }
      break;
  }
  return 0;
}

int cmd_zeros(const RunConfig& c, Format fmt, std::ostream& out) {
  const auto spec = build_spec(c);
  const int index = single_index(c.m_list);
  const auto zs = polynomial_zeros(spec, index, root_options(c), parse_seeds(c.seeds));
  const auto labels = label_zeros(spec, index, zs);
  switch (fmt) {
    case Format::Json:
      out << to_json(zs, labels, c.digits).dump(2) << '\n';
      break;
    case Format::Csv:
      out << "re,im,residual,label_k\n";
      for (std::size_t i = 0; i < zs.size(); ++i) {
        out << csv_re(zs.zeros[i], c.digits) << ',' << csv_im(zs.zeros[i], c.digits, zs.precision_bits) << ','
            << zs.residuals[i].to_string(3) << ',' << labels[i] << '\n';
      }
      break;
    case Format::Text:
      out << "zeros of c_" << index << " (" << zs.precision_bits << "-bit, "
          << (zs.all_converged() ? "all converged" : "NOT all converged") << ")\n";
      for (std::size_t i = 0; i < zs.size(); ++i) {
        out << "k=" << labels[i] << "  " << format_value(zs.zeros[i], c.digits, zs.precision_bits)
            << (zs.converged[i] ? "" : "  (unconverged)") << '\n';
      }
      break;
  }
  return zs.all_converged() ? 0 : 3;
}

int cmd_table(const RunConfig& c, Format fmt, std::ostream& out) {
  const auto spec = build_spec(c);
  const int index = single_index(c.m_list);
  if (c.order < 0 || c.order > 2) throw InvalidParameter("--order must be 0, 1 or 2");
  auto rows = approximation_table(spec, index, std::min(c.k_max, index - 1), root_options(c));
  for (auto& r : rows) {
    if (c.order < 2) r.approx2.reset();
    if (c.order < 1) r.approx1.reset();
  }
  const mpfr_prec_t bits = c.precision_bits;
  switch (fmt) {
    case Format::Json:
      out << to_json(rows, index, c.digits).dump(2) << '\n';
      break;
    case Format::Csv: {
      out << "k,approx0_re,approx0_im,approx1_re,approx1_im,approx2_re,approx2_im,zero_re,zero_im\n";
      auto cell = [&](const std::optional<GaussRational>& q) {
        if (!q) return std::string(",");
        const BigComplex z(*q);
        return z.re.to_string(c.digits) + "," + z.im.to_string(c.digits);
      };
      for (const auto& r : rows) {
        out << r.k << ',' << cell(r.approx0) << ',' << cell(r.approx1) << ',' << cell(r.approx2) << ','
            << csv_re(r.zero, c.digits) << ',' << csv_im(r.zero, c.digits, bits) << '\n';
      }
      break;
    }
    case Format::Text:
      out << table_text(rows, index, c.digits);
      break;
  }
  return 0;
}

int cmd_d2(const RunConfig& c, Format fmt, std::ostream& out) {
  const auto spec = build_spec(c);
  if (c.B.empty()) throw InvalidParameter("d2 needs --B");
  const GaussRational B_exact = GaussRational::parse(c.B);
  BigComplex B(B_exact);
  std::optional<D2Zero> zero;
  if (c.search) {
    D2ZeroOptions zo;
    zo.K = c.K;
    zero = d2_zero_search(spec, B, zo);
    B = zero->B;
  }
  const auto est = d2_sequence(spec, B, zero ? zero->K : c.K);
  std::optional<BigComplex> closed;
  if (spec.s.is_zero()) closed = d2_closed_form_s0(spec, B);
  std::optional<oracle::MidpointMatch> mid;
  if (c.midpoint) mid = zero ? oracle::d2_by_midpoint_matching(spec, B) : oracle::d2_by_midpoint_matching(spec, B_exact);

  switch (fmt) {
    case Format::Json: {
      json j{{"schema", "d2_report"}, {"version", kSchemaVersion}};
      j["spec"] = to_json(spec);
      j["sequence"] = to_json(est, c.digits);
      if (zero) j["search"] = to_json(*zero, c.digits);
      if (closed) j["closed_form"] = complex_to_json(*closed, c.digits);
      if (mid) {
        j["midpoint"] = complex_to_json(mid->d2, c.digits);
        j["midpoint_condition"] = mid->condition.to_string(3);
        j["midpoint_N"] = mid->N;
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "quantity,re,im\n";
      out << "B," << B.re.to_string(c.digits) << ',' << B.im.to_string(c.digits) << '\n';
      out << "sequence," << est.estimate.re.to_string(c.digits) << ',' << est.estimate.im.to_string(c.digits) << '\n';
      if (closed) out << "closed_form," << closed->re.to_string(c.digits) << ',' << closed->im.to_string(c.digits) << '\n';
      if (mid) out << "midpoint," << mid->d2.re.to_string(c.digits) << ',' << mid->d2.im.to_string(c.digits) << '\n';
      break;
    case Format::Text: {
      auto line = [&](const std::string& label, const std::string& value) {
        out << label << std::string(label.size() < 24 ? 24 - label.size() : 1, ' ') << value << '\n';
      };
      const auto shown = [&](const BigComplex& z) { return format_value(z, c.digits, c.precision_bits); };
      line("B", shown(B));
      if (zero) line("secant iterations", std::to_string(zero->iterations));
      line("d2 (sequence, K=" + std::to_string(est.K) + ")", shown(est.estimate));
      line("last term a_K", shown(est.a.back()));
      line("|a_K - a_(K-1)|", est.error_indicator.to_string(3));
      line("extrapolation error", est.extrapolation_error.to_string(3));
      if (closed) line("d2 (closed form, s=0)", shown(*closed));
      if (mid) line("d2 (midpoint, N=" + std::to_string(mid->N) + ")", shown(mid->d2));
      if (est.outside_known_region) out << "warning: |s| >= 1 for the Heun family; the limit is not known to be d2\n";
      break;
    }
  }
  return 0;
}

int cmd_track(const RunConfig& c, Format fmt, std::ostream& out) {
  const auto spec = build_spec(c);
  const auto report = convergence_report(spec, parse_int_list(c.m_list), root_options(c));
  switch (fmt) {
    case Format::Json:
      out << to_json(report, c.digits).dump(2) << '\n';
      break;
    case Format::Csv:
      out << "label_k,m,re,im,stabilized_digits\n";
      for (const auto& t : report.tracks) {
        for (const auto& [m, z] : t.entries) {
          std::string digits;
          for (const auto& [pair, d] : t.stabilized_digits) {
            if (pair.second == m) digits = std::to_string(d);
          }
          out << t.label_k << ',' << m << ',' << csv_re(z, c.digits) << ','
              << csv_im(z, c.digits, report.precision_bits) << ',' << digits << '\n';
        }
      }
      break;
    case Format::Text:
      out << report_text(report, c.digits);
      break;
  }
  return 0;
}

int cmd_verify(const RunConfig& c, Format fmt, std::ostream& out) {
  const auto spec = build_spec(c);
  VerifyOptions vo;
  vo.m_max = c.verify_m_max;
  vo.k_max = c.verify_k_max;
  const auto results = run_suite(spec, parse_suite(c.suite), vo);
  const bool ok = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  switch (fmt) {
    case Format::Json: {
      json j{{"schema", "verify_report"}, {"version", kSchemaVersion}, {"spec", to_json(spec)}, {"passed", ok}};
      json checks = json::array();
      for (const auto& r : results) checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      j["checks"] = std::move(checks);
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "name,passed,detail\n";
      for (const auto& r : results) out << '"' << r.name << "\"," << (r.passed ? 1 : 0) << ",\"" << r.detail << "\"\n";
      break;
    case Format::Text:
      for (const auto& r : results) out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
      break;
  }
  return ok ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family, "lame, mathieu, wh, heun, cheun or rcheun")->required();
  sub->add_option("--n", c.n, "Lame degree parameter");
  sub->add_option("--s", c.s, "deformation parameter (Mathieu: q; Whittaker-Hill: -2h)");
  sub->add_option("--alpha", c.alpha, "alpha (heun, cheun, wh)");
  sub->add_option("--beta", c.beta, "beta (heun)");
  sub->add_option("--gamma", c.gamma, "gamma (heun, cheun, rcheun; default 1/2)");
  sub->add_option("--delta", c.delta, "delta (heun, cheun, rcheun; default 1/2)");
  sub->add_option("--precision", c.precision_bits, "working precision in bits")->capture_default_str();
  sub->add_option("--digits", c.digits, "significant digits in output")->capture_default_str();
  sub->add_option("--format", c.format, "text, csv or json")->capture_default_str();
}

void add_root_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tol", c.tol, "root tolerance relative to max(1,|z|) (default 2^-(precision/2))");
  sub->add_option("--max-iterations", c.max_iterations, "root-finder iteration limit")->capture_default_str();
}

// "--s -1/100" would otherwise read "-1/100" as an option name.
std::vector<std::string> join_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < args.size()) {
      const std::string& v = args[i + 1];
      if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '.')) {
        out.push_back(a + "=" + v);
        ++i;
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

void write_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Accessory-parameter polynomials of Heun-class equations: coefficients, zeros, tables, d2."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  auto* poly = app.add_subcommand("poly", "coefficients of c_0(B) .. c_{m-max}(B)");
  add_common(poly, c);
  poly->add_option("--m-max", c.m_max, "highest polynomial index")->required();
  poly->add_option("--field", c.field, "exact or bigfloat")->capture_default_str();

  auto* zeros = app.add_subcommand("zeros", "all zeros of c_m(B), labelled by k");
  add_common(zeros, c);
  add_root_options(zeros, c);
  zeros->add_option("--m", c.m_list, "polynomial index")->required();
  zeros->add_option("--seeds", c.seeds, "auto, perturbative or circle")->capture_default_str();

  auto* table = app.add_subcommand("table", "k | 0th | 1st | 2nd approx. | zero of c_m");
  add_common(table, c);
  add_root_options(table, c);
  table->add_option("--m", c.m_list, "polynomial index")->required();
  table->add_option("--k-max", c.k_max, "last row")->capture_default_str();
  table->add_option("--order", c.order, "highest approximation order shown")->capture_default_str();

  auto* d2 = app.add_subcommand("d2", "connection coefficient d2(B) from the rescaled Taylor coefficients");
  add_common(d2, c);
  d2->add_option("--B", c.B, "accessory parameter (seed with --search)")->required();
  d2->add_option("--K", c.K, "sequence length")->capture_default_str();
  d2->add_flag("--search", c.search, "secant search for a zero of d2 starting at B");
  d2->add_flag("--midpoint", c.midpoint, "also compute d2 by series matching at z = 1/2");

  auto* track = app.add_subcommand("track", "follow zeros across indices and count stabilized digits");
  add_common(track, c);
  add_root_options(track, c);
  track->add_option("--m", c.m_list, "ascending comma-separated indices")->default_val("30,40");

  auto* verify = app.add_subcommand("verify", "property checks");
  add_common(verify, c);
  verify->add_option("--suite", c.suite, "recurrence, perturbation, oracle or all")->capture_default_str();
  verify->add_option("--m-max", c.verify_m_max, "largest m in the checks")->capture_default_str();
  verify->add_option("--k-max", c.verify_k_max, "largest k in the checks")->capture_default_str();

  std::vector<std::string> joined = join_negative_values(args);
  std::vector<const char*> argv;
  for (const auto& a : joined) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "parse_error", e.what());
    return 2;
  }

  try {
    if (c.precision_bits < 64) throw InvalidParameter("--precision must be at least 64");
    if (c.digits < 1 || c.digits > 200) throw InvalidParameter("--digits must be in 1..200");
    const Format fmt = parse_format(c.format);
    PrecisionGuard guard(c.precision_bits);
    if (poly->parsed()) return cmd_poly(c, fmt, out);
    if (zeros->parsed()) return cmd_zeros(c, fmt, out);
    if (table->parsed()) return cmd_table(c, fmt, out);
    if (d2->parsed()) return cmd_d2(c, fmt, out);
    if (track->parsed()) return cmd_track(c, fmt, out);
    if (verify->parsed()) return cmd_verify(c, fmt, out);
  } catch (const Error& e) {
    write_error(err, e.kind(), e.what());
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    write_error(err, "parse_error", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    write_error(err, "parse_error", e.what());
    return 2;
  }
  return 2;
}

}  // namespace heun::cli
